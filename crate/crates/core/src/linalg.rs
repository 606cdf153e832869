// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dense LU with partial pivoting for the small systems of filter design.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Solve `a x = b` for a square row-major `a`.
pub(crate) fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>, what: &'static str) -> Result<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let norm_a = inf_norm(&a);
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0f64;

    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if !(mag > f64::EPSILON * norm_a * n as f64) {
            return Err(Error::Singular { what, condition: f64::INFINITY });
        }
        min_pivot = min_pivot.min(mag);
        max_pivot = max_pivot.max(mag);
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = alloc::vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    let condition = max_pivot / min_pivot;
    if !x.iter().all(|v| v.is_finite()) || condition > 1e14 {
        return Err(Error::Singular { what, condition });
    }
    Ok(x)
}

fn inf_norm(a: &[Vec<f64>]) -> f64 {
    a.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn solves_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve(a, vec![3.0, 5.0], "test").unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
    }

    #[test]
    fn rejects_singular() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(solve(a, vec![1.0, 2.0], "test"), Err(Error::Singular { .. })));
    }
}
