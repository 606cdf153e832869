// SPDX-License-Identifier: MIT OR Apache-2.0

//! Construction of filters with a prescribed number of vanishing moments.

use alloc::vec;
use alloc::vec::Vec;

use super::{beta_profile, JumpPassFilter, OrderReport};
use crate::linalg::solve;
use crate::math::{beta_int, binomial, sqrt};
use crate::{Error, Result};

/// Largest expansion length converted to monomials; beyond this the shifted
/// Legendre to monomial map loses all precision.
const MAX_MONOMIAL_LEGENDRE: usize = 16;

/// `int_0^1 x^u P_i(2x - 1) dx`.
fn legendre_moment(u: u32, i: usize) -> f64 {
    let i = i as u32;
    if i > u {
        return 0.0;
    }
    // (u!)^2 / ((u - i)! (u + i + 1)!)
    let mut acc = 1.0;
    for m in (u - i + 1)..=u {
        acc *= f64::from(m);
    }
    for m in (u + 1)..=(u + i + 1) {
        acc /= f64::from(m);
    }
    acc
}

/// Shifted-Legendre coefficients `a_0..a_N` of the profile on `[0, 1]` that
/// maximises the signal-to-noise ratio among order-`k` filters of that degree.
///
/// Solves `min sum a_i^2 / (2i + 1)` subject to `a_0 = 1`, `W(0) = W(1) = 0`,
/// `W'(1) = 0` and `int_0^1 x^u W = 0` for odd `u <= k`.
pub fn legendre_optimal_coefficients(k: u32, big_n: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if big_n < k as usize + 3 {
        return Err(Error::invalid(alloc::format!("N = {big_n} must be at least k + 3 = {}", k + 3)));
    }
    let len = big_n + 1;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs = Vec::new();

    let mut e0 = vec![0.0; len];
    e0[0] = 1.0;
    rows.push(e0);
    rhs.push(1.0);
    rows.push(vec![1.0; len]);
    rhs.push(0.0);
    rows.push((0..len).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect());
    rhs.push(0.0);
    rows.push((0..len).map(|i| (i * (i + 1)) as f64).collect());
    rhs.push(0.0);
    for u in (1..=k).step_by(2) {
        rows.push((0..len).map(|i| legendre_moment(u, i)).collect());
        rhs.push(0.0);
    }

    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        let norm = sqrt(row.iter().map(|v| v * v).sum());
        row.iter_mut().for_each(|v| *v /= norm);
        *b /= norm;
    }

    let m = rows.len();
    let dinv: Vec<f64> = (0..len).map(|i| (2 * i + 1) as f64).collect();
    let mut gram = vec![vec![0.0; m]; m];
    for r in 0..m {
        for s in r..m {
            let v: f64 = (0..len).map(|i| rows[r][i] * dinv[i] * rows[s][i]).sum();
            gram[r][s] = v;
            gram[s][r] = v;
        }
    }
    let lambda = solve(gram, rhs, "Legendre constraint")?;
    Ok((0..len)
        .map(|i| dinv[i] * (0..m).map(|r| rows[r][i] * lambda[r]).sum::<f64>())
        .collect())
}

/// Monomial coefficients of `sum_i a_i P_i(2x - 1)`.
fn legendre_to_monomial(a: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        let iu = i as u32;
        for j in 0..=iu {
            let sign = if (i + j as usize) % 2 == 0 { 1.0 } else { -1.0 };
            out[j as usize] += ai * sign * binomial(iu, j) * binomial(iu + j, j);
        }
    }
    out
}

/// The SN-optimal order-`k` filter with a degree-`N` profile.
pub fn construct_legendre_filter(k: u32, big_n: usize) -> Result<JumpPassFilter> {
    if big_n > MAX_MONOMIAL_LEGENDRE {
        return Err(Error::Unrepresentable(alloc::format!(
            "degree {big_n} exceeds {MAX_MONOMIAL_LEGENDRE} for a monomial profile; use legendre_optimal_coefficients"
        )));
    }
    let a = legendre_optimal_coefficients(k, big_n)?;
    let mut mono = legendre_to_monomial(&a);
    // W(0) = 0 is one of the constraints
    mono[0] = 0.0;
    JumpPassFilter::from_degree_coeffs(k, &mono)
}

/// Order-`k` filter `W = A - D` with `A(x) = x(1-x)^q / B(2, q+1)` and
/// `D(x) = x^2 (1-x)^2 sum_j a_j x^j`, `j = 0..=ceil(k/2)`.
pub fn construct_beta_filter(k: u32, q: u32) -> Result<(JumpPassFilter, OrderReport)> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if q <= k.max(2) {
        return Err(Error::invalid(alloc::format!("q = {q} must exceed max(2, k) = {}", k.max(2))));
    }
    let v = k.div_ceil(2);
    let lead = f64::from(q + 1) * f64::from(q + 2);
    let mut a = Vec::with_capacity(v as usize + 1);
    let mut b = Vec::with_capacity(v as usize + 1);
    a.push((0..=v).map(|j| beta_int(j + 2, 2)).collect::<Vec<_>>());
    b.push(0.0);
    for g in 1..=v {
        let u = 2 * g - 1;
        a.push((0..=v).map(|j| beta_int(u + j + 2, 2)).collect());
        b.push(lead * beta_int(u + 1, q));
    }
    let coeffs = solve(a, b, "beta filter")?;
    let filter = JumpPassFilter::from_profile(k, beta_profile(q, &coeffs));
    let report = filter.verify_order(k);
    Ok((filter, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_moment_matches_direct_integral() {
        // P_1(2x-1) = 2x - 1; int x (2x-1) = 2/3 - 1/2 = 1/6
        assert!((legendre_moment(1, 1) - 1.0 / 6.0).abs() < 1e-15);
        // P_2(2x-1) = 6x^2 - 6x + 1; int x^3 P = 6/6 - 6/5 + 1/4 = 0.05
        assert!((legendre_moment(3, 2) - 0.05).abs() < 1e-15);
        assert_eq!(legendre_moment(1, 2), 0.0);
    }

    #[test]
    fn legendre_to_monomial_small() {
        let m = legendre_to_monomial(&[0.0, 0.0, 1.0]);
        assert_eq!(m, vec![1.0, -6.0, 6.0]);
    }

    #[test]
    fn too_small_n_is_rejected() {
        assert!(legendre_optimal_coefficients(2, 4).is_err());
        assert!(construct_legendre_filter(4, 6).is_err());
    }

    #[test]
    fn beta_precondition() {
        assert!(construct_beta_filter(2, 2).is_err());
        assert!(construct_beta_filter(4, 4).is_err());
    }
}
