// SPDX-License-Identifier: MIT OR Apache-2.0

//! Filtered series `H(t, s) = (ns)^{-1/2} sum_i y_i W((i/n - t)/s)` at a single
//! scale, for every `t = j/n`.
//!
//! Index `j` (0-based) corresponds to time `(j + 1)/n`. The window at `j`
//! covers offsets `-L..=L` with `L = floor(ns)`; samples outside the series are
//! treated as zero. Rows whose window is incomplete are still computed and
//! are marked invalid.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::filter::JumpPassFilter;
use crate::math::{floor, gauss_legendre01, shifted_legendre_all, sqrt};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredSeries {
    pub scale: f64,
    /// Half-width `floor(ns)` of the window in samples.
    pub window: usize,
    pub values: Vec<f64>,
    valid: Range<usize>,
}

impl FilteredSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Indices whose window lies inside the series.
    pub fn valid_range(&self) -> Range<usize> {
        self.valid.clone()
    }

    pub fn is_valid(&self, j: usize) -> bool {
        self.valid.contains(&j)
    }
}

fn check_input(y: &[f64], s: f64) -> Result<usize> {
    let n = y.len();
    if let Some(index) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::invalid(alloc::format!("scale {s} outside (0, 1)")));
    }
    let ns = n as f64 * s;
    if ns < 2.0 {
        return Err(Error::ScaleTooSmall { n, scale: s });
    }
    let window = floor(ns) as usize;
    if 2 * window > n {
        return Err(Error::invalid(alloc::format!(
            "window half-width {window} exceeds n/2 for n={n}"
        )));
    }
    Ok(window)
}

fn finish(values: Vec<f64>, s: f64, window: usize) -> FilteredSeries {
    let n = values.len();
    let valid = window..(n - window);
    FilteredSeries { scale: s, window, values, valid }
}

/// Direct evaluation of the defining sum, `O(n * ns)`.
pub fn brute_filtered_series(y: &[f64], s: f64, filter: &JumpPassFilter) -> Result<FilteredSeries> {
    let window = check_input(y, s)?;
    let n = y.len();
    let ns = n as f64 * s;
    let h = 1.0 / ns;
    let norm = 1.0 / sqrt(ns);
    let weights: Vec<f64> = (0..=window).map(|m| filter.eval(m as f64 * h)).collect();
    let mut values = vec![0.0; n];
    for (j, out) in values.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (m, &w) in weights.iter().enumerate().skip(1) {
            let right = y.get(j + m).copied().unwrap_or(0.0);
            let left = if j >= m { y[j - m] } else { 0.0 };
            acc += w * (right - left);
        }
        *out = norm * acc;
    }
    Ok(finish(values, s, window))
}

const RESTART_DIVISOR: usize = 8;

/// Largest profile degree accepted by [`fast_filtered_series`].
const MAX_SLIDING_DEGREE: u32 = 64;

/// Coefficients of `x -> P(x + delta)` in the shifted Legendre basis, row `d`
/// holding the expansion of `P_d(x + delta)`.
fn shift_matrix(len: usize, delta: f64, nodes: &[f64], weights: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; len * len];
    let mut a = vec![0.0; len];
    let mut b = vec![0.0; len];
    for (&x, &w) in nodes.iter().zip(weights) {
        shifted_legendre_all(x + delta, &mut a);
        shifted_legendre_all(x, &mut b);
        for d in 0..len {
            // P_d(x + delta) has degree d
            for k in 0..=d {
                out[d * len + k] += w * a[d] * b[k];
            }
        }
    }
    for d in 0..len {
        for k in 0..=d {
            out[d * len + k] *= (2 * k + 1) as f64;
        }
    }
    out
}

/// Sliding-window evaluation in `O(n D^2)` for a profile of degree `D`.
///
/// The profile is expanded in shifted Legendre polynomials, `W(x) = sum_k
/// b_k P_k(2x - 1)`, and the state is `P_k(j) = sum_{m=1}^{L} y_{j+m}
/// P_k(2mh - 1)` and `N_k(j) = sum_{m=1}^{L} y_{j-m} P_k(2mh - 1)` with `h =
/// 1/(ns)`, so `H(j) = (ns)^{-1/2} sum_k b_k (P_k(j) - N_k(j))`. A shift by one
/// sample moves the window by `h` in the argument, which is a fixed triangular
/// map on the coefficients. The orthogonal basis keeps the final combination
/// free of the cancellation a monomial expansion suffers. The state is
/// rebuilt from scratch every `ceil(L / 8)` shifts to bound drift.
pub fn fast_filtered_series(y: &[f64], s: f64, filter: &JumpPassFilter) -> Result<FilteredSeries> {
    let window = check_input(y, s)?;
    let degree = filter.degree();
    if degree > MAX_SLIDING_DEGREE {
        return Err(Error::Unrepresentable(alloc::format!(
            "profile degree {degree} exceeds {MAX_SLIDING_DEGREE} for sliding-window evaluation"
        )));
    }
    let n = y.len();
    let ns = n as f64 * s;
    let h = 1.0 / ns;
    let norm = 1.0 / sqrt(ns);
    let len = degree as usize + 1;
    let at = |i: isize| -> f64 {
        if i >= 0 && (i as usize) < n {
            y[i as usize]
        } else {
            0.0
        }
    };

    let (nodes, weights) = gauss_legendre01(len + 1);
    let mut coef = vec![0.0; len];
    let mut basis = vec![0.0; len];
    for (&x, &w) in nodes.iter().zip(&weights) {
        shifted_legendre_all(x, &mut basis);
        let f = filter.eval_half(x);
        for (c, p) in coef.iter_mut().zip(&basis) {
            *c += w * f * p;
        }
    }
    for (k, c) in coef.iter_mut().enumerate() {
        *c *= (2 * k + 1) as f64;
    }
    let back = shift_matrix(len, -h, &nodes, &weights);
    let ahead = shift_matrix(len, h, &nodes, &weights);

    // table[m * len + k] = P_k(2 m h - 1) for m = 0..=L+1
    let mut table = vec![0.0; (window + 2) * len];
    for (m, row) in table.chunks_exact_mut(len).enumerate() {
        shifted_legendre_all(m as f64 * h, row);
    }
    let row = |m: usize| &table[m * len..(m + 1) * len];

    let mut pos = vec![0.0; len];
    let mut neg = vec![0.0; len];
    let mut q = vec![0.0; len];
    let mut r = vec![0.0; len];
    let rebuild = |j: usize, pos: &mut [f64], neg: &mut [f64]| {
        pos.iter_mut().for_each(|v| *v = 0.0);
        neg.iter_mut().for_each(|v| *v = 0.0);
        let ji = j as isize;
        for m in 1..=window {
            let yr = at(ji + m as isize);
            let yl = at(ji - m as isize);
            for (k, &p) in row(m).iter().enumerate() {
                pos[k] += yr * p;
                neg[k] += yl * p;
            }
        }
    };

    let mut values = vec![0.0; n];
    let restart = window.div_ceil(RESTART_DIVISOR).max(1);
    for j in 0..n {
        if j % restart == 0 {
            rebuild(j, &mut pos, &mut neg);
        } else {
            let prev = j as isize - 1;
            let y_next = at(prev + 1);
            let y_in = at(prev + window as isize + 1);
            let y_out = at(prev - window as isize);
            let y_mid = at(prev);
            let (p_h, p_end, p_l, p_0) = (row(1), row(window + 1), row(window), row(0));
            for k in 0..len {
                q[k] = pos[k] - y_next * p_h[k] + y_in * p_end[k];
                r[k] = neg[k] - y_out * p_l[k] + y_mid * p_0[k];
            }
            for d in 0..len {
                let b = &back[d * len..d * len + d + 1];
                let a = &ahead[d * len..d * len + d + 1];
                pos[d] = b.iter().zip(&q).map(|(c, v)| c * v).sum();
                neg[d] = a.iter().zip(&r).map(|(c, v)| c * v).sum();
            }
        }
        let acc: f64 = coef.iter().zip(pos.iter().zip(&neg)).map(|(c, (p, m))| c * (p - m)).sum();
        values[j] = norm * acc;
    }
    Ok(finish(values, s, window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::builtin_wstar;

    fn lcg_series(n: usize, seed: u64) -> Vec<f64> {
        let mut state = seed;
        (0..n)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
            })
            .collect()
    }

    #[test]
    fn impulse_reproduces_filter() {
        let w = builtin_wstar();
        let n = 200;
        let s = 0.1;
        let mut y = vec![0.0; n];
        y[100] = 1.0;
        let out = brute_filtered_series(&y, s, &w).unwrap();
        for j in 80..=120 {
            let want = w.eval((100.0 - j as f64) / (n as f64 * s)) / sqrt(n as f64 * s);
            assert!((out.values[j] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn fast_matches_brute_small() {
        let w = builtin_wstar();
        let y = lcg_series(300, 7);
        for &s in &[0.01, 0.037, 0.1, 0.25] {
            let a = fast_filtered_series(&y, s, &w).unwrap();
            let b = brute_filtered_series(&y, s, &w).unwrap();
            for j in 0..y.len() {
                assert!(
                    (a.values[j] - b.values[j]).abs() <= 1e-9 * (1.0 + b.values[j].abs()),
                    "s={s} j={j}: {} vs {}",
                    a.values[j],
                    b.values[j]
                );
            }
        }
    }

    #[test]
    fn rejects_small_scale_and_nan() {
        let w = builtin_wstar();
        let y = vec![0.0; 100];
        assert!(matches!(fast_filtered_series(&y, 0.015, &w), Err(Error::ScaleTooSmall { .. })));
        let mut y = y;
        y[42] = f64::NAN;
        assert_eq!(fast_filtered_series(&y, 0.1, &w), Err(Error::NonFinite { index: 42 }));
    }

    #[test]
    fn valid_range_excludes_boundary() {
        let w = builtin_wstar();
        let out = fast_filtered_series(&[0.0; 100], 0.1, &w).unwrap();
        assert_eq!(out.valid_range(), 10..90);
    }
}
