// SPDX-License-Identifier: MIT OR Apache-2.0

//! Scalar helpers that work without `std`.

pub use libm::{cos, erfc, exp, fabs, floor, log, pow, round, sin, sqrt};

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

/// Standard normal CDF.
#[inline]
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Upper tail `1 - Phi(x)`, accurate far into the tail.
#[inline]
pub fn norm_sf(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

#[inline]
pub fn norm_pdf(x: f64) -> f64 {
    exp(-0.5 * x * x) / sqrt(2.0 * PI)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

/// Binomial coefficient as `f64`.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc
}

/// `B(a + 1, b + 1) = a! b! / (a + b + 1)!`, i.e. `int_0^1 x^a (1 - x)^b dx`.
pub fn beta_int(a: u32, b: u32) -> f64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    // lo! / ((hi+1)(hi+2)...(hi+lo+1))
    let mut acc = 1.0 / f64::from(hi + 1);
    for i in 1..=lo {
        acc *= f64::from(i) / f64::from(hi + 1 + i);
    }
    acc
}

/// `P_k(2x - 1)` for `k = 0..out.len()`, by the three-term recurrence.
pub fn shifted_legendre_all(x: f64, out: &mut [f64]) {
    let t = 2.0 * x - 1.0;
    if let Some(first) = out.first_mut() {
        *first = 1.0;
    }
    if out.len() > 1 {
        out[1] = t;
    }
    for k in 1..out.len().saturating_sub(1) {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0) * t * out[k] - kf * out[k - 1]) / (kf + 1.0);
    }
}

/// Gauss-Legendre nodes and weights on `[0, 1]`, exact for degree `2 points - 1`.
pub fn gauss_legendre01(points: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(points);
    let mut weights = Vec::with_capacity(points);
    let nf = points as f64;
    for i in 0..points {
        // Newton on P_n(t) from the Tricomi-type starting guess
        let mut t = cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 1..points {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * t * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (t * p1 - p0) / (t * t - 1.0);
            let step = p1 / dp;
            t -= step;
            if fabs(step) < 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - t));
        weights.push(1.0 / ((1.0 - t * t) * dp * dp));
    }
    (nodes, weights)
}

/// Median of a slice (average of the two middle values for even length).
pub fn median(values: &mut [f64]) -> f64 {
    debug_assert!(!values.is_empty());
    values.sort_unstable_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    }
}

/// Sample variance with denominator `len - 1`.
pub fn sample_variance(values: &[f64]) -> f64 {
    let len = values.len();
    if len < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / len as f64;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (len - 1) as f64
}
