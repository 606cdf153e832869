// SPDX-License-Identifier: MIT OR Apache-2.0

#![allow(dead_code)]

use jumpscan_core::rng::{normal_series, stream};

/// Adaptive Simpson quadrature on `[a, b]` to tolerance `rel` relative to
/// `int |f|`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let cells = 1000;
    let width = (b - a) / cells as f64;
    let mass: f64 = (0..cells).map(|i| f(a + (i as f64 + 0.5) * width).abs() * width).sum();
    let tol = rel * mass.max(1e-300);
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 30)
}

/// Direct `O(n L)` evaluation of the filtered series at one row.
pub fn direct_h(y: &[f64], j: usize, s: f64, w: &dyn Fn(f64) -> f64) -> f64 {
    let n = y.len();
    let ns = n as f64 * s;
    let l = ns.floor() as usize;
    let at = |i: isize| if i >= 0 && (i as usize) < n { y[i as usize] } else { 0.0 };
    let mut acc = 0.0;
    for m in 1..=l {
        let x = m as f64 / ns;
        acc += w(x) * (at(j as isize + m as isize) - at(j as isize - m as isize));
    }
    acc / ns.sqrt()
}

pub fn gaussian(n: usize, seed: u64) -> Vec<f64> {
    normal_series(&mut stream(seed, 0), n)
}

/// `sigma * noise + size * 1{t > at}` with `t = (i + 1) / n`.
pub fn step_series(n: usize, at: f64, size: f64, sigma: f64, seed: u64) -> Vec<f64> {
    gaussian(n, seed)
        .into_iter()
        .enumerate()
        .map(|(i, e)| sigma * e + if (i + 1) as f64 / n as f64 > at { size } else { 0.0 })
        .collect()
}
