// SPDX-License-Identifier: MIT OR Apache-2.0

//! Jump-pass filters: odd, compactly supported on `[-1, 1]`, with vanishing
//! low-order moments.
//!
//! A filter is stored through its profile on `[0, 1]`; the value on `[-1, 0)`
//! follows from oddness. All integrals of products of the profile and its
//! derivative are evaluated in closed form.

mod design;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::math::sqrt;
use crate::poly::{Term, TermPoly};
use crate::{Error, Result};

pub use design::{construct_beta_filter, construct_legendre_filter, legendre_optimal_coefficients};

/// Published coefficients of the order-2 filter, degrees 1..=6 on `[0, 1]`.
const WSTAR: [f64; 6] = [93.99805, -647.59024, 1884.0, -2834.04878, 2136.46829, -632.82732];

/// Largest sum of absolute monomial coefficients accepted when expanding a
/// profile for the sliding-window engine.
const MAX_MONOMIAL_MASS: f64 = 1e9;

#[derive(Clone, Debug, PartialEq)]
pub struct JumpPassFilter {
    order_k: u32,
    half: TermPoly,
    monomial: Option<Vec<f64>>,
}

/// Constants of a filter entering the tail formula and the signal-to-noise ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterMoments {
    /// `int_{-1}^1 W'(t)^2 dt`
    pub w11: f64,
    /// `int_{-1}^1 (t W'(t) + W(t)/2)^2 dt`
    pub w22: f64,
    /// `int_{-1}^1 W(t)^2 dt`
    pub u11: f64,
    /// `int_0^1 W(t) dt`
    pub f0: f64,
    /// `f0 / sqrt(int_0^1 W^2)`
    pub sn: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentCheck {
    pub u: u32,
    /// `int_{-1}^1 x^u W(x) dx`
    pub value: f64,
    pub pass: bool,
}

/// Outcome of [`JumpPassFilter::verify_order`].
#[derive(Clone, Debug, PartialEq)]
pub struct OrderReport {
    pub k: u32,
    /// Absolute tolerance used by every check, scaled by the coefficient mass.
    pub tolerance: f64,
    pub moments: Vec<MomentCheck>,
    /// `int_0^1 W`
    pub f0: f64,
    pub f0_pass: bool,
    /// `W(0+)`, zero for a continuous odd filter.
    pub w_at_zero: f64,
    /// `W(1-)`
    pub w_at_one: f64,
    /// `W'(1-)`
    pub dw_at_one: f64,
    pub smooth_pass: bool,
    /// Largest `|F_w(x)|` on the check grid away from zero, `F_w(x) = int_{-1}^x W`.
    pub fw_max_off_zero: f64,
    /// `|F_w(0)|`
    pub fw_at_zero: f64,
    pub fw_pass: bool,
    /// `W'(0)`
    pub dw_at_zero: f64,
    pub dw_zero_pass: bool,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.moments.iter().all(|m| m.pass)
            && self.f0_pass
            && self.smooth_pass
            && self.fw_pass
            && self.dw_zero_pass
    }

    pub fn moments_pass(&self) -> bool {
        self.moments.iter().all(|m| m.pass)
    }

    /// One line per failed check.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for m in self.moments.iter().filter(|m| !m.pass) {
            out.push(alloc::format!("moment u={} = {:.6e}", m.u, m.value));
        }
        if !self.f0_pass {
            out.push(alloc::format!("int_0^1 W = {:.10} != 1", self.f0));
        }
        if !self.smooth_pass {
            let mut s = String::from("not C1 on [-1,1]:");
            let _ = write!(
                s,
                " W(0+)={:.3e} W(1-)={:.3e} W'(1-)={:.3e}",
                self.w_at_zero, self.w_at_one, self.dw_at_one
            );
            out.push(s);
        }
        if !self.fw_pass {
            out.push(alloc::format!(
                "|F_w| not maximised at 0: {:.6e} >= {:.6e}",
                self.fw_max_off_zero, self.fw_at_zero
            ));
        }
        if !self.dw_zero_pass {
            out.push(alloc::format!("W'(0) = {:.3e}", self.dw_at_zero));
        }
        out
    }
}

/// Built-in order-2 filter with `SN ~ 0.446`.
pub fn builtin_wstar() -> JumpPassFilter {
    JumpPassFilter::from_coeffs(2, &WSTAR).expect("built-in coefficients are valid")
}

impl JumpPassFilter {
    /// Filter with `W(x) = sum_j coeffs[j-1] x^j` on `[0, 1]`.
    pub fn from_coeffs(order_k: u32, coeffs: &[f64]) -> Result<Self> {
        let mut by_degree = Vec::with_capacity(coeffs.len() + 1);
        by_degree.push(0.0);
        by_degree.extend_from_slice(coeffs);
        Self::from_degree_coeffs(order_k, &by_degree)
    }

    /// Filter with `W(x) = sum_d coeffs[d] x^d` on `(0, 1]`. A non-zero constant
    /// term gives a filter that is discontinuous at the origin.
    pub fn from_degree_coeffs(order_k: u32, coeffs: &[f64]) -> Result<Self> {
        if order_k == 0 {
            return Err(Error::invalid("order_k must be at least 1"));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid(alloc::format!("coefficient {i} is not finite")));
        }
        let mut mono = coeffs.to_vec();
        while mono.len() > 1 && mono.last() == Some(&0.0) {
            mono.pop();
        }
        Ok(Self { order_k, half: TermPoly::from_monomials(&mono), monomial: Some(mono) })
    }

    pub(crate) fn from_profile(order_k: u32, half: TermPoly) -> Self {
        let mono = half.to_monomials();
        let mass: f64 = mono.iter().map(|c| c.abs()).sum();
        let monomial = (mass <= MAX_MONOMIAL_MASS).then_some(mono);
        Self { order_k, half, monomial }
    }

    pub fn order_k(&self) -> u32 {
        self.order_k
    }

    /// Monomial coefficients on `[0, 1]` indexed by degree, if the profile has a
    /// well-conditioned monomial form.
    pub fn degree_coeffs(&self) -> Option<&[f64]> {
        self.monomial.as_deref()
    }

    /// Coefficients `c_1..c_D` (degrees `1..=D`), if the profile is a polynomial
    /// with zero constant term.
    pub fn positive_half_coeffs(&self) -> Option<&[f64]> {
        match self.monomial.as_deref() {
            Some([c0, rest @ ..]) if *c0 == 0.0 => Some(rest),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.half.max_degree()
    }

    /// Same shape multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            order_k: self.order_k,
            half: self.half.scale(c),
            monomial: self.monomial.as_ref().map(|m| m.iter().map(|v| v * c).collect()),
        }
    }

    /// Profile on `[0, 1]`, the polynomial continued beyond it.
    #[inline]
    pub(crate) fn eval_half(&self, x: f64) -> f64 {
        match &self.monomial {
            Some(m) => m.iter().rev().fold(0.0, |acc, &c| acc * x + c),
            None => self.half.eval(x),
        }
    }

    /// `W(x)`. Zero at the origin and outside `[-1, 1]`.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if x < 0.0 {
            -self.eval(-x)
        } else if x == 0.0 || x > 1.0 {
            0.0
        } else {
            self.eval_half(x)
        }
    }

    /// `W'(x)`, even; the value at 0 is the one-sided limit.
    pub fn eval_derivative(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax > 1.0 {
            return 0.0;
        }
        match &self.monomial {
            Some(m) => m
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (d, &c)| acc * ax + d as f64 * c),
            None => self.half.derivative().eval(ax),
        }
    }

    pub fn moments(&self) -> Result<FilterMoments> {
        if self.half.is_zero() {
            return Err(Error::ZeroFilter);
        }
        let w = &self.half;
        let dw = w.derivative();
        let w11 = 2.0 * dw.mul(&dw).integral01();
        let mixed = dw.shift(1).add(&w.scale(0.5));
        let w22 = 2.0 * mixed.mul(&mixed).integral01();
        let u11 = 2.0 * w.mul(w).integral01();
        let f0 = w.integral01();
        if !(u11 > 0.0) {
            return Err(Error::ZeroFilter);
        }
        Ok(FilterMoments { w11, w22, u11, f0, sn: f0.abs() / sqrt(u11 / 2.0) })
    }

    /// `int_{-1}^1 x^u W(x) dx`.
    pub fn moment(&self, u: u32) -> f64 {
        if u % 2 == 0 {
            0.0
        } else {
            2.0 * self.half.shift(u).integral01()
        }
    }

    /// Check membership of the order-`k` class plus the conditions that make
    /// the peak of the filtered series sit at the jump.
    pub fn verify_order(&self, k: u32) -> OrderReport {
        let tolerance = 1e-8 * self.half.abs_coeff_sum().max(1.0);
        let moments = (0..=k)
            .map(|u| {
                let value = self.moment(u);
                MomentCheck { u, value, pass: value.abs() <= tolerance }
            })
            .collect();
        let f0 = self.half.integral01();
        let dw = self.half.derivative();
        let w_at_zero = self.half.eval(0.0);
        let w_at_one = self.half.eval(1.0);
        let dw_at_one = dw.eval(1.0);
        let dw_at_zero = dw.eval(0.0);
        let smooth_pass = w_at_zero.abs() <= tolerance
            && w_at_one.abs() <= tolerance
            && dw_at_one.abs() <= tolerance;
        let (fw_at_zero, fw_max_off_zero) = self.fw_profile();
        OrderReport {
            k,
            tolerance,
            moments,
            f0,
            f0_pass: (f0 - 1.0).abs() <= tolerance,
            w_at_zero,
            w_at_one,
            dw_at_one,
            smooth_pass,
            fw_max_off_zero,
            fw_at_zero,
            fw_pass: fw_max_off_zero < fw_at_zero,
            dw_at_zero,
            dw_zero_pass: dw_at_zero.abs() > tolerance,
        }
    }

    /// `(|F_w(0)|, max_{x != 0} |F_w(x)|)` on a grid of `10^4` cells of `[0, 1]`.
    /// `F_w` is even, so the negative half adds nothing.
    fn fw_profile(&self) -> (f64, f64) {
        const CELLS: usize = 10_000;
        let h = 1.0 / CELLS as f64;
        let f0 = self.half.integral01();
        let mut acc = 0.0;
        let mut max_off = 0.0f64;
        for cell in 0..CELLS {
            let lo = cell as f64 * h;
            let mid = lo + 0.5 * h;
            let part: f64 = GAUSS8
                .iter()
                .map(|&(node, weight)| weight * self.eval_half(mid + 0.5 * h * node))
                .sum();
            acc += 0.5 * h * part;
            max_off = max_off.max((acc - f0).abs());
        }
        (f0.abs(), max_off)
    }
}

/// Eight-point Gauss-Legendre nodes and weights on `[-1, 1]`.
const GAUSS8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
];

pub(crate) fn beta_profile(q: u32, a: &[f64]) -> TermPoly {
    let lead = f64::from(q + 1) * f64::from(q + 2);
    TermPoly::from_terms(
        core::iter::once(Term { c: lead, a: 1, b: q })
            .chain(a.iter().enumerate().map(|(j, &c)| Term { c: -c, a: j as u32 + 2, b: 2 })),
    )
}
