// SPDX-License-Identifier: MIT OR Apache-2.0

//! Sums of terms `c * x^a * (1 - x)^b` on `[0, 1]`, closed under products and
//! differentiation, with exact integration over the unit interval.

use alloc::vec::Vec;

use crate::math::{beta_int, binomial};

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Term {
    pub c: f64,
    pub a: u32,
    pub b: u32,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct TermPoly {
    terms: Vec<Term>,
}

#[inline]
pub(crate) fn powi(mut x: f64, mut e: u32) -> f64 {
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= x;
        }
        x *= x;
        e >>= 1;
    }
    acc
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

impl TermPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut p = Self { terms: terms.into_iter().collect() };
        p.normalize();
        p
    }

    /// `coeffs[d]` multiplies `x^d`.
    pub fn from_monomials(coeffs: &[f64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| Term { c, a: d as u32, b: 0 }),
        )
    }

    #[cfg(test)]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(&mut self) {
        self.terms.sort_by_key(|t| (t.a, t.b));
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match out.last_mut() {
                Some(last) if last.a == t.a && last.b == t.b => last.c += t.c,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.c != 0.0);
        self.terms = out;
    }

    pub fn eval(&self, x: f64) -> f64 {
        let y = 1.0 - x;
        compensated_sum(self.terms.iter().map(|t| t.c * powi(x, t.a) * powi(y, t.b)))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| Term { c: t.c * k, ..*t }))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).copied())
    }

    /// Multiply by `x^p`.
    pub fn shift(&self, p: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|t| Term { a: t.a + p, ..*t }))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for l in &self.terms {
            for r in &other.terms {
                out.push(Term { c: l.c * r.c, a: l.a + r.a, b: l.b + r.b });
            }
        }
        Self::from_terms(out)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            if t.a > 0 {
                out.push(Term { c: t.c * f64::from(t.a), a: t.a - 1, b: t.b });
            }
            if t.b > 0 {
                out.push(Term { c: -t.c * f64::from(t.b), a: t.a, b: t.b - 1 });
            }
        }
        Self::from_terms(out)
    }

    /// `int_0^1 p(x) dx`, exact up to rounding.
    pub fn integral01(&self) -> f64 {
        compensated_sum(self.terms.iter().map(|t| t.c * beta_int(t.a, t.b)))
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.c.abs()).sum()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.a + t.b).max().unwrap_or(0)
    }

    /// Expand into monomial coefficients indexed by degree.
    pub fn to_monomials(&self) -> Vec<f64> {
        let deg = self.max_degree() as usize;
        let mut out = alloc::vec![0.0; deg + 1];
        for t in &self.terms {
            for j in 0..=t.b {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                out[(t.a + j) as usize] += t.c * sign * binomial(t.b, j);
            }
        }
        out
    }
}
