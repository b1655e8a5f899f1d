//! Exact Laurent polynomials in `t_1..t_n, v` and their fraction field.

mod eval;
mod json;
mod poly;
mod ratfunc;

pub use eval::{eq_random, EvalPoint, RETRY_BUDGET};
pub use poly::{ExponentVector, LaurentPoly};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;

/// Builder for monomials `t_1^{a_1}⋯t_n^{a_n} v^{b}` of the rank-`n` space.
///
/// The variable order is `t_1, …, t_n, v`; `t` indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    halves: Vec<i32>,
}

impl Weight {
    pub fn one(n: usize) -> Self {
        Weight {
            halves: vec![0; n + 1],
        }
    }

    pub fn rank(&self) -> usize {
        self.halves.len() - 1
    }

    /// Multiplies by `t_j^e`.
    pub fn t(mut self, j: usize, e: i32) -> Self {
        debug_assert!(j >= 1 && j <= self.rank());
        self.halves[j - 1] += 2 * e;
        self
    }

    /// Multiplies by `v^e`.
    pub fn v(self, e: i32) -> Self {
        self.v_halves(2 * e)
    }

    /// Multiplies by `v^{h/2}`.
    pub fn v_halves(mut self, h: i32) -> Self {
        let k = self.halves.len() - 1;
        self.halves[k] += h;
        self
    }

    pub fn times(mut self, other: &Weight) -> Self {
        for (a, b) in self.halves.iter_mut().zip(&other.halves) {
            *a += b;
        }
        self
    }

    pub fn inv(mut self) -> Self {
        for a in self.halves.iter_mut() {
            *a = -*a;
        }
        self
    }

    pub fn pow(mut self, k: i32) -> Self {
        for a in self.halves.iter_mut() {
            *a *= k;
        }
        self
    }

    pub fn exponent(&self) -> ExponentVector {
        ExponentVector::from_halves(&self.halves)
    }

    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.exponent(), 1)
    }

    pub fn rat(&self) -> RatFunc {
        RatFunc::monomial(self.exponent(), 1)
    }

    /// `1 - self` as a tracked factor.
    pub fn one_minus(&self) -> RatFunc {
        RatFunc::one_minus(&self.exponent())
    }
}

/// `Σ_{l=lo}^{hi} v^{2l} · m`, zero when `lo > hi`.
///
/// `m` lives in the rank-`n` space, so `v` is its last variable.
pub fn geometric_block(lo: i32, hi: i32, m: &ExponentVector) -> LaurentPoly {
    let nvars = m.len();
    let terms = (lo..=hi).map(|l| {
        let mut h = m.halves().to_vec();
        h[nvars - 1] += 4 * l;
        (ExponentVector::from_halves(&h), BigInt::from(1))
    });
    LaurentPoly::from_terms(nvars, terms).expect("terms share the space of m")
}
