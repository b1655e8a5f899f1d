use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{ExponentVector, LaurentPoly};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Redraws allowed per trial before giving up on a vanishing denominator.
pub const RETRY_BUDGET: usize = 32;

/// Assignment of a rational value to every variable.
///
/// Half-integer exponents need a square root of the value; points built by
/// [`EvalPoint::from_roots`] carry one exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    values: Vec<BigRational>,
    roots: Vec<Option<BigRational>>,
}

impl EvalPoint {
    pub fn new(values: Vec<BigRational>) -> Self {
        let roots = vec![None; values.len()];
        EvalPoint { values, roots }
    }

    /// Point whose values are the squares of `roots`.
    pub fn from_roots(roots: Vec<BigRational>) -> Self {
        let values = roots.iter().map(|r| r * r).collect();
        EvalPoint {
            values,
            roots: roots.into_iter().map(Some).collect(),
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(
            values
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    /// Random point with integer values in `[4, 2^20]`, each a perfect square.
    pub fn random(nvars: usize, rng: &mut impl Rng) -> Self {
        let roots = (0..nvars)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(2i64..=1 << 10))))
            .collect();
        Self::from_roots(roots)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    fn power(&self, var: usize, halves: i32) -> Result<BigRational> {
        use num_traits::Pow;
        if halves % 2 == 0 {
            let x = &self.values[var];
            if x.is_zero() && halves < 0 {
                return Err(Error::Evaluation("negative power of zero".into()));
            }
            Ok(Pow::pow(x, halves / 2))
        } else {
            let r = self.roots[var].as_ref().ok_or_else(|| {
                Error::Evaluation(format!("variable {var} has no square root at this point"))
            })?;
            if r.is_zero() && halves < 0 {
                return Err(Error::Evaluation("negative power of zero".into()));
            }
            Ok(Pow::pow(r, halves))
        }
    }

    pub fn monomial_value(&self, e: &ExponentVector) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for (k, &h) in e.halves().iter().enumerate() {
            if h != 0 {
                acc *= self.power(k, h)?;
            }
        }
        Ok(acc)
    }

    pub fn poly_value(&self, p: &LaurentPoly) -> Result<BigRational> {
        if p.nvars() != self.len() {
            return Err(Error::SpaceMismatch {
                left: p.nvars(),
                right: self.len(),
            });
        }
        let mut cache: HashMap<(usize, i32), BigRational> = HashMap::new();
        let mut acc = BigRational::zero();
        for (e, c) in p.terms() {
            let mut term = BigRational::from_integer(c.clone());
            for (k, &h) in e.halves().iter().enumerate() {
                if h == 0 {
                    continue;
                }
                let f = match cache.get(&(k, h)) {
                    Some(f) => f.clone(),
                    None => {
                        let f = self.power(k, h)?;
                        cache.insert((k, h), f.clone());
                        f
                    }
                };
                term *= f;
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// Evaluates both sides at `trials` seeded random points and compares.
///
/// Points where either side has a vanishing denominator are redrawn; a
/// trial that exhausts [`RETRY_BUDGET`] redraws is an evaluation error.
pub fn eq_random(a: &RatFunc, b: &RatFunc, trials: usize, seed: u64) -> Result<bool> {
    if a.nvars() != b.nvars() {
        return Err(Error::SpaceMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut decided = false;
        for _ in 0..RETRY_BUDGET {
            let pt = EvalPoint::random(a.nvars(), &mut rng);
            match (a.eval(&pt), b.eval(&pt)) {
                (Ok(x), Ok(y)) => {
                    if x != y {
                        return Ok(false);
                    }
                    decided = true;
                    break;
                }
                (Err(Error::Evaluation(_)), _) | (_, Err(Error::Evaluation(_))) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
        if !decided {
            return Err(Error::Evaluation(format!(
                "no admissible point after {RETRY_BUDGET} draws"
            )));
        }
    }
    Ok(true)
}
