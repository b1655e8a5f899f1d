use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::eval::EvalPoint;
use super::poly::{ExponentVector, LaurentPoly};
use crate::error::{Error, Result};

/// Element of the fraction field of the Laurent ring.
///
/// Stored as `scalar * x^mono * prod_f f^{e_f}` where every `f` is a
/// canonical factor: no monomial content, coprime integer coefficients,
/// positive anchor (graded-lex smallest) term, and not itself a monomial.
/// Factors are only ever identified syntactically, so cancellation happens
/// exactly when the same factor was produced twice; there is no polynomial
/// gcd. Sums expand the non-shared parts of both operands into one new
/// factor.
#[derive(Clone)]
pub struct RatFunc {
    nvars: usize,
    scalar: BigRational,
    mono: ExponentVector,
    factors: BTreeMap<Arc<LaurentPoly>, i32>,
}

/// Splits a nonzero polynomial into `scalar * x^mono * factor`.
fn canonical_parts(p: &LaurentPoly) -> (BigInt, ExponentVector, Option<LaurentPoly>) {
    let mono = p.min_exponents();
    let shifted = p.mul_term(&mono.neg(), &BigInt::one());
    let mut content = shifted.integer_content();
    let mut core = shifted.div_exact_scalar(&content);
    if core.anchor_is_negative() {
        core = core.neg_ref();
        content = -content;
    }
    if core.as_monomial().is_some() {
        (content, mono, None)
    } else {
        (content, mono, Some(core))
    }
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            nvars,
            scalar: BigRational::zero(),
            mono: ExponentVector::zero(nvars),
            factors: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_scalar(nvars, BigRational::one())
    }

    pub fn from_scalar(nvars: usize, c: BigRational) -> Self {
        RatFunc {
            nvars,
            scalar: c,
            mono: ExponentVector::zero(nvars),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_scalar(nvars, BigRational::from_integer(c.into()))
    }

    /// `c * x^e`.
    pub fn monomial(exps: ExponentVector, c: i64) -> Self {
        let nvars = exps.len();
        if c == 0 {
            return Self::zero(nvars);
        }
        RatFunc {
            nvars,
            scalar: BigRational::from_integer(c.into()),
            mono: exps,
            factors: BTreeMap::new(),
        }
    }

    /// `1 - x^w`, kept as a tracked factor.
    pub fn one_minus(w: &ExponentVector) -> Self {
        let nvars = w.len();
        let p = &LaurentPoly::one(nvars) - &LaurentPoly::monomial(w.clone(), 1);
        Self::from_poly(&p)
    }

    pub fn from_poly(p: &LaurentPoly) -> Self {
        let nvars = p.nvars();
        if p.is_zero() {
            return Self::zero(nvars);
        }
        let (c, mono, core) = canonical_parts(p);
        let mut factors = BTreeMap::new();
        if let Some(f) = core {
            factors.insert(Arc::new(f), 1);
        }
        RatFunc {
            nvars,
            scalar: BigRational::from_integer(c),
            mono,
            factors,
        }
    }

    /// `num / den`; fails when `den` is zero.
    pub fn new(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::SpaceMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        Self::from_poly(num).checked_div(&Self::from_poly(den))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn monomial_part(&self) -> &ExponentVector {
        &self.mono
    }

    /// Tracked factors with their (nonzero) exponents.
    pub fn factors(&self) -> impl Iterator<Item = (&LaurentPoly, i32)> {
        self.factors.iter().map(|(f, e)| (f.as_ref(), *e))
    }

    /// True when the value is `c * x^e` for a rational `c`.
    pub fn is_monomial(&self) -> bool {
        self.factors.is_empty()
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut factors = self.factors.clone();
        for (f, e) in &other.factors {
            let slot = factors.entry(f.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                factors.remove(f);
            }
        }
        Ok(RatFunc {
            nvars: self.nvars,
            scalar: &self.scalar * &other.scalar,
            mono: self.mono.add(&other.mono),
            factors,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        Ok(RatFunc {
            nvars: self.nvars,
            scalar: self.scalar.recip(),
            mono: self.mono.neg(),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if self.is_zero() {
            return Ok(if k == 0 {
                Self::one(self.nvars)
            } else {
                self.clone()
            });
        }
        Ok(RatFunc {
            nvars: self.nvars,
            scalar: num_traits::pow(self.scalar.clone(), k as usize),
            mono: self.mono.scale(k),
            factors: if k == 0 {
                BTreeMap::new()
            } else {
                self.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect()
            },
        })
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.scalar = -out.scalar;
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        out.scalar *= c;
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let common_mono = self.mono.meet(&other.mono);
        let mut common = BTreeMap::new();
        let mut rest_a: Vec<(Arc<LaurentPoly>, i32)> = Vec::new();
        let mut rest_b: Vec<(Arc<LaurentPoly>, i32)> = Vec::new();
        let mut keys: Vec<&Arc<LaurentPoly>> =
            self.factors.keys().chain(other.factors.keys()).collect();
        keys.sort();
        keys.dedup();
        for f in keys {
            let ea = self.factors.get(f).copied().unwrap_or(0);
            let eb = other.factors.get(f).copied().unwrap_or(0);
            let c = ea.min(eb);
            if c != 0 {
                common.insert(f.clone(), c);
            }
            if ea > c {
                rest_a.push((f.clone(), ea - c));
            }
            if eb > c {
                rest_b.push((f.clone(), eb - c));
            }
        }
        let (na, da) = (self.scalar.numer(), self.scalar.denom());
        let (nb, db) = (other.scalar.numer(), other.scalar.denom());
        let l = da.lcm(db);
        let ia = na * (&l / da);
        let ib = nb * (&l / db);
        let pa = expand(self.nvars, &rest_a).mul_term(&self.mono.sub(&common_mono), &ia);
        let pb = expand(self.nvars, &rest_b).mul_term(&other.mono.sub(&common_mono), &ib);
        let sum = &pa + &pb;
        if sum.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let shared = RatFunc {
            nvars: self.nvars,
            scalar: BigRational::new(BigInt::one(), l),
            mono: common_mono,
            factors: common,
        };
        shared.checked_mul(&Self::from_poly(&sum))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Exact equality: the cross-multiplied numerators agree.
    ///
    /// Shared factors are divided out first, which leaves the verdict
    /// unchanged since they are nonzero.
    pub fn eq_exact(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Expanded numerator; carries the whole monomial part and the sign.
    pub fn numerator(&self) -> LaurentPoly {
        let pos: Vec<_> = self
            .factors
            .iter()
            .filter(|(_, e)| **e > 0)
            .map(|(f, e)| (f.clone(), *e))
            .collect();
        expand(self.nvars, &pos).mul_term(&self.mono, self.scalar.numer())
    }

    /// Expanded denominator: no monomial content, positive anchor term.
    pub fn denominator(&self) -> LaurentPoly {
        let neg: Vec<_> = self
            .factors
            .iter()
            .filter(|(_, e)| **e < 0)
            .map(|(f, e)| (f.clone(), -*e))
            .collect();
        expand(self.nvars, &neg).scale(self.scalar.denom())
    }

    /// Returns the canonical form. The representation is kept canonical
    /// after every operation, so this only rebuilds shared structure.
    pub fn normalize(&self) -> Self {
        self.clone()
    }

    pub fn eval(&self, point: &EvalPoint) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::SpaceMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut acc = self.scalar.clone() * point.monomial_value(&self.mono)?;
        for (f, e) in &self.factors {
            let val = point.poly_value(f)?;
            if val.is_zero() {
                if *e < 0 {
                    return Err(Error::Evaluation(
                        "denominator vanishes at evaluation point".into(),
                    ));
                }
                return Ok(BigRational::zero());
            }
            acc *= num_traits::pow::Pow::pow(&val, *e);
        }
        Ok(acc)
    }

    /// Applies a monomial substitution to every variable.
    pub fn substitute(&self, images: &[ExponentVector]) -> Result<Self> {
        let target = images.first().map(|e| e.len()).unwrap_or(self.nvars);
        if self.is_zero() {
            return Ok(Self::zero(target));
        }
        let mono = LaurentPoly::monomial(self.mono.clone(), 1).substitute(images)?;
        let mut acc = Self::from_poly(&mono).scale(&self.scalar);
        for (f, e) in &self.factors {
            let g = Self::from_poly(&f.substitute(images)?);
            if g.is_zero() {
                return Err(Error::Arithmetic(
                    "substitution annihilates a tracked factor".into(),
                ));
            }
            acc = acc.checked_mul(&g.pow(*e)?)?;
        }
        Ok(acc)
    }

    /// Total number of expanded terms across tracked factors; a rough
    /// size measure.
    pub fn weight(&self) -> usize {
        self.factors.keys().map(|f| f.len()).sum()
    }
}

fn expand(nvars: usize, parts: &[(Arc<LaurentPoly>, i32)]) -> LaurentPoly {
    let mut polys: Vec<LaurentPoly> = parts
        .iter()
        .map(|(f, e)| {
            debug_assert!(*e > 0);
            f.pow(*e as u32)
        })
        .collect();
    polys.sort_by_key(|p| p.len());
    polys
        .into_iter()
        .fold(LaurentPoly::one(nvars), |acc, p| &acc * &p)
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "{} * x^{:?}", self.scalar, self.mono)?;
        for (p, e) in &self.factors {
            write!(f, " * ({})^{}", p, e)?;
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator(), self.denominator())
    }
}

macro_rules! forward_ratop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            /// Panics on a space mismatch or division by zero; the `checked_*`
            /// forms return errors instead.
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs).expect("rational function arithmetic failed")
            }
        }
    };
}

forward_ratop!(Add, add, checked_add);
forward_ratop!(Sub, sub, checked_sub);
forward_ratop!(Mul, mul, checked_mul);
forward_ratop!(Div, div, checked_div);

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 2; // variables t_1, v

    fn v(k: i32) -> ExponentVector {
        ExponentVector::from_ints(&[0, k])
    }
    fn t1v(a: i32, k: i32) -> ExponentVector {
        ExponentVector::from_ints(&[a, k])
    }
    fn poly(terms: &[((i32, i32), i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            N,
            terms
                .iter()
                .map(|((a, b), c)| (t1v(*a, *b), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn inverse_cancels() {
        let a = RatFunc::one_minus(&v(2));
        let r = &a.inv().unwrap() * &a;
        assert!(r.eq_exact(&RatFunc::one(N)));
        assert!(r.is_monomial());
    }

    #[test]
    fn additive_identity() {
        let a = RatFunc::one_minus(&v(2)).inv().unwrap();
        assert!((&a + &RatFunc::zero(N)).eq_exact(&a));
    }

    #[test]
    fn geometric_complementarity() {
        let a = RatFunc::one_minus(&v(2)).inv().unwrap();
        let b = RatFunc::one_minus(&v(-2)).inv().unwrap();
        let s = &a + &b;
        assert!(s.eq_exact(&RatFunc::one(N)));
        // the shared factor cancels syntactically
        assert!(s.is_monomial());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = RatFunc::one(N);
        assert!(matches!(
            a.checked_div(&RatFunc::zero(N)),
            Err(Error::Arithmetic(_))
        ));
        assert!(RatFunc::new(&LaurentPoly::one(N), &LaurentPoly::zero(N)).is_err());
    }

    #[test]
    fn monomial_content_cancels() {
        let r = RatFunc::new(&poly(&[((1, 1), 1)]), &poly(&[((1, 0), 1)])).unwrap();
        assert!(r.is_monomial());
        assert_eq!(r.monomial_part(), &v(1));
    }

    #[test]
    fn tracked_factor_cancels() {
        let p = RatFunc::from_poly(&poly(&[((0, 0), 1), ((1, 1), 3)]));
        let q = RatFunc::from_poly(&poly(&[((2, 0), 1), ((0, 1), -1)]));
        let shared = RatFunc::one_minus(&v(2));
        let r = &(&shared * &p) / &(&shared * &q);
        assert!(r.factors().all(|(f, _)| f.len() == 2));
        assert_eq!(r.factors().count(), 2);
        assert!(r.eq_exact(&(&p / &q)));
    }

    #[test]
    fn no_gcd_reduction() {
        let num = poly(&[((2, 0), 1), ((0, 2), -1)]);
        let den = poly(&[((1, 0), 1), ((0, 1), -1)]);
        let r = RatFunc::new(&num, &den).unwrap();
        // both factors survive: no multivariate gcd is attempted
        assert_eq!(r.factors().count(), 2);
        let sum = RatFunc::from_poly(&poly(&[((1, 0), 1), ((0, 1), 1)]));
        assert!(r.eq_exact(&sum));
    }

    #[test]
    fn v_is_not_its_inverse() {
        assert!(!RatFunc::monomial(v(1), 1).eq_exact(&RatFunc::monomial(v(-1), 1)));
    }

    #[test]
    fn denominator_is_normalized() {
        let r = RatFunc::one_minus(&v(-2)).inv().unwrap();
        let den = r.denominator();
        assert_eq!(den.min_exponents(), ExponentVector::zero(N));
        assert!(!den.anchor_is_negative());
        let back = RatFunc::new(&r.numerator(), &den).unwrap();
        assert!(back.eq_exact(&r));
    }
}
