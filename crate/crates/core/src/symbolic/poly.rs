use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponents of one Laurent monomial.
///
/// Exponents are stored in half units so that `v^{1/2}`-type weights (which
/// appear in the `L_i` operators) stay exact. Constructors taking plain
/// integers double them; [`ExponentVector::halves`] exposes the raw storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(SmallVec<[i32; 8]>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, nvars))
    }

    /// Builds from integer exponents.
    pub fn from_ints(exps: &[i32]) -> Self {
        ExponentVector(exps.iter().map(|e| 2 * e).collect())
    }

    /// Builds from exponents already expressed in half units.
    pub fn from_halves(halves: &[i32]) -> Self {
        ExponentVector(halves.iter().copied().collect())
    }

    /// Unit exponent on a single variable.
    pub fn unit(nvars: usize, var: usize, exp: i32) -> Self {
        let mut e = Self::zero(nvars);
        e.0[var] = 2 * exp;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn halves(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Integer exponents, or `None` when some exponent is a half-integer.
    pub fn to_ints(&self) -> Option<Vec<i32>> {
        self.0
            .iter()
            .map(|&h| if h % 2 == 0 { Some(h / 2) } else { None })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Self {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    fn degree_halves(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree_halves()
            .cmp(&other.degree_halves())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, h) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write_half(f, *h)?;
        }
        f.write_str("]")
    }
}

pub(crate) fn write_half(f: &mut fmt::Formatter<'_>, h: i32) -> fmt::Result {
    if h % 2 == 0 {
        write!(f, "{}", h / 2)
    } else {
        write!(f, "{}/2", h)
    }
}

/// Integer-coefficient Laurent polynomial in a fixed number of variables.
///
/// Terms are kept in graded-lexicographic order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    pub fn monomial(exps: ExponentVector, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable with index `var`, to the first power.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, var, 1), 1)
    }

    /// Collects terms, merging repeats and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, BigInt)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::SpaceMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars, terms: acc })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded-lex ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// The single term, when the polynomial is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.as_monomial(), Some((e, c)) if e.is_zero() && c.is_one())
    }

    /// Sum of coefficients: the value at the all-ones point.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
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

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.get_mut(e) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if let Some((e, c)) = small.as_monomial() {
            return Ok(big.mul_term(e, c));
        }
        let mut acc: HashMap<ExponentVector, BigInt> =
            HashMap::with_capacity(small.len() * big.len());
        for (ea, ca) in &small.terms {
            for (eb, cb) in &big.terms {
                *acc.entry(ea.add(eb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Multiplies by the single term `c * x^e`.
    pub fn mul_term(&self, e: &ExponentVector, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&ExponentVector::zero(self.nvars), c)
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (zero polynomial: zeros).
    pub fn min_exponents(&self) -> ExponentVector {
        let mut it = self.terms.keys();
        match it.next() {
            None => ExponentVector::zero(self.nvars),
            Some(first) => it.fold(first.clone(), |m, e| m.meet(e)),
        }
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub(crate) fn div_exact_scalar(&self, c: &BigInt) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v / c))
                .collect(),
        }
    }

    /// Smallest term in graded-lex order.
    pub fn anchor(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next()
    }

    /// Applies the monomial substitution `x_k -> x^{images[k]}`.
    ///
    /// Images must have integer exponents so that half-unit exponents of
    /// the source stay representable.
    pub fn substitute(&self, images: &[ExponentVector]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::SpaceMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images.first().map(|e| e.len()).unwrap_or(self.nvars);
        let int_images: Vec<Vec<i32>> = images
            .iter()
            .map(|e| {
                e.to_ints()
                    .ok_or_else(|| crate::error::usage("substitution image must have integer exponents"))
            })
            .collect::<Result<_>>()?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut out = vec![0i32; target];
            for (k, &h) in e.halves().iter().enumerate() {
                for (o, m) in out.iter_mut().zip(&int_images[k]) {
                    *o += h * m;
                }
            }
            (ExponentVector::from_halves(&out), c.clone())
        });
        Self::from_terms(target, terms)
    }

    /// Leading sign convention used for canonical factors: the anchor term
    /// is positive.
    pub(crate) fn anchor_is_negative(&self) -> bool {
        self.anchor().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", c)?;
            for (var, h) in e.halves().iter().enumerate() {
                if *h != 0 {
                    write!(f, "*x{}^", var)?;
                    write_half(f, *h)?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics when the operands live in different spaces; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("laurent polynomial space mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}
