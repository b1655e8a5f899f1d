//! The module `M = ⊕_d M_d` in the fixed-point basis, its operators, and
//! the relation checks.

mod mrak;
mod ops;
mod relations;

pub use mrak::{
    check_change_of_variables, mrak_sides, mrak_substituted, partial_fraction_identity,
    substitution_images, verify_mrak, MrakRows, MrakSides, SubstSpace,
};
pub use ops::{
    apply, apply_word, e_prefactor, f_prefactor, k_scalar, l_scalar, GradedOperator, Generator, Path,
};
pub use relations::{
    diagonality_check, relation_catalog, twisted_serre_opposite_sign, verify_relation_set,
    verify_relations, Relation, RelationTerm,
};

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{usage, Result};
use crate::fixedpoints::{DegreeVector, FixedPoint};
use crate::symbolic::{eq_random, RatFunc};

/// Finitely supported vector of `M_d`.
#[derive(Clone, Debug)]
pub struct ModuleVector {
    n: usize,
    degree: DegreeVector,
    coeffs: BTreeMap<FixedPoint, RatFunc>,
}

impl ModuleVector {
    pub fn zero(n: usize, degree: DegreeVector) -> Self {
        ModuleVector {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector `[p]`.
    pub fn basis(p: &FixedPoint) -> Self {
        let mut v = Self::zero(p.rank(), p.degree());
        v.coeffs.insert(p.clone(), RatFunc::one(p.rank() + 1));
        v
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> &DegreeVector {
        &self.degree
    }

    fn check_point(&self, p: &FixedPoint) -> Result<()> {
        if p.rank() != self.n || p.degree() != self.degree {
            return Err(usage(format!(
                "{p:?} does not lie in degree {:?} of rank {}",
                self.degree, self.n
            )));
        }
        Ok(())
    }

    /// Sets the coefficient of `p`, dropping it when zero.
    pub fn insert(&mut self, p: FixedPoint, c: RatFunc) {
        debug_assert!(self.check_point(&p).is_ok());
        if c.is_zero() {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, c);
        }
    }

    /// Adds `c` to the coefficient of `p`.
    pub fn add_term(&mut self, p: &FixedPoint, c: &RatFunc) -> Result<()> {
        self.check_point(p)?;
        let next = match self.coeffs.get(p) {
            Some(old) => old.checked_add(c)?,
            None => c.clone(),
        };
        self.insert(p.clone(), next);
        Ok(())
    }

    pub fn get(&self, p: &FixedPoint) -> Option<&RatFunc> {
        self.coeffs.get(p)
    }

    pub fn coefficient(&self, p: &FixedPoint) -> RatFunc {
        self.coeffs
            .get(p)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.n + 1))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FixedPoint, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every stored coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &RatFunc) -> Result<Self> {
        let mut out = Self::zero(self.n, self.degree.clone());
        for (p, x) in &self.coeffs {
            out.insert(p.clone(), x.checked_mul(c)?);
        }
        Ok(out)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(usage(format!(
                "vectors of degree {:?} and {:?} cannot be combined",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p, &c.neg())?;
        }
        Ok(out)
    }

    /// Componentwise exact equality.
    pub fn eq_exact(&self, other: &Self) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }

    /// Componentwise randomized equality.
    pub fn eq_random(&self, other: &Self, trials: usize, seed: u64) -> Result<bool> {
        self.check_same(other)?;
        let keys: std::collections::BTreeSet<_> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        for p in keys {
            if !eq_random(&self.coefficient(p), &other.coefficient(p), trials, seed)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct Entry<'a>(&'a FixedPoint, &'a RatFunc);

impl Serialize for Entry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Entry", 2)?;
        st.serialize_field("point", self.0)?;
        st.serialize_field("value", self.1)?;
        st.end()
    }
}

impl Serialize for ModuleVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self.coeffs.iter().map(|(p, c)| Entry(p, c)).collect();
        let mut st = s.serialize_struct("ModuleVector", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coeffs", &entries)?;
        st.end()
    }
}

/// Componentwise degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub n: usize,
    pub bound: i32,
}

impl Truncation {
    pub fn new(n: usize, bound: i32) -> Result<Self> {
        if n < 2 {
            return Err(usage("rank must be at least 2"));
        }
        if bound < 0 {
            return Err(usage("box bound must be nonnegative"));
        }
        Ok(Truncation { n, bound })
    }

    pub fn contains(&self, d: &DegreeVector) -> bool {
        d.rank() == self.n && d.in_box(self.bound)
    }

    pub fn degrees(&self) -> Vec<DegreeVector> {
        DegreeVector::all_in_box(self.n, self.bound)
    }
}

/// Matrices `n_{ij}`, `c_{ij} = n_{ij} - n_{ji}` fixing the twisted
/// generators `e_i = E_i K_i^i`, `f_i = K_i^{-i} F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SevostyanovChoice {
    pub n_mat: Vec<Vec<i32>>,
    pub c_mat: Vec<Vec<i32>>,
}

impl SevostyanovChoice {
    /// `n_{ii} = -2i`, `n_{i,i±1} = i`.
    pub fn standard(n: usize) -> Self {
        let r = n - 1;
        let mut n_mat = vec![vec![0; r]; r];
        for i in 1..=r {
            n_mat[i - 1][i - 1] = -2 * i as i32;
            if i > 1 {
                n_mat[i - 1][i - 2] = i as i32;
            }
            if i < r {
                n_mat[i - 1][i] = i as i32;
            }
        }
        let c_mat = (0..r)
            .map(|a| (0..r).map(|b| n_mat[a][b] - n_mat[b][a]).collect())
            .collect();
        SevostyanovChoice { n_mat, c_mat }
    }

    /// `c_{ij}` with 1-based indices.
    pub fn c(&self, i: usize, j: usize) -> i32 {
        self.c_mat[i - 1][j - 1]
    }

    pub fn is_consistent(&self) -> bool {
        let r = self.n_mat.len();
        (0..r).all(|a| (0..r).all(|b| self.c_mat[a][b] == self.n_mat[a][b] - self.n_mat[b][a]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sevostyanov_standard() {
        let s = SevostyanovChoice::standard(4);
        assert!(s.is_consistent());
        assert_eq!(s.c(1, 2), -1);
        assert_eq!(s.c(2, 1), 1);
        assert_eq!(s.c(2, 3), -1);
        assert_eq!(s.c(1, 3), 0);
        assert_eq!(s.c(2, 2), 0);
        assert_eq!(s.n_mat[1], vec![2, -4, 2]);
    }

    #[test]
    fn vector_arithmetic() {
        let p = FixedPoint::zero(3);
        let b = ModuleVector::basis(&p);
        let two = b.checked_add(&b).unwrap();
        assert!(two.eq_exact(&b.scale(&RatFunc::from_int(4, 2)).unwrap()).unwrap());
        assert!(two.checked_sub(&two).unwrap().is_zero());
        let other = ModuleVector::zero(3, DegreeVector::new(vec![1, 0]).unwrap());
        assert!(b.checked_add(&other).is_err());
    }
}
