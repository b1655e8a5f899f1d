use std::fmt;

use serde::Serialize;

use super::{ModuleVector, Truncation};
use crate::characters::{corr_line_weight, corr_tangent_char, point_factor, sym_inverse, Convention};
use crate::error::{usage, Result};
use crate::fixedpoints::{DegreeVector, FixedPoint};
use crate::symbolic::{RatFunc, Weight};

/// Generators acting on `M`; indices are 1-based simple roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    E(usize),
    F(usize),
    /// `e_i = E_i K_i^i`.
    SmallE(usize),
    /// `f_i = K_i^{-i} F_i`.
    SmallF(usize),
    K(usize),
    KInv(usize),
    L(usize),
    LInv(usize),
    /// `K_i^{2i} f_i`, the transpose of `e_i` under the pairing.
    EStar(usize),
}

impl Generator {
    pub fn index(&self) -> usize {
        match *self {
            Generator::E(i)
            | Generator::F(i)
            | Generator::SmallE(i)
            | Generator::SmallF(i)
            | Generator::K(i)
            | Generator::KInv(i)
            | Generator::L(i)
            | Generator::LInv(i)
            | Generator::EStar(i) => i,
        }
    }

    /// `+1` raising, `-1` lowering, `0` diagonal.
    pub fn direction(&self) -> i32 {
        match self {
            Generator::E(_) | Generator::SmallE(_) => 1,
            Generator::F(_) | Generator::SmallF(_) | Generator::EStar(_) => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, i) = match *self {
            Generator::E(i) => ("E", i),
            Generator::F(i) => ("F", i),
            Generator::SmallE(i) => ("e", i),
            Generator::SmallF(i) => ("f", i),
            Generator::K(i) => ("K", i),
            Generator::KInv(i) => ("K^-1", i),
            Generator::L(i) => ("L", i),
            Generator::LInv(i) => ("L^-1", i),
            Generator::EStar(i) => ("e*", i),
        };
        write!(f, "{name}_{i}")
    }
}

/// Which construction produces the off-diagonal entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub enum Path {
    /// Explicit factored products.
    #[default]
    Closed,
    /// Fixed-point ratios of localization factors.
    Localized,
}

/// `K_i = t_{i+1} t_i^{-1} v^{2d_i - d_{i-1} - d_{i+1} + 1}`.
pub fn k_scalar(n: usize, i: usize, d: &DegreeVector) -> Weight {
    Weight::one(n)
        .t(i + 1, 1)
        .t(i, -1)
        .v(2 * d.get(i) - d.get(i - 1) - d.get(i + 1) + 1)
}

/// `L_i = (t_1⋯t_i)^{-1} v^{d_i + i(n-i)/2}`; `L_0 = L_n = 1`.
pub fn l_scalar(n: usize, i: usize, d: &DegreeVector) -> Weight {
    if i == 0 || i >= n {
        return Weight::one(n);
    }
    let mut w = Weight::one(n);
    for k in 1..=i {
        w = w.t(k, -1);
    }
    w.v_halves(2 * d.get(i) + (i * (n - i)) as i32)
}

/// Monomial in front of `q_*(L ⊗ p^*)` defining `E_i` at source degree `d`
/// (without the sign, which is `-1`).
pub fn e_prefactor(n: usize, i: usize, d: &DegreeVector) -> Weight {
    let ii = i as i32;
    Weight::one(n)
        .t(i + 1, -ii - 1)
        .t(i, ii - 1)
        .v((ii - 1) * d.get(i - 1) + (ii + 1) * d.get(i + 1) - 2 * ii * d.get(i) - ii)
}

/// Monomial in front of `p_* q^*` defining `F_i` at source degree `d`.
pub fn f_prefactor(n: usize, i: usize, d: &DegreeVector) -> Weight {
    let ii = i as i32;
    Weight::one(n)
        .t(i + 1, ii)
        .t(i, -ii)
        .v(2 * ii * d.get(i) - ii * d.get(i - 1) - ii * d.get(i + 1) - ii)
}

fn signed(w: &Weight, sign: i64) -> RatFunc {
    RatFunc::monomial(w.exponent(), sign)
}

fn one_minus_v2(n: usize) -> Result<RatFunc> {
    Weight::one(n).v(2).one_minus().inv()
}

/// Closed-form entry of `E_i` from `p` to `q = p + e_{ij}`.
fn e_closed(p: &FixedPoint, i: usize, j: usize) -> Result<RatFunc> {
    let n = p.rank();
    let d = p.degree();
    let dij = p.get(i, j);
    let w = e_prefactor(n, i, &d).times(&Weight::one(n).t(j, 2).v(-2 * dij));
    let mut acc = one_minus_v2(n)?;
    for k in (1..=i).filter(|&k| k != j) {
        let f = Weight::one(n).t(j, 2).t(k, -2).v(2 * p.get(i, k) - 2 * dij);
        acc = acc.checked_mul(&f.one_minus().inv()?)?;
    }
    for k in 1..i {
        let f = Weight::one(n).t(j, 2).t(k, -2).v(2 * p.get(i - 1, k) - 2 * dij);
        acc = acc.checked_mul(&f.one_minus())?;
    }
    acc.checked_mul(&signed(&w, -1))
}

/// Closed-form entry of `F_i` from `p` to `q = p - e_{ij}`.
fn f_closed(p: &FixedPoint, i: usize, j: usize) -> Result<RatFunc> {
    let n = p.rank();
    let d = p.degree();
    let dij = p.get(i, j);
    let mut acc = one_minus_v2(n)?.checked_mul(&f_prefactor(n, i, &d).rat())?;
    for k in (1..=i).filter(|&k| k != j) {
        let f = Weight::one(n).t(k, 2).t(j, -2).v(2 * dij - 2 * p.get(i, k));
        acc = acc.checked_mul(&f.one_minus().inv()?)?;
    }
    for k in 1..=i + 1 {
        let f = Weight::one(n).t(k, 2).t(j, -2).v(2 * dij - 2 * p.get(i + 1, k));
        acc = acc.checked_mul(&f.one_minus())?;
    }
    Ok(acc)
}

/// `λ Sχ_{(p,q)} / Sχ_p`: entry of `q_*(L ⊗ p^*)` from lower `p` to upper `q`.
fn raise_localized(p: &FixedPoint, q: &FixedPoint, conv: Convention) -> Result<RatFunc> {
    let corr = sym_inverse(&corr_tangent_char(p, q)?, conv)?;
    let lambda = corr_line_weight(p, q)?.rat();
    lambda.checked_mul(&corr)?.checked_div(&point_factor(p, conv)?)
}

/// `Sχ_{(q,p)} / Sχ_p`: entry of `p_* q^*` from upper `p` to lower `q`.
fn lower_localized(p: &FixedPoint, q: &FixedPoint, conv: Convention) -> Result<RatFunc> {
    let corr = sym_inverse(&corr_tangent_char(q, p)?, conv)?;
    corr.checked_div(&point_factor(p, conv)?)
}

/// A generator realized as a degree-graded matrix on the fixed-point basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    pub n: usize,
    pub gen: Generator,
    pub path: Path,
    pub conv: Convention,
}

impl GradedOperator {
    pub fn new(n: usize, gen: Generator, path: Path, conv: Convention) -> Result<Self> {
        let i = gen.index();
        if n < 2 || i == 0 || i >= n {
            return Err(usage(format!("generator index {i} out of range for rank {n}")));
        }
        Ok(GradedOperator { n, gen, path, conv })
    }

    pub fn closed(n: usize, gen: Generator) -> Result<Self> {
        Self::new(n, gen, Path::Closed, Convention::A)
    }

    pub fn label(&self) -> String {
        self.gen.to_string()
    }

    pub fn index(&self) -> usize {
        self.gen.index()
    }

    /// Degree shift as a vector in `Z^{n-1}`.
    pub fn shift(&self) -> Vec<i32> {
        let mut s = vec![0; self.n - 1];
        s[self.index() - 1] = self.gen.direction();
        s
    }

    pub fn target_degree(&self, d: &DegreeVector) -> Option<DegreeVector> {
        match self.gen.direction() {
            0 => Some(d.clone()),
            delta => d.shifted(self.index(), delta),
        }
    }

    /// Scalar of a diagonal generator at degree `d`.
    pub fn diagonal_scalar(&self, d: &DegreeVector) -> Option<Weight> {
        let (n, i) = (self.n, self.index());
        match self.gen {
            Generator::K(_) => Some(k_scalar(n, i, d)),
            Generator::KInv(_) => Some(k_scalar(n, i, d).inv()),
            Generator::L(_) => Some(l_scalar(n, i, d)),
            Generator::LInv(_) => Some(l_scalar(n, i, d).inv()),
            _ => None,
        }
    }

    /// Basis vectors with a possibly nonzero entry from `p`.
    pub fn targets(&self, p: &FixedPoint) -> Vec<FixedPoint> {
        let i = self.index();
        match self.gen.direction() {
            0 => vec![p.clone()],
            1 => p.raise(i).into_iter().map(|(q, _)| q).collect(),
            _ => p.lower(i).into_iter().map(|(q, _)| q).collect(),
        }
    }

    /// Matrix entry from source `p` to target `q`; zero off the adjacency.
    pub fn entry(&self, p: &FixedPoint, q: &FixedPoint) -> Result<RatFunc> {
        let (n, i) = (self.n, self.index());
        let zero = RatFunc::zero(n + 1);
        if let Some(w) = self.diagonal_scalar(&p.degree()) {
            return Ok(if p == q { w.rat() } else { zero });
        }
        let raising = self.gen.direction() > 0;
        let adj = if raising { p.raised_entry(q) } else { q.raised_entry(p) };
        let j = match adj {
            Some((ii, j)) if ii == i => j,
            _ => return Ok(zero),
        };
        let (ds, dt) = (p.degree(), q.degree());
        match (self.gen, self.path) {
            (Generator::E(_), Path::Closed) => e_closed(p, i, j),
            (Generator::E(_), Path::Localized) => {
                let pref = signed(&e_prefactor(n, i, &ds), -1);
                pref.checked_mul(&raise_localized(p, q, self.conv)?)
            }
            (Generator::F(_), Path::Closed) => f_closed(p, i, j),
            (Generator::F(_), Path::Localized) => {
                f_prefactor(n, i, &ds).rat().checked_mul(&lower_localized(p, q, self.conv)?)
            }
            (Generator::SmallE(_), Path::Closed) => {
                let k = k_scalar(n, i, &ds).pow(i as i32);
                e_closed(p, i, j)?.checked_mul(&k.rat())
            }
            (Generator::SmallE(_), Path::Localized) => {
                let pref = Weight::one(n)
                    .t(i + 1, -1)
                    .t(i, -1)
                    .v(ds.get(i + 1) - ds.get(i - 1));
                signed(&pref, -1).checked_mul(&raise_localized(p, q, self.conv)?)
            }
            (Generator::SmallF(_), Path::Closed) => {
                let k = k_scalar(n, i, &dt).pow(-(i as i32));
                f_closed(p, i, j)?.checked_mul(&k.rat())
            }
            (Generator::SmallF(_), Path::Localized) => lower_localized(p, q, self.conv),
            (Generator::EStar(_), path) => {
                let f = GradedOperator { gen: Generator::SmallF(i), path, ..*self };
                let k = k_scalar(n, i, &dt).pow(2 * i as i32);
                f.entry(p, q)?.checked_mul(&k.rat())
            }
            _ => unreachable!("diagonal generators handled above"),
        }
    }
}

/// Sparse product `op · x`. `None` when the target degree is negative or
/// leaves the truncation box.
pub fn apply(op: &GradedOperator, x: &ModuleVector, tr: &Truncation) -> Result<Option<ModuleVector>> {
    let Some(td) = op.target_degree(x.degree()) else {
        return Ok(None);
    };
    if !tr.contains(&td) {
        return Ok(None);
    }
    let mut out = ModuleVector::zero(op.n, td);
    for (p, c) in x.iter() {
        for q in op.targets(p) {
            let e = op.entry(p, &q)?;
            if !e.is_zero() {
                out.add_term(&q, &c.checked_mul(&e)?)?;
            }
        }
    }
    Ok(Some(out))
}

/// Applies `ops[0] ops[1] ⋯ ops[k-1]` to `x` (rightmost first).
pub fn apply_word(
    ops: &[GradedOperator],
    x: &ModuleVector,
    tr: &Truncation,
) -> Result<Option<ModuleVector>> {
    let mut cur = x.clone();
    for op in ops.iter().rev() {
        match apply(op, &cur, tr)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}
