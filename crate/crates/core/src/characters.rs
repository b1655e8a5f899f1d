//! Torus characters at fixed points: tangent spaces, correspondence
//! tangent spaces, line-bundle fibers, symmetric-algebra factors and
//! determinant-of-cohomology weights.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::fixedpoints::{enumerate, DegreeVector, FixedPoint};
use crate::symbolic::{geometric_block, ExponentVector, LaurentPoly, RatFunc, Weight};
use crate::umodule::ModuleVector;

/// Orientation used when turning a tangent character into a localization
/// factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub enum Convention {
    /// `Sχ = Π (1 - w)^{-1}` over the tangent weights `w`.
    #[default]
    A,
    /// The same product over the dual weights `w^{-1}`.
    B,
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Convention::A),
            "B" | "b" => Ok(Convention::B),
            _ => Err(usage(format!("unknown convention {s:?}, expected A or B"))),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::A => "A",
            Convention::B => "B",
        })
    }
}

/// The `v`-exponent carried by the coordinate `z` on the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZWeightConvention {
    pub zweight: i32,
}

impl ZWeightConvention {
    /// `z` has weight `v^{-2}`; the only choice reproducing the fiber
    /// weight of the tautological line bundle on correspondences.
    pub const STANDARD: ZWeightConvention = ZWeightConvention { zweight: -2 };

    /// Weight of `O(-a·0)w_j / O(-(a+1)·0)w_j`, spanned by `z^a w_j`.
    pub fn skyscraper_weight(&self, n: usize, j: usize, a: i32) -> Weight {
        Weight::one(n).t(j, 2).v(self.zweight * a)
    }

    /// `Σ_{m=lo}^{hi}` of the weights of `z^{-m}`.
    fn pole_block(&self, lo: i32, hi: i32, base: &ExponentVector) -> LaurentPoly {
        if self.zweight == -2 {
            return geometric_block(lo, hi, base);
        }
        let nvars = base.len();
        let terms = (lo..=hi).map(|m| {
            let mut h = base.halves().to_vec();
            h[nvars - 1] -= 2 * self.zweight * m;
            (ExponentVector::from_halves(&h), BigInt::from(1))
        });
        LaurentPoly::from_terms(nvars, terms).expect("terms share the space of base")
    }
}

impl Default for ZWeightConvention {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Virtual character of a torus representation, as a Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct Character(LaurentPoly);

impl Character {
    pub fn new(p: LaurentPoly) -> Self {
        Character(p)
    }

    pub fn zero(n: usize) -> Self {
        Character(LaurentPoly::zero(n + 1))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.nvars() - 1
    }

    /// Virtual dimension: the value at `t = v = 1`.
    pub fn dimension(&self) -> BigInt {
        self.0.eval_at_ones()
    }

    /// Multiplicity of the trivial weight.
    pub fn trivial_multiplicity(&self) -> BigInt {
        self.0.coefficient(&ExponentVector::zero(self.0.nvars()))
    }

    /// Weights with multiplicities; fails on a negative multiplicity.
    pub fn weights(&self) -> Result<Vec<(ExponentVector, u32)>> {
        self.0
            .terms()
            .map(|(e, c)| {
                if c.is_negative() {
                    Err(usage(format!("weight {e:?} has negative multiplicity {c}")))
                } else {
                    u32::try_from(c)
                        .map(|m| (e.clone(), m))
                        .map_err(|_| usage("multiplicity out of range"))
                }
            })
            .collect()
    }

    pub fn dual(&self) -> Character {
        let nvars = self.0.nvars();
        let images: Vec<_> = (0..nvars)
            .map(|k| ExponentVector::unit(nvars, k, -1))
            .collect();
        Character(self.0.substitute(&images).expect("inversion is monomial"))
    }

    fn add_assign(&mut self, p: LaurentPoly) {
        self.0 = &self.0 + &p;
    }

    fn sub_assign(&mut self, p: LaurentPoly) {
        self.0 = &self.0 - &p;
    }
}

fn t_ratio(n: usize, k: usize, j: usize) -> ExponentVector {
    Weight::one(n).t(k, 2).t(j, -2).exponent()
}

/// Character of `Hom(O(-a·0)w_j, O(-b·0)w_k)`: sections of `O((a-b)·0)`
/// twisted by `t_k^2 t_j^{-2}`.
pub fn hom_char(n: usize, a: i32, j: usize, b: i32, k: usize) -> Character {
    let zw = ZWeightConvention::STANDARD;
    Character(zw.pole_block(0, a - b, &t_ratio(n, k, j)))
}

/// Flag `W_1 ⊂ … ⊂ W_r ⊂ W = ⊕_{k≤n} O w_k` of split sheaves.
///
/// Row `l` lists the summands `O(-a·0)w_j` of `W_l` as `(j, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagData {
    n: usize,
    rows: Vec<Vec<(usize, i32)>>,
}

impl FlagData {
    pub fn new(n: usize, rows: Vec<Vec<(usize, i32)>>) -> Result<Self> {
        let f = FlagData { n, rows };
        f.validate()?;
        Ok(f)
    }

    fn twist(row: &[(usize, i32)], k: usize) -> Option<i32> {
        row.iter().find(|(j, _)| *j == k).map(|(_, a)| *a)
    }

    fn validate(&self) -> Result<()> {
        for (l, row) in self.rows.iter().enumerate() {
            for (pos, &(j, a)) in row.iter().enumerate() {
                if j == 0 || j > self.n || a < 0 {
                    return Err(usage(format!("row {l}: bad summand ({j}, {a})")));
                }
                if row[..pos].iter().any(|(k, _)| *k == j) {
                    return Err(usage(format!("row {l}: column {j} repeated")));
                }
            }
            if let Some(next) = self.rows.get(l + 1) {
                for &(j, a) in row {
                    match Self::twist(next, j) {
                        Some(b) if b <= a => {}
                        _ => {
                            return Err(usage(format!(
                                "row {l} is not contained in row {}",
                                l + 1
                            )))
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The flag of a fixed point.
    pub fn from_point(p: &FixedPoint) -> Self {
        let n = p.rank();
        let rows = (1..n)
            .map(|i| (1..=i).map(|j| (j, p.get(i, j))).collect())
            .collect();
        FlagData { n, rows }
    }

    /// The flag of a correspondence point: `W'_i` inserted below `W_i`.
    pub fn from_pair(p: &FixedPoint, upper: &FixedPoint) -> Result<Self> {
        let (i, _) = p
            .raised_entry(upper)
            .ok_or_else(|| usage(format!("{p:?} and {upper:?} are not adjacent")))?;
        let n = p.rank();
        let mut rows = Vec::with_capacity(n);
        for l in 1..n {
            if l == i {
                rows.push((1..=l).map(|j| (j, upper.get(l, j))).collect());
            }
            rows.push((1..=l).map(|j| (j, p.get(l, j))).collect());
        }
        Ok(FlagData { n, rows })
    }

    /// Character of `Hom(W_l, W / W_m)` with sections vanishing at infinity
    /// on the free part.
    fn hom_to_quotient(&self, l: usize, m: usize, zw: ZWeightConvention) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(self.n + 1);
        for &(j, a) in &self.rows[l] {
            for k in 1..=self.n {
                let base = t_ratio(self.n, k, j);
                let block = match Self::twist(&self.rows[m], k) {
                    Some(b) => zw.pole_block(a - b + 1, a, &base),
                    None => zw.pole_block(1, a, &base),
                };
                acc = &acc + &block;
            }
        }
        acc
    }
}

/// Tangent character of the based flag space at the flag `f`, computed as
/// the kernel of the flag-compatibility map between Hom spaces.
pub fn flag_tangent_oracle(f: &FlagData) -> Result<Character> {
    flag_tangent_oracle_with(f, ZWeightConvention::STANDARD)
}

pub fn flag_tangent_oracle_with(f: &FlagData, zw: ZWeightConvention) -> Result<Character> {
    f.validate()?;
    let r = f.rows.len();
    let mut ch = Character::zero(f.n);
    for l in 0..r {
        ch.add_assign(f.hom_to_quotient(l, l, zw));
    }
    for l in 0..r.saturating_sub(1) {
        ch.sub_assign(f.hom_to_quotient(l, l + 1, zw));
    }
    Ok(ch)
}

fn block(n: usize, lo: i32, hi: i32, k: usize, j: usize) -> LaurentPoly {
    geometric_block(lo, hi, &t_ratio(n, k, j))
}

/// Closed-form tangent character at a fixed point.
///
/// For `1 ≤ j ≤ n-1`, `1 ≤ k ≤ n` the coefficient of `t_k^2 t_j^{-2}` is
/// `[j<k](S(0, d_{k-1,j}) - S(d_{k-1,j} - d_{kk} + 1, d_{k-1,j}) - 1)
///  + Σ_{i=max(j,k)}^{n-1} S(d_{ij} - d_{ik} + 1, d_{ij} - d_{i+1,k})`
/// with `S(lo, hi) = Σ_{l=lo}^{hi} v^{2l}` and `d_{n,k} = 0`.
pub fn tangent_char(p: &FixedPoint) -> Character {
    let n = p.rank();
    let mut ch = Character::zero(n);
    for j in 1..n {
        for k in 1..=n {
            if j < k {
                let top = p.get(k - 1, j);
                ch.add_assign(block(n, 0, top, k, j));
                ch.sub_assign(block(n, top - p.get(k, k) + 1, top, k, j));
                ch.sub_assign(block(n, 0, 0, k, j));
            }
            for i in j.max(k)..n {
                ch.add_assign(block(
                    n,
                    p.get(i, j) - p.get(i, k) + 1,
                    p.get(i, j) - p.get(i + 1, k),
                    k,
                    j,
                ));
            }
        }
    }
    ch
}

/// The double sum exactly as usually displayed: `k` only up to `n-1`, all
/// three blocks for every pair `(k, j)`, entries off the triangle read as 0.
/// Kept to document how it differs from [`tangent_char`].
pub fn tangent_char_as_printed(p: &FixedPoint) -> Character {
    let n = p.rank();
    let mut ch = Character::zero(n);
    for k in 1..n {
        for j in 1..n {
            let top = p.get(k - 1, j);
            ch.add_assign(block(n, 0, top, k, j));
            ch.sub_assign(block(n, top - p.get(k, k) + 1, top, k, j));
            for i in j.max(k)..n {
                ch.add_assign(block(
                    n,
                    p.get(i, j) - p.get(i, k) + 1,
                    p.get(i, j) - p.get(i + 1, k),
                    k,
                    j,
                ));
            }
            if j < k {
                ch.sub_assign(block(n, 0, 0, k, j));
            }
        }
    }
    ch
}

fn adjacency(p: &FixedPoint, upper: &FixedPoint) -> Result<(usize, usize)> {
    p.raised_entry(upper)
        .ok_or_else(|| usage(format!("{p:?} and {upper:?} are not adjacent")))
}

/// Closed-form tangent character of the correspondence at `(p, upper)`,
/// where `upper` raises `d_{ij}` of `p` by one.
pub fn corr_tangent_char(p: &FixedPoint, upper: &FixedPoint) -> Result<Character> {
    let (i, j) = adjacency(p, upper)?;
    let n = p.rank();
    let dij = p.get(i, j);
    let mut ch = tangent_char(p);
    for k in 1..=i {
        ch.add_assign(
            Weight::one(n)
                .t(j, 2)
                .t(k, -2)
                .v(2 * upper.get(i, k) - 2 * dij)
                .poly(),
        );
    }
    for k in 1..i {
        ch.sub_assign(
            Weight::one(n)
                .t(j, 2)
                .t(k, -2)
                .v(2 * p.get(i - 1, k) - 2 * dij)
                .poly(),
        );
    }
    Ok(ch)
}

/// Fiber weight `t_j^2 v^{-2 d_{ij}}` of the tautological line bundle.
pub fn corr_line_weight(p: &FixedPoint, upper: &FixedPoint) -> Result<Weight> {
    let (i, j) = adjacency(p, upper)?;
    Ok(ZWeightConvention::STANDARD.skyscraper_weight(p.rank(), j, p.get(i, j)))
}

/// Localization factor: `Π (1 - w)^{-1}` over the weights (or their duals
/// under convention B).
pub fn sym_inverse(c: &Character, conv: Convention) -> Result<RatFunc> {
    let nvars = c.poly().nvars();
    let mut acc = RatFunc::one(nvars);
    for (w, m) in c.weights()? {
        if w.is_zero() {
            return Err(Error::Degenerate("trivial tangent weight".into()));
        }
        let w = match conv {
            Convention::A => w,
            Convention::B => w.neg(),
        };
        acc = acc.checked_mul(&RatFunc::one_minus(&w).pow(-(m as i32))?)?;
    }
    Ok(acc)
}

/// `det RΓ(O(-a·0) w_j) = t_j^{2-2a} v^{a(a-1)}`, anchored at `t_j^2`.
pub fn det_rgamma_line(n: usize, j: usize, a: i32) -> Weight {
    Weight::one(n).t(j, 2 - 2 * a).v(a * (a - 1))
}

/// Weight of `⊗_i det RΓ(W_i)` at a fixed point.
pub fn det_rgamma_weight(p: &FixedPoint) -> Weight {
    let n = p.rank();
    let mut w = Weight::one(n);
    for i in 1..n {
        for j in 1..=i {
            w = w.times(&det_rgamma_line(n, j, p.get(i, j)));
        }
    }
    w
}

/// [`det_rgamma_weight`] divided by its value at the zero point.
pub fn det_rgamma_weight_normalized(p: &FixedPoint) -> Weight {
    det_rgamma_weight(p).times(&det_rgamma_weight(&FixedPoint::zero(p.rank())).inv())
}

/// Localization factor of the tangent space at `p`.
pub fn point_factor(p: &FixedPoint, conv: Convention) -> Result<RatFunc> {
    sym_inverse(&tangent_char(p), conv)
}

/// Class of the structure sheaf of the degree-`d` space in the fixed-point
/// basis.
pub fn structure_sheaf_vector(n: usize, d: &DegreeVector, conv: Convention) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero(n, d.clone());
    for p in enumerate(n, d)? {
        let c = point_factor(&p, conv)?;
        out.insert(p, c);
    }
    Ok(out)
}

/// Returns `true` when the character has no negative multiplicities.
pub fn is_actual(c: &Character) -> bool {
    c.poly().terms().all(|(_, m)| !m.is_negative())
}
