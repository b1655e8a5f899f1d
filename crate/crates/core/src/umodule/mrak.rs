//! The diagonal entry of `E_i F_i - F_i E_i`, as an explicit identity of
//! rational functions.

use crate::error::{usage, Result};
use crate::fixedpoints::FixedPoint;
use crate::report::{eq_checked, CheckOptions};
use crate::symbolic::{eq_random, ExponentVector, LaurentPoly, RatFunc, Weight};

/// Rows `d_{i-1,·}`, `d_{i,·}`, `d_{i+1,·}` of a fixed point around row `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrakRows {
    pub n: usize,
    pub i: usize,
    pub prev: Vec<i32>,
    pub cur: Vec<i32>,
    pub next: Vec<i32>,
}

impl MrakRows {
    pub fn new(n: usize, i: usize, prev: Vec<i32>, cur: Vec<i32>, next: Vec<i32>) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(usage(format!("row index {i} out of range for rank {n}")));
        }
        if prev.len() != i - 1 || cur.len() != i || next.len() != i + 1 {
            return Err(usage("rows must have lengths i-1, i, i+1"));
        }
        if prev.iter().chain(&cur).chain(&next).any(|&x| x < 0) {
            return Err(usage("row entries must be nonnegative"));
        }
        if (0..i - 1).any(|k| cur[k] > prev[k]) || (0..i).any(|k| next[k] > cur[k]) {
            return Err(usage("rows violate column monotonicity"));
        }
        if i + 1 == n && next.iter().any(|&x| x != 0) {
            return Err(usage("row n must vanish"));
        }
        Ok(MrakRows { n, i, prev, cur, next })
    }

    pub fn from_point(p: &FixedPoint, i: usize) -> Result<Self> {
        let row = |a: usize, len: usize| (1..=len).map(|k| p.get(a, k)).collect::<Vec<_>>();
        Self::new(p.rank(), i, row(i - 1, i - 1), row(i, i), row(i + 1, i + 1))
    }

    /// Random admissible rows with entries at most `max`.
    pub fn random<R: rand::Rng>(n: usize, i: usize, max: i32, rng: &mut R) -> Result<Self> {
        if max < 0 {
            return Err(usage("entry bound must be nonnegative"));
        }
        let prev: Vec<i32> = (0..i.saturating_sub(1)).map(|_| rng.gen_range(0..=max)).collect();
        let cur: Vec<i32> = (0..i)
            .map(|k| rng.gen_range(0..=prev.get(k).copied().unwrap_or(max)))
            .collect();
        let next: Vec<i32> = (0..=i)
            .map(|k| {
                if i + 1 == n {
                    0
                } else {
                    rng.gen_range(0..=cur.get(k).copied().unwrap_or(max))
                }
            })
            .collect();
        Self::new(n, i, prev, cur, next)
    }

    fn prev_at(&self, k: usize) -> i32 {
        self.prev[k - 1]
    }
    fn cur_at(&self, k: usize) -> i32 {
        self.cur[k - 1]
    }
    fn next_at(&self, k: usize) -> i32 {
        self.next[k - 1]
    }
}

/// Both sides of one instance of the identity.
#[derive(Clone, Debug)]
pub struct MrakSides {
    pub lhs: RatFunc,
    pub rhs: RatFunc,
}

fn om(w: Weight) -> RatFunc {
    w.one_minus()
}

/// Sides in the original `t, v` variables for the given rows.
pub fn mrak_sides(rows: &MrakRows) -> Result<MrakSides> {
    let (n, i) = (rows.n, rows.i);
    let w = || Weight::one(n);
    let dm: i32 = rows.prev.iter().sum();
    let d0: i32 = rows.cur.iter().sum();
    let dp: i32 = rows.next.iter().sum();

    let a = w().t(i, 1).t(i + 1, -1).v(dm - 2 * d0 + dp - 1).rat();
    let b = w().t(i, -1).t(i + 1, 1).v(-dm + 2 * d0 - dp + 1).rat();
    let qd = (&w().v(1).rat() - &w().v(-1).rat()).inv()?;
    let sq = om(w().v(2)).pow(2)?;
    let tail = w().v(dm - dp).t(i, 1).t(i + 1, 1).rat();
    let lhs = (&a - &b).checked_mul(&qd)?.checked_mul(&sq)?.checked_mul(&tail)?;

    let mut rhs = RatFunc::zero(n + 1);
    for shift in [1, 0] {
        // shift = 1 is the first sum, shift = 0 the subtracted one
        let (s1, s0) = (2 * shift, 2 - 2 * shift);
        for j in 1..=i {
            let dij = rows.cur_at(j);
            let mut term = w().t(j, 2).v(-2 * dij + s1).rat();
            term = term.checked_mul(&om(w().t(i, 2).t(j, -2).v(2 * dij - 2 * rows.next_at(i) + s0)))?;
            term = term.checked_mul(&om(w().t(i + 1, 2).t(j, -2).v(2 * dij - 2 * rows.next_at(i + 1) + s0)))?;
            for k in (1..=i).filter(|&k| k != j) {
                let dik = rows.cur_at(k);
                let x = om(w().t(k, 2).t(j, -2).v(2 * dij - 2 * dik + s0));
                let y = om(w().t(j, 2).t(k, -2).v(2 * dik - 2 * dij + s1));
                term = term.checked_mul(&x.checked_mul(&y)?.inv()?)?;
            }
            for k in 1..i {
                let x = om(w().t(k, 2).t(j, -2).v(2 * dij - 2 * rows.next_at(k) + s0));
                let y = om(w().t(j, 2).t(k, -2).v(2 * rows.prev_at(k) - 2 * dij + s1));
                term = term.checked_mul(&x)?.checked_mul(&y)?;
            }
            rhs = if shift == 1 { &rhs + &term } else { &rhs - &term };
        }
    }
    Ok(MrakSides { lhs, rhs })
}

/// Variable layout of the substituted form: `s_1..s_i, r_1..r_{i+1},
/// p_1..p_{i-1}, q`.
#[derive(Clone, Copy, Debug)]
pub struct SubstSpace {
    pub i: usize,
}

impl SubstSpace {
    pub fn nvars(&self) -> usize {
        3 * self.i + 1
    }
    pub fn s(&self, j: usize) -> usize {
        j - 1
    }
    pub fn r(&self, k: usize) -> usize {
        self.i + k - 1
    }
    pub fn p(&self, k: usize) -> usize {
        2 * self.i + 1 + k - 1
    }
    pub fn q(&self) -> usize {
        3 * self.i
    }
    fn var(&self, idx: usize) -> LaurentPoly {
        LaurentPoly::var(self.nvars(), idx)
    }
    fn mono(&self, parts: &[(usize, i32)]) -> RatFunc {
        let mut h = vec![0; self.nvars()];
        for &(idx, e) in parts {
            h[idx] += 2 * e;
        }
        RatFunc::monomial(ExponentVector::from_halves(&h), 1)
    }
    /// `x - y`, either side optionally multiplied by `q`.
    fn diff(&self, x: usize, qx: bool, y: usize, qy: bool) -> RatFunc {
        let q = self.var(self.q());
        let a = if qx { &self.var(x) * &q } else { self.var(x) };
        let b = if qy { &self.var(y) * &q } else { self.var(y) };
        RatFunc::from_poly(&(&a - &b))
    }
}

/// Sides of the identity after the change of variables and after dividing
/// by `Π s_j Π p_k^{-1}`.
pub fn mrak_substituted(i: usize) -> Result<MrakSides> {
    let sp = SubstSpace { i };
    let nv = sp.nvars();
    let one = RatFunc::one(nv);
    let q = sp.mono(&[(sp.q(), 1)]);

    let mut mono = vec![(sp.q(), 1)];
    mono.extend((1..=i).map(|j| (sp.s(j), -2)));
    mono.extend((1..i).map(|k| (sp.p(k), 1)));
    mono.extend((1..=i + 1).map(|k| (sp.r(k), 1)));
    let lhs = (&one - &q).checked_mul(&(&sp.mono(&mono) - &one))?;

    let mut first = RatFunc::zero(nv);
    let mut second = RatFunc::zero(nv);
    for j in 1..=i {
        let sj2 = sp.mono(&[(sp.s(j), -2)]);
        let mut a = sj2.clone();
        let mut b = sj2;
        for k in 1..=i + 1 {
            a = a.checked_mul(&sp.diff(sp.s(j), false, sp.r(k), false))?;
            b = b.checked_mul(&sp.diff(sp.s(j), false, sp.r(k), true))?;
        }
        for k in 1..i {
            a = a.checked_mul(&sp.diff(sp.p(k), false, sp.s(j), true))?;
            b = b.checked_mul(&sp.diff(sp.p(k), false, sp.s(j), false))?;
        }
        for k in (1..=i).filter(|&k| k != j) {
            let da = sp
                .diff(sp.s(j), false, sp.s(k), false)
                .checked_mul(&sp.diff(sp.s(k), false, sp.s(j), true))?;
            a = a.checked_div(&da)?;
            let db = sp
                .diff(sp.s(j), false, sp.s(k), true)
                .checked_mul(&sp.diff(sp.s(k), false, sp.s(j), false))?;
            b = b.checked_div(&db)?;
        }
        first = first.checked_add(&a)?;
        second = second.checked_add(&b)?;
    }
    let rhs = q.checked_mul(&first)?.checked_sub(&second)?;
    Ok(MrakSides { lhs, rhs })
}

/// Images of `s, r, p, q` in the `t, v` space for the given rows.
pub fn substitution_images(rows: &MrakRows) -> Vec<ExponentVector> {
    let (n, i) = (rows.n, rows.i);
    let mut out = Vec::with_capacity(3 * i + 1);
    for j in 1..=i {
        out.push(Weight::one(n).t(j, 2).v(-2 * rows.cur_at(j)).exponent());
    }
    for k in 1..=i + 1 {
        out.push(Weight::one(n).t(k, 2).v(-2 * rows.next_at(k)).exponent());
    }
    for k in 1..i {
        out.push(Weight::one(n).t(k, 2).v(-2 * rows.prev_at(k)).exponent());
    }
    out.push(Weight::one(n).v(2).exponent());
    out
}

/// Confirms that the substituted sides, pulled back along the change of
/// variables and multiplied by `Π s_j Π p_k^{-1}`, give the original sides.
pub fn check_change_of_variables(rows: &MrakRows, opts: &CheckOptions) -> Result<bool> {
    let orig = mrak_sides(rows)?;
    let sub = mrak_substituted(rows.i)?;
    let images = substitution_images(rows);
    let mut scale = Weight::one(rows.n);
    for j in 1..=rows.i {
        scale = scale.t(j, 2).v(-2 * rows.cur_at(j));
    }
    for k in 1..rows.i {
        scale = scale.t(k, -2).v(2 * rows.prev_at(k));
    }
    let lhs = sub.lhs.substitute(&images)?.checked_mul(&scale.rat())?;
    let rhs = sub.rhs.substitute(&images)?.checked_mul(&scale.rat())?;
    Ok(eq_checked(&lhs, &orig.lhs, opts)? && eq_checked(&rhs, &orig.rhs, opts)?)
}

/// Verifies the identity for one set of rows: exactly when `exact`, else
/// by seeded random evaluation.
pub fn verify_mrak(rows: &MrakRows, exact: bool, opts: &CheckOptions) -> Result<bool> {
    let s = mrak_sides(rows)?;
    if exact {
        Ok(s.lhs.eq_exact(&s.rhs))
    } else {
        eq_random(&s.lhs, &s.rhs, opts.trials, opts.seed)
    }
}

/// `Σ_{j≤i} Π_{k≤i-1}(p_k - s_j) Π_{k≠j}(s_k - s_j)^{-1} = 1` in
/// independent variables `s_1..s_i, p_1..p_{i-1}`, checked exactly.
pub fn partial_fraction_identity(i: usize) -> Result<bool> {
    if i == 0 {
        return Err(usage("identity needs i ≥ 1"));
    }
    let nv = 2 * i - 1;
    let s = |j: usize| LaurentPoly::var(nv, j - 1);
    let p = |k: usize| LaurentPoly::var(nv, i + k - 1);
    let mut sum = RatFunc::zero(nv);
    for j in 1..=i {
        let mut term = RatFunc::one(nv);
        for k in 1..i {
            term = term.checked_mul(&RatFunc::from_poly(&(&p(k) - &s(j))))?;
        }
        for k in (1..=i).filter(|&k| k != j) {
            term = term.checked_div(&RatFunc::from_poly(&(&s(k) - &s(j))))?;
        }
        sum = sum.checked_add(&term)?;
    }
    Ok(sum.eq_exact(&RatFunc::one(nv)))
}
