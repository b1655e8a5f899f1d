//! q-difference Toda operators acting on twisted truncated series.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::characters::Convention;
use crate::error::{usage, Error, Result};
use crate::fixedpoints::DegreeVector;
use crate::par;
use crate::report::{ring_note, zero_sum_verdict, CheckOptions, CheckRecord, ZeroVerdict};
use crate::symbolic::{RatFunc, Weight};
use crate::umodule::Truncation;
use crate::whittaker::{pair_kw, rgamma_structure_sheaf};

/// How `T_n` acts on the twist `Π Q_i^{γ_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LastFactor {
    /// `μ_n = t_n^σ`.
    #[serde(rename = "uniform")]
    Uniform,
    /// `μ_n = (t_1⋯t_{n-1})^{-σ}`, since no `Q_n` carries a twist.
    #[serde(rename = "literal")]
    Literal,
}

/// Monomial data of the twist: `v^{γ_j - γ_{j-1}} = μ_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Twist {
    pub sigma: i32,
    pub last: LastFactor,
}

impl Twist {
    /// The twist read off `γ_i = -log(t_1⋯t_i)/log v`.
    pub const LITERAL: Twist = Twist {
        sigma: -1,
        last: LastFactor::Literal,
    };

    pub fn new(sigma: i32, last: LastFactor) -> Result<Self> {
        if sigma != 1 && sigma != -1 {
            return Err(usage("twist sign must be ±1"));
        }
        Ok(Twist { sigma, last })
    }

    /// `μ_j`.
    pub fn mu(&self, n: usize, j: usize) -> Weight {
        if j < n || self.last == LastFactor::Uniform {
            return Weight::one(n).t(j, self.sigma);
        }
        (1..n).fold(Weight::one(n), |w, k| w.t(k, -self.sigma))
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = match self.last {
            LastFactor::Uniform => "uniform",
            LastFactor::Literal => "literal",
        };
        write!(f, "sigma={:+} last={last}", self.sigma)
    }
}

/// Right-hand eigenvalue of the Toda equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Eigenvalue {
    /// `Σ t_i²`.
    #[serde(rename = "sum-t-squared")]
    SumSquares,
    /// `Σ t_i^{-2}`.
    #[serde(rename = "sum-t-inverse-squared")]
    SumInverseSquares,
}

impl Eigenvalue {
    pub fn value(&self, n: usize) -> RatFunc {
        let e = match self {
            Eigenvalue::SumSquares => 2,
            Eigenvalue::SumInverseSquares => -2,
        };
        (1..=n).fold(RatFunc::zero(n + 1), |acc, j| &acc + &Weight::one(n).t(j, e).rat())
    }
}

/// Which series a Toda operator is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    /// Coefficients `(k_d, w_d)`.
    I,
    /// Coefficients `[RΓ(O_d)]`.
    J,
}

impl FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" => Ok(SeriesKind::I),
            "J" | "j" => Ok(SeriesKind::J),
            _ => Err(usage(format!("unknown series {s:?}; expected I or J"))),
        }
    }
}

/// `𝔖` or `𝔊`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TodaOperator {
    S,
    G,
}

impl FromStr for TodaOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(TodaOperator::S),
            "G" | "g" => Ok(TodaOperator::G),
            _ => Err(usage(format!("unknown operator {s:?}; expected S or G"))),
        }
    }
}

impl fmt::Display for TodaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TodaOperator::S => "S",
            TodaOperator::G => "G",
        })
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::I => "I",
            SeriesKind::J => "J",
        })
    }
}

/// `Π Q_i^{γ_i} Σ_d s_d Q^d` truncated to a box; the twist is carried as
/// its monomial data only.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    pub tr: Truncation,
    pub twist: Twist,
    coeffs: BTreeMap<DegreeVector, RatFunc>,
    valid: BTreeMap<DegreeVector, bool>,
}

impl TruncatedSeries {
    /// Series with every in-box coefficient given and valid.
    pub fn new(tr: Truncation, twist: Twist, coeffs: BTreeMap<DegreeVector, RatFunc>) -> Result<Self> {
        let degrees = tr.degrees();
        if coeffs.len() != degrees.len() || degrees.iter().any(|d| !coeffs.contains_key(d)) {
            return Err(usage("coefficients must be given exactly on the box"));
        }
        let valid = degrees.into_iter().map(|d| (d, true)).collect();
        Ok(TruncatedSeries {
            tr,
            twist,
            coeffs,
            valid,
        })
    }

    /// The series `1`.
    pub fn constant(tr: Truncation, twist: Twist) -> Self {
        let nv = tr.n + 1;
        let coeffs = tr
            .degrees()
            .into_iter()
            .map(|d| {
                let c = if d.total() == 0 { RatFunc::one(nv) } else { RatFunc::zero(nv) };
                (d, c)
            })
            .collect();
        Self::new(tr, twist, coeffs).expect("coefficients cover the box")
    }

    pub fn rank(&self) -> usize {
        self.tr.n
    }

    /// Coefficient at `d`; zero below degree zero.
    pub fn coefficient(&self, d: &DegreeVector) -> Option<&RatFunc> {
        self.coeffs.get(d)
    }

    fn coefficient_or_zero(&self, d: Option<DegreeVector>) -> Result<RatFunc> {
        match d {
            None => Ok(RatFunc::zero(self.rank() + 1)),
            Some(d) => self
                .coeffs
                .get(&d)
                .cloned()
                .ok_or_else(|| usage(format!("degree {d:?} outside the box"))),
        }
    }

    pub fn is_valid(&self, d: &DegreeVector) -> bool {
        self.valid.get(d).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DegreeVector, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &RatFunc) -> Result<Self> {
        let mut out = self.clone();
        for x in out.coeffs.values_mut() {
            *x = x.checked_mul(c)?;
        }
        Ok(out)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<_> = self
            .coeffs
            .iter()
            .map(|(d, c)| json!({"degree": d, "valid": self.is_valid(d), "value": c}))
            .collect();
        let mut st = s.serialize_struct("TruncatedSeries", 4)?;
        st.serialize_field("n", &self.tr.n)?;
        st.serialize_field("box", &self.tr.bound)?;
        st.serialize_field("twist", &self.twist)?;
        st.serialize_field("coeffs", &entries)?;
        st.end()
    }
}

/// Monomial by which `T_j` scales `Q^{d+γ}`: `v^{d_j - d_{j-1}} μ_j`.
pub fn shift_action(n: usize, j: usize, d: &DegreeVector, twist: Twist) -> Result<Weight> {
    if j == 0 || j > n {
        return Err(usage(format!("shift index {j} out of range for rank {n}")));
    }
    Ok(twist.mu(n, j).v(d.get(j) - d.get(j - 1)))
}

fn shift_sq(n: usize, j: usize, d: &DegreeVector, twist: Twist) -> Result<RatFunc> {
    Ok(shift_action(n, j, d, twist)?.pow(2).rat())
}

/// Terms whose sum is `(op s)_d`.
fn operator_terms(op: TodaOperator, s: &TruncatedSeries, d: &DegreeVector) -> Result<Vec<RatFunc>> {
    let n = s.rank();
    let tw = s.twist;
    let here = s.coefficient_or_zero(Some(d.clone()))?;
    let mut terms = Vec::new();
    for j in 1..=n {
        terms.push(shift_sq(n, j, d, tw)?.checked_mul(&here)?);
    }
    match op {
        TodaOperator::G => {
            for j in 2..=n {
                let prev = s.coefficient_or_zero(d.shifted(j - 1, -1))?;
                terms.push(shift_sq(n, j, d, tw)?.checked_mul(&prev)?.neg());
            }
        }
        TodaOperator::S => {
            let vm2 = Weight::one(n).v(-2);
            for i in 1..n {
                let Some(src) = d.shifted(i, -1) else { continue };
                let w = shift_action(n, i, &src, tw)?
                    .times(&shift_action(n, i + 1, &src, tw)?)
                    .times(&vm2);
                let prev = s.coefficient_or_zero(Some(src))?;
                terms.push(w.rat().checked_mul(&prev)?);
            }
        }
    }
    Ok(terms)
}

fn apply_op(op: TodaOperator, s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let mut out = s.clone();
    for d in s.tr.degrees() {
        let terms = operator_terms(op, s, &d)?;
        let v = terms
            .iter()
            .try_fold(RatFunc::zero(s.rank() + 1), |a, t| a.checked_add(t))?;
        let refs_valid = (1..s.rank())
            .filter_map(|i| d.shifted(i, -1))
            .all(|r| s.is_valid(&r));
        out.valid.insert(d.clone(), s.is_valid(&d) && refs_valid);
        out.coeffs.insert(d, v);
    }
    Ok(out)
}

/// `𝔊 = T_1² + Σ_{j≥2} T_j² (1 - Q_{j-1})`.
pub fn apply_g(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    apply_op(TodaOperator::G, s)
}

/// `𝔖 = Σ_j T_j² + v^{-2} Σ_i Q_i T_i T_{i+1}`.
pub fn apply_s(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    apply_op(TodaOperator::S, s)
}

/// Series with coefficients `(k_d, w_d)`.
pub fn build_i(tr: Truncation, twist: Twist, conv: Convention) -> Result<TruncatedSeries> {
    let degrees = tr.degrees();
    let vals = par::try_map(&degrees, |d| Ok(pair_kw(tr.n, d, conv)?.via_pairing))?;
    TruncatedSeries::new(tr, twist, degrees.into_iter().zip(vals).collect())
}

/// Series with coefficients `[RΓ(O_d)]`.
pub fn build_j(tr: Truncation, twist: Twist, conv: Convention) -> Result<TruncatedSeries> {
    let degrees = tr.degrees();
    let vals = par::try_map(&degrees, |d| rgamma_structure_sheaf(tr.n, d, conv))?;
    TruncatedSeries::new(tr, twist, degrees.into_iter().zip(vals).collect())
}

pub fn build(kind: SeriesKind, tr: Truncation, twist: Twist, conv: Convention) -> Result<TruncatedSeries> {
    match kind {
        SeriesKind::I => build_i(tr, twist, conv),
        SeriesKind::J => build_j(tr, twist, conv),
    }
}

/// Ring in which every degree of an eigen-check held.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EigenOutcome {
    #[serde(rename = "free")]
    Free,
    #[serde(rename = "quotient")]
    Quotient,
    #[serde(rename = "fail")]
    Fail,
}

fn anchor(op: TodaOperator) -> &'static str {
    match op {
        TodaOperator::S => "(Σ_j T_j² + v^{-2} Σ_i Q_i T_i T_{i+1}) I = λ I",
        TodaOperator::G => "(T_1² + Σ_{j≥2} T_j² (1 - Q_{j-1})) J = λ J",
    }
}

/// Per-degree comparison `(op s)_d = λ s_d` on the valid degrees.
pub fn check_eigen(
    s: &TruncatedSeries,
    op: TodaOperator,
    eig: Eigenvalue,
    opts: &CheckOptions,
) -> Result<Vec<CheckRecord>> {
    let n = s.rank();
    let lambda = eig.value(n);
    let degrees = s.tr.degrees();
    let name = format!("toda-{op}");
    par::try_map(&degrees, |d| {
        let rec = CheckRecord::new(name.clone(), anchor(op), n, Some(d.clone()));
        if !s.is_valid(d) {
            return Ok(rec.skipped("coefficient references degrees outside the box"));
        }
        let mut terms = operator_terms(op, s, d)?;
        terms.push(lambda.checked_mul(&s.coefficient_or_zero(Some(d.clone()))?)?.neg());
        Ok(match zero_sum_verdict(&terms, n, opts)? {
            ZeroVerdict::Free => rec.pass(ring_note(false)),
            ZeroVerdict::Quotient => rec.pass(ring_note(true)),
            ZeroVerdict::Nonzero(r) => rec.fail(
                "eigen-equation fails",
                Some(json!({"residual": r, "twist": s.twist})),
            ),
        })
    })
}

/// Summarizes eigen-check records.
pub fn outcome(records: &[CheckRecord]) -> EigenOutcome {
    if records.iter().any(|r| r.is_fail()) {
        EigenOutcome::Fail
    } else if records.iter().any(|r| r.detail == ring_note(true)) {
        EigenOutcome::Quotient
    } else {
        EigenOutcome::Free
    }
}

/// One candidate convention and how both eigen-equations fare under it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CalibrationRow {
    pub twist: Twist,
    pub eigenvalue: Eigenvalue,
    /// Degree-zero coefficient equation alone.
    pub degree_zero: EigenOutcome,
    pub s_on_i: EigenOutcome,
    pub g_on_j: EigenOutcome,
}

impl CalibrationRow {
    pub fn holds(&self) -> bool {
        self.s_on_i != EigenOutcome::Fail && self.g_on_j != EigenOutcome::Fail
    }
}

/// Every candidate twist and eigenvalue, the squares eigenvalue first,
/// then its `t ↦ t^{-1}` image.
pub fn candidates() -> Vec<(Twist, Eigenvalue)> {
    let mut out = Vec::new();
    for eig in [Eigenvalue::SumSquares, Eigenvalue::SumInverseSquares] {
        for sigma in [1, -1] {
            for last in [LastFactor::Uniform, LastFactor::Literal] {
                out.push((Twist { sigma, last }, eig));
            }
        }
    }
    out
}

/// Outcome table over [`candidates`] on the given box.
pub fn calibration_table(tr: Truncation, opts: &CheckOptions) -> Result<Vec<CalibrationRow>> {
    let base = Twist::LITERAL;
    let i_series = build_i(tr, base, opts.conv)?;
    let j_series = build_j(tr, base, opts.conv)?;
    let zero_tr = Truncation::new(tr.n, 0)?;
    let mut rows = Vec::new();
    for (twist, eig) in candidates() {
        let with = |s: &TruncatedSeries| TruncatedSeries { twist, ..s.clone() };
        let degree_zero = outcome(&check_eigen(
            &TruncatedSeries::constant(zero_tr, twist),
            TodaOperator::G,
            eig,
            opts,
        )?);
        let s_on_i = outcome(&check_eigen(&with(&i_series), TodaOperator::S, eig, opts)?);
        let g_on_j = outcome(&check_eigen(&with(&j_series), TodaOperator::G, eig, opts)?);
        rows.push(CalibrationRow {
            twist,
            eigenvalue: eig,
            degree_zero,
            s_on_i,
            g_on_j,
        });
    }
    Ok(rows)
}

/// First row of the table under which both equations hold, preferring
/// rows that hold in the free ring.
pub fn calibrate(tr: Truncation, opts: &CheckOptions) -> Result<(CalibrationRow, Vec<CalibrationRow>)> {
    let table = calibration_table(tr, opts)?;
    let free = |r: &&CalibrationRow| r.s_on_i == EigenOutcome::Free && r.g_on_j == EigenOutcome::Free;
    let pick = table
        .iter()
        .find(free)
        .or_else(|| table.iter().find(|r| r.holds()))
        .copied()
        .ok_or_else(|| Error::Degenerate("no twist convention satisfies the Toda equations".into()))?;
    Ok((pick, table))
}

/// Calibration records, both eigen-suites under the calibrated convention,
/// and the mismatched pairing `𝔊` on the `(k, w)` series as a control.
pub fn toda_suite(tr: Truncation, opts: &CheckOptions) -> Result<Vec<CheckRecord>> {
    let n = tr.n;
    let (pick, table) = calibrate(tr, opts)?;
    let mut out = Vec::new();
    for row in &table {
        out.push(
            CheckRecord::new(
                format!("toda-calibration[{} {:?}]", row.twist, row.eigenvalue),
                "candidate twist and eigenvalue",
                n,
                None,
            )
            .pass(serde_json::to_string(row).expect("row serializes")),
        );
    }
    out.push(
        CheckRecord::new("toda-calibrated", "calibrated twist and eigenvalue", n, None).pass(format!(
            "{} eigenvalue {:?}",
            pick.twist, pick.eigenvalue
        )),
    );
    let i_series = build_i(tr, pick.twist, opts.conv)?;
    let j_series = build_j(tr, pick.twist, opts.conv)?;
    out.extend(check_eigen(&i_series, TodaOperator::S, pick.eigenvalue, opts)?);
    out.extend(check_eigen(&j_series, TodaOperator::G, pick.eigenvalue, opts)?);
    let control = check_eigen(&i_series, TodaOperator::G, pick.eigenvalue, opts)?;
    let failed = control.iter().filter(|r| r.is_fail()).count();
    out.push(
        CheckRecord::new(
            "toda-control",
            "G applied to the (k, w) series is not an eigen-equation",
            n,
            None,
        )
        .with_status(failed > 0 || tr.bound == 0, format!("{failed} degrees fail as expected")),
    );
    Ok(out)
}
