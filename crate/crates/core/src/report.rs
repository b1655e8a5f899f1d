//! Check records shared by every verification suite.

use serde::Serialize;

use crate::characters::Convention;
use crate::fixedpoints::DegreeVector;
use crate::par;
use crate::symbolic::{eq_random, ExponentVector, RatFunc, RETRY_BUDGET};
use crate::umodule::{ModuleVector, Path};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-out-of-box")]
    SkippedOutOfBox,
}

/// Outcome of one named check at one degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<DegreeVector>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, anchor: &str, n: usize, degree: Option<DegreeVector>) -> Self {
        CheckRecord {
            name: name.into(),
            anchor: anchor.to_string(),
            n,
            degree,
            status: Status::Pass,
            witness: None,
            detail: String::new(),
        }
    }

    pub fn pass(mut self, detail: impl Into<String>) -> Self {
        self.status = Status::Pass;
        self.detail = detail.into();
        self
    }

    pub fn fail(mut self, detail: impl Into<String>, witness: Option<serde_json::Value>) -> Self {
        self.status = Status::Fail;
        self.detail = detail.into();
        self.witness = witness;
        self
    }

    pub fn skipped(mut self, detail: impl Into<String>) -> Self {
        self.status = Status::SkippedOutOfBox;
        self.detail = detail.into();
        self
    }

    pub fn with_status(self, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            self.pass(detail)
        } else {
            self.fail(detail, None)
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Counts of each status.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedOutOfBox => s.skipped += 1,
            }
        }
        s
    }
}

/// Knobs shared by the verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    pub trials: usize,
    pub path: Path,
    pub conv: Convention,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 1,
            trials: 3,
            path: Path::Closed,
            conv: Convention::A,
        }
    }
}

/// Ring in which a vanishing sum was established.
#[derive(Clone, Debug)]
pub enum ZeroVerdict {
    /// Zero with independent `t_1, …, t_n`.
    Free,
    /// Zero only after `t_n := (t_1⋯t_{n-1})^{-1}`.
    Quotient,
    /// Nonzero in both rings; carries the free-ring sum.
    Nonzero(RatFunc),
}

/// Monomial images realizing `t_n := (t_1⋯t_{n-1})^{-1}` on the rank-`n`
/// space.
pub fn quotient_images(n: usize) -> Vec<ExponentVector> {
    let nvars = n + 1;
    (0..nvars)
        .map(|k| {
            if k == n - 1 {
                let mut h = vec![0; nvars];
                for slot in h.iter_mut().take(n - 1) {
                    *slot = -2;
                }
                ExponentVector::from_halves(&h)
            } else {
                ExponentVector::unit(nvars, k, 1)
            }
        })
        .collect()
}

fn sum_all(terms: &[RatFunc], nvars: usize) -> Result<RatFunc> {
    terms
        .iter()
        .try_fold(RatFunc::zero(nvars), |acc, t| acc.checked_add(t))
}

/// Randomized test that `Σ terms` vanishes, evaluating each term separately.
fn sum_vanishes_random(terms: &[RatFunc], nvars: usize, trials: usize, seed: u64) -> Result<bool> {
    use crate::symbolic::EvalPoint;
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut decided = false;
        for _ in 0..RETRY_BUDGET {
            let pt = EvalPoint::random(nvars, &mut rng);
            let vals: Result<Vec<BigRational>> = terms.iter().map(|t| t.eval(&pt)).collect();
            match vals {
                Ok(vals) => {
                    let s: BigRational = vals.into_iter().fold(BigRational::zero(), |a, b| a + b);
                    if !s.is_zero() {
                        return Ok(false);
                    }
                    decided = true;
                    break;
                }
                Err(Error::Evaluation(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if !decided {
            return Err(Error::Evaluation("no admissible evaluation point".into()));
        }
    }
    Ok(true)
}

/// Decides whether `Σ terms = 0`: randomized prescreen, then exact
/// summation, first in the free ring and then modulo `t_1⋯t_n = 1`.
pub fn zero_sum_verdict(terms: &[RatFunc], n: usize, opts: &CheckOptions) -> Result<ZeroVerdict> {
    let nvars = n + 1;
    if sum_vanishes_random(terms, nvars, opts.trials, opts.seed)? {
        let s = sum_all(terms, nvars)?;
        if s.is_zero() {
            return Ok(ZeroVerdict::Free);
        }
    }
    let free_sum = sum_all(terms, nvars)?;
    let images = quotient_images(n);
    let reduced: Result<Vec<RatFunc>> = terms.iter().map(|t| t.substitute(&images)).collect();
    let reduced = reduced?;
    if sum_vanishes_random(&reduced, nvars, opts.trials, opts.seed)? && sum_all(&reduced, nvars)?.is_zero() {
        return Ok(ZeroVerdict::Quotient);
    }
    Ok(ZeroVerdict::Nonzero(free_sum))
}

/// `a = b` as a [`ZeroVerdict`] on `a - b`.
pub fn equality_verdict(a: &RatFunc, b: &RatFunc, n: usize, opts: &CheckOptions) -> Result<ZeroVerdict> {
    zero_sum_verdict(&[a.clone(), b.neg()], n, opts)
}

/// Componentwise [`equality_verdict`] of two vectors in the same degree.
/// Returns the first differing point with its free-ring difference.
pub fn vector_verdict(
    a: &ModuleVector,
    b: &ModuleVector,
    opts: &CheckOptions,
) -> Result<std::result::Result<bool, serde_json::Value>> {
    let n = a.rank();
    let diff = a.checked_sub(b)?;
    let mut quotient = false;
    let keys: Vec<_> = a.iter().map(|(p, _)| p.clone()).chain(b.iter().map(|(p, _)| p.clone())).collect();
    let keys: std::collections::BTreeSet<_> = keys.into_iter().collect();
    for p in keys {
        match equality_verdict(&a.coefficient(&p), &b.coefficient(&p), n, opts)? {
            ZeroVerdict::Free => {}
            ZeroVerdict::Quotient => quotient = true,
            ZeroVerdict::Nonzero(_) => {
                return Ok(Err(serde_json::json!({
                    "point": p,
                    "difference": diff.coefficient(&p),
                })))
            }
        }
    }
    Ok(Ok(quotient))
}

/// Plain randomized equality followed by exact confirmation.
pub fn eq_checked(a: &RatFunc, b: &RatFunc, opts: &CheckOptions) -> Result<bool> {
    if !eq_random(a, b, opts.trials, opts.seed)? {
        return Ok(false);
    }
    Ok(a.eq_exact(b))
}

/// Runs independent checks, possibly in parallel, keeping input order.
pub fn run_all<T, F>(items: &[T], f: F) -> Result<Vec<CheckRecord>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<CheckRecord>> + Sync + Send,
{
    Ok(par::try_map(items, f)?.into_iter().flatten().collect())
}

pub(crate) fn ring_note(quotient: bool) -> &'static str {
    if quotient {
        "holds modulo t_1⋯t_n = 1, not in the free ring"
    } else {
        "exact in the free Laurent ring"
    }
}
