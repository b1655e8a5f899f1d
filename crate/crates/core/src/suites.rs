//! Named verification suites with an optional wall-clock deadline.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;

use crate::error::{usage, Error, Result};
use crate::qtoda::toda_suite;
use crate::report::{CheckOptions, CheckRecord};
use crate::umodule::{
    check_change_of_variables, diagonality_check, mrak_substituted, verify_mrak, verify_relations,
    MrakRows, Truncation,
};
use crate::whittaker::{convention_suite, shapovalov_suite, whittaker_suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Full,
    Relations,
    Diagonality,
    Mrak,
    Shapovalov,
    Whittaker,
    Toda,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "full" => Suite::Full,
            "relations" => Suite::Relations,
            "diagonality" => Suite::Diagonality,
            "mrak" => Suite::Mrak,
            "shapovalov" => Suite::Shapovalov,
            "whittaker" => Suite::Whittaker,
            "toda" => Suite::Toda,
            _ => return Err(usage(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Full => "full",
            Suite::Relations => "relations",
            Suite::Diagonality => "diagonality",
            Suite::Mrak => "mrak",
            Suite::Shapovalov => "shapovalov",
            Suite::Whittaker => "whittaker",
            Suite::Toda => "toda",
        })
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n: usize,
    pub bound: i32,
    /// Restricts the row-identity suite to one index.
    pub i: Option<usize>,
    /// Largest row entry drawn for the row-identity suite.
    pub row_max: i32,
    pub opts: CheckOptions,
}

impl SuiteConfig {
    pub fn new(n: usize, bound: i32, opts: CheckOptions) -> Result<Self> {
        Truncation::new(n, bound)?;
        Ok(SuiteConfig {
            n,
            bound,
            i: None,
            row_max: 3,
            opts,
        })
    }

    pub fn truncation(&self) -> Truncation {
        Truncation {
            n: self.n,
            bound: self.bound,
        }
    }
}

/// Records produced so far and whether every stage ran.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub records: Vec<CheckRecord>,
    pub complete: bool,
}

type Stage = fn(&SuiteConfig) -> Result<Vec<CheckRecord>>;

fn stages(suite: Suite) -> Vec<Stage> {
    match suite {
        Suite::Relations => vec![relations_stage],
        Suite::Diagonality => vec![diagonality_stage],
        Suite::Mrak => vec![mrak_stage],
        Suite::Shapovalov => vec![shapovalov_stage],
        Suite::Whittaker => vec![convention_stage, whittaker_stage],
        Suite::Toda => vec![toda_stage],
        Suite::Full => vec![
            relations_stage,
            diagonality_stage,
            mrak_stage,
            shapovalov_stage,
            convention_stage,
            whittaker_stage,
            toda_stage,
        ],
    }
}

fn relations_stage(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    verify_relations(cfg.n, &cfg.truncation(), &cfg.opts)
}

fn diagonality_stage(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for i in 1..cfg.n {
        out.extend(diagonality_check(cfg.n, i, &cfg.truncation(), &cfg.opts)?);
    }
    Ok(out)
}

const MRAK_ANCHOR: &str = "commutator coefficient identity for one row triple";
const MRAK_INSTANCES: usize = 3;
const MRAK_MIN_TRIALS: usize = 5;

fn mrak_stage(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let n = cfg.n;
    let indices: Vec<usize> = match cfg.i {
        Some(i) if i == 0 || i >= n => {
            return Err(usage(format!("row index {i} out of range for rank {n}")))
        }
        Some(i) => vec![i],
        None => (1..n).collect(),
    };
    let opts = CheckOptions {
        trials: cfg.opts.trials.max(MRAK_MIN_TRIALS),
        ..cfg.opts
    };
    let mut out = Vec::new();
    for i in indices {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.opts.seed ^ ((i as u64) << 32));
        for k in 0..MRAK_INSTANCES {
            let rows = MrakRows::random(n, i, cfg.row_max, &mut rng)?;
            let label = format!("{rows:?}");
            let ok = verify_mrak(&rows, false, &opts)?;
            out.push(
                CheckRecord::new(format!("mrak-random[{i}#{k}]"), MRAK_ANCHOR, n, None)
                    .with_status(ok, format!("{} random trials on {label}", opts.trials)),
            );
            if k == 0 && i <= 3 {
                let ok = verify_mrak(&rows, true, &opts)?;
                out.push(
                    CheckRecord::new(format!("mrak-exact[{i}#{k}]"), MRAK_ANCHOR, n, None)
                        .with_status(ok, format!("exact on {label}")),
                );
            }
            if i <= 2 {
                let ok = check_change_of_variables(&rows, &opts)?;
                out.push(
                    CheckRecord::new(
                        format!("mrak-change-of-variables[{i}#{k}]"),
                        "substituted identity pulls back to the original one",
                        n,
                        None,
                    )
                    .with_status(ok, label),
                );
            }
        }
        if i <= 2 {
            let s = mrak_substituted(i)?;
            out.push(
                CheckRecord::new(
                    format!("mrak-substituted[{i}]"),
                    "identity in the variables s, r, p, q",
                    n,
                    None,
                )
                .with_status(s.lhs.eq_exact(&s.rhs), "exact in independent variables"),
            );
        }
    }
    Ok(out)
}

fn shapovalov_stage(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    shapovalov_suite(cfg.n, &cfg.truncation(), &cfg.opts)
}

fn convention_stage(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    convention_suite(cfg.n, &cfg.truncation(), &cfg.opts)
}

fn whittaker_stage(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    whittaker_suite(cfg.n, &cfg.truncation(), &cfg.opts)
}

fn toda_stage(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    toda_suite(cfg.truncation(), &cfg.opts)
}

/// Runs the suite's stages in order, stopping before a stage once the
/// deadline has passed.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig, deadline: Option<Instant>) -> Result<SuiteOutcome> {
    let mut records = Vec::new();
    for stage in stages(suite) {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Ok(SuiteOutcome {
                records,
                complete: false,
            });
        }
        records.extend(stage(cfg)?);
    }
    Ok(SuiteOutcome {
        records,
        complete: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Summary;

    #[test]
    fn suite_names_round_trip() {
        for s in ["full", "relations", "diagonality", "mrak", "shapovalov", "whittaker", "toda"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn expired_deadline_stops_early() {
        let cfg = SuiteConfig::new(2, 1, CheckOptions::default()).unwrap();
        let out = run_suite(Suite::Full, &cfg, Some(Instant::now())).unwrap();
        assert!(!out.complete);
        assert!(out.records.is_empty());
    }

    #[test]
    fn full_suite_n2_passes() {
        let cfg = SuiteConfig::new(2, 2, CheckOptions::default()).unwrap();
        let out = run_suite(Suite::Full, &cfg, None).unwrap();
        assert!(out.complete);
        assert_eq!(Summary::of(&out.records).fail, 0);
    }
}
