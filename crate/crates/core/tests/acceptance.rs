//! Desk-scale acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use laumon::characters::{corr_tangent_char, flag_tangent_oracle, tangent_char, FlagData};
use laumon::fixedpoints::{enumerate, kostant_count, DegreeVector};
use laumon::qtoda::{calibrate, EigenOutcome, Eigenvalue};
use laumon::report::{CheckOptions, CheckRecord, Summary};
use laumon::suites::{run_suite, Suite, SuiteConfig};
use laumon::symbolic::eq_random;
use laumon::umodule::{
    check_change_of_variables, diagonality_check, mrak_sides, partial_fraction_identity, mrak_substituted, verify_mrak,
    verify_relations, Generator, GradedOperator, MrakRows, Path, Truncation,
};
use laumon::whittaker::{pair_kw, shapovalov_suite, whittaker_suite};
use num_bigint::BigInt;
use rand::SeedableRng;

type Outcome = laumon::Result<(bool, String)>;

const SEED: u64 = 1;
const RELATION_SCALES: [(usize, i32); 3] = [(2, 4), (3, 3), (4, 2)];
const TODA_SCALES: [(usize, i32); 2] = [(2, 4), (3, 2)];
const MRAK_TRIALS: usize = 5;
const MRAK_ROW_MAX: i32 = 3;
const MRAK_INSTANCES: usize = 4;

fn opts() -> CheckOptions {
    CheckOptions {
        seed: SEED,
        ..CheckOptions::default()
    }
}

fn suite_outcome(records: &[CheckRecord]) -> (bool, String) {
    let s = Summary::of(records);
    let first_fail = records.iter().find(|r| r.is_fail()).map(|r| r.name.clone());
    let ok = s.fail == 0 && s.pass > 0;
    let mut detail = format!("{} pass, {} fail, {} skipped", s.pass, s.fail, s.skipped);
    if let Some(name) = first_fail {
        detail.push_str(&format!("; first failure {name}"));
    }
    (ok, detail)
}

fn degrees_up_to(n: usize, total: i32) -> Vec<DegreeVector> {
    DegreeVector::all_up_to_total(n, total)
}

fn fixed_point_counts() -> Outcome {
    let mut checked = 0;
    for n in 2..=4 {
        for d in degrees_up_to(n, 6) {
            let got = enumerate(n, &d)?.len();
            let want = kostant_count(n, &d);
            if got != want {
                return Ok((false, format!("n={n} d={d:?}: {got} points vs {want} partitions")));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} degrees")))
}

fn tangent_oracle() -> Outcome {
    let (mut points, mut pairs) = (0, 0);
    for n in 2..=4 {
        for d in degrees_up_to(n, 4) {
            let dim = BigInt::from(2 * d.total());
            for p in enumerate(n, &d)? {
                let closed = tangent_char(&p);
                if closed != flag_tangent_oracle(&FlagData::from_point(&p))? || closed.dimension() != dim {
                    return Ok((false, format!("tangent mismatch at {p:?}")));
                }
                points += 1;
                for i in 1..n {
                    for (q, _) in p.raise(i) {
                        if q.degree().total() > 4 {
                            continue;
                        }
                        let c = corr_tangent_char(&p, &q)?;
                        if c != flag_tangent_oracle(&FlagData::from_pair(&p, &q)?)?
                            || c.dimension() != &dim + 1
                        {
                            return Ok((false, format!("correspondence mismatch at {p:?} -> {q:?}")));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok((true, format!("{points} points, {pairs} adjacent pairs")))
}

fn coefficient_paths() -> Outcome {
    let o = opts();
    let mut entries = 0;
    for n in 2..=4 {
        for d in degrees_up_to(n, 4) {
            for p in enumerate(n, &d)? {
                for i in 1..n {
                    for (q, _) in p.raise(i) {
                        if q.degree().total() > 4 {
                            continue;
                        }
                        for (g, a, b) in [
                            (Generator::E(i), &p, &q),
                            (Generator::F(i), &q, &p),
                            (Generator::SmallE(i), &p, &q),
                            (Generator::SmallF(i), &q, &p),
                        ] {
                            let closed = GradedOperator::new(n, g, Path::Closed, o.conv)?.entry(a, b)?;
                            let local = GradedOperator::new(n, g, Path::Localized, o.conv)?.entry(a, b)?;
                            if !closed.eq_exact(&local) {
                                return Ok((false, format!("{g} differs from {a:?} to {b:?}")));
                            }
                            entries += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((true, format!("{entries} entries")))
}

fn relation_suite() -> Outcome {
    let mut records = Vec::new();
    for (n, bound) in RELATION_SCALES {
        records.extend(verify_relations(n, &Truncation::new(n, bound)?, &opts())?);
    }
    Ok(suite_outcome(&records))
}

fn diagonality() -> Outcome {
    let mut records = Vec::new();
    for (n, bound) in RELATION_SCALES {
        let tr = Truncation::new(n, bound)?;
        for i in 1..n {
            records.extend(diagonality_check(n, i, &tr, &opts())?);
        }
    }
    Ok(suite_outcome(&records))
}

fn mrak() -> Outcome {
    let o = CheckOptions {
        trials: MRAK_TRIALS,
        ..opts()
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SEED);
    let mut count = 0;
    for i in 1..=4 {
        if i <= 2 {
            let s = mrak_substituted(i)?;
            if !s.lhs.eq_exact(&s.rhs) {
                return Ok((false, format!("substituted form fails for i={i}")));
            }
        }
        // rank i+1 puts the vanishing row n next to row i, rank i+2 does not
        for n in [i + 1, i + 2] {
            for k in 0..MRAK_INSTANCES {
                let rows = MrakRows::random(n, i, MRAK_ROW_MAX, &mut rng)?;
                if !verify_mrak(&rows, false, &o)? {
                    return Ok((false, format!("random check fails on {rows:?}")));
                }
                let spot = i > 2 && k == 0 && n == i + 1;
                if (i <= 2 || spot) && !verify_mrak(&rows, true, &o)? {
                    return Ok((false, format!("exact check fails on {rows:?}")));
                }
                if i <= 2 && !check_change_of_variables(&rows, &o)? {
                    return Ok((false, format!("change of variables fails on {rows:?}")));
                }
                if spot {
                    let s = mrak_sides(&rows)?;
                    if s.lhs.eq_exact(&s.rhs) != eq_random(&s.lhs, &s.rhs, MRAK_TRIALS, SEED)? {
                        return Ok((false, format!("oracles disagree on {rows:?}")));
                    }
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} row triples, {MRAK_TRIALS} trials each")))
}

fn shapovalov() -> Outcome {
    let mut records = Vec::new();
    for n in 2..=3 {
        records.extend(shapovalov_suite(n, &Truncation::new(n, 3)?, &opts())?);
    }
    Ok(suite_outcome(&records))
}

fn whittaker() -> Outcome {
    let mut records = Vec::new();
    for n in 2..=3 {
        records.extend(whittaker_suite(n, &Truncation::new(n, 3)?, &opts())?);
    }
    let names = (1..=4).map(|i| format!("partial-fraction[{i}]"));
    for name in names {
        if !records.iter().any(|r| r.name == name && !r.is_fail()) {
            return Ok((false, format!("{name} missing or failing")));
        }
    }
    if !partial_fraction_identity(4)? {
        return Ok((false, "partial fractions fail at i=4".into()));
    }
    Ok(suite_outcome(&records))
}

fn pairing_two_paths() -> Outcome {
    let mut count = 0;
    for n in 2..=3 {
        for d in degrees_up_to(n, 3) {
            let kw = pair_kw(n, &d, opts().conv)?;
            if !kw.via_pairing.eq_exact(&kw.via_rgamma) {
                return Ok((false, format!("n={n} d={d:?}")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} degrees")))
}

fn toda() -> Outcome {
    let mut picks = Vec::new();
    let mut squares = Vec::new();
    for (n, bound) in TODA_SCALES {
        let (pick, table) = calibrate(Truncation::new(n, bound)?, &opts())?;
        let free = pick.s_on_i == EigenOutcome::Free && pick.g_on_j == EigenOutcome::Free;
        if !free {
            return Ok((false, format!("n={n}: no convention holds in the free ring")));
        }
        picks.push(pick);
        let sq = table
            .iter()
            .filter(|r| r.eigenvalue == Eigenvalue::SumSquares && r.holds())
            .map(|r| format!("{} ({:?}/{:?})", r.twist, r.s_on_i, r.g_on_j))
            .collect::<Vec<_>>();
        squares.push(format!(
            "n={n}: {}",
            if sq.is_empty() { "none".to_string() } else { sq.join(", ") }
        ));
    }
    let same = picks.windows(2).all(|w| w[0].twist == w[1].twist && w[0].eigenvalue == w[1].eigenvalue);
    let p = &picks[0];
    Ok((
        same,
        format!(
            "calibrated {} eigenvalue {:?} holds in the free ring for both series; \
             sum t_i^2 holds under: {}",
            p.twist,
            p.eigenvalue,
            squares.join("; ")
        ),
    ))
}

fn report_bytes(n: usize, bound: i32) -> laumon::Result<Vec<u8>> {
    let cfg = SuiteConfig::new(n, bound, opts())?;
    let out = run_suite(Suite::Full, &cfg, None)?;
    let mut bytes = Vec::new();
    for r in &out.records {
        bytes.extend(serde_json::to_vec(r).expect("record serializes"));
        bytes.push(b'\n');
    }
    Ok(bytes)
}

fn determinism() -> Outcome {
    for (n, bound) in [(2, 4), (3, 2)] {
        let a = report_bytes(n, bound)?;
        let b = report_bytes(n, bound)?;
        if a != b {
            return Ok((false, format!("n={n} box {bound}: reports differ")));
        }
    }
    Ok((true, "full suite for (2,4) and (3,2) byte-identical".into()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, name: "fixed points match Kostant partitions", limit: secs(10), run: fixed_point_counts },
        Criterion { id: 2, name: "closed tangent characters match the kernel oracle", limit: secs(60), run: tangent_oracle },
        Criterion { id: 3, name: "matrix coefficients match localization ratios", limit: secs(60), run: coefficient_paths },
        Criterion { id: 4, name: "quantum group relations", limit: secs(600), run: relation_suite },
        Criterion { id: 5, name: "commutator diagonality", limit: None, run: diagonality },
        Criterion { id: 6, name: "commutator coefficient identity", limit: None, run: mrak },
        Criterion { id: 7, name: "Shapovalov normalization and adjointness", limit: None, run: shapovalov },
        Criterion { id: 8, name: "Whittaker eigenvectors and pushforward identity", limit: None, run: whittaker },
        Criterion { id: 9, name: "Whittaker pairing two-path equality", limit: None, run: pairing_two_paths },
        Criterion { id: 10, name: "q-Toda eigen-equations", limit: secs(300), run: toda },
        Criterion { id: 11, name: "deterministic reports", limit: None, run: determinism },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let pass = ok && in_time;
        let limit = c.limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
        println!(
            "{} [{:>2}] {} ({:.2}s, limit {limit}): {detail}{}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            if in_time { "" } else { "; over time limit" }
        );
        if !pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
