use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use laumon::characters::{corr_tangent_char, flag_tangent_oracle, tangent_char, Convention, FlagData};
use laumon::fixedpoints::{enumerate, kostant_count, DegreeVector};
use laumon::qtoda::{build, calibrate, check_eigen, SeriesKind, TodaOperator};
use laumon::report::{CheckOptions, CheckRecord, Summary};
use laumon::suites::{run_suite, Suite, SuiteConfig};
use laumon::umodule::{Path, Truncation};
use laumon::whittaker::{pair_kw, rgamma_structure_sheaf, shapovalov_pair, whittaker_k, whittaker_suite, whittaker_w};
use laumon::Error;
use serde_json::{json, Value};

const BUDGET_ENV: &str = "LAUMON_TIME_BUDGET";

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "laumon", version, about = "Exact checks for the quantum group action on Laumon spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the fixed points of one degree and compare with Kostant partitions.
    Enumerate(DegreeArgs),
    /// Tangent characters at the fixed points of one degree, checked against the kernel oracle.
    Characters(DegreeArgs),
    /// Run a verification suite over a degree box.
    Verify(VerifyArgs),
    /// Whittaker vectors, their pairing and RΓ of the structure sheaf in one degree.
    Whittaker(DegreeArgs),
    /// Apply a q-Toda operator to a generating series and check the eigen-equation.
    Toda(TodaArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value = "A")]
    convention: Convention,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DegreeArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated multidegree, e.g. `1,1`.
    #[arg(long, allow_hyphen_values = true)]
    degree: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "box", default_value_t = 2)]
    bound: i32,
    #[arg(long, default_value = "full")]
    suite: Suite,
    /// Row index for the commutator coefficient suite.
    #[arg(long)]
    i: Option<usize>,
}

#[derive(Args)]
struct TodaArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "box", default_value_t = 2)]
    bound: i32,
    #[arg(long, default_value = "J")]
    series: SeriesKind,
    #[arg(long, default_value = "G")]
    operator: TodaOperator,
}

impl Common {
    fn opts(&self) -> CheckOptions {
        CheckOptions {
            seed: self.seed,
            trials: self.trials,
            path: Path::Closed,
            conv: self.convention,
        }
    }

    fn echo(&self, command: &str) -> Value {
        json!({
            "command": command,
            "n": self.n,
            "seed": self.seed,
            "trials": self.trials,
            "convention": self.convention,
        })
    }
}

/// Lines of output plus how the run ended.
struct Report {
    config: Value,
    lines: Vec<Value>,
    records: Vec<CheckRecord>,
    complete: bool,
}

impl Report {
    fn new(config: Value) -> Self {
        Report {
            config,
            lines: Vec::new(),
            records: Vec::new(),
            complete: true,
        }
    }

    fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        for line in &self.lines {
            writeln!(out, "{line}")?;
        }
        for r in &self.records {
            writeln!(out, "{}", serde_json::to_string(r).expect("record serializes"))?;
        }
        let summary = json!({
            "summary": Summary::of(&self.records),
            "complete": self.complete,
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
        });
        writeln!(out, "{summary}")?;
        out.flush()
    }

    fn exit_code(&self) -> u8 {
        if !self.complete {
            EXIT_BUDGET
        } else if self.records.iter().any(|r| r.is_fail()) {
            EXIT_FAIL
        } else {
            0
        }
    }
}

fn parse_degree(n: usize, s: &str) -> laumon::Result<DegreeVector> {
    if n < 2 {
        return Err(Error::Usage(format!("rank must be at least 2, got {n}")));
    }
    let entries = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<i32>().map_err(|_| Error::Usage(format!("bad degree entry {x:?}"))))
        .collect::<laumon::Result<Vec<_>>>()?;
    if entries.len() != n - 1 {
        return Err(Error::Usage(format!("degree needs {} entries for rank {n}", n - 1)));
    }
    DegreeVector::new(entries)
}

fn budget_deadline() -> laumon::Result<Option<Instant>> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(None),
        Ok(s) => {
            let secs: f64 = s
                .trim()
                .parse()
                .ok()
                .filter(|x: &f64| x.is_finite() && *x >= 0.0)
                .ok_or_else(|| Error::Usage(format!("{BUDGET_ENV} must be a nonnegative number of seconds")))?;
            Ok(Some(Instant::now() + Duration::from_secs_f64(secs)))
        }
    }
}

fn cmd_enumerate(a: &DegreeArgs) -> laumon::Result<Report> {
    let n = a.common.n;
    let d = parse_degree(n, &a.degree)?;
    let mut config = a.common.echo("enumerate");
    config["degree"] = json!(d);
    let mut rep = Report::new(config);
    let pts = enumerate(n, &d)?;
    rep.lines.extend(pts.iter().map(|p| json!({ "point": p })));
    let want = kostant_count(n, &d);
    rep.records.push(
        CheckRecord::new("kostant-count", "fixed points biject with Kostant partitions", n, Some(d))
            .with_status(pts.len() == want, format!("{} points, {want} partitions", pts.len())),
    );
    Ok(rep)
}

fn cmd_characters(a: &DegreeArgs) -> laumon::Result<Report> {
    let n = a.common.n;
    let d = parse_degree(n, &a.degree)?;
    let mut config = a.common.echo("characters");
    config["degree"] = json!(d);
    let mut rep = Report::new(config);
    let dim = 2 * d.total();
    for p in enumerate(n, &d)? {
        let c = tangent_char(&p);
        let oracle = flag_tangent_oracle(&FlagData::from_point(&p))?;
        rep.lines.push(json!({ "point": p, "tangent": c, "dimension": c.dimension().to_string() }));
        let ok = c == oracle && c.dimension() == dim.into();
        rep.records.push(
            CheckRecord::new("tangent-oracle", "closed tangent character equals the kernel oracle", n, Some(d.clone()))
                .with_status(ok, format!("{p:?}, dimension {}", c.dimension())),
        );
        for i in 1..n {
            for (q, _) in p.raise(i) {
                let c = corr_tangent_char(&p, &q)?;
                let ok = c == flag_tangent_oracle(&FlagData::from_pair(&p, &q)?)? && c.dimension() == (dim + 1).into();
                rep.records.push(
                    CheckRecord::new(
                        format!("correspondence-oracle[{i}]"),
                        "closed correspondence character equals the kernel oracle",
                        n,
                        Some(d.clone()),
                    )
                    .with_status(ok, format!("{p:?} -> {q:?}, dimension {}", c.dimension())),
                );
            }
        }
    }
    Ok(rep)
}

fn cmd_verify(a: &VerifyArgs) -> laumon::Result<Report> {
    let mut cfg = SuiteConfig::new(a.common.n, a.bound, a.common.opts())?;
    cfg.i = a.i;
    let mut config = a.common.echo("verify");
    config["box"] = json!(a.bound);
    config["suite"] = json!(a.suite.to_string());
    config["i"] = json!(a.i);
    let deadline = budget_deadline()?;
    let outcome = run_suite(a.suite, &cfg, deadline)?;
    let mut rep = Report::new(config);
    rep.records = outcome.records;
    rep.complete = outcome.complete;
    Ok(rep)
}

fn cmd_whittaker(a: &DegreeArgs) -> laumon::Result<Report> {
    let n = a.common.n;
    let d = parse_degree(n, &a.degree)?;
    let opts = a.common.opts();
    let conv = opts.conv;
    let mut config = a.common.echo("whittaker");
    config["degree"] = json!(d);
    let mut rep = Report::new(config);
    let k = whittaker_k(n, &d, conv)?;
    let w = whittaker_w(n, &d, conv)?;
    let pairing = shapovalov_pair(&k, &w, conv)?;
    let rgamma = rgamma_structure_sheaf(n, &d, conv)?;
    rep.lines.push(json!({ "k": k, "w": w, "pairing": pairing, "rgamma": rgamma }));
    let kw = pair_kw(n, &d, conv)?;
    rep.records.push(
        CheckRecord::new("pairing-kw", "(k_d, w_d) equals a monomial times RΓ(O_d)", n, Some(d.clone()))
            .with_status(kw.via_pairing.eq_exact(&kw.via_rgamma), "pairing vs RΓ"),
    );
    let bound = d.entries().iter().copied().max().unwrap_or(0);
    let tr = Truncation::new(n, bound)?;
    rep.records.extend(
        whittaker_suite(n, &tr, &opts)?
            .into_iter()
            .filter(|r| r.degree.as_ref() == Some(&d)),
    );
    Ok(rep)
}

fn cmd_toda(a: &TodaArgs) -> laumon::Result<Report> {
    let n = a.common.n;
    let opts = a.common.opts();
    let tr = Truncation::new(n, a.bound)?;
    let (pick, _) = calibrate(tr, &opts)?;
    let series = build(a.series, tr, pick.twist, opts.conv)?;
    let mut config = a.common.echo("toda");
    config["box"] = json!(a.bound);
    config["series"] = json!(a.series.to_string());
    config["operator"] = json!(a.operator.to_string());
    let mut rep = Report::new(config);
    rep.lines.push(json!({ "calibration": pick }));
    rep.records = check_eigen(&series, a.operator, pick.eigenvalue, &opts)?;
    rep.lines.push(json!({ "series": series }));
    Ok(rep)
}

fn run(cli: &Cli) -> laumon::Result<(Report, Option<&PathBuf>)> {
    Ok(match &cli.command {
        Command::Enumerate(a) => (cmd_enumerate(a)?, a.common.out.as_ref()),
        Command::Characters(a) => (cmd_characters(a)?, a.common.out.as_ref()),
        Command::Verify(a) => (cmd_verify(a)?, a.common.out.as_ref()),
        Command::Whittaker(a) => (cmd_whittaker(a)?, a.common.out.as_ref()),
        Command::Toda(a) => (cmd_toda(a)?, a.common.out.as_ref()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, out) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("laumon: {e}");
            return ExitCode::from(match e {
                Error::Usage(_) | Error::SpaceMismatch { .. } => EXIT_USAGE,
                _ => EXIT_FAIL,
            });
        }
    };
    let written = match out {
        Some(path) => File::create(path).and_then(|f| report.write(&mut BufWriter::new(f))),
        None => report.write(&mut io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("laumon: cannot write report: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    ExitCode::from(report.exit_code())
}
