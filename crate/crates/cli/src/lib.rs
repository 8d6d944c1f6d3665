//! The `gapvec` command line: build a variety from a spec string, compute
//! its gap vector, check the structural properties, and sweep Veronese
//! families.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 genericity failure,
//! 3 internal inconsistency, 4 a property check failed (`verify`).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gapvec_core::properties::conjecture_check;
use gapvec_core::variety::{from_spec, veronese};
use gapvec_core::{
    classify, gap_vector, verify_gap_properties, CheckResult, Error, FaceDims, FieldContext,
    GapReport, RankConfig,
};
use rayon::prelude::*;
use serde::Serialize;

pub mod sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GENERICITY: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "gapvec",
    version,
    about = "Gap vectors and quadratic deficiency of projective varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the gap vector report of one variety.
    Compute(RunConfig),
    /// Compute, then check every structural property and classify.
    Verify(RunConfig),
    /// One CSV row per Veronese instance, e.g. `veronese:n=2,d=2..6`.
    Sweep {
        range: String,
        #[command(flatten)]
        opts: RunOptions,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Qq,
    Fp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// veronese:n=N,d=D | segre:a=A,b=B | delpezzo:k=K | toric:file=PATH | file:PATH
    #[arg(long)]
    pub variety: String,
    #[command(flatten)]
    pub opts: RunOptions,
}

#[derive(Debug, Clone, Args)]
pub struct RunOptions {
    #[arg(long, value_enum, default_value = "fp")]
    pub mode: Mode,
    #[arg(long, env = "GAPVEC_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Most trials per rank before giving up on stabilization (at least 2).
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Sample points beyond each table's rank bound.
    #[arg(long, default_value_t = 25)]
    pub margin: usize,
    /// Use one chain of points, Γ_j = first j points, instead of fresh sets.
    #[arg(long)]
    pub nested: bool,
    /// Index into the baked-in prime list (fp mode).
    #[arg(long, default_value_t = 0)]
    pub prime_index: usize,
    /// Worker threads; any value enables parallel evaluation of the faces.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl RunOptions {
    pub fn rank_config(&self) -> Result<RankConfig, Error> {
        let cfg = RankConfig {
            margin: self.margin,
            max_trials: self.trials,
            ctx: match self.mode {
                Mode::Qq => FieldContext::ExactRational,
                Mode::Fp => FieldContext::prime_field(self.prime_index),
            },
            seed: self.seed,
            nested: self.nested,
            parallel: self.threads.is_some(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Serialized form of a report; key names and order are stable.
#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub variety: &'a str,
    pub m: usize,
    pub d: usize,
    pub c: usize,
    pub w: u32,
    pub mode: &'static str,
    pub prime: Option<u64>,
    /// Prime-field ranks hold in characteristic zero only with high probability.
    pub probabilistic: bool,
    pub seed: u64,
    pub trials: usize,
    #[serde(rename = "dim_R2")]
    pub dim_r2: usize,
    pub epsilon: usize,
    pub gap: &'a [i64],
    pub faces: &'a [FaceDims],
    pub checks: &'a [CheckResult],
}

impl<'a> ReportDocument<'a> {
    pub fn new(r: &'a GapReport, checks: &'a [CheckResult]) -> Self {
        Self {
            variety: &r.variety,
            m: r.m,
            d: r.d,
            c: r.c,
            w: r.w,
            mode: r.ctx.mode(),
            prime: r.ctx.prime(),
            probabilistic: r.ctx.prime().is_some(),
            seed: r.seed,
            trials: r.trials,
            dim_r2: r.dim_r2,
            epsilon: r.epsilon,
            gap: &r.gap,
            faces: &r.faces,
            checks,
        }
    }
}

pub fn render_json(r: &GapReport, checks: &[CheckResult]) -> String {
    let mut s =
        serde_json::to_string_pretty(&ReportDocument::new(r, checks)).expect("report serializes");
    s.push('\n');
    s
}

/// One row per `j`: the gap entry and every face dimension.
pub fn render_csv(r: &GapReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "j",
        "gap",
        "dim_sigma",
        "dim_P_formula",
        "dim_B",
        "secant_nondefective",
        "eps_Y",
        "dim_IY2",
    ])
    .expect("in-memory write");
    for (f, g) in r.faces.iter().zip(&r.gap) {
        w.write_record([
            f.j.to_string(),
            g.to_string(),
            f.dim_sigma.to_string(),
            f.dim_p_formula.to_string(),
            f.dim_b.to_string(),
            f.secant_nondefective.to_string(),
            f.eps_y.to_string(),
            f.dim_iy2.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GenericityFailure(_) => EXIT_GENERICITY,
        Error::InternalInconsistency(_) => EXIT_INCONSISTENT,
        _ => EXIT_USAGE,
    }
}

/// `(n, d)` when the spec names a Veronese embedding.
fn veronese_params(spec: &str) -> Option<(u32, u32)> {
    let body = spec.strip_prefix("veronese:")?;
    let mut n = None;
    let mut d = None;
    for kv in body.split(',') {
        match kv.split_once('=')? {
            ("n", v) => n = v.parse().ok(),
            ("d", v) => d = v.parse().ok(),
            _ => return None,
        }
    }
    Some((n?, d?))
}

/// Property checks plus, for Veronese embeddings, the informational
/// comparison with the conjectured formula.
pub fn all_checks(r: &GapReport, spec: &str) -> Vec<CheckResult> {
    let mut checks = verify_gap_properties(r);
    if let Some((n, d)) = veronese_params(spec) {
        if n >= 1 && d >= 2 {
            checks.push(conjecture_check(r, n, d));
        }
    }
    checks
}

fn write_output(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(job),
        None => job(),
    }
}

fn run_report(cfg: &RunConfig) -> Result<(GapReport, Vec<CheckResult>), Error> {
    let rank_cfg = cfg.opts.rank_config()?;
    let x = from_spec(&cfg.variety, cfg.opts.seed)?;
    let report = with_threads(cfg.opts.threads, || gap_vector(&x, &rank_cfg))?;
    let checks = all_checks(&report, &cfg.variety);
    Ok((report, checks))
}

fn emit(cfg: &RunConfig, report: &GapReport, checks: &[CheckResult]) -> i32 {
    let text = match cfg.opts.format {
        Format::Json => render_json(report, checks),
        Format::Csv => render_csv(report),
    };
    match write_output(cfg.opts.out.as_ref(), &text) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn cmd_compute(cfg: &RunConfig) -> i32 {
    match run_report(cfg) {
        Ok((report, checks)) => emit(cfg, &report, &checks),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn check_table(report: &GapReport, checks: &[CheckResult]) -> String {
    let mut s = format!(
        "{}  m={} d={} c={} eps={} mode={}{}\ngap: {:?}\n",
        report.variety,
        report.m,
        report.d,
        report.c,
        report.epsilon,
        report.ctx.mode(),
        if report.ctx.prime().is_some() { " (probabilistic)" } else { "" },
        report.gap
    );
    for c in checks {
        let status = match (c.passed, c.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        s.push_str(&format!("{status}  {:<36} {}\n", c.name, c.note));
    }
    s
}

pub fn cmd_verify(cfg: &RunConfig) -> i32 {
    let (report, checks) = match run_report(cfg) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let mut table = check_table(&report, &checks);
    let class = classify(&report);
    match &class {
        Ok(c) => table.push_str(&format!("class: {c:?}\n")),
        Err(e) => table.push_str(&format!("class: inconsistent ({e})\n")),
    }
    print!("{table}");
    if cfg.opts.out.is_some() {
        let code = emit(cfg, &report, &checks);
        if code != EXIT_OK {
            return code;
        }
    }
    if let Err(e) = class {
        return exit_code(&e);
    }
    if checks.iter().any(CheckResult::is_failure) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

pub fn cmd_sweep(range: &str, opts: &RunOptions) -> i32 {
    let instances = match sweep::parse_range(range) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let rank_cfg = match opts.rank_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let run_one = |&(n, d): &(u32, u32)| -> (sweep::SweepRow, i32) {
        let result = veronese(n as usize, d).and_then(|x| gap_vector(&x, &rank_cfg));
        match result {
            Ok(r) => (sweep::SweepRow::from_report(n, d, &r), EXIT_OK),
            Err(e) => (sweep::SweepRow::failed(n, d, &e), exit_code(&e)),
        }
    };
    let rows: Vec<(sweep::SweepRow, i32)> = with_threads(opts.threads, || {
        if opts.threads.is_some() {
            instances.par_iter().map(run_one).collect()
        } else {
            instances.iter().map(run_one).collect()
        }
    });
    let code = rows.iter().map(|(_, c)| *c).max().unwrap_or(EXIT_OK);
    let text = sweep::render(rows.iter().map(|(r, _)| r));
    if let Err(e) = write_output(opts.out.as_ref(), &text) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    code
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match &cli.command {
        Command::Compute(cfg) => cmd_compute(cfg),
        Command::Verify(cfg) => cmd_verify(cfg),
        Command::Sweep { range, opts } => cmd_sweep(range, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        assert_eq!(
            exit_code(&Error::GenericityFailure("x".into())),
            EXIT_GENERICITY
        );
        assert_eq!(
            exit_code(&Error::InternalInconsistency("x".into())),
            EXIT_INCONSISTENT
        );
        assert_eq!(exit_code(&Error::InvalidInput("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Degenerate("x".into())), EXIT_USAGE);
    }

    #[test]
    fn veronese_params_from_spec() {
        assert_eq!(veronese_params("veronese:n=3,d=4"), Some((3, 4)));
        assert_eq!(veronese_params("segre:a=1,b=1"), None);
        assert_eq!(veronese_params("veronese:n=3"), None);
    }
}
