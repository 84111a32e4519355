//! The `lefschetz` command. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code:
//! 0 on success or a passing property, 1 when a property fails or a search
//! finds nothing, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz::fixtures::{verify_fixture_suite, Level};
use lefschetz::ideal::{family_ideal, mu_to_family, MonomialIdeal, SpecialIdeal};
use lefschetz::inverse::{identity_check, verify_fd, verify_n4, verify_n5, witness_fd, witness_n4, witness_n5};
use lefschetz::lefschetz::{check_quotient, LefschetzReport, Property, Witness};
use lefschetz::linalg::FieldSpec;
use lefschetz::search::{search, SearchCertificate, SearchSpec, Strategy};
use lefschetz::series::{shape_report, IntSequence};
use lefschetz::GradedQuotient;
use serde::Serialize;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "LEFSCHETZ_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Hilbert functions and Lefschetz properties of artinian monomial algebras")]
struct Cli {
    /// Worker threads for rank computations and search.
    #[arg(long, global = true, env = WORKERS_ENV)]
    workers: Option<usize>,
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function of A = R/I.
    Hilbert(IdealArgs),
    /// Shape predicates of a sequence or of the Hilbert function of an ideal.
    Analyze {
        /// Comma-separated sequence, e.g. `1,4,6,4,1`.
        #[arg(long, conflicts_with_all = ["ideal", "ideal_file", "n"])]
        seq: Option<String>,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Generators of the quadratic family ideal, by `(i, j)` or by generator count.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "j", conflicts_with = "mu")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
        /// Number of minimal generators, in `[n, n(n+1)/2]`.
        #[arg(long)]
        mu: Option<usize>,
    },
    /// Strong Lefschetz property for l = x1 + ... + xn.
    Slp(CheckArgs),
    /// Weak Lefschetz property for l = x1 + ... + xn.
    Wlp(CheckArgs),
    /// Explicit witnesses for the power-family ideals.
    Witness {
        #[arg(value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        d: u32,
    },
    /// Search for an SLP monomial ideal with mu generators of degree d.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        mu: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        /// Seed for the random strategy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_trials: u64,
        #[arg(long, default_value = "p:32003")]
        field: String,
        /// Re-check the found ideal over Q.
        #[arg(long)]
        recertify: bool,
    },
    /// Run the reproducible fixture suite.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
    },
}

#[derive(Args, Debug, Default)]
struct IdealArgs {
    /// Inline ideal `n=3; x1^3, x2^3, x3^3` or a fixture name such as `@sec5_J`.
    #[arg(long, conflicts_with = "ideal_file")]
    ideal: Option<String>,
    /// File holding an ideal in text or JSON form.
    #[arg(long)]
    ideal_file: Option<PathBuf>,
    /// Family ideal parameters.
    #[arg(long, requires_all = ["i", "j"], conflicts_with_all = ["ideal", "ideal_file"])]
    n: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    ideal: IdealArgs,
    /// `q` for the rationals or `p:<prime>`.
    #[arg(long, default_value = "q")]
    field: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WitnessKind {
    Fd,
    N4,
    N5,
    Identity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Random,
    Greedy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub workers: usize,
    pub json: bool,
}

impl CliConfig {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        let workers = match cli.workers {
            Some(0) => return Err("--workers must be at least 1".into()),
            Some(w) => w,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(Self { workers, json: cli.json })
    }
}

/// Outcome of a subcommand before printing.
struct Output {
    text: String,
    json: String,
    success: bool,
}

fn output(text: String, json: impl Serialize, success: bool) -> Result<Output, String> {
    Ok(Output {
        text,
        json: serde_json::to_string(&json).map_err(|e| e.to_string())?,
        success,
    })
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(err)
}

fn parse_ideal_text(text: &str) -> Result<MonomialIdeal, String> {
    let text = text.trim();
    if let Some(name) = text.strip_prefix('@') {
        return SpecialIdeal::from_name(name).and_then(SpecialIdeal::build).map_err(err);
    }
    if text.starts_with('{') {
        return MonomialIdeal::from_json(text).map_err(err);
    }
    text.parse().map_err(err)
}

impl IdealArgs {
    fn resolve(&self) -> Result<MonomialIdeal, String> {
        match (&self.ideal, &self.ideal_file, self.n) {
            (Some(inline), _, _) => parse_ideal_text(inline),
            (_, Some(path), _) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_ideal_text(&text)
            }
            (_, _, Some(n)) => {
                let (i, j) = self.i.zip(self.j).ok_or("--n needs --i and --j")?;
                family_ideal(n, i, j).map_err(err)
            }
            _ => Err("an ideal is required: --ideal, --ideal-file or --n/--i/--j".into()),
        }
    }
}

fn seq_text(v: &[usize]) -> String {
    serde_json::to_string(v).expect("vector serializes")
}

#[derive(Serialize)]
struct HilbertJson<'a> {
    ideal: &'a MonomialIdeal,
    hilbert: Vec<usize>,
}

fn cmd_hilbert(args: &IdealArgs) -> Result<Output, String> {
    let ideal = args.resolve()?;
    let h = GradedQuotient::new(&ideal).map_err(err)?.hilbert_vec();
    output(seq_text(&h), HilbertJson { ideal: &ideal, hilbert: h.clone() }, true)
}

#[derive(Serialize)]
struct AnalyzeJson {
    sequence: IntSequence,
    #[serde(flatten)]
    shape: lefschetz::ShapeReport,
}

fn cmd_analyze(seq: &Option<String>, args: &IdealArgs) -> Result<Output, String> {
    let sequence: IntSequence = match seq {
        Some(text) => text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad sequence entry `{t}`")))
            .collect::<Result<Vec<i64>, String>>()?
            .into_iter()
            .collect(),
        None => {
            let ideal = args.resolve()?;
            let h = GradedQuotient::new(&ideal).map_err(err)?.hilbert_vec();
            h.into_iter().map(|x| x as i64).collect()
        }
    };
    let shape = shape_report(&sequence);
    let text = format!(
        "sequence: {sequence}\nunimodal: {}\nlog_concave: {}\nsymmetric: {}\nmid_heavy: {}\nclass_h: {}",
        shape.unimodal, shape.log_concave, shape.symmetric, shape.mid_heavy, shape.class_h
    );
    output(text, AnalyzeJson { sequence, shape }, true)
}

fn cmd_family(n: usize, i: Option<usize>, j: Option<usize>, mu: Option<usize>) -> Result<Output, String> {
    let ideal = match (i, j, mu) {
        (Some(i), Some(j), None) => family_ideal(n, i, j),
        (None, None, Some(mu)) => mu_to_family(n, mu),
        _ => return Err("family needs either --i and --j, or --mu".into()),
    }
    .map_err(err)?;
    let text = ideal.generators().iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    output(text, &ideal, true)
}

/// `c1*m1 + c2*m2 - ...` with unit coefficients dropped.
fn signed_sum<'a>(terms: impl Iterator<Item = (&'a str, &'a str)>) -> String {
    let mut out = String::new();
    for (k, (coeff, mono)) in terms.enumerate() {
        let (negative, abs) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, coeff),
        };
        out.push_str(match (k, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if abs == "1" {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

fn report_text(r: &LefschetzReport) -> String {
    let mut lines = vec![
        format!("property: {}", if r.property == Property::Slp { "slp" } else { "wlp" }),
        format!("field: {}", r.field),
        format!("verdict: {}", if r.passed() { "pass" } else { "fail" }),
        format!("hilbert: {}", seq_text(&r.hilbert)),
        format!("maps checked: {}", r.maps.len()),
    ];
    for m in r.failures() {
        lines.push(format!(
            "deficient: i={} t={} rank {} < {}",
            m.source_degree, m.power, m.rank, m.expected
        ));
    }
    match &r.witness {
        Some(Witness::Kernel { source_degree, power, terms }) => {
            let poly = signed_sum(terms.iter().map(|t| (t.coefficient.as_str(), t.monomial.as_str())));
            lines.push(format!("kernel witness at i={source_degree} t={power}: {poly}"));
        }
        Some(Witness::Unreached { source_degree, power, monomial }) => {
            lines.push(format!("image misses {monomial} at i={source_degree} t={power}"));
        }
        None => {}
    }
    lines.join("\n")
}

fn cmd_check(args: &CheckArgs, property: Property) -> Result<Output, String> {
    let field = parse_field(&args.field)?;
    let ideal = args.ideal.resolve()?;
    let q = GradedQuotient::new(&ideal).map_err(err)?;
    let report = check_quotient(&q, property, field).map_err(err)?;
    output(report_text(&report), &report, report.passed())
}

#[derive(Serialize)]
struct WitnessJson {
    kind: &'static str,
    d: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    forms: Vec<(String, String)>,
    verified: bool,
}

fn cmd_witness(kind: WitnessKind, d: u32) -> Result<Output, String> {
    let (name, forms, verified) = match kind {
        WitnessKind::Fd => {
            let v = verify_fd(d).map_err(err)?;
            ("fd", vec![("f_d".to_string(), witness_fd(d).map_err(err)?.to_string())], v.kernel_ok == Some(true))
        }
        WitnessKind::N4 => {
            let v = verify_n4(d).map_err(err)?;
            ("n4", vec![("F".to_string(), witness_n4(d).map_err(err)?.to_string())], v.annihilator_ok == Some(true))
        }
        WitnessKind::N5 => {
            let v = verify_n5(d).map_err(err)?;
            let w = witness_n5(d).map_err(err)?;
            (
                "n5",
                vec![
                    ("kernel_f".to_string(), w.kernel_f.to_string()),
                    ("perp_f".to_string(), w.perp_f.to_string()),
                ],
                v.kernel_ok == Some(true) && v.annihilator_ok == Some(true),
            )
        }
        WitnessKind::Identity => ("identity", Vec::new(), identity_check(d).map_err(err)?),
    };
    let mut lines: Vec<String> = forms.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    lines.push(format!("verified: {verified}"));
    output(lines.join("\n"), WitnessJson { kind: name, d, forms, verified }, verified)
}

fn certificate_text(c: &SearchCertificate) -> String {
    match &c.ideal {
        Some(ideal) => {
            let mut s = format!("found after {} trials over {}\n{ideal}", c.trials, c.field);
            if let Some(v) = c.rational_verdict {
                s.push_str(&format!("\nover q: {}", if v == lefschetz::Verdict::Pass { "pass" } else { "fail" }));
            }
            s
        }
        None => format!("none found after {} trials", c.trials),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    d: u32,
    mu: usize,
    strategy: StrategyArg,
    seed: u64,
    max_trials: u64,
    field: &str,
    recertify: bool,
) -> Result<Output, String> {
    let strategy = match strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::Random => Strategy::Random { seed, max_trials },
        StrategyArg::Greedy => Strategy::Greedy,
    };
    let spec = SearchSpec::new(n, d, mu, strategy)
        .map_err(err)?
        .with_field(parse_field(field)?)
        .with_recertify(recertify);
    let cert = search(&spec).map_err(err)?;
    let ok = cert.found();
    output(certificate_text(&cert), &cert, ok)
}

fn cmd_verify(level: LevelArg) -> Result<Output, String> {
    let level = match level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let report = verify_fixture_suite(level);
    let text = report
        .checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("\n");
    output(text, &report, report.passed)
}

fn execute(command: &Command) -> Result<Output, String> {
    match command {
        Command::Hilbert(args) => cmd_hilbert(args),
        Command::Analyze { seq, ideal } => cmd_analyze(seq, ideal),
        Command::Family { n, i, j, mu } => cmd_family(*n, *i, *j, *mu),
        Command::Slp(args) => cmd_check(args, Property::Slp),
        Command::Wlp(args) => cmd_check(args, Property::Wlp),
        Command::Witness { kind, d } => cmd_witness(*kind, *d),
        Command::Search {
            n,
            d,
            mu,
            strategy,
            seed,
            max_trials,
            field,
            recertify,
        } => cmd_search(*n, *d, *mu, *strategy, *seed, *max_trials, field, *recertify),
        Command::VerifyPaper { level } => cmd_verify(*level),
    }
}

/// Runs the command line `args` (including the program name), writing the
/// result to `out` and diagnostics to `errout`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, errout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { errout } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let config = match CliConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(errout, "error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(errout, "error: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(result) => {
            let printed = if config.json { result.json } else { result.text };
            let _ = writeln!(out, "{printed}");
            if result.success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(errout, "error: {e}");
            2
        }
    }
}
