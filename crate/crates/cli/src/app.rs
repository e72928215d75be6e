//! Command-line front end. [`run`] returns the exit code and output instead of
//! printing, so it can be driven from tests.

use std::collections::BTreeSet;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thetaknot_core::homfly::{expand_states, homfly_recursive, homfly_state_sum, specialize_to_alexander};
use thetaknot_core::kauffman::{apply_state, jones_unreduced_with, KauffmanState, StateCircles};
use thetaknot_core::poly::{LaurentPoly, Var};
use thetaknot_core::surface::{build_surface_model, pair_state, StateSurface};
use thetaknot_core::theta::{theta_homfly, theta_jones, theta_jones_unsigned, LedgerEntry, ThetaOptions};
use thetaknot_core::{parse_gauss, parse_pd, Error, Limits, LinkDiagram, DEFAULT_MAX_CROSSINGS};

use crate::corpus::{load_corpus, CorpusEntry, RowError};
use crate::harness::{all_checks, render_text, verify_all, Check, EntryReport, VerifyConfig};
use crate::render::{alexander_display, collapse, variable_names};

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

pub const THREADS_ENV: &str = "THETAKNOT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "thetaknot", version, about = "Jones and HOMFLY-PT polynomials of link diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Unreduced Jones polynomial from the bracket state sum.
    Jones,
    /// HOMFLY-PT polynomial by recursive skein evaluation.
    Homfly,
    /// HOMFLY-PT polynomial as a sum over skein-tree states.
    HomflyStatesum,
    /// Jones polynomial from gradings and surface pairings.
    ThetaJ,
    /// HOMFLY-PT polynomial from gradings and surface pairings.
    ThetaH,
    /// Alexander polynomial, specialized from HOMFLY-PT.
    Alexander,
    /// Cross-checks all engines on one diagram.
    Verify {
        /// Comma-separated subset of checks.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// Verifies every entry of a CSV or JSON corpus.
    Batch {
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct GlobalOpts {
    /// PD code, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".
    #[arg(long, global = true, conflicts_with_all = ["gauss", "file"])]
    pub pd: Option<String>,
    /// Signed Gauss code, e.g. "O1-U2-O3-U1-O2-U3-".
    #[arg(long, global = true, conflicts_with = "file")]
    pub gauss: Option<String>,
    /// File holding a PD code; `-` reads standard input.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; defaults to THETAKNOT_THREADS, then the number of CPUs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CROSSINGS)]
    pub max_crossings: usize,
    /// Base point whose circle is cut in the HOMFLY-PT pairing (0..2n).
    #[arg(long, global = true)]
    pub cut_basepoint: Option<usize>,
    /// Emit the per-state ledger.
    #[arg(long, global = true)]
    pub ledger: bool,
    /// Skip malformed corpus rows instead of stopping.
    #[arg(long, global = true)]
    pub lenient: bool,
    /// Label of the edge whose left side is the unbounded face.
    #[arg(long, global = true)]
    pub outer_edge: Option<u32>,
    /// theta-j: unsigned powers of s = q^(1/2), without the per-state signs.
    #[arg(long, global = true)]
    pub unsigned: bool,
    /// theta-j / theta-h: dump the σ-punctures, nesting and specialization of each state.
    #[arg(long, global = true)]
    pub dump_surface: bool,
    /// Include wall-clock timings in the output.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Outcome {
        Outcome { code, stdout: String::new(), stderr }
    }
}

#[derive(Serialize)]
struct Timings {
    total_ms: f64,
}

#[derive(Serialize)]
struct Output {
    input: String,
    invariant: String,
    variables: Vec<String>,
    polynomial: String,
    timings: Option<Timings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ledger: Option<Vec<LedgerJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    surface: Option<Vec<serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<serde_json::Value>,
}

#[derive(Serialize)]
struct LedgerJson {
    state: u64,
    grading: Vec<i32>,
    sign: i32,
    pairing: String,
    term: String,
}

impl From<&LedgerEntry> for LedgerJson {
    fn from(e: &LedgerEntry) -> Self {
        LedgerJson {
            state: e.state,
            grading: e.grading.clone(),
            sign: e.sign,
            pairing: e.pairing.to_string(),
            term: e.term.to_string(),
        }
    }
}

#[derive(Serialize)]
struct BatchOutput<'a> {
    corpus: String,
    entries: &'a [EntryReport],
    row_errors: &'a [RowError],
    failed: usize,
    timings: Option<Timings>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CrossingLimit { .. } => EXIT_LIMIT,
        Error::Invariant(_) => EXIT_VERIFY,
        _ => EXIT_PARSE,
    }
}

fn engine_failure(e: Error) -> Outcome {
    Outcome::fail(exit_code(&e), format!("error: {e}\n"))
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome::fail(code, text) };
        }
    };
    let threads = cli.opts.threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        pool = pool.num_threads(k.max(1));
    }
    match pool.build() {
        Ok(pool) => pool.install(|| dispatch(&cli)),
        Err(e) => Outcome::fail(EXIT_PARSE, format!("error: cannot start worker pool: {e}\n")),
    }
}

fn read_input(opts: &GlobalOpts) -> Result<(String, LinkDiagram), Outcome> {
    let parse_err = |e: Error| Outcome::fail(EXIT_PARSE, format!("error: {e}\n"));
    let (text, d) = if let Some(pd) = &opts.pd {
        (pd.clone(), parse_pd(pd).map_err(parse_err)?)
    } else if let Some(g) = &opts.gauss {
        (g.clone(), parse_gauss(g).map_err(parse_err)?)
    } else if let Some(path) = &opts.file {
        let mut text = String::new();
        let read = if path.as_os_str() == "-" {
            std::io::stdin().read_to_string(&mut text).map(|_| ())
        } else {
            std::fs::read_to_string(path).map(|t| text = t)
        };
        read.map_err(|e| Outcome::fail(EXIT_PARSE, format!("error: cannot read {}: {e}\n", path.display())))?;
        let d = parse_pd(&text).map_err(parse_err)?;
        (text.trim().to_string(), d)
    } else {
        return Err(Outcome::fail(EXIT_PARSE, "error: one of --pd, --gauss or --file is required\n".into()));
    };
    let d = match opts.outer_edge {
        Some(label) => d.with_outer_label(label).map_err(parse_err)?,
        None => d,
    };
    Ok((text, d))
}

fn parse_checks(names: &Option<Vec<String>>) -> Result<BTreeSet<Check>, Outcome> {
    match names {
        None => Ok(all_checks()),
        Some(list) => list
            .iter()
            .map(|n| {
                Check::from_name(n.trim())
                    .ok_or_else(|| Outcome::fail(EXIT_PARSE, format!("error: unknown check {n:?}\n")))
            })
            .collect(),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let opts = &cli.opts;
    if let Command::Batch { corpus, checks } = &cli.command {
        return batch(corpus, checks, opts, start);
    }
    let (input, d) = match read_input(opts) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let limits = Limits { max_crossings: opts.max_crossings };
    let theta_opts = ThetaOptions { limits, ledger: opts.ledger, cut_base_point: opts.cut_basepoint };
    let mut out = Output {
        input,
        invariant: String::new(),
        variables: Vec::new(),
        polynomial: String::new(),
        timings: None,
        ledger: None,
        surface: None,
        checks: None,
    };
    let result: Result<LaurentPoly, Error> = match &cli.command {
        Command::Jones => {
            out.invariant = "jones_unreduced".into();
            jones_unreduced_with(&d, &limits)
        }
        Command::Homfly => {
            out.invariant = "homfly".into();
            homfly_recursive(&d, &limits)
        }
        Command::HomflyStatesum => {
            out.invariant = "homfly_statesum".into();
            homfly_state_sum(&d, &limits)
        }
        Command::Alexander => {
            out.invariant = "alexander".into();
            homfly_recursive(&d, &limits).and_then(|p| specialize_to_alexander(&p)).map(|p| alexander_display(&p))
        }
        Command::ThetaJ => {
            out.invariant = if opts.unsigned { "theta_jones_unsigned" } else { "theta_jones" }.into();
            let r = if opts.unsigned { theta_jones_unsigned(&d, &theta_opts) } else { theta_jones(&d, &theta_opts) };
            r.and_then(|r| {
                out.ledger = r.ledger.as_ref().map(|l| l.iter().map(LedgerJson::from).collect());
                if opts.dump_surface {
                    out.surface = Some(dump_jones_surface(&d)?);
                }
                Ok(collapse(&r.polynomial, Var::S, Var::Q))
            })
        }
        Command::ThetaH => {
            out.invariant = "theta_homfly".into();
            theta_homfly(&d, &theta_opts).and_then(|r| {
                out.ledger = r.ledger.as_ref().map(|l| l.iter().map(LedgerJson::from).collect());
                if opts.dump_surface {
                    out.surface = Some(dump_homfly_surface(&d, &theta_opts)?);
                }
                Ok(r.polynomial)
            })
        }
        Command::Verify { checks } => {
            let checks = match parse_checks(checks) {
                Ok(c) => c,
                Err(o) => return o,
            };
            return verify_one(out, &d, checks, opts, start);
        }
        Command::Batch { .. } => unreachable!(),
    };
    let poly = match result {
        Ok(p) => p,
        Err(e) => return engine_failure(e),
    };
    out.variables = variable_names(&poly);
    out.polynomial = poly.to_string();
    if opts.timings {
        out.timings = Some(Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 });
    }
    match opts.format {
        Format::Json => Outcome::ok(to_json(&out)),
        Format::Text => {
            let mut s = format!("{}\n", out.polynomial);
            if let Some(t) = &out.timings {
                s.push_str(&format!("# {:.3} ms\n", t.total_ms));
            }
            if let Some(l) = &out.ledger {
                for e in l {
                    s.push_str(&format!(
                        "# state {} grading {:?} sign {} pairing {}\n",
                        e.state, e.grading, e.sign, e.pairing
                    ));
                }
            }
            if let Some(surface) = &out.surface {
                for v in surface {
                    s.push_str(&format!("# {v}\n"));
                }
            }
            Outcome::ok(s)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn verify_one(mut out: Output, d: &LinkDiagram, checks: BTreeSet<Check>, opts: &GlobalOpts, start: Instant) -> Outcome {
    let entry = CorpusEntry {
        name: "input".into(),
        pd: thetaknot_core::serialize_pd(d),
        aliases: vec![],
        expected: Default::default(),
    };
    let cfg = VerifyConfig { limits: Limits { max_crossings: opts.max_crossings }, ..Default::default() };
    if d.crossing_count() > cfg.limits.max_crossings {
        return engine_failure(Error::CrossingLimit { crossings: d.crossing_count(), limit: cfg.limits.max_crossings });
    }
    let report = crate::harness::verify(&entry, &checks, &cfg);
    let code = if report.passed() { 0 } else { EXIT_VERIFY };
    out.invariant = "verify".into();
    out.polynomial = if report.passed() { "pass" } else { "fail" }.into();
    out.checks = Some(serde_json::Value::Object(
        report
            .checks
            .iter()
            .map(|c| (c.name.clone(), serde_json::json!({ "passed": c.passed, "details": c.details })))
            .collect(),
    ));
    if opts.timings {
        out.timings = Some(Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 });
    }
    let stdout = match opts.format {
        Format::Json => to_json(&out),
        Format::Text => render_text(std::slice::from_ref(&report)),
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn batch(path: &Path, checks: &Option<Vec<String>>, opts: &GlobalOpts, start: Instant) -> Outcome {
    let checks = match parse_checks(checks) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let corpus = match load_corpus(path, opts.lenient) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_PARSE, format!("error: {e}\n")),
    };
    let cfg = VerifyConfig { limits: Limits { max_crossings: opts.max_crossings }, ..Default::default() };
    let reports = verify_all(&corpus.entries, &checks, &cfg);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let code = if failed == 0 { 0 } else { EXIT_VERIFY };
    let stdout = match opts.format {
        Format::Json => to_json(&BatchOutput {
            corpus: path.display().to_string(),
            entries: &reports,
            row_errors: &corpus.errors,
            failed,
            timings: opts.timings.then(|| Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 }),
        }),
        Format::Text => {
            let mut s = String::new();
            for e in &corpus.errors {
                s.push_str(&format!("ROW {e}\n"));
            }
            s.push_str(&render_text(&reports));
            if opts.timings {
                s.push_str(&format!("# {:.3} ms\n", start.elapsed().as_secs_f64() * 1e3));
            }
            s
        }
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn surface_json(index: u64, sc: &StateCircles, st: &StateSurface) -> serde_json::Value {
    let circles: Vec<serde_json::Value> = st
        .assignment
        .circles
        .iter()
        .enumerate()
        .map(|(i, s)| {
            serde_json::json!({
                "circle": i,
                "parent": sc.parent[i],
                "puncture": s.as_ref().map(|s| s.puncture),
                "enclosed": s.as_ref().map(|s| s.enclosed.clone()).unwrap_or_default(),
                "base_points": s.as_ref().map_or(0, |s| s.base_points),
            })
        })
        .collect();
    let spec: serde_json::Map<String, serde_json::Value> = st
        .specialization
        .images
        .iter()
        .filter(|(_, v)| !v.is_one())
        .map(|(k, v)| (k.name(), serde_json::Value::String(v.to_string())))
        .collect();
    serde_json::json!({
        "state": index,
        "circles": circles,
        "specialization": spec,
        "cut_circle": st.cut,
        "pairing": st.pairing.to_string(),
    })
}

fn dump_jones_surface(d: &LinkDiagram) -> Result<Vec<serde_json::Value>, Error> {
    let sm = build_surface_model(d);
    let n = d.crossing_count();
    (0..1u64 << n)
        .map(|idx| {
            let s = KauffmanState::from_index(n, idx);
            let sc = apply_state(d, &s)?;
            Ok(surface_json(idx, &sc, &pair_state(d, &sm, &s, &sc, None)?))
        })
        .collect()
}

fn dump_homfly_surface(d: &LinkDiagram, opts: &ThetaOptions) -> Result<Vec<serde_json::Value>, Error> {
    let sm = build_surface_model(d);
    let cut = opts.cut_base_point.or_else(|| sm.default_cut());
    expand_states(d, &opts.limits)?
        .iter()
        .enumerate()
        .map(|(k, st)| Ok(surface_json(k as u64, &st.circles, &pair_state(d, &sm, &st.kauffman, &st.circles, cut)?)))
        .collect()
}
