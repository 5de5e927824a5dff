//! Command-line front end: `diptych <gen|verify|points|weights|pfaffian> <target> [flags]`.
//!
//! Exit codes: 0 on success, 1 when a check fails (with a JSON report on
//! stderr), 2 on a usage error, 3 when a Gröbner computation runs past the
//! step cap.

pub mod check;
pub mod targets;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use diptych_core::export::{emit, emit_matrix, emit_matrix_annotated, rational_text, ExportFormat};
use diptych_core::groebner::{bases_computed, Limits};
use serde_json::{json, Map, Value};

use check::{failure_report, run_all, summary, tally};
use targets::{Fault, Params, Registry, Target};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DESK_SCALE: i32 = 3;

const DEFAULT_POINTS: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "diptych", version, about = "Equations of polar and diptych varieties, generated and checked exactly")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the defining equations, or a matrix with --matrix.
    Gen(Args),
    /// Run every check for the target and print a summary table.
    Verify(Args),
    /// Print seeded rational points as JSON.
    Points(Args),
    /// Print the weight table as JSON.
    Weights(Args),
    /// Print the 4x4 Pfaffians of a matrix.
    Pfaffian(Args),
    /// List the targets.
    Targets,
}

#[derive(clap::Args, Debug)]
struct Args {
    /// vk, wd, crazy, diptych, de3 or keyw.
    target: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    e: Option<u32>,
    /// Case id: 22, 41e, 14e, 14o for diptych; 3131, 1313, 13131 for de3.
    #[arg(long)]
    case: Option<String>,
    /// Number of random points.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for independent checks.
    #[arg(long)]
    threads: Option<usize>,
    /// json, macaulay2, magma or latex.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Which matrix, for gen and pfaffian.
    #[arg(long)]
    matrix: Option<String>,
    /// Only the weight and divisibility checks (diptych).
    #[arg(long)]
    weights_only: bool,
}

impl Args {
    fn params(&self) -> Params {
        Params {
            k: self.k,
            d: self.d,
            e: self.e,
            case: self.case.clone(),
            samples: self.samples,
            seed: self.seed,
            matrix: self.matrix.clone(),
            weights_only: self.weights_only,
            limits: Limits::default(),
        }
    }

    fn format(&self) -> Result<ExportFormat, Fault> {
        self.format.parse().map_err(|_| {
            let names: Vec<&str> = ExportFormat::ALL.iter().map(|f| f.name()).collect();
            Fault::Usage(format!("unknown format `{}`; expected one of {}", self.format, names.join(", ")))
        })
    }

    fn json_only(&self) -> Result<(), Fault> {
        if self.format != "json" {
            return Err(Fault::Usage(format!("this subcommand writes json, not {}", self.format)));
        }
        Ok(())
    }
}

/// What a subcommand produced.
struct Done {
    text: String,
    code: i32,
    report: Option<Value>,
}

impl Done {
    fn ok(text: String) -> Self {
        Done { text, code: EXIT_OK, report: None }
    }
}

/// Runs the CLI on `argv` (including the program name), writing to `out`
/// and `err`, and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let registry = Registry::default();
    let args = match &cli.cmd {
        Cmd::Targets => {
            for n in registry.names() {
                let t = registry.get(n).expect("listed");
                let _ = writeln!(out, "{n:8} {}", t.about());
            }
            return EXIT_OK;
        }
        Cmd::Gen(a) | Cmd::Verify(a) | Cmd::Points(a) | Cmd::Weights(a) | Cmd::Pfaffian(a) => a,
    };
    match execute(&registry, &cli.cmd, args) {
        Ok(done) => {
            let written = match &args.out {
                Some(path) => std::fs::write(path, &done.text).map_err(|e| e.to_string()),
                None => out.write_all(done.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_FAILED;
            }
            if let Some(r) = done.report {
                let _ = writeln!(err, "{}", serde_json::to_string_pretty(&r).expect("json"));
            }
            done.code
        }
        Err(Fault::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Fault::DeskScale(steps)) => {
            let _ = writeln!(err, "{}", json!({ "desk_scale_exceeded": { "steps": steps } }));
            EXIT_DESK_SCALE
        }
        Err(Fault::Failed(m)) => {
            let _ = writeln!(err, "{}", json!({ "error": m }));
            EXIT_FAILED
        }
    }
}

fn execute(registry: &Registry, cmd: &Cmd, args: &Args) -> Result<Done, Fault> {
    let target = registry.get(&args.target).ok_or_else(|| {
        Fault::Usage(format!("unknown target `{}`; expected one of {}", args.target, registry.names().join(", ")))
    })?;
    let p = args.params();
    target.validate(&p)?;
    if p.weights_only && !matches!(cmd, Cmd::Verify(_)) {
        return Err(Fault::Usage("--weights-only applies to verify".into()));
    }
    let pool = match args.threads {
        Some(0) => return Err(Fault::Usage("--threads must be positive".into())),
        Some(n) => {
            Some(rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Fault::Failed(e.to_string()))?)
        }
        None => None,
    };
    let work = || match cmd {
        Cmd::Gen(_) => gen(target.as_ref(), &p, args),
        Cmd::Pfaffian(_) => pfaffian(target.as_ref(), &p, args),
        Cmd::Points(_) => points(target.as_ref(), &p, args),
        Cmd::Weights(_) => {
            args.json_only()?;
            let rows = target.weights(&p)?;
            let obj: Map<String, Value> = rows.into_iter().collect();
            Ok(Done::ok(pretty(&json!({ "target": target.name(), "weights": obj }))))
        }
        Cmd::Verify(_) => verify(target.as_ref(), &p),
        Cmd::Targets => unreachable!("handled by run"),
    };
    match pool {
        Some(pool) => pool.install(work),
        None => work(),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn gen(t: &dyn Target, p: &Params, args: &Args) -> Result<Done, Fault> {
    let fmt = args.format()?;
    if p.matrix.is_some() {
        let m = t.pick_matrix(p)?;
        return Ok(Done::ok(match &m.note {
            Some(note) => emit_matrix_annotated(&m.matrix, fmt, note),
            None => emit_matrix(&m.matrix, fmt),
        }));
    }
    Ok(Done::ok(emit(&t.system(p)?, fmt)))
}

fn pfaffian(t: &dyn Target, p: &Params, args: &Args) -> Result<Done, Fault> {
    let fmt = args.format()?;
    let m = t.pick_matrix(p)?;
    let sys = match m.pfaffians {
        Some(s) => s,
        None => m.matrix.all_pfaffians4(&format!("Pf({})", p.matrix.as_deref().unwrap_or(t.name()))),
    };
    Ok(Done::ok(emit(&sys, fmt)))
}

fn points(t: &dyn Target, p: &Params, args: &Args) -> Result<Done, Fault> {
    args.json_only()?;
    let pts = t.points(p, p.samples_or(DEFAULT_POINTS))?;
    let rows: Vec<Value> = pts
        .iter()
        .map(|pt| {
            let m: Map<String, Value> = pt
                .vars()
                .names()
                .iter()
                .zip(pt.values())
                .map(|(n, v)| (n.clone(), Value::String(rational_text(v))))
                .collect();
            Value::Object(m)
        })
        .collect();
    Ok(Done::ok(pretty(&json!({ "target": t.name(), "seed": p.seed(), "points": rows }))))
}

fn verify(t: &dyn Target, p: &Params) -> Result<Done, Fault> {
    let before = bases_computed();
    let results = run_all(t.checks(p)?);
    let bases = bases_computed() - before;
    let mut text = format!("verify {}\n", t.name());
    text.push_str(&summary(&results));
    text.push_str(&format!("groebner bases computed: {bases}\n"));
    let tl = tally(&results);
    let code = if tl.failed > 0 {
        EXIT_FAILED
    } else if tl.desk_scale > 0 {
        EXIT_DESK_SCALE
    } else {
        EXIT_OK
    };
    let report = (code != EXIT_OK).then(|| failure_report(t.name(), p.to_json(), &results));
    Ok(Done { text, code, report })
}
