//! The `spectral-reduce` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource or
//! numerical error. Successful runs print one JSON document on stdout;
//! everything else goes to stderr.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{FamilyBuilder, Parity, DEFAULT_VERTEX_CAP};
use crate::graph::LabeledGraph;
use crate::io::{self, ContextDoc, FunctionDoc, GraphDoc, GraphRef};
use crate::reduction::{
    check_context_maps, check_remark1, reduce, theorem_check_all, CheckOutcome, Condition,
    Remark1Report, SpecialPair,
};
use crate::spectral::{eigendecompose, residual, DEFAULT_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "spectral-reduce",
    version,
    about = "Special pairs and eigenfunction reduction on distance-regular graphs"
)]
struct Cli {
    /// Relative tolerance for eigenspace membership.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Base seed for eigenfunction sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest graph (in vertices) the builders will construct.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a graph and write it as JSON.
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Print the adjacency spectrum of a graph file.
    Spectrum { graph: PathBuf },
    /// Construct a special pair with its reduction maps and write a context file.
    MakePair {
        #[command(subcommand)]
        family: PairFamily,
    },
    /// Verify a pair or context file.
    VerifyPair { ctx: PathBuf },
    /// Reduce an eigenfunction through a context.
    Reduce(ReduceArgs),
    /// Reduce sampled eigenfunctions for every eigenvalue and check membership.
    CheckTheorem {
        ctx: PathBuf,
        /// Sampled eigenfunctions per eigenvalue.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Sample a unit-norm eigenfunction of a graph file.
    Sample {
        graph: PathBuf,
        /// Eigenvalue to sample from.
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Output function file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct OutArg {
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum BuildFamily {
    /// Hamming graph H(n,q).
    Hamming {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u8,
        #[command(flatten)]
        out: OutArg,
    },
    /// Johnson graph J(n,k).
    Johnson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Halved n-cube on even or odd weight words.
    HalvedCube {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Subcommand)]
enum PairFamily {
    /// Swap letters k and m in coordinate r of H(n,q).
    Hamming {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u8,
        /// Coordinate (1-based) carrying the letter transposition.
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: u8,
        #[arg(long)]
        m: u8,
        #[command(flatten)]
        out: OutArg,
    },
    /// Swap coordinates i < j of J(n,k).
    Johnson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Swap coordinates i < j of the even halved n-cube.
    HalvedCube {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    /// Context file from `make-pair`.
    ctx: PathBuf,
    /// Function file on the context's graph.
    function: PathBuf,
    /// Eigenvalue the input function is expected to have.
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    /// Output file for the reduced function.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

/// Exit code and the text destined for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

impl CommandOutcome {
    fn success(report: &Value) -> Self {
        CommandOutcome {
            code: 0,
            stdout: Some(io::to_canonical_json(report)),
            stderr: None,
        }
    }

    fn check_failed(report: &Value) -> Self {
        CommandOutcome {
            code: 1,
            stdout: None,
            stderr: Some(io::to_canonical_json(report)),
        }
    }

    fn from_error(e: &Error) -> Self {
        let code = match e {
            Error::Usage(_) | Error::Io { .. } | Error::Json { .. } => 2,
            Error::Resource { .. } | Error::Numerical(_) => 3,
        };
        CommandOutcome {
            code,
            stdout: None,
            stderr: Some(format!("error: {e}\n")),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome {
                    code: 2,
                    stdout: None,
                    stderr: Some(text),
                }
            } else {
                CommandOutcome {
                    code: 0,
                    stdout: Some(text),
                    stderr: None,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome::from_error(&e),
    }
}

fn dispatch(cli: &Cli) -> Result<CommandOutcome> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Error::usage(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    let builder = FamilyBuilder::with_cap(cli.cap);
    match &cli.command {
        Command::Build { family } => cmd_build(&builder, family),
        Command::Spectrum { graph } => cmd_spectrum(graph),
        Command::MakePair { family } => cmd_make_pair(&builder, family),
        Command::VerifyPair { ctx } => cmd_verify_pair(ctx),
        Command::Reduce(args) => cmd_reduce(args, cli.tol),
        Command::CheckTheorem { ctx, trials } => cmd_check_theorem(ctx, *trials, cli.seed, cli.tol),
        Command::Sample { graph, lambda, out } => cmd_sample(graph, *lambda, cli.seed, out),
    }
}

fn graph_summary(g: &LabeledGraph) -> Value {
    json!({
        "vertices": g.order(),
        "edges": g.size(),
        "degree": g.regular_degree(),
    })
}

fn cmd_build(builder: &FamilyBuilder, family: &BuildFamily) -> Result<CommandOutcome> {
    let (g, out, name) = match family {
        BuildFamily::Hamming { n, q, out } => (builder.hamming(*n, *q)?, out, "hamming"),
        BuildFamily::Johnson { n, k, out } => (builder.johnson(*n, *k)?, out, "johnson"),
        BuildFamily::HalvedCube { n, parity, out } => (
            builder.halved_cube(*n, (*parity).into())?,
            out,
            "halved-cube",
        ),
    };
    io::write_graph(&out.out, &g)?;
    let mut report = graph_summary(&g);
    report["family"] = json!(name);
    report["out"] = json!(out.out.display().to_string());
    Ok(CommandOutcome::success(&report))
}

fn cmd_spectrum(path: &Path) -> Result<CommandOutcome> {
    let g = io::read_graph(path)?;
    let spectrum = eigendecompose(&g)?;
    Ok(CommandOutcome::success(
        &serde_json::to_value(io::spectrum_report(&spectrum)).expect("plain data"),
    ))
}

/// `ctx.json` -> `ctx.G.json`, `ctx.G0.json`.
fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{tag}.json"))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn cmd_make_pair(builder: &FamilyBuilder, family: &PairFamily) -> Result<CommandOutcome> {
    let (ctx, out, name) = match family {
        PairFamily::Hamming { n, q, r, k, m, out } => {
            (builder.hamming_context(*n, *q, *r, *k, *m)?, out, "hamming")
        }
        PairFamily::Johnson { n, k, i, j, out } => {
            (builder.johnson_context(*n, *k, *i, *j)?, out, "johnson")
        }
        PairFamily::HalvedCube { n, i, j, out } => {
            (builder.halved_cube_context(*n, *i, *j)?, out, "halved-cube")
        }
    };
    let remark = ctx.remark1()?;
    if !remark.all_hold() {
        return Err(Error::Numerical(format!(
            "constructed pair fails a structural check: {remark:?}"
        )));
    }
    let g_path = sibling(&out.out, "G");
    let g0_path = sibling(&out.out, "G0");
    io::write_graph(&g_path, ctx.graph())?;
    io::write_graph(&g0_path, ctx.reduced_graph())?;
    let doc = ContextDoc::from_context(
        &ctx,
        GraphRef::Path(file_name(&g_path)),
        GraphRef::Path(file_name(&g0_path)),
    );
    io::write_json(&out.out, &doc)?;

    let parts = ctx.pair().parts();
    Ok(CommandOutcome::success(&json!({
        "family": name,
        "out": out.out.display().to_string(),
        "graph": graph_summary(ctx.graph()),
        "G0": graph_summary(ctx.reduced_graph()),
        "V1": parts.v1().len(),
        "V2": parts.v2().len(),
        "V3": parts.v3().len(),
        "verified": true,
    })))
}

fn outcome_json(o: &CheckOutcome) -> Value {
    match o {
        CheckOutcome::Holds => json!(true),
        CheckOutcome::Fails { witness, reason } => {
            json!({ "holds": false, "witness": witness, "reason": reason })
        }
    }
}

fn remark_json(r: &Remark1Report) -> Value {
    json!({
        "involutive": outcome_json(&r.involutive),
        "halves_isomorphic": outcome_json(&r.halves_isomorphic),
        "product_with_K2": outcome_json(&r.product_structure),
    })
}

fn cmd_verify_pair(path: &Path) -> Result<CommandOutcome> {
    let loaded = io::read_pair(path)?;
    let g = &loaded.graph;
    let order = [
        Condition::Automorphism,
        Condition::Swap,
        Condition::CrossNeighbor,
        Condition::FixesRest,
    ];
    let violation = crate::reduction::verify_special_pair(g, &loaded.phi, &loaded.parts)?;
    let mut conditions = serde_json::Map::new();
    let mut reached_failure = false;
    for c in order {
        let status = match &violation {
            Some(v) if v.condition == c => {
                reached_failure = true;
                "FAIL"
            }
            _ if reached_failure => "NOT CHECKED",
            _ => "PASS",
        };
        conditions.insert(c.name().to_string(), json!(status));
    }
    let remark = check_remark1(g, &loaded.phi, &loaded.parts)?;

    if let Some(v) = violation {
        return Ok(CommandOutcome::check_failed(&json!({
            "status": "FAIL",
            "conditions": conditions,
            "condition": v.condition.name(),
            "witness": v.witness,
            "witness_label": g.label(v.witness).to_string(),
            "detail": v.detail,
            "remark1": remark_json(&remark),
        })));
    }

    let mut report = json!({
        "status": "PASS",
        "conditions": conditions,
        "remark1": remark_json(&remark),
    });
    let pair = SpecialPair::new(loaded.graph, loaded.phi, loaded.parts)?;
    match &loaded.reduced {
        None => report["context"] = json!("absent"),
        Some(red) => match check_context_maps(&pair, &red.g0, &red.phi1, &red.phi2)? {
            None => report["context"] = json!("PASS"),
            Some(cv) => {
                report["status"] = json!("FAIL");
                report["context"] = json!({ "status": "FAIL", "detail": cv.to_string() });
            }
        },
    }
    if !remark.all_hold() {
        report["status"] = json!("FAIL");
    }
    if report["status"] == "PASS" {
        Ok(CommandOutcome::success(&report))
    } else {
        Ok(CommandOutcome::check_failed(&report))
    }
}

fn cmd_reduce(args: &ReduceArgs, tol: f64) -> Result<CommandOutcome> {
    let ctx = io::read_pair(&args.ctx)?.into_context()?;
    let (f, fg) = io::read_function(&args.function)?;
    if &fg != ctx.graph() {
        return Err(Error::usage(
            "the function's graph differs from the context graph",
        ));
    }
    let input_residual = residual(ctx.graph(), &f, args.lambda)?;
    let input_bound = tol * f.max_abs().max(1.0);
    if input_residual > input_bound {
        return Ok(CommandOutcome::check_failed(&json!({
            "status": "FAIL",
            "reason": "input is not in the eigenspace",
            "lambda": args.lambda,
            "input_residual": input_residual,
            "bound": input_bound,
        })));
    }
    let reduced = reduce(&f, &ctx)?;
    let target = args.lambda + 1.0;
    let output_residual = residual(ctx.reduced_graph(), &reduced, target)?;
    let output_bound = tol * reduced.max_abs().max(1.0);
    let report = json!({
        "status": if output_residual <= output_bound { "PASS" } else { "FAIL" },
        "lambda": args.lambda,
        "target_lambda": target,
        "input_residual": input_residual,
        "output_residual": output_residual,
        "reduced_is_zero": reduced.is_zero(),
        "reduced_max_abs": reduced.max_abs(),
        "out": args.out.display().to_string(),
    });
    if output_residual > output_bound {
        return Ok(CommandOutcome::check_failed(&report));
    }
    match args.format {
        OutputFormat::Json => io::write_json(
            &args.out,
            &FunctionDoc {
                graph: GraphRef::Inline(GraphDoc::from_graph(ctx.reduced_graph())?),
                values: reduced.into_values(),
            },
        )?,
        OutputFormat::Csv => {
            io::write_text(&args.out, &io::function_csv(&reduced, ctx.reduced_graph()))?
        }
    }
    Ok(CommandOutcome::success(&report))
}

fn cmd_check_theorem(path: &Path, trials: usize, seed: u64, tol: f64) -> Result<CommandOutcome> {
    if trials == 0 {
        return Err(Error::usage("--trials must be at least 1"));
    }
    let ctx = io::read_pair(path)?.into_context()?;
    let checks = theorem_check_all(&ctx, trials, seed, tol)?;
    let pass = checks.iter().all(|c| c.pass);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "lambda": c.lambda,
                "target_lambda": c.lambda + 1.0,
                "max_residual": c.max_residual,
                "max_reduced_norm": c.max_reduced_norm,
                "target_is_eigenvalue": c.target_is_eigenvalue,
                "pass": c.pass,
            })
        })
        .collect();
    let report = json!({
        "status": if pass { "PASS" } else { "FAIL" },
        "tol": tol,
        "trials": trials,
        "seed": seed,
        "results": rows,
    });
    Ok(if pass {
        CommandOutcome::success(&report)
    } else {
        CommandOutcome::check_failed(&report)
    })
}

fn cmd_sample(path: &Path, lambda: f64, seed: u64, out: &Path) -> Result<CommandOutcome> {
    let g = io::read_graph(path)?;
    let spectrum = eigendecompose(&g)?;
    let f = spectrum.sample(lambda, seed)?;
    let r = residual(&g, &f, lambda)?;
    io::write_json(
        out,
        &FunctionDoc {
            graph: GraphRef::Inline(GraphDoc::from_graph(&g)?),
            values: f.into_values(),
        },
    )?;
    Ok(CommandOutcome::success(&json!({
        "lambda": spectrum.eigenspace(lambda).map(|e| e.lambda).unwrap_or(lambda),
        "seed": seed,
        "residual": r,
        "out": out.display().to_string(),
    })))
}
