use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lt1::audit::{self, AuditConfig, Suite};
use lt1::checker::{c_span, complement, validate};
use lt1::families::{
    kpartite_colouring, kpartite_upper_bound, star_colouring, star_span_predicted,
};
use lt1::io::{emit_result, generate, parse_colours, parse_graph, FamilySpec};
use lt1::solver::{
    brute_force_span, exact_span_with, greedy_upper_bound, Budget, ExactConfig, OrderPolicy,
    Strategy,
};
use lt1::{Error, Graph, TSet};

const EXIT_INVALID: u8 = 1;
const EXIT_BUDGET: u8 = 2;

#[derive(Parser)]
#[command(
    name = "lt1",
    version,
    about = "L(t,1)-colouring: spans, checks, constructions and claim audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the span of a graph.
    Span(SpanArgs),
    /// Check a colouring; prints one violation per line.
    Check(CheckArgs),
    /// Build the explicit colouring for a star or complete multipartite graph.
    Construct(ConstructArgs),
    /// Compare closed-form claims with exact spans over a grid of instances.
    Audit(AuditArgs),
    /// Reflect a valid colouring: c'(v) = s + j - c(v).
    Complement(ComplementArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Brute,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Deepening,
    Binary,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search node limit.
    #[arg(long, default_value_t = Budget::DEFAULT_NODES)]
    budget_nodes: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = Budget::DEFAULT_TIME.as_secs_f64())]
    budget_secs: f64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: Some(self.budget_nodes),
            max_time: Some(Duration::from_secs_f64(self.budget_secs.max(0.0))),
        }
    }
}

#[derive(Args)]
struct SpanArgs {
    /// Graph file in `p edge` format.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    graph: Option<PathBuf>,
    /// Generated graph, e.g. `star:3`, `kpartite:2,2`, `random:6,0.5,42`.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    tset: String,
    #[arg(long, value_enum, default_value = "exact")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "deepening")]
    strategy: StrategyArg,
    /// Worker threads for the exact search.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Greedy vertex order: `degree`, `id` or `random:<seed>`.
    #[arg(long, default_value = "degree")]
    order: String,
    /// Largest span tried by the brute-force method.
    #[arg(long, default_value_t = 12)]
    max_span: u32,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    graph: PathBuf,
    #[arg(long)]
    tset: String,
    #[arg(long)]
    colours: String,
}

#[derive(Args)]
struct ConstructArgs {
    /// `star:<n>` or `kpartite:<s1>,<s2>,...`
    #[arg(long)]
    family: String,
    #[arg(long)]
    tset: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// stars, kpartite, remarks or all
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    max_r: Option<u32>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Largest |T| considered.
    #[arg(long, default_value_t = 5)]
    max_tset_len: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, conflicts_with = "markdown")]
    json: bool,
    /// Print a markdown summary and discrepancy table instead of per-instance lines.
    #[arg(long)]
    markdown: bool,
}

#[derive(Args)]
struct ComplementArgs {
    graph: PathBuf,
    #[arg(long)]
    tset: String,
    #[arg(long)]
    colours: String,
    #[arg(long, default_value_t = 0)]
    j: u32,
    #[arg(long)]
    json: bool,
}

/// Failure with its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let outcome = match cli.command {
        Command::Span(args) => span(args),
        Command::Check(args) => check(args),
        Command::Construct(args) => construct(args),
        Command::Audit(args) => run_audit(args),
        Command::Complement(args) => complement_cmd(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_graph(&text)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.graph)
}

fn parse_order(text: &str) -> Result<OrderPolicy, Failure> {
    match text {
        "degree" => Ok(OrderPolicy::DegreeDesc),
        "id" => Ok(OrderPolicy::IdAsc),
        _ => text
            .strip_prefix("random:")
            .and_then(|s| s.parse().ok())
            .map(OrderPolicy::Random)
            .ok_or_else(|| invalid(format!("bad order `{text}`"))),
    }
}

fn span(args: SpanArgs) -> CmdResult {
    let t: TSet = args.tset.parse()?;
    let g = match (&args.graph, &args.family) {
        (Some(path), _) => read_graph(path)?,
        (None, Some(family)) => generate(&family.parse::<FamilySpec>()?)?,
        (None, None) => return Err(invalid("no graph given")),
    };
    let result = match args.method {
        MethodArg::Exact => exact_span_with(
            &g,
            &t,
            &ExactConfig {
                budget: args.budget.budget(),
                strategy: match args.strategy {
                    StrategyArg::Deepening => Strategy::Deepening,
                    StrategyArg::Binary => Strategy::Binary,
                },
                workers: args.workers.max(1),
            },
        )?,
        MethodArg::Brute => brute_force_span(&g, &t, args.max_span)?,
        MethodArg::Greedy => greedy_upper_bound(&g, &t, parse_order(&args.order)?),
    };
    if args.json {
        println!("{}", emit_result(&result, &g, &t));
    } else {
        println!("lambda: {} ({})", result.lambda, result.method.as_str());
        println!("colours: {}", result.witness);
        println!(
            "nodes: {}  elapsed: {:.3} ms",
            result.nodes_explored,
            result.elapsed.as_secs_f64() * 1000.0
        );
    }
    Ok(0)
}

fn check(args: CheckArgs) -> CmdResult {
    let t: TSet = args.tset.parse()?;
    let g = read_graph(&args.graph)?;
    let c = parse_colours(&args.colours)?;
    let violations = validate(&g, &t, &c)?;
    for v in &violations {
        println!("{v}");
    }
    Ok(if violations.is_empty() {
        0
    } else {
        EXIT_INVALID
    })
}

fn construct(args: ConstructArgs) -> CmdResult {
    let t: TSet = args.tset.parse()?;
    let spec: FamilySpec = args.family.parse()?;
    let (g, colouring, prediction, bound) = match &spec {
        FamilySpec::Star(n) => {
            let c = star_colouring(*n, &t);
            (generate(&spec)?, c, Some(star_span_predicted(*n, &t)), None)
        }
        FamilySpec::CompleteMultipartite(sizes) => {
            let c = kpartite_colouring(sizes, &t)?;
            (
                generate(&spec)?,
                c,
                None,
                Some(kpartite_upper_bound(sizes, &t)?),
            )
        }
        _ => {
            return Err(invalid(
                "construct supports star:<n> and kpartite:<sizes> only",
            ))
        }
    };
    let violations = validate(&g, &t, &colouring)?;
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("{v}");
        }
        return Err(invalid("constructed colouring failed validation"));
    }
    let span = c_span(&colouring)?;
    if args.json {
        let mut out = json!({
            "family": spec.to_string(),
            "tset": t.elements(),
            "colours": colouring.as_slice(),
            "c_span": span,
            "valid": true,
        });
        if let Some(p) = prediction {
            out["prediction"] = json!({ "mode": p.mode, "value": p.value });
        }
        if let Some(b) = bound {
            out["upper_bound"] = json!(b);
        }
        println!("{out}");
    } else {
        println!("colours: {colouring}");
        println!("c-span: {span}");
        if let Some(p) = prediction {
            println!("prediction: {p}");
        }
        if let Some(b) = bound {
            println!("upper bound: {b}");
        }
    }
    Ok(0)
}

fn run_audit(args: AuditArgs) -> CmdResult {
    let suite: Suite = args.suite.parse()?;
    let config = AuditConfig {
        max_r: args.max_r,
        max_n: args.max_n,
        max_tset_len: args.max_tset_len,
        budget: args.budget.budget(),
    };
    let report = audit::run(suite, &config);
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else if args.markdown {
        print!("{}", report.to_markdown());
    } else {
        for r in &report.records {
            let status = match r.agree {
                Some(true) => "ok",
                Some(false) => "DISCREPANCY",
                None => "unresolved",
            };
            let exact = r.exact.map_or_else(|| "?".to_string(), |e| e.to_string());
            println!(
                "{status:<11} {:<24} {:<40} predicted {:<12} exact {:<4} {}",
                r.claim, r.instance, r.predicted, exact, r.notes
            );
        }
        let s = &report.summary;
        println!(
            "summary: {} instances, {} agree, {} discrepancies, {} unresolved",
            s.instances, s.agree, s.discrepancies, s.unresolved
        );
        for (claim, [ok, bad, open]) in &s.by_claim {
            println!("  {claim}: {ok} agree, {bad} discrepancies, {open} unresolved");
        }
    }
    Ok(report.exit_code())
}

fn complement_cmd(args: ComplementArgs) -> CmdResult {
    let t: TSet = args.tset.parse()?;
    let g = read_graph(&args.graph)?;
    let c = parse_colours(&args.colours)?;
    let violations = validate(&g, &t, &c)?;
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("{v}");
        }
        return Err(invalid(
            "input colouring is not valid; no complement produced",
        ));
    }
    let reflected = complement(&c, args.j)?;
    let valid = validate(&g, &t, &reflected)?.is_empty();
    let (before, after) = (c_span(&c)?, c_span(&reflected)?);
    if args.json {
        println!(
            "{}",
            json!({
                "colours": reflected.as_slice(),
                "span": before,
                "complement_span": after,
                "valid": valid,
            })
        );
    } else {
        println!("{reflected}");
        println!("span: {before} -> {after}");
        println!("valid: {}", if valid { "yes" } else { "NO" });
    }
    Ok(if valid { 0 } else { EXIT_INVALID })
}
