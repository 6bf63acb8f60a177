//! Command-line front end for the exact alternating-code bounds.
//!
//! Five subcommands: `bounds` evaluates every bound at one parameter
//! triple, `spectrum` prints the eigenvalue data behind them, `table`
//! sweeps a parameter grid into CSV or JSON, `verify` rebuilds the graph
//! brute-force and rechecks the structural claims, and `lp` dumps or
//! solves one of the exact linear programs for audit.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error,
//! 3 a resource guard refused the instance.

mod grid;
mod render;

use altbounds::altforms::space_size;
use altbounds::bounds::{build_delsarte_lp, build_minor_lp, full_report, BoundReport};
use altbounds::oracle::{
    build_graph, closed_walks, exact_alpha_k, verify_distance_regularity, verify_geodesic_rank,
    verify_spectrum, CheckStatus, DenseGraph, DEFAULT_NODE_BUDGET,
};
use altbounds::ratlp::{solve, LinearProgram, LpStatus};
use altbounds::spectra::{delta_walks, diameter, spectrum};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "altbounds",
    version,
    about = "Exact upper bounds for codes of alternating matrices under the rank metric"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound at one parameter triple (q, n, d).
    Bounds(BoundsArgs),
    /// Print eigenvalues, multiplicities, and the intersection array.
    Spectrum(SpectrumArgs),
    /// Evaluate bounds over a parameter grid, as CSV or JSON.
    Table(TableArgs),
    /// Rebuild the graph explicitly and recheck the structural claims.
    Verify(VerifyArgs),
    /// Dump or solve one of the exact linear programs.
    Lp(LpArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// Field order, a prime power at least 2.
    #[arg(long)]
    q: u64,
    /// Matrix side length.
    #[arg(long)]
    n: usize,
    /// Half the minimum rank distance: codewords differ in rank >= 2d.
    #[arg(long)]
    d: usize,
    /// Print only the smallest cap valid for arbitrary codes.
    #[arg(long)]
    best: bool,
    /// Write the exact LP instances behind the LP rows to this path.
    #[arg(long, value_name = "PATH")]
    dump_lp: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Field order, a prime power at least 2.
    #[arg(long)]
    q: u64,
    /// Matrix side length.
    #[arg(long)]
    n: usize,
    /// Emit machine-readable JSON instead of the text layout.
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Field orders, comma separated (example: 2,3,5).
    #[arg(long, value_name = "LIST")]
    q: String,
    /// Matrix sizes, one value or an inclusive range lo:hi.
    #[arg(long, value_name = "RANGE")]
    n: String,
    /// Distance parameters, one value or lo:hi; default is every valid d.
    #[arg(long, value_name = "RANGE")]
    d: Option<String>,
    /// Bounds to tabulate: "all" or a comma list of bound names.
    #[arg(long, default_value = "all", value_name = "LIST")]
    bounds: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Field order, a prime power at least 2.
    #[arg(long)]
    q: u64,
    /// Matrix side length.
    #[arg(long)]
    n: usize,
    /// Also run the exact k-independence search at this k.
    #[arg(long, value_name = "K")]
    alpha_k: Option<usize>,
    /// Node budget for the independence search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_name = "N")]
    budget: u64,
    /// Seed for the spot-check vertices of the walk count.
    #[arg(long, default_value_t = 0, value_name = "N")]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum LpKind {
    /// Minor-polynomial program with vanishing rows at the top eigenvalues.
    Minor,
    /// Delsarte inner-distribution program.
    Delsarte,
}

#[derive(Args)]
struct LpArgs {
    /// Field order, a prime power at least 2.
    #[arg(long)]
    q: u64,
    /// Matrix side length.
    #[arg(long)]
    n: usize,
    /// Which program to build.
    #[arg(long, value_enum)]
    kind: LpKind,
    /// Minor index (minor kind only); the d-bound uses k = d - 1.
    #[arg(long)]
    k: Option<usize>,
    /// Distance parameter (delsarte kind only).
    #[arg(long)]
    d: Option<usize>,
    /// Solve the program and print its status and optimum.
    #[arg(long)]
    solve: bool,
    /// Write the program text here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// A failed run, split by exit code: usage errors exit 2, refused resource
/// guards exit 3.
enum Failure {
    Usage(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Guard(m) => m,
        }
    }
}

fn classify(e: altbounds::Error) -> Failure {
    match &e {
        altbounds::Error::SizeGuard { .. } => Failure::Guard(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn io_failure(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Bounds(args) => cmd_bounds(&args),
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Lp(args) => cmd_lp(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn render_bounds_report(report: &BoundReport) -> String {
    let mut out = String::new();
    let size = space_size(report.n, report.q);
    let _ = writeln!(
        out,
        "bounds for q={}, n={}, d={}",
        report.q, report.n, report.d
    );
    let _ = writeln!(
        out,
        "space size {size}, diameter {}",
        diameter(report.n)
    );
    let _ = writeln!(out);
    let width = report
        .entries
        .iter()
        .map(|e| e.name.len())
        .max()
        .unwrap_or(0);
    for e in &report.entries {
        let value = render::cell_text(&e.value);
        let notes = render::entry_notes(e);
        let _ = write!(out, "  {:width$}  {value}", e.name);
        if !notes.is_empty() {
            let _ = write!(out, "  ({})", notes.join("; "));
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "best for arbitrary codes: {}", report.best());
    let pairs = [
        ("hoffman = singleton", report.flags.hoffman_equals_singleton),
        ("ratio-k2 = singleton", report.flags.ratio_k2_equals_singleton),
        ("ratio-k3 = singleton", report.flags.ratio_k3_equals_singleton),
        (
            "minor-lp = delsarte-lp",
            report.flags.minor_lp_equals_delsarte,
        ),
    ];
    for (label, flag) in pairs {
        if flag.is_some() {
            let _ = writeln!(out, "{label}: {}", render::flag_text(flag));
        }
    }
    let _ = writeln!(
        out,
        "perfectness: {}",
        render::perfectness_text(report.perfectness)
    );
    out
}

fn dump_lp_instances(q: u64, n: usize, d: usize, path: &PathBuf) -> Result<(), Failure> {
    let mut text = String::new();
    if d >= 2 {
        let lp = build_minor_lp(q, n, d - 1).map_err(classify)?;
        let _ = writeln!(text, "# minor-lp, k = {}", d - 1);
        text.push_str(&lp.dump());
        text.push('\n');
    }
    let lp = build_delsarte_lp(q, n, d).map_err(classify)?;
    let _ = writeln!(text, "# delsarte-lp, d = {d}");
    text.push_str(&lp.dump());
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn cmd_bounds(args: &BoundsArgs) -> Result<ExitCode, Failure> {
    if args.n >= 2 && args.d > diameter(args.n) {
        return Err(Failure::Usage(format!(
            "d exceeds floor(n/2) = {}",
            diameter(args.n)
        )));
    }
    let report = full_report(args.q, args.n, args.d).map_err(classify)?;
    if let Some(path) = &args.dump_lp {
        dump_lp_instances(args.q, args.n, args.d, path)?;
    }
    if args.best {
        println!("{}", report.best());
    } else {
        print!("{}", render_bounds_report(&report));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<ExitCode, Failure> {
    let (st, ia) = spectrum(args.n, args.q).map_err(classify)?;
    let nverts = space_size(args.n, args.q);
    if args.json {
        let doc = render::SpectrumJson::build(&st, &ia, &nverts);
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("fixed schema serializes")
        );
        return Ok(ExitCode::SUCCESS);
    }
    println!("spectrum for q={}, n={}", st.q, st.n);
    println!(
        "{nverts} vertices, degree {}, diameter {}",
        st.theta[0],
        st.theta.len() - 1
    );
    println!();
    let width = st
        .theta
        .iter()
        .map(|t| t.to_string().len())
        .max()
        .unwrap_or(5)
        .max("theta".len());
    println!("  {:width$}  mult", "theta");
    for (t, m) in st.theta.iter().zip(&st.mult) {
        println!("  {:width$}  {m}", t.to_string());
    }
    println!();
    println!("intersection array");
    let join = |v: &[num_bigint::BigUint]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("  b: {}", join(&ia.b));
    println!("  c: {}", join(&ia.c));
    println!("  a: {}", join(&ia.a));
    println!("  k: {}", join(&ia.k));
    Ok(ExitCode::SUCCESS)
}

fn parse_q_list(s: &str) -> Result<Vec<u64>, Failure> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let v: u64 = part
            .parse()
            .map_err(|_| Failure::Usage(format!("cannot parse field order {part:?}")))?;
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_range(s: &str, what: &str) -> Result<(usize, usize), Failure> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("cannot parse {what} value {t:?}")))
    };
    match s.split_once(':') {
        Some((a, b)) => Ok((parse_one(a)?, parse_one(b)?)),
        None => {
            let v = parse_one(s)?;
            Ok((v, v))
        }
    }
}

fn parse_bound_list(s: &str) -> Result<Vec<&'static str>, Failure> {
    if s.trim() == "all" {
        return Ok(grid::BOUND_NAMES.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let name = grid::BOUND_NAMES
            .iter()
            .find(|n| **n == part)
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown bound name {part:?}; valid names: {}",
                    grid::BOUND_NAMES.join(", ")
                ))
            })?;
        if !out.contains(name) {
            out.push(*name);
        }
    }
    Ok(out)
}

fn cmd_table(args: &TableArgs) -> Result<ExitCode, Failure> {
    let req = grid::TableRequest {
        qs: parse_q_list(&args.q)?,
        n_range: parse_range(&args.n, "n")?,
        d_range: args.d.as_deref().map(|s| parse_range(s, "d")).transpose()?,
        bounds: parse_bound_list(&args.bounds)?,
    };
    let rows = grid::evaluate(&req).map_err(classify)?;
    let mut sink: Box<dyn std::io::Write> = match &args.out {
        Some(path) => Box::new(fs::File::create(path).map_err(|e| io_failure(path, e))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let written = match args.format {
        OutputFormat::Csv => grid::write_csv(&req, &rows, &mut sink),
        OutputFormat::Json => grid::write_json(&req, &rows, &mut sink),
    };
    written.map_err(|e| match &args.out {
        Some(path) => io_failure(path, e),
        None => Failure::Usage(format!("cannot write output: {e}")),
    })?;
    sink.flush()
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))?;
    Ok(ExitCode::SUCCESS)
}

fn graph_header(g: &DenseGraph) -> String {
    format!(
        "graph: q={}, n={}, {} vertices, degree {}",
        g.q(),
        g.n(),
        g.num_vertices(),
        g.degree()
    )
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let g = build_graph(args.n, args.q).map_err(classify)?;
    println!("{}", graph_header(&g));
    let mut all_ok = true;

    let geo = verify_geodesic_rank(&g);
    if geo.passed {
        let hist = geo
            .histogram
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        println!("geodesic-rank: pass (levels {hist})");
    } else {
        let (v, dist, rank) = geo.counterexample.expect("failure carries a witness");
        println!("geodesic-rank: FAIL (vertex {v} at distance {dist} but rank/2 = {rank})");
        all_ok = false;
    }

    let dr = verify_distance_regularity(&g).map_err(classify)?;
    if dr.passed {
        let join = |v: &[u64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!(
            "distance-regularity: pass (b {}; c {}; a {})",
            join(&dr.b),
            join(&dr.c),
            join(&dr.a)
        );
    } else {
        println!(
            "distance-regularity: FAIL ({})",
            dr.detail.as_deref().unwrap_or("mismatch")
        );
        all_ok = false;
    }

    let (st, _) = spectrum(g.n(), g.q()).map_err(classify)?;
    let sc = verify_spectrum(&g, &st).map_err(classify)?;
    for (label, status) in [
        ("spectrum-annihilation", &sc.annihilation),
        ("spectrum-traces", &sc.traces),
    ] {
        match status {
            CheckStatus::Verified => println!("{label}: pass"),
            CheckStatus::Skipped(reason) => println!("{label}: skipped ({reason})"),
            CheckStatus::Failed => {
                println!("{label}: FAIL");
                all_ok = false;
            }
        }
    }

    let walks = closed_walks(&g, 3, args.seed).map_err(classify)?;
    let expected = delta_walks(g.n(), g.q()).map_err(classify)?;
    if walks == expected {
        println!("walk-count[s=3]: pass ({walks} closed walks per vertex)");
    } else {
        println!("walk-count[s=3]: FAIL (counted {walks}, spectral side {expected})");
        all_ok = false;
    }

    if let Some(k) = args.alpha_k {
        let alpha = exact_alpha_k(&g, k, args.budget).map_err(classify)?;
        if alpha.proven {
            println!(
                "alpha[k={k}]: {} (proven, {} nodes)",
                alpha.size, alpha.nodes_used
            );
        } else {
            println!(
                "alpha[k={k}]: at least {} (budget exhausted after {} nodes)",
                alpha.size, alpha.nodes_used
            );
        }
    }

    if all_ok {
        println!("verdict: pass");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verdict: FAIL");
        Ok(ExitCode::from(1))
    }
}

fn build_lp_for(args: &LpArgs) -> Result<LinearProgram, Failure> {
    match args.kind {
        LpKind::Minor => {
            let k = args
                .k
                .ok_or_else(|| Failure::Usage("the minor program needs --k".to_string()))?;
            build_minor_lp(args.q, args.n, k).map_err(classify)
        }
        LpKind::Delsarte => {
            let d = args
                .d
                .ok_or_else(|| Failure::Usage("the Delsarte program needs --d".to_string()))?;
            build_delsarte_lp(args.q, args.n, d).map_err(classify)
        }
    }
}

fn cmd_lp(args: &LpArgs) -> Result<ExitCode, Failure> {
    let lp = build_lp_for(args)?;
    let text = lp.dump();
    match &args.out {
        Some(path) => fs::write(path, &text).map_err(|e| io_failure(path, e))?,
        None => print!("{text}"),
    }
    if args.solve {
        let sol = solve(&lp);
        match sol.status {
            LpStatus::Optimal => {
                let value = sol.value.expect("optimal solutions carry a value");
                println!("status: optimal");
                if value.denom().is_one() {
                    println!("objective: {}", value.numer());
                } else {
                    println!(
                        "objective: {}/{} (floor {})",
                        value.numer(),
                        value.denom(),
                        value.floor().to_integer()
                    );
                }
                if let Some(basis) = &sol.basis {
                    println!("basis: {}", basis.join(" "));
                }
            }
            LpStatus::Infeasible => println!("status: infeasible"),
            LpStatus::Unbounded => println!("status: unbounded"),
        }
    }
    Ok(ExitCode::SUCCESS)
}
