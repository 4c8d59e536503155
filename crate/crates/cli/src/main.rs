//! Command-line interface: root systems, gradings, cusp-datum generation and
//! verification, curve point counts, and height statistics.
//!
//! Machine-readable JSON goes to stdout (or the configured output path);
//! progress and diagnostics go to stderr. Exit codes: 0 success, 1
//! verification or computation failure, 2 usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cuspcert::cuspgen::{self, CuspReport, Mode};
use cuspcert::curves::{
    self, count_bounded_height, fit_exponent, homogeneity_check, jacobian_order_f2, l_polynomial,
    CurveCase, CurveSpec, HeightSpec,
};
use cuspcert::grading::{compute_grading, Grading};
use cuspcert::reducibility::Frac;
use cuspcert::rootsys::{build_root_system, CartanType, Family, RootSystem};

#[derive(Parser)]
#[command(
    name = "cuspcert",
    version,
    about = "Exact certificates for graded exceptional root systems and their curve families"
)]
struct Cli {
    /// Print progress details to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a simply-laced root system and emit its roots.
    Roots(RootsArgs),
    /// Compute the height-parity grading of E7 or E8.
    Grading(GradingArgs),
    /// Generate and certify the cusp data of E7 or E8.
    Cuspdata(CuspdataArgs),
    /// Re-verify a cusp-datum report produced by `cuspdata`.
    VerifyCuspdata(VerifyArgs),
    /// Curve computations over small binary fields.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Bounded-height lattice counts and the fitted growth exponent.
    Heights(HeightsArgs),
}

#[derive(Args)]
struct RootsArgs {
    /// Cartan type: E6, E7, E8, A\<r\>, or D\<r\>.
    #[arg(long = "type")]
    ctype: String,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GradingArgs {
    /// Graded type: E7 or E8.
    #[arg(long = "type")]
    ctype: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CuspdataArgs {
    /// Graded type: E7 or E8.
    #[arg(long = "type")]
    ctype: String,
    /// Pruning regime: paper (prune by condition 2, certify by f / 1 / 3) or
    /// strict (prune by conditions 1-3, certify by f).
    #[arg(long)]
    mode: String,
    /// Worker threads for level expansion; results are identical for any
    /// value.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Write the report here; stdout then carries only the count line.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit certificates from the emitted report (not re-verifiable).
    #[arg(long)]
    no_certs: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graded type the report must match: E7 or E8.
    #[arg(long = "type")]
    ctype: String,
    /// Report file produced by `cuspdata`.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Count affine points over F_{2^k}.
    CountPoints(CurvePointArgs),
    /// L-polynomial and Jacobian order over F_2.
    JacobianOrder(CurveArgs),
    /// Weighted homogeneity of the defining equation.
    Homogeneity(CaseArg),
}

#[derive(Args)]
struct CaseArg {
    /// Curve family: E7 or E8.
    #[arg(long)]
    case: String,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    case: String,
    /// Comma-separated integer coefficients, e.g. c2=0,c6=1,...; omitted
    /// names default to 0.
    #[arg(long)]
    coeffs: Option<String>,
}

#[derive(Args)]
struct CurvePointArgs {
    #[arg(long)]
    case: String,
    #[arg(long)]
    coeffs: Option<String>,
    /// Field size as 2^k with k ≤ 8.
    #[arg(long)]
    field: String,
}

#[derive(Args)]
struct HeightsArgs {
    /// Curve family: E7 or E8.
    #[arg(long)]
    case: String,
    /// Geometric ladder start:end:x\<factor\>, e.g. 1e6:1e12:x10.
    #[arg(long = "a-ladder", default_value = "1e6:1e12:x10")]
    ladder: String,
    /// Also write an `a,count` CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

enum CmdError {
    Usage(String),
    Failure(String),
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> CmdError {
        CmdError::Usage(msg.into())
    }

    fn failure(msg: impl Into<String>) -> CmdError {
        CmdError::Failure(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Roots(args) => cmd_roots(args),
        Command::Grading(args) => cmd_grading(args),
        Command::Cuspdata(args) => cmd_cuspdata(args, cli.verbose),
        Command::VerifyCuspdata(args) => cmd_verify(args),
        Command::Curve(cmd) => match cmd {
            CurveCommand::CountPoints(args) => cmd_count_points(args),
            CurveCommand::JacobianOrder(args) => cmd_jacobian(args),
            CurveCommand::Homogeneity(args) => cmd_homogeneity(args),
        },
        Command::Heights(args) => cmd_heights(args),
    }
}

fn parse_ctype(s: &str) -> Result<CartanType, CmdError> {
    s.parse().map_err(|e| CmdError::usage(format!("{e}")))
}

fn graded_type(s: &str) -> Result<Grading, CmdError> {
    let ctype = parse_ctype(s)?;
    if !(ctype.family() == Family::E && (ctype.rank() == 7 || ctype.rank() == 8)) {
        return Err(CmdError::usage(format!(
            "type {ctype} is not graded here; use E7 or E8"
        )));
    }
    compute_grading(build_root_system(ctype)).map_err(|e| CmdError::failure(format!("{e}")))
}

fn emit(doc: &serde_json::Value, path: &Option<PathBuf>) -> Result<(), CmdError> {
    let text = serde_json::to_string_pretty(doc).expect("JSON documents serialize");
    match path {
        Some(p) => std::fs::write(p, text + "\n")
            .map_err(|e| CmdError::failure(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_roots(args: RootsArgs) -> Result<(), CmdError> {
    let ctype = parse_ctype(&args.ctype)?;
    let rs = build_root_system(ctype);
    let doc = roots_json(&rs);
    emit(&doc, &args.json)
}

fn roots_json(rs: &RootSystem) -> serde_json::Value {
    serde_json::json!({
        "type": rs.ctype().to_string(),
        "rank": rs.rank(),
        "num_roots": rs.roots().len(),
        "roots": rs.roots().iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
        "positive_roots": rs.positive_roots().iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
        "highest_root": rs.highest_root().coords().to_vec(),
    })
}

fn cmd_grading(args: GradingArgs) -> Result<(), CmdError> {
    let g = graded_type(&args.ctype)?;
    let doc = grading_json(&g);
    emit(&doc, &args.json)
}

fn combination(coords: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coords.iter().enumerate() {
        for _ in 0..c {
            parts.push(format!("a{}", i + 1));
        }
    }
    parts.join("+")
}

fn grading_json(g: &Grading) -> serde_json::Value {
    let n_matrix: Vec<Vec<String>> = g
        .n_matrix()
        .iter()
        .map(|row| row.iter().map(|e| Frac(e.clone()).to_string()).collect())
        .collect();
    serde_json::json!({
        "type": g.rs().ctype().to_string(),
        "num_phi_G": g.phi_g().len(),
        "num_phi_V": g.phi_v().len(),
        "phi_G": g.phi_g().iter().map(|&i| g.rs().roots()[i].coords().to_vec()).collect::<Vec<_>>(),
        "phi_V": g.phi_v().iter().map(|&i| g.rs().roots()[i].coords().to_vec()).collect::<Vec<_>>(),
        "s_G": g.s_g().iter().map(|beta| serde_json::json!({
            "coords": beta.coords().to_vec(),
            "combination": combination(beta.coords()),
        })).collect::<Vec<_>>(),
        "n_matrix": n_matrix,
        "omega": g.omega().iter().map(|w| w.matrix.clone()).collect::<Vec<_>>(),
    })
}

fn cmd_cuspdata(args: CuspdataArgs, verbose: bool) -> Result<(), CmdError> {
    let g = graded_type(&args.ctype)?;
    let mode: Mode = args.mode.parse().map_err(CmdError::usage)?;
    if verbose {
        eprintln!(
            "generating cusp data for {} in {} mode with {} job(s)",
            args.ctype, mode, args.jobs
        );
    }
    let report = cuspgen::generate_cusp_data(&g, mode, args.jobs as usize)
        .map_err(|e| CmdError::failure(format!("{e}")))?;
    eprintln!(
        "{} {}: {} survivors, {} pruned, {} steps",
        args.ctype,
        mode,
        report.count(),
        report.pruned,
        report.generation_steps
    );
    let text = report.to_json_string(!args.no_certs);
    match &args.out {
        Some(p) => {
            std::fs::write(p, text + "\n")
                .map_err(|e| CmdError::failure(format!("cannot write {}: {e}", p.display())))?;
            println!("count {}", report.count());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CmdError> {
    let g = graded_type(&args.ctype)?;
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", args.input.display())))?;
    let report = CuspReport::from_json_str(&text, &g)
        .map_err(|e| CmdError::failure(format!("report does not parse: {e}")))?;
    cuspgen::verify_report(&g, &report)
        .map_err(|e| CmdError::failure(format!("report fails verification: {e}")))?;
    println!(
        "ok: {} data verified ({} pruned recorded)",
        report.count(),
        report.pruned
    );
    Ok(())
}

fn parse_case(s: &str) -> Result<CurveCase, CmdError> {
    s.parse().map_err(|e| CmdError::usage(format!("{e}")))
}

fn parse_coeffs(case: CurveCase, spec: &Option<String>) -> Result<CurveSpec, CmdError> {
    let mut values: BTreeMap<String, i64> = case
        .coefficient_names()
        .iter()
        .map(|&n| (n.to_string(), 0))
        .collect();
    if let Some(text) = spec {
        for piece in text.split(',').filter(|p| !p.is_empty()) {
            let (name, value) = piece
                .split_once('=')
                .ok_or_else(|| CmdError::usage(format!("bad coefficient `{piece}`")))?;
            if !values.contains_key(name) {
                return Err(CmdError::usage(format!(
                    "unknown coefficient `{name}` for case {case}"
                )));
            }
            let value: i64 = value
                .parse()
                .map_err(|e| CmdError::usage(format!("bad value in `{piece}`: {e}")))?;
            values.insert(name.to_string(), value);
        }
    }
    CurveSpec::new(case, values).map_err(|e| CmdError::usage(format!("{e}")))
}

fn parse_field(s: &str) -> Result<u32, CmdError> {
    let k: u32 = match s.strip_prefix("2^") {
        Some(exp) => exp
            .parse()
            .map_err(|e| CmdError::usage(format!("bad field `{s}`: {e}")))?,
        None => {
            let q: u64 = s
                .parse()
                .map_err(|e| CmdError::usage(format!("bad field `{s}`: {e}")))?;
            if !q.is_power_of_two() || q < 2 {
                return Err(CmdError::usage(format!(
                    "field size {q} is not a power of 2"
                )));
            }
            q.trailing_zeros()
        }
    };
    if !(1..=8).contains(&k) {
        return Err(CmdError::usage(format!(
            "field 2^{k} is outside the brute-force range 2^1..2^8"
        )));
    }
    Ok(k)
}

fn cmd_count_points(args: CurvePointArgs) -> Result<(), CmdError> {
    let case = parse_case(&args.case)?;
    let curve = parse_coeffs(case, &args.coeffs)?;
    let k = parse_field(&args.field)?;
    let count =
        curves::count_affine_points(&curve, k).map_err(|e| CmdError::failure(format!("{e}")))?;
    emit(
        &serde_json::json!({
            "case": case.to_string(),
            "field": format!("2^{k}"),
            "affine_points": count,
        }),
        &None,
    )
}

fn cmd_jacobian(args: CurveArgs) -> Result<(), CmdError> {
    let case = parse_case(&args.case)?;
    let curve = parse_coeffs(case, &args.coeffs)?;
    let poly = l_polynomial(&curve).map_err(|e| CmdError::failure(format!("{e}")))?;
    let order = jacobian_order_f2(&curve).map_err(|e| CmdError::failure(format!("{e}")))?;
    emit(
        &serde_json::json!({
            "case": case.to_string(),
            "genus": poly.genus(),
            "l_polynomial": poly.coeffs().to_vec(),
            "jacobian_order": order,
        }),
        &None,
    )
}

fn cmd_homogeneity(args: CaseArg) -> Result<(), CmdError> {
    let case = parse_case(&args.case)?;
    let weight = homogeneity_check(case);
    emit(
        &serde_json::json!({
            "case": case.to_string(),
            "homogeneous": weight.is_some(),
            "total_weight": weight,
        }),
        &None,
    )?;
    if weight.is_none() {
        return Err(CmdError::failure(
            "defining equation is not weighted-homogeneous",
        ));
    }
    Ok(())
}

/// Parses `start:end:x<factor>` with decimal or `<m>e<n>` integers.
fn parse_ladder(s: &str) -> Result<Vec<u64>, CmdError> {
    let bad = || CmdError::usage(format!("bad ladder `{s}` (expected start:end:x<factor>)"));
    let mut parts = s.split(':');
    let (start, end, factor) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), Some(f), None) => (a, b, f),
        _ => return Err(bad()),
    };
    let factor: u64 = factor
        .strip_prefix('x')
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    let parse_int = |t: &str| -> Result<u64, CmdError> {
        match t.split_once(['e', 'E']) {
            Some((m, n)) => {
                let mantissa: u64 = m.parse().map_err(|_| bad())?;
                let exponent: u32 = n.parse().map_err(|_| bad())?;
                10u64
                    .checked_pow(exponent)
                    .and_then(|p| mantissa.checked_mul(p))
                    .ok_or_else(bad)
            }
            None => t.parse().map_err(|_| bad()),
        }
    };
    let (start, end) = (parse_int(start)?, parse_int(end)?);
    if start < 1 || end < start || factor < 2 {
        return Err(bad());
    }
    Ok(curves::geometric_ladder(start, end, factor))
}

fn cmd_heights(args: HeightsArgs) -> Result<(), CmdError> {
    let case = parse_case(&args.case)?;
    let spec = HeightSpec::new(case);
    let ladder = parse_ladder(&args.ladder)?;
    if ladder.len() < 2 {
        return Err(CmdError::usage(
            "ladder must contain at least two rungs to fit a slope",
        ));
    }
    let counts: Vec<String> = ladder
        .iter()
        .map(|&a| count_bounded_height(&spec, a).to_string())
        .collect();
    let slope = fit_exponent(&spec, &ladder);
    let expected = 0.5 + spec.degrees().len() as f64 / spec.deg_delta() as f64;
    if let Some(path) = &args.csv {
        let mut csv = String::from("a,count\n");
        for (a, n) in ladder.iter().zip(&counts) {
            csv.push_str(&format!("{a},{n}\n"));
        }
        std::fs::write(path, csv)
            .map_err(|e| CmdError::failure(format!("cannot write {}: {e}", path.display())))?;
    }
    emit(
        &serde_json::json!({
            "case": case.to_string(),
            "deg_delta": spec.deg_delta(),
            "ladder": ladder,
            "counts": counts,
            "fitted_exponent": slope,
            "expected_exponent": expected,
        }),
        &None,
    )
}
