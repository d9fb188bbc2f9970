//! Command-line front end: field construction, sum value distributions,
//! complete weight enumerators and closed-form/oracle cross-validation,
//! with deterministic text or JSON output.
//!
//! Exit codes: 0 success or full match, 1 verified mismatch, 2 usage or
//! parameter error, 3 evaluation budget exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cwenum::cwe::{
    case_label, verify_with, CodeId, VerificationReport, VerifyOptions, DEFAULT_ORACLE_BUDGET,
};
use cwenum::report::{cwe_report, field_info_report, sum_dist_report, SumFamily};
use cwenum::{Error, FieldContext};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cwenum",
    version,
    about = "Complete weight enumerators of p-ary cyclic codes, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print field structure, check-polynomial degrees and code dimensions.
    FieldInfo(FieldInfoArgs),
    /// Exponential sum value distribution, exhaustive and/or closed form.
    SumDist(SumDistArgs),
    /// Complete weight enumerator of one code.
    Cwe(CweArgs),
    /// Cross-validate the closed form against the enumeration oracle.
    Verify(VerifyArgs),
    /// Run verify over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Odd prime field characteristic.
    #[arg(long)]
    p: u32,
    /// Extension degree m.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
    /// Power-map exponent parameter, 0 < l < m.
    #[arg(long)]
    l: u32,
    /// Primitive polynomial override, constant term first, e.g. 2,1,1.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u32>>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FieldInfoArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SumDistArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which sum family: the one-coefficient sum s or two-coefficient t.
    #[arg(long, value_enum, default_value_t = SumKind::S)]
    sum: SumKind,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    /// Cap on exhaustive sweep evaluations.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u128,
    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct CweArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which code family.
    #[arg(long, value_parser = parse_code)]
    code: CodeId,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_parser = parse_code)]
    code: CodeId,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Primes to cover, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3,5")]
    p: Vec<u32>,
    /// Degrees to cover: a comma list or an inclusive range like 2-6.
    #[arg(long, default_value = "2-6")]
    m: String,
    /// Exponents: "all" for every 0 < l < m, or a comma list.
    #[arg(long, default_value = "all")]
    l: String,
    /// Code family: c1, c2 or both.
    #[arg(long, default_value = "both")]
    code: String,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SumKind {
    S,
    T,
}

fn parse_code(s: &str) -> Result<CodeId, String> {
    CodeId::parse(s).ok_or_else(|| format!("unknown code {s:?}; expected c1 or c2"))
}

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::FieldInfo(args) => cmd_field_info(args),
        Command::SumDist(args) => cmd_sum_dist(args),
        Command::Cwe(args) => cmd_cwe(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_)
        | Error::NotPrimitive(..)
        | Error::CapExceeded { .. }
        | Error::BadExponent { .. }
        | Error::DegenerateQuadratic
        | Error::MixedPrimes(..) => EXIT_USAGE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::UnclassifiedSumValue(_)
        | Error::NonIntegralComposition { .. }
        | Error::DegeneracyMismatch { .. }
        | Error::NotBilinear(_) => EXIT_MISMATCH,
    }
}

fn emit(out: &Option<PathBuf>, payload: &str) {
    let result = match out {
        Some(path) => std::fs::write(path, payload),
        None => std::io::stdout().write_all(payload.as_bytes()),
    };
    if let Err(e) = result {
        eprintln!("error: cannot write output: {e}");
        std::process::exit(EXIT_USAGE);
    }
}

fn render<T: Serialize>(value: &T, format: Format, text: String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report serialization");
            s.push('\n');
            s
        }
        Format::Text => text,
    }
}

fn cmd_field_info(args: FieldInfoArgs) -> Result<i32, Error> {
    let c = &args.common;
    let ctx = FieldContext::build(c.p, c.m, c.poly.as_deref())?;
    let report = field_info_report(&ctx, c.l)?;
    let text = format!(
        "field F_{}^{} (order {}), primitive polynomial {:?}\n\
         h1 = min poly of alpha^-(p^l+1) : {:?}, degree {}\n\
         h2 = min poly of alpha^-2       : {:?}, degree {}\n\
         dim C1 = {}, dim C2 = {} (length {})\n",
        c.p,
        c.m,
        ctx.q(),
        ctx.prim_poly(),
        report.h1,
        report.h1_degree,
        report.h2,
        report.h2_degree,
        report.dim_c1,
        report.dim_c2,
        ctx.group_order()
    );
    emit(&c.out, &render(&report, c.format, text));
    Ok(EXIT_OK)
}

fn cmd_sum_dist(args: SumDistArgs) -> Result<i32, Error> {
    let c = &args.common;
    let ctx = FieldContext::build(c.p, c.m, c.poly.as_deref())?;
    let family = match args.sum {
        SumKind::S => SumFamily::S,
        SumKind::T => SumFamily::T,
    };
    let report = sum_dist_report(
        &ctx,
        c.l,
        family,
        args.method != Method::Closed,
        args.method != Method::Brute,
        args.budget,
        args.workers,
    )?;
    let mut text = String::new();
    let shown = report.closed.as_ref().or(report.direct.as_ref()).unwrap();
    text.push_str(&format!(
        "{}-sum distribution p={} m={} l={} (d={}, s={}), total {}\n",
        report.sum, c.p, c.m, c.l, shown.d, shown.s, shown.total
    ));
    for (label, dist) in [("direct", &report.direct), ("closed", &report.closed)] {
        if let Some(dist) = dist {
            text.push_str(&format!("  {label}: {}\n", dist.describe_entries()));
        }
    }
    if let Some(matched) = report.matched {
        text.push_str(&format!(
            "  direct == closed: {}\n",
            if matched { "yes" } else { "NO" }
        ));
    }
    emit(&c.out, &render(&report, c.format, text));
    Ok(match report.matched {
        Some(false) => EXIT_MISMATCH,
        _ => EXIT_OK,
    })
}

fn cmd_cwe(args: CweArgs) -> Result<i32, Error> {
    let c = &args.common;
    let ctx = FieldContext::build(c.p, c.m, c.poly.as_deref())?;
    let report = cwe_report(
        &ctx,
        c.l,
        args.code,
        args.method != Method::Brute,
        args.method != Method::Closed,
        args.budget,
        args.workers,
    )?;

    let mut text = format!(
        "{} [{}, {}, {}] over F_{}, l={}  ({})\n",
        report.code,
        ctx.group_order(),
        report.dim,
        report
            .min_distance
            .map_or("-".to_string(), |d| d.to_string()),
        c.p,
        c.l,
        report.case
    );
    for (label, table) in [("closed", &report.closed), ("brute", &report.brute)] {
        if let Some(table) = table {
            text.push_str(&format!("  {label}: {}\n", table.monomial_text()));
        }
    }
    let weight_terms: Vec<String> = report
        .weights
        .counts
        .iter()
        .enumerate()
        .filter(|&(_, &count)| count > 0)
        .map(|(w, &count)| format!("A_{w}={count}"))
        .collect();
    text.push_str(&format!("  weights: {}\n", weight_terms.join(" ")));
    if let Some(matched) = report.matched {
        text.push_str(&format!(
            "  closed == brute: {}\n",
            if matched { "yes" } else { "NO" }
        ));
    }
    emit(&c.out, &render(&report, c.format, text));
    Ok(match report.matched {
        Some(false) => EXIT_MISMATCH,
        _ => EXIT_OK,
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, Error> {
    let c = &args.common;
    let opts = VerifyOptions {
        budget: args.budget,
        workers: args.workers,
        poly_override: c.poly.clone(),
        ..VerifyOptions::default()
    };
    let report = verify_with(c.p, c.m, c.l, args.code, &opts)?;
    eprintln!(
        "timings: closed {}ms, oracle {}ms, distribution {}ms, ranks {}ms",
        report.timings.closed_ms,
        report.timings.brute_ms,
        report.timings.dist_ms,
        report.timings.rank_ms
    );
    emit(&c.out, &render(&report, c.format, verify_text(&report)));
    Ok(verify_exit(&report))
}

fn verify_exit(report: &VerificationReport) -> i32 {
    if report.budget_exceeded {
        EXIT_BUDGET
    } else if report.matched {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn verify_text(report: &VerificationReport) -> String {
    let mut text = String::new();
    let ok = |b: bool| if b { "ok" } else { "FAIL" };
    text.push_str(&format!(
        "verify {} p={} m={} l={}: {}\n",
        report.code,
        report.field.p,
        report.field.m,
        report.l,
        if report.matched { "match" } else { "MISMATCH" }
    ));
    text.push_str(&format!(
        "  case: {}\n  dim {} | min distance {}\n",
        report.case,
        report.dim,
        report
            .min_distance
            .map_or("-".to_string(), |d| d.to_string())
    ));
    text.push_str(&format!(
        "  table closed==brute: {}\n  distribution direct==closed: {}\n  weight census: {}\n",
        ok(report.table_match),
        ok(report.dist_match),
        ok(report.weight_census_match)
    ));
    if let Some(census) = &report.rank_census {
        let counts: Vec<String> = census
            .counts
            .iter()
            .map(|c| format!("rank {} x{}", c.rank, c.count))
            .collect();
        text.push_str(&format!(
            "  rank census ({}): {} within {:?}: {}\n",
            census.method,
            counts.join(", "),
            census.allowed,
            ok(census.within_allowed && census.radical_sizes_ok)
        ));
    }
    for diff in &report.table_diffs {
        text.push_str(&format!(
            "  table diff at {:?}: closed {} vs brute {}\n",
            diff.composition.0, diff.closed_freq, diff.brute_freq
        ));
    }
    for diff in &report.dist_diffs {
        text.push_str(&format!(
            "  distribution diff at {}: direct {} vs closed {}\n",
            diff.value, diff.direct_freq, diff.closed_freq
        ));
    }
    if let Some(repair) = &report.sign_repair {
        text.push_str(&format!(
            "  sign repair: emitted {:?} (row sum {}), rejected {:?} (row sum {}), freq {}\n",
            repair.emitted.0,
            repair.emitted_row_sum,
            repair.rejected.0,
            repair.rejected_row_sum,
            repair.freq
        ));
    }
    for e in &report.errors {
        text.push_str(&format!("  error: {e}\n"));
    }
    text
}

#[derive(Serialize)]
struct SweepLine {
    p: u32,
    m: u32,
    l: u32,
    prim_poly: Vec<u32>,
    code: CodeId,
    case: String,
    status: String,
}

fn cmd_sweep(args: SweepArgs) -> Result<i32, Error> {
    let ms = match parse_degree_list(&args.m) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return Ok(EXIT_USAGE);
        }
    };
    let codes: Vec<CodeId> = match args.code.to_ascii_lowercase().as_str() {
        "both" => vec![CodeId::C1, CodeId::C2],
        other => match CodeId::parse(other) {
            Some(code) => vec![code],
            None => {
                eprintln!("error: unknown code {other:?}; expected c1, c2 or both");
                return Ok(EXIT_USAGE);
            }
        },
    };
    let explicit_ls = if args.l == "all" {
        None
    } else {
        match parse_u32_list(&args.l) {
            Ok(v) => Some(v),
            Err(msg) => {
                eprintln!("error: {msg}");
                return Ok(EXIT_USAGE);
            }
        }
    };

    let mut lines = Vec::new();
    let mut text = String::new();
    let mut any_mismatch = false;
    for &p in &args.p {
        for &m in &ms {
            // Also records the provenance polynomial for the combos below.
            let prim_poly = FieldContext::build(p, m, None)?.prim_poly().to_vec();
            let ls: Vec<u32> = match &explicit_ls {
                None => (1..m).collect(),
                Some(v) => v.iter().copied().filter(|&l| l > 0 && l < m).collect(),
            };
            for l in ls {
                for &code in &codes {
                    let q = u128::from(p).pow(m);
                    let tuples = match code {
                        CodeId::C1 => q,
                        CodeId::C2 => q * q,
                    };
                    let evals = tuples * (q - 1);
                    let case = case_label(code, m, l);
                    let status = if evals > args.budget {
                        "skipped (budget)".to_string()
                    } else {
                        let opts = VerifyOptions {
                            budget: args.budget,
                            workers: args.workers,
                            ..VerifyOptions::default()
                        };
                        let report = verify_with(p, m, l, code, &opts)?;
                        if report.matched {
                            "match".to_string()
                        } else {
                            any_mismatch = true;
                            format!(
                                "MISMATCH ({} table diffs, {} dist diffs)",
                                report.table_diffs.len(),
                                report.dist_diffs.len()
                            )
                        }
                    };
                    text.push_str(&format!("{code} p={p} m={m} l={l} [{case}] {status}\n"));
                    lines.push(SweepLine {
                        p,
                        m,
                        l,
                        prim_poly: prim_poly.clone(),
                        code,
                        case,
                        status,
                    });
                }
            }
        }
    }
    let matched = lines.iter().filter(|s| s.status == "match").count();
    let skipped = lines
        .iter()
        .filter(|s| s.status.starts_with("skipped"))
        .count();
    text.push_str(&format!(
        "sweep: {} combos, {matched} matched, {skipped} skipped, {} mismatched\n",
        lines.len(),
        lines.len() - matched - skipped
    ));
    emit(&args.out, &render(&lines, args.format, text));
    Ok(if any_mismatch { EXIT_MISMATCH } else { EXIT_OK })
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("cannot parse {part:?} as an integer"))
        })
        .collect()
}

fn parse_degree_list(s: &str) -> Result<Vec<u32>, String> {
    if let Some((lo, hi)) = s.split_once('-') {
        let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
        let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
        if lo == 0 || hi < lo {
            return Err(format!("bad range {s:?}"));
        }
        Ok((lo..=hi).collect())
    } else {
        parse_u32_list(s)
    }
}
