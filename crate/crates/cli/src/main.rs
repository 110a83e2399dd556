//! Command-line front end: every subcommand prints one JSON CommandResult on stdout.

mod commands;
mod io;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "aprog", version, about = "Rational points in arithmetic progression on y^2 = x^n + k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every symbolic identity suite.
    VerifyIdentities,
    /// Printed-versus-derived comparison report.
    Errata,
    /// Four-term progressions on y^2 = x^3 + k from the quartic fibration.
    FamilyCubic(CubicArgs),
    /// Four-term progressions on y^2 = x^(2n+1) + k.
    FamilyOdd(PowerArgs),
    /// Six-term progressions on y^2 = x^(2n) + k.
    FamilyEven(PowerArgs),
    /// Canonical heights and the pairing determinant of a point set.
    Heights(HeightArgs),
    /// Check the published generator tables.
    TableVerify,
    /// Bounded integer search on the sextic threefold.
    SexticSearch(SexticSearchArgs),
    /// Membership, classification and the progression curve of one point.
    SexticCheck(SexticCheckArgs),
    /// Square values of the two genus-3 octics.
    SquaresSearch(SquaresArgs),
    /// Whether two k give isomorphic curves.
    TwistCheck(TwistArgs),
}

#[derive(Args, Debug)]
struct CubicArgs {
    /// Rational parameter; symbolic in t when absent.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, default_value = "-(P+T1)", allow_hyphen_values = true)]
    recipe: String,
    /// Write the witness here.
    #[arg(long)]
    out: Option<String>,
    /// Re-verify a witness file without running the pipeline.
    #[arg(long)]
    verify_only: Option<String>,
}

#[derive(Args, Debug)]
struct PowerArgs {
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Group word in P, T1, T2, T3; the first nondegenerate one when absent.
    #[arg(long, allow_hyphen_values = true)]
    recipe: Option<String>,
    /// Pairwise non-isomorphic batch of this size.
    #[arg(long)]
    count: Option<usize>,
    /// Recipe search for the exponent-5 bound (odd family, n = 2).
    #[arg(long)]
    m5_search: bool,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    verify_only: Option<String>,
}

#[derive(Args, Debug)]
struct HeightArgs {
    /// `k` for y^2 = x^3 + k, or `A,B` for y^2 = x^3 + Ax + B.
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
    /// JSON array of [x, y] pairs, or one `x y` pair per line.
    #[arg(long)]
    points: String,
    #[arg(long, default_value_t = 128)]
    precision: usize,
}

#[derive(Args, Debug)]
struct SexticSearchArgs {
    #[arg(long, default_value_t = 10)]
    bound: i64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    resume: Option<String>,
    #[arg(long)]
    emit_trivial: bool,
}

#[derive(Args, Debug)]
struct SexticCheckArgs {
    /// p,q,r,s,t
    #[arg(long, allow_hyphen_values = true)]
    point: String,
}

#[derive(Args, Debug)]
struct SquaresArgs {
    #[arg(long, default_value_t = 200)]
    bound: i64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct TwistArgs {
    #[arg(long, allow_hyphen_values = true)]
    k1: String,
    #[arg(long, allow_hyphen_values = true)]
    k2: String,
    /// Test k1/k2 for a (2m)-th power.
    #[arg(long)]
    m: u32,
}

/// Outcome of a subcommand before it is wrapped.
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub errata: Vec<aprog::errata::ErrataRecord>,
    pub exit_code: u8,
    /// Extra timing entries, such as the search wall time.
    pub timings: serde_json::Map<String, Value>,
}

impl Outcome {
    pub fn new(inputs: Value, results: Value) -> Self {
        Outcome { inputs, results, errata: vec![], exit_code: 0, timings: Default::default() }
    }
}

/// Failure that still produces a CommandResult.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(m: impl Into<String>) -> Self {
        Failure { code: 2, message: m.into() }
    }
    pub fn verify(m: impl Into<String>) -> Self {
        Failure { code: 1, message: m.into() }
    }
    pub fn resource(m: impl Into<String>) -> Self {
        Failure { code: 3, message: m.into() }
    }
}

fn emit(command: &str, inputs: Value, results: Value, errata: Value, timings: serde_json::Map<String, Value>, code: u8) -> ExitCode {
    let out = json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "errata": errata,
        "timings": timings,
        "exit_code": code,
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("result serializes"));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let diag = json!({"error": "usage", "kind": format!("{:?}", e.kind()), "message": e.to_string()});
            return emit("", Value::Null, diag, json!([]), Default::default(), 2);
        }
    };
    let name = match &cli.command {
        Command::VerifyIdentities => "verify-identities",
        Command::Errata => "errata",
        Command::FamilyCubic(_) => "family-cubic",
        Command::FamilyOdd(_) => "family-odd",
        Command::FamilyEven(_) => "family-even",
        Command::Heights(_) => "heights",
        Command::TableVerify => "table-verify",
        Command::SexticSearch(_) => "sextic-search",
        Command::SexticCheck(_) => "sextic-check",
        Command::SquaresSearch(_) => "squares-search",
        Command::TwistCheck(_) => "twist-check",
    };
    let start = Instant::now();
    let res = match cli.command {
        Command::VerifyIdentities => commands::verify_identities(),
        Command::Errata => commands::errata(),
        Command::FamilyCubic(a) => commands::family_cubic(a.t.as_deref(), &a.recipe, a.out.as_deref(), a.verify_only.as_deref()),
        Command::FamilyOdd(a) => commands::family_power(commands::Family::Odd, &a.into()),
        Command::FamilyEven(a) => commands::family_power(commands::Family::Even, &a.into()),
        Command::Heights(a) => commands::heights(&a.curve, &a.points, a.precision),
        Command::TableVerify => commands::table_verify(),
        Command::SexticSearch(a) => commands::sextic_search(a.bound, a.threads, a.resume.as_deref(), a.emit_trivial),
        Command::SexticCheck(a) => commands::sextic_check(&a.point),
        Command::SquaresSearch(a) => commands::squares_search(a.bound, a.threads),
        Command::TwistCheck(a) => commands::twist_check(&a.k1, &a.k2, a.m),
    };
    let mut timings = serde_json::Map::new();
    match res {
        Ok(o) => {
            timings.extend(o.timings);
            timings.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
            let errata = serde_json::to_value(&o.errata).expect("errata serialize");
            emit(name, o.inputs, o.results, errata, timings, o.exit_code)
        }
        Err(f) => {
            timings.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
            let diag = json!({"error": match f.code { 1 => "verification", 2 => "usage", _ => "resource" }, "message": f.message});
            emit(name, Value::Null, diag, json!([]), timings, f.code)
        }
    }
}

impl From<PowerArgs> for commands::PowerOpts {
    fn from(a: PowerArgs) -> Self {
        commands::PowerOpts { n: a.n, recipe: a.recipe, count: a.count, m5_search: a.m5_search, out: a.out, verify_only: a.verify_only }
    }
}
