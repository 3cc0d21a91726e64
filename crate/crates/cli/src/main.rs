//! `kapranov`: equations, embedding, membership, reconstruction and tangent
//! analysis for stable rational curves with marked points `a, b, c, 1, …, n`.
//!
//! Exit codes: 0 success, 2 not in the image or failed checks, 1 usage or
//! I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use kapranov::curves::{omega, random_curve, CurveFile, MarkedCurve, MultiPointFile};
use kapranov::mr_ideal::{expanded, generators, is_member, MinorIndex, MinorRecord};
use kapranov::reconstruct::reconstruct;
use kapranov::tangent::{compare_with_jacobian, constructive_system, jacobian_nullity, variables};
use kapranov::verify::{run_trial, Check, VerifyReport};
use kapranov::Error;

#[derive(Parser)]
#[command(name = "kapranov", version, about = "Equations of the Kapranov-type embedding of moduli of marked rational curves")]
struct Cli {
    /// Report errors and violations as JSON on stderr.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Jacobian,
    Constructive,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generators for `n`.
    Equations {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Map a curve file to its point.
    Embed {
        #[arg(long)]
        curve: String,
    },
    /// Test a point file against every generator.
    Check {
        #[arg(long)]
        point: String,
    },
    /// Rebuild the curve of a point file.
    Reconstruct {
        #[arg(long)]
        point: String,
    },
    /// Tangent equations at the point of a curve file.
    Tangent {
        #[arg(long)]
        curve: String,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// A seeded random curve.
    RandomCurve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        nodes: u32,
    },
    /// Randomized checks over seeded random curves.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated subset of membership, round-trip, nullity,
        /// constructive, separation.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<Check>>,
    },
}

/// What went wrong, mapped to an exit code.
enum Failure {
    Usage(String),
    Violations { message: String, violated: Vec<MinorIndex> },
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInImage { violated } => Failure::Violations { message: "point is not in the image".into(), violated },
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn read_curve(path: &str) -> Result<MarkedCurve, Failure> {
    let file: CurveFile = serde_json::from_str(&read_input(path)?).map_err(Error::from)?;
    Ok(file.to_curve()?)
}

fn read_point(path: &str) -> Result<kapranov::curves::MultiPoint, Failure> {
    let file: MultiPointFile = serde_json::from_str(&read_input(path)?).map_err(Error::from)?;
    Ok(file.to_point()?)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &impl serde::Serialize) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn records(v: &[MinorIndex]) -> Vec<MinorRecord> {
    v.iter().map(MinorRecord::from).collect()
}

fn equations(n: u32, format: Format) {
    let gens = generators(n);
    match format {
        Format::Text => {
            for g in &gens {
                emit(&format!("{g}: {} = 0\n", expanded(g)));
            }
        }
        Format::Json => {
            let list: Vec<Value> = gens
                .iter()
                .map(|g| json!({ "index": MinorRecord::from(g), "polynomial": expanded(g) }))
                .collect();
            print_json(&json!({ "n": n, "count": gens.len(), "generators": list }));
        }
    }
}

fn tangent(curve: &MarkedCurve, method: Method) -> Result<Value, Failure> {
    let point = omega(curve)?;
    let n = curve.top();
    let mut out = json!({ "n": n, "variables": variables(&point).len() });
    if method != Method::Constructive {
        out["jacobian"] = json!({ "nullity": jacobian_nullity(&point)? });
    }
    if method != Method::Jacobian {
        let mut levels = Vec::new();
        for level in 2..=n {
            let s = constructive_system(curve, level)?;
            let eqs: Vec<Value> = s
                .equations
                .iter()
                .map(|e| {
                    json!({
                        "minor": MinorRecord::from(&e.minor),
                        "rule": e.rule.to_string(),
                        "coefficients": e.form.to_json_map(),
                    })
                })
                .collect();
            levels.push(json!({ "level": level, "exceptional": s.profile.exceptional, "equations": eqs }));
        }
        out["constructive"] = json!({ "levels": levels });
    }
    if method == Method::Both {
        let c = compare_with_jacobian(curve)?;
        out["comparison"] = json!({
            "equations": c.equations,
            "expected": c.expected,
            "rank": c.rank,
            "same_kernel": c.same_kernel,
            "holds": c.holds(),
        });
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Equations { n, format } => {
            if n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            equations(n, format);
        }
        Command::Embed { curve } => print_json(&MultiPointFile::from_point(&omega(&read_curve(&curve)?)?)),
        Command::Check { point } => {
            let p = read_point(&point)?;
            let violated = is_member(&p);
            print_json(&json!({ "member": violated.is_empty(), "violated": records(&violated) }));
            if !violated.is_empty() {
                return Err(Failure::Violations { message: "point violates generators".into(), violated });
            }
        }
        Command::Reconstruct { point } => print_json(&CurveFile::from_curve(&reconstruct(&read_point(&point)?)?)),
        Command::Tangent { curve, method } => {
            let out = tangent(&read_curve(&curve)?, method)?;
            print_json(&out);
            if out["comparison"]["holds"] == json!(false) {
                return Err(Failure::Checks("constructive system differs from the Jacobian".into()));
            }
        }
        Command::RandomCurve { n, seed, nodes } => {
            if n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            print_json(&CurveFile::from_curve(&random_curve(n, seed, nodes)?));
        }
        Command::Verify { n, trials, seed, checks } => {
            if n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            let checks = checks.unwrap_or_else(|| Check::ALL.to_vec());
            let outcomes: Vec<_> = (0..trials).into_par_iter().map(|t| run_trial(n, seed, t, &checks)).collect();
            let report = VerifyReport::aggregate(n, seed, &outcomes);
            if cli.json {
                print_json(&report);
            } else {
                emit(&report.to_string());
            }
            if !report.passed() {
                return Err(Failure::Checks(format!("{} check failures", report.failures.len())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            if json {
                eprintln!("{}", json!({ "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Violations { message, violated }) => {
            if json {
                eprintln!("{}", json!({ "error": message, "violated": records(&violated) }));
            } else {
                eprintln!("{message}; violated:");
                for v in &violated {
                    eprintln!("  {v}");
                }
            }
            ExitCode::from(2)
        }
        Err(Failure::Checks(msg)) => {
            if json {
                eprintln!("{}", json!({ "error": msg }));
            } else {
                eprintln!("{msg}");
            }
            ExitCode::from(2)
        }
    }
}
