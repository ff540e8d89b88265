//! Command-line front end: parse polynomial pairs, run the gcd-sequence
//! analysis and print human-readable or JSON reports.
//!
//! Exit codes: 0 on success, 1 on domain errors (zero resultant, violated
//! preconditions, failed verification), 2 on usage errors.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use polygcd::error::Error;
use polygcd::oracle::{search_realizing_pair, MatchMode};
use polygcd::patterns::{analyze_xpow_plus_one, build_profile, extract_pattern, gcd_value};
use polygcd::poly::pow_minus_one_gcd;
use polygcd::suite::{all_hold, verify_pair};
use polygcd::sylvester::{bezout_certificate, factorize, minimal_delta, resultant};
use polygcd::IntPoly;

#[derive(Parser)]
#[command(
    name = "polygcd",
    about = "Analyze the periodic sequence gcd(A(n), B(n)) of two integer polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: resultant, delta, patterns, period and value set
    Analyze {
        a: String,
        b: String,
        /// Emit the report as JSON (big integers as decimal strings)
        #[arg(long)]
        json: bool,
        /// How many gcd values to display, starting at n = 0
        #[arg(long, default_value_t = 30)]
        window: usize,
    },
    /// Resultant of the pair (determinant of the Sylvester matrix)
    Resultant { a: String, b: String },
    /// Integer Bézout certificate A*U + B*V = |resultant|
    Bezout { a: String, b: String },
    /// Minimal Bézout constant, by the content route and the lattice route
    Delta { a: String, b: String },
    /// Pattern of gcd(A(n), B(n)) p-parts for one prime
    Pattern {
        a: String,
        b: String,
        #[arg(long)]
        prime: u64,
    },
    /// Print gcd(A(n), B(n)) for n in an inclusive range
    Gvalues {
        a: String,
        b: String,
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
    },
    /// Run the structural property suite against the pair
    Verify {
        a: String,
        b: String,
        /// Number of random divisibility tuples to sample
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Seed for the randomized checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a monic pair realizing a pattern, within bounds
    Search {
        #[arg(long)]
        prime: u64,
        /// Target pattern as comma-separated powers of the prime, e.g. "5,1,1,1,1"
        #[arg(long)]
        pattern: String,
        /// Equivalence for the match: exact, rotation or permutation
        #[arg(long, default_value = "exact")]
        equiv: String,
        #[arg(long)]
        deg_bound: usize,
        #[arg(long)]
        coeff_bound: i64,
    },
    /// Analyze the pair x^a + 1, x^b + 1 and gcd(x^a - 1, x^b - 1)
    Exercise {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}

fn parse_pair(a: &str, b: &str) -> Result<(IntPoly, IntPoly), Error> {
    Ok((IntPoly::from_str(a)?, IntPoly::from_str(b)?))
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Analyze { a, b, json, window } => {
            let (a, b) = parse_pair(&a, &b)?;
            let profile = build_profile(&a, &b)?;
            if json {
                println!("{}", analyze_json(&profile));
            } else {
                print_analysis(&profile, window)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Resultant { a, b } => {
            let (a, b) = parse_pair(&a, &b)?;
            println!("{}", resultant(&a, &b)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bezout { a, b } => {
            let (a, b) = parse_pair(&a, &b)?;
            let cert = bezout_certificate(&a, &b)?;
            println!("value = {}", cert.value);
            println!("U = {}", cert.u);
            println!("V = {}", cert.v);
            println!("identity: ({a})*({}) + ({b})*({}) = {}", cert.u, cert.v, cert.value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Delta { a, b } => {
            let (a, b) = parse_pair(&a, &b)?;
            let delta_signed = resultant(&a, &b)?;
            let cert = minimal_delta(&a, &b)?;
            let lattice = polygcd::sylvester::delta_lattice_oracle(&a, &b)?;
            println!("resultant = {delta_signed}");
            println!("delta     = {}", cert.value);
            println!("U = {}", cert.u);
            println!("V = {}", cert.v);
            if cert.value != lattice {
                // the two routes disagree only outside the monic hypotheses
                println!("warning: lattice route gives {lattice}; minimality not certified");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pattern { a, b, prime } => {
            let (a, b) = parse_pair(&a, &b)?;
            let delta = resultant(&a, &b)?;
            let omega = factorize(&delta.magnitude().clone().into())?
                .get(&prime)
                .copied()
                .unwrap_or(0);
            if omega == 0 {
                println!("[1]_1");
                println!("({prime} does not divide the resultant {delta})");
            } else {
                let pattern = extract_pattern(&a, &b, prime, omega)?;
                println!("{pattern}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gvalues { a, b, from, to } => {
            let (a, b) = parse_pair(&a, &b)?;
            let mut line = String::new();
            for n in from..=to {
                if !line.is_empty() {
                    line.push(' ');
                }
                line.push_str(&gcd_value(&a, &b, &BigInt::from(n))?.to_string());
            }
            println!("{line}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { a, b, samples, seed } => {
            let (a, b) = parse_pair(&a, &b)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let checks = verify_pair(&a, &b, samples, &mut rng)?;
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for check in &checks {
                let status = if check.holds { "ok" } else { "FAIL" };
                if check.detail.is_empty() {
                    println!("{:width$}  {status}", check.name);
                } else {
                    println!("{:width$}  {status}  ({})", check.name, check.detail);
                }
            }
            if all_hold(&checks) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Search {
            prime,
            pattern,
            equiv,
            deg_bound,
            coeff_bound,
        } => {
            let target: Vec<BigInt> = pattern
                .split(',')
                .map(|tok| {
                    BigInt::parse_bytes(tok.trim().as_bytes(), 10).ok_or_else(|| Error::Parse {
                        position: 0,
                        message: format!("invalid pattern entry {tok:?}"),
                    })
                })
                .collect::<Result<_, _>>()?;
            let mode = MatchMode::from_str(&equiv)?;
            match search_realizing_pair(prime, &target, mode, deg_bound, coeff_bound)? {
                Some((a, b)) => {
                    println!("A = {a}");
                    println!("B = {b}");
                }
                None => println!("no pair found within bounds"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Exercise { a, b } => {
            let report = analyze_xpow_plus_one(a, b)?;
            println!("A = x^{a}+1, B = x^{b}+1");
            if report.coprime {
                println!("coprime: yes");
                let verified = report.pattern_verified.unwrap_or(false);
                println!(
                    "pattern [1,2]: {}",
                    if verified { "verified" } else { "FAILED" }
                );
                if let Some(delta) = &report.delta {
                    println!("delta = {delta} (so {delta} lies in the ideal <A, B>)");
                }
            } else {
                println!("coprime: no");
                if let Some(factor) = &report.common_factor {
                    println!("common factor: {factor}");
                }
            }
            let g = pow_minus_one_gcd(a, b);
            println!("gcd(x^{a}-1, x^{b}-1) = {g}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_analysis(profile: &polygcd::GcdProfile, window: usize) -> Result<(), Error> {
    println!("A = {}", profile.a);
    println!("B = {}", profile.b);
    println!("resultant     = {}", profile.resultant.delta_signed);
    let factorization = profile
        .resultant
        .factorization
        .iter()
        .map(|(p, k)| {
            if *k == 1 {
                p.to_string()
            } else {
                format!("{p}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ");
    println!(
        "|resultant|   = {}{}",
        profile.resultant.delta_abs,
        if factorization.is_empty() {
            String::new()
        } else {
            format!(" = {factorization}")
        }
    );
    println!("delta         = {}", profile.delta.value);
    if profile.patterns.is_empty() {
        println!("patterns      : none (every gcd value is 1)");
    } else {
        println!("patterns:");
        for (p, pattern) in &profile.patterns {
            println!("  p = {p:<3} {pattern}");
        }
    }
    println!("global period = {}", profile.global_period);
    let values = profile
        .value_set
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    println!("value set     = {{{values}}}");
    if window > 0 {
        let mut line = String::new();
        for n in 0..window {
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&gcd_value(&profile.a, &profile.b, &BigInt::from(n))?.to_string());
        }
        println!("G(0..{})      = {line}", window - 1);
    }
    println!("checks:");
    for check in &profile.checks {
        println!(
            "  {:34} {}",
            check.name,
            if check.holds { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}

/// JSON report with all big integers as decimal strings. Array orders are
/// deterministic: primes ascending, set values ascending.
fn analyze_json(profile: &polygcd::GcdProfile) -> String {
    let factorization: Vec<_> = profile
        .resultant
        .factorization
        .iter()
        .map(|(p, omega)| json!({ "p": p.to_string(), "omega": omega }))
        .collect();
    let patterns: Vec<_> = profile
        .patterns
        .values()
        .map(|pattern| {
            json!({
                "p": pattern.p().to_string(),
                "length": pattern.len().to_string(),
                "values": pattern.values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let checks: Vec<_> = profile
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "holds": c.holds }))
        .collect();
    let report = json!({
        "A": profile.a.to_string(),
        "B": profile.b.to_string(),
        "resultant": profile.resultant.delta_signed.to_string(),
        "delta": profile.delta.value.to_string(),
        "factorization": factorization,
        "patterns": patterns,
        "global_period": profile.global_period.to_string(),
        "value_set": profile.value_set.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "checks": checks,
    });
    report.to_string()
}
