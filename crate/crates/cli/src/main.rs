//! Command-line front end: run the identity suite, compute a single
//! spectrum, or run a theorem verification. Exit status 0 means every
//! computed result matched every encoded prediction; 1 means some identity
//! or table check failed; 2 means the invocation itself was invalid.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use eigenone::canonical_json;
use eigenone::classify::{verify, Bounds, TheoremId};
use eigenone::elements::{Family, SemisimpleElement};
use eigenone::identities::run_suite;
use eigenone::spectra::{criterion_report, spectrum_report, Weight};

#[derive(Parser)]
#[command(name = "eigenone", version, about = "Exact eigenvalue-one verification for rational elements of classical groups", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the root-of-unity identity suite for all odd moduli up to a bound.
    Lemmas {
        /// Largest modulus to check; must be odd.
        #[arg(long, default_value_t = 45)]
        max_m: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the eigenvalue set of one element in one representation.
    Spectrum {
        /// Element syntax, e.g. `b:11:phi(5)+phi(9)+1` (see docs/grammar.md).
        #[arg(short, long)]
        element: String,
        /// Weight syntax, e.g. `fund:3`, `spin`, `fund:1+spin`.
        #[arg(short, long)]
        weight: String,
        /// Field characteristic (0 for characteristic zero).
        #[arg(short = 'p', long = "p", default_value_t = 0)]
        characteristic: u32,
        /// `si-delta`: evaluate the characteristic-2 symplectic
        /// eigenvalue-1 criterion instead of a spectrum.
        #[arg(long)]
        criterion: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate rational elements and verify a classification table.
    Classify {
        /// One of: th1, tt9, ts1, om12, th2-odd, th2-char2-spin,
        /// th2-char2-mixed, th3-spin, th3-mixed.
        #[arg(long)]
        theorem: String,
        /// Rank window `lo..hi` (inclusive); defaults to the theorem's
        /// full table window.
        #[arg(long)]
        ranks: Option<String>,
        /// Largest orbit order to enumerate; must be odd.
        #[arg(long, default_value_t = 45)]
        max_order: u64,
        /// Field characteristic; defaults to the theorem's regime.
        #[arg(short = 'p', long = "p")]
        characteristic: Option<u32>,
        /// Worker threads; defaults to $EIGENONE_JOBS or 1.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_lemmas(max_m: u64, format: Format) -> ExitCode {
    let report = match run_suite(max_m) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    match format {
        Format::Json => println!("{}", canonical_json(&report)),
        Format::Text => {
            println!("identity suite: odd m <= {max_m}");
            let mut rules: Vec<&str> = Vec::new();
            for c in &report.checks {
                if !rules.contains(&c.rule.as_str()) {
                    rules.push(&c.rule);
                }
            }
            for rule in rules {
                let total = report.checks.iter().filter(|c| c.rule == rule).count();
                let good = report.checks.iter().filter(|c| c.rule == rule && c.ok).count();
                println!("  {rule}: {good}/{total} ok");
            }
            for c in report.checks.iter().filter(|c| !c.ok) {
                println!("  FAILED {} {}", c.rule, c.subject);
            }
            println!("{}", if report.ok { "all identities hold" } else { "identity failures found" });
        }
    }
    if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn run_spectrum(
    element: &str,
    weight: &str,
    p: u32,
    criterion: Option<&str>,
    format: Format,
) -> ExitCode {
    let g: SemisimpleElement = match element.parse() {
        Ok(g) => g,
        Err(e) => return usage_error(e),
    };
    let w = match Weight::parse(weight, g.group()) {
        Ok(w) => w,
        Err(e) => return usage_error(e),
    };
    match criterion {
        Some("si-delta") => {
            let report = match criterion_report(&g, &w) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            match format {
                Format::Json => println!("{}", canonical_json(&report)),
                Format::Text => {
                    println!("element: {}", report.element);
                    println!("weight: {}", report.weight);
                    println!(
                        "si={} delta={} eig1_absent={}",
                        report.si, report.delta, report.eig1_absent
                    );
                }
            }
            ExitCode::SUCCESS
        }
        Some(other) => usage_error(format!("unknown criterion {other:?}; expected si-delta")),
        None => {
            let report = match spectrum_report(&g, &w, p) {
                Ok(r) => r,
                Err(e) => {
                    if g.group().family() == Family::C {
                        return usage_error(format!("{e} (hint: --criterion si-delta)"));
                    }
                    return usage_error(e);
                }
            };
            match format {
                Format::Json => println!("{}", canonical_json(&report)),
                Format::Text => {
                    println!("element: {}", report.element);
                    println!("weight: {} (characteristic {})", report.weight, report.characteristic);
                    let residues: Vec<String> =
                        report.residues.iter().map(u64::to_string).collect();
                    println!("mod {}: {{{}}}", report.modulus, residues.join(","));
                    println!("has_one={}", report.has_one);
                    println!("is_full={}", report.is_full);
                    if let Some(case) = &report.spin_case {
                        println!("spin_case={case}");
                    }
                }
            }
            ExitCode::SUCCESS
        }
    }
}

fn parse_ranks(s: &str) -> Option<(u32, u32)> {
    let (lo, hi) = s.split_once("..")?;
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

fn run_classify(
    theorem: &str,
    ranks: Option<&str>,
    max_order: u64,
    characteristic: Option<u32>,
    jobs: Option<usize>,
    format: Format,
) -> ExitCode {
    let theorem = match TheoremId::parse(theorem) {
        Ok(t) => t,
        Err(e) => return usage_error(e),
    };
    let (rank_lo, rank_hi) = match ranks {
        None => theorem.default_ranks(),
        Some(s) => match parse_ranks(s) {
            Some(r) => r,
            None => return usage_error(format!("cannot parse rank range {s:?}; expected lo..hi")),
        },
    };
    let bounds = Bounds {
        rank_lo,
        rank_hi,
        max_order,
        characteristic: characteristic.unwrap_or_else(|| theorem.default_characteristic()),
    };
    let jobs = jobs
        .or_else(|| std::env::var("EIGENONE_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1);

    let start = Instant::now();
    let report = match verify(theorem, bounds, jobs) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    eprintln!("wall_time_ms={}", start.elapsed().as_millis());

    match format {
        Format::Json => println!("{}", canonical_json(&report)),
        Format::Text => {
            println!("theorem: {}", report.theorem);
            println!(
                "bounds: ranks {}..{}, max order {}, characteristic {} (defaults: ranks {}..{}, max-order 45, p {})",
                report.bounds.rank_lo,
                report.bounds.rank_hi,
                report.bounds.max_order,
                report.bounds.characteristic,
                theorem.default_ranks().0,
                theorem.default_ranks().1,
                theorem.default_characteristic(),
            );
            println!("elements: {}  cases: {}", report.elements_checked, report.cases_checked);
            println!("exceptions: {}", report.exceptions.len());
            for (rule, count) in &report.rule_counts {
                println!("  {rule}: {count}");
            }
            for e in &report.exceptions {
                println!("  exception {} {} [{}]", e.element, e.weight, e.rule);
            }
            if !report.missing_rules.is_empty() {
                println!("missing rules: {}", report.missing_rules.join(", "));
            }
            println!("mismatches: {}", report.mismatches.len());
            for m in &report.mismatches {
                println!(
                    "  MISMATCH {} {} kind={} predicted={} computed={}",
                    m.element, m.weight, m.kind, m.predicted, m.computed
                );
            }
            println!("result: {}", if report.ok { "ok" } else { "FAILED" });
        }
    }
    if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Lemmas { max_m, format } => run_lemmas(max_m, format),
        Command::Spectrum { element, weight, characteristic, criterion, format } => {
            run_spectrum(&element, &weight, characteristic, criterion.as_deref(), format)
        }
        Command::Classify { theorem, ranks, max_order, characteristic, jobs, format } => {
            run_classify(&theorem, ranks.as_deref(), max_order, characteristic, jobs, format)
        }
    }
}
