//! Command-line front end: polynomial display, theta enumeration,
//! diagram construction, census runs, and oracle verification.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 generator search
//! exhausted, 4 verification failure.  All output is deterministic.

#![allow(clippy::manual_div_ceil)]

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use januarial::construct::solve_generators;
use januarial::diagram::{build_diagram, GenusBreakdown};
use januarial::error::Error;
use januarial::export::{census_rows, export_dot, export_json, CensusRow, CSV_HEADER};
use januarial::field::PrimeModulus;
use januarial::gk::{
    display_signed_poly, expected_count, find_roots, gk_coefficients, januarial_thetas,
};
use januarial::numtheory::odd_primes_in;
use januarial::oracle::{brute_force_thetas, count_classes_of_order, cyclic_orbit_check};
use januarial::pgl2::find_order_trace;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

/// Largest k with exactly representable coefficients; above this the
/// binomials can exceed i128 (they are bounded by the Fibonacci numbers).
const MAX_EXACT_K: u64 = 183;

#[derive(Parser)]
#[command(
    name = "januarial",
    version,
    about = "Coset diagrams of triangle-group actions on projective lines",
    disable_help_subcommand = true
)]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print g_k; with --p, also its reduction and roots mod p.
    Poly {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// List the surviving theta values for a prime, with the expected count.
    Thetas {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TextJson::Text)]
        format: TextJson,
    },
    /// Construct one diagram D(theta, p, l) and report or export it.
    Build {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        theta: u64,
        #[arg(long, value_enum, default_value_t = BuildFormat::Text)]
        format: BuildFormat,
    },
    /// Census of every januarial for one prime and one l.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u64,
        #[arg(long, value_enum, default_value_t = TextCsv::Text)]
        format: TextCsv,
    },
    /// Census across all primes in [pmin, pmax] for one l.
    Sweep {
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        l: u64,
        #[arg(long, value_enum, default_value_t = TextCsv::Csv)]
        format: TextCsv,
    },
    /// Cross-check the analytic route against exhaustive enumeration.
    Verify {
        #[arg(long)]
        p: u64,
        /// Order of y for the pair scan; defaults to the smallest valid l.
        #[arg(long)]
        l: Option<u64>,
        /// Override the q <= 64 enumeration budget.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TextJson {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextCsv {
    Text,
    Csv,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchExhausted { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = cli.output.clone();
    match run(cli.command) {
        Ok(text) => {
            if let Some(path) = output {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Poly { k, p } => cmd_poly(k, p),
        Command::Thetas { p, format } => cmd_thetas(p, format),
        Command::Build {
            p,
            l,
            theta,
            format,
        } => cmd_build(p, l, theta, format),
        Command::Enumerate { p, l, format } => cmd_enumerate(p, l, format),
        Command::Sweep {
            pmin,
            pmax,
            l,
            format,
        } => cmd_sweep(pmin, pmax, l, format),
        Command::Verify { p, l, force } => cmd_verify(p, l, force),
    }
}

fn parse_modulus(p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

fn cmd_poly(k: u64, p: Option<u64>) -> Result<String, Failure> {
    if k > MAX_EXACT_K {
        return Err(Failure::domain(format!(
            "k = {k} exceeds the exact-coefficient limit {MAX_EXACT_K}"
        )));
    }
    let poly = gk_coefficients(k);
    let mut out = String::new();
    writeln!(out, "{}", poly.display()).unwrap();
    if let Some(pv) = p {
        let p = parse_modulus(pv)?;
        let reduced: Vec<i128> = poly.reduced_mod(p).iter().map(|&c| c as i128).collect();
        writeln!(out, "mod {pv}: {}", display_signed_poly(&reduced)).unwrap();
        let roots = find_roots(&poly, p);
        if roots.is_empty() {
            writeln!(out, "roots mod {pv}: none").unwrap();
        } else {
            writeln!(out, "roots mod {pv}: {}", join(roots.values())).unwrap();
        }
    }
    Ok(out)
}

fn cmd_thetas(p: u64, format: TextJson) -> Result<String, Failure> {
    let p = parse_modulus(p)?;
    let k = (p.value() + 1) / 2;
    let thetas = januarial_thetas(p)?;
    let expected = expected_count(k)?;
    let matches = thetas.len() as u64 == expected;
    let out = match format {
        TextJson::Text => format!("{} (expected {expected})\n", join(thetas.values())),
        TextJson::Json => {
            let doc = serde_json::json!({
                "p": p.value(),
                "k": k,
                "theta": thetas.values(),
                "expected": expected,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    if !matches {
        eprintln!(
            "count mismatch: found {} theta values, expected {expected}",
            thetas.len()
        );
        print!("{out}");
        return Err(Failure::verification("theta count mismatch"));
    }
    Ok(out)
}

fn cmd_build(p: u64, l: u64, theta: u64, format: BuildFormat) -> Result<String, Failure> {
    let p = parse_modulus(p)?;
    if theta >= p.value() {
        return Err(Failure::domain(format!(
            "theta must lie in [0, {}), got {theta}",
            p.value()
        )));
    }
    let pair = solve_generators(p, l, p.element(theta))?;
    let d = build_diagram(&pair);
    match format {
        BuildFormat::Dot => Ok(export_dot(&d)),
        BuildFormat::Json => Ok(export_json(&d, &pair)),
        BuildFormat::Text => {
            let q = &pair.params;
            let mut out = String::new();
            writeln!(
                out,
                "D({theta},{},{l}): k = {}",
                p.value(),
                pair.k
            )
            .unwrap();
            writeln!(out, "X = {}", matrix(q.x_shape())).unwrap();
            writeln!(out, "Y = {}", matrix(q.y_shape())).unwrap();
            writeln!(
                out,
                "delta = {}, r = {}, b = {}, i = {}, e = {}, f = {}, a = {}, c = {}",
                q.delta, q.r, q.b, q.i, q.e, q.f, q.a, q.c
            )
            .unwrap();
            writeln!(out, "x  = {}", pair.x_perm.cycle_notation()).unwrap();
            writeln!(out, "y  = {}", pair.y_perm.cycle_notation()).unwrap();
            writeln!(out, "xy = {}", pair.xy_perm.cycle_notation()).unwrap();
            writeln!(
                out,
                "eta_x = {}, eta_y = {}, eta_xy = {}",
                d.eta_x, d.eta_y, d.eta_xy
            )
            .unwrap();
            let sizes: Vec<String> = d
                .xy_orbits
                .iter()
                .map(|c| c.len().to_string())
                .collect();
            writeln!(out, "xy orbit sizes: {}", sizes.join(" ")).unwrap();
            let (v, e, f) = d.vef();
            writeln!(out, "v = {v}, e = {e}, f = {f}").unwrap();
            writeln!(
                out,
                "januarial: {}",
                if d.is_januarial() { "yes" } else { "no" }
            )
            .unwrap();
            match GenusBreakdown::for_diagram(&d) {
                Ok(g) => writeln!(out, "genus = {}", g.genus()).unwrap(),
                Err(Error::Disconnected) => {
                    writeln!(out, "connected: no ({} components)", d.components.len())
                        .unwrap();
                    let comps: Vec<String> = d
                        .component_counts()
                        .iter()
                        .map(|(v, e, f)| format!("({v}, {e}, {f})"))
                        .collect();
                    writeln!(out, "component (v, e, f): {}", comps.join(" ")).unwrap();
                    writeln!(out, "genus: undefined (disconnected)").unwrap();
                }
                Err(e) => return Err(e.into()),
            }
            Ok(out)
        }
    }
}

/// Shared census body: rows plus notes; `None` genus prints empty.
fn census_report(
    rows: &[CensusRow],
    expected_total: u64,
    format: TextCsv,
    notes: &[String],
) -> Result<String, Failure> {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for row in rows {
        writeln!(out, "{}", row.csv()).unwrap();
    }
    let total = rows.len() as u64;
    let verdict = if total == expected_total { "OK" } else { "MISMATCH" };
    let trailer = format!("total {total} expected {expected_total} {verdict}");
    match format {
        TextCsv::Text => {
            for note in notes {
                writeln!(out, "note: {note}").unwrap();
            }
            writeln!(out, "{trailer}").unwrap();
        }
        TextCsv::Csv => {
            // Keep the CSV payload machine-readable; notes and the
            // trailer go to stderr.
            for note in notes {
                eprintln!("note: {note}");
            }
            eprintln!("{trailer}");
        }
    }
    if total != expected_total {
        print!("{out}");
        return Err(Failure::verification(trailer));
    }
    Ok(out)
}

fn census_notes(rows: &[CensusRow]) -> Vec<String> {
    rows.iter()
        .filter(|r| r.genus.is_none())
        .map(|r| {
            format!(
                "p={} l={} theta={}: disconnected diagram, genus undefined",
                r.p, r.l, r.theta
            )
        })
        .collect()
}

fn cmd_enumerate(p: u64, l: u64, format: TextCsv) -> Result<String, Failure> {
    let p = parse_modulus(p)?;
    let rows = census_rows(p, l)?;
    let expected = expected_count((p.value() + 1) / 2)?;
    let notes = census_notes(&rows);
    census_report(&rows, expected, format, &notes)
}

fn cmd_sweep(pmin: u64, pmax: u64, l: u64, format: TextCsv) -> Result<String, Failure> {
    if pmin > pmax {
        return Err(Failure::domain(format!(
            "empty range: pmin = {pmin} > pmax = {pmax}"
        )));
    }
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut expected_total = 0u64;
    for pv in odd_primes_in(pmin, pmax) {
        let p = parse_modulus(pv)?;
        if find_order_trace(p, l).is_err() {
            notes.push(format!(
                "p={pv}: no determinant-one element of order {l}, skipped"
            ));
            continue;
        }
        expected_total += expected_count((pv + 1) / 2)?;
        rows.extend(census_rows(p, l)?);
    }
    notes.extend(census_notes(&rows));
    census_report(&rows, expected_total, format, &notes)
}

fn cmd_verify(p: u64, l: Option<u64>, force: bool) -> Result<String, Failure> {
    let p = parse_modulus(p)?;
    let k = (p.value() + 1) / 2;
    let l = match l {
        Some(l) => l,
        None => (3..=p.value() + 1)
            .find(|&cand| find_order_trace(p, cand).is_ok())
            .ok_or_else(|| Failure::domain("no valid order l >= 3 exists".to_string()))?,
    };

    let mut out = String::new();
    let mut all_pass = true;
    let mut check = |pass: bool, line: String, out: &mut String| {
        writeln!(out, "{} {line}", if pass { "PASS" } else { "FAIL" }).unwrap();
        all_pass &= pass;
    };

    let analytic = januarial_thetas(p)?;
    let expected = expected_count(k)?;
    check(
        analytic.len() as u64 == expected,
        format!(
            "analytic thetas: {} (count {}, expected {expected} = phi({k})/2)",
            join(analytic.values()),
            analytic.len()
        ),
        &mut out,
    );

    let brute = brute_force_thetas(p, l, force)?;
    check(
        brute.values() == analytic.values(),
        format!("brute-force thetas (l = {l}): {}", join(brute.values())),
        &mut out,
    );

    let census = count_classes_of_order(p, k, force)?;
    check(
        census.class_count as u64 == expected
            && census.class_invariants == analytic.values(),
        format!(
            "class census: {} classes of order {k}, invariants {}",
            census.class_count,
            join(&census.class_invariants)
        ),
        &mut out,
    );

    let orbits = cyclic_orbit_check(p, force)?;
    check(
        orbits.pass,
        format!("cyclic orbits of an order-{k} element: {:?}", orbits.orbit_sizes),
        &mut out,
    );

    // Every surviving theta must build into a verified januarial.  The
    // constructive route fixes det Y = 1, so it only applies when a
    // determinant-one element of order l exists (the oracle checks above
    // do not need one).
    if find_order_trace(p, l).is_ok() {
        let mut built_ok = true;
        for &t in analytic.values() {
            let pair = solve_generators(p, l, p.element(t))?;
            let d = build_diagram(&pair);
            if !d.is_januarial() || !januarial::construct::verify_pair(&pair).passed() {
                built_ok = false;
            }
        }
        check(
            built_ok,
            format!("all {} constructed diagrams are januarials", analytic.len()),
            &mut out,
        );
    } else {
        writeln!(
            out,
            "note: no determinant-one element of order {l}; construction check skipped"
        )
        .unwrap();
    }

    if all_pass {
        writeln!(out, "all checks passed for p = {}", p.value()).unwrap();
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::verification(format!(
            "verification failed for p = {}",
            p.value()
        )))
    }
}

fn matrix(rows: [[u64; 2]; 2]) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        rows[0][0], rows[0][1], rows[1][0], rows[1][1]
    )
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
