//! `orbichar`: sectors, Euler characteristics and generating-function checks
//! for finite global quotient orbifolds.
//!
//! Exit codes: 0 pass, 1 identity mismatch, 2 input error, 3 cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use orbichar_core::complex::{EquivariantComplex, SUITE_SPECS};
use orbichar_core::formats::{load_equivariant, load_group, load_hodge_dataset, load_presentation};
use orbichar_core::report;
use orbichar_core::series::Route;
use orbichar_core::{Error, FiniteGroup, Limits, Presentation};

#[derive(Parser, Debug)]
#[command(name = "orbichar", version, about = "Exact Euler characteristics of finite global quotient orbifolds")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest number of candidate tuples `|G|^k` for homomorphism enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_homs: Option<u64>,
    /// Largest number of simplices in any complex built.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_simplices: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Γ-sectors and Γ-Euler characteristics of `X ⋊ G`.
    Euler {
        /// Built-in equivariant spec (e.g. `octahedron/antipodal`) or complex JSON file.
        #[arg(long)]
        complex: String,
        /// Acting group for a trivial action: built-in name or group JSON file.
        #[arg(long)]
        group: Option<String>,
        /// `trivial`, `Z`, `Z^m`, `F_k` or a presentation JSON file.
        #[arg(long, default_value = "Z")]
        gamma: String,
    },
    /// Wreath products `G ≀ Sₙ`.
    Wreath {
        what: WreathWhat,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Complex for `euler`; the group acts trivially on a plain name.
        #[arg(long, default_value = "point")]
        complex: String,
    },
    /// Checks one of the identities and reports both sides.
    Verify {
        /// `exp`, `main` (or `main(m)`), `macdonald`, `jcount`, `hodge`, `thm31`, `products`.
        identity: String,
        /// Complex spec or file; repeatable for `products`.
        #[arg(long)]
        complex: Vec<String>,
        #[arg(long)]
        group: Option<String>,
        /// Comma-separated presentations for `thm31`.
        #[arg(long, default_value = "Z,Z^2")]
        gamma: String,
        #[arg(long)]
        m: Option<usize>,
        /// Truncation order `N`.
        #[arg(long, default_value_t = 5)]
        order: usize,
        /// Largest `r` for `jcount`.
        #[arg(long, default_value_t = 12)]
        r_max: usize,
        /// Bundled Hodge dataset name or sector-data JSON file.
        #[arg(long, default_value = "point")]
        data: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WreathWhat {
    Classes,
    Centralizers,
    Euler,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Auto,
    Brute,
    PointCount,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Auto => Route::Auto,
            RouteArg::Brute => Route::Brute,
            RouteArg::PointCount => Route::PointCount,
        }
    }
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    passed: bool,
    report: T,
}

enum Verdict {
    Pass,
    Mismatch,
    Capped(String),
}

struct Outcome {
    command: String,
    verdict: Verdict,
    json: serde_json::Value,
}

fn outcome<T: Serialize>(command: &str, verdict: Verdict, report: T) -> Result<Outcome, Failure> {
    let passed = matches!(verdict, Verdict::Pass);
    let json = serde_json::to_value(Envelope { command, passed, report })
        .map_err(|e| Failure::Input(format!("serializing report: {e}")))?;
    Ok(Outcome { command: command.to_string(), verdict, json })
}

fn verdict(passed: bool, capped: Option<&str>) -> Verdict {
    match (passed, capped) {
        (true, _) => Verdict::Pass,
        (false, Some(c)) => Verdict::Capped(c.to_string()),
        (false, None) => Verdict::Mismatch,
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(c) = cli.cap_homs {
        l.group.max_hom_candidates = c as u128;
    }
    if let Some(c) = cli.cap_simplices {
        l.complex.max_simplices = c as usize;
    }
    l
}

fn group_arg(spec: Option<&str>, limits: &Limits) -> Result<Option<Arc<FiniteGroup>>, Failure> {
    spec.map(|s| load_group(s, &limits.group).map(Arc::new)).transpose().map_err(Failure::from)
}

fn complex_arg(spec: &str, group: Option<&str>, limits: &Limits) -> Result<EquivariantComplex, Failure> {
    Ok(load_equivariant(spec, group_arg(group, limits)?, &limits.group)?)
}

/// `main(2)` or `main` with `--m`.
fn parse_identity(identity: &str, m: Option<usize>) -> Result<(String, Option<usize>), Failure> {
    if let Some(inner) = identity.strip_prefix("main(").and_then(|s| s.strip_suffix(')')) {
        let k = inner.trim().parse().map_err(|_| Failure::Input(format!("bad identity {identity:?}")))?;
        if m.is_some_and(|m| m != k) {
            return Err(Failure::Input("conflicting m".into()));
        }
        return Ok(("main".into(), Some(k)));
    }
    Ok((identity.to_string(), m))
}

fn single_complex(complex: &[String]) -> Result<&str, Failure> {
    match complex {
        [one] => Ok(one),
        [] => Err(Failure::Input("--complex is required".into())),
        _ => Err(Failure::Input("exactly one --complex is expected".into())),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let limits = limits(cli);
    match &cli.command {
        Command::Euler { complex, group, gamma } => {
            let x = complex_arg(complex, group.as_deref(), &limits)?;
            let gamma = load_presentation(gamma)?;
            let r = report::euler_report(complex, &x, &gamma, &limits)?;
            outcome("euler", verdict(r.passed(), None), r)
        }
        Command::Wreath { what, group, n, complex } => {
            let base = Arc::new(load_group(group, &limits.group)?);
            match what {
                WreathWhat::Classes | WreathWhat::Centralizers => {
                    let centralizers = matches!(what, WreathWhat::Centralizers);
                    let r = report::wreath_classes_report(group, base, *n, centralizers, &limits)?;
                    let name = if centralizers { "wreath centralizers" } else { "wreath classes" };
                    outcome(name, verdict(r.passed(), None), r)
                }
                WreathWhat::Euler => {
                    let x = load_equivariant(complex, Some(base), &limits.group)?;
                    let r = report::wreath_euler_report(complex, &x, *n, &limits)?;
                    outcome("wreath euler", verdict(r.passed(), None), r)
                }
            }
        }
        Command::Verify { identity, complex, group, gamma, m, order, r_max, data, route } => {
            let route = Route::from(*route);
            let (identity, m) = parse_identity(identity, *m)?;
            let command = format!("verify {identity}");
            match identity.as_str() {
                "exp" => {
                    let name = single_complex(complex)?;
                    let x = complex_arg(name, group.as_deref(), &limits)?;
                    let r = report::verify_exp(name, &x, *order, route, &limits)?;
                    outcome(&command, verdict(r.passed(), r.capped()), r)
                }
                "main" => {
                    let name = single_complex(complex)?;
                    let x = complex_arg(name, group.as_deref(), &limits)?;
                    let r = report::verify_main(name, &x, m.unwrap_or(1), *order, route, &limits)?;
                    outcome(&command, verdict(r.passed(), r.capped()), r)
                }
                "macdonald" => {
                    let name = single_complex(complex)?;
                    let x = complex_arg(name, group.as_deref(), &limits)?;
                    let r = report::verify_macdonald(name, &x, *order, route, &limits)?;
                    let v = verdict(r.passed, r.stopped_at.as_deref());
                    outcome(&command, v, r)
                }
                "jcount" => {
                    let r = report::verify_jcount(*r_max, m.unwrap_or(3));
                    outcome(&command, verdict(r.passed, None), r)
                }
                "hodge" => {
                    let ds = load_hodge_dataset(data)?;
                    let r = report::verify_hodge(&ds, *order)?;
                    outcome(&command, verdict(r.passed, None), r)
                }
                "thm31" => {
                    let name = single_complex(complex)?;
                    let x = complex_arg(name, group.as_deref(), &limits)?;
                    let gammas =
                        gamma.split(',').map(|g| load_presentation(g.trim())).collect::<Result<Vec<Presentation>, _>>()?;
                    let r = report::verify_iteration(name, &x, &gammas, &limits)?;
                    outcome(&command, verdict(r.passed, None), r)
                }
                "products" => {
                    let specs: Vec<String> = if complex.is_empty() {
                        SUITE_SPECS.iter().map(|s| s.to_string()).collect()
                    } else {
                        complex.clone()
                    };
                    let cases = specs
                        .iter()
                        .map(|s| Ok((s.clone(), complex_arg(s, group.as_deref(), &limits)?)))
                        .collect::<Result<Vec<_>, Failure>>()?;
                    let r = report::verify_products(&cases, &limits)?;
                    outcome(&command, verdict(r.passed, None), r)
                }
                other => Err(Failure::Input(format!("unknown identity {other:?}"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("cap exceeded: {msg}");
            return ExitCode::from(3);
        }
    };
    let mut text = serde_json::to_string_pretty(&outcome.json).expect("JSON value");
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    match outcome.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Mismatch => {
            eprintln!("{}: identity mismatch", outcome.command);
            ExitCode::from(1)
        }
        Verdict::Capped(msg) => {
            eprintln!("{}: cap exceeded: {msg}", outcome.command);
            ExitCode::from(3)
        }
    }
}
