//! Command-line front end: space reports, Hom groups, reducibility verdicts,
//! self-closeness evidence, ring endomorphism enumeration, and verification
//! suites.

mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use selfclose_core::closeness::{compute_nsc, NscQuery};
use selfclose_core::criteria::{decide_k_reducibility, ReducibilityOutcome, DEFAULT_BUDGET};
use selfclose_core::error::{Error, Result};
use selfclose_core::group::parse_group;
use selfclose_core::oracle::{run_suite, SuiteOutcome};
use selfclose_core::ring::{
    all_invertible_endos_are_ring_autos, enumerate_invertible_endos, WedgeRingModel,
};

use input::{load_ring_summands, load_space};

#[derive(Parser)]
#[command(
    name = "selfclose",
    version,
    about = "Exact homology-level algebra of self-maps of wedge sums"
)]
struct Cli {
    /// Stable machine-readable output (schema version 1).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a space: homology table, connectivity, dimensions, certificates.
    Space {
        /// Catalog id (S:n, CP:n, HP:n, SRP:m, M:<group>:n, K:<group>:n) or a JSON file.
        space: String,
    },
    /// Hom(G, H) for group presentations, or space homology with --degree.
    Hom {
        source: String,
        target: String,
        /// Treat the arguments as spaces and compare homology in this degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Decide whether every k-equivalence of X v Y is k-reducible.
    Reducible {
        x: String,
        y: String,
        #[arg(long)]
        k: u32,
        /// Cap on exhaustive census sizes before reporting UNKNOWN.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Exit with code 3 when the verdict is UNKNOWN.
        #[arg(long)]
        strict: bool,
    },
    /// Homology self-closeness bounds with an evidence trail.
    Nsc {
        /// One space, or several with --wedge / --product / --smash.
        #[arg(required = true)]
        spaces: Vec<String>,
        /// Wedge of the listed spaces.
        #[arg(long)]
        wedge: bool,
        /// Product of exactly two spaces.
        #[arg(long)]
        product: bool,
        /// Smash of exactly two spaces.
        #[arg(long)]
        smash: bool,
        /// m-fold suspension of one space.
        #[arg(long, value_name = "M")]
        suspend: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Exit with code 3 when no exact value is established.
        #[arg(long)]
        strict: bool,
    },
    /// Enumerate invertible graded endomorphisms of a two-summand ring model.
    RingEndos {
        /// Two catalog ids / ring files, or one file listing two summands.
        #[arg(required = true)]
        ring: Vec<String>,
    },
    /// Run a named verification suite against brute-force oracles.
    Verify {
        #[arg(long)]
        suite: String,
        /// Size cap handed to the suite (default: the suite's own).
        #[arg(long)]
        bound: Option<u64>,
    },
}

fn main() -> ExitCode {
    // Die quietly when the consumer closes the pipe, like other line tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Space { space } => cmd_space(space, cli.json),
        Command::Hom {
            source,
            target,
            degree,
        } => cmd_hom(source, target, *degree, cli.json),
        Command::Reducible {
            x,
            y,
            k,
            budget,
            strict,
        } => cmd_reducible(x, y, *k, *budget, *strict, cli.json),
        Command::Nsc {
            spaces,
            wedge,
            product,
            smash,
            suspend,
            budget,
            strict,
        } => cmd_nsc(
            spaces, *wedge, *product, *smash, *suspend, *budget, *strict, cli.json,
        ),
        Command::RingEndos { ring } => cmd_ring_endos(ring, cli.json),
        Command::Verify { suite, bound } => cmd_verify(suite, *bound, cli.json),
    }
}

fn cmd_space(arg: &str, json: bool) -> Result<u8> {
    let model = load_space(arg)?;
    let nsc = compute_nsc(&NscQuery::Single(model.clone()), DEFAULT_BUDGET)?;
    if json {
        output::emit(output::space_json(&model, &nsc));
    } else {
        output::space_text(&model, &nsc);
    }
    Ok(0)
}

fn cmd_hom(source: &str, target: &str, degree: Option<u32>, json: bool) -> Result<u8> {
    let (src_name, tgt_name, hom) = match degree {
        Some(d) => {
            let x = load_space(source)?;
            let y = load_space(target)?;
            let hom = x.homology_at(d)?.hom_group(&y.homology_at(d)?);
            (x.name().to_string(), y.name().to_string(), hom)
        }
        None => {
            let g = parse_group(source)?;
            let h = parse_group(target)?;
            (g.to_string(), h.to_string(), g.hom_group(&h))
        }
    };
    if json {
        output::emit(output::hom_json(&src_name, &tgt_name, degree, &hom));
    } else {
        output::hom_text(&src_name, &tgt_name, degree, &hom);
    }
    Ok(0)
}

fn cmd_reducible(x: &str, y: &str, k: u32, budget: u64, strict: bool, json: bool) -> Result<u8> {
    let xm = load_space(x)?;
    let ym = load_space(y)?;
    let verdict = decide_k_reducibility(&xm, &ym, k, budget)?;
    if json {
        output::emit(output::reducible_json(xm.name(), ym.name(), k, &verdict));
    } else {
        output::reducible_text(xm.name(), ym.name(), k, &verdict);
    }
    Ok(match verdict.outcome {
        ReducibilityOutcome::Reducible => 0,
        ReducibilityOutcome::AlgebraicCounterexample => 1,
        ReducibilityOutcome::Unknown => {
            if strict {
                3
            } else {
                0
            }
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_nsc(
    spaces: &[String],
    wedge: bool,
    product: bool,
    smash: bool,
    suspend: Option<u32>,
    budget: u64,
    strict: bool,
    json: bool,
) -> Result<u8> {
    let modes = [wedge, product, smash, suspend.is_some()];
    if modes.iter().filter(|m| **m).count() > 1 {
        return Err(Error::InvalidInput(
            "choose at most one of --wedge, --product, --smash, --suspend".into(),
        ));
    }
    let models: Vec<_> = spaces
        .iter()
        .map(|s| load_space(s))
        .collect::<Result<_>>()?;
    let need = |n: usize, what: &str| -> Result<()> {
        if models.len() != n {
            return Err(Error::InvalidInput(format!(
                "{what} needs exactly {n} space(s), got {}",
                models.len()
            )));
        }
        Ok(())
    };
    let (kind, query) = if wedge {
        ("wedge", NscQuery::Wedge(models.clone()))
    } else if product {
        need(2, "--product")?;
        (
            "product",
            NscQuery::Product(models[0].clone(), models[1].clone()),
        )
    } else if smash {
        need(2, "--smash")?;
        (
            "smash",
            NscQuery::Smash(models[0].clone(), models[1].clone()),
        )
    } else if let Some(m) = suspend {
        need(1, "--suspend")?;
        ("suspension", NscQuery::Suspension(models[0].clone(), m))
    } else {
        if models.len() != 1 {
            return Err(Error::InvalidInput(
                "multiple spaces need --wedge, --product, or --smash".into(),
            ));
        }
        ("single", NscQuery::Single(models[0].clone()))
    };
    let result = compute_nsc(&query, budget)?;
    if json {
        output::emit(output::nsc_json(kind, &result));
    } else {
        output::nsc_text(&result);
    }
    Ok(if result.exact.is_some() {
        0
    } else if strict {
        3
    } else {
        0
    })
}

fn cmd_ring_endos(args: &[String], json: bool) -> Result<u8> {
    let mut summands = Vec::new();
    for (i, arg) in args.iter().enumerate() {
        let default_gen = if i == 0 { "a" } else { "b" };
        summands.extend(load_ring_summands(arg, default_gen)?);
    }
    if summands.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "the wedge ring model needs exactly two summands, got {}",
            summands.len()
        )));
    }
    let right = summands.pop().expect("two summands");
    let left = summands.pop().expect("two summands");
    let model = WedgeRingModel::new(left, right)?;
    let solutions = enumerate_invertible_endos(&model)?;
    let all_autos = all_invertible_endos_are_ring_autos(&model)?;
    if json {
        output::emit(output::ring_endos_json(&model, &solutions, all_autos));
    } else {
        output::ring_endos_text(&model, &solutions, all_autos);
    }
    Ok(if all_autos { 0 } else { 1 })
}

fn cmd_verify(suite: &str, bound: Option<u64>, json: bool) -> Result<u8> {
    let report = run_suite(suite, bound)?;
    if json {
        output::emit(output::verify_json(&report));
    } else {
        output::verify_text(&report);
    }
    Ok(match report.outcome {
        SuiteOutcome::Pass => 0,
        SuiteOutcome::Counterexample { .. } => 1,
    })
}
