use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use tspn_core::verify::verify_tour;
use tspn_harness::bench::{self, Suite};
use tspn_harness::generate::{generate, GenParams, GenType};
use tspn_harness::io::{load_instance, load_tour, write_json, Kind, TourFile};
use tspn_harness::solve::solve;
use tspn_harness::{svg, UsageError};

#[derive(Parser)]
#[command(name = "tspn", version, about = "Tours that visit every neighborhood of an instance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random (or the three-disk counterexample) instance.
    Gen {
        #[arg(long = "type", value_enum)]
        kind: GenType,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Defaults to 2 for disks and 3 otherwise.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Side of the cube holding disk and ball centers.
        #[arg(long)]
        side: Option<f64>,
        /// fig5: radius of the two large disks.
        #[arg(long, default_value_t = 100.0)]
        x: f64,
        /// fig5: gap between the first two disks.
        #[arg(long, default_value_t = 0.001)]
        eps: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute a tour; prints the ratio report as JSON.
    Solve {
        #[arg(long, value_enum)]
        algo: Kind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Planar instances only.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check that a tour meets every neighborhood of an instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tour: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Run a benchmark suite and write its results as JSON.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: PathBuf,
    },
}

/// `Ok(false)` means the command ran but found a failure.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Gen { kind, n, dim, seed, side, x, eps, out } => {
            let inst = generate(kind, &GenParams { n, dim, seed, side, x, eps })?;
            write_json(&out, &inst)?;
            Ok(true)
        }
        Command::Solve { algo, input, eps, seed, out, report, svg } => {
            let inst = load_instance(&input)?;
            if svg.is_some() && inst.dim() != 2 {
                return Err(UsageError("--svg needs a planar instance".into()).into());
            }
            let id = input.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let sol = solve(&inst, algo, eps, seed, &id)?;
            write_json(&out, &TourFile::from_tour(&sol.tour))?;
            if let Some(path) = svg {
                fs::write(&path, svg::render(&inst, &sol.tour)?).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = report {
                write_json(&path, &sol.report)?;
            }
            println!("{}", serde_json::to_string_pretty(&sol.report)?);
            Ok(true)
        }
        Command::Verify { input, tour, tol } => {
            let inst = load_instance(&input)?;
            let tour = load_tour(&tour)?;
            if tour.dim() != inst.dim() {
                return Err(UsageError(format!("tour is {}-dimensional, instance {}", tour.dim(), inst.dim())).into());
            }
            let v = verify_tour(&tour, &inst.neighborhoods(), tol)?;
            for (i, d) in v.distances.iter().enumerate() {
                println!("{i} {d:.3e}");
            }
            match v.first_violation {
                None => {
                    println!("ok: all {} neighborhoods within {tol:e}", v.distances.len());
                    Ok(true)
                }
                Some(i) => {
                    eprintln!("violation: neighborhood {i} at distance {:e} > {tol:e}", v.distances[i]);
                    Ok(false)
                }
            }
        }
        Command::Bench { suite, seed, json } => {
            let failures = match suite {
                Suite::Lemmas => {
                    let r = bench::lemmas(seed)?;
                    for c in &r.checks {
                        println!("{:<40} {:>8} samples {:>4} violations", c.name, c.samples, c.violations);
                    }
                    write_json(&json, &r)?;
                    r.violations
                }
                Suite::Ratios => {
                    let r = bench::ratios(seed)?;
                    for e in &r.reports {
                        let rep = &e.report;
                        println!(
                            "{:<18} L={:<10.4} LB={:<10.4} budget={:.3}*ref+{:.3} {}{}",
                            rep.instance_id,
                            rep.tour_length,
                            rep.lower_bound,
                            rep.ratio_budget,
                            rep.additive_budget,
                            if rep.budget_satisfied { "within" } else { "over" },
                            if e.valid { "" } else { " INVALID" }
                        );
                    }
                    write_json(&json, &r)?;
                    r.failures
                }
                Suite::Oracles => {
                    let r = bench::oracles(seed)?;
                    for row in &r.rows {
                        println!(
                            "{:<36} n={:<3} max|diff|={:<10} mean={:<8} max={}",
                            row.name,
                            row.instances,
                            row.max_abs_diff.map_or("-".into(), |d| format!("{d:.1e}")),
                            row.mean_ratio.map_or("-".into(), |d| format!("{d:.4}")),
                            row.max_ratio.map_or("-".into(), |d| format!("{d:.4}")),
                        );
                    }
                    write_json(&json, &r)?;
                    r.mismatches
                }
            };
            Ok(failures == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
