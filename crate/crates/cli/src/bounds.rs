use serde_json::Value;

use hecke_metro::spectral::{self, BoundValue, HypercubeScan};

use crate::config::{BoundsArgs, BoundsTable, CliError, CliResult, FamilyKind};
use crate::output::Report;
use crate::row;

pub const GRID_COLUMNS: [&str; 7] = ["family", "scan", "n", "theta", "c", "steps", "bound"];
pub const LEAD_COLUMNS: [&str; 4] = ["theta", "n", "random", "systematic"];

pub fn run(args: &BoundsArgs) -> CliResult<bool> {
    let config = serde_json::to_value(args).expect("config serializes");
    let report = match args.table {
        BoundsTable::Grid => grid(args, config)?,
        BoundsTable::Lead => lead(args, config)?,
    };
    report.write(&args.output)?;
    Ok(true)
}

fn grid(args: &BoundsArgs, config: Value) -> CliResult<Report> {
    let mut report = Report::new(config, GRID_COLUMNS.to_vec());
    report.cite(
        "bound",
        "upper bound on chi-square distance after `steps` steps, float evaluation",
    );
    let families = match args.family {
        Some(f) => vec![f],
        None => vec![FamilyKind::Symmetric, FamilyKind::Hypercube, FamilyKind::Dihedral],
    };
    for family in families {
        let name = serde_json::to_value(family).expect("family serializes");
        for &n in &args.ns {
            for &theta in &args.thetas {
                let mut with_c = |scan: &str, c: f64, value: BoundValue| {
                    report.push(row! {
                        "family" => name.clone(), "scan" => scan, "n" => n, "theta" => theta,
                        "c" => c, "steps" => value.steps, "bound" => value.value,
                    });
                };
                match family {
                    FamilyKind::Symmetric => {
                        for &c in &args.cs {
                            with_c("short", c, spectral::symmetric_short_scan_bound(n, theta, c)?);
                            with_c(
                                "short_averaged",
                                c,
                                spectral::symmetric_short_scan_averaged_bound(n, theta, c)?,
                            );
                        }
                        let long = spectral::symmetric_long_scan_bound(n, theta)?;
                        let long_avg = spectral::symmetric_long_scan_averaged_bound(n, theta)?;
                        for (scan, bound) in [("long", long), ("long_averaged", long_avg)] {
                            report.push(row! {
                                "family" => name.clone(), "scan" => scan, "n" => n, "theta" => theta,
                                "c" => Value::Null, "steps" => 1, "bound" => bound,
                            });
                        }
                    }
                    FamilyKind::Hypercube => {
                        for &c in &args.cs {
                            with_c(
                                "random",
                                c,
                                spectral::hypercube_bound(n, theta, c, HypercubeScan::Random)?,
                            );
                            with_c(
                                "systematic",
                                c,
                                spectral::hypercube_bound(n, theta, c, HypercubeScan::Systematic)?,
                            );
                        }
                    }
                    FamilyKind::Dihedral => {
                        for &c in &args.cs {
                            if c < 1.0 || c.fract() != 0.0 {
                                return Err(CliError::Usage(format!(
                                    "dihedral random-scan bounds take whole step counts in --cs, got {c}"
                                )));
                            }
                            let steps = c as usize;
                            report.push(row! {
                                "family" => name.clone(), "scan" => "random", "n" => n, "theta" => theta,
                                "c" => Value::Null, "steps" => steps,
                                "bound" => spectral::dihedral_random_scan_bound(n, theta, steps)?,
                            });
                        }
                        report.push(row! {
                            "family" => name.clone(), "scan" => "long", "n" => n, "theta" => theta,
                            "c" => Value::Null, "steps" => 1,
                            "bound" => spectral::dihedral_single_scan_bound(n, theta)?,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

fn lead(args: &BoundsArgs, config: Value) -> CliResult<Report> {
    let mut report = Report::new(config, LEAD_COLUMNS.to_vec());
    report.cite("random", "n ln(n/theta) / (2(1 + theta))");
    report.cite("systematic", "n ln n / (2 ln(1/theta))");
    for &n in &args.ns {
        for row in spectral::lead_constant_table(&args.thetas, n)? {
            report.push(row! {
                "theta" => row.theta, "n" => row.n, "random" => row.random, "systematic" => row.systematic,
            });
        }
    }
    Ok(report)
}
