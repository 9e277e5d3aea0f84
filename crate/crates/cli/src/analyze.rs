use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use hecke_metro::chains::{chi_square, stationary, tv_distance, Distribution, Kernel};
use hecke_metro::coxeter::{Group, GroupFamily};
use hecke_metro::error::Error;
use hecke_metro::scalar::Scalar;
use hecke_metro::spectral;

use crate::config::{enumerate, AnalyzeArgs, CliError, CliResult, Mode, ScanKind};
use crate::output::{Emit, Report};
use crate::row;

/// Float-mode agreement tolerance, relative.
const FLOAT_TOLERANCE: f64 = 1e-9;

pub const COLUMNS: [&str; 6] = ["l", "chisq_formula", "chisq_oracle", "tv", "tv_bound", "match"];

pub fn run(args: &AnalyzeArgs) -> CliResult<bool> {
    let family = args.instance.family()?;
    if args.lmax == 0 {
        return Err(CliError::Usage("--lmax must be at least 1".into()));
    }
    let report = match args.mode {
        Mode::Exact => {
            let theta = args.instance.theta_exact()?;
            let group = enumerate(family)?;
            analyze(args, family, theta, Some(group))?
        }
        Mode::Float => {
            let theta = args.instance.theta_float()?;
            let group = match enumerate(family) {
                Ok(g) => Some(g),
                Err(CliError::Library(Error::CapExceeded { .. })) => None,
                Err(e) => return Err(e),
            };
            analyze(args, family, theta, group)?
        }
    };
    report.write(&args.output)?;
    Ok(report.rows.iter().all(|r| r["match"] != Value::Bool(false)))
}

fn build_kernel<S: Scalar>(group: Arc<Group>, theta: S, scan: ScanKind) -> hecke_metro::error::Result<Kernel<S>> {
    match scan {
        ScanKind::Short => Kernel::short_scan(group, theta),
        ScanKind::Long => Kernel::long_scan(group, theta),
        ScanKind::Random => Kernel::random_scan(group, theta),
    }
}

/// A closed-form value: exact in the scalar type, or a float when the
/// formula itself involves cosines.
enum Closed<S> {
    Scalar(S),
    Float(f64),
}

impl<S: Scalar + Emit> Closed<S> {
    fn emit(&self) -> Value {
        match self {
            Closed::Scalar(v) => v.emit(),
            Closed::Float(v) => json!(v),
        }
    }

    fn agrees(&self, oracle: &S) -> bool {
        match self {
            Closed::Scalar(v) if S::is_exact() => v == oracle,
            Closed::Scalar(v) => close(v.as_f64(), oracle.as_f64()),
            Closed::Float(v) => close(*v, oracle.as_f64()),
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FLOAT_TOLERANCE * b.abs().max(f64::MIN_POSITIVE)
}

/// The closed form for this (family, scan) pair and its name, if one exists.
fn closed_form<S: Scalar>(
    family: GroupFamily,
    scan: ScanKind,
    theta: &S,
    steps: usize,
    averaged: bool,
) -> Option<(&'static str, hecke_metro::error::Result<Closed<S>>)> {
    let scalar = |r: hecke_metro::error::Result<S>| r.map(Closed::Scalar);
    // On the hypercube the generators commute, so SHORT and LONG coincide.
    let long_like = scan == ScanKind::Long || (scan == ScanKind::Short && matches!(family, GroupFamily::Hypercube(_)));
    if long_like {
        return Some(if averaged {
            (
                "long_scan_avg_chisq",
                scalar(spectral::long_scan_avg_chisq(family, theta, steps)),
            )
        } else {
            (
                "long_scan_chisq",
                scalar(spectral::long_scan_chisq(family, theta, steps, &family.identity())),
            )
        });
    }
    match (family, scan) {
        (GroupFamily::Symmetric(n), ScanKind::Short) => Some((
            "short_scan_chisq_symmetric",
            scalar(spectral::short_scan_chisq_symmetric(n, theta, steps, averaged)),
        )),
        (GroupFamily::Hypercube(n), ScanKind::Random) if !averaged => Some((
            "random_scan_chisq_hypercube",
            scalar(spectral::random_scan_chisq_hypercube(n, theta, steps, &vec![false; n])),
        )),
        (GroupFamily::Dihedral(n), ScanKind::Random) => Some((
            "dihedral_random_scan_chisq",
            spectral::dihedral_random_scan_chisq(n, theta.as_f64(), steps, averaged).map(Closed::Float),
        )),
        _ => None,
    }
}

/// Chi-square and TV after 1..=lmax steps, from the identity or averaged
/// over a π-distributed start.
fn oracle<S: Scalar>(kernel: &Kernel<S>, pi: &Distribution<S>, lmax: usize, averaged: bool) -> CliResult<Vec<(S, S)>> {
    let group = kernel.group().clone();
    let from = |x: usize| -> hecke_metro::error::Result<Vec<(S, S)>> {
        let path = kernel.trajectory(&Distribution::point_mass(&group, x), lmax)?;
        path[1..]
            .iter()
            .map(|p| Ok((chi_square(p, pi)?, tv_distance(p, pi)?)))
            .collect()
    };
    if !averaged {
        return Ok(from(group.identity_index())?);
    }
    let per_start: Vec<Vec<(S, S)>> = (0..group.len())
        .into_par_iter()
        .map(from)
        .collect::<hecke_metro::error::Result<_>>()?;
    Ok((0..lmax)
        .map(|l| {
            per_start
                .iter()
                .enumerate()
                .fold((S::zero(), S::zero()), |(c, t), (x, row)| {
                    let w = pi.get(x).clone();
                    (c + w.clone() * row[l].0.clone(), t + w * row[l].1.clone())
                })
        })
        .collect())
}

fn analyze<S: Scalar + Emit>(
    args: &AnalyzeArgs,
    family: GroupFamily,
    theta: S,
    group: Option<Group>,
) -> CliResult<Report> {
    let mut report = Report::new(serde_json::to_value(args).expect("config serializes"), COLUMNS.to_vec());
    let oracle_rows = match group {
        Some(group) => {
            let group = Arc::new(group);
            let pi = stationary(&group, &theta)?;
            let kernel = build_kernel(group, theta.clone(), args.scan)?;
            report.cite(
                "chisq_oracle",
                "exact evolution of the transition kernel from point masses",
            );
            Some(oracle(&kernel, &pi, args.lmax, args.averaged)?)
        }
        None => {
            report.cite("chisq_oracle", "skipped: group order exceeds the enumeration cap");
            None
        }
    };
    report.cite("tv_bound", "chi-square / 4, an upper bound on tv^2");
    report.cite(
        "tv",
        if args.averaged {
            "pi-average of tv over starts"
        } else {
            "tv from the identity"
        },
    );
    for l in 1..=args.lmax {
        let formula = match closed_form(family, args.scan, &theta, l, args.averaged) {
            Some((name, value)) => {
                report.cite("chisq_formula", name);
                match value {
                    Ok(v) => Some(v),
                    Err(e) => {
                        report.cite("chisq_formula_unavailable", e.to_string());
                        None
                    }
                }
            }
            None => {
                report.cite("chisq_formula", "none for this family and scan");
                None
            }
        };
        let observed = oracle_rows.as_ref().map(|rows| rows[l - 1].clone());
        let matched = match (&formula, &observed) {
            (Some(f), Some((chisq, _))) => Value::Bool(f.agrees(chisq)),
            _ => Value::Null,
        };
        let bound = match (&observed, &formula) {
            (Some((chisq, _)), _) => (chisq.clone() / S::from_int(4)).emit(),
            (None, Some(Closed::Scalar(v))) => (v.clone() / S::from_int(4)).emit(),
            (None, Some(Closed::Float(v))) => json!(v / 4.0),
            (None, None) => Value::Null,
        };
        report.push(row! {
            "l" => l,
            "chisq_formula" => formula.as_ref().map_or(Value::Null, Closed::emit),
            "chisq_oracle" => observed.as_ref().map_or(Value::Null, |(c, _)| c.emit()),
            "tv" => observed.as_ref().map_or(Value::Null, |(_, t)| t.emit()),
            "tv_bound" => bound,
            "match" => matched,
        });
    }
    Ok(report)
}
