//! Upper bounds on ‖K^ℓ − π‖²_TV evaluated in floating point, and exact checks
//! of the inequalities on d_λ, t_λ and c_λ that feed them.
//!
//! Factorials enter through ln n! so that n in the hundreds stays finite.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::spectral::irreps::{scalar_from_u128, symmetric_generic_degree};
use crate::spectral::partition::{partitions, Partition};

/// A bound together with the number of steps at which it applies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundValue {
    pub steps: f64,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypercubeScan {
    Random,
    Systematic,
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn check_open_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Regime(format!("bound needs 0 < theta < 1, got {theta}")));
    }
    Ok(())
}

fn check_positive_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Regime(format!("bound needs c > 0, got {c}")));
    }
    Ok(())
}

/// Short scan on S_n from the identity, at ℓ = n/2 − ln n/ln θ + c:
/// (e^{θ^{2c+1}} − 1) + n! θ^{n²/8 − n ln n/ln θ + n(c + 1/4)}.
pub fn symmetric_short_scan_bound(n: usize, theta: f64, c: f64) -> Result<BoundValue> {
    check_open_theta(theta)?;
    check_positive_c(c)?;
    let nf = n as f64;
    let ln_t = theta.ln();
    let steps = nf / 2.0 - nf.ln() / ln_t + c;
    let exponent = nf * nf / 8.0 - nf * nf.ln() / ln_t + nf * (c + 0.25);
    let value = theta.powf(2.0 * c + 1.0).exp_m1() + (ln_factorial(n) + exponent * ln_t).exp();
    Ok(BoundValue { steps, value })
}

/// Short scan on S_n averaged over π, at ℓ = −ln n/ln θ + c:
/// (e^{θ^{2c}} − 1) + (θ^c/e)^n e^{1/12} √(2πn).
pub fn symmetric_short_scan_averaged_bound(n: usize, theta: f64, c: f64) -> Result<BoundValue> {
    check_open_theta(theta)?;
    check_positive_c(c)?;
    let nf = n as f64;
    let steps = -nf.ln() / theta.ln() + c;
    let stirling = (nf * (c * theta.ln() - 1.0) + 1.0 / 12.0).exp() * (2.0 * std::f64::consts::PI * nf).sqrt();
    Ok(BoundValue {
        steps,
        value: theta.powf(2.0 * c).exp_m1() + stirling,
    })
}

/// One pass of the long scan on S_n from the identity:
/// (e^{n²θ^{n/2}} − 1) + n! θ^{n²/8 + 5n/4}.
pub fn symmetric_long_scan_bound(n: usize, theta: f64) -> Result<f64> {
    check_open_theta(theta)?;
    let nf = n as f64;
    Ok((nf * nf * theta.powf(nf / 2.0)).exp_m1() + (ln_factorial(n) + (nf * nf / 8.0 + 1.25 * nf) * theta.ln()).exp())
}

/// One pass of the long scan on S_n averaged over π:
/// (e^{n²θ^n} − 1) + n! θ^{n²/2 + n}.
pub fn symmetric_long_scan_averaged_bound(n: usize, theta: f64) -> Result<f64> {
    check_open_theta(theta)?;
    let nf = n as f64;
    Ok((nf * nf * theta.powf(nf)).exp_m1() + (ln_factorial(n) + (nf * nf / 2.0 + nf) * theta.ln()).exp())
}

/// Hypercube bounds. Random scan at ℓ = n(ln n − ln θ + c)/(2(1 + θ)) gives
/// (e^{e^{−c}} − 1) + e^{−c/2}; systematic scan at
/// ℓ = ((ln n + c)/ln(1/θ) + 1)/4 gives (e^{e^{−c}} − 1)/4.
pub fn hypercube_bound(n: usize, theta: f64, c: f64, scan: HypercubeScan) -> Result<BoundValue> {
    check_open_theta(theta)?;
    check_positive_c(c)?;
    let nf = n as f64;
    let tail = (-c).exp().exp_m1();
    Ok(match scan {
        HypercubeScan::Random => BoundValue {
            steps: nf * (nf.ln() - theta.ln() + c) / (2.0 * (1.0 + theta)),
            value: tail + (-c / 2.0).exp(),
        },
        HypercubeScan::Systematic => BoundValue {
            steps: ((nf.ln() + c) / (1.0 / theta).ln() + 1.0) / 4.0,
            value: tail / 4.0,
        },
    })
}

/// Random scan on the dihedral group of order 2n after ℓ steps:
/// θ^{−n} √((1 + θ)/(1 − θ)) (1 − (1 − √θ)²/2)^{2ℓ}.
pub fn dihedral_random_scan_bound(n: usize, theta: f64, steps: usize) -> Result<f64> {
    check_open_theta(theta)?;
    let base = 1.0 - 0.5 * (1.0 - theta.sqrt()).powi(2);
    Ok(theta.powi(-(n as i32)) * ((1.0 + theta) / (1.0 - theta)).sqrt() * base.powi(2 * steps as i32))
}

/// One long-scan pass on the dihedral group: 2θ^{n+1}/(1 − θ).
pub fn dihedral_single_scan_bound(n: usize, theta: f64) -> Result<f64> {
    check_open_theta(theta)?;
    Ok(2.0 * theta.powi(n as i32 + 1) / (1.0 - theta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeadConstantRow {
    pub theta: f64,
    pub n: usize,
    /// n ln(n/θ) / (2(1 + θ))
    pub random: f64,
    /// n ln n / (2 ln(1/θ))
    pub systematic: f64,
}

/// Leading step counts of the hypercube random and systematic scans.
pub fn lead_constant_table(thetas: &[f64], n: usize) -> Result<Vec<LeadConstantRow>> {
    thetas
        .iter()
        .map(|&theta| {
            check_open_theta(theta)?;
            let nf = n as f64;
            Ok(LeadConstantRow {
                theta,
                n,
                random: nf * (nf / theta).ln() / (2.0 * (1.0 + theta)),
                systematic: nf * nf.ln() / (2.0 * (1.0 / theta).ln()),
            })
        })
        .collect()
}

/// Outcome of the three inequalities on the constants of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBoundChecks {
    /// t_λ ≤ θ^{C(λ_1,2) − C(n,2)} d_λ
    pub generic_degree: bool,
    /// Σ_{μ_1 = λ_1} d_μ² ≤ n^{2j}/j! with j = n − λ_1 (vacuous for j = 0)
    pub dimension_sum: bool,
    /// c_λ ≤ C(λ_1,2) + (n − λ_1)(n − λ_1 − 3)/2 if λ_1 ≥ n/2, else c_λ ≤ n²/4 − n
    pub content: bool,
}

fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

/// Exact evaluation of the three inequalities at rational θ.
pub fn degree_bound_checks(shape: &Partition, theta: &Rational) -> Result<DegreeBoundChecks> {
    crate::scalar::check_theta(theta)?;
    let n = shape.size();
    let first = shape.first_part();
    let q = Rational::from_int(1) / theta.clone();

    let t = symmetric_generic_degree(shape, &q);
    let bound = theta.powi(choose2(first) - choose2(n)) * scalar_from_u128::<Rational>(shape.dimension());
    let generic_degree = t <= bound;

    let j = n - first;
    let dimension_sum = if j == 0 {
        true
    } else {
        let total: u128 = partitions(n)
            .iter()
            .filter(|mu| mu.first_part() == first)
            .map(|mu| mu.dimension().pow(2))
            .sum();
        let factorial = (1..=j as i64).fold(Rational::from_int(1), |acc, k| acc * Rational::from_int(k));
        scalar_from_u128::<Rational>(total) <= Rational::from_int(n as i64).powi(2 * j as i64) / factorial
    };

    let c = Rational::from_int(shape.content_sum());
    let content_bound = if 2 * first >= n {
        let rest = (n - first) as i64;
        Rational::from_int(choose2(first)) + Rational::from_ratio(rest * (rest - 3), 2)
    } else {
        let nn = n as i64;
        Rational::from_ratio(nn * nn, 4) - Rational::from_int(nn)
    };
    Ok(DegreeBoundChecks {
        generic_degree,
        dimension_sum,
        content: c <= content_bound,
    })
}
