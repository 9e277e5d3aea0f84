//! Closed-form chi-square distances ‖K_x^ℓ/π − 1‖² from representation data.
//!
//! Each function here has a brute-force counterpart in [`crate::chains`]; the
//! two are compared exactly in the test suites.

use crate::coxeter::{GroupElement, GroupFamily};
use crate::error::{Error, Result};
use crate::scalar::{check_theta, q_integer, Scalar};
use crate::spectral::irreps::{
    dihedral_two_dim_degree, irreps, nontrivial_content_classes, scalar_from_u128, IrrepLabel, MAX_LISTED_RANK,
};
use crate::spectral::partition::{partitions, Partition};

fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    (0..k).fold(S::one(), |acc, i| {
        acc * S::from_int((n - i) as i64) / S::from_int((i + 1) as i64)
    })
}

/// Σ over nonzero λ ∈ {0,1}^n of f(|λ|, λ·x), grouped by (|λ|, λ·x) with
/// multiplicity C(a, j) C(n − a, k − j), a = |x|.
fn hypercube_character_sum<S: Scalar>(n: usize, weight: usize, f: impl Fn(usize, usize) -> S) -> S {
    let mut acc = S::zero();
    for k in 1..=n {
        for j in k.saturating_sub(n - weight)..=k.min(weight) {
            let mult = binomial::<S>(weight, j) * binomial::<S>(n - weight, k - j);
            acc = acc + mult * f(k, j);
        }
    }
    acc
}

/// Long systematic scan (Hecke element T̃_{w_0}²), ℓ passes.
///
/// Start must be the identity except on the hypercube, where every start
/// has a closed form.
pub fn long_scan_chisq<S: Scalar>(family: GroupFamily, theta: &S, steps: usize, start: &GroupElement) -> Result<S> {
    check_theta(theta)?;
    if start.family() != family {
        return Err(Error::FamilyMismatch(family, start.family()));
    }
    if let GroupFamily::Hypercube(n) = family {
        let weight = start.length();
        let l = steps as i64;
        return Ok(hypercube_character_sum(n, weight, |k, j| {
            theta.powi((4 * l - 1) * k as i64 + 2 * j as i64)
        }));
    }
    if !start.is_identity() {
        return Err(Error::StartNotIdentity);
    }
    let q = S::one() / theta.clone();
    let top = family.longest_length() as i64;
    Ok(nontrivial_content_classes(family, &q)?
        .into_iter()
        .fold(S::zero(), |acc, class| {
            acc + class.weighted_degree_sum * theta.powi(2 * steps as i64 * (top - class.content))
        }))
}

/// π-average over starting states of the long-scan chi-square.
pub fn long_scan_avg_chisq<S: Scalar>(family: GroupFamily, theta: &S, steps: usize) -> Result<S> {
    check_theta(theta)?;
    let top = family.longest_length() as i64;
    let q = S::one() / theta.clone();
    Ok(nontrivial_content_classes(family, &q)?
        .into_iter()
        .fold(S::zero(), |acc, class| {
            acc + scalar_from_u128::<S>(class.dimension_square_sum)
                * theta.powi(2 * steps as i64 * (top - class.content))
        }))
}

/// tr(K^m) for the long scan: Σ_λ d_λ² θ^{m(ℓ(w_0) − c_λ)}.
pub fn long_scan_power_trace<S: Scalar>(family: GroupFamily, theta: &S, power: usize) -> Result<S> {
    check_theta(theta)?;
    let top = family.longest_length() as i64;
    Ok(irreps(family)?.into_iter().fold(S::zero(), |acc, irrep| {
        acc + scalar_from_u128::<S>(irrep.dimension * irrep.dimension)
            * theta.powi(power as i64 * (top - irrep.content))
    }))
}

/// Dihedral long scan from the identity, as a rational function of θ.
pub fn dihedral_long_scan_chisq<S: Scalar>(n: usize, theta: &S, steps: usize) -> Result<S> {
    check_theta(theta)?;
    let (n, l) = (n as i64, steps as i64);
    // (θ² − 1)(θ^n − 1)/(θ − 1)² = (1 + θ)[n]_θ, finite at θ = 1.
    let ratio = (S::one() + theta.clone()) * q_integer(n as u64, theta);
    Ok(theta.powi((4 * l - 1) * n) + theta.powi((2 * l - 1) * n) * (ratio - S::one()) - theta.powi(2 * l * n))
}

/// Dihedral long scan averaged over π: θ^{4ℓn} + (2n − 2)θ^{2ℓn}.
pub fn dihedral_long_scan_avg_chisq<S: Scalar>(n: usize, theta: &S, steps: usize) -> Result<S> {
    check_theta(theta)?;
    let (n, l) = (n as i64, steps as i64);
    Ok(theta.powi(4 * l * n) + S::from_int(2 * n - 2) * theta.powi(2 * l * n))
}

/// Σ_S θ^{m(n − 1 − c(S(n)))} over standard tableaux S of the shape, grouped
/// by the corner holding n (d_{λ − corner} tableaux each).
fn short_scan_eigenvalue_sum<S: Scalar>(shape: &Partition, theta: &S, power: usize) -> S {
    let n = shape.size() as i64;
    shape
        .removable_corners()
        .into_iter()
        .fold(S::zero(), |acc, (row, col)| {
            let content = col as i64 - row as i64;
            let count = scalar_from_u128::<S>(shape.without_corner(row).dimension());
            acc + count * theta.powi(power as i64 * (n - 1 - content))
        })
}

fn check_symmetric_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LISTED_RANK {
        return Err(Error::Regime(format!(
            "short scan closed form needs 1 <= n <= {MAX_LISTED_RANK}"
        )));
    }
    Ok(())
}

/// Short scan (1, ..., n−1, n−1, ..., 1) on S_n, ℓ passes, from the identity
/// (weights t_λ) or averaged over π (weights d_λ).
pub fn short_scan_chisq_symmetric<S: Scalar>(n: usize, theta: &S, steps: usize, averaged: bool) -> Result<S> {
    check_theta(theta)?;
    check_symmetric_rank(n)?;
    let q = S::one() / theta.clone();
    Ok(partitions(n).into_iter().skip(1).fold(S::zero(), |acc, shape| {
        let weight = if averaged {
            scalar_from_u128(shape.dimension())
        } else {
            crate::spectral::irreps::symmetric_generic_degree(&shape, &q)
        };
        acc + weight * short_scan_eigenvalue_sum(&shape, theta, 2 * steps)
    }))
}

/// tr(K^m) for the short scan on S_n: Σ_λ d_λ Σ_S θ^{m(n − 1 − c(S(n)))}.
pub fn short_scan_power_trace<S: Scalar>(n: usize, theta: &S, power: usize) -> Result<S> {
    check_theta(theta)?;
    check_symmetric_rank(n)?;
    Ok(partitions(n).into_iter().fold(S::zero(), |acc, shape| {
        acc + scalar_from_u128::<S>(shape.dimension()) * short_scan_eigenvalue_sum(&shape, theta, power)
    }))
}

/// Random scan on (Z/2)^n from start x:
/// Σ_{λ≠0} θ^{2λ·x − |λ|} (1 − |λ|(1 + θ)/n)^{2ℓ}.
pub fn random_scan_chisq_hypercube<S: Scalar>(n: usize, theta: &S, steps: usize, start: &[bool]) -> Result<S> {
    check_theta(theta)?;
    if start.len() != n {
        return Err(Error::DimensionMismatch(start.len(), n));
    }
    let weight = start.iter().filter(|&&b| b).count();
    let nn = S::from_int(n as i64);
    Ok(hypercube_character_sum(n, weight, |k, j| {
        let kk = S::from_int(k as i64);
        let eig = S::one() - kk * (S::one() + theta.clone()) / nn.clone();
        theta.powi(2 * j as i64 - k as i64) * eig.powi(2 * steps as i64)
    }))
}

/// Random scan on the dihedral group of order 2n, ℓ steps, from the identity
/// or averaged over π. Eigenvalues are (θ ± 2cos(πλ/n)√θ − 1)/2 up to sign.
pub fn dihedral_random_scan_chisq(n: usize, theta: f64, steps: usize, averaged: bool) -> Result<f64> {
    check_theta(&theta)?;
    if n < 2 {
        return Err(Error::InvalidFamily(format!("dihedral({n})")));
    }
    let q = 1.0 / theta;
    let power = 2 * steps as i32;
    let mu = |lambda: usize| {
        let c = (std::f64::consts::PI * lambda as f64 / n as f64).cos();
        ((theta + 2.0 * c * theta.sqrt() - 1.0) / 2.0).powi(power)
    };
    let sign = theta.powi(power);
    if averaged {
        return Ok(sign + (1..n).map(|lambda| 2.0 * mu(lambda)).sum::<f64>());
    }
    let mut total = q.powi(n as i32) * sign;
    if n.is_multiple_of(2) {
        let signed = irreps(GroupFamily::Dihedral(n))?
            .into_iter()
            .find(|i| i.label == IrrepLabel::Plus)
            .map(|i| i.generic_degree_f64(q))
            .unwrap_or(0.0);
        total += 2.0 * signed * mu(n / 2);
    }
    for lambda in 1..n.div_ceil(2) {
        total += dihedral_two_dim_degree(n, lambda, q) * (mu(lambda) + mu(n - lambda));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn short_scan_two_elements() {
        for theta in [r(1, 2), r(1, 3)] {
            for l in 1..=3 {
                let value = short_scan_chisq_symmetric(2, &theta, l, false).unwrap();
                assert_eq!(value, theta.powi(4 * l as i64 - 1));
            }
        }
    }

    #[test]
    fn hypercube_single_coordinate() {
        let theta = r(2, 5);
        for l in 1..=4 {
            let v = random_scan_chisq_hypercube(1, &theta, l, &[false]).unwrap();
            assert_eq!(v, theta.powi(2 * l as i64) / theta.clone());
        }
    }

    #[test]
    fn hypercube_undeformed_walk() {
        let n = 5;
        let l = 3;
        let v = random_scan_chisq_hypercube(n, &r(1, 1), l, &[false; 5]).unwrap();
        let expected = (1..=n).fold(r(0, 1), |acc, k| {
            acc + binomial::<Rational>(n, k) * (r(1, 1) - r(2 * k as i64, n as i64)).powi(2 * l as i64)
        });
        assert_eq!(v, expected);
    }

    #[test]
    fn grouped_hypercube_sums_match_direct_sums() {
        let n = 6;
        let theta = r(1, 3);
        let start = [true, false, true, true, false, false];
        let mut direct_long = r(0, 1);
        let mut direct_random = r(0, 1);
        for mask in 1u32..1 << n {
            let k = mask.count_ones() as i64;
            let j = (0..n).filter(|&b| mask >> b & 1 == 1 && start[b]).count() as i64;
            direct_long += theta.powi(7 * k + 2 * j);
            let eig = r(1, 1) - r(k, n as i64) * (r(1, 1) + theta.clone());
            direct_random += theta.powi(2 * j - k) * eig.powi(4);
        }
        let x = GroupElement::bits(start.to_vec()).unwrap();
        assert_eq!(
            long_scan_chisq(GroupFamily::Hypercube(n), &theta, 2, &x).unwrap(),
            direct_long
        );
        assert_eq!(
            random_scan_chisq_hypercube(n, &theta, 2, &start).unwrap(),
            direct_random
        );
    }

    #[test]
    fn dihedral_display_formulas_match_representation_sums() {
        for n in 3..=10 {
            let family = GroupFamily::Dihedral(n);
            for theta in [r(1, 2), r(2, 3), r(1, 1)] {
                for l in 1..=3 {
                    let id = family.identity();
                    assert_eq!(
                        long_scan_chisq(family, &theta, l, &id).unwrap(),
                        dihedral_long_scan_chisq(n, &theta, l).unwrap()
                    );
                    assert_eq!(
                        long_scan_avg_chisq(family, &theta, l).unwrap(),
                        dihedral_long_scan_avg_chisq(n, &theta, l).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn dihedral_random_scan_undeformed_average() {
        // θ = 1: simple walk on a 2n-cycle with eigenvalues cos(πk/n).
        let n = 6;
        let l = 2;
        let value = dihedral_random_scan_chisq(n, 1.0, l, true).unwrap();
        let expected: f64 = (1..2 * n)
            .map(|k| (std::f64::consts::PI * k as f64 / n as f64).cos().powi(2 * l as i32))
            .sum();
        assert!((value - expected).abs() < 1e-12);
        let from_id = dihedral_random_scan_chisq(n, 1.0, l, false).unwrap();
        assert!((value - from_id).abs() < 1e-12);
    }

    #[test]
    fn non_identity_start_is_refused() {
        let family = GroupFamily::Symmetric(3);
        let s1 = family.generator(1).unwrap();
        assert_eq!(long_scan_chisq(family, &r(1, 2), 1, &s1), Err(Error::StartNotIdentity));
        assert!(short_scan_chisq_symmetric(MAX_LISTED_RANK + 1, &r(1, 2), 1, false).is_err());
    }

    #[test]
    fn trivial_limits() {
        // θ = 1 long scan is the identity kernel squared: K = T̃_{w0}² = 1.
        let family = GroupFamily::Symmetric(4);
        let theta = r(1, 1);
        let value = long_scan_avg_chisq(family, &theta, 1).unwrap();
        assert_eq!(value, r(23, 1));
        assert_eq!(long_scan_power_trace(family, &theta, 3).unwrap(), r(24, 1));
        assert_eq!(short_scan_power_trace(4, &r(1, 2), 0).unwrap(), r(24, 1));
    }
}
