//! Exact sampling from the Mallows distribution π(w) ∝ q^{ℓ(w)}, moments of
//! the length statistic, and simulated lower-bound witnesses.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chains::{stationary, tv_distance, Distribution, Kernel};
use crate::coxeter::{Group, GroupElement, GroupFamily};
use crate::error::{Error, Result};
use crate::scalar::{check_theta, q_integer, Rational, Scalar};
use crate::spectral::HypercubeScan;

/// Seeded deterministic stream of uniform variates.
pub type RandomSource = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> RandomSource {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Slot probabilities when inserting symbol i into a word of i − 1 smaller
/// symbols: slot k (1-based, from the left) adds i − k inversions and has
/// probability θ^{k−1}/[i]_θ = q^{i−k}/[i]_q.
pub fn insertion_probabilities<S: Scalar>(i: usize, theta: &S) -> Vec<S> {
    let norm = q_integer(i as u64, theta);
    (0..i).map(|k| theta.powi(k as i64) / norm.clone()).collect()
}

fn pick(rng: &mut RandomSource, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.gen::<f64>() * total;
    for (k, w) in weights.iter().enumerate() {
        if u < *w {
            return k;
        }
        u -= w;
    }
    weights.len() - 1
}

/// One exact draw from π.
pub fn mallows_sample(family: GroupFamily, theta: f64, rng: &mut RandomSource) -> Result<GroupElement> {
    check_theta(&theta)?;
    let family = family.validated()?;
    match family {
        GroupFamily::Symmetric(n) => {
            let mut word: Vec<usize> = Vec::with_capacity(n);
            for i in 1..=n {
                let slot = pick(rng, &insertion_probabilities(i, &theta));
                word.insert(slot, i);
            }
            GroupElement::permutation(word)
        }
        GroupFamily::Hypercube(n) => {
            let p_one = 1.0 / (1.0 + theta);
            GroupElement::bits((0..n).map(|_| rng.gen::<f64>() < p_one).collect())
        }
        GroupFamily::Dihedral(n) => {
            let elements: Vec<GroupElement> = (0..n)
                .flat_map(|k| [false, true].map(|f| GroupElement::dihedral(n, k, f)))
                .collect::<Result<_>>()?;
            let weights: Vec<f64> = elements.iter().map(|w| theta.powi(-(w.length() as i32))).collect();
            Ok(elements[pick(rng, &weights)].clone())
        }
    }
}

/// `count` draws from one seeded stream.
pub fn mallows_samples(family: GroupFamily, theta: f64, count: usize, seed: u64) -> Result<Vec<GroupElement>> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| mallows_sample(family, theta, &mut rng)).collect()
}

/// Law of the insertion sampler on S_n, by expanding every insertion path.
pub fn insertion_distribution<S: Scalar>(group: &Group, theta: &S) -> Result<Distribution<S>> {
    check_theta(theta)?;
    let GroupFamily::Symmetric(n) = group.family() else {
        return Err(Error::Regime(
            "insertion sampler is defined on the symmetric group".into(),
        ));
    };
    let mut paths: Vec<(Vec<usize>, S)> = vec![(Vec::new(), S::one())];
    for i in 1..=n {
        let probs = insertion_probabilities(i, theta);
        paths = paths
            .into_iter()
            .flat_map(|(word, p)| {
                probs.iter().enumerate().map(move |(slot, w)| {
                    let mut next = word.clone();
                    next.insert(slot, i);
                    (next, p.clone() * w.clone())
                })
            })
            .collect();
    }
    let mut values = vec![S::zero(); group.len()];
    for (word, p) in paths {
        let idx = group
            .index_of(&GroupElement::permutation(word)?)
            .expect("enumerated permutation");
        values[idx] = values[idx].clone() + p;
    }
    Ok(Distribution::new(group.family(), values))
}

/// Empirical frequencies of samples over the enumerated group.
pub fn empirical_distribution(group: &Group, samples: &[GroupElement]) -> Result<Distribution<f64>> {
    let mut counts = vec![0.0; group.len()];
    for w in samples {
        let idx = group
            .index_of(w)
            .ok_or_else(|| Error::FamilyMismatch(group.family(), w.family()))?;
        counts[idx] += 1.0;
    }
    let total = samples.len().max(1) as f64;
    Ok(Distribution::new(
        group.family(),
        counts.into_iter().map(|c| c / total).collect(),
    ))
}

/// TV distance between the empirical law of `samples` and π.
pub fn empirical_tv(group: &Group, samples: &[GroupElement], theta: &Rational) -> Result<f64> {
    let empirical = empirical_distribution(group, samples)?;
    let pi = stationary(group, theta)?.map(|p| p.as_f64());
    tv_distance(&empirical, &pi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport<S> {
    pub mean: S,
    pub variance: S,
}

/// Mean and variance of ℓ(w) under π, from the degrees d_i:
/// E = Σ [q/(1−q) − d_i q^{d_i}/(1−q^{d_i})],
/// Var = Σ [q/(1−q)² − d_i² q^{d_i}/(1−q^{d_i})²],
/// with the q = 1 limits Σ (d_i − 1)/2 and Σ (d_i² − 1)/12.
pub fn length_moments<S: Scalar>(family: GroupFamily, theta: &S) -> Result<MomentReport<S>> {
    check_theta(theta)?;
    let family = family.validated()?;
    let degrees = family.degrees();
    if *theta == S::one() {
        let mean = degrees
            .iter()
            .fold(S::zero(), |acc, &d| acc + S::from_ratio(d as i64 - 1, 2));
        let variance = degrees
            .iter()
            .fold(S::zero(), |acc, &d| acc + S::from_ratio((d * d) as i64 - 1, 12));
        return Ok(MomentReport { mean, variance });
    }
    let q = S::one() / theta.clone();
    let one = S::one();
    let base = q.clone() / (one.clone() - q.clone());
    let base_var = q.clone() / ((one.clone() - q.clone()) * (one.clone() - q.clone()));
    let mut mean = S::zero();
    let mut variance = S::zero();
    for &d in &degrees {
        let dd = S::from_int(d as i64);
        let qd = q.powi(d as i64);
        let denom = one.clone() - qd.clone();
        mean = mean + base.clone() - dd.clone() * qd.clone() / denom.clone();
        variance = variance + base_var.clone() - dd.clone() * dd * qd / (denom.clone() * denom);
    }
    Ok(MomentReport { mean, variance })
}

/// Mean and variance of ℓ(w) under π by summing over the enumeration.
pub fn length_moments_by_enumeration<S: Scalar>(group: &Group, theta: &S) -> Result<MomentReport<S>> {
    let pi = stationary(group, theta)?;
    let (mut m1, mut m2) = (S::zero(), S::zero());
    for (k, p) in pi.values().iter().enumerate() {
        let l = S::from_int(group.length_at(k) as i64);
        m1 = m1 + p.clone() * l.clone();
        m2 = m2 + p.clone() * l.clone() * l;
    }
    Ok(MomentReport {
        variance: m2 - m1.clone() * m1.clone(),
        mean: m1,
    })
}

/// T(y) = (n/√θ)(1 − |y|(1 + θ)/n); mean 0 and variance n under π.
pub fn hypercube_test_statistic(y: &[bool], theta: f64) -> f64 {
    let n = y.len() as f64;
    let weight = y.iter().filter(|&&b| b).count() as f64;
    n / theta.sqrt() * (1.0 - weight * (1.0 + theta) / n)
}

/// Predicted mean and variance of T after ℓ steps from 0.
pub fn hypercube_statistic_moments(n: usize, theta: f64, steps: usize, scan: HypercubeScan) -> (f64, f64) {
    let nf = n as f64;
    let l = steps as i32;
    match scan {
        HypercubeScan::Random => {
            let a = 1.0 - (1.0 + theta) / nf;
            let b = 1.0 - 2.0 * (1.0 + theta) / nf;
            let mean = nf / theta.sqrt() * a.powi(l);
            let variance = nf + nf * (1.0 - theta) / theta * a.powi(l) + nf * (nf - 1.0) / theta * b.powi(l)
                - nf * nf / theta * a.powi(2 * l);
            (mean, variance)
        }
        HypercubeScan::Systematic => {
            let t2 = theta.powi(2 * l);
            let mean = nf / theta.sqrt() * t2;
            let variance = nf * (1.0 + (1.0 - theta) / theta * t2 - t2 * t2 / theta);
            (mean, variance)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub n: usize,
    pub theta: f64,
    pub steps: usize,
    pub samples: usize,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub predicted_mean: f64,
    pub predicted_variance: f64,
    /// (empirical − predicted mean) / standard error.
    pub z_score: f64,
}

fn metropolis_flip(bit: &mut bool, theta: f64, rng: &mut RandomSource) {
    if !*bit {
        *bit = true;
    } else if rng.gen::<f64>() < theta {
        *bit = false;
    }
}

/// Runs `samples` independent copies of the hypercube chain from 0 for ℓ steps
/// (random scan) or ℓ passes (systematic scan) and compares the statistic T
/// with its predicted moments.
pub fn hypercube_witness(
    n: usize,
    theta: f64,
    steps: usize,
    scan: HypercubeScan,
    samples: usize,
    rng: &mut RandomSource,
) -> Result<WitnessReport> {
    check_theta(&theta)?;
    if n == 0 || samples < 2 {
        return Err(Error::Regime("witness needs n >= 1 and at least two samples".into()));
    }
    let mut values = Vec::with_capacity(samples);
    let mut state = vec![false; n];
    for _ in 0..samples {
        state.iter_mut().for_each(|b| *b = false);
        match scan {
            HypercubeScan::Random => {
                for _ in 0..steps {
                    let i = rng.gen_range(0..n);
                    metropolis_flip(&mut state[i], theta, rng);
                }
            }
            HypercubeScan::Systematic => {
                for _ in 0..steps {
                    for i in (0..n).chain((0..n).rev()) {
                        metropolis_flip(&mut state[i], theta, rng);
                    }
                }
            }
        }
        values.push(hypercube_test_statistic(&state, theta));
    }
    let count = samples as f64;
    let mean = values.iter().sum::<f64>() / count;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
    let (predicted_mean, predicted_variance) = hypercube_statistic_moments(n, theta, steps, scan);
    let se = (variance.max(predicted_variance).max(f64::MIN_POSITIVE) / count).sqrt();
    Ok(WitnessReport {
        n,
        theta,
        steps,
        samples,
        empirical_mean: mean,
        empirical_variance: variance,
        predicted_mean,
        predicted_variance,
        z_score: (mean - predicted_mean) / se,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupportReport {
    pub n: usize,
    pub passes: usize,
    /// 2ℓ(n − 1): one short-scan pass moves the length by at most 2(n − 1).
    pub length_cap: usize,
    pub max_reached_length: usize,
    pub confined: bool,
    /// π(A) for A = {ℓ(w) > cap}, a lower bound on the TV distance.
    pub pi_outside: Rational,
    /// Chebyshev lower bound on π(A) from the length moments, when informative.
    pub chebyshev_lower_bound: Option<f64>,
    pub tv: Rational,
}

/// Evolves ℓ short-scan passes from the identity on S_n exactly and checks
/// that every reachable state has length at most 2ℓ(n − 1).
pub fn short_scan_support_witness(n: usize, theta: &Rational, passes: usize) -> Result<SupportReport> {
    let group = Arc::new(Group::enumerate(GroupFamily::symmetric(n)?)?);
    let kernel = Kernel::short_scan(group.clone(), theta.clone())?;
    let start = Distribution::point_mass(&group, group.identity_index());
    let law = kernel.evolve(&start, passes)?;
    let cap = 2 * passes * (n - 1);
    let max_reached = law.support().into_iter().map(|k| group.length_at(k)).max().unwrap_or(0);
    let pi = stationary(&group, theta)?;
    let pi_outside = (0..group.len())
        .filter(|&k| group.length_at(k) > cap)
        .fold(Rational::from_int(0), |acc, k| acc + pi.get(k).clone());
    let moments = length_moments(group.family(), theta)?;
    let gap = moments.mean.as_f64() - cap as f64;
    let chebyshev_lower_bound = (gap > 0.0).then(|| 1.0 - moments.variance.as_f64() / (gap * gap));
    Ok(SupportReport {
        n,
        passes,
        length_cap: cap,
        max_reached_length: max_reached,
        confined: max_reached <= cap,
        pi_outside,
        chebyshev_lower_bound,
        tv: tv_distance(&law, &pi)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn insertion_probabilities_sum_to_one() {
        for theta in [r(1, 2), r(1, 3), r(1, 1), r(9, 10)] {
            for i in 1..=8 {
                let total = insertion_probabilities(i, &theta)
                    .into_iter()
                    .fold(r(0, 1), |acc, p| acc + p);
                assert_eq!(total, r(1, 1));
            }
        }
    }

    #[test]
    fn insertion_sampler_law_is_stationary() {
        for n in 2..=5 {
            let group = Group::enumerate(GroupFamily::Symmetric(n)).unwrap();
            for theta in [r(1, 2), r(1, 1), r(2, 7)] {
                assert_eq!(
                    insertion_distribution(&group, &theta).unwrap(),
                    stationary(&group, &theta).unwrap()
                );
            }
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        for family in [
            GroupFamily::Symmetric(6),
            GroupFamily::Hypercube(5),
            GroupFamily::Dihedral(7),
        ] {
            let a = mallows_samples(family, 0.4, 200, 11).unwrap();
            let b = mallows_samples(family, 0.4, 200, 11).unwrap();
            let c = mallows_samples(family, 0.4, 200, 12).unwrap();
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn empirical_laws_are_close() {
        for family in [
            GroupFamily::Symmetric(4),
            GroupFamily::Hypercube(4),
            GroupFamily::Dihedral(5),
        ] {
            let group = Group::enumerate(family).unwrap();
            let samples = mallows_samples(family, 0.5, 40_000, 3).unwrap();
            let tv = empirical_tv(&group, &samples, &r(1, 2)).unwrap();
            assert!(tv < 0.02, "{family} tv={tv}");
        }
    }

    #[test]
    fn moments_match_enumeration() {
        let families = [
            GroupFamily::Symmetric(2),
            GroupFamily::Symmetric(5),
            GroupFamily::Hypercube(6),
            GroupFamily::Dihedral(5),
            GroupFamily::Dihedral(8),
        ];
        for family in families {
            let group = Group::enumerate(family).unwrap();
            for theta in [r(1, 2), r(1, 1), r(9, 10)] {
                assert_eq!(
                    length_moments(family, &theta).unwrap(),
                    length_moments_by_enumeration(&group, &theta).unwrap(),
                    "{family}"
                );
            }
        }
    }

    #[test]
    fn moment_examples() {
        let n = 7;
        let q = r(3, 1);
        let m = length_moments(GroupFamily::Hypercube(n), &(r(1, 1) / q.clone())).unwrap();
        assert_eq!(m.mean, r(n as i64, 1) * q.clone() / (r(1, 1) + q));
        let s = length_moments(GroupFamily::Symmetric(6), &r(1, 1)).unwrap();
        assert_eq!(s.mean, r(15, 2));
    }

    #[test]
    fn statistic_examples() {
        assert!((hypercube_test_statistic(&[false; 8], 0.25) - 16.0).abs() < 1e-12);
        // E_π T = 0 and Var_π T = n, exactly over the product measure.
        let n = 6;
        let theta = 0.3f64;
        let p = 1.0 / (1.0 + theta);
        let (mut mean, mut second) = (0.0, 0.0);
        for mask in 0u32..1 << n {
            let bits: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
            let k = mask.count_ones() as i32;
            let weight = p.powi(k) * (1.0 - p).powi(n - k);
            let t = hypercube_test_statistic(&bits, theta);
            mean += weight * t;
            second += weight * t * t;
        }
        assert!(mean.abs() < 1e-10);
        assert!((second - n as f64).abs() < 1e-10);
    }

    #[test]
    fn predicted_moments_match_exact_evolution() {
        use crate::chains::Kernel;
        let n = 5;
        let theta = r(1, 2);
        let group = Arc::new(Group::enumerate(GroupFamily::Hypercube(n)).unwrap());
        for (scan, kernel) in [
            (
                HypercubeScan::Random,
                Kernel::random_scan(group.clone(), theta.clone()).unwrap(),
            ),
            (
                HypercubeScan::Systematic,
                Kernel::short_scan(group.clone(), theta.clone()).unwrap(),
            ),
        ] {
            for steps in 0..4 {
                let law = kernel
                    .evolve(&Distribution::point_mass(&group, group.identity_index()), steps)
                    .unwrap();
                let (mut mean, mut second) = (0.0, 0.0);
                for (k, p) in law.values().iter().enumerate() {
                    let bits = group.element(k).as_bits().unwrap();
                    let t = hypercube_test_statistic(bits, 0.5);
                    mean += p.as_f64() * t;
                    second += p.as_f64() * t * t;
                }
                let (pm, pv) = hypercube_statistic_moments(n, 0.5, steps, scan);
                assert!((mean - pm).abs() < 1e-10, "{scan:?} {steps}");
                assert!((second - mean * mean - pv).abs() < 1e-10, "{scan:?} {steps}");
            }
        }
    }

    #[test]
    fn support_confinement() {
        for n in 3..=5 {
            for passes in 0..=2 {
                let report = short_scan_support_witness(n, &r(1, 2), passes).unwrap();
                assert!(report.confined, "n={n} passes={passes}");
                assert!(report.tv >= report.pi_outside);
            }
        }
    }

    #[test]
    fn witness_runs() {
        let mut rng = rng_from_seed(5);
        let report = hypercube_witness(10, 0.5, 3, HypercubeScan::Systematic, 2000, &mut rng).unwrap();
        assert!(report.z_score.abs() < 4.0);
        assert!(hypercube_witness(0, 0.5, 1, HypercubeScan::Random, 10, &mut rng).is_err());
    }
}
