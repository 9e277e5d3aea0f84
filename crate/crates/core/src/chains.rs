//! Metropolis kernels on an enumerated Coxeter group, the Mallows stationary
//! distribution, and exact evolution of distributions.
//!
//! Kernels built from generators keep their factorisation into single-site
//! steps, so evolution costs O(|W|) per step instead of O(|W|²).

use std::sync::Arc;

use rayon::prelude::*;

use crate::coxeter::{Group, GroupFamily};
use crate::error::{Error, Result};
use crate::hecke::{word_product, Basis, HeckeVector};
use crate::matrix::TransitionMatrix;
use crate::scalar::{check_theta, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<S> {
    family: GroupFamily,
    values: Vec<S>,
}

impl<S: Scalar> Distribution<S> {
    pub fn new(family: GroupFamily, values: Vec<S>) -> Self {
        Self { family, values }
    }

    pub fn point_mass(group: &Group, idx: usize) -> Self {
        let mut values = vec![S::zero(); group.len()];
        values[idx] = S::one();
        Self::new(group.family(), values)
    }

    pub fn uniform(group: &Group) -> Self {
        let p = S::one() / S::from_int(group.len() as i64);
        Self::new(group.family(), vec![p; group.len()])
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, idx: usize) -> &S {
        &self.values[idx]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> S {
        self.values.iter().fold(S::zero(), |acc, v| acc + v.clone())
    }

    /// Indices with nonzero mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&k| !self.values[k].is_zero()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Distribution<T> {
        Distribution::new(self.family, self.values.iter().map(f).collect())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family, other.family));
        }
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch(self.values.len(), other.values.len()));
        }
        Ok(())
    }
}

/// π(w) = q^{ℓ(w)} / P_W(q) with q = 1/θ.
pub fn stationary<S: Scalar>(group: &Group, theta: &S) -> Result<Distribution<S>> {
    check_theta(theta)?;
    let q = S::one() / theta.clone();
    let max_len = group.family().longest_length();
    let powers: Vec<S> = (0..=max_len as i64).map(|k| q.powi(k)).collect();
    let norm = group.poincare_by_enumeration(&q);
    let values = group
        .lengths()
        .iter()
        .map(|&l| powers[l].clone() / norm.clone())
        .collect();
    Ok(Distribution::new(group.family(), values))
}

/// How a kernel was assembled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelDescriptor {
    /// K_i
    Single(usize),
    /// (1/m) Σ_i K_i
    RandomScan,
    /// K_{i_1} applied first, then K_{i_2}, ...
    Scan(Vec<usize>),
    /// Supplied matrix with no generator factorisation.
    Custom(String),
}

/// One factor of a kernel: a convex combination Σ w_j K_{i_j}.
type Step<S> = Vec<(S, usize)>;

#[derive(Clone, Debug)]
pub struct Kernel<S> {
    group: Arc<Group>,
    theta: S,
    matrix: TransitionMatrix<S>,
    descriptor: KernelDescriptor,
    steps: Vec<Step<S>>,
}

/// SHORT recipe (1, ..., m, m, ..., 1) with m = rank.
pub fn short_recipe(family: GroupFamily) -> Vec<usize> {
    let m = family.rank();
    (1..=m).chain((1..=m).rev()).collect()
}

/// LONG recipe, a product of palindromes whose Hecke element is T̃_{w_0}².
///
/// Symmetric(n): blocks (k, ..., 1, 1, ..., k) for k = m down to 1. Other
/// families: a reduced word of w_0 followed by its reverse.
pub fn long_recipe(family: GroupFamily) -> Vec<usize> {
    match family {
        GroupFamily::Symmetric(_) => {
            let m = family.rank();
            (1..=m).rev().flat_map(|k| (1..=k).rev().chain(1..=k)).collect()
        }
        _ => {
            let word = family.longest_element().reduced_word();
            word.iter().copied().chain(word.iter().rev().copied()).collect()
        }
    }
}

impl<S: Scalar> Kernel<S> {
    fn from_steps(group: Arc<Group>, theta: S, descriptor: KernelDescriptor, steps: Vec<Step<S>>) -> Result<Self> {
        check_theta(&theta)?;
        for step in &steps {
            for &(_, i) in step {
                group.family().check_generator(i)?;
            }
        }
        let dim = group.len();
        let rows: Vec<Vec<S>> = (0..dim)
            .into_par_iter()
            .map(|x| {
                let mut row = vec![S::zero(); dim];
                row[x] = S::one();
                for step in &steps {
                    row = apply_step(&group, &theta, step, &row);
                }
                row
            })
            .collect();
        let matrix = TransitionMatrix::from_rows(rows)?;
        Ok(Self {
            group,
            theta,
            matrix,
            descriptor,
            steps,
        })
    }

    /// Single-site Metropolis kernel K_i.
    pub fn metropolis(group: Arc<Group>, i: usize, theta: S) -> Result<Self> {
        Self::from_steps(group, theta, KernelDescriptor::Single(i), vec![vec![(S::one(), i)]])
    }

    /// (1/m) Σ_i K_i.
    pub fn random_scan(group: Arc<Group>, theta: S) -> Result<Self> {
        let m = group.family().rank();
        let w = S::one() / S::from_int(m as i64);
        let step = (1..=m).map(|i| (w.clone(), i)).collect();
        Self::from_steps(group, theta, KernelDescriptor::RandomScan, vec![step])
    }

    /// Systematic scan; `recipe[0]` is applied first.
    pub fn scan(group: Arc<Group>, theta: S, recipe: &[usize]) -> Result<Self> {
        let steps = recipe.iter().map(|&i| vec![(S::one(), i)]).collect();
        Self::from_steps(group, theta, KernelDescriptor::Scan(recipe.to_vec()), steps)
    }

    pub fn short_scan(group: Arc<Group>, theta: S) -> Result<Self> {
        let recipe = short_recipe(group.family());
        Self::scan(group, theta, &recipe)
    }

    pub fn long_scan(group: Arc<Group>, theta: S) -> Result<Self> {
        let recipe = long_recipe(group.family());
        Self::scan(group, theta, &recipe)
    }

    /// Left multiplication by `h` on the T̃ basis, as a kernel.
    pub fn from_hecke(group: Arc<Group>, h: &HeckeVector<S>) -> Result<Self> {
        let matrix = crate::hecke::left_mult_matrix(&group, h)?;
        Ok(Self {
            group,
            theta: h.theta(),
            matrix,
            descriptor: KernelDescriptor::Custom("hecke element".into()),
            steps: Vec::new(),
        })
    }

    /// Wrap an arbitrary matrix; evolution then uses dense products.
    pub fn from_matrix(group: Arc<Group>, theta: S, matrix: TransitionMatrix<S>, label: &str) -> Result<Self> {
        if matrix.dim() != group.len() {
            return Err(Error::DimensionMismatch(matrix.dim(), group.len()));
        }
        Ok(Self {
            group,
            theta,
            matrix,
            descriptor: KernelDescriptor::Custom(label.into()),
            steps: Vec::new(),
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn family(&self) -> GroupFamily {
        self.group.family()
    }

    pub fn theta(&self) -> &S {
        &self.theta
    }

    pub fn matrix(&self) -> &TransitionMatrix<S> {
        &self.matrix
    }

    pub fn descriptor(&self) -> &KernelDescriptor {
        &self.descriptor
    }

    /// The Hecke element whose left multiplication matrix is this kernel,
    /// when the kernel was built from generators.
    pub fn hecke_element(&self) -> Option<HeckeVector<S>> {
        let family = self.family();
        let q = S::one() / self.theta.clone();
        match &self.descriptor {
            KernelDescriptor::Single(i) => HeckeVector::generator(family, *i, q, Basis::TildeT).ok(),
            KernelDescriptor::RandomScan => {
                let m = family.rank();
                let w = S::one() / S::from_int(m as i64);
                let mut acc = HeckeVector::zero(family, q.clone(), Basis::TildeT);
                for i in 1..=m {
                    let ti = HeckeVector::generator(family, i, q.clone(), Basis::TildeT).ok()?;
                    acc = acc.add(&ti.scale(&w)).ok()?;
                }
                Some(acc)
            }
            KernelDescriptor::Scan(recipe) => {
                // Applying K_{i_1} first corresponds to T̃_{i_k} ⋯ T̃_{i_1}.
                let word: Vec<usize> = recipe.iter().rev().copied().collect();
                word_product(family, &word, q, Basis::TildeT).ok()
            }
            KernelDescriptor::Custom(_) => None,
        }
    }

    /// start · K^steps.
    pub fn evolve(&self, start: &Distribution<S>, steps: usize) -> Result<Distribution<S>> {
        if start.family != self.family() {
            return Err(Error::FamilyMismatch(self.family(), start.family));
        }
        let mut values = start.values.clone();
        for _ in 0..steps {
            values = self.apply(&values)?;
        }
        Ok(Distribution::new(start.family, values))
    }

    /// Distributions after 0, 1, ..., steps applications.
    pub fn trajectory(&self, start: &Distribution<S>, steps: usize) -> Result<Vec<Distribution<S>>> {
        let mut out = vec![start.clone()];
        for _ in 0..steps {
            let next = self.evolve(out.last().unwrap(), 1)?;
            out.push(next);
        }
        Ok(out)
    }

    fn apply(&self, values: &[S]) -> Result<Vec<S>> {
        if self.steps.is_empty() {
            return self.matrix.left_apply(values);
        }
        let mut current = values.to_vec();
        for step in &self.steps {
            current = apply_step(&self.group, &self.theta, step, &current);
        }
        Ok(current)
    }

    /// tr(K^m), computed as Σ_x (δ_x K^m)(x).
    pub fn power_trace(&self, m: usize) -> Result<S> {
        let diagonal: Result<Vec<S>> = (0..self.group.len())
            .into_par_iter()
            .map(|x| {
                let row = self.evolve(&Distribution::point_mass(&self.group, x), m)?;
                Ok(row.values[x].clone())
            })
            .collect();
        Ok(diagonal?.into_iter().fold(S::zero(), |acc, v| acc + v))
    }

    /// Σ_x π(x) ‖K^ℓ(x, ·)/π − 1‖².
    pub fn averaged_chi_square(&self, pi: &Distribution<S>, steps: usize) -> Result<S> {
        let terms: Result<Vec<S>> = (0..self.group.len())
            .into_par_iter()
            .map(|x| {
                let row = self.evolve(&Distribution::point_mass(&self.group, x), steps)?;
                Ok(pi.values[x].clone() * chi_square(&row, pi)?)
            })
            .collect();
        Ok(terms?.into_iter().fold(S::zero(), |acc, v| acc + v))
    }
}

/// Row vector times Σ w_j K_{i_j}.
fn apply_step<S: Scalar>(group: &Group, theta: &S, step: &[(S, usize)], values: &[S]) -> Vec<S> {
    let stay = S::one() - theta.clone();
    let mut out = vec![S::zero(); values.len()];
    for (x, p) in values.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let lx = group.length_at(x);
        for (weight, i) in step {
            let mass = p.clone() * weight.clone();
            let y = group.left_neighbor(*i, x);
            if group.length_at(y) > lx {
                out[y] = out[y].clone() + mass;
            } else {
                out[x] = out[x].clone() + mass.clone() * stay.clone();
                out[y] = out[y].clone() + mass * theta.clone();
            }
        }
    }
    out
}

/// ½ Σ |p − π|.
pub fn tv_distance<S: Scalar>(p: &Distribution<S>, pi: &Distribution<S>) -> Result<S> {
    p.check_same(pi)?;
    let total = p
        .values
        .iter()
        .zip(&pi.values)
        .fold(S::zero(), |acc, (a, b)| acc + (a.clone() - b.clone()).abs_value());
    Ok(total / S::from_int(2))
}

/// max_A |p(A) − π(A)|, attained at A = {p > π}.
pub fn tv_distance_by_sets<S: Scalar>(p: &Distribution<S>, pi: &Distribution<S>) -> Result<S> {
    p.check_same(pi)?;
    Ok(p.values
        .iter()
        .zip(&pi.values)
        .filter(|(a, b)| a > b)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() - b.clone()))
}

/// ‖p/π − 1‖² in L²(π).
pub fn chi_square<S: Scalar>(p: &Distribution<S>, pi: &Distribution<S>) -> Result<S> {
    p.check_same(pi)?;
    let mut acc = S::zero();
    for (k, (a, b)) in p.values.iter().zip(&pi.values).enumerate() {
        if b.is_zero() {
            return Err(Error::ZeroStationaryEntry(k));
        }
        let diff = a.clone() - b.clone();
        acc = acc + diff.clone() * diff / b.clone();
    }
    Ok(acc)
}

/// π(x) K(x, y) = π(y) K(y, x) for every pair.
pub fn check_reversible<S: Scalar>(kernel: &Kernel<S>, pi: &Distribution<S>) -> bool {
    let m = kernel.matrix();
    let dim = m.dim();
    if pi.len() != dim {
        return false;
    }
    (0..dim).into_par_iter().all(|x| {
        (x + 1..dim).all(|y| pi.values[x].clone() * m.get(x, y).clone() == pi.values[y].clone() * m.get(y, x).clone())
    })
}

/// π K = π.
pub fn is_stationary<S: Scalar>(kernel: &Kernel<S>, pi: &Distribution<S>) -> Result<bool> {
    Ok(kernel.evolve(pi, 1)?.values == pi.values)
}
