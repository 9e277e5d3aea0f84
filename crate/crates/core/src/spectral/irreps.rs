//! Irreducible representations of the Hecke algebra for the three families:
//! dimensions d_λ, content constants c_λ and generic degrees t_λ(q).
//!
//! The central element T̃_{w_0}² acts on representation λ by θ^{ℓ(w_0) − c_λ},
//! so the trivial representation has c = ℓ(w_0).

use crate::coxeter::GroupFamily;
use crate::error::{Error, Result};
use crate::scalar::{q_factorial, q_integer, Scalar};
use crate::spectral::partition::{partitions, Partition};

/// Largest rank for which irreducibles are listed one by one.
pub const MAX_LISTED_RANK: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrrepLabel {
    Partition(Partition),
    /// Character x ↦ (−1)^{λ·x} of (Z/2)^n.
    Character(Vec<bool>),
    Trivial,
    Sign,
    /// One-dimensional, T_1 ↦ q and T_2 ↦ −1 (n even only).
    Plus,
    /// One-dimensional, T_1 ↦ −1 and T_2 ↦ q (n even only).
    Minus,
    /// Two-dimensional, rotation angle 2πλ/n with 0 < λ < n/2.
    TwoDim(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrrepData {
    pub family: GroupFamily,
    pub label: IrrepLabel,
    pub dimension: u128,
    pub content: i64,
}

impl IrrepData {
    pub fn is_trivial(&self) -> bool {
        self.content == self.family.longest_length() as i64
    }

    /// Exact generic degree. `None` for the two-dimensional dihedral
    /// representations, whose degrees involve cos(2πλ/n).
    pub fn generic_degree<S: Scalar>(&self, q: &S) -> Option<S> {
        match &self.label {
            IrrepLabel::Partition(shape) => Some(symmetric_generic_degree(shape, q)),
            IrrepLabel::Character(bits) => Some(q.powi(bits.iter().filter(|&&b| b).count() as i64)),
            IrrepLabel::Trivial => Some(S::one()),
            IrrepLabel::Sign => Some(q.powi(self.family.size() as i64)),
            IrrepLabel::Plus | IrrepLabel::Minus => Some(dihedral_signed_degree(self.family.size(), q)),
            IrrepLabel::TwoDim(_) => None,
        }
    }

    pub fn generic_degree_f64(&self, q: f64) -> f64 {
        match &self.label {
            IrrepLabel::TwoDim(lambda) => dihedral_two_dim_degree(self.family.size(), *lambda, q),
            _ => self.generic_degree(&q).expect("rational generic degree"),
        }
    }
}

/// t_λ = q^{n(λ)} [n]_q! / ∏ [h_b]_q.
pub fn symmetric_generic_degree<S: Scalar>(shape: &Partition, q: &S) -> S {
    let hooks = shape
        .hook_lengths()
        .into_iter()
        .fold(S::one(), |acc, h| acc * q_integer(h as u64, q));
    q.powi(shape.n_lambda() as i64) * q_factorial(shape.size() as u64, q) / hooks
}

/// 2q(q^n − 1)/(n(q² − 1)), with value 1 at q = 1.
fn dihedral_signed_degree<S: Scalar>(n: usize, q: &S) -> S {
    // (q^n − 1)/(q² − 1) = [n/2]_{q²} for even n, avoiding the q = 1 pole.
    let q2 = q.clone() * q.clone();
    S::from_int(2) * q.clone() * q_integer((n / 2) as u64, &q2) / S::from_int(n as i64)
}

/// Generic degree of the two-dimensional representation λ of Dihedral(n):
/// (1/n)[n]_q q(q+1)(2 − 2cos(2πλ/n)) / (q² − 2q cos(2πλ/n) + 1).
pub fn dihedral_two_dim_degree(n: usize, lambda: usize, q: f64) -> f64 {
    let u = 2.0 * (2.0 * std::f64::consts::PI * lambda as f64 / n as f64).cos();
    q_integer(n as u64, &q) * q * (q + 1.0) * (2.0 - u) / (n as f64 * (q * q - q * u + 1.0))
}

/// Σ_{0<λ<n/2} t_λ over the two-dimensional representations of Dihedral(n), exact.
///
/// Summing (2 − u)/(q² + 1 − qu), u = ξ + ξ^{-1}, over all n-th roots of
/// unity ξ uses Σ_ξ 1/((q − ξ)(q − ξ^{-1})) = n(1 + q^n)/((q^n − 1)(q² − 1)).
/// The ξ = 1 term vanishes, λ and n − λ pair up, and for even n the
/// ξ = −1 term is removed.
pub fn dihedral_two_dim_degree_sum<S: Scalar>(n: usize, q: &S) -> S {
    let count = ((n - 1) / 2) as i64;
    if *q == S::one() {
        return S::from_int(2 * count);
    }
    let one = S::one();
    let nn = S::from_int(n as i64);
    let qn = q.powi(n as i64);
    let q2 = q.clone() * q.clone();
    let root_sum = nn.clone() * (one.clone() + qn.clone()) / ((qn - one.clone()) * (q2 - one.clone()));
    let qm1 = q.clone() - one.clone();
    let all = nn.clone() / q.clone() - qm1.clone() * qm1 / q.clone() * root_sum;
    let half = if n.is_multiple_of(2) {
        let at_minus_one = S::from_int(4) / ((q.clone() + one.clone()) * (q.clone() + one.clone()));
        (all - at_minus_one) / S::from_int(2)
    } else {
        all / S::from_int(2)
    };
    let prefactor = q_integer(n as u64, q) * q.clone() * (q.clone() + one) / nn;
    prefactor * half
}

/// Complete list of irreducibles.
pub fn irreps(family: GroupFamily) -> Result<Vec<IrrepData>> {
    let family = family.validated()?;
    let data = |label, dimension, content| IrrepData {
        family,
        label,
        dimension,
        content,
    };
    match family {
        GroupFamily::Symmetric(n) => {
            if n > MAX_LISTED_RANK {
                return Err(Error::Regime(format!(
                    "symmetric irreducibles listed for n <= {MAX_LISTED_RANK}"
                )));
            }
            Ok(partitions(n)
                .into_iter()
                .map(|shape| {
                    let (d, c) = (shape.dimension(), shape.content_sum());
                    data(IrrepLabel::Partition(shape), d, c)
                })
                .collect())
        }
        GroupFamily::Hypercube(n) => {
            if n > MAX_LISTED_RANK {
                return Err(Error::Regime(format!(
                    "hypercube characters listed for n <= {MAX_LISTED_RANK}"
                )));
            }
            Ok((0..1u64 << n)
                .map(|mask| {
                    let bits: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
                    let weight = bits.iter().filter(|&&b| b).count() as i64;
                    data(IrrepLabel::Character(bits), 1, n as i64 - 2 * weight)
                })
                .collect())
        }
        GroupFamily::Dihedral(n) => {
            let n_i = n as i64;
            let mut out = vec![data(IrrepLabel::Trivial, 1, n_i), data(IrrepLabel::Sign, 1, -n_i)];
            if n % 2 == 0 {
                out.push(data(IrrepLabel::Plus, 1, 0));
                out.push(data(IrrepLabel::Minus, 1, 0));
            }
            out.extend((1..n.div_ceil(2)).map(|lambda| data(IrrepLabel::TwoDim(lambda), 2, 0)));
            Ok(out)
        }
    }
}

/// Irreducibles sharing one content constant, with exact aggregates.
#[derive(Clone, Debug, PartialEq)]
pub struct ContentClass<S> {
    pub content: i64,
    /// Σ d_λ².
    pub dimension_square_sum: u128,
    /// Σ d_λ t_λ(q).
    pub weighted_degree_sum: S,
}

/// Irreducibles grouped by content, trivial representation excluded.
pub fn nontrivial_content_classes<S: Scalar>(family: GroupFamily, q: &S) -> Result<Vec<ContentClass<S>>> {
    let mut classes: Vec<ContentClass<S>> = Vec::new();
    let mut two_dim_seen = false;
    for irrep in irreps(family)? {
        if irrep.is_trivial() {
            continue;
        }
        let weighted = match irrep.generic_degree(q) {
            Some(t) => t * scalar_from_u128(irrep.dimension),
            None if two_dim_seen => S::zero(),
            None => {
                two_dim_seen = true;
                S::from_int(2) * dihedral_two_dim_degree_sum(family.size(), q)
            }
        };
        let d2 = irrep.dimension * irrep.dimension;
        match classes.iter_mut().find(|c| c.content == irrep.content) {
            Some(class) => {
                class.dimension_square_sum += d2;
                class.weighted_degree_sum = class.weighted_degree_sum.clone() + weighted;
            }
            None => classes.push(ContentClass {
                content: irrep.content,
                dimension_square_sum: d2,
                weighted_degree_sum: weighted,
            }),
        }
    }
    Ok(classes)
}

pub(crate) fn scalar_from_u128<S: Scalar>(value: u128) -> S {
    let base = S::from_int(1 << 32);
    let mut acc = S::zero();
    for shift in [96u32, 64, 32, 0] {
        acc = acc * base.clone() + S::from_int(((value >> shift) & 0xffff_ffff) as i64);
    }
    acc
}
