//! The three families of finite Coxeter groups handled by the crate:
//! symmetric groups S_n, hypercubes (Z/2Z)^n and dihedral groups of order 2n.
//!
//! Generators are indexed from 1. For S_n, s_i = (i, i+1) acting on values,
//! so `s_i * w` swaps the symbols i and i+1 in the one-line notation of w.
//! For the hypercube s_i flips coordinate i. The dihedral group is realized
//! as rotations r^k and reflections r^k f of an n-gon with s_1 = f, s_2 = r f.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{q_integer, Scalar};

/// Default bound on the order of a group that may be enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupFamily {
    Symmetric(usize),
    Hypercube(usize),
    Dihedral(usize),
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupFamily::Hypercube(n) => write!(f, "hypercube({n})"),
            GroupFamily::Dihedral(n) => write!(f, "dihedral({n})"),
        }
    }
}

impl GroupFamily {
    pub fn symmetric(n: usize) -> Result<Self> {
        Self::Symmetric(n).validated()
    }

    pub fn hypercube(n: usize) -> Result<Self> {
        Self::Hypercube(n).validated()
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        Self::Dihedral(n).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            GroupFamily::Symmetric(n) => n >= 2,
            GroupFamily::Hypercube(n) => n >= 1,
            GroupFamily::Dihedral(n) => n >= 3,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidFamily(format!(
                "{self}: symmetric needs n>=2, hypercube n>=1, dihedral n>=3"
            )))
        }
    }

    /// The size parameter n.
    pub fn size(&self) -> usize {
        match *self {
            GroupFamily::Symmetric(n) | GroupFamily::Hypercube(n) | GroupFamily::Dihedral(n) => n,
        }
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        match *self {
            GroupFamily::Symmetric(n) => n - 1,
            GroupFamily::Hypercube(n) => n,
            GroupFamily::Dihedral(_) => 2,
        }
    }

    /// Group order; saturates at `u128::MAX` for absurd sizes.
    pub fn order(&self) -> u128 {
        match *self {
            GroupFamily::Symmetric(n) => (1..=n as u128)
                .try_fold(1u128, |acc, k| acc.checked_mul(k))
                .unwrap_or(u128::MAX),
            GroupFamily::Hypercube(n) => {
                if n >= 128 {
                    u128::MAX
                } else {
                    1u128 << n
                }
            }
            GroupFamily::Dihedral(n) => 2 * n as u128,
        }
    }

    /// Degrees d_i of the reflection group, so that P_W(q) = prod [d_i]_q.
    pub fn degrees(&self) -> Vec<u64> {
        match *self {
            GroupFamily::Symmetric(n) => (2..=n as u64).collect(),
            GroupFamily::Hypercube(n) => vec![2; n],
            GroupFamily::Dihedral(n) => vec![2, n as u64],
        }
    }

    /// Poincaré polynomial evaluated through the degree product.
    pub fn poincare_polynomial<S: Scalar>(&self, q: &S) -> S {
        self.degrees()
            .into_iter()
            .fold(S::one(), |acc, d| acc * q_integer(d, q))
    }

    /// Length of the longest element.
    pub fn longest_length(&self) -> usize {
        match *self {
            GroupFamily::Symmetric(n) => n * (n - 1) / 2,
            GroupFamily::Hypercube(n) | GroupFamily::Dihedral(n) => n,
        }
    }

    pub fn identity(&self) -> GroupElement {
        let payload = match *self {
            GroupFamily::Symmetric(n) => Payload::Permutation((1..=n).collect()),
            GroupFamily::Hypercube(n) => Payload::Bits(vec![false; n]),
            GroupFamily::Dihedral(_) => Payload::Dihedral {
                rotation: 0,
                reflection: false,
            },
        };
        GroupElement { family: *self, payload }
    }

    pub fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::InvalidGenerator {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// The simple reflection s_i.
    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        self.check_generator(i)?;
        Ok(self.identity().left_mul_generator(i))
    }

    /// The unique element of maximal length.
    pub fn longest_element(&self) -> GroupElement {
        let payload = match *self {
            GroupFamily::Symmetric(n) => Payload::Permutation((1..=n).rev().collect()),
            GroupFamily::Hypercube(n) => Payload::Bits(vec![true; n]),
            GroupFamily::Dihedral(n) => {
                if n % 2 == 0 {
                    Payload::Dihedral {
                        rotation: n / 2,
                        reflection: false,
                    }
                } else {
                    Payload::Dihedral {
                        rotation: n.div_ceil(2),
                        reflection: true,
                    }
                }
            }
        };
        GroupElement { family: *self, payload }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    /// One-line notation (w(1), ..., w(n)) of a permutation of 1..=n.
    Permutation(Vec<usize>),
    Bits(Vec<bool>),
    /// r^rotation followed by f when `reflection` is set.
    Dihedral {
        rotation: usize,
        reflection: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    family: GroupFamily,
    payload: Payload,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Permutation(p) => {
                let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Payload::Bits(b) => {
                for &bit in b {
                    write!(f, "{}", u8::from(bit))?;
                }
                Ok(())
            }
            Payload::Dihedral { rotation, reflection } => {
                write!(f, "r^{rotation}")?;
                if *reflection {
                    write!(f, "f")?;
                }
                Ok(())
            }
        }
    }
}

impl GroupElement {
    pub fn new(family: GroupFamily, payload: Payload) -> Result<Self> {
        let family = family.validated()?;
        let invalid = |reason: &str| Error::InvalidElement {
            family,
            reason: reason.to_string(),
        };
        match (&family, &payload) {
            (GroupFamily::Symmetric(n), Payload::Permutation(p)) => {
                if p.len() != *n {
                    return Err(invalid("permutation has the wrong length"));
                }
                let mut seen = vec![false; *n];
                for &v in p {
                    if v == 0 || v > *n || seen[v - 1] {
                        return Err(invalid("not a bijection of 1..=n"));
                    }
                    seen[v - 1] = true;
                }
            }
            (GroupFamily::Hypercube(n), Payload::Bits(b)) => {
                if b.len() != *n {
                    return Err(invalid("bit vector has the wrong length"));
                }
            }
            (GroupFamily::Dihedral(n), Payload::Dihedral { rotation, .. }) => {
                if rotation >= n {
                    return Err(invalid("rotation index must be below n"));
                }
            }
            _ => return Err(invalid("payload kind does not match the family")),
        }
        Ok(Self { family, payload })
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        Self::new(GroupFamily::Symmetric(perm.len()), Payload::Permutation(perm))
    }

    pub fn bits(bits: Vec<bool>) -> Result<Self> {
        Self::new(GroupFamily::Hypercube(bits.len()), Payload::Bits(bits))
    }

    /// Bit vector from a 0/1 slice, for tests and CLI input.
    pub fn bits_from(values: &[u8]) -> Result<Self> {
        Self::bits(values.iter().map(|&v| v != 0).collect())
    }

    pub fn dihedral(n: usize, rotation: usize, reflection: bool) -> Result<Self> {
        Self::new(GroupFamily::Dihedral(n), Payload::Dihedral { rotation, reflection })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn is_identity(&self) -> bool {
        *self == self.family.identity()
    }

    /// Coxeter length.
    pub fn length(&self) -> usize {
        match (&self.family, &self.payload) {
            (_, Payload::Permutation(p)) => {
                let mut count = 0;
                for a in 0..p.len() {
                    for b in a + 1..p.len() {
                        if p[a] > p[b] {
                            count += 1;
                        }
                    }
                }
                count
            }
            (_, Payload::Bits(b)) => b.iter().filter(|&&x| x).count(),
            (GroupFamily::Dihedral(n), Payload::Dihedral { rotation, reflection }) => {
                let (n, k) = (*n, *rotation);
                if !reflection {
                    2 * k.min(n - k)
                } else if k == 0 {
                    1
                } else {
                    (2 * k - 1).min(2 * (n - k) + 1)
                }
            }
            _ => unreachable!("payload validated at construction"),
        }
    }

    /// s_i * self. Panics on an invalid index; callers validate first.
    pub fn left_mul_generator(&self, i: usize) -> GroupElement {
        assert!(i >= 1 && i <= self.family.rank(), "generator index {i} out of range");
        let payload = match &self.payload {
            Payload::Permutation(p) => Payload::Permutation(
                p.iter()
                    .map(|&v| {
                        if v == i {
                            i + 1
                        } else if v == i + 1 {
                            i
                        } else {
                            v
                        }
                    })
                    .collect(),
            ),
            Payload::Bits(b) => {
                let mut b = b.clone();
                b[i - 1] = !b[i - 1];
                Payload::Bits(b)
            }
            Payload::Dihedral { rotation, reflection } => {
                let n = self.family.size();
                // s_1 = f, s_2 = r f; f r^k = r^{-k} f.
                let shift = if i == 1 { 0 } else { 1 };
                Payload::Dihedral {
                    rotation: (shift + n - rotation) % n,
                    reflection: !reflection,
                }
            }
        };
        GroupElement {
            family: self.family,
            payload,
        }
    }

    /// self * s_i.
    pub fn right_mul_generator(&self, i: usize) -> GroupElement {
        let generator = self.family.generator(i).expect("generator index out of range");
        self.multiply(&generator).expect("same family")
    }

    /// True when ℓ(s_i w) < ℓ(w).
    pub fn has_left_descent(&self, i: usize) -> bool {
        match &self.payload {
            // s_i w has fewer inversions exactly when i+1 precedes i in w.
            Payload::Permutation(p) => {
                let pos_i = p.iter().position(|&v| v == i).unwrap();
                let pos_next = p.iter().position(|&v| v == i + 1).unwrap();
                pos_next < pos_i
            }
            Payload::Bits(b) => b[i - 1],
            Payload::Dihedral { .. } => self.left_mul_generator(i).length() < self.length(),
        }
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family, other.family));
        }
        let payload = match (&self.payload, &other.payload) {
            (Payload::Permutation(a), Payload::Permutation(b)) => {
                Payload::Permutation(b.iter().map(|&v| a[v - 1]).collect())
            }
            (Payload::Bits(a), Payload::Bits(b)) => Payload::Bits(a.iter().zip(b).map(|(x, y)| x ^ y).collect()),
            (
                Payload::Dihedral {
                    rotation: k1,
                    reflection: f1,
                },
                Payload::Dihedral {
                    rotation: k2,
                    reflection: f2,
                },
            ) => {
                let n = self.family.size();
                let moved = if *f1 { (n - k2) % n } else { *k2 };
                Payload::Dihedral {
                    rotation: (k1 + moved) % n,
                    reflection: f1 ^ f2,
                }
            }
            _ => unreachable!("families agree"),
        };
        Ok(GroupElement {
            family: self.family,
            payload,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let payload = match &self.payload {
            Payload::Permutation(p) => {
                let mut inv = vec![0; p.len()];
                for (pos, &v) in p.iter().enumerate() {
                    inv[v - 1] = pos + 1;
                }
                Payload::Permutation(inv)
            }
            Payload::Bits(b) => Payload::Bits(b.clone()),
            Payload::Dihedral { rotation, reflection } => {
                let n = self.family.size();
                Payload::Dihedral {
                    rotation: if *reflection { *rotation } else { (n - rotation) % n },
                    reflection: *reflection,
                }
            }
        };
        GroupElement {
            family: self.family,
            payload,
        }
    }

    /// A reduced word (i_1, ..., i_k) with s_{i_1} ... s_{i_k} = self,
    /// found by greedy left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut current = self.clone();
        while !current.is_identity() {
            let i = (1..=self.family.rank())
                .find(|&i| current.has_left_descent(i))
                .expect("a non-identity element has a left descent");
            word.push(i);
            current = current.left_mul_generator(i);
        }
        word
    }

    /// Product s_{i_1} ... s_{i_k} of a word.
    pub fn from_word(family: GroupFamily, word: &[usize]) -> Result<GroupElement> {
        let mut element = family.identity();
        for &i in word.iter().rev() {
            family.check_generator(i)?;
            element = element.left_mul_generator(i);
        }
        Ok(element)
    }

    /// Bits of a hypercube element; `None` for other families.
    pub fn as_bits(&self) -> Option<&[bool]> {
        match &self.payload {
            Payload::Bits(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_permutation(&self) -> Option<&[usize]> {
        match &self.payload {
            Payload::Permutation(p) => Some(p),
            _ => None,
        }
    }
}

/// An enumerated group: elements in lexicographic payload order with the
/// left action of every generator precomputed as index tables.
#[derive(Clone, Debug)]
pub struct Group {
    family: GroupFamily,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    lengths: Vec<usize>,
    left_action: Vec<Vec<usize>>,
}

impl Group {
    pub fn enumerate(family: GroupFamily) -> Result<Self> {
        Self::enumerate_with_cap(family, DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_with_cap(family: GroupFamily, cap: usize) -> Result<Self> {
        let family = family.validated()?;
        let order = family.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        let elements = match family {
            GroupFamily::Symmetric(n) => lexicographic_permutations(n)
                .into_iter()
                .map(|p| GroupElement {
                    family,
                    payload: Payload::Permutation(p),
                })
                .collect::<Vec<_>>(),
            GroupFamily::Hypercube(n) => (0..(1usize << n))
                .map(|code| GroupElement {
                    family,
                    payload: Payload::Bits((0..n).map(|j| code >> (n - 1 - j) & 1 == 1).collect()),
                })
                .collect(),
            GroupFamily::Dihedral(n) => (0..n)
                .flat_map(|k| [false, true].map(|reflection| (k, reflection)))
                .map(|(rotation, reflection)| GroupElement {
                    family,
                    payload: Payload::Dihedral { rotation, reflection },
                })
                .collect(),
        };
        let index: HashMap<GroupElement, usize> = elements.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        let lengths = elements.iter().map(GroupElement::length).collect();
        let left_action = (1..=family.rank())
            .map(|i| elements.iter().map(|e| index[&e.left_mul_generator(i)]).collect())
            .collect();
        Ok(Self {
            family,
            elements,
            index,
            lengths,
            left_action,
        })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &GroupElement {
        &self.elements[idx]
    }

    pub fn index_of(&self, element: &GroupElement) -> Option<usize> {
        self.index.get(element).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.index[&self.family.identity()]
    }

    pub fn longest_index(&self) -> usize {
        self.index[&self.family.longest_element()]
    }

    pub fn length_at(&self, idx: usize) -> usize {
        self.lengths[idx]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Index of s_i * x.
    pub fn left_neighbor(&self, i: usize, idx: usize) -> usize {
        self.left_action[i - 1][idx]
    }

    /// Σ_w q^{ℓ(w)} by direct summation over the enumeration.
    pub fn poincare_by_enumeration<S: Scalar>(&self, q: &S) -> S {
        let max = self.lengths.iter().copied().max().unwrap_or(0);
        let mut histogram = vec![0i64; max + 1];
        for &l in &self.lengths {
            histogram[l] += 1;
        }
        histogram
            .iter()
            .rev()
            .fold(S::zero(), |acc, &count| acc * q.clone() + S::from_int(count))
    }

    /// Number of elements of each length.
    pub fn length_histogram(&self) -> Vec<usize> {
        let max = self.lengths.iter().copied().max().unwrap_or(0);
        let mut histogram = vec![0; max + 1];
        for &l in &self.lengths {
            histogram[l] += 1;
        }
        histogram
    }
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![current.clone()];
    while let Some(pivot) = (0..n.saturating_sub(1)).rev().find(|&k| current[k] < current[k + 1]) {
        let successor = (pivot + 1..n).rev().find(|&k| current[k] > current[pivot]).unwrap();
        current.swap(pivot, successor);
        current[pivot + 1..].reverse();
        out.push(current.clone());
    }
    out
}

/// A subset J of the generator indices; W_J is the subgroup it generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicSubset {
    family: GroupFamily,
    generators: Vec<usize>,
}

impl ParabolicSubset {
    pub fn new(family: GroupFamily, mut generators: Vec<usize>) -> Result<Self> {
        generators.sort_unstable();
        generators.dedup();
        if generators.iter().any(|&i| i == 0 || i > family.rank()) {
            return Err(Error::InvalidParabolic(generators));
        }
        Ok(Self { family, generators })
    }

    pub fn all(family: GroupFamily) -> Self {
        Self {
            family,
            generators: (1..=family.rank()).collect(),
        }
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Elements of W_J, by closure from the identity.
    pub fn subgroup(&self) -> Vec<GroupElement> {
        let identity = self.family.identity();
        let mut seen: HashSet<GroupElement> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        let mut out = Vec::new();
        while let Some(current) = queue.pop_front() {
            for &i in &self.generators {
                let next = current.left_mul_generator(i);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            out.push(current);
        }
        out.sort();
        out
    }

    /// P_{W_J}(q) by summation over the subgroup.
    pub fn poincare_polynomial<S: Scalar>(&self, q: &S) -> S {
        self.subgroup()
            .iter()
            .fold(S::zero(), |acc, w| acc + q.powi(w.length() as i64))
    }

    /// True when x has no right descent in J, i.e. x is minimal in x W_J.
    pub fn is_minimal_representative(&self, x: &GroupElement) -> bool {
        let len = x.length();
        self.generators.iter().all(|&j| x.right_mul_generator(j).length() > len)
    }
}

/// One minimal-length representative per left coset x W_J, in enumeration order.
pub fn min_coset_representatives(group: &Group, subset: &ParabolicSubset) -> Result<Vec<GroupElement>> {
    if subset.family != group.family {
        return Err(Error::FamilyMismatch(subset.family, group.family));
    }
    Ok(group
        .elements()
        .iter()
        .filter(|x| subset.is_minimal_representative(x))
        .cloned()
        .collect())
}

/// π(x W_J) = q^{ℓ(x)} P_{W_J}(q) / P_W(q) for a minimal representative x.
pub fn coset_probability<S: Scalar>(subset: &ParabolicSubset, representative: &GroupElement, q: &S) -> Result<S> {
    if subset.family != representative.family() {
        return Err(Error::FamilyMismatch(subset.family, representative.family()));
    }
    if !subset.is_minimal_representative(representative) {
        return Err(Error::NotMinimalRepresentative(representative.to_string()));
    }
    Ok(q.powi(representative.length() as i64) * subset.poincare_polynomial(q) / subset.family.poincare_polynomial(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn small_families() -> Vec<GroupFamily> {
        let mut out = Vec::new();
        for n in 2..=5 {
            out.push(GroupFamily::Symmetric(n));
        }
        for n in 1..=6 {
            out.push(GroupFamily::Hypercube(n));
        }
        for n in 3..=9 {
            out.push(GroupFamily::Dihedral(n));
        }
        out
    }

    /// Word length oracle: BFS distance from the identity in the Cayley graph.
    fn bfs_lengths(family: GroupFamily) -> HashMap<GroupElement, usize> {
        let mut dist = HashMap::from([(family.identity(), 0)]);
        let mut queue = VecDeque::from([family.identity()]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for i in 1..=family.rank() {
                let next = family.generator(i).unwrap().multiply(&w).unwrap();
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    #[test]
    fn multiply_examples() {
        let s1 = GroupElement::permutation(vec![2, 1, 3]).unwrap();
        assert!(s1.multiply(&s1).unwrap().is_identity());

        let a = GroupElement::bits_from(&[1, 0]).unwrap();
        let b = GroupElement::bits_from(&[0, 1]).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), GroupElement::bits_from(&[1, 1]).unwrap());

        let d3 = GroupFamily::Dihedral(3);
        let lhs = GroupElement::from_word(d3, &[1, 2, 1]).unwrap();
        let rhs = GroupElement::from_word(d3, &[2, 1, 2]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiply_rejects_mixed_families() {
        let a = GroupFamily::Symmetric(3).identity();
        let b = GroupFamily::Dihedral(3).identity();
        assert!(matches!(a.multiply(&b), Err(Error::FamilyMismatch(..))));
    }

    #[test]
    fn dihedral_braid_relation_has_n_factors() {
        for n in 3..=10 {
            let family = GroupFamily::Dihedral(n);
            let left: Vec<usize> = (0..n).map(|k| 1 + k % 2).collect();
            let right: Vec<usize> = (0..n).map(|k| 2 - k % 2).collect();
            assert_eq!(
                GroupElement::from_word(family, &left).unwrap(),
                GroupElement::from_word(family, &right).unwrap()
            );
            let shorter: Vec<usize> = left[..n - 1].to_vec();
            let shorter_right: Vec<usize> = right[..n - 1].to_vec();
            assert_ne!(
                GroupElement::from_word(family, &shorter).unwrap(),
                GroupElement::from_word(family, &shorter_right).unwrap()
            );
        }
    }

    #[test]
    fn lengths_match_cayley_graph_distance() {
        for family in small_families() {
            let oracle = bfs_lengths(family);
            let group = Group::enumerate(family).unwrap();
            assert_eq!(oracle.len(), group.len(), "{family}");
            for w in group.elements() {
                assert_eq!(w.length(), oracle[w], "{family} {w}");
            }
        }
    }

    #[test]
    fn generator_changes_length_by_one() {
        for family in small_families() {
            let group = Group::enumerate(family).unwrap();
            for w in group.elements() {
                for i in 1..=family.rank() {
                    let next = w.left_mul_generator(i);
                    let diff = next.length() as i64 - w.length() as i64;
                    assert_eq!(diff.abs(), 1);
                    assert_eq!(w.has_left_descent(i), diff < 0);
                }
            }
        }
    }

    #[test]
    fn longest_elements() {
        assert_eq!(
            GroupFamily::Symmetric(3).longest_element(),
            GroupElement::permutation(vec![3, 2, 1]).unwrap()
        );
        assert_eq!(
            GroupFamily::Hypercube(4).longest_element(),
            GroupElement::bits_from(&[1, 1, 1, 1]).unwrap()
        );
        for family in small_families() {
            let group = Group::enumerate(family).unwrap();
            let max = group.lengths().iter().copied().max().unwrap();
            let maximizers: Vec<_> = group.elements().iter().filter(|w| w.length() == max).collect();
            assert_eq!(maximizers.len(), 1, "{family}");
            assert_eq!(*maximizers[0], family.longest_element());
            assert_eq!(max, family.longest_length());
        }
        assert_eq!(GroupFamily::Dihedral(4).longest_element().length(), 4);
        assert_eq!(GroupFamily::Symmetric(6).longest_element().length(), 15);
    }

    #[test]
    fn reduced_words() {
        let id = GroupFamily::Symmetric(3).identity();
        assert!(id.reduced_word().is_empty());
        let w0 = GroupElement::permutation(vec![3, 2, 1]).unwrap();
        let word = w0.reduced_word();
        assert!(word == vec![1, 2, 1] || word == vec![2, 1, 2]);
        let x = GroupElement::bits_from(&[1, 0, 1]).unwrap();
        let mut word = x.reduced_word();
        word.sort();
        assert_eq!(word, vec![1, 3]);
        for family in small_families() {
            for w in Group::enumerate(family).unwrap().elements() {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(GroupElement::from_word(family, &word).unwrap(), *w);
            }
        }
    }

    #[test]
    fn enumeration_sizes_and_order() {
        assert_eq!(Group::enumerate(GroupFamily::Symmetric(3)).unwrap().len(), 6);
        assert_eq!(Group::enumerate(GroupFamily::Dihedral(5)).unwrap().len(), 10);
        let cube = Group::enumerate(GroupFamily::Hypercube(3)).unwrap();
        assert_eq!(cube.length_histogram(), vec![1, 3, 3, 1]);
        for family in small_families() {
            let group = Group::enumerate(family).unwrap();
            assert_eq!(group.len() as u128, family.order());
            assert!(group.elements().windows(2).all(|w| w[0] < w[1]));
            for (k, w) in group.elements().iter().enumerate() {
                assert_eq!(group.index_of(w), Some(k));
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        let err = Group::enumerate_with_cap(GroupFamily::Symmetric(5), 100).unwrap_err();
        assert_eq!(err, Error::CapExceeded { order: 120, cap: 100 });
        assert!(Group::enumerate(GroupFamily::Symmetric(9)).is_err());
    }

    #[test]
    fn invalid_families_and_elements() {
        assert!(GroupFamily::symmetric(1).is_err());
        assert!(GroupFamily::dihedral(2).is_err());
        assert!(GroupFamily::hypercube(0).is_err());
        assert!(GroupElement::permutation(vec![1, 1, 3]).is_err());
        assert!(GroupElement::dihedral(4, 4, false).is_err());
        assert!(GroupFamily::Symmetric(3).generator(3).is_err());
    }

    #[test]
    fn degrees_examples() {
        assert_eq!(GroupFamily::Symmetric(4).degrees(), vec![2, 3, 4]);
        assert_eq!(GroupFamily::Hypercube(3).degrees(), vec![2, 2, 2]);
        assert_eq!(GroupFamily::Dihedral(6).degrees(), vec![2, 6]);
    }

    #[test]
    fn poincare_polynomial_examples() {
        let q = r(2, 1);
        assert_eq!(GroupFamily::Symmetric(3).poincare_polynomial(&q), r(21, 1));
        for n in 1..=6 {
            let q = r(5, 3);
            assert_eq!(
                GroupFamily::Hypercube(n).poincare_polynomial(&q),
                (r(1, 1) + q.clone()).powi(n as i64)
            );
        }
        for family in small_families() {
            assert_eq!(family.poincare_polynomial(&r(1, 1)), r(family.order() as i64, 1));
        }
    }

    #[test]
    fn poincare_enumeration_matches_degree_product() {
        for family in small_families() {
            let group = Group::enumerate(family).unwrap();
            for q in [r(2, 1), r(3, 1), r(10, 9), r(1, 1)] {
                assert_eq!(
                    group.poincare_by_enumeration(&q),
                    family.poincare_polynomial(&q),
                    "{family}"
                );
            }
        }
    }

    #[test]
    fn coset_representatives() {
        let s3 = Group::enumerate(GroupFamily::Symmetric(3)).unwrap();
        let all = ParabolicSubset::all(GroupFamily::Symmetric(3));
        assert_eq!(
            min_coset_representatives(&s3, &all).unwrap(),
            vec![GroupFamily::Symmetric(3).identity()]
        );
        let j2 = ParabolicSubset::new(GroupFamily::Symmetric(3), vec![2]).unwrap();
        assert_eq!(min_coset_representatives(&s3, &j2).unwrap().len(), 3);

        for n in 3..=5 {
            let family = GroupFamily::Symmetric(n);
            let group = Group::enumerate(family).unwrap();
            let subset = ParabolicSubset::new(family, (1..=n - 2).collect()).unwrap();
            let reps = min_coset_representatives(&group, &subset).unwrap();
            let mut lengths: Vec<usize> = reps.iter().map(GroupElement::length).collect();
            lengths.sort();
            assert_eq!(lengths, (0..n).collect::<Vec<_>>());
        }
        assert!(ParabolicSubset::new(GroupFamily::Symmetric(3), vec![3]).is_err());
    }

    #[test]
    fn coset_probabilities_match_position_formulas() {
        // π{w : w(n) = j} = q^{n-j}(1-q)/(1-q^n) and π{w : w(1) = j} = q^{j-1}(1-q)/(1-q^n).
        for n in 3..=5 {
            let family = GroupFamily::Symmetric(n);
            let group = Group::enumerate(family).unwrap();
            let q = r(3, 1);
            let normalizer = (r(1, 1) - q.clone()) / (r(1, 1) - q.powi(n as i64));

            let last = ParabolicSubset::new(family, (1..=n - 2).collect()).unwrap();
            for x in min_coset_representatives(&group, &last).unwrap() {
                let j = x.as_permutation().unwrap()[n - 1] as i64;
                let expected = q.powi(n as i64 - j) * normalizer.clone();
                assert_eq!(coset_probability(&last, &x, &q).unwrap(), expected);
            }

            let first = ParabolicSubset::new(family, (2..=n - 1).collect()).unwrap();
            for x in min_coset_representatives(&group, &first).unwrap() {
                let j = x.as_permutation().unwrap()[0] as i64;
                let expected = q.powi(j - 1) * normalizer.clone();
                assert_eq!(coset_probability(&first, &x, &q).unwrap(), expected);
            }
        }
    }

    #[test]
    fn coset_probabilities_sum_to_one_for_every_subset() {
        for family in small_families().into_iter().filter(|f| f.order() <= 64) {
            let group = Group::enumerate(family).unwrap();
            let rank = family.rank();
            for mask in 0..(1u32 << rank) {
                let j: Vec<usize> = (1..=rank).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let subset = ParabolicSubset::new(family, j).unwrap();
                let reps = min_coset_representatives(&group, &subset).unwrap();
                assert_eq!(reps.len() * subset.subgroup().len(), group.len());
                for q in [r(2, 1), r(1, 1)] {
                    let total = reps
                        .iter()
                        .fold(r(0, 1), |acc, x| acc + coset_probability(&subset, x, &q).unwrap());
                    assert_eq!(total, r(1, 1), "{family} {:?}", subset.generators());
                }
                // q = 1 gives |W_J| / |W| per coset.
                let uniform = r(subset.subgroup().len() as i64, group.len() as i64);
                for x in &reps {
                    assert_eq!(coset_probability(&subset, x, &r(1, 1)).unwrap(), uniform);
                }
            }
        }
    }

    #[test]
    fn coset_probability_rejects_non_minimal() {
        let family = GroupFamily::Symmetric(3);
        let subset = ParabolicSubset::new(family, vec![1]).unwrap();
        let s1 = family.generator(1).unwrap();
        assert!(matches!(
            coset_probability(&subset, &s1, &r(2, 1)),
            Err(Error::NotMinimalRepresentative(_))
        ));
    }

    #[test]
    fn associativity_and_subadditivity_exhaustive() {
        for family in [
            GroupFamily::Symmetric(3),
            GroupFamily::Symmetric(4),
            GroupFamily::Hypercube(3),
            GroupFamily::Dihedral(4),
            GroupFamily::Dihedral(5),
        ] {
            let group = Group::enumerate(family).unwrap();
            let els = group.elements();
            for a in els {
                assert!(a.multiply(&family.identity()).unwrap() == *a);
                assert!(a.multiply(&a.inverse()).unwrap().is_identity());
                assert_eq!(a.inverse().length(), a.length());
                for b in els {
                    let ab = a.multiply(b).unwrap();
                    assert!(ab.length() <= a.length() + b.length());
                    if family.order() <= 10 {
                        for c in els {
                            assert_eq!(ab.multiply(c).unwrap(), a.multiply(&b.multiply(c).unwrap()).unwrap());
                        }
                    }
                }
            }
        }
    }
}
