//! Iwahori-Hecke algebra of a finite Coxeter group at a fixed parameter q.
//!
//! Elements are sparse combinations of basis vectors T_w, or of the rescaled
//! basis T̃_w = q^{-ℓ(w)} T_w. In the T̃ basis left multiplication by
//! T̃_i is the single-site Metropolis step with θ = 1/q, which is what ties
//! this module to [`crate::chains`].

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coxeter::{Group, GroupElement, GroupFamily};
use crate::error::{Error, Result};
use crate::matrix::TransitionMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// T_w
    T,
    /// T̃_w = q^{-ℓ(w)} T_w
    TildeT,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeckeVector<S> {
    family: GroupFamily,
    q: S,
    basis: Basis,
    coeffs: BTreeMap<GroupElement, S>,
}

impl<S: Scalar> HeckeVector<S> {
    pub fn zero(family: GroupFamily, q: S, basis: Basis) -> Self {
        Self {
            family,
            q,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector indexed by `w` (T_w or T̃_w depending on `basis`).
    pub fn basis_vector(w: GroupElement, q: S, basis: Basis) -> Self {
        let mut out = Self::zero(w.family(), q, basis);
        out.coeffs.insert(w, S::one());
        out
    }

    pub fn one(family: GroupFamily, q: S, basis: Basis) -> Self {
        Self::basis_vector(family.identity(), q, basis)
    }

    /// T_i or T̃_i.
    pub fn generator(family: GroupFamily, i: usize, q: S, basis: Basis) -> Result<Self> {
        Ok(Self::basis_vector(family.generator(i)?, q, basis))
    }

    pub fn from_terms(
        family: GroupFamily,
        q: S,
        basis: Basis,
        terms: impl IntoIterator<Item = (GroupElement, S)>,
    ) -> Result<Self> {
        let mut out = Self::zero(family, q, basis);
        for (w, c) in terms {
            if w.family() != family {
                return Err(Error::FamilyMismatch(family, w.family()));
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn theta(&self) -> S {
        S::one() / self.q.clone()
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coefficient(&self, w: &GroupElement) -> S {
        self.coeffs.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &S)> {
        self.coeffs.iter()
    }

    /// Number of basis elements with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, w: GroupElement, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.family, self.q.clone(), self.basis);
        for (w, c) in &self.coeffs {
            out.add_term(w.clone(), c.clone() * factor.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    /// Re-express in the other basis using T̃_w = q^{-ℓ(w)} T_w.
    pub fn to_basis(&self, basis: Basis) -> Self {
        if basis == self.basis {
            return self.clone();
        }
        let sign = if basis == Basis::T { -1 } else { 1 };
        let mut out = Self::zero(self.family, self.q.clone(), basis);
        for (w, c) in &self.coeffs {
            let factor = self.q.powi(sign * w.length() as i64);
            out.add_term(w.clone(), c.clone() * factor);
        }
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family, other.family));
        }
        if self.q != other.q {
            return Err(Error::HeckeMismatch("q"));
        }
        if self.basis != other.basis {
            return Err(Error::HeckeMismatch("basis"));
        }
        Ok(())
    }

    /// Left multiplication by the i-th generator in the vector's own basis.
    fn left_generator(&self, i: usize) -> Self {
        let mut out = Self::zero(self.family, self.q.clone(), self.basis);
        let (stay, jump) = self.descent_weights();
        for (w, c) in &self.coeffs {
            let moved = w.left_mul_generator(i);
            if w.has_left_descent(i) {
                out.add_term(w.clone(), c.clone() * stay.clone());
                out.add_term(moved, c.clone() * jump.clone());
            } else {
                out.add_term(moved, c.clone());
            }
        }
        out
    }

    /// Coefficients (of T_w, of T_{s w}) when s is a descent:
    /// (q-1, q) in the T basis, (1-θ, θ) in the T̃ basis.
    fn descent_weights(&self) -> (S, S) {
        match self.basis {
            Basis::T => (self.q.clone() - S::one(), self.q.clone()),
            Basis::TildeT => {
                let theta = self.theta();
                (S::one() - theta.clone(), theta)
            }
        }
    }
}

/// T_i · h in the T basis.
pub fn generator_times<S: Scalar>(i: usize, h: &HeckeVector<S>) -> Result<HeckeVector<S>> {
    h.family.check_generator(i)?;
    if h.basis != Basis::T {
        return Err(Error::HeckeMismatch("basis (expected T)"));
    }
    Ok(h.left_generator(i))
}

/// T̃_i · h in the T̃ basis.
pub fn tilde_generator_times<S: Scalar>(i: usize, h: &HeckeVector<S>) -> Result<HeckeVector<S>> {
    h.family.check_generator(i)?;
    if h.basis != Basis::TildeT {
        return Err(Error::HeckeMismatch("basis (expected T̃)"));
    }
    Ok(h.left_generator(i))
}

/// Product h1 · h2, expanding each basis term of h1 along a reduced word.
pub fn product<S: Scalar>(h1: &HeckeVector<S>, h2: &HeckeVector<S>) -> Result<HeckeVector<S>> {
    h1.check_compatible(h2)?;
    let mut out = HeckeVector::zero(h1.family, h1.q.clone(), h1.basis);
    for (w, c) in &h1.coeffs {
        let mut partial = h2.clone();
        for &i in w.reduced_word().iter().rev() {
            partial = partial.left_generator(i);
        }
        for (v, d) in partial.coeffs {
            out.add_term(v, d * c.clone());
        }
    }
    Ok(out)
}

/// Product of generators in the given order: T̃_{i_1} T̃_{i_2} ... (or T_...).
pub fn word_product<S: Scalar>(family: GroupFamily, word: &[usize], q: S, basis: Basis) -> Result<HeckeVector<S>> {
    let mut out = HeckeVector::one(family, q, basis);
    for &i in word.iter().rev() {
        family.check_generator(i)?;
        out = out.left_generator(i);
    }
    Ok(out)
}

/// The anti-involution T_w ↦ T_{w^{-1}}; it also sends T̃_w to T̃_{w^{-1}}.
pub fn star<S: Scalar>(h: &HeckeVector<S>) -> HeckeVector<S> {
    let mut out = HeckeVector::zero(h.family, h.q.clone(), h.basis);
    for (w, c) in &h.coeffs {
        out.add_term(w.inverse(), c.clone());
    }
    out
}

/// The trace t(T_w) = P_W(q) δ_{w,1}. T_1 = T̃_1, so either basis works.
pub fn trace_t<S: Scalar>(h: &HeckeVector<S>) -> S {
    h.coefficient(&h.family.identity()) * h.family.poincare_polynomial(&h.q)
}

/// ⟨h1, h2⟩ = t(h1 h2).
pub fn inner_product<S: Scalar>(h1: &HeckeVector<S>, h2: &HeckeVector<S>) -> Result<S> {
    Ok(trace_t(&product(h1, h2)?))
}

/// Matrix of left multiplication by h on the T̃ basis:
/// M[x][y] = coefficient of T̃_y in h · T̃_x, so rows are source states.
pub fn left_mult_matrix<S: Scalar>(group: &Group, h: &HeckeVector<S>) -> Result<TransitionMatrix<S>> {
    if group.family() != h.family {
        return Err(Error::FamilyMismatch(group.family(), h.family));
    }
    let h = h.to_basis(Basis::TildeT);
    let dim = group.len();
    let theta = h.theta();
    let stay = S::one() - theta.clone();

    let mut start = vec![S::zero(); dim];
    for (w, c) in h.terms() {
        let idx = group.index_of(w).expect("element of the enumerated group");
        start[idx] = c.clone();
    }

    // h T̃_x = (h T̃_{x'}) T̃_j whenever x = x' s_j with ℓ(x) = ℓ(x') + 1,
    // so rows are filled in order of increasing length by right steps.
    let right: Vec<Vec<usize>> = (1..=group.family().rank())
        .map(|j| {
            group
                .elements()
                .iter()
                .map(|w| group.index_of(&w.right_mul_generator(j)).unwrap())
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&k| group.length_at(k));

    let mut rows: Vec<Option<Vec<S>>> = vec![None; dim];
    rows[group.identity_index()] = Some(start);
    for &x in &order {
        if rows[x].is_some() {
            continue;
        }
        let (parent, j) = (1..=group.family().rank())
            .find_map(|j| {
                let parent = right[j - 1][x];
                (group.length_at(parent) < group.length_at(x)).then_some((parent, j))
            })
            .expect("non-identity element has a right descent");
        let source = rows[parent].as_ref().expect("shorter rows are filled first");
        let mut next = vec![S::zero(); dim];
        for (w, c) in source.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let moved = right[j - 1][w];
            if group.length_at(moved) > group.length_at(w) {
                next[moved] = next[moved].clone() + c.clone();
            } else {
                next[w] = next[w].clone() + c.clone() * stay.clone();
                next[moved] = next[moved].clone() + c.clone() * theta.clone();
            }
        }
        rows[x] = Some(next);
    }
    TransitionMatrix::from_rows(rows.into_iter().map(|r| r.unwrap()).collect())
}

/// Same matrix, computed row by row through [`product`]. Slower; kept as a
/// second route for cross-checks.
pub fn left_mult_matrix_by_products<S: Scalar>(group: &Group, h: &HeckeVector<S>) -> Result<TransitionMatrix<S>> {
    if group.family() != h.family {
        return Err(Error::FamilyMismatch(group.family(), h.family));
    }
    let h = h.to_basis(Basis::TildeT);
    let rows: Result<Vec<Vec<S>>> = group
        .elements()
        .par_iter()
        .map(|x| {
            let image = product(&h, &HeckeVector::basis_vector(x.clone(), h.q.clone(), Basis::TildeT))?;
            let mut row = vec![S::zero(); group.len()];
            for (w, c) in image.terms() {
                row[group.index_of(w).unwrap()] = c.clone();
            }
            Ok(row)
        })
        .collect();
    TransitionMatrix::from_rows(rows?)
}

/// Trace of the regular representation. The T and T̃ matrices are diagonally
/// conjugate, so the T̃ matrix is used for both.
pub fn regular_trace<S: Scalar>(group: &Group, h: &HeckeVector<S>) -> Result<S> {
    Ok(left_mult_matrix(group, h)?.trace())
}
