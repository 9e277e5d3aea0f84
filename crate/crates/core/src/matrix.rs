//! Dense square matrices over a [`Scalar`], rows = source state, columns = target state.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> TransitionMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.set(k, k, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(row.len(), dim));
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: S) {
        let slot = &mut self.entries[row * self.dim + col];
        *slot = slot.clone() + value;
    }

    pub fn row(&self, row: usize) -> &[S] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TransitionMatrix<T> {
        TransitionMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.clone() * factor.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let dim = self.dim;
        let rows: Vec<Vec<S>> = (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut out = vec![S::zero(); dim];
                for (k, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.row(k).iter().enumerate() {
                        if !b.is_zero() {
                            out[j] = out[j].clone() + a.clone() * b.clone();
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("square");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("square");
            }
        }
        result
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, vector: &[S]) -> Result<Vec<S>> {
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch(vector.len(), self.dim));
        }
        let mut out = vec![S::zero(); self.dim];
        for (i, v) in vector.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (j, m) in self.row(i).iter().enumerate() {
                if !m.is_zero() {
                    out[j] = out[j].clone() + v.clone() * m.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, k| acc + self.get(k, k).clone())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn row_sums(&self) -> Vec<S> {
        self.rows()
            .map(|row| row.iter().fold(S::zero(), |acc, x| acc + x.clone()))
            .collect()
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.entries.iter().all(|e| *e >= S::zero() && *e <= S::one()) && self.row_sums().iter().all(|s| *s == S::one())
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }
}
