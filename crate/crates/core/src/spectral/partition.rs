//! Integer partitions and standard Young tableaux.

use std::fmt;

use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first_part();
        let parts = (0..width)
            .map(|col| self.parts.iter().filter(|&&p| p > col).count())
            .collect();
        Partition { parts }
    }

    /// Boxes as zero-based (row, column), row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| (row, col)))
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.boxes()
            .map(|(row, col)| (self.parts[row] - col) + (conj.parts[col] - row) - 1)
            .collect()
    }

    /// Σ (column − row) over boxes.
    pub fn content_sum(&self) -> i64 {
        self.boxes().map(|(row, col)| col as i64 - row as i64).sum()
    }

    /// n(λ) = Σ (i − 1) λ_i.
    pub fn n_lambda(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// n! / ∏ hook lengths.
    pub fn dimension(&self) -> u128 {
        // Interleave multiplication and exact division to stay inside u128.
        let mut hooks = self.hook_lengths();
        hooks.sort_unstable();
        let mut value: u128 = 1;
        let mut pending = hooks.into_iter().rev().peekable();
        for k in 1..=self.size() as u128 {
            value *= k;
            while let Some(&h) = pending.peek() {
                if value.is_multiple_of(h as u128) {
                    value /= h as u128;
                    pending.next();
                } else {
                    break;
                }
            }
        }
        for h in pending {
            value /= h as u128;
        }
        value
    }

    /// Corners that can be removed leaving a partition, as (row, column).
    pub fn removable_corners(&self) -> Vec<(usize, usize)> {
        (0..self.parts.len())
            .filter(|&row| row + 1 == self.parts.len() || self.parts[row + 1] < self.parts[row])
            .map(|row| (row, self.parts[row] - 1))
            .collect()
    }

    /// The partition with the last box of `row` removed.
    pub fn without_corner(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.remove(row);
        }
        Partition { parts }
    }
}

/// All partitions of n, largest first part first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Filling of a shape by 1..n, increasing along rows and down columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let ok =
                    (1..=n).contains(&v) && !seen[v] && (c == 0 || row[c - 1] < v) && (r == 0 || rows[r - 1][c] < v);
                if !ok {
                    return Err(Error::Parse(format!("not a standard tableau: {rows:?}")));
                }
                seen[v] = true;
            }
        }
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Zero-based (row, column) of the box holding `value`.
    pub fn position(&self, value: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&v| v == value).map(|c| (r, c)))
    }
}

/// Column minus row of the box holding the largest entry.
pub fn content_of_n_box(tableau: &StandardTableau) -> i64 {
    let n = tableau.shape.size();
    let (row, col) = tableau.position(n).expect("tableau of positive size");
    col as i64 - row as i64
}

/// Every standard tableau of the given shape.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn go(shape: &Partition) -> Vec<Vec<Vec<usize>>> {
        let n = shape.size();
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (row, _) in shape.removable_corners() {
            for mut rows in go(&shape.without_corner(row)) {
                if rows.len() <= row {
                    rows.push(Vec::new());
                }
                rows[row].push(n);
                out.push(rows);
            }
        }
        out
    }
    go(shape)
        .into_iter()
        .map(|rows| StandardTableau {
            shape: shape.clone(),
            rows,
        })
        .collect()
}
