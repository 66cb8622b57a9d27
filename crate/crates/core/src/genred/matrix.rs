//! Dense matrices over a polynomial ring, with exact minors.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};

/// Row-major `rows × cols` matrix; all entries share one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// A `k × k` minor with its row and column indices.
#[derive(Clone, Debug)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Poly,
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl PolyMatrix {
    pub fn new(ring: &Arc<Ring>, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Invalid("matrix is not rectangular".into()));
        }
        let zero = Poly::zero(ring);
        for e in &entries {
            e.check_ring(&zero)?;
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: alloc::vec![Poly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("rows of different lengths".into()));
        }
        let n = rows.len();
        Self::new(ring, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(ring: &Arc<Ring>, rows: usize, columns: &[Vec<Poly>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Invalid("columns of different lengths".into()));
        }
        let zero = Poly::zero(ring);
        let mut m = Self::zero(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, e) in c.iter().enumerate() {
                e.check_ring(&zero)?;
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid("matrix dimensions do not match".into()));
        }
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.ring);
                for l in 0..self.cols {
                    let (a, b) = (self.get(i, l), other.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::Invalid("vector length does not match".into()));
        }
        let col = PolyMatrix::new(&self.ring, v.len(), 1, v.to_vec())?;
        Ok(self.mul(&col)?.entries)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Invalid("matrix dimensions do not match".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(&self.ring, self.rows, self.cols, entries)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = Self::zero(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Columns `cols` of `self`, in order.
    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    /// `self` followed by the columns of `other`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::Invalid("row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        PolyMatrix::from_columns(&self.ring, self.rows, &cols)
    }

    /// Determinant by fraction-free elimination (exact divisions).
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        let mut m: Vec<Vec<Poly>> = (0..n).map(|i| self.row(i)).collect();
        let mut prev = Poly::one(&self.ring);
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).ok_or_else(|| {
                        Error::Verification("inexact division in determinant".into())
                    })?;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }

    pub fn minors(&self, k: usize) -> Result<Vec<Minor>> {
        let mut out = Vec::new();
        for rows in subsets(self.rows, k) {
            for cols in subsets(self.cols, k) {
                let value = self.submatrix(&rows, &cols).det()?;
                out.push(Minor {
                    rows: rows.clone(),
                    cols,
                    value,
                });
            }
        }
        Ok(out)
    }

    /// Generators of the determinantal ideal `Δ_k`: `⟨1⟩` for `k = 0`,
    /// nothing past the smaller dimension.
    pub fn determinantal(&self, k: usize) -> Result<Vec<Poly>> {
        if k == 0 {
            return Ok(alloc::vec![Poly::one(&self.ring)]);
        }
        Ok(self
            .minors(k)?
            .into_iter()
            .map(|m| m.value)
            .filter(|v| !v.is_zero())
            .collect())
    }

    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::Invalid("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut adj = Self::zero(&self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let d = self.submatrix(&rows, &cols).det()?;
                adj.set(i, j, if (i + j) % 2 == 0 { d } else { -&d });
            }
        }
        Ok(adj)
    }

    pub fn with_column(&self, j: usize, column: &[Poly]) -> PolyMatrix {
        let mut m = self.clone();
        for (i, e) in column.iter().enumerate() {
            m.set(i, j, e.clone());
        }
        m
    }
}
