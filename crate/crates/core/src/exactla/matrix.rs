use std::collections::BTreeMap;

use super::scalar::{Field, Fp, Scalar};
use crate::error::{arg_err, Result};

/// Sparse matrix in coordinate form. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field = Scalar> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<Self> {
        let mut m = SparseMatrix::zeros(rows, cols);
        for (r, c, v) in triplets {
            m.add_to(r, c, v)?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        self.entries.get(&(r, c))
    }

    /// Accumulates `v` into entry (r, c), dropping it if the sum cancels.
    pub fn add_to(&mut self, r: usize, c: usize, v: F) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(arg_err!("entry ({r},{c}) outside {}x{}", self.rows, self.cols));
        }
        if v.is_zero() {
            return Ok(());
        }
        match self.entries.get_mut(&(r, c)) {
            Some(old) => {
                let s = old.add(&v);
                if s.is_zero() {
                    self.entries.remove(&(r, c));
                } else {
                    *old = s;
                }
            }
            None => {
                self.entries.insert((r, c), v);
            }
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Row-major sparse rows, each sorted by column.
    pub fn to_rows(&self) -> Vec<Vec<(usize, F)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].push((c, v.clone()));
        }
        out
    }

    /// Column-major view, each column sorted by row.
    pub fn to_cols(&self) -> Vec<Vec<(usize, F)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (&(r, c), v) in &self.entries {
            out[c].push((r, v.clone()));
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix<F>) -> Result<SparseMatrix<F>> {
        if self.cols != other.rows {
            return Err(arg_err!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            ));
        }
        let other_rows = other.to_rows();
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for (c, b) in &other_rows[k] {
                out.add_to(r, *c, a.mul(b))?;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product; `zero` fixes the field context for empty inputs.
    pub fn apply(&self, v: &[F], zero: &F) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(arg_err!("vector length {} != {} columns", v.len(), self.cols));
        }
        let mut out = vec![zero.zero_like(); self.rows];
        for (&(r, c), a) in &self.entries {
            out[r] = out[r].add(&a.mul(&v[c]));
        }
        Ok(out)
    }
}

impl SparseMatrix<Scalar> {
    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((i, j), Scalar::from_int(v));
                }
            }
        }
        m
    }

    /// Reduction into F_p. Fails when some denominator vanishes mod p.
    pub fn mod_p(&self, p: u64) -> Result<SparseMatrix<Fp>> {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            let x = v
                .mod_p(p)
                .ok_or_else(|| arg_err!("entry {v} has no image modulo {p}"))?;
            out.add_to(r, c, x)?;
        }
        Ok(out)
    }
}
