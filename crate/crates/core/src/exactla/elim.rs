//! Sparse Gaussian elimination over an exact field.
//!
//! Rows are reduced one at a time against a growing set of pivot rows
//! (leading-entry elimination). Input rows are processed shortest and
//! smallest first so that pivots stay small; bar-complex matrices are very
//! sparse with ±1 entries, which keeps fill-in modest.

use std::collections::BTreeMap;

use super::matrix::SparseMatrix;
use super::scalar::Field;

pub type SparseRow<F> = Vec<(usize, F)>;

/// `a - factor * b` on sorted sparse rows.
pub(crate) fn axpy<F: Field>(a: &[(usize, F)], factor: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, factor.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&factor.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form with normalized (leading coefficient 1) pivot rows.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    cols: usize,
    /// pivot column -> pivot row
    pivots: BTreeMap<usize, SparseRow<F>>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivots: BTreeMap::new(), reduced: false }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow<F>> {
        self.pivots.get(&col)
    }

    /// Reduces `row` by the current pivots (leading entries only).
    /// Returns the residue, empty when `row` lies in the span.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        while let Some((c, v)) = row.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, &v, p),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let row = self.reduce(row);
        let Some((c, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry is invertible");
        let row: SparseRow<F> = row.into_iter().map(|(j, v)| (j, v.mul(&inv))).collect();
        self.pivots.insert(c, row);
        self.reduced = false;
        true
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = SparseRow<F>>) {
        let mut rows: Vec<SparseRow<F>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        rows.sort_by_cached_key(|r| (r.len(), r.iter().map(|(_, v)| v.weight()).max().unwrap_or(0)));
        for r in rows {
            self.insert(r);
        }
    }

    /// Brings the pivot rows to reduced row echelon form.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for c in cols {
            let row = self.pivots.remove(&c).expect("pivot present");
            let row = self.eliminate_pivots(row);
            self.pivots.insert(c, row);
        }
        self.reduced = true;
    }

    /// Subtracts the (reduced) pivot rows for every pivot column hit by `row`.
    /// Reduced pivot rows only touch non-pivot columns besides their own, so
    /// one pass suffices.
    fn eliminate_pivots(&self, row: SparseRow<F>) -> SparseRow<F> {
        let hits: Vec<(usize, F)> =
            row.iter().filter(|(j, _)| self.pivots.contains_key(j)).cloned().collect();
        hits.into_iter().fold(row, |acc, (j, v)| axpy(&acc, &v, &self.pivots[&j]))
    }

    /// Fully reduces a row against the reduced echelon form: the result is
    /// supported on non-pivot columns only.
    pub fn normal_form(&self, row: SparseRow<F>) -> SparseRow<F> {
        debug_assert!(self.reduced || self.pivots.len() <= 1);
        self.eliminate_pivots(row)
    }
}

pub fn echelon_of<F: Field>(m: &SparseMatrix<F>) -> Echelon<F> {
    let mut e = Echelon::new(m.cols());
    e.extend(m.to_rows());
    e
}

/// Exact rank.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    // eliminate along the shorter dimension's rows
    if m.rows() > m.cols() {
        echelon_of(&m.transpose()).rank()
    } else {
        echelon_of(m).rank()
    }
}

/// Basis of the kernel `{v : m v = 0}`, as dense vectors of length `cols`.
/// `one` fixes the field context.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>, one: &F) -> Vec<Vec<F>> {
    let mut e = echelon_of(m);
    e.make_reduced();
    let zero = one.zero_like();
    let mut out = Vec::new();
    for free in 0..m.cols() {
        if e.pivots.contains_key(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); m.cols()];
        v[free] = one.clone();
        for (&p, row) in &e.pivots {
            if let Some((_, x)) = row.iter().find(|(j, _)| *j == free) {
                v[p] = x.neg();
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::{Fp, Scalar};

    fn dense(rows: &[Vec<i64>]) -> SparseMatrix<Scalar> {
        SparseMatrix::from_dense(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::<Scalar>::zeros(3, 3)), 0);
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&dense(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        let one = Scalar::one();
        assert!(kernel_basis(&SparseMatrix::identity(2), &one).is_empty());
        let k = kernel_basis(&dense(&[vec![1, -1]]), &one);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1]);
        assert!(!k[0][0].is_zero());
        assert_eq!(kernel_basis(&SparseMatrix::<Scalar>::zeros(2, 3), &one).len(), 3);
    }

    #[test]
    fn characteristic_matters() {
        // det = 2: full rank over Q, rank 1 over F_2
        let m = dense(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.mod_p(2).unwrap()), 1);
        assert_eq!(rank(&m.mod_p(3).unwrap()), 2);
        let _: Fp = Fp::new(1, 2);
    }

    #[test]
    fn reduced_normal_form_is_canonical() {
        let m = dense(&[vec![1, 2, 3], vec![0, 1, 1]]);
        let mut e = echelon_of(&m);
        e.make_reduced();
        let r = e.normal_form(vec![(0, Scalar::one()), (2, Scalar::from_int(5))]);
        // x0 ≡ -2x1 - 3x2, x1 ≡ -x2  => x0 + 5x2 ≡ (2 - 3 + 5) x2
        assert_eq!(r, vec![(2, Scalar::from_int(4))]);
    }
}
