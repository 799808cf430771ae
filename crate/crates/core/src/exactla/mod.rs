//! Exact linear algebra: rational and prime-field scalars, sparse matrices,
//! elimination, and homology of finite chain complexes.

mod complex;
mod elim;
mod matrix;
mod scalar;

pub use complex::{homology_dims, ChainComplex, DimTable};
pub use elim::{echelon_of, kernel_basis, rank, Echelon, SparseRow};
pub use matrix::SparseMatrix;
pub use scalar::{is_prime, Field, Fp, Scalar};

/// Sparse linear combination keyed by basis index, kept sorted and zero-free.
pub type Combination = Vec<(usize, Scalar)>;

/// Sorts, merges equal keys and drops zeros.
pub fn normalize_combination(mut c: Combination) -> Combination {
    c.sort_by_key(|(i, _)| *i);
    let mut out: Combination = Vec::with_capacity(c.len());
    for (i, v) in c {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = Field::add(w, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !Field::is_zero(v));
    out
}
