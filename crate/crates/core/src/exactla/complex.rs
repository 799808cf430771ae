use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::elim::rank;
use super::matrix::SparseMatrix;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Degree-indexed dimensions, typically homology. Zero entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable(pub BTreeMap<i64, usize>);

impl DimTable {
    pub fn new() -> Self {
        DimTable(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        DimTable(pairs.into_iter().filter(|&(_, d)| d > 0).collect())
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// `{"degree": dimension}` with decimal-string keys in increasing degree.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (d, n) in &self.0 {
            m.insert(d.to_string(), serde_json::Value::from(*n));
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Argument("dimension table must be a JSON object".into()))?;
        let mut out = DimTable::new();
        for (k, v) in obj {
            let d: i64 = k.parse().map_err(|_| Error::Argument(format!("bad degree key {k:?}")))?;
            let n = v
                .as_u64()
                .ok_or_else(|| Error::Argument(format!("bad dimension for degree {k}")))?;
            if n > 0 {
                out.0.insert(d, n as usize);
            }
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,dimension\n");
        for (d, n) in &self.0 {
            let _ = writeln!(s, "{d},{n}");
        }
        s
    }
}

/// Finite chain complex with differentials of degree -1.
///
/// `differentials[j]` maps degree `j` to degree `j - 1`: its columns are the
/// basis of degree `j` and its rows the basis of degree `j - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field = Scalar> {
    spaces: BTreeMap<i64, Vec<String>>,
    differentials: BTreeMap<i64, SparseMatrix<F>>,
}

impl<F: Field> ChainComplex<F> {
    /// Validates shapes and d∘d = 0.
    pub fn new(
        spaces: BTreeMap<i64, Vec<String>>,
        differentials: BTreeMap<i64, SparseMatrix<F>>,
    ) -> Result<Self> {
        let dim = |j: i64| spaces.get(&j).map_or(0, |b| b.len());
        for (&j, d) in &differentials {
            if d.cols() != dim(j) || d.rows() != dim(j - 1) {
                return Err(Error::Structural(format!(
                    "differential out of degree {j} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dim(j - 1),
                    dim(j)
                )));
            }
        }
        for (&j, d) in &differentials {
            if let Some(below) = differentials.get(&(j - 1)) {
                if !below.mul(d)?.is_zero() {
                    return Err(Error::Structural(format!(
                        "d∘d is nonzero on degree {j}"
                    )));
                }
            }
        }
        Ok(ChainComplex { spaces, differentials })
    }

    pub fn spaces(&self) -> &BTreeMap<i64, Vec<String>> {
        &self.spaces
    }

    pub fn differential(&self, degree: i64) -> Option<&SparseMatrix<F>> {
        self.differentials.get(&degree)
    }

    pub fn differentials(&self) -> &BTreeMap<i64, SparseMatrix<F>> {
        &self.differentials
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.spaces.get(&degree).map_or(0, |b| b.len())
    }

    pub fn space_dims(&self) -> DimTable {
        DimTable::from_pairs(self.spaces.iter().map(|(&d, b)| (d, b.len())))
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.space_dims().euler_characteristic()
    }

    pub fn map_field<G: Field>(
        &self,
        f: impl Fn(&SparseMatrix<F>) -> Result<SparseMatrix<G>>,
    ) -> Result<ChainComplex<G>> {
        let diffs = self
            .differentials
            .iter()
            .map(|(&j, d)| Ok((j, f(d)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChainComplex::new(self.spaces.clone(), diffs)
    }

    /// Direct sum with another complex (bases are tagged to stay distinct).
    pub fn direct_sum(&self, other: &ChainComplex<F>) -> Result<ChainComplex<F>> {
        let mut spaces = BTreeMap::new();
        let degrees: std::collections::BTreeSet<i64> =
            self.spaces.keys().chain(other.spaces.keys()).copied().collect();
        for &j in &degrees {
            let mut b: Vec<String> =
                self.spaces.get(&j).into_iter().flatten().map(|s| format!("L:{s}")).collect();
            b.extend(other.spaces.get(&j).into_iter().flatten().map(|s| format!("R:{s}")));
            spaces.insert(j, b);
        }
        let mut diffs = BTreeMap::new();
        for &j in &degrees {
            let (r1, c1) = (self.dim(j - 1), self.dim(j));
            let (r2, c2) = (other.dim(j - 1), other.dim(j));
            if r1 + r2 == 0 || c1 + c2 == 0 {
                continue;
            }
            let mut m = SparseMatrix::zeros(r1 + r2, c1 + c2);
            if let Some(d) = self.differentials.get(&j) {
                for (r, c, v) in d.iter() {
                    m.add_to(r, c, v.clone())?;
                }
            }
            if let Some(d) = other.differentials.get(&j) {
                for (r, c, v) in d.iter() {
                    m.add_to(r1 + r, c1 + c, v.clone())?;
                }
            }
            diffs.insert(j, m);
        }
        ChainComplex::new(spaces, diffs)
    }
}

/// dim H_j = dim ker d_j - rank d_{j+1}, omitting zeros.
pub fn homology_dims<F: Field>(c: &ChainComplex<F>) -> DimTable {
    let ranks: BTreeMap<i64, usize> =
        c.differentials.iter().map(|(&j, d)| (j, rank(d))).collect();
    let r = |j: i64| ranks.get(&j).copied().unwrap_or(0);
    DimTable::from_pairs(c.spaces.iter().map(|(&j, b)| (j, b.len() - r(j) - r(j + 1))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn acyclic_two_term() {
        let c = ChainComplex::new(
            BTreeMap::from([(1, labels(1)), (0, labels(1))]),
            BTreeMap::from([(1, SparseMatrix::identity(1))]),
        )
        .unwrap();
        assert_eq!(homology_dims(&c), DimTable::new());
    }

    #[test]
    fn zero_differential_gives_space_dims() {
        let c = ChainComplex::<Scalar>::new(
            BTreeMap::from([(3, labels(2)), (2, labels(4))]),
            BTreeMap::from([(3, SparseMatrix::zeros(4, 2))]),
        )
        .unwrap();
        assert_eq!(homology_dims(&c), DimTable::from_pairs([(3, 2), (2, 4)]));
    }

    #[test]
    fn three_binary_trees_onto_corolla() {
        // three binary trees in degree 2, the corolla in degree 1
        let d = SparseMatrix::from_dense(&[vec![1, -1, 1]]);
        let c = ChainComplex::new(
            BTreeMap::from([(2, labels(3)), (1, labels(1))]),
            BTreeMap::from([(2, d)]),
        )
        .unwrap();
        assert_eq!(homology_dims(&c), DimTable::from_pairs([(2, 2)]));
    }

    #[test]
    fn rejects_nonzero_square() {
        let err = ChainComplex::new(
            BTreeMap::from([(2, labels(1)), (1, labels(1)), (0, labels(1))]),
            BTreeMap::from([(2, SparseMatrix::identity(1)), (1, SparseMatrix::identity(1))]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Structural(ref m) if m.contains("degree 2")), "{err}");
    }

    #[test]
    fn dim_table_serialization() {
        let t = DimTable::from_pairs([(-1, 2), (3, 1), (10, 4)]);
        let j = t.to_json();
        assert_eq!(j.to_string(), r#"{"-1":2,"3":1,"10":4}"#);
        assert_eq!(DimTable::from_json(&j).unwrap(), t);
        assert_eq!(t.to_csv(), "degree,dimension\n-1,2\n3,1\n10,4\n");
    }
}
