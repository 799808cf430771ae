//! Finite sets, bijections, graded spaces and symmetric sequences.

mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

pub use poly::LaurentPoly;

use crate::error::{arg_err, Result};
use crate::exactla::{normalize_combination, Combination, DimTable};

/// Finite set of positive integer atoms, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiniteSet(Vec<u32>);

impl FiniteSet {
    pub fn new(labels: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = labels.into_iter().collect();
        let n = v.len();
        v.sort_unstable();
        v.dedup();
        if v.len() != n {
            return Err(arg_err!("labels of a finite set must be distinct"));
        }
        Ok(FiniteSet(v))
    }

    /// The standard set `{1, ..., k}`.
    pub fn standard(k: usize) -> Self {
        FiniteSet((1..=k as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, a: u32) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    /// 0-based position of `a` in sorted order.
    pub fn position(&self, a: u32) -> Option<usize> {
        self.0.binary_search(&a).ok()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn without(&self, a: u32) -> Result<Self> {
        if !self.contains(a) {
            return Err(arg_err!("{a} is not an element of {self}"));
        }
        Ok(FiniteSet(self.0.iter().copied().filter(|&x| x != a).collect()))
    }

    /// Order-preserving bijection onto `{1..k}`.
    pub fn standardization(&self) -> BTreeMap<u32, u32> {
        self.0.iter().enumerate().map(|(i, &x)| (x, i as u32 + 1)).collect()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// `I ∪_a J := (I - {a}) ⊔ J`.
///
/// When `J` meets `I - {a}` it is first relabeled order-preservingly past
/// `max(I)`; the relabeling actually used is returned alongside.
pub fn infinitesimal_composite(
    i: &FiniteSet,
    a: u32,
    j: &FiniteSet,
) -> Result<(FiniteSet, BTreeMap<u32, u32>)> {
    let rest = i.without(a)?;
    let clash = j.labels().iter().any(|&x| rest.contains(x));
    let relabel: BTreeMap<u32, u32> = if clash {
        let base = i.max().unwrap_or(0);
        j.labels().iter().enumerate().map(|(k, &x)| (x, base + 1 + k as u32)).collect()
    } else {
        j.labels().iter().map(|&x| (x, x)).collect()
    };
    let out = FiniteSet::new(rest.labels().iter().copied().chain(relabel.values().copied()))?;
    Ok((out, relabel))
}

/// Bijection of a finite set onto itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bijection(BTreeMap<u32, u32>);

impl Bijection {
    pub fn new(map: BTreeMap<u32, u32>) -> Result<Self> {
        let dom: BTreeSet<u32> = map.keys().copied().collect();
        let img: BTreeSet<u32> = map.values().copied().collect();
        if dom != img || img.len() != map.len() {
            return Err(arg_err!("map is not a bijection of its domain"));
        }
        Ok(Bijection(map))
    }

    /// From the one-line image list of `1..k`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        Self::new(images.iter().enumerate().map(|(i, &x)| (i as u32 + 1, x)).collect())
    }

    pub fn identity(set: &FiniteSet) -> Self {
        Bijection(set.labels().iter().map(|&x| (x, x)).collect())
    }

    pub fn transposition(k: usize, a: u32, b: u32) -> Result<Self> {
        let mut m: BTreeMap<u32, u32> = (1..=k as u32).map(|x| (x, x)).collect();
        if !m.contains_key(&a) || !m.contains_key(&b) {
            return Err(arg_err!("transposition ({a} {b}) outside 1..{k}"));
        }
        m.insert(a, b);
        m.insert(b, a);
        Ok(Bijection(m))
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0.get(&x).copied().unwrap_or(x)
    }

    pub fn map(&self) -> &BTreeMap<u32, u32> {
        &self.0
    }

    pub fn domain(&self) -> FiniteSet {
        FiniteSet(self.0.keys().copied().collect())
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Bijection) -> Bijection {
        Bijection(other.0.iter().map(|(&x, &y)| (x, self.apply(y))).collect())
    }

    pub fn inverse(&self) -> Bijection {
        Bijection(self.0.iter().map(|(&x, &y)| (y, x)).collect())
    }

    /// Parity of the permutation: +1 or -1.
    pub fn sign(&self) -> i32 {
        let images: Vec<u32> = self.0.values().copied().collect();
        permutation_sign(&images)
    }
}

/// Sign of the permutation sorting `seq` (distinct entries).
pub fn permutation_sign<T: Ord>(seq: &[T]) -> i32 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Koszul sign of reordering graded items: `order[i]` is the current
/// position's item id and `degrees[id]` its degree; the target order is by
/// increasing id.
pub fn koszul_sign(order: &[usize], degrees: &[i64]) -> i32 {
    let mut odd = 0usize;
    for i in 0..order.len() {
        if degrees[order[i]].rem_euclid(2) == 0 {
            continue;
        }
        for j in i + 1..order.len() {
            if order[i] > order[j] && degrees[order[j]].rem_euclid(2) == 1 {
                odd += 1;
            }
        }
    }
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Finite-dimensional graded vector space with a named basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedSpace {
    basis: Vec<(String, i64)>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(String, i64)>) -> Result<Self> {
        let names: BTreeSet<&str> = basis.iter().map(|(s, _)| s.as_str()).collect();
        if names.len() != basis.len() {
            return Err(arg_err!("basis labels must be distinct"));
        }
        Ok(GradedSpace { basis })
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_in(&self, degree: i64) -> usize {
        self.basis.iter().filter(|(_, d)| *d == degree).count()
    }

    /// Dimension in each degree.
    pub fn dim_table(&self) -> DimTable {
        let mut t = DimTable::new();
        for (_, d) in &self.basis {
            *t.0.entry(*d).or_insert(0) += 1;
        }
        t
    }

    pub fn degree(&self, idx: usize) -> i64 {
        self.basis[idx].1
    }

    /// Copy with every degree shifted by `s`.
    pub fn shifted(&self, s: i64) -> Self {
        GradedSpace { basis: self.basis.iter().map(|(l, d)| (l.clone(), d + s)).collect() }
    }
}

pub fn poincare_polynomial(g: &GradedSpace) -> LaurentPoly {
    LaurentPoly::from_terms(g.basis.iter().map(|(_, d)| (*d, 1)))
}

/// Arity-indexed family of graded spaces with a signed action of bijections.
///
/// Spaces are stored on the standard sets `{1..k}`; other label sets are
/// reached through order-preserving relabeling.
pub trait SymSeq: Send + Sync {
    fn name(&self) -> String;

    fn space(&self, arity: usize) -> Result<GradedSpace>;

    /// Image of basis vector `idx` under a bijection of `{1..arity}`.
    fn permute_basis(&self, arity: usize, idx: usize, sigma: &Bijection) -> Result<Combination>;
}

/// Applies `sigma` to a vector of `s` in arity `|dom σ|`.
pub fn apply_bijection(s: &dyn SymSeq, sigma: &Bijection, v: &Combination) -> Result<Combination> {
    let k = sigma.map().len();
    if sigma.domain() != FiniteSet::standard(k) {
        return Err(arg_err!("bijection must act on 1..{k}"));
    }
    let dim = s.space(k)?.dim();
    let mut out = Combination::new();
    for (i, c) in v {
        if *i >= dim {
            return Err(arg_err!("basis index {i} out of range for arity {k}"));
        }
        for (j, x) in s.permute_basis(k, *i, sigma)? {
            out.push((j, c * &x));
        }
    }
    Ok(normalize_combination(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> FiniteSet {
        FiniteSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn composite_examples() {
        let (s, _) = infinitesimal_composite(&set(&[1, 2]), 2, &set(&[3, 4])).unwrap();
        assert_eq!(s, set(&[1, 3, 4]));
        let (s, _) = infinitesimal_composite(&set(&[1]), 1, &set(&[2])).unwrap();
        assert_eq!(s, set(&[2]));
        let (s, _) = infinitesimal_composite(&set(&[1, 2, 3]), 1, &set(&[4, 5])).unwrap();
        assert_eq!(s, set(&[2, 3, 4, 5]));
        assert_eq!(s.len(), 3 + 2 - 1);
        assert!(infinitesimal_composite(&set(&[1, 2]), 7, &set(&[3])).is_err());
    }

    #[test]
    fn composite_relabels_clashes() {
        let (s, r) = infinitesimal_composite(&set(&[1, 2, 3]), 2, &set(&[1, 2])).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(r[&1], 4);
        assert_eq!(r[&2], 5);
    }

    #[test]
    fn bijections() {
        assert!(Bijection::from_images(&[1, 1]).is_err());
        let s = Bijection::from_images(&[2, 3, 1]).unwrap();
        let t = Bijection::transposition(3, 1, 2).unwrap();
        assert_eq!(s.compose(&t).apply(1), 3);
        assert_eq!(s.sign(), 1);
        assert_eq!(t.sign(), -1);
        assert_eq!(s.compose(&s.inverse()), Bijection::identity(&FiniteSet::standard(3)));
    }

    #[test]
    fn koszul_signs() {
        // swapping two odd items
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 2]), 1);
        assert_eq!(koszul_sign(&[2, 0, 1], &[1, 1, 1]), 1);
    }

    #[test]
    fn poincare() {
        assert_eq!(poincare_polynomial(&GradedSpace::default()), LaurentPoly::zero());
        let g = GradedSpace::new(vec![("a".into(), 0), ("b".into(), 1), ("c".into(), -2)]).unwrap();
        let p = poincare_polynomial(&g);
        assert_eq!(p.eval_one(), g.dim() as i64);
        assert_eq!(p.coeff(-2), 1);
    }
}
