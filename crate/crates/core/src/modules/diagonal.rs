use std::sync::Arc;

use itertools::Itertools;

use super::RightModule;
use crate::error::{arg_err, Error, Result};
use crate::exactla::{normalize_combination, Combination, Scalar};
use crate::operads::Operad;
use crate::symseq::{koszul_sign, Bijection, FiniteSet, GradedSpace, SymSeq};

/// Reduced homology of a pointed space with its reduced diagonal.
#[derive(Clone, Debug)]
pub struct GradedCoalgebraData {
    name: String,
    basis: Vec<(String, i64)>,
    /// `diagonal[i]` lists `(j, k, c)` with `Δ̄ e_i = Σ c e_j ⊗ e_k`.
    diagonal: Vec<Vec<(usize, usize, Scalar)>>,
}

type Tensor = Vec<(Vec<usize>, Scalar)>;

impl GradedCoalgebraData {
    /// Checks degrees, coassociativity and graded cocommutativity.
    pub fn new(
        name: &str,
        basis: Vec<(String, i64)>,
        diagonal: Vec<Vec<(usize, usize, Scalar)>>,
    ) -> Result<Self> {
        if diagonal.len() != basis.len() {
            return Err(arg_err!("diagonal given for {} of {} classes", diagonal.len(), basis.len()));
        }
        let c = GradedCoalgebraData { name: name.to_string(), basis, diagonal };
        let h = c.basis.len();
        for (i, terms) in c.diagonal.iter().enumerate() {
            for (j, k, _) in terms {
                if *j >= h || *k >= h {
                    return Err(arg_err!("diagonal index out of range"));
                }
                if c.deg(*j) + c.deg(*k) != c.deg(i) {
                    return Err(Error::Structural(format!("diagonal of {} is not degree-preserving", c.basis[i].0)));
                }
            }
            let left = c.apply_slot(&c.iterated(i, 2), 0);
            let right = c.apply_slot(&c.iterated(i, 2), 1);
            if left != right {
                return Err(Error::Structural(format!("diagonal is not coassociative on {}", c.basis[i].0)));
            }
            let mut swapped: Tensor = Vec::new();
            for (t, v) in c.iterated(i, 2) {
                let s = if odd(c.deg(t[0]) * c.deg(t[1])) { -v } else { v };
                swapped.push((vec![t[1], t[0]], s));
            }
            if normalize(swapped) != c.iterated(i, 2) {
                return Err(Error::Structural(format!("diagonal is not cocommutative on {}", c.basis[i].0)));
            }
        }
        Ok(c)
    }

    /// `S^n`: one class in degree `n` with vanishing reduced diagonal.
    pub fn sphere(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(arg_err!("sphere needs n >= 1, got {n}"));
        }
        Self::new(&format!("S^{n}"), vec![("ι".into(), n)], vec![vec![]])
    }

    /// The torus `T²`: `a, b` in degree 1, `c` in degree 2, `Δ̄c = a⊗b - b⊗a`.
    pub fn torus() -> Self {
        let basis = vec![("a".into(), 1), ("b".into(), 1), ("c".into(), 2)];
        let diag = vec![vec![], vec![], vec![(0, 1, Scalar::one()), (1, 0, -Scalar::one())]];
        Self::new("T^2", basis, diag).expect("torus coalgebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    fn deg(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    /// Applies `Δ̄` in tensor slot `s`.
    fn apply_slot(&self, t: &Tensor, s: usize) -> Tensor {
        let mut out = Vec::new();
        for (w, v) in t {
            for (j, k, c) in &self.diagonal[w[s]] {
                let mut nw = w[..s].to_vec();
                nw.push(*j);
                nw.push(*k);
                nw.extend_from_slice(&w[s + 1..]);
                out.push((nw, v * c));
            }
        }
        normalize(out)
    }

    /// `Δ̄^{(m)} e_i ∈ H̃^{⊗m}`.
    fn iterated(&self, i: usize, m: usize) -> Tensor {
        let mut t: Tensor = vec![(vec![i], Scalar::one())];
        for _ in 1..m {
            t = self.apply_slot(&t, 0);
        }
        t
    }
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

fn normalize(t: Tensor) -> Tensor {
    let mut t = t;
    t.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Tensor = Vec::new();
    for (w, v) in t {
        match out.last_mut() {
            Some((u, x)) if *u == w => *x = x.clone() + v,
            _ => out.push((w, v)),
        }
    }
    out.retain(|(_, v)| *v != Scalar::zero());
    out
}

/// `X^∧(I) = H̃(X)^{⊗I}` over `com`, acting through the iterated reduced diagonal.
pub struct DiagonalModule {
    coalg: GradedCoalgebraData,
    com: Arc<dyn Operad>,
}

impl DiagonalModule {
    pub fn new(coalg: GradedCoalgebraData) -> Result<Self> {
        Ok(DiagonalModule { coalg, com: crate::operads::builtin_operad("com", None)? })
    }

    pub fn coalgebra(&self) -> &GradedCoalgebraData {
        &self.coalg
    }

    fn h(&self) -> usize {
        self.coalg.basis.len()
    }

    fn word(&self, k: usize, idx: usize) -> Vec<usize> {
        let h = self.h();
        let mut w = vec![0; k];
        let mut x = idx;
        for slot in (0..k).rev() {
            w[slot] = x % h;
            x /= h;
        }
        w
    }

    fn index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &x| acc * self.h() + x)
    }

    fn check(&self, k: usize, idx: usize) -> Result<()> {
        if idx >= self.h().pow(k as u32) {
            return Err(arg_err!("basis index {idx} out of range in arity {k}"));
        }
        Ok(())
    }

    /// Reorders a tensor whose slot `p` is destined for position `target[p]`.
    fn place(&self, w: &[usize], target: &[usize]) -> (Vec<usize>, i32) {
        let mut degrees = vec![0; w.len()];
        let mut out = vec![0; w.len()];
        for (p, &t) in target.iter().enumerate() {
            degrees[t] = self.coalg.deg(w[p]);
            out[t] = w[p];
        }
        (out, koszul_sign(target, &degrees))
    }
}

impl SymSeq for DiagonalModule {
    fn name(&self) -> String {
        format!("{}^∧", self.coalg.name)
    }

    fn space(&self, arity: usize) -> Result<GradedSpace> {
        let basis = (0..arity)
            .map(|_| 0..self.h())
            .multi_cartesian_product()
            .map(|w| {
                let label = w.iter().map(|&i| self.coalg.basis[i].0.as_str()).join("⊗");
                (label, w.iter().map(|&i| self.coalg.deg(i)).sum())
            })
            .collect();
        GradedSpace::new(basis)
    }

    fn permute_basis(&self, arity: usize, idx: usize, sigma: &Bijection) -> Result<Combination> {
        self.check(arity, idx)?;
        let w = self.word(arity, idx);
        let target: Vec<usize> = (1..=arity as u32).map(|i| sigma.apply(i) as usize - 1).collect();
        let (out, s) = self.place(&w, &target);
        Ok(vec![(self.index(&out), Scalar::sign(s))])
    }
}

impl RightModule for DiagonalModule {
    fn operad(&self) -> &Arc<dyn Operad> {
        &self.com
    }

    fn dim(&self, arity: usize) -> Result<usize> {
        Ok(self.h().pow(arity as u32))
    }

    fn degree(&self, arity: usize, idx: usize) -> Result<i64> {
        self.check(arity, idx)?;
        Ok(self.word(arity, idx).iter().map(|&i| self.coalg.deg(i)).sum())
    }

    fn act(&self, i: &FiniteSet, r: usize, a: u32, j: &FiniteSet, o: usize) -> Result<Combination> {
        self.check(i.len(), r)?;
        if o != 0 {
            return Err(arg_err!("com has a single basis element"));
        }
        let pos = i.position(a).ok_or_else(|| arg_err!("{a} is not in {i}"))?;
        let rest = i.without(a)?;
        if j.labels().iter().any(|&l| rest.contains(l)) {
            return Err(arg_err!("{j} meets {rest}"));
        }
        let merged = FiniteSet::new(rest.labels().iter().chain(j.labels()).copied())?;
        let mut planar: Vec<u32> = i.labels()[..pos].to_vec();
        planar.extend_from_slice(j.labels());
        planar.extend_from_slice(&i.labels()[pos + 1..]);
        let target: Vec<usize> = planar.iter().map(|&l| merged.position(l).unwrap()).collect();
        let w = self.word(i.len(), r);
        let mut out = Combination::new();
        for (d, c) in self.coalg.iterated(w[pos], j.len()) {
            let mut full = w[..pos].to_vec();
            full.extend_from_slice(&d);
            full.extend_from_slice(&w[pos + 1..]);
            let (sorted, s) = self.place(&full, &target);
            out.push((self.index(&sorted), if s < 0 { -c } else { c }));
        }
        Ok(normalize_combination(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_coalgebras() {
        let basis = vec![("a".to_string(), 1), ("b".to_string(), 1), ("c".to_string(), 2)];
        // a⊗b + b⊗a is not graded cocommutative
        let diag = vec![vec![], vec![], vec![(0, 1, Scalar::one()), (1, 0, Scalar::one())]];
        assert!(GradedCoalgebraData::new("x", basis.clone(), diag).is_err());
        let diag = vec![vec![], vec![], vec![(0, 0, Scalar::one()), (2, 2, Scalar::one())]];
        assert!(GradedCoalgebraData::new("x", basis, diag).is_err());
        assert!(GradedCoalgebraData::sphere(0).is_err());
    }

    #[test]
    fn torus_iterated_diagonal() {
        let t = GradedCoalgebraData::torus();
        assert_eq!(t.iterated(2, 2).len(), 2);
        assert!(t.iterated(2, 3).is_empty());
        assert_eq!(t.iterated(0, 1), vec![(vec![0], Scalar::one())]);
    }
}
