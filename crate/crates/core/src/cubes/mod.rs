//! Cubes of configuration-space homology of `ℝⁿ` under the forgetful
//! projections, and the layer calculator built on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{arg_err, Error, Result};
use crate::exactla::{rank, Scalar, SparseMatrix};
use crate::modules::{configuration_module, RightModule};
use crate::symseq::{poincare_polynomial, FiniteSet, GradedSpace, LaurentPoly};

pub const MAX_CUBE: usize = 5;

/// Header printed above layer reports.
pub const SPLIT_NOTE: &str = "every projection F(R^n,J) -> F(R^n,K) has a section (add far-away points), \
so the homology cube is split and inclusion-exclusion gives the total fiber degreewise";

/// Subsets of the index set are bitmasks over its sorted labels.
pub type Subset = u32;

pub struct HomologyCube {
    n: i64,
    index: FiniteSet,
    module: Arc<dyn RightModule>,
    vertices: Vec<GradedSpace>,
}

impl HomologyCube {
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn index(&self) -> &FiniteSet {
        &self.index
    }

    pub fn full(&self) -> Subset {
        (1 << self.index.len()) - 1
    }

    /// Labels of a subset, increasing.
    pub fn labels(&self, s: Subset) -> Vec<u32> {
        self.index.labels().iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, &a)| a).collect()
    }

    pub fn render(&self, s: Subset) -> String {
        let ls: Vec<String> = self.labels(s).iter().map(u32::to_string).collect();
        format!("{{{}}}", ls.join(","))
    }

    pub fn vertex(&self, s: Subset) -> &GradedSpace {
        &self.vertices[s as usize]
    }

    pub fn poincare(&self, s: Subset) -> LaurentPoly {
        poincare_polynomial(self.vertex(s))
    }

    /// Subsets ordered by size, then lexicographically by their labels.
    pub fn subsets(&self) -> Vec<Subset> {
        let mut all: Vec<Subset> = (0..=self.full()).collect();
        all.sort_by_key(|&s| (s.count_ones(), self.labels(s)));
        all
    }

    /// The projection `H(F(ℝⁿ,from)) → H(F(ℝⁿ,to))` for `to ⊆ from`, computed
    /// by forgetting the missing points one at a time, largest label first.
    pub fn map(&self, from: Subset, to: Subset) -> Result<SparseMatrix> {
        if from & to != to {
            return Err(arg_err!("{} is not contained in {}", self.render(to), self.render(from)));
        }
        let drop: Vec<u32> = self.labels(from & !to).into_iter().rev().collect();
        let rows = self.vertex(to).dim();
        let mut triplets = Vec::new();
        for col in 0..self.vertex(from).dim() {
            let mut set = FiniteSet::new(self.labels(from))?;
            let mut v = vec![(col, Scalar::one())];
            for &a in &drop {
                let smaller = set.without(a)?;
                let mut next = Vec::new();
                for (idx, c) in v {
                    for (j, x) in self.module.forget_unit(&set, idx, a)? {
                        next.push((j, &c * &x));
                    }
                }
                v = crate::exactla::normalize_combination(next);
                set = smaller;
            }
            triplets.extend(v.into_iter().map(|(r, x)| (r, col, x)));
        }
        SparseMatrix::from_triplets(rows, self.vertex(from).dim(), triplets)
    }

    /// Checks `map(J→K)∘map(L→J) = map(L→K)` for every chain `K ⊆ J ⊆ L`.
    pub fn check_functoriality(&self) -> Result<usize> {
        let subsets = self.subsets();
        let triples: Vec<(Subset, Subset, Subset)> = subsets
            .iter()
            .flat_map(|&l| subsets.iter().filter(move |&&j| l & j == j).map(move |&j| (l, j)))
            .flat_map(|(l, j)| subsets.iter().filter(move |&&k| j & k == k).map(move |&k| (l, j, k)))
            .collect();
        triples.par_iter().try_for_each(|&(l, j, k)| {
            let composite = self.map(j, k)?.mul(&self.map(l, j)?)?;
            if composite != self.map(l, k)? {
                return Err(Error::Structural(format!(
                    "cube maps {} -> {} -> {} do not compose",
                    self.render(l),
                    self.render(j),
                    self.render(k)
                )));
            }
            Ok(())
        })?;
        Ok(triples.len())
    }

    /// Checks that every codimension-one projection is surjective.
    pub fn check_surjectivity(&self) -> Result<()> {
        self.edges().par_iter().try_for_each(|&(from, to)| {
            let m = self.map(from, to)?;
            if rank(&m) != m.rows() {
                return Err(Error::Structural(format!(
                    "projection {} -> {} is not surjective",
                    self.render(from),
                    self.render(to)
                )));
            }
            Ok(())
        })
    }

    fn edges(&self) -> Vec<(Subset, Subset)> {
        let k = self.index.len();
        (0..=self.full())
            .flat_map(|s| (0..k).filter(move |i| s >> i & 1 == 1).map(move |i| (s, s & !(1 << i))))
            .collect()
    }

    /// Σ_J (−1)^{|I−J|} P_J(q).
    pub fn alternating_sum(&self) -> LaurentPoly {
        let k = self.index.len() as u32;
        (0..=self.full()).fold(LaurentPoly::zero(), |acc, s| {
            let p = self.poincare(s);
            if (k - s.count_ones()) % 2 == 0 {
                acc + p
            } else {
                acc - p
            }
        })
    }

    /// Poincaré polynomial of the joint kernel of the projections out of the
    /// top vertex.
    pub fn total_kernel(&self) -> Result<LaurentPoly> {
        let top = self.full();
        let space = self.vertex(top);
        let maps: Vec<SparseMatrix> = (0..self.index.len())
            .map(|i| self.map(top, top & !(1 << i)))
            .collect::<Result<_>>()?;
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (idx, (_, d)) in space.basis().iter().enumerate() {
            by_degree.entry(*d).or_default().push(idx);
        }
        let mut out = LaurentPoly::zero();
        for (d, cols) in by_degree {
            let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
            let mut triplets = Vec::new();
            let mut offset = 0;
            for m in &maps {
                for (r, c, v) in m.iter() {
                    if let Some(&p) = pos.get(&c) {
                        triplets.push((offset + r, p, v.clone()));
                    }
                }
                offset += m.rows();
            }
            let stacked = SparseMatrix::from_triplets(offset, cols.len(), triplets)?;
            out.add_term((cols.len() - rank(&stacked)) as i64, d);
        }
        Ok(out)
    }
}

/// The cube `J ↦ H_*(F(ℝⁿ,J))` over the subsets of `index`.
pub fn build_cube_on(n: i64, index: &FiniteSet) -> Result<HomologyCube> {
    let k = index.len();
    if k == 0 || k > MAX_CUBE {
        return Err(arg_err!("cube size must be between 1 and {MAX_CUBE}, got {k}"));
    }
    let module = configuration_module(n)?;
    let by_arity: Vec<GradedSpace> = (0..=k).map(|a| module.space(a)).collect::<Result<_>>()?;
    let vertices = (0..1u32 << k).map(|s| by_arity[s.count_ones() as usize].clone()).collect();
    Ok(HomologyCube { n, index: index.clone(), module, vertices })
}

pub fn build_cube(n: i64, k: usize) -> Result<HomologyCube> {
    if k == 0 || k > MAX_CUBE {
        return Err(arg_err!("cube size must be between 1 and {MAX_CUBE}, got {k}"));
    }
    build_cube_on(n, &FiniteSet::standard(k))
}

/// Total-fiber Poincaré polynomial by inclusion-exclusion. Refuses unless
/// every projection is surjective.
pub fn total_fiber_poincare(c: &HomologyCube) -> Result<LaurentPoly> {
    c.check_surjectivity()?;
    Ok(c.alternating_sum())
}

pub fn expected_layer(n: i64, k: usize) -> LaurentPoly {
    let fact: i64 = (1..k as i64).product();
    LaurentPoly::monomial(fact, (n - 1) * (k as i64 - 1))
}

#[derive(Clone, Debug)]
pub struct LayerReport {
    pub n: i64,
    pub k: usize,
    pub vertices: Vec<(String, LaurentPoly)>,
    pub total_fiber: LaurentPoly,
    pub joint_kernel: LaurentPoly,
    pub expected: LaurentPoly,
    pub functoriality_checks: usize,
    pub pass: bool,
}

impl LayerReport {
    pub fn to_json(&self) -> Value {
        let mut vertices = serde_json::Map::new();
        for (j, p) in &self.vertices {
            vertices.insert(j.clone(), Value::String(p.to_string()));
        }
        json!({
            "n": self.n,
            "k": self.k,
            "vertices": vertices,
            "total_fiber": self.total_fiber.to_string(),
            "joint_kernel": self.joint_kernel.to_string(),
            "expected": self.expected.to_string(),
            "pass": self.pass,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("subset,poincare\n");
        for (j, p) in &self.vertices {
            s.push_str(&format!("\"{j}\",{p}\n"));
        }
        s.push_str(&format!("total_fiber,{}\nexpected,{}\npass,{}\n", self.total_fiber, self.expected, self.pass));
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("layer n={} k={}\n# {SPLIT_NOTE}\n", self.n, self.k);
        for (j, p) in &self.vertices {
            s.push_str(&format!("  {j:<12} {p}\n"));
        }
        s.push_str(&format!(
            "total fiber   {}\njoint kernel  {}\nexpected      {}\n{}\n",
            self.total_fiber,
            self.joint_kernel,
            self.expected,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        s
    }
}

pub fn layer_report(n: i64, k: usize) -> Result<LayerReport> {
    if k == 1 {
        return Err(Error::Unsupported(
            "the first layer is the space of formal immersions and is not a configuration-space total fiber"
                .into(),
        ));
    }
    if !(2..=MAX_CUBE).contains(&k) {
        return Err(arg_err!("layer index must be between 2 and {MAX_CUBE}, got {k}"));
    }
    let cube = build_cube(n, k)?;
    let functoriality_checks = cube.check_functoriality()?;
    let total_fiber = total_fiber_poincare(&cube)?;
    let joint_kernel = cube.total_kernel()?;
    let expected = expected_layer(n, k);
    let vertices = cube.subsets().into_iter().map(|s| (cube.render(s), cube.poincare(s))).collect();
    Ok(LayerReport {
        n,
        k,
        vertices,
        pass: total_fiber == expected,
        total_fiber,
        joint_kernel,
        expected,
        functoriality_checks,
    })
}
