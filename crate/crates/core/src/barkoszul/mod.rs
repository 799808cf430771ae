//! Bar complexes of operads and right modules, Koszul-dual dimension tables
//! and the Poincaré–Koszul comparison reports.

mod report;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

pub use report::{check_module_pk, check_poincare_koszul, koszul_prediction, ArityReport, DualityReport};

use crate::error::{arg_err, Error, Result};
use crate::exactla::{homology_dims, ChainComplex, DimTable, Fp, Scalar, SparseMatrix};
use crate::modules::RightModule;
use crate::operads::Operad;
use crate::optree::{enumerate_trees, Child, OpTree};
use crate::symseq::FiniteSet;

/// Vertex label: arity of the vertex and a basis index of the component.
pub type BarLabel = (usize, usize);

pub type BarTree = OpTree<BarLabel>;

/// What the bar construction needs from an operad or a module.
trait Source: Sync {
    fn name(&self) -> String;
    fn is_module(&self) -> bool;
    fn dim(&self, arity: usize, root: bool) -> Result<usize>;
    /// Unsuspended degree of a label.
    fn degree(&self, label: BarLabel, root: bool) -> Result<i64>;
    fn compose(&self, p: BarLabel, p_in: &FiniteSet, a: u32, c: BarLabel, c_in: &FiniteSet, root: bool) -> Result<Vec<(usize, Scalar)>>;
    fn label_name(&self, label: BarLabel, root: bool) -> String;
    /// Whether an arity-1 root over an internal vertex is excluded.
    fn normalized_root(&self) -> bool;
}

struct OperadSource<'a>(&'a dyn Operad);
struct ModuleSource<'a>(&'a dyn RightModule);

impl Source for OperadSource<'_> {
    fn name(&self) -> String {
        self.0.name()
    }
    fn is_module(&self) -> bool {
        false
    }
    fn dim(&self, arity: usize, _: bool) -> Result<usize> {
        self.0.dim(arity)
    }
    fn degree(&self, (k, i): BarLabel, _: bool) -> Result<i64> {
        self.0.degree(k, i)
    }
    fn compose(&self, (_, p): BarLabel, p_in: &FiniteSet, a: u32, (_, c): BarLabel, c_in: &FiniteSet, _: bool) -> Result<Vec<(usize, Scalar)>> {
        self.0.compose(p_in, p, a, c_in, c)
    }
    fn label_name(&self, (k, i): BarLabel, _: bool) -> String {
        self.0.space(k).map(|s| s.basis()[i].0.clone()).unwrap_or_default()
    }
    fn normalized_root(&self) -> bool {
        false
    }
}

impl Source for ModuleSource<'_> {
    fn name(&self) -> String {
        self.0.name()
    }
    fn is_module(&self) -> bool {
        true
    }
    fn dim(&self, arity: usize, root: bool) -> Result<usize> {
        if root {
            self.0.dim(arity)
        } else {
            self.0.operad().dim(arity)
        }
    }
    fn degree(&self, (k, i): BarLabel, root: bool) -> Result<i64> {
        if root {
            self.0.degree(k, i)
        } else {
            self.0.operad().degree(k, i)
        }
    }
    fn compose(&self, (_, p): BarLabel, p_in: &FiniteSet, a: u32, (_, c): BarLabel, c_in: &FiniteSet, root: bool) -> Result<Vec<(usize, Scalar)>> {
        if root {
            self.0.act(p_in, p, a, c_in, c)
        } else {
            self.0.operad().compose(p_in, p, a, c_in, c)
        }
    }
    fn label_name(&self, (k, i): BarLabel, root: bool) -> String {
        let s = if root { self.0.space(k) } else { self.0.operad().space(k) };
        s.map(|s| s.basis()[i].0.clone()).unwrap_or_default()
    }
    fn normalized_root(&self) -> bool {
        self.0.unit_root()
    }
}

/// The bar complex in one arity, with its tree bases.
pub struct BarComplex {
    pub source: String,
    pub leaves: FiniteSet,
    pub trees: BTreeMap<i64, Vec<BarTree>>,
    pub complex: ChainComplex,
}

impl BarComplex {
    pub fn arity(&self) -> usize {
        self.leaves.len()
    }

    pub fn homology(&self) -> DimTable {
        par_homology(&self.complex)
    }

    /// Homology over `F_p`.
    pub fn homology_mod(&self, p: u64) -> Result<DimTable> {
        let c: ChainComplex<Fp> = self.complex.map_field(|m| m.mod_p(p))?;
        Ok(par_homology(&c))
    }
}

fn par_homology<F: crate::exactla::Field>(c: &ChainComplex<F>) -> DimTable {
    let ranks: BTreeMap<i64, usize> = c
        .differentials()
        .par_iter()
        .map(|(&j, d)| (j, crate::exactla::rank(d)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let r = |j: i64| ranks.get(&j).copied().unwrap_or(0);
    let out = DimTable::from_pairs(c.spaces().iter().map(|(&j, b)| (j, b.len() - r(j) - r(j + 1))));
    debug_assert_eq!(out, homology_dims(c));
    out
}

/// `B(O)(k)`: trees with at least binary vertices labeled by `O`, a tree of
/// degree `Σ|x_v| + #vertices`.
pub fn bar_complex(op: &dyn Operad, k: usize) -> Result<BarComplex> {
    if k < 2 {
        return Err(arg_err!("the operad bar complex needs arity >= 2, got {k}"));
    }
    bar_complex_on(op, &FiniteSet::standard(k))
}

pub fn bar_complex_on(op: &dyn Operad, leaves: &FiniteSet) -> Result<BarComplex> {
    build(&OperadSource(op), leaves)
}

/// `B(R)(k)`: as for operads, with a root labeled by `R` that carries no
/// suspension.
pub fn bar_complex_module(r: &dyn RightModule, k: usize) -> Result<BarComplex> {
    if k < 1 {
        return Err(arg_err!("the module bar complex needs arity >= 1"));
    }
    bar_complex_module_on(r, &FiniteSet::standard(k))
}

pub fn bar_complex_module_on(r: &dyn RightModule, leaves: &FiniteSet) -> Result<BarComplex> {
    build(&ModuleSource(r), leaves)
}

/// `j ↦ dim H_j(B(O)(k))`.
pub fn koszul_dual_dims(op: &dyn Operad, k: usize) -> Result<DimTable> {
    Ok(bar_complex(op, k)?.homology())
}

fn tensor_degree(src: &dyn Source, label: &BarLabel, root: bool) -> i64 {
    let d = src.degree(*label, root).expect("label in range");
    if root && src.is_module() {
        d
    } else {
        d + 1
    }
}

fn render(src: &dyn Source, t: &BarTree) -> String {
    fn go(src: &dyn Source, t: &BarTree, v: usize, out: &mut String) {
        let vx = &t.vertices()[v];
        let root = v == 0 && t.is_module_tree();
        out.push_str(&src.label_name(vx.label, root));
        out.push('(');
        for (i, ch) in vx.children.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match *ch {
                Child::Leaf(a) => out.push_str(&a.to_string()),
                Child::Vertex(w) => go(src, t, w, out),
            }
        }
        out.push(')');
    }
    let mut s = String::new();
    go(src, t, 0, &mut s);
    s
}

fn build(src: &dyn Source, leaves: &FiniteSet) -> Result<BarComplex> {
    let k = leaves.len();
    let module = src.is_module();
    let mut dims: HashMap<(usize, bool), usize> = HashMap::new();
    for a in 1..=k {
        dims.insert((a, false), if a >= 2 { src.dim(a, false)? } else { 0 });
        if module {
            dims.insert((a, true), src.dim(a, true)?);
        }
    }
    let normalized = module && src.normalized_root() && k >= 2;
    let labels = |arity: usize, root: bool| -> Vec<BarLabel> {
        if root && normalized && arity == 1 {
            return Vec::new();
        }
        (0..dims[&(arity, root)]).map(|i| (arity, i)).collect()
    };
    let allowed = |a: usize| a >= 2;
    let all = enumerate_trees(leaves, &allowed, module, &labels);
    let degree = |l: &BarLabel, root: bool| tensor_degree(src, l, root && module);

    let mut trees: BTreeMap<i64, Vec<BarTree>> = BTreeMap::new();
    for t in all {
        let d: i64 = t.vertices().iter().enumerate().map(|(i, v)| degree(&v.label, i == 0)).sum();
        trees.entry(d).or_default().push(t);
    }
    let index: HashMap<&BarTree, usize> =
        trees.values().flat_map(|ts| ts.iter().enumerate().map(|(i, t)| (t, i))).collect();

    let combine = |p: &BarLabel, p_in: &FiniteSet, a: u32, c: &BarLabel, c_in: &FiniteSet, root: bool| -> Result<Vec<(BarLabel, Scalar)>> {
        let root = root && module;
        let merged = p_in.len() + c_in.len() - 1;
        let local = src.compose(*p, p_in, a, *c, c_in, root)?;
        // sx ⊗ sy ↦ (-1)^{|x|+1} s(x∘y); r ⊗ sy ↦ (-1)^{|r|} r∘y
        let dp = src.degree(*p, root)?;
        let flip = if root { dp.rem_euclid(2) == 1 } else { dp.rem_euclid(2) == 0 };
        Ok(local.into_iter().map(|(i, v)| ((merged, i), if flip { -v } else { v })).collect())
    };

    let mut differentials = BTreeMap::new();
    for (&j, ts) in &trees {
        let Some(below) = trees.get(&(j - 1)) else { continue };
        let triplets: Vec<(usize, usize, Scalar)> = ts
            .par_iter()
            .enumerate()
            .map(|(col, t)| -> Result<Vec<(usize, usize, Scalar)>> {
                let mut out = Vec::new();
                for e in t.internal_edges() {
                    for (u, c) in t.contract_edge(e, combine, degree)? {
                        let row = *index.get(&u).ok_or_else(|| {
                            Error::Structural(format!("contraction left the basis: {}", render(src, &u)))
                        })?;
                        out.push((row, col, c));
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut m = SparseMatrix::zeros(below.len(), ts.len());
        for (r, c, v) in triplets {
            m.add_to(r, c, v)?;
        }
        differentials.insert(j, m);
    }
    let spaces: BTreeMap<i64, Vec<String>> =
        trees.iter().map(|(&j, ts)| (j, ts.iter().map(|t| render(src, t)).collect())).collect();
    let complex = ChainComplex::new(spaces, differentials).map_err(|e| match e {
        Error::Structural(m) => Error::Structural(format!("bar complex of {} in arity {k}: {m}", src.name())),
        other => other,
    })?;
    Ok(BarComplex { source: src.name(), leaves: leaves.clone(), trees, complex })
}
