//! Right modules over operads.

mod diagonal;
mod registry;

use std::sync::Arc;

use serde_json::{json, Value};

pub use diagonal::{DiagonalModule, GradedCoalgebraData};
pub use registry::{build_module, module_registry, ModuleFactory};

use crate::error::{arg_err, Error, Result};
use crate::exactla::{normalize_combination, Combination, Scalar};
use crate::operads::{suspend, suspension_sign, Operad, OperadElement, OperadMorphism};
use crate::symseq::{infinitesimal_composite, Bijection, FiniteSet, GradedSpace, LaurentPoly, SymSeq};

/// A right module `R` over an operad `O`: partial composites
/// `R(I) ⊗ O(J) → R(I ∪_a J)`.
pub trait RightModule: SymSeq {
    fn operad(&self) -> &Arc<dyn Operad>;

    fn dim(&self, arity: usize) -> Result<usize>;

    fn degree(&self, arity: usize, idx: usize) -> Result<i64>;

    /// `r ∘_a o` on basis elements; `J` must be disjoint from `I - {a}`.
    fn act(&self, i: &FiniteSet, r: usize, a: u32, j: &FiniteSet, o: usize) -> Result<Combination>;

    /// Whether `R(1)` is spanned by the operad unit, so that the bar
    /// construction drops arity-one roots sitting over another vertex.
    fn unit_root(&self) -> bool {
        false
    }

    /// Whether `forget_unit` is available (and arity 0 is the ground field).
    fn is_unitary(&self) -> bool {
        false
    }

    /// Unitary map `R(I) → R(I - {a})`.
    fn forget_unit(&self, _i: &FiniteSet, _r: usize, _a: u32) -> Result<Combination> {
        Err(Error::Unsupported(format!("{} has no unitary maps", self.name())))
    }

    fn poincare(&self, arity: usize) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for i in 0..self.dim(arity)? {
            p.add_term(1, self.degree(arity, i)?);
        }
        Ok(p)
    }
}

fn scale(c: Combination, s: i32) -> Combination {
    if s < 0 {
        c.into_iter().map(|(i, v)| (i, -v)).collect()
    } else {
        c
    }
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// `O` as a right module over itself.
pub struct OperadModule {
    op: Arc<dyn Operad>,
    label: String,
}

impl OperadModule {
    fn unitary_op(&self) -> bool {
        let (pres, m) = self.op.presentation();
        m == 0 && pres.is_unitary()
    }
}

pub fn operad_as_module(op: Arc<dyn Operad>) -> Arc<dyn RightModule> {
    let label = op.name();
    Arc::new(OperadModule { op, label })
}

/// Homology of configuration spaces of `ℝⁿ`, which is `pois(n)` as a module
/// over itself.
pub fn configuration_module(n: i64) -> Result<Arc<dyn RightModule>> {
    if n < 1 {
        return Err(arg_err!("configuration module needs n >= 1, got {n}"));
    }
    let op = crate::operads::builtin_operad("pois", Some(n))?;
    Ok(Arc::new(OperadModule { op, label: format!("H(F(R^{n},-))") }))
}

impl SymSeq for OperadModule {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn space(&self, arity: usize) -> Result<GradedSpace> {
        if arity == 0 {
            let basis = if self.unitary_op() { vec![("∅".to_string(), 0)] } else { vec![] };
            return GradedSpace::new(basis);
        }
        self.op.space(arity)
    }

    fn permute_basis(&self, arity: usize, idx: usize, sigma: &Bijection) -> Result<Combination> {
        if arity == 0 {
            return Ok(vec![(idx, Scalar::one())]);
        }
        self.op.permute_basis(arity, idx, sigma)
    }
}

impl RightModule for OperadModule {
    fn operad(&self) -> &Arc<dyn Operad> {
        &self.op
    }

    fn dim(&self, arity: usize) -> Result<usize> {
        if arity == 0 {
            return Ok(usize::from(self.unitary_op()));
        }
        self.op.dim(arity)
    }

    fn degree(&self, arity: usize, idx: usize) -> Result<i64> {
        if arity == 0 {
            return Ok(0);
        }
        self.op.degree(arity, idx)
    }

    fn act(&self, i: &FiniteSet, r: usize, a: u32, j: &FiniteSet, o: usize) -> Result<Combination> {
        self.op.compose(i, r, a, j, o)
    }

    fn unit_root(&self) -> bool {
        true
    }

    fn is_unitary(&self) -> bool {
        self.unitary_op()
    }

    fn forget_unit(&self, i: &FiniteSet, r: usize, a: u32) -> Result<Combination> {
        if !self.unitary_op() {
            return Err(Error::Unsupported(format!("{} has no unitary maps", self.label)));
        }
        if i.len() == 1 && i.contains(a) {
            return Ok(vec![(0, Scalar::one())]);
        }
        self.op.forget_unit(i, r, a)
    }
}

/// `s_(n,d) R`: arity-k degrees shifted by `nk - n + d`, over `s_n O`.
pub struct SuspendedModule {
    inner: Arc<dyn RightModule>,
    operad: Arc<dyn Operad>,
    n: i64,
    d: i64,
}

pub fn suspend_module(r: Arc<dyn RightModule>, n: i64, d: i64) -> Arc<dyn RightModule> {
    if n == 0 && d == 0 {
        return r;
    }
    let operad = suspend(r.operad(), n);
    Arc::new(SuspendedModule { inner: r, operad, n, d })
}

impl SuspendedModule {
    fn shift(&self, arity: usize) -> i64 {
        self.n * arity as i64 - self.n + self.d
    }
}

impl SymSeq for SuspendedModule {
    fn name(&self) -> String {
        format!("s^({},{}) {}", self.n, self.d, self.inner.name())
    }

    fn space(&self, arity: usize) -> Result<GradedSpace> {
        Ok(self.inner.space(arity)?.shifted(self.shift(arity)))
    }

    fn permute_basis(&self, arity: usize, idx: usize, sigma: &Bijection) -> Result<Combination> {
        let c = self.inner.permute_basis(arity, idx, sigma)?;
        Ok(if odd(self.n) { scale(c, sigma.sign()) } else { c })
    }
}

impl RightModule for SuspendedModule {
    fn operad(&self) -> &Arc<dyn Operad> {
        &self.operad
    }

    fn dim(&self, arity: usize) -> Result<usize> {
        self.inner.dim(arity)
    }

    fn degree(&self, arity: usize, idx: usize) -> Result<i64> {
        Ok(self.inner.degree(arity, idx)? + self.shift(arity))
    }

    fn act(&self, i: &FiniteSet, r: usize, a: u32, j: &FiniteSet, o: usize) -> Result<Combination> {
        let c = self.inner.act(i, r, a, j, o)?;
        let mut sign = if odd(self.n) { suspension_sign(i, a, j)? } else { 1 };
        if odd(self.inner.degree(i.len(), r)? * self.n * (j.len() as i64 - 1)) {
            sign = -sign;
        }
        Ok(scale(c, sign))
    }

    fn unit_root(&self) -> bool {
        self.inner.unit_root()
    }
}

/// `R` viewed over the source of `f`.
pub struct RestrictedModule {
    inner: Arc<dyn RightModule>,
    f: Arc<OperadMorphism>,
}

pub fn restrict(r: Arc<dyn RightModule>, f: Arc<OperadMorphism>) -> Result<Arc<dyn RightModule>> {
    if f.target().name() != r.operad().name() {
        return Err(arg_err!(
            "{} is a module over {}, but {} lands in {}",
            r.name(),
            r.operad().name(),
            f.name(),
            f.target().name()
        ));
    }
    Ok(Arc::new(RestrictedModule { inner: r, f }))
}

impl SymSeq for RestrictedModule {
    fn name(&self) -> String {
        format!("res[{}] {}", self.f.name(), self.inner.name())
    }

    fn space(&self, arity: usize) -> Result<GradedSpace> {
        self.inner.space(arity)
    }

    fn permute_basis(&self, arity: usize, idx: usize, sigma: &Bijection) -> Result<Combination> {
        self.inner.permute_basis(arity, idx, sigma)
    }
}

impl RightModule for RestrictedModule {
    fn operad(&self) -> &Arc<dyn Operad> {
        self.f.source()
    }

    fn dim(&self, arity: usize) -> Result<usize> {
        self.inner.dim(arity)
    }

    fn degree(&self, arity: usize, idx: usize) -> Result<i64> {
        self.inner.degree(arity, idx)
    }

    fn act(&self, i: &FiniteSet, r: usize, a: u32, j: &FiniteSet, o: usize) -> Result<Combination> {
        let mut out = Combination::new();
        for (k, c) in self.f.apply_basis(j, o)? {
            out.extend(self.inner.act(i, r, a, j, k)?.into_iter().map(|(m, v)| (m, &c * &v)));
        }
        Ok(normalize_combination(out))
    }

    fn unit_root(&self) -> bool {
        self.inner.unit_root()
    }
}

/// An element of `R(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub module: String,
    pub arity: FiniteSet,
    pub coords: Combination,
}

impl ModuleElement {
    pub fn basis(r: &dyn RightModule, arity: FiniteSet, idx: usize) -> Result<Self> {
        if idx >= r.dim(arity.len())? {
            return Err(arg_err!("basis index {idx} out of range in arity {}", arity.len()));
        }
        Ok(ModuleElement { module: r.name(), arity, coords: vec![(idx, Scalar::one())] })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// `r ∘_a o`, relabeling `J` past `max(I)` when it meets `I - {a}`.
pub fn module_act(r: &dyn RightModule, x: &ModuleElement, a: u32, o: &OperadElement) -> Result<ModuleElement> {
    if x.module != r.name() || o.operad != r.operad().name() {
        return Err(arg_err!("cannot act on {} by {} in {}", x.module, o.operad, r.name()));
    }
    let (set, relabel) = infinitesimal_composite(&x.arity, a, &o.arity)?;
    let j = FiniteSet::new(relabel.values().copied())?;
    let mut out = Combination::new();
    for (xi, xc) in &x.coords {
        for (oi, oc) in &o.coords {
            let f = xc * oc;
            out.extend(r.act(&x.arity, *xi, a, &j, *oi)?.into_iter().map(|(k, v)| (k, &f * &v)));
        }
    }
    Ok(ModuleElement { module: x.module.clone(), arity: set, coords: normalize_combination(out) })
}

/// Unitary map applied to an element.
pub fn module_forget(r: &dyn RightModule, x: &ModuleElement, a: u32) -> Result<ModuleElement> {
    let rest = x.arity.without(a)?;
    let mut out = Combination::new();
    for (xi, xc) in &x.coords {
        out.extend(r.forget_unit(&x.arity, *xi, a)?.into_iter().map(|(k, v)| (k, xc * &v)));
    }
    Ok(ModuleElement { module: x.module.clone(), arity: rest, coords: normalize_combination(out) })
}

/// Dimension table and basis of one arity, for display.
pub fn describe(r: &dyn RightModule, arity: usize, with_basis: bool) -> Result<Value> {
    let space = r.space(arity)?;
    let mut v = json!({
        "module": r.name(),
        "operad": r.operad().name(),
        "arity": arity,
        "poincare": r.poincare(arity)?.to_string(),
        "dimensions": space.dim_table().to_json(),
    });
    if with_basis {
        v["basis"] = space.basis().iter().map(|(l, d)| json!({"label": l, "degree": d})).collect();
    }
    Ok(v)
}
