//! Operads: presented binary quadratic operads, their operadic suspensions,
//! morphisms between them, and a registry of named constructions.

pub mod free;
mod morphism;
pub mod oracle;
pub mod presented;
mod registry;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

pub use morphism::{build_morphism, builtin_morphism, morphism_registry, MorphismFactory, OperadMorphism};
pub use presented::{ArityBasis, BasisKind, PresentedOperad};
pub use registry::{build_operad, operad_registry, OperadFactory, Params};

use crate::error::{arg_err, Error, Result};
use crate::exactla::{normalize_combination, Combination, Scalar};
use crate::symseq::{
    apply_bijection, infinitesimal_composite, permutation_sign, Bijection, FiniteSet, GradedSpace, LaurentPoly, SymSeq,
};

/// A set-indexed operad with finite-dimensional graded components.
///
/// Components are stored on `{1..k}`; a component on another label set is
/// identified with it through the order-preserving bijection.
pub trait Operad: SymSeq {
    fn dim(&self, arity: usize) -> Result<usize>;

    fn degree(&self, arity: usize, idx: usize) -> Result<i64>;

    /// `x ∘_a y` for basis elements of `O(I)` and `O(J)` with `J` disjoint from
    /// `I - {a}`, in the basis of `O(I ∪_a J)`.
    fn compose(&self, i: &FiniteSet, x: usize, a: u32, j: &FiniteSet, y: usize) -> Result<Combination>;

    /// Plugs the arity-0 unit into input `a`.
    fn forget_unit(&self, i: &FiniteSet, x: usize, a: u32) -> Result<Combination>;

    /// Underlying presentation and the total operadic suspension applied to it.
    fn presentation(&self) -> (Arc<PresentedOperad>, i64);

    fn poincare(&self, arity: usize) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for i in 0..self.dim(arity)? {
            p.add_term(1, self.degree(arity, i)?);
        }
        Ok(p)
    }
}

/// A presented operad without suspension.
pub struct Plain(pub Arc<PresentedOperad>);

impl SymSeq for Plain {
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    fn space(&self, arity: usize) -> Result<GradedSpace> {
        self.0.space(arity)
    }

    fn permute_basis(&self, arity: usize, idx: usize, sigma: &Bijection) -> Result<Combination> {
        self.0.permute(arity, idx, sigma.map())
    }
}

impl Operad for Plain {
    fn dim(&self, arity: usize) -> Result<usize> {
        self.0.dim(arity)
    }

    fn degree(&self, arity: usize, idx: usize) -> Result<i64> {
        self.0.degree(arity, idx)
    }

    fn compose(&self, i: &FiniteSet, x: usize, a: u32, j: &FiniteSet, y: usize) -> Result<Combination> {
        self.0.compose(i, x, a, j, y)
    }

    fn forget_unit(&self, i: &FiniteSet, x: usize, a: u32) -> Result<Combination> {
        self.0.forget_unit(i, x, a)
    }

    fn presentation(&self) -> (Arc<PresentedOperad>, i64) {
        (self.0.clone(), 0)
    }
}

/// Sign of `σ_I ∘_a σ_J` in the odd suspension operad: the planar sign
/// `(-1)^{(|J|-1)(i-1)}` times the sign sorting the inputs.
pub fn suspension_sign(i: &FiniteSet, a: u32, j: &FiniteSet) -> Result<i32> {
    let pos = i.position(a).ok_or_else(|| arg_err!("{a} is not in {i}"))?;
    let mut planar: Vec<u32> = i.labels()[..pos].to_vec();
    planar.extend_from_slice(j.labels());
    planar.extend_from_slice(&i.labels()[pos + 1..]);
    let planar_sign = if (j.len() - 1) * pos % 2 == 1 { -1 } else { 1 };
    Ok(planar_sign * permutation_sign(&planar))
}

/// `s_m O`: components shifted by `m(k-1)`, Σ-action twisted by `sgn^m`.
pub struct Suspended {
    inner: Arc<PresentedOperad>,
    m: i64,
}

impl Suspended {
    pub fn shift(&self) -> i64 {
        self.m
    }

    pub fn inner(&self) -> &Arc<PresentedOperad> {
        &self.inner
    }
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

fn scale(c: Combination, s: i32) -> Combination {
    if s < 0 {
        c.into_iter().map(|(i, v)| (i, -v)).collect()
    } else {
        c
    }
}

impl SymSeq for Suspended {
    fn name(&self) -> String {
        format!("s^{} {}", self.m, self.inner.name())
    }

    fn space(&self, arity: usize) -> Result<GradedSpace> {
        let shift = if arity == 0 { 0 } else { self.m * (arity as i64 - 1) };
        Ok(self.inner.space(arity)?.shifted(shift))
    }

    fn permute_basis(&self, arity: usize, idx: usize, sigma: &Bijection) -> Result<Combination> {
        let c = self.inner.permute(arity, idx, sigma.map())?;
        Ok(if odd(self.m) { scale(c, sigma.sign()) } else { c })
    }
}

impl Operad for Suspended {
    fn dim(&self, arity: usize) -> Result<usize> {
        self.inner.dim(arity)
    }

    fn degree(&self, arity: usize, idx: usize) -> Result<i64> {
        Ok(self.inner.degree(arity, idx)? + self.m * (arity as i64 - 1))
    }

    fn compose(&self, i: &FiniteSet, x: usize, a: u32, j: &FiniteSet, y: usize) -> Result<Combination> {
        let c = self.inner.compose(i, x, a, j, y)?;
        let mut sign = 1;
        if odd(self.m) {
            sign *= suspension_sign(i, a, j)?;
        }
        let dx = self.inner.degree(i.len(), x)?;
        if odd(dx * self.m * (j.len() as i64 - 1)) {
            sign = -sign;
        }
        Ok(scale(c, sign))
    }

    fn forget_unit(&self, _: &FiniteSet, _: usize, _: u32) -> Result<Combination> {
        Err(Error::Unsupported(format!("{} has no unit to forget", self.name())))
    }

    fn presentation(&self) -> (Arc<PresentedOperad>, i64) {
        (self.inner.clone(), self.m)
    }
}

/// Builds `s_m O`; suspensions accumulate so that the result is always a
/// single suspension of a presented operad.
pub fn suspend(op: &Arc<dyn Operad>, m: i64) -> Arc<dyn Operad> {
    let (inner, m0) = op.presentation();
    if m0 + m == 0 {
        Arc::new(Plain(inner))
    } else {
        Arc::new(Suspended { inner, m: m0 + m })
    }
}

type CacheKey = (String, usize, usize);

fn presented_cache() -> &'static Mutex<HashMap<CacheKey, Arc<PresentedOperad>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<PresentedOperad>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Interns a presentation so that its normal-form tables are shared.
pub fn intern(p: PresentedOperad) -> Arc<PresentedOperad> {
    let key = (p.name().to_string(), p.enum_cap(), p.rewrite_cap());
    presented_cache().lock().unwrap().entry(key).or_insert_with(|| Arc::new(p)).clone()
}

/// Builtin operad by name: `com`, `lie` or `pois` (which needs `n`).
pub fn builtin_operad(name: &str, n: Option<i64>) -> Result<Arc<dyn Operad>> {
    build_operad(name, &Params { n, ..Params::default() })
}

/// An element of `O(I)` in coordinates of the normal basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadElement {
    pub operad: String,
    pub arity: FiniteSet,
    pub coords: Combination,
}

impl OperadElement {
    pub fn basis(op: &dyn Operad, arity: FiniteSet, idx: usize) -> Result<Self> {
        if idx >= op.dim(arity.len())? {
            return Err(arg_err!("basis index {idx} out of range in arity {}", arity.len()));
        }
        Ok(OperadElement { operad: op.name(), arity, coords: vec![(idx, Scalar::one())] })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Transport along an injective relabeling of the leaves.
    pub fn relabel(&self, op: &dyn Operad, map: &BTreeMap<u32, u32>) -> Result<Self> {
        let images: Vec<u32> = self
            .arity
            .labels()
            .iter()
            .map(|l| map.get(l).copied().ok_or_else(|| arg_err!("label {l} has no image")))
            .collect::<Result<_>>()?;
        let target = FiniteSet::new(images.iter().copied())?;
        let perm: Vec<u32> = images.iter().map(|v| target.position(*v).unwrap() as u32 + 1).collect();
        let sigma = Bijection::from_images(&perm)?;
        let coords = apply_bijection(op, &sigma, &self.coords)?;
        Ok(OperadElement { operad: self.operad.clone(), arity: target, coords })
    }

    pub fn to_json(&self, op: &dyn Operad) -> Result<Value> {
        let space = op.space(self.arity.len())?;
        let terms: Vec<Value> = self
            .coords
            .iter()
            .map(|(i, c)| {
                json!({"basis": space.basis()[*i].0, "degree": space.degree(*i), "coeff": c.to_string()})
            })
            .collect();
        Ok(json!({"operad": self.operad, "arity": self.arity.labels(), "terms": terms}))
    }
}

/// `x ∘_a y`. When `J` meets `I - {a}` it is first relabeled
/// order-preservingly past `max(I)`.
pub fn partial_compose(op: &dyn Operad, x: &OperadElement, a: u32, y: &OperadElement) -> Result<OperadElement> {
    let name = op.name();
    if x.operad != name || y.operad != name {
        return Err(arg_err!("elements of {} and {} cannot be composed in {name}", x.operad, y.operad));
    }
    let (set, relabel) = infinitesimal_composite(&x.arity, a, &y.arity)?;
    let j = FiniteSet::new(relabel.values().copied())?;
    let mut out = Combination::new();
    for (xi, xc) in &x.coords {
        for (yi, yc) in &y.coords {
            let c = op.compose(&x.arity, *xi, a, &j, *yi)?;
            let f = xc * yc;
            out.extend(c.into_iter().map(|(k, v)| (k, &f * &v)));
        }
    }
    Ok(OperadElement { operad: name, arity: set, coords: normalize_combination(out) })
}

/// Plugs the unit into input `a` of a unitary operad element.
pub fn forget_unitary(op: &dyn Operad, x: &OperadElement, a: u32) -> Result<OperadElement> {
    let rest = x.arity.without(a)?;
    let mut out = Combination::new();
    for (xi, xc) in &x.coords {
        out.extend(op.forget_unit(&x.arity, *xi, a)?.into_iter().map(|(k, v)| (k, xc * &v)));
    }
    Ok(OperadElement { operad: x.operad.clone(), arity: rest, coords: normalize_combination(out) })
}
