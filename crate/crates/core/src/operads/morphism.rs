use std::sync::{Arc, OnceLock};

use super::free::Node;
use super::registry::{build_operad, Params};
use super::{suspension_sign, Operad, OperadElement};
use crate::error::{arg_err, Error, Result};
use crate::exactla::{normalize_combination, Combination, Scalar};
use crate::registry::{Named, Registry};
use crate::symseq::FiniteSet;

/// A morphism out of a (suspended) presented operad, determined by the
/// images of the generators.
pub struct OperadMorphism {
    name: String,
    source: Arc<dyn Operad>,
    target: Arc<dyn Operad>,
    images: Vec<Combination>,
}

fn pair() -> FiniteSet {
    FiniteSet::standard(2)
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

impl OperadMorphism {
    /// `images[g]` is the image of generator `g`, in the arity-2 basis of the
    /// target. Degrees and relations are checked.
    pub fn new(
        name: &str,
        source: Arc<dyn Operad>,
        target: Arc<dyn Operad>,
        images: Vec<Combination>,
    ) -> Result<Self> {
        let (pres, m) = source.presentation();
        if images.len() != pres.generators().len() {
            return Err(arg_err!("{} generators but {} images", pres.generators().len(), images.len()));
        }
        if target.dim(1)? != 1 {
            return Err(arg_err!("target must have a one-dimensional arity 1"));
        }
        let dim2 = target.dim(2)?;
        for (g, img) in images.iter().enumerate() {
            let want = pres.generators()[g].degree + m;
            for (i, _) in img {
                if *i >= dim2 {
                    return Err(arg_err!("image index {i} out of range"));
                }
                if target.degree(2, *i)? != want {
                    return Err(Error::Structural(format!(
                        "image of {} has degree {} instead of {want}",
                        pres.generators()[g].name,
                        target.degree(2, *i)?
                    )));
                }
            }
        }
        let f = OperadMorphism { name: name.to_string(), source, target, images };
        for rel in pres.closed_relations() {
            let mut acc = Combination::new();
            for (q, c) in rel {
                acc.extend(f.eval(q)?.into_iter().map(|(i, v)| (i, c * &v)));
            }
            if !normalize_combination(acc).is_empty() {
                return Err(Error::Structural(format!("{name} does not preserve the relations")));
            }
        }
        Ok(f)
    }

    pub fn identity(op: Arc<dyn Operad>) -> Result<Self> {
        let (pres, _) = op.presentation();
        let b = pres.basis(2)?;
        let images = (0..pres.generators().len() as u8)
            .map(|g| vec![(b.index[&Node::op(g, Node::Leaf(1), Node::Leaf(2))], Scalar::one())])
            .collect();
        Self::new(&format!("id {}", op.name()), op.clone(), op, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<dyn Operad> {
        &self.source
    }

    pub fn target(&self) -> &Arc<dyn Operad> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Combination] {
        &self.images
    }

    /// Image of a canonical tree monomial of the source, in the target basis
    /// on the monomial's leaves.
    fn eval(&self, t: &Node) -> Result<Combination> {
        let (pres, m) = self.source.presentation();
        let gens = pres.generators();
        let Node::Op(g, l, r) = t else {
            return Ok(vec![(0, Scalar::one())]);
        };
        let (a, b) = (l.min_leaf(), r.min_leaf());
        if a > b {
            return Err(arg_err!("monomial is not canonical"));
        }
        let mut cur_set = FiniteSet::new([a, b])?;
        let mut cur = self.images[*g as usize].clone();
        let mut deg = gens[*g as usize].degree;
        for (leaf, sub) in [(a, l), (b, r)] {
            if sub.is_leaf() {
                continue;
            }
            let sub_set = FiniteSet::new(sub.leaves())?;
            let sub_img = self.eval(sub)?;
            let mut sign = 1;
            if odd(m) {
                sign *= suspension_sign(&cur_set, leaf, &sub_set)?;
            }
            if odd(deg * m * (sub_set.len() as i64 - 1)) {
                sign = -sign;
            }
            let mut next = Combination::new();
            for (i, ci) in &cur {
                for (j, cj) in &sub_img {
                    let f = ci * cj;
                    for (k, v) in self.target.compose(&cur_set, *i, leaf, &sub_set, *j)? {
                        next.push((k, if sign < 0 { -(&f * &v) } else { &f * &v }));
                    }
                }
            }
            cur = normalize_combination(next);
            cur_set = FiniteSet::new(cur_set.without(leaf)?.labels().iter().chain(sub_set.labels()).copied())?;
            deg += sub.degree(gens);
        }
        Ok(cur)
    }

    /// Image of basis element `idx` of `source(I)`.
    pub fn apply_basis(&self, i: &FiniteSet, idx: usize) -> Result<Combination> {
        let (pres, _) = self.source.presentation();
        self.eval(&pres.basis_tree(i, idx)?)
    }

    pub fn apply(&self, x: &OperadElement) -> Result<OperadElement> {
        if x.operad != self.source.name() {
            return Err(arg_err!("{} is not an element of {}", x.operad, self.source.name()));
        }
        let mut out = Combination::new();
        for (i, c) in &x.coords {
            out.extend(self.apply_basis(&x.arity, *i)?.into_iter().map(|(k, v)| (k, c * &v)));
        }
        Ok(OperadElement { operad: self.target.name(), arity: x.arity.clone(), coords: normalize_combination(out) })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &OperadMorphism) -> Result<OperadMorphism> {
        if self.target.name() != next.source.name() {
            return Err(arg_err!("cannot compose: {} vs {}", self.target.name(), next.source.name()));
        }
        let images = self
            .images
            .iter()
            .map(|img| {
                let mut out = Combination::new();
                for (i, c) in img {
                    out.extend(next.apply_basis(&pair(), *i)?.into_iter().map(|(k, v)| (k, c * &v)));
                }
                Ok(normalize_combination(out))
            })
            .collect::<Result<Vec<_>>>()?;
        OperadMorphism::new(
            &format!("{} ∘ {}", next.name, self.name),
            self.source.clone(),
            next.target.clone(),
            images,
        )
    }
}

/// Index of generator `name` in the arity-2 basis of `op`.
fn generator_basis_index(op: &dyn Operad, name: &str) -> Result<usize> {
    let (pres, _) = op.presentation();
    let g = pres.generator_index(name).ok_or_else(|| arg_err!("{} has no generator {name}", op.name()))?;
    Ok(pres.basis(2)?.index[&Node::op(g, Node::Leaf(1), Node::Leaf(2))])
}

pub trait MorphismFactory: Named + Send + Sync {
    fn build(&self, p: &Params) -> Result<OperadMorphism>;
}

fn pois_params(p: &Params, suspend: i64) -> Result<Params> {
    let n = p.require_n("pois")?;
    Ok(Params { n: Some(n), suspend, force: p.force, operad: None })
}

fn plain(p: &Params, suspend: i64) -> Params {
    Params { n: None, suspend, force: p.force, operad: None }
}

fn one_image(op: &dyn Operad, gen: &str) -> Result<Combination> {
    Ok(vec![(generator_basis_index(op, gen)?, Scalar::one())])
}

struct LieToSuspendedPois;
struct SuspendedLieToPois;
struct PoisToCom;
struct SuspendedPoisToCom;

impl Named for LieToSuspendedPois {
    fn name(&self) -> &'static str {
        "lie-to-spois"
    }
    fn summary(&self) -> &'static str {
        "lie -> s^-n pois(n), bracket to bracket"
    }
}

impl MorphismFactory for LieToSuspendedPois {
    fn build(&self, p: &Params) -> Result<OperadMorphism> {
        let n = p.require_n(self.name())?;
        let src = build_operad("lie", &plain(p, 0))?;
        let tgt = build_operad("pois", &pois_params(p, -n)?)?;
        let img = one_image(&*tgt, "β")?;
        OperadMorphism::new(self.name(), src, tgt, vec![img])
    }
}

impl Named for SuspendedLieToPois {
    fn name(&self) -> &'static str {
        "lie-to-pois"
    }
    fn summary(&self) -> &'static str {
        "s^n lie -> pois(n), bracket to bracket"
    }
}

impl MorphismFactory for SuspendedLieToPois {
    fn build(&self, p: &Params) -> Result<OperadMorphism> {
        let n = p.require_n(self.name())?;
        let src = build_operad("lie", &plain(p, n))?;
        let tgt = build_operad("pois", &pois_params(p, 0)?)?;
        let img = one_image(&*tgt, "β")?;
        OperadMorphism::new(self.name(), src, tgt, vec![img])
    }
}

fn pois_to_com(name: &str, p: &Params, suspend: i64) -> Result<OperadMorphism> {
    let src = build_operad("pois", &pois_params(p, suspend)?)?;
    let tgt = build_operad("com", &plain(p, suspend))?;
    let (pres, _) = src.presentation();
    let images = pres
        .generators()
        .iter()
        .map(|g| if g.name == "μ" { one_image(&*tgt, "μ") } else { Ok(Vec::new()) })
        .collect::<Result<Vec<_>>>()?;
    OperadMorphism::new(name, src, tgt, images)
}

impl Named for PoisToCom {
    fn name(&self) -> &'static str {
        "pois-to-com"
    }
    fn summary(&self) -> &'static str {
        "pois(n) -> com, product to product and bracket to zero"
    }
}

impl MorphismFactory for PoisToCom {
    fn build(&self, p: &Params) -> Result<OperadMorphism> {
        pois_to_com(self.name(), p, 0)
    }
}

impl Named for SuspendedPoisToCom {
    fn name(&self) -> &'static str {
        "spois-to-scom"
    }
    fn summary(&self) -> &'static str {
        "s^-n pois(n) -> s^-n com, the suspension of pois-to-com"
    }
}

impl MorphismFactory for SuspendedPoisToCom {
    fn build(&self, p: &Params) -> Result<OperadMorphism> {
        let n = p.require_n(self.name())?;
        pois_to_com(self.name(), p, -n)
    }
}

pub fn morphism_registry() -> &'static Registry<dyn MorphismFactory> {
    static REG: OnceLock<Registry<dyn MorphismFactory>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut r: Registry<dyn MorphismFactory> = Registry::default();
        r.register(Box::new(LieToSuspendedPois));
        r.register(Box::new(SuspendedLieToPois));
        r.register(Box::new(PoisToCom));
        r.register(Box::new(SuspendedPoisToCom));
        r
    })
}

pub fn build_morphism(name: &str, p: &Params) -> Result<OperadMorphism> {
    morphism_registry().get(name)?.build(p)
}

pub fn builtin_morphism(name: &str, n: i64) -> Result<OperadMorphism> {
    build_morphism(name, &Params::with_n(n))
}
