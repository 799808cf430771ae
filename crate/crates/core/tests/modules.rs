use std::sync::Arc;

use opforge::exactla::{normalize_combination, Combination, Scalar};
use opforge::modules::{
    build_module, configuration_module, module_act, module_forget, operad_as_module, restrict, suspend_module,
    DiagonalModule, GradedCoalgebraData, ModuleElement, RightModule,
};
use opforge::operads::{
    builtin_morphism, builtin_operad, forget_unitary, partial_compose, suspend, Operad, OperadElement,
    OperadMorphism, Params,
};
use opforge::symseq::{Bijection, FiniteSet, LaurentPoly, SymSeq};
use proptest::prelude::*;

fn set(v: &[u32]) -> FiniteSet {
    FiniteSet::new(v.iter().copied()).unwrap()
}

fn as_operad_elem(m: &ModuleElement, op: &dyn Operad) -> OperadElement {
    OperadElement { operad: op.name(), arity: m.arity.clone(), coords: m.coords.clone() }
}

#[test]
fn operad_module_is_partial_composition() {
    let p = builtin_operad("pois", Some(2)).unwrap();
    let r = operad_as_module(p.clone());
    for (xi, yi, a) in [(0, 1, 1), (1, 0, 2), (1, 1, 1), (2, 3, 3), (5, 0, 2), (3, 1, 1), (4, 0, 3), (0, 0, 2), (5, 1, 3), (2, 0, 1)] {
        let x = ModuleElement::basis(&*r, set(&[1, 2, 3]), xi).unwrap();
        let y = OperadElement::basis(&*p, set(&[4, 5]), yi % 2).unwrap();
        let lhs = module_act(&*r, &x, a, &y).unwrap();
        let rhs = partial_compose(&*p, &as_operad_elem(&x, &*p), a, &y).unwrap();
        assert_eq!(lhs.coords, rhs.coords);
        assert_eq!(lhs.arity, rhs.arity);
    }
    assert!(r.is_unitary());
    for i in 0..6 {
        let x = ModuleElement::basis(&*r, set(&[1, 2, 3]), i).unwrap();
        for a in 1..=3 {
            let f = module_forget(&*r, &x, a).unwrap();
            let g = forget_unitary(&*p, &as_operad_elem(&x, &*p), a).unwrap();
            assert_eq!(f.coords, g.coords);
        }
    }
    let lie = operad_as_module(builtin_operad("lie", None).unwrap());
    assert!(!lie.is_unitary());
    assert_eq!(lie.dim(0).unwrap(), 0);
}

#[test]
fn configuration_module_examples() {
    for n in 1..=3 {
        let c = configuration_module(n).unwrap();
        assert_eq!(c.operad().name(), format!("pois({n})"));
        for k in 1..=6 {
            let p = c.poincare(k).unwrap();
            assert_eq!(p, LaurentPoly::falling_product(k, n - 1));
            if n > 1 {
                assert_eq!(p.coeff((n - 1) * (k as i64 - 1)), (1..k as i64).product::<i64>());
            }
        }
        // the degree-0 product monomial forgets to the product monomial
        let space = c.space(4).unwrap();
        let top = space.basis().iter().position(|(l, _)| l == "1·2·3·4").unwrap();
        let x = ModuleElement::basis(&*c, set(&[1, 2, 3, 4]), top).unwrap();
        let f = module_forget(&*c, &x, 3).unwrap();
        assert_eq!(f.arity, set(&[1, 2, 4]));
        let s3 = c.space(3).unwrap();
        assert_eq!(s3.basis()[f.coords[0].0].0, "1·2·3");
        assert_eq!(f.coords.len(), 1);
        // arity 0 is the ground field
        assert_eq!(c.dim(0).unwrap(), 1);
    }
    assert!(configuration_module(0).is_err());
}

#[test]
fn module_suspension_degrees() {
    let c = configuration_module(2).unwrap();
    assert_eq!(suspend_module(c.clone(), 0, 0).name(), c.name());
    for (n, d) in [(2, 2), (-2, 0), (1, -1), (3, 5)] {
        let s = suspend_module(c.clone(), n, d);
        assert_eq!(s.operad().name(), suspend(c.operad(), n).name());
        for k in 1..=5 {
            assert_eq!(s.poincare(k).unwrap(), c.poincare(k).unwrap().shift(n * k as i64 - n + d));
        }
    }
    let s = suspend_module(c.clone(), 2, 2);
    for k in 1..=5 {
        assert_eq!(s.poincare(k).unwrap(), c.poincare(k).unwrap().shift(2 * k as i64));
    }
}

#[test]
fn restriction_examples() {
    // along the identity nothing changes
    let c = configuration_module(2).unwrap();
    let id = Arc::new(OperadMorphism::identity(c.operad().clone()).unwrap());
    let r = restrict(c.clone(), id).unwrap();
    for i in 0..6 {
        for j in 0..2 {
            assert_eq!(r.act(&set(&[1, 2, 3]), i, 2, &set(&[4, 5]), j).unwrap(),
                       c.act(&set(&[1, 2, 3]), i, 2, &set(&[4, 5]), j).unwrap());
        }
    }
    // along s_n lie -> pois(n) the bracket acts by bracket insertion
    for n in 1..=3 {
        let f = Arc::new(builtin_morphism("lie-to-pois", n).unwrap());
        let c = configuration_module(n).unwrap();
        let r = restrict(c.clone(), f.clone()).unwrap();
        assert_eq!(r.operad().name(), format!("s^{n} lie"));
        let p = c.operad();
        let beta = p.space(2).unwrap().basis().iter().position(|(l, _)| l == "[12]").unwrap();
        for x in 0..6 {
            for a in 1..=3 {
                let lhs = r.act(&set(&[1, 2, 3]), x, a, &set(&[7, 8]), 0).unwrap();
                let rhs = p.compose(&set(&[1, 2, 3]), x, a, &set(&[7, 8]), beta).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        // a module over the wrong operad is refused
        assert!(restrict(configuration_module(n + 1).unwrap(), f).is_err());
    }
    // a com-module pulled back to pois: the bracket acts by zero
    let sphere = build_module("sphere", &Params::with_n(2)).unwrap();
    let g = Arc::new(builtin_morphism("pois-to-com", 2).unwrap());
    let r = restrict(sphere, g).unwrap();
    let p = builtin_operad("pois", Some(2)).unwrap();
    let beta = p.space(2).unwrap().basis().iter().position(|(l, _)| l == "[12]").unwrap();
    assert!(r.act(&set(&[1, 2]), 0, 1, &set(&[3, 4]), beta).unwrap().is_empty());
}

#[test]
fn restriction_is_functorial() {
    let n = 2;
    let f = builtin_morphism("lie-to-spois", n).unwrap();
    let g = builtin_morphism("spois-to-scom", n).unwrap();
    let gf = Arc::new(f.then(&g).unwrap());
    let base = suspend_module(build_module("sphere", &Params::with_n(3)).unwrap(), -n, 0);
    let once = restrict(base.clone(), gf).unwrap();
    let twice = restrict(restrict(base, Arc::new(g)).unwrap(), Arc::new(f)).unwrap();
    for k in 1..=4 {
        assert_eq!(once.poincare(k).unwrap(), twice.poincare(k).unwrap());
    }
    for (p, q) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let i = FiniteSet::standard(p);
        let j = FiniteSet::new((10..10 + q as u32).collect::<Vec<_>>()).unwrap();
        for x in 0..once.dim(p).unwrap() {
            for y in 0..once.operad().dim(q).unwrap() {
                assert_eq!(once.act(&i, x, 1, &j, y).unwrap(), twice.act(&i, x, 1, &j, y).unwrap());
            }
        }
    }
}

#[test]
fn suspension_commutes_with_restriction_dimensions() {
    let n = 2;
    let f = Arc::new(builtin_morphism("lie-to-pois", n).unwrap());
    let c = configuration_module(n).unwrap();
    let a = suspend_module(restrict(c.clone(), f.clone()).unwrap(), 1, 3);
    let b = restrict(suspend_module(c, 1, 3), f).err();
    // restriction along f needs the unsuspended target; compare dimensions instead
    assert!(b.is_some());
    let c = configuration_module(n).unwrap();
    let direct = suspend_module(c, 1, 3);
    for k in 1..=5 {
        assert_eq!(a.poincare(k).unwrap(), direct.poincare(k).unwrap());
    }
}

#[test]
fn sphere_module() {
    for n in 1..=3 {
        let s = build_module("sphere", &Params::with_n(n)).unwrap();
        for k in 1..=5 {
            assert_eq!(s.poincare(k).unwrap(), LaurentPoly::monomial(1, n * k as i64));
        }
        assert_eq!(s.space(1).unwrap().basis(), &[("ι".to_string(), n)]);
        for q in 2..=3 {
            let j = FiniteSet::new((10..10 + q as u32).collect::<Vec<_>>()).unwrap();
            assert!(s.act(&set(&[1, 2]), 0, 2, &j, 0).unwrap().is_empty());
        }
        assert_eq!(s.act(&set(&[1, 2]), 0, 2, &set(&[5]), 0).unwrap(), vec![(0, Scalar::one())]);
    }
}

#[test]
fn torus_action_uses_the_diagonal() {
    let t = DiagonalModule::new(GradedCoalgebraData::torus()).unwrap();
    // c in arity 1 acted on by com(2) is a⊗b - b⊗a
    let c = t.act(&set(&[1]), 2, 1, &set(&[1, 2]), 0).unwrap();
    let space = t.space(2).unwrap();
    let labels: Vec<(String, Scalar)> = c.iter().map(|(i, v)| (space.basis()[*i].0.clone(), v.clone())).collect();
    assert_eq!(labels, vec![("a⊗b".to_string(), Scalar::one()), ("b⊗a".to_string(), -Scalar::one())]);
    // com(3) at once equals com(2) twice
    let com = t.operad().clone();
    let x = ModuleElement::basis(&t, set(&[1]), 2).unwrap();
    let m2 = OperadElement::basis(&*com, set(&[1, 2]), 0).unwrap();
    let m3 = OperadElement::basis(&*com, set(&[1, 2, 3]), 0).unwrap();
    let once = module_act(&t, &x, 1, &m3).unwrap();
    let twice = module_act(&t, &module_act(&t, &x, 1, &m2).unwrap(), 2, &OperadElement::basis(&*com, set(&[2, 3]), 0).unwrap()).unwrap();
    assert_eq!(once.coords, twice.coords);
    assert!(once.is_zero());
}

fn modules() -> Vec<Arc<dyn RightModule>> {
    let c1 = configuration_module(1).unwrap();
    let c2 = configuration_module(2).unwrap();
    let torus: Arc<dyn RightModule> = Arc::new(DiagonalModule::new(GradedCoalgebraData::torus()).unwrap());
    vec![
        c1.clone(),
        c2.clone(),
        operad_as_module(builtin_operad("lie", None).unwrap()),
        suspend_module(c2.clone(), -2, -1),
        suspend_module(c1.clone(), 1, 0),
        suspend_module(c2.clone(), 3, 2),
        restrict(c2.clone(), Arc::new(builtin_morphism("lie-to-pois", 2).unwrap())).unwrap(),
        restrict(c1, Arc::new(builtin_morphism("lie-to-pois", 1).unwrap())).unwrap(),
        torus.clone(),
        suspend_module(torus, -1, 0),
        build_module("sphere", &Params::with_n(3)).unwrap(),
    ]
}

fn relem(r: &dyn RightModule, labels: Vec<u32>, pick: usize) -> ModuleElement {
    let k = labels.len();
    ModuleElement::basis(r, FiniteSet::new(labels).unwrap(), pick % r.dim(k).unwrap()).unwrap()
}

fn oelem(op: &dyn Operad, labels: Vec<u32>, pick: usize) -> (OperadElement, i64) {
    let k = labels.len();
    let idx = pick % op.dim(k).unwrap();
    (OperadElement::basis(op, FiniteSet::new(labels).unwrap(), idx).unwrap(), op.degree(k, idx).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn module_sequential_associativity(m in 0usize..11, p in 1usize..3, q in 1usize..4, r in 1usize..3,
                                       px in 0usize..100, py in 0usize..50, pz in 0usize..50,
                                       ai in 0usize..3, bi in 0usize..3) {
        let mods = modules();
        let md = &*mods[m];
        let op = md.operad().clone();
        let i: Vec<u32> = (1..=p as u32).collect();
        let j: Vec<u32> = (10..10 + q as u32).collect();
        let a = i[ai % p];
        let b = j[bi % q];
        let x = relem(md, i, px);
        let (y, _) = oelem(&*op, j, py);
        let (z, _) = oelem(&*op, (20..20 + r as u32).collect(), pz);
        let lhs = module_act(md, &module_act(md, &x, a, &y).unwrap(), b, &z).unwrap();
        let rhs = module_act(md, &x, a, &partial_compose(&*op, &y, b, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn module_parallel_associativity(m in 0usize..11, p in 2usize..4, q in 1usize..3, r in 1usize..3,
                                     px in 0usize..100, py in 0usize..50, pz in 0usize..50,
                                     ai in 0usize..3, bi in 0usize..3) {
        let mods = modules();
        let md = &*mods[m];
        let op = md.operad().clone();
        let i: Vec<u32> = (1..=p as u32).collect();
        let a = i[ai % p];
        let b = i[(ai + 1 + bi % (p - 1)) % p];
        let x = relem(md, i, px);
        let (y, dy) = oelem(&*op, (10..10 + q as u32).collect(), py);
        let (z, dz) = oelem(&*op, (20..20 + r as u32).collect(), pz);
        let lhs = module_act(md, &module_act(md, &x, a, &y).unwrap(), b, &z).unwrap();
        let mut rhs = module_act(md, &module_act(md, &x, b, &z).unwrap(), a, &y).unwrap();
        if (dy * dz).rem_euclid(2) == 1 {
            rhs.coords = rhs.coords.into_iter().map(|(i, c)| (i, -c)).collect();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn module_equivariance(m in 0usize..11, p in 1usize..4, q in 1usize..3, px in 0usize..100, py in 0usize..50,
                           ai in 0usize..3, seed in 0usize..720) {
        let mods = modules();
        let md = &*mods[m];
        let op = md.operad().clone();
        let k = p + q;
        let a = (ai % p) as u32 + 1;
        let x = relem(md, (1..=p as u32).collect(), px);
        let (y, _) = oelem(&*op, (p as u32 + 1..=k as u32).collect(), py);
        let xy = module_act(md, &x, a, &y).unwrap();
        let mut images: Vec<u32> = (1..=k as u32).collect();
        let mut s = seed;
        for idx in (1..images.len()).rev() {
            images.swap(idx, s % (idx + 1));
            s /= idx + 1;
        }
        let sigma = |l: u32| images[l as usize - 1];
        let perm_of = |labels: &[u32]| -> (Bijection, Vec<u32>) {
            let img: Vec<u32> = labels.iter().map(|&l| sigma(l)).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            let perm: Vec<u32> = img.iter().map(|v| sorted.binary_search(v).unwrap() as u32 + 1).collect();
            (Bijection::from_images(&perm).unwrap(), sorted)
        };
        let act_m = |e: &ModuleElement| -> ModuleElement {
            let (b, sorted) = perm_of(e.arity.labels());
            let mut out = Combination::new();
            for (idx, c) in &e.coords {
                for (j, v) in md.permute_basis(e.arity.len(), *idx, &b).unwrap() {
                    out.push((j, c * &v));
                }
            }
            ModuleElement { module: e.module.clone(), arity: FiniteSet::new(sorted).unwrap(), coords: normalize_combination(out) }
        };
        let act_o = |e: &OperadElement| -> OperadElement {
            let (b, sorted) = perm_of(e.arity.labels());
            let mut out = Combination::new();
            for (idx, c) in &e.coords {
                for (j, v) in op.permute_basis(e.arity.len(), *idx, &b).unwrap() {
                    out.push((j, c * &v));
                }
            }
            OperadElement { operad: e.operad.clone(), arity: FiniteSet::new(sorted).unwrap(), coords: normalize_combination(out) }
        };
        let lhs = act_m(&xy);
        let rhs = module_act(md, &act_m(&x), sigma(a), &act_o(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
