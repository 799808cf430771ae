//! The acceptance checks, runnable from the library and the command line.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::barkoszul::{
    bar_complex, bar_complex_module, check_module_pk, check_poincare_koszul, BarComplex, DualityReport,
};
use crate::cubes::layer_report;
use crate::error::{Error, Result};
use crate::exactla::{DimTable, Scalar};
use crate::modules::{build_module, configuration_module, restrict, suspend_module, RightModule};
use crate::operads::free::Node;
use crate::operads::oracle::ideal_quotient_poincare;
use crate::operads::{builtin_morphism, builtin_operad, partial_compose, suspend, Operad, OperadElement, Params};
use crate::symseq::{FiniteSet, LaurentPoly};

#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub limit: Duration,
}

pub const CRITERIA: [Criterion; 7] = [
    Criterion { id: 1, title: "operad dimensions", limit: Duration::from_secs(60) },
    Criterion { id: 2, title: "composition axioms and relations", limit: Duration::from_secs(60) },
    Criterion { id: 3, title: "bar homology of com and lie", limit: Duration::from_secs(300) },
    Criterion { id: 4, title: "Poincare-Koszul duality for pois(n)", limit: Duration::from_secs(600) },
    Criterion { id: 5, title: "sphere modules against configuration spaces", limit: Duration::from_secs(300) },
    Criterion { id: 6, title: "embedding tower layers", limit: Duration::from_secs(30) },
    Criterion { id: 7, title: "structural invariants", limit: Duration::from_secs(300) },
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub criterion: Criterion,
    pub pass: bool,
    pub failures: Vec<String>,
    pub checks: usize,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        let mut s = format!(
            "criterion {}: {} {} ({} checks, {:.2}s of {}s)",
            self.criterion.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.criterion.title,
            self.checks,
            self.elapsed.as_secs_f64(),
            self.criterion.limit.as_secs()
        );
        if self.elapsed > self.criterion.limit {
            s.push_str(" over time limit");
        }
        for f in self.failures.iter().take(8) {
            s.push_str("\n    ");
            s.push_str(f);
        }
        if self.failures.len() > 8 {
            s.push_str(&format!("\n    ... {} more", self.failures.len() - 8));
        }
        s
    }
}

/// Collects named checks; a check that errors counts as failed.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, what: impl FnOnce() -> String, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

pub fn run(id: u8) -> Result<Outcome> {
    let criterion = *CRITERIA
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Argument(format!("no criterion {id}; criteria are 1 to {}", CRITERIA.len())))?;
    let start = Instant::now();
    let tally = match id {
        1 => dimensions(),
        2 => composition(),
        3 => endpoints(),
        4 => operad_reports(),
        5 => module_reports(),
        6 => layers(),
        _ => structural(),
    };
    let elapsed = start.elapsed();
    Ok(Outcome {
        criterion,
        pass: tally.failures.is_empty() && elapsed <= criterion.limit,
        failures: tally.failures,
        checks: tally.checks,
        elapsed,
    })
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run(c.id).expect("known criterion")).collect()
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn presented_operads() -> Vec<Arc<dyn Operad>> {
    let mut ops = vec![builtin_operad("com", None).unwrap(), builtin_operad("lie", None).unwrap()];
    ops.extend((1..=3).map(|n| builtin_operad("pois", Some(n)).unwrap()));
    ops
}

fn dimensions() -> Tally {
    let mut t = Tally::default();
    for n in 1..=3i64 {
        let op = builtin_operad("pois", Some(n)).unwrap();
        let (pres, _) = op.presentation();
        let cap = pres.enum_cap();
        for k in 1..=7 {
            if k > cap {
                t.check(|| format!("pois({n}) cap {cap} is below arity {k}"), false);
                continue;
            }
            let Some(p) = t.result(&format!("pois({n})({k})"), op.poincare(k)) else { continue };
            let want = LaurentPoly::falling_product(k, n - 1);
            t.check(|| format!("pois({n})({k}) is {p}, expected {want}"), p == want);
            t.check(|| format!("dim pois({n})({k}) is not {k}!"), p.eval_one() == factorial(k) as i64);
        }
    }
    for (name, dim) in [("com", (|_| 1) as fn(usize) -> usize), ("lie", |k| factorial(k - 1))] {
        let op = builtin_operad(name, None).unwrap();
        for k in 1..=7 {
            if let Some(d) = t.result(&format!("{name}({k})"), op.dim(k)) {
                t.check(|| format!("dim {name}({k}) is {d}, expected {}", dim(k)), d == dim(k));
            }
        }
    }
    type Row = (String, usize, Result<(LaurentPoly, LaurentPoly)>);
    let oracle: Vec<Row> = presented_operads()
        .par_iter()
        .flat_map_iter(|op| {
            let (pres, _) = op.presentation();
            (1..=5).map(move |k| {
                let both = ideal_quotient_poincare(&pres, k).and_then(|o| Ok((o, pres.poincare(k)?)));
                (pres.name().to_string(), k, both)
            })
        })
        .collect();
    for (name, k, r) in oracle {
        if let Some((o, p)) = t.result(&format!("oracle {name}({k})"), r) {
            t.check(|| format!("{name}({k}): rewriting gives {p}, ideal quotient gives {o}"), o == p);
        }
    }
    t
}

/// Up to `max` indices spread evenly over `0..dim`.
fn sample(dim: usize, max: usize) -> Vec<usize> {
    if dim <= max {
        (0..dim).collect()
    } else {
        (0..max).map(|i| i * dim / max + (i * 7) % (dim / max).max(1)).collect()
    }
}

fn labels(from: u32, len: usize) -> FiniteSet {
    FiniteSet::new(from..from + len as u32).unwrap()
}

fn negate(e: OperadElement) -> OperadElement {
    OperadElement { coords: e.coords.into_iter().map(|(i, c)| (i, -c)).collect(), ..e }
}

fn axiom_checks(op: &dyn Operad) -> Result<Tally> {
    let mut t = Tally::default();
    let name = op.name();
    let elems = |set: &FiniteSet, max: usize| -> Result<Vec<(OperadElement, i64)>> {
        sample(op.dim(set.len())?, max)
            .into_iter()
            .map(|i| Ok((OperadElement::basis(op, set.clone(), i)?, op.degree(set.len(), i)?)))
            .collect()
    };
    // sequential: (x ∘_a y) ∘_b z = x ∘_a (y ∘_b z) with b in J
    for (p, q, r) in [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2), (3, 3, 1)] {
        let (i, j, k) = (labels(1, p), labels(10, q), labels(20, r));
        for (x, _) in elems(&i, 4)? {
            for (y, _) in elems(&j, 4)? {
                for (z, _) in elems(&k, 3)? {
                    for &a in i.labels() {
                        let b = j.labels()[(a as usize) % q];
                        let lhs = partial_compose(op, &partial_compose(op, &x, a, &y)?, b, &z)?;
                        let rhs = partial_compose(op, &x, a, &partial_compose(op, &y, b, &z)?)?;
                        t.check(|| format!("{name}: sequential associativity fails ({p},{q},{r})"), lhs == rhs);
                    }
                }
            }
        }
    }
    // parallel: (x ∘_a y) ∘_b z = ±(x ∘_b z) ∘_a y for a ≠ b in I
    for (p, q, r) in [(2, 2, 2), (3, 2, 2), (2, 3, 2), (3, 2, 1)] {
        let (i, j, k) = (labels(1, p), labels(10, q), labels(20, r));
        for (x, _) in elems(&i, 4)? {
            for (y, dy) in elems(&j, 3)? {
                for (z, dz) in elems(&k, 3)? {
                    for (a, b) in i.labels().iter().tuple_combinations() {
                        let lhs = partial_compose(op, &partial_compose(op, &x, *a, &y)?, *b, &z)?;
                        let rhs = partial_compose(op, &partial_compose(op, &x, *b, &z)?, *a, &y)?;
                        let rhs = if (dy * dz).rem_euclid(2) == 1 { negate(rhs) } else { rhs };
                        t.check(|| format!("{name}: parallel associativity fails ({p},{q},{r})"), lhs == rhs);
                    }
                }
            }
        }
    }
    // equivariance: σ(x ∘_a y) = σx ∘_{σa} σy for every relabeling of I ∪ J
    for (p, q) in [(2, 2), (2, 3), (3, 2)] {
        let i = labels(1, p);
        let j = labels(p as u32 + 1, q);
        let all: Vec<u32> = (1..=(p + q) as u32).collect();
        for (x, _) in elems(&i, 3)? {
            for (y, _) in elems(&j, 3)? {
                for &a in i.labels() {
                    let xy = partial_compose(op, &x, a, &y)?;
                    for perm in all.iter().copied().permutations(all.len()) {
                        let sigma: BTreeMap<u32, u32> = all.iter().copied().zip(perm).collect();
                        let lhs = xy.relabel(op, &sigma)?;
                        let rhs = partial_compose(op, &x.relabel(op, &sigma)?, sigma[&a], &y.relabel(op, &sigma)?)?;
                        t.check(|| format!("{name}: equivariance fails ({p},{q})"), lhs == rhs);
                    }
                }
            }
        }
    }
    Ok(t)
}

/// A tree monomial evaluated by composing generators, without rewriting it
/// as a whole.
fn evaluate(op: &dyn Operad, t: &Node) -> Result<OperadElement> {
    let Node::Op(g, l, r) = t else {
        let Node::Leaf(a) = t else { unreachable!() };
        return OperadElement::basis(op, FiniteSet::new([*a])?, 0);
    };
    let (pres, _) = op.presentation();
    let idx = pres.basis(2)?.index[&Node::op(*g, Node::Leaf(1), Node::Leaf(2))];
    let (a, b) = (l.min_leaf(), r.min_leaf());
    let mut cur = OperadElement::basis(op, FiniteSet::standard(2), idx)?.relabel(op, &BTreeMap::from([(1, a), (2, b)]))?;
    for (leaf, sub) in [(a, l), (b, r)] {
        if !sub.is_leaf() {
            cur = partial_compose(op, &cur, leaf, &evaluate(op, sub)?)?;
        }
    }
    Ok(cur)
}

fn relation_checks(op: &dyn Operad) -> Result<Tally> {
    let mut t = Tally::default();
    let (pres, _) = op.presentation();
    let name = op.name();
    // plugged inputs of arity 1, 2 and 3 make the total arity at most 5
    let inputs: Vec<Vec<usize>> = vec![vec![1, 1, 1], vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2], vec![2, 2, 1], vec![3, 1, 1], vec![1, 1, 3]];
    for rel in pres.relations() {
        for perm in [1u32, 2, 3].into_iter().permutations(3) {
            let targets = [perm[0] * 2, perm[1] * 2, perm[2] * 2];
            let terms: Vec<(OperadElement, Scalar)> = rel
                .iter()
                .map(|(tree, c)| Ok((evaluate(op, &tree.relabel(&|a| targets[a as usize - 1]))?, c.clone())))
                .collect::<Result<_>>()?;
            let sum = sum_elements(terms.iter().map(|(e, c)| (e, c)));
            t.check(|| format!("{name}: relation {perm:?} does not vanish"), sum.is_empty());
            for arities in &inputs {
                let mut next = 100u32;
                let plugged: Vec<OperadElement> = arities
                    .iter()
                    .enumerate()
                    .map(|(s, &m)| {
                        let set = labels(next, m);
                        next += 10;
                        let d = op.dim(m)?;
                        OperadElement::basis(op, set, (s * 5 + 1) % d)
                    })
                    .collect::<Result<_>>()?;
                let mut composed = Vec::new();
                for (e, c) in &terms {
                    let mut cur = e.clone();
                    for (s, z) in plugged.iter().enumerate() {
                        cur = partial_compose(op, &cur, targets[s], z)?;
                    }
                    composed.push((cur, c.clone()));
                }
                let sum = sum_elements(composed.iter().map(|(e, c)| (e, c)));
                t.check(|| format!("{name}: relation {perm:?} with inputs {arities:?} does not vanish"), sum.is_empty());
            }
        }
    }
    Ok(t)
}

fn sum_elements<'a>(terms: impl Iterator<Item = (&'a OperadElement, &'a Scalar)>) -> Vec<(usize, Scalar)> {
    let mut out = Vec::new();
    for (e, c) in terms {
        out.extend(e.coords.iter().map(|(i, v)| (*i, c * v)));
    }
    crate::exactla::normalize_combination(out)
}

fn composition() -> Tally {
    let mut ops = presented_operads();
    let p2 = builtin_operad("pois", Some(2)).unwrap();
    let lie = builtin_operad("lie", None).unwrap();
    ops.extend([suspend(&p2, -2), suspend(&p2, 1), suspend(&lie, 1)]);
    let results: Vec<(String, Result<Tally>)> = ops
        .par_iter()
        .flat_map_iter(|op| {
            let op = op.clone();
            let unsuspended = op.presentation().1 == 0;
            let mut v = vec![(op.name(), axiom_checks(&*op))];
            if unsuspended {
                v.push((op.name(), relation_checks(&*op)));
            }
            v
        })
        .collect();
    let mut t = Tally::default();
    for (name, r) in results {
        if let Some(sub) = t.result(&name, r) {
            t.merge(sub);
        }
    }
    t
}

fn concentrated(h: &DimTable) -> Option<(i64, usize)> {
    match h.0.len() {
        1 => h.0.iter().next().map(|(&d, &n)| (d, n)),
        _ => None,
    }
}

fn endpoints() -> Tally {
    let mut t = Tally::default();
    let jobs: Vec<(&str, usize)> = (2..=6).map(|k| ("com", k)).chain((2..=5).map(|k| ("lie", k))).collect();
    let results: Vec<(&str, usize, Result<DimTable>)> = jobs
        .par_iter()
        .map(|&(name, k)| {
            let h = builtin_operad(name, None).and_then(|op| Ok(bar_complex(&*op, k)?.homology()));
            (name, k, h)
        })
        .collect();
    for (name, k, h) in results {
        let Some(h) = t.result(&format!("B({name})({k})"), h) else { continue };
        let want = if name == "com" { factorial(k - 1) } else { 1 };
        let ok = concentrated(&h).is_some_and(|(_, n)| n == want);
        t.check(|| format!("H(B({name})({k})) = {:?}, expected one degree of dimension {want}", h.0), ok);
    }
    t
}

fn report_checks(t: &mut Tally, what: &str, r: Result<DualityReport>) -> Option<DualityReport> {
    let r = t.result(what, r)?;
    for a in r.arities.values() {
        t.check(
            || format!("{what} arity {}: bar homology {} but predicted {}", a.arity, a.bar_homology, a.predicted),
            a.pass,
        );
    }
    Some(r)
}

pub fn operad_report(n: i64, max_arity: usize) -> Result<DualityReport> {
    let op = builtin_operad("pois", Some(n))?;
    let arities: Vec<usize> = (2..=max_arity).collect();
    check_poincare_koszul(&*op, n, &arities, None)
}

pub fn sphere_report(n: i64, max_arity: usize) -> Result<DualityReport> {
    let s = build_module("sphere", &Params::with_n(n))?;
    let c = configuration_module(n)?;
    let arities: Vec<usize> = (1..=max_arity).collect();
    check_module_pk(&*s, &*c, (n, n), &arities, None)
}

fn operad_reports() -> Tally {
    let mut t = Tally::default();
    for n in 1..=3 {
        report_checks(&mut t, &format!("pois({n})"), operad_report(n, 5));
    }
    t
}

fn module_reports() -> Tally {
    let mut t = Tally::default();
    for n in 1..=2 {
        report_checks(&mut t, &format!("S^{n}"), sphere_report(n, 4));
    }
    if let Some(r) = t.result("S^2 arity 2", sphere_report(2, 2)) {
        let got = &r.arities[&2].bar_homology;
        let want = LaurentPoly::from_terms([(3, 1), (4, 1)]);
        t.check(|| format!("S^2 arity 2 gives {got}, expected {want}"), *got == want);
    }
    t
}

fn layers() -> Tally {
    let mut t = Tally::default();
    for n in 1..=3 {
        for k in 2..=5 {
            let Some(r) = t.result(&format!("layer n={n} k={k}"), layer_report(n, k)) else { continue };
            t.check(|| format!("layer n={n} k={k}: total fiber {} but expected {}", r.total_fiber, r.expected), r.pass);
        }
    }
    t
}

fn square_zero(t: &mut Tally, what: &str, b: Result<BarComplex>) {
    let Some(b) = t.result(what, b) else { return };
    let diffs = b.complex.differentials();
    for (j, d) in diffs {
        if let Some(below) = diffs.get(&(j - 1)) {
            let ok = below.mul(d).map(|m| m.is_zero()).unwrap_or(false);
            t.check(|| format!("{what}: d∘d nonzero out of degree {j}"), ok);
        }
    }
    let h = b.homology();
    t.check(
        || format!("{what}: Euler characteristic of complex and homology differ"),
        h.euler_characteristic() == b.complex.euler_characteristic(),
    );
}

fn structural() -> Tally {
    let mut t = Tally::default();
    let mut ops = presented_operads();
    let p2 = builtin_operad("pois", Some(2)).unwrap();
    let lie = builtin_operad("lie", None).unwrap();
    ops.extend([suspend(&p2, -2), suspend(&p2, 1), suspend(&lie, 1), suspend(&lie, 2)]);
    for op in &ops {
        for k in 2..=4 {
            square_zero(&mut t, &format!("B({})({k})", op.name()), bar_complex(&**op, k));
        }
    }
    let mut mods: Vec<Arc<dyn RightModule>> = Vec::new();
    for n in 1..=2 {
        mods.push(build_module("sphere", &Params::with_n(n)).unwrap());
        mods.push(configuration_module(n).unwrap());
    }
    let torus = build_module("torus", &Params::default()).unwrap();
    let c2 = configuration_module(2).unwrap();
    mods.push(suspend_module(torus.clone(), 1, 0));
    mods.push(torus);
    mods.push(suspend_module(c2.clone(), -2, 1));
    match builtin_morphism("lie-to-pois", 2).and_then(|f| restrict(c2, Arc::new(f))) {
        Ok(m) => mods.push(m),
        Err(e) => t.check(|| format!("restriction: {e}"), false),
    }
    for m in &mods {
        for k in 1..=3 {
            square_zero(&mut t, &format!("B({})({k})", m.name()), bar_complex_module(&**m, k));
        }
    }
    for n in 1..=3 {
        if let Some(r) = t.result("report", operad_report(n, 4)) {
            for a in r.arities.values() {
                t.check(|| format!("pois({n}) arity {}: Euler characteristics disagree", a.arity), a.euler_consistent());
            }
        }
    }
    for n in 1..=2 {
        if let Some(r) = t.result("report", sphere_report(n, 4)) {
            for a in r.arities.values() {
                t.check(|| format!("S^{n} arity {}: Euler characteristics disagree", a.arity), a.euler_consistent());
            }
        }
    }
    // identical inputs give identical bytes
    let render = || -> Result<String> {
        let mut s = operad_report(2, 4)?.to_json().to_string();
        s.push_str(&sphere_report(2, 3)?.to_json().to_string());
        s.push_str(&layer_report(2, 4)?.to_json().to_string());
        Ok(s)
    };
    if let (Some(a), Some(b)) = (t.result("render", render()), t.result("render", render())) {
        t.check(|| "reports differ between identical runs".into(), a == b);
    }
    t
}
