//! Quadratic binary presentations with explicit normal forms.
//!
//! Each arity `m` gets a rewriting table: every reduced monomial `g(X, Y)`
//! (children already normal) is expressed in the normal basis. The table
//! comes from the reduced row echelon form of the root-level relation
//! instances, with the non-normal monomials ordered first. Building it
//! audits that the normal monomials form a complement of the relations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use super::free::{normalize_poly, Generator, Node, Poly, Role};
use crate::error::{arg_err, Error, Result};
use crate::exactla::{normalize_combination, Combination, Echelon, Scalar};
use crate::optree::set_partitions;
use crate::symseq::{FiniteSet, GradedSpace, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Left-comb products.
    Com,
    /// Lyndon words with their standard bracketing.
    Lie,
    /// Products of Lyndon brackets over a set partition.
    Pois,
}

pub const DEFAULT_ENUM_CAP: usize = 7;

/// Normal basis of one arity, stored on `{1..k}`.
#[derive(Debug)]
pub struct ArityBasis {
    pub trees: Vec<Node>,
    pub index: HashMap<Node, usize>,
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
}

type Table = HashMap<Node, Combination>;
type ComposeKey = (usize, usize, usize, usize, usize, Vec<bool>);

pub struct PresentedOperad {
    name: String,
    gens: Vec<Generator>,
    relations: Vec<Poly>,
    closed: Vec<Poly>,
    kind: BasisKind,
    enum_cap: usize,
    rewrite_cap: usize,
    bases: Vec<OnceLock<Arc<ArityBasis>>>,
    tables: Vec<OnceLock<std::result::Result<Arc<Table>, Error>>>,
    nf_cache: Mutex<HashMap<Node, Combination>>,
    compose_cache: Mutex<HashMap<ComposeKey, Combination>>,
}

impl std::fmt::Debug for PresentedOperad {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PresentedOperad").field("name", &self.name).finish()
    }
}

fn leaf(a: u32) -> Node {
    Node::Leaf(a)
}

fn one() -> Scalar {
    Scalar::one()
}

fn word_label(w: &[u32]) -> String {
    if w.iter().any(|&x| x >= 10) {
        w.iter().join(",")
    } else {
        w.iter().join("")
    }
}

fn lyndon_tree(w: &[u32], bracket: u8) -> Node {
    if w.len() == 1 {
        return leaf(w[0]);
    }
    // right factor: longest proper suffix beginning with its own minimum
    let s = (1..w.len()).find(|&s| w[s] == *w[s..].iter().min().unwrap()).unwrap();
    Node::op(bracket, lyndon_tree(&w[..s], bracket), lyndon_tree(&w[s..], bracket))
}

/// Multilinear Lyndon words on `block`: its minimum followed by any order
/// of the rest, lexicographically.
fn lyndon_words(block: &[u32]) -> Vec<Vec<u32>> {
    let (first, rest) = block.split_first().expect("nonempty block");
    let n = rest.len();
    rest.iter()
        .copied()
        .permutations(n)
        .map(|p| std::iter::once(*first).chain(p).collect())
        .collect()
}

impl PresentedOperad {
    fn build(
        name: &str,
        gens: Vec<Generator>,
        relations: Vec<Poly>,
        kind: BasisKind,
        rewrite_cap: usize,
    ) -> Self {
        let closed = sigma_closure(&relations, &gens);
        let mut op = PresentedOperad {
            name: name.to_string(),
            gens,
            relations,
            closed,
            kind,
            enum_cap: DEFAULT_ENUM_CAP,
            rewrite_cap,
            bases: Vec::new(),
            tables: Vec::new(),
            nf_cache: Mutex::new(HashMap::new()),
            compose_cache: Mutex::new(HashMap::new()),
        };
        op.resize_caches();
        op
    }

    fn resize_caches(&mut self) {
        let n = self.enum_cap.max(self.rewrite_cap) + 1;
        self.bases = (0..=n).map(|_| OnceLock::new()).collect();
        self.tables = (0..=n).map(|_| OnceLock::new()).collect();
    }

    /// Commutative associative: one product of degree 0.
    pub fn com() -> Self {
        let mu = Generator { name: "μ".into(), degree: 0, symmetry: 1, role: Role::Product };
        let assoc = vec![
            (Node::op(0, Node::op(0, leaf(1), leaf(2)), leaf(3)), one()),
            (Node::op(0, leaf(1), Node::op(0, leaf(2), leaf(3))), -one()),
        ];
        Self::build("com", vec![mu], vec![assoc], BasisKind::Com, 7)
    }

    /// Lie: one symmetric bracket of degree -1 subject to Jacobi.
    pub fn lie() -> Self {
        let beta = Generator { name: "β".into(), degree: -1, symmetry: 1, role: Role::Bracket };
        let jacobi = jacobi(0);
        Self::build("lie", vec![beta], vec![jacobi], BasisKind::Lie, 7)
    }

    /// Poisson_n: product of degree 0 and bracket of degree n-1.
    pub fn pois(n: i64) -> Self {
        let mu = Generator { name: "μ".into(), degree: 0, symmetry: 1, role: Role::Product };
        let beta = Generator {
            name: "β".into(),
            degree: n - 1,
            symmetry: if n.rem_euclid(2) == 0 { 1 } else { -1 },
            role: Role::Bracket,
        };
        let assoc = vec![
            (Node::op(0, Node::op(0, leaf(1), leaf(2)), leaf(3)), one()),
            (Node::op(0, leaf(1), Node::op(0, leaf(2), leaf(3))), -one()),
        ];
        let leibniz = vec![
            (Node::op(1, leaf(1), Node::op(0, leaf(2), leaf(3))), one()),
            (Node::op(0, Node::op(1, leaf(1), leaf(2)), leaf(3)), -one()),
            (Node::op(0, Node::op(1, leaf(1), leaf(3)), leaf(2)), -one()),
        ];
        let name = format!("pois({n})");
        Self::build(&name, vec![mu, beta], vec![assoc, jacobi(1), leibniz], BasisKind::Pois, 6)
    }

    /// Raises the enumeration and rewriting caps.
    pub fn with_caps(mut self, enum_cap: usize, rewrite_cap: usize) -> Self {
        self.enum_cap = enum_cap;
        self.rewrite_cap = rewrite_cap;
        self.resize_caches();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// A basis of the Σ-closure of the relations in arity 3.
    pub fn closed_relations(&self) -> &[Poly] {
        &self.closed
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn enum_cap(&self) -> usize {
        self.enum_cap
    }

    pub fn rewrite_cap(&self) -> usize {
        self.rewrite_cap
    }

    pub fn is_unitary(&self) -> bool {
        self.gens.iter().any(|g| g.role == Role::Product)
    }

    pub fn generator_index(&self, name: &str) -> Option<u8> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u8)
    }

    fn role_index(&self, role: Role) -> Option<u8> {
        self.gens.iter().position(|g| g.role == role).map(|i| i as u8)
    }

    pub fn basis(&self, arity: usize) -> Result<Arc<ArityBasis>> {
        if arity > self.enum_cap {
            return Err(Error::Unsupported(format!(
                "{}: arity {arity} exceeds the enumeration cap {}",
                self.name, self.enum_cap
            )));
        }
        Ok(self.bases[arity].get_or_init(|| Arc::new(self.enumerate(arity))).clone())
    }

    fn enumerate(&self, k: usize) -> ArityBasis {
        let labels: Vec<u32> = (1..=k as u32).collect();
        let mut trees = Vec::new();
        let mut names = Vec::new();
        if k == 1 {
            trees.push(leaf(1));
            names.push("1".to_string());
        } else if k > 1 {
            match self.kind {
                BasisKind::Com => {
                    let mu = self.role_index(Role::Product).unwrap();
                    let t = labels[1..].iter().fold(leaf(1), |t, &a| Node::op(mu, t, leaf(a)));
                    trees.push(t);
                    names.push(labels.iter().join("·"));
                }
                BasisKind::Lie => {
                    let b = self.role_index(Role::Bracket).unwrap();
                    for w in lyndon_words(&labels) {
                        trees.push(lyndon_tree(&w, b));
                        names.push(format!("[{}]", word_label(&w)));
                    }
                }
                BasisKind::Pois => {
                    let mu = self.role_index(Role::Product).unwrap();
                    let b = self.role_index(Role::Bracket).unwrap();
                    for part in set_partitions(&labels) {
                        let choices: Vec<Vec<Vec<u32>>> = part.iter().map(|bl| lyndon_words(bl)).collect();
                        for words in choices.into_iter().multi_cartesian_product() {
                            let blocks: Vec<Node> = words.iter().map(|w| lyndon_tree(w, b)).collect();
                            let mut it = blocks.into_iter();
                            let first = it.next().unwrap();
                            trees.push(it.fold(first, |t, bl| Node::op(mu, t, bl)));
                            names.push(
                                words
                                    .iter()
                                    .map(|w| if w.len() == 1 { w[0].to_string() } else { format!("[{}]", word_label(w)) })
                                    .join("·"),
                            );
                        }
                    }
                }
            }
        }
        let degrees = trees.iter().map(|t| t.degree(&self.gens)).collect();
        let index = trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        ArityBasis { trees, index, labels: names, degrees }
    }

    pub fn dim(&self, arity: usize) -> Result<usize> {
        Ok(self.basis(arity)?.trees.len())
    }

    pub fn degree(&self, arity: usize, idx: usize) -> Result<i64> {
        self.basis(arity)?.degrees.get(idx).copied().ok_or_else(|| arg_err!("basis index {idx} out of range"))
    }

    pub fn space(&self, arity: usize) -> Result<GradedSpace> {
        let b = self.basis(arity)?;
        GradedSpace::new(b.labels.iter().cloned().zip(b.degrees.iter().copied()).collect())
    }

    pub fn poincare(&self, arity: usize) -> Result<LaurentPoly> {
        let b = self.basis(arity)?;
        let mut p = LaurentPoly::zero();
        for &d in &b.degrees {
            p.add_term(1, d);
        }
        Ok(p)
    }

    /// Normal tree of a basis element, relabeled onto `labels`.
    pub fn basis_tree(&self, labels: &FiniteSet, idx: usize) -> Result<Node> {
        let b = self.basis(labels.len())?;
        let t = b.trees.get(idx).ok_or_else(|| arg_err!("basis index {idx} out of range"))?;
        Ok(t.destandardize(labels.labels()))
    }

    fn table(&self, m: usize) -> Result<Arc<Table>> {
        if m > self.rewrite_cap || m >= self.tables.len() {
            return Err(Error::Unsupported(format!(
                "{}: arity {m} exceeds the rewriting cap {}",
                self.name, self.rewrite_cap
            )));
        }
        self.tables[m].get_or_init(|| self.build_table(m).map(Arc::new)).clone()
    }

    fn build_table(&self, m: usize) -> Result<Table> {
        let basis = self.basis(m)?;
        let labels: Vec<u32> = (1..=m as u32).collect();
        let mut nonnormal = Vec::new();
        let mut normal_seen = 0usize;
        for rest in labels[1..].iter().copied().powerset() {
            if rest.is_empty() {
                continue;
            }
            let b1 = FiniteSet::new(labels.iter().copied().filter(|x| !rest.contains(x)))?;
            let b2 = FiniteSet::new(rest)?;
            for g in 0..self.gens.len() as u8 {
                for x in 0..self.dim(b1.len())? {
                    for y in 0..self.dim(b2.len())? {
                        let t = Node::op(g, self.basis_tree(&b1, x)?, self.basis_tree(&b2, y)?);
                        if basis.index.contains_key(&t) {
                            normal_seen += 1;
                        } else {
                            nonnormal.push(t);
                        }
                    }
                }
            }
        }
        if normal_seen != basis.trees.len() {
            return Err(Error::Audit(format!(
                "{}: normal monomials of arity {m} are not all reduced",
                self.name
            )));
        }
        let n_non = nonnormal.len();
        let mut col: HashMap<Node, usize> = nonnormal.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        for (i, t) in basis.trees.iter().enumerate() {
            col.insert(t.clone(), n_non + i);
        }

        let mut rows = Vec::new();
        const P: u32 = 1 << 30;
        for part in set_partitions(&labels).into_iter().filter(|p| p.len() == 3) {
            let sets: Vec<FiniteSet> = part.into_iter().map(FiniteSet::new).collect::<Result<_>>()?;
            let dims: Vec<usize> = sets.iter().map(|s| self.dim(s.len())).collect::<Result<_>>()?;
            for xyz in dims.iter().map(|&d| 0..d).multi_cartesian_product() {
                let subs: Vec<Node> =
                    (0..3).map(|i| self.basis_tree(&sets[i], xyz[i])).collect::<Result<_>>()?;
                for rel in &self.closed {
                    let mut expr: Poly = Vec::new();
                    for (q, c) in rel {
                        let mut t = q.relabel(&|a| P + a);
                        let mut sign = 1;
                        for (i, s) in subs.iter().enumerate() {
                            let (nt, sg) = t.graft(P + 1 + i as u32, s, &self.gens).expect("placeholder leaf");
                            t = nt;
                            sign *= sg;
                        }
                        expr.push((t, if sign < 0 { -c.clone() } else { c.clone() }));
                    }
                    let mut row: Combination = Vec::new();
                    for (t, c) in normalize_poly(expr, &self.gens) {
                        for (r, cr) in self.reduce_children(&t)? {
                            let j = *col.get(&r).ok_or_else(|| {
                                Error::Audit(format!("{}: unexpected monomial {}", self.name, r.render(&self.gens)))
                            })?;
                            row.push((j, &c * &cr));
                        }
                    }
                    let row = normalize_combination(row);
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let mut ech: Echelon<Scalar> = Echelon::new(n_non + basis.trees.len());
        ech.extend(rows);
        ech.make_reduced();
        let pivots: Vec<usize> = ech.pivot_columns().collect();
        if pivots.len() != n_non || pivots.iter().any(|&p| p >= n_non) {
            return Err(Error::Audit(format!(
                "{}: normal monomials of arity {m} are not a complement of the relations (rank {}, expected {})",
                self.name,
                pivots.len(),
                n_non
            )));
        }
        let mut table = Table::new();
        for (i, t) in nonnormal.into_iter().enumerate() {
            let row = ech.pivot_row(i).expect("pivot");
            let nf: Combination = row.iter().filter(|(j, _)| *j >= n_non).map(|(j, v)| (j - n_non, -v.clone())).collect();
            table.insert(t, nf);
        }
        for (i, t) in basis.trees.iter().enumerate() {
            table.insert(t.clone(), vec![(i, one())]);
        }
        Ok(table)
    }

    /// `g(A, B)` with `A` and `B` replaced by their normal forms.
    fn reduce_children(&self, t: &Node) -> Result<Poly> {
        let Node::Op(g, l, r) = t else {
            return Ok(vec![(t.clone(), one())]);
        };
        let ls = self.nf_trees(l)?;
        let rs = self.nf_trees(r)?;
        let mut out = Vec::with_capacity(ls.len() * rs.len());
        for (a, ca) in &ls {
            for (b, cb) in &rs {
                out.push((Node::op(*g, a.clone(), b.clone()), ca * cb));
            }
        }
        Ok(out)
    }

    /// Normal form of a canonical monomial as normal trees on its own labels.
    fn nf_trees(&self, t: &Node) -> Result<Poly> {
        if t.is_leaf() {
            return Ok(vec![(t.clone(), one())]);
        }
        let labels = t.leaves();
        let comb = self.nf_std(&t.standardize())?;
        let b = self.basis(labels.len())?;
        Ok(comb.into_iter().map(|(i, c)| (b.trees[i].destandardize(&labels), c)).collect())
    }

    /// Normal form of a canonical monomial on `{1..k}`.
    fn nf_std(&self, t: &Node) -> Result<Combination> {
        let k = t.arity();
        let b = self.basis(k)?;
        if let Some(&i) = b.index.get(t) {
            return Ok(vec![(i, one())]);
        }
        if let Some(c) = self.nf_cache.lock().unwrap().get(t) {
            return Ok(c.clone());
        }
        let table = self.table(k)?;
        let mut out = Combination::new();
        for (r, c) in self.reduce_children(t)? {
            let nf = table.get(&r).ok_or_else(|| Error::Audit(format!("{}: no rewrite for {}", self.name, r.render(&self.gens))))?;
            out.extend(nf.iter().map(|(i, v)| (*i, &c * v)));
        }
        let out = normalize_combination(out);
        self.nf_cache.lock().unwrap().insert(t.clone(), out.clone());
        Ok(out)
    }

    /// Normal form of an arbitrary monomial, in the basis on its sorted leaves.
    pub fn normal_form(&self, t: &Node) -> Result<Combination> {
        let (c, s) = t.canonical(&self.gens);
        let nf = self.nf_std(&c.standardize())?;
        Ok(if s < 0 { nf.into_iter().map(|(i, v)| (i, -v)).collect() } else { nf })
    }

    /// Normal form of a linear combination of monomials on a common leaf set.
    pub fn normal_form_poly(&self, p: &Poly) -> Result<Combination> {
        let mut out = Combination::new();
        for (t, c) in p {
            out.extend(self.normal_form(t)?.into_iter().map(|(i, v)| (i, c * &v)));
        }
        Ok(normalize_combination(out))
    }

    /// `x ∘_a y` for basis elements `x` of `O(I)` and `y` of `O(J)`; `J` must
    /// be disjoint from `I - {a}`. Result in the basis of `O(I ∪_a J)`.
    pub fn compose(&self, i: &FiniteSet, x: usize, a: u32, j: &FiniteSet, y: usize) -> Result<Combination> {
        let pos = i.position(a).ok_or_else(|| arg_err!("{a} is not in {i}"))?;
        let rest = i.without(a)?;
        if j.labels().iter().any(|&l| rest.contains(l)) {
            return Err(arg_err!("{j} meets {rest}"));
        }
        let merged = FiniteSet::new(rest.labels().iter().chain(j.labels()).copied())?;
        let pattern: Vec<bool> = merged.labels().iter().map(|&l| j.contains(l)).collect();
        let key = (i.len(), x, pos, j.len(), y, pattern);
        if let Some(c) = self.compose_cache.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let tx = self.basis_tree(i, x)?;
        let ty = self.basis_tree(j, y)?;
        let (t, s) = tx.graft(a, &ty, &self.gens).expect("leaf present");
        let mut out = self.normal_form(&t)?;
        if s < 0 {
            out.iter_mut().for_each(|(_, v)| *v = -v.clone());
        }
        self.compose_cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Action of a bijection of `{1..k}` on a basis element.
    pub fn permute(&self, k: usize, idx: usize, sigma: &BTreeMap<u32, u32>) -> Result<Combination> {
        let t = self.basis_tree(&FiniteSet::standard(k), idx)?;
        self.normal_form(&t.relabel(&|a| sigma[&a]))
    }

    /// Substitutes the unit into input `a` of a basis element of `O(I)`;
    /// the result lies in `O(I - {a})`.
    pub fn forget_unit(&self, i: &FiniteSet, x: usize, a: u32) -> Result<Combination> {
        if !self.is_unitary() {
            return Err(Error::Unsupported(format!("{} has no unit in arity 0", self.name)));
        }
        if !i.contains(a) {
            return Err(arg_err!("{a} is not in {i}"));
        }
        if i.len() == 1 {
            return Err(Error::Unsupported("forgetting the only input leaves arity 0".into()));
        }
        let t = self.basis_tree(i, x)?;
        match self.forget_tree(&t, a) {
            Forgot::Zero => Ok(Vec::new()),
            Forgot::Unit => unreachable!("arity at least 2"),
            Forgot::Tree(t) => self.normal_form(&t),
        }
    }

    fn forget_tree(&self, t: &Node, a: u32) -> Forgot {
        match t {
            Node::Leaf(b) if *b == a => Forgot::Unit,
            Node::Leaf(_) => Forgot::Tree(t.clone()),
            Node::Op(g, l, r) => {
                let (fl, fr) = (self.forget_tree(l, a), self.forget_tree(r, a));
                match (fl, fr) {
                    (Forgot::Zero, _) | (_, Forgot::Zero) => Forgot::Zero,
                    (Forgot::Unit, other) | (other, Forgot::Unit) => {
                        if self.gens[*g as usize].role == Role::Product {
                            other
                        } else {
                            Forgot::Zero
                        }
                    }
                    (Forgot::Tree(l), Forgot::Tree(r)) => Forgot::Tree(Node::op(*g, l, r)),
                }
            }
        }
    }
}

enum Forgot {
    Zero,
    Unit,
    Tree(Node),
}

fn jacobi(b: u8) -> Poly {
    // orbit sum of β(β(1,2),3) under the cyclic relabeling 1→2→3→1
    let cyc = |a: u32| a % 3 + 1;
    let t = Node::op(b, Node::op(b, leaf(1), leaf(2)), leaf(3));
    let t1 = t.relabel(&cyc);
    let t2 = t1.relabel(&cyc);
    vec![(t, one()), (t1, one()), (t2, one())]
}

/// Closes relations on `{1,2,3}` under relabeling and extracts a basis.
fn sigma_closure(relations: &[Poly], gens: &[Generator]) -> Vec<Poly> {
    let mut monomials: Vec<Node> = Vec::new();
    let mut images: Vec<Poly> = Vec::new();
    for rel in relations {
        for p in [1u32, 2, 3].iter().copied().permutations(3) {
            let img: Poly = rel.iter().map(|(t, c)| (t.relabel(&|a| p[a as usize - 1]), c.clone())).collect();
            let img = normalize_poly(img, gens);
            for (t, _) in &img {
                if !monomials.contains(t) {
                    monomials.push(t.clone());
                }
            }
            images.push(img);
        }
    }
    monomials.sort();
    let mut ech: Echelon<Scalar> = Echelon::new(monomials.len());
    for img in images {
        let row = normalize_combination(
            img.into_iter().map(|(t, c)| (monomials.binary_search(&t).unwrap(), c)).collect(),
        );
        ech.insert(row);
    }
    ech.make_reduced();
    let pivots: Vec<usize> = ech.pivot_columns().collect();
    pivots
        .into_iter()
        .map(|p| ech.pivot_row(p).unwrap().iter().map(|(j, c)| (monomials[*j].clone(), c.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_factorization() {
        let t = lyndon_tree(&[1, 3, 2], 0);
        assert_eq!(t, Node::op(0, Node::op(0, leaf(1), leaf(3)), leaf(2)));
        let t = lyndon_tree(&[1, 2, 3], 0);
        assert_eq!(t, Node::op(0, leaf(1), Node::op(0, leaf(2), leaf(3))));
        assert_eq!(lyndon_words(&[1, 2, 3, 4]).len(), 6);
    }

    #[test]
    fn closure_ranks() {
        assert_eq!(PresentedOperad::com().closed_relations().len(), 2);
        assert_eq!(PresentedOperad::lie().closed_relations().len(), 1);
        // assoc 2, Jacobi 1, Leibniz 3
        assert_eq!(PresentedOperad::pois(2).closed_relations().len(), 6);
        assert_eq!(PresentedOperad::pois(1).closed_relations().len(), 6);
    }

    #[test]
    fn small_dimensions() {
        let com = PresentedOperad::com();
        let lie = PresentedOperad::lie();
        let p = PresentedOperad::pois(2);
        for k in 1..=5 {
            assert_eq!(com.dim(k).unwrap(), 1);
            assert_eq!(lie.dim(k).unwrap(), (1..k).product::<usize>());
            assert_eq!(p.dim(k).unwrap(), (1..=k).product::<usize>());
        }
        assert_eq!(p.basis(3).unwrap().labels.iter().filter(|l| l.as_str() == "[12]·3").count(), 1);
    }

    #[test]
    fn tables_pass_audit() {
        for op in [PresentedOperad::com(), PresentedOperad::lie(), PresentedOperad::pois(1), PresentedOperad::pois(2)] {
            for m in 2..=5 {
                op.table(m).unwrap();
            }
        }
    }
}
