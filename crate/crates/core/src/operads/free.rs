//! Tree monomials of free operads on binary generators.
//!
//! A monomial is a binary tree whose internal vertices carry generators. As
//! an element of the free operad it is the tensor product of its generators
//! taken in preorder (vertex, left subtree, right subtree); swapping the
//! children of a vertex costs the generator's symmetry sign times the Koszul
//! sign of exchanging the two subtrees.

use std::collections::BTreeMap;

use crate::exactla::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Commutative product: has the unit as a neutral element.
    Product,
    /// Bracket: vanishes when one input is the unit.
    Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    /// `τ·g = symmetry · g` for the transposition of the two inputs.
    pub symmetry: i32,
    pub role: Role,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf(u32),
    Op(u8, Box<Node>, Box<Node>),
}

pub type Poly = Vec<(Node, Scalar)>;

impl Node {
    pub fn op(g: u8, l: Node, r: Node) -> Node {
        Node::Op(g, Box::new(l), Box::new(r))
    }

    pub fn min_leaf(&self) -> u32 {
        match self {
            Node::Leaf(a) => *a,
            Node::Op(_, l, r) => l.min_leaf().min(r.min_leaf()),
        }
    }

    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Node::Leaf(a) => out.push(*a),
            Node::Op(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Op(_, l, r) => l.arity() + r.arity(),
        }
    }

    pub fn degree(&self, gens: &[Generator]) -> i64 {
        match self {
            Node::Leaf(_) => 0,
            Node::Op(g, l, r) => gens[*g as usize].degree + l.degree(gens) + r.degree(gens),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf(_))
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> Node {
        match self {
            Node::Leaf(a) => Node::Leaf(f(*a)),
            Node::Op(g, l, r) => Node::op(*g, l.relabel(f), r.relabel(f)),
        }
    }

    /// Order-preserving relabeling onto `1..k`.
    pub fn standardize(&self) -> Node {
        let map: BTreeMap<u32, u32> =
            self.leaves().into_iter().enumerate().map(|(i, a)| (a, i as u32 + 1)).collect();
        self.relabel(&|a| map[&a])
    }

    /// Order-preserving relabeling of `1..k` onto `labels` (sorted).
    pub fn destandardize(&self, labels: &[u32]) -> Node {
        self.relabel(&|a| labels[a as usize - 1])
    }

    /// Children of every vertex ordered by minimal leaf, with the sign.
    pub fn canonical(&self, gens: &[Generator]) -> (Node, i32) {
        match self {
            Node::Leaf(_) => (self.clone(), 1),
            Node::Op(g, l, r) => {
                let (l, sl) = l.canonical(gens);
                let (r, sr) = r.canonical(gens);
                Self::orient(*g, l, r, sl * sr, gens)
            }
        }
    }

    /// Builds `g(l, r)` from canonical children, swapping them if needed.
    pub fn orient(g: u8, l: Node, r: Node, sign: i32, gens: &[Generator]) -> (Node, i32) {
        if l.min_leaf() < r.min_leaf() {
            (Node::op(g, l, r), sign)
        } else {
            let koszul = if (l.degree(gens) * r.degree(gens)).rem_euclid(2) == 1 { -1 } else { 1 };
            (Node::op(g, r, l), sign * gens[g as usize].symmetry * koszul)
        }
    }

    /// Replaces leaf `a` with `y`. The tensor `self ⊗ y` becomes the preorder
    /// of the grafted tree once `y` moves past the vertices of `self` that
    /// follow leaf `a`; that Koszul sign is returned. `None` if `a` is absent.
    pub fn graft(&self, a: u32, y: &Node, gens: &[Generator]) -> Option<(Node, i32)> {
        let total = self.degree(gens);
        let (node, before) = self.graft_inner(a, y, gens)?;
        let after = total - before;
        let sign = if (after * y.degree(gens)).rem_euclid(2) == 1 { -1 } else { 1 };
        Some((node, sign))
    }

    /// Returns the grafted tree and the degree of vertices preceding leaf `a`.
    fn graft_inner(&self, a: u32, y: &Node, gens: &[Generator]) -> Option<(Node, i64)> {
        match self {
            Node::Leaf(b) if *b == a => Some((y.clone(), 0)),
            Node::Leaf(_) => None,
            Node::Op(g, l, r) => {
                let here = gens[*g as usize].degree;
                if let Some((nl, before)) = l.graft_inner(a, y, gens) {
                    return Some((Node::op(*g, nl, (**r).clone()), here + before));
                }
                let (nr, before) = r.graft_inner(a, y, gens)?;
                Some((Node::op(*g, (**l).clone(), nr), here + l.degree(gens) + before))
            }
        }
    }

    /// Compact rendering such as `β(μ(1,2),3)`.
    pub fn render(&self, gens: &[Generator]) -> String {
        match self {
            Node::Leaf(a) => a.to_string(),
            Node::Op(g, l, r) => {
                format!("{}({},{})", gens[*g as usize].name, l.render(gens), r.render(gens))
            }
        }
    }
}

/// Canonicalizes every monomial and merges duplicates.
pub fn normalize_poly(p: Poly, gens: &[Generator]) -> Poly {
    let mut acc: BTreeMap<Node, Scalar> = BTreeMap::new();
    for (n, c) in p {
        let (n, s) = n.canonical(gens);
        let c = if s < 0 { -c } else { c };
        let e = acc.entry(n).or_insert_with(Scalar::zero);
        *e = e.clone() + c;
    }
    acc.into_iter().filter(|(_, c)| *c != Scalar::zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> Vec<Generator> {
        vec![
            Generator { name: "μ".into(), degree: 0, symmetry: 1, role: Role::Product },
            Generator { name: "β".into(), degree: 1, symmetry: 1, role: Role::Bracket },
        ]
    }

    fn leaf(a: u32) -> Node {
        Node::Leaf(a)
    }

    #[test]
    fn graft_sign_counts_later_vertices() {
        let g = gens();
        // β(1, β(2,3)) grafting an odd tree at leaf 1: the inner β follows leaf 1
        let x = Node::op(1, leaf(1), Node::op(1, leaf(2), leaf(3)));
        let y = Node::op(1, leaf(4), leaf(5));
        let (t, s) = x.graft(1, &y, &g).unwrap();
        assert_eq!(s, -1);
        assert_eq!(t.leaves(), vec![2, 3, 4, 5]);
        // at leaf 3 nothing follows
        assert_eq!(x.graft(3, &y, &g).unwrap().1, 1);
        assert!(x.graft(9, &y, &g).is_none());
    }

    #[test]
    fn canonical_swap_sign() {
        let g = gens();
        let t = Node::op(0, Node::op(1, leaf(3), leaf(4)), Node::op(1, leaf(1), leaf(2)));
        let (c, s) = t.canonical(&g);
        assert_eq!(c, Node::op(0, Node::op(1, leaf(1), leaf(2)), Node::op(1, leaf(3), leaf(4))));
        assert_eq!(s, -1);
    }

    #[test]
    fn standardize_round_trip() {
        let t = Node::op(0, leaf(7), Node::op(1, leaf(3), leaf(9)));
        let s = t.standardize();
        assert_eq!(s.leaves(), vec![1, 2, 3]);
        assert_eq!(s.destandardize(&[3, 7, 9]), t);
    }
}
