//! Rooted trees with labeled leaves and labeled internal vertices.
//!
//! A tree is stored as a vertex list with the root at index 0. Trees returned
//! by [`OpTree::canonical_form`] and the enumerators list their vertices in
//! canonical preorder: children of every vertex sorted by the minimal leaf of
//! their subtree. The vertex order doubles as the tensor order of the vertex
//! labels, which is where Koszul signs come from.

mod enumerate;

use std::fmt::Write as _;

use serde_json::{json, Value};

pub use enumerate::{count_trees, enumerate_shapes, enumerate_trees, set_partitions};

use crate::error::{arg_err, Error, Result};
use crate::exactla::Scalar;
use crate::symseq::{infinitesimal_composite, koszul_sign, FiniteSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Child {
    Leaf(u32),
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex<L> {
    pub label: L,
    pub children: Vec<Child>,
}

/// Rooted tree; `module_root` exempts the root from the two-children rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpTree<L> {
    vertices: Vec<Vertex<L>>,
    module_root: bool,
}

impl<L: Clone> OpTree<L> {
    /// Validates connectivity, leaf uniqueness and the arity rule.
    pub fn new(vertices: Vec<Vertex<L>>, module_root: bool) -> Result<Self> {
        if vertices.is_empty() {
            return Err(arg_err!("a tree needs a root vertex"));
        }
        let mut seen_v = vec![false; vertices.len()];
        seen_v[0] = true;
        let mut leaves = Vec::new();
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let vx = &vertices[v];
            let min_children = if v == 0 && module_root { 1 } else { 2 };
            if vx.children.len() < min_children {
                return Err(Error::Structural(format!(
                    "vertex {v} has {} children, needs at least {min_children}",
                    vx.children.len()
                )));
            }
            for ch in &vx.children {
                match *ch {
                    Child::Leaf(a) => leaves.push(a),
                    Child::Vertex(w) => {
                        if w >= vertices.len() || seen_v[w] {
                            return Err(Error::Structural(format!("vertex {w} reached twice or missing")));
                        }
                        seen_v[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        if seen_v.iter().any(|s| !s) {
            return Err(Error::Structural("tree is not connected".into()));
        }
        FiniteSet::new(leaves).map_err(|_| Error::Structural("leaf labels repeat".into()))?;
        Ok(OpTree { vertices, module_root })
    }

    /// Single vertex with the given leaves.
    pub fn corolla(label: L, leaves: &FiniteSet, module_root: bool) -> Result<Self> {
        OpTree::new(
            vec![Vertex { label, children: leaves.labels().iter().map(|&a| Child::Leaf(a)).collect() }],
            module_root,
        )
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<Vertex<L>>, module_root: bool) -> Self {
        OpTree { vertices, module_root }
    }

    pub fn vertices(&self) -> &[Vertex<L>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_module_tree(&self) -> bool {
        self.module_root
    }

    pub fn leaves(&self) -> FiniteSet {
        let mut out = Vec::new();
        for v in &self.vertices {
            for ch in &v.children {
                if let Child::Leaf(a) = ch {
                    out.push(*a);
                }
            }
        }
        FiniteSet::new(out).expect("validated leaves")
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|x| x.children.contains(&Child::Vertex(v)))
    }

    /// Minimal leaf below every vertex.
    pub fn min_leaves(&self) -> Vec<u32> {
        let mut memo = vec![None; self.vertices.len()];
        for v in 0..self.vertices.len() {
            self.min_leaf_memo(v, &mut memo);
        }
        memo.into_iter().map(|m| m.expect("filled")).collect()
    }

    fn min_leaf_memo(&self, v: usize, memo: &mut Vec<Option<u32>>) -> u32 {
        if let Some(m) = memo[v] {
            return m;
        }
        let m = self.vertices[v]
            .children
            .iter()
            .map(|ch| match *ch {
                Child::Leaf(a) => a,
                Child::Vertex(w) => self.min_leaf_memo(w, memo),
            })
            .min()
            .expect("vertex has children");
        memo[v] = Some(m);
        m
    }

    /// Names of the inputs of `v`: a leaf names itself, a subtree is named by
    /// its minimal leaf. Sorted.
    pub fn input_set(&self, v: usize) -> FiniteSet {
        let mins = self.min_leaves();
        self.input_set_with(v, &mins)
    }

    pub(crate) fn input_set_with(&self, v: usize, mins: &[u32]) -> FiniteSet {
        FiniteSet::new(self.vertices[v].children.iter().map(|ch| match *ch {
            Child::Leaf(a) => a,
            Child::Vertex(w) => mins[w],
        }))
        .expect("input names are distinct")
    }

    /// Internal edges, identified by their lower vertex.
    pub fn internal_edges(&self) -> Vec<usize> {
        (1..self.vertices.len()).collect()
    }

    /// Canonical representative together with the Koszul sign of reordering
    /// the vertex labels, whose degrees are given by `degree(label, is_root)`.
    pub fn canonical_form(&self, degree: impl Fn(&L, bool) -> i64) -> (OpTree<L>, i32) {
        let mins = self.min_leaves();
        let name = |ch: &Child| match *ch {
            Child::Leaf(a) => a,
            Child::Vertex(w) => mins[w],
        };
        let mut sorted: Vec<Vec<Child>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut c = v.children.clone();
                c.sort_by_key(name);
                c
            })
            .collect();
        // preorder from the root
        let mut order = Vec::with_capacity(self.vertices.len());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            order.push(v);
            for ch in sorted[v].iter().rev() {
                if let Child::Vertex(w) = ch {
                    stack.push(*w);
                }
            }
        }
        let mut new_index = vec![0usize; self.vertices.len()];
        for (i, &v) in order.iter().enumerate() {
            new_index[v] = i;
        }
        let vertices: Vec<Vertex<L>> = order
            .iter()
            .map(|&v| Vertex {
                label: self.vertices[v].label.clone(),
                children: std::mem::take(&mut sorted[v])
                    .into_iter()
                    .map(|ch| match ch {
                        Child::Vertex(w) => Child::Vertex(new_index[w]),
                        leaf => leaf,
                    })
                    .collect(),
            })
            .collect();
        let degrees: Vec<i64> =
            order.iter().map(|&v| degree(&self.vertices[v].label, v == 0)).collect();
        let sign = koszul_sign(&new_index, &degrees);
        (OpTree { vertices, module_root: self.module_root }, sign)
    }

    /// Replaces leaf `a` by the root of `s`. The result lists the vertices of
    /// `self` followed by those of `s` (tensor order `t ⊗ s`) and is not
    /// canonicalized; labels are carried over unchanged.
    pub fn graft(&self, a: u32, s: &OpTree<L>) -> Result<OpTree<L>> {
        if s.module_root {
            return Err(arg_err!("cannot graft a module tree above another vertex"));
        }
        let leaves = self.leaves();
        if !leaves.contains(a) {
            return Err(arg_err!("{a} is not a leaf of the tree"));
        }
        let (_, relabel) = infinitesimal_composite(&leaves, a, &s.leaves())?;
        let offset = self.vertices.len();
        let mut vertices: Vec<Vertex<L>> = self
            .vertices
            .iter()
            .map(|v| Vertex {
                label: v.label.clone(),
                children: v
                    .children
                    .iter()
                    .map(|ch| if *ch == Child::Leaf(a) { Child::Vertex(offset) } else { *ch })
                    .collect(),
            })
            .collect();
        vertices.extend(s.vertices.iter().map(|v| Vertex {
            label: v.label.clone(),
            children: v
                .children
                .iter()
                .map(|ch| match *ch {
                    Child::Leaf(b) => Child::Leaf(relabel[&b]),
                    Child::Vertex(w) => Child::Vertex(w + offset),
                })
                .collect(),
        }));
        OpTree::new(vertices, self.module_root)
    }

    pub fn map_labels<M: Clone>(&self, f: impl Fn(&L) -> M) -> OpTree<M> {
        OpTree {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex { label: f(&v.label), children: v.children.clone() })
                .collect(),
            module_root: self.module_root,
        }
    }

    /// Contracts the edge above vertex `child`, merging it into its parent.
    ///
    /// `combine(parent_label, parent_inputs, child_name, child_label,
    /// child_inputs, parent_is_root)` returns the merged vertex labels (on the
    /// sorted merged input set) with their local coefficients. Vertex labels
    /// are treated as graded tensor factors in vertex order with degrees
    /// `degree(label, is_root)`; the result collects the sign of moving the
    /// child factor next to its parent, the sign of the contraction map
    /// (degree -1) passing the earlier factors, and the reordering sign of
    /// the canonical form. Requires `self` canonical.
    pub fn contract_edge<C, D>(&self, child: usize, combine: C, degree: D) -> Result<Vec<(OpTree<L>, Scalar)>>
    where
        C: Fn(&L, &FiniteSet, u32, &L, &FiniteSet, bool) -> Result<Vec<(L, Scalar)>>,
        D: Fn(&L, bool) -> i64,
    {
        if child == 0 || child >= self.vertices.len() {
            return Err(arg_err!("vertex {child} does not sit below an internal edge"));
        }
        let parent = self.parent(child).ok_or_else(|| Error::Structural("orphan vertex".into()))?;
        let mins = self.min_leaves();
        let deg: Vec<i64> =
            self.vertices.iter().enumerate().map(|(i, v)| degree(&v.label, i == 0)).collect();
        let parity = |x: i64| x.rem_euclid(2);
        let before: i64 = deg[..parent].iter().sum();
        let between: i64 = deg[parent + 1..child].iter().sum();
        let mut sign = 1i32;
        if parity(before) == 1 {
            sign = -sign;
        }
        if parity(deg[child]) * parity(between) == 1 {
            sign = -sign;
        }
        let p_in = self.input_set_with(parent, &mins);
        let c_in = self.input_set_with(child, &mins);
        let local = combine(
            &self.vertices[parent].label,
            &p_in,
            mins[child],
            &self.vertices[child].label,
            &c_in,
            parent == 0,
        )?;
        let remap = |ch: Child| match ch {
            Child::Vertex(w) if w > child => Child::Vertex(w - 1),
            other => other,
        };
        let mut out = Vec::with_capacity(local.len());
        for (label, coeff) in local {
            let mut vertices = Vec::with_capacity(self.vertices.len() - 1);
            for (i, v) in self.vertices.iter().enumerate() {
                if i == child {
                    continue;
                }
                let mut children = Vec::new();
                for ch in &v.children {
                    if *ch == Child::Vertex(child) {
                        children.extend(self.vertices[child].children.iter().map(|&c| remap(c)));
                    } else {
                        children.push(remap(*ch));
                    }
                }
                let label = if i == parent { label.clone() } else { v.label.clone() };
                vertices.push(Vertex { label, children });
            }
            let merged = OpTree { vertices, module_root: self.module_root };
            let (canon, s) = merged.canonical_form(&degree);
            let c = if sign * s < 0 { -coeff } else { coeff };
            out.push((canon, c));
        }
        Ok(out)
    }

    /// Nested JSON: `{"label": .., "children": [..]}`, leaves as integers.
    pub fn to_json(&self, label: impl Fn(&L) -> Value) -> Value {
        self.vertex_json(0, &label)
    }

    fn vertex_json(&self, v: usize, label: &impl Fn(&L) -> Value) -> Value {
        let children: Vec<Value> = self.vertices[v]
            .children
            .iter()
            .map(|ch| match *ch {
                Child::Leaf(a) => json!(a),
                Child::Vertex(w) => self.vertex_json(w, label),
            })
            .collect();
        json!({ "label": label(&self.vertices[v].label), "children": children })
    }

    /// Graphviz rendering, root at the top.
    pub fn to_dot(&self, label: impl Fn(&L) -> String) -> String {
        let mut s = String::from("digraph tree {\n  rankdir=BT;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if i == 0 && self.module_root { "box" } else { "ellipse" };
            let _ = writeln!(s, "  v{i} [label=\"{}\", shape={shape}];", label(&v.label).replace('"', "'"));
            for ch in &v.children {
                match *ch {
                    Child::Leaf(a) => {
                        let _ = writeln!(s, "  l{a} [label=\"{a}\", shape=plaintext];");
                        let _ = writeln!(s, "  l{a} -> v{i};");
                    }
                    Child::Vertex(w) => {
                        let _ = writeln!(s, "  v{w} -> v{i};");
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> FiniteSet {
        FiniteSet::new(v.iter().copied()).unwrap()
    }

    fn flat(_: &&str, _: bool) -> i64 {
        0
    }

    #[test]
    fn rejects_unary_vertices() {
        let t = OpTree::new(vec![Vertex { label: (), children: vec![Child::Leaf(1)] }], false);
        assert!(t.is_err());
        let m = OpTree::new(vec![Vertex { label: (), children: vec![Child::Leaf(1)] }], true);
        assert!(m.is_ok());
    }

    #[test]
    fn graft_two_corollas() {
        let t = OpTree::corolla("x", &set(&[1, 2]), false).unwrap();
        let s = OpTree::corolla("y", &set(&[3, 4]), false).unwrap();
        let g = t.graft(2, &s).unwrap();
        assert_eq!(g.leaves(), set(&[1, 3, 4]));
        assert_eq!(g.vertex_count(), 2);
        let (c, sign) = g.canonical_form(flat);
        assert_eq!(sign, 1);
        assert_eq!(c.vertices()[0].children, vec![Child::Leaf(1), Child::Vertex(1)]);
        assert!(t.graft(9, &s).is_err());
    }

    #[test]
    fn canonical_is_idempotent() {
        let t = OpTree::corolla("x", &set(&[1, 2]), false).unwrap();
        let (c, s) = t.canonical_form(flat);
        assert_eq!((c.clone(), s), (t, 1));
        assert_eq!(c.canonical_form(flat), (c, 1));
    }

    #[test]
    fn swapping_odd_subtrees_flips_sign() {
        // root with children [v2, v1] where v1 holds leaf 1: both odd labels
        let t = OpTree::new(
            vec![
                Vertex { label: 0i64, children: vec![Child::Vertex(1), Child::Vertex(2)] },
                Vertex { label: 1, children: vec![Child::Leaf(3), Child::Leaf(4)] },
                Vertex { label: 1, children: vec![Child::Leaf(1), Child::Leaf(2)] },
            ],
            false,
        )
        .unwrap();
        let (c, s) = t.canonical_form(|d, _| *d);
        assert_eq!(s, -1);
        assert_eq!(c.vertices()[1].children, vec![Child::Leaf(1), Child::Leaf(2)]);
        let (_, even) = t.canonical_form(|_, _| 2);
        assert_eq!(even, 1);
    }

    #[test]
    fn left_comb_from_three_corollas() {
        let c = |a, b| OpTree::corolla("m", &set(&[a, b]), false).unwrap();
        let g = c(1, 2).graft(1, &c(5, 6)).unwrap().graft(5, &c(7, 8)).unwrap();
        let (g, _) = g.canonical_form(flat);
        assert_eq!(g.leaves(), set(&[2, 6, 7, 8]));
        // every vertex keeps its leftmost input internal except the last one
        assert_eq!(g.vertices()[0].children[0], Child::Leaf(2));
        assert_eq!(g.vertex_count(), 3);
    }

    #[test]
    fn contract_requires_internal_edge() {
        let t = OpTree::corolla(0i64, &set(&[1, 2, 3]), false).unwrap();
        let r = t.contract_edge(0, |_, _, _, _, _, _| Ok(vec![]), |_, _| 0);
        assert!(r.is_err());
    }

    #[test]
    fn serializations() {
        let t = OpTree::corolla("m", &set(&[1, 2]), false).unwrap();
        assert_eq!(t.to_json(|l| json!(l)).to_string(), r#"{"label":"m","children":[1,2]}"#);
        assert!(t.to_dot(|l| l.to_string()).contains("l2 -> v0"));
    }
}
