use itertools::Itertools;

use super::{Child, OpTree, Vertex};
use crate::symseq::FiniteSet;

/// All set partitions of `labels`, blocks sorted by their minimum, in a
/// deterministic order.
pub fn set_partitions(labels: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn go(rest: &[u32], acc: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        let Some((&x, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for i in 0..acc.len() {
            acc[i].push(x);
            go(tail, acc, out);
            acc[i].pop();
        }
        acc.push(vec![x]);
        go(tail, acc, out);
        acc.pop();
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    go(&sorted, &mut Vec::new(), &mut out);
    out
}

/// Recursive tree skeleton used during enumeration.
#[derive(Clone, Debug)]
enum Skel {
    Leaf(u32),
    Node(Vec<Skel>),
}

fn skeletons(labels: &[u32], allowed: &dyn Fn(usize) -> bool, min_blocks: usize) -> Vec<Vec<Skel>> {
    // each result is the child list of a root vertex
    let mut out = Vec::new();
    for part in set_partitions(labels) {
        if part.len() < min_blocks || !allowed(part.len()) {
            continue;
        }
        let options: Vec<Vec<Skel>> = part
            .iter()
            .map(|block| {
                if block.len() == 1 {
                    vec![Skel::Leaf(block[0])]
                } else {
                    skeletons(block, allowed, 2).into_iter().map(Skel::Node).collect()
                }
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        for combo in options.into_iter().multi_cartesian_product() {
            out.push(combo);
        }
    }
    out
}

fn flatten(children: &[Skel], vertices: &mut Vec<Vertex<()>>) -> usize {
    let me = vertices.len();
    vertices.push(Vertex { label: (), children: Vec::new() });
    let mut kids = Vec::with_capacity(children.len());
    for ch in children {
        match ch {
            Skel::Leaf(a) => kids.push(Child::Leaf(*a)),
            Skel::Node(cs) => kids.push(Child::Vertex(flatten(cs, vertices))),
        }
    }
    vertices[me].children = kids;
    me
}

/// Unlabeled canonical trees on `leaves` whose non-root vertex arities satisfy
/// `allowed`; with `module_root` the root may have a single child.
pub fn enumerate_shapes(
    leaves: &FiniteSet,
    allowed: &dyn Fn(usize) -> bool,
    module_root: bool,
) -> Vec<OpTree<()>> {
    if leaves.is_empty() {
        return Vec::new();
    }
    let min_root = if module_root { 1 } else { 2 };
    let root_allowed = |k: usize| module_root || allowed(k);
    let mut out = Vec::new();
    for part in set_partitions(leaves.labels()) {
        if part.len() < min_root || !root_allowed(part.len()) {
            continue;
        }
        let options: Vec<Vec<Skel>> = part
            .iter()
            .map(|block| {
                if block.len() == 1 {
                    vec![Skel::Leaf(block[0])]
                } else {
                    skeletons(block, allowed, 2).into_iter().map(Skel::Node).collect()
                }
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        for combo in options.into_iter().multi_cartesian_product() {
            let mut vertices = Vec::new();
            flatten(&combo, &mut vertices);
            out.push(OpTree::from_parts_unchecked(vertices, module_root));
        }
    }
    out
}

/// Canonical labeled trees: every shape with every choice of vertex label,
/// where `labels(arity, is_root)` lists the admissible labels of a vertex.
pub fn enumerate_trees<L: Clone>(
    leaves: &FiniteSet,
    allowed: &dyn Fn(usize) -> bool,
    module_root: bool,
    labels: &dyn Fn(usize, bool) -> Vec<L>,
) -> Vec<OpTree<L>> {
    let mut out = Vec::new();
    for shape in enumerate_shapes(leaves, allowed, module_root) {
        let choices: Vec<Vec<L>> = shape
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| labels(v.children.len(), i == 0 && module_root))
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        for combo in choices.into_iter().multi_cartesian_product() {
            let vertices = shape
                .vertices()
                .iter()
                .zip(combo)
                .map(|(v, label)| Vertex { label, children: v.children.clone() })
                .collect();
            out.push(OpTree::from_parts_unchecked(vertices, module_root));
        }
    }
    out
}

/// Number of canonical shapes on `k` leaves, by recursion over the block of
/// the first child's set partition. Independent of [`enumerate_shapes`].
pub fn count_trees(k: usize, allowed: &dyn Fn(usize) -> bool) -> u128 {
    // t[n]: trees on n labeled leaves (t[1] = 1 counts the bare leaf)
    // f[n][m]: ordered-by-minimum forests of m trees covering n labeled leaves
    let mut t = vec![0u128; k + 1];
    let mut f = vec![vec![0u128; k + 1]; k + 1];
    let binom = |n: usize, r: usize| -> u128 {
        (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
    };
    if k == 0 {
        return 0;
    }
    f[0][0] = 1;
    for n in 1..=k {
        // forests of m >= 2 trees only involve trees on fewer than n leaves
        for m in 2..=n {
            f[n][m] = (1..n)
                .map(|s| {
                    let ts = if s == 1 { 1 } else { t[s] };
                    binom(n - 1, s - 1) * ts * f[n - s][m - 1]
                })
                .sum();
        }
        t[n] = if n == 1 { 1 } else { (2..=n).filter(|&m| allowed(m)).map(|m| f[n][m]).sum() };
        f[n][1] = t[n];
    }
    t[k]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for n in 1..=6u32 {
            let labels: Vec<u32> = (1..=n).collect();
            assert_eq!(set_partitions(&labels).len(), bell[n as usize]);
        }
    }

    #[test]
    fn binary_tree_counts() {
        let binary = |k: usize| k == 2;
        assert_eq!(enumerate_shapes(&FiniteSet::standard(3), &binary, false).len(), 3);
        assert_eq!(enumerate_shapes(&FiniteSet::standard(4), &binary, false).len(), 15);
    }

    #[test]
    fn all_arity_counts() {
        let any = |_: usize| true;
        assert_eq!(enumerate_shapes(&FiniteSet::standard(3), &any, false).len(), 4);
        assert_eq!(enumerate_shapes(&FiniteSet::standard(4), &any, false).len(), 26);
    }

    #[test]
    fn counts_match_recurrence() {
        let any = |_: usize| true;
        let binary = |k: usize| k == 2;
        for k in 2..=6 {
            let s = FiniteSet::standard(k);
            assert_eq!(enumerate_shapes(&s, &any, false).len() as u128, count_trees(k, &any));
            assert_eq!(enumerate_shapes(&s, &binary, false).len() as u128, count_trees(k, &binary));
        }
    }

    #[test]
    fn shapes_are_canonical_and_distinct() {
        let any = |_: usize| true;
        let shapes = enumerate_shapes(&FiniteSet::standard(5), &any, false);
        let mut seen = std::collections::HashSet::new();
        for s in &shapes {
            let (c, _) = s.canonical_form(|_, _| 0);
            assert_eq!(&c, s);
            assert!(seen.insert(c));
        }
    }

    #[test]
    fn module_shapes_allow_unary_root() {
        let any = |_: usize| true;
        let m = enumerate_shapes(&FiniteSet::standard(2), &any, true);
        // root with two leaves, or root above a binary vertex
        assert_eq!(m.len(), 2);
        let one = enumerate_shapes(&FiniteSet::standard(1), &any, true);
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn labeled_enumeration() {
        let binary = |k: usize| k == 2;
        let two = |_: usize, _: bool| vec!['a', 'b'];
        let trees = enumerate_trees(&FiniteSet::standard(3), &binary, false, &two);
        assert_eq!(trees.len(), 3 * 4);
    }
}
