//! Dimension count by brute force: every binary tree monomial modulo the
//! operadic ideal generated by the relations, with no rewriting involved.

use std::collections::BTreeMap;

use super::free::{normalize_poly, Generator, Node, Poly};
use super::presented::PresentedOperad;
use crate::error::{Error, Result};
use crate::exactla::{rank, Scalar, SparseMatrix};
use crate::symseq::LaurentPoly;

fn all_trees(labels: &[u32], ngen: u8) -> Vec<Node> {
    if labels.len() == 1 {
        return vec![Node::Leaf(labels[0])];
    }
    let rest = &labels[1..];
    let mut out = Vec::new();
    for mask in 1..(1u32 << rest.len()) {
        let right: Vec<u32> = (0..rest.len()).filter(|i| mask >> i & 1 == 1).map(|i| rest[i]).collect();
        let left: Vec<u32> = labels.iter().copied().filter(|x| !right.contains(x)).collect();
        let ls = all_trees(&left, ngen);
        let rs = all_trees(&right, ngen);
        for g in 0..ngen {
            for x in &ls {
                for y in &rs {
                    out.push(Node::op(g, x.clone(), y.clone()));
                }
            }
        }
    }
    out
}

/// Every way to see `t` as a context with one hole holding a two-vertex
/// subtree, returned as the context and the subtree's three inputs.
fn quadratic_sites(t: &Node, hole: u32) -> Vec<(Node, [Node; 3])> {
    let mut out = Vec::new();
    if let Node::Op(g, l, r) = t {
        for (inner, other) in [(l, r), (r, l)] {
            if let Node::Op(_, a, b) = &**inner {
                let mut ins = [(**a).clone(), (**b).clone(), (**other).clone()];
                ins.sort_by_key(Node::min_leaf);
                out.push((Node::Leaf(hole), ins));
            }
        }
        for (ctx, ins) in quadratic_sites(l, hole) {
            out.push((Node::op(*g, ctx, (**r).clone()), ins));
        }
        for (ctx, ins) in quadratic_sites(r, hole) {
            out.push((Node::op(*g, (**l).clone(), ctx), ins));
        }
    }
    out
}

fn graft_or_fail(t: &Node, a: u32, y: &Node, gens: &[Generator]) -> Result<(Node, i32)> {
    t.graft(a, y, gens).ok_or_else(|| Error::Structural(format!("cannot graft at leaf {a}")))
}

fn substitute(rel: &Poly, ins: &[Node; 3], gens: &[Generator]) -> Result<Poly> {
    const SHIFT: u32 = 1 << 29;
    let mut out = Vec::new();
    for (q, c) in rel {
        let mut t = q.relabel(&|a| SHIFT + a);
        let mut sign = 1;
        for (i, s) in ins.iter().enumerate() {
            let (nt, sg) = graft_or_fail(&t, SHIFT + 1 + i as u32, s, gens)?;
            t = nt;
            sign *= sg;
        }
        out.push((t, if sign < 0 { -c.clone() } else { c.clone() }));
    }
    Ok(out)
}

/// Poincaré polynomial of `p(k)` as free trees modulo the ideal.
pub fn ideal_quotient_poincare(p: &PresentedOperad, k: usize) -> Result<LaurentPoly> {
    if k == 0 {
        return Ok(LaurentPoly::zero());
    }
    let gens = p.generators();
    let labels: Vec<u32> = (1..=k as u32).collect();
    let trees = all_trees(&labels, gens.len() as u8);
    let index: BTreeMap<Node, usize> = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    const HOLE: u32 = 1 << 30;
    let mut rows_by_degree: BTreeMap<i64, Vec<Vec<(usize, Scalar)>>> = BTreeMap::new();
    for t in &trees {
        for (ctx, ins) in quadratic_sites(t, HOLE) {
            for rel in p.closed_relations() {
                let mut elem: Poly = Vec::new();
                for (s, c) in substitute(rel, &ins, gens)? {
                    let (full, sg) = graft_or_fail(&ctx, HOLE, &s, gens)?;
                    elem.push((full, if sg < 0 { -c } else { c }));
                }
                let elem = normalize_poly(elem, gens);
                if let Some((t0, _)) = elem.first() {
                    let row = elem.iter().map(|(t, c)| (index[t], c.clone())).collect();
                    rows_by_degree.entry(t0.degree(gens)).or_default().push(row);
                }
            }
        }
    }
    let mut count: BTreeMap<i64, i64> = BTreeMap::new();
    for t in &trees {
        *count.entry(t.degree(gens)).or_default() += 1;
    }
    let mut poly = LaurentPoly::zero();
    for (d, c) in count {
        let rows = rows_by_degree.remove(&d).unwrap_or_default();
        let trip = rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(j, v)| (r, *j, v.clone())));
        let m = SparseMatrix::from_triplets(rows.len(), trees.len(), trip)?;
        poly.add_term(c - rank(&m) as i64, d);
    }
    Ok(poly)
}
