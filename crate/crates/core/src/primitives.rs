//! Neighbor discovery and BFS over residual graphs using only residual
//! BIS answers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oracle::{residual_exists, residual_weight, CutView, Flow};
use crate::sets;

/// BFS tree in the residual graph. Unreachable vertices are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTree {
    pub root: usize,
    pub parent: BTreeMap<usize, usize>,
    pub dist: BTreeMap<usize, usize>,
}

impl BfsTree {
    pub fn reached(&self) -> Vec<usize> {
        self.dist.keys().copied().collect()
    }
}

fn check_disjoint(n: usize, a: &[usize], b: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let a = sets::canonical(a, n)?;
    let b = sets::canonical(b, n)?;
    if let Some(v) = sets::first_common(&a, &b) {
        return Err(Error::Overlap(v));
    }
    Ok((a, b))
}

/// Some vertex of `b` with a residual edge from `a`, or `None`.
///
/// Halves `b` at its sorted midpoint and descends into the lower half
/// whenever it holds a neighbor, so the smallest such id is returned.
pub fn find_neighbor<V: CutView + ?Sized>(view: &mut V, flow: &Flow, a: &[usize], b: &[usize]) -> Result<Option<usize>> {
    let (a, b) = check_disjoint(view.vertex_count(), a, b)?;
    Ok(first_neighbor(view, flow, &a, &b))
}

pub(crate) fn first_neighbor<V: CutView + ?Sized>(view: &mut V, flow: &Flow, a: &[usize], b: &[usize]) -> Option<usize> {
    if !residual_exists(view, flow, a, b) {
        return None;
    }
    let mut cand = b;
    while cand.len() > 1 {
        let (lo, hi) = cand.split_at(cand.len() / 2);
        cand = if residual_exists(view, flow, a, lo) { lo } else { hi };
    }
    Some(cand[0])
}

/// Every vertex of `candidates` with a residual edge from `u`.
pub fn neighborhood<V: CutView + ?Sized>(
    view: &mut V,
    flow: &Flow,
    u: &[usize],
    candidates: &[usize],
) -> Result<Vec<usize>> {
    let (u, c) = check_disjoint(view.vertex_count(), u, candidates)?;
    Ok(out_neighbors(view, flow, &u, &c))
}

/// Every vertex of `candidates` with a residual edge into `u`.
pub fn in_neighborhood<V: CutView + ?Sized>(
    view: &mut V,
    flow: &Flow,
    u: &[usize],
    candidates: &[usize],
) -> Result<Vec<usize>> {
    let (u, c) = check_disjoint(view.vertex_count(), u, candidates)?;
    Ok(in_neighbors(view, flow, &u, &c))
}

pub(crate) fn out_neighbors<V: CutView + ?Sized>(view: &mut V, flow: &Flow, u: &[usize], cand: &[usize]) -> Vec<usize> {
    group_test(view, flow, u, cand, true)
}

pub(crate) fn in_neighbors<V: CutView + ?Sized>(view: &mut V, flow: &Flow, u: &[usize], cand: &[usize]) -> Vec<usize> {
    group_test(view, flow, u, cand, false)
}

/// Residual weight between `fixed` and `part`, oriented by `outward`.
fn weight<V: CutView + ?Sized>(view: &mut V, flow: &Flow, fixed: &[usize], part: &[usize], outward: bool) -> i64 {
    if outward {
        residual_weight(view, flow, fixed, part)
    } else {
        residual_weight(view, flow, part, fixed)
    }
}

/// Largest possible residual weight between `fixed` and `part` if every
/// hidden pair carried an edge, when that is knowable for free. Returns the
/// bound together with the vertices of `part` that would then be neighbors.
fn saturated_bound<V: CutView + ?Sized>(
    view: &V,
    flow: &Flow,
    fixed: &[usize],
    part: &[usize],
    outward: bool,
) -> Option<(i64, Vec<usize>)> {
    const WORK_CAP: usize = 1 << 14;
    if fixed.len().saturating_mul(part.len()) > WORK_CAP {
        return None;
    }
    let mut total = 0;
    let mut hits = Vec::new();
    for &p in part {
        let mut any = false;
        for &x in fixed {
            let (from, to) = if outward { (x, p) } else { (p, x) };
            let cap = view.explicit_capacity(from, to).or_else(|| view.uniform_capacity(from, to))?;
            let term = cap - flow.get(from, to);
            if term > 0 {
                total += term;
                any = true;
            }
        }
        if any {
            hits.push(p);
        }
    }
    Some((total, hits))
}

fn group_test<V: CutView + ?Sized>(view: &mut V, flow: &Flow, fixed: &[usize], cand: &[usize], outward: bool) -> Vec<usize> {
    let mut found = Vec::new();
    if fixed.is_empty() || cand.is_empty() {
        return found;
    }
    let w = weight(view, flow, fixed, cand, outward);
    split(view, flow, fixed, cand, w, outward, &mut found);
    found
}

fn split<V: CutView + ?Sized>(
    view: &mut V,
    flow: &Flow,
    fixed: &[usize],
    cand: &[usize],
    w: i64,
    outward: bool,
    found: &mut Vec<usize>,
) {
    if w <= 0 {
        return;
    }
    if cand.len() == 1 {
        found.push(cand[0]);
        return;
    }
    if let Some((bound, hits)) = saturated_bound(view, flow, fixed, cand, outward) {
        if bound == w {
            found.extend(hits);
            return;
        }
    }
    let (lo, hi) = cand.split_at(cand.len() / 2);
    let w_lo = weight(view, flow, fixed, lo, outward);
    split(view, flow, fixed, lo, w_lo, outward, found);
    split(view, flow, fixed, hi, w - w_lo, outward, found);
}

/// BFS tree from `root`, expanding one discovered vertex at a time in
/// order of distance and then id.
pub fn bfs_tree<V: CutView + ?Sized>(view: &mut V, flow: &Flow, root: usize) -> Result<BfsTree> {
    let n = view.vertex_count();
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    let mut tree = BfsTree { root, parent: BTreeMap::new(), dist: BTreeMap::from([(root, 0)]) };
    let mut undiscovered = sets::complement(&[root], n);
    let mut queue = std::collections::BTreeSet::from([(0usize, root)]);
    while let Some((d, u)) = queue.pop_first() {
        if undiscovered.is_empty() {
            break;
        }
        let found = out_neighbors(view, flow, &[u], &undiscovered);
        for v in found {
            tree.parent.insert(v, u);
            tree.dist.insert(v, d + 1);
            queue.insert((d + 1, v));
        }
        undiscovered = undiscovered.into_iter().filter(|v| !tree.dist.contains_key(v)).collect();
    }
    Ok(tree)
}

/// BFS layers from `root`, discovering a whole layer per step.
///
/// With a `target`, stops as soon as the target is reached; the last layer
/// is then exactly `[target]`.
pub fn bfs_layers<V: CutView + ?Sized>(view: &mut V, flow: &Flow, root: usize, target: Option<usize>) -> Vec<Vec<usize>> {
    let n = view.vertex_count();
    let mut layers = vec![vec![root]];
    let mut undiscovered = sets::complement(&[root], n);
    if let Some(t) = target {
        sets::remove(&mut undiscovered, t);
    }
    loop {
        let last = layers.last().expect("at least the root layer");
        if let Some(t) = target {
            if t != root && residual_exists(view, flow, last, &[t]) {
                layers.push(vec![t]);
                return layers;
            }
        }
        if undiscovered.is_empty() {
            return layers;
        }
        let next = out_neighbors(view, flow, last, &undiscovered);
        if next.is_empty() {
            return layers;
        }
        undiscovered = sets::difference(&undiscovered, &next);
        layers.push(next);
    }
}
