//! Brute-force oracles that read the hidden graph directly. They share no
//! code with the library's own reference implementations.
#![allow(dead_code)]

use std::collections::VecDeque;

use cutquery::oracle::GraphInstance;

pub fn matrix(g: &GraphInstance) -> Vec<Vec<i64>> {
    let mut w = vec![vec![0; g.n()]; g.n()];
    for &(u, v, c) in g.edges() {
        w[u][v] += c;
        w[v][u] += c;
    }
    w
}

/// Capacity leaving the vertices whose bit is set.
pub fn cut_of_mask(w: &[Vec<i64>], mask: u64) -> i64 {
    let n = w.len();
    let mut total = 0;
    for u in 0..n {
        if mask >> u & 1 == 1 {
            for v in 0..n {
                if mask >> v & 1 == 0 {
                    total += w[u][v];
                }
            }
        }
    }
    total
}

/// Every proper nonempty side that excludes the last vertex, with its cut.
pub fn all_cuts(g: &GraphInstance) -> Vec<(u64, i64)> {
    let n = g.n();
    assert!(n <= 20, "brute force needs n <= 20");
    let w = matrix(g);
    (1u64..1 << (n - 1)).map(|m| (m, cut_of_mask(&w, m))).collect()
}

pub fn edmonds_karp(g: &GraphInstance, s: usize, t: usize) -> i64 {
    let mut r = matrix(g);
    let n = g.n();
    let mut total = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && r[u][v] > 0 {
                    prev[v] = u;
                    q.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return total;
        }
        let mut b = i64::MAX;
        let mut v = t;
        while v != s {
            b = b.min(r[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            r[prev[v]][v] -= b;
            r[v][prev[v]] += b;
            v = prev[v];
        }
        total += b;
    }
}

/// Global min-cut as the smallest max-flow from vertex 0.
pub fn min_cut_by_flows(g: &GraphInstance) -> i64 {
    (1..g.n()).map(|t| edmonds_karp(g, 0, t)).min().expect("two vertices")
}

pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

/// Every cut of capacity at most `c` has members of `r` on both sides.
pub fn separated(g: &GraphInstance, r: &[usize], c: i64) -> bool {
    let full = (1u64 << g.n()) - 1;
    let rm = mask_of(r);
    all_cuts(g).into_iter().all(|(m, v)| v > c || (m & rm != 0 && (full ^ m) & rm != 0))
}

/// Minimum isolating cut over all terminals of `r`.
pub fn min_isolating(g: &GraphInstance, r: &[usize]) -> i64 {
    let full = (1u64 << g.n()) - 1;
    let rm = mask_of(r);
    all_cuts(g)
        .into_iter()
        .filter(|&(m, _)| (m & rm).count_ones() == 1 || ((full ^ m) & rm).count_ones() == 1)
        .map(|(_, v)| v)
        .min()
        .unwrap_or(i64::MAX)
}

pub fn dominates(g: &GraphInstance, r: &[usize]) -> bool {
    let w = matrix(g);
    (0..g.n()).all(|v| r.contains(&v) || r.iter().any(|&u| w[u][v] > 0))
}

/// The subgraph induced on `members`, relabelled in order.
pub fn induced(g: &GraphInstance, members: &[usize]) -> GraphInstance {
    let pos = |v: usize| members.iter().position(|&x| x == v);
    let edges: Vec<(usize, usize, i64)> =
        g.edges().iter().filter_map(|&(u, v, c)| Some((pos(u)?, pos(v)?, c))).collect();
    GraphInstance::new(members.len(), edges).expect("induced graph")
}

pub fn min_degree(g: &GraphInstance) -> i64 {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}
