//! Query-free ground truth computed directly on the hidden graph.
//!
//! Nothing here touches a ledger; these functions exist so the harness and
//! tests can check the query algorithms against an independent answer.

use std::collections::VecDeque;

use crate::error::{invalid, Error, Result};
use crate::oracle::GraphInstance;

/// Largest graph handled by exhaustive enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 18;

/// Visit every cut `(S, V \ S)` with the last vertex outside `S`, passing
/// the bitmask of `S` and its cut value. Walks a Gray code, so each step
/// moves one vertex.
pub fn for_each_cut(g: &GraphInstance, mut visit: impl FnMut(u32, i64)) -> Result<()> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT + 6 {
        return Err(invalid(format!("exhaustive enumeration needs at most {} vertices", EXHAUSTIVE_LIMIT + 6)));
    }
    if n < 2 {
        return Ok(());
    }
    let mut mask = 0u32;
    let mut value = 0i64;
    for i in 1u32..(1 << (n - 1)) {
        let v = i.trailing_zeros() as usize;
        let to_inside: i64 = g.neighbors(v).iter().filter(|(u, _)| mask >> u & 1 == 1).map(|(_, w)| w).sum();
        let deg = g.degree(v);
        if mask >> v & 1 == 0 {
            value += deg - 2 * to_inside;
        } else {
            value -= deg - 2 * to_inside;
        }
        mask ^= 1 << v;
        visit(mask, value);
    }
    Ok(())
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Exact global min-cut by enumeration. The side never contains the last
/// vertex; ties keep the first cut visited.
pub fn exhaustive_mincut(g: &GraphInstance) -> Result<(i64, Vec<usize>)> {
    if g.n() < 2 {
        return Err(invalid("min-cut needs at least two vertices"));
    }
    let mut best: Option<(i64, u32)> = None;
    for_each_cut(g, |mask, value| {
        if best.map_or(true, |(b, _)| value < b) {
            best = Some((value, mask));
        }
    })?;
    let (value, mask) = best.expect("some cut");
    Ok((value, members(mask, g.n())))
}

/// Stoer-Wagner global min-cut on the dense capacity matrix.
pub fn stoer_wagner(g: &GraphInstance) -> Result<(i64, Vec<usize>)> {
    let n = g.n();
    if n < 2 {
        return Err(invalid("min-cut needs at least two vertices"));
    }
    let mut w = vec![vec![0i64; n]; n];
    for &(u, v, c) in g.edges() {
        w[u][v] = c;
        w[v][u] = c;
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(i64, Vec<usize>)> = None;
    while active.len() > 1 {
        let mut weight = vec![0i64; n];
        let mut added = vec![false; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let next = *active
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&a, &&b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unadded vertex");
            added[next] = true;
            if step + 1 == active.len() {
                let cut = weight[next];
                if best.as_ref().map_or(true, |(b, _)| cut < *b) {
                    let mut side = groups[next].clone();
                    side.sort_unstable();
                    best = Some((cut, side));
                }
            }
            prev = last;
            last = next;
            for &v in &active {
                if !added[v] {
                    weight[v] += w[next][v];
                }
            }
        }
        let (s, t) = (prev, last);
        let moved = std::mem::take(&mut groups[t]);
        groups[s].extend(moved);
        for v in 0..n {
            w[s][v] += w[t][v];
            w[v][s] = w[s][v];
        }
        w[s][s] = 0;
        active.retain(|&v| v != t);
    }
    Ok(best.expect("at least one phase"))
}

/// Exact global min-cut: enumeration for small graphs, Stoer-Wagner above.
pub fn reference_mincut(g: &GraphInstance) -> Result<(i64, Vec<usize>)> {
    if g.n() <= EXHAUSTIVE_LIMIT {
        exhaustive_mincut(g)
    } else {
        stoer_wagner(g)
    }
}

/// Edmonds-Karp max-flow value.
pub fn reference_maxflow(g: &GraphInstance, s: usize, t: usize) -> Result<i64> {
    let n = g.n();
    for v in [s, t] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if s == t {
        return Err(invalid("source and sink must differ"));
    }
    let mut res = vec![vec![0i64; n]; n];
    for &(u, v, c) in g.edges() {
        res[u][v] = c;
        res[v][u] = c;
    }
    let mut total = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && res[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return Ok(total);
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(res[parent[v]][v]);
            v = parent[v];
        }
        let mut v = t;
        while v != s {
            res[parent[v]][v] -= bottleneck;
            res[v][parent[v]] += bottleneck;
            v = parent[v];
        }
        total += bottleneck;
    }
}

/// Does every cut of capacity at most `c` have members of `r` on both
/// sides? Exhaustive, for graphs of at most [`EXHAUSTIVE_LIMIT`] vertices.
pub fn separation_check(g: &GraphInstance, r: &[usize], c: i64) -> Result<bool> {
    if g.n() > EXHAUSTIVE_LIMIT {
        return Err(invalid(format!("separation check needs at most {EXHAUSTIVE_LIMIT} vertices")));
    }
    let n = g.n();
    let rmask: u32 = r.iter().fold(0, |m, &v| m | 1 << v);
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut ok = true;
    for_each_cut(g, |mask, value| {
        if value <= c {
            let inside = rmask & mask != 0;
            let outside = rmask & (full ^ mask) != 0;
            ok &= inside && outside;
        }
    })?;
    Ok(ok)
}

/// Minimum isolating cut value of every terminal of `r`: the least cut
/// whose side holds that terminal and no other. Exhaustive.
pub fn exhaustive_isolating(g: &GraphInstance, r: &[usize]) -> Result<Vec<i64>> {
    let n = g.n();
    let full: u32 = (1 << n) - 1;
    let rmask: u32 = r.iter().fold(0, |m, &v| m | 1 << v);
    let mut best = vec![i64::MAX; r.len()];
    for_each_cut(g, |mask, value| {
        for side in [mask, full ^ mask] {
            let hit = side & rmask;
            if hit.count_ones() == 1 {
                let idx = r.iter().position(|&t| hit == 1 << t).expect("terminal");
                best[idx] = best[idx].min(value);
            }
        }
    })?;
    Ok(best)
}

/// Every vertex is in `r` or adjacent to it.
pub fn is_dominating(g: &GraphInstance, r: &[usize]) -> bool {
    (0..g.n()).all(|v| r.contains(&v) || g.neighbors(v).iter().any(|(u, _)| r.contains(u)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b6() -> GraphInstance {
        GraphInstance::new(6, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1)]).unwrap()
    }

    #[test]
    fn small_references() {
        let g = b6();
        assert_eq!(reference_mincut(&g).unwrap().0, 1);
        assert_eq!(stoer_wagner(&g).unwrap().0, 1);
        assert_eq!(reference_maxflow(&g, 0, 5).unwrap(), 1);
        let k4 = GraphInstance::new(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        assert_eq!(reference_mincut(&k4).unwrap().0, 3);
        assert_eq!(reference_maxflow(&k4, 0, 3).unwrap(), 3);
    }

    #[test]
    fn separation_examples() {
        let g = b6();
        assert!(separation_check(&g, &[0, 5], 1).unwrap());
        assert!(!separation_check(&g, &[0, 1], 1).unwrap());
    }

    #[test]
    fn isolating_by_enumeration() {
        let g = b6();
        assert_eq!(exhaustive_isolating(&g, &[0, 5]).unwrap(), vec![1, 1]);
        assert_eq!(exhaustive_isolating(&g, &[0, 1, 5]).unwrap(), vec![2, 2, 1]);
    }
}
