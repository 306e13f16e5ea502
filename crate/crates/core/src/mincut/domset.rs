use crate::oracle::{CutView, Flow};
use crate::primitives::out_neighbors;
use crate::sets;

/// Weighted degree of every vertex, one singleton cut query each.
pub fn degrees<V: CutView + ?Sized>(view: &mut V) -> Vec<i64> {
    (0..view.vertex_count()).map(|v| view.cut(&[v])).collect()
}

/// A dominating set plus a partition of the vertices into connected groups,
/// one per vertex that joined the set through a deletion step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domination {
    pub set: Vec<usize>,
    /// Each group induces a connected subgraph; together they cover all vertices.
    pub groups: Vec<Vec<usize>>,
}

/// Dominating set built from high-degree vertices first, then from the
/// densest attachment into what is left.
///
/// `degrees` are the full-graph degrees and `delta` their minimum.
pub fn dominating_set_with<V: CutView + ?Sized>(view: &mut V, degrees: &[i64], delta: i64) -> Domination {
    let n = view.vertex_count();
    let zero = Flow::zero(n, 0, 0);
    let mut alive: Vec<usize> = (0..n).collect();
    let mut r = Vec::new();
    let mut touched = false;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; n];

    for w in 0..n {
        if !sets::contains(&alive, w) {
            continue;
        }
        let others = sets::difference(&alive, &[w]);
        let deg = if !touched {
            degrees[w]
        } else if others.is_empty() {
            0
        } else {
            view.pair_capacity(&[w], &others)
        };
        if 2 * deg > delta {
            let nbrs = out_neighbors(view, &zero, &[w], &others);
            sets::insert(&mut r, w);
            assign(&mut groups, &mut group_of, None, &sets::union(&[w], &nbrs));
            alive = sets::difference(&others, &nbrs);
            touched = true;
        }
    }

    while !alive.is_empty() {
        let deleted = sets::complement(&alive, n);
        let w1 = sets::difference(&deleted, &r);
        let total = if w1.is_empty() { 0 } else { view.pair_capacity(&w1, &alive) };
        if total == 0 {
            let v = alive[0];
            sets::insert(&mut r, v);
            assign(&mut groups, &mut group_of, None, &[v]);
            alive.remove(0);
            continue;
        }
        let (mut x, mut weight) = (w1, total);
        while x.len() > 1 {
            let (lo, hi) = x.split_at(x.len() / 2);
            let w_lo = view.pair_capacity(lo, &alive);
            // Keep whichever half is at least as dense as the whole.
            if w_lo * x.len() as i64 >= weight * lo.len() as i64 {
                weight = w_lo;
                x = lo.to_vec();
            } else {
                weight -= w_lo;
                x = hi.to_vec();
            }
        }
        let v = x[0];
        let nbrs = out_neighbors(view, &zero, &[v], &alive);
        sets::insert(&mut r, v);
        // `v` already sits in a connected group; its new neighbors extend it.
        let g = group_of[v];
        assign(&mut groups, &mut group_of, Some(g), &nbrs);
        alive = sets::difference(&alive, &nbrs);
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    Domination { set: r, groups }
}

/// Adds `members` to group `g`, or to a new group when `g` is `None`.
fn assign(groups: &mut Vec<Vec<usize>>, group_of: &mut [usize], g: Option<usize>, members: &[usize]) {
    let g = g.unwrap_or_else(|| {
        groups.push(Vec::new());
        groups.len() - 1
    });
    for &v in members {
        group_of[v] = g;
    }
    groups[g].extend_from_slice(members);
}

/// Dominating set, computing degrees first.
pub fn dominating_set<V: CutView + ?Sized>(view: &mut V) -> Vec<usize> {
    let deg = degrees(view);
    let delta = deg.iter().copied().min().unwrap_or(0);
    dominating_set_with(view, &deg, delta).set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{CutOracle, GraphInstance};

    #[test]
    fn clique_and_star() {
        let k4 = GraphInstance::new(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        assert_eq!(dominating_set(&mut CutOracle::new(&k4)), vec![0]);
        let star = GraphInstance::new(6, (1..6).map(|v| (0, v, 1))).unwrap();
        assert_eq!(dominating_set(&mut CutOracle::new(&star)), vec![0]);
    }

    #[test]
    fn path_is_dominated() {
        let g = GraphInstance::new(9, (0..8).map(|i| (i, i + 1, 1))).unwrap();
        let r = dominating_set(&mut CutOracle::new(&g));
        for v in 0..9 {
            assert!(r.contains(&v) || g.neighbors(v).iter().any(|(u, _)| r.contains(u)));
        }
    }

    #[test]
    fn groups_partition_into_connected_pieces() {
        let g = GraphInstance::new(9, (0..8).map(|i| (i, i + 1, 1))).unwrap();
        let mut o = CutOracle::new(&g);
        let deg = degrees(&mut o);
        let d = dominating_set_with(&mut o, &deg, 1);
        let mut all: Vec<usize> = d.groups.concat();
        all.sort_unstable();
        assert_eq!(all, (0..9).collect::<Vec<_>>());
        for grp in &d.groups {
            // A path segment is connected iff it is contiguous.
            assert_eq!(grp.last().unwrap() - grp[0] + 1, grp.len());
        }
    }

    #[test]
    fn isolated_vertices_join_the_set() {
        let g = GraphInstance::new(4, [(0, 1, 1)]).unwrap();
        let r = dominating_set(&mut CutOracle::new(&g));
        assert!(r.contains(&2) && r.contains(&3));
    }
}
