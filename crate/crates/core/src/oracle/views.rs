use std::collections::{BTreeMap, BTreeSet};

use super::ledger::QueryLedger;
use super::view::CutView;
use crate::error::{invalid, Error, Result};
use crate::sets;

/// Inner graph plus a super source and super sink.
///
/// A terminal listed with capacity `k` is attached through `k` unit paths of
/// length two (one subdivision vertex each), so every virtual edge has
/// capacity 1 and is stored explicitly. Inner edges are multiplied by
/// `scale`.
///
/// Layout: inner ids `0..n_inner`, then source-side subdivision vertices,
/// then sink-side ones, then the source and the sink.
pub struct AugmentedView<'a, V: CutView + ?Sized> {
    inner: &'a mut V,
    n_inner: usize,
    scale: i64,
    /// `(terminal, is_source_side)` for each subdivision vertex.
    subdiv: Vec<(usize, bool)>,
    /// Subdivision vertices attached to each inner vertex.
    attach: BTreeMap<usize, Vec<usize>>,
    source_adj: Vec<usize>,
    sink_adj: Vec<usize>,
}

impl<'a, V: CutView + ?Sized> AugmentedView<'a, V> {
    pub fn new(inner: &'a mut V, sources: &[(usize, i64)], sinks: &[(usize, i64)], scale: i64) -> Result<Self> {
        let n_inner = inner.vertex_count();
        if scale < 1 {
            return Err(invalid("edge scale must be at least 1"));
        }
        let mut seen = BTreeSet::new();
        for &(v, c) in sources.iter().chain(sinks) {
            if v >= n_inner {
                return Err(Error::VertexOutOfRange { vertex: v, n: n_inner });
            }
            if c < 1 {
                return Err(invalid(format!("terminal capacity {c} for vertex {v} is below 1")));
            }
            if !seen.insert(v) {
                return Err(invalid(format!("vertex {v} listed twice as a terminal")));
            }
        }
        let mut subdiv = Vec::new();
        let mut attach: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut source_adj = Vec::new();
        let mut sink_adj = Vec::new();
        for (list, side) in [(sources, true), (sinks, false)] {
            for &(v, c) in list {
                for _ in 0..c {
                    let id = n_inner + subdiv.len();
                    subdiv.push((v, side));
                    attach.entry(v).or_default().push(id);
                    if side {
                        source_adj.push(id);
                    } else {
                        sink_adj.push(id);
                    }
                }
            }
        }
        Ok(Self { inner, n_inner, scale, subdiv, attach, source_adj, sink_adj })
    }

    pub fn source(&self) -> usize {
        self.n_inner + self.subdiv.len()
    }

    pub fn sink(&self) -> usize {
        self.source() + 1
    }

    pub fn inner_count(&self) -> usize {
        self.n_inner
    }

    pub fn subdivision_count(&self) -> usize {
        self.subdiv.len()
    }

    /// Subdivision vertices hanging off inner vertex `v`.
    pub fn subdivisions_of(&self, v: usize) -> &[usize] {
        self.attach.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    fn explicit_neighbors(&self, x: usize) -> ExplicitIter<'_> {
        if x < self.n_inner {
            ExplicitIter::Slice(self.subdivisions_of(x).iter())
        } else if x < self.source() {
            let (t, side) = self.subdiv[x - self.n_inner];
            let hub = if side { self.source() } else { self.sink() };
            ExplicitIter::Pair([hub.min(t), hub.max(t)], 0)
        } else if x == self.source() {
            ExplicitIter::Slice(self.source_adj.iter())
        } else {
            ExplicitIter::Slice(self.sink_adj.iter())
        }
    }
}

enum ExplicitIter<'a> {
    Slice(std::slice::Iter<'a, usize>),
    Pair([usize; 2], usize),
}

impl Iterator for ExplicitIter<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        match self {
            ExplicitIter::Slice(it) => it.next().copied(),
            ExplicitIter::Pair(p, i) => {
                let out = p.get(*i).copied();
                *i += 1;
                out
            }
        }
    }
}

impl<V: CutView + ?Sized> CutView for AugmentedView<'_, V> {
    fn vertex_count(&self) -> usize {
        self.sink() + 1
    }

    fn cut(&mut self, set: &[usize]) -> i64 {
        let split = set.partition_point(|&v| v < self.n_inner);
        let inner_part = &set[..split];
        let mut total = 0;
        if !inner_part.is_empty() && inner_part.len() < self.n_inner {
            total += self.scale * self.inner.cut(inner_part);
        }
        for &x in set {
            total += self.explicit_neighbors(x).filter(|y| !sets::contains(set, *y)).count() as i64;
        }
        total
    }

    fn hidden_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64 {
        self.scale * self.inner.pair_capacity(a, b)
    }

    fn has_explicit(&self) -> bool {
        true
    }

    fn is_hidden(&self, v: usize) -> bool {
        v < self.n_inner
    }

    fn explicit_pair_capacity(&self, a: &[usize], b: &[usize]) -> i64 {
        let mut total = 0;
        for &x in a {
            total += self.explicit_neighbors(x).filter(|y| sets::contains(b, *y)).count() as i64;
        }
        total
    }

    fn explicit_capacity(&self, u: usize, v: usize) -> Option<i64> {
        if u < self.n_inner && v < self.n_inner {
            return None;
        }
        Some(self.explicit_neighbors(u).filter(|&y| y == v).count() as i64)
    }

    fn uniform_capacity(&self, u: usize, v: usize) -> Option<i64> {
        self.inner.uniform_capacity(u, v).map(|c| c * self.scale)
    }

    fn ledger(&self) -> &QueryLedger {
        self.inner.ledger()
    }

    fn ledger_mut(&mut self) -> &mut QueryLedger {
        self.inner.ledger_mut()
    }
}

/// Inner graph with every vertex outside `keep` merged into one vertex `s_r`.
///
/// Local ids `0..keep.len()` follow `keep` in sorted order; `s_r` is the
/// last id. Parallel edges into `s_r` add up.
pub struct ContractedView<'a, V: CutView + ?Sized> {
    inner: &'a mut V,
    keep: Vec<usize>,
    rest: Vec<usize>,
}

impl<'a, V: CutView + ?Sized> ContractedView<'a, V> {
    pub fn new(inner: &'a mut V, keep: &[usize]) -> Result<Self> {
        let n = inner.vertex_count();
        let keep = sets::canonical(keep, n)?;
        if keep.is_empty() || keep.len() == n {
            return Err(invalid("contracted view needs a nonempty proper subset to keep"));
        }
        let rest = sets::complement(&keep, n);
        Ok(Self { inner, keep, rest })
    }

    /// Local id of the contracted vertex.
    pub fn contracted(&self) -> usize {
        self.keep.len()
    }

    pub fn local_of(&self, v: usize) -> Option<usize> {
        self.keep.binary_search(&v).ok()
    }

    pub fn original(&self, local: usize) -> usize {
        self.keep[local]
    }

    fn map(&self, set: &[usize]) -> Vec<usize> {
        let split = set.partition_point(|&v| v < self.keep.len());
        let mapped: Vec<usize> = set[..split].iter().map(|&v| self.keep[v]).collect();
        if split < set.len() {
            sets::union(&mapped, &self.rest)
        } else {
            mapped
        }
    }
}

impl<V: CutView + ?Sized> CutView for ContractedView<'_, V> {
    fn vertex_count(&self) -> usize {
        self.keep.len() + 1
    }

    fn cut(&mut self, set: &[usize]) -> i64 {
        let mapped = self.map(set);
        self.inner.cut(&mapped)
    }

    fn hidden_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64 {
        let (a, b) = (self.map(a), self.map(b));
        self.inner.pair_capacity(&a, &b)
    }

    fn uniform_capacity(&self, u: usize, v: usize) -> Option<i64> {
        let r = self.contracted();
        if u == r || v == r {
            return None;
        }
        self.inner.uniform_capacity(self.keep[u], self.keep[v])
    }

    fn ledger(&self) -> &QueryLedger {
        self.inner.ledger()
    }

    fn ledger_mut(&mut self) -> &mut QueryLedger {
        self.inner.ledger_mut()
    }
}

/// Induced subgraph `G[U]` with local ids following `U` in sorted order.
///
/// Pair capacities pass straight through; a cut query costs one pair
/// simulation on the inner view.
pub struct InducedView<'a, V: CutView + ?Sized> {
    inner: &'a mut V,
    members: Vec<usize>,
}

impl<'a, V: CutView + ?Sized> InducedView<'a, V> {
    pub fn new(inner: &'a mut V, members: &[usize]) -> Result<Self> {
        let members = sets::canonical(members, inner.vertex_count())?;
        if members.is_empty() {
            return Err(invalid("induced view needs at least one vertex"));
        }
        Ok(Self { inner, members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn original(&self, local: usize) -> usize {
        self.members[local]
    }

    pub fn to_original(&self, set: &[usize]) -> Vec<usize> {
        set.iter().map(|&v| self.members[v]).collect()
    }

    pub fn inner_mut(&mut self) -> &mut V {
        self.inner
    }
}

impl<V: CutView + ?Sized> CutView for InducedView<'_, V> {
    fn vertex_count(&self) -> usize {
        self.members.len()
    }

    fn cut(&mut self, set: &[usize]) -> i64 {
        if set.is_empty() || set.len() == self.members.len() {
            return 0;
        }
        let inside = self.to_original(set);
        let outside = self.to_original(&sets::complement(set, self.members.len()));
        self.inner.pair_capacity(&inside, &outside)
    }

    fn hidden_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64 {
        let (a, b) = (self.to_original(a), self.to_original(b));
        self.inner.pair_capacity(&a, &b)
    }

    fn explicit_capacity(&self, u: usize, v: usize) -> Option<i64> {
        self.inner.explicit_capacity(self.members[u], self.members[v])
    }

    fn uniform_capacity(&self, u: usize, v: usize) -> Option<i64> {
        self.inner.uniform_capacity(self.members[u], self.members[v])
    }

    fn ledger(&self) -> &QueryLedger {
        self.inner.ledger()
    }

    fn ledger_mut(&mut self) -> &mut QueryLedger {
        self.inner.ledger_mut()
    }
}

/// Inner graph with an explicit list of edges removed. Removed capacities
/// are subtracted at zero query cost.
pub struct EdgeDeletedView<'a, V: CutView + ?Sized> {
    inner: &'a mut V,
    removed: Vec<BTreeMap<usize, i64>>,
}

impl<'a, V: CutView + ?Sized> EdgeDeletedView<'a, V> {
    /// `removed` holds `(u, v, capacity)` of whole edges known to exist.
    pub fn new(inner: &'a mut V, removed: &[(usize, usize, i64)]) -> Result<Self> {
        let n = inner.vertex_count();
        let mut adj = vec![BTreeMap::new(); n];
        for &(u, v, c) in removed {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            adj[u].insert(v, c);
            adj[v].insert(u, c);
        }
        Ok(Self { inner, removed: adj })
    }

    fn removed_between(&self, a: &[usize], b: &[usize]) -> i64 {
        a.iter()
            .flat_map(|&u| self.removed[u].iter())
            .filter(|(v, _)| sets::contains(b, **v))
            .map(|(_, c)| *c)
            .sum()
    }
}

impl<V: CutView + ?Sized> CutView for EdgeDeletedView<'_, V> {
    fn vertex_count(&self) -> usize {
        self.removed.len()
    }

    fn cut(&mut self, set: &[usize]) -> i64 {
        let crossing: i64 = set
            .iter()
            .flat_map(|&u| self.removed[u].iter())
            .filter(|(v, _)| !sets::contains(set, **v))
            .map(|(_, c)| *c)
            .sum();
        self.inner.cut(set) - crossing
    }

    fn hidden_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64 {
        self.inner.pair_capacity(a, b) - self.removed_between(a, b)
    }

    fn explicit_capacity(&self, u: usize, v: usize) -> Option<i64> {
        self.removed[u].contains_key(&v).then_some(0)
    }

    fn uniform_capacity(&self, u: usize, v: usize) -> Option<i64> {
        self.inner.uniform_capacity(u, v)
    }

    fn ledger(&self) -> &QueryLedger {
        self.inner.ledger()
    }

    fn ledger_mut(&mut self) -> &mut QueryLedger {
        self.inner.ledger_mut()
    }
}
