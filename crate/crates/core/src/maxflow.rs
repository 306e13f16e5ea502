//! Dinitz max-flow driven entirely by residual BIS answers.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::oracle::{edge_capacity, residual_exists, CutView, Flow};
use crate::primitives::{bfs_layers, first_neighbor};
use crate::sets;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MaxflowConfig {
    /// After an augmentation, keep the stack up to the first saturated edge
    /// instead of restarting from the source.
    pub partial_retreat: bool,
    /// Stop once the flow value reaches this amount.
    pub limit: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredGraph {
    pub layers: Vec<Vec<usize>>,
    /// Distance from source to sink.
    pub d: usize,
}

impl LayeredGraph {
    pub fn layer_of(&self, v: usize) -> Option<usize> {
        self.layers.iter().position(|l| sets::contains(l, v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layering {
    Layered(LayeredGraph),
    /// The sink is not reachable; `reachable` is everything the source reaches.
    Unreachable { reachable: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundStat {
    pub distance: usize,
    pub value: i64,
    pub cut_queries: u64,
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub flow: Flow,
    /// Residual-reachable set of the source in the final flow. Empty when
    /// the run stopped at its limit.
    pub mincut_source_side: Vec<usize>,
    pub rounds: Vec<RoundStat>,
    /// True when the run stopped because the configured limit was reached.
    pub limited: bool,
}

impl FlowResult {
    pub fn value(&self) -> i64 {
        self.flow.value()
    }
}

/// Layered graph of the residual network from `s`, truncated at `t`.
pub fn build_layered<V: CutView + ?Sized>(view: &mut V, flow: &Flow, s: usize, t: usize) -> Layering {
    let layers = bfs_layers(view, flow, s, Some(t));
    let last = layers.last().expect("root layer");
    if last.as_slice() == [t] && s != t {
        let d = layers.len() - 1;
        if d <= view.vertex_count() {
            return Layering::Layered(LayeredGraph { layers, d });
        }
    }
    let mut reachable: Vec<usize> = layers.into_iter().flatten().collect();
    reachable.sort_unstable();
    Layering::Unreachable { reachable }
}

/// Memo of edge capacities learned during one flow computation.
#[derive(Default)]
pub(crate) struct CapacityCache {
    known: HashMap<(usize, usize), i64>,
}

impl CapacityCache {
    pub(crate) fn get<V: CutView + ?Sized>(&mut self, view: &mut V, u: usize, v: usize) -> i64 {
        let key = (u.min(v), u.max(v));
        if let Some(&c) = self.known.get(&key) {
            return c;
        }
        let c = edge_capacity(view, key.0, key.1);
        self.known.insert(key, c);
        c
    }
}

/// One blocking-flow phase on `layered`, augmenting `flow` in place.
/// Returns the value added.
pub fn blocking_flow_round<V: CutView + ?Sized>(
    view: &mut V,
    flow: &mut Flow,
    layered: &LayeredGraph,
    cfg: &MaxflowConfig,
) -> i64 {
    blocking_round(view, flow, layered, cfg, &mut CapacityCache::default())
}

fn blocking_round<V: CutView + ?Sized>(
    view: &mut V,
    flow: &mut Flow,
    layered: &LayeredGraph,
    cfg: &MaxflowConfig,
    caps: &mut CapacityCache,
) -> i64 {
    let d = layered.d;
    let mut alive: Vec<Vec<usize>> = layered.layers.clone();
    // Drop dead ends up front: one residual test per vertex is cheaper than
    // discovering them through neighbor searches.
    for i in (1..d).rev() {
        let (head, tail) = alive.split_at_mut(i + 1);
        let next = &tail[0];
        head[i].retain(|&u| residual_exists(view, flow, &[u], next));
    }
    let s = layered.layers[0][0];
    let mut stack = vec![s];
    let mut added = 0;
    while let Some(&u) = stack.last() {
        if let Some(limit) = cfg.limit {
            if flow.value() >= limit {
                break;
            }
        }
        let i = stack.len() - 1;
        if i == d {
            let mut bottleneck = i64::MAX;
            let mut first_tight = 0;
            for (k, pair) in stack.windows(2).enumerate() {
                let r = caps.get(view, pair[0], pair[1]) - flow.get(pair[0], pair[1]);
                if r < bottleneck {
                    bottleneck = r;
                    first_tight = k;
                }
            }
            if let Some(limit) = cfg.limit {
                bottleneck = bottleneck.min(limit - flow.value());
            }
            debug_assert!(bottleneck > 0);
            for pair in stack.windows(2) {
                flow.push(pair[0], pair[1], bottleneck);
            }
            added += bottleneck;
            stack.truncate(if cfg.partial_retreat { first_tight + 1 } else { 1 });
            continue;
        }
        let next = if layered.layers[i].len() == 1 {
            // Every vertex of the next layer was discovered from `u` alone,
            // so each is joined to it by an edge; only saturation is unknown.
            free_hop(view, flow, caps, u, &mut alive[i + 1])
        } else {
            first_neighbor(view, flow, &[u], &alive[i + 1])
        };
        match next {
            Some(v) => stack.push(v),
            None => {
                stack.pop();
                sets::remove(&mut alive[i], u);
            }
        }
    }
    added
}

/// Lowest vertex of `next` still holding residual capacity from `u`.
/// Vertices reached only through `u` are dropped once that edge is full.
fn free_hop<V: CutView + ?Sized>(
    view: &mut V,
    flow: &Flow,
    caps: &mut CapacityCache,
    u: usize,
    next: &mut Vec<usize>,
) -> Option<usize> {
    while let Some(&v) = next.first() {
        if caps.get(view, u, v) - flow.get(u, v) > 0 {
            return Some(v);
        }
        next.remove(0);
    }
    None
}

/// Max-flow from `s` to `t` starting from the zero flow.
pub fn dinitz_maxflow<V: CutView + ?Sized>(view: &mut V, s: usize, t: usize, cfg: &MaxflowConfig) -> Result<FlowResult> {
    let n = view.vertex_count();
    for v in [s, t] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if s == t {
        return Err(invalid("source and sink must differ"));
    }
    Ok(dinitz_from(view, Flow::zero(n, s, t), cfg))
}

/// Max-flow continuing from an existing valid flow.
pub fn dinitz_from<V: CutView + ?Sized>(view: &mut V, mut flow: Flow, cfg: &MaxflowConfig) -> FlowResult {
    let (s, t) = (flow.source(), flow.sink());
    let mut caps = CapacityCache::default();
    let mut rounds = Vec::new();
    let mut last_d = 0;
    loop {
        if cfg.limit.is_some_and(|l| flow.value() >= l) {
            return FlowResult { flow, mincut_source_side: Vec::new(), rounds, limited: true };
        }
        let before = view.ledger().cut_count();
        match build_layered(view, &flow, s, t) {
            Layering::Unreachable { reachable } => {
                return FlowResult { flow, mincut_source_side: reachable, rounds, limited: false };
            }
            Layering::Layered(layered) => {
                assert!(layered.d > last_d, "residual distance must grow between rounds");
                last_d = layered.d;
                let value = blocking_round(view, &mut flow, &layered, cfg, &mut caps);
                rounds.push(RoundStat {
                    distance: layered.d,
                    value,
                    cut_queries: view.ledger().cut_count() - before,
                });
            }
        }
    }
}

/// Split an integral flow into source-sink paths with unit counts.
/// Cycles in the support are cancelled and never reported.
pub fn path_decomposition(flow: &Flow) -> Vec<(Vec<usize>, i64)> {
    let (s, t) = (flow.source(), flow.sink());
    let mut residual: Vec<BTreeMap<usize, i64>> = (0..flow.universe())
        .map(|u| flow.entries(u).filter(|&(_, x)| x > 0).collect())
        .collect();
    let mut paths = Vec::new();
    if s == t {
        return paths;
    }
    loop {
        let mut path = vec![s];
        let mut on_path = HashMap::from([(s, 0usize)]);
        loop {
            let u = *path.last().expect("nonempty path");
            if u == t {
                break;
            }
            let Some((&v, _)) = residual[u].iter().next() else {
                path.clear();
                break;
            };
            if let Some(&pos) = on_path.get(&v) {
                let cycle: Vec<usize> = path[pos..].iter().copied().chain([v]).collect();
                let amount = cycle.windows(2).map(|p| residual[p[0]][&p[1]]).min().expect("cycle edge");
                for p in cycle.windows(2) {
                    take(&mut residual, p[0], p[1], amount);
                }
                for w in path.drain(pos + 1..) {
                    on_path.remove(&w);
                }
                continue;
            }
            on_path.insert(v, path.len());
            path.push(v);
        }
        if path.is_empty() {
            break;
        }
        let amount = path.windows(2).map(|p| residual[p[0]][&p[1]]).min().expect("path edge");
        for p in path.windows(2) {
            take(&mut residual, p[0], p[1], amount);
        }
        paths.push((path, amount));
    }
    paths
}

fn take(residual: &mut [BTreeMap<usize, i64>], u: usize, v: usize, amount: i64) {
    let e = residual[u].get_mut(&v).expect("support edge");
    *e -= amount;
    if *e == 0 {
        residual[u].remove(&v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{CutOracle, GraphInstance};

    fn b6() -> GraphInstance {
        GraphInstance::new(6, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1)]).unwrap()
    }

    fn k4() -> GraphInstance {
        GraphInstance::new(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn layered_graphs() {
        let g = b6();
        let mut o = CutOracle::new(&g);
        let Layering::Layered(l) = build_layered(&mut o, &Flow::zero(6, 0, 5), 0, 5) else { panic!() };
        assert_eq!(l.d, 3);
        assert_eq!(l.layers[1], vec![1, 2]);
        let mut f = Flow::zero(6, 0, 5);
        for (u, v) in [(0, 2), (2, 3), (3, 5)] {
            f.push(u, v, 1);
        }
        assert!(matches!(build_layered(&mut o, &f, 0, 5), Layering::Unreachable { .. }));
        let g = k4();
        let mut o = CutOracle::new(&g);
        let Layering::Layered(l) = build_layered(&mut o, &Flow::zero(4, 0, 3), 0, 3) else { panic!() };
        assert_eq!(l.d, 1);
    }

    #[test]
    fn bridge_and_clique_flows() {
        let g = b6();
        let mut o = CutOracle::new(&g);
        let r = dinitz_maxflow(&mut o, 0, 5, &MaxflowConfig::default()).unwrap();
        assert_eq!(r.value(), 1);
        assert_eq!(r.mincut_source_side, vec![0, 1, 2]);
        assert_eq!(path_decomposition(&r.flow).len(), 1);

        let g = k4();
        let mut o = CutOracle::new(&g);
        let r = dinitz_maxflow(&mut o, 0, 3, &MaxflowConfig::default()).unwrap();
        assert_eq!(r.value(), 3);
        assert_eq!(r.mincut_source_side, vec![0]);
        let paths = path_decomposition(&r.flow);
        assert_eq!(paths.len(), 3);
        assert_eq!(paths.iter().map(|p| p.1).sum::<i64>(), 3);
    }

    #[test]
    fn weighted_flow_uses_bottlenecks() {
        let g = GraphInstance::new(4, [(0, 1, 3), (1, 3, 2), (0, 2, 1), (2, 3, 3), (1, 2, 2)]).unwrap();
        let mut o = CutOracle::new(&g);
        let r = dinitz_maxflow(&mut o, 0, 3, &MaxflowConfig::default()).unwrap();
        assert_eq!(r.value(), 4);
        assert_eq!(g.cut_value(&r.mincut_source_side), 4);
    }

    #[test]
    fn limited_run_stops_early() {
        let g = k4();
        let mut o = CutOracle::new(&g);
        let cfg = MaxflowConfig { limit: Some(2), ..Default::default() };
        let r = dinitz_maxflow(&mut o, 0, 3, &cfg).unwrap();
        assert!(r.limited);
        assert_eq!(r.value(), 2);
    }

    #[test]
    fn partial_retreat_gives_the_same_value() {
        let g = k4();
        let mut o = CutOracle::new(&g);
        let cfg = MaxflowConfig { partial_retreat: true, ..Default::default() };
        assert_eq!(dinitz_maxflow(&mut o, 1, 2, &cfg).unwrap().value(), 3);
    }

    #[test]
    fn cycles_are_cancelled() {
        let mut f = Flow::zero(5, 0, 4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 1), (1, 4)] {
            f.push(u, v, 1);
        }
        assert_eq!(path_decomposition(&f), vec![(vec![0, 1, 4], 1)]);
        assert!(path_decomposition(&Flow::zero(4, 0, 3)).is_empty());
    }
}
