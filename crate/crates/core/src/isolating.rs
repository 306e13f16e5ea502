//! Minimum isolating cuts below a size threshold.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::maxflow::{dinitz_from, dinitz_maxflow, MaxflowConfig};
use crate::oracle::{AugmentedView, ContractedView, CutView, EdgeDeletedView, Flow};
use crate::primitives::bfs_layers;
use crate::sets;

/// Bipartitions of `r` by the bits of each terminal's rank in sorted order.
pub fn bit_partitions(r: &[usize]) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let mut r = r.to_vec();
    r.sort_unstable();
    r.dedup();
    if r.len() < 2 {
        return Err(invalid("bit partitions need at least two terminals"));
    }
    let bits = usize::BITS - (r.len() - 1).leading_zeros();
    Ok((0..bits)
        .map(|bit| {
            let (a, b): (Vec<(usize, usize)>, Vec<(usize, usize)>) =
                r.iter().copied().enumerate().partition(|(rank, _)| rank >> bit & 1 == 0);
            (a.into_iter().map(|x| x.1).collect(), b.into_iter().map(|x| x.1).collect())
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCut {
    /// Closest min-cut side, restricted to the graph's own vertices.
    pub side: Vec<usize>,
    /// Terminals whose attachment to the super source or sink is saturated.
    pub saturated: Vec<usize>,
    /// Graph edges leaving `side`, with capacities.
    pub boundary: Vec<(usize, usize, i64)>,
    pub flow_value: i64,
}

/// Min-cut between terminal groups `a` and `b`, each terminal attached with
/// capacity `tau + 1`.
pub fn partition_mincut<V: CutView + ?Sized>(view: &mut V, a: &[usize], b: &[usize], tau: i64) -> Result<PartitionCut> {
    let n = view.vertex_count();
    let cap = tau + 1;
    let sources: Vec<(usize, i64)> = a.iter().map(|&v| (v, cap)).collect();
    let sinks: Vec<(usize, i64)> = b.iter().map(|&v| (v, cap)).collect();
    let mut aug = AugmentedView::new(view, &sources, &sinks, 1)?;
    let (s, t) = (aug.source(), aug.sink());
    let result = dinitz_maxflow(&mut aug, s, t, &MaxflowConfig::default())?;
    let flow = &result.flow;
    let side: Vec<usize> = result.mincut_source_side.iter().copied().filter(|&v| v < n).collect();
    let mut saturated = Vec::new();
    for &v in a.iter().chain(b) {
        let through: i64 = aug.subdivisions_of(v).iter().map(|&x| flow.get(x, v).abs()).sum();
        if through == cap {
            saturated.push(v);
        }
    }
    saturated.sort_unstable();
    let mut boundary = Vec::new();
    for &u in &side {
        for (v, x) in flow.entries(u) {
            if v < n && x > 0 && !sets::contains(&side, v) {
                boundary.push((u, v, x));
            }
        }
    }
    Ok(PartitionCut { side, saturated, boundary, flow_value: result.value() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalCut {
    pub terminal: usize,
    /// Local min-cut value; `None` when the terminal was excluded or its
    /// cut exceeds the threshold.
    pub lambda: Option<i64>,
    pub side: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Found { terminal: usize, value: i64, side: Vec<usize> },
    AllExceedTau,
}

#[derive(Clone, Debug)]
pub struct IsolatingResult {
    pub records: Vec<TerminalCut>,
    /// Region reachable from each surviving terminal once all partition
    /// boundaries are deleted.
    pub regions: BTreeMap<usize, Vec<usize>>,
    pub verdict: Verdict,
}

/// Minimum isolating cut of `r` if one has size at most `tau`.
pub fn isolating_cuts<V: CutView + ?Sized>(view: &mut V, r: &[usize], tau: i64) -> Result<IsolatingResult> {
    let n = view.vertex_count();
    let r = sets::canonical(r, n)?;
    if tau < 0 {
        return Err(invalid("threshold must be nonnegative"));
    }
    let partitions = bit_partitions(&r)?;
    let mut removed: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut excluded = Vec::new();
    for (a, b) in &partitions {
        let pc = partition_mincut(view, a, b, tau)?;
        excluded.extend(pc.saturated.iter().copied());
        for &v in a {
            if !sets::contains(&pc.side, v) {
                excluded.push(v);
            }
        }
        for &v in b {
            if sets::contains(&pc.side, v) {
                excluded.push(v);
            }
        }
        for (u, v, c) in pc.boundary {
            removed.insert((u.min(v), u.max(v)), c);
        }
    }
    excluded.sort_unstable();
    excluded.dedup();
    let survivors = sets::difference(&r, &excluded);
    let removed: Vec<(usize, usize, i64)> = removed.into_iter().map(|((u, v), c)| (u, v, c)).collect();

    let mut regions = BTreeMap::new();
    {
        let mut pruned = EdgeDeletedView::new(view, &removed)?;
        for &t in &survivors {
            let zero = Flow::zero(n, t, t);
            let mut region: Vec<usize> = bfs_layers(&mut pruned, &zero, t, None).into_iter().flatten().collect();
            region.sort_unstable();
            regions.insert(t, region);
        }
    }

    let mut records = Vec::new();
    let mut best: Option<(i64, usize, Vec<usize>)> = None;
    for &t in &r {
        let Some(region) = regions.get(&t) else {
            records.push(TerminalCut { terminal: t, lambda: None, side: None });
            continue;
        };
        let keep = sets::union(&[t], &sets::difference(region, &r));
        let (lambda, side) = local_mincut(view, &keep, t, tau)?;
        if let (Some(value), Some(side)) = (lambda, &side) {
            if value <= tau && best.as_ref().map_or(true, |b| value < b.0) {
                best = Some((value, t, side.clone()));
            }
        }
        records.push(TerminalCut { terminal: t, lambda, side });
    }
    let verdict = match best {
        Some((value, terminal, side)) => Verdict::Found { terminal, value, side },
        None => Verdict::AllExceedTau,
    };
    Ok(IsolatingResult { records, regions, verdict })
}

/// `t`-to-rest min-cut with everything outside `keep` merged. The direct
/// edge to the merged vertex is saturated up front; the remaining flow is
/// capped just above `tau`.
fn local_mincut<V: CutView + ?Sized>(view: &mut V, keep: &[usize], t: usize, tau: i64) -> Result<(Option<i64>, Option<Vec<usize>>)> {
    let mut g = ContractedView::new(view, keep)?;
    let local = g.local_of(t).expect("terminal is kept");
    let sink = g.contracted();
    let mut flow = Flow::zero(g.vertex_count(), local, sink);
    let direct = g.pair_capacity(&[local], &[sink]);
    if direct > tau {
        return Ok((None, None));
    }
    if direct > 0 {
        flow.push(local, sink, direct);
    }
    let cfg = MaxflowConfig { limit: Some(tau + 1), ..Default::default() };
    let result = dinitz_from(&mut g, flow, &cfg);
    if result.limited {
        return Ok((None, None));
    }
    let side = result.mincut_source_side.iter().map(|&v| g.original(v)).collect();
    Ok((Some(result.value()), Some(side)))
}
