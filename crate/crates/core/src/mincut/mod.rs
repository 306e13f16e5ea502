//! Global minimum cut through a threshold test and binary search.

mod domset;
mod splitter;

pub use domset::{degrees, dominating_set, dominating_set_with, Domination};
pub use splitter::{splitter_family, SplitterFamily};

use serde::Serialize;

use crate::config::LabConfig;
use crate::error::{invalid, Result};
use crate::expander::{decompose, Decomposition, PartClass};
use crate::isolating::{isolating_cuts, Verdict};
use crate::oracle::CutView;
use crate::sets;

/// A cut together with its capacity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub value: i64,
    pub side: Vec<usize>,
}

/// Quantities shared by every threshold probe on one graph.
#[derive(Clone, Debug)]
pub struct MinCutContext {
    pub degrees: Vec<i64>,
    pub delta: i64,
    /// Lowest-id vertex of minimum degree.
    pub argmin: usize,
    pub dominating: Vec<usize>,
    /// Connected vertex groups found while building the dominating set.
    pub groups: Vec<Vec<usize>>,
}

impl MinCutContext {
    /// Degrees cost `n` singleton queries; the dominating set is built once.
    pub fn build<V: CutView + ?Sized>(view: &mut V) -> Result<Self> {
        let n = view.vertex_count();
        if n < 2 {
            return Err(invalid("min-cut needs at least two vertices"));
        }
        let old = view.ledger_mut().set_phase("degrees");
        let degrees = degrees(view);
        let (argmin, &delta) = degrees.iter().enumerate().min_by_key(|&(i, d)| (*d, i)).expect("nonempty");
        view.ledger_mut().set_phase("domset");
        let Domination { set: dominating, groups } = dominating_set_with(view, &degrees, delta);
        view.ledger_mut().set_phase(&old);
        Ok(Self { degrees, delta, argmin, dominating, groups })
    }
}

fn splitter_k(cfg: &LabConfig, n: usize, terminals: usize) -> usize {
    cfg.splitter_k(n).min(terminals.saturating_sub(1))
}

/// Runs isolating cuts on each member of a splitter family over `r` and
/// returns the first cut of size at most `tau`.
pub fn unbalanced_case<V: CutView + ?Sized>(view: &mut V, r: &[usize], tau: i64, k: usize) -> Result<Option<Cut>> {
    let n = view.vertex_count();
    let r = sets::canonical(r, n)?;
    if r.len() < 2 {
        return Ok(None);
    }
    let k = k.min(r.len() - 1);
    let family = splitter_family(r.len(), k)?;
    for set in &family.sets {
        let terminals: Vec<usize> = set.iter().map(|&i| r[i]).collect();
        if let Verdict::Found { value, side, .. } = isolating_cuts(view, &terminals, tau)?.verdict {
            return Ok(Some(Cut { value, side }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub enum Sparsify {
    SmallCut(Cut),
    Sparsified { terminals: Vec<usize>, decomposition: Decomposition },
}

/// Decomposes around `r`; either a part boundary is already a cut of size
/// at most `tau`, or a smaller terminal set is built from the cores.
pub fn balanced_sparsify<V: CutView + ?Sized>(view: &mut V, r: &[usize], tau: i64, cfg: &LabConfig) -> Result<Sparsify> {
    let n = view.vertex_count();
    let decomposition = decompose(view, r, tau, cfg)?;
    for part in &decomposition.parts {
        if part.vertices.len() == n {
            continue;
        }
        let value = view.cut(&part.vertices);
        if value <= tau {
            return Ok(Sparsify::SmallCut(Cut { value, side: part.vertices.clone() }));
        }
    }
    let large_keep = 1 + (1.0 / cfg.phi(n)).ceil() as usize;
    let mut terminals = Vec::new();
    for part in &decomposition.parts {
        terminals.extend(sets::difference(&part.terminals, &part.core));
        let keep = match part.class {
            PartClass::Empty => 0,
            PartClass::Small => 1,
            PartClass::Large => large_keep,
        };
        terminals.extend(part.core.iter().take(keep));
    }
    terminals.sort_unstable();
    terminals.dedup();
    Ok(Sparsify::Sparsified { terminals, decomposition })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    Cut(Cut),
    /// Every cut is larger than the threshold.
    Above,
}

/// How a threshold probe ended.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ThresholdStats {
    pub iterations: usize,
    pub terminal_sizes: Vec<usize>,
    pub fallback: bool,
    /// The cut found was a decomposition part boundary.
    pub part_boundary: bool,
}

/// Finds a cut of size at most `tau`, or certifies that none exists.
/// Requires `tau < delta`.
pub fn threshold_mincut<V: CutView + ?Sized>(view: &mut V, tau: i64, cfg: &LabConfig) -> Result<Threshold> {
    let ctx = MinCutContext::build(view)?;
    threshold_with(view, &ctx, tau, cfg).map(|(t, _)| t)
}

pub fn threshold_with<V: CutView + ?Sized>(
    view: &mut V,
    ctx: &MinCutContext,
    tau: i64,
    cfg: &LabConfig,
) -> Result<(Threshold, ThresholdStats)> {
    if tau < 0 || tau >= ctx.delta {
        return Err(invalid(format!("threshold {tau} must lie in 0..{}", ctx.delta)));
    }
    let n = view.vertex_count();
    let mut stats = ThresholdStats::default();
    let mut r = ctx.dominating.clone();
    let max_iter = (r.len().max(1) as f64).log2().ceil() as usize + 1;
    let found = |cut: Cut, stats: ThresholdStats| Ok((Threshold::Cut(cut), stats));
    for _ in 0..max_iter {
        stats.terminal_sizes.push(r.len());
        if r.len() <= 1 {
            return Ok((Threshold::Above, stats));
        }
        stats.iterations += 1;
        let k = splitter_k(cfg, n, r.len());
        if let Some(cut) = unbalanced_case(view, &r, tau, k)? {
            return found(cut, stats);
        }
        // A family for k >= |R|/2 already hits the smaller side of every split of R.
        if k >= r.len() / 2 {
            return Ok((Threshold::Above, stats));
        }
        match balanced_sparsify(view, &r, tau, cfg)? {
            Sparsify::SmallCut(cut) => {
                stats.part_boundary = true;
                return found(cut, stats);
            }
            Sparsify::Sparsified { terminals, .. } => {
                if terminals.len() as f64 >= cfg.zeta * r.len() as f64 {
                    break;
                }
                r = terminals;
            }
        }
    }
    if r.len() <= 1 {
        return Ok((Threshold::Above, stats));
    }
    stats.fallback = true;
    match unbalanced_case(view, &r, tau, r.len() / 2)? {
        Some(cut) => found(cut, stats),
        None => Ok((Threshold::Above, stats)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The graph is disconnected; the side is one component.
    Disconnected,
    /// No cut beats the lightest vertex.
    DegreeCut,
    /// The cut came from an isolating-cut search at the smallest feasible threshold.
    IsolatingCut,
    /// The cut is a part boundary from the decomposition stage.
    ThresholdPath,
}

/// One threshold probe of the binary search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub tau: i64,
    pub found: Option<i64>,
    pub cut_queries: u64,
    pub stats: ThresholdStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinCutAnswer {
    pub value: i64,
    pub side: Vec<usize>,
    pub certificate: Certificate,
    pub delta: i64,
    pub dominating_size: usize,
    pub trace: Vec<Probe>,
    pub cut_queries: u64,
    pub bis_queries: u64,
}

/// Component containing the first group, grown one adjacent group at a time.
/// Each group must induce a connected subgraph.
pub fn component_of_first<V: CutView + ?Sized>(view: &mut V, groups: &[Vec<usize>]) -> Vec<usize> {
    let Some((first, rest)) = groups.split_first() else { return Vec::new() };
    let mut comp = first.clone();
    comp.sort_unstable();
    let mut rest: Vec<&Vec<usize>> = rest.iter().collect();
    while !rest.is_empty() && view.cut(&comp) > 0 {
        let (mut lo, mut hi) = (0, rest.len());
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let half: Vec<usize> = rest[lo..mid].iter().fold(Vec::new(), |acc, g| sets::union(&acc, g));
            if view.pair_capacity(&comp, &half) > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        comp = sets::union(&comp, rest.remove(lo));
    }
    comp
}

/// Exact global minimum cut of a simple unweighted graph.
pub fn global_mincut<V: CutView + ?Sized>(view: &mut V, cfg: &LabConfig) -> Result<MinCutAnswer> {
    let n = view.vertex_count();
    if n < 2 {
        return Err(invalid("min-cut needs at least two vertices"));
    }
    let start_phase = view.ledger().phase().to_string();
    let ctx = MinCutContext::build(view)?;
    let finish = |view: &mut V, value, side: Vec<usize>, certificate, trace| {
        view.ledger_mut().set_phase(&start_phase);
        let ledger = view.ledger();
        MinCutAnswer {
            value,
            side,
            certificate,
            delta: ctx.delta,
            dominating_size: ctx.dominating.len(),
            trace,
            cut_queries: ledger.cut_count(),
            bis_queries: ledger.bis_count(),
        }
    };
    if ctx.delta == 0 {
        return Ok(finish(view, 0, vec![ctx.argmin], Certificate::Disconnected, Vec::new()));
    }
    view.ledger_mut().set_phase("connectivity");
    let component = component_of_first(view, &ctx.groups);
    if component.len() < n {
        return Ok(finish(view, 0, component, Certificate::Disconnected, Vec::new()));
    }
    let degree_side = vec![ctx.argmin];
    if ctx.delta == 1 {
        return Ok(finish(view, 1, degree_side, Certificate::DegreeCut, Vec::new()));
    }

    view.ledger_mut().set_phase("threshold");
    let mut trace = Vec::new();
    let probe = |view: &mut V, tau: i64, trace: &mut Vec<Probe>| -> Result<Option<Cut>> {
        let before = view.ledger().cut_count();
        let (outcome, stats) = threshold_with(view, &ctx, tau, cfg)?;
        let cut = match outcome {
            Threshold::Cut(c) => Some(c),
            Threshold::Above => None,
        };
        trace.push(Probe {
            tau,
            found: cut.as_ref().map(|c| c.value),
            cut_queries: view.ledger().cut_count() - before,
            stats,
        });
        Ok(cut)
    };
    let Some(mut best) = probe(view, ctx.delta - 1, &mut trace)? else {
        return Ok(finish(view, ctx.delta, degree_side, Certificate::DegreeCut, trace));
    };
    let mut best_boundary = trace.last().map_or(false, |p| p.stats.part_boundary);
    let (mut lo, mut hi) = (1, best.value);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(view, mid, &mut trace)? {
            Some(cut) => {
                hi = cut.value;
                best_boundary = trace.last().map_or(false, |p| p.stats.part_boundary);
                best = cut;
            }
            None => lo = mid + 1,
        }
    }
    let certificate = if best_boundary { Certificate::ThresholdPath } else { Certificate::IsolatingCut };
    let (value, side) = (best.value, best.side);
    Ok(finish(view, value, side, certificate, trace))
}
