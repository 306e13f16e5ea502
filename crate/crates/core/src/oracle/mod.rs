//! The hidden graph, the query ledger and every derived view the
//! algorithms query through.

mod flow;
mod graph;
mod ledger;
mod replay;
mod view;
mod views;

pub use flow::Flow;
pub use graph::GraphInstance;
pub use ledger::{read_transcript, QueryLedger, TranscriptRecord};
pub use replay::ReplayOracle;
pub use view::{CutOracle, CutView};
pub use views::{AugmentedView, ContractedView, EdgeDeletedView, InducedView};

use crate::error::{invalid, Error, Result};
use crate::sets;

/// Total residual capacity from `a` to `b`: `c(A, B) - sum f(a, b)`.
pub fn residual_weight<V: CutView + ?Sized>(view: &mut V, flow: &Flow, a: &[usize], b: &[usize]) -> i64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    view.pair_capacity(a, b) - flow.sum_between(a, b)
}

/// Is there a residual edge from `a` into `b`?
///
/// Explicit virtual edges are checked first at no cost; the hidden part
/// costs one pair simulation.
pub fn residual_exists<V: CutView + ?Sized>(view: &mut V, flow: &Flow, a: &[usize], b: &[usize]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    if !view.has_explicit() {
        return residual_weight(view, flow, a, b) > 0;
    }
    let explicit = view.explicit_pair_capacity(a, b);
    let ha: Vec<usize> = a.iter().copied().filter(|&v| view.is_hidden(v)).collect();
    let hb: Vec<usize> = b.iter().copied().filter(|&v| view.is_hidden(v)).collect();
    // Flow on explicit edges is counted against the explicit part, flow on
    // hidden edges against the hidden part.
    let flow_total = flow.sum_between(a, b);
    let flow_hidden = if ha.is_empty() || hb.is_empty() { 0 } else { flow.sum_between(&ha, &hb) };
    if explicit - (flow_total - flow_hidden) > 0 {
        return true;
    }
    if ha.is_empty() || hb.is_empty() {
        return false;
    }
    view.hidden_pair_capacity(&ha, &hb) - flow_hidden > 0
}

/// Checked residual BIS: validates ids and disjointness, then answers
/// whether any residual edge leads from `a` into `b`.
pub fn residual_bis<V: CutView + ?Sized>(view: &mut V, flow: &Flow, a: &[usize], b: &[usize]) -> Result<bool> {
    let n = view.vertex_count();
    if flow.universe() != n {
        return Err(invalid(format!("flow is over {} vertices, view has {n}", flow.universe())));
    }
    let a = sets::canonical(a, n)?;
    let b = sets::canonical(b, n)?;
    if let Some(v) = sets::first_common(&a, &b) {
        return Err(Error::Overlap(v));
    }
    Ok(residual_exists(view, flow, &a, &b))
}

/// Capacity of the pair `(u, v)`, known to carry an edge whenever it has
/// positive residual capacity. Uses free information when the view has it.
pub fn edge_capacity<V: CutView + ?Sized>(view: &mut V, u: usize, v: usize) -> i64 {
    if let Some(c) = view.explicit_capacity(u, v) {
        return c;
    }
    if let Some(c) = view.uniform_capacity(u, v) {
        return c;
    }
    view.pair_capacity(&[u], &[v])
}

/// Build the view with a super source feeding `sources` and a super sink
/// fed by `sinks`, each listed with its attachment capacity.
pub fn augmented_view<'a, V: CutView + ?Sized>(
    view: &'a mut V,
    sources: &[(usize, i64)],
    sinks: &[(usize, i64)],
) -> Result<AugmentedView<'a, V>> {
    AugmentedView::new(view, sources, sinks, 1)
}

/// Build the view keeping `keep` and merging everything else into one vertex.
pub fn contracted_view<'a, V: CutView + ?Sized>(view: &'a mut V, keep: &[usize]) -> Result<ContractedView<'a, V>> {
    ContractedView::new(view, keep)
}
