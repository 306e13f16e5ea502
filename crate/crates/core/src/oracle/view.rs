use super::graph::GraphInstance;
use super::ledger::QueryLedger;
use crate::error::{invalid, Error, Result};
use crate::sets;

/// A graph the algorithms can query. Vertex ids are `0..vertex_count()`.
///
/// Edges come in two kinds. Hidden edges live in the base graph and cost
/// cut queries to observe. Explicit edges belong to virtual structure added
/// by a view and are read for free. Every set passed in must be sorted and
/// duplicate-free; pairs of sets must be disjoint.
pub trait CutView {
    fn vertex_count(&self) -> usize;

    /// Total capacity leaving `set`.
    fn cut(&mut self, set: &[usize]) -> i64;

    /// Capacity of hidden edges between `a` and `b`.
    fn hidden_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64;

    /// True when some vertex carries explicit edges.
    fn has_explicit(&self) -> bool {
        false
    }

    /// Whether every edge at `v` is hidden.
    fn is_hidden(&self, _v: usize) -> bool {
        true
    }

    /// Capacity of explicit edges between `a` and `b`, at zero query cost.
    fn explicit_pair_capacity(&self, _a: &[usize], _b: &[usize]) -> i64 {
        0
    }

    /// Exact capacity of the pair when it is known without queries.
    fn explicit_capacity(&self, _u: usize, _v: usize) -> Option<i64> {
        None
    }

    /// Capacity of a hidden pair given that an edge exists, when every
    /// hidden edge of the view shares one known capacity.
    fn uniform_capacity(&self, _u: usize, _v: usize) -> Option<i64> {
        None
    }

    fn ledger(&self) -> &QueryLedger;

    fn ledger_mut(&mut self) -> &mut QueryLedger;

    /// `c(a, b)`: hidden part through queries plus explicit part.
    fn pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64 {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        if !self.has_explicit() {
            return self.hidden_pair_capacity(a, b);
        }
        let ha: Vec<usize> = a.iter().copied().filter(|&v| self.is_hidden(v)).collect();
        let hb: Vec<usize> = b.iter().copied().filter(|&v| self.is_hidden(v)).collect();
        let hidden = if ha.is_empty() || hb.is_empty() { 0 } else { self.hidden_pair_capacity(&ha, &hb) };
        hidden + self.explicit_pair_capacity(a, b)
    }
}

/// The base view: answers cut queries on the hidden graph and charges the ledger.
#[derive(Clone, Debug)]
pub struct CutOracle<'g> {
    graph: &'g GraphInstance,
    ledger: QueryLedger,
    bits: Vec<u64>,
}

impl<'g> CutOracle<'g> {
    pub fn new(graph: &'g GraphInstance) -> Self {
        Self::with_ledger(graph, QueryLedger::new(false))
    }

    /// Oracle that keeps a replayable transcript of every charged query.
    pub fn recording(graph: &'g GraphInstance) -> Self {
        Self::with_ledger(graph, QueryLedger::new(true))
    }

    pub fn with_ledger(graph: &'g GraphInstance, ledger: QueryLedger) -> Self {
        Self { graph, ledger, bits: vec![0; graph.words()] }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Public capacity bound `W`.
    pub fn max_capacity(&self) -> i64 {
        self.graph.max_capacity()
    }

    pub fn into_ledger(self) -> QueryLedger {
        self.ledger
    }

    pub fn set_phase(&mut self, tag: &str) -> String {
        self.ledger.set_phase(tag)
    }

    /// Checked cut query: ids are validated and canonicalized.
    pub fn query_cut(&mut self, set: &[usize]) -> Result<i64> {
        let set = sets::canonical(set, self.n())?;
        Ok(self.cut(&set))
    }

    /// `c(A, B)` through three cut queries. `A` and `B` must be nonempty and disjoint.
    pub fn query_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> Result<i64> {
        let (a, b) = self.check_pair(a, b)?;
        Ok(self.hidden_pair_capacity(&a, &b))
    }

    /// Bipartite independent set query: is there any edge between `A` and `B`?
    pub fn bis_query(&mut self, a: &[usize], b: &[usize]) -> Result<bool> {
        Ok(self.query_pair_capacity(a, b)? > 0)
    }

    fn check_pair(&self, a: &[usize], b: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let a = sets::canonical(a, self.n())?;
        let b = sets::canonical(b, self.n())?;
        if a.is_empty() || b.is_empty() {
            return Err(invalid("pair capacity needs two nonempty sets"));
        }
        if let Some(v) = sets::first_common(&a, &b) {
            return Err(Error::Overlap(v));
        }
        Ok((a, b))
    }
}

impl CutView for CutOracle<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    fn cut(&mut self, set: &[usize]) -> i64 {
        if set.is_empty() || set.len() == self.graph.n() {
            self.ledger.record_zero_cost();
            return 0;
        }
        self.bits.iter_mut().for_each(|w| *w = 0);
        for &v in set {
            self.bits[v / 64] |= 1 << (v % 64);
        }
        let answer = self.graph.cut_of_bits(&self.bits);
        self.ledger.record_cut(set, answer);
        answer
    }

    fn hidden_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64 {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        self.ledger.record_bis();
        let union = sets::union(a, b);
        let twice = self.cut(a) + self.cut(b) - self.cut(&union);
        debug_assert!(twice >= 0 && twice % 2 == 0);
        twice / 2
    }

    fn uniform_capacity(&self, _u: usize, _v: usize) -> Option<i64> {
        (self.graph.max_capacity() == 1).then_some(1)
    }

    fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    fn ledger_mut(&mut self) -> &mut QueryLedger {
        &mut self.ledger
    }
}
