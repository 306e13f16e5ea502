use super::ledger::{QueryLedger, TranscriptRecord};
use super::view::CutView;
use crate::sets;

/// Answers cut queries from a recorded transcript instead of a graph.
///
/// Each query must ask for exactly the set recorded at that position. On
/// the first divergence the replay is marked broken and answers 0 from then
/// on; check [`ReplayOracle::diverged_at`] afterwards.
#[derive(Clone, Debug)]
pub struct ReplayOracle {
    n: usize,
    max_capacity: i64,
    records: Vec<TranscriptRecord>,
    next: usize,
    diverged_at: Option<u64>,
    ledger: QueryLedger,
}

impl ReplayOracle {
    pub fn new(n: usize, max_capacity: i64, records: Vec<TranscriptRecord>) -> Self {
        Self { n, max_capacity, records, next: 0, diverged_at: None, ledger: QueryLedger::new(false) }
    }

    /// Sequence number of the first query that did not match.
    pub fn diverged_at(&self) -> Option<u64> {
        self.diverged_at
    }

    /// Records not yet asked for.
    pub fn remaining(&self) -> usize {
        self.records.len() - self.next
    }

    /// True when every query matched and the transcript was used up.
    pub fn complete(&self) -> bool {
        self.diverged_at.is_none() && self.remaining() == 0
    }
}

impl CutView for ReplayOracle {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn cut(&mut self, set: &[usize]) -> i64 {
        if set.is_empty() || set.len() == self.n {
            self.ledger.record_zero_cost();
            return 0;
        }
        let seq = self.ledger.cut_count();
        self.ledger.record_cut(set, 0);
        if self.diverged_at.is_some() {
            return 0;
        }
        match self.records.get(self.next) {
            Some(rec) if rec.set == set => {
                self.next += 1;
                rec.answer
            }
            _ => {
                self.diverged_at = Some(seq);
                0
            }
        }
    }

    fn hidden_pair_capacity(&mut self, a: &[usize], b: &[usize]) -> i64 {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        self.ledger.record_bis();
        let union = sets::union(a, b);
        let twice = self.cut(a) + self.cut(b) - self.cut(&union);
        (twice / 2).max(0)
    }

    fn uniform_capacity(&self, _u: usize, _v: usize) -> Option<i64> {
        (self.max_capacity == 1).then_some(1)
    }

    fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    fn ledger_mut(&mut self) -> &mut QueryLedger {
        &mut self.ledger
    }
}
