use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One charged cut query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub seq: u64,
    pub set: Vec<usize>,
    pub answer: i64,
    pub tag: String,
}

/// Exact accounting of every cut query charged against one hidden graph.
///
/// `bis_count` counts pair-capacity simulations (BIS queries and
/// `pair_capacity` calls on the base graph); each issues three cut queries.
/// Empty and full sets are answered with 0 and only tallied in
/// `zero_cost_count`.
#[derive(Clone, Debug, Default)]
pub struct QueryLedger {
    cut_count: u64,
    bis_count: u64,
    zero_cost_count: u64,
    transcript: Option<Vec<TranscriptRecord>>,
    tag: String,
    phase_counts: BTreeMap<String, u64>,
}

impl QueryLedger {
    pub fn new(record_transcript: bool) -> Self {
        Self { transcript: record_transcript.then(Vec::new), tag: "main".into(), ..Self::default() }
    }

    pub fn cut_count(&self) -> u64 {
        self.cut_count
    }

    pub fn bis_count(&self) -> u64 {
        self.bis_count
    }

    pub fn zero_cost_count(&self) -> u64 {
        self.zero_cost_count
    }

    pub fn transcript(&self) -> Option<&[TranscriptRecord]> {
        self.transcript.as_deref()
    }

    pub fn phase_counts(&self) -> &BTreeMap<String, u64> {
        &self.phase_counts
    }

    pub fn phase(&self) -> &str {
        &self.tag
    }

    /// Sets the tag attached to subsequent queries and returns the old one.
    pub fn set_phase(&mut self, tag: &str) -> String {
        std::mem::replace(&mut self.tag, tag.to_string())
    }

    pub(crate) fn record_cut(&mut self, set: &[usize], answer: i64) {
        if let Some(t) = &mut self.transcript {
            t.push(TranscriptRecord { seq: self.cut_count, set: set.to_vec(), answer, tag: self.tag.clone() });
        }
        self.cut_count += 1;
        *self.phase_counts.entry(self.tag.clone()).or_default() += 1;
    }

    pub(crate) fn record_zero_cost(&mut self) {
        self.zero_cost_count += 1;
    }

    pub(crate) fn record_bis(&mut self) {
        self.bis_count += 1;
    }

    /// Writes the transcript as JSON lines. Writes nothing when recording was off.
    pub fn write_transcript(&self, mut out: impl Write) -> Result<()> {
        for rec in self.transcript.iter().flatten() {
            serde_json::to_writer(&mut out, rec)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

pub fn read_transcript(input: impl BufRead) -> Result<Vec<TranscriptRecord>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}
