//! Experiment orchestration: rows, CSV, transcripts and scaling slopes.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate, InstanceSpec};
use super::reference::{is_dominating, reference_maxflow, reference_mincut};
use crate::config::LabConfig;
use crate::error::{invalid, Error, Result};
use crate::maxflow::{dinitz_maxflow, MaxflowConfig};
use crate::mincut::{dominating_set, global_mincut};
use crate::oracle::{read_transcript, CutOracle, CutView, GraphInstance, QueryLedger, ReplayOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mincut,
    Maxflow,
    Domset,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mincut => "mincut",
            Algorithm::Maxflow => "maxflow",
            Algorithm::Domset => "domset",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mincut" => Ok(Algorithm::Mincut),
            "maxflow" => Ok(Algorithm::Maxflow),
            "domset" => Ok(Algorithm::Domset),
            other => Err(invalid(format!("unknown algorithm `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub algorithm: String,
    pub answer: i64,
    pub reference_answer: Option<i64>,
    pub cut_queries: u64,
    pub bis_queries: u64,
    pub rounds: usize,
    pub wall_ms: f64,
    pub profile: String,
}

/// What a single algorithm run reports, independent of the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub answer: i64,
    pub rounds: usize,
}

/// Runs `algo` against any view. Max-flow goes from vertex 0 to the last vertex.
pub fn run_algorithm<V: CutView + ?Sized>(view: &mut V, algo: Algorithm, cfg: &LabConfig) -> Result<(Outcome, Vec<usize>)> {
    let n = view.vertex_count();
    match algo {
        Algorithm::Mincut => {
            let ans = global_mincut(view, cfg)?;
            Ok((Outcome { answer: ans.value, rounds: ans.trace.len() }, ans.side))
        }
        Algorithm::Maxflow => {
            if n < 2 {
                return Err(invalid("max-flow needs two vertices"));
            }
            let res = dinitz_maxflow(view, 0, n - 1, &MaxflowConfig::default())?;
            Ok((Outcome { answer: res.value(), rounds: res.rounds.len() }, res.mincut_source_side))
        }
        Algorithm::Domset => {
            let r = dominating_set(view);
            Ok((Outcome { answer: r.len() as i64, rounds: 0 }, r))
        }
    }
}

/// Query-free answer for the row; for dominating sets this validates the
/// returned set and echoes its size, or reports -1.
pub fn reference_answer(g: &GraphInstance, algo: Algorithm, witness: &[usize]) -> Result<i64> {
    match algo {
        Algorithm::Mincut => Ok(reference_mincut(g)?.0),
        Algorithm::Maxflow => reference_maxflow(g, 0, g.n() - 1),
        Algorithm::Domset => Ok(if is_dominating(g, witness) { witness.len() as i64 } else { -1 }),
    }
}

/// First line of a transcript file; the remaining lines are query records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptHeader {
    pub n: usize,
    pub max_capacity: i64,
    pub algorithm: Algorithm,
    pub answer: i64,
    pub config: LabConfig,
}

pub fn write_transcript_file(path: &Path, header: &TranscriptHeader, ledger: &QueryLedger) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer(&mut out, header)?;
    out.write_all(b"\n")?;
    ledger.write_transcript(&mut out)?;
    out.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub expected: i64,
    pub answer: i64,
    pub queries: usize,
    /// Every query matched the record and all records were consumed.
    pub complete: bool,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.complete && self.answer == self.expected
    }
}

/// Reruns the recorded algorithm with answers taken from the transcript only.
pub fn replay_transcript(path: &Path) -> Result<ReplayReport> {
    let mut input = BufReader::new(File::open(path)?);
    let mut first = String::new();
    input.read_line(&mut first)?;
    let header: TranscriptHeader = serde_json::from_str(&first)?;
    let records = read_transcript(input)?;
    let queries = records.len();
    let mut oracle = ReplayOracle::new(header.n, header.max_capacity, records);
    let answer = run_algorithm(&mut oracle, header.algorithm, &header.config).map(|(o, _)| o.answer).unwrap_or(i64::MIN);
    Ok(ReplayReport { expected: header.answer, answer, queries, complete: oracle.complete() })
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Write one transcript per row into this directory.
    pub transcripts: Option<PathBuf>,
    /// Where mismatch bundles go; defaults to the system temp directory.
    pub bundle_dir: Option<PathBuf>,
    /// Skip the reference computation.
    pub skip_reference: bool,
    /// Run rows on the thread pool when the `parallel` feature is on.
    pub parallel: bool,
}

fn row_stem(spec: &InstanceSpec, algo: Algorithm) -> String {
    format!("{}-n{}-s{}-{}", spec.family, spec.n, spec.seed, algo)
}

/// Executes one row on a fresh ledger.
pub fn run_row(spec: &InstanceSpec, algo: Algorithm, cfg: &LabConfig, opts: &SuiteOptions) -> Result<ExperimentRow> {
    let g = generate(spec)?;
    if algo == Algorithm::Mincut && g.max_capacity() > 1 {
        return Err(invalid("global min-cut rows need unit capacities"));
    }
    let record = opts.transcripts.is_some();
    let mut oracle = CutOracle::with_ledger(&g, QueryLedger::new(record));
    let start = Instant::now();
    let (outcome, witness) = run_algorithm(&mut oracle, algo, cfg)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let ledger = oracle.into_ledger();
    let header = TranscriptHeader { n: g.n(), max_capacity: g.max_capacity(), algorithm: algo, answer: outcome.answer, config: cfg.clone() };
    if let Some(dir) = &opts.transcripts {
        fs::create_dir_all(dir)?;
        write_transcript_file(&dir.join(format!("{}.jsonl", row_stem(spec, algo))), &header, &ledger)?;
    }
    let reference = if opts.skip_reference { None } else { Some(reference_answer(&g, algo, &witness)?) };
    let row = ExperimentRow {
        family: spec.family.to_string(),
        n: g.n(),
        m: g.m(),
        seed: spec.seed,
        algorithm: algo.to_string(),
        answer: outcome.answer,
        reference_answer: reference,
        cut_queries: ledger.cut_count(),
        bis_queries: ledger.bis_count(),
        rounds: outcome.rounds,
        wall_ms,
        profile: cfg.profile.to_string(),
    };
    if reference.is_some_and(|r| r != outcome.answer) {
        let bundle = write_bundle(spec, algo, cfg, opts, &g)?;
        return Err(Error::Mismatch(format!(
            "{} answered {} but the reference says {}; bundle in {}",
            row_stem(spec, algo),
            outcome.answer,
            reference.unwrap_or_default(),
            bundle.display()
        )));
    }
    Ok(row)
}

fn write_bundle(spec: &InstanceSpec, algo: Algorithm, cfg: &LabConfig, opts: &SuiteOptions, g: &GraphInstance) -> Result<PathBuf> {
    let base = opts.bundle_dir.clone().unwrap_or_else(std::env::temp_dir);
    let dir = base.join(format!("cutq-mismatch-{}", row_stem(spec, algo)));
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("instance.txt"), g.to_text())?;
    fs::write(dir.join("spec.json"), serde_json::to_string_pretty(spec)?)?;
    let mut oracle = CutOracle::recording(g);
    let answer = run_algorithm(&mut oracle, algo, cfg).map(|(o, _)| o.answer).unwrap_or(i64::MIN);
    let header = TranscriptHeader { n: g.n(), max_capacity: g.max_capacity(), algorithm: algo, answer, config: cfg.clone() };
    write_transcript_file(&dir.join("transcript.jsonl"), &header, &oracle.into_ledger())?;
    Ok(dir)
}

/// Least-squares slope of `ln(cut_queries)` against `ln(n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Slope {
    pub family: String,
    pub algorithm: String,
    pub points: usize,
    pub slope: f64,
}

pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (pts.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

pub fn slopes(rows: &[ExperimentRow]) -> Vec<Slope> {
    let mut groups: BTreeMap<(String, String), Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.family.clone(), r.algorithm.clone())).or_default().push((r.n as f64, r.cut_queries as f64));
    }
    groups
        .into_iter()
        .filter_map(|((family, algorithm), pts)| {
            loglog_slope(&pts).map(|slope| Slope { family, algorithm, points: pts.len(), slope })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub rows: Vec<ExperimentRow>,
    pub slopes: Vec<Slope>,
}

/// Runs every spec against every algorithm. Rows come back in input order
/// whether or not they ran in parallel; the first failing row aborts.
pub fn run_suite(specs: &[InstanceSpec], algos: &[Algorithm], cfg: &LabConfig, opts: &SuiteOptions) -> Result<SuiteReport> {
    let jobs: Vec<(&InstanceSpec, Algorithm)> = specs.iter().flat_map(|s| algos.iter().map(move |&a| (s, a))).collect();
    let run = |&(spec, algo): &(&InstanceSpec, Algorithm)| run_row(spec, algo, cfg, opts);
    #[cfg(feature = "parallel")]
    let results: Vec<Result<ExperimentRow>> =
        if opts.parallel { jobs.par_iter().map(run).collect() } else { jobs.iter().map(run).collect() };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<ExperimentRow>> = jobs.iter().map(run).collect();
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    let slopes = slopes(&rows);
    Ok(SuiteReport { rows, slopes })
}

pub fn write_rows_csv(rows: &[ExperimentRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_slopes_csv(slopes: &[Slope], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in slopes {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}
