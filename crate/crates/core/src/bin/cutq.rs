use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cutquery::config::{LabConfig, Profile};
use cutquery::expander::decompose;
use cutquery::harness::suite::{
    reference_answer, replay_transcript, run_algorithm, write_rows_csv, write_slopes_csv, write_transcript_file,
    TranscriptHeader,
};
use cutquery::harness::{generate, run_suite, Algorithm, Family, InstanceSpec, SuiteOptions};
use cutquery::isolating::{isolating_cuts, Verdict};
use cutquery::maxflow::{dinitz_maxflow, MaxflowConfig};
use cutquery::mincut::{dominating_set, global_mincut};
use cutquery::oracle::{CutOracle, GraphInstance, QueryLedger};
use cutquery::Result;

#[derive(Parser)]
#[command(name = "cutq", version, about = "Cut-query algorithm lab")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Tuning {
    #[arg(long, default_value = "desk")]
    profile: Profile,
    /// key=value file overriding constants
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Tuning {
    fn resolve(&self) -> Result<LabConfig> {
        let mut cfg = match &self.config {
            Some(p) => LabConfig::load(p)?,
            None => LabConfig::default(),
        };
        cfg.profile = self.profile;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Maximum s-t flow with Dinitz rounds
    Maxflow {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        partial_retreat: bool,
    },
    /// Minimum isolating cuts below a threshold
    Isocuts {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        terminals: Vec<usize>,
        #[arg(long)]
        tau: i64,
    },
    /// Expander decomposition around a terminal set
    Expdecomp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        terminals: Vec<usize>,
        #[arg(long)]
        tau: i64,
        #[arg(long)]
        phi: Option<f64>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Exact global minimum cut of an unweighted graph
    Mincut {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Dominating set from degree and neighborhood queries
    Domset {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run a benchmark suite over generated families
    Bench {
        #[arg(long, value_delimiter = ',')]
        families: Vec<Family>,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "mincut")]
        algos: Vec<Algorithm>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        w: i64,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        slopes: Option<PathBuf>,
        #[arg(long)]
        transcripts: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Cross-check one algorithm against the query-free reference
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        algo: Algorithm,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Rerun a recorded transcript without the graph
    Replay {
        #[arg(long)]
        transcript: PathBuf,
    },
    /// Write a generated instance in the graph file format
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        w: i64,
        #[arg(long, default_value_t = 1)]
        planted: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn print(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
}

fn save_transcript(path: &Path, g: &GraphInstance, algo: Algorithm, answer: i64, cfg: &LabConfig, ledger: &QueryLedger) -> Result<()> {
    let header = TranscriptHeader { n: g.n(), max_capacity: g.max_capacity(), algorithm: algo, answer, config: cfg.clone() };
    write_transcript_file(path, &header, ledger)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Maxflow { graph, s, t, partial_retreat } => {
            let g = GraphInstance::load(graph)?;
            let mut o = CutOracle::new(&g);
            let res = dinitz_maxflow(&mut o, s, t, &MaxflowConfig { partial_retreat, limit: None })?;
            let ledger = o.into_ledger();
            print(json!({
                "value": res.value(),
                "source_side": res.mincut_source_side,
                "rounds": res.rounds,
                "cut_queries": ledger.cut_count(),
            }));
        }
        Cmd::Isocuts { graph, terminals, tau } => {
            let g = GraphInstance::load(graph)?;
            let mut o = CutOracle::new(&g);
            let res = isolating_cuts(&mut o, &terminals, tau)?;
            let records: Vec<_> = res
                .records
                .iter()
                .map(|r| json!({"terminal": r.terminal, "lambda": r.lambda, "side": r.side}))
                .collect();
            let verdict = match &res.verdict {
                Verdict::Found { terminal, value, side } => json!({"found": {"terminal": terminal, "value": value, "side": side}}),
                Verdict::AllExceedTau => json!("all_exceed_tau"),
            };
            print(json!({"verdict": verdict, "terminals": records, "regions": res.regions, "cut_queries": o.into_ledger().cut_count()}));
        }
        Cmd::Expdecomp { graph, terminals, tau, phi, tuning } => {
            let g = GraphInstance::load(graph)?;
            let mut cfg = tuning.resolve()?;
            if phi.is_some() {
                cfg.phi = phi;
            }
            let mut o = CutOracle::new(&g);
            let d = decompose(&mut o, &terminals, tau, &cfg)?;
            let parts: Vec<_> = d
                .parts
                .iter()
                .map(|p| {
                    json!({
                        "vertices": p.vertices,
                        "terminals": p.terminals,
                        "core": p.core,
                        "class": p.class,
                        "boundary": g.cut_value(&p.vertices),
                        "diagnostics": p.diagnostics,
                    })
                })
                .collect();
            print(json!({
                "parts": parts,
                "crossing": d.crossing,
                "core_splits": d.core_splits,
                "config": cfg.resolved(g.n()),
                "cut_queries": o.into_ledger().cut_count(),
            }));
        }
        Cmd::Mincut { graph, tuning, transcript, csv } => {
            let g = GraphInstance::load(graph)?;
            let cfg = tuning.resolve()?;
            let mut o = CutOracle::with_ledger(&g, QueryLedger::new(transcript.is_some()));
            let ans = global_mincut(&mut o, &cfg)?;
            let ledger = o.into_ledger();
            if let Some(p) = transcript {
                save_transcript(&p, &g, Algorithm::Mincut, ans.value, &cfg, &ledger)?;
            }
            if let Some(p) = csv {
                let mut w = csv::Writer::from_path(p).map_err(cutquery::Error::from)?;
                w.write_record(["n", "m", "value", "certificate", "cut_queries", "bis_queries", "profile"]).map_err(cutquery::Error::from)?;
                w.write_record([
                    g.n().to_string(),
                    g.m().to_string(),
                    ans.value.to_string(),
                    serde_json::to_value(ans.certificate)?.as_str().unwrap_or_default().to_string(),
                    ans.cut_queries.to_string(),
                    ans.bis_queries.to_string(),
                    cfg.profile.to_string(),
                ])
                .map_err(cutquery::Error::from)?;
                w.flush()?;
            }
            print(json!({
                "value": ans.value,
                "side": ans.side,
                "certificate": ans.certificate,
                "delta": ans.delta,
                "cut_queries": ans.cut_queries,
                "phases": ledger.phase_counts(),
                "trace": ans.trace,
            }));
        }
        Cmd::Domset { graph } => {
            let g = GraphInstance::load(graph)?;
            let mut o = CutOracle::new(&g);
            let r = dominating_set(&mut o);
            print(json!({"set": r, "size": r.len(), "cut_queries": o.into_ledger().cut_count()}));
        }
        Cmd::Bench { families, sizes, seeds, algos, p, w, tuning, csv, slopes, transcripts, sequential } => {
            let cfg = tuning.resolve()?;
            let mut specs = Vec::new();
            for &f in &families {
                for &n in &sizes {
                    for &s in &seeds {
                        specs.push(InstanceSpec::new(f, n, s).with_p(p).with_w(w));
                    }
                }
            }
            let opts = SuiteOptions { transcripts, parallel: !sequential, ..Default::default() };
            let report = run_suite(&specs, &algos, &cfg, &opts)?;
            match csv {
                Some(path) => write_rows_csv(&report.rows, BufWriter::new(File::create(path)?))?,
                None => write_rows_csv(&report.rows, io::stdout().lock())?,
            }
            match slopes {
                Some(path) => write_slopes_csv(&report.slopes, BufWriter::new(File::create(path)?))?,
                None => {
                    let mut err = io::stderr().lock();
                    for s in &report.slopes {
                        writeln!(err, "slope {} {}: {:.3} over {} rows", s.family, s.algorithm, s.slope, s.points)?;
                    }
                }
            }
        }
        Cmd::Verify { graph, algo, tuning } => {
            let g = GraphInstance::load(graph)?;
            let cfg = tuning.resolve()?;
            let mut o = CutOracle::new(&g);
            let (outcome, witness) = run_algorithm(&mut o, algo, &cfg)?;
            let reference = reference_answer(&g, algo, &witness)?;
            let ok = reference == outcome.answer;
            print(json!({"algorithm": algo, "answer": outcome.answer, "reference": reference, "ok": ok, "cut_queries": o.into_ledger().cut_count()}));
            return Ok(ok);
        }
        Cmd::Replay { transcript } => {
            let rep = replay_transcript(&transcript)?;
            print(json!({"expected": rep.expected, "answer": rep.answer, "queries": rep.queries, "complete": rep.complete, "ok": rep.ok()}));
            return Ok(rep.ok());
        }
        Cmd::Generate { family, n, seed, p, w, planted, out } => {
            let g = generate(&InstanceSpec::new(family, n, seed).with_p(p).with_w(w).with_planted(planted))?;
            match out {
                Some(path) => std::fs::write(path, g.to_text())?,
                None => print!("{}", g.to_text()),
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
