//! Deterministic instance families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::oracle::GraphInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RandomGnp,
    Barbell,
    TwoCliquesBridge,
    Path,
    Star,
    Complete,
    ExpanderLike,
    PlantedCut,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::RandomGnp,
        Family::Barbell,
        Family::TwoCliquesBridge,
        Family::Path,
        Family::Star,
        Family::Complete,
        Family::ExpanderLike,
        Family::PlantedCut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomGnp => "random_gnp",
            Family::Barbell => "barbell",
            Family::TwoCliquesBridge => "two_cliques_bridge",
            Family::Path => "path",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::ExpanderLike => "expander_like",
            Family::PlantedCut => "planted_cut",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid(format!("unknown family `{s}`")))
    }
}

/// Everything that determines a generated graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Edge probability for `random_gnp` and inside the halves of `planted_cut`.
    pub p: f64,
    /// Clique size for `barbell`; defaults to `n / 3`.
    pub clique: Option<usize>,
    /// Number of edges across the planted bipartition.
    pub planted: usize,
    /// Degree of `expander_like` (rounded up to even).
    pub degree: usize,
    /// Capacities are drawn uniformly from `1..=w`.
    pub w: i64,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self { family, n, seed, p: 0.5, clique: None, planted: 1, degree: 6, w: 1 }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_planted(mut self, k: usize) -> Self {
        self.planted = k;
        self
    }

    pub fn with_w(mut self, w: i64) -> Self {
        self.w = w;
        self
    }

    pub fn with_clique(mut self, c: usize) -> Self {
        self.clique = Some(c);
        self
    }
}

struct Builder {
    n: usize,
    w: i64,
    rng: ChaCha8Rng,
    edges: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn add(&mut self, u: usize, v: usize) {
        if u != v {
            self.edges.insert((u.min(v), u.max(v)));
        }
    }

    fn clique(&mut self, vs: impl Iterator<Item = usize> + Clone) {
        for u in vs.clone() {
            for v in vs.clone() {
                if u < v {
                    self.add(u, v);
                }
            }
        }
    }

    fn gnp(&mut self, lo: usize, hi: usize, p: f64) {
        for u in lo..hi {
            for v in u + 1..hi {
                if self.rng.gen_bool(p) {
                    self.add(u, v);
                }
            }
        }
    }

    fn finish(mut self) -> Result<GraphInstance> {
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        let w = self.w;
        let weighted: Vec<(usize, usize, i64)> =
            edges.into_iter().map(|(u, v)| (u, v, if w == 1 { 1 } else { self.rng.gen_range(1..=w) })).collect();
        GraphInstance::new(self.n, weighted)
    }
}

/// Builds the instance. Identical specs give identical graphs.
pub fn generate(spec: &InstanceSpec) -> Result<GraphInstance> {
    let n = spec.n;
    if n == 0 {
        return Err(invalid("instance needs at least one vertex"));
    }
    if spec.w < 1 {
        return Err(invalid("capacity bound must be at least 1"));
    }
    if !(0.0..=1.0).contains(&spec.p) {
        return Err(invalid("edge probability must lie in [0, 1]"));
    }
    let rng = ChaCha8Rng::seed_from_u64(spec.seed ^ (spec.family as u64) << 56 ^ (n as u64) << 40);
    let mut b = Builder { n, w: spec.w, rng, edges: BTreeSet::new() };
    match spec.family {
        Family::RandomGnp => b.gnp(0, n, spec.p),
        Family::Complete => b.clique(0..n),
        Family::Path => (1..n).for_each(|v| b.add(v - 1, v)),
        Family::Star => (1..n).for_each(|v| b.add(0, v)),
        Family::TwoCliquesBridge => {
            if n < 2 {
                return Err(invalid("two cliques need at least two vertices"));
            }
            let k = n / 2;
            b.clique(0..k);
            b.clique(k..n);
            b.add(k - 1, k);
        }
        Family::Barbell => {
            let c = spec.clique.unwrap_or(n / 3).max(1);
            if 2 * c > n {
                return Err(invalid(format!("barbell with cliques of {c} needs at least {} vertices", 2 * c)));
            }
            b.clique(0..c);
            b.clique(n - c..n);
            (c..=n - c).for_each(|v| b.add(v - 1, v));
        }
        Family::ExpanderLike => {
            let cycles = spec.degree.div_ceil(2).max(1);
            for _ in 0..cycles {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut b.rng);
                for i in 0..n {
                    b.add(order[i], order[(i + 1) % n]);
                }
            }
        }
        Family::PlantedCut => {
            if n < 2 {
                return Err(invalid("planted cut needs at least two vertices"));
            }
            let h = n / 2;
            let pairs = h * (n - h);
            if spec.planted > pairs {
                return Err(invalid(format!("cannot plant {} edges across {pairs} pairs", spec.planted)));
            }
            b.gnp(0, h, spec.p);
            b.gnp(h, n, spec.p);
            let mut across: Vec<(usize, usize)> = (0..h).flat_map(|u| (h..n).map(move |v| (u, v))).collect();
            across.shuffle(&mut b.rng);
            for &(u, v) in across.iter().take(spec.planted) {
                b.add(u, v);
            }
        }
    }
    b.finish()
}
