//! Tunable constants for the decomposition and min-cut stages.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Which set of constants to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Explicit constants that behave sensibly for a few hundred vertices.
    #[default]
    Desk,
    /// Polylogarithmic thresholds in `n`, clamped to stay computable.
    Paper,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Profile::Desk),
            "paper" => Ok(Profile::Paper),
            other => Err(invalid(format!("unknown profile `{other}`"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Desk => "desk",
            Profile::Paper => "paper",
        })
    }
}

/// Every knob of the pipeline. `None` means "derive from the profile".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabConfig {
    pub profile: Profile,
    /// Expansion parameter, dimensionless relative to `tau + 1`.
    pub phi: Option<f64>,
    /// Number of terminals the matching player may leave unmatched.
    pub beta: Option<usize>,
    /// Minimum terminal fraction on each side of an accepted sparse cut.
    pub balance: Option<f64>,
    /// Rounds of the cut-matching game.
    pub rounds: Option<usize>,
    /// Expected minimum core fraction; only checked as a diagnostic.
    pub theta_core: f64,
    /// Required shrink factor of the sparsified terminal set.
    pub zeta: f64,
    /// Pruning conductance is `1 / (phi_x_scale * ln n + phi_x_scale)`.
    pub phi_x_scale: f64,
    /// Splitter parameter override.
    pub splitter_k: Option<usize>,
    /// Recursion cap for the decomposition.
    pub max_depth: Option<usize>,
    /// Pinned constant for BFS cost: BIS calls per `n log2 n`.
    pub budget_bfs: f64,
    /// Pinned constant for dominating-set cost: cut queries per `n log2 n`.
    pub budget_domset: f64,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self {
            profile: Profile::Desk,
            phi: None,
            beta: None,
            balance: None,
            rounds: None,
            theta_core: 0.5,
            zeta: 0.5,
            phi_x_scale: 6.0,
            splitter_k: None,
            max_depth: None,
            budget_bfs: 0.8583,
            budget_domset: 2.4844,
        }
    }
}

fn log2(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

impl LabConfig {
    pub fn with_profile(profile: Profile) -> Self {
        Self { profile, ..Self::default() }
    }

    pub fn phi(&self, n: usize) -> f64 {
        self.phi.unwrap_or(match self.profile {
            Profile::Desk => 0.5,
            Profile::Paper => (1.0 / log2(n).powi(10)).max(1e-3),
        })
    }

    /// Integer scale for internal edges of matching-player flows.
    pub fn kappa(&self, n: usize) -> i64 {
        (1.0 / self.phi(n)).ceil() as i64
    }

    pub fn beta(&self, n: usize, terminals: usize) -> usize {
        self.beta.unwrap_or(match self.profile {
            Profile::Desk => (terminals / 8).max(1),
            Profile::Paper => ((terminals as f64 / log2(n).powi(5)) as usize).max(1),
        })
    }

    pub fn balance(&self, n: usize) -> f64 {
        self.balance.unwrap_or(match self.profile {
            Profile::Desk => 0.125,
            Profile::Paper => 1.0 / log2(n).powi(5),
        })
    }

    pub fn rounds(&self, terminals: usize) -> usize {
        self.rounds.unwrap_or_else(|| log2(terminals).ceil() as usize + 2)
    }

    pub fn phi_x(&self, n: usize) -> f64 {
        let ln = (n.max(2) as f64).ln();
        1.0 / (self.phi_x_scale * ln + self.phi_x_scale)
    }

    /// Splitter parameter `(1/phi)^3 + 1/phi`, rounded up.
    pub fn splitter_k(&self, n: usize) -> usize {
        self.splitter_k.unwrap_or_else(|| {
            let inv = 1.0 / self.phi(n);
            (inv.powi(3) + inv).ceil().min(usize::MAX as f64 / 2.0) as usize
        })
    }

    pub fn max_depth(&self, n: usize, terminals: usize) -> usize {
        self.max_depth.unwrap_or_else(|| match self.profile {
            Profile::Desk => 4 * terminals.max(2),
            Profile::Paper => (log2(n).powi(5) * log2(terminals)).ceil().min(1e6) as usize,
        })
    }

    /// Resolved values for a graph on `n` vertices, for result metadata.
    pub fn resolved(&self, n: usize) -> BTreeMap<&'static str, String> {
        BTreeMap::from([
            ("profile", self.profile.to_string()),
            ("phi", format!("{}", self.phi(n))),
            ("balance", format!("{}", self.balance(n))),
            ("splitter_k", format!("{}", self.splitter_k(n))),
            ("zeta", format!("{}", self.zeta)),
            ("theta_core", format!("{}", self.theta_core)),
            ("phi_x", format!("{}", self.phi_x(n))),
        ])
    }

    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| invalid(format!("bad value `{v}` for `{key}`")))
        }
        match key {
            "profile" => self.profile = value.parse()?,
            "phi" => self.phi = Some(num(key, value)?),
            "beta" => self.beta = Some(num(key, value)?),
            "balance" => self.balance = Some(num(key, value)?),
            "rounds" | "r_max" => self.rounds = Some(num(key, value)?),
            "theta_core" => self.theta_core = num(key, value)?,
            "zeta" => self.zeta = num(key, value)?,
            "phi_x_scale" => self.phi_x_scale = num(key, value)?,
            "splitter_k" => self.splitter_k = Some(num(key, value)?),
            "max_depth" => self.max_depth = Some(num(key, value)?),
            "budget_bfs" => self.budget_bfs = num(key, value)?,
            "budget_domset" => self.budget_domset = num(key, value)?,
            other => return Err(invalid(format!("unknown config key `{other}`"))),
        }
        if let Some(phi) = self.phi {
            if !(phi > 0.0 && phi <= 1.0) {
                return Err(invalid("phi must lie in (0, 1]"));
            }
        }
        if !(self.zeta > 0.0 && self.zeta <= 1.0) {
            return Err(invalid("zeta must lie in (0, 1]"));
        }
        Ok(())
    }

    /// Parse `key=value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: i + 1, msg: "expected key=value".into() })?;
            cfg.set(k.trim(), v.trim()).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        }
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_settings() {
        let cfg = LabConfig::parse("# lab\nphi = 0.25\nzeta=0.75\n\nprofile=paper\n").unwrap();
        assert_eq!(cfg.phi(100), 0.25);
        assert_eq!(cfg.zeta, 0.75);
        assert_eq!(cfg.profile, Profile::Paper);
        assert_eq!(cfg.splitter_k(100), 68);
        assert!(LabConfig::parse("phi=2").is_err());
        assert!(matches!(LabConfig::parse("bogus=1"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn desk_defaults() {
        let cfg = LabConfig::default();
        assert_eq!(cfg.kappa(64), 2);
        assert_eq!(cfg.splitter_k(64), 10);
        assert_eq!(cfg.beta(64, 20), 2);
    }
}
