use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Subsets of `0..n`, each of size at least two, such that every set of at
/// most `k` elements meets some member in exactly one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitterFamily {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

fn primes_up_to(limit: usize) -> Vec<usize> {
    (2..=limit).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Flow count of running isolating cuts on every set of `sets`.
fn flow_cost(sets: &[Vec<usize>]) -> usize {
    sets.iter().map(|s| s.len().next_power_of_two().trailing_zeros() as usize).sum()
}

/// The cheaper of two constructions, measured by [`flow_cost`].
///
/// Residue classes: for `S` of size at most `k` and any `x` in `S`, the
/// product of the differences `|x - y|` is below `(n - 1)^(k - 1)`. Once
/// the chosen primes multiply past that bound one of them divides no
/// difference, and the class of `x` modulo that prime meets `S` only in `x`.
///
/// Star: the pairs `{0, x}`. A proper nonempty `S` containing 0 misses some
/// `x`; one without 0 contains some `x`. Either way a pair meets it once, so
/// the star works for every `k < n`.
///
/// For `k = 1` the whole universe already suffices.
pub fn splitter_family(n: usize, k: usize) -> Result<SplitterFamily> {
    if k == 0 {
        return Ok(SplitterFamily { n, k, sets: Vec::new() });
    }
    if k >= n {
        return Err(invalid(format!("splitter parameter {k} must be below the universe size {n}")));
    }
    if k == 1 {
        return Ok(SplitterFamily { n, k, sets: vec![(0..n).collect()] });
    }
    let star: Vec<Vec<usize>> = (1..n).map(|x| vec![0, x]).collect();
    let sets = match residue_family(n, k) {
        Some(res) if flow_cost(&res) < flow_cost(&star) => res,
        _ => star,
    };
    Ok(SplitterFamily { n, k, sets })
}

fn residue_family(n: usize, k: usize) -> Option<Vec<Vec<usize>>> {
    let bound = ((n - 1) as f64).ln() * (k - 1) as f64;
    let mut chosen = Vec::new();
    let mut log_product = 0.0;
    for p in primes_up_to(n / 2) {
        if log_product > bound + 1e-9 {
            break;
        }
        chosen.push(p);
        log_product += (p as f64).ln();
    }
    if log_product <= bound + 1e-9 {
        return None;
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &p in &chosen {
        for a in 0..p {
            let class: Vec<usize> = (a..n).step_by(p).collect();
            if seen.insert(class.clone()) {
                out.push(class);
            }
        }
    }
    Some(out)
}

impl SplitterFamily {
    /// Exhaustive check of the hitting property. Only for small `n`.
    pub fn verify(&self) -> bool {
        assert!(self.n <= 24, "exhaustive splitter check needs n <= 24");
        let masks: Vec<u32> = self.sets.iter().map(|s| s.iter().fold(0, |m, &x| m | 1 << x)).collect();
        (1u32..1 << self.n)
            .filter(|s| s.count_ones() as usize <= self.k)
            .all(|s| masks.iter().any(|f| (s & f).count_ones() == 1))
            && self.sets.iter().all(|s| s.len() >= 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families_hit() {
        for n in 2..=12 {
            for k in 1..n.min(5) {
                let f = splitter_family(n, k).unwrap();
                assert!(f.verify(), "n={n} k={k}");
            }
        }
        assert!(splitter_family(4, 0).unwrap().sets.is_empty());
        assert_eq!(splitter_family(6, 5).unwrap().sets.len(), 5);
        assert!(splitter_family(4, 4).is_err());
    }

    #[test]
    fn residue_family_is_compact() {
        let f = splitter_family(200, 2).unwrap();
        assert!(f.sets.len() < 199);
        for x in 0..200 {
            for y in x..200 {
                let hit = |set: &Vec<usize>| set.contains(&x) as usize + (x != y && set.contains(&y)) as usize == 1;
                assert!(f.sets.iter().any(hit), "{x} {y}");
            }
        }
        assert!(f.sets.iter().all(|s| s.len() >= 2));
    }
}
