use std::collections::BTreeMap;

/// The explicit witness graph of the cut-matching game. Vertices are
/// indices into `terminals`; every edge is stored once with `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessGraph {
    pub terminals: Vec<usize>,
    pub real: BTreeMap<(usize, usize), i64>,
    pub fake: BTreeMap<(usize, usize), i64>,
    pub rounds: usize,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl WitnessGraph {
    pub fn new(terminals: Vec<usize>) -> Self {
        Self { terminals, ..Self::default() }
    }

    pub fn len(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terminals.is_empty()
    }

    pub fn add_real(&mut self, i: usize, j: usize, units: i64) {
        *self.real.entry(key(i, j)).or_default() += units;
    }

    pub fn add_fake(&mut self, i: usize, j: usize, units: i64) {
        *self.fake.entry(key(i, j)).or_default() += units;
    }

    pub fn fake_total(&self) -> i64 {
        self.fake.values().sum()
    }

    /// Degree counting real and fake multiplicities.
    pub fn degree(&self, i: usize) -> i64 {
        self.real
            .iter()
            .chain(&self.fake)
            .filter(|((a, b), _)| *a == i || *b == i)
            .map(|(_, w)| *w)
            .sum()
    }

    /// Combined weight matrix, optionally without fake edges.
    pub fn weights(&self, with_fake: bool) -> Vec<Vec<i64>> {
        let t = self.len();
        let mut w = vec![vec![0; t]; t];
        let fake = if with_fake { Some(&self.fake) } else { None };
        for (&(i, j), &x) in self.real.iter().chain(fake.into_iter().flatten()) {
            w[i][j] += x;
            w[j][i] += x;
        }
        w
    }

    /// True when every cut `S` has crossing weight at least
    /// `b * min(|S|, t - |S|)`, counting fake edges. Exhaustive, so only
    /// meant for small witness graphs.
    pub fn sparsity_at_least(&self, b: i64) -> bool {
        min_sparsity(&self.weights(true)).map_or(true, |s| s >= b as f64)
    }
}

/// Minimum over nontrivial cuts of crossing weight divided by the smaller
/// side's size, by enumeration. `None` with fewer than two vertices.
pub fn min_sparsity(w: &[Vec<i64>]) -> Option<f64> {
    let t = w.len();
    if t < 2 {
        return None;
    }
    assert!(t <= 24, "exhaustive sparsity needs at most 24 vertices");
    let mut best = f64::INFINITY;
    // Fix vertex t-1 outside S so every cut is visited once.
    for mask in 1u32..(1 << (t - 1)) {
        let size = mask.count_ones() as usize;
        let mut cross = 0;
        for i in 0..t {
            if mask >> i & 1 == 1 {
                for j in 0..t {
                    if mask >> j & 1 == 0 {
                        cross += w[i][j];
                    }
                }
            }
        }
        let s = cross as f64 / size.min(t - size) as f64;
        if s < best {
            best = s;
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_count_both_kinds() {
        let mut x = WitnessGraph::new(vec![3, 5, 8, 9]);
        x.add_real(0, 2, 2);
        x.add_fake(2, 0, 1);
        x.add_real(1, 3, 3);
        assert_eq!(x.degree(0), 3);
        assert_eq!(x.degree(3), 3);
        assert_eq!(x.fake_total(), 1);
        assert!(!x.sparsity_at_least(1));
        x.add_real(0, 1, 3);
        x.add_real(2, 3, 3);
        assert!(x.sparsity_at_least(3));
    }
}
