use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{invalid, Error, Result};

/// Hidden simple undirected graph with integer capacities in `[1, W]`.
///
/// Algorithms never see this type directly; they go through a
/// [`CutOracle`](super::CutOracle). Reference checks in the harness read it
/// explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInstance {
    n: usize,
    edges: Vec<(usize, usize, i64)>,
    adj: Vec<Vec<(usize, i64)>>,
    max_capacity: i64,
    words: usize,
    /// One bitset adjacency matrix per distinct capacity value.
    layers: Vec<(i64, Vec<u64>)>,
}

impl GraphInstance {
    /// Builds a graph from an edge list. Self-loops, duplicate pairs,
    /// out-of-range ids and capacities below 1 are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("graph must have at least one vertex"));
        }
        let mut map: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            if w < 1 {
                return Err(invalid(format!("capacity {w} on ({u},{v}) is below 1")));
            }
            let key = (u.min(v), u.max(v));
            if map.insert(key, w).is_some() {
                return Err(invalid(format!("duplicate edge ({},{})", key.0, key.1)));
            }
        }
        let edges: Vec<_> = map.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let words = n.div_ceil(64);
        let mut by_weight: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
        for &(u, v, w) in &edges {
            let rows = by_weight.entry(w).or_insert_with(|| vec![0; n * words]);
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        let max_capacity = edges.iter().map(|e| e.2).max().unwrap_or(1);
        Ok(Self { n, edges, adj, max_capacity, words, layers: by_weight.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Largest edge capacity `W` (1 for an edgeless graph).
    pub fn max_capacity(&self) -> i64 {
        self.max_capacity
    }

    /// Edges as `(u, v, c)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, i64)] {
        &self.adj[v]
    }

    pub fn capacity(&self, u: usize, v: usize) -> i64 {
        match self.adj[u].binary_search_by_key(&v, |e| e.0) {
            Ok(i) => self.adj[u][i].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self, v: usize) -> i64 {
        self.adj[v].iter().map(|e| e.1).sum()
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Cut value of the set given as a bitset of `words()` words.
    pub(crate) fn cut_of_bits(&self, bits: &[u64]) -> i64 {
        let size: u32 = bits.iter().map(|w| w.count_ones()).sum();
        let inside_count = size as usize;
        // Sum over the smaller side; the cut is symmetric.
        let use_complement = inside_count * 2 > self.n;
        let mut total: i64 = 0;
        for (w, rows) in &self.layers {
            let mut count: i64 = 0;
            for v in 0..self.n {
                let inside = bits[v / 64] >> (v % 64) & 1 == 1;
                if inside == use_complement {
                    continue;
                }
                let row = &rows[v * self.words..(v + 1) * self.words];
                for (r, b) in row.iter().zip(bits) {
                    let outside = if use_complement { *b } else { !*b };
                    count += (r & outside).count_ones() as i64;
                }
            }
            total = total
                .checked_add(count.checked_mul(*w).expect("cut value overflow"))
                .expect("cut value overflow");
        }
        total
    }

    /// Cut value computed directly from the edge list (no accounting).
    pub fn cut_value(&self, set: &[usize]) -> i64 {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        self.edges.iter().filter(|e| inside[e.0] != inside[e.1]).map(|e| e.2).sum()
    }

    /// Parses `n m` followed by `m` lines of `u v [w]`. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let nums = parse_ints(header, hline)?;
        if nums.len() != 2 {
            return Err(Error::Parse { line: hline, msg: "header must be `n m`".into() });
        }
        let (n, m) = (to_usize(nums[0], hline)?, to_usize(nums[1], hline)?);
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let f = parse_ints(l, line)?;
            let w = match f.len() {
                2 => 1,
                3 => f[2],
                _ => return Err(Error::Parse { line, msg: "expected `u v [w]`".into() }),
            };
            edges.push((to_usize(f[0], line)?, to_usize(f[1], line)?, w));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Self::new(n, edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Serializes in the load format; unit capacities omit the weight column.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v, w) in &self.edges {
            if w == 1 {
                let _ = writeln!(out, "{u} {v}");
            } else {
                let _ = writeln!(out, "{u} {v} {w}");
            }
        }
        out
    }
}

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|e| Error::Parse { line: lineno, msg: format!("`{t}`: {e}") }))
        .collect()
}

fn to_usize(x: i64, line: usize) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Parse { line, msg: format!("negative value {x}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_simple_input() {
        assert!(GraphInstance::new(3, [(0, 0, 1)]).is_err());
        assert!(GraphInstance::new(3, [(0, 1, 1), (1, 0, 1)]).is_err());
        assert!(GraphInstance::new(3, [(0, 3, 1)]).is_err());
        assert!(GraphInstance::new(3, [(0, 1, 0)]).is_err());
    }

    #[test]
    fn parse_roundtrip_and_defaults() {
        let g = GraphInstance::parse("4 3\n0 1\n1 2 5\n\n# c\n2 3\n").unwrap();
        assert_eq!(g.capacity(1, 2), 5);
        assert_eq!(g.capacity(0, 1), 1);
        assert_eq!(g.max_capacity(), 5);
        assert_eq!(GraphInstance::parse(&g.to_text()).unwrap(), g);
        assert!(GraphInstance::parse("3 2\n0 1\n").is_err());
        assert!(GraphInstance::parse("3 1\n0 1 2 3\n").is_err());
    }

    #[test]
    fn bitset_cut_matches_edge_scan() {
        let g = GraphInstance::new(70, (0..69).map(|i| (i, i + 1, 1 + (i as i64 % 3)))).unwrap();
        let set: Vec<usize> = (0..70).filter(|v| v % 3 == 0).collect();
        let mut bits = vec![0u64; g.words()];
        for &v in &set {
            bits[v / 64] |= 1 << (v % 64);
        }
        assert_eq!(g.cut_of_bits(&bits), g.cut_value(&set));
    }
}
