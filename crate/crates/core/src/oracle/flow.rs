use std::collections::BTreeMap;

/// Integral antisymmetric flow over a vertex universe `0..n`.
///
/// Only nonzero entries are stored; `get(u, v) == -get(v, u)` always.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    source: usize,
    sink: usize,
    value: i64,
    out: Vec<BTreeMap<usize, i64>>,
}

impl Flow {
    pub fn zero(n: usize, source: usize, sink: usize) -> Self {
        assert!(source < n && sink < n, "terminal out of range");
        Self { source, sink, value: 0, out: vec![BTreeMap::new(); n] }
    }

    pub fn universe(&self) -> usize {
        self.out.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Net flow out of the source.
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn get(&self, u: usize, v: usize) -> i64 {
        self.out[u].get(&v).copied().unwrap_or(0)
    }

    /// Nonzero entries `(v, f(u, v))` leaving `u`, sorted by `v`.
    pub fn entries(&self, u: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.out[u].iter().map(|(&v, &f)| (v, f))
    }

    /// Sends `amount` from `u` to `v`, keeping antisymmetry.
    pub fn push(&mut self, u: usize, v: usize, amount: i64) {
        assert_ne!(u, v, "flow on a self-pair");
        bump(&mut self.out[u], v, amount);
        bump(&mut self.out[v], u, -amount);
        if u == self.source {
            self.value += amount;
        }
        if v == self.source {
            self.value -= amount;
        }
    }

    /// `Σ f(a, b)` over `a ∈ a_set`, `b ∈ b_set`; `b_set` must be sorted.
    pub fn sum_between(&self, a_set: &[usize], b_set: &[usize]) -> i64 {
        let mut total = 0;
        for &a in a_set {
            for (&b, &f) in &self.out[a] {
                if b_set.binary_search(&b).is_ok() {
                    total += f;
                }
            }
        }
        total
    }

    /// Net outflow of `v`.
    pub fn excess_out(&self, v: usize) -> i64 {
        self.out[v].values().sum()
    }

    /// Checks antisymmetry, conservation and capacity against `cap`.
    /// Returns a description of the first violation.
    pub fn validate(&self, cap: impl Fn(usize, usize) -> i64) -> std::result::Result<(), String> {
        for u in 0..self.out.len() {
            for (&v, &f) in &self.out[u] {
                if self.get(v, u) != -f {
                    return Err(format!("antisymmetry broken on ({u},{v})"));
                }
                if f > cap(u, v) {
                    return Err(format!("flow {f} exceeds capacity {} on ({u},{v})", cap(u, v)));
                }
            }
            if u != self.source && u != self.sink && self.excess_out(u) != 0 {
                return Err(format!("conservation broken at {u}"));
            }
        }
        if self.excess_out(self.source) != self.value {
            return Err("value differs from net source outflow".into());
        }
        Ok(())
    }
}

fn bump(map: &mut BTreeMap<usize, i64>, key: usize, amount: i64) {
    let e = map.entry(key).or_insert(0);
    *e = e.checked_add(amount).expect("flow overflow");
    if *e == 0 {
        map.remove(&key);
    }
}
