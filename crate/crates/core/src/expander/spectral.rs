//! Deterministic spectral helpers on small dense weight matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ITERATIONS: usize = 200;
const SEED: u64 = 0x5eed_cafe;

/// Approximate second eigenvector of the normalized adjacency, scaled back
/// by `D^{-1/2}`, via power iteration from a fixed seed vector.
pub fn fiedler(w: &[Vec<i64>]) -> Vec<f64> {
    let t = w.len();
    let deg: Vec<f64> = w.iter().map(|row| (row.iter().sum::<i64>() as f64).max(1.0)).collect();
    let sq: Vec<f64> = deg.iter().map(|d| d.sqrt()).collect();
    let norm_top: f64 = deg.iter().sum::<f64>().sqrt();
    let top: Vec<f64> = sq.iter().map(|s| s / norm_top).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut y: Vec<f64> = (0..t).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for _ in 0..ITERATIONS {
        deflate(&mut y, &top);
        let mut next = vec![0.0; t];
        for i in 0..t {
            let mut acc = y[i];
            for j in 0..t {
                if w[i][j] != 0 {
                    acc += w[i][j] as f64 * y[j] / (sq[i] * sq[j]);
                }
            }
            next[i] = acc / 2.0;
        }
        let len = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len < 1e-300 {
            break;
        }
        y = next.into_iter().map(|x| x / len).collect();
    }
    deflate(&mut y, &top);
    y.iter().zip(&sq).map(|(a, s)| a / s).collect()
}

fn deflate(y: &mut [f64], top: &[f64]) {
    let dot: f64 = y.iter().zip(top).map(|(a, b)| a * b).sum();
    for (a, b) in y.iter_mut().zip(top) {
        *a -= dot * b;
    }
}

/// Vertex order by embedding value, ties by index.
pub fn order(x: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    idx
}

/// Best-conductance prefix of the spectral order. Returns the prefix and
/// its conductance; `None` when fewer than two vertices have any volume.
pub fn sweep_cut(w: &[Vec<i64>]) -> Option<(Vec<usize>, f64)> {
    let t = w.len();
    if t < 2 {
        return None;
    }
    let ord = order(&fiedler(w));
    let vol: Vec<i64> = w.iter().map(|r| r.iter().sum()).collect();
    let total: i64 = vol.iter().sum();
    let mut inside = vec![false; t];
    let (mut cross, mut vs) = (0i64, 0i64);
    let mut best: Option<(usize, f64)> = None;
    for (k, &v) in ord.iter().enumerate().take(t - 1) {
        inside[v] = true;
        vs += vol[v];
        for u in 0..t {
            if w[v][u] != 0 {
                cross += if inside[u] { -w[v][u] } else { w[v][u] };
            }
        }
        let denom = vs.min(total - vs);
        if denom == 0 {
            continue;
        }
        let c = cross as f64 / denom as f64;
        if best.map_or(true, |(_, b)| c < b) {
            best = Some((k + 1, c));
        }
    }
    best.map(|(k, c)| {
        let mut s = ord[..k].to_vec();
        s.sort_unstable();
        (s, c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_finds_the_bridge() {
        // Two triangles joined by one edge.
        let mut w = vec![vec![0; 6]; 6];
        for (i, j) in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)] {
            w[i][j] = 1;
            w[j][i] = 1;
        }
        let (s, c) = sweep_cut(&w).unwrap();
        assert!(s == vec![0, 1, 2] || s == vec![3, 4, 5]);
        assert!((c - 1.0 / 7.0).abs() < 1e-9);
    }
}
