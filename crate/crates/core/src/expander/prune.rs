use super::spectral;

/// Largest remaining vertex count searched exhaustively for a low
/// conductance cut.
pub const EXACT_LIMIT: usize = 18;

/// Peel low-conductance pieces off the graph `w` until every cut of the
/// rest has conductance at least `phi_x / 6`. Vertices left without any
/// edge are pruned too. Returns the pruned indices in sorted order.
pub fn prune(w: &[Vec<i64>], phi_x: f64) -> Vec<usize> {
    let target = phi_x / 6.0;
    let mut alive: Vec<usize> = (0..w.len()).collect();
    let mut pruned = Vec::new();
    loop {
        let sub: Vec<Vec<i64>> = alive.iter().map(|&i| alive.iter().map(|&j| w[i][j]).collect()).collect();
        let isolated: Vec<usize> = (0..alive.len()).filter(|&k| sub[k].iter().all(|&x| x == 0)).collect();
        if !isolated.is_empty() {
            move_out(&mut alive, &mut pruned, &isolated);
            continue;
        }
        if alive.len() < 2 {
            break;
        }
        let found = if alive.len() <= EXACT_LIMIT { min_conductance(&sub) } else { spectral::sweep_cut(&sub) };
        match found {
            Some((side, c)) if c < target => {
                let vol = |s: &[usize]| s.iter().map(|&k| sub[k].iter().sum::<i64>()).sum::<i64>();
                let rest: Vec<usize> = (0..alive.len()).filter(|k| !side.contains(k)).collect();
                let (vs, vr) = (vol(&side), vol(&rest));
                let smaller = if vs < vr || (vs == vr && !side.contains(&0)) { side } else { rest };
                move_out(&mut alive, &mut pruned, &smaller);
            }
            _ => break,
        }
    }
    pruned.sort_unstable();
    pruned
}

fn move_out(alive: &mut Vec<usize>, pruned: &mut Vec<usize>, local: &[usize]) {
    pruned.extend(local.iter().map(|&k| alive[k]));
    let mut k = 0;
    alive.retain(|_| {
        let keep = !local.contains(&k);
        k += 1;
        keep
    });
}

/// Exact minimum-conductance cut by enumeration.
pub fn min_conductance(w: &[Vec<i64>]) -> Option<(Vec<usize>, f64)> {
    let t = w.len();
    if t < 2 {
        return None;
    }
    assert!(t <= 24, "exhaustive conductance needs at most 24 vertices");
    let vol: Vec<i64> = w.iter().map(|r| r.iter().sum()).collect();
    let total: i64 = vol.iter().sum();
    let mut best: Option<(u32, f64)> = None;
    for mask in 1u32..(1 << (t - 1)) {
        let mut cross = 0;
        let mut vs = 0;
        for i in 0..t {
            if mask >> i & 1 == 1 {
                vs += vol[i];
                for j in 0..t {
                    if mask >> j & 1 == 0 {
                        cross += w[i][j];
                    }
                }
            }
        }
        let denom = vs.min(total - vs);
        if denom == 0 {
            continue;
        }
        let c = cross as f64 / denom as f64;
        if best.map_or(true, |(_, b)| c < b) {
            best = Some((mask, c));
        }
    }
    best.map(|(mask, c)| ((0..t).filter(|i| mask >> i & 1 == 1).collect(), c))
}
