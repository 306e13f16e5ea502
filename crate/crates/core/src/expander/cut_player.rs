use super::spectral;
use super::witness::WitnessGraph;

/// Largest terminal count searched exhaustively.
pub const EXACT_LIMIT: usize = 20;

/// A bisection of the witness vertices `(A, B)` as sorted index lists.
///
/// Up to [`EXACT_LIMIT`] vertices this is the bisection of least crossing
/// weight in `x`, ties to the lexicographically smallest `A`. Above that it
/// splits a spectral order at its median. Costs no queries.
pub fn cut_player(x: &WitnessGraph) -> (Vec<usize>, Vec<usize>) {
    let t = x.len();
    assert!(t % 2 == 0 && t >= 2, "cut player needs an even number of terminals");
    let w = x.weights(true);
    let a = if t <= EXACT_LIMIT { exact(&w) } else { spectral_split(&w) };
    let b = (0..t).filter(|i| !a.contains(i)).collect();
    (a, b)
}

fn exact(w: &[Vec<i64>]) -> Vec<usize> {
    let t = w.len();
    let half = t / 2;
    let full: u32 = (1 << t) - 1;
    let mut best: Option<(i64, Vec<usize>)> = None;
    // Gosper's hack walks every mask with `half` bits in increasing order.
    let mut mask: u32 = (1 << half) - 1;
    while mask <= full {
        let members: Vec<usize> = (0..t).filter(|i| mask >> i & 1 == 1).collect();
        if members[0] == 0 {
            let mut cross = 0;
            for &i in &members {
                for (j, wij) in w[i].iter().enumerate() {
                    if mask >> j & 1 == 0 {
                        cross += wij;
                    }
                }
            }
            let better = match &best {
                None => true,
                Some((c, a)) => cross < *c || (cross == *c && members < *a),
            };
            if better {
                best = Some((cross, members));
            }
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        if r == 0 || r > full {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    best.expect("at least one bisection").1
}

fn spectral_split(w: &[Vec<i64>]) -> Vec<usize> {
    let ord = spectral::order(&spectral::fiedler(w));
    let mut a = ord[..w.len() / 2].to_vec();
    a.sort_unstable();
    a
}
