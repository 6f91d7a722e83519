//! Instance generators.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Point, TerminalSet};

/// `n` terminals `(i, π(i))` for a random permutation `π` of `1..=n`.
pub fn generate_random(n: usize, seed: u64) -> TerminalSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ys: Vec<i64> = (1..=n as i64).collect();
    ys.shuffle(&mut rng);
    let pts = ys.into_iter().enumerate().map(|(i, y)| Point::new(i as i64 + 1, y)).collect();
    TerminalSet::new(pts).expect("a permutation has distinct coordinates")
}

/// One crossing configuration whose origin staircase holds `k` interior terminals.
///
/// Terminals on unit spacing: `(0, 0)`, `(1, k+2)`, `(1+i, k+2-i)` for
/// `i = 1..=k`, `(k+2, 1)`. For `k = 2` the optimum is 32 and the
/// empty-rectangle network has length 34.
pub fn generate_staircase_family(k: usize) -> TerminalSet {
    let k = k as i64;
    let mut pts = vec![Point::new(0, 0), Point::new(1, k + 2)];
    pts.extend((1..=k).map(|i| Point::new(1 + i, k + 2 - i)));
    pts.push(Point::new(k + 2, 1));
    TerminalSet::new(pts).expect("family members are in general position")
}
