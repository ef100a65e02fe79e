//! Exact and heuristic minimization of falsely implied paths, linear
//! extension diameter, poset dimension, and the upper-bound checks.

mod dimension;
mod exact;
mod heuristic;
mod report;

pub use dimension::{dimension_exact, Realizer};
pub use exact::{dimension_report, led_exact, led_report, minfip_exact, solve_exact, LedResult};
pub use heuristic::minfip_heuristic;
pub use report::{verify_bounds, BoundCheck, Method, SolveReport};

use crate::bits;
use crate::dag::Reachability;
use crate::drawing::TopoOrder;

/// Default largest dimension `dimension_exact` searches for.
pub const DEFAULT_MAX_DIM: usize = 8;

/// Bit `k` is set iff `l` places the first vertex of incomparable pair `k`
/// before the second. The distance of two extensions is the popcount of the
/// XOR of their signatures.
pub(crate) fn signature(l: &TopoOrder, r: &Reachability) -> Vec<u64> {
    let pairs = r.inc_pairs();
    let mut sig = vec![0u64; bits::words_for(pairs.len())];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if l.precedes(u, v) {
            bits::set(&mut sig, k);
        }
    }
    sig
}

#[inline]
pub(crate) fn xor_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones() as usize).sum()
}
