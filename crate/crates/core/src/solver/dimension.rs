use crate::bits;
use crate::dag::Reachability;
use crate::drawing::TopoOrder;
use crate::error::{Error, Result};
use crate::linext::ExtensionSet;

/// Linear extensions whose intersection is the poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realizer {
    members: Vec<TopoOrder>,
}

impl Realizer {
    pub fn members(&self) -> &[TopoOrder] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    /// Every member is an extension of `r`, and every incomparable pair is
    /// ordered both ways by some members.
    pub fn realizes(&self, r: &Reachability) -> bool {
        if self.members.is_empty() || self.members.iter().any(|m| m.check_poset(r).is_err()) {
            return false;
        }
        r.inc_pairs().iter().all(|&(u, v)| {
            self.members.iter().any(|m| m.precedes(u, v))
                && self.members.iter().any(|m| m.precedes(v, u))
        })
    }
}

// Ground set of the cover problem: two elements per incomparable pair k,
// bit 2k ("second before first") and bit 2k+1 ("first before second"). Each
// extension covers exactly one of the two. Pair bits never straddle a word.
fn coverage(l: &TopoOrder, r: &Reachability) -> Vec<u64> {
    let pairs = r.inc_pairs();
    let mut cov = vec![0u64; bits::words_for(2 * pairs.len())];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        bits::set(&mut cov, 2 * k + usize::from(l.precedes(u, v)));
    }
    cov
}

const LOW_BITS: u64 = 0x5555_5555_5555_5555;

/// Some pair has both of its elements uncovered, so at least two more
/// extensions are needed.
fn needs_two(uncovered: &[u64]) -> bool {
    uncovered.iter().any(|&w| w & (w >> 1) & LOW_BITS != 0)
}

struct CoverSearch<'a> {
    covs: &'a [Vec<u64>],
    coverers: Vec<Vec<usize>>,
}

impl CoverSearch<'_> {
    fn run(&self, uncovered: &[u64], depth: usize, chosen: &mut Vec<usize>) -> bool {
        if bits::is_zero(uncovered) {
            return true;
        }
        if depth == 0 || (depth == 1 && needs_two(uncovered)) {
            return false;
        }
        // Branch on the uncovered element with the fewest covering extensions.
        let elem = bits::ones(uncovered).min_by_key(|&e| self.coverers[e].len()).unwrap();
        let mut rest = vec![0u64; uncovered.len()];
        for &c in &self.coverers[elem] {
            for ((r, u), cv) in rest.iter_mut().zip(uncovered).zip(&self.covs[c]) {
                *r = u & !cv;
            }
            chosen.push(c);
            if self.run(&rest, depth - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn greedy_cover(covs: &[Vec<u64>], full: &[u64]) -> Vec<usize> {
    let mut uncovered = full.to_vec();
    let mut chosen = Vec::new();
    while !bits::is_zero(&uncovered) {
        let (best, _) = covs
            .iter()
            .enumerate()
            .map(|(i, c)| (i, uncovered.iter().zip(c).map(|(u, c)| (u & c).count_ones()).sum::<u32>()))
            .max_by_key(|&(i, gain)| (gain, std::cmp::Reverse(i)))
            .unwrap();
        for (u, c) in uncovered.iter_mut().zip(&covs[best]) {
            *u &= !c;
        }
        chosen.push(best);
    }
    chosen
}

/// Smallest realizer drawn from a complete extension set, found as a minimum
/// set cover of the ordered incomparable pairs. Sizes are tried upward from
/// 2; a greedy cover bounds the search from above.
pub fn dimension_exact(r: &Reachability, e: &ExtensionSet, max_dim: usize) -> Result<Realizer> {
    if e.is_truncated() {
        return Err(Error::TruncatedInput);
    }
    let ext = e.extensions();
    let inc = r.inc_pairs().len();
    if inc == 0 {
        // A single vertex (or none) is its own linear order; max_dim >= 1.
        return Ok(Realizer { members: vec![ext[0].clone()] });
    }
    let covs: Vec<Vec<u64>> = ext.iter().map(|l| coverage(l, r)).collect();
    let mut full = vec![0u64; bits::words_for(2 * inc)];
    for b in 0..2 * inc {
        bits::set(&mut full, b);
    }
    let mut coverers = vec![Vec::new(); 2 * inc];
    for (i, c) in covs.iter().enumerate() {
        for b in bits::ones(c) {
            coverers[b].push(i);
        }
    }
    let greedy = greedy_cover(&covs, &full);
    let search = CoverSearch { covs: &covs, coverers };

    let finish = |mut idx: Vec<usize>| {
        idx.sort_unstable();
        Realizer { members: idx.into_iter().map(|i| ext[i].clone()).collect() }
    };
    for d in 2..greedy.len() {
        if d > max_dim {
            return Err(Error::DimExceedsMax { max_dim, lower_bound: d });
        }
        let mut chosen = Vec::new();
        if search.run(&full, d, &mut chosen) {
            return Ok(finish(chosen));
        }
    }
    // Every smaller size failed, so the greedy cover is optimal.
    if greedy.len() > max_dim {
        return Err(Error::DimExceedsMax { max_dim, lower_bound: greedy.len() });
    }
    Ok(finish(greedy))
}
