//! Brute-force ground truth for small primes.
//!
//! None of this uses minimal pairs or fraction representations:
//!
//! * [`enumerate_valid_walks`] visits every valid walk and scores it by the
//!   size of its partition; [`max_size_walk`] keeps the best.
//! * [`longest_walk_dp`] maximises edge count with a dynamic program over
//!   `(label, residue)` states and counts optimal walks exactly.
//! * [`exhaustive_partition_search`] filters every partition up to a size cap
//!   through the hook-length and part definitions.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::modarith::is_prime;
use crate::partitions::{partition_count, partitions_of, Partition};
use crate::sweep;
use crate::{Error, Result};

/// Largest prime whose valid walks are enumerated exhaustively.
pub const WALK_ENUMERATION_MAX_PRIME: u64 = 9;
/// Largest prime accepted by the longest-walk dynamic program.
pub const LONGEST_WALK_DP_MAX_PRIME: u64 = 500;
/// Ceiling on the number of partitions [`exhaustive_partition_search`] visits.
pub const PARTITION_SEARCH_BUDGET: u128 = 10_000_000;

/// A valid walk, as edge counts per label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCandidate {
    /// `m[k]` edges labelled `k + 1`.
    pub m: Vec<u64>,
    pub length: u64,
    /// Size of the aligned-abacus partition the walk describes.
    pub size: u64,
}

fn require_prime_within(p: u64, cap: u64, what: &'static str) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p > cap {
        return Err(Error::CapExceeded {
            what,
            requested: p as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

struct Search<'a, V> {
    p: u64,
    m: Vec<u64>,
    visitor: &'a mut V,
    visited: u64,
}

impl<V: FnMut(&WalkCandidate)> Search<'_, V> {
    /// At `residue` with running label sum `running`, about to choose how many
    /// edges labelled `label` to take. Each row labelled `i` adds `p − i`
    /// parts equal to the running sum after the step.
    fn descend(&mut self, label: u64, residue: u64, running: u64, size: u64, length: u64) {
        let p = self.p;
        if label == p {
            let candidate = WalkCandidate {
                m: self.m.clone(),
                length,
                size,
            };
            (self.visitor)(&candidate);
            self.visited += 1;
            return;
        }
        let (mut residue, mut running, mut size, mut length) = (residue, running, size, length);
        let mut taken = 0;
        loop {
            self.m.push(taken);
            self.descend(label + 1, residue, running, size, length);
            self.m.pop();
            let next = (residue + label) % p;
            if next == 0 {
                break;
            }
            residue = next;
            running += label;
            size += (p - label) * running;
            length += 1;
            taken += 1;
        }
    }
}

fn enumerate_from<V: FnMut(&WalkCandidate)>(p: u64, prefix: &[u64], visitor: &mut V) -> u64 {
    let mut residue = 0;
    let mut running = 0;
    let mut size = 0;
    let mut length = 0;
    for (k, &count) in prefix.iter().enumerate() {
        let label = k as u64 + 1;
        for _ in 0..count {
            residue = (residue + label) % p;
            running += label;
            size += (p - label) * running;
            length += 1;
        }
    }
    let mut search = Search {
        p,
        m: prefix.to_vec(),
        visitor,
        visited: 0,
    };
    search.descend(prefix.len() as u64 + 1, residue, running, size, length);
    search.visited
}

/// Visits every valid walk on the residue graph mod `p` (including the empty
/// walk) and returns how many there were.
pub fn enumerate_valid_walks(p: u64, mut visitor: impl FnMut(&WalkCandidate)) -> Result<u64> {
    require_prime_within(p, WALK_ENUMERATION_MAX_PRIME, "walk enumeration prime")?;
    Ok(enumerate_from(p, &[], &mut visitor))
}

#[derive(Debug, Clone, Default)]
struct Leaders {
    by_size: Option<WalkCandidate>,
    size_ties: u64,
    by_length: Option<WalkCandidate>,
    length_ties: u64,
}

impl Leaders {
    fn offer(&mut self, candidate: &WalkCandidate) {
        match &self.by_size {
            Some(best) if best.size > candidate.size => {}
            Some(best) if best.size == candidate.size => self.size_ties += 1,
            _ => {
                self.by_size = Some(candidate.clone());
                self.size_ties = 1;
            }
        }
        match &self.by_length {
            Some(best) if best.length > candidate.length => {}
            Some(best) if best.length == candidate.length => self.length_ties += 1,
            _ => {
                self.by_length = Some(candidate.clone());
                self.length_ties = 1;
            }
        }
    }

    fn merge(mut self, other: Leaders) -> Leaders {
        if let Some(candidate) = other.by_size {
            match &self.by_size {
                Some(best) if best.size > candidate.size => {}
                Some(best) if best.size == candidate.size => self.size_ties += other.size_ties,
                _ => {
                    self.by_size = Some(candidate);
                    self.size_ties = other.size_ties;
                }
            }
        }
        if let Some(candidate) = other.by_length {
            match &self.by_length {
                Some(best) if best.length > candidate.length => {}
                Some(best) if best.length == candidate.length => {
                    self.length_ties += other.length_ties
                }
                _ => {
                    self.by_length = Some(candidate);
                    self.length_ties = other.length_ties;
                }
            }
        }
        self
    }
}

/// The valid walk of largest partition size.
///
/// Fails unless that walk is the unique size maximiser, the unique length
/// maximiser, and the same walk in both senses. Branches on the label-1 count
/// are explored independently.
pub fn max_size_walk(p: u64) -> Result<WalkCandidate> {
    require_prime_within(p, WALK_ENUMERATION_MAX_PRIME, "walk enumeration prime")?;
    let first_counts: Vec<u64> = (0..p).collect();
    let leaders = sweep::map_ordered(&first_counts, sweep::default_workers(), |&m1| {
        let mut leaders = Leaders::default();
        enumerate_from(p, &[m1], &mut |candidate| leaders.offer(candidate));
        leaders
    })
    .into_iter()
    .fold(Leaders::default(), Leaders::merge);

    let best = leaders.by_size.expect("the empty walk is always valid");
    let longest = leaders.by_length.expect("the empty walk is always valid");
    if leaders.size_ties != 1 {
        return Err(Error::NonUniqueMaximum {
            p,
            detail: format!("{} walks reach size {}", leaders.size_ties, best.size),
        });
    }
    if leaders.length_ties != 1 {
        return Err(Error::NonUniqueMaximum {
            p,
            detail: format!(
                "{} walks reach length {}",
                leaders.length_ties, longest.length
            ),
        });
    }
    if best != longest {
        return Err(Error::invariant(
            p,
            format!(
                "largest walk {:?} differs from longest walk {:?}",
                best.m, longest.m
            ),
        ));
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestWalk {
    pub length: u64,
    /// Number of distinct valid walks of maximal length.
    pub count: BigUint,
    pub witness: Vec<u64>,
}

/// Longest valid walk by dynamic programming over `(label, residue)`.
///
/// `best[i][v]` is the most edges obtainable from residue `v` using labels
/// `i..p`. Along label `i` the residues form the cycle `u_j = j·i mod p`, and
/// from `u_j` one may advance to any `u_t` with `j ≤ t ≤ p − 1` (stopping
/// before 0 comes round again), gaining `t − j` edges. So
/// `best[i][u_j] = max_{t ≥ j} (t + best[i+1][u_t]) − j`, a suffix maximum,
/// and each label costs `O(p)`.
///
/// Fails with [`Error::NonUniqueMaximum`] when more than one walk is longest.
pub fn longest_walk_dp(p: u64) -> Result<LongestWalk> {
    let result = longest_walk_table(p)?;
    if !result.count.is_one() {
        return Err(Error::NonUniqueMaximum {
            p,
            detail: format!("{} walks of length {}", result.count, result.length),
        });
    }
    Ok(result)
}

/// [`longest_walk_dp`] without the uniqueness requirement.
pub fn longest_walk_table(p: u64) -> Result<LongestWalk> {
    require_prime_within(p, LONGEST_WALK_DP_MAX_PRIME, "longest-walk prime")?;
    let n = p as usize;
    let mut best_next = vec![0u64; n];
    let mut count_next = vec![BigUint::one(); n];
    // choice[i - 1][v]: edges labelled i taken from residue v on an optimal walk
    let mut choice = vec![vec![0u64; n]; n - 1];

    for label in (1..p).rev() {
        let mut best = vec![0u64; n];
        let mut count = vec![BigUint::zero(); n];
        let mut suffix_value = 0u64;
        let mut suffix_count = BigUint::zero();
        let mut suffix_arg = 0u64;
        for j in (0..p).rev() {
            let u = (j * label % p) as usize;
            let value = j + best_next[u];
            if j == p - 1 || value > suffix_value {
                suffix_value = value;
                suffix_count = count_next[u].clone();
                suffix_arg = j;
            } else if value == suffix_value {
                suffix_count += &count_next[u];
                suffix_arg = j;
            }
            best[u] = suffix_value - j;
            count[u] = suffix_count.clone();
            choice[(label - 1) as usize][u] = suffix_arg - j;
        }
        best_next = best;
        count_next = count;
    }

    let mut witness = Vec::with_capacity(n - 1);
    let mut residue = 0u64;
    for label in 1..p {
        let k = choice[(label - 1) as usize][residue as usize];
        witness.push(k);
        residue = (residue + k * label) % p;
    }
    Ok(LongestWalk {
        length: best_next[0],
        count: count_next[0].clone(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSearch {
    pub best: Partition,
    /// Partitions examined, over all sizes up to the cap.
    pub examined: u128,
}

/// Largest p-core p'-partition of size at most `size_cap`, by enumerating
/// every partition of every `n ≤ size_cap`.
pub fn exhaustive_partition_search(p: u64, size_cap: u64) -> Result<PartitionSearch> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let total: u128 = (0..=size_cap).map(partition_count).sum();
    if total > PARTITION_SEARCH_BUDGET {
        return Err(Error::CapExceeded {
            what: "partition search budget",
            requested: total,
            cap: PARTITION_SEARCH_BUDGET,
        });
    }
    let mut best: Option<Partition> = None;
    let mut ties = 0u64;
    for n in (0..=size_cap).rev() {
        for lambda in partitions_of(n) {
            if lambda.is_p_regular(p) && lambda.is_p_core(p) {
                best.get_or_insert(lambda);
                ties += 1;
            }
        }
        if best.is_some() {
            break;
        }
    }
    let best = best.expect("the empty partition always qualifies");
    if ties != 1 {
        return Err(Error::NonUniqueMaximum {
            p,
            detail: format!("{ties} partitions of size {}", best.size()),
        });
    }
    Ok(PartitionSearch {
        best,
        examined: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walks_for_three() {
        let mut seen = Vec::new();
        let count = enumerate_valid_walks(3, |c| seen.push(c.clone())).unwrap();
        assert_eq!(count as usize, seen.len());
        let find = |m: &[u64]| seen.iter().find(|c| c.m == m).cloned().unwrap();
        assert_eq!(find(&[2, 1]).size, 10);
        assert_eq!(find(&[2, 0]).size, 6);
        assert_eq!(find(&[0, 0]).size, 0);
    }

    #[test]
    fn walks_for_two() {
        let mut seen = Vec::new();
        enumerate_valid_walks(2, |c| seen.push(c.clone())).unwrap();
        assert_eq!(seen.len(), 2);
        let best = max_size_walk(2).unwrap();
        assert_eq!(best.m, vec![1]);
        assert_eq!(best.size, 1);
    }

    #[test]
    fn walk_caps() {
        assert!(matches!(
            enumerate_valid_walks(11, |_| {}),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(max_size_walk(23), Err(Error::CapExceeded { .. })));
        assert!(matches!(
            longest_walk_dp(503),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_valid_walks(4, |_| {}).is_err());
    }

    #[test]
    fn maxima_small_primes() {
        let three = max_size_walk(3).unwrap();
        assert_eq!((three.m.as_slice(), three.size), (&[2u64, 1][..], 10));
        let five = max_size_walk(5).unwrap();
        assert_eq!((five.m.as_slice(), five.size), (&[4u64, 2, 2, 3][..], 198));
    }

    #[test]
    fn dp_small_primes() {
        let three = longest_walk_dp(3).unwrap();
        assert_eq!(three.length, 3);
        assert_eq!(three.witness, vec![2, 1]);
        let five = longest_walk_dp(5).unwrap();
        assert_eq!(five.length, 11);
        assert_eq!(five.witness, vec![4, 2, 2, 3]);
    }

    #[test]
    fn dp_matches_enumeration() {
        for p in [2u64, 3, 5, 7] {
            let mut longest = 0;
            let mut ties = 0u64;
            enumerate_valid_walks(p, |c| {
                if c.length > longest {
                    longest = c.length;
                    ties = 1;
                } else if c.length == longest {
                    ties += 1;
                }
            })
            .unwrap();
            let table = longest_walk_table(p).unwrap();
            assert_eq!(table.length, longest, "p = {p}");
            assert_eq!(table.count, BigUint::from(ties), "p = {p}");
        }
    }

    #[test]
    fn partition_search_examples() {
        let three = exhaustive_partition_search(3, 16).unwrap();
        assert_eq!(three.best.parts(), &[4, 2, 2, 1, 1]);
        let two = exhaustive_partition_search(2, 3).unwrap();
        assert_eq!(two.best.parts(), &[1]);
        let capped = exhaustive_partition_search(3, 9).unwrap();
        assert_eq!(capped.best.parts(), &[4, 2, 1, 1]);
        assert!(matches!(
            exhaustive_partition_search(5, 440),
            Err(Error::CapExceeded { .. })
        ));
    }
}
