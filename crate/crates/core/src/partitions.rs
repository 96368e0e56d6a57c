//! Integer partitions, hook lengths and the p-core / p'-partition predicates.
//!
//! These are the definitions everything else is checked against, so they are
//! computed directly from the Young diagram and never through the abacus.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Sorts `parts` decreasingly and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Self {
        parts.retain(|&part| part > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |λ|, the sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0) as usize;
        let mut columns = vec![0u64; width];
        for &part in &self.parts {
            for column in &mut columns[..part as usize] {
                *column += 1;
            }
        }
        Partition { parts: columns }
    }

    /// One hook length per cell, row by row.
    pub fn hook_lengths(&self) -> Vec<u64> {
        let conjugate = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size() as usize);
        for (row, &part) in self.parts.iter().enumerate() {
            for (col, &height) in conjugate.parts[..part as usize].iter().enumerate() {
                let arm = part - col as u64 - 1;
                let leg = height - row as u64 - 1;
                hooks.push(arm + leg + 1);
            }
        }
        hooks
    }

    pub fn is_p_core(&self, p: u64) -> bool {
        self.hook_lengths().iter().all(|h| h % p != 0)
    }

    /// No part divisible by `p` (a p'-partition).
    pub fn is_p_regular(&self, p: u64) -> bool {
        self.parts.iter().all(|part| part % p != 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, part) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|token| {
                token
                    .trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidPartition(format!("{token:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
#[derive(Debug, Clone)]
pub struct PartitionsOf {
    current: Option<Vec<u64>>,
}

pub fn partitions_of(n: u64) -> PartitionsOf {
    let first = if n == 0 { Vec::new() } else { vec![n] };
    PartitionsOf {
        current: Some(first),
    }
}

impl Iterator for PartitionsOf {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        let item = Partition {
            parts: current.clone(),
        };
        // Find the rightmost part > 1, decrement it, and refill the tail
        // greedily with parts no larger than the decremented value.
        let mut parts = current;
        let mut freed = 0u64;
        while parts.last() == Some(&1) {
            parts.pop();
            freed += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let cap = *last;
            freed += 1;
            while freed > 0 {
                let take = freed.min(cap);
                parts.push(take);
                freed -= take;
            }
            self.current = Some(parts);
        }
        Some(item)
    }
}

/// Number of partitions of `n`, by Euler's pentagonal recurrence.
pub fn partition_count(n: u64) -> u128 {
    let n = n as usize;
    let mut table = vec![0u128; n + 1];
    table[0] = 1;
    for m in 1..=n {
        let mut total: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * table[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * table[m - g2] as i128;
            }
        }
        table[m] = total as u128;
    }
    table[n]
}
