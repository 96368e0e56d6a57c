//! The p-abacus.
//!
//! Position `q` lies on runner `q mod p`, row `⌊q/p⌋ + 1`. Position 0 is always
//! a gap, and each bead contributes a part equal to the number of gaps before
//! it. A partition is a p-core exactly when every bead sits at the top of its
//! runner, and in that case the bead counts per runner determine it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::partitions::Partition;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbacusDisplay {
    p: u64,
    beads: BTreeSet<u64>,
}

impl AbacusDisplay {
    pub fn new(p: u64, beads: impl IntoIterator<Item = u64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidAbacus(format!("{p} runners")));
        }
        let beads: BTreeSet<u64> = beads.into_iter().collect();
        if beads.contains(&0) {
            return Err(Error::InvalidAbacus("position 0 must be a gap".into()));
        }
        Ok(AbacusDisplay { p, beads })
    }

    /// Canonical display with one bead per part: beads at `λ_i + N − i`, the
    /// first-column hook lengths.
    pub fn from_partition(lambda: &Partition, p: u64) -> Result<Self> {
        let n = lambda.len() as u64;
        let beads = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(k, &part)| part + n - (k as u64 + 1));
        AbacusDisplay::new(p, beads)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn beads(&self) -> impl Iterator<Item = u64> + '_ {
        self.beads.iter().copied()
    }

    fn has_bead(&self, q: u64) -> bool {
        self.beads.contains(&q)
    }

    pub fn to_partition(&self) -> Partition {
        let parts = self
            .beads
            .iter()
            .enumerate()
            .map(|(beads_before, &q)| q - beads_before as u64)
            .collect();
        Partition::from_unsorted(parts)
    }

    /// No bead has a gap directly above it.
    pub fn is_top_aligned(&self) -> bool {
        self.beads
            .iter()
            .all(|&q| q < self.p || self.has_bead(q - self.p))
    }

    /// No bead has a gap directly to its right within its row.
    pub fn is_right_aligned(&self) -> bool {
        self.beads
            .iter()
            .all(|&q| q % self.p == self.p - 1 || self.has_bead(q + 1))
    }

    pub fn bead_multiplicities(&self) -> Result<BeadMultiplicities> {
        if let Some(q) = self.beads.iter().find(|&&q| q % self.p == 0) {
            return Err(Error::InvalidAbacus(format!("bead on runner 0 at {q}")));
        }
        if !self.is_top_aligned() {
            return Err(Error::InvalidAbacus("display is not top-aligned".into()));
        }
        let mut b = vec![0u64; self.p as usize - 1];
        for &q in &self.beads {
            b[(q % self.p) as usize - 1] += 1;
        }
        Ok(BeadMultiplicities { p: self.p, b })
    }
}

/// Bead counts `(b_1, …, b_{p−1})` on runners `1..p` of a top-aligned display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeadMultiplicities {
    pub p: u64,
    pub b: Vec<u64>,
}

impl BeadMultiplicities {
    pub fn new(p: u64, b: Vec<u64>) -> Result<Self> {
        if p < 2 || b.len() as u64 != p - 1 {
            return Err(Error::InvalidMultiplicities(format!(
                "expected {} entries for p = {p}, got {}",
                p.saturating_sub(1),
                b.len()
            )));
        }
        Ok(BeadMultiplicities { p, b })
    }

    /// Size of the p-core with these bead multiplicities:
    ///
    /// `|λ| = −½(Σb_i)² + (p/2)Σb_i² + Σ(i − (p−1)/2)·b_i`
    ///
    /// evaluated as `2|λ|` in integers and halved exactly.
    pub fn size(&self) -> Result<BigInt> {
        let twice = match self.twice_size_narrow() {
            Some(v) => v,
            None => self.twice_size_wide(),
        };
        if twice.is_negative() || twice.is_odd() {
            return Err(Error::InvalidMultiplicities(format!(
                "2|λ| = {twice} is not a nonnegative even integer"
            )));
        }
        Ok(twice / 2)
    }

    /// Power sums in 128-bit arithmetic; `None` on overflow.
    fn twice_size_narrow(&self) -> Option<BigInt> {
        let p = self.p as i128;
        let mut sum: i128 = 0;
        let mut sum_sq: i128 = 0;
        let mut linear: i128 = 0;
        for (k, &b) in self.b.iter().enumerate() {
            let b = i128::from(b);
            let i = k as i128 + 1;
            sum = sum.checked_add(b)?;
            sum_sq = sum_sq.checked_add(b.checked_mul(b)?)?;
            linear = linear.checked_add((2 * i - (p - 1)).checked_mul(b)?)?;
        }
        let sq = sum.checked_mul(sum)?;
        let weighted = p.checked_mul(sum_sq)?;
        Some(BigInt::from(weighted) - BigInt::from(sq) + BigInt::from(linear))
    }

    fn twice_size_wide(&self) -> BigInt {
        let p = BigInt::from(self.p);
        let mut sum = BigInt::zero();
        let mut sum_sq = BigInt::zero();
        let mut linear = BigInt::zero();
        for (k, &b) in self.b.iter().enumerate() {
            let b = BigInt::from(b);
            let coeff = BigInt::from(2 * (k as i128 + 1) - (self.p as i128 - 1));
            sum_sq += &b * &b;
            linear += coeff * &b;
            sum += b;
        }
        &p * sum_sq - &sum * &sum + linear
    }
}
