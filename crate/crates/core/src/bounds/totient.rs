//! Exact partial sums of `φ(m)/m` against the linear lower bound
//! `Σ_{m≤n} φ(m)/m > (3/5)·n − 6`.
//!
//! `φ(m)/m = φ(rad m)/rad m`, so every term has a squarefree denominator
//! dividing `D = ∏_{q ≤ n_max} q`. Scaling by `D` turns the whole sweep into
//! integer arithmetic: with `A_n = D·Σ_{m≤n} φ(m)/m` the inequality at `n` is
//! `5·A_n − (3n − 30)·D > 0`, and that left side is updated in place.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::{Error, Result};

/// Euler's totient for `0..=n` (entry 0 is 0).
pub fn totients(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for q in 2..=n {
        if phi[q] == q as u64 {
            for multiple in (q..=n).step_by(q) {
                phi[multiple] -= phi[multiple] / q as u64;
            }
        }
    }
    phi
}

/// `(rad m, φ(rad m))` for `0..=n`, and the primes up to `n`.
fn radicals(n: usize) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut smallest = vec![0u64; n + 1];
    let mut primes = Vec::new();
    for k in 2..=n {
        if smallest[k] == 0 {
            primes.push(k as u64);
            for multiple in (k..=n).step_by(k) {
                if smallest[multiple] == 0 {
                    smallest[multiple] = k as u64;
                }
            }
        }
    }
    let mut rad = vec![1u64; n + 1];
    let mut phi_rad = vec![1u64; n + 1];
    for m in 2..=n {
        let q = smallest[m];
        let rest = m / q as usize;
        if rest.is_multiple_of(q as usize) {
            rad[m] = rad[rest];
            phi_rad[m] = phi_rad[rest];
        } else {
            rad[m] = rad[rest] * q;
            phi_rad[m] = phi_rad[rest] * (q - 1);
        }
    }
    (rad, phi_rad, primes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotientReport {
    pub n_max: u64,
    /// Smallest `n` at which the inequality fails, if any.
    pub first_violation: Option<u64>,
    /// `min_n (Σ_{m≤n} φ(m)/m − (3/5)n + 6)` over `1..=n_max`.
    pub min_slack: BigRational,
    pub argmin: u64,
}

impl TotientReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn totient_sum_check(n_max: u64) -> Result<TotientReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let (rad, phi_rad, primes) = radicals(n_max as usize);
    let scale: BigUint = primes.iter().map(|&q| BigUint::from(q)).product();
    let scale_int = BigInt::from(scale.clone());
    let three_scale = &scale_int * 3;

    // margin_n = 5·A_n − (3n − 30)·D; at n = 0 this is 30·D.
    let mut margin: BigInt = &scale_int * 30;
    let mut best: Option<(BigInt, u64)> = None;
    let mut first_violation = None;
    for n in 1..=n_max as usize {
        let mut term = &scale / rad[n];
        term *= 5 * phi_rad[n];
        margin += BigInt::from(term);
        margin -= &three_scale;
        if first_violation.is_none() && !margin.is_positive() {
            first_violation = Some(n as u64);
        }
        if best.as_ref().is_none_or(|(low, _)| margin < *low) {
            best = Some((margin.clone(), n as u64));
        }
    }
    let (low, argmin) = best.expect("n_max >= 1");
    Ok(TotientReport {
        n_max,
        first_violation,
        min_slack: BigRational::new(low, scale_int * 5),
        argmin,
    })
}

/// `Σ_{m≤n} φ(m)/m` as a reduced fraction.
pub fn totient_partial_sum(n: u64) -> BigRational {
    if n == 0 {
        return BigRational::from_integer(BigInt::from(0));
    }
    let (rad, phi_rad, primes) = radicals(n as usize);
    let scale: BigUint = primes.iter().map(|&q| BigUint::from(q)).product();
    let mut total = BigUint::from(0u32);
    for m in 1..=n as usize {
        total += (&scale / rad[m]) * phi_rad[m];
    }
    if scale.is_one() {
        return BigRational::from_integer(BigInt::from(total));
    }
    BigRational::new(BigInt::from(total), BigInt::from(scale))
}
