//! Exact computation of the maximal p-core p'-partition Λ_p.
//!
//! A partition is a *p-core* when none of its hook lengths is divisible by
//! `p`, and a *p'-partition* when none of its parts is. For every odd prime
//! there is a unique largest partition with both properties. Its abacus is
//! aligned (beads at the top of their runners and at the right of their rows)
//! and it corresponds to the unique longest walk on the additive residue graph
//! mod `p` that starts at 0, uses nondecreasing edge labels and never returns
//! to 0.
//!
//! The crate builds that walk in `O(p log p)` from closed forms for the
//! per-label minimal pairs ([`residue_walk`]), evaluates |Λ_p| exactly, and
//! checks the known size bounds with integer-only comparisons ([`bounds`]).
//! Brute-force ground truth for small primes lives in [`oracle`].
//!
//! ```
//! let profile = pcore::residue_walk::lambda_profile(5).unwrap();
//! assert_eq!(profile.m, vec![4, 2, 2, 3]);
//! assert_eq!(profile.size, 198.into());
//! ```

pub mod abacus;
pub mod bounds;
pub mod modarith;
pub mod oracle;
pub mod partitions;
pub mod residue_walk;
pub mod sweep;
pub mod verify;

mod error;

pub use error::{Error, Result};
