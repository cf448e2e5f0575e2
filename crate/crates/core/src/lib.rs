//! Flag positroid pipe dreams.
//!
//! Bruhat intervals `u <= v` in `S_n` are encoded as pipe dreams `FPP(u, v)`.
//! Their row restrictions carry positroids, read off as sink sets of
//! vertex-disjoint path families. Appending a row along unblocked columns
//! walks up the poset of nonnegatively representable elementary quotients,
//! which on decorated permutations is a cyclic shift.

pub mod decperm;
pub mod error;
pub mod flagbuild;
pub mod linalg;
pub mod pathgraph;
pub mod perm;
pub mod pipedream;
pub mod poset;
pub mod positroid;

pub use decperm::DecoratedPermutation;
pub use error::{Error, Result};
pub use flagbuild::FlagPositroid;
pub use linalg::RationalMatrix;
pub use pathgraph::{BasisSet, PathGraph};
pub use perm::{BoxSet, Key, Permutation, Word};
pub use pipedream::{LeDiagram, PipeDream, Tile};
pub use poset::{Flavor, QuotientPoset};
pub use positroid::Positroid;

/// Enumeration size guards, overridable through `POSITROID_MAX_N`.
pub mod guard {
    use crate::error::{Error, Result};

    pub const ENV: &str = "POSITROID_MAX_N";

    pub fn limit(default: usize) -> usize {
        std::env::var(ENV)
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or(default, |m: usize| m.max(default))
    }

    pub fn check(n: usize, default: usize) -> Result<()> {
        let max = limit(default);
        if n > max {
            return Err(Error::GuardExceeded { n, max });
        }
        Ok(())
    }
}
