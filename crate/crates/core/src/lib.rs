//! Supercharacter theory of pattern groups and the Hopf monoid of
//! non-nesting poset partitions, in exact arithmetic over `Q(q)`.
//!
//! Everything here is pure and `no_std` (with `alloc`). The brute-force
//! finite-group oracle lives in [`group`] so that the closed formulas can be
//! checked against direct computation at small primes.

#![no_std]

extern crate alloc;

pub mod error;
pub mod group;
pub mod hopf;
pub mod intervals;
pub mod lattice;
pub mod matrix;
pub mod nonnesting;
pub mod poset;
pub mod scalar;
pub mod supercharacter;

pub use error::{Error, Result};
pub use group::{FieldScalar, GroupElement, PatternGroup};
pub use hopf::{BasisKey, QFactorization, SetComposition, SpeciesElement, TensorElement};
pub use lattice::{CoIdeal, SubgroupOrder};
pub use nonnesting::NNPartition;
pub use poset::{Atom, AtomSet, Interval, Poset};
pub use scalar::{Poly, RationalFunction};
pub use supercharacter::{Basis, CharacterData, ClassFunction};

/// Enumeration limits shared by every capped routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `pp_nn(R)` (or co-ideal list) that will be materialized.
    pub partitions: u64,
    /// Largest concrete group order enumerated by the oracle.
    pub group_order: u64,
    /// Largest number of set compositions walked by Takeuchi's formula.
    pub compositions: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            partitions: 1_000_000,
            group_order: 1 << 20,
            compositions: 1_000_000,
        }
    }
}
