use alloc::string::String;

use crate::poset::Atom;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("relations force {0} strictly below itself")]
    Cycle(Atom),
    #[error("atom {0} is not part of the poset")]
    UnknownAtom(Atom),
    #[error("atom {0} is listed twice")]
    DuplicateAtom(Atom),
    #[error("atom {0} occurs on both sides of a concatenation")]
    Overlap(Atom),
    #[error("operands refer to different posets")]
    MixedReference,
    #[error("[{lo},{hi}] is not a proper interval of the poset")]
    NotAnInterval { lo: Atom, hi: Atom },
    #[error("arcs [{0}] and [{1}] are nested")]
    Nesting(String, String),
    #[error("member set is not upward closed")]
    NotUpwardClosed,
    #[error("not a subposet of the reference poset")]
    NotSubposet,
    #[error("{0} is not strictly below {1}")]
    NotComparable(Atom, Atom),
    #[error("{what} exceeds the cap of {cap}")]
    SizeCap { what: &'static str, cap: u64 },
    #[error("poset has {0} atoms; at most {1} are supported")]
    TooManyAtoms(usize, usize),
    #[error("division by zero")]
    DivideByZero,
    #[error("rational function has a pole at q = {0}")]
    Pole(String),
    #[error("posets live on different atom sets")]
    AtomMismatch,
    #[error("pair of posets is not atomic")]
    NotAtomic,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element {0} is not a field residue")]
    NotAResidue(u64),
    #[error("operands are expressed in different bases")]
    BasisMismatch,
    #[error("blocks do not partition the ground set")]
    BadSplit,
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
