use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero quaternion has no inverse or projective class")]
    ZeroQuaternion,
    #[error("quaternion has a nonzero imaginary part, not a central scalar")]
    NotCentral,
    #[error("scalar {0} is not of the form ±p^r l^s")]
    NotUnitGroupElement(String),
    #[error("word uses generator index {0} with no assigned value")]
    UnboundGenerator(usize),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("({0}, {1}) is not a pair of distinct odd primes")]
    BadPrimePair(u64, u64),
    #[error("n-invariants differ: {0} vs {1}")]
    NMismatch(u64, u64),
    #[error("quaternion is not in T (parity pattern or norm condition fails)")]
    NotInT,
    #[error("no factorization found for letter pair ({0}, {1}); broken transversal")]
    FactorizationMissing(String, String),
    #[error("relator count mismatch: got {0}, expected {1}")]
    CountMismatch(usize, usize),
    #[error("relator evaluations generate a proper subgroup of <-1,p,l>")]
    KernelNotGenerated,
    #[error("designated relator evaluations do not generate all evaluations")]
    CenterNotGenerated,
    #[error("coset table does not belong to this presentation")]
    IncompatibleTable,
    #[error("inputs commute; projective analysis requires a non-commuting pair")]
    CommutingInput,
    #[error("abelianization has positive free rank; derived series step refused")]
    InfiniteAbelianization,
    #[error("coset enumeration exceeded the coset limit")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
