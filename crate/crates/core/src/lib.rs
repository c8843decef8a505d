//! Exact arithmetic and group-theoretic algorithms for multiplicative
//! groups generated by integral Hamilton quaternions of two odd prime
//! norms: generator-set enumeration, presentations of the projective
//! lattice groups, coset enumeration, abelianizations, center
//! determination, and the commuting-pair theory via the n-invariant.

pub mod center;
pub mod central;
pub mod commuting;
pub mod error;
pub mod fp;
pub mod gamma;
pub mod proj;
pub mod quat;
pub mod verify;
pub mod word;
pub mod xsets;

pub use central::{as_central, CentralScalar, CentralSubgroup};
pub use error::{Error, Result};
pub use proj::ProjQuat;
pub use quat::{commutator, commutes, QuatInt, QuatRat};
pub use word::Word;
