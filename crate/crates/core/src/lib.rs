//! Exact computation of Reidemeister numbers and Reidemeister zeta functions.
//!
//! The crate covers four families of group endomorphisms:
//!
//! * endomorphisms of `Z_p^d`, given by a matrix of p-integral rationals
//!   ([`padic`]);
//! * automorphisms of torsion abelian groups described by place data over
//!   rational function fields `F_p(t)`, and the analogous rational data over
//!   `Q` ([`torsion`]);
//! * pairs of endomorphisms of finitely generated free abelian groups
//!   ([`lattice`]);
//! * pairs of endomorphisms of finitely generated torsion-free nilpotent
//!   groups, given layer by layer along an adapted lower central series
//!   ([`nilpotent`]).
//!
//! Iterate sequences are turned into zeta series, tested for rationality by
//! Berlekamp-Massey and Padé reconstruction ([`zeta`]), and every instance is
//! classified as rational or as having a natural boundary, with a finite,
//! re-checkable certificate ([`classify`]).
//!
//! All arithmetic is exact. The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod classify;
pub mod fpoly;
pub mod lattice;
pub mod nilpotent;
pub mod padic;
pub mod poly;
pub mod report;
pub mod torsion;
pub mod zeta;

pub use arith::{abs_p, vp, vp_rat, ExtNat, Prime, Valuation};
pub use classify::{classify_instance, Instance, Policy};
pub use fpoly::{FpPoly, Place};
pub use lattice::{IMat, IPoly};
pub use nilpotent::LayeredPair;
pub use padic::PadicEndo;
pub use poly::{Poly, QPoly};
pub use report::{Certificate, DichotomyReport, Provenance, TameResult, Verdict};
pub use torsion::{RationalXiSpec, TorsionModuleSpec};
pub use zeta::{QSeries, RationalFn};

/// Exact rationals, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime moduli must be below 2^64")]
    PrimeTooLarge,
    #[error("absolute value of zero requested")]
    ZeroValue,
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("value out of range: {0}")]
    OutOfRange(&'static str),
    #[error("invalid place: {0}")]
    InvalidPlace(&'static str),
    #[error("matrix entry is not p-integral")]
    NotPIntegral,
    #[error("Reidemeister product is not a positive integer (inconsistent place data)")]
    NonIntegral,
    #[error("not tame: infinite Reidemeister number at n = {0}")]
    NotTame(u64),
    #[error("P-mode place data cannot be classified; supply the complement set S")]
    PModeUnsupported,
    #[error("|xi| = 1 at the infinite place")]
    UnitAtInfinity,
    #[error("matrix is not invertible over the rationals")]
    NotInvertible,
    #[error("B^-1 A is not integral")]
    NotIntegral,
    #[error("unsupported instance: {0}")]
    Unsupported(&'static str),
    #[error("certificate check failed: {0}")]
    CertificateFailure(&'static str),
    #[error("structural and empirical evidence disagree: {0}")]
    Inconsistent(&'static str),
    #[error("rational reconstruction failed: {0}")]
    ReconstructionFailed(&'static str),
    #[error("parse error: {0}")]
    Parse(&'static str),
}
