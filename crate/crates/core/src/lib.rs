//! Enumeration-based decision and semi-decision procedures for finitely
//! presented groups.
//!
//! Every positive answer carries a [`WitnessedElement`]: an identity in the
//! free group that can be checked by free reduction alone. Every negative
//! answer carries a finite permutation quotient in which the exclusion can be
//! recomputed. Searches run under an explicit [`Budget`] of logical steps and
//! report [`Outcome::Exhausted`] instead of guessing.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod certify;
pub mod cosets;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod perm;
pub mod peripheral;
pub mod presentation;
pub mod quotient;
pub mod search;
pub mod witness;
pub mod word;

pub use decide::{Certificate, Claim, Decision, Outcome, QuotientCertificate};
pub use enumerate::{Advance, Budget, Enumeration, Exhausted};
pub use error::Error;
pub use perm::Perm;
pub use presentation::{DecoratedPresentation, GeneratorMap, GeneratorSet, Presentation};
pub use quotient::FiniteQuotient;
pub use witness::{ClosureFactor, DoubleCosetWitness, WitnessedElement};
pub use word::{Letter, Word};
