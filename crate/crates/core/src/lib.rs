//! Finite inverse semigroupoids and their ordered partial actions.
//!
//! The crate is organised bottom-up:
//!
//! * [`semigroupoid`] validates partial multiplication tables and morphisms.
//! * [`inverse`] computes pseudoinverses, idempotents and the natural partial order.
//! * [`poset`] holds finite posets, order ideals and semilatticeoids.
//! * [`congruence`] builds graphed congruences, the minimal groupoid congruence
//!   and the E-unitarity tests.
//! * [`action`] validates partial actions under both axiom sets.
//! * [`globalization`] constructs the universal ordered globalization.
//! * [`ptheorem`] covers the Munn action, semidirect products, McAlister
//!   triples and the P-theorem isomorphism.
//! * [`fixtures`], [`enumerate`], [`random`], [`format`] and [`dot`] are the
//!   corpus, file and export layer used by the CLI and the test suites.

pub mod action;
pub mod congruence;
pub mod dot;
pub mod enumerate;
pub mod fixtures;
pub mod format;
pub mod globalization;
pub mod inverse;
pub mod poset;
pub mod ptheorem;
pub mod random;
pub mod report;
pub mod semigroupoid;
mod union_find;

pub use action::{PartialAction, Point};
pub use congruence::GraphedCongruence;
pub use globalization::GlobalizationResult;
pub use inverse::InverseSemigroupoid;
pub use poset::{FinitePoset, Relation, Semilatticeoid};
pub use ptheorem::{McAlisterTriple, SemidirectProduct};
pub use semigroupoid::{Arrow, FiniteSemigroupoid, Object, RawSemigroupoid, SemigroupoidMorphism};
