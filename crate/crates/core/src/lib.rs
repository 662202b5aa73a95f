//! Nilpotent orbits, cocharacters and reductive subgroups of exceptional
//! and classical Lie algebras, computed exactly in a Chevalley basis.

pub mod chevalley;
pub mod cochar;
pub mod dagger;
pub mod error;
pub mod linalg;
pub mod orbits;
pub mod rootdata;
pub mod scalar;
pub mod subgroups;

/// Exact rationals, used for every structural computation.
pub type Rational = num_rational::BigRational;
