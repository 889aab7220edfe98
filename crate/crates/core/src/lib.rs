//! Flag-transitive 2-designs with gcd(r, λ) = 1.
//!
//! Finite-field arithmetic, a permutation-group engine, finite geometry, design
//! verifiers and one constructor per family of examples.

pub mod algebra;
pub mod permgroup;
pub mod geometry;
pub mod design;
pub mod designfile;
pub mod families;
pub mod semilinear;
