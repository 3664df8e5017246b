//! Exact-arithmetic computer algebra for chain-level constructions over
//! polynomial rings with rational or prime-field coefficients.
//!
//! The crate builds Koszul-type complexes attached to a two-term map of
//! graded free modules, Eagon-Northcott complexes with their det-twisted
//! duality, simplicial symmetric and Koszul algebras with Dold-Kan
//! normalization, degeneracy-locus codimension profiles with the
//! classicality criteria they control, and pushforward tables for
//! projectivizations, all verified per internal degree by exact
//! elimination.

pub mod complex;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod field;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod multilinear;
pub mod poly;
pub mod problem;
pub mod report;
pub mod serre;
pub mod simplicial;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use module::{GradedFreeModule, GradedMap};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, RingCtx};
