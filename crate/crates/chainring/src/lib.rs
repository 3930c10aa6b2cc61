//! Exact arithmetic for finite chain rings (finite local principal ideal rings).
//!
//! The crate is organized around an explicit *presentation* of a chain ring as
//! a quotient of the bivariate polynomial ring over `Z_{p^r}`:
//!
//! * [`arith`] — integers mod `p^r`, univariate/bivariate polynomials over
//!   them, and the residue field `F_p[X]/(g)`.
//! * [`presentation`] — the presentation data structure, the normal-form
//!   rewriting engine that defines the quotient, element arithmetic, and the
//!   runtime certification suite.
//! * [`finring`] — generic finite rings given by explicit operation tables,
//!   brute-force ideal enumeration and locality/PIR tests; the independent
//!   oracle for every structural claim.
//! * [`structure`] — constructive algorithms: coefficient fields, the
//!   canonical characteristic-`p` form, unit-power decomposition, digit
//!   expansion, presentation recovery, and catalogs of rings with a fixed
//!   number of nontrivial ideals.
//! * [`iso`] — isomorphism testing: algebraic criteria for the quadratic
//!   families and a complete backtracking oracle.
//! * [`sweep`] — exhaustive enumeration of valid presentations and the
//!   self-test drivers built on it.

pub mod arith;
pub mod finring;
pub mod iso;
pub mod presentation;
pub mod structure;
pub mod sweep;

pub use arith::field::{field_isos, FieldElem, FieldIso, FieldRep};
pub use arith::poly::{BiPoly, UniPoly};
pub use arith::zmod::{Modulus, ZMod};
pub use presentation::certify::{certify, CertReport, CertifyBounds};
pub use presentation::ring::{ChainRing, RingElem};
pub use presentation::{validate, Presentation, ValidationReport};
