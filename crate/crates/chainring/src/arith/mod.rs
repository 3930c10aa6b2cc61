//! Exact arithmetic over `Z_{p^r}`, polynomials over it, and small finite fields.

pub mod field;
pub mod poly;
pub mod zmod;

pub use field::{field_isos, FieldElem, FieldIso, FieldRep};
pub use poly::{gen_irreducible, irreducible_mod_p, BiPoly, UniPoly};
pub use zmod::{ArithError, Modulus, ZMod};
