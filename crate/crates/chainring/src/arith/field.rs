//! The residue field `F_p[X]/(g)` for a monic irreducible `g`.
//!
//! Fields here are tiny (the whole crate works at desk scale), so the
//! representation precomputes the full multiplication table once and answers
//! every query by lookup. Elements are indices into the lexicographic
//! enumeration of residues; index `Sum c_i p^i` stands for `Sum c_i X^i`.

use serde::{Deserialize, Serialize};

use super::poly::{irreducible_mod_p, UniPoly};
use super::zmod::{ArithError, Modulus};

/// Largest field order for which tables are precomputed.
const FIELD_ORDER_CAP: u64 = 1 << 14;

/// An element of a [`FieldRep`], identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub usize);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// `F_p[X]/(modulus)` with table-based arithmetic.
#[derive(Debug, Clone)]
pub struct FieldRep {
    p: u64,
    d: usize,
    q: u64,
    modulus: UniPoly,
    mp: Modulus,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generator: FieldElem,
}

/// JSON form of a field descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub modulus: Vec<u64>,
}

impl PartialEq for FieldRep {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FieldRep {}

impl FieldRep {
    /// Builds the field, checking that `modulus` is monic irreducible over `Z_p`.
    pub fn new(p: u64, modulus_coeffs: Vec<u64>) -> Result<Self, ArithError> {
        let mp = Modulus::new(p, 1)?;
        let modulus = UniPoly::from_coeffs(mp, modulus_coeffs);
        if !modulus.is_monic() || modulus.degree().map_or(true, |d| d < 1) {
            return Err(ArithError::NotMonicModP);
        }
        if !irreducible_mod_p(&modulus)? {
            return Err(ArithError::SearchFailed(format!(
                "{modulus} is reducible mod {p}"
            )));
        }
        let d = modulus.degree().unwrap();
        let q = p
            .checked_pow(d as u32)
            .filter(|&q| q <= FIELD_ORDER_CAP)
            .ok_or(ArithError::FieldTooLarge(u64::MAX, FIELD_ORDER_CAP))?;

        let qn = q as usize;
        let mut mul = vec![0u32; qn * qn];
        for i in 0..qn {
            let a = Self::decode_poly(mp, p, d, i);
            for j in i..qn {
                let b = Self::decode_poly(mp, p, d, j);
                let prod = a.mul(&b);
                let (_, rem) = if prod.degree().map_or(false, |pd| pd >= d) {
                    prod.divrem_monic(&modulus)?
                } else {
                    (UniPoly::zero(mp), prod)
                };
                let k = Self::encode_poly(p, &rem) as u32;
                mul[i * qn + j] = k;
                mul[j * qn + i] = k;
            }
        }
        let mut inv = vec![0u32; qn];
        for i in 1..qn {
            for j in 1..qn {
                if mul[i * qn + j] == 1 {
                    inv[i] = j as u32;
                    break;
                }
            }
            if inv[i] == 0 {
                return Err(ArithError::NotInvertible(i as u64));
            }
        }

        let mut field = FieldRep {
            p,
            d,
            q,
            modulus,
            mp,
            mul,
            inv,
            generator: FieldElem::ONE,
        };
        field.generator = field
            .elements()
            .skip(1)
            .find(|&a| field.order_of(a) == q - 1)
            .ok_or_else(|| ArithError::SearchFailed("no multiplicative generator".into()))?;
        Ok(field)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self, ArithError> {
        FieldRep::new(desc.p, desc.modulus.clone())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            modulus: self.modulus.coeffs().to_vec(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Field order `q = p^d`.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus_poly(&self) -> &UniPoly {
        &self.modulus
    }

    fn decode_poly(mp: Modulus, p: u64, d: usize, idx: usize) -> UniPoly {
        let mut coeffs = vec![0u64; d];
        let mut v = idx as u64;
        for c in coeffs.iter_mut() {
            *c = v % p;
            v /= p;
        }
        UniPoly::from_coeffs(mp, coeffs)
    }

    fn encode_poly(p: u64, poly: &UniPoly) -> usize {
        let mut idx = 0u64;
        for &c in poly.coeffs().iter().rev() {
            idx = idx * p + c;
        }
        idx as usize
    }

    /// The residue polynomial of an element (degree < d, coefficients < p).
    pub fn poly_of(&self, a: FieldElem) -> UniPoly {
        Self::decode_poly(self.mp, self.p, self.d, a.0)
    }

    /// Reduces an arbitrary polynomial over `Z_p` into the field.
    pub fn from_poly(&self, poly: &UniPoly) -> FieldElem {
        assert_eq!(poly.modulus(), self.mp, "polynomial not over Z_p");
        let rem = if poly.degree().map_or(false, |pd| pd >= self.d) {
            poly.divrem_monic(&self.modulus).expect("monic modulus").1
        } else {
            poly.clone()
        };
        FieldElem(Self::encode_poly(self.p, &rem))
    }

    /// Reduces a polynomial over any `Z_{p^r}` (same `p`) into the field.
    pub fn from_poly_any(&self, poly: &UniPoly) -> FieldElem {
        assert_eq!(poly.modulus().p(), self.p, "mismatched prime");
        self.from_poly(&poly.reduce_mod_p())
    }

    /// Packs reduced digits (length <= d, entries < p) into an element.
    pub fn from_digits(&self, digits: &[u64]) -> FieldElem {
        let mut idx = 0u64;
        for &c in digits.iter().rev() {
            debug_assert!(c < self.p);
            idx = idx * self.p + c;
        }
        FieldElem(idx as usize)
    }

    /// The image of an integer scalar.
    pub fn embed_int(&self, c: u64) -> FieldElem {
        FieldElem((c % self.p) as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q as usize).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.d {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FieldElem(out as usize)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let mut x = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.d {
            let c = x % self.p;
            let n = if c == 0 { 0 } else { self.p - c };
            out += n * place;
            place *= self.p;
            x /= self.p;
        }
        FieldElem(out as usize)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.0 * self.q as usize + b.0] as usize)
    }

    pub fn inverse(&self, a: FieldElem) -> Result<FieldElem, ArithError> {
        if a.is_zero() {
            return Err(ArithError::NotInvertible(0));
        }
        Ok(FieldElem(self.inv[a.0] as usize))
    }

    pub fn pow(&self, a: FieldElem, mut exp: u128) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldElem) -> u64 {
        assert!(!a.is_zero(), "order of zero is undefined");
        let mut acc = a;
        let mut k = 1;
        while acc != FieldElem::ONE {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// The least element of multiplicative order `q - 1`.
    pub fn multiplicative_generator(&self) -> FieldElem {
        self.generator
    }

    /// The monic minimal polynomial of `a` over `Z_p`: the first monic
    /// polynomial, ordered by degree then lexicographically, vanishing at `a`.
    pub fn min_poly(&self, a: FieldElem) -> UniPoly {
        for deg in 1..=self.d {
            for cand in super::poly::monic_mod_p(self.p, deg) {
                if self.eval_poly(&cand, a).is_zero() {
                    return cand;
                }
            }
        }
        unreachable!("every element of a finite field is algebraic of degree <= d")
    }

    /// Evaluates a polynomial over `Z_p` at a field element.
    pub fn eval_poly(&self, h: &UniPoly, at: FieldElem) -> FieldElem {
        assert_eq!(h.modulus(), self.mp, "polynomial not over Z_p");
        let mut acc = FieldElem::ZERO;
        for &c in h.coeffs().iter().rev() {
            acc = self.add(self.mul(acc, at), self.embed_int(c));
        }
        acc
    }

    /// All roots of `h` in this field, in element order.
    pub fn roots_of(&self, h: &UniPoly) -> Vec<FieldElem> {
        self.elements()
            .filter(|&a| self.eval_poly(h, a).is_zero())
            .collect()
    }

    /// Whether `a` is a square in the field. Zero counts as a square; for
    /// `p = 2` squaring is a bijection, so everything is a square.
    pub fn is_square(&self, a: FieldElem) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, ((self.q - 1) / 2) as u128) == FieldElem::ONE
    }

    /// The least square root, when one exists.
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        self.elements().find(|&w| self.mul(w, w) == a)
    }
}

/// A field isomorphism `K1 -> K2`, determined by the image of the class of X.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldIso {
    pub x_image: FieldElem,
}

impl FieldIso {
    pub fn apply(&self, k1: &FieldRep, k2: &FieldRep, a: FieldElem) -> FieldElem {
        k2.eval_poly(&k1.poly_of(a), self.x_image)
    }
}

/// All isomorphisms `K1 -> K2`: one per root of `K1`'s modulus in `K2`.
/// Empty exactly when the fields are not isomorphic.
pub fn field_isos(k1: &FieldRep, k2: &FieldRep) -> Vec<FieldIso> {
    if k1.p() != k2.p() || k1.degree() != k2.degree() {
        return vec![];
    }
    k2.roots_of(k1.modulus_poly())
        .into_iter()
        .map(|root| FieldIso { x_image: root })
        .collect()
}
