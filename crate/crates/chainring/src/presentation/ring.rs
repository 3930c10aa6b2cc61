//! The quotient ring defined by a presentation: normal-form rewriting and
//! element arithmetic.
//!
//! Every element has a unique reduced representative, a digit matrix
//! `c[b][a]` in `{0..p-1}` for `0 <= b <= s`, `0 <= a < d`, standing for
//! `Sum c[b][a] * X^a * Y^b`. The rewriting engine drives any bivariate
//! polynomial to this form with four rules:
//!
//! * R1 — monomials with Y-degree above `s` vanish (`Y^(s+1)` is in the kernel);
//! * R4 — at Y-degree `b >= s+1-t_1` coefficients reduce mod `p`
//!   (`p*Y^(s+1-t_1)` is in the kernel);
//! * R2 — a part of X-degree `>= deg g` is divided by `g`, and the multiple
//!   `h*g` is replaced by `h * Sum v_j(X) Y^(s_j)` (by nothing when `g_rel`
//!   is empty);
//! * R3 — a coefficient `c = c0 + p*c1` with `c1 != 0` sheds its `p`-part:
//!   `p*c1*X^a*Y^b` becomes `c1*X^a*Y^b * Sum u_i(X) Y^(t_i)`.
//!
//! The rules are applied in a fixed order until none applies; each R2/R3 step
//! pushes content to strictly higher Y-degree, which is capped at `s`, so the
//! process terminates. Uniqueness of the resulting digit form is certified at
//! runtime per presentation (see [`super::certify`]), not assumed.

use std::sync::Arc;

use crate::arith::field::{FieldElem, FieldRep};
use crate::arith::poly::{BiPoly, UniPoly};
use crate::arith::zmod::Modulus;

use super::{validate, Presentation, PresentationError};

/// Which reduction family is tried first inside a rewriting pass. The two
/// orders must agree on every input; the certification suite checks this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    /// R1, R4, R2, R3 — the reference order.
    GReduceFirst,
    /// R1, R4, R3, R2 — the alternate order used as confluence evidence.
    PDigitFirst,
}

pub(crate) struct RingData {
    pres: Presentation,
    m: Modulus,
    d: usize,
    levels: usize,
    q: u64,
    order: u128,
    g: Vec<u64>,
    p_rel: Vec<(usize, Vec<u64>)>,
    g_rel: Vec<(usize, Vec<u64>)>,
    /// Y-degrees at and above this are annihilated by `p` (R4 zone);
    /// `levels` when there is no p-relation.
    high_zone: usize,
    field: FieldRep,
}

/// Handle to a validated chain-ring presentation; cheap to clone and share.
#[derive(Clone)]
pub struct ChainRing(pub(crate) Arc<RingData>);

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.pres == other.0.pres
    }
}
impl Eq for ChainRing {}

impl std::fmt::Debug for ChainRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChainRing")
            .field("presentation", &self.0.pres)
            .finish()
    }
}

/// An element in canonical digit form, holding a back-reference to its ring.
#[derive(Clone)]
pub struct RingElem {
    ring: ChainRing,
    digits: Vec<u64>,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.digits == other.digits
    }
}
impl Eq for RingElem {}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.digits.hash(state);
    }
}

impl std::fmt::Debug for RingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RingElem({self})")
    }
}

impl ChainRing {
    /// Validates the presentation and prepares the rewriting context.
    pub fn new(pres: Presentation) -> Result<ChainRing, PresentationError> {
        let report = validate(&pres);
        if !report.ok() {
            return Err(PresentationError::Invalid(report));
        }
        let m = Modulus::new(pres.p, pres.r).expect("validated");
        let d = pres.g_degree();
        let levels = pres.s as usize + 1;
        let q = pres.residue_order();
        let order = pres.order();

        let mut g = pres.g.clone();
        g.resize(d + 1, 0);
        let pad = |coeffs: &[u64]| {
            let mut v = coeffs.to_vec();
            v.resize(d, 0);
            v
        };
        let p_rel: Vec<(usize, Vec<u64>)> = pres
            .p_rel
            .iter()
            .map(|t| (t.t as usize, pad(&t.u)))
            .collect();
        let g_rel: Vec<(usize, Vec<u64>)> = pres
            .g_rel
            .iter()
            .map(|t| (t.s as usize, pad(&t.v)))
            .collect();
        let high_zone = match p_rel.first() {
            Some(&(t1, _)) => levels - t1,
            None => levels,
        };
        let g_mod_p: Vec<u64> = g.iter().map(|&c| c % pres.p).collect();
        let field = FieldRep::new(pres.p, g_mod_p)?;

        Ok(ChainRing(Arc::new(RingData {
            pres,
            m,
            d,
            levels,
            q,
            order,
            g,
            p_rel,
            g_rel,
            high_zone,
            field,
        })))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0.pres
    }

    pub fn modulus(&self) -> Modulus {
        self.0.m
    }

    pub fn p(&self) -> u64 {
        self.0.pres.p
    }

    pub fn r(&self) -> u32 {
        self.0.pres.r
    }

    pub fn s(&self) -> u32 {
        self.0.pres.s
    }

    /// `deg g`, the residue field degree.
    pub fn d(&self) -> usize {
        self.0.d
    }

    /// Residue field order `q = p^d`.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Ring order `q^(s+1)`.
    pub fn order(&self) -> u128 {
        self.0.order
    }

    /// The residue field `F_p[X]/(g mod p)`.
    pub fn residue_field(&self) -> &FieldRep {
        &self.0.field
    }

    /// Number of digit positions per element, `(s+1) * d`.
    pub fn digit_len(&self) -> usize {
        self.0.levels * self.0.d
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            ring: self.clone(),
            digits: vec![0; self.digit_len()],
        }
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    /// The class of `Y` (the maximal-ideal generator).
    pub fn y(&self) -> RingElem {
        self.monomial(1, 0, 1)
    }

    /// The class of `X`.
    pub fn x(&self) -> RingElem {
        self.monomial(1, 1, 0)
    }

    pub fn from_int(&self, v: u64) -> RingElem {
        self.normal_form(&BiPoly::constant(self.0.m, v))
    }

    /// Normal form of `c * X^a * Y^b`.
    pub fn monomial(&self, c: u64, a: usize, b: usize) -> RingElem {
        self.normal_form(&BiPoly::monomial(self.0.m, c, a, b))
    }

    /// Builds an element directly from reduced digits.
    pub fn elem_from_digits(&self, digits: Vec<u64>) -> RingElem {
        assert_eq!(digits.len(), self.digit_len(), "digit matrix has wrong shape");
        assert!(
            digits.iter().all(|&c| c < self.p()),
            "digits must lie in {{0..p-1}}"
        );
        RingElem {
            ring: self.clone(),
            digits,
        }
    }

    /// Deterministic enumeration of all `q^(s+1)` digit matrices.
    pub fn elements(&self) -> ElemIter {
        ElemIter {
            ring: self.clone(),
            next: 0,
        }
    }

    /// Enumeration guarded by an order bound.
    pub fn elements_bounded(&self, cap: u128) -> Result<ElemIter, PresentationError> {
        if self.order() > cap {
            return Err(PresentationError::OrderExceedsBound(self.order(), cap));
        }
        Ok(self.elements())
    }

    /// Packs digits into the element index (little-endian base `p`).
    pub fn encode_digits(&self, digits: &[u64]) -> u64 {
        let p = self.p();
        let mut idx = 0u64;
        for &c in digits.iter().rev() {
            idx = idx * p + c;
        }
        idx
    }

    pub fn decode_index(&self, mut idx: u64, out: &mut Vec<u64>) {
        let p = self.p();
        out.clear();
        out.resize(self.digit_len(), 0);
        for c in out.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
    }

    pub fn elem_from_index(&self, idx: u64) -> RingElem {
        let mut digits = Vec::new();
        self.decode_index(idx, &mut digits);
        self.elem_from_digits(digits)
    }

    pub fn index_of(&self, e: &RingElem) -> u64 {
        assert!(self == &e.ring, "element from a different presentation");
        self.encode_digits(&e.digits)
    }

    /// Reduces an arbitrary bivariate polynomial to its digit form using the
    /// reference rule order.
    pub fn normal_form(&self, f: &BiPoly) -> RingElem {
        self.normal_form_ordered(f, RewriteOrder::GReduceFirst)
    }

    pub fn normal_form_ordered(&self, f: &BiPoly, which: RewriteOrder) -> RingElem {
        assert_eq!(
            f.modulus(),
            self.0.m,
            "polynomial is over a different coefficient ring"
        );
        let data = &*self.0;
        let input_w = f
            .parts()
            .iter()
            .map(|p| p.coeffs().len())
            .max()
            .unwrap_or(0);
        // X-degrees can grow by deg(u_i) <= d-1 on each of the at most
        // levels-1 upward hops a p-digit rewrite can take, so this width can
        // never be exceeded.
        let w = input_w.max(2 * data.d - 1) + data.levels * data.d;
        let mut buf = vec![0u64; data.levels * w];
        // R1 at load time: parts beyond Y^s are congruent to zero.
        for (b, part) in f.parts().iter().enumerate().take(data.levels) {
            for (a, &c) in part.coeffs().iter().enumerate() {
                buf[b * w + a] = c;
            }
        }
        self.nf_in_place(&mut buf, w, which);
        let mut digits = vec![0u64; self.digit_len()];
        for b in 0..data.levels {
            for a in 0..data.d {
                digits[b * data.d + a] = buf[b * w + a];
            }
        }
        RingElem {
            ring: self.clone(),
            digits,
        }
    }

    /// The rewriting kernel. `buf` is a `levels x w` row-major matrix of
    /// coefficients already reduced mod `p^r`; on return it holds the digit
    /// form (row degrees < d, all entries < p).
    fn nf_in_place(&self, buf: &mut [u64], w: usize, which: RewriteOrder) {
        let data = &*self.0;
        let p = data.pres.p;
        let levels = data.levels;
        debug_assert_eq!(buf.len(), levels * w);

        let mut passes = 0usize;
        loop {
            passes += 1;
            assert!(
                passes <= 8 * levels + 32,
                "rewriting did not stabilize; presentation {:?}",
                data.pres
            );
            let mut changed = false;

            // R4: in the zone annihilated by p, coefficients live mod p.
            for b in data.high_zone..levels {
                for a in 0..w {
                    let c = buf[b * w + a];
                    if c >= p {
                        buf[b * w + a] = c % p;
                        changed = true;
                    }
                }
            }

            match which {
                RewriteOrder::GReduceFirst => {
                    changed |= self.pass_g_reduce(buf, w);
                    changed |= self.pass_p_digit(buf, w);
                }
                RewriteOrder::PDigitFirst => {
                    changed |= self.pass_p_digit(buf, w);
                    changed |= self.pass_g_reduce(buf, w);
                }
            }

            if !changed {
                break;
            }
        }
    }

    /// R2 sweep: rows in increasing Y-degree, leading X-term first.
    fn pass_g_reduce(&self, buf: &mut [u64], w: usize) -> bool {
        let data = &*self.0;
        let m = data.m;
        let d = data.d;
        let levels = data.levels;
        let mut changed = false;
        for b in 0..levels {
            let row = b * w;
            let mut top = w;
            'reduce: loop {
                // highest nonzero X-degree in this row
                while top > 0 && buf[row + top - 1] == 0 {
                    top -= 1;
                }
                if top <= d {
                    break 'reduce;
                }
                let lead = top - 1;
                let c = buf[row + lead];
                let off = lead - d;
                // subtract c * X^off * g; the leading term cancels since g is monic
                for (i, &gc) in data.g.iter().enumerate() {
                    if gc != 0 {
                        buf[row + off + i] = m.sub(buf[row + off + i], m.mul(c, gc));
                    }
                }
                debug_assert_eq!(buf[row + lead], 0);
                // add c * X^off * v_j at Y-degree b + s_j (dropped beyond s)
                for (sj, vj) in &data.g_rel {
                    let bb = b + sj;
                    if bb < levels {
                        let dst = bb * w + off;
                        for (i, &vc) in vj.iter().enumerate() {
                            if vc != 0 {
                                buf[dst + i] = m.add(buf[dst + i], m.mul(c, vc));
                            }
                        }
                    }
                }
                changed = true;
            }
        }
        changed
    }

    /// R3 sweep: positions in increasing Y-degree, shedding `p`-parts through
    /// the relation `p = Sum u_i(X) Y^(t_i)`. No-op when `r = 1`.
    fn pass_p_digit(&self, buf: &mut [u64], w: usize) -> bool {
        let data = &*self.0;
        if data.p_rel.is_empty() {
            return false;
        }
        let m = data.m;
        let p = data.pres.p;
        let levels = data.levels;
        let mut changed = false;
        for b in 0..levels.min(data.high_zone) {
            let row = b * w;
            for a in 0..w {
                let c = buf[row + a];
                let c1 = c / p;
                if c1 == 0 {
                    continue;
                }
                buf[row + a] = c % p;
                for (ti, ui) in &data.p_rel {
                    let bb = b + ti;
                    if bb < levels {
                        let dst = bb * w + a;
                        for (i, &uc) in ui.iter().enumerate() {
                            if uc != 0 {
                                debug_assert!(a + i < w);
                                buf[dst + i] = m.add(buf[dst + i], m.mul(c1 % m.pr(), uc));
                            }
                        }
                    }
                }
                changed = true;
            }
        }
        changed
    }

    /// Digit addition; `out` receives the normal form of the sum.
    pub fn add_digits_into(&self, x: &[u64], y: &[u64], scratch: &mut Vec<u64>, out: &mut Vec<u64>) {
        let data = &*self.0;
        let d = data.d;
        let w = 2 * d + data.levels * d; // headroom for cascading rewrites
        scratch.clear();
        scratch.resize(data.levels * w, 0);
        for b in 0..data.levels {
            for a in 0..d {
                scratch[b * w + a] = data.m.add(x[b * d + a], y[b * d + a]);
            }
        }
        self.nf_in_place(scratch, w, RewriteOrder::GReduceFirst);
        out.clear();
        out.resize(self.digit_len(), 0);
        for b in 0..data.levels {
            for a in 0..d {
                out[b * d + a] = scratch[b * w + a];
            }
        }
    }

    /// Digit multiplication; `out` receives the normal form of the product.
    pub fn mul_digits_into(&self, x: &[u64], y: &[u64], scratch: &mut Vec<u64>, out: &mut Vec<u64>) {
        let data = &*self.0;
        let d = data.d;
        let levels = data.levels;
        let w = 2 * d + levels * d;
        scratch.clear();
        scratch.resize(levels * w, 0);
        // Convolution, skipping products beyond Y^s (they vanish by R1).
        // Raw accumulation is safe: digits are < p, so each entry stays below
        // levels * d * p^2 which is far under u64 range at this scale.
        for b1 in 0..levels {
            let x_row = b1 * d;
            if x[x_row..x_row + d].iter().all(|&c| c == 0) {
                continue;
            }
            for b2 in 0..levels - b1 {
                let y_row = b2 * d;
                let dst = (b1 + b2) * w;
                for a1 in 0..d {
                    let xc = x[x_row + a1];
                    if xc == 0 {
                        continue;
                    }
                    for a2 in 0..d {
                        let yc = y[y_row + a2];
                        if yc != 0 {
                            scratch[dst + a1 + a2] += xc * yc;
                        }
                    }
                }
            }
        }
        let pr = data.m.pr();
        for c in scratch.iter_mut() {
            if *c >= pr {
                *c %= pr;
            }
        }
        self.nf_in_place(scratch, w, RewriteOrder::GReduceFirst);
        out.clear();
        out.resize(self.digit_len(), 0);
        for b in 0..levels {
            for a in 0..d {
                out[b * d + a] = scratch[b * w + a];
            }
        }
    }

    fn binary_op(&self, x: &RingElem, y: &RingElem, mul: bool) -> RingElem {
        assert!(
            self == &x.ring && self == &y.ring,
            "operands come from different presentations"
        );
        let mut scratch = Vec::new();
        let mut out = Vec::new();
        if mul {
            self.mul_digits_into(&x.digits, &y.digits, &mut scratch, &mut out);
        } else {
            self.add_digits_into(&x.digits, &y.digits, &mut scratch, &mut out);
        }
        RingElem {
            ring: self.clone(),
            digits: out,
        }
    }
}

/// Deterministic iterator over all digit matrices of a ring.
pub struct ElemIter {
    ring: ChainRing,
    next: u128,
}

impl Iterator for ElemIter {
    type Item = RingElem;

    fn next(&mut self) -> Option<RingElem> {
        if self.next >= self.ring.order() {
            return None;
        }
        let idx = self.next as u64;
        self.next += 1;
        Some(self.ring.elem_from_index(idx))
    }
}

impl RingElem {
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at X-degree `a`, Y-degree `b`.
    pub fn digit(&self, b: usize, a: usize) -> u64 {
        self.digits[b * self.ring.d() + a]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&c| c == 0)
    }

    pub fn add(&self, rhs: &RingElem) -> RingElem {
        self.ring.binary_op(self, rhs, false)
    }

    pub fn mul(&self, rhs: &RingElem) -> RingElem {
        self.ring.binary_op(self, rhs, true)
    }

    pub fn neg(&self) -> RingElem {
        let m = self.ring.modulus();
        let negated: Vec<u64> = self.digits.iter().map(|&c| m.neg(c)).collect();
        // shed the p-parts introduced by negation
        let mut scratch = Vec::new();
        let mut out = Vec::new();
        let zero = vec![0u64; self.digits.len()];
        let tmp = RingElem {
            ring: self.ring.clone(),
            digits: negated,
        };
        self.ring
            .add_digits_into(&tmp.digits, &zero, &mut scratch, &mut out);
        RingElem {
            ring: self.ring.clone(),
            digits: out,
        }
    }

    pub fn sub(&self, rhs: &RingElem) -> RingElem {
        self.add(&rhs.neg())
    }

    /// Scalar action of `Z_{p^r}`.
    pub fn scalar_mul(&self, c: u64) -> RingElem {
        let m = self.ring.modulus();
        let c = m.reduce(c);
        let scaled: Vec<u64> = self.digits.iter().map(|&x| m.mul(x, c)).collect();
        let mut scratch = Vec::new();
        let mut out = Vec::new();
        let zero = vec![0u64; self.digits.len()];
        self.ring
            .add_digits_into(&scaled, &zero, &mut scratch, &mut out);
        RingElem {
            ring: self.ring.clone(),
            digits: out,
        }
    }

    pub fn pow(&self, mut exp: u128) -> RingElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Image in the residue field: the Y-degree-0 digits.
    pub fn residue(&self) -> FieldElem {
        let d = self.ring.d();
        self.ring.residue_field().from_digits(&self.digits[..d])
    }

    /// A unit is exactly an element with nonzero residue.
    pub fn is_unit(&self) -> bool {
        !self.residue().is_zero()
    }

    /// Inverse of a unit by exponentiation to `|U(R)| - 1`, where
    /// `|U(R)| = q^(s+1) - q^s`.
    pub fn inverse(&self) -> Result<RingElem, PresentationError> {
        if !self.is_unit() {
            return Err(PresentationError::NotAUnit);
        }
        let q = self.ring.q() as u128;
        let unit_order = self.ring.order() - self.ring.order() / q;
        let inv = self.pow(unit_order - 1);
        debug_assert!(inv.mul(self) == self.ring.one());
        Ok(inv)
    }

    /// The element as a bivariate polynomial with reduced digits.
    pub fn to_bipoly(&self) -> BiPoly {
        let m = self.ring.modulus();
        let d = self.ring.d();
        let parts = (0..self.ring.0.levels)
            .map(|b| UniPoly::from_coeffs(m, self.digits[b * d..(b + 1) * d].to_vec()))
            .collect();
        BiPoly::from_parts(m, parts)
    }

    /// The Y-degree-`b` slice as a polynomial in X.
    pub fn y_part(&self, b: usize) -> UniPoly {
        let d = self.ring.d();
        UniPoly::from_coeffs(self.ring.modulus(), self.digits[b * d..(b + 1) * d].to_vec())
    }
}

impl std::fmt::Display for RingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    fn ring(pres: Presentation) -> ChainRing {
        ChainRing::new(pres).unwrap()
    }

    fn z4() -> ChainRing {
        ring(Presentation::new(2, 2, 1, vec![0, 1], vec![(1, vec![1])], vec![]))
    }

    fn pc() -> ChainRing {
        ring(Presentation::new(2, 2, 2, vec![0, 1], vec![(2, vec![1])], vec![]))
    }

    fn f4y() -> ChainRing {
        // F_4[Y]/(Y^2)
        ring(Presentation::new(2, 1, 1, vec![1, 1, 1], vec![], vec![]))
    }

    #[test]
    fn nf_of_two_in_z4_is_y() {
        let r = z4();
        let two = r.from_int(2);
        assert_eq!(two, r.y());
        assert_eq!(two.to_string(), "Y");
    }

    #[test]
    fn nf_kills_high_y_powers() {
        for r in [z4(), pc()] {
            let s = r.s() as usize;
            let y_cube = r.normal_form(&BiPoly::monomial(r.modulus(), 1, 0, 3));
            if s <= 2 {
                if s == 2 {
                    // Y^3 = Y * Y^2 = Y * 2 and 2Y = 0 in P_C
                    assert!(y_cube.is_zero());
                } else {
                    assert!(y_cube.is_zero());
                }
            }
        }
    }

    #[test]
    fn nf_of_3y_in_pc_is_y() {
        let r = pc();
        let e = r.normal_form(&BiPoly::monomial(r.modulus(), 3, 0, 1));
        assert_eq!(e, r.y());
    }

    #[test]
    fn element_counts() {
        assert_eq!(z4().order(), 4);
        assert_eq!(pc().order(), 8);
        assert_eq!(f4y().order(), 16);
        assert_eq!(z4().elements().count(), 4);
        assert_eq!(pc().elements().count(), 8);
        assert_eq!(f4y().elements().count(), 16);
    }

    #[test]
    fn z4_addition_matches_integers() {
        let r = z4();
        // Y + Y = 0, i.e. 2 + 2 = 0 in Z_4
        assert!(r.y().add(&r.y()).is_zero());
        for a in 0..4u64 {
            for b in 0..4u64 {
                assert_eq!(
                    r.from_int(a).add(&r.from_int(b)),
                    r.from_int((a + b) % 4),
                    "addition wrong at {a}+{b}"
                );
                assert_eq!(r.from_int(a).mul(&r.from_int(b)), r.from_int((a * b) % 4));
            }
        }
    }

    #[test]
    fn pc_square_of_y_is_two() {
        let r = pc();
        let y2 = r.y().mul(&r.y());
        assert_eq!(y2, r.from_int(2));
        assert_eq!(y2.digit(2, 0), 1);
        // and 2*Y = 0 (the annihilator relation)
        assert!(r.from_int(2).mul(&r.y()).is_zero());
    }

    #[test]
    fn mul_by_one_is_identity() {
        for r in [z4(), pc(), f4y()] {
            let one = r.one();
            for e in r.elements() {
                assert_eq!(e.mul(&one), e);
                assert_eq!(e.add(&r.zero()), e);
                assert!(e.add(&e.neg()).is_zero());
            }
        }
    }

    #[test]
    fn unit_inverse_in_z4() {
        let r = z4();
        let three = r.from_int(3); // 1 + Y
        assert!(three.is_unit());
        let inv = three.inverse().unwrap();
        assert_eq!(inv, three); // 3*3 = 9 = 1 in Z_4
        assert!(!r.y().is_unit());
        assert!(r.y().inverse().is_err());
    }

    #[test]
    fn residue_drops_y_digits() {
        let r = f4y();
        let e = r.x().add(&r.y());
        let k = r.residue_field();
        let x_class = k.from_poly(&UniPoly::x(crate::arith::zmod::Modulus::new(2, 1).unwrap()));
        assert_eq!(e.residue(), x_class);
    }

    #[test]
    fn generators_of_kernel_vanish() {
        for r in [z4(), pc(), f4y()] {
            let m = r.modulus();
            let s = r.s() as usize;
            // Y^{s+1}
            assert!(r.normal_form(&BiPoly::monomial(m, 1, 0, s + 1)).is_zero());
            // g(X) - sum v_j Y^{s_j}
            let mut gpoly = BiPoly::from_uni(UniPoly::from_coeffs(m, r.presentation().g.clone()));
            for t in &r.presentation().g_rel {
                let vp = UniPoly::from_coeffs(m, t.v.clone());
                gpoly = gpoly.sub(&BiPoly::from_parts(m, {
                    let mut parts = vec![UniPoly::zero(m); t.s as usize + 1];
                    parts[t.s as usize] = vp;
                    parts
                }));
            }
            assert!(r.normal_form(&gpoly).is_zero(), "g-relation nonzero");
            if r.r() >= 2 {
                let t1 = r.presentation().p_rel[0].t as usize;
                // p Y^{s+1-t1}
                assert!(r
                    .normal_form(&BiPoly::monomial(m, r.p(), 0, s + 1 - t1))
                    .is_zero());
                // p - sum u_i Y^{t_i}
                let mut ppoly = BiPoly::constant(m, r.p());
                for t in &r.presentation().p_rel {
                    let up = UniPoly::from_coeffs(m, t.u.clone());
                    ppoly = ppoly.sub(&BiPoly::from_parts(m, {
                        let mut parts = vec![UniPoly::zero(m); t.t as usize + 1];
                        parts[t.t as usize] = up;
                        parts
                    }));
                }
                assert!(r.normal_form(&ppoly).is_zero(), "p-relation nonzero");
            }
        }
    }

    #[test]
    fn rewrite_orders_agree_on_monomials() {
        for r in [z4(), pc(), f4y()] {
            let m = r.modulus();
            for c in 1..m.pr() {
                for a in 0..2 * r.d() {
                    for b in 0..=2 * r.s() as usize {
                        let f = BiPoly::monomial(m, c, a, b);
                        assert_eq!(
                            r.normal_form_ordered(&f, RewriteOrder::GReduceFirst),
                            r.normal_form_ordered(&f, RewriteOrder::PDigitFirst),
                            "order disagreement at {f}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "different presentations")]
    fn mixed_presentation_operands_rejected() {
        let a = z4().one();
        let b = pc().one();
        let _ = a.add(&b);
    }

    #[test]
    fn index_round_trip() {
        let r = pc();
        for (i, e) in r.elements().enumerate() {
            assert_eq!(r.index_of(&e), i as u64);
            assert_eq!(r.elem_from_index(i as u64), e);
        }
    }
}
