//! Univariate and bivariate polynomials over `Z_{p^r}`.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! representation of each polynomial is canonical.

use super::zmod::{ArithError, Modulus, ZMod};

/// Polynomial in one variable over `Z_{p^r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    m: Modulus,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn zero(m: Modulus) -> Self {
        UniPoly { m, coeffs: vec![] }
    }

    pub fn one(m: Modulus) -> Self {
        UniPoly::constant(m, 1)
    }

    pub fn x(m: Modulus) -> Self {
        UniPoly::from_coeffs(m, vec![0, 1])
    }

    pub fn constant(m: Modulus, c: u64) -> Self {
        UniPoly::from_coeffs(m, vec![c])
    }

    pub fn monomial(m: Modulus, deg: usize, c: u64) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        UniPoly::from_coeffs(m, coeffs)
    }

    /// Reduces every coefficient and trims trailing zeros.
    pub fn from_coeffs(m: Modulus, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = m.reduce(*c);
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { m, coeffs }
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check_same(&self, other: &UniPoly) {
        assert_eq!(self.m, other.m, "mixed moduli in polynomial arithmetic");
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check_same(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.m.add(self.coeff(i), other.coeff(i));
        }
        UniPoly::from_coeffs(self.m, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.check_same(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.m.sub(self.coeff(i), other.coeff(i));
        }
        UniPoly::from_coeffs(self.m, out)
    }

    pub fn neg(&self) -> UniPoly {
        let out = self.coeffs.iter().map(|&c| self.m.neg(c)).collect();
        UniPoly { m: self.m, coeffs: out }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check_same(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.m);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.m.add(out[i + j], self.m.mul(a, b));
            }
        }
        UniPoly::from_coeffs(self.m, out)
    }

    pub fn scale(&self, c: u64) -> UniPoly {
        let c = self.m.reduce(c);
        let out = self.coeffs.iter().map(|&a| self.m.mul(a, c)).collect();
        UniPoly::from_coeffs(self.m, out)
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u64; k];
        out.extend_from_slice(&self.coeffs);
        UniPoly { m: self.m, coeffs: out }
    }

    pub fn eval(&self, at: ZMod) -> ZMod {
        assert_eq!(self.m, at.modulus(), "mixed moduli in evaluation");
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.m.add(self.m.mul(acc, at.value()), c);
        }
        ZMod::new(self.m, acc)
    }

    /// Exact division with remainder by a monic divisor of degree >= 1.
    ///
    /// Returns `(quotient, remainder)` with `self = g*quotient + remainder`
    /// and `deg remainder < deg g`. Works over any `Z_{p^r}` because a monic
    /// leading coefficient needs no inversion.
    pub fn divrem_monic(&self, g: &UniPoly) -> Result<(UniPoly, UniPoly), ArithError> {
        self.check_same(g);
        let gd = match g.degree() {
            Some(d) if d >= 1 && g.is_monic() => d,
            _ => return Err(ArithError::NonMonicDivisor),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= gd {
            return Ok((UniPoly::zero(self.m), self.clone()));
        }
        let qlen = rem.len() - gd;
        let mut quot = vec![0u64; qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + gd];
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                rem[k + i] = self.m.sub(rem[k + i], self.m.mul(c, gc));
            }
        }
        Ok((
            UniPoly::from_coeffs(self.m, quot),
            UniPoly::from_coeffs(self.m, rem),
        ))
    }

    /// The image in `Z_p[X]`, coefficients reduced mod `p`.
    pub fn reduce_mod_p(&self) -> UniPoly {
        let mp = self.m.prime_part();
        UniPoly::from_coeffs(mp, self.coeffs.clone())
    }

    /// Reinterprets the coefficients in another modulus. Fails when a
    /// coefficient is out of range for the target.
    pub fn with_modulus(&self, m2: Modulus) -> Result<UniPoly, ArithError> {
        if self.coeffs.iter().any(|&c| c >= m2.pr()) {
            return Err(ArithError::NotRepresentable);
        }
        Ok(UniPoly {
            m: m2,
            coeffs: self.coeffs.clone(),
        })
    }

    /// True when every coefficient lies in `{0, .., p-1}`.
    pub fn coeffs_below_p(&self) -> bool {
        self.coeffs.iter().all(|&c| c < self.m.p())
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}*X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in two variables; `parts[b]` holds the coefficient of `Y^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    m: Modulus,
    parts: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero(m: Modulus) -> Self {
        BiPoly { m, parts: vec![] }
    }

    pub fn constant(m: Modulus, c: u64) -> Self {
        BiPoly::from_parts(m, vec![UniPoly::constant(m, c)])
    }

    pub fn from_uni(u: UniPoly) -> Self {
        BiPoly::from_parts(u.modulus(), vec![u])
    }

    /// `c * X^a * Y^b`
    pub fn monomial(m: Modulus, c: u64, a: usize, b: usize) -> Self {
        let mut parts = vec![UniPoly::zero(m); b + 1];
        parts[b] = UniPoly::monomial(m, a, c);
        BiPoly::from_parts(m, parts)
    }

    pub fn from_parts(m: Modulus, mut parts: Vec<UniPoly>) -> Self {
        for p in &parts {
            assert_eq!(p.modulus(), m, "mixed moduli in bivariate polynomial");
        }
        while parts.last().map_or(false, |p| p.is_zero()) {
            parts.pop();
        }
        BiPoly { m, parts }
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn parts(&self) -> &[UniPoly] {
        &self.parts
    }

    pub fn part(&self, b: usize) -> UniPoly {
        self.parts
            .get(b)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(self.m))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Highest power of `Y` with a nonzero coefficient.
    pub fn y_degree(&self) -> Option<usize> {
        self.parts.len().checked_sub(1)
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        assert_eq!(self.m, other.m, "mixed moduli");
        let n = self.parts.len().max(other.parts.len());
        let parts = (0..n).map(|b| self.part(b).add(&other.part(b))).collect();
        BiPoly::from_parts(self.m, parts)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        assert_eq!(self.m, other.m, "mixed moduli");
        let n = self.parts.len().max(other.parts.len());
        let parts = (0..n).map(|b| self.part(b).sub(&other.part(b))).collect();
        BiPoly::from_parts(self.m, parts)
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        assert_eq!(self.m, other.m, "mixed moduli");
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(self.m);
        }
        let n = self.parts.len() + other.parts.len() - 1;
        let mut parts = vec![UniPoly::zero(self.m); n];
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.parts.iter().enumerate() {
                parts[i + j] = parts[i + j].add(&a.mul(b));
            }
        }
        BiPoly::from_parts(self.m, parts)
    }

    pub fn scale(&self, c: u64) -> BiPoly {
        let parts = self.parts.iter().map(|p| p.scale(c)).collect();
        BiPoly::from_parts(self.m, parts)
    }
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, part) in self.parts.iter().enumerate() {
            for (a, &c) in part.coeffs().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let mut pieces = Vec::new();
                if c != 1 || (a == 0 && b == 0) {
                    pieces.push(format!("{c}"));
                }
                if a == 1 {
                    pieces.push("X".into());
                } else if a > 1 {
                    pieces.push(format!("X^{a}"));
                }
                if b == 1 {
                    pieces.push("Y".into());
                } else if b > 1 {
                    pieces.push(format!("Y^{b}"));
                }
                write!(f, "{}", pieces.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All monic polynomials of the given degree over `Z_p`, in lexicographic
/// order of `(a_{d-1}, .., a_1, a_0)`.
pub fn monic_mod_p(p: u64, d: usize) -> impl Iterator<Item = UniPoly> {
    let m = Modulus::new(p, 1).expect("prime");
    let count = p.pow(d as u32);
    (0..count).map(move |k| {
        let mut coeffs = vec![0u64; d + 1];
        let mut v = k;
        for c in coeffs.iter_mut().take(d) {
            *c = v % p;
            v /= p;
        }
        coeffs[d] = 1;
        UniPoly::from_coeffs(m, coeffs)
    })
}

/// Whether the reduction of `g` mod `p` is irreducible over `Z_p`.
///
/// Trial division by all monic polynomials of degree up to `d/2`; fine at the
/// scale this crate targets. A Frobenius-power test would be the fast path if
/// larger degrees were ever needed.
pub fn irreducible_mod_p(g: &UniPoly) -> Result<bool, ArithError> {
    let gp = g.reduce_mod_p();
    let d = match gp.degree() {
        Some(d) if d >= 1 && gp.is_monic() => d,
        _ => return Err(ArithError::NotMonicModP),
    };
    let p = gp.modulus().p();
    for e in 1..=d / 2 {
        for h in monic_mod_p(p, e) {
            let (_, rem) = gp.divrem_monic(&h)?;
            if rem.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The lexicographically least monic irreducible polynomial of degree `d`
/// over `Z_p`. Deterministic, so generated moduli are reproducible.
pub fn gen_irreducible(p: u64, d: usize) -> Result<UniPoly, ArithError> {
    if d == 0 {
        return Err(ArithError::NotMonicModP);
    }
    Modulus::new(p, 1)?;
    for cand in monic_mod_p(p, d) {
        if irreducible_mod_p(&cand)? {
            return Ok(cand);
        }
    }
    unreachable!("an irreducible monic polynomial of every degree exists over Z_p")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(p: u64, r: u32) -> Modulus {
        Modulus::new(p, r).unwrap()
    }

    #[test]
    fn divrem_examples() {
        // f = X^2 + 3, g = X + 1 over Z_4 -> quotient X + 3, remainder 0
        let m = zm(2, 2);
        let f = UniPoly::from_coeffs(m, vec![3, 0, 1]);
        let g = UniPoly::from_coeffs(m, vec![1, 1]);
        let (q, rem) = f.divrem_monic(&g).unwrap();
        assert_eq!(q, UniPoly::from_coeffs(m, vec![3, 1]));
        assert!(rem.is_zero());
        assert_eq!(g.mul(&q).add(&rem), f);

        // f = X, g = X -> (1, 0)
        let x = UniPoly::x(m);
        let (q, rem) = x.divrem_monic(&x).unwrap();
        assert_eq!(q, UniPoly::one(m));
        assert!(rem.is_zero());

        // f = 2, g = X -> (0, 2)
        let two = UniPoly::constant(m, 2);
        let (q, rem) = two.divrem_monic(&x).unwrap();
        assert!(q.is_zero());
        assert_eq!(rem, two);
    }

    #[test]
    fn divrem_rejects_non_monic() {
        let m = zm(3, 1);
        let f = UniPoly::x(m);
        let g = UniPoly::from_coeffs(m, vec![1, 2]);
        assert_eq!(f.divrem_monic(&g), Err(ArithError::NonMonicDivisor));
        let c = UniPoly::one(m);
        assert_eq!(f.divrem_monic(&c), Err(ArithError::NonMonicDivisor));
    }

    #[test]
    fn divrem_roundtrip_randomized() {
        // g*q + rem = f identically, over a few moduli and shapes
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for m in [zm(2, 3), zm(3, 2), zm(5, 1)] {
            for _ in 0..200 {
                let fd = (next() % 7) as usize;
                let gd = 1 + (next() % 4) as usize;
                let f =
                    UniPoly::from_coeffs(m, (0..=fd).map(|_| next() % m.pr()).collect());
                let mut gc: Vec<u64> = (0..gd).map(|_| next() % m.pr()).collect();
                gc.push(1);
                let g = UniPoly::from_coeffs(m, gc);
                let (q, rem) = f.divrem_monic(&g).unwrap();
                assert!(rem.degree().map_or(true, |rd| rd < gd));
                assert_eq!(g.mul(&q).add(&rem), f);
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        let m2 = zm(2, 1);
        // X^2 + X + 1 irreducible over Z_2
        assert!(irreducible_mod_p(&UniPoly::from_coeffs(m2, vec![1, 1, 1])).unwrap());
        // X^2 + 1 = (X+1)^2 over Z_2
        assert!(!irreducible_mod_p(&UniPoly::from_coeffs(m2, vec![1, 0, 1])).unwrap());
        // linear is irreducible
        for p in [2u64, 3, 5] {
            let m = zm(p, 1);
            assert!(irreducible_mod_p(&UniPoly::x(m)).unwrap());
        }
        // zero and non-monic rejected
        assert!(irreducible_mod_p(&UniPoly::zero(m2)).is_err());
        let m3 = zm(3, 1);
        assert!(irreducible_mod_p(&UniPoly::from_coeffs(m3, vec![1, 2])).is_err());
    }

    /// Brute-force irreducibility: no monic factorization g = a*b with both
    /// degrees >= 1. Independent of the trial-division route.
    fn irreducible_by_factor_enum(g: &UniPoly) -> bool {
        let d = g.degree().unwrap();
        let p = g.modulus().p();
        for da in 1..d {
            let db = d - da;
            for a in monic_mod_p(p, da) {
                for b in monic_mod_p(p, db) {
                    if a.mul(&b) == *g {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn irreducibility_agrees_with_factor_enumeration() {
        for p in [2u64, 3] {
            for d in 1..=4usize {
                for g in monic_mod_p(p, d) {
                    assert_eq!(
                        irreducible_mod_p(&g).unwrap(),
                        irreducible_by_factor_enum(&g),
                        "disagreement at p={p} g={g}"
                    );
                }
            }
        }
    }

    #[test]
    fn gen_irreducible_examples() {
        assert_eq!(gen_irreducible(2, 1).unwrap(), UniPoly::x(zm(2, 1)));
        assert_eq!(
            gen_irreducible(2, 2).unwrap(),
            UniPoly::from_coeffs(zm(2, 1), vec![1, 1, 1])
        );
        assert_eq!(
            gen_irreducible(3, 2).unwrap(),
            UniPoly::from_coeffs(zm(3, 1), vec![1, 0, 1])
        );
    }

    #[test]
    fn bipoly_mul_matches_manual() {
        let m = zm(2, 2);
        // (1 + XY) * (Y + 3) = 3 + Y + 3XY + XY^2
        let a = BiPoly::constant(m, 1).add(&BiPoly::monomial(m, 1, 1, 1));
        let b = BiPoly::monomial(m, 1, 0, 1).add(&BiPoly::constant(m, 3));
        let prod = a.mul(&b);
        let expect = BiPoly::constant(m, 3)
            .add(&BiPoly::monomial(m, 1, 0, 1))
            .add(&BiPoly::monomial(m, 3, 1, 1))
            .add(&BiPoly::monomial(m, 1, 1, 2));
        assert_eq!(prod, expect);
    }

    #[test]
    fn display_forms() {
        let m = zm(2, 2);
        let f = UniPoly::from_coeffs(m, vec![1, 1, 1]);
        assert_eq!(f.to_string(), "X^2 + X + 1");
        let e = BiPoly::constant(m, 1).add(&BiPoly::monomial(m, 1, 1, 2));
        assert_eq!(e.to_string(), "1 + X*Y^2");
        assert_eq!(BiPoly::zero(m).to_string(), "0");
    }
}
