//! Integers modulo a prime power `p^r`.
//!
//! The modulus is a shared context descriptor carried by every value; mixing
//! values with different moduli is a programming error and panics rather than
//! coercing silently.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("modulus base {0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("p^r = {p}^{r} does not fit in the supported range")]
    ModulusOverflow { p: u64, r: u32 },
    #[error("division requires a monic divisor of degree >= 1")]
    NonMonicDivisor,
    #[error("irreducibility test requires a nonzero input, monic mod p")]
    NotMonicModP,
    #[error("element {0} is not invertible")]
    NotInvertible(u64),
    #[error("no element satisfies the request: {0}")]
    SearchFailed(String),
    #[error("field order {0} exceeds the supported bound {1}")]
    FieldTooLarge(u64, u64),
    #[error("polynomial has coefficients not representable in the target modulus")]
    NotRepresentable,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Descriptor for the coefficient ring `Z_{p^r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    p: u64,
    r: u32,
    pr: u64,
}

impl Modulus {
    /// `p` must be prime, `r >= 1`, and `p^r` must fit in 63 bits so that
    /// products of residues fit in `u128`.
    pub fn new(p: u64, r: u32) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if r == 0 {
            return Err(ArithError::ZeroExponent);
        }
        let mut pr: u64 = 1;
        for _ in 0..r {
            pr = pr
                .checked_mul(p)
                .filter(|&v| v < (1u64 << 63))
                .ok_or(ArithError::ModulusOverflow { p, r })?;
        }
        Ok(Modulus { p, r, pr })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The modulus value `p^r`.
    pub fn pr(&self) -> u64 {
        self.pr
    }

    /// The same prime with exponent 1, i.e. the residue coefficient ring.
    pub fn prime_part(&self) -> Modulus {
        Modulus {
            p: self.p,
            r: 1,
            pr: self.p,
        }
    }

    pub fn reduce(&self, v: u64) -> u64 {
        v % self.pr
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        let m = self.pr as i128;
        (((v % m) + m) % m) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.pr && b < self.pr);
        let s = a + b;
        if s >= self.pr {
            s - self.pr
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.pr && b < self.pr);
        if a >= b {
            a - b
        } else {
            a + self.pr - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.pr);
        if a == 0 {
            0
        } else {
            self.pr - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.pr && b < self.pr);
        ((a as u128 * b as u128) % self.pr as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u128) -> u64 {
        base %= self.pr;
        let mut acc = 1u64 % self.pr;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a unit (an element coprime to `p`), by extended Euclid.
    pub fn inverse(&self, a: u64) -> Result<u64, ArithError> {
        let a = self.reduce(a);
        if a % self.p == 0 {
            return Err(ArithError::NotInvertible(a));
        }
        let (mut r0, mut r1) = (self.pr as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i128(t0))
    }
}

/// A residue in `Z_{p^r}`, always reduced into `[0, p^r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZMod {
    value: u64,
    m: Modulus,
}

impl ZMod {
    pub fn new(m: Modulus, value: u64) -> Self {
        ZMod {
            value: m.reduce(value),
            m,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        self.value % self.m.p != 0
    }

    pub fn pow(&self, exp: u128) -> ZMod {
        ZMod {
            value: self.m.pow(self.value, exp),
            m: self.m,
        }
    }

    pub fn inverse(&self) -> Result<ZMod, ArithError> {
        Ok(ZMod {
            value: self.m.inverse(self.value)?,
            m: self.m,
        })
    }

    fn check_same(&self, other: &ZMod) {
        assert_eq!(
            self.m, other.m,
            "mixed moduli: {}^{} vs {}^{}",
            self.m.p, self.m.r, other.m.p, other.m.r
        );
    }
}

impl std::ops::Add for ZMod {
    type Output = ZMod;
    fn add(self, rhs: ZMod) -> ZMod {
        self.check_same(&rhs);
        ZMod {
            value: self.m.add(self.value, rhs.value),
            m: self.m,
        }
    }
}

impl std::ops::Sub for ZMod {
    type Output = ZMod;
    fn sub(self, rhs: ZMod) -> ZMod {
        self.check_same(&rhs);
        ZMod {
            value: self.m.sub(self.value, rhs.value),
            m: self.m,
        }
    }
}

impl std::ops::Mul for ZMod {
    type Output = ZMod;
    fn mul(self, rhs: ZMod) -> ZMod {
        self.check_same(&rhs);
        ZMod {
            value: self.m.mul(self.value, rhs.value),
            m: self.m,
        }
    }
}

impl std::ops::Neg for ZMod {
    type Output = ZMod;
    fn neg(self) -> ZMod {
        ZMod {
            value: self.m.neg(self.value),
            m: self.m,
        }
    }
}

impl std::fmt::Display for ZMod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(Modulus::new(4, 1), Err(ArithError::NotPrime(4)));
        assert_eq!(Modulus::new(2, 0), Err(ArithError::ZeroExponent));
        assert!(Modulus::new(2, 64).is_err());
        assert!(Modulus::new(2, 62).is_ok());
    }

    #[test]
    fn ring_axioms_exhaustive_small_moduli() {
        // every prime power p^r <= 256
        let mut moduli = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut r = 1;
            while p.pow(r) <= 256 {
                moduli.push(Modulus::new(p, r).unwrap());
                r += 1;
            }
        }
        for m in moduli {
            let n = m.pr();
            for a in 0..n {
                assert_eq!(m.add(a, m.neg(a)), 0);
                assert_eq!(m.mul(a, 1 % n), a % n);
                for b in 0..n {
                    assert_eq!(m.add(a, b), m.add(b, a));
                    assert_eq!(m.mul(a, b), m.mul(b, a));
                    for c in 0..n {
                        assert_eq!(m.add(m.add(a, b), c), m.add(a, m.add(b, c)));
                        assert_eq!(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c)));
                        assert_eq!(m.mul(a, m.add(b, c)), m.add(m.mul(a, b), m.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_of_units() {
        let m = Modulus::new(3, 3).unwrap(); // Z_27
        for a in 0..27 {
            if a % 3 != 0 {
                let inv = m.inverse(a).unwrap();
                assert_eq!(m.mul(a, inv), 1);
            } else {
                assert!(m.inverse(a).is_err());
            }
        }
    }

    #[test]
    #[should_panic(expected = "mixed moduli")]
    fn mixed_modulus_rejected() {
        let a = ZMod::new(Modulus::new(2, 2).unwrap(), 1);
        let b = ZMod::new(Modulus::new(2, 3).unwrap(), 1);
        let _ = a + b;
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = Modulus::new(5, 2).unwrap();
        for a in 0..25 {
            let mut acc = 1u64;
            for e in 0..10u32 {
                assert_eq!(m.pow(a, e as u128), acc);
                acc = m.mul(acc, a);
            }
        }
    }
}
