//! Presentations of finite chain rings as quotients of `Z_{p^r}[X,Y]`.
//!
//! A presentation is the parameter pack `(p, r, s, g, p_rel, g_rel)` encoding
//! the kernel ideal
//!
//! ```text
//! Q = ( p*Y^(s+1-t_1),  Y^(s+1),  p - Sum u_i(X)*Y^(t_i),  g(X) - Sum v_j(X)*Y^(s_j) )
//! ```
//!
//! with `g` monic and irreducible mod `p`. For `r = 1` the `p`-relation is
//! absent (`p_rel` empty) and the first generator degenerates; `g_rel` empty
//! means the last generator is `g(X)` alone. The quotient is a finite local
//! ring whose maximal ideal is generated by the class of `Y`, with residue
//! field `F_p[X]/(g mod p)` and exactly `s` nontrivial ideals.

pub mod certify;
pub mod ring;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::poly::{irreducible_mod_p, UniPoly};
use crate::arith::zmod::{is_prime, Modulus};

/// One term `u(X) * Y^t` of the relation expressing `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PRelTerm {
    pub t: u32,
    pub u: Vec<u64>,
}

/// One term `v(X) * Y^s` of the relation expressing `g(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRelTerm {
    pub s: u32,
    pub v: Vec<u64>,
}

/// The parameter pack defining a chain-ring quotient of `Z_{p^r}[X,Y]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub p: u64,
    pub r: u32,
    pub s: u32,
    /// Coefficients of the monic polynomial `g`, lowest degree first.
    pub g: Vec<u64>,
    #[serde(default)]
    pub p_rel: Vec<PRelTerm>,
    #[serde(default)]
    pub g_rel: Vec<GRelTerm>,
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("invalid presentation: {0}")]
    Invalid(ValidationReport),
    #[error("ring order {0} exceeds the bound {1}")]
    OrderExceedsBound(u128, u128),
    #[error("residue field construction failed: {0}")]
    Field(#[from] crate::arith::zmod::ArithError),
    #[error("element is not a unit")]
    NotAUnit,
}

/// Outcome of checking every presentation invariant; empty means valid.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            write!(f, "valid")
        } else {
            write!(f, "{}", self.violations.join("; "))
        }
    }
}

/// Checks every structural constraint on a presentation and reports each
/// violated one. Accepts exactly when the report is empty.
pub fn validate(pres: &Presentation) -> ValidationReport {
    let mut v = Vec::new();
    if !is_prime(pres.p) {
        v.push(format!("p = {} is not prime", pres.p));
    }
    if pres.r == 0 {
        v.push("r must be at least 1".into());
    }
    if pres.s == 0 {
        v.push("s must be at least 1".into());
    }
    if !v.is_empty() {
        return ValidationReport { violations: v };
    }
    let m = match Modulus::new(pres.p, pres.r) {
        Ok(m) => m,
        Err(e) => {
            v.push(format!("modulus p^r unusable: {e}"));
            return ValidationReport { violations: v };
        }
    };
    let p = pres.p;
    let s = pres.s;

    // g: monic, coefficients in {0..p-1}, irreducible mod p
    let g = UniPoly::from_coeffs(m, pres.g.clone());
    let d = match g.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            v.push("g must have degree at least 1".into());
            return ValidationReport { violations: v };
        }
    };
    if !g.is_monic() {
        v.push(format!("g = {g} is not monic"));
    }
    if pres.g.iter().any(|&c| c >= p) {
        v.push("g has a coefficient outside {0..p-1}".into());
    }
    match irreducible_mod_p(&g) {
        Ok(true) => {}
        Ok(false) => v.push(format!("g = {g} is reducible mod {p}")),
        Err(e) => v.push(format!("irreducibility check failed: {e}")),
    }

    let mut check_terms = |kind: &str, terms: &[(u32, &[u64])]| {
        let mut prev = 0u32;
        for (i, (level, coeffs)) in terms.iter().enumerate() {
            if *level < 1 || *level > s {
                v.push(format!("{kind} exponent {level} outside 1..={s}"));
            }
            if i > 0 && *level <= prev {
                v.push(format!("{kind} exponents not strictly increasing at {level}"));
            }
            prev = *level;
            if coeffs.iter().all(|&c| c == 0) {
                v.push(format!("{kind} coefficient polynomial at Y^{level} is zero, so it lies in (p, g)"));
            }
            if coeffs.iter().any(|&c| c >= p) {
                v.push(format!("{kind} coefficient at Y^{level} outside {{0..p-1}}"));
            }
            if coeffs.len() > d {
                v.push(format!("{kind} coefficient at Y^{level} has degree >= deg g"));
            }
        }
    };
    let p_terms: Vec<(u32, &[u64])> = pres.p_rel.iter().map(|t| (t.t, t.u.as_slice())).collect();
    let g_terms: Vec<(u32, &[u64])> = pres.g_rel.iter().map(|t| (t.s, t.v.as_slice())).collect();
    check_terms("p_rel", &p_terms);
    check_terms("g_rel", &g_terms);

    if pres.r >= 2 {
        match pres.p_rel.first() {
            None => v.push("r >= 2 requires a nonempty p_rel".into()),
            Some(first) => {
                let t1 = first.t as u64;
                let (r, s) = (pres.r as u64, pres.s as u64);
                if !((r - 1) * t1 <= s) {
                    v.push(format!("(r-1)*t1 = {} exceeds s = {s}", (r - 1) * t1));
                }
                if !(s < r * t1) {
                    v.push(format!("s = {s} is not below r*t1 = {}", r * t1));
                }
            }
        }
    } else if !pres.p_rel.is_empty() {
        v.push("r = 1 requires an empty p_rel".into());
    }

    ValidationReport { violations: v }
}

impl Presentation {
    /// Convenience constructor from integer-coded relation terms.
    pub fn new(
        p: u64,
        r: u32,
        s: u32,
        g: Vec<u64>,
        p_rel: Vec<(u32, Vec<u64>)>,
        g_rel: Vec<(u32, Vec<u64>)>,
    ) -> Self {
        Presentation {
            p,
            r,
            s,
            g,
            p_rel: p_rel.into_iter().map(|(t, u)| PRelTerm { t, u }).collect(),
            g_rel: g_rel.into_iter().map(|(s, v)| GRelTerm { s, v }).collect(),
        }
    }

    /// `deg g`.
    pub fn g_degree(&self) -> usize {
        self.g.len().saturating_sub(1)
    }

    /// Residue field order `q = p^deg(g)`.
    pub fn residue_order(&self) -> u64 {
        self.p.pow(self.g_degree() as u32)
    }

    /// Ring order `q^(s+1)`.
    pub fn order(&self) -> u128 {
        (self.residue_order() as u128).pow(self.s + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z4_pres() -> Presentation {
        Presentation::new(2, 2, 1, vec![0, 1], vec![(1, vec![1])], vec![])
    }

    pub(crate) fn pc_pres() -> Presentation {
        // Z_4[Y]/(Y^2 - 2, 2Y)
        Presentation::new(2, 2, 2, vec![0, 1], vec![(2, vec![1])], vec![])
    }

    #[test]
    fn validates_z4() {
        assert!(validate(&z4_pres()).ok());
        assert!(validate(&pc_pres()).ok());
    }

    #[test]
    fn rejects_t1_out_of_band() {
        // s = 2 with t1 = 1 fails s < r*t1 (2 < 2 is false)
        let pres = Presentation::new(2, 2, 2, vec![0, 1], vec![(1, vec![1])], vec![]);
        let rep = validate(&pres);
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|m| m.contains("r*t1")));
    }

    #[test]
    fn rejects_reducible_g() {
        let pres = Presentation::new(2, 1, 3, vec![1, 0, 1], vec![], vec![]);
        let rep = validate(&pres);
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|m| m.contains("reducible")));
    }

    #[test]
    fn rejects_zero_relation_coefficient() {
        let pres = Presentation::new(2, 2, 1, vec![0, 1], vec![(1, vec![0])], vec![]);
        let rep = validate(&pres);
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|m| m.contains("zero")));
    }

    #[test]
    fn rejects_missing_p_rel_for_r2() {
        let pres = Presentation::new(2, 2, 1, vec![0, 1], vec![], vec![]);
        assert!(!validate(&pres).ok());
        // and the converse: r = 1 with a p_rel
        let pres = Presentation::new(2, 1, 1, vec![0, 1], vec![(1, vec![1])], vec![]);
        assert!(!validate(&pres).ok());
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let json = r#"{"p":2,"r":2,"s":2,"g":[0,1],"p_rel":[{"t":2,"u":[1]}],"g_rel":[]}"#;
        let pres: Presentation = serde_json::from_str(json).unwrap();
        assert_eq!(pres, pc_pres());
        let back = serde_json::to_string(&pres).unwrap();
        let again: Presentation = serde_json::from_str(&back).unwrap();
        assert_eq!(again, pres);
    }
}
