//! Runtime certification that the digit model of a presentation really is the
//! quotient ring it claims to be.
//!
//! Passing all checks certifies: every kernel generator rewrites to zero, the
//! rewriting is idempotent and order-independent, the digit operations are
//! compatible with polynomial arithmetic, the ring axioms hold, and the
//! characteristic and nilpotency behave as the parameters dictate. Together
//! with the digit count `q^(s+1)` this pins the model up to canonical
//! isomorphism: the digit ring is a homomorphic image of the quotient, and
//! the quotient has at most `q^(s+1)` elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::poly::{BiPoly, UniPoly};

use super::ring::{ChainRing, RewriteOrder, RingElem};

/// Caps and sample counts for the certification sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifyBounds {
    /// Largest order for exhaustive pairwise checks.
    pub pairwise_cap: u128,
    /// Largest order for exhaustive triple checks.
    pub triple_cap: u128,
    /// Random samples used above the caps.
    pub samples: usize,
    pub seed: u64,
}

impl Default for CertifyBounds {
    fn default() -> Self {
        CertifyBounds {
            pairwise_cap: 4096,
            triple_cap: 512,
            samples: 100_000,
            seed: 0x5eed_c4a1,
        }
    }
}

impl CertifyBounds {
    /// A light profile for large parameter sweeps.
    pub fn sweep() -> Self {
        CertifyBounds {
            pairwise_cap: 256,
            triple_cap: 27,
            samples: 48,
            seed: 0x5eed_c4a1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertReport {
    pub passed: bool,
    pub checks: Vec<CertCheck>,
}

impl CertReport {
    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.passed &= pass;
        self.checks.push(CertCheck {
            name: name.into(),
            pass,
            detail,
        });
    }
}

impl std::fmt::Display for CertReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {} ({})",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(f, "overall: {}", if self.passed { "pass" } else { "FAIL" })
    }
}

impl ChainRing {
    /// The generators of the kernel ideal, as bivariate polynomials.
    pub fn kernel_generators(&self) -> Vec<BiPoly> {
        let pres = self.presentation();
        let m = self.modulus();
        let s = pres.s as usize;
        let mut gens = Vec::new();
        gens.push(BiPoly::monomial(m, 1, 0, s + 1)); // Y^{s+1}
        if let Some(first) = pres.p_rel.first() {
            let t1 = first.t as usize;
            gens.push(BiPoly::monomial(m, pres.p, 0, s + 1 - t1)); // p Y^{s+1-t1}
            let mut ppoly = BiPoly::constant(m, pres.p);
            for t in &pres.p_rel {
                let mut parts = vec![UniPoly::zero(m); t.t as usize + 1];
                parts[t.t as usize] = UniPoly::from_coeffs(m, t.u.clone());
                ppoly = ppoly.sub(&BiPoly::from_parts(m, parts));
            }
            gens.push(ppoly); // p - sum u_i Y^{t_i}
        }
        let mut gpoly = BiPoly::from_uni(UniPoly::from_coeffs(m, pres.g.clone()));
        for t in &pres.g_rel {
            let mut parts = vec![UniPoly::zero(m); t.s as usize + 1];
            parts[t.s as usize] = UniPoly::from_coeffs(m, t.v.clone());
            gpoly = gpoly.sub(&BiPoly::from_parts(m, parts));
        }
        gens.push(gpoly); // g - sum v_j Y^{s_j}
        gens
    }
}

fn random_bipoly(ring: &ChainRing, rng: &mut ChaCha8Rng) -> BiPoly {
    let m = ring.modulus();
    let d = ring.d();
    let s = ring.s() as usize;
    let y_deg = rng.gen_range(0..=s + 1);
    let parts = (0..=y_deg)
        .map(|_| {
            let x_deg = rng.gen_range(0..=2 * d);
            UniPoly::from_coeffs(m, (0..=x_deg).map(|_| rng.gen_range(0..m.pr())).collect())
        })
        .collect();
    BiPoly::from_parts(m, parts)
}

/// A small deterministic family of monomials that exercises every rewrite
/// rule: coefficients with and without `p`-parts, X-degrees needing
/// `g`-reduction, and Y-degrees in and beyond the annihilator zone.
fn structured_monomials(ring: &ChainRing) -> Vec<BiPoly> {
    let m = ring.modulus();
    let d = ring.d();
    let s = ring.s() as usize;
    let mut cs = vec![1, m.pr() - 1];
    if ring.r() >= 2 {
        cs.push(ring.p());
    }
    cs.dedup();
    let mut a_degs = vec![0, d.saturating_sub(1), 2 * d - 1];
    a_degs.dedup();
    let mut b_degs = vec![0, 1, s, s + 1];
    b_degs.sort_unstable();
    b_degs.dedup();
    let mut out = Vec::new();
    for &c in &cs {
        for &a in &a_degs {
            for &b in &b_degs {
                out.push(BiPoly::monomial(m, c, a, b));
            }
        }
    }
    out
}

fn compat_pair(ring: &ChainRing, f: &BiPoly, g: &BiPoly) -> bool {
    let nf_f = ring.normal_form(f);
    let nf_g = ring.normal_form(g);
    ring.normal_form(&f.add(g)) == nf_f.add(&nf_g)
        && ring.normal_form(&f.mul(g)) == nf_f.mul(&nf_g)
}

fn orders_agree(ring: &ChainRing, f: &BiPoly) -> bool {
    ring.normal_form_ordered(f, RewriteOrder::GReduceFirst)
        == ring.normal_form_ordered(f, RewriteOrder::PDigitFirst)
}

/// Runs the full certification suite on a validated presentation.
pub fn certify(ring: &ChainRing, bounds: &CertifyBounds) -> CertReport {
    let mut report = CertReport {
        passed: true,
        checks: Vec::new(),
    };
    let n = ring.order();
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);

    // (a) every kernel generator rewrites to zero, under both rule orders
    let gens = ring.kernel_generators();
    let bad: Vec<String> = gens
        .iter()
        .filter(|f| !ring.normal_form(f).is_zero() || !orders_agree(ring, f))
        .map(|f| f.to_string())
        .collect();
    report.push(
        "kernel_generators_vanish",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} generators", gens.len())
        } else {
            format!("nonzero: {}", bad.join(", "))
        },
    );

    // (b) rewriting is idempotent on every digit matrix; as every digit
    // matrix is a fixed point, the count of distinct normal forms is exactly
    // the digit count q^(s+1).
    let exhaustive_elems = n <= (1 << 20);
    let mut idem_fail = 0usize;
    let mut checked = 0usize;
    let mut check_elem = |e: &RingElem| {
        checked += 1;
        if ring.normal_form(&e.to_bipoly()) != *e {
            idem_fail += 1;
        }
    };
    if exhaustive_elems {
        for e in ring.elements() {
            check_elem(&e);
        }
    } else {
        for _ in 0..bounds.samples {
            let idx = rng.gen_range(0..n.min(u64::MAX as u128) as u64);
            check_elem(&ring.elem_from_index(idx));
        }
    }
    report.push(
        "normal_form_idempotent",
        idem_fail == 0,
        format!(
            "{checked} forms checked{}; digit count = {n}",
            if exhaustive_elems { "" } else { " (sampled)" }
        ),
    );

    // (c) compatibility with polynomial arithmetic: structured monomial
    // pairs plus random polynomial pairs. This is the homomorphism property
    // of the rewrite map.
    let mons = structured_monomials(ring);
    let mut compat_fail = 0usize;
    let mut compat_n = 0usize;
    for f in &mons {
        for g in &mons {
            compat_n += 1;
            if !compat_pair(ring, f, g) {
                compat_fail += 1;
            }
        }
    }
    for _ in 0..bounds.samples {
        let f = random_bipoly(ring, &mut rng);
        let g = random_bipoly(ring, &mut rng);
        compat_n += 1;
        if !compat_pair(ring, &f, &g) {
            compat_fail += 1;
        }
    }
    report.push(
        "polynomial_compatibility",
        compat_fail == 0,
        format!("{compat_n} pairs ({} structured monomials)", mons.len()),
    );

    // confluence evidence: the two rule orders agree on the same inputs
    let mut order_fail = 0usize;
    let mut order_n = 0usize;
    for f in &mons {
        order_n += 1;
        if !orders_agree(ring, f) {
            order_fail += 1;
        }
    }
    for _ in 0..bounds.samples {
        let f = random_bipoly(ring, &mut rng);
        order_n += 1;
        if !orders_agree(ring, &f) {
            order_fail += 1;
        }
    }
    report.push(
        "rewrite_orders_agree",
        order_fail == 0,
        format!("{order_n} inputs"),
    );

    // (d) ring axioms on the digit operations
    let mut axiom_fail = 0usize;
    let mut axiom_n = 0usize;
    {
        let one = ring.one();
        let zero = ring.zero();
        let mut unary = |e: &RingElem| {
            axiom_n += 1;
            if e.add(&zero) != *e || e.mul(&one) != *e || !e.add(&e.neg()).is_zero() {
                axiom_fail += 1;
            }
        };
        if n <= bounds.pairwise_cap {
            for e in ring.elements() {
                unary(&e);
            }
        } else {
            for _ in 0..bounds.samples.min(4096) {
                let idx = rng.gen_range(0..n.min(u64::MAX as u128) as u64);
                unary(&ring.elem_from_index(idx));
            }
        }
    }
    let mut pair = |x: &RingElem, y: &RingElem| {
        axiom_n += 1;
        if x.add(y) != y.add(x) || x.mul(y) != y.mul(x) {
            axiom_fail += 1;
        }
    };
    if n <= bounds.pairwise_cap {
        let elems: Vec<RingElem> = ring.elements().collect();
        for (i, x) in elems.iter().enumerate() {
            for y in &elems[i..] {
                pair(x, y);
            }
        }
    } else {
        for _ in 0..bounds.samples {
            let x = ring.elem_from_index(rng.gen_range(0..n as u64));
            let y = ring.elem_from_index(rng.gen_range(0..n as u64));
            pair(&x, &y);
        }
    }
    let mut triple = |x: &RingElem, y: &RingElem, z: &RingElem| {
        axiom_n += 1;
        let assoc_add = x.add(y).add(z) == x.add(&y.add(z));
        let assoc_mul = x.mul(y).mul(z) == x.mul(&y.mul(z));
        let distrib = x.mul(&y.add(z)) == x.mul(y).add(&x.mul(z));
        if !(assoc_add && assoc_mul && distrib) {
            axiom_fail += 1;
        }
    };
    if n <= bounds.triple_cap {
        let elems: Vec<RingElem> = ring.elements().collect();
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    triple(x, y, z);
                }
            }
        }
    } else {
        for _ in 0..bounds.samples {
            let x = ring.elem_from_index(rng.gen_range(0..n as u64));
            let y = ring.elem_from_index(rng.gen_range(0..n as u64));
            let z = ring.elem_from_index(rng.gen_range(0..n as u64));
            triple(&x, &y, &z);
        }
    }
    report.push(
        "ring_axioms",
        axiom_fail == 0,
        format!("{axiom_n} instances"),
    );

    // (e) characteristic p^r exactly, nilpotency index s+1 for the class of Y
    let m = ring.modulus();
    let p = ring.p();
    let r = ring.r();
    let s = ring.s() as usize;
    let char_low = if r >= 2 {
        !ring.from_int(m.pr() / p).is_zero()
    } else {
        !ring.one().is_zero()
    };
    let char_exact = ring.from_int(0).is_zero() && {
        // p^r * 1 reduces to 0 already in the coefficient ring
        let mut acc = ring.zero();
        let one = ring.one();
        let mut ok = true;
        for k in 1..=m.pr() {
            acc = acc.add(&one);
            if acc.is_zero() && k < m.pr() {
                ok = false;
                break;
            }
        }
        ok && acc.is_zero()
    };
    let y_s = ring.monomial(1, 0, s);
    let y_s1 = ring.normal_form(&BiPoly::monomial(m, 1, 0, s + 1));
    let nilp = !y_s.is_zero() && y_s1.is_zero();
    report.push(
        "characteristic_and_nilpotency",
        char_low && char_exact && nilp,
        format!(
            "char({}^{}): low={} exact={}, Y^{s}!=0 & Y^{}=0: {}",
            p,
            r,
            char_low,
            char_exact,
            s + 1,
            nilp
        ),
    );

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    fn certify_default(pres: Presentation) -> CertReport {
        let ring = ChainRing::new(pres).unwrap();
        certify(&ring, &CertifyBounds::default())
    }

    #[test]
    fn z4_certifies() {
        let rep = certify_default(Presentation::new(
            2,
            2,
            1,
            vec![0, 1],
            vec![(1, vec![1])],
            vec![],
        ));
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn pc_certifies_with_char_check() {
        let pres = Presentation::new(2, 2, 2, vec![0, 1], vec![(2, vec![1])], vec![]);
        let ring = ChainRing::new(pres).unwrap();
        let rep = certify(&ring, &CertifyBounds::default());
        assert!(rep.passed, "{rep}");
        // NF(2) = Y^2 != 0, NF(4) = 0
        assert_eq!(ring.from_int(2), ring.y().mul(&ring.y()));
        assert!(ring.from_int(4).is_zero());
    }

    #[test]
    fn f4_quotient_certifies() {
        let rep = certify_default(Presentation::new(2, 1, 1, vec![1, 1, 1], vec![], vec![]));
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn invalid_presentation_rejected_before_certify() {
        // u_1 = 0 violates u not in (p, g)
        let pres = Presentation::new(2, 2, 1, vec![0, 1], vec![(1, vec![0])], vec![]);
        assert!(ChainRing::new(pres).is_err());
    }

    #[test]
    fn report_serializes() {
        let rep = certify_default(Presentation::new(
            2,
            2,
            1,
            vec![0, 1],
            vec![(1, vec![1])],
            vec![],
        ));
        let js = serde_json::to_string(&rep).unwrap();
        assert!(js.contains("kernel_generators_vanish"));
    }

    #[test]
    fn mixed_relation_ring_certifies() {
        // Z_9-like: p = 3, r = 2, s = 1, g = X+1, p_rel Y, g_rel Y
        let rep = certify_default(Presentation::new(
            3,
            2,
            1,
            vec![1, 1],
            vec![(1, vec![1])],
            vec![(1, vec![1])],
        ));
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn larger_mixed_ring_certifies() {
        // p=2, r=2, s=3, t1=2, g = X^2+X+1, g_rel at level 1
        let rep = certify_default(Presentation::new(
            2,
            2,
            3,
            vec![1, 1, 1],
            vec![(2, vec![1, 1])],
            vec![(1, vec![0, 1]), (3, vec![1])],
        ));
        assert!(rep.passed, "{rep}");
    }
}
