//! Isomorphism testing: a complete brute-force oracle for small table rings,
//! and the algebraic criteria for the quadratic chain-ring families
//! `Z_{p^2}[X,Y]/(g - u'*Y^e, Y^2 - p*u, pY)`.

use serde::Serialize;
use thiserror::Error;

use crate::arith::field::{field_isos, FieldRep};
use crate::arith::poly::{irreducible_mod_p, UniPoly};
use crate::arith::zmod::Modulus;
use crate::finring::{TableError, TableRing};
use crate::presentation::ring::ChainRing;
use crate::presentation::Presentation;

#[derive(Debug, Error)]
pub enum IsoError {
    #[error("ring order {0} exceeds the oracle bound {1}")]
    BoundExceeded(usize, usize),
    #[error("bad instance: {0}")]
    BadInstance(String),
    #[error("construction hypothesis fails: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Per-element invariant used to prune the search: additive order, least
/// power reaching zero (0 when none), multiplicative order (0 for non-units).
fn signature(r: &TableRing, x: u16) -> (u64, u32, u64) {
    let add_ord = r.add_order(x);
    let mut nil = 0u32;
    let mut acc = x;
    for k in 1..=r.n() as u32 {
        if acc == r.zero() {
            nil = k;
            break;
        }
        acc = r.mul(acc, x);
    }
    let mut mul_ord = 0u64;
    if nil == 0 {
        let mut acc = x;
        for k in 1..=r.n() as u64 {
            if acc == r.one() {
                mul_ord = k;
                break;
            }
            acc = r.mul(acc, x);
        }
    }
    (add_ord, nil, mul_ord)
}

enum Step {
    Zero,
    One,
    Gen(usize),
    Add(usize, usize),
    Mul(usize, usize),
}

/// Greedy generating sequence with a construction trace: every element of the
/// ring is defined once, from `0`, `1`, the generators, and ring operations
/// on previously defined elements.
fn generating_trace(r: &TableRing) -> (Vec<u16>, Vec<(u16, Step)>) {
    let n = r.n();
    let mut pos = vec![usize::MAX; n];
    let mut defined: Vec<u16> = Vec::with_capacity(n);
    let mut steps: Vec<(u16, Step)> = Vec::with_capacity(n);
    let mut gens = Vec::new();

    let define = |x: u16,
                      st: Step,
                      pos: &mut Vec<usize>,
                      defined: &mut Vec<u16>,
                      steps: &mut Vec<(u16, Step)>| {
        if pos[x as usize] == usize::MAX {
            pos[x as usize] = defined.len();
            defined.push(x);
            steps.push((x, st));
            true
        } else {
            false
        }
    };

    define(r.zero(), Step::Zero, &mut pos, &mut defined, &mut steps);
    define(r.one(), Step::One, &mut pos, &mut defined, &mut steps);
    loop {
        // close under both operations
        let mut i = 0;
        while i < defined.len() {
            let a = defined[i];
            for j in 0..=i {
                let b = defined[j];
                let s = r.add(a, b);
                define(s, Step::Add(i, j), &mut pos, &mut defined, &mut steps);
                let m = r.mul(a, b);
                define(m, Step::Mul(i, j), &mut pos, &mut defined, &mut steps);
            }
            i += 1;
        }
        if defined.len() == n {
            break;
        }
        let next = (0..n as u16).find(|&x| pos[x as usize] == usize::MAX).unwrap();
        gens.push(next);
        define(next, Step::Gen(gens.len() - 1), &mut pos, &mut defined, &mut steps);
    }
    (gens, steps)
}

/// Complete search for a ring isomorphism `r1 -> r2`. Returns the element map
/// when one exists, `None` when the rings are not isomorphic. Generator
/// images are restricted to elements with matching invariants, every
/// candidate assignment is replayed through the construction trace, and a
/// surviving bijection is verified as a homomorphism over all pairs.
pub fn brute_force_iso(
    r1: &TableRing,
    r2: &TableRing,
    cap: usize,
) -> Result<Option<Vec<u16>>, IsoError> {
    if r1.n() != r2.n() {
        return Ok(None);
    }
    let n = r1.n();
    if n > cap {
        return Err(IsoError::BoundExceeded(n, cap));
    }
    let sig1: Vec<_> = (0..n as u16).map(|x| signature(r1, x)).collect();
    let sig2: Vec<_> = (0..n as u16).map(|x| signature(r2, x)).collect();
    {
        let mut a = sig1.clone();
        let mut b = sig2.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }
    let (gens, steps) = generating_trace(r1);
    let cands: Vec<Vec<u16>> = gens
        .iter()
        .map(|&g| {
            (0..n as u16)
                .filter(|&y| sig2[y as usize] == sig1[g as usize])
                .collect()
        })
        .collect();

    let mut choice = vec![0usize; gens.len()];
    let mut images: Vec<u16> = Vec::with_capacity(n);
    'outer: loop {
        // replay the trace under the current generator assignment
        images.clear();
        let mut seen = vec![false; n];
        let mut ok = true;
        for (_, st) in &steps {
            let img = match st {
                Step::Zero => r2.zero(),
                Step::One => r2.one(),
                Step::Gen(k) => cands[*k][choice[*k]],
                Step::Add(i, j) => r2.add(images[*i], images[*j]),
                Step::Mul(i, j) => r2.mul(images[*i], images[*j]),
            };
            if seen[img as usize] {
                ok = false;
                break;
            }
            seen[img as usize] = true;
            images.push(img);
        }
        if ok {
            // bijection; verify the homomorphism on all pairs
            let mut map = vec![0u16; n];
            for (k, (src, _)) in steps.iter().enumerate() {
                map[*src as usize] = images[k];
            }
            let mut hom = true;
            'verify: for x in 0..n as u16 {
                for y in 0..n as u16 {
                    if map[r1.add(x, y) as usize] != r2.add(map[x as usize], map[y as usize])
                        || map[r1.mul(x, y) as usize] != r2.mul(map[x as usize], map[y as usize])
                    {
                        hom = false;
                        break 'verify;
                    }
                }
            }
            if hom {
                return Ok(Some(map));
            }
        }
        // next assignment
        let mut k = 0;
        loop {
            if k == gens.len() {
                break 'outer;
            }
            choice[k] += 1;
            if choice[k] < cands[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if gens.is_empty() {
            break;
        }
    }
    Ok(None)
}

/// A pair of rings `R_i = Z_{p^2}[X,Y]/(g_i, Y^2 - p*u_i, pY)`, the quadratic
/// family with two nontrivial ideals each.
#[derive(Debug, Clone)]
pub struct QuadraticPair {
    pub p: u64,
    pub g1: Vec<u64>,
    pub u1: Vec<u64>,
    pub g2: Vec<u64>,
    pub u2: Vec<u64>,
}

/// Witness for the necessary criterion: the field isomorphism (by the image
/// of X) and the square root `v` with `u2bar = vbar^2 * tau(u1bar)`.
#[derive(Debug, Clone, Serialize)]
pub struct SquareWitness {
    pub tau_x_image: Vec<u64>,
    pub v: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NecessaryVerdict {
    pub holds: bool,
    pub witness: Option<SquareWitness>,
}

/// A verified explicit isomorphism `R_1 -> R_2` (`X -> X`, `Y -> w1(X)*Y`),
/// together with the reverse multiplier.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructedIso {
    pub w1: Vec<u64>,
    pub w2: Vec<u64>,
    pub map: Vec<u16>,
}

impl QuadraticPair {
    pub fn new(
        p: u64,
        g1: Vec<u64>,
        u1: Vec<u64>,
        g2: Vec<u64>,
        u2: Vec<u64>,
    ) -> Result<Self, IsoError> {
        let pair = QuadraticPair { p, g1, u1, g2, u2 };
        pair.check()?;
        Ok(pair)
    }

    fn check(&self) -> Result<(), IsoError> {
        let m2 = Modulus::new(self.p, 2).map_err(|e| IsoError::BadInstance(e.to_string()))?;
        for (g, u) in [(&self.g1, &self.u1), (&self.g2, &self.u2)] {
            let gp = UniPoly::from_coeffs(m2, g.clone());
            if !gp.is_monic() {
                return Err(IsoError::BadInstance(format!("g = {gp} is not monic")));
            }
            match irreducible_mod_p(&gp) {
                Ok(true) => {}
                _ => {
                    return Err(IsoError::BadInstance(format!(
                        "g = {gp} is not irreducible mod {}",
                        self.p
                    )))
                }
            }
            let d = gp.degree().unwrap();
            let up = UniPoly::from_coeffs(m2, u.clone());
            if up.degree().map_or(false, |ud| ud >= d) {
                return Err(IsoError::BadInstance("deg u must be below deg g".into()));
            }
            let field = FieldRep::new(self.p, gp.reduce_mod_p().coeffs().to_vec())
                .map_err(|e| IsoError::BadInstance(e.to_string()))?;
            if field.from_poly_any(&up).is_zero() {
                return Err(IsoError::BadInstance(
                    "u lies in (p, g); it must be a unit residue".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn residue_fields(&self) -> (FieldRep, FieldRep) {
        let mk = |g: &Vec<u64>| {
            let m2 = Modulus::new(self.p, 2).unwrap();
            let gp = UniPoly::from_coeffs(m2, g.clone()).reduce_mod_p();
            FieldRep::new(self.p, gp.coeffs().to_vec()).expect("validated")
        };
        (mk(&self.g1), mk(&self.g2))
    }

    /// Chain-ring presentation of one side: `p = u^{-1}(X) * Y^2` with the
    /// residue-reduced `g`, plus the `g`-relation induced by the `p`-part of
    /// the instance's `g` lift.
    fn side_presentation(p: u64, g: &[u64], u: &[u64]) -> Result<Presentation, IsoError> {
        let m2 = Modulus::new(p, 2).map_err(|e| IsoError::BadInstance(e.to_string()))?;
        let gp = UniPoly::from_coeffs(m2, g.to_vec());
        let gbar = gp.reduce_mod_p();
        let field = FieldRep::new(p, gbar.coeffs().to_vec())
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        let ubar = field.from_poly_any(&UniPoly::from_coeffs(m2, u.to_vec()));
        let uinv = field
            .inverse(ubar)
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        // delta = (g - lift(gbar)) / p
        let glift = gbar
            .with_modulus(m2)
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        let diff = gp.sub(&glift);
        let delta: Vec<u64> = diff.coeffs().iter().map(|&c| c / p).collect();
        let delta_bar = field.from_poly_any(&UniPoly::from_coeffs(m2, delta));
        // lift(gbar)(beta) = -p*delta(beta) = (-delta*u^{-1})(beta) * Y^2
        let gcorr = field.neg(field.mul(delta_bar, uinv));
        let mut g_rel = Vec::new();
        if !gcorr.is_zero() {
            g_rel.push((2u32, field.poly_of(gcorr).coeffs().to_vec()));
        }
        Ok(Presentation::new(
            p,
            2,
            2,
            gbar.coeffs().to_vec(),
            vec![(2, field.poly_of(uinv).coeffs().to_vec())],
            g_rel,
        ))
    }

    /// Both rings, as validated chain-ring handles.
    pub fn rings(&self) -> Result<(ChainRing, ChainRing), IsoError> {
        let r1 = ChainRing::new(Self::side_presentation(self.p, &self.g1, &self.u1)?)
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        let r2 = ChainRing::new(Self::side_presentation(self.p, &self.g2, &self.u2)?)
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        Ok((r1, r2))
    }

    /// The necessary condition for `R_1` isomorphic to `R_2`: some field
    /// isomorphism `tau: K_1 -> K_2` makes `u2bar / tau(u1bar)` a square.
    /// Searches isomorphisms in root order, square roots in element order.
    pub fn necessary_condition(&self) -> NecessaryVerdict {
        let (k1, k2) = self.residue_fields();
        let m2 = Modulus::new(self.p, 2).unwrap();
        let u1bar = k1.from_poly_any(&UniPoly::from_coeffs(m2, self.u1.clone()));
        let u2bar = k2.from_poly_any(&UniPoly::from_coeffs(m2, self.u2.clone()));
        for tau in field_isos(&k1, &k2) {
            let t = tau.apply(&k1, &k2, u1bar);
            let target = k2.mul(u2bar, k2.inverse(t).expect("unit residue"));
            if let Some(v) = k2.sqrt(target) {
                if !v.is_zero() {
                    return NecessaryVerdict {
                        holds: true,
                        witness: Some(SquareWitness {
                            tau_x_image: k2.poly_of(tau.x_image).coeffs().to_vec(),
                            v: k2.poly_of(v).coeffs().to_vec(),
                        }),
                    };
                }
            }
        }
        NecessaryVerdict {
            holds: false,
            witness: None,
        }
    }

    /// Explicit isomorphism `X -> X`, `Y -> w1(X)*Y`, available when the two
    /// sides share `g` and both square relations `u1bar = w1bar^2 * u2bar`,
    /// `u2bar = w2bar^2 * u1bar` admit witnesses. The returned map is
    /// verified pointwise over the full tables before being handed back.
    pub fn construct_isomorphism(&self) -> Result<ConstructedIso, IsoError> {
        if self.g1 != self.g2 {
            return Err(IsoError::Hypothesis("construction requires g1 = g2".into()));
        }
        let (k, _) = self.residue_fields();
        let m2 = Modulus::new(self.p, 2).unwrap();
        let u1bar = k.from_poly_any(&UniPoly::from_coeffs(m2, self.u1.clone()));
        let u2bar = k.from_poly_any(&UniPoly::from_coeffs(m2, self.u2.clone()));
        let ratio12 = k.mul(u1bar, k.inverse(u2bar).expect("unit"));
        let ratio21 = k.mul(u2bar, k.inverse(u1bar).expect("unit"));
        let w1 = k
            .sqrt(ratio12)
            .filter(|w| !w.is_zero())
            .ok_or_else(|| IsoError::Hypothesis("u1/u2 is not a square".into()))?;
        let w2 = k
            .sqrt(ratio21)
            .filter(|w| !w.is_zero())
            .ok_or_else(|| IsoError::Hypothesis("u2/u1 is not a square".into()))?;

        let (r1, r2) = self.rings()?;
        let opts = crate::finring::TableBuildOptions::default();
        let t1 = crate::finring::to_table(&r1, &opts)?;
        let t2 = crate::finring::to_table(&r2, &opts)?;
        // images of the digit monomials X^a Y^b under X -> X, Y -> w1(X) Y
        let w1_poly = k.poly_of(w1);
        let w1_elem = r2.normal_form(&crate::arith::poly::BiPoly::from_uni(
            w1_poly
                .with_modulus(r2.modulus())
                .map_err(|e| IsoError::BadInstance(e.to_string()))?,
        ));
        let x2 = r2.x();
        let y2 = r2.y();
        let im_y = w1_elem.mul(&y2);
        let d = r1.d();
        let levels = r1.s() as usize + 1;
        let mut mono = Vec::with_capacity(levels * d);
        for b in 0..levels {
            let yb = im_y.pow(b as u128);
            for a in 0..d {
                mono.push(x2.pow(a as u128).mul(&yb));
            }
        }
        let n = t1.n();
        let mut map = vec![0u16; n];
        let mut digits = Vec::new();
        for (i, entry) in map.iter_mut().enumerate() {
            r1.decode_index(i as u64, &mut digits);
            let mut acc = r2.zero();
            for (pos, &c) in digits.iter().enumerate() {
                for _ in 0..c {
                    acc = acc.add(&mono[pos]);
                }
            }
            *entry = r2.index_of(&acc) as u16;
        }
        crate::structure::verify_table_iso(&t1, &t2, &map)?;
        Ok(ConstructedIso {
            w1: w1_poly.coeffs().to_vec(),
            w2: k.poly_of(w2).coeffs().to_vec(),
            map,
        })
    }
}

/// The twisted family `R_i = Z_{p^2}[X,Y]/(g_i - u_{2+i}*Y, Y^2 - p*u_i, pY)`.
#[derive(Debug, Clone)]
pub struct QuadraticTwistPair {
    pub base: QuadraticPair,
    pub u3: Vec<u64>,
    pub u4: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistVerdict {
    pub necessary: bool,
    /// `None` when the sufficient test does not apply (`g1 != g2`).
    pub sufficient: Option<bool>,
    pub witness: Option<SquareWitness>,
    /// The `(v1, v2)` pair satisfying all four congruences, when found.
    pub sufficient_witness: Option<(Vec<u64>, Vec<u64>)>,
}

impl QuadraticTwistPair {
    pub fn new(base: QuadraticPair, u3: Vec<u64>, u4: Vec<u64>) -> Result<Self, IsoError> {
        let (k1, k2) = base.residue_fields();
        let m2 = Modulus::new(base.p, 2).map_err(|e| IsoError::BadInstance(e.to_string()))?;
        if k1
            .from_poly_any(&UniPoly::from_coeffs(m2, u3.clone()))
            .is_zero()
            || k2
                .from_poly_any(&UniPoly::from_coeffs(m2, u4.clone()))
                .is_zero()
        {
            return Err(IsoError::BadInstance(
                "twist polynomials must be unit residues".into(),
            ));
        }
        Ok(QuadraticTwistPair { base, u3, u4 })
    }

    fn side_presentation(
        p: u64,
        g: &[u64],
        u: &[u64],
        twist: &[u64],
    ) -> Result<Presentation, IsoError> {
        // start from the untwisted side and add the Y-linear g-relation term
        let mut pres = QuadraticPair::side_presentation(p, g, u)?;
        let m2 = Modulus::new(p, 2).unwrap();
        let field = FieldRep::new(p, pres.g.clone())
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        let tbar = field.from_poly_any(&UniPoly::from_coeffs(m2, twist.to_vec()));
        let mut g_rel = vec![(1u32, field.poly_of(tbar).coeffs().to_vec())];
        for t in &pres.g_rel {
            g_rel.push((t.s, t.v.clone()));
        }
        pres = Presentation::new(
            pres.p,
            pres.r,
            pres.s,
            pres.g.clone(),
            pres.p_rel.iter().map(|t| (t.t, t.u.clone())).collect(),
            g_rel,
        );
        Ok(pres)
    }

    pub fn rings(&self) -> Result<(ChainRing, ChainRing), IsoError> {
        let b = &self.base;
        let r1 = ChainRing::new(Self::side_presentation(b.p, &b.g1, &b.u1, &self.u3)?)
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        let r2 = ChainRing::new(Self::side_presentation(b.p, &b.g2, &b.u2, &self.u4)?)
            .map_err(|e| IsoError::BadInstance(e.to_string()))?;
        Ok((r1, r2))
    }

    /// Necessary part: the same square criterion as the untwisted family.
    /// Sufficient part (only when `g1 = g2`): a joint search for `(v1, v2)`
    /// satisfying the four congruences mod `(p, g^2)`:
    /// `u2 = v2^2*u1`, `u4 = v2*u3`, `u1 = v1*u2`, `u3 = v1*u4`.
    pub fn criterion(&self) -> TwistVerdict {
        let nec = self.base.necessary_condition();
        let sufficient_applies = self.base.g1 == self.base.g2;
        let mut sufficient = None;
        let mut sufficient_witness = None;
        if sufficient_applies {
            let p = self.base.p;
            let mp = Modulus::new(p, 1).unwrap();
            let m2 = Modulus::new(p, 2).unwrap();
            let gbar = UniPoly::from_coeffs(m2, self.base.g1.clone()).reduce_mod_p();
            let gsq = gbar.mul(&gbar);
            let modsq = |f: &UniPoly| -> UniPoly {
                if f.degree().map_or(false, |fd| fd >= gsq.degree().unwrap()) {
                    f.divrem_monic(&gsq).expect("monic").1
                } else {
                    f.clone()
                }
            };
            let reduce = |c: &[u64]| modsq(&UniPoly::from_coeffs(m2, c.to_vec()).reduce_mod_p());
            let u1 = reduce(&self.base.u1);
            let u2 = reduce(&self.base.u2);
            let u3 = reduce(&self.u3);
            let u4 = reduce(&self.u4);
            let dd = 2 * gbar.degree().unwrap();
            let count = p.pow(dd as u32);
            let poly_of = |k: u64| -> UniPoly {
                let mut coeffs = vec![0u64; dd];
                let mut v = k;
                for c in coeffs.iter_mut() {
                    *c = v % p;
                    v /= p;
                }
                UniPoly::from_coeffs(mp, coeffs)
            };
            let mut found = None;
            'search: for k2 in 0..count {
                let v2 = poly_of(k2);
                if modsq(&v2.mul(&v2).mul(&u1)) != u2 || modsq(&v2.mul(&u3)) != u4 {
                    continue;
                }
                for k1 in 0..count {
                    let v1 = poly_of(k1);
                    if modsq(&v1.mul(&u2)) == u1 && modsq(&v1.mul(&u4)) == u3 {
                        found = Some((v1.coeffs().to_vec(), v2.coeffs().to_vec()));
                        break 'search;
                    }
                }
            }
            sufficient = Some(found.is_some());
            sufficient_witness = found;
        }
        TwistVerdict {
            necessary: nec.holds,
            sufficient,
            witness: nec.witness,
            sufficient_witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{fq_tk_table, to_table, zmod_table, TableBuildOptions};
    use crate::presentation::certify::{certify, CertifyBounds};

    #[test]
    fn oracle_finds_identity_on_same_ring() {
        let r = zmod_table(3, 2).unwrap();
        let map = brute_force_iso(&r, &r, 729).unwrap().unwrap();
        assert_eq!(map, (0..9u16).collect::<Vec<_>>());
    }

    #[test]
    fn oracle_separates_z4_from_f2y() {
        let z4 = zmod_table(2, 2).unwrap();
        let f2y = fq_tk_table(2, 1, 2).unwrap();
        assert!(brute_force_iso(&z4, &f2y, 729).unwrap().is_none());
    }

    #[test]
    fn oracle_respects_bound() {
        let r = zmod_table(2, 2).unwrap();
        assert!(matches!(
            brute_force_iso(&r, &r, 2),
            Err(IsoError::BoundExceeded(4, 2))
        ));
    }

    #[test]
    fn oracle_is_reflexive_and_symmetric_on_small_rings() {
        let rings = vec![
            zmod_table(2, 3).unwrap(),
            fq_tk_table(2, 2, 2).unwrap(),
            crate::finring::fp_xy_square_table(2).unwrap(),
        ];
        for a in &rings {
            assert!(brute_force_iso(a, a, 729).unwrap().is_some());
            for b in &rings {
                let ab = brute_force_iso(a, b, 729).unwrap().is_some();
                let ba = brute_force_iso(b, a, 729).unwrap().is_some();
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn quadratic_pair_rings_certify() {
        // Z_9[Y]/(Y^2 - 3u, 3Y) for u = 1: order 27, char 9
        let pair = QuadraticPair::new(3, vec![0, 1], vec![1], vec![0, 1], vec![2]).unwrap();
        let (r1, r2) = pair.rings().unwrap();
        for r in [&r1, &r2] {
            assert_eq!(r.order(), 27);
            let rep = certify(r, &CertifyBounds::default());
            assert!(rep.passed, "{rep}");
        }
    }

    #[test]
    fn square_obstruction_at_p3() {
        // u1 = 1 vs u2 = 2: 2 is not a square mod 3 -> necessary fails
        let pair = QuadraticPair::new(3, vec![0, 1], vec![1], vec![0, 1], vec![2]).unwrap();
        let verdict = pair.necessary_condition();
        assert!(!verdict.holds);
        // and the oracle agrees the rings are non-isomorphic
        let (r1, r2) = pair.rings().unwrap();
        let t1 = to_table(&r1, &TableBuildOptions::default()).unwrap();
        let t2 = to_table(&r2, &TableBuildOptions::default()).unwrap();
        assert!(brute_force_iso(&t1, &t2, 729).unwrap().is_none());
    }

    #[test]
    fn u2_equal_4_is_isomorphic_at_p3() {
        // u2 = 4 = 1 + 3: same residue as u1 = 1 -> necessary holds and the
        // explicit construction goes through
        let pair = QuadraticPair::new(3, vec![0, 1], vec![1], vec![0, 1], vec![4]).unwrap();
        let verdict = pair.necessary_condition();
        assert!(verdict.holds);
        let iso = pair.construct_isomorphism().unwrap();
        assert_eq!(iso.w1, vec![1]);
    }

    #[test]
    fn identical_sides_trivially_isomorphic() {
        let pair =
            QuadraticPair::new(2, vec![1, 1, 1], vec![0, 1], vec![1, 1, 1], vec![0, 1]).unwrap();
        let verdict = pair.necessary_condition();
        assert!(verdict.holds);
        let w = verdict.witness.unwrap();
        assert_eq!(w.v, vec![1]);
        let iso = pair.construct_isomorphism().unwrap();
        assert_eq!(iso.w1, vec![1]);
    }

    #[test]
    fn construction_verified_at_p2_d2() {
        // g = X^2+X+1 over Z_4, u1 = X, u2 = X*(X+1)^2 reduced
        let m2 = Modulus::new(2, 2).unwrap();
        let g = UniPoly::from_coeffs(m2, vec![1, 1, 1]);
        let x = UniPoly::from_coeffs(m2, vec![0, 1]);
        let xp1 = UniPoly::from_coeffs(m2, vec![1, 1]);
        let u2 = x.mul(&xp1).mul(&xp1).divrem_monic(&g).unwrap().1;
        let u2 = UniPoly::from_coeffs(m2, u2.coeffs().iter().map(|&c| c % 2).collect());
        let pair = QuadraticPair::new(
            2,
            g.coeffs().to_vec(),
            x.coeffs().to_vec(),
            g.coeffs().to_vec(),
            u2.coeffs().to_vec(),
        )
        .unwrap();
        let iso = pair.construct_isomorphism().unwrap();
        // cross-check with the oracle
        let (r1, r2) = pair.rings().unwrap();
        let t1 = to_table(&r1, &TableBuildOptions::default()).unwrap();
        let t2 = to_table(&r2, &TableBuildOptions::default()).unwrap();
        let oracle = brute_force_iso(&t1, &t2, 729).unwrap();
        assert!(oracle.is_some());
        assert_eq!(iso.map.len(), t1.n());
    }

    #[test]
    fn twist_pair_trivial_case_sufficient() {
        let base =
            QuadraticPair::new(3, vec![0, 1], vec![1], vec![0, 1], vec![1]).unwrap();
        let twist = QuadraticTwistPair::new(base, vec![1], vec![1]).unwrap();
        let verdict = twist.criterion();
        assert!(verdict.necessary);
        assert_eq!(verdict.sufficient, Some(true));
        let (v1, v2) = verdict.sufficient_witness.unwrap();
        assert_eq!(v1, vec![1]);
        assert_eq!(v2, vec![1]);
    }

    #[test]
    fn twist_pair_square_obstruction() {
        let base =
            QuadraticPair::new(3, vec![0, 1], vec![1], vec![0, 1], vec![2]).unwrap();
        let twist = QuadraticTwistPair::new(base, vec![1], vec![2]).unwrap();
        let verdict = twist.criterion();
        assert!(!verdict.necessary);
        assert_eq!(verdict.sufficient, Some(false));
    }

    #[test]
    fn twist_rings_certify_and_match_oracle() {
        let base =
            QuadraticPair::new(3, vec![0, 1], vec![1], vec![0, 1], vec![1]).unwrap();
        let twist = QuadraticTwistPair::new(base, vec![1], vec![1]).unwrap();
        let (r1, r2) = twist.rings().unwrap();
        for r in [&r1, &r2] {
            let rep = certify(r, &CertifyBounds::default());
            assert!(rep.passed, "{rep}");
        }
        let t1 = to_table(&r1, &TableBuildOptions::default()).unwrap();
        let t2 = to_table(&r2, &TableBuildOptions::default()).unwrap();
        assert!(brute_force_iso(&t1, &t2, 729).unwrap().is_some());
    }
}
