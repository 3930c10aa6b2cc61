//! Ideal enumeration and local-ring analysis on table rings.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{ElemSet, TableError, TableRing};
use crate::arith::zmod::is_prime;

/// A subset closed under addition and external multiplication, with an
/// optional single-generator witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ideal {
    pub members: ElemSet,
    pub witness: Option<u16>,
}

impl Ideal {
    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn sorted_members(&self) -> Vec<u16> {
        self.members.to_sorted_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self, r: &TableRing) -> bool {
        self.size() == r.n()
    }
}

fn additive_closure(r: &TableRing, set: &mut ElemSet) {
    let mut items: Vec<u16> = set.iter().collect();
    let mut i = 0;
    while i < items.len() {
        let a = items[i];
        for j in 0..=i {
            let s = r.add(a, items[j]);
            if set.insert(s) {
                items.push(s);
            }
        }
        i += 1;
    }
}

/// `{ t*x : t in R }`, closed under addition (the closure is a no-op for a
/// genuine ring table but is computed anyway; the oracle trusts nothing).
pub fn principal_ideal(r: &TableRing, x: u16) -> Ideal {
    let mut members = ElemSet::new(r.n());
    for t in 0..r.n() as u16 {
        members.insert(r.mul(t, x));
    }
    additive_closure(r, &mut members);
    Ideal {
        members,
        witness: Some(x),
    }
}

/// Sum of two ideals: pairwise sums, then additive closure. Comparable
/// ideals short-circuit to the larger one.
pub fn ideal_sum(r: &TableRing, a: &Ideal, b: &Ideal) -> Ideal {
    if a.members.is_subset(&b.members) {
        return b.clone();
    }
    if b.members.is_subset(&a.members) {
        return a.clone();
    }
    let mut members = ElemSet::new(r.n());
    for x in a.members.iter() {
        for y in b.members.iter() {
            members.insert(r.add(x, y));
        }
    }
    additive_closure(r, &mut members);
    Ideal {
        members,
        witness: None,
    }
}

/// Product of two ideals: additive closure of pairwise products.
pub fn ideal_product(r: &TableRing, a: &Ideal, b: &Ideal) -> Ideal {
    let mut members = ElemSet::new(r.n());
    members.insert(r.zero());
    for x in a.members.iter() {
        for y in b.members.iter() {
            members.insert(r.mul(x, y));
        }
    }
    additive_closure(r, &mut members);
    Ideal {
        members,
        witness: None,
    }
}

/// Every ideal of the ring, by closing the set of principal ideals under
/// pairwise sums. Deterministic order: by size, then by member list.
///
/// Rows are deduplicated before the additive-closure pass so the per-element
/// work stays linear; only distinct candidate sets pay for closure.
pub fn all_ideals(r: &TableRing, cap: usize) -> Result<Vec<Ideal>, TableError> {
    if r.n() > cap {
        return Err(TableError::BoundExceeded(r.n() as u128, cap as u128));
    }
    let mut seen: BTreeSet<ElemSet> = BTreeSet::new();
    let mut ideals: Vec<Ideal> = Vec::new();
    for x in 0..r.n() as u16 {
        let mut members = ElemSet::new(r.n());
        for t in 0..r.n() as u16 {
            members.insert(r.mul(t, x));
        }
        if seen.contains(&members) {
            continue;
        }
        additive_closure(r, &mut members);
        if seen.insert(members.clone()) {
            ideals.push(Ideal {
                members,
                witness: Some(x),
            });
        }
    }
    let mut i = 0;
    while i < ideals.len() {
        for j in 0..=i {
            let sum = ideal_sum(r, &ideals[i], &ideals[j]);
            if seen.insert(sum.members.clone()) {
                ideals.push(sum);
            }
        }
        i += 1;
    }
    ideals.sort_by(|a, b| {
        a.size()
            .cmp(&b.size())
            .then_with(|| a.members.cmp(&b.members))
    });
    Ok(ideals)
}

/// Number of ideals excluding `0` and the whole ring.
pub fn nontrivial_ideal_count(r: &TableRing, ideals: &[Ideal]) -> usize {
    ideals
        .iter()
        .filter(|i| !i.is_zero() && !i.is_whole(r))
        .count()
}

/// The set of invertible elements.
pub fn unit_set(r: &TableRing) -> ElemSet {
    let n = r.n();
    let mut units = ElemSet::new(n);
    for x in 0..n as u16 {
        for y in 0..n as u16 {
            if r.mul(x, y) == r.one() {
                units.insert(x);
                break;
            }
        }
    }
    units
}

/// Local means the non-units form an ideal; that ideal is then the unique
/// maximal one.
pub fn is_local(r: &TableRing) -> (bool, Option<Ideal>) {
    let units = unit_set(r);
    is_local_with_units(r, &units)
}

fn is_local_with_units(r: &TableRing, units: &ElemSet) -> (bool, Option<Ideal>) {
    let n = r.n();
    let mut nonunits = ElemSet::new(n);
    for x in 0..n as u16 {
        if !units.contains(x) {
            nonunits.insert(x);
        }
    }
    let members: Vec<u16> = nonunits.iter().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[..=i] {
            if !nonunits.contains(r.add(a, b)) {
                return (false, None);
            }
        }
        // closure under external multiplication (automatic for a genuine
        // ring; checked because tables may come from outside)
        for t in 0..n as u16 {
            if !nonunits.contains(r.mul(t, a)) {
                return (false, None);
            }
        }
    }
    (
        true,
        Some(Ideal {
            members: nonunits,
            witness: None,
        }),
    )
}

/// Whether every ideal is principal; returns the ideals with witnesses
/// attached when it is.
pub fn is_pir(r: &TableRing, cap: usize) -> Result<(bool, Vec<Ideal>), TableError> {
    let mut ideals = all_ideals(r, cap)?;
    let mut ok = true;
    for id in ideals.iter_mut() {
        if id.witness.is_some() {
            continue;
        }
        let found = id
            .members
            .iter()
            .find(|&x| principal_ideal(r, x).members == id.members);
        match found {
            Some(x) => id.witness = Some(x),
            None => ok = false,
        }
    }
    Ok((ok, ideals))
}

/// Least `k >= 1` with `I^k = 0`.
pub fn nilpotency_index(r: &TableRing, ideal: &Ideal) -> Result<u32, TableError> {
    let mut power = ideal.clone();
    for k in 1..=(r.n() as u32 + 1) {
        if power.is_zero() {
            return Ok(k);
        }
        let next = ideal_product(r, &power, ideal);
        if next.members == power.members {
            return Err(TableError::NotNilpotent);
        }
        power = next;
    }
    Err(TableError::NotNilpotent)
}

/// Cached local-ring analysis: units, the maximal ideal and its power chain,
/// residue-field data, and coset representatives.
pub struct LocalAnalysis {
    pub units: ElemSet,
    pub maximal: Ideal,
    /// `m_powers[k]` is the member set of `m^k`; `m_powers[0]` is the whole
    /// ring and the last entry is `{0}`.
    pub m_powers: Vec<ElemSet>,
    /// Nilpotency index of the maximal ideal (`m^sigma = 0 != m^(sigma-1)`).
    pub sigma: u32,
    /// Least representative of each coset `x + m`.
    pub coset_rep: Vec<u16>,
    /// Residue field order.
    pub q: u64,
    pub p: u64,
    /// Residue field degree (`q = p^d`).
    pub d: u32,
    /// Characteristic exponent (`char = p^r`).
    pub r_exp: u32,
}

impl LocalAnalysis {
    /// Valuation: the largest `k` with `x` in `m^k`; `None` for `x = 0`
    /// (infinite valuation).
    pub fn valuation(&self, x: u16) -> Option<u32> {
        if x == self.zero_index() {
            return None;
        }
        let mut k = 0;
        while self.m_powers[(k + 1) as usize].contains(x) {
            k += 1;
        }
        Some(k)
    }

    fn zero_index(&self) -> u16 {
        // m_powers ends with exactly {0}
        self.m_powers
            .last()
            .expect("nonempty chain")
            .iter()
            .next()
            .expect("zero present")
    }

    /// Multiplicative order of the residue class of `x` in `(R/m)^*`.
    pub fn residue_order(&self, r: &TableRing, x: u16) -> Option<u64> {
        if self.maximal.members.contains(x) {
            return None;
        }
        let target = self.coset_rep[r.one() as usize];
        let mut acc = x;
        let mut k = 1u64;
        while self.coset_rep[acc as usize] != target {
            acc = r.mul(acc, x);
            k += 1;
        }
        Some(k)
    }
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    for p in 2..=n {
        if !is_prime(p) {
            continue;
        }
        if n % p == 0 {
            let mut k = 0;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
    }
    None
}

/// Full analysis of a finite local ring with nilpotent maximal ideal.
pub fn local_analysis(r: &TableRing) -> Result<LocalAnalysis, TableError> {
    let units = unit_set(r);
    let (loc, maximal) = is_local_with_units(r, &units);
    let maximal = match (loc, maximal) {
        (true, Some(m)) => m,
        _ => return Err(TableError::NotLocal("non-units are not an ideal".into())),
    };
    let (p, _t) = prime_power(r.n() as u64).ok_or(TableError::NotPrimePower(r.n() as u64))?;
    let ch = r.characteristic();
    let (cp, r_exp) = prime_power(ch).ok_or(TableError::BadCharacteristic(ch))?;
    if cp != p {
        return Err(TableError::BadCharacteristic(ch));
    }

    // power chain of the maximal ideal
    let mut m_powers = Vec::new();
    let mut whole = ElemSet::new(r.n());
    for x in 0..r.n() as u16 {
        whole.insert(x);
    }
    m_powers.push(whole);
    let mut power = maximal.clone();
    loop {
        m_powers.push(power.members.clone());
        if power.is_zero() {
            break;
        }
        let next = ideal_product(r, &power, &maximal);
        if next.members == power.members {
            return Err(TableError::NotNilpotent);
        }
        power = next;
    }
    let sigma = (m_powers.len() - 1) as u32;

    let q = (r.n() / maximal.size()) as u64;
    let (qp, d) = prime_power(q).ok_or(TableError::NotPrimePower(q))?;
    if qp != p {
        return Err(TableError::NotPrimePower(q));
    }

    let mut coset_rep = vec![u16::MAX; r.n()];
    for x in 0..r.n() as u16 {
        if coset_rep[x as usize] != u16::MAX {
            continue;
        }
        let mut least = x;
        let mut coset = Vec::with_capacity(maximal.size());
        for m in maximal.members.iter() {
            let y = r.add(x, m);
            least = least.min(y);
            coset.push(y);
        }
        for y in coset {
            coset_rep[y as usize] = least;
        }
    }

    Ok(LocalAnalysis {
        units,
        maximal,
        m_powers,
        sigma,
        coset_rep,
        q,
        p,
        d,
        r_exp,
    })
}

/// The numeric signature of a finite local ring: prime `p`, characteristic
/// exponent `r`, nilpotency index `s` of the maximal ideal, and `t` with
/// `|R| = p^t`. These always satisfy `r <= s <= t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalStats {
    pub p: u64,
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

pub fn local_stats(r: &TableRing) -> Result<LocalStats, TableError> {
    let a = local_analysis(r)?;
    let (_, t) = prime_power(r.n() as u64).ok_or(TableError::NotPrimePower(r.n() as u64))?;
    Ok(LocalStats {
        p: a.p,
        r: a.r_exp,
        s: a.sigma,
        t,
    })
}

/// Report of the two-generated ideal bound: when `(x, y)` is not principal,
/// the ring has at least `p + 2` nontrivial ideals, witnessed by `(x,y)`,
/// `(y)` and `(x + m*y)` for `0 <= m <= p-1`.
#[derive(Debug, Clone, Serialize)]
pub struct TwoGenReport {
    pub principal: bool,
    pub generator: Option<u16>,
    /// Sorted member lists of the witness ideals, present when not principal.
    pub witnesses: Vec<Vec<u16>>,
    pub distinct_witnesses: usize,
    pub nontrivial_total: usize,
    pub bound: usize,
    pub bound_holds: bool,
}

pub fn two_generated_check(
    r: &TableRing,
    x: u16,
    y: u16,
    cap: usize,
) -> Result<TwoGenReport, TableError> {
    let a = local_analysis(r)?;
    if !a.maximal.members.contains(x) || !a.maximal.members.contains(y) {
        return Err(TableError::Structure(
            "both generators must lie in the maximal ideal".into(),
        ));
    }
    let ix = principal_ideal(r, x);
    let iy = principal_ideal(r, y);
    let ixy = ideal_sum(r, &ix, &iy);
    let generator = ixy
        .members
        .iter()
        .find(|&g| principal_ideal(r, g).members == ixy.members);
    if let Some(g) = generator {
        return Ok(TwoGenReport {
            principal: true,
            generator: Some(g),
            witnesses: vec![],
            distinct_witnesses: 0,
            nontrivial_total: 0,
            bound: 0,
            bound_holds: true,
        });
    }
    // witnesses: (x,y), (y), (x + m*y) for m = 0..p-1
    let mut witnesses: Vec<Ideal> = vec![ixy, iy];
    let mut my = r.zero();
    for _ in 0..a.p {
        witnesses.push(principal_ideal(r, r.add(x, my)));
        my = r.add(my, y);
    }
    let mut seen = BTreeSet::new();
    for w in &witnesses {
        seen.insert(w.members.clone());
    }
    let ideals = all_ideals(r, cap)?;
    let nontrivial_total = nontrivial_ideal_count(r, &ideals);
    let bound = a.p as usize + 2;
    Ok(TwoGenReport {
        principal: false,
        generator: None,
        witnesses: witnesses.iter().map(|w| w.sorted_members()).collect(),
        distinct_witnesses: seen.len(),
        nontrivial_total,
        bound,
        bound_holds: seen.len() >= bound && nontrivial_total >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{
        direct_product, fp_xy_square_table, fq_tk_table, to_table, zmod_table, TableBuildOptions,
    };
    use crate::presentation::{ring::ChainRing, Presentation};

    fn pc_table() -> TableRing {
        let ring = ChainRing::new(Presentation::new(
            2,
            2,
            2,
            vec![0, 1],
            vec![(2, vec![1])],
            vec![],
        ))
        .unwrap();
        to_table(&ring, &TableBuildOptions::default()).unwrap()
    }

    #[test]
    fn z4_ideal_lattice() {
        let r = zmod_table(2, 2).unwrap();
        let ideals = all_ideals(&r, 512).unwrap();
        assert_eq!(ideals.len(), 3);
        assert_eq!(nontrivial_ideal_count(&r, &ideals), 1);
        assert_eq!(ideals[1].sorted_members(), vec![0, 2]);
        let (pir, _) = is_pir(&r, 512).unwrap();
        assert!(pir);
        let (loc, m) = is_local(&r);
        assert!(loc);
        assert_eq!(nilpotency_index(&r, &m.unwrap()).unwrap(), 2);
    }

    #[test]
    fn fp_xy_square_has_p_plus_2_nontrivial_ideals_and_is_not_pir() {
        let r = fp_xy_square_table(2).unwrap();
        let ideals = all_ideals(&r, 512).unwrap();
        assert_eq!(nontrivial_ideal_count(&r, &ideals), 4);
        let (pir, _) = is_pir(&r, 512).unwrap();
        assert!(!pir);
        let (loc, _) = is_local(&r);
        assert!(loc);
    }

    #[test]
    fn direct_product_is_not_local() {
        let z2 = zmod_table(2, 1).unwrap();
        let r = direct_product(&z2, &z2).unwrap();
        let (loc, _) = is_local(&r);
        assert!(!loc);
        assert!(local_stats(&r).is_err());
    }

    #[test]
    fn pc_table_has_exactly_two_nontrivial_ideals_in_a_chain() {
        let r = pc_table();
        let ideals = all_ideals(&r, 512).unwrap();
        assert_eq!(nontrivial_ideal_count(&r, &ideals), 2);
        // chain: each ideal contained in the next
        for w in ideals.windows(2) {
            assert!(w[0].members.is_subset(&w[1].members));
        }
        // the nontrivial ones are (Y) and (Y^2) = (2)
        let ring = ChainRing::new(Presentation::new(
            2,
            2,
            2,
            vec![0, 1],
            vec![(2, vec![1])],
            vec![],
        ))
        .unwrap();
        let y_idx = ring.index_of(&ring.y()) as u16;
        assert_eq!(ideals[2].members, principal_ideal(&r, y_idx).members);
    }

    #[test]
    fn stats_examples() {
        let z8 = zmod_table(2, 3).unwrap();
        assert_eq!(
            local_stats(&z8).unwrap(),
            LocalStats { p: 2, r: 3, s: 3, t: 3 }
        );
        let f4y = fq_tk_table(2, 2, 2).unwrap();
        assert_eq!(
            local_stats(&f4y).unwrap(),
            LocalStats { p: 2, r: 1, s: 2, t: 4 }
        );
        assert_eq!(
            local_stats(&pc_table()).unwrap(),
            LocalStats { p: 2, r: 2, s: 3, t: 3 }
        );
    }

    #[test]
    fn two_generated_bound_on_non_pir() {
        let r = fp_xy_square_table(2).unwrap();
        // x has index 2 (= 0 + 1*p + 0*p^2), y has index 4
        let rep = two_generated_check(&r, 2, 4, 512).unwrap();
        assert!(!rep.principal);
        assert_eq!(rep.bound, 4);
        assert_eq!(rep.nontrivial_total, 4);
        assert!(rep.bound_holds);
        assert_eq!(rep.distinct_witnesses, 4);

        let r3 = fp_xy_square_table(3).unwrap();
        let rep = two_generated_check(&r3, 3, 9, 512).unwrap();
        assert!(!rep.principal);
        assert_eq!(rep.bound, 5);
        assert!(rep.nontrivial_total >= 5);
        assert!(rep.bound_holds);
    }

    #[test]
    fn two_generated_cyclic_case() {
        let r = zmod_table(2, 2).unwrap();
        let rep = two_generated_check(&r, 2, 2, 512).unwrap();
        assert!(rep.principal);
        assert_eq!(rep.generator, Some(2));
    }

    #[test]
    fn transpose_construction_agrees() {
        for r in [zmod_table(3, 2).unwrap(), fp_xy_square_table(2).unwrap()] {
            let t = r.transposed_mul();
            let a = all_ideals(&r, 512).unwrap();
            let b = all_ideals(&t, 512).unwrap();
            assert_eq!(
                a.iter().map(|i| i.sorted_members()).collect::<Vec<_>>(),
                b.iter().map(|i| i.sorted_members()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn valuation_layers_in_pc() {
        let r = pc_table();
        let a = local_analysis(&r).unwrap();
        assert_eq!(a.sigma, 3);
        assert_eq!(a.q, 2);
        assert_eq!(a.r_exp, 2);
        // index 2 is Y (digit at level 1), with valuation 1; index 4 is Y^2
        assert_eq!(a.valuation(2), Some(1));
        assert_eq!(a.valuation(4), Some(2));
        assert_eq!(a.valuation(0), None);
        assert_eq!(a.valuation(1), Some(0));
    }
}
