//! Catalogs of finite local rings with exactly 1, 2 or 3 nontrivial ideals.
//!
//! Each family member is converted into the unified presentation shape and
//! then triple-checked: the original defining generators rewrite to zero in
//! the presented ring, the certification suite passes, and the brute-force
//! ideal count matches. Univariate members (quotients of `Z_{p^r}[X]`) go the
//! other way: a direct operation table is built first and the presentation is
//! recovered from it.

use serde::Serialize;
use serde_json::json;

use crate::arith::field::{FieldElem, FieldRep};
use crate::arith::poly::{irreducible_mod_p, monic_mod_p, BiPoly, UniPoly};
use crate::arith::zmod::Modulus;
use crate::finring::{
    all_ideals, nontrivial_ideal_count, poly_quotient_table, to_table, TableBuildOptions,
    TableError, TableRing,
};
use crate::presentation::certify::{certify, CertifyBounds};
use crate::presentation::ring::ChainRing;
use crate::presentation::{validate, Presentation};

use super::{recover_presentation, verify_recovery};

#[derive(Debug, Clone)]
pub struct CatalogOptions {
    pub table: TableBuildOptions,
    pub ideal_cap: usize,
    pub certify: CertifyBounds,
    /// Group members into isomorphism classes with the brute-force oracle.
    pub dedup: bool,
    pub oracle_cap: usize,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            table: TableBuildOptions::default(),
            ideal_cap: 512,
            certify: CertifyBounds::sweep(),
            dedup: false,
            oracle_cap: 729,
        }
    }
}

/// One catalog row: a verified ring with its family label and parameters.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub label: String,
    pub params: serde_json::Value,
    pub presentation: Presentation,
    pub order: u64,
    pub characteristic: u64,
    pub nontrivial_ideals: usize,
    /// Isomorphism class id within this catalog (present after dedup).
    pub iso_class: Option<usize>,
}

impl CatalogEntry {
    pub fn csv_header() -> &'static str {
        "label,params,order,characteristic,nontrivial_ideals,iso_class,presentation"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{:?},{},{},{},{},{:?}",
            self.label,
            self.params.to_string(),
            self.order,
            self.characteristic,
            self.nontrivial_ideals,
            self.iso_class.map_or(String::from(""), |c| c.to_string()),
            serde_json::to_string(&self.presentation).unwrap_or_default(),
        )
    }
}

/// All digit polynomials (degree < d, coefficients < p) in index order;
/// index 0 is the zero polynomial.
fn digit_polys(p: u64, d: usize) -> Vec<Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|k| {
            let mut coeffs = vec![0u64; d];
            let mut v = k;
            for c in coeffs.iter_mut() {
                *c = v % p;
                v /= p;
            }
            while coeffs.last() == Some(&0) {
                coeffs.pop();
            }
            coeffs
        })
        .collect()
}

fn irreducibles(p: u64, d: usize) -> Vec<Vec<u64>> {
    monic_mod_p(p, d)
        .filter(|g| irreducible_mod_p(g).unwrap_or(false))
        .map(|g| g.coeffs().to_vec())
        .collect()
}

/// Field element of the residue field from reduced digit coefficients.
fn felem(field: &FieldRep, coeffs: &[u64]) -> FieldElem {
    field.from_digits(coeffs)
}

fn digits_of(field: &FieldRep, e: FieldElem) -> Vec<u64> {
    field.poly_of(e).coeffs().to_vec()
}

/// `g_rel`/`p_rel` term from a field element; `None` for zero.
fn term_of(field: &FieldRep, level: u32, e: FieldElem) -> Option<(u32, Vec<u64>)> {
    if e.is_zero() {
        None
    } else {
        Some((level, digits_of(field, e)))
    }
}

struct Member {
    label: &'static str,
    params: serde_json::Value,
    presentation: Presentation,
    /// The defining generators of the family member, which must rewrite to
    /// zero in the presented ring.
    originals: Vec<BiPoly>,
}

/// Builds the bivariate generators over `Z_{p^r}` from sparse data:
/// `(y_degree, coefficient polynomial)` pairs.
fn bipoly(m: Modulus, parts: &[(usize, UniPoly)]) -> BiPoly {
    let max_b = parts.iter().map(|(b, _)| *b).max().unwrap_or(0);
    let mut v = vec![UniPoly::zero(m); max_b + 1];
    for (b, c) in parts {
        v[*b] = v[*b].add(c);
    }
    BiPoly::from_parts(m, v)
}

fn finish_member(
    member: Member,
    expected_ideals: usize,
    opts: &CatalogOptions,
) -> Result<CatalogEntry, TableError> {
    let ring = ChainRing::new(member.presentation.clone())
        .map_err(|e| TableError::Structure(format!("{}: {e}", member.label)))?;
    for f in &member.originals {
        if !ring.normal_form(f).is_zero() {
            return Err(TableError::Structure(format!(
                "{}: defining generator {f} does not vanish",
                member.label
            )));
        }
    }
    let cert = certify(&ring, &opts.certify);
    if !cert.passed {
        return Err(TableError::Structure(format!(
            "{}: certification failed:\n{cert}",
            member.label
        )));
    }
    let table = to_table(&ring, &opts.table)?;
    let ideals = all_ideals(&table, opts.ideal_cap)?;
    let count = nontrivial_ideal_count(&table, &ideals);
    if count != expected_ideals {
        return Err(TableError::Structure(format!(
            "{}: {count} nontrivial ideals, expected {expected_ideals}",
            member.label
        )));
    }
    Ok(CatalogEntry {
        label: member.label.into(),
        params: member.params,
        presentation: member.presentation,
        order: ring.order() as u64,
        characteristic: table.characteristic(),
        nontrivial_ideals: count,
        iso_class: None,
    })
}

/// A univariate member `Z_{p^r}[X]/(f)`: direct table, recovered
/// presentation, verified round trip.
fn finish_univariate(
    label: &'static str,
    params: serde_json::Value,
    p: u64,
    r: u32,
    f: &[u64],
    expected_ideals: usize,
    opts: &CatalogOptions,
) -> Result<CatalogEntry, TableError> {
    let table = poly_quotient_table(p, r, f)?;
    let rec = recover_presentation(&table)?;
    verify_recovery(&table, &rec, &opts.table)?;
    let ring = ChainRing::new(rec.presentation.clone())
        .map_err(|e| TableError::Structure(format!("{label}: {e}")))?;
    let cert = certify(&ring, &opts.certify);
    if !cert.passed {
        return Err(TableError::Structure(format!(
            "{label}: certification failed:\n{cert}"
        )));
    }
    let ideals = all_ideals(&table, opts.ideal_cap)?;
    let count = nontrivial_ideal_count(&table, &ideals);
    if count != expected_ideals {
        return Err(TableError::Structure(format!(
            "{label}: {count} nontrivial ideals, expected {expected_ideals}"
        )));
    }
    Ok(CatalogEntry {
        label: label.into(),
        params,
        presentation: rec.presentation,
        order: table.n() as u64,
        characteristic: table.characteristic(),
        nontrivial_ideals: count,
        iso_class: None,
    })
}

/// Resolves the presentation of a `Y^2 = p*u + p*z*Y` family member by
/// searching the digit slots that a first-order computation cannot pin down.
/// Exactly one digit assignment makes every defining generator vanish; any
/// other outcome is an error.
#[allow(clippy::too_many_arguments)]
fn search_deep_member(
    label: &'static str,
    params: serde_json::Value,
    p: u64,
    field: &FieldRep,
    g: &[u64],
    g_rel_level1: Option<Vec<u64>>,
    p_level2: Vec<u64>,
    originals: Vec<BiPoly>,
) -> Result<Member, TableError> {
    let q = field.order();
    let digit = |k: u64| -> Option<Vec<u64>> {
        if k == 0 {
            None
        } else {
            Some(digits_of(field, FieldElem(k as usize)))
        }
    };
    let mut found: Option<Presentation> = None;
    for pk3 in 0..q {
        for gk2 in 0..q {
            for gk3 in 0..q {
                let mut p_rel = vec![(2u32, p_level2.clone())];
                if let Some(u3) = digit(pk3) {
                    p_rel.push((3, u3));
                }
                let mut g_rel = Vec::new();
                if let Some(v1) = g_rel_level1.clone() {
                    g_rel.push((1u32, v1));
                }
                if let Some(v2) = digit(gk2) {
                    g_rel.push((2, v2));
                }
                if let Some(v3) = digit(gk3) {
                    g_rel.push((3, v3));
                }
                let pres = Presentation::new(p, 2, 3, g.to_vec(), p_rel, g_rel);
                if !validate(&pres).ok() {
                    continue;
                }
                let Ok(ring) = ChainRing::new(pres.clone()) else {
                    continue;
                };
                if originals.iter().all(|f| ring.normal_form(f).is_zero()) {
                    if found.is_some() {
                        return Err(TableError::Structure(format!(
                            "{label}: ambiguous digit assignment"
                        )));
                    }
                    found = Some(pres);
                }
            }
        }
    }
    let presentation = found.ok_or_else(|| {
        TableError::Structure(format!("{label}: no digit assignment kills the generators"))
    })?;
    Ok(Member {
        label,
        params,
        presentation,
        originals,
    })
}

/// Enumerates, converts, certifies and counts the family of finite local
/// rings with exactly `ideal_count` nontrivial ideals over residue degree
/// `d`. Desk-scale bounds: `p <= 3`, `d <= 2`, `ideal_count` in `1..=3`.
pub fn catalog(
    p: u64,
    d: usize,
    ideal_count: usize,
    opts: &CatalogOptions,
) -> Result<Vec<CatalogEntry>, TableError> {
    if p > 3 || d == 0 || d > 2 || !(1..=3).contains(&ideal_count) {
        return Err(TableError::Structure(format!(
            "catalog parameters out of range: p={p}, d={d}, ideals={ideal_count}"
        )));
    }
    let gs = irreducibles(p, d);
    let digits = digit_polys(p, d);
    let nonzero = &digits[1..];
    let mut entries = Vec::new();

    for g in &gs {
        let field = FieldRep::new(p, g.clone()).map_err(|e| TableError::Structure(e.to_string()))?;
        let inv = |e: FieldElem| field.inverse(e).expect("nonzero residue");
        let gmod2 = Modulus::new(p, 2).unwrap();
        let g2 = UniPoly::from_coeffs(gmod2, g.clone());

        match ideal_count {
            1 => {
                // Z_p[X,Y]/(g, Y^2)
                let pres = Presentation::new(p, 1, 1, g.clone(), vec![], vec![]);
                let m1 = Modulus::new(p, 1).unwrap();
                entries.push(finish_member(
                    Member {
                        label: "mod-p-y2",
                        params: json!({ "g": g }),
                        presentation: pres,
                        originals: vec![
                            BiPoly::from_uni(UniPoly::from_coeffs(m1, g.clone())),
                            BiPoly::monomial(m1, 1, 0, 2),
                        ],
                    },
                    1,
                    opts,
                )?);
                // Z_{p^2}[X]/(g + p*w)
                for w in &digits {
                    let mut f = g.clone();
                    for (i, &c) in w.iter().enumerate() {
                        f[i] += p * c;
                    }
                    entries.push(finish_univariate(
                        "lift-r2",
                        json!({ "g": g, "w": w }),
                        p,
                        2,
                        &f,
                        1,
                        opts,
                    )?);
                }
            }
            2 => {
                // Z_p[X,Y]/(g, Y^3)
                let m1 = Modulus::new(p, 1).unwrap();
                entries.push(finish_member(
                    Member {
                        label: "mod-p-y3",
                        params: json!({ "g": g }),
                        presentation: Presentation::new(p, 1, 2, g.clone(), vec![], vec![]),
                        originals: vec![
                            BiPoly::from_uni(UniPoly::from_coeffs(m1, g.clone())),
                            BiPoly::monomial(m1, 1, 0, 3),
                        ],
                    },
                    2,
                    opts,
                )?);
                // Z_{p^2}[X,Y]/(g + p*w [- v*Y], p - u*Y^2, pY)
                for u in nonzero {
                    let ubar = felem(&field, u);
                    for w in &digits {
                        let wbar = felem(&field, w);
                        let corr = field.neg(field.mul(ubar, wbar)); // -(u*w) at Y^2
                        for v in std::iter::once(None).chain(nonzero.iter().map(Some)) {
                            let (label, g_rel, g_orig_parts) = match v {
                                None => {
                                    let g_rel: Vec<(u32, Vec<u64>)> =
                                        term_of(&field, 2, corr).into_iter().collect();
                                    let parts = vec![
                                        (0usize, g2.add(&UniPoly::from_coeffs(gmod2, w.clone()).scale(p))),
                                    ];
                                    ("sqrt-p", g_rel, parts)
                                }
                                Some(v) => {
                                    let mut g_rel: Vec<(u32, Vec<u64>)> = vec![(1, v.clone())];
                                    g_rel.extend(term_of(&field, 2, corr));
                                    let parts = vec![
                                        (0usize, g2.add(&UniPoly::from_coeffs(gmod2, w.clone()).scale(p))),
                                        (1, UniPoly::from_coeffs(gmod2, v.clone()).neg()),
                                    ];
                                    ("sqrt-p-lin", g_rel, parts)
                                }
                            };
                            let pres = Presentation::new(
                                p,
                                2,
                                2,
                                g.clone(),
                                vec![(2, u.clone())],
                                g_rel,
                            );
                            let originals = vec![
                                bipoly(gmod2, &g_orig_parts),
                                // p - u*Y^2
                                bipoly(
                                    gmod2,
                                    &[
                                        (0, UniPoly::constant(gmod2, p)),
                                        (2, UniPoly::from_coeffs(gmod2, u.clone()).neg()),
                                    ],
                                ),
                                // p*Y
                                BiPoly::monomial(gmod2, p, 0, 1),
                            ];
                            entries.push(finish_member(
                                Member {
                                    label,
                                    params: json!({ "g": g, "u": u, "w": w, "v": v }),
                                    presentation: pres,
                                    originals,
                                },
                                2,
                                opts,
                            )?);
                        }
                    }
                }
                // Z_{p^3}[X]/(g + p*z + p^2*w)
                for z in &digits {
                    for w in &digits {
                        let mut f = g.clone();
                        for (i, &c) in z.iter().enumerate() {
                            f[i] += p * c;
                        }
                        for (i, &c) in w.iter().enumerate() {
                            f[i] += p * p * c;
                        }
                        entries.push(finish_univariate(
                            "lift-r3",
                            json!({ "g": g, "z": z, "w": w }),
                            p,
                            3,
                            &f,
                            2,
                            opts,
                        )?);
                    }
                }
            }
            3 => {
                // Z_p[X,Y]/(g, Y^4)
                let m1 = Modulus::new(p, 1).unwrap();
                entries.push(finish_member(
                    Member {
                        label: "mod-p-y4",
                        params: json!({ "g": g }),
                        presentation: Presentation::new(p, 1, 3, g.clone(), vec![], vec![]),
                        originals: vec![
                            BiPoly::from_uni(UniPoly::from_coeffs(m1, g.clone())),
                            BiPoly::monomial(m1, 1, 0, 4),
                        ],
                    },
                    3,
                    opts,
                )?);
                // Y^3 = p*u family: Z_{p^2}[X,Y]/(g [- v*Y^e] + p*w, Y^3 - p*u, pY)
                for u in nonzero {
                    let ubar = felem(&field, u);
                    let uinv = inv(ubar);
                    for w in &digits {
                        let wbar = felem(&field, w);
                        let corr = field.neg(field.mul(uinv, wbar)); // -(w/u) at Y^3
                        let mut all_variants: Vec<(&'static str, Option<(Vec<u64>, u32)>)> =
                            vec![("cbrt-p", None)];
                        for vpoly in nonzero {
                            all_variants.push(("cbrt-p-quad", Some((vpoly.clone(), 2))));
                            all_variants.push(("cbrt-p-lin", Some((vpoly.clone(), 1))));
                        }
                        for (label, vopt) in all_variants {
                            let mut g_rel: Vec<(u32, Vec<u64>)> = Vec::new();
                            let mut g_parts =
                                vec![(0usize, g2.add(&UniPoly::from_coeffs(gmod2, w.clone()).scale(p)))];
                            if let Some((v, lvl)) = &vopt {
                                g_rel.push((*lvl, v.clone()));
                                g_parts.push((
                                    *lvl as usize,
                                    UniPoly::from_coeffs(gmod2, v.clone()).neg(),
                                ));
                            }
                            g_rel.extend(term_of(&field, 3, corr));
                            g_rel.sort_by_key(|(l, _)| *l);
                            let pres = Presentation::new(
                                p,
                                2,
                                3,
                                g.clone(),
                                vec![(3, digits_of(&field, uinv))],
                                g_rel,
                            );
                            let originals = vec![
                                bipoly(gmod2, &g_parts),
                                // Y^3 - p*u
                                bipoly(
                                    gmod2,
                                    &[
                                        (3, UniPoly::one(gmod2)),
                                        (0, UniPoly::from_coeffs(gmod2, u.clone()).scale(p).neg()),
                                    ],
                                ),
                                BiPoly::monomial(gmod2, p, 0, 1),
                            ];
                            entries.push(finish_member(
                                Member {
                                    label,
                                    params: json!({ "g": g, "u": u, "w": w, "v": vopt.as_ref().map(|(v, _)| v) }),
                                    presentation: pres,
                                    originals,
                                },
                                3,
                                opts,
                            )?);
                        }
                    }
                }
                // Y^2 = p*u + p*z*Y family, three shapes of the g-relation
                for u in nonzero {
                    let ubar = felem(&field, u);
                    let uinv = inv(ubar);
                    let p_level2 = digits_of(&field, uinv);
                    for z in &digits {
                        let y2_gen = bipoly(
                            gmod2,
                            &[
                                (2, UniPoly::one(gmod2)),
                                (0, UniPoly::from_coeffs(gmod2, u.clone()).scale(p).neg()),
                                (1, UniPoly::from_coeffs(gmod2, z.clone()).scale(p).neg()),
                            ],
                        );
                        // (g - p*Y*v, ...)
                        for v in nonzero {
                            let member = search_deep_member(
                                "deep-sqrt-p",
                                json!({ "g": g, "u": u, "z": z, "v": v }),
                                p,
                                &field,
                                g,
                                None,
                                p_level2.clone(),
                                vec![
                                    bipoly(
                                        gmod2,
                                        &[
                                            (0, g2.clone()),
                                            (1, UniPoly::from_coeffs(gmod2, v.clone()).scale(p).neg()),
                                        ],
                                    ),
                                    y2_gen.clone(),
                                ],
                            )?;
                            entries.push(finish_member(member, 3, opts)?);
                        }
                        // (g - p*w - p*Y*y, ...)
                        for w in &digits {
                            for y in &digits {
                                let member = search_deep_member(
                                    "deep-sqrt-p-flat",
                                    json!({ "g": g, "u": u, "z": z, "w": w, "y": y }),
                                    p,
                                    &field,
                                    g,
                                    None,
                                    p_level2.clone(),
                                    vec![
                                        bipoly(
                                            gmod2,
                                            &[
                                                (0, g2.add(
                                                    &UniPoly::from_coeffs(gmod2, w.clone())
                                                        .scale(p)
                                                        .neg(),
                                                )),
                                                (
                                                    1,
                                                    UniPoly::from_coeffs(gmod2, y.clone())
                                                        .scale(p)
                                                        .neg(),
                                                ),
                                            ],
                                        ),
                                        y2_gen.clone(),
                                    ],
                                )?;
                                entries.push(finish_member(member, 3, opts)?);
                            }
                        }
                        // (g - v*Y - p*Y*y - p*w, ...)
                        for v in nonzero {
                            for w in &digits {
                                for y in &digits {
                                    let member = search_deep_member(
                                        "deep-sqrt-p-lin",
                                        json!({ "g": g, "u": u, "z": z, "v": v, "w": w, "y": y }),
                                        p,
                                        &field,
                                        g,
                                        Some(v.clone()),
                                        p_level2.clone(),
                                        vec![
                                            bipoly(
                                                gmod2,
                                                &[
                                                    (0, g2.add(
                                                        &UniPoly::from_coeffs(gmod2, w.clone())
                                                            .scale(p)
                                                            .neg(),
                                                    )),
                                                    (
                                                        1,
                                                        UniPoly::from_coeffs(gmod2, v.clone())
                                                            .neg()
                                                            .add(
                                                                &UniPoly::from_coeffs(
                                                                    gmod2,
                                                                    y.clone(),
                                                                )
                                                                .scale(p)
                                                                .neg(),
                                                            ),
                                                    ),
                                                ],
                                            ),
                                            y2_gen.clone(),
                                        ],
                                    )?;
                                    entries.push(finish_member(member, 3, opts)?);
                                }
                            }
                        }
                    }
                }
                // Z_{p^4}[X]/(g + p*y + p^2*z + p^3*w)
                for y in &digits {
                    for z in &digits {
                        for w in &digits {
                            let mut f = g.clone();
                            for (i, &c) in y.iter().enumerate() {
                                f[i] += p * c;
                            }
                            for (i, &c) in z.iter().enumerate() {
                                f[i] += p * p * c;
                            }
                            for (i, &c) in w.iter().enumerate() {
                                f[i] += p * p * p * c;
                            }
                            entries.push(finish_univariate(
                                "lift-r4",
                                json!({ "g": g, "y": y, "z": z, "w": w }),
                                p,
                                4,
                                &f,
                                3,
                                opts,
                            )?);
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    if opts.dedup {
        assign_iso_classes(&mut entries, opts)?;
    }
    Ok(entries)
}

/// Groups entries into isomorphism classes with the brute-force oracle.
fn assign_iso_classes(
    entries: &mut [CatalogEntry],
    opts: &CatalogOptions,
) -> Result<(), TableError> {
    let tables: Vec<TableRing> = entries
        .iter()
        .map(|e| {
            let ring = ChainRing::new(e.presentation.clone())
                .map_err(|err| TableError::Structure(err.to_string()))?;
            to_table(&ring, &opts.table)
        })
        .collect::<Result<_, _>>()?;
    let mut reps: Vec<(usize, usize)> = Vec::new(); // (entry index, class id)
    let mut next_class = 0usize;
    for i in 0..entries.len() {
        let mut assigned = None;
        for &(j, class) in &reps {
            if entries[i].order != entries[j].order
                || entries[i].characteristic != entries[j].characteristic
                || entries[i].nontrivial_ideals != entries[j].nontrivial_ideals
            {
                continue;
            }
            if crate::iso::brute_force_iso(&tables[i], &tables[j], opts.oracle_cap)
                .map_err(|e| TableError::Structure(e.to_string()))?
                .is_some()
            {
                assigned = Some(class);
                break;
            }
        }
        let class = assigned.unwrap_or_else(|| {
            let c = next_class;
            next_class += 1;
            reps.push((i, c));
            c
        });
        entries[i].iso_class = Some(class);
    }
    Ok(())
}
