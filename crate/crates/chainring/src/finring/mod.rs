//! Finite commutative rings given by explicit addition and multiplication
//! tables — the ground truth against which every structural claim is checked.
//!
//! Tables are deliberately dumb: `n x n` arrays of element indices. Known
//! rings (`Z_{p^k}`, `F_q[T]/(T^k)`, `F_p[x,y]/(x,y)^2`, direct products) have
//! direct constructors so the invariant suite owns answers that do not pass
//! through the rewriting engine.

pub mod local;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::field::FieldRep;
use crate::arith::poly::gen_irreducible;
use crate::presentation::ring::ChainRing;

pub use local::{
    all_ideals, ideal_product, ideal_sum, is_local, is_pir, local_analysis, local_stats,
    nilpotency_index, nontrivial_ideal_count, principal_ideal, two_generated_check, unit_set,
    Ideal, LocalAnalysis, LocalStats, TwoGenReport,
};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("ring order {0} exceeds the bound {1}")]
    BoundExceeded(u128, u128),
    #[error("table shape is inconsistent: {0}")]
    BadShape(String),
    #[error("operation tables do not describe a commutative ring: {0}")]
    NotARing(String),
    #[error("ring is not local: {0}")]
    NotLocal(String),
    #[error("order {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("characteristic {0} is not a prime power")]
    BadCharacteristic(u64),
    #[error("ideal is not nilpotent")]
    NotNilpotent,
    #[error("{0}")]
    Structure(String),
}

/// A set of element indices over a fixed universe `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    len: usize,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(len: usize) -> Self {
        ElemSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: u16) -> bool {
        let (w, b) = (i as usize / 64, i as usize % 64);
        let had = self.words[w] >> b & 1;
        self.words[w] |= 1 << b;
        had == 0
    }

    #[inline]
    pub fn contains(&self, i: u16) -> bool {
        let (w, b) = (i as usize / 64, i as usize % 64);
        self.words[w] >> b & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some((wi * 64 + b) as u16)
            })
        })
    }

    pub fn to_sorted_vec(&self) -> Vec<u16> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// A finite commutative ring with identity, as explicit operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRing {
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: u16,
    one: u16,
}

/// JSON schema: `{"n":4,"add":[[..]],"mul":[[..]],"zero":0,"one":1}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRingJson {
    pub n: usize,
    pub add: Vec<Vec<u16>>,
    pub mul: Vec<Vec<u16>>,
    pub zero: u16,
    pub one: u16,
}

/// Hard ceiling so indices fit in `u16`.
pub const TABLE_INDEX_LIMIT: usize = 1 << 16;

impl TableRing {
    /// Builds a ring from flat row-major tables. Shape and additive inverses
    /// are checked here; full ring axioms are the job of
    /// [`TableRing::check_axioms`].
    pub fn from_tables(
        n: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: u16,
        one: u16,
    ) -> Result<Self, TableError> {
        if n == 0 || n > TABLE_INDEX_LIMIT {
            return Err(TableError::BadShape(format!("order {n} unsupported")));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(TableError::BadShape(format!(
                "expected {0}x{0} tables, got {1} and {2} entries",
                n,
                add.len(),
                mul.len()
            )));
        }
        if add.iter().chain(mul.iter()).any(|&e| e as usize >= n) {
            return Err(TableError::BadShape("entry out of range".into()));
        }
        if (zero as usize) >= n || (one as usize) >= n || (zero == one && n > 1) {
            return Err(TableError::BadShape("bad zero/one indices".into()));
        }
        let mut neg = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == zero {
                    neg[a] = b as u16;
                    break;
                }
            }
            if neg[a] == u16::MAX {
                return Err(TableError::NotARing(format!(
                    "element {a} has no additive inverse"
                )));
            }
        }
        Ok(TableRing {
            n,
            add,
            mul,
            neg,
            zero,
            one,
        })
    }

    pub fn from_json(j: &TableRingJson) -> Result<Self, TableError> {
        let flat = |rows: &Vec<Vec<u16>>| -> Result<Vec<u16>, TableError> {
            if rows.len() != j.n || rows.iter().any(|r| r.len() != j.n) {
                return Err(TableError::BadShape("ragged table".into()));
            }
            Ok(rows.iter().flatten().copied().collect())
        };
        TableRing::from_tables(j.n, flat(&j.add)?, flat(&j.mul)?, j.zero, j.one)
    }

    pub fn to_json(&self) -> TableRingJson {
        let rows = |t: &Vec<u16>| {
            (0..self.n)
                .map(|i| t[i * self.n..(i + 1) * self.n].to_vec())
                .collect()
        };
        TableRingJson {
            n: self.n,
            add: rows(&self.add),
            mul: rows(&self.mul),
            zero: self.zero,
            one: self.one,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> u16 {
        self.zero
    }

    pub fn one(&self) -> u16 {
        self.one
    }

    #[inline(always)]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Additive order of an element.
    pub fn add_order(&self, a: u16) -> u64 {
        let mut acc = a;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, a);
            k += 1;
        }
        k
    }

    /// Characteristic: the additive order of `1`.
    pub fn characteristic(&self) -> u64 {
        self.add_order(self.one)
    }

    /// The image of an integer.
    pub fn from_int(&self, v: u64) -> u16 {
        let mut acc = self.zero;
        for _ in 0..v % self.characteristic() {
            acc = self.add(acc, self.one);
        }
        acc
    }

    /// Commutative ring axioms, exhaustive up to `exhaustive_cap` and sampled
    /// with `samples` random triples above it.
    pub fn check_axioms(&self, exhaustive_cap: usize, samples: usize) -> Result<(), TableError> {
        let n = self.n as u16;
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return Err(TableError::NotARing(format!("{a} + 0 != {a}")));
            }
            if self.mul(a, self.one) != a {
                return Err(TableError::NotARing(format!("{a} * 1 != {a}")));
            }
            if self.add(a, self.neg(a)) != self.zero {
                return Err(TableError::NotARing(format!("{a} + (-{a}) != 0")));
            }
        }
        let check_triple = |a: u16, b: u16, c: u16| -> Result<(), TableError> {
            if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                return Err(TableError::NotARing(format!(
                    "commutativity fails at ({a},{b})"
                )));
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(TableError::NotARing(format!("+assoc fails at ({a},{b},{c})")));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(TableError::NotARing(format!("*assoc fails at ({a},{b},{c})")));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(TableError::NotARing(format!(
                    "distributivity fails at ({a},{b},{c})"
                )));
            }
            Ok(())
        };
        if self.n <= exhaustive_cap {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check_triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e);
            for _ in 0..samples {
                check_triple(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    /// The same ring with the multiplication table transposed (a sanity
    /// construction: for a commutative table it is the identical ring).
    pub fn transposed_mul(&self) -> TableRing {
        let mut mul = vec![0u16; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                mul[a * self.n + b] = self.mul[b * self.n + a];
            }
        }
        TableRing {
            n: self.n,
            add: self.add.clone(),
            mul,
            neg: self.neg.clone(),
            zero: self.zero,
            one: self.one,
        }
    }
}

/// `Z_{p^k}` with index = value.
pub fn zmod_table(p: u64, k: u32) -> Result<TableRing, TableError> {
    let n = p
        .checked_pow(k)
        .filter(|&n| (n as usize) <= TABLE_INDEX_LIMIT)
        .ok_or(TableError::BoundExceeded(u128::MAX, TABLE_INDEX_LIMIT as u128))?
        as usize;
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = ((a + b) % n) as u16;
            mul[a * n + b] = ((a * b) % n) as u16;
        }
    }
    TableRing::from_tables(n, add, mul, 0, 1 % n as u16)
}

/// `F_{p^d}[T]/(T^k)`: truncated polynomials over the field generated by the
/// least irreducible polynomial of degree `d`. Index is the base-`q` digit
/// string of field-element indices, lowest T-degree first.
pub fn fq_tk_table(p: u64, d: usize, k: usize) -> Result<TableRing, TableError> {
    use crate::arith::field::FieldElem;
    let modulus = gen_irreducible(p, d).map_err(|e| TableError::Structure(e.to_string()))?;
    let field = FieldRep::new(p, modulus.coeffs().to_vec())
        .map_err(|e| TableError::Structure(e.to_string()))?;
    let q = field.order() as usize;
    let n = q
        .checked_pow(k as u32)
        .filter(|&n| n <= TABLE_INDEX_LIMIT)
        .ok_or(TableError::BoundExceeded(u128::MAX, TABLE_INDEX_LIMIT as u128))?;
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut v = vec![0usize; k];
        for e in v.iter_mut() {
            *e = idx % q;
            idx /= q;
        }
        v
    };
    let encode = |v: &[FieldElem]| -> u16 {
        let mut idx = 0usize;
        for e in v.iter().rev() {
            idx = idx * q + e.0;
        }
        idx as u16
    };
    let elems: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        let av = &elems[a];
        for b in 0..n {
            let bv = &elems[b];
            let sum: Vec<FieldElem> = (0..k)
                .map(|i| field.add(FieldElem(av[i]), FieldElem(bv[i])))
                .collect();
            add[a * n + b] = encode(&sum);
            let mut prod = vec![FieldElem::ZERO; k];
            for i in 0..k {
                if av[i] == 0 {
                    continue;
                }
                for j in 0..k - i {
                    let term = field.mul(FieldElem(av[i]), FieldElem(bv[j]));
                    prod[i + j] = field.add(prod[i + j], term);
                }
            }
            mul[a * n + b] = encode(&prod);
        }
    }
    TableRing::from_tables(n, add, mul, 0, 1)
}

/// `F_p[x,y]/(x,y)^2`: the local non-PIR ring of order `p^3`. Element
/// `a + b*x + c*y` has index `a + b*p + c*p^2`.
pub fn fp_xy_square_table(p: u64) -> Result<TableRing, TableError> {
    let pu = p as usize;
    let n = pu * pu * pu;
    if n > TABLE_INDEX_LIMIT {
        return Err(TableError::BoundExceeded(n as u128, TABLE_INDEX_LIMIT as u128));
    }
    let dec = |i: usize| (i % pu, i / pu % pu, i / (pu * pu));
    let enc = |a: usize, b: usize, c: usize| (a + b * pu + c * pu * pu) as u16;
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for i in 0..n {
        let (a1, b1, c1) = dec(i);
        for j in 0..n {
            let (a2, b2, c2) = dec(j);
            add[i * n + j] = enc((a1 + a2) % pu, (b1 + b2) % pu, (c1 + c2) % pu);
            mul[i * n + j] = enc(
                a1 * a2 % pu,
                (a1 * b2 + a2 * b1) % pu,
                (a1 * c2 + a2 * c1) % pu,
            );
        }
    }
    TableRing::from_tables(n, add, mul, 0, 1)
}

/// `Z_{p^r}[X]/(f)` for a monic `f` of degree `d >= 1`: elements are
/// coefficient vectors reduced mod `f`, indexed base `p^r` lowest degree
/// first. Arithmetic goes through plain polynomial division, independent of
/// the rewriting engine.
pub fn poly_quotient_table(p: u64, r: u32, f_coeffs: &[u64]) -> Result<TableRing, TableError> {
    use crate::arith::poly::UniPoly;
    use crate::arith::zmod::Modulus;
    let m = Modulus::new(p, r).map_err(|e| TableError::Structure(e.to_string()))?;
    let f = UniPoly::from_coeffs(m, f_coeffs.to_vec());
    let d = match f.degree() {
        Some(d) if d >= 1 && f.is_monic() => d,
        _ => return Err(TableError::Structure("modulus must be monic of degree >= 1".into())),
    };
    let pr = m.pr();
    let n = (pr as u128)
        .checked_pow(d as u32)
        .filter(|&n| n <= TABLE_INDEX_LIMIT as u128)
        .ok_or(TableError::BoundExceeded(u128::MAX, TABLE_INDEX_LIMIT as u128))? as usize;
    let decode = |mut idx: usize| -> UniPoly {
        let mut coeffs = vec![0u64; d];
        for c in coeffs.iter_mut() {
            *c = (idx as u64) % pr;
            idx /= pr as usize;
        }
        UniPoly::from_coeffs(m, coeffs)
    };
    let encode = |g: &UniPoly| -> u16 {
        let mut idx = 0u64;
        for i in (0..d).rev() {
            idx = idx * pr + g.coeff(i);
        }
        idx as u16
    };
    let elems: Vec<UniPoly> = (0..n).map(decode).collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in a..n {
            let s = encode(&elems[a].add(&elems[b]));
            add[a * n + b] = s;
            add[b * n + a] = s;
            let prod = elems[a].mul(&elems[b]);
            let rem = if prod.degree().map_or(false, |pd| pd >= d) {
                prod.divrem_monic(&f)
                    .map_err(|e| TableError::Structure(e.to_string()))?
                    .1
            } else {
                prod
            };
            let pidx = encode(&rem);
            mul[a * n + b] = pidx;
            mul[b * n + a] = pidx;
        }
    }
    TableRing::from_tables(n, add, mul, 0, 1)
}

/// Componentwise product ring; not local whenever both factors are nonzero.
pub fn direct_product(r1: &TableRing, r2: &TableRing) -> Result<TableRing, TableError> {
    let n = r1.n * r2.n;
    if n > TABLE_INDEX_LIMIT {
        return Err(TableError::BoundExceeded(n as u128, TABLE_INDEX_LIMIT as u128));
    }
    let enc = |i: u16, j: u16| i as usize + r1.n * j as usize;
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for i1 in 0..r1.n as u16 {
        for j1 in 0..r2.n as u16 {
            let x = enc(i1, j1);
            for i2 in 0..r1.n as u16 {
                for j2 in 0..r2.n as u16 {
                    let y = enc(i2, j2);
                    add[x * n + y] = enc(r1.add(i1, i2), r2.add(j1, j2)) as u16;
                    mul[x * n + y] = enc(r1.mul(i1, i2), r2.mul(j1, j2)) as u16;
                }
            }
        }
    }
    TableRing::from_tables(
        n,
        add,
        mul,
        enc(r1.zero, r2.zero) as u16,
        enc(r1.one, r2.one) as u16,
    )
}

/// Options for building a table from a presentation ring.
#[derive(Debug, Clone)]
pub struct TableBuildOptions {
    /// Largest ring order convertible to tables.
    pub cap: u128,
    /// Below this order every entry is computed directly from digit
    /// arithmetic; above it rows are filled incrementally and a seeded random
    /// sample of entries is recomputed directly as a cross-check.
    pub direct_cap: usize,
    pub verify_samples: usize,
    pub seed: u64,
}

impl Default for TableBuildOptions {
    fn default() -> Self {
        TableBuildOptions {
            cap: 4096,
            direct_cap: 256,
            verify_samples: 64,
            seed: 0x7ab1e5,
        }
    }
}

/// Explicit operation tables for a presentation ring. Element index `i` is
/// the digit encoding of [`ChainRing::elem_from_index`], so index 0 is zero
/// and index 1 is one.
pub fn to_table(ring: &ChainRing, opts: &TableBuildOptions) -> Result<TableRing, TableError> {
    let order = ring.order();
    if order > opts.cap || order > TABLE_INDEX_LIMIT as u128 {
        return Err(TableError::BoundExceeded(order, opts.cap));
    }
    let n = order as usize;
    let p = ring.p() as usize;
    let dl = ring.digit_len();

    let mut digits = vec![0u64; n * dl];
    {
        let mut tmp = Vec::new();
        for i in 0..n {
            ring.decode_index(i as u64, &mut tmp);
            digits[i * dl..(i + 1) * dl].copy_from_slice(&tmp);
        }
    }
    macro_rules! dig {
        ($i:expr) => {
            &digits[$i * dl..($i + 1) * dl]
        };
    }

    let mut scratch = Vec::new();
    let mut out = Vec::new();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];

    if n <= opts.direct_cap {
        for x in 0..n {
            for y in x..n {
                ring.add_digits_into(dig!(x), dig!(y), &mut scratch, &mut out);
                let s = ring.encode_digits(&out) as u16;
                add[x * n + y] = s;
                add[y * n + x] = s;
                ring.mul_digits_into(dig!(x), dig!(y), &mut scratch, &mut out);
                let m = ring.encode_digits(&out) as u16;
                mul[x * n + y] = m;
                mul[y * n + x] = m;
            }
        }
    } else {
        // Incremental build: index y decomposes as y = parent(y) + c*p^j at
        // its lowest nonzero base-p digit (j, c), and the digit vector of y
        // is the digit vector of parent(y) with that one digit added, so
        // x op y = (x op parent) (+) (x op c*e_j) by bilinearity. certify()
        // checks bilinearity independently, and a seeded sample of entries is
        // recomputed directly below as an extra guard.
        let mut parent = vec![0u32; n];
        let mut slot = vec![0u32; n]; // j*(p-1) + (c-1)
        {
            let mut pw = Vec::new();
            let mut acc = 1usize;
            while acc < n {
                pw.push(acc);
                acc *= p;
            }
            for idx in 1..n {
                let mut j = 0usize;
                let mut rest = idx;
                while rest % p == 0 {
                    rest /= p;
                    j += 1;
                }
                let c = rest % p;
                parent[idx] = (idx - c * pw[j]) as u32;
                slot[idx] = (j * (p - 1) + (c - 1)) as u32;
            }
        }
        let slots = dl * (p - 1);
        // single-digit offsets: s_add[z*slots + slot] = z (+) c*e_j
        let mut s_add = vec![0u16; n * slots];
        {
            let mut mono = vec![0u64; dl];
            for j in 0..dl {
                for c in 1..p {
                    mono[j] = c as u64;
                    for z in 0..n {
                        ring.add_digits_into(dig!(z), &mono, &mut scratch, &mut out);
                        s_add[z * slots + j * (p - 1) + (c - 1)] =
                            ring.encode_digits(&out) as u16;
                    }
                    mono[j] = 0;
                }
            }
        }
        for x in 0..n {
            let row = x * n;
            add[row] = x as u16; // y = 0
            for idx in 1..n {
                let prev = add[row + parent[idx] as usize] as usize;
                add[row + idx] = s_add[prev * slots + slot[idx] as usize];
            }
        }
        // per-x products with single-digit monomials, then rows via table adds
        let mut xm = vec![0u16; slots];
        for x in 0..n {
            let row = x * n;
            let mut mono = vec![0u64; dl];
            for j in 0..dl {
                for c in 1..p {
                    mono[j] = c as u64;
                    ring.mul_digits_into(dig!(x), &mono, &mut scratch, &mut out);
                    xm[j * (p - 1) + (c - 1)] = ring.encode_digits(&out) as u16;
                    mono[j] = 0;
                }
            }
            mul[row] = 0;
            for idx in 1..n {
                let prev = mul[row + parent[idx] as usize] as usize;
                mul[row + idx] = add[prev * n + xm[slot[idx] as usize] as usize];
            }
        }
        // spot-check against direct digit arithmetic
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.verify_samples {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            ring.add_digits_into(dig!(x), dig!(y), &mut scratch, &mut out);
            if add[x * n + y] != ring.encode_digits(&out) as u16 {
                return Err(TableError::NotARing(format!(
                    "incremental add table disagrees with direct arithmetic at ({x},{y})"
                )));
            }
            ring.mul_digits_into(dig!(x), dig!(y), &mut scratch, &mut out);
            if mul[x * n + y] != ring.encode_digits(&out) as u16 {
                return Err(TableError::NotARing(format!(
                    "incremental mul table disagrees with direct arithmetic at ({x},{y})"
                )));
            }
        }
    }

    TableRing::from_tables(n, add, mul, 0, 1 % n as u16)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    #[test]
    fn zmod_table_is_a_ring() {
        let r = zmod_table(2, 2).unwrap();
        r.check_axioms(64, 0).unwrap();
        assert_eq!(r.characteristic(), 4);
        let r = zmod_table(3, 2).unwrap();
        r.check_axioms(16, 100).unwrap();
        assert_eq!(r.characteristic(), 9);
    }

    #[test]
    fn presentation_table_of_z4_matches_modular_table() {
        let ring = ChainRing::new(Presentation::new(
            2,
            2,
            1,
            vec![0, 1],
            vec![(1, vec![1])],
            vec![],
        ))
        .unwrap();
        let t = to_table(&ring, &TableBuildOptions::default()).unwrap();
        // the digit encoding maps the integer v to index v here
        assert_eq!(t, zmod_table(2, 2).unwrap());
    }

    #[test]
    fn presentation_table_of_z8_matches_modular_table() {
        let ring = ChainRing::new(Presentation::new(
            2,
            3,
            2,
            vec![0, 1],
            vec![(1, vec![1])],
            vec![],
        ))
        .unwrap();
        let t = to_table(&ring, &TableBuildOptions::default()).unwrap();
        assert_eq!(t, zmod_table(2, 3).unwrap());
    }

    #[test]
    fn incremental_build_matches_direct() {
        // F_4[Y]/(Y^2) built with both strategies
        let ring =
            ChainRing::new(Presentation::new(2, 1, 1, vec![1, 1, 1], vec![], vec![])).unwrap();
        let direct = to_table(
            &ring,
            &TableBuildOptions {
                direct_cap: 4096,
                ..Default::default()
            },
        )
        .unwrap();
        let incremental = to_table(
            &ring,
            &TableBuildOptions {
                direct_cap: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(direct, incremental);
        direct.check_axioms(16, 500).unwrap();
    }

    #[test]
    fn incremental_build_matches_direct_mixed_char() {
        // a ring with r = 2 and a g-relation, exercising carries
        let ring = ChainRing::new(Presentation::new(
            3,
            2,
            1,
            vec![1, 1],
            vec![(1, vec![1])],
            vec![(1, vec![1])],
        ))
        .unwrap();
        let direct = to_table(
            &ring,
            &TableBuildOptions {
                direct_cap: 4096,
                ..Default::default()
            },
        )
        .unwrap();
        let incremental = to_table(
            &ring,
            &TableBuildOptions {
                direct_cap: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(direct, incremental);
    }

    #[test]
    fn fq_tk_table_shape() {
        let r = fq_tk_table(2, 2, 2).unwrap(); // F_4[T]/(T^2), 16 elements
        assert_eq!(r.n(), 16);
        r.check_axioms(16, 0).unwrap();
        assert_eq!(r.characteristic(), 2);
    }

    #[test]
    fn fp_xy_square_is_a_ring_of_char_p() {
        for p in [2u64, 3] {
            let r = fp_xy_square_table(p).unwrap();
            assert_eq!(r.n(), (p * p * p) as usize);
            r.check_axioms(27, 0).unwrap();
            assert_eq!(r.characteristic(), p);
        }
    }

    #[test]
    fn direct_product_builds() {
        let z2 = zmod_table(2, 1).unwrap();
        let r = direct_product(&z2, &z2).unwrap();
        assert_eq!(r.n(), 4);
        r.check_axioms(8, 0).unwrap();
    }

    #[test]
    fn json_round_trip() {
        let r = zmod_table(2, 2).unwrap();
        let js = serde_json::to_string(&r.to_json()).unwrap();
        let back: TableRingJson = serde_json::from_str(&js).unwrap();
        assert_eq!(TableRing::from_json(&back).unwrap(), r);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(TableRing::from_tables(2, vec![0, 1, 1, 0], vec![0, 0, 0], 0, 1).is_err());
        // no additive inverse for 1: add table with 1+1=1
        assert!(TableRing::from_tables(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, 1).is_err());
    }
}
