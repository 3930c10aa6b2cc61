//! Command-line surface for the chainring library: define and certify rings,
//! inspect ideal lattices, recover presentations, run catalogs and
//! isomorphism queries, and emit machine-readable reports.
//!
//! Exit codes: 0 success, 1 mathematical rejection (invalid presentation,
//! failed certification, failed selftest), 2 usage or I/O error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use chainring::finring::{
    all_ideals, is_pir, local_stats, nontrivial_ideal_count, to_table, TableBuildOptions,
    TableRing, TableRingJson,
};
use chainring::iso::{brute_force_iso, QuadraticPair, QuadraticTwistPair};
use chainring::presentation::certify::{certify, CertifyBounds};
use chainring::presentation::ring::ChainRing;
use chainring::structure::catalog::{catalog, CatalogEntry, CatalogOptions};
use chainring::structure::{char_p_canonical_form, coefficient_field, recover_presentation};
use chainring::sweep::{selftest, SweepOpts, SweepParams};
use chainring::{validate, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

/// Caps and sample counts; every flag can also come from the environment.
#[derive(Debug, Args, Clone)]
struct Bounds {
    /// Largest ring order converted to explicit tables.
    #[arg(long, global = true, env = "CHAINRING_TABLE_CAP", default_value_t = 4096)]
    table_cap: u128,
    /// Largest ring order for full ideal-lattice enumeration.
    #[arg(long, global = true, env = "CHAINRING_IDEAL_CAP", default_value_t = 512)]
    ideal_cap: usize,
    /// Largest ring order for the brute-force isomorphism oracle.
    #[arg(long, global = true, env = "CHAINRING_ORACLE_CAP", default_value_t = 729)]
    oracle_cap: usize,
    /// Exhaustive pairwise certification up to this order.
    #[arg(long, global = true, env = "CHAINRING_PAIRWISE_CAP", default_value_t = 4096)]
    pairwise_cap: u128,
    /// Exhaustive triple certification up to this order.
    #[arg(long, global = true, env = "CHAINRING_TRIPLE_CAP", default_value_t = 512)]
    triple_cap: u128,
    /// Random samples used above the exhaustive caps.
    #[arg(long, global = true, env = "CHAINRING_SAMPLES", default_value_t = 100_000)]
    samples: usize,
    /// Seed for all sampled checks.
    #[arg(long, global = true, env = "CHAINRING_SEED", default_value_t = 0x5eed_c4a1)]
    seed: u64,
}

impl Bounds {
    fn certify_bounds(&self) -> CertifyBounds {
        CertifyBounds {
            pairwise_cap: self.pairwise_cap,
            triple_cap: self.triple_cap,
            samples: self.samples,
            seed: self.seed,
        }
    }

    fn table_opts(&self) -> TableBuildOptions {
        TableBuildOptions {
            cap: self.table_cap,
            seed: self.seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "chainring", version, about = "finite chain ring toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    bounds: Bounds,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Operations on a single ring given as JSON (presentation or tables).
    #[command(subcommand)]
    Ring(RingCmd),
    /// Enumerate the family of rings with a fixed number of nontrivial ideals.
    Catalog {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Number of nontrivial ideals (1, 2 or 3).
        #[arg(long)]
        ideals: usize,
        /// Group members into isomorphism classes with the oracle.
        #[arg(long, default_value_t = false)]
        dedup: bool,
    },
    /// Run the library's invariant suite.
    Selftest {
        /// Use the full acceptance-scale parameter box (slow).
        #[arg(long, default_value_t = false)]
        full: bool,
    },
}

#[derive(Debug, Subcommand)]
enum RingCmd {
    /// Validate and certify a presentation.
    New { input: String },
    /// List all elements in digit order.
    Elements { input: String },
    /// The ideal lattice and its chain structure.
    Ideals { input: String },
    /// Is every ideal principal?
    CheckPir { input: String },
    /// The numeric signature (p, r, s, t).
    Stats { input: String },
    /// A coefficient field (characteristic p only).
    CoeffField { input: String },
    /// The canonical characteristic-p image F_q[T]/(T^sigma).
    Canon { input: String },
    /// Recover a presentation from tables (or canonicalize one).
    Present { input: String },
    /// Isomorphism query: algebraic criterion where applicable, plus oracle.
    Iso { a: String, b: String },
}

enum CliError {
    Math(String),
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Math(m) | CliError::Usage(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn math<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Math(e.to_string())
}

enum RingInput {
    Pres(Presentation),
    Table(TableRing),
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(usage)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn load_ring(path: &str) -> Result<RingInput, CliError> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(usage)?;
    if value.get("add").is_some() && value.get("mul").is_some() {
        let tj: TableRingJson = serde_json::from_value(value).map_err(usage)?;
        let table = TableRing::from_json(&tj).map_err(math)?;
        table.check_axioms(512, 4096).map_err(math)?;
        Ok(RingInput::Table(table))
    } else {
        let pres: Presentation = serde_json::from_value(value).map_err(usage)?;
        Ok(RingInput::Pres(pres))
    }
}

/// Certified table for any ring input; presentations are validated and
/// certified on the way.
fn input_to_table(input: RingInput, bounds: &Bounds) -> Result<TableRing, CliError> {
    match input {
        RingInput::Table(t) => Ok(t),
        RingInput::Pres(pres) => {
            let ring = certified_ring(pres, bounds)?;
            to_table(&ring, &bounds.table_opts()).map_err(math)
        }
    }
}

fn certified_ring(pres: Presentation, bounds: &Bounds) -> Result<ChainRing, CliError> {
    let report = validate(&pres);
    if !report.ok() {
        return Err(CliError::Math(format!("invalid presentation: {report}")));
    }
    let ring = ChainRing::new(pres).map_err(math)?;
    let cert = certify(&ring, &bounds.certify_bounds());
    if !cert.passed {
        return Err(CliError::Math(format!("certification failed:\n{cert}")));
    }
    Ok(ring)
}

fn emit(format: Format, value: &serde_json::Value, text: String) -> Result<(), CliError> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).map_err(usage)?),
        Format::Text => println!("{text}"),
        Format::Csv => {
            return Err(CliError::Usage(
                "csv output is only available for `catalog` and `ring elements`".into(),
            ))
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let bounds = &cli.bounds;
    match cli.command {
        Command::Ring(cmd) => run_ring(cmd, cli.format, bounds),
        Command::Catalog { p, d, ideals, dedup } => {
            let opts = CatalogOptions {
                table: bounds.table_opts(),
                ideal_cap: bounds.ideal_cap,
                certify: CertifyBounds {
                    // per-member certification at catalog scale
                    pairwise_cap: bounds.pairwise_cap.min(256),
                    triple_cap: bounds.triple_cap.min(27),
                    samples: bounds.samples.min(64),
                    seed: bounds.seed,
                },
                dedup,
                oracle_cap: bounds.oracle_cap,
            };
            let entries = catalog(p, d, ideals, &opts).map_err(math)?;
            match cli.format {
                Format::Csv => {
                    println!("{}", CatalogEntry::csv_header());
                    for e in &entries {
                        println!("{}", e.to_csv_row());
                    }
                }
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&entries).map_err(usage)?)
                }
                Format::Text => {
                    for e in &entries {
                        println!(
                            "{}: order {} char {} ideals {}{}  {}",
                            e.label,
                            e.order,
                            e.characteristic,
                            e.nontrivial_ideals,
                            e.iso_class.map_or(String::new(), |c| format!(" class {c}")),
                            e.params
                        );
                    }
                    println!("{} members", entries.len());
                }
            }
            Ok(())
        }
        Command::Selftest { full } => {
            let params = if full {
                SweepParams::default()
            } else {
                SweepParams::small()
            };
            let opts = SweepOpts {
                table: bounds.table_opts(),
                ..Default::default()
            };
            let report = selftest(&params, &opts);
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).map_err(usage)?)
                }
                _ => {
                    for s in &report.sections {
                        println!(
                            "{} {} ({})",
                            if s.passed { "pass" } else { "FAIL" },
                            s.name,
                            s.detail.lines().next().unwrap_or("")
                        );
                    }
                    println!("overall: {}", if report.passed { "pass" } else { "FAIL" });
                }
            }
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Math("selftest failed".into()))
            }
        }
    }
}

fn run_ring(cmd: RingCmd, format: Format, bounds: &Bounds) -> Result<(), CliError> {
    match cmd {
        RingCmd::New { input } => {
            let RingInput::Pres(pres) = load_ring(&input)? else {
                return Err(CliError::Usage(
                    "`ring new` expects a presentation, not operation tables".into(),
                ));
            };
            let report = validate(&pres);
            if !report.ok() {
                let value = json!({ "valid": false, "violations": report.violations });
                emit(format, &value, format!("rejected: {report}"))?;
                return Err(CliError::Math(format!("invalid presentation: {report}")));
            }
            let ring = ChainRing::new(pres).map_err(math)?;
            let cert = certify(&ring, &bounds.certify_bounds());
            let value = json!({
                "valid": true,
                "order": ring.order().to_string(),
                "residue_field": {
                    "p": ring.p(),
                    "modulus": ring.residue_field().modulus_poly().coeffs(),
                },
                "certification": cert,
            });
            emit(format, &value, format!("order {}\n{cert}", ring.order()))?;
            if cert.passed {
                Ok(())
            } else {
                Err(CliError::Math("certification failed".into()))
            }
        }
        RingCmd::Elements { input } => {
            let RingInput::Pres(pres) = load_ring(&input)? else {
                return Err(CliError::Usage("`ring elements` expects a presentation".into()));
            };
            let ring = certified_ring(pres, bounds)?;
            let iter = ring.elements_bounded(bounds.table_cap).map_err(math)?;
            let elems: Vec<String> = iter.map(|e| e.to_string()).collect();
            match format {
                Format::Csv => {
                    println!("index,element");
                    for (i, e) in elems.iter().enumerate() {
                        println!("{i},\"{e}\"");
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "count": elems.len(),
                        "elements": elems,
                    }))
                    .map_err(usage)?
                ),
                Format::Text => {
                    for (i, e) in elems.iter().enumerate() {
                        println!("{i}: {e}");
                    }
                }
            }
            Ok(())
        }
        RingCmd::Ideals { input } => {
            let table = input_to_table(load_ring(&input)?, bounds)?;
            let ideals = all_ideals(&table, bounds.ideal_cap).map_err(math)?;
            let chain = ideals
                .windows(2)
                .all(|w| w[0].members.is_subset(&w[1].members));
            let rows: Vec<serde_json::Value> = ideals
                .iter()
                .map(|i| {
                    json!({
                        "size": i.size(),
                        "members": i.sorted_members(),
                        "witness": i.witness,
                    })
                })
                .collect();
            let nontrivial = nontrivial_ideal_count(&table, &ideals);
            let value = json!({
                "order": table.n(),
                "ideal_count": ideals.len(),
                "nontrivial": nontrivial,
                "chain": chain,
                "ideals": rows,
            });
            let mut text = String::new();
            if chain {
                let names: Vec<String> = ideals
                    .iter()
                    .map(|i| {
                        if i.is_zero() {
                            "0".into()
                        } else if i.is_whole(&table) {
                            "R".into()
                        } else {
                            format!("({})", i.witness.map_or("?".into(), |w| w.to_string()))
                        }
                    })
                    .collect();
                text.push_str(&names.join(" < "));
            } else {
                text.push_str("not a chain");
            }
            text.push_str(&format!("\n{nontrivial} nontrivial ideals"));
            emit(format, &value, text)
        }
        RingCmd::CheckPir { input } => {
            let table = input_to_table(load_ring(&input)?, bounds)?;
            let (pir, ideals) = is_pir(&table, bounds.ideal_cap).map_err(math)?;
            let value = json!({
                "pir": pir,
                "ideals": ideals
                    .iter()
                    .map(|i| json!({ "size": i.size(), "witness": i.witness }))
                    .collect::<Vec<_>>(),
            });
            emit(format, &value, format!("pir: {pir}"))
        }
        RingCmd::Stats { input } => {
            let table = input_to_table(load_ring(&input)?, bounds)?;
            let st = local_stats(&table).map_err(math)?;
            let value = serde_json::to_value(st).map_err(usage)?;
            emit(
                format,
                &value,
                format!("p={} r={} s={} t={}", st.p, st.r, st.s, st.t),
            )
        }
        RingCmd::CoeffField { input } => {
            let table = input_to_table(load_ring(&input)?, bounds)?;
            let cf = coefficient_field(&table).map_err(math)?;
            let value = json!({ "beta": cf.beta, "q": cf.q(), "members": cf.members });
            emit(
                format,
                &value,
                format!("beta = {}, {} members", cf.beta, cf.members.len()),
            )
        }
        RingCmd::Canon { input } => {
            let table = input_to_table(load_ring(&input)?, bounds)?;
            let form = char_p_canonical_form(&table).map_err(math)?;
            let value = json!({
                "sigma": form.sigma,
                "field": {
                    "p": form.field.p(),
                    "modulus": form.field.modulus_poly().coeffs(),
                },
                "order": form.target.n(),
                "map": form.map,
            });
            emit(
                format,
                &value,
                format!(
                    "F_{}[T]/(T^{}), isomorphism verified pointwise",
                    form.field.order(),
                    form.sigma
                ),
            )
        }
        RingCmd::Present { input } => {
            let table = input_to_table(load_ring(&input)?, bounds)?;
            let rec = recover_presentation(&table).map_err(math)?;
            chainring::structure::verify_recovery(&table, &rec, &bounds.table_opts())
                .map_err(math)?;
            let value = json!({
                "presentation": rec.presentation,
                "alpha": rec.alpha,
                "beta": rec.beta,
                "verified": true,
            });
            let text = serde_json::to_string(&rec.presentation).map_err(usage)?;
            emit(format, &value, text)
        }
        RingCmd::Iso { a, b } => {
            let ia = load_ring(&a)?;
            let ib = load_ring(&b)?;
            // the algebraic criterion applies to recognized quadratic-family
            // presentations; everything else gets the oracle only
            let criterion = match (&ia, &ib) {
                (RingInput::Pres(pa), RingInput::Pres(pb)) => quadratic_verdict(pa, pb),
                _ => None,
            };
            let ta = input_to_table(ia, bounds)?;
            let tb = input_to_table(ib, bounds)?;
            let oracle = if ta.n() <= bounds.oracle_cap && tb.n() <= bounds.oracle_cap {
                match brute_force_iso(&ta, &tb, bounds.oracle_cap).map_err(math)? {
                    Some(_) => "iso",
                    None => "non-iso",
                }
            } else {
                "skipped"
            };
            let (necessary, sufficient, witness) = match &criterion {
                Some(v) => (
                    json!(v.necessary),
                    v.sufficient.map_or(json!(null), |s| json!(s)),
                    serde_json::to_value(&v.witness).unwrap_or(json!(null)),
                ),
                None => (json!(null), json!(null), json!(null)),
            };
            let value = json!({
                "necessary": necessary,
                "sufficient": sufficient,
                "oracle": oracle,
                "witness": witness,
            });
            let text = format!(
                "oracle: {oracle}{}",
                criterion.map_or(String::new(), |v| format!(
                    ", necessary: {}{}",
                    v.necessary,
                    v.sufficient
                        .map_or(String::new(), |s| format!(", sufficient: {s}"))
                ))
            );
            emit(format, &value, text)
        }
    }
}

/// Recognizes the quadratic families (`r = 2`, `s = 2`, `p = u'*Y^2`) and
/// runs the matching algebraic criterion.
fn quadratic_verdict(pa: &Presentation, pb: &Presentation) -> Option<chainring::iso::TwistVerdict> {
    type Shape = (Vec<u64>, Vec<u64>, Option<Vec<u64>>);
    let shape = |p: &Presentation| -> Option<Shape> {
        if p.r != 2 || p.s != 2 || p.p_rel.len() != 1 || p.p_rel[0].t != 2 {
            return None;
        }
        // Y^2 = p*u with u the residue inverse of the p-relation coefficient
        let field =
            chainring::FieldRep::new(p.p, p.g.iter().map(|&c| c % p.p).collect::<Vec<_>>())
                .ok()?;
        let ubar =
            field.from_digits(&p.p_rel[0].u.iter().map(|&c| c % p.p).collect::<Vec<_>>());
        let u = field.poly_of(field.inverse(ubar).ok()?).coeffs().to_vec();
        match p.g_rel.len() {
            0 => Some((p.g.clone(), u, None)),
            1 if p.g_rel[0].s == 1 => Some((p.g.clone(), u, Some(p.g_rel[0].v.clone()))),
            _ => None,
        }
    };
    let (g1, u1, t1) = shape(pa)?;
    let (g2, u2, t2) = shape(pb)?;
    if pa.p != pb.p {
        return None;
    }
    let base = QuadraticPair::new(pa.p, g1, u1, g2, u2).ok()?;
    match (t1, t2) {
        (None, None) => {
            let nec = base.necessary_condition();
            let sufficient = if base.g1 == base.g2 {
                Some(base.construct_isomorphism().is_ok())
            } else {
                None
            };
            Some(chainring::iso::TwistVerdict {
                necessary: nec.holds,
                sufficient,
                witness: nec.witness,
                sufficient_witness: None,
            })
        }
        (Some(u3), Some(u4)) => {
            let twist = QuadraticTwistPair::new(base, u3, u4).ok()?;
            Some(twist.criterion())
        }
        _ => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
