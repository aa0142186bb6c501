//! Command-line driver.
//!
//! Exit codes: 0 verified, 1 mismatch or counterexample, 2 invalid
//! configuration, 3 degenerate subspace, 4 generator stabilizes the
//! subspace, 5 enumeration cap or operation budget exceeded, 6 orbit does
//! not meet the hypotheses of the requested construction.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use orbitcode::diffset::{self, BridgeVerdict, DsVerdict, RdsVerdict};
use orbitcode::report::{FieldSpec, OrbitDocument};
use orbitcode::verify::{self, bounds, examples, props, scan};
use orbitcode::{arith, orbit, text, Error, FieldContext, Subspace};

#[derive(Parser)]
#[command(
    name = "orbitcode",
    version,
    about = "Cyclic and quasi-cyclic orbit codes in F_{q^n}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters, group order factorization and subfield lattice.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Orbit of a subspace under a generator.
    Analyze(AnalyzeArgs),
    /// Reproduce one of the recorded examples (1..8).
    Reproduce {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=8))]
        id: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exhaustive scans and integer checks.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Difference-set verification.
    #[command(subcommand)]
    Diffset(DiffsetCommand),
    /// Size-bound arithmetic.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Seeded randomized property suites.
    #[command(subcommand)]
    Property(PropertyCommand),
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long)]
    n: usize,
    /// Ascending modulus coefficients, e.g. "1,1,0,0,1"; searched for when absent.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args)]
struct OutArgs {
    /// Write the JSON report here ("-" for stdout instead of the table).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Subspace spec: "exp:i,j,..." or "coeffs:(c0 c1 ..);(..)" or "poly:..;..".
    #[arg(long)]
    gens: String,
    /// Generator spec: "exp:i", "coeffs:..", "poly:.." or "subfield:t".
    #[arg(long)]
    beta: String,
    /// Analyze even if the generator stabilizes the subspace.
    #[arg(long)]
    allow_degenerate: bool,
    /// Refuse orbits larger than this.
    #[arg(long)]
    cap: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Dimension range, e.g. "2..4" (inclusive) or "3".
    #[arg(long)]
    k: String,
    #[arg(long)]
    workers: Option<usize>,
    /// Estimated-operation ceiling; defaults to $ORBITCODE_CAP or 10^8.
    #[arg(long)]
    cap: Option<u128>,
    #[command(flatten)]
    out: OutArgs,
    /// Write the per-orbit CSV summary here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ScanCommand {
    /// All cyclic orbits of G_q(n,k); reports any non-trivial equidistant orbit.
    Equidistant(ScanArgs),
    /// Orbits under cyclic subgroups; checks the centers of all sunflowers found.
    Sunflowers {
        #[command(flatten)]
        scan: ScanArgs,
        /// Comma-separated subgroup orders dividing q^n - 1, or "all".
        #[arg(long, default_value = "all")]
        orders: String,
    },
    /// (m^c - 1) | (m^a - 1)(m^b - 1) with a < b <= c forces c = b.
    #[command(name = "lemma4")]
    Divisibility {
        #[arg(long, default_value_t = 5)]
        m_max: u64,
        #[arg(long, default_value_t = 12)]
        exp_max: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum DiffsetCommand {
    /// Verify a difference-set file ("v=..", optional "n_sub=..", residues).
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Index set of an equidistant subspace as a (relative) difference set.
    FromSubspace {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Orbit sizes against spread and partial-spread sizes.
    #[command(name = "remark1")]
    SpreadComparison {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum PropertyCommand {
    /// Degree-two generators always give sunflowers (n even).
    DegreeTwo {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Extending an F_{q^t}-subspace by one vector gives a sunflower with that center.
    Extension {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    reason: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateSubspace => 3,
            Error::EnumerationTooLarge { .. } | Error::BudgetExceeded { .. } => 5,
            Error::NotEquidistant
            | Error::ZeroIntersection
            | Error::HypothesisMismatch(_)
            | Error::NotASunflower => 6,
            _ => 2,
        };
        Failure {
            code,
            reason: format!("{}: {}", e.kind(), e),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn io_failure(e: std::io::Error, path: &std::path::Path) -> Failure {
    Failure {
        code: 2,
        reason: format!("Io: {}: {e}", path.display()),
    }
}

fn build_field(f: &FieldArgs) -> Result<Arc<FieldContext>, Failure> {
    let modulus = match &f.modulus {
        Some(m) => text::parse_modulus(m)?,
        None => FieldContext::find_primitive_modulus(f.p, f.n)?,
    };
    Ok(Arc::new(FieldContext::new(f.p, f.n, &modulus)?))
}

/// Writes JSON where requested; returns true if the table should be printed.
fn emit<T: Serialize>(out: &OutArgs, doc: &T) -> Result<bool, Failure> {
    let json = serde_json::to_string_pretty(doc).expect("serializable");
    match &out.json {
        Some(p) if p.as_os_str() == "-" => {
            println!("{json}");
            Ok(false)
        }
        Some(p) => {
            fs::write(p, json + "\n").map_err(|e| io_failure(e, p))?;
            Ok(true)
        }
        None => Ok(true),
    }
}

#[derive(Serialize)]
struct FieldInfo {
    field: FieldSpec,
    irreducible: bool,
    group_order: u64,
    factorization: Vec<(u64, u32)>,
    alpha_primitive: bool,
    /// `(t, q^t)` for every divisor `t` of `n`.
    subfields: Vec<(u64, u128)>,
}

fn cmd_field_info(field: &FieldArgs, out: &OutArgs) -> Outcome {
    let ctx = build_field(field)?;
    let info = FieldInfo {
        field: FieldSpec::of(&ctx),
        irreducible: true,
        group_order: ctx.group_order(),
        factorization: ctx.factorization().to_vec(),
        alpha_primitive: ctx.alpha_is_primitive(),
        subfields: ctx
            .subfield_degrees()
            .into_iter()
            .map(|t| (t, arith::pow128(ctx.q(), t as u32)))
            .collect(),
    };
    if emit(out, &info)? {
        let fact: Vec<String> = info
            .factorization
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        println!("field        F_{}^{}", ctx.p(), ctx.n());
        println!(
            "modulus      {} (irreducible)",
            text::format_modulus(ctx.modulus())
        );
        println!("group order  {} = {}", info.group_order, fact.join("·"));
        println!(
            "alpha        {}",
            if info.alpha_primitive {
                "primitive"
            } else {
                "not primitive"
            }
        );
        for (t, size) in &info.subfields {
            println!("subfield     t = {t:<3} |F| = {size}");
        }
    }
    Ok(true)
}

fn print_orbit(doc: &OrbitDocument) {
    println!("dimension          {}", doc.dimension);
    println!(
        "stabilizer degree  t = {} (full-length: {})",
        doc.stabilizer.t, doc.stabilizer.is_full_length
    );
    println!("generator order    {}", doc.generator_order);
    println!(
        "orbit size         {} (predicted {})",
        doc.size, doc.predicted_size
    );
    println!("spectrum           {:?}", doc.spectrum_histogram);
    println!(
        "min distance       {}",
        doc.min_distance.map_or("-".into(), |d| d.to_string())
    );
    println!("equidistant        {}", doc.equidistant);
    println!("sunflower          {}", doc.sunflower);
    if let Some(c) = &doc.center {
        println!("center dimension   {}", c.len());
    }
    println!("trivial class      {:?}", doc.trivial_class);
    if let Some(b) = &doc.bounds {
        for c in &b.checks {
            println!(
                "bound {:<30} size {} {} {}/{} : {}{}",
                c.name,
                b.size,
                if c.strict { "<" } else { "<=" },
                c.numerator,
                c.denominator,
                if c.holds { "holds" } else { "FAILS" },
                if c.attained { " (attained)" } else { "" }
            );
        }
        if b.exceeds_nontrivial_center_bound {
            println!(
                "size exceeds the non-trivial-center bound {}",
                b.nontrivial_center_bound
            );
        }
        if b.optimal {
            println!("optimal (spread bound met)");
        }
    }
}

fn cmd_analyze(a: &AnalyzeArgs) -> Outcome {
    let ctx = build_field(&a.field)?;
    let u = text::subspace(&ctx, &a.gens)?;
    let beta = text::element(&ctx, &a.beta)?;
    if u.dim() == 0 || u.dim() == ctx.n() {
        return Err(Error::DegenerateSubspace.into());
    }
    if !beta.is_zero() && u.scale(&beta)? == u && !a.allow_degenerate {
        return Err(Failure {
            code: 4,
            reason: "GeneratorStabilizes: the generator lies in Stab(U), so the orbit is {U}"
                .into(),
        });
    }
    let report = orbit::orbit_capped(&u, &beta, a.cap.unwrap_or(orbit::DEFAULT_ORBIT_CAP))?;
    let doc = OrbitDocument::new(&report, &u);
    if emit(&a.out, &doc)? {
        print_orbit(&doc);
    }
    Ok(doc.orbit_stabilizer_consistent && doc.bounds.as_ref().is_none_or(|b| b.all_hold()))
}

fn cmd_reproduce(id: u32, out: &OutArgs) -> Outcome {
    let report = examples::reproduce_example(id)?;
    if emit(out, &report)? {
        println!("example {id}");
        for a in &report.assumptions {
            println!("  assumption: {a}");
        }
        for c in &report.checks {
            println!(
                "  {:<6} {:<10} {:<34} expected {:<12} observed {}{}",
                if c.ok { "ok" } else { "DIFF" },
                c.subject,
                c.quantity,
                c.expected,
                c.observed,
                if c.derived { "  [derived]" } else { "" }
            );
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
        println!(
            "  {} checks, {} differences, {:?}",
            report.checks.len(),
            report.diff().len(),
            report.duration
        );
    }
    Ok(report.is_clean())
}

fn scan_options(s: &ScanArgs) -> scan::ScanOptions {
    scan::ScanOptions {
        workers: s.workers,
        op_ceiling: s.cap.unwrap_or_else(scan::op_ceiling_from_env),
    }
}

fn finish_scan(s: &ScanArgs, report: &scan::ScanReport) -> Outcome {
    if let Some(p) = &s.csv {
        fs::write(p, report.to_csv()).map_err(|e| io_failure(e, p))?;
    }
    if emit(&s.out, report)? {
        println!(
            "{:?} scan of F_{}^{}, k = {}..{}",
            report.kind, report.field.p, report.field.n, report.k_min, report.k_max
        );
        for sl in &report.slices {
            println!(
                "  k = {:<3} |G| = {:<10} orbits {:<8} partition {}",
                sl.k,
                sl.grassmannian_count,
                sl.orbit_count,
                if sl.partition_ok { "ok" } else { "BROKEN" }
            );
        }
        println!("  hits: {}", report.hits.len());
        for h in &report.hits {
            println!(
                "    k = {} |β| = {} t = {} size {} c = {:?} center {:?} {:?}",
                h.k, h.subgroup_order, h.t, h.size, h.c, h.center_dim, h.trivial_class
            );
        }
        println!("  counterexamples: {}", report.counterexamples.len());
        for c in &report.counterexamples {
            println!(
                "    k = {} |β| = {} {}: {}",
                c.k, c.subgroup_order, c.representative, c.reason
            );
        }
        println!("  {:?}", report.duration);
    }
    Ok(report.passed())
}

fn cmd_scan(c: &ScanCommand) -> Outcome {
    match c {
        ScanCommand::Equidistant(s) => {
            let ctx = build_field(&s.field)?;
            let range = text::parse_range(&s.k)?;
            let report = verify::scan_equidistant(&ctx, range, &scan_options(s))?;
            finish_scan(s, &report)
        }
        ScanCommand::Sunflowers { scan: s, orders } => {
            let ctx = build_field(&s.field)?;
            let range = text::parse_range(&s.k)?;
            let orders = if orders.trim() == "all" {
                scan::all_subgroup_orders(&ctx)
            } else {
                orders
                    .split(',')
                    .filter(|o| !o.trim().is_empty())
                    .map(|o| {
                        o.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad subgroup order {o:?}")))
                    })
                    .collect::<Result<Vec<u64>, _>>()?
            };
            let report = verify::scan_sunflowers(&ctx, range, &orders, &scan_options(s))?;
            finish_scan(s, &report)
        }
        ScanCommand::Divisibility {
            m_max,
            exp_max,
            out,
        } => {
            let report = bounds::scan_divisibility(*m_max, *exp_max)?;
            if emit(out, &report)? {
                println!(
                    "m <= {}, exponents <= {}: {} tuples, {} divisible, {} counterexamples",
                    report.m_max,
                    report.exp_max,
                    report.tuples_checked,
                    report.triggered,
                    report.violations.len()
                );
                for v in &report.violations {
                    println!("  counterexample (m, a, b, c) = {v:?}");
                }
            }
            Ok(report.violations.is_empty())
        }
    }
}

#[derive(Serialize)]
struct DiffsetReport {
    v: u64,
    residues: usize,
    ds: Option<DsVerdict>,
    rds: Option<RdsVerdict>,
    counting_identity: bool,
    /// `|(D+g) ∩ D| = λ` for every `g ≠ 0`; only checked for difference sets.
    translates_constant: Option<bool>,
}

fn cmd_diffset(c: &DiffsetCommand) -> Outcome {
    match c {
        DiffsetCommand::Verify { file, out } => {
            let raw = fs::read_to_string(file).map_err(|e| io_failure(e, file))?;
            let f = text::parse_diffset_file(&raw)?;
            let (ds, rds, ok, identity) = match f.n_sub {
                None | Some(1) => {
                    let v = diffset::verify_ds(&f.residues, f.v)?;
                    (Some(v.clone()), None, v.is_ds, v.counting_identity_holds())
                }
                Some(n) => {
                    let v = diffset::verify_rds(&f.residues, f.v, n)?;
                    (None, Some(v.clone()), v.is_rds, v.counting_identity_holds())
                }
            };
            let translates_constant = match &ds {
                Some(DsVerdict {
                    is_ds: true,
                    lambda: Some(l),
                    ..
                }) => Some(
                    (1..f.v)
                        .map(|g| diffset::translate_intersection(&f.residues, g, 0, f.v))
                        .collect::<Result<Vec<_>, _>>()?
                        .iter()
                        .all(|&x| x as u64 == *l),
                ),
                _ => None,
            };
            let report = DiffsetReport {
                v: f.v,
                residues: f.residues.len(),
                ds,
                rds,
                counting_identity: identity,
                translates_constant,
            };
            if emit(out, &report)? {
                if let Some(d) = &report.ds {
                    match d.lambda {
                        Some(l) if d.is_ds => {
                            println!("({}, {}, {})-difference set, λ = {l}", d.v, d.k, l)
                        }
                        _ => println!("not a difference set in Z_{}", d.v),
                    }
                }
                if let Some(r) = &report.rds {
                    if r.is_rds {
                        println!(
                            "({}, {}, {}, {:?}, {:?})-relative difference set",
                            r.n_sub, r.m, r.k, r.lambda1, r.lambda2
                        );
                    } else {
                        println!(
                            "not a relative difference set for the order-{} subgroup",
                            r.n_sub
                        );
                    }
                }
                println!(
                    "counting identity {}",
                    if identity { "holds" } else { "FAILS" }
                );
            }
            Ok(ok && identity && translates_constant != Some(false))
        }
        DiffsetCommand::FromSubspace { field, gens, out } => {
            let ctx = build_field(field)?;
            let u: Subspace = text::subspace(&ctx, gens)?;
            let t = orbit::stabilizer(&u)?.t;
            let verdict: BridgeVerdict =
                diffset::bridge_check(&u, diffset::applicable_bridge(ctx.q(), t))?;
            if emit(out, &verdict)? {
                println!(
                    "{:?}: t = {}, r = {}, {} indices",
                    verdict.kind, verdict.t, verdict.r, verdict.indices
                );
                println!("expected parameters {:?}", verdict.expected);
                if let Some(d) = &verdict.ds {
                    println!("difference set: {}, λ = {:?}", d.is_ds, d.lambda);
                }
                if let Some(r) = &verdict.rds {
                    println!(
                        "relative difference set: {}, λ1 = {:?}, λ2 = {:?}",
                        r.is_rds, r.lambda1, r.lambda2
                    );
                }
                println!(
                    "{}",
                    if verdict.holds {
                        "confirmed"
                    } else {
                        "NOT confirmed"
                    }
                );
            }
            Ok(verdict.holds)
        }
    }
}

fn cmd_bounds(c: &BoundsCommand) -> Outcome {
    let BoundsCommand::SpreadComparison { q, n, k, t, out } = c;
    let b = bounds::spread_comparison(*q, *n, *k, *t)?;
    if emit(out, &b)? {
        println!("q = {q}, n = {n}, k = {k}, t = {t}, r = {}", b.r);
        for c in &b.comparisons {
            println!(
                "  {:<32} {:.3} > {:.3} : {}",
                c.name,
                c.larger.value(),
                c.smaller.value(),
                if c.holds { "holds" } else { "FAILS" }
            );
        }
    }
    Ok(b.all_hold())
}

fn print_property(r: &props::PropertyReport) {
    println!(
        "{}: {}/{} passed, {} resamples, seed {}",
        r.property, r.passed, r.trials, r.resamples, r.seed
    );
    for t in r.transcript.iter().filter(|t| !t.passed) {
        println!("  FAILED {} with {} {:?}", t.subspace, t.generator, t.note);
    }
}

fn cmd_property(c: &PropertyCommand) -> Outcome {
    let (report, out) = match c {
        PropertyCommand::DegreeTwo {
            field,
            trials,
            seed,
            out,
        } => (
            verify::property_degree_two_sunflower(&build_field(field)?, *trials, *seed)?,
            out,
        ),
        PropertyCommand::Extension {
            field,
            t,
            trials,
            seed,
            out,
        } => (
            verify::property_extension_sunflower(&build_field(field)?, *t, *trials, *seed)?,
            out,
        ),
    };
    if emit(out, &report)? {
        print_property(&report);
    }
    Ok(report.all_passed())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::FieldInfo { field, out } => cmd_field_info(field, out),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Reproduce { id, out } => cmd_reproduce(*id, out),
        Command::Scan(c) => cmd_scan(c),
        Command::Diffset(c) => cmd_diffset(c),
        Command::Bounds(c) => cmd_bounds(c),
        Command::Property(c) => cmd_property(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.reason);
            ExitCode::from(f.code)
        }
    }
}
