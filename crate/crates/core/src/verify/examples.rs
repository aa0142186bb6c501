//! Reproduction of the eight worked examples from embedded data files.
//!
//! Each file under `data/examples/` holds the field, the subspace and the
//! generators exactly as published, plus every quantity stated for them.
//! Quantities that are not stated directly but follow from stated ones are
//! listed under `derived` and reported as such. A mismatch is data, not an
//! error: it shows up as a failed check in the returned report.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::orbit::{self, OrbitReport};
use crate::report::OrbitDocument;
use crate::subspace::Subspace;
use crate::text;

/// Data format version understood by this build.
pub const DATA_VERSION: u32 = 1;

pub const EXAMPLE_IDS: std::ops::RangeInclusive<u32> = 1..=8;

const DATA: [&str; 8] = [
    include_str!("../../data/examples/example1.toml"),
    include_str!("../../data/examples/example2.toml"),
    include_str!("../../data/examples/example3.toml"),
    include_str!("../../data/examples/example4.toml"),
    include_str!("../../data/examples/example5.toml"),
    include_str!("../../data/examples/example6.toml"),
    include_str!("../../data/examples/example7.toml"),
    include_str!("../../data/examples/example8.toml"),
];

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleData {
    pub version: u32,
    pub id: u32,
    pub field: FieldData,
    pub subspace: SubspaceData,
    #[serde(default)]
    pub assumptions: Vec<String>,
    pub orbit: Vec<OrbitData>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldData {
    pub p: u64,
    pub n: usize,
    /// Ascending coefficients.
    pub modulus: String,
}

/// `U` as a sum of `gens` (a subspace spec) and blocks `scalar · F_q[over]`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceData {
    pub gens: Option<String>,
    #[serde(default)]
    pub block: Vec<BlockData>,
    pub expect: SubspaceExpect,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockData {
    pub scalar: String,
    /// Element whose powers span the block; absent means the block is `⟨scalar⟩`.
    pub over: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceExpect {
    pub dim: Option<usize>,
    pub full_length: Option<bool>,
    pub full_orbit_size: Option<u64>,
    pub contains_subfield: Option<usize>,
    #[serde(default)]
    pub derived: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitData {
    pub label: String,
    pub generator: String,
    pub expect: OrbitExpect,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitExpect {
    pub generator_order: Option<u64>,
    pub generator_degree: Option<usize>,
    pub size: Option<u64>,
    pub intersection_dim: Option<usize>,
    pub min_distance: Option<usize>,
    pub equidistant: Option<bool>,
    pub sunflower: Option<bool>,
    pub center_dim: Option<usize>,
    /// Subspace spec the center must equal.
    pub center: Option<String>,
    /// The center must equal the subfield `F_{q^t}` itself.
    pub center_subfield: Option<usize>,
    #[serde(default)]
    pub intersection: Vec<IntersectionExpect>,
    pub bound_attained: Option<bool>,
    pub optimal: Option<bool>,
    pub nontrivial_center_bound: Option<u64>,
    pub exceeds_nontrivial_center_bound: Option<bool>,
    #[serde(default)]
    pub derived: Vec<String>,
}

/// `U ∩ β^power U` must equal `span`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionExpect {
    pub power: u64,
    pub span: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub subject: String,
    pub quantity: String,
    pub expected: String,
    pub observed: String,
    /// The expected value follows from stated values rather than being stated.
    pub derived: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub id: u32,
    pub version: u32,
    pub assumptions: Vec<String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub orbits: Vec<OrbitDocument>,
    #[serde(skip)]
    pub duration: std::time::Duration,
}

impl ExampleReport {
    /// Failed checks; empty when the example reproduces.
    pub fn diff(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

pub fn example_data(id: u32) -> Result<ExampleData> {
    let raw = EXAMPLE_IDS
        .contains(&id)
        .then(|| DATA[id as usize - 1])
        .ok_or(Error::UnknownExample(id))?;
    parse_example_data(raw)
}

pub fn parse_example_data(raw: &str) -> Result<ExampleData> {
    let data: ExampleData =
        toml::from_str(raw).map_err(|e| Error::Parse(e.message().to_string()))?;
    if data.version != DATA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported data version {}",
            data.version
        )));
    }
    Ok(data)
}

struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn push(
        &mut self,
        subject: &str,
        quantity: &str,
        expected: String,
        observed: String,
        derived: &[String],
    ) {
        self.checks.push(Check {
            subject: subject.to_string(),
            quantity: quantity.to_string(),
            ok: expected == observed,
            expected,
            observed,
            derived: derived.iter().any(|d| d == quantity),
        });
    }

    fn cmp<T: std::fmt::Debug>(
        &mut self,
        subject: &str,
        quantity: &str,
        expected: Option<T>,
        observed: T,
        derived: &[String],
    ) {
        if let Some(e) = expected {
            self.push(
                subject,
                quantity,
                format!("{e:?}"),
                format!("{observed:?}"),
                derived,
            );
        }
    }
}

pub fn build_field(data: &FieldData) -> Result<Arc<FieldContext>> {
    let modulus = text::parse_modulus(&data.modulus)?;
    Ok(Arc::new(FieldContext::new(data.p, data.n, &modulus)?))
}

pub fn build_subspace(ctx: &Arc<FieldContext>, data: &SubspaceData) -> Result<Subspace> {
    let mut u = match &data.gens {
        Some(spec) => text::subspace(ctx, spec)?,
        None => Subspace::zero(ctx),
    };
    for b in &data.block {
        let scalar = text::element(ctx, &b.scalar)?;
        let block = match &b.over {
            Some(over) => {
                Subspace::scaled_subfield_block(ctx, &scalar, &text::element(ctx, over)?)?
            }
            None => Subspace::span(ctx, &[scalar])?,
        };
        u = u.sum(&block)?;
    }
    Ok(u)
}

/// Runs one example end to end and compares against its data file.
pub fn reproduce_example(id: u32) -> Result<ExampleReport> {
    let data = example_data(id)?;
    reproduce(&data)
}

pub fn reproduce(data: &ExampleData) -> Result<ExampleReport> {
    let start = Instant::now();
    let ctx = build_field(&data.field)?;
    let u = build_subspace(&ctx, &data.subspace)?;
    let mut ck = Checker { checks: Vec::new() };
    let mut notes = Vec::new();

    let se = &data.subspace.expect;
    ck.cmp("U", "dim", se.dim, u.dim(), &se.derived);
    let info = orbit::stabilizer(&u)?;
    ck.cmp(
        "U",
        "full_length",
        se.full_length,
        info.is_full_length,
        &se.derived,
    );
    ck.cmp(
        "U",
        "full_orbit_size",
        se.full_orbit_size,
        info.full_orbit_size,
        &se.derived,
    );
    if let Some(t) = se.contains_subfield {
        let sub = Subspace::subfield(&ctx, t)?;
        let inside = sub.sum(&u)? == u;
        ck.push(
            "U",
            "contains_subfield",
            format!("F_q^{t}"),
            if inside {
                format!("F_q^{t}")
            } else {
                "no".into()
            },
            &se.derived,
        );
    }

    let mut orbits = Vec::new();
    for o in &data.orbit {
        let beta = text::element(&ctx, &o.generator)?;
        let report = orbit::orbit(&u, &beta)?;
        check_orbit(&ctx, &u, &beta, o, &report, &mut ck, &mut notes)?;
        if let Some(center) = report.center.as_ref().filter(|c| !c.is_zero()) {
            for b in data.subspace.block.iter().filter(|b| b.over.is_some()) {
                let scalar = text::element(&ctx, &b.scalar)?;
                let over = text::element(&ctx, b.over.as_deref().unwrap_or_default())?;
                if Subspace::scaled_subfield_block(&ctx, &scalar, &over)? == *center {
                    notes.push(format!(
                        "{}: center equals the block ({}) · F_q[{}] of U",
                        o.label,
                        b.scalar,
                        b.over.as_deref().unwrap_or_default()
                    ));
                }
            }
        }
        orbits.push(OrbitDocument::new(&report, &u));
    }
    Ok(ExampleReport {
        id: data.id,
        version: data.version,
        assumptions: data.assumptions.clone(),
        checks: ck.checks,
        notes,
        orbits,
        duration: start.elapsed(),
    })
}

fn check_orbit(
    ctx: &Arc<FieldContext>,
    u: &Subspace,
    beta: &FieldElement,
    o: &OrbitData,
    r: &OrbitReport,
    ck: &mut Checker,
    notes: &mut Vec<String>,
) -> Result<()> {
    let e = &o.expect;
    let d = &e.derived;
    let s = o.label.as_str();
    ck.cmp(
        s,
        "generator_order",
        e.generator_order,
        r.generator_order,
        d,
    );
    ck.cmp(
        s,
        "generator_degree",
        e.generator_degree,
        ctx.element_degree(beta),
        d,
    );
    ck.cmp(s, "size", e.size, r.size, d);
    ck.cmp(
        s,
        "intersection_dim",
        e.intersection_dim.map(Some),
        r.intersection_dim,
        d,
    );
    ck.cmp(
        s,
        "min_distance",
        e.min_distance.map(Some),
        r.min_distance,
        d,
    );
    ck.cmp(s, "equidistant", e.equidistant, r.equidistant, d);
    ck.cmp(s, "sunflower", e.sunflower, r.sunflower, d);
    let center_dim = r.center.as_ref().map(Subspace::dim);
    ck.cmp(s, "center_dim", e.center_dim.map(Some), center_dim, d);
    if let Some(spec) = &e.center {
        let expected = text::subspace(ctx, spec)?;
        ck.push(
            s,
            "center",
            text::format_subspace(&expected),
            describe(r.center.as_ref()),
            d,
        );
    }
    if let Some(t) = e.center_subfield {
        let sub = Subspace::subfield(ctx, t)?;
        ck.push(
            s,
            "center",
            format!("F_q^{t}"),
            describe(r.center.as_ref()),
            d,
        );
        let last = ck.checks.last_mut().expect("just pushed");
        if r.center.as_ref() == Some(&sub) {
            last.observed = format!("F_q^{t}");
            last.ok = true;
        } else if let Some(c) = &r.center {
            if let Some(shift) = shift_of(c, &sub)? {
                notes.push(format!(
                    "{s}: center is the shift x·F_q^{t} with x = {}, not the subfield itself",
                    text::format_element(&shift)
                ));
            }
        }
    }
    for ie in &e.intersection {
        let member = u.scale(&ctx.pow(beta, ie.power))?;
        let observed = u.intersect(&member)?;
        let expected = text::subspace(ctx, &ie.span)?;
        let quantity = format!("intersection[{}]", ie.power);
        ck.push(
            s,
            &quantity,
            text::format_subspace(&expected),
            text::format_subspace(&observed),
            d,
        );
    }

    let needs_bounds = e.bound_attained.is_some()
        || e.optimal.is_some()
        || e.nontrivial_center_bound.is_some()
        || e.exceeds_nontrivial_center_bound.is_some();
    if needs_bounds {
        match orbit::sunflower_bounds(r, u) {
            Ok(b) => {
                let attained = b.checks.iter().any(|c| c.attained);
                ck.cmp(s, "bound_attained", e.bound_attained, attained, d);
                ck.cmp(s, "optimal", e.optimal, b.optimal, d);
                ck.cmp(
                    s,
                    "nontrivial_center_bound",
                    e.nontrivial_center_bound.map(u128::from),
                    b.nontrivial_center_bound,
                    d,
                );
                ck.cmp(
                    s,
                    "exceeds_nontrivial_center_bound",
                    e.exceeds_nontrivial_center_bound,
                    b.exceeds_nontrivial_center_bound,
                    d,
                );
                if !b.all_hold() {
                    notes.push(format!("{s}: a size bound fails: {:?}", b.checks));
                }
            }
            Err(err) => ck.push(s, "bounds", "sunflower".into(), err.kind().into(), d),
        }
    }
    if !r.orbit_stabilizer_consistent() {
        notes.push(format!(
            "{s}: orbit size disagrees with the stabilizer prediction"
        ));
    }
    Ok(())
}

fn describe(center: Option<&Subspace>) -> String {
    center.map_or_else(|| "none".to_string(), text::format_subspace)
}

/// `Some(x)` if `c = x · sub` for some `x`.
fn shift_of(c: &Subspace, sub: &Subspace) -> Result<Option<FieldElement>> {
    if c.dim() != sub.dim() || c.is_zero() {
        return Ok(None);
    }
    let x = c.basis()[0].clone();
    Ok((sub.scale(&x)? == *c).then_some(x))
}
