//! Exhaustive scans over `G_q(n, k)`.
//!
//! The Grassmannian is partitioned into cyclic orbits under the primitive
//! element; each orbit is represented by its minimal member in canonical
//! order, so the partition (and therefore the report) does not depend on
//! enumeration order or on how many workers analyze the orbits.

use std::collections::HashSet;
use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::orbit::{self, OrbitReport, TrivialClass};
use crate::report::FieldSpec;
use crate::subspace::{self, Subspace, DEFAULT_GRASSMANNIAN_CAP};
use crate::text;

/// Default ceiling on the estimated number of intersection operations.
pub const DEFAULT_OP_CEILING: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_OP_CEILING`].
pub const CAP_ENV: &str = "ORBITCODE_CAP";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub op_ceiling: u128,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: None,
            op_ceiling: op_ceiling_from_env(),
        }
    }
}

/// `ORBITCODE_CAP` if set and parseable, else the default.
pub fn op_ceiling_from_env() -> u128 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_OP_CEILING)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    Equidistant,
    Sunflowers,
}

/// One analyzed orbit (one CSV row).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub k: usize,
    pub representative: String,
    /// Order of the acting generator; `q^n - 1` for the full cyclic group.
    pub subgroup_order: u64,
    pub t: usize,
    pub size: u64,
    pub equidistant: bool,
    /// Common intersection dimension when equidistant.
    pub c: Option<usize>,
    pub sunflower: bool,
    pub center_dim: Option<usize>,
    pub trivial_class: TrivialClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub k: usize,
    pub representative: String,
    pub subgroup_order: u64,
    pub reason: String,
}

/// Per-dimension accounting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceSummary {
    pub k: usize,
    pub grassmannian_count: u128,
    pub visited: u128,
    pub orbit_count: usize,
    pub orbit_size_sum: u128,
    /// Orbit sizes sum to the q-binomial and every subspace was visited once.
    pub partition_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub field: FieldSpec,
    pub k_min: usize,
    pub k_max: usize,
    pub subgroup_orders: Vec<u64>,
    pub subspaces_visited: u128,
    pub orbit_count: usize,
    pub slices: Vec<SliceSummary>,
    /// Equidistant orbits (sunflower orbits for a sunflower scan).
    pub hits: Vec<OrbitRow>,
    pub orbits: Vec<OrbitRow>,
    pub counterexamples: Vec<Counterexample>,
    /// Wall clock; kept out of the JSON so reports stay byte-identical across runs.
    #[serde(skip)]
    pub duration: Duration,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.slices.iter().all(|s| s.partition_ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    /// One row per orbit: `k,t,size,equidistant,c,sunflower,center_dim`
    /// (plus the subgroup order and representative for traceability).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,subgroup_order,t,size,equidistant,c,sunflower,center_dim,representative\n",
        );
        let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
        for r in &self.orbits {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},\"{}\"\n",
                r.k,
                r.subgroup_order,
                r.t,
                r.size,
                r.equidistant,
                opt(r.c),
                r.sunflower,
                opt(r.center_dim),
                r.representative
            ));
        }
        out
    }
}

fn check_range(ctx: &FieldContext, k_range: &RangeInclusive<usize>) -> Result<()> {
    let n = ctx.n();
    for k in [*k_range.start(), *k_range.end()] {
        if k == 0 || k >= n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
    }
    Ok(())
}

fn counts(ctx: &FieldContext, k_range: &RangeInclusive<usize>) -> Result<Vec<(usize, u128)>> {
    k_range
        .clone()
        .map(|k| {
            let count = subspace::grassmannian_count(ctx.q(), ctx.n(), k).unwrap_or(u128::MAX);
            if count > DEFAULT_GRASSMANNIAN_CAP {
                return Err(Error::EnumerationTooLarge {
                    requested: count,
                    cap: DEFAULT_GRASSMANNIAN_CAP,
                });
            }
            Ok((k, count))
        })
        .collect()
}

fn guard(estimated: u128, ceiling: u128) -> Result<()> {
    if estimated > ceiling {
        Err(Error::BudgetExceeded { estimated, ceiling })
    } else {
        Ok(())
    }
}

fn pool(workers: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        b = b.num_threads(w.max(1));
    }
    b.build().expect("thread pool")
}

/// An orbit under the primitive element, rotated so that its canonical
/// (minimal) member comes first: `members[i] = α^i · members[0]`.
struct CyclicOrbit {
    members: Vec<Subspace>,
}

/// Partitions `G_q(n, k)` into cyclic orbits. Returns the orbits sorted by
/// representative and the number of subspaces visited.
fn partition(ctx: &Arc<FieldContext>, k: usize) -> Result<(Vec<CyclicOrbit>, u128)> {
    let alpha = ctx.primitive_element().clone();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut orbits = Vec::new();
    let mut visited = 0u128;
    for u in subspace::grassmannian(ctx, k)? {
        visited += 1;
        if seen.contains(&u) {
            continue;
        }
        let members = orbit::enumerate_orbit(&u, &alpha, orbit::DEFAULT_ORBIT_CAP)?;
        let (start, _) = members
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("orbit is nonempty");
        let mut rotated = members[start..].to_vec();
        rotated.extend_from_slice(&members[..start]);
        seen.extend(members);
        orbits.push(CyclicOrbit { members: rotated });
    }
    orbits.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok((orbits, visited))
}

fn row(rep: &Subspace, subgroup_order: u64, r: &OrbitReport) -> OrbitRow {
    OrbitRow {
        k: rep.dim(),
        representative: text::format_subspace(rep),
        subgroup_order,
        t: r.stabilizer.t,
        size: r.size,
        equidistant: r.equidistant,
        c: r.intersection_dim,
        sunflower: r.sunflower,
        center_dim: r.center.as_ref().map(Subspace::dim),
        trivial_class: r.trivial_class,
    }
}

fn slice_summary(k: usize, count: u128, visited: u128, orbits: &[CyclicOrbit]) -> SliceSummary {
    let sum: u128 = orbits.iter().map(|o| o.members.len() as u128).sum();
    SliceSummary {
        k,
        grassmannian_count: count,
        visited,
        orbit_count: orbits.len(),
        orbit_size_sum: sum,
        partition_ok: sum == count && visited == count,
    }
}

// Checks that hold for every cyclic orbit (the group is all of F_{q^n}^*).
fn cyclic_violations(n: usize, r: &OrbitReport) -> Vec<String> {
    let mut out = Vec::new();
    let k = r.dimension;
    let t = r.stabilizer.t;
    match r.trivial_class {
        TrivialClass::NonTrivial if r.equidistant => {
            out.push("non-trivial equidistant cyclic orbit".to_string());
        }
        TrivialClass::NonTrivial => {}
        class => {
            if !r.equidistant {
                out.push(format!("trivial orbit ({class:?}) is not equidistant"));
            } else if r.intersection_dim != class.predicted_intersection(n, t) {
                out.push(format!(
                    "trivial orbit intersection {:?} differs from {:?}",
                    r.intersection_dim,
                    class.predicted_intersection(n, t)
                ));
            }
        }
    }
    if t == 1 && r.equidistant != (k == 1 || k == n - 1) {
        out.push("full-length orbit equidistant iff dim is 1 or n-1 violated".to_string());
    }
    if !r.orbit_stabilizer_consistent() {
        out.push("orbit size disagrees with the stabilizer prediction".to_string());
    }
    out
}

/// Exhaustive equidistance scan of `G_q(n, k)` for `k` in `k_range`.
pub fn scan_equidistant(
    ctx: &Arc<FieldContext>,
    k_range: RangeInclusive<usize>,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    check_range(ctx, &k_range)?;
    let start = Instant::now();
    let counts = counts(ctx, &k_range)?;
    // One scaling while partitioning plus one intersection per member.
    let estimated: u128 = counts.iter().map(|(_, c)| 2 * c).sum();
    guard(estimated, opts.op_ceiling)?;

    let alpha = ctx.primitive_element().clone();
    let order = ctx.group_order();
    let n = ctx.n();
    let pool = pool(opts.workers);
    let mut report = empty_report(ScanKind::Equidistant, ctx, &k_range, Vec::new());
    for (k, count) in counts {
        let (orbits, visited) = partition(ctx, k)?;
        report
            .slices
            .push(slice_summary(k, count, visited, &orbits));
        report.subspaces_visited += visited;
        report.orbit_count += orbits.len();
        let analyzed: Vec<(OrbitRow, Vec<String>)> = pool.install(|| {
            orbits
                .par_iter()
                .map(|o| {
                    let rep = &o.members[0];
                    let info = orbit::stabilizer(rep).expect("proper subspace");
                    let r = orbit::analyze_members(rep, &alpha, order, info, &o.members);
                    (row(rep, order, &r), cyclic_violations(n, &r))
                })
                .collect()
        });
        for (row, violations) in analyzed {
            for reason in violations {
                report.counterexamples.push(Counterexample {
                    k,
                    representative: row.representative.clone(),
                    subgroup_order: order,
                    reason,
                });
            }
            if row.equidistant {
                report.hits.push(row.clone());
            }
            report.orbits.push(row);
        }
    }
    report.duration = start.elapsed();
    Ok(report)
}

fn empty_report(
    kind: ScanKind,
    ctx: &FieldContext,
    k_range: &RangeInclusive<usize>,
    subgroup_orders: Vec<u64>,
) -> ScanReport {
    ScanReport {
        kind,
        field: FieldSpec::of(ctx),
        k_min: *k_range.start(),
        k_max: *k_range.end(),
        subgroup_orders,
        subspaces_visited: 0,
        orbit_count: 0,
        slices: Vec::new(),
        hits: Vec::new(),
        orbits: Vec::new(),
        counterexamples: Vec::new(),
        duration: Duration::ZERO,
    }
}

// Checks on a sunflower found under a proper subgroup.
fn sunflower_violations(n: usize, r: &OrbitReport, u: &Subspace) -> Vec<String> {
    let mut out = Vec::new();
    if !r.orbit_stabilizer_consistent() {
        out.push("orbit size disagrees with the stabilizer prediction".to_string());
    }
    if !r.sunflower {
        return out;
    }
    let center = r.center.as_ref().expect("sunflower has a center");
    if !center.is_zero() {
        if arith::is_prime(n as u64) {
            out.push("nonzero center in a prime-degree field".to_string());
        }
        if center.scale(&r.generator).expect("nonzero generator") != *center {
            out.push("generator does not stabilize the center".to_string());
        }
        if orbit::stabilizer(center).map_or(true, |s| s.is_full_length) {
            out.push("nonzero center generates a full-length orbit".to_string());
        }
    }
    match orbit::sunflower_bounds(r, u) {
        Ok(b) if b.all_hold() => {}
        Ok(b) => out.push(format!("size bound violated: {:?}", b.checks)),
        Err(e) => out.push(format!("bounds unavailable: {e}")),
    }
    out
}

/// For each cyclic orbit representative and each subgroup order `m`, analyzes
/// the orbit under the generator `α^((q^n-1)/m)` of the order-`m` subgroup.
/// Pairs where the generator stabilizes the representative are skipped.
pub fn scan_sunflowers(
    ctx: &Arc<FieldContext>,
    k_range: RangeInclusive<usize>,
    subgroup_orders: &[u64],
    opts: &ScanOptions,
) -> Result<ScanReport> {
    check_range(ctx, &k_range)?;
    let order = ctx.group_order();
    for &m in subgroup_orders {
        if m == 0 || !order.is_multiple_of(m) {
            return Err(Error::NonDivisorSubgroup {
                n_sub: m,
                modulus: order,
            });
        }
    }
    let start = Instant::now();
    let mut orders = subgroup_orders.to_vec();
    orders.sort_unstable();
    orders.dedup();
    let mut report = empty_report(ScanKind::Sunflowers, ctx, &k_range, orders.clone());
    if orders.is_empty() {
        return Ok(report);
    }
    let counts = counts(ctx, &k_range)?;
    // Partition cost, then for each representative and subgroup one
    // intersection per member (at most m members each).
    let per_rep: u128 = orders.iter().map(|&m| m as u128).sum();
    let estimated: u128 = counts.iter().map(|(_, c)| 2 * c + c * per_rep / 2).sum();
    guard(estimated, opts.op_ceiling)?;

    let n = ctx.n();
    let generators: Vec<_> = orders
        .iter()
        .map(|&m| (m, ctx.pow(ctx.primitive_element(), order / m)))
        .collect();
    let pool = pool(opts.workers);
    for (k, count) in counts {
        let (orbits, visited) = partition(ctx, k)?;
        report
            .slices
            .push(slice_summary(k, count, visited, &orbits));
        report.subspaces_visited += visited;
        report.orbit_count += orbits.len();
        let analyzed: Vec<Vec<(OrbitRow, Vec<String>)>> = pool.install(|| {
            orbits
                .par_iter()
                .map(|o| {
                    let rep = &o.members[0];
                    generators
                        .iter()
                        .filter(|(_, beta)| rep.scale(beta).expect("nonzero") != *rep)
                        .map(|(m, beta)| {
                            let r = orbit::orbit(rep, beta).expect("orbit within cap");
                            (row(rep, *m, &r), sunflower_violations(n, &r, rep))
                        })
                        .collect()
                })
                .collect()
        });
        for (row, violations) in analyzed.into_iter().flatten() {
            for reason in violations {
                report.counterexamples.push(Counterexample {
                    k,
                    representative: row.representative.clone(),
                    subgroup_order: row.subgroup_order,
                    reason,
                });
            }
            if row.sunflower {
                report.hits.push(row.clone());
            }
            report.orbits.push(row);
        }
    }
    report.duration = start.elapsed();
    Ok(report)
}

/// Every divisor of `q^n - 1` except 1.
pub fn all_subgroup_orders(ctx: &FieldContext) -> Vec<u64> {
    arith::divisors(ctx.group_order())
        .into_iter()
        .filter(|&d| d > 1)
        .collect()
}
