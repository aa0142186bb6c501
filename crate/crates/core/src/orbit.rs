//! Orbit codes under `F_{q^n}^*` and its cyclic subgroups `⟨β⟩`.
//!
//! The orbit `Orb_β(U) = {U, βU, β²U, ...}` is enumerated until `U` recurs.
//! Because the action is by a commutative group,
//! `d(β^i U, β^j U) = d(U, β^(j-i) U)`, so the weight spectrum and the
//! sunflower test only ever intersect `U` with the other members.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::subspace::Subspace;

/// Default refusal threshold for orbit enumeration.
pub const DEFAULT_ORBIT_CAP: u64 = 1 << 20;

/// `Stab(U) ∪ {0} = F_{q^t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerInfo {
    pub t: usize,
    pub full_orbit_size: u64,
    pub is_full_length: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TrivialClass {
    DimEqualsT,
    DimEqualsNMinusT,
    NonTrivial,
}

impl TrivialClass {
    pub fn from_dims(k: usize, n: usize, t: usize) -> TrivialClass {
        if k == t {
            TrivialClass::DimEqualsT
        } else if k + t == n {
            TrivialClass::DimEqualsNMinusT
        } else {
            TrivialClass::NonTrivial
        }
    }

    /// Intersection dimension every trivial orbit is known to have.
    pub fn predicted_intersection(self, n: usize, t: usize) -> Option<usize> {
        match self {
            TrivialClass::DimEqualsT => Some(0),
            TrivialClass::DimEqualsNMinusT => Some(n - 2 * t),
            TrivialClass::NonTrivial => None,
        }
    }
}

fn check_proper(u: &Subspace) -> Result<()> {
    if u.dim() == 0 || u.dim() == u.context().n() {
        Err(Error::DegenerateSubspace)
    } else {
        Ok(())
    }
}

/// Largest `t | gcd(dim U, n)` whose subfield units fix `U`.
pub fn stabilizer(u: &Subspace) -> Result<StabilizerInfo> {
    check_proper(u)?;
    let ctx = u.context();
    let g = arith::gcd(u.dim() as u64, ctx.n() as u64);
    let t = arith::divisors(g)
        .into_iter()
        .rev()
        .find(|&d| {
            let unit = ctx.subfield_unit(d as usize);
            u.scale(&unit).expect("unit is nonzero") == *u
        })
        .expect("F_q^* always stabilizes") as usize;
    Ok(StabilizerInfo {
        t,
        full_orbit_size: ctx.group_order() / ctx.units_in_subfield(t),
        is_full_length: t == 1,
    })
}

pub fn classify_trivial(u: &Subspace) -> Result<TrivialClass> {
    let info = stabilizer(u)?;
    Ok(TrivialClass::from_dims(u.dim(), u.context().n(), info.t))
}

/// `U, βU, ..., β^(s-1)U` with `β^s U = U`.
pub fn enumerate_orbit(u: &Subspace, beta: &FieldElement, cap: u64) -> Result<Vec<Subspace>> {
    let ctx = u.context();
    ctx.check(beta)?;
    if beta.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let mut members = vec![u.clone()];
    let mut cur = u.scale(beta)?;
    while cur != *u {
        if members.len() as u64 >= cap {
            return Err(Error::EnumerationTooLarge {
                requested: members.len() as u128 + 1,
                cap: cap as u128,
            });
        }
        let next = cur.scale(beta)?;
        members.push(cur);
        cur = next;
    }
    Ok(members)
}

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub dimension: usize,
    pub generator: FieldElement,
    pub generator_order: u64,
    pub size: u64,
    /// `|Stab_β(U)| = |β| / size`.
    pub stabilizer_beta_order: u64,
    /// `|β| / gcd(|β|, q^t - 1)`, the size predicted from `Stab_β(U) = ⟨β⟩ ∩ Stab(U)`.
    pub predicted_size: u64,
    pub stabilizer: StabilizerInfo,
    /// `dim(U ∩ β^i U)` for `i = 1..size`.
    pub weight_spectrum: Vec<usize>,
    pub min_distance: Option<usize>,
    pub equidistant: bool,
    pub intersection_dim: Option<usize>,
    pub sunflower: bool,
    pub center: Option<Subspace>,
    pub trivial_class: TrivialClass,
}

impl OrbitReport {
    pub fn spectrum_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for &d in &self.weight_spectrum {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }

    /// `size · |Stab_β(U)| = |β|` and the size agrees with the subgroup-intersection formula.
    pub fn orbit_stabilizer_consistent(&self) -> bool {
        self.size * self.stabilizer_beta_order == self.generator_order
            && self.size == self.predicted_size
    }
}

/// `Orb_β(U)` with full analysis.
pub fn orbit(u: &Subspace, beta: &FieldElement) -> Result<OrbitReport> {
    orbit_capped(u, beta, DEFAULT_ORBIT_CAP)
}

pub fn orbit_capped(u: &Subspace, beta: &FieldElement, cap: u64) -> Result<OrbitReport> {
    check_proper(u)?;
    let ctx = u.context();
    ctx.check(beta)?;
    if beta.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let info = stabilizer(u)?;
    let order = ctx.order(beta)?;
    let predicted = order / arith::gcd(order, ctx.units_in_subfield(info.t));
    if predicted > cap {
        return Err(Error::EnumerationTooLarge {
            requested: predicted as u128,
            cap: cap as u128,
        });
    }
    let members = enumerate_orbit(u, beta, cap)?;
    Ok(analyze_members(u, beta, order, info, &members))
}

/// Analysis of an already enumerated orbit; `members[i] = β^i U`.
pub(crate) fn analyze_members(
    u: &Subspace,
    beta: &FieldElement,
    order: u64,
    info: StabilizerInfo,
    members: &[Subspace],
) -> OrbitReport {
    let ctx = u.context();
    let k = u.dim();
    let size = members.len() as u64;
    let weight_spectrum: Vec<usize> = members[1..]
        .iter()
        .map(|m| u.intersection_dim(m).expect("same field"))
        .collect();
    let max = weight_spectrum.iter().copied().max();
    let min_distance = max.map(|c| 2 * (k - c));
    let equidistant = max.is_some() && weight_spectrum.iter().all(|&d| Some(d) == max);
    let intersection_dim = if equidistant { max } else { None };
    let center = if equidistant {
        one_sided_center(u, members)
    } else {
        None
    };
    OrbitReport {
        dimension: k,
        generator: beta.clone(),
        generator_order: order,
        size,
        stabilizer_beta_order: order / size,
        predicted_size: order / arith::gcd(order, ctx.units_in_subfield(info.t)),
        stabilizer: info,
        weight_spectrum,
        min_distance,
        equidistant,
        intersection_dim,
        sunflower: center.is_some(),
        center,
        trivial_class: TrivialClass::from_dims(k, ctx.n(), info.t),
    }
}

// Common value of U ∩ β^i U over all other members, if there is one.
fn one_sided_center(u: &Subspace, members: &[Subspace]) -> Option<Subspace> {
    let mut rest = members[1..].iter();
    let first = u.intersect(rest.next()?).expect("same field");
    for m in rest {
        if u.intersect(m).expect("same field") != first {
            return None;
        }
    }
    Some(first)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SunflowerMode {
    /// Compare `U ∩ β^i U` across `i`.
    OneSided,
    /// Compare `β^i U ∩ β^j U` across all pairs.
    Pairwise,
}

#[derive(Debug, Clone)]
pub struct SunflowerVerdict {
    pub is_sunflower: bool,
    pub center: Option<Subspace>,
    pub orbit_size: u64,
}

pub fn sunflower_check(
    u: &Subspace,
    beta: &FieldElement,
    mode: SunflowerMode,
) -> Result<SunflowerVerdict> {
    check_proper(u)?;
    u.context().check(beta)?;
    if beta.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let members = enumerate_orbit(u, beta, DEFAULT_ORBIT_CAP)?;
    let center = match mode {
        SunflowerMode::OneSided => one_sided_center(u, &members),
        SunflowerMode::Pairwise => pairwise_center(&members),
    };
    Ok(SunflowerVerdict {
        is_sunflower: center.is_some(),
        center,
        orbit_size: members.len() as u64,
    })
}

fn pairwise_center(members: &[Subspace]) -> Option<Subspace> {
    if members.len() < 2 {
        return None;
    }
    let first = members[0].intersect(&members[1]).expect("same field");
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].intersect(&members[j]).expect("same field") != first {
                return None;
            }
        }
    }
    Some(first)
}

#[derive(Debug, Clone)]
pub struct SunflowerConstruction {
    pub subspace: Subspace,
    pub generator: FieldElement,
    pub report: OrbitReport,
}

/// Extends `V` (stabilized by `F_{q^t}^*`, `t > 1`) by `x` to `U = V ⊕ ⟨x⟩`
/// and returns the orbit of `U` under a generator of `F_{q^t}^*`; the orbit
/// is a sunflower with center `V`.
pub fn build_sunflower(v: &Subspace, x: &FieldElement) -> Result<SunflowerConstruction> {
    let ctx = v.context();
    ctx.check(x)?;
    let t = stabilizer(v)?.t;
    if t == 1 {
        return Err(Error::StabilizerTooSmall);
    }
    if v.contains(x)? {
        return Err(Error::GeneratorInV);
    }
    let u = v.sum(&Subspace::span(ctx, std::slice::from_ref(x))?)?;
    if u.dim() == ctx.n() || !stabilizer(&u)?.is_full_length {
        return Err(Error::NotFullLength);
    }
    let generator = ctx.subfield_unit(t);
    let report = orbit(&u, &generator)?;
    Ok(SunflowerConstruction {
        subspace: u,
        generator,
        report,
    })
}

/// A bound `size (<|<=) numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub numerator: u128,
    pub denominator: u128,
    pub strict: bool,
    pub holds: bool,
    pub attained: bool,
}

impl BoundCheck {
    fn new(name: &str, size: u64, numerator: u128, denominator: u128, strict: bool) -> Self {
        let lhs = size as u128 * denominator;
        BoundCheck {
            name: name.to_string(),
            numerator,
            denominator,
            strict,
            holds: if strict {
                lhs < numerator
            } else {
                lhs <= numerator
            },
            attained: lhs == numerator,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunflowerBounds {
    pub size: u64,
    pub center_dim: usize,
    pub checks: Vec<BoundCheck>,
    pub divides_group_order: bool,
    /// `(q^s - 1)/(q - 1)` with `s` the largest divisor of `n` below `k`;
    /// binding only for nonzero centers.
    pub nontrivial_center_bound: u128,
    pub exceeds_nontrivial_center_bound: bool,
    /// Trivial center, `k | n`, and the spread bound is met.
    pub optimal: bool,
}

impl SunflowerBounds {
    pub fn all_hold(&self) -> bool {
        self.divides_group_order && self.checks.iter().all(|c| c.holds)
    }
}

fn largest_divisor_below(n: usize, k: usize, multiple_of: usize) -> Option<usize> {
    arith::divisors(n as u64)
        .into_iter()
        .map(|d| d as usize)
        .filter(|&d| d < k && d % multiple_of == 0)
        .max()
}

/// Size bounds for a sunflower orbit of `U`.
pub fn sunflower_bounds(report: &OrbitReport, u: &Subspace) -> Result<SunflowerBounds> {
    if !report.sunflower {
        return Err(Error::NotASunflower);
    }
    let ctx: &Arc<FieldContext> = u.context();
    let q = ctx.q();
    let n = ctx.n();
    let k = u.dim();
    let t = report.stabilizer.t;
    let size = report.size;
    let center_dim = report.center.as_ref().map_or(0, |c| c.dim());
    let qp = |e: usize| arith::pow128(q, e as u32);

    let mut checks = Vec::new();
    if center_dim > 0 {
        if t == 1 {
            let s = largest_divisor_below(n, k, 1).expect("1 divides n");
            checks.push(BoundCheck::new(
                "nontrivial_center_full_length",
                size,
                qp(s) - 1,
                qp(1) - 1,
                false,
            ));
        } else if let Some(s) = largest_divisor_below(n, k, t) {
            checks.push(BoundCheck::new(
                "nontrivial_center_degenerate",
                size,
                qp(s) - 1,
                qp(t) - 1,
                false,
            ));
        }
    } else if n.is_multiple_of(k) {
        checks.push(BoundCheck::new(
            "trivial_center_spread",
            size,
            qp(n) - 1,
            qp(k) - 1,
            false,
        ));
    } else {
        let r = n % k;
        checks.push(BoundCheck::new(
            "trivial_center_partial_spread",
            size,
            qp(n) - qp(r),
            qp(k) - 1,
            true,
        ));
    }
    let s = largest_divisor_below(n, k, 1).unwrap_or(1);
    let nontrivial_center_bound = (qp(s) - 1) / (q as u128 - 1);
    let optimal = center_dim == 0 && n.is_multiple_of(k) && checks.iter().all(|c| c.attained);
    Ok(SunflowerBounds {
        size,
        center_dim,
        divides_group_order: ctx.group_order().is_multiple_of(size),
        nontrivial_center_bound,
        exceeds_nontrivial_center_bound: size as u128 > nontrivial_center_bound,
        optimal,
        checks,
    })
}
