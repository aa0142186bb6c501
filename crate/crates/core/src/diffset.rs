//! Cyclic difference sets and relative difference sets in `Z_v`, and the
//! bridge from equidistant orbits to them through discrete logarithms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit;
use crate::subspace::Subspace;

/// Largest modulus accepted for dense difference tables.
pub const MAX_DENSE_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsVerdict {
    pub v: u64,
    pub k: usize,
    pub is_ds: bool,
    pub lambda: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdsVerdict {
    pub n_sub: u64,
    pub m: u64,
    pub k: usize,
    pub is_rds: bool,
    pub lambda1: Option<u64>,
    pub lambda2: Option<u64>,
}

impl DsVerdict {
    /// `λ(v - 1) = k(k - 1)`.
    pub fn counting_identity_holds(&self) -> bool {
        match self.lambda {
            Some(l) => l * (self.v - 1) == (self.k * (self.k - 1)) as u64,
            None => !self.is_ds,
        }
    }
}

impl RdsVerdict {
    /// `k(k - 1) = n(m - 1)λ2 + (n - 1)λ1`, vacuous parts counted as zero.
    pub fn counting_identity_holds(&self) -> bool {
        if !self.is_rds {
            return true;
        }
        let l1 = self.lambda1.unwrap_or(0);
        let l2 = self.lambda2.unwrap_or(0);
        (self.k * (self.k - 1)) as u64 == self.n_sub * (self.m - 1) * l2 + (self.n_sub - 1) * l1
    }
}

fn validate(d: &[u64], v: u64) -> Result<()> {
    if v > MAX_DENSE_MODULUS {
        return Err(Error::ModulusTooLarge(v));
    }
    let mut seen = BTreeSet::new();
    for &x in d {
        if x >= v {
            return Err(Error::ResidueOutOfRange {
                residue: x,
                modulus: v,
            });
        }
        if !seen.insert(x) {
            return Err(Error::DuplicateResidue(x));
        }
    }
    Ok(())
}

/// `counts[g]` = number of ordered pairs `(x, y)`, `x ≠ y`, with `x - y ≡ g`.
/// Index 0 is always zero.
pub fn difference_counts(d: &[u64], v: u64) -> Result<Vec<u64>> {
    validate(d, v)?;
    let mut counts = vec![0u64; v as usize];
    for &x in d {
        for &y in d {
            if x != y {
                counts[((x + v - y) % v) as usize] += 1;
            }
        }
    }
    Ok(counts)
}

fn check_size(d: &[u64], v: u64) -> Result<()> {
    if d.len() < 2 || d.len() as u64 >= v {
        return Err(Error::SizeOutOfRange {
            size: d.len(),
            modulus: v,
        });
    }
    Ok(())
}

fn constant(values: impl Iterator<Item = u64>) -> Option<Option<u64>> {
    let mut common = None;
    for x in values {
        match common {
            None => common = Some(x),
            Some(c) if c != x => return None,
            _ => {}
        }
    }
    Some(common)
}

pub fn verify_ds(d: &[u64], v: u64) -> Result<DsVerdict> {
    let counts = difference_counts(d, v)?;
    check_size(d, v)?;
    let lambda = constant(counts[1..].iter().copied()).flatten();
    let is_ds = lambda.is_some_and(|l| l > 0);
    Ok(DsVerdict {
        v,
        k: d.len(),
        is_ds,
        lambda: if is_ds { lambda } else { None },
    })
}

/// Relative to the unique subgroup `N = (v / n_sub) Z_v` of order `n_sub`.
pub fn verify_rds(d: &[u64], v: u64, n_sub: u64) -> Result<RdsVerdict> {
    if n_sub == 0 || !v.is_multiple_of(n_sub) {
        return Err(Error::NonDivisorSubgroup { n_sub, modulus: v });
    }
    let counts = difference_counts(d, v)?;
    check_size(d, v)?;
    let m = v / n_sub;
    let in_n = |g: usize| (g as u64).is_multiple_of(m);
    let lambda1 = constant((1..v as usize).filter(|&g| in_n(g)).map(|g| counts[g]));
    let lambda2 = constant((1..v as usize).filter(|&g| !in_n(g)).map(|g| counts[g]));
    let is_rds = lambda1.is_some() && lambda2.is_some();
    Ok(RdsVerdict {
        n_sub,
        m,
        k: d.len(),
        is_rds,
        lambda1: if is_rds { lambda1.flatten() } else { None },
        lambda2: if is_rds { lambda2.flatten() } else { None },
    })
}

/// `D + g` in `Z_v`, sorted.
pub fn translate(d: &[u64], g: u64, v: u64) -> Result<Vec<u64>> {
    validate(d, v)?;
    let mut out: Vec<u64> = d.iter().map(|&x| (x + g % v) % v).collect();
    out.sort_unstable();
    Ok(out)
}

/// `|(D + g) ∩ (D + g')|`.
pub fn translate_intersection(d: &[u64], g: u64, g2: u64, v: u64) -> Result<usize> {
    let a: BTreeSet<u64> = translate(d, g, v)?.into_iter().collect();
    let b = translate(d, g2, v)?;
    Ok(b.iter().filter(|x| a.contains(x)).count())
}

/// `{ dlog(u) : u ∈ U, u ≠ 0 }`, sorted.
pub fn subspace_indices(u: &Subspace) -> Result<Vec<u64>> {
    let ctx = u.context();
    if !ctx.alpha_is_primitive() {
        return Err(Error::NonPrimitiveAlpha);
    }
    let mut out = u
        .enumerate_elements()?
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| ctx.dlog(&x))
        .collect::<Result<Vec<u64>>>()?;
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BridgeKind {
    /// Binary, full-length: a plain `(2^n-1, 2^k-1, 2^r-1)` difference set.
    BinaryDifferenceSet,
    /// Full-length: a `(q-1, (q^n-1)/(q-1), q^k-1, q^k-1, q^r-1)` RDS.
    FullLengthRelative,
    /// Degenerate with `Stab(U) = F_{q^t}^*`: a `(q^t-1, (q^n-1)/(q^t-1), q^k-1, q^k-1, q^r-1)` RDS.
    DegenerateRelative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeVerdict {
    pub kind: BridgeKind,
    pub r: usize,
    pub t: usize,
    pub indices: usize,
    pub expected: (u64, u64, u64, u64, u64),
    pub ds: Option<DsVerdict>,
    pub rds: Option<RdsVerdict>,
    pub holds: bool,
}

/// The bridge whose hypotheses `U` satisfies, given its stabilizer degree.
pub fn applicable_bridge(q: u64, t: usize) -> BridgeKind {
    match (q, t) {
        (2, 1) => BridgeKind::BinaryDifferenceSet,
        (_, 1) => BridgeKind::FullLengthRelative,
        _ => BridgeKind::DegenerateRelative,
    }
}

/// Recomputes the orbit of `U` under `α`, and checks that the index set of
/// `U` is the (relative) difference set the bridge predicts.
pub fn bridge_check(u: &Subspace, expect: BridgeKind) -> Result<BridgeVerdict> {
    let ctx = u.context();
    if !ctx.alpha_is_primitive() {
        return Err(Error::NonPrimitiveAlpha);
    }
    let report = orbit::orbit(u, &ctx.alpha())?;
    if !report.equidistant {
        return Err(Error::NotEquidistant);
    }
    let r = report.intersection_dim.expect("equidistant");
    if r == 0 {
        return Err(Error::ZeroIntersection);
    }
    let q = ctx.q();
    let n = ctx.n() as u32;
    let k = u.dim() as u32;
    let t = report.stabilizer.t;
    match (expect, q, t) {
        (BridgeKind::BinaryDifferenceSet, 2, 1) | (BridgeKind::FullLengthRelative, _, 1) => {}
        (BridgeKind::DegenerateRelative, _, t) if t > 1 => {}
        _ => {
            return Err(Error::HypothesisMismatch(format!(
                "{expect:?} does not apply to q = {q}, t = {t}"
            )))
        }
    }
    let v = ctx.group_order();
    let qk = q.pow(k) - 1;
    let qr = q.pow(r as u32) - 1;
    let d = subspace_indices(u)?;
    let (ds, rds, expected, holds) = match expect {
        BridgeKind::BinaryDifferenceSet => {
            let verdict = verify_ds(&d, v)?;
            let holds = verdict.is_ds && verdict.lambda == Some(qr);
            (Some(verdict), None, (v, qk, qr, 0, 0), holds)
        }
        _ => {
            let qt = q.pow(t as u32) - 1;
            let verdict = verify_rds(&d, v, qt)?;
            let holds = verdict.is_rds
                && verdict.m == (q.pow(n) - 1) / qt
                && verdict.lambda1.unwrap_or(qk) == qk
                && verdict.lambda2 == Some(qr);
            (None, Some(verdict), (qt, v / qt, qk, qk, qr), holds)
        }
    };
    Ok(BridgeVerdict {
        kind: expect,
        r,
        t,
        indices: d.len(),
        expected,
        ds,
        rds,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceVerdict {
    pub lambda: u64,
    pub lambda_bound: u64,
    pub lambda_meets_bound: bool,
    pub expected_distance: usize,
    pub observed_distance: Option<usize>,
    pub holds: bool,
}

/// Spans `U` from the elements indexed by a difference set and compares the
/// minimum distance of its cyclic orbit with `2(k - d)`.
pub fn distance_from_difference_set(
    d: &[u64],
    ctx: &std::sync::Arc<crate::field::FieldContext>,
    k: usize,
    dd: usize,
) -> Result<DistanceVerdict> {
    let v = ctx.group_order();
    let verdict = verify_ds(d, v)?;
    if !verdict.is_ds {
        return Err(Error::NotADifferenceSet);
    }
    let q = ctx.q();
    if d.len() as u64 != q.pow(k as u32) - 1 {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: d.len(),
        });
    }
    let lambda = verdict.lambda.expect("difference set");
    let bound = q.pow(dd as u32) - 1;
    let gens = d.iter().map(|&i| ctx.exp(i)).collect::<Result<Vec<_>>>()?;
    let u = Subspace::span(ctx, &gens)?;
    if u.dim() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: u.dim(),
        });
    }
    let report = orbit::orbit(&u, &ctx.alpha())?;
    let expected = 2 * (k - dd.min(k));
    Ok(DistanceVerdict {
        lambda,
        lambda_bound: bound,
        lambda_meets_bound: lambda == bound,
        expected_distance: expected,
        observed_distance: report.min_distance,
        holds: lambda <= bound && report.min_distance == Some(expected),
    })
}

/// Order-`n_sub` subgroup of `Z_v` as a sorted residue list.
pub fn subgroup(v: u64, n_sub: u64) -> Result<Vec<u64>> {
    if n_sub == 0 || !v.is_multiple_of(n_sub) {
        return Err(Error::NonDivisorSubgroup { n_sub, modulus: v });
    }
    let step = v / n_sub;
    Ok((0..n_sub).map(|i| i * step).collect())
}

/// `λ` forced by the counting identity, if integral.
pub fn forced_lambda(v: u64, k: u64) -> Option<u64> {
    let num = k * (k - 1);
    (v > 1 && num.is_multiple_of(v - 1)).then(|| num / (v - 1))
}
