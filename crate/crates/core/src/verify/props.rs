//! Seeded randomized suites. Every trial is recorded so a failure can be
//! replayed from the seed alone.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::orbit::{self, SunflowerMode};
use crate::subspace::{self, Subspace};
use crate::text;

// Attempts per trial before a sampler gives up; generous, since rejection
// rates here are far below one half.
const MAX_RESAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trial {
    pub subspace: String,
    pub generator: String,
    pub dimension: usize,
    pub orbit_size: u64,
    pub center_dim: Option<usize>,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub field: crate::report::FieldSpec,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    /// Samples rejected for violating a precondition.
    pub resamples: usize,
    pub transcript: Vec<Trial>,
}

impl PropertyReport {
    fn new(property: &str, ctx: &FieldContext, seed: u64) -> PropertyReport {
        PropertyReport {
            property: property.to_string(),
            field: crate::report::FieldSpec::of(ctx),
            seed,
            trials: 0,
            passed: 0,
            resamples: 0,
            transcript: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }

    fn record(&mut self, trial: Trial) {
        self.trials += 1;
        self.passed += trial.passed as usize;
        self.transcript.push(trial);
    }
}

fn exhausted() -> Error {
    Error::HypothesisMismatch("sampler could not satisfy the preconditions".to_string())
}

/// Random `β` of degree exactly 2: a random unit of `F_{q^2}` outside `F_q`.
fn random_degree_two<R: Rng>(ctx: &FieldContext, rng: &mut R) -> FieldElement {
    let g = ctx.subfield_unit(2);
    let units = ctx.units_in_subfield(2);
    loop {
        let beta = ctx.pow(&g, rng.gen_range(0..units));
        if ctx.element_degree(&beta) == 2 {
            return beta;
        }
    }
}

/// For random `U` (dimension `2..=n-2`) and random `β` of degree 2 with
/// `β ∉ Stab(U)`, the orbit `Orb_β(U)` must be a sunflower.
pub fn property_degree_two_sunflower(
    ctx: &Arc<FieldContext>,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let n = ctx.n();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDegreeField);
    }
    if n < 4 {
        return Err(Error::DimensionOutOfRange { k: 2, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("degree_two_generator_sunflower", ctx, seed);
    for _ in 0..trials {
        let mut attempts = 0;
        let (u, beta) = loop {
            attempts += 1;
            if attempts > MAX_RESAMPLES {
                return Err(exhausted());
            }
            let k = rng.gen_range(2..=n - 2);
            let u = subspace::random_subspace(ctx, k, &mut rng)?;
            let beta = random_degree_two(ctx, &mut rng);
            if u.scale(&beta)? == u {
                report.resamples += 1;
                continue;
            }
            break (u, beta);
        };
        let verdict = orbit::sunflower_check(&u, &beta, SunflowerMode::OneSided)?;
        report.record(Trial {
            subspace: text::format_subspace(&u),
            generator: text::format_element(&beta),
            dimension: u.dim(),
            orbit_size: verdict.orbit_size,
            center_dim: verdict.center.as_ref().map(Subspace::dim),
            passed: verdict.is_sunflower,
            note: None,
        });
    }
    Ok(report)
}

/// Random `F_{q^t}`-subspace: the `F_q`-span of `{v_j · F_{q^t}}`.
fn random_subfield_module<R: Rng>(
    ctx: &Arc<FieldContext>,
    t: usize,
    blocks: usize,
    rng: &mut R,
) -> Result<Subspace> {
    let sub = Subspace::subfield(ctx, t)?;
    let mut acc = Subspace::zero(ctx);
    for _ in 0..blocks {
        let v = subspace::random_nonzero(ctx, rng);
        acc = acc.sum(&sub.scale(&v)?)?;
    }
    Ok(acc)
}

/// Extends a random `V` with `Stab(V) = F_{q^t}^*` by one vector to a
/// full-length `U` and checks that the orbit of `U` under `F_{q^t}^*` is a
/// sunflower with center `V`. Each trial also checks maximality: under every
/// strictly larger cyclic subgroup containing `F_{q^t}^*` the orbit is not a
/// sunflower with center `V`.
pub fn property_extension_sunflower(
    ctx: &Arc<FieldContext>,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let n = ctx.n();
    if t < 2 || !n.is_multiple_of(t) {
        return Err(Error::NonDivisorDegree {
            t: t as u64,
            n: n as u64,
        });
    }
    let max_blocks = n / t - 1;
    if max_blocks == 0 {
        return Err(Error::StabilizerTooSmall);
    }
    let order = ctx.group_order();
    let small = ctx.units_in_subfield(t);
    let larger: Vec<u64> = arith::divisors(order)
        .into_iter()
        .filter(|&m| m > small && m % small == 0)
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("subfield_module_extension_sunflower", ctx, seed);
    for _ in 0..trials {
        let mut attempts = 0;
        let (v, construction) = loop {
            attempts += 1;
            if attempts > MAX_RESAMPLES {
                return Err(exhausted());
            }
            let blocks = rng.gen_range(1..=max_blocks);
            let v = random_subfield_module(ctx, t, blocks, &mut rng)?;
            if v.dim() != blocks * t || orbit::stabilizer(&v)?.t != t {
                report.resamples += 1;
                continue;
            }
            let x = subspace::random_nonzero(ctx, &mut rng);
            match orbit::build_sunflower(&v, &x) {
                Ok(c) => break (v, c),
                Err(Error::GeneratorInV | Error::NotFullLength) => report.resamples += 1,
                Err(e) => return Err(e),
            }
        };
        let r = &construction.report;
        let mut note = None;
        let mut passed = r.sunflower && r.center.as_ref() == Some(&v);
        for &m in &larger {
            let gamma = ctx.pow(ctx.primitive_element(), order / m);
            let wider =
                orbit::sunflower_check(&construction.subspace, &gamma, SunflowerMode::OneSided)?;
            if wider.is_sunflower && wider.center.as_ref() == Some(&v) {
                passed = false;
                note = Some(format!(
                    "subgroup of order {m} also gives a sunflower with center V"
                ));
            }
        }
        report.record(Trial {
            subspace: text::format_subspace(&construction.subspace),
            generator: text::format_element(&construction.generator),
            dimension: construction.subspace.dim(),
            orbit_size: r.size,
            center_dim: r.center.as_ref().map(Subspace::dim),
            passed,
            note,
        });
    }
    Ok(report)
}
