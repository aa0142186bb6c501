//! JSON documents. These are the source of truth for everything the
//! command-line driver prints; the human tables are rendered from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::field::FieldContext;
use crate::orbit::{self, OrbitReport, StabilizerInfo, SunflowerBounds, TrivialClass};
use crate::subspace::Subspace;

/// Bumped whenever a document field changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: usize,
    /// Ascending coefficients, leading 1 included.
    pub modulus: Vec<u8>,
}

impl FieldSpec {
    pub fn of(ctx: &FieldContext) -> FieldSpec {
        FieldSpec {
            p: ctx.p(),
            n: ctx.n(),
            modulus: ctx.modulus().to_vec(),
        }
    }
}

fn rows(u: &Subspace) -> Vec<Vec<u8>> {
    u.basis().iter().map(|r| r.coeffs().to_vec()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDocument {
    pub schema: u32,
    pub field: FieldSpec,
    /// Canonical (reduced echelon) basis, one coefficient vector per row.
    pub subspace: Vec<Vec<u8>>,
    pub dimension: usize,
    pub generator: Vec<u8>,
    pub generator_order: u64,
    pub size: u64,
    pub stabilizer_beta_order: u64,
    pub predicted_size: u64,
    pub orbit_stabilizer_consistent: bool,
    pub stabilizer: StabilizerInfo,
    pub trivial_class: TrivialClass,
    pub weight_spectrum: Vec<usize>,
    pub spectrum_histogram: BTreeMap<usize, usize>,
    pub min_distance: Option<usize>,
    pub equidistant: bool,
    pub intersection_dim: Option<usize>,
    pub sunflower: bool,
    pub center: Option<Vec<Vec<u8>>>,
    pub bounds: Option<SunflowerBounds>,
}

impl OrbitDocument {
    pub fn new(report: &OrbitReport, u: &Subspace) -> OrbitDocument {
        OrbitDocument {
            schema: SCHEMA_VERSION,
            field: FieldSpec::of(u.context()),
            subspace: rows(u),
            dimension: report.dimension,
            generator: report.generator.coeffs().to_vec(),
            generator_order: report.generator_order,
            size: report.size,
            stabilizer_beta_order: report.stabilizer_beta_order,
            predicted_size: report.predicted_size,
            orbit_stabilizer_consistent: report.orbit_stabilizer_consistent(),
            stabilizer: report.stabilizer,
            trivial_class: report.trivial_class,
            weight_spectrum: report.weight_spectrum.clone(),
            spectrum_histogram: report.spectrum_histogram(),
            min_distance: report.min_distance,
            equidistant: report.equidistant,
            intersection_dim: report.intersection_dim,
            sunflower: report.sunflower,
            center: report.center.as_ref().map(rows),
            bounds: orbit::sunflower_bounds(report, u).ok(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn orbit_document_roundtrip() {
        let m = FieldContext::find_primitive_modulus(2, 6).unwrap();
        let ctx = Arc::new(FieldContext::new(2, 6, &m).unwrap());
        let f4 = Subspace::subfield(&ctx, 2).unwrap();
        let u = f4
            .sum(&Subspace::span(&ctx, &[ctx.alpha()]).unwrap())
            .unwrap();
        let beta = ctx.subfield_unit(2);
        let report = orbit::orbit(&u, &beta).unwrap();
        let doc = OrbitDocument::new(&report, &u);
        assert!(doc.sunflower && doc.bounds.is_some());
        let back: OrbitDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }
}
