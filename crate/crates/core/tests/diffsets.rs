//! Difference sets checked by brute-force pair counting, and the passage from
//! equidistant orbits to (relative) difference sets via discrete logs.

use std::collections::BTreeSet;
use std::sync::Arc;

use orbitcode::diffset::{
    self, bridge_check, difference_counts, distance_from_difference_set, subspace_indices,
    translate, translate_intersection, verify_ds, verify_rds, BridgeKind,
};
use orbitcode::{Error, FieldContext, Subspace};
use proptest::prelude::*;

fn ctx(p: u64, n: usize) -> Arc<FieldContext> {
    let m = FieldContext::find_primitive_modulus(p, n).unwrap();
    Arc::new(FieldContext::new(p, n, &m).unwrap())
}

fn naive_counts(d: &[u64], v: u64) -> Vec<u64> {
    let mut c = vec![0; v as usize];
    for &x in d {
        for &y in d {
            if x != y {
                c[((x + v - y) % v) as usize] += 1;
            }
        }
    }
    c
}

fn arb_set() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (2u64..40).prop_flat_map(|v| {
        (
            Just(v),
            proptest::collection::btree_set(0..v, 0..v as usize)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn counts_match_pairwise_enumeration((v, d) in arb_set()) {
        let counts = difference_counts(&d, v).unwrap();
        prop_assert_eq!(&counts, &naive_counts(&d, v));
        prop_assert_eq!(counts.iter().sum::<u64>(), (d.len() * d.len().saturating_sub(1)) as u64);
    }

    #[test]
    fn ds_iff_translates_meet_uniformly((v, d) in arb_set()) {
        prop_assume!(d.len() >= 2 && d.len() < v as usize);
        let verdict = verify_ds(&d, v).unwrap();
        let meets: BTreeSet<usize> = (1..v)
            .map(|g| translate_intersection(&d, 0, g, v).unwrap())
            .collect();
        prop_assert_eq!(verdict.is_ds, meets.len() == 1);
        if verdict.is_ds {
            prop_assert_eq!(verdict.lambda, Some(*meets.iter().next().unwrap() as u64));
            prop_assert!(verdict.counting_identity_holds());
        }
        // Intersections of translates depend only on the difference g - g'.
        for g in 0..v {
            prop_assert_eq!(
                translate_intersection(&d, g, (g + 1) % v, v).unwrap(),
                translate_intersection(&d, 0, 1, v).unwrap()
            );
        }
    }

    #[test]
    fn rds_iff_translates_split_by_subgroup((v, d) in arb_set(), pick: usize) {
        prop_assume!(d.len() >= 2);
        let divisors: Vec<u64> = (1..=v).filter(|n| v % n == 0).collect();
        let n_sub = divisors[pick % divisors.len()];
        let r = match verify_rds(&d, v, n_sub) {
            Ok(r) => r,
            Err(Error::SizeOutOfRange { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let sub: BTreeSet<u64> = diffset::subgroup(v, n_sub).unwrap().into_iter().collect();
        let mut inside = BTreeSet::new();
        let mut outside = BTreeSet::new();
        for g in 1..v {
            let m = translate_intersection(&d, 0, g, v).unwrap() as u64;
            if sub.contains(&g) { inside.insert(m); } else { outside.insert(m); }
        }
        prop_assert_eq!(r.is_rds, inside.len() <= 1 && outside.len() <= 1);
        if r.is_rds {
            prop_assert_eq!(r.lambda1, inside.iter().next().copied());
            prop_assert_eq!(r.lambda2, outside.iter().next().copied());
            prop_assert!(r.counting_identity_holds());
        }
    }
}

#[test]
fn small_sets() {
    assert!(difference_counts(&[0], 7).unwrap().iter().all(|&c| c == 0));
    let fano = verify_ds(&[1, 2, 4], 7).unwrap();
    assert_eq!((fano.is_ds, fano.lambda), (true, Some(1)));
    // The complement of a difference set is one too.
    let comp = verify_ds(&[0, 3, 5, 6], 7).unwrap();
    assert_eq!(comp.lambda, Some(2));
    assert!(!verify_ds(&[0, 1, 2], 7).unwrap().is_ds);
    // Quadratic residues mod 11: an (11, 5, 2) difference set.
    let qr = verify_ds(&[1, 3, 4, 5, 9], 11).unwrap();
    assert_eq!(qr.lambda, Some(2));
    assert!(!verify_ds(&[0, 1, 3], 8).unwrap().is_ds);
    assert_eq!(translate(&[1, 2, 4], 5, 7).unwrap(), vec![0, 2, 6]);
}

#[test]
fn relative_sets() {
    assert!(!verify_rds(&[0, 1, 2], 9, 3).unwrap().is_rds);
    let plain = verify_rds(&[1, 2, 4], 7, 1).unwrap();
    assert!(plain.is_rds && plain.lambda2 == Some(1) && plain.lambda1.is_none());
    // {0, 1} in Z_4 relative to {0, 2}: differences ±1 once each, 2 never.
    let r = verify_rds(&[0, 1], 4, 2).unwrap();
    assert!(r.is_rds);
    assert_eq!((r.m, r.lambda1, r.lambda2), (2, Some(0), Some(1)));
}

#[test]
fn subspace_indices_are_logs() {
    let f = ctx(2, 6);
    let u = Subspace::span(&f, &[f.one(), f.alpha(), f.exp(11).unwrap()]).unwrap();
    let d = subspace_indices(&u).unwrap();
    assert_eq!(d.len(), 7);
    let back = Subspace::span(
        &f,
        &d.iter().map(|&i| f.exp(i).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(back, u);
    // Scaling by α^g translates the index set by g.
    let shifted = subspace_indices(&u.scale(&f.exp(5).unwrap()).unwrap()).unwrap();
    assert_eq!(shifted, translate(&d, 5, 63).unwrap());
}

#[test]
fn hyperplanes_give_singer_parameters() {
    let f16 = ctx(2, 4);
    let h = Subspace::span(&f16, &[f16.one(), f16.alpha(), f16.exp(2).unwrap()]).unwrap();
    let b = bridge_check(&h, BridgeKind::BinaryDifferenceSet).unwrap();
    assert!(b.holds);
    assert_eq!(b.expected, (15, 7, 3, 0, 0));
    assert_eq!(b.ds.unwrap().lambda, Some(3));

    let f27 = ctx(3, 3);
    let h = Subspace::span(&f27, &[f27.one(), f27.alpha()]).unwrap();
    let b = bridge_check(&h, BridgeKind::FullLengthRelative).unwrap();
    assert!(b.holds);
    assert_eq!(b.expected, (2, 13, 8, 8, 2));

    let f64_ = ctx(2, 6);
    let sub = Subspace::subfield(&f64_, 2).unwrap();
    let h = sub.sum(&sub.scale(&f64_.alpha()).unwrap()).unwrap();
    let b = bridge_check(&h, BridgeKind::DegenerateRelative).unwrap();
    assert!(b.holds);
    assert_eq!(b.expected, (3, 21, 15, 15, 3));
    assert_eq!(
        bridge_check(&h, BridgeKind::BinaryDifferenceSet).unwrap_err(),
        Error::HypothesisMismatch("BinaryDifferenceSet does not apply to q = 2, t = 2".into())
    );
}

#[test]
fn bridge_rejects_unsuitable_orbits() {
    let f = ctx(2, 8);
    let line = Subspace::span(&f, &[f.one()]).unwrap();
    // A 1-dimensional subspace is equidistant with zero intersections.
    assert_eq!(
        bridge_check(&line, BridgeKind::BinaryDifferenceSet).unwrap_err(),
        Error::ZeroIntersection
    );
    let u = Subspace::span(&f, &[f.one(), f.alpha(), f.exp(7).unwrap()]).unwrap();
    assert!(!orbitcode::orbit::orbit(&u, &f.alpha()).unwrap().equidistant);
    assert_eq!(
        bridge_check(&u, BridgeKind::BinaryDifferenceSet).unwrap_err(),
        Error::NotEquidistant
    );
}

#[test]
fn distance_from_difference_sets() {
    let f16 = ctx(2, 4);
    let h = Subspace::span(&f16, &[f16.one(), f16.alpha(), f16.exp(2).unwrap()]).unwrap();
    let d = subspace_indices(&h).unwrap();
    let v = distance_from_difference_set(&d, &f16, 3, 2).unwrap();
    assert!(v.holds && v.lambda_meets_bound);
    assert_eq!((v.expected_distance, v.observed_distance), (2, Some(2)));

    let f8 = ctx(2, 3);
    let h = Subspace::span(&f8, &[f8.one(), f8.alpha()]).unwrap();
    let d = subspace_indices(&h).unwrap();
    let v = distance_from_difference_set(&d, &f8, 2, 1).unwrap();
    assert!(v.holds);
    assert_eq!(v.observed_distance, Some(2));

    assert_eq!(
        distance_from_difference_set(&[0, 1, 3], &f16, 2, 1).unwrap_err(),
        Error::NotADifferenceSet
    );
}
