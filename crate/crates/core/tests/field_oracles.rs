//! Field arithmetic against naive polynomial arithmetic written here from
//! scratch (schoolbook product, long division, extended Euclid).

use std::sync::{Arc, OnceLock};

use orbitcode::{text, Error, FieldContext, FieldElement};
use proptest::prelude::*;

type P = Vec<u64>;

fn trim(mut a: P) -> P {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|&b| a * b % p == 1).expect("unit")
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> P {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (P, P) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0; r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> P {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p;
    }
    trim(out)
}

/// Inverse of `a` modulo `f` by the extended Euclidean algorithm.
fn ext_euclid_inverse(a: &[u64], f: &[u64], p: u64) -> P {
    let (mut r0, mut r1) = (f.to_vec(), trim(a.to_vec()));
    let (mut s0, mut s1): (P, P) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1, p);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant because f is irreducible.
    assert_eq!(r0.len(), 1);
    let c = inv_mod(r0[0], p);
    poly_divmod(&s0.iter().map(|x| x * c % p).collect::<P>(), f, p).1
}

fn padded(a: P, n: usize) -> Vec<u64> {
    let mut a = a;
    a.resize(n, 0);
    a
}

fn coeffs(x: &FieldElement) -> Vec<u64> {
    x.coeffs().iter().map(|&c| c as u64).collect()
}

fn modulus(ctx: &FieldContext) -> P {
    ctx.modulus().iter().map(|&c| c as u64).collect()
}

fn fields() -> Vec<(u64, usize, Vec<u64>)> {
    vec![
        (2, 10, vec![1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
        (3, 12, vec![2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1]),
        (5, 9, vec![3, 4, 2, 1, 4, 1, 0, 0, 1, 1]),
        (7, 3, FieldContext::find_primitive_modulus(7, 3).unwrap()),
        (
            251,
            2,
            FieldContext::find_primitive_modulus(251, 2).unwrap(),
        ),
    ]
}

/// Contexts are built once; dlog tables make construction the expensive part.
fn contexts() -> &'static [FieldContext] {
    static CTX: OnceLock<Vec<FieldContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        fields()
            .into_iter()
            .map(|(p, n, m)| FieldContext::new(p, n, &m).unwrap())
            .collect()
    })
}

fn arb_field_and_pair() -> impl Strategy<Value = (usize, Vec<u64>, Vec<u64>)> {
    (0..contexts().len()).prop_flat_map(|i| {
        let (p, n) = (contexts()[i].p(), contexts()[i].n());
        (
            Just(i),
            proptest::collection::vec(0..p, n),
            proptest::collection::vec(0..p, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mul_matches_schoolbook((i, a, b) in arb_field_and_pair()) {
        let ctx = &contexts()[i];
        let (p, n, m) = (ctx.p(), ctx.n(), modulus(ctx));
        let x = ctx.element(&a).unwrap();
        let y = ctx.element(&b).unwrap();
        let expected = padded(poly_divmod(&poly_mul(&a, &b, p), &m, p).1, n);
        prop_assert_eq!(coeffs(&ctx.mul(&x, &y)), expected);
        prop_assert_eq!(ctx.mul(&x, &ctx.one()), x.clone());
        prop_assert_eq!(ctx.sub(&ctx.add(&x, &y), &y), x);
    }

    #[test]
    fn inverse_matches_extended_euclid((i, a, _b) in arb_field_and_pair()) {
        let ctx = &contexts()[i];
        let (p, n, m) = (ctx.p(), ctx.n(), modulus(ctx));
        let x = ctx.element(&a).unwrap();
        if x.is_zero() {
            prop_assert_eq!(ctx.inv(&x).unwrap_err(), Error::DivisionByZero);
        } else {
            let inv = ctx.inv(&x).unwrap();
            prop_assert_eq!(ctx.mul(&x, &inv), ctx.one());
            prop_assert_eq!(coeffs(&inv), padded(ext_euclid_inverse(&a, &m, p), n));
        }
    }

    #[test]
    fn order_divides_group_order_and_is_minimal((i, a, _b) in arb_field_and_pair()) {
        let ctx = &contexts()[i];
        let x = ctx.element(&a).unwrap();
        prop_assume!(!x.is_zero());
        let ord = ctx.order(&x).unwrap();
        prop_assert_eq!(ctx.group_order() % ord, 0);
        prop_assert_eq!(ctx.pow(&x, ord), ctx.one());
        for (r, _) in orbitcode::arith::factor(ord) {
            prop_assert_ne!(ctx.pow(&x, ord / r), ctx.one());
        }
    }

    #[test]
    fn subfield_membership_agrees_with_order((i, a, _b) in arb_field_and_pair()) {
        let ctx = &contexts()[i];
        let x = ctx.element(&a).unwrap();
        prop_assume!(!x.is_zero());
        let ord = ctx.order(&x).unwrap();
        for t in ctx.subfield_degrees() {
            let t = t as usize;
            let by_order = ctx.units_in_subfield(t).is_multiple_of(ord);
            prop_assert_eq!(ctx.subfield_membership(&x, t).unwrap(), by_order);
        }
        prop_assert!(ctx.subfield_membership(&x, ctx.element_degree(&x)).unwrap());
    }
}

#[test]
fn dlog_roundtrip_random_exponents() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (p, n, m) in fields() {
        let ctx = FieldContext::new(p, n, &m).unwrap();
        assert_eq!(ctx.dlog(&ctx.one()).unwrap(), 0);
        for _ in 0..1000 {
            let i = rng.gen_range(0..ctx.group_order());
            let x = ctx.exp(i).unwrap();
            assert_eq!(ctx.dlog(&x).unwrap(), i);
        }
    }
}

#[test]
fn reference_fields() {
    let ctx = FieldContext::new(2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]).unwrap();
    assert_eq!(ctx.group_order(), 1023);
    assert!(ctx.alpha_is_primitive());
    assert_eq!(ctx.order(&ctx.exp(93).unwrap()).unwrap(), 11);
    assert_eq!(ctx.order(&ctx.one()).unwrap(), 1);
    assert_eq!(ctx.pow(&ctx.alpha(), ctx.group_order()), ctx.one());
    assert_eq!(ctx.element_degree(&ctx.alpha()), 10);
    assert_eq!(ctx.element_degree(&ctx.one()), 1);

    let f2 = FieldContext::new(2, 1, &[1, 1]).unwrap();
    assert_eq!(f2.group_order(), 1);
    assert_eq!(
        FieldContext::new(2, 2, &[1, 0, 1]).unwrap_err(),
        Error::ReducibleModulus
    );

    let f59 = FieldContext::new(5, 9, &[3, 4, 2, 1, 4, 1, 0, 0, 1, 1]).unwrap();
    let omega = text::element(&f59, "poly:2a^8+3a^6+3a^5+2a^4+2a^3").unwrap();
    assert_eq!(f59.order(&omega).unwrap(), 76);

    let f315 = FieldContext::new(3, 15, &[1, 1, 2, 0, 0, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let rho = text::element(&f315, "poly:a^13+2a^12+a^9+a^8+2a^6+2a^5+a^3+2a+1").unwrap();
    assert_eq!(f315.element_degree(&rho), 3);
    assert_eq!(f315.order(&rho).unwrap(), 26);
}

#[test]
fn subfield_generators() {
    let f312 = FieldContext::new(3, 12, &[2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1]).unwrap();
    let c = f312.subfield_generator(3).unwrap();
    assert_eq!(f312.order(&c).unwrap(), 26);
    assert!(f312.subfield_membership(&c, 3).unwrap());
    assert!(f312.subfield_membership(&f312.one(), 4).unwrap());
    assert!(!f312.exp(66430).unwrap().is_zero());
    assert_eq!(f312.subfield_generator(12).unwrap(), f312.alpha());
    assert!(matches!(
        f312.subfield_generator(5),
        Err(Error::NonDivisorDegree { .. })
    ));

    let f515 = FieldContext::new(5, 15, &[3, 4, 3, 3, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    assert_eq!(
        f515.order(&f515.subfield_generator(5).unwrap()).unwrap(),
        3124
    );

    let m = FieldContext::find_primitive_modulus(2, 6).unwrap();
    let f64_ = FieldContext::new(2, 6, &m).unwrap();
    assert_eq!(f64_.subfield_generator(1).unwrap(), f64_.one());
}

#[test]
fn characteristic_limits() {
    let m = FieldContext::find_primitive_modulus(251, 1).unwrap();
    let f = Arc::new(FieldContext::new(251, 1, &m).unwrap());
    assert_eq!(f.group_order(), 250);
    assert_eq!(
        FieldContext::new(257, 1, &[1, 1]).unwrap_err(),
        Error::CharacteristicTooLarge(257)
    );
}
