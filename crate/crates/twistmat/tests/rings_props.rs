//! Ring-layer properties: exact axioms on random triples, canonical-form
//! uniqueness, unit factorization round-trips, reciprocal involution,
//! automorphism and reduction homomorphism checks, and the bounded
//! automorphism search with its control cases.

use proptest::prelude::*;
use std::sync::Arc;
use twistmat::rings::{
    apply_ring_aut, monomial_matrix, normalize, reduce_mod, ring_aut_descriptors, ring_aut_search,
    FqPoly, FqSpec, Modulus, RingAutomorphismDescriptor, RingElement, RingSpec,
};
use twistmat::sampling::{self, rng_from_seed};

fn all_specs() -> Vec<Arc<RingSpec>> {
    let f2 = FqSpec::prime_field(2);
    let f3 = FqSpec::prime_field(3);
    let f4 = FqSpec::extension(2, vec![1, 1, 1]);
    let f = FqPoly::from_scalars(&f2, &[1, 1, 0, 1]);
    vec![
        RingSpec::integers(),
        RingSpec::s_integers(&[2, 3]),
        RingSpec::quadratic(2),
        RingSpec::quadratic(-1),
        RingSpec::finite_field(f3.clone()),
        RingSpec::finite_field(f4),
        RingSpec::poly_ring(f2.clone()),
        RingSpec::poly_ring(f3),
        RingSpec::laurent(f2.clone()),
        RingSpec::localized_poly(f2, true, vec![f]),
    ]
}

#[test]
fn ring_axioms_on_random_triples() {
    for spec in all_specs() {
        let mut rng = rng_from_seed(0xa71_0001);
        for _ in 0..1000 {
            let a = sampling::random_element(&spec, &mut rng);
            let b = sampling::random_element(&spec, &mut rng);
            let c = sampling::random_element(&spec, &mut rng);
            // associativity and commutativity of both operations
            assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            // distributivity
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            // units of the additive/multiplicative monoids
            assert_eq!(a.add(&RingElement::zero(&spec)).unwrap(), a);
            assert_eq!(a.mul(&RingElement::one(&spec)).unwrap(), a);
            assert!(a.add(&a.neg()).unwrap().is_zero());
            // integral domain: no zero divisors in sight
            if !a.is_zero() && !b.is_zero() {
                assert!(!a.mul(&b).unwrap().is_zero(), "zero divisor at {a} * {b}");
            }
        }
    }
}

#[test]
fn normalize_is_idempotent_and_canonical() {
    // normalizing a fraction twice changes nothing, and equal values have
    // identical encodings
    for spec in all_specs() {
        let mut rng = rng_from_seed(0xa71_0002);
        for _ in 0..300 {
            let a = sampling::random_element(&spec, &mut rng);
            let u = sampling::random_unit(&spec, &mut rng);
            let au = a.mul(&u).unwrap();
            let back = normalize(&au, &u).unwrap();
            assert_eq!(back, a);
            let again = normalize(&back, &RingElement::one(&spec)).unwrap();
            assert_eq!(again, back);
        }
    }
}

proptest! {
    #[test]
    fn sint_fraction_normalization_is_canonical(num in -10_000i64..10_000, e2 in 0u32..6, e3 in 0u32..6) {
        let spec = RingSpec::s_integers(&[2, 3]);
        let den = RingElement::from_i64(&spec, 2).pow(e2).unwrap()
            .mul(&RingElement::from_i64(&spec, 3).pow(e3).unwrap()).unwrap();
        let a = normalize(&RingElement::from_i64(&spec, num), &den).unwrap();
        // multiplying back and renormalizing is the identity
        let round = normalize(&a.mul(&den).unwrap(), &den).unwrap();
        prop_assert_eq!(round, a);
    }
}

#[test]
fn unit_factorization_roundtrip() {
    for spec in all_specs() {
        let mut rng = rng_from_seed(0xa71_0003);
        for _ in 0..300 {
            let u = sampling::random_unit(&spec, &mut rng);
            let fact = u.is_unit().expect("sampled units are units");
            assert_eq!(fact.product(), u, "factorization does not multiply back to {u}");
        }
    }
}

#[test]
fn reciprocal_examples_and_involution() {
    let base = FqSpec::prime_field(2);
    // f = 1+t+t^3 reverses to 1+t^2+t^3 and is not self-reciprocal
    let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
    let fr = f.reciprocal(&base);
    assert_eq!(fr, FqPoly::from_scalars(&base, &[1, 0, 1, 1]));
    assert!(!f.is_self_reciprocal(&base));
    assert!(f.is_irreducible(&base));
    // 1+t+t^2 is self-reciprocal; a constant is trivially so
    assert!(FqPoly::from_scalars(&base, &[1, 1, 1]).is_self_reciprocal(&base));
    assert!(FqPoly::from_scalars(&base, &[1]).is_self_reciprocal(&base));
    // t reverses to 1
    assert_eq!(FqPoly::t(&base).reciprocal(&base), FqPoly::one(&base));
    // t^2+1 = (t+1)^2 over F_2 is reducible
    assert!(!FqPoly::from_scalars(&base, &[1, 0, 1]).is_irreducible(&base));

    // involution whenever f(0) != 0
    let f3 = FqSpec::prime_field(3);
    let mut rng = rng_from_seed(0xa71_0004);
    use rand::Rng;
    for _ in 0..500 {
        let deg = rng.gen_range(1..7);
        let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..3)).collect();
        coeffs[0] = rng.gen_range(1..3); // nonzero constant term
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let p = FqPoly::from_scalars(&f3, &coeffs);
        assert_eq!(p.reciprocal(&f3).reciprocal(&f3), p);
    }
}

#[test]
fn ring_automorphisms_distribute() {
    let cases: Vec<(Arc<RingSpec>, RingAutomorphismDescriptor)> = vec![
        (RingSpec::quadratic(2), RingAutomorphismDescriptor::QuadraticConjugation),
        (
            RingSpec::finite_field(FqSpec::extension(2, vec![1, 1, 1])),
            RingAutomorphismDescriptor::Frobenius(1),
        ),
        (
            {
                let base = FqSpec::prime_field(2);
                let f = FqPoly::from_scalars(&base, &[1, 1, 1]);
                RingSpec::localized_poly(base, true, vec![f])
            },
            // t -> t^-1 on the self-reciprocal localization
            RingAutomorphismDescriptor::MonomialCandidate { a: -1, b: 0, c: -2, d: 1 },
        ),
    ];
    for (spec, desc) in cases {
        let mut rng = rng_from_seed(0xa71_0005);
        for _ in 0..300 {
            let a = sampling::random_element(&spec, &mut rng);
            let b = sampling::random_element(&spec, &mut rng);
            let fa = apply_ring_aut(&desc, &a).unwrap();
            let fb = apply_ring_aut(&desc, &b).unwrap();
            assert_eq!(apply_ring_aut(&desc, &a.add(&b).unwrap()).unwrap(), fa.add(&fb).unwrap());
            assert_eq!(apply_ring_aut(&desc, &a.mul(&b).unwrap()).unwrap(), fa.mul(&fb).unwrap());
        }
        // preserves 0 and 1
        assert!(apply_ring_aut(&desc, &RingElement::zero(&spec)).unwrap().is_zero());
        assert!(apply_ring_aut(&desc, &RingElement::one(&spec)).unwrap().is_one());
    }
}

#[test]
fn reduction_is_a_homomorphism() {
    let cases: Vec<(Arc<RingSpec>, Modulus)> = vec![
        (RingSpec::integers(), Modulus::Prime(7)),
        (RingSpec::s_integers(&[2, 3]), Modulus::Prime(5)),
        (RingSpec::quadratic(2), Modulus::Prime(7)),
        (
            {
                let base = FqSpec::prime_field(2);
                let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
                RingSpec::localized_poly(base, true, vec![f])
            },
            Modulus::Poly(FqPoly::from_scalars(&FqSpec::prime_field(2), &[1, 1, 1])),
        ),
        (
            RingSpec::poly_ring(FqSpec::prime_field(3)),
            Modulus::Poly(FqPoly::from_scalars(&FqSpec::prime_field(3), &[1, 0, 1])),
        ),
    ];
    for (spec, modulus) in cases {
        let mut rng = rng_from_seed(0xa71_0006);
        for _ in 0..300 {
            let a = sampling::random_element(&spec, &mut rng);
            let b = sampling::random_element(&spec, &mut rng);
            let ra = reduce_mod(&a, &modulus).unwrap();
            let rb = reduce_mod(&b, &modulus).unwrap();
            assert_eq!(reduce_mod(&a.add(&b).unwrap(), &modulus).unwrap(), ra.add(&rb).unwrap());
            assert_eq!(reduce_mod(&a.mul(&b).unwrap(), &modulus).unwrap(), ra.mul(&rb).unwrap());
        }
        // units map to units
        for _ in 0..50 {
            let u = sampling::random_unit(&spec, &mut rng);
            assert!(reduce_mod(&u, &modulus).unwrap().is_unit().is_some());
        }
    }
}

fn rf_spec(f_coeffs: &[u64]) -> Arc<RingSpec> {
    let base = FqSpec::prime_field(2);
    let f = FqPoly::from_scalars(&base, f_coeffs);
    RingSpec::localized_poly(base, true, vec![f])
}

#[test]
fn aut_search_finds_only_identity_for_non_self_reciprocal_f() {
    let spec = rf_spec(&[1, 1, 0, 1]); // t^3+t+1
    let survivors = ring_aut_search(&spec, 5).unwrap();
    assert_eq!(survivors.len(), 1);
    assert!(survivors[0].is_identity());
}

#[test]
fn aut_search_control_case_self_reciprocal() {
    let spec = rf_spec(&[1, 1, 1]); // t^2+t+1, self-reciprocal
    let survivors = ring_aut_search(&spec, 5).unwrap();
    assert!(survivors.len() >= 2, "expected the inversion symmetry to appear");
    assert!(survivors
        .contains(&RingAutomorphismDescriptor::MonomialCandidate { a: -1, b: 0, c: -2, d: 1 }));

    // closure under composition and inverse within the candidate box:
    // composition acts by integer matrix product on the exponent data
    let mats: Vec<[i64; 4]> = survivors.iter().filter_map(monomial_matrix).collect();
    assert_eq!(mats.len(), survivors.len());
    let inside = |m: &[i64; 4]| m.iter().all(|x| x.abs() <= 5);
    for x in &mats {
        let inv = [
            (x[0] * x[3] - x[1] * x[2]) * x[3],
            -(x[0] * x[3] - x[1] * x[2]) * x[1],
            -(x[0] * x[3] - x[1] * x[2]) * x[2],
            (x[0] * x[3] - x[1] * x[2]) * x[0],
        ];
        if inside(&inv) {
            assert!(mats.contains(&inv), "inverse of {x:?} missing");
        }
        for y in &mats {
            // t -> t^a f^b composed: exponent matrices multiply
            let prod = [
                x[0] * y[0] + x[1] * y[2],
                x[0] * y[1] + x[1] * y[3],
                x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3],
            ];
            if inside(&prod) {
                assert!(mats.contains(&prod), "composite of {x:?}, {y:?} missing");
            }
        }
    }
}

#[test]
fn aut_search_bound_zero_keeps_forced_identity() {
    let spec = rf_spec(&[1, 1, 0, 1]);
    let survivors = ring_aut_search(&spec, 0).unwrap();
    assert_eq!(survivors.len(), 1);
    assert!(survivors[0].is_identity());
}

#[test]
fn aut_search_rejects_unsupported_specs() {
    let base = FqSpec::prime_field(2);
    let f1 = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
    let f2 = FqPoly::from_scalars(&base, &[1, 1, 1]);
    let spec = RingSpec::localized_poly(base, true, vec![f1, f2]);
    assert!(ring_aut_search(&spec, 3).is_err());
}

#[test]
fn descriptor_lists_per_spec() {
    // quadratic rings: identity and conjugation
    let descs = ring_aut_descriptors(&RingSpec::quadratic(2), 5).unwrap();
    assert_eq!(descs.len(), 2);
    // F_4: both Frobenius powers
    let f4 = RingSpec::finite_field(FqSpec::extension(2, vec![1, 1, 1]));
    let descs = ring_aut_descriptors(&f4, 5).unwrap();
    assert_eq!(descs.len(), 2);
    // plain polynomial ring: identity only
    let descs = ring_aut_descriptors(&RingSpec::poly_ring(FqSpec::prime_field(2)), 5).unwrap();
    assert_eq!(descs.len(), 1);
}
