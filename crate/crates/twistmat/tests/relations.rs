//! Group-layer verification: the full relation suite over every supported
//! ring, the dense matrix oracle for multiplication and inversion, the
//! semidirect normal form, and the iterated commutator closed form.

use std::sync::Arc;
use twistmat::groups::{
    commutator, diagonal_gen, elementary, inverse, iterated_commutator, multiply, GroupElement,
    IndexSet,
};
use twistmat::rings::{FqPoly, FqSpec, RingElement, RingSpec};
use twistmat::sampling::{self, rng_from_seed};
use twistmat::suites::{standard_rings, verify_relations};

#[test]
fn relation_suite_all_rings_all_sizes() {
    for (name, ring) in standard_rings() {
        for n in 2..=6 {
            let ix = IndexSet::new(n, &(1..=n).collect::<Vec<_>>()).unwrap();
            let outcomes = verify_relations(&ring, &ix, 60, 0x5017e).unwrap();
            for o in outcomes {
                assert_eq!(
                    o.failures, 0,
                    "relation {} fails over {} at n={}",
                    o.relation, name, n
                );
            }
        }
    }
}

#[test]
fn relation_suite_remaining_supported_rings() {
    use twistmat::rings::FqSpec;
    let extra: Vec<Arc<RingSpec>> = vec![
        RingSpec::quadratic(-1),
        RingSpec::finite_field(FqSpec::prime_field(3)),
        RingSpec::finite_field(FqSpec::extension(2, vec![1, 1, 1])),
    ];
    for ring in extra {
        for n in [2usize, 4] {
            let ix = IndexSet::new(n, &(1..=n).collect::<Vec<_>>()).unwrap();
            let outcomes = verify_relations(&ring, &ix, 60, 0x5017f).unwrap();
            for o in outcomes {
                assert_eq!(o.failures, 0, "relation {} fails over {ring} at n={n}", o.relation);
            }
        }
    }
}

// textbook n x n multiplication over the ring, used as the oracle
fn dense_mul(a: &[Vec<RingElement>], b: &[Vec<RingElement>]) -> Vec<Vec<RingElement>> {
    let n = a.len();
    let spec = a[0][0].spec().clone();
    let mut out = vec![vec![RingElement::zero(&spec); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = RingElement::zero(&spec);
            for k in 0..n {
                acc = acc.add(&a[i][k].mul(&b[k][j]).unwrap()).unwrap();
            }
            out[i][j] = acc;
        }
    }
    out
}

fn dense_identity(spec: &Arc<RingSpec>, n: usize) -> Vec<Vec<RingElement>> {
    let mut m = vec![vec![RingElement::zero(spec); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = RingElement::one(spec);
    }
    m
}

#[test]
fn dense_matrix_oracle() {
    for (name, ring) in standard_rings() {
        for n in 2..=5 {
            let ix = IndexSet::new(n, &(1..=n).collect::<Vec<_>>()).unwrap();
            let mut rng = rng_from_seed(0xdecaf + n as u64);
            for _ in 0..500 {
                let a = sampling::random_group_element(&ix, &ring, &mut rng);
                let b = sampling::random_group_element(&ix, &ring, &mut rng);
                let prod = multiply(&a, &b).unwrap();
                assert_eq!(
                    prod.dense(),
                    dense_mul(&a.dense(), &b.dense()),
                    "product disagrees with the dense oracle over {name}, n={n}"
                );
                let inv = inverse(&a).unwrap();
                assert_eq!(
                    dense_mul(&a.dense(), &inv.dense()),
                    dense_identity(&ring, n),
                    "inverse disagrees with the dense oracle over {name}, n={n}"
                );
            }
        }
    }
}

#[test]
fn inverse_cancels_on_many_samples() {
    let ring = RingSpec::s_integers(&[2, 3]);
    let ix = IndexSet::new(4, &[2, 3]).unwrap();
    let mut rng = rng_from_seed(500);
    for _ in 0..500 {
        let a = sampling::random_group_element(&ix, &ring, &mut rng);
        assert!(multiply(&a, &inverse(&a).unwrap()).unwrap().is_identity());
    }
}

#[test]
fn semidirect_normal_form() {
    // every element factors uniquely as unipotent * diagonal, and
    // re-multiplying the parts reproduces it
    for (_, ring) in standard_rings() {
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let mut rng = rng_from_seed(0xfac);
        for _ in 0..100 {
            let g = sampling::random_group_element(&ix, &ring, &mut rng);
            let u = g.unipotent_part();
            let d = g.diagonal_part();
            assert_eq!(multiply(&u, &d).unwrap(), g);
        }
    }
}

#[test]
fn iterated_commutator_closed_form() {
    // [e_{i,j}(1), d]_k = e_{i,j}((1-u_i)^k) with i in I, j outside I
    let cases: Vec<(Arc<RingSpec>, RingElement)> = {
        let z6 = RingSpec::s_integers(&[2, 3]);
        let u_z6 = RingElement::from_i64(&z6, 3);
        let base = FqSpec::prime_field(2);
        let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
        let rf = RingSpec::localized_poly(base, true, vec![f]);
        let u_rf = RingElement::var_t(&rf).unwrap();
        vec![(z6, u_z6), (rf, u_rf)]
    };
    for (ring, u) in cases {
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let d = diagonal_gen(&ix, &ring, 2, u.clone()).unwrap();
        let x = elementary(&ix, &ring, 2, 4, RingElement::one(&ring)).unwrap();
        let one_minus_u = RingElement::one(&ring).sub(&u).unwrap();
        for k in 1..=12u32 {
            let got = iterated_commutator(&x, &d, k).unwrap();
            let expect = elementary(&ix, &ring, 2, 4, one_minus_u.pow(k).unwrap()).unwrap();
            assert_eq!(got, expect, "closed form fails at k={k} over {ring}");
        }
    }
}

#[test]
fn commutator_definition_agrees() {
    let ring = RingSpec::quadratic(2);
    let ix = IndexSet::new(4, &[1, 2, 3, 4]).unwrap();
    let mut rng = rng_from_seed(321);
    for _ in 0..100 {
        let a = sampling::random_group_element(&ix, &ring, &mut rng);
        let b = sampling::random_group_element(&ix, &ring, &mut rng);
        let direct = multiply(
            &multiply(&multiply(&a, &b).unwrap(), &inverse(&a).unwrap()).unwrap(),
            &inverse(&b).unwrap(),
        )
        .unwrap();
        assert_eq!(commutator(&a, &b).unwrap(), direct);
    }
}

#[test]
fn abelianized_projection_image_is_abelian() {
    use twistmat::groups::{project, qmultiply, QuotientSpec};
    for (_, ring) in standard_rings() {
        let ix = IndexSet::new(5, &[2, 3, 4]).unwrap();
        let mut rng = rng_from_seed(0xab);
        for _ in 0..60 {
            let a = sampling::random_group_element(&ix, &ring, &mut rng);
            let b = sampling::random_group_element(&ix, &ring, &mut rng);
            let pa = project(&a.unipotent_part(), &QuotientSpec::ModCommutatorU).unwrap();
            let pb = project(&b.unipotent_part(), &QuotientSpec::ModCommutatorU).unwrap();
            assert_eq!(qmultiply(&pa, &pb).unwrap(), qmultiply(&pb, &pa).unwrap());
        }
    }
}

#[test]
fn identity_is_multiplicative_unit() {
    let ring = RingSpec::integers();
    let ix = IndexSet::new(3, &[2]).unwrap();
    let e = GroupElement::identity(&ix, &ring);
    let mut rng = rng_from_seed(1);
    for _ in 0..50 {
        let g = sampling::random_group_element(&ix, &ring, &mut rng);
        assert_eq!(multiply(&g, &e).unwrap(), g);
        assert_eq!(multiply(&e, &g).unwrap(), g);
    }
}
