//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers (run with `--nocapture` to see them). Tolerances are
//! zero everywhere; all arithmetic is exact.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};
use twistmat::automorphisms::{
    abels3_phi, abels3_phi_v, automorphism_table, check_superdiagonal_form, verify_homomorphism,
    Automorphism,
};
use twistmat::groups::{
    diagonal_gen, elementary, enumerate_finite_group, iterated_commutator, IndexSet, QuotientSpec,
};
use twistmat::rings::{
    ring_aut_search, FqPoly, FqSpec, RingAutomorphismDescriptor, RingElement, RingSpec,
};
use twistmat::sampling::{self, rng_from_seed, DEFAULT_SEED};
use twistmat::suites::{standard_rings, verify_relations};
use twistmat::twisted::{
    compose_inner, conjugacy_class_count, enumerate_automorphisms_small, fix_family_certify,
    fix_trivial_box_search, project_enumerated, reidemeister_classes,
    reidemeister_lower_bound_via_quotient, Cyclic, FiniteGroup,
};

const LIMIT: u128 = 1 << 22;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistmat"))
}

#[test]
fn criterion_01_relation_suite() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for (name, ring) in standard_rings() {
        for n in 2..=6 {
            let ix = IndexSet::new(n, &(1..=n).collect::<Vec<_>>()).unwrap();
            let outcomes = verify_relations(&ring, &ix, 200, DEFAULT_SEED).unwrap();
            for o in &outcomes {
                assert_eq!(o.failures, 0, "{} fails over {} at n={}", o.relation, name, n);
                checked += o.samples;
            }
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(10), "relation suite took {elapsed:?}");
    println!("criterion 01 PASS: {checked} relation samples, 7 rings, n=2..6, in {elapsed:?}");
}

#[test]
fn criterion_02_flip_involution_and_anchors() {
    let ring = RingSpec::integers();
    let flip = Automorphism::flip();
    for n in [4usize, 5, 6] {
        let ix = IndexSet::new(n, &[]).unwrap();
        let mut rng = rng_from_seed(DEFAULT_SEED + n as u64);
        for _ in 0..500 {
            let g = sampling::random_group_element(&ix, &ring, &mut rng);
            assert_eq!(flip.apply(&flip.apply(&g).unwrap()).unwrap(), g);
        }
    }
    // anchors in U_4: e_{1,2}(r) -> e_{3,4}(r) and e_{1,3}(r) -> e_{2,4}(-r)
    let ix = IndexSet::new(4, &[]).unwrap();
    let r = RingElement::from_i64(&ring, 17);
    assert_eq!(
        flip.apply(&elementary(&ix, &ring, 1, 2, r.clone()).unwrap()).unwrap(),
        elementary(&ix, &ring, 3, 4, r.clone()).unwrap()
    );
    assert_eq!(
        flip.apply(&elementary(&ix, &ring, 1, 3, r.clone()).unwrap()).unwrap(),
        elementary(&ix, &ring, 2, 4, r.neg()).unwrap()
    );
    println!("criterion 02 PASS: flip is an involution on 500 samples for n=4,5,6; both anchors exact");
}

#[test]
fn criterion_03_iterated_commutator_closed_form() {
    let cases: Vec<(Arc<RingSpec>, RingElement)> = {
        let z6 = RingSpec::s_integers(&[2, 3]);
        let u1 = RingElement::from_i64(&z6, 3);
        let base = FqSpec::prime_field(2);
        let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
        let rf = RingSpec::localized_poly(base, true, vec![f]);
        let u2 = RingElement::var_t(&rf).unwrap();
        vec![(z6, u1), (rf, u2)]
    };
    for (ring, u) in cases {
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let d = diagonal_gen(&ix, &ring, 2, u.clone()).unwrap();
        let x = elementary(&ix, &ring, 2, 4, RingElement::one(&ring)).unwrap();
        let base_val = RingElement::one(&ring).sub(&u).unwrap();
        for k in 1..=12u32 {
            let got = iterated_commutator(&x, &d, k).unwrap();
            let expect = elementary(&ix, &ring, 2, 4, base_val.pow(k).unwrap()).unwrap();
            assert_eq!(got, expect, "closed form fails at k={k} over {ring}");
        }
    }
    println!("criterion 03 PASS: iterated commutator closed form exact for k=1..12 over Z[1/6] (u=3) and R_f (u=t)");
}

#[test]
fn criterion_04_fingen_table_matches_gold() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "fingen-table",
            "--ring",
            "Z",
            "--ring",
            "F2[t]",
            "--ring",
            "F2[t,t^-1]",
            "--ring",
            "Rf",
            "--n",
            "4",
            "--out-dir",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let got = std::fs::read_to_string(dir.path().join("fingen_table.csv")).unwrap();
    let gold = include_str!("data/fingen_gold.csv");
    assert_eq!(got, gold, "fingen table deviates from the gold file");
    // the pinned rows
    assert!(got.lines().filter(|l| l.starts_with("Z,")).all(|l| l.contains(",yes,(i)")));
    assert!(got.contains(r#""F_2[t,t^-1,(t^3+t+1)^-1]",4,"{2,3}",yes,(ii)"#));
    assert!(got.contains(r#""F_2[t,t^-1,(t^3+t+1)^-1]",4,{2},no,additive+ng"#));
    println!("criterion 04 PASS: 64-row finite-generation table byte-identical to the gold file");
}

#[test]
fn criterion_05_reciprocal_and_irreducibility() {
    let base = FqSpec::prime_field(2);
    let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]); // 1 + t + t^3
    assert!(f.is_irreducible(&base));
    let fr = f.reciprocal(&base);
    assert_eq!(fr, FqPoly::from_scalars(&base, &[1, 0, 1, 1])); // 1 + t^2 + t^3
    assert_ne!(fr, f);
    assert!(!f.is_self_reciprocal(&base));
    assert!(FqPoly::from_scalars(&base, &[1, 1, 1]).is_self_reciprocal(&base));
    println!("criterion 05 PASS: 1+t+t^3 irreducible with reciprocal 1+t^2+t^3 != itself; 1+t+t^2 self-reciprocal");
}

#[test]
fn criterion_06_ring_aut_search() {
    let t0 = Instant::now();
    let base = FqSpec::prime_field(2);
    let spec = RingSpec::localized_poly(
        base.clone(),
        true,
        vec![FqPoly::from_scalars(&base, &[1, 1, 0, 1])],
    );
    let survivors = ring_aut_search(&spec, 5).unwrap();
    assert_eq!(survivors.len(), 1, "expected Aut = {{id}} for f = t^3+t+1");
    assert!(survivors[0].is_identity());

    let control = RingSpec::localized_poly(
        base.clone(),
        true,
        vec![FqPoly::from_scalars(&base, &[1, 1, 1])],
    );
    let survivors = ring_aut_search(&control, 5).unwrap();
    assert!(survivors.len() >= 2);
    assert!(survivors
        .contains(&RingAutomorphismDescriptor::MonomialCandidate { a: -1, b: 0, c: -2, d: 1 }));
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(30), "search took {elapsed:?}");
    println!(
        "criterion 06 PASS: exactly one survivor for t^3+t+1; {} survivors incl. t -> t^-1 for t^2+t+1; {elapsed:?}",
        survivors.len()
    );
}

#[test]
fn criterion_07_fixed_family_certificates() {
    let mut rng = rng_from_seed(DEFAULT_SEED);
    // n = 4, I = {2,3}, Z, alpha = id
    let ring = RingSpec::integers();
    let ix = IndexSet::new(4, &[2, 3]).unwrap();
    for eps in [0u8, 1] {
        let d_c: Vec<RingElement> = (1..=4)
            .map(|i| {
                if ix.contains(i) {
                    RingElement::one(&ring)
                } else {
                    sampling::random_unit(&ring, &mut rng)
                }
            })
            .collect();
        let cert = fix_family_certify(
            &ix,
            &ring,
            eps,
            &RingAutomorphismDescriptor::Identity,
            &d_c,
            100,
        )
        .unwrap();
        assert_eq!(cert.verified, 100);
        assert!(cert.finitely_generated.finitely_generated);
        assert_eq!(cert.finitely_generated.reason, "(i)");
    }
    // n = 5, I = {1..4}, Z[sqrt2], alpha = conjugation
    let ring = RingSpec::quadratic(2);
    let ix = IndexSet::new(5, &[1, 2, 3, 4]).unwrap();
    for eps in [0u8, 1] {
        let d_c: Vec<RingElement> = (1..=5)
            .map(|i| {
                if ix.contains(i) {
                    RingElement::one(&ring)
                } else {
                    sampling::random_unit(&ring, &mut rng)
                }
            })
            .collect();
        let cert = fix_family_certify(
            &ix,
            &ring,
            eps,
            &RingAutomorphismDescriptor::QuadraticConjugation,
            &d_c,
            100,
        )
        .unwrap();
        assert_eq!(cert.verified, 100);
        assert!(cert.finitely_generated.finitely_generated);
    }
    println!("criterion 07 PASS: 100/100 parameters fixed in both configurations, for both flip exponents, with finite-generation verdicts recorded");
}

#[test]
fn criterion_08_sharpness_maps() {
    let t0 = Instant::now();
    // homomorphism verification
    let ix3 = IndexSet::new(3, &[2]).unwrap();
    let z = RingSpec::integers();
    let report = verify_homomorphism(&abels3_phi(), &ix3, &z, 500, DEFAULT_SEED);
    assert!(report.ok, "{:?}", report.counterexample);
    let z6 = RingSpec::s_integers(&[2, 3]);
    let phi_v = abels3_phi_v(RingElement::from_i64(&z6, 2)).unwrap();
    let report = verify_homomorphism(&phi_v, &ix3, &z6, 500, DEFAULT_SEED);
    assert!(report.ok, "{:?}", report.counterexample);

    // box searches at bound 20 return exactly the identity
    let psi1 = abels3_phi();
    let search = fix_trivial_box_search(&psi1, &ix3, &z, 20, 0).unwrap();
    assert_eq!(search.fixed_points, vec!["1".to_string()]);
    assert_eq!(search.points_checked, 41 * 41 * 41);
    let d = diagonal_gen(&ix3, &z, 2, RingElement::from_i64(&z, -1)).unwrap();
    let psi2 = Automorphism::compose(&Automorphism::inner(d), &abels3_phi());
    let search = fix_trivial_box_search(&psi2, &ix3, &z, 20, 0).unwrap();
    assert_eq!(search.fixed_points, vec!["1".to_string()]);
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "sharpness checks took {elapsed:?}");
    println!("criterion 08 PASS: both 3x3 maps verified on 500 pairs; box searches at bound 20 find only the identity; {elapsed:?}");
}

#[test]
fn criterion_09_finite_reidemeister_oracles() {
    // R(id) on S_4^{2,3}(F_2) equals the directly computed conjugacy count
    let ix = IndexSet::new(4, &[2, 3]).unwrap();
    let f2 = FqSpec::prime_field(2);
    let g64 = enumerate_finite_group(&ix, &f2, &QuotientSpec::None, LIMIT).unwrap();
    assert_eq!(g64.order(), 64);
    let id_table: Vec<usize> = (0..g64.order()).collect();
    let r_id = reidemeister_classes(&g64, &id_table, "id").unwrap().class_count;
    assert_eq!(r_id, conjugacy_class_count(&g64));

    // negation on cyclic groups
    let z4 = Cyclic { m: 4 };
    assert_eq!(reidemeister_classes(&z4, &z4.negation_table(), "neg").unwrap().class_count, 2);
    let z5 = Cyclic { m: 5 };
    assert_eq!(reidemeister_classes(&z5, &z5.negation_table(), "neg").unwrap().class_count, 1);

    // inner-composition invariance on every finite example above
    use rand::Rng;
    let mut rng = rng_from_seed(DEFAULT_SEED);
    let flip_table = automorphism_table(&g64, &Automorphism::flip()).unwrap();
    let examples: Vec<(&dyn FiniteGroup, Vec<usize>)> = vec![
        (&z4, z4.negation_table()),
        (&z5, z5.negation_table()),
        (&g64, id_table.clone()),
        (&g64, flip_table),
    ];
    for (group, table) in &examples {
        let base = reidemeister_classes(*group, table, "base").unwrap().class_count;
        for _ in 0..20 {
            let h = rng.gen_range(0..group.order());
            let composed = compose_inner(*group, h, table);
            assert_eq!(
                reidemeister_classes(*group, &composed, "inner").unwrap().class_count,
                base
            );
        }
    }

    // quotient monotonicity on five (G, N, phi) triples
    let f3 = FqSpec::prime_field(3);
    let g108base = enumerate_finite_group(&ix, &f3, &QuotientSpec::None, LIMIT).unwrap();
    let un4 = IndexSet::new(4, &[]).unwrap();
    let u4f2 = enumerate_finite_group(&un4, &f2, &QuotientSpec::None, LIMIT).unwrap();
    let ring3 = RingSpec::finite_field(f3.clone());
    let dconj = Automorphism::diag_conj(vec![
        RingElement::from_i64(&ring3, 2),
        RingElement::one(&ring3),
        RingElement::one(&ring3),
        RingElement::from_i64(&ring3, 2),
    ]);
    let triples: Vec<(&twistmat::groups::EnumeratedGroup, QuotientSpec, Automorphism)> = vec![
        (&g64, QuotientSpec::ModCommutatorU, Automorphism::identity()),
        (&g64, QuotientSpec::ModCenterU4, Automorphism::flip()),
        (&g108base, QuotientSpec::ModCommutatorU, Automorphism::flip()),
        (&g108base, QuotientSpec::ModCommutatorU, Automorphism::compose(&Automorphism::flip(), &dconj)),
        (&u4f2, QuotientSpec::ModCommutatorU, Automorphism::flip()),
    ];
    let mut count = 0;
    for (group, qspec, phi) in triples {
        let table = automorphism_table(group, &phi).unwrap();
        let full = reidemeister_classes(group, &table, "full").unwrap().class_count;
        let (quotient, proj) = project_enumerated(group, &qspec, LIMIT).unwrap();
        let bound = reidemeister_lower_bound_via_quotient(group, &proj, &quotient, &table).unwrap();
        assert!(full >= bound, "R = {full} < quotient bound {bound}");
        count += 1;
    }
    assert_eq!(count, 5);
    println!("criterion 09 PASS: R(id) = {r_id} = conjugacy count on the 64-element group; R(neg) = 2 on Z/4 and 1 on Z/5; inner invariance at 20 samples each; monotonicity on 5 triples");
}

#[test]
fn criterion_10_superdiagonal_form_exhaustive() {
    let t0 = Instant::now();
    let ix = IndexSet::new(4, &[2, 3]).unwrap();
    let f3 = FqSpec::prime_field(3);
    let group = enumerate_finite_group(&ix, &f3, &QuotientSpec::ModCommutatorU, LIMIT).unwrap();
    assert_eq!(group.order(), 108);
    let tables = enumerate_automorphisms_small(&group, 200).unwrap();
    let mut fixes_23 = 0usize;
    for table in &tables {
        let form = check_superdiagonal_form(&group, table)
            .unwrap()
            .expect("every automorphism must act slotwise on the superdiagonal");
        if form.fixes_slot(1) {
            fixes_23 += 1;
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(600), "enumeration took {elapsed:?}");
    println!(
        "criterion 10 PASS: all {} automorphisms of the 108-element quotient have superdiagonal form in {elapsed:?}; \
         sigma fixes slot (2,3) in {}/{} (the mod-centre rigidity does not bind in the mod-commutator-only quotient: \
         {} automorphisms move the middle slot — recorded, not asserted)",
        tables.len(),
        fixes_23,
        tables.len(),
        tables.len() - fixes_23
    );
}

#[test]
fn criterion_11_report_determinism() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify-relations", "--ring", "Z[1/6]", "--n", "4", "--set-i", "2,3", "--samples", "50"],
        vec![
            "reidemeister",
            "--ring",
            r#"{"kind":"finite_field","p":3}"#,
            "--n",
            "4",
            "--set-i",
            "2,3",
            "--quotient",
            "mod_commutator_u",
            "--aut",
            "flip",
        ],
        vec!["fingen-table", "--ring", "Z", "--ring", "Rf", "--n", "4"],
        vec!["ring-aut-search", "--ring", "Rf", "--bound", "3"],
        vec!["fix-family", "--ring", "Z", "--n", "4", "--set-i", "2,3", "--epsilon", "1", "--count", "25"],
    ];
    for args in runs {
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        for dir in [&d1, &d2] {
            let status = bin().args(&args).arg("--out-dir").arg(dir.path()).status().unwrap();
            assert!(status.success(), "run failed: {args:?}");
        }
        let mut names: Vec<_> = std::fs::read_dir(d1.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        assert!(!names.is_empty());
        for name in names {
            let a = std::fs::read(d1.path().join(&name)).unwrap();
            let b = std::fs::read(d2.path().join(&name)).unwrap();
            assert_eq!(a, b, "report {name:?} differs between identical runs of {args:?}");
        }
    }
    println!("criterion 11 PASS: byte-identical reports across re-runs of five subcommands");
}
