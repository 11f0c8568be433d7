//! The generator-relation property suite shared by the CLI and the
//! acceptance tests: every defining identity among the e_{i,j}(r) and
//! d_i(u) is sampled at random arguments and checked exactly.

use crate::error::Result;
use crate::groups::{commutator, diagonal_gen, elementary, inverse, multiply, IndexSet};
use crate::rings::{RingElement, RingSpec};
use crate::sampling;
use rand::Rng;
use serde::Serialize;
use std::sync::Arc;

pub const RELATION_IDENTITIES: [&str; 8] = [
    "d_i(u) d_i(v) = d_i(uv)",
    "d_i(u) d_j(v) = d_j(v) d_i(u)",
    "e_ij(r) e_ij(s) = e_ij(r+s)",
    "[e_ij(r), e_kl(s)]^-1 = [e_ij(r), e_kl(s)^-1]",
    "[e_ij(r), e_jl(s)] = e_il(rs)",
    "[e_ij(r), e_kl(s)] = 1 when i != l and k != j",
    "d_i(u) e_kl(r) d_i(u)^-1 = e_kl(u r) / e_kl(u^-1 r) / e_kl(r)",
    "d e_ij(r) d^-1 = e_ij(u_i u_j^-1 r)",
];

#[derive(Clone, Debug, Serialize)]
pub struct RelationOutcome {
    pub relation: String,
    pub samples: usize,
    pub failures: usize,
}

fn random_position(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(1..n);
    let j = rng.gen_range(i + 1..=n);
    (i, j)
}

/// Run all eight relation checks at `samples` random instances each.
/// Relations mentioning d_i draw i from I; chain relations need n >= 3 and
/// are reported with zero samples for n = 2.
pub fn verify_relations(
    ring: &Arc<RingSpec>,
    ix: &IndexSet,
    samples: usize,
    seed: u64,
) -> Result<Vec<RelationOutcome>> {
    let mut rng = sampling::rng_from_seed(seed);
    let n = ix.n();
    let mut outcomes = Vec::new();
    let members = ix.members().to_vec();
    let pick_member = |rng: &mut rand_chacha::ChaCha8Rng| -> Option<usize> {
        if members.is_empty() {
            None
        } else {
            Some(members[rng.gen_range(0..members.len())])
        }
    };

    // d_i(u) d_i(v) = d_i(uv)
    let mut failures = 0;
    let mut ran = 0;
    for _ in 0..samples {
        let Some(i) = pick_member(&mut rng) else { break };
        let u = sampling::random_unit(ring, &mut rng);
        let v = sampling::random_unit(ring, &mut rng);
        let lhs = multiply(
            &diagonal_gen(ix, ring, i, u.clone())?,
            &diagonal_gen(ix, ring, i, v.clone())?,
        )?;
        let rhs = diagonal_gen(ix, ring, i, u.mul(&v)?)?;
        ran += 1;
        if lhs != rhs {
            failures += 1;
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[0].into(),
        samples: ran,
        failures,
    });

    // d_i(u) d_j(v) = d_j(v) d_i(u)
    let mut failures = 0;
    let mut ran = 0;
    for _ in 0..samples {
        let Some(i) = pick_member(&mut rng) else { break };
        let Some(j) = pick_member(&mut rng) else { break };
        let u = sampling::random_unit(ring, &mut rng);
        let v = sampling::random_unit(ring, &mut rng);
        let a = diagonal_gen(ix, ring, i, u)?;
        let b = diagonal_gen(ix, ring, j, v)?;
        ran += 1;
        if multiply(&a, &b)? != multiply(&b, &a)? {
            failures += 1;
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[1].into(),
        samples: ran,
        failures,
    });

    // e_ij(r) e_ij(s) = e_ij(r+s)
    let mut failures = 0;
    for _ in 0..samples {
        let (i, j) = random_position(&mut rng, n);
        let r = sampling::random_element(ring, &mut rng);
        let s = sampling::random_element(ring, &mut rng);
        let lhs = multiply(
            &elementary(ix, ring, i, j, r.clone())?,
            &elementary(ix, ring, i, j, s.clone())?,
        )?;
        if lhs != elementary(ix, ring, i, j, r.add(&s)?)? {
            failures += 1;
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[2].into(),
        samples,
        failures,
    });

    // [x, y]^-1 = [x, y^-1] on elementary pairs
    let mut failures = 0;
    for _ in 0..samples {
        let (i, j) = random_position(&mut rng, n);
        let (k, l) = random_position(&mut rng, n);
        let r = sampling::random_element(ring, &mut rng);
        let s = sampling::random_element(ring, &mut rng);
        let x = elementary(ix, ring, i, j, r)?;
        let y = elementary(ix, ring, k, l, s)?;
        if inverse(&commutator(&x, &y)?)? != commutator(&x, &inverse(&y)?)? {
            failures += 1;
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[3].into(),
        samples,
        failures,
    });

    // [e_ij(r), e_jl(s)] = e_il(rs)
    let mut failures = 0;
    let mut ran = 0;
    if n >= 3 {
        for _ in 0..samples {
            let i = rng.gen_range(1..n - 1);
            let j = rng.gen_range(i + 1..n);
            let l = rng.gen_range(j + 1..=n);
            let r = sampling::random_element(ring, &mut rng);
            let s = sampling::random_element(ring, &mut rng);
            let lhs = commutator(
                &elementary(ix, ring, i, j, r.clone())?,
                &elementary(ix, ring, j, l, s.clone())?,
            )?;
            ran += 1;
            if lhs != elementary(ix, ring, i, l, r.mul(&s)?)? {
                failures += 1;
            }
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[4].into(),
        samples: ran,
        failures,
    });

    // [e_ij(r), e_kl(s)] = 1 when i != l and k != j
    let mut failures = 0;
    let mut ran = 0;
    for _ in 0..samples * 4 {
        if ran == samples {
            break;
        }
        let (i, j) = random_position(&mut rng, n);
        let (k, l) = random_position(&mut rng, n);
        if i == l || k == j {
            continue;
        }
        let r = sampling::random_element(ring, &mut rng);
        let s = sampling::random_element(ring, &mut rng);
        let c = commutator(
            &elementary(ix, ring, i, j, r)?,
            &elementary(ix, ring, k, l, s)?,
        )?;
        ran += 1;
        if !c.is_identity() {
            failures += 1;
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[5].into(),
        samples: ran,
        failures,
    });

    // d_i(u) e_kl(r) d_i(u)^-1, all three cases
    let mut failures = 0;
    let mut ran = 0;
    for _ in 0..samples {
        let Some(i) = pick_member(&mut rng) else { break };
        let (k, l) = random_position(&mut rng, n);
        let u = sampling::random_unit(ring, &mut rng);
        let r = sampling::random_element(ring, &mut rng);
        let d = diagonal_gen(ix, ring, i, u.clone())?;
        let e = elementary(ix, ring, k, l, r.clone())?;
        let lhs = multiply(&multiply(&d, &e)?, &inverse(&d)?)?;
        let expected = if i == k {
            elementary(ix, ring, k, l, u.mul(&r)?)?
        } else if i == l {
            elementary(ix, ring, k, l, u.inv_unit()?.mul(&r)?)?
        } else {
            e.clone()
        };
        ran += 1;
        if lhs != expected {
            failures += 1;
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[6].into(),
        samples: ran,
        failures,
    });

    // d e_ij(r) d^-1 = e_ij(u_i u_j^-1 r) for a full diagonal in T_I
    let mut failures = 0;
    for _ in 0..samples {
        let (i, j) = random_position(&mut rng, n);
        let r = sampling::random_element(ring, &mut rng);
        let diag: Vec<RingElement> = (1..=n)
            .map(|p| {
                if ix.contains(p) {
                    sampling::random_unit(ring, &mut rng)
                } else {
                    RingElement::one(ring)
                }
            })
            .collect();
        let d = crate::groups::diagonal(ix, ring, diag.clone())?;
        let e = elementary(ix, ring, i, j, r.clone())?;
        let lhs = multiply(&multiply(&d, &e)?, &inverse(&d)?)?;
        let coeff = diag[i - 1].mul(&diag[j - 1].inv_unit()?)?;
        if lhs != elementary(ix, ring, i, j, coeff.mul(&r)?)? {
            failures += 1;
        }
    }
    outcomes.push(RelationOutcome {
        relation: RELATION_IDENTITIES[7].into(),
        samples,
        failures,
    });

    Ok(outcomes)
}

/// The standard ring list the relation acceptance run uses.
pub fn standard_rings() -> Vec<(String, Arc<RingSpec>)> {
    use crate::rings::{FqPoly, FqSpec};
    let f2 = FqSpec::prime_field(2);
    let f3 = FqSpec::prime_field(3);
    let f = FqPoly::from_scalars(&f2, &[1, 1, 0, 1]);
    vec![
        ("Z".into(), RingSpec::integers()),
        ("Z[1/6]".into(), RingSpec::s_integers(&[2, 3])),
        ("Z[sqrt(2)]".into(), RingSpec::quadratic(2)),
        ("F_2[t]".into(), RingSpec::poly_ring(f2.clone())),
        ("F_2[t,t^-1]".into(), RingSpec::laurent(f2.clone())),
        ("R_f".into(), RingSpec::localized_poly(f2, true, vec![f])),
        ("F_3[t]".into(), RingSpec::poly_ring(f3)),
    ]
}
