//! Exhaustive fixed-point search over a coordinate box in the unipotent part
//! of a 3x3 configuration. For the explicit maps psi_{d_2(±1)} the expected
//! outcome is that only the identity survives.

use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, IndexSet};
use crate::rings::{RingElement, RingSpec};
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize)]
pub struct FixSearchReport {
    pub group: String,
    pub automorphism: String,
    pub coordinate_bound: i64,
    pub exponent_bound: i64,
    pub points_checked: usize,
    pub fixed_points: Vec<String>,
}

fn coordinate_values(
    ring: &Arc<RingSpec>,
    bound: i64,
    exp_bound: i64,
) -> Result<Vec<RingElement>> {
    match &**ring {
        RingSpec::Integers => {
            Ok((-bound..=bound).map(|k| RingElement::from_i64(ring, k)).collect())
        }
        RingSpec::SIntegers { primes } => {
            // numerators in the box, denominator exponents in [0, exp_bound]
            let mut denominators = vec![RingElement::one(ring)];
            for &p in primes {
                let mut next = Vec::new();
                for d in &denominators {
                    let mut pe = RingElement::one(ring);
                    for _ in 0..=exp_bound {
                        next.push(d.mul(&pe)?);
                        pe = pe.mul(&RingElement::from_i64(ring, p as i64))?;
                    }
                }
                denominators = next;
            }
            let mut out = Vec::new();
            for k in -bound..=bound {
                let num = RingElement::from_i64(ring, k);
                for den in &denominators {
                    let v = RingElement::divide(&num, den)?;
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedSpec(
            "box search runs over Z-like rings".into(),
        )),
    }
}

/// Enumerate all unipotent (x, y, z) with coordinates drawn from the box and
/// return those fixed by the automorphism, exactly.
pub fn fix_trivial_box_search(
    phi: &Automorphism,
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    bound: i64,
    exp_bound: i64,
) -> Result<FixSearchReport> {
    if ix.n() != 3 {
        return Err(Error::PreconditionUnmet("box search runs in the 3x3 configuration".into()));
    }
    if bound < 1 {
        return Err(Error::PreconditionUnmet("the box bound must be at least 1".into()));
    }
    let values = coordinate_values(ring, bound, exp_bound)?;
    let one = RingElement::one(ring);
    let mut fixed = Vec::new();
    let mut checked = 0usize;
    for x in &values {
        for z in &values {
            for y in &values {
                let g = GroupElement::from_parts(
                    ix,
                    ring,
                    vec![x.clone(), z.clone(), y.clone()],
                    vec![one.clone(), one.clone(), one.clone()],
                )?;
                checked += 1;
                let image = phi.apply(&g)?;
                if image == g {
                    fixed.push(g.to_string());
                }
            }
        }
    }
    Ok(FixSearchReport {
        group: format!("U_3({ring}) inside S_3^{}" , ix),
        automorphism: phi.to_string(),
        coordinate_bound: bound,
        exponent_bound: exp_bound,
        points_checked: checked,
        fixed_points: fixed,
    })
}
