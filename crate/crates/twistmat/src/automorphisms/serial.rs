//! JSON form of automorphisms: an array of atoms in composition order
//! (rightmost applied first), e.g.
//! `[{"atom":"flip"},{"atom":"ring","desc":"quad_conj"}]`.

use super::{Atom, Automorphism, SlotMap};
use crate::error::{Error, Result};
use crate::groups::serial::{group_element_to_json, parse_generator_word};
use crate::groups::IndexSet;
use crate::rings::parse::element_from_str;
use crate::rings::{RingAutomorphismDescriptor, RingSpec};
use serde_json::{json, Value};
use std::sync::Arc;

pub fn descriptor_to_json(desc: &RingAutomorphismDescriptor) -> Value {
    match desc {
        RingAutomorphismDescriptor::Identity => json!("identity"),
        RingAutomorphismDescriptor::QuadraticConjugation => json!("quad_conj"),
        RingAutomorphismDescriptor::Frobenius(k) => json!({ "frobenius": k }),
        RingAutomorphismDescriptor::MonomialCandidate { a, b, c, d } => {
            json!({ "monomial": [a, b, c, d] })
        }
    }
}

pub fn descriptor_from_json(value: &Value) -> Result<RingAutomorphismDescriptor> {
    match value {
        Value::String(s) => match s.as_str() {
            "identity" | "id" => Ok(RingAutomorphismDescriptor::Identity),
            "quad_conj" => Ok(RingAutomorphismDescriptor::QuadraticConjugation),
            other => Err(Error::Parse(format!("unknown ring automorphism {other}"))),
        },
        Value::Object(map) => {
            if let Some(k) = map.get("frobenius") {
                let k = k.as_u64().ok_or_else(|| Error::Parse("frobenius wants an integer".into()))?;
                return Ok(RingAutomorphismDescriptor::Frobenius(k as usize));
            }
            if let Some(m) = map.get("monomial") {
                let arr = m.as_array().ok_or_else(|| Error::Parse("monomial wants [a,b,c,d]".into()))?;
                if arr.len() != 4 {
                    return Err(Error::Parse("monomial wants [a,b,c,d]".into()));
                }
                let get = |i: usize| -> Result<i64> {
                    arr[i].as_i64().ok_or_else(|| Error::Parse("monomial entries are integers".into()))
                };
                return Ok(RingAutomorphismDescriptor::MonomialCandidate {
                    a: get(0)?,
                    b: get(1)?,
                    c: get(2)?,
                    d: get(3)?,
                });
            }
            Err(Error::Parse("unknown ring automorphism object".into()))
        }
        _ => Err(Error::Parse("ring automorphism must be a string or object".into())),
    }
}

pub fn automorphism_to_json(phi: &Automorphism) -> Value {
    let atoms: Vec<Value> = phi
        .atoms
        .iter()
        .map(|atom| match atom {
            Atom::Inner(g) => json!({ "atom": "inner", "g": group_element_to_json(g) }),
            Atom::DiagConj(d) => {
                let entries: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                json!({ "atom": "diag_conj", "d": entries })
            }
            Atom::Flip => json!({ "atom": "flip" }),
            Atom::RingInduced(desc) => json!({ "atom": "ring", "desc": descriptor_to_json(desc) }),
            Atom::Abels3Phi => json!({ "atom": "abels3_phi" }),
            Atom::Abels3PhiInv => json!({ "atom": "abels3_phi_inv" }),
            Atom::Abels3PhiV(v) => json!({ "atom": "abels3_phi_v", "v": v.to_string() }),
            Atom::Abels3PhiVInv(v) => json!({ "atom": "abels3_phi_v_inv", "v": v.to_string() }),
            Atom::SuperdiagonalMap { sigma, phi } => {
                let slots: Vec<Value> = phi
                    .iter()
                    .map(|s| {
                        json!({ "scale": s.scale.to_string(), "ring": descriptor_to_json(&s.ring) })
                    })
                    .collect();
                // 1-based on the wire
                let sigma1: Vec<usize> = sigma.iter().map(|k| k + 1).collect();
                json!({ "atom": "superdiag", "sigma": sigma1, "phi": slots })
            }
        })
        .collect();
    Value::Array(atoms)
}

pub fn automorphism_from_json(
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    value: &Value,
) -> Result<Automorphism> {
    let arr = value.as_array().ok_or_else(|| Error::Parse("automorphism must be an array".into()))?;
    let mut atoms = Vec::with_capacity(arr.len());
    for item in arr {
        let obj = item.as_object().ok_or_else(|| Error::Parse("atom must be an object".into()))?;
        let kind = obj
            .get("atom")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Parse("atom needs an 'atom' tag".into()))?;
        let atom = match kind {
            "inner" => {
                let g = obj.get("g").ok_or_else(|| Error::Parse("inner needs 'g'".into()))?;
                let element = match g {
                    Value::String(word) => parse_generator_word(ix, ring, word)?,
                    other => crate::groups::serial::group_element_from_json(ix, ring, other)?,
                };
                Atom::Inner(element)
            }
            "diag_conj" => {
                let d = obj
                    .get("d")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| Error::Parse("diag_conj needs a list 'd'".into()))?;
                let entries: Result<Vec<_>> = d
                    .iter()
                    .map(|v| {
                        let s = v
                            .as_str()
                            .ok_or_else(|| Error::Parse("diagonal entries are strings".into()))?;
                        element_from_str(ring, s)
                    })
                    .collect();
                Atom::DiagConj(entries?)
            }
            "flip" => Atom::Flip,
            "ring" => {
                let desc = obj.get("desc").ok_or_else(|| Error::Parse("ring needs 'desc'".into()))?;
                Atom::RingInduced(descriptor_from_json(desc)?)
            }
            "abels3_phi" => Atom::Abels3Phi,
            "abels3_phi_inv" => Atom::Abels3PhiInv,
            "abels3_phi_v" | "abels3_phi_v_inv" => {
                let v = obj
                    .get("v")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::Parse("abels3_phi_v needs 'v'".into()))?;
                let v = element_from_str(ring, v)?;
                if kind == "abels3_phi_v" {
                    Atom::Abels3PhiV(v)
                } else {
                    Atom::Abels3PhiVInv(v)
                }
            }
            "superdiag" => {
                let sigma = obj
                    .get("sigma")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| Error::Parse("superdiag needs 'sigma'".into()))?;
                let sigma: Result<Vec<usize>> = sigma
                    .iter()
                    .map(|v| {
                        let k = v
                            .as_u64()
                            .ok_or_else(|| Error::Parse("sigma entries are 1-based slots".into()))?;
                        if k == 0 {
                            return Err(Error::Parse("sigma entries are 1-based".into()));
                        }
                        Ok((k - 1) as usize)
                    })
                    .collect();
                let phi = obj
                    .get("phi")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| Error::Parse("superdiag needs 'phi'".into()))?;
                let slots: Result<Vec<SlotMap>> = phi
                    .iter()
                    .map(|slot| {
                        let scale = slot
                            .get("scale")
                            .and_then(|v| v.as_str())
                            .ok_or_else(|| Error::Parse("slot needs 'scale'".into()))?;
                        let desc = slot
                            .get("ring")
                            .map(descriptor_from_json)
                            .transpose()?
                            .unwrap_or(RingAutomorphismDescriptor::Identity);
                        Ok(SlotMap { scale: element_from_str(ring, scale)?, ring: desc })
                    })
                    .collect();
                Atom::SuperdiagonalMap { sigma: sigma?, phi: slots? }
            }
            other => return Err(Error::Parse(format!("unknown atom kind {other}"))),
        };
        atoms.push(atom);
    }
    Ok(Automorphism { atoms })
}

/// Named shortcuts the CLI accepts in place of a JSON array.
pub fn automorphism_from_name(
    name: &str,
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
) -> Result<Automorphism> {
    match name {
        "identity" | "id" => Ok(Automorphism::identity()),
        "flip" => Ok(Automorphism::flip()),
        "abels3_phi" | "psi_d2_1" => Ok(super::abels3_phi()),
        "psi_d2_-1" => {
            let minus_one = crate::rings::RingElement::from_i64(ring, -1);
            let d = crate::groups::diagonal_gen(ix, ring, 2, minus_one)?;
            Ok(Automorphism::compose(&Automorphism::inner(d), &super::abels3_phi()))
        }
        other => {
            let value: Value = serde_json::from_str(other)
                .map_err(|e| Error::Parse(format!("automorphism {other:?}: {e}")))?;
            automorphism_from_json(ix, ring, &value)
        }
    }
}
