//! Finite-generation classification of S_n^I(R). The group is finitely
//! generated iff (i) the additive group (R,+) is finitely generated, or
//! (ii) U(R) is finitely generated, R is finitely generated as a module over
//! U(R), and I satisfies the no-gaps condition. The per-ring facts are
//! ring-theoretic inputs recorded here, not computed.

use super::IndexSet;
use crate::rings::RingSpec;
use serde::Serialize;

/// Ring-theoretic facts feeding the classification.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RingFacts {
    pub additive_fg: bool,
    pub units_fg: bool,
    pub module_fg_over_units: bool,
}

pub fn ring_facts(spec: &RingSpec) -> RingFacts {
    match spec {
        // (Z,+) is cyclic; Z[1/p...] is not finitely generated additively
        // once a prime is inverted, but it is spanned by its units over Z.
        // Unit groups are finitely generated by Dirichlet's unit theorem in
        // Samuel's form for rings of S-integers.
        RingSpec::Integers => RingFacts { additive_fg: true, units_fg: true, module_fg_over_units: true },
        RingSpec::SIntegers { primes } => RingFacts {
            additive_fg: primes.is_empty(),
            units_fg: true,
            module_fg_over_units: true,
        },
        // Z[sqrt d] has additive rank 2.
        RingSpec::Quadratic { .. } => {
            RingFacts { additive_fg: true, units_fg: true, module_fg_over_units: true }
        }
        RingSpec::FiniteField(_) => {
            RingFacts { additive_fg: true, units_fg: true, module_fg_over_units: true }
        }
        // F_q[t]: additive group is an infinite-dimensional F_q-space and the
        // units are the nonzero constants, so neither clause helps.
        RingSpec::PolyRing { .. } => {
            RingFacts { additive_fg: false, units_fg: true, module_fg_over_units: false }
        }
        // Localizing at one or more monic irreducibles (or at t) makes R a
        // finitely generated module over Z[U(R)]: F_q[t] is free of finite
        // rank over F_q[g] for any inverted g, and powers of g are units.
        RingSpec::LocalizedPoly { .. } => {
            RingFacts { additive_fg: false, units_fg: true, module_fg_over_units: true }
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FinGenVerdict {
    pub finitely_generated: bool,
    /// "(i)", "(ii)", or the failing clauses joined with '+'.
    pub reason: String,
}

pub fn is_finitely_generated(spec: &RingSpec, ix: &IndexSet) -> FinGenVerdict {
    let facts = ring_facts(spec);
    if facts.additive_fg {
        return FinGenVerdict { finitely_generated: true, reason: "(i)".into() };
    }
    let ng = ix.ng_condition();
    if facts.units_fg && facts.module_fg_over_units && ng {
        return FinGenVerdict { finitely_generated: true, reason: "(ii)".into() };
    }
    let mut failing = vec!["additive"];
    if !facts.units_fg {
        failing.push("units");
    }
    if !facts.module_fg_over_units {
        failing.push("module");
    }
    if !ng {
        failing.push("ng");
    }
    FinGenVerdict { finitely_generated: false, reason: failing.join("+") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{FqPoly, FqSpec};

    #[test]
    fn fingen_examples() {
        let any_ix = IndexSet::new(4, &[2, 3]).unwrap();
        // Z: always yes via (i)
        let v = is_finitely_generated(&RingSpec::integers(), &any_ix);
        assert!(v.finitely_generated);
        assert_eq!(v.reason, "(i)");

        // F_2[t]: no; additive fails and R is not module-finite over units
        let poly = RingSpec::poly_ring(FqSpec::prime_field(2));
        let v = is_finitely_generated(&poly, &any_ix);
        assert!(!v.finitely_generated);
        assert_eq!(v.reason, "additive+module");

        // R_f with I={2,3}: yes via (ii); with I={2}: no, (NG) fails
        let base = FqSpec::prime_field(2);
        let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
        let rf = RingSpec::localized_poly(base, true, vec![f]);
        let v = is_finitely_generated(&rf, &any_ix);
        assert!(v.finitely_generated);
        assert_eq!(v.reason, "(ii)");
        let bad_ix = IndexSet::new(4, &[2]).unwrap();
        let v = is_finitely_generated(&rf, &bad_ix);
        assert!(!v.finitely_generated);
        assert_eq!(v.reason, "additive+ng");
    }
}
