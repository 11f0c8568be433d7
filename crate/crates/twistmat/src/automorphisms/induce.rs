//! Descending automorphisms to quotients, and recognising whether an
//! automorphism of a finite mod-commutator quotient permutes the
//! superdiagonal slots while applying an additive bijection to each.

use super::{Atom, Automorphism, SlotMap};
use crate::error::{Error, Result};
use crate::groups::{elementary, project, EnumeratedGroup, IndexSet, QuotientSpec};
use crate::rings::{induce_descriptor_mod, reduce_mod, RingElement, RingSpec};
use crate::sampling;
use std::sync::Arc;

/// Sample values used to test kernel invariance on the kernel generators.
const KERNEL_SAMPLES: usize = 6;

/// Verify that every atom of `phi` preserves the kernel of the quotient map,
/// then return the automorphism acting on the quotient. For the coefficient
/// reductions the atom data itself is rewritten over the residue field; for
/// the pattern quotients the atoms act through canonical lifts.
///
/// Kernel invariance is checked on the kernel generators: e_{i,j} with
/// j > i+1 for the mod-commutator quotient, e_{1,4} for the mod-centre one,
/// each at several sampled ring values.
pub fn induce_on_quotient(
    phi: &Automorphism,
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    qspec: &QuotientSpec,
    seed: u64,
) -> Result<Automorphism> {
    qspec.check_compatible(ix)?;
    match qspec {
        QuotientSpec::None => Ok(phi.clone()),
        QuotientSpec::ModCommutatorU | QuotientSpec::ModCenterU4 => {
            let mut rng = sampling::rng_from_seed(seed);
            let kernel_positions: Vec<(usize, usize)> = match qspec {
                QuotientSpec::ModCommutatorU => ix
                    .upper_positions()
                    .into_iter()
                    .filter(|&(i, j)| j > i + 1)
                    .collect(),
                _ => vec![(1, 4)],
            };
            for atom in &phi.atoms {
                let single = Automorphism::single(atom.clone());
                for &(i, j) in &kernel_positions {
                    let mut values = vec![RingElement::one(ring)];
                    for _ in 0..KERNEL_SAMPLES {
                        values.push(sampling::random_element(ring, &mut rng));
                    }
                    for r in values {
                        let gen = elementary(ix, ring, i, j, r.clone())?;
                        let image = single.apply(&gen)?;
                        if !project(&image, qspec)?.is_identity() {
                            return Err(Error::KernelNotInvariant(format!("e({i},{j};{r})")));
                        }
                    }
                }
            }
            Ok(phi.clone())
        }
        QuotientSpec::ModIdeal(modulus) => {
            let mut atoms = Vec::with_capacity(phi.atoms.len());
            for atom in &phi.atoms {
                let reduced = match atom {
                    Atom::Inner(h) => {
                        let hbar = project(h, qspec)?;
                        let full = crate::groups::QuotientElement::from_parts(
                            hbar.ix(),
                            hbar.ring(),
                            &QuotientSpec::None,
                            hbar.entries().to_vec(),
                            hbar.diag().to_vec(),
                        )?;
                        Atom::Inner(full.lift()?)
                    }
                    Atom::DiagConj(d) => {
                        let rd: Result<Vec<RingElement>> =
                            d.iter().map(|u| reduce_mod(u, modulus)).collect();
                        Atom::DiagConj(rd?)
                    }
                    Atom::Flip => Atom::Flip,
                    Atom::RingInduced(desc) => {
                        Atom::RingInduced(induce_descriptor_mod(ring, desc, modulus)?)
                    }
                    Atom::Abels3Phi => Atom::Abels3Phi,
                    Atom::Abels3PhiInv => Atom::Abels3PhiInv,
                    Atom::Abels3PhiV(v) => Atom::Abels3PhiV(reduce_mod(v, modulus)?),
                    Atom::Abels3PhiVInv(v) => Atom::Abels3PhiVInv(reduce_mod(v, modulus)?),
                    Atom::SuperdiagonalMap { sigma, phi: slots } => {
                        let mut reduced_slots = Vec::with_capacity(slots.len());
                        for s in slots {
                            reduced_slots.push(SlotMap {
                                scale: reduce_mod(&s.scale, modulus)?,
                                ring: induce_descriptor_mod(ring, &s.ring, modulus)?,
                            });
                        }
                        Atom::SuperdiagonalMap { sigma: sigma.clone(), phi: reduced_slots }
                    }
                };
                atoms.push(reduced);
            }
            Ok(Automorphism { atoms })
        }
    }
}

/// sigma and the per-slot additive bijections extracted from a finite
/// quotient automorphism, as tables over field-element indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperdiagonalForm {
    /// Slot permutation, 0-based: slot k maps into slot `sigma[k]`.
    pub sigma: Vec<usize>,
    /// For each source slot, the table of Phi over field element indices.
    pub phi_tables: Vec<Vec<u64>>,
}

impl SuperdiagonalForm {
    pub fn fixes_slot(&self, slot: usize) -> bool {
        self.sigma[slot] == slot
    }
}

/// Decide whether a permutation-table automorphism of a finite
/// mod-commutator quotient maps each superdiagonal one-parameter family into
/// a single slot, returning the slot permutation and the per-slot additive
/// bijections when it does.
pub fn check_superdiagonal_form(
    group: &EnumeratedGroup,
    table: &[usize],
) -> Result<Option<SuperdiagonalForm>> {
    if !matches!(group.qspec, QuotientSpec::ModCommutatorU) {
        return Err(Error::IncompatibleQuotient(
            "superdiagonal form only concerns mod-commutator quotients".into(),
        ));
    }
    if table.len() != group.order() {
        return Err(Error::NotAnAutomorphism("table length mismatch".into()));
    }
    let q = group.field.order();
    let slots = group.ix.n() - 1;
    let zero_entries = vec![RingElement::zero(&group.ring); slots];
    let one_diag = vec![RingElement::one(&group.ring); group.ix.n()];
    let mut sigma = vec![usize::MAX; slots];
    let mut phi_tables = vec![vec![0u64; q as usize]; slots];

    for slot in 0..slots {
        let mut target: Option<usize> = None;
        for r in 1..q {
            let mut entries = zero_entries.clone();
            entries[slot] =
                RingElement::from_fq(&group.ring, group.field.el_from_index(r)).unwrap();
            let src = crate::groups::QuotientElement::from_parts(
                &group.ix,
                &group.ring,
                &group.qspec,
                entries,
                one_diag.clone(),
            )?;
            let image = group.element(table[group.index_of(&src)]);
            if image.diag().iter().any(|u| !u.is_one()) {
                return Ok(None);
            }
            let nonzero: Vec<usize> = (0..slots)
                .filter(|&k| !image.entries()[k].is_zero())
                .collect();
            if nonzero.len() != 1 {
                return Ok(None);
            }
            match target {
                None => target = Some(nonzero[0]),
                Some(t) if t == nonzero[0] => {}
                Some(_) => return Ok(None),
            }
            let val = image.entries()[nonzero[0]].as_fq().unwrap();
            phi_tables[slot][r as usize] = group.field.el_index(val);
        }
        sigma[slot] = target.unwrap();
    }

    // sigma must be a permutation
    let mut seen = vec![false; slots];
    for &t in &sigma {
        if seen[t] {
            return Ok(None);
        }
        seen[t] = true;
    }
    // each Phi must be additive and bijective on the field
    for table_phi in &phi_tables {
        let mut seen = vec![false; q as usize];
        for &v in table_phi {
            if seen[v as usize] {
                return Ok(None);
            }
            seen[v as usize] = true;
        }
        for r in 0..q {
            for s in 0..q {
                let sum = group.field.el_add(
                    &group.field.el_from_index(r),
                    &group.field.el_from_index(s),
                );
                let sum_idx = group.field.el_index(&sum);
                let lhs = table_phi[sum_idx as usize];
                let rhs_el = group.field.el_add(
                    &group.field.el_from_index(table_phi[r as usize]),
                    &group.field.el_from_index(table_phi[s as usize]),
                );
                if lhs != group.field.el_index(&rhs_el) {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(SuperdiagonalForm { sigma, phi_tables }))
}

/// Build the permutation table of an automorphism on an enumerated group and
/// verify it really is one: a bijection that is multiplicative against every
/// generator, which forces multiplicativity everywhere.
pub fn automorphism_table(group: &EnumeratedGroup, phi: &Automorphism) -> Result<Vec<usize>> {
    let mut table = Vec::with_capacity(group.order());
    for x in &group.elements {
        table.push(group.index_of(&phi.apply_quotient(x)?));
    }
    verify_table_is_automorphism(group, &table)?;
    Ok(table)
}

pub fn verify_table_is_automorphism(group: &EnumeratedGroup, table: &[usize]) -> Result<()> {
    if table.len() != group.order() {
        return Err(Error::NotAnAutomorphism("table length mismatch".into()));
    }
    let mut seen = vec![false; table.len()];
    for &t in table {
        if t >= table.len() || seen[t] {
            return Err(Error::NotAnAutomorphism("table is not a bijection".into()));
        }
        seen[t] = true;
    }
    for g in group.generator_indices() {
        for x in 0..group.order() {
            let lhs = table[group.mul_idx(g, x)];
            let rhs = group.mul_idx(table[g], table[x]);
            if lhs != rhs {
                return Err(Error::NotAnAutomorphism(format!(
                    "multiplicativity fails at generator {g}, element {x}"
                )));
            }
        }
    }
    Ok(())
}
