//! Atomic automorphisms of S_n^I(R) and its quotients, composed into
//! `Automorphism` values: inner maps, diagonal conjugations (the conjugating
//! diagonal may lie outside T_I; it still normalizes U_n and fixes the
//! diagonal subgroup pointwise), the flip along the anti-diagonal, maps
//! induced entrywise by ring automorphisms, and the explicit 3x3 maps on
//! S_3^{{2}}(R).

pub mod induce;
pub mod serial;

use crate::error::{Error, Result};
use crate::groups::{
    conjugate, inverse, multiply, GroupElement, IndexSet, QuotientElement, QuotientSpec,
};
use crate::rings::{
    apply_ring_aut, RingAutomorphismDescriptor, RingElement, RingSpec,
};
use crate::sampling;
use std::fmt;
use std::sync::Arc;

pub use induce::{
    automorphism_table, check_superdiagonal_form, induce_on_quotient,
    verify_table_is_automorphism, SuperdiagonalForm,
};

/// Additive slot map r -> scale * alpha(r) used by `SuperdiagonalMap`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotMap {
    pub scale: RingElement,
    pub ring: RingAutomorphismDescriptor,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// Conjugation by a group element.
    Inner(GroupElement),
    /// Conjugation by an arbitrary full diagonal of units (entries are not
    /// constrained by I). Scales entry (i,j) by d_i d_j^{-1}; the diagonal
    /// part of the argument is fixed.
    DiagConj(Vec<RingElement>),
    /// The flip along the anti-diagonal with alternating signs.
    Flip,
    /// Entrywise application of a ring automorphism.
    RingInduced(RingAutomorphismDescriptor),
    /// (x, y, z, u) -> (2x + uy, ux, x^2 + uxy - z, u) at the matrix level;
    /// n = 3, I = {2} only.
    Abels3Phi,
    Abels3PhiInv,
    /// (x, y, z, u) -> (-y/u, vx/u, -vxy/u + vz, 1/u); v a unit, v != ±1.
    Abels3PhiV(RingElement),
    Abels3PhiVInv(RingElement),
    /// Slot permutation plus per-slot additive maps on a mod-commutator
    /// quotient; quotient-only.
    SuperdiagonalMap { sigma: Vec<usize>, phi: Vec<SlotMap> },
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Inner(g) => write!(f, "inner({g})"),
            Atom::DiagConj(d) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "diag_conj({})", parts.join(","))
            }
            Atom::Flip => write!(f, "flip"),
            Atom::RingInduced(desc) => write!(f, "ring({desc:?})"),
            Atom::Abels3Phi => write!(f, "abels3_phi"),
            Atom::Abels3PhiInv => write!(f, "abels3_phi_inv"),
            Atom::Abels3PhiV(v) => write!(f, "abels3_phi_v({v})"),
            Atom::Abels3PhiVInv(v) => write!(f, "abels3_phi_v_inv({v})"),
            Atom::SuperdiagonalMap { sigma, .. } => write!(f, "superdiag({sigma:?})"),
        }
    }
}

/// A composition of atoms; `atoms[0]` is applied last, matching the usual
/// right-to-left reading of a composite map.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Automorphism {
    pub atoms: Vec<Atom>,
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" . "))
    }
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism { atoms: vec![] }
    }

    pub fn single(atom: Atom) -> Self {
        Automorphism { atoms: vec![atom] }
    }

    pub fn inner(g: GroupElement) -> Self {
        Self::single(Atom::Inner(g))
    }

    pub fn diag_conj(d: Vec<RingElement>) -> Self {
        Self::single(Atom::DiagConj(d))
    }

    pub fn flip() -> Self {
        Self::single(Atom::Flip)
    }

    pub fn ring_induced(desc: RingAutomorphismDescriptor) -> Self {
        Self::single(Atom::RingInduced(desc))
    }

    /// phi . psi: apply psi first.
    pub fn compose(phi: &Automorphism, psi: &Automorphism) -> Automorphism {
        let mut atoms = phi.atoms.clone();
        atoms.extend(psi.atoms.iter().cloned());
        Automorphism { atoms }
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        let mut cur = g.clone();
        for atom in self.atoms.iter().rev() {
            cur = apply_atom(atom, &cur)?;
        }
        Ok(cur)
    }

    pub fn apply_quotient(&self, x: &QuotientElement) -> Result<QuotientElement> {
        let mut cur = x.clone();
        for atom in self.atoms.iter().rev() {
            cur = apply_atom_quotient(atom, &cur)?;
        }
        Ok(cur)
    }

    /// Peephole reduction of the atom list: adjacent flip pairs cancel and
    /// trivial atoms drop out.
    pub fn simplified(&self) -> Automorphism {
        let mut atoms: Vec<Atom> = Vec::with_capacity(self.atoms.len());
        for atom in &self.atoms {
            let trivial = match atom {
                Atom::Inner(g) => g.is_identity(),
                Atom::DiagConj(d) => d.iter().all(|u| u.is_one()),
                Atom::RingInduced(desc) => desc.is_identity(),
                _ => false,
            };
            if trivial {
                continue;
            }
            if matches!(atom, Atom::Flip) && matches!(atoms.last(), Some(Atom::Flip)) {
                atoms.pop();
                continue;
            }
            atoms.push(atom.clone());
        }
        Automorphism { atoms }
    }

    /// The inverse composition, when every atom has a constructible inverse.
    pub fn inverse(&self, ring: &RingSpec) -> Result<Automorphism> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for atom in self.atoms.iter() {
            atoms.push(invert_atom(atom, ring)?);
        }
        atoms.reverse();
        Ok(Automorphism { atoms })
    }
}

fn invert_atom(atom: &Atom, ring: &RingSpec) -> Result<Atom> {
    Ok(match atom {
        Atom::Inner(h) => Atom::Inner(inverse(h)?),
        Atom::DiagConj(d) => {
            let inv: Result<Vec<RingElement>> = d.iter().map(|x| x.inv_unit()).collect();
            Atom::DiagConj(inv?)
        }
        Atom::Flip => Atom::Flip,
        Atom::RingInduced(desc) => Atom::RingInduced(desc.inverse_for(ring)),
        Atom::Abels3Phi => Atom::Abels3PhiInv,
        Atom::Abels3PhiInv => Atom::Abels3Phi,
        Atom::Abels3PhiV(v) => Atom::Abels3PhiVInv(v.clone()),
        Atom::Abels3PhiVInv(v) => Atom::Abels3PhiV(v.clone()),
        Atom::SuperdiagonalMap { sigma, phi } => {
            let k = sigma.len();
            let mut inv_sigma = vec![0usize; k];
            let mut inv_phi = vec![None; k];
            for (s, &t) in sigma.iter().enumerate() {
                inv_sigma[t] = s;
                let slot = &phi[s];
                let alpha_inv = slot.ring.inverse_for(ring);
                let scale_inv = apply_ring_aut(&alpha_inv, &slot.scale.inv_unit()?)?;
                inv_phi[t] = Some(SlotMap { scale: scale_inv, ring: alpha_inv });
            }
            Atom::SuperdiagonalMap {
                sigma: inv_sigma,
                phi: inv_phi.into_iter().map(|x| x.unwrap()).collect(),
            }
        }
    })
}

fn apply_atom(atom: &Atom, g: &GroupElement) -> Result<GroupElement> {
    match atom {
        Atom::Inner(h) => {
            if h.ix() != g.ix() || h.ring() != g.ring() {
                return Err(Error::IncompatibleAtom("inner conjugator lives in another group".into()));
            }
            conjugate(g, h)
        }
        Atom::DiagConj(d) => diag_conj_element(d, g),
        Atom::Flip => flip_element(g),
        Atom::RingInduced(desc) => ring_induced_element(desc, g),
        Atom::Abels3Phi => abels3_phi_apply(g, None, false),
        Atom::Abels3PhiInv => abels3_phi_apply(g, None, true),
        Atom::Abels3PhiV(v) => abels3_phi_apply(g, Some(v), false),
        Atom::Abels3PhiVInv(v) => abels3_phi_apply(g, Some(v), true),
        Atom::SuperdiagonalMap { .. } => {
            Err(Error::IncompatibleAtom("superdiagonal maps act only on quotients".into()))
        }
    }
}

fn apply_atom_quotient(atom: &Atom, x: &QuotientElement) -> Result<QuotientElement> {
    match x.qspec() {
        QuotientSpec::None | QuotientSpec::ModCommutatorU | QuotientSpec::ModCenterU4 => {
            if let Atom::SuperdiagonalMap { sigma, phi } = atom {
                return superdiag_apply(sigma, phi, x);
            }
            // act on the canonical lift; well defined once the kernel is
            // known to be invariant (see `induce_on_quotient`)
            let lifted = x.lift()?;
            let image = apply_atom(atom, &lifted)?;
            crate::groups::project(&image, x.qspec())
        }
        QuotientSpec::ModIdeal(_) => {
            // entries already live over the residue field; atoms must too
            if let Atom::SuperdiagonalMap { .. } = atom {
                return Err(Error::IncompatibleAtom(
                    "superdiagonal maps act on mod-commutator quotients".into(),
                ));
            }
            let full = QuotientElement::from_parts(
                x.ix(),
                x.ring(),
                &QuotientSpec::None,
                x.entries().to_vec(),
                x.diag().to_vec(),
            )?;
            let lifted = full.lift()?;
            let image = apply_atom(atom, &lifted)?;
            let projected = crate::groups::project(&image, &QuotientSpec::None)?;
            QuotientElement::from_parts(
                x.ix(),
                x.ring(),
                x.qspec(),
                projected.entries().to_vec(),
                projected.diag().to_vec(),
            )
        }
    }
}

fn superdiag_apply(sigma: &[usize], phi: &[SlotMap], x: &QuotientElement) -> Result<QuotientElement> {
    if !matches!(x.qspec(), QuotientSpec::ModCommutatorU) {
        return Err(Error::IncompatibleAtom("superdiagonal maps act on mod-commutator quotients".into()));
    }
    let k = x.entries().len();
    if sigma.len() != k || phi.len() != k {
        return Err(Error::IncompatibleAtom("slot permutation has the wrong length".into()));
    }
    let mut seen = vec![false; k];
    for &t in sigma {
        if t >= k || seen[t] {
            return Err(Error::IncompatibleAtom("sigma is not a permutation".into()));
        }
        seen[t] = true;
    }
    let mut entries = vec![RingElement::zero(x.ring()); k];
    for (s, slot) in phi.iter().enumerate() {
        let mapped = slot.scale.mul(&apply_ring_aut(&slot.ring, &x.entries()[s])?)?;
        entries[sigma[s]] = mapped;
    }
    QuotientElement::from_parts(x.ix(), x.ring(), x.qspec(), entries, x.diag().to_vec())
}

/// Conjugation by a full diagonal: entry (i,j) scaled by d_i d_j^{-1}; the
/// diagonal subgroup is abelian so the diagonal part is untouched.
fn diag_conj_element(d: &[RingElement], g: &GroupElement) -> Result<GroupElement> {
    let n = g.ix().n();
    if d.len() != n {
        return Err(Error::IncompatibleAtom("conjugating diagonal has the wrong length".into()));
    }
    for u in d {
        if u.is_unit().is_none() {
            return Err(Error::BadUnit(u.to_string()));
        }
    }
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            let factor = d[i - 1].mul(&d[j - 1].inv_unit()?)?;
            upper.push(factor.mul(g.upper_entry(i, j))?);
        }
    }
    let diag: Vec<RingElement> = (1..=n).map(|i| g.diag_entry(i).clone()).collect();
    GroupElement::from_parts(g.ix(), g.ring(), upper, diag)
}

/// tau(u d) entrywise: tau(u)_{k,l} = (-1)^{k+l} (u^{-1})_{n+1-l, n+1-k},
/// and the diagonal is reversed and inverted. On generators this is
/// e_{i,j}(r) -> e_{n-j+1, n-i+1}((-1)^{j-i-1} r).
fn flip_element(g: &GroupElement) -> Result<GroupElement> {
    let n = g.ix().n();
    let uinv = inverse(&g.unipotent_part())?;
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..=n {
        for l in k + 1..=n {
            let src = uinv.upper_entry(n + 1 - l, n + 1 - k).clone();
            let val = if (k + l) % 2 == 1 { src.neg() } else { src };
            upper.push(val);
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 1..=n {
        let v = g.diag_entry(n + 1 - k).inv_unit()?;
        if !g.ix().contains(k) && !v.is_one() {
            return Err(Error::IncompatibleAtom(format!(
                "flip moves a nontrivial diagonal entry to position {k} outside I"
            )));
        }
        diag.push(v);
    }
    GroupElement::from_parts(g.ix(), g.ring(), upper, diag)
}

fn ring_induced_element(
    desc: &RingAutomorphismDescriptor,
    g: &GroupElement,
) -> Result<GroupElement> {
    let n = g.ix().n();
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            upper.push(apply_ring_aut(desc, g.upper_entry(i, j))?);
        }
    }
    let diag: Result<Vec<RingElement>> =
        (1..=n).map(|i| apply_ring_aut(desc, g.diag_entry(i))).collect();
    GroupElement::from_parts(g.ix(), g.ring(), upper, diag?)
}

fn require_abels3(g: &GroupElement) -> Result<()> {
    if g.ix().n() != 3 || g.ix().members() != [2] {
        return Err(Error::IncompatibleAtom("this map needs n=3, I={2}".into()));
    }
    Ok(())
}

/// Both 3x3 maps and their inverses, in matrix coordinates
/// (x, y, z) = entries (1,2), (2,3), (1,3) and u = entry (2,2).
fn abels3_phi_apply(
    g: &GroupElement,
    v: Option<&RingElement>,
    inv: bool,
) -> Result<GroupElement> {
    require_abels3(g)?;
    if let Some(v) = v {
        let ok = v.is_unit().is_some()
            && !v.is_one()
            && *v != RingElement::from_i64(g.ring(), -1);
        if !ok {
            return Err(Error::BadUnit(v.to_string()));
        }
    }
    let ring = g.ring().clone();
    let u = g.diag_entry(2).clone();
    // matrix entries from the pair representation: m_{1,2} = a*u
    let x = g.upper_entry(1, 2).mul(&u)?;
    let y = g.upper_entry(2, 3).clone();
    let z = g.upper_entry(1, 3).clone();
    let two = RingElement::from_i64(&ring, 2);

    let (nx, ny, nz, nu) = match (v, inv) {
        (None, false) => {
            // (2x + uy, ux, x^2 + uxy - z, u)
            let nx = two.mul(&x)?.add(&u.mul(&y)?)?;
            let ny = u.mul(&x)?;
            let nz = x.mul(&x)?.add(&u.mul(&x)?.mul(&y)?)?.sub(&z)?;
            (nx, ny, nz, u.clone())
        }
        (None, true) => {
            // solve: x = y'/u, y = (x' - 2x)/u, z = x^2 + uxy - z'
            let uinv = u.inv_unit()?;
            let px = y.mul(&uinv)?;
            let py = x.sub(&two.mul(&px)?)?.mul(&uinv)?;
            let pz = px.mul(&px)?.add(&u.mul(&px)?.mul(&py)?)?.sub(&z)?;
            (px, py, pz, u.clone())
        }
        (Some(v), false) => {
            // (-y/u, vx/u, -vxy/u + vz, 1/u)
            let uinv = u.inv_unit()?;
            let nx = y.mul(&uinv)?.neg();
            let ny = v.mul(&x)?.mul(&uinv)?;
            let nz = v.mul(&x)?.mul(&y)?.mul(&uinv)?.neg().add(&v.mul(&z)?)?;
            (nx, ny, nz, uinv)
        }
        (Some(v), true) => {
            // u = 1/u'; x = y'u/v; y = -x'u; z = z'/v + xy/u
            let pu = u.inv_unit()?;
            let vinv = v.inv_unit()?;
            let px = y.mul(&pu)?.mul(&vinv)?;
            let py = x.mul(&pu)?.neg();
            let pz = z.mul(&vinv)?.add(&px.mul(&py)?.mul(&pu.inv_unit()?)?)?;
            (px, py, pz, pu)
        }
    };

    // back to the pair representation: a = m_{1,2}/u
    let a = nx.mul(&nu.inv_unit()?)?;
    let upper = vec![a, nz, ny];
    let diag = vec![RingElement::one(&ring), nu, RingElement::one(&ring)];
    GroupElement::from_parts(g.ix(), &ring, upper, diag)
}

/// The first explicit automorphism of S_3^{{2}}(R).
pub fn abels3_phi() -> Automorphism {
    Automorphism::single(Atom::Abels3Phi)
}

/// The unit-parameter family on S_3^{{2}}(R); v must be a unit other than ±1.
pub fn abels3_phi_v(v: RingElement) -> Result<Automorphism> {
    let ok = v.is_unit().is_some() && !v.is_one() && v != RingElement::from_i64(v.spec(), -1);
    if !ok {
        return Err(Error::BadUnit(v.to_string()));
    }
    Ok(Automorphism::single(Atom::Abels3PhiV(v)))
}

/// d = d^I d^c: the entries indexed by I stay in d^I, the rest go to d^c.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSplit {
    pub d_i: Vec<RingElement>,
    pub d_c: Vec<RingElement>,
}

pub fn split_diagonal(d: &[RingElement], ix: &IndexSet) -> Result<DiagonalSplit> {
    if d.len() != ix.n() {
        return Err(Error::InvalidSpec("diagonal has the wrong length".into()));
    }
    for u in d {
        if u.is_unit().is_none() {
            return Err(Error::NotAUnit(u.to_string()));
        }
    }
    let one = RingElement::one(d[0].spec());
    let mut d_i = vec![one.clone(); d.len()];
    let mut d_c = vec![one; d.len()];
    for (pos, u) in d.iter().enumerate() {
        if ix.contains(pos + 1) {
            d_i[pos] = u.clone();
        } else {
            d_c[pos] = u.clone();
        }
    }
    Ok(DiagonalSplit { d_i, d_c })
}

/// From a diagonal supported on the complement of I, the compensating
/// diagonal d^c_* = d_1(u_2) d_2(u_1) d_{n-1}(u_n) d_n(u_{n-1}); under the
/// no-gaps condition the result lands in T_I.
pub fn dc_star(d_c: &[RingElement], ix: &IndexSet, ring: &Arc<RingSpec>) -> Result<GroupElement> {
    let n = ix.n();
    if d_c.len() != n {
        return Err(Error::InvalidSpec("diagonal has the wrong length".into()));
    }
    let mut v = vec![RingElement::one(ring); n];
    let mut place = |target: usize, src: usize| -> Result<()> {
        v[target - 1] = v[target - 1].mul(&d_c[src - 1])?;
        Ok(())
    };
    place(1, 2)?;
    place(2, 1)?;
    place(n - 1, n)?;
    place(n, n - 1)?;
    for i in 1..=n {
        if !ix.contains(i) && !v[i - 1].is_one() {
            return Err(Error::NGViolated(i));
        }
    }
    crate::groups::diagonal(ix, ring, v)
}

/// Outcome of a randomized homomorphism check.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ok: bool,
    pub samples: usize,
    pub counterexample: Option<String>,
    pub bijectivity_witnessed: bool,
}

/// Check phi(ab) = phi(a)phi(b) on random pairs for an arbitrary map; used
/// both by `verify_homomorphism` and to exhibit non-maps in tests.
pub fn verify_map_homomorphism<F>(
    f: F,
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    samples: usize,
    seed: u64,
) -> VerifyReport
where
    F: Fn(&GroupElement) -> Result<GroupElement>,
{
    let mut rng = sampling::rng_from_seed(seed);
    for k in 0..samples {
        let a = sampling::random_group_element(ix, ring, &mut rng);
        let b = sampling::random_group_element(ix, ring, &mut rng);
        let check = (|| -> Result<bool> {
            let lhs = f(&multiply(&a, &b)?)?;
            let rhs = multiply(&f(&a)?, &f(&b)?)?;
            Ok(lhs == rhs)
        })();
        match check {
            Ok(true) => {}
            Ok(false) => {
                return VerifyReport {
                    ok: false,
                    samples: k + 1,
                    counterexample: Some(format!("a = {a}, b = {b}")),
                    bijectivity_witnessed: false,
                }
            }
            Err(e) => {
                return VerifyReport {
                    ok: false,
                    samples: k + 1,
                    counterexample: Some(format!("error on a = {a}, b = {b}: {e}")),
                    bijectivity_witnessed: false,
                }
            }
        }
    }
    VerifyReport { ok: true, samples, counterexample: None, bijectivity_witnessed: false }
}

/// Randomized verification that an automorphism value really is one:
/// multiplicativity on `samples` random pairs, plus a round-trip through the
/// inverse composition when one is constructible.
pub fn verify_homomorphism(
    phi: &Automorphism,
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    samples: usize,
    seed: u64,
) -> VerifyReport {
    let mut report = verify_map_homomorphism(|g| phi.apply(g), ix, ring, samples, seed);
    if !report.ok {
        return report;
    }
    if let Ok(inv) = phi.inverse(ring) {
        let mut rng = sampling::rng_from_seed(seed ^ 0x5eed);
        for _ in 0..samples.min(100) {
            let g = sampling::random_group_element(ix, ring, &mut rng);
            let roundtrip = phi.apply(&g).and_then(|h| inv.apply(&h));
            match roundtrip {
                Ok(h) if h == g => {}
                Ok(h) => {
                    report.ok = false;
                    report.counterexample = Some(format!("roundtrip moved {g} to {h}"));
                    return report;
                }
                Err(e) => {
                    report.ok = false;
                    report.counterexample = Some(format!("roundtrip failed on {g}: {e}"));
                    return report;
                }
            }
        }
        report.bijectivity_witnessed = true;
    }
    report
}
