//! Characteristic quotients of S_n^I(R): modulo the commutator subgroup of
//! U_n (only the superdiagonal survives), modulo the centre of U_4 (the
//! (1,4) entry is dropped; n = 4, I = {2,3} only), and coefficient reduction
//! modulo a maximal ideal. Dropped coordinates never enter equality or
//! multiplication.

use super::{GroupElement, IndexSet};
use crate::error::{Error, Result};
use crate::rings::{reduce_mod, FqSpec, Modulus, RingElement, RingSpec};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuotientSpec {
    None,
    /// Work in S_n^I / U_n'; retains superdiagonal entries and the diagonal.
    ModCommutatorU,
    /// Work in A_4 / Z(U_4); n = 4, I = {2,3}; drops the (1,4) entry.
    ModCenterU4,
    /// Reduce every coefficient modulo a maximal ideal.
    ModIdeal(Modulus),
}

impl QuotientSpec {
    pub fn check_compatible(&self, ix: &IndexSet) -> Result<()> {
        match self {
            QuotientSpec::ModCenterU4 => {
                if ix.n() != 4 || ix.members() != [2, 3] {
                    return Err(Error::IncompatibleQuotient(
                        "mod-centre quotient needs n=4, I={2,3}".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The strictly-upper positions a quotient element retains.
    pub fn retained_positions(&self, ix: &IndexSet) -> Vec<(usize, usize)> {
        let n = ix.n();
        match self {
            QuotientSpec::None | QuotientSpec::ModIdeal(_) => ix.upper_positions(),
            QuotientSpec::ModCommutatorU => (1..n).map(|i| (i, i + 1)).collect(),
            QuotientSpec::ModCenterU4 => {
                ix.upper_positions().into_iter().filter(|&(i, j)| (i, j) != (1, 4)).collect()
            }
        }
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSpec::None => write!(f, "none"),
            QuotientSpec::ModCommutatorU => write!(f, "mod U'"),
            QuotientSpec::ModCenterU4 => write!(f, "mod Z(U_4)"),
            QuotientSpec::ModIdeal(Modulus::Prime(p)) => write!(f, "mod {p}"),
            QuotientSpec::ModIdeal(Modulus::Poly(g)) => {
                // dense coefficient digits, ascending
                let digits: String = g
                    .coeffs
                    .iter()
                    .map(|c| if c.len() == 1 { c[0].to_string() } else { format!("({c:?})") })
                    .collect();
                write!(f, "mod poly[{digits}]")
            }
        }
    }
}

/// Element of a quotient group. `ring` is the coefficient ring after any
/// ideal reduction; `entries` are parallel to `qspec.retained_positions`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientElement {
    ix: IndexSet,
    ring: Arc<RingSpec>,
    qspec: QuotientSpec,
    entries: Vec<RingElement>,
    diag: Vec<RingElement>,
}

impl QuotientElement {
    pub fn identity(ix: &IndexSet, ring: &Arc<RingSpec>, qspec: &QuotientSpec) -> Result<Self> {
        qspec.check_compatible(ix)?;
        let positions = qspec.retained_positions(ix);
        Ok(QuotientElement {
            ix: ix.clone(),
            ring: ring.clone(),
            qspec: qspec.clone(),
            entries: vec![RingElement::zero(ring); positions.len()],
            diag: vec![RingElement::one(ring); ix.n()],
        })
    }

    pub fn ix(&self) -> &IndexSet {
        &self.ix
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn qspec(&self) -> &QuotientSpec {
        &self.qspec
    }

    pub fn positions(&self) -> Vec<(usize, usize)> {
        self.qspec.retained_positions(&self.ix)
    }

    fn pos_index(&self, i: usize, j: usize) -> Option<usize> {
        self.positions().iter().position(|&p| p == (i, j))
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&RingElement> {
        self.pos_index(i, j).map(|k| &self.entries[k])
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn diag(&self) -> &[RingElement] {
        &self.diag
    }

    pub fn diag_entry(&self, i: usize) -> &RingElement {
        &self.diag[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero()) && self.diag.iter().all(|x| x.is_one())
    }

    pub fn from_parts(
        ix: &IndexSet,
        ring: &Arc<RingSpec>,
        qspec: &QuotientSpec,
        entries: Vec<RingElement>,
        diag: Vec<RingElement>,
    ) -> Result<Self> {
        qspec.check_compatible(ix)?;
        if entries.len() != qspec.retained_positions(ix).len() || diag.len() != ix.n() {
            return Err(Error::InvalidSpec("entry vectors have the wrong length".into()));
        }
        for (pos, u) in diag.iter().enumerate() {
            let i = pos + 1;
            if !ix.contains(i) {
                if !u.is_one() {
                    return Err(Error::IndexOutOfPattern(i, i));
                }
            } else if u.is_unit().is_none() {
                return Err(Error::NotAUnit(u.to_string()));
            }
        }
        Ok(QuotientElement {
            ix: ix.clone(),
            ring: ring.clone(),
            qspec: qspec.clone(),
            entries,
            diag,
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ix != other.ix || self.ring != other.ring || self.qspec != other.qspec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// Canonical lift back to the full group: retained entries are placed,
    /// dropped entries are zero. Only meaningful when no ideal reduction is
    /// involved.
    pub fn lift(&self) -> Result<GroupElement> {
        if matches!(self.qspec, QuotientSpec::ModIdeal(_)) {
            return Err(Error::IncompatibleQuotient("cannot lift through an ideal reduction".into()));
        }
        let n = self.ix.n();
        let mut upper = vec![RingElement::zero(&self.ring); n * (n - 1) / 2];
        let positions = self.positions();
        for (k, &(i, j)) in positions.iter().enumerate() {
            let idx = (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
            upper[idx] = self.entries[k].clone();
        }
        GroupElement::from_parts(&self.ix, &self.ring, upper, self.diag.clone())
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&(i, j), r) in self.positions().iter().zip(&self.entries) {
            if !r.is_zero() {
                parts.push(format!("e({i},{j};{r})"));
            }
        }
        for i in 1..=self.ix.n() {
            let u = self.diag_entry(i);
            if !u.is_one() {
                parts.push(format!("d({i};{u})"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Project a group element into a quotient. A group homomorphism whose
/// kernel is exactly the dropped subgroup.
type EntryMap = Box<dyn Fn(&RingElement) -> Result<RingElement>>;

pub fn project(g: &GroupElement, qspec: &QuotientSpec) -> Result<QuotientElement> {
    qspec.check_compatible(g.ix())?;
    let (ring, map): (Arc<RingSpec>, EntryMap) = match qspec {
        QuotientSpec::ModIdeal(m) => {
            let target = crate::rings::residue_field_spec(g.ring(), m)?;
            let m = m.clone();
            (RingSpec::finite_field(target), Box::new(move |x| reduce_mod(x, &m)))
        }
        _ => (g.ring().clone(), Box::new(|x| Ok(x.clone()))),
    };
    let positions = qspec.retained_positions(g.ix());
    let entries: Result<Vec<RingElement>> =
        positions.iter().map(|&(i, j)| map(g.upper_entry(i, j))).collect();
    let diag: Result<Vec<RingElement>> = (1..=g.ix().n()).map(|i| map(g.diag_entry(i))).collect();
    QuotientElement::from_parts(g.ix(), &ring, qspec, entries?, diag?)
}

/// Project further down between quotients: from the full pattern to the
/// superdiagonal, or from the mod-centre pattern to the superdiagonal.
pub fn project_quotient(x: &QuotientElement, qspec: &QuotientSpec) -> Result<QuotientElement> {
    qspec.check_compatible(&x.ix)?;
    let from = x.qspec.retained_positions(&x.ix);
    let to = qspec.retained_positions(&x.ix);
    if !to.iter().all(|p| from.contains(p)) {
        return Err(Error::IncompatibleQuotient(format!(
            "cannot project from {} to {}",
            x.qspec, qspec
        )));
    }
    let entries: Vec<RingElement> =
        to.iter().map(|&(i, j)| x.entry(i, j).unwrap().clone()).collect();
    QuotientElement::from_parts(&x.ix, &x.ring, qspec, entries, x.diag.clone())
}

/// Multiplication in the quotient, accumulating products only through
/// retained chains; dropped coordinates of the factors cannot influence the
/// retained coordinates of the product (that is what makes the quotient
/// well defined).
pub fn qmultiply(a: &QuotientElement, b: &QuotientElement) -> Result<QuotientElement> {
    a.check_compatible(b)?;
    let positions = a.positions();
    let mut entries = Vec::with_capacity(positions.len());
    for &(i, j) in &positions {
        // d-conjugated right factor entry: d_i d_j^{-1} * b_{ij}
        let factor = a.diag[i - 1].mul(&a.diag[j - 1].inv_unit()?)?;
        let mut acc = a.entry(i, j).unwrap().add(&factor.mul(b.entry(i, j).unwrap())?)?;
        for k in i + 1..j {
            if let (Some(x), Some(y)) = (a.entry(i, k), b.entry(k, j)) {
                let f2 = a.diag[k - 1].mul(&a.diag[j - 1].inv_unit()?)?;
                acc = acc.add(&x.mul(&f2.mul(y)?)?)?;
            }
        }
        entries.push(acc);
    }
    let diag: Result<Vec<RingElement>> = a.diag.iter().zip(&b.diag).map(|(x, y)| x.mul(y)).collect();
    QuotientElement::from_parts(&a.ix, &a.ring, &a.qspec, entries, diag?)
}

pub fn qinverse(a: &QuotientElement) -> Result<QuotientElement> {
    let positions = a.positions();
    let n = a.ix.n();
    // unipotent inverse over retained positions, by band distance
    let mut v: Vec<Option<RingElement>> = vec![None; positions.len()];
    for dist in 1..n {
        for i in 1..=n - dist {
            let j = i + dist;
            let Some(idx) = positions.iter().position(|&p| p == (i, j)) else { continue };
            let mut acc = a.entry(i, j).unwrap().neg();
            for k in i + 1..j {
                if let Some(x) = a.entry(i, k) {
                    if let Some(kidx) = positions.iter().position(|&p| p == (k, j)) {
                        if let Some(y) = &v[kidx] {
                            acc = acc.sub(&x.mul(y)?)?;
                        }
                    }
                }
            }
            v[idx] = Some(acc);
        }
    }
    // conjugate by d^{-1} and invert the diagonal
    let mut entries = Vec::with_capacity(positions.len());
    for (&(i, j), val) in positions.iter().zip(v) {
        let val = val.unwrap();
        let factor = a.diag[i - 1].inv_unit()?.mul(&a.diag[j - 1])?;
        entries.push(factor.mul(&val)?);
    }
    let diag: Result<Vec<RingElement>> = a.diag.iter().map(|x| x.inv_unit()).collect();
    QuotientElement::from_parts(&a.ix, &a.ring, &a.qspec, entries, diag?)
}

pub fn qconjugate(g: &QuotientElement, h: &QuotientElement) -> Result<QuotientElement> {
    qmultiply(&qmultiply(h, g)?, &qinverse(h)?)
}

/// A fully enumerated finite quotient group over a finite field. Elements
/// are indexed by mixed-radix digits (entries first, then diagonal units),
/// so indices are computed arithmetically and the order is lexicographic
/// over coordinate vectors.
pub struct EnumeratedGroup {
    pub ix: IndexSet,
    pub ring: Arc<RingSpec>,
    pub qspec: QuotientSpec,
    pub field: FqSpec,
    pub elements: Vec<QuotientElement>,
    diag_positions: Vec<usize>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &QuotientElement {
        &self.elements[idx]
    }

    /// Deterministic index of an element, by its coordinate digits.
    pub fn index_of(&self, x: &QuotientElement) -> usize {
        let q = self.field.order() as usize;
        let mut idx = 0usize;
        for i in self.diag_positions.iter().rev() {
            let u = x.diag_entry(*i).as_fq().unwrap();
            let digit = (self.field.el_index(u) - 1) as usize;
            idx = idx * (q - 1) + digit;
        }
        for e in x.entries.iter().rev() {
            let digit = self.field.el_index(e.as_fq().unwrap()) as usize;
            idx = idx * q + digit;
        }
        idx
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&QuotientElement::identity(&self.ix, &self.ring, &self.qspec).unwrap())
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index_of(&qmultiply(&self.elements[a], &self.elements[b]).unwrap())
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.index_of(&qinverse(&self.elements[a]).unwrap())
    }

    /// A generating set: every elementary e_pos(c), c != 0, and every
    /// diagonal d_i(u), u != 1, as element indices.
    pub fn generator_indices(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let positions = self.qspec.retained_positions(&self.ix);
        let zero_entries = vec![RingElement::zero(&self.ring); positions.len()];
        let one_diag = vec![RingElement::one(&self.ring); self.ix.n()];
        for (k, _) in positions.iter().enumerate() {
            for c in 1..self.field.order() {
                let mut entries = zero_entries.clone();
                entries[k] =
                    RingElement::from_fq(&self.ring, self.field.el_from_index(c)).unwrap();
                let e = QuotientElement::from_parts(
                    &self.ix,
                    &self.ring,
                    &self.qspec,
                    entries,
                    one_diag.clone(),
                )
                .unwrap();
                gens.push(self.index_of(&e));
            }
        }
        for &i in &self.diag_positions {
            for c in 2..self.field.order() {
                let mut diag = one_diag.clone();
                diag[i - 1] = RingElement::from_fq(&self.ring, self.field.el_from_index(c)).unwrap();
                let e = QuotientElement::from_parts(
                    &self.ix,
                    &self.ring,
                    &self.qspec,
                    zero_entries.clone(),
                    diag,
                )
                .unwrap();
                gens.push(self.index_of(&e));
            }
        }
        gens
    }

    pub fn describe(&self) -> String {
        format!("S_{}^{}({}) {}", self.ix.n(), self.ix, self.ring, self.qspec)
    }
}

/// Enumerate every element of a finite quotient group exactly once, in
/// lexicographic coordinate order.
pub fn enumerate_finite_group(
    ix: &IndexSet,
    field: &FqSpec,
    qspec: &QuotientSpec,
    limit: u128,
) -> Result<EnumeratedGroup> {
    qspec.check_compatible(ix)?;
    if matches!(qspec, QuotientSpec::ModIdeal(_)) {
        return Err(Error::IncompatibleQuotient(
            "enumerate over the residue field directly instead of through mod-ideal".into(),
        ));
    }
    field.validate()?;
    let ring = RingSpec::finite_field(field.clone());
    let q = field.order() as u128;
    let positions = qspec.retained_positions(ix);
    let diag_positions: Vec<usize> = ix.members().to_vec();
    let size = q
        .checked_pow(positions.len() as u32)
        .and_then(|s| s.checked_mul((q - 1).checked_pow(diag_positions.len() as u32)?))
        .ok_or(Error::TooLarge(u128::MAX, limit))?;
    if size > limit {
        return Err(Error::TooLarge(size, limit));
    }
    let mut elements = Vec::with_capacity(size as usize);
    let qe = q as usize;
    let mut counter = vec![0usize; positions.len() + diag_positions.len()];
    loop {
        let entries: Vec<RingElement> = counter[..positions.len()]
            .iter()
            .map(|&d| RingElement::from_fq(&ring, field.el_from_index(d as u64)).unwrap())
            .collect();
        let mut diag = vec![RingElement::one(&ring); ix.n()];
        for (slot, &i) in diag_positions.iter().enumerate() {
            let d = counter[positions.len() + slot];
            diag[i - 1] =
                RingElement::from_fq(&ring, field.el_from_index((d + 1) as u64)).unwrap();
        }
        elements.push(QuotientElement::from_parts(ix, &ring, qspec, entries, diag)?);
        // odometer
        let mut pos = 0;
        loop {
            if pos == counter.len() {
                let g = EnumeratedGroup {
                    ix: ix.clone(),
                    ring,
                    qspec: qspec.clone(),
                    field: field.clone(),
                    elements,
                    diag_positions,
                };
                return Ok(g);
            }
            let radix = if pos < positions.len() { qe } else { qe - 1 };
            counter[pos] += 1;
            if counter[pos] < radix {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}
