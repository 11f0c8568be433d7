//! The groups S_n^I(R) = U_n(R) ⋊ T_I(R): upper unitriangular matrices
//! extended by diagonal matrices whose entries outside the index set I are
//! pinned to 1. Elements are stored as (unipotent, diagonal) pairs so the
//! pattern invariants hold by construction; a dense matrix oracle lives in
//! the tests.

pub mod fingen;
pub mod quotient;
pub mod serial;

use crate::error::{Error, Result};
use crate::rings::{RingElement, RingSpec};
use std::fmt;
use std::sync::Arc;

pub use fingen::{is_finitely_generated, FinGenVerdict, RingFacts};
pub use quotient::{
    enumerate_finite_group, project, project_quotient, qconjugate, qinverse, qmultiply,
    EnumeratedGroup, QuotientElement, QuotientSpec,
};

/// Matrix size n together with the subset I of {1..n} whose diagonal entries
/// may vary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec("matrix size must be at least 2".into()));
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&i| i < 1 || i > n) {
            return Err(Error::InvalidSpec("index set entries must lie in 1..=n".into()));
        }
        Ok(IndexSet { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.contains(*i)).collect()
    }

    /// The no-gaps condition: whenever i is outside I, i+1 must be in I.
    pub fn ng_condition(&self) -> bool {
        (1..self.n).all(|i| self.contains(i) || self.contains(i + 1))
    }

    /// Positions of strictly upper triangular entries, row-major.
    pub fn upper_positions(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                v.push((i, j));
            }
        }
        v
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.members.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

pub fn ng_condition(ix: &IndexSet) -> bool {
    ix.ng_condition()
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// An element u·d of S_n^I(R): `upper` holds the strictly upper entries of
/// the unipotent factor u row-major, `diag` the diagonal factor d with entry
/// 1 at every position outside I.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    ix: IndexSet,
    ring: Arc<RingSpec>,
    upper: Vec<RingElement>,
    diag: Vec<RingElement>,
}

impl GroupElement {
    pub fn identity(ix: &IndexSet, ring: &Arc<RingSpec>) -> Self {
        let n = ix.n();
        GroupElement {
            ix: ix.clone(),
            ring: ring.clone(),
            upper: vec![RingElement::zero(ring); n * (n - 1) / 2],
            diag: vec![RingElement::one(ring); n],
        }
    }

    pub fn ix(&self) -> &IndexSet {
        &self.ix
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn upper_entry(&self, i: usize, j: usize) -> &RingElement {
        &self.upper[upper_index(self.ix.n(), i, j)]
    }

    pub fn diag_entry(&self, i: usize) -> &RingElement {
        &self.diag[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.upper.iter().all(|x| x.is_zero()) && self.diag.iter().all(|x| x.is_one())
    }

    pub fn unipotent_part(&self) -> Self {
        GroupElement {
            ix: self.ix.clone(),
            ring: self.ring.clone(),
            upper: self.upper.clone(),
            diag: vec![RingElement::one(&self.ring); self.ix.n()],
        }
    }

    pub fn diagonal_part(&self) -> Self {
        GroupElement {
            ix: self.ix.clone(),
            ring: self.ring.clone(),
            upper: vec![RingElement::zero(&self.ring); self.upper.len()],
            diag: self.diag.clone(),
        }
    }

    /// Build an element from explicit parts, enforcing the pattern
    /// invariants: diagonal entries must be units, entries outside I must be 1.
    pub fn from_parts(
        ix: &IndexSet,
        ring: &Arc<RingSpec>,
        upper: Vec<RingElement>,
        diag: Vec<RingElement>,
    ) -> Result<Self> {
        let n = ix.n();
        if upper.len() != n * (n - 1) / 2 || diag.len() != n {
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
        Ok(GroupElement { ix: ix.clone(), ring: ring.clone(), upper, diag })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ix != other.ix || self.ring != other.ring {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// Dense n x n matrix u·d, used by the oracle tests and the 3x3 maps.
    pub fn dense(&self) -> Vec<Vec<RingElement>> {
        let n = self.ix.n();
        let zero = RingElement::zero(&self.ring);
        let mut m = vec![vec![zero; n]; n];
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    m[i - 1][j - 1] = self.diag[i - 1].clone();
                } else if i < j {
                    m[i - 1][j - 1] =
                        self.upper_entry(i, j).mul(&self.diag[j - 1]).unwrap();
                }
            }
        }
        m
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let n = self.ix.n();
        for i in 1..=n {
            for j in i + 1..=n {
                let r = self.upper_entry(i, j);
                if !r.is_zero() {
                    parts.push(format!("e({i},{j};{r})"));
                }
            }
        }
        for i in 1..=n {
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

/// The elementary generator e_{i,j}(r).
pub fn elementary(
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    i: usize,
    j: usize,
    r: RingElement,
) -> Result<GroupElement> {
    if !(1 <= i && i < j && j <= ix.n()) {
        return Err(Error::IndexOutOfPattern(i, j));
    }
    if r.spec() != ring {
        return Err(Error::SpecMismatch);
    }
    let mut g = GroupElement::identity(ix, ring);
    g.upper[upper_index(ix.n(), i, j)] = r;
    Ok(g)
}

/// The diagonal generator d_i(u); i must lie in I and u must be a unit.
pub fn diagonal_gen(
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    i: usize,
    u: RingElement,
) -> Result<GroupElement> {
    if !(1 <= i && i <= ix.n()) || !ix.contains(i) {
        return Err(Error::IndexOutOfPattern(i, i));
    }
    if u.spec() != ring {
        return Err(Error::SpecMismatch);
    }
    if u.is_unit().is_none() {
        return Err(Error::NotAUnit(u.to_string()));
    }
    let mut g = GroupElement::identity(ix, ring);
    g.diag[i - 1] = u;
    Ok(g)
}

/// A full diagonal matrix in T_I; every listed entry must be a unit and
/// entries outside I must be 1.
pub fn diagonal(ix: &IndexSet, ring: &Arc<RingSpec>, entries: Vec<RingElement>) -> Result<GroupElement> {
    GroupElement::from_parts(
        ix,
        ring,
        vec![RingElement::zero(ring); ix.n() * (ix.n() - 1) / 2],
        entries,
    )
}

// Unipotent factor products. For strictly upper triangular u, v (stored
// without the unit diagonal):  (uv)_{ij} = u_{ij} + v_{ij} + sum_k u_{ik} v_{kj}.
fn unipotent_mul(ix: &IndexSet, x: &[RingElement], y: &[RingElement]) -> Result<Vec<RingElement>> {
    let n = ix.n();
    let mut out = Vec::with_capacity(x.len());
    for i in 1..=n {
        for j in i + 1..=n {
            let mut acc = x[upper_index(n, i, j)].add(&y[upper_index(n, i, j)])?;
            for k in i + 1..j {
                let prod = x[upper_index(n, i, k)].mul(&y[upper_index(n, k, j)])?;
                acc = acc.add(&prod)?;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

// Inverse of a unipotent factor by back-substitution on the band distance.
fn unipotent_inv(ix: &IndexSet, ring: &Arc<RingSpec>, x: &[RingElement]) -> Result<Vec<RingElement>> {
    let n = ix.n();
    let mut v = vec![RingElement::zero(ring); x.len()];
    for dist in 1..n {
        for i in 1..=n - dist {
            let j = i + dist;
            let mut acc = x[upper_index(n, i, j)].neg();
            for k in i + 1..j {
                let prod = x[upper_index(n, i, k)].mul(&v[upper_index(n, k, j)])?;
                acc = acc.sub(&prod)?;
            }
            v[upper_index(n, i, j)] = acc;
        }
    }
    Ok(v)
}

// Conjugation of a unipotent factor by a diagonal matrix: entry (i,j)
// becomes d_i d_j^{-1} x_{ij}.
fn diag_conj_upper(
    ix: &IndexSet,
    diag: &[RingElement],
    x: &[RingElement],
    invert: bool,
) -> Result<Vec<RingElement>> {
    let n = ix.n();
    let mut out = Vec::with_capacity(x.len());
    for i in 1..=n {
        for j in i + 1..=n {
            let di = &diag[i - 1];
            let dj = &diag[j - 1];
            let factor = if invert {
                di.inv_unit()?.mul(dj)?
            } else {
                di.mul(&dj.inv_unit()?)?
            };
            out.push(factor.mul(&x[upper_index(n, i, j)])?);
        }
    }
    Ok(out)
}

/// Group multiplication: (u1 d1)(u2 d2) = [u1 · (d1 u2 d1^{-1})] · (d1 d2).
pub fn multiply(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    a.check_compatible(b)?;
    let conj = diag_conj_upper(&a.ix, &a.diag, &b.upper, false)?;
    let upper = unipotent_mul(&a.ix, &a.upper, &conj)?;
    let diag: Result<Vec<RingElement>> =
        a.diag.iter().zip(&b.diag).map(|(x, y)| x.mul(y)).collect();
    Ok(GroupElement { ix: a.ix.clone(), ring: a.ring.clone(), upper, diag: diag? })
}

/// Group inverse: (u d)^{-1} = (d^{-1} u^{-1} d) · d^{-1}.
pub fn inverse(a: &GroupElement) -> Result<GroupElement> {
    let uinv = unipotent_inv(&a.ix, &a.ring, &a.upper)?;
    let upper = diag_conj_upper(&a.ix, &a.diag, &uinv, true)?;
    let diag: Result<Vec<RingElement>> = a.diag.iter().map(|x| x.inv_unit()).collect();
    Ok(GroupElement { ix: a.ix.clone(), ring: a.ring.clone(), upper, diag: diag? })
}

/// [a, b] = a b a^{-1} b^{-1}.
pub fn commutator(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    let ab = multiply(a, b)?;
    let ab_ainv = multiply(&ab, &inverse(a)?)?;
    multiply(&ab_ainv, &inverse(b)?)
}

/// μ(g, h) = h g h^{-1}.
pub fn conjugate(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    multiply(&multiply(h, g)?, &inverse(h)?)
}

/// Left-normed iterated commutator [[x, y], y, ..., y] with `count`
/// occurrences of y.
pub fn iterated_commutator(x: &GroupElement, y: &GroupElement, count: u32) -> Result<GroupElement> {
    if count == 0 {
        return Err(Error::PreconditionUnmet("iterated commutator needs at least one step".into()));
    }
    let mut acc = commutator(x, y)?;
    for _ in 1..count {
        acc = commutator(&acc, y)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingSpec;

    fn zring() -> Arc<RingSpec> {
        RingSpec::integers()
    }

    #[test]
    fn ng_condition_examples() {
        assert!(IndexSet::new(4, &[2, 3]).unwrap().ng_condition());
        assert!(!IndexSet::new(3, &[1]).unwrap().ng_condition());
        assert!(!IndexSet::new(2, &[]).unwrap().ng_condition());
        assert!(IndexSet::new(2, &[1]).unwrap().ng_condition());
    }

    #[test]
    fn generator_edge_cases() {
        let ring = zring();
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let e = elementary(&ix, &ring, 1, 2, RingElement::zero(&ring)).unwrap();
        assert!(e.is_identity());
        let d = diagonal_gen(&ix, &ring, 2, RingElement::one(&ring)).unwrap();
        assert!(d.is_identity());
        // d_1(u) with 1 outside I
        let err = diagonal_gen(&ix, &ring, 1, RingElement::from_i64(&ring, -1));
        assert!(matches!(err, Err(Error::IndexOutOfPattern(1, 1))));
        let err = elementary(&ix, &ring, 3, 2, RingElement::one(&ring));
        assert!(matches!(err, Err(Error::IndexOutOfPattern(3, 2))));
    }

    #[test]
    fn elementary_additivity() {
        let ring = zring();
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let r = RingElement::from_i64(&ring, 5);
        let s = RingElement::from_i64(&ring, -7);
        let lhs = multiply(
            &elementary(&ix, &ring, 1, 2, r.clone()).unwrap(),
            &elementary(&ix, &ring, 1, 2, s.clone()).unwrap(),
        )
        .unwrap();
        let rhs = elementary(&ix, &ring, 1, 2, r.add(&s).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_of_elementaries() {
        let ring = zring();
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let r = RingElement::from_i64(&ring, 3);
        let s = RingElement::from_i64(&ring, 4);
        let a = elementary(&ix, &ring, 1, 2, r.clone()).unwrap();
        let b = elementary(&ix, &ring, 2, 3, s.clone()).unwrap();
        let c = commutator(&a, &b).unwrap();
        let expect = elementary(&ix, &ring, 1, 3, r.mul(&s).unwrap()).unwrap();
        assert_eq!(c, expect);

        let b2 = elementary(&ix, &ring, 3, 4, s).unwrap();
        assert!(commutator(&a, &b2).unwrap().is_identity());
        assert!(commutator(&a, &GroupElement::identity(&ix, &ring)).unwrap().is_identity());
    }

    #[test]
    fn diagonal_conjugation_relation() {
        let ring = RingSpec::s_integers(&[2, 3]);
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let u = RingElement::from_i64(&ring, 3);
        let r = RingElement::from_i64(&ring, 7);
        let d = diagonal_gen(&ix, &ring, 2, u.clone()).unwrap();
        // mu(e_{2,3}(r), d_2(u)) = e_{2,3}(u r)
        let lhs = conjugate(&elementary(&ix, &ring, 2, 3, r.clone()).unwrap(), &d).unwrap();
        assert_eq!(lhs, elementary(&ix, &ring, 2, 3, u.mul(&r).unwrap()).unwrap());
        // mu(e_{2,3}(r), d_3(u)) = e_{2,3}(u^{-1} r)
        let d3 = diagonal_gen(&ix, &ring, 3, u.clone()).unwrap();
        let lhs = conjugate(&elementary(&ix, &ring, 2, 3, r.clone()).unwrap(), &d3).unwrap();
        assert_eq!(
            lhs,
            elementary(&ix, &ring, 2, 3, u.inv_unit().unwrap().mul(&r).unwrap()).unwrap()
        );
        // mu(g, 1) = g
        let g = elementary(&ix, &ring, 1, 4, r).unwrap();
        assert_eq!(conjugate(&g, &GroupElement::identity(&ix, &ring)).unwrap(), g);
    }

    #[test]
    fn iterated_commutator_example() {
        // over Z[1/6], n=4, I={2,3}, d = d_2(3), x = e_{2,4}(1), count 5
        let ring = RingSpec::s_integers(&[2, 3]);
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let d = diagonal_gen(&ix, &ring, 2, RingElement::from_i64(&ring, 3)).unwrap();
        let x = elementary(&ix, &ring, 2, 4, RingElement::one(&ring)).unwrap();
        let got = iterated_commutator(&x, &d, 5).unwrap();
        let expect = elementary(&ix, &ring, 2, 4, RingElement::from_i64(&ring, -32)).unwrap();
        assert_eq!(got, expect);
        // count = 1 reduces to the plain commutator
        assert_eq!(iterated_commutator(&x, &d, 1).unwrap(), commutator(&x, &d).unwrap());
    }
}
