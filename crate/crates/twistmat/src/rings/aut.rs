//! Ring automorphisms: descriptors, their action on elements, the bounded
//! search for automorphisms of localized polynomial rings, the invariant
//! transcendental element, and reduction modulo maximal ideals.

use super::fq::{smallest_monic_irreducible_coprime, FqElem, FqPoly, FqSpec};
use super::{RingElement, RingSpec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Search bound used when an operation needs the automorphism list of a
/// localized ring but no explicit bound was supplied.
pub const DEFAULT_AUT_SEARCH_BOUND: i64 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingAutomorphismDescriptor {
    Identity,
    /// sqrt(d) -> -sqrt(d) on a quadratic ring.
    QuadraticConjugation,
    /// x -> x^(p^k) on a finite field.
    Frobenius(usize),
    /// t -> t^a f^b, f -> t^c f^d on a localized ring with exactly one
    /// inverted polynomial f besides t. Only valid once ad - bc = ±1 and the
    /// defining identity for f has been verified.
    MonomialCandidate { a: i64, b: i64, c: i64, d: i64 },
}

impl RingAutomorphismDescriptor {
    pub fn inverse(&self) -> RingAutomorphismDescriptor {
        use RingAutomorphismDescriptor::*;
        match self {
            Identity => Identity,
            QuadraticConjugation => QuadraticConjugation,
            Frobenius(k) => Frobenius(*k), // order applied later against field degree
            MonomialCandidate { a, b, c, d } => {
                let det = a * d - b * c;
                // det = ±1, inverse = det * adjugate
                MonomialCandidate { a: det * d, b: -det * b, c: -det * c, d: det * a }
            }
        }
    }

    /// The inverse of Frobenius(k) depends on the field degree; this resolves
    /// it given the spec.
    pub fn inverse_for(&self, spec: &RingSpec) -> RingAutomorphismDescriptor {
        if let (RingAutomorphismDescriptor::Frobenius(k), Some(fq)) = (self, spec.base_field()) {
            let deg = fq.degree().max(1);
            return RingAutomorphismDescriptor::Frobenius((deg - k % deg) % deg);
        }
        self.inverse()
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, RingAutomorphismDescriptor::Identity)
            || matches!(self, RingAutomorphismDescriptor::Frobenius(0))
            || matches!(
                self,
                RingAutomorphismDescriptor::MonomialCandidate { a: 1, b: 0, c: 0, d: 1 }
            )
    }
}

/// Apply a ring automorphism descriptor to an element. Ring-homomorphic and
/// bijective for every descriptor this crate hands out.
pub fn apply_ring_aut(desc: &RingAutomorphismDescriptor, a: &RingElement) -> Result<RingElement> {
    let spec = a.spec().clone();
    match desc {
        RingAutomorphismDescriptor::Identity => Ok(a.clone()),
        RingAutomorphismDescriptor::QuadraticConjugation => match &*spec {
            RingSpec::Quadratic { .. } => {
                let (x, y) = a.as_quad().unwrap();
                Ok(RingElement::make_quad(&spec, x.clone(), -y))
            }
            _ => Err(Error::SpecMismatch),
        },
        RingAutomorphismDescriptor::Frobenius(k) => match &*spec {
            RingSpec::FiniteField(fq) => {
                let el = a.as_fq().unwrap();
                RingElement::from_fq(&spec, fq.el_frobenius(el, *k))
            }
            _ => Err(Error::SpecMismatch),
        },
        RingAutomorphismDescriptor::MonomialCandidate { a: ea, b: eb, c: ec, d: ed } => {
            let (base, f) = monomial_context(&spec)?;
            let (num, exps) = a.as_poly().unwrap();
            if a.is_zero() {
                return Ok(RingElement::zero(&spec));
            }
            let t_img = monomial(&spec, *ea, *eb);
            let f_img = monomial(&spec, *ec, *ed);
            // numerator substitution: sum of coeff * (t-image)^i
            let mut acc = RingElement::zero(&spec);
            let mut t_pow = RingElement::one(&spec);
            for coeff in &num.coeffs {
                if !base.el_is_zero(coeff) {
                    let c = RingElement::make_poly(
                        &spec,
                        FqPoly::constant(&base, coeff.clone()),
                        vec![0, 0],
                    );
                    acc = acc.add(&c.mul(&t_pow)?)?;
                }
                t_pow = t_pow.mul(&t_img)?;
            }
            let _ = f;
            let gens_img = [&t_img, &f_img];
            for (g, &e) in gens_img.iter().zip(exps) {
                acc = acc.mul(&pow_i64(g, e)?)?;
            }
            Ok(acc)
        }
    }
}

fn pow_i64(a: &RingElement, e: i64) -> Result<RingElement> {
    if e >= 0 {
        a.pow(e as u32)
    } else {
        a.inv_unit()?.pow((-e) as u32)
    }
}

/// t^i f^j as an element of the localized ring (both are units there).
fn monomial(spec: &Arc<RingSpec>, i: i64, j: i64) -> RingElement {
    let t = RingElement::var_t(spec).unwrap();
    let gens = spec.poly_generators();
    let f = RingElement::make_poly(spec, gens[1].clone(), vec![0, 0]);
    pow_i64(&t, i).unwrap().mul(&pow_i64(&f, j).unwrap()).unwrap()
}

fn monomial_context(spec: &RingSpec) -> Result<(FqSpec, FqPoly)> {
    match spec {
        RingSpec::LocalizedPoly { base, t_inverted: true, inverted } if inverted.len() == 1 => {
            Ok((base.clone(), inverted[0].clone()))
        }
        _ => Err(Error::UnsupportedSpec(
            "monomial automorphisms need t and exactly one polynomial inverted".into(),
        )),
    }
}

/// All candidates (a,b,c,d) in the box [-bound, bound]^4 with ad - bc = ±1 whose
/// induced map t -> t^a f^b, f -> t^c f^d satisfies the defining identity
/// f(t^a f^b) = t^c f^d in the fraction field; each survivor is additionally
/// verified to be a ring homomorphism on 50 random element pairs. The
/// identity tuple is always included.
pub fn ring_aut_search(
    spec: &Arc<RingSpec>,
    bound: i64,
) -> Result<Vec<RingAutomorphismDescriptor>> {
    let (base, f) = monomial_context(spec)?;
    let t = FqPoly::t(&base);
    let t_minus_one = FqPoly {
        coeffs: vec![base.el_neg(&base.el_one()), base.el_one()],
    };
    if f == t || f == t_minus_one {
        return Err(Error::UnsupportedSpec("f must differ from t and t-1".into()));
    }
    let mut out = vec![RingAutomorphismDescriptor::MonomialCandidate { a: 1, b: 0, c: 0, d: 1 }];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7157_0001);
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    if (a, b, c, d) == (1, 0, 0, 1) {
                        continue;
                    }
                    let det = a * d - b * c;
                    if det != 1 && det != -1 {
                        continue;
                    }
                    let cand = RingAutomorphismDescriptor::MonomialCandidate { a, b, c, d };
                    if !monomial_defining_identity_holds(spec, &cand) {
                        continue;
                    }
                    if !homomorphism_on_samples(spec, &cand, 50, &mut rng) {
                        continue;
                    }
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}

fn monomial_defining_identity_holds(
    spec: &Arc<RingSpec>,
    cand: &RingAutomorphismDescriptor,
) -> bool {
    let (a, b, c, d) = match cand {
        RingAutomorphismDescriptor::MonomialCandidate { a, b, c, d } => (*a, *b, *c, *d),
        _ => return false,
    };
    let gens = spec.poly_generators();
    // f(t^a f^b), by raw coefficient substitution, must equal t^c f^d
    let lhs = substitute_poly(spec, &gens[1], a, b);
    let rhs = monomial(spec, c, d);
    lhs == rhs
}

/// p(t^a f^b) computed coefficient by coefficient, with no reliance on the
/// canonical-form shortcut; used to test the defining identity itself.
fn substitute_poly(spec: &Arc<RingSpec>, poly: &FqPoly, a: i64, b: i64) -> RingElement {
    let base = spec.base_field().unwrap().clone();
    let t_img = monomial(spec, a, b);
    let mut acc = RingElement::zero(spec);
    let mut t_pow = RingElement::one(spec);
    for coeff in &poly.coeffs {
        if !base.el_is_zero(coeff) {
            let c =
                RingElement::make_poly(spec, FqPoly::constant(&base, coeff.clone()), vec![0, 0]);
            acc = acc.add(&c.mul(&t_pow).unwrap()).unwrap();
        }
        t_pow = t_pow.mul(&t_img).unwrap();
    }
    acc
}

fn homomorphism_on_samples(
    spec: &Arc<RingSpec>,
    cand: &RingAutomorphismDescriptor,
    pairs: usize,
    rng: &mut ChaCha8Rng,
) -> bool {
    for _ in 0..pairs {
        let x = crate::sampling::random_element(spec, rng);
        let y = crate::sampling::random_element(spec, rng);
        let fx = apply_ring_aut(cand, &x).unwrap();
        let fy = apply_ring_aut(cand, &y).unwrap();
        let sum = apply_ring_aut(cand, &x.add(&y).unwrap()).unwrap();
        let prod = apply_ring_aut(cand, &x.mul(&y).unwrap()).unwrap();
        if sum != fx.add(&fy).unwrap() || prod != fx.mul(&fy).unwrap() {
            return false;
        }
    }
    true
}

/// The ring automorphism descriptors this crate can produce for a spec. For
/// localized rings with t and exactly one f inverted this runs the bounded
/// monomial search; everywhere else the list is the closed form.
pub fn ring_aut_descriptors(
    spec: &Arc<RingSpec>,
    bound: i64,
) -> Result<Vec<RingAutomorphismDescriptor>> {
    match &**spec {
        RingSpec::Integers | RingSpec::SIntegers { .. } => {
            Ok(vec![RingAutomorphismDescriptor::Identity])
        }
        RingSpec::Quadratic { .. } => Ok(vec![
            RingAutomorphismDescriptor::Identity,
            RingAutomorphismDescriptor::QuadraticConjugation,
        ]),
        RingSpec::FiniteField(fq) => {
            Ok((0..fq.degree()).map(RingAutomorphismDescriptor::Frobenius).collect())
        }
        RingSpec::PolyRing { .. } => Ok(vec![RingAutomorphismDescriptor::Identity]),
        RingSpec::LocalizedPoly { t_inverted, inverted, .. } => {
            if *t_inverted && inverted.len() == 1 {
                ring_aut_search(spec, bound)
            } else {
                Ok(vec![RingAutomorphismDescriptor::Identity])
            }
        }
    }
}

/// A non-unit element fixed by every descriptor `ring_aut_descriptors`
/// returns: the product of the orbit of the smallest monic irreducible g
/// coprime to t and all inverted polynomials.
pub fn fixed_transcendental(spec: &Arc<RingSpec>) -> Result<RingElement> {
    let base = match &**spec {
        RingSpec::PolyRing { base } => base.clone(),
        RingSpec::LocalizedPoly { base, .. } => base.clone(),
        _ => {
            return Err(Error::UnsupportedSpec(
                "fixed transcendental element needs a polynomial-type ring".into(),
            ))
        }
    };
    let mut avoid = vec![FqPoly::t(&base)];
    avoid.extend(spec.poly_generators());
    let g = smallest_monic_irreducible_coprime(&base, &avoid);
    let g_elem = match &**spec {
        RingSpec::PolyRing { .. } => RingElement::from_poly(spec, g)?,
        _ => {
            let n = spec.poly_generators().len();
            RingElement::make_poly(spec, g, vec![0; n])
        }
    };
    let descriptors = ring_aut_descriptors(spec, DEFAULT_AUT_SEARCH_BOUND)?;
    let mut x = RingElement::one(spec);
    let mut images = Vec::new();
    for desc in &descriptors {
        let img = apply_ring_aut(desc, &g_elem)?;
        if !images.contains(&img) {
            images.push(img);
        }
    }
    for img in images {
        x = x.mul(&img)?;
    }
    Ok(x)
}

/// A maximal ideal to reduce by.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Modulus {
    Prime(u64),
    Poly(FqPoly),
}

/// The finite field a reduction lands in.
pub fn residue_field_spec(spec: &RingSpec, modulus: &Modulus) -> Result<FqSpec> {
    match (spec, modulus) {
        (RingSpec::Integers, Modulus::Prime(p)) | (RingSpec::Quadratic { .. }, Modulus::Prime(p)) => {
            let fq = FqSpec::prime_field(*p);
            fq.validate()?;
            Ok(fq)
        }
        (RingSpec::SIntegers { primes }, Modulus::Prime(p)) => {
            if primes.contains(p) {
                return Err(Error::IdealNotCoprime(format!("{p} is inverted")));
            }
            let fq = FqSpec::prime_field(*p);
            fq.validate()?;
            Ok(fq)
        }
        (RingSpec::PolyRing { base }, Modulus::Poly(g))
        | (RingSpec::LocalizedPoly { base, .. }, Modulus::Poly(g)) => {
            if base.degree() != 1 {
                return Err(Error::UnsupportedSpec(
                    "reduction is only implemented over prime base fields".into(),
                ));
            }
            if !g.is_monic(base) || !g.is_irreducible(base) {
                return Err(Error::InvalidSpec("reduction modulus must be monic irreducible".into()));
            }
            for gen in spec.poly_generators() {
                if gen == *g {
                    return Err(Error::IdealNotCoprime(format!("{} is inverted", g.display(base))));
                }
            }
            let coeffs: Vec<u64> = g.coeffs.iter().map(|c| c[0]).collect();
            Ok(FqSpec::extension(base.p, coeffs))
        }
        _ => Err(Error::UnsupportedSpec("modulus kind does not match the ring".into())),
    }
}

fn bigint_mod_p(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.try_into().unwrap()
}

/// Smallest square root of d modulo an odd prime, if one exists.
pub fn sqrt_mod_p(d: i64, p: u64) -> Option<u64> {
    let dm = BigInt::from(d).mod_floor(&BigInt::from(p));
    let dm: u64 = dm.try_into().unwrap();
    (0..p).find(|&s| (s as u128 * s as u128) % p as u128 == dm as u128)
}

/// Reduce an element modulo a maximal ideal, landing in the residue field.
/// A ring homomorphism; units map to units.
pub fn reduce_mod(a: &RingElement, modulus: &Modulus) -> Result<RingElement> {
    let spec = a.spec();
    let target_fq = residue_field_spec(spec, modulus)?;
    let target = RingSpec::finite_field(target_fq.clone());
    match (&**spec, modulus) {
        (RingSpec::Integers, Modulus::Prime(p)) => {
            let n = a.as_int().unwrap();
            RingElement::from_fq(&target, target_fq.el_from_u64(bigint_mod_p(n, *p)))
        }
        (RingSpec::SIntegers { primes }, Modulus::Prime(p)) => {
            let (num, exps) = a.as_sint().unwrap();
            let mut acc = target_fq.el_from_u64(bigint_mod_p(num, *p));
            for (&q, &e) in primes.iter().zip(exps) {
                let mut base_el = target_fq.el_from_u64(q % p);
                if e < 0 {
                    base_el = target_fq.el_inv(&base_el)?;
                }
                let pw = target_fq.el_pow(&base_el, e.unsigned_abs() as u128);
                acc = target_fq.el_mul(&acc, &pw);
            }
            RingElement::from_fq(&target, acc)
        }
        (RingSpec::Quadratic { d }, Modulus::Prime(p)) => {
            if *p == 2 {
                return Err(Error::UnsupportedSpec("reduction of a quadratic ring needs an odd prime".into()));
            }
            let s = sqrt_mod_p(*d, *p).ok_or(Error::NonResidue(*d, *p))?;
            let (x, y) = a.as_quad().unwrap();
            let xv = target_fq.el_from_u64(bigint_mod_p(x, *p));
            let yv = target_fq.el_from_u64(bigint_mod_p(y, *p));
            let sv = target_fq.el_from_u64(s);
            let acc = target_fq.el_add(&xv, &target_fq.el_mul(&yv, &sv));
            RingElement::from_fq(&target, acc)
        }
        (RingSpec::PolyRing { base }, Modulus::Poly(g))
        | (RingSpec::LocalizedPoly { base, .. }, Modulus::Poly(g)) => {
            let (num, exps) = a.as_poly().unwrap();
            let reduce_poly = |poly: &FqPoly| -> FqElem {
                let (_, r) = poly.divmod(base, g);
                let mut v = vec![0u64; target_fq.degree()];
                for (i, c) in r.coeffs.iter().enumerate() {
                    v[i] = c[0];
                }
                v
            };
            let mut acc = reduce_poly(num);
            for (gen, &e) in spec.poly_generators().iter().zip(exps) {
                let mut gv = reduce_poly(gen);
                if target_fq.el_is_zero(&gv) {
                    return Err(Error::IdealNotCoprime(format!(
                        "inverted generator {} vanishes mod {}",
                        gen.display(base),
                        g.display(base)
                    )));
                }
                if e < 0 {
                    gv = target_fq.el_inv(&gv)?;
                }
                let pw = target_fq.el_pow(&gv, e.unsigned_abs() as u128);
                acc = target_fq.el_mul(&acc, &pw);
            }
            RingElement::from_fq(&target, acc)
        }
        _ => Err(Error::UnsupportedSpec("modulus kind does not match the ring".into())),
    }
}

/// Verify that a descriptor leaves every generator of the reduction ideal in
/// the ideal, i.e. that it descends to the residue field.
pub fn descriptor_preserves_ideal(
    spec: &Arc<RingSpec>,
    desc: &RingAutomorphismDescriptor,
    modulus: &Modulus,
) -> Result<bool> {
    let gens: Vec<RingElement> = match (&**spec, modulus) {
        (RingSpec::Integers, Modulus::Prime(p)) | (RingSpec::SIntegers { .. }, Modulus::Prime(p)) => {
            vec![RingElement::from_i64(spec, *p as i64)]
        }
        (RingSpec::Quadratic { d }, Modulus::Prime(p)) => {
            let s = sqrt_mod_p(*d, *p).ok_or(Error::NonResidue(*d, *p))? as i64;
            vec![
                RingElement::from_i64(spec, *p as i64),
                RingElement::quad(spec, -s, 1)?, // sqrt(d) - s
            ]
        }
        (RingSpec::PolyRing { .. }, Modulus::Poly(g))
        | (RingSpec::LocalizedPoly { .. }, Modulus::Poly(g)) => {
            vec![RingElement::from_poly(spec, g.clone())?]
        }
        _ => return Err(Error::UnsupportedSpec("modulus kind does not match the ring".into())),
    };
    for gen in gens {
        let img = apply_ring_aut(desc, &gen)?;
        if !reduce_mod(&img, modulus)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The descriptor induced on the residue field by one that preserves the
/// ideal: always a Frobenius power, found by matching on the image of a
/// field generator.
pub fn induce_descriptor_mod(
    spec: &Arc<RingSpec>,
    desc: &RingAutomorphismDescriptor,
    modulus: &Modulus,
) -> Result<RingAutomorphismDescriptor> {
    if !descriptor_preserves_ideal(spec, desc, modulus)? {
        return Err(Error::KernelNotInvariant(format!("{desc:?} moves the reduction ideal")));
    }
    let target_fq = residue_field_spec(spec, modulus)?;
    let probe = match &**spec {
        RingSpec::PolyRing { .. } | RingSpec::LocalizedPoly { .. } => RingElement::var_t(spec)?,
        RingSpec::Quadratic { .. } => RingElement::sqrt_d(spec)?,
        _ => return Ok(RingAutomorphismDescriptor::Identity),
    };
    let probe_red = reduce_mod(&probe, modulus)?;
    let image_red = reduce_mod(&apply_ring_aut(desc, &probe)?, modulus)?;
    let pv = probe_red.as_fq().unwrap();
    let iv = image_red.as_fq().unwrap();
    for k in 0..target_fq.degree().max(1) {
        if target_fq.el_frobenius(pv, k) == *iv {
            return Ok(RingAutomorphismDescriptor::Frobenius(k));
        }
    }
    Err(Error::NotAnAutomorphism("induced residue map is not a field automorphism".into()))
}

/// Deterministic exhaustive check that the survivor set of a search is closed
/// under composition and inverse inside the bound; used by tests.
pub fn monomial_matrix(desc: &RingAutomorphismDescriptor) -> Option<[i64; 4]> {
    match desc {
        RingAutomorphismDescriptor::MonomialCandidate { a, b, c, d } => Some([*a, *b, *c, *d]),
        _ => None,
    }
}

pub fn random_descriptor_fixed_check(
    desc: &RingAutomorphismDescriptor,
    samples: &[RingElement],
) -> Result<Vec<RingElement>> {
    let mut moved = Vec::new();
    for s in samples {
        if apply_ring_aut(desc, s)? != *s {
            moved.push(s.clone());
        }
    }
    Ok(moved)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf_spec() -> Arc<RingSpec> {
        let base = FqSpec::prime_field(2);
        let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
        RingSpec::localized_poly(base, true, vec![f])
    }

    #[test]
    fn quad_conjugation_action() {
        let spec = RingSpec::quadratic(2);
        let x = RingElement::quad(&spec, 3, 1).unwrap();
        let y = apply_ring_aut(&RingAutomorphismDescriptor::QuadraticConjugation, &x).unwrap();
        assert_eq!(y, RingElement::quad(&spec, 3, -1).unwrap());
    }

    #[test]
    fn frobenius_on_f4() {
        let f4 = FqSpec::extension(2, vec![1, 1, 1]);
        let spec = RingSpec::finite_field(f4.clone());
        let s = RingElement::field_gen(&spec).unwrap();
        let img = apply_ring_aut(&RingAutomorphismDescriptor::Frobenius(1), &s).unwrap();
        // s^2 = s + 1
        assert_eq!(img.as_fq().unwrap(), &vec![1, 1]);
    }

    #[test]
    fn reduce_examples() {
        // Z[1/6]: 1/2 mod 5 = 3
        let spec = RingSpec::s_integers(&[2, 3]);
        let half =
            RingElement::divide(&RingElement::from_i64(&spec, 1), &RingElement::from_i64(&spec, 2))
                .unwrap();
        let r = reduce_mod(&half, &Modulus::Prime(5)).unwrap();
        assert_eq!(r.as_fq().unwrap(), &vec![3]);

        // Z: 7 mod 7 = 0
        let z = RingSpec::integers();
        let seven = RingElement::from_i64(&z, 7);
        assert!(reduce_mod(&seven, &Modulus::Prime(7)).unwrap().is_zero());

        // R_f: t^-1 mod t^2+t+1 = t+1
        let rf = rf_spec();
        let base = FqSpec::prime_field(2);
        let g = FqPoly::from_scalars(&base, &[1, 1, 1]);
        let tinv = RingElement::var_t(&rf).unwrap().inv_unit().unwrap();
        let r = reduce_mod(&tinv, &Modulus::Poly(g)).unwrap();
        assert_eq!(r.as_fq().unwrap(), &vec![1, 1]);
    }

    #[test]
    fn reduce_rejects_inverted_prime() {
        let spec = RingSpec::s_integers(&[2, 3]);
        let one = RingElement::one(&spec);
        assert!(matches!(reduce_mod(&one, &Modulus::Prime(3)), Err(Error::IdealNotCoprime(_))));
    }

    #[test]
    fn fixed_transcendental_examples() {
        let base = FqSpec::prime_field(2);
        // R_f: Aut is trivial, x = t+1
        let rf = rf_spec();
        let x = fixed_transcendental(&rf).unwrap();
        let expect = RingElement::make_poly(&rf, FqPoly::from_scalars(&base, &[1, 1]), vec![0, 0]);
        assert_eq!(x, expect);
        assert!(x.is_unit().is_none());

        // F_2[t]: x = t+1
        let poly = RingSpec::poly_ring(base.clone());
        let x = fixed_transcendental(&poly).unwrap();
        let expect = RingElement::from_poly(&poly, FqPoly::from_scalars(&base, &[1, 1])).unwrap();
        assert_eq!(x, expect);
        assert!(x.is_unit().is_none());
    }

    #[test]
    fn fixed_transcendental_with_nontrivial_orbit() {
        // self-reciprocal control: Aut contains t -> t^-1, so the invariant
        // element is the orbit product (t+1) * (t+1)/t
        let base = FqSpec::prime_field(2);
        let f = FqPoly::from_scalars(&base, &[1, 1, 1]);
        let spec = RingSpec::localized_poly(base.clone(), true, vec![f]);
        let x = fixed_transcendental(&spec).unwrap();
        let t1 = RingElement::make_poly(&spec, FqPoly::from_scalars(&base, &[1, 1]), vec![0, 0]);
        let t = RingElement::var_t(&spec).unwrap();
        let expect = t1.mul(&t1).unwrap().mul(&t.inv_unit().unwrap()).unwrap();
        assert_eq!(x, expect);
        assert!(x.is_unit().is_none());
        for desc in ring_aut_descriptors(&spec, DEFAULT_AUT_SEARCH_BOUND).unwrap() {
            assert_eq!(apply_ring_aut(&desc, &x).unwrap(), x);
        }
    }

    #[test]
    fn quad_conj_does_not_descend_mod_7() {
        let spec = RingSpec::quadratic(2);
        let ok = descriptor_preserves_ideal(
            &spec,
            &RingAutomorphismDescriptor::QuadraticConjugation,
            &Modulus::Prime(7),
        )
        .unwrap();
        assert!(!ok);
        assert!(matches!(
            induce_descriptor_mod(&spec, &RingAutomorphismDescriptor::QuadraticConjugation, &Modulus::Prime(7)),
            Err(Error::KernelNotInvariant(_))
        ));
    }
}
