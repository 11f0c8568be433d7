//! Exact arithmetic over the supported base rings: the integers, rings of
//! S-integers in Q, quadratic rings `Z[sqrt(d)]`, finite fields, polynomial
//! rings `F_q[t]` and their localizations at finitely many monic irreducibles.
//!
//! Elements are kept in a canonical form at all times: a numerator coprime to
//! every inverted generator together with an integer exponent per generator.
//! Equality of canonical forms is structural equality, so elements can be
//! hashed and used as orbit-enumeration keys.

pub mod aut;
pub mod fq;
pub mod parse;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

pub use aut::{
    apply_ring_aut, descriptor_preserves_ideal, fixed_transcendental, induce_descriptor_mod,
    monomial_matrix, reduce_mod, residue_field_spec, ring_aut_descriptors, ring_aut_search,
    sqrt_mod_p, Modulus, RingAutomorphismDescriptor, DEFAULT_AUT_SEARCH_BOUND,
};
pub use fq::{monic_polys, smallest_monic_irreducible_coprime, FqElem, FqPoly, FqSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// The ring of integers Z.
    Integers,
    /// Z with the listed primes inverted, e.g. `Z[1/2,1/3]`.
    SIntegers { primes: Vec<u64> },
    /// `Z[sqrt(d)]` for a square-free d not in {0, 1}.
    Quadratic { d: i64 },
    /// An explicit finite field F_{p^k}.
    FiniteField(FqSpec),
    /// `F_q[t]`.
    PolyRing { base: FqSpec },
    /// `F_q[t, (t^-1)?, f_1^-1, ..., f_m^-1]` with monic irreducible pairwise
    /// coprime f_i, none equal to t when t itself is inverted.
    LocalizedPoly { base: FqSpec, t_inverted: bool, inverted: Vec<FqPoly> },
}

fn is_square_free(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut f = 2u64;
    while f * f <= n {
        if n % (f * f) == 0 {
            return false;
        }
        while n % f == 0 {
            n /= f;
        }
        f += 1;
    }
    true
}

impl RingSpec {
    pub fn integers() -> Arc<Self> {
        Arc::new(RingSpec::Integers)
    }

    pub fn s_integers(primes: &[u64]) -> Arc<Self> {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        Arc::new(RingSpec::SIntegers { primes })
    }

    pub fn quadratic(d: i64) -> Arc<Self> {
        Arc::new(RingSpec::Quadratic { d })
    }

    pub fn finite_field(spec: FqSpec) -> Arc<Self> {
        Arc::new(RingSpec::FiniteField(spec))
    }

    pub fn poly_ring(base: FqSpec) -> Arc<Self> {
        Arc::new(RingSpec::PolyRing { base })
    }

    pub fn localized_poly(base: FqSpec, t_inverted: bool, inverted: Vec<FqPoly>) -> Arc<Self> {
        Arc::new(RingSpec::LocalizedPoly { base, t_inverted, inverted })
    }

    /// The Laurent ring `F_q[t, t^-1]`.
    pub fn laurent(base: FqSpec) -> Arc<Self> {
        Self::localized_poly(base, true, vec![])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Integers => Ok(()),
            RingSpec::SIntegers { primes } => {
                for &p in primes {
                    if FqSpec::prime_field(p).validate().is_err() {
                        return Err(Error::InvalidSpec(format!("{p} is not prime")));
                    }
                }
                let mut sorted = primes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != primes.len() {
                    return Err(Error::InvalidSpec("repeated inverted prime".into()));
                }
                Ok(())
            }
            RingSpec::Quadratic { d } => {
                if *d == 0 || *d == 1 || !is_square_free(*d) {
                    return Err(Error::InvalidSpec(format!("d={d} must be square-free, not 0 or 1")));
                }
                Ok(())
            }
            RingSpec::FiniteField(fq) => fq.validate(),
            RingSpec::PolyRing { base } => base.validate(),
            RingSpec::LocalizedPoly { base, t_inverted, inverted } => {
                base.validate()?;
                if !t_inverted && inverted.is_empty() {
                    return Err(Error::InvalidSpec(
                        "localized ring with nothing inverted; use a plain polynomial ring".into(),
                    ));
                }
                let t = FqPoly::t(base);
                for f in inverted {
                    if !f.is_monic(base) || !f.is_irreducible(base) {
                        return Err(Error::InvalidSpec(format!(
                            "inverted polynomial {} must be monic irreducible",
                            f.display(base)
                        )));
                    }
                    if *t_inverted && *f == t {
                        return Err(Error::InvalidSpec("t listed among inverted polynomials".into()));
                    }
                }
                for i in 0..inverted.len() {
                    for j in i + 1..inverted.len() {
                        if !inverted[i].coprime(base, &inverted[j]) {
                            return Err(Error::InvalidSpec("inverted polynomials must be pairwise coprime".into()));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn characteristic_zero(&self) -> bool {
        matches!(self, RingSpec::Integers | RingSpec::SIntegers { .. } | RingSpec::Quadratic { .. })
    }

    pub fn base_field(&self) -> Option<&FqSpec> {
        match self {
            RingSpec::FiniteField(fq) => Some(fq),
            RingSpec::PolyRing { base } => Some(base),
            RingSpec::LocalizedPoly { base, .. } => Some(base),
            _ => None,
        }
    }

    /// The inverted generators of a localized polynomial ring as polynomials,
    /// t first when inverted. Empty for every other spec.
    pub fn poly_generators(&self) -> Vec<FqPoly> {
        match self {
            RingSpec::LocalizedPoly { base, t_inverted, inverted } => {
                let mut gens = Vec::new();
                if *t_inverted {
                    gens.push(FqPoly::t(base));
                }
                gens.extend(inverted.iter().cloned());
                gens
            }
            _ => vec![],
        }
    }

    pub fn generator_labels(&self) -> Vec<String> {
        match self {
            RingSpec::SIntegers { primes } => primes.iter().map(|p| p.to_string()).collect(),
            RingSpec::LocalizedPoly { base, .. } => {
                self.poly_generators().iter().map(|g| g.display(base)).collect()
            }
            _ => vec![],
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::SIntegers { primes } => {
                let parts: Vec<String> = primes.iter().map(|p| format!("1/{p}")).collect();
                write!(f, "Z[{}]", parts.join(","))
            }
            RingSpec::Quadratic { d } => write!(f, "Z[sqrt({d})]"),
            RingSpec::FiniteField(fq) => {
                if fq.degree() == 1 {
                    write!(f, "F_{}", fq.p)
                } else {
                    let base = FqSpec::prime_field(fq.p);
                    let m = FqPoly::from_scalars(&base, &fq.modulus);
                    write!(f, "F_{}[s]/({})", fq.p, m.display(&base).replace('t', "s"))
                }
            }
            RingSpec::PolyRing { base } => write!(f, "{}[t]", RingSpec::FiniteField(base.clone())),
            RingSpec::LocalizedPoly { base, t_inverted, inverted } => {
                let mut parts = vec!["t".to_string()];
                if *t_inverted {
                    parts.push("t^-1".into());
                }
                for g in inverted {
                    parts.push(format!("({})^-1", g.display(base)));
                }
                write!(f, "{}[{}]", RingSpec::FiniteField(base.clone()), parts.join(","))
            }
        }
    }
}

/// Canonical element of one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    spec: Arc<RingSpec>,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Int(BigInt),
    /// Numerator coprime to every inverted prime; exponent per prime.
    SInt { num: BigInt, exps: Vec<i64> },
    /// a + b*sqrt(d)
    Quad { a: BigInt, b: BigInt },
    Fq(FqElem),
    /// Numerator coprime to every inverted generator; exponent per generator
    /// in the order of `RingSpec::poly_generators`. Plain F_q[t] has no
    /// generators and an empty exponent vector.
    Poly { num: FqPoly, exps: Vec<i64> },
}

impl RingElement {
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        let repr = match &**spec {
            RingSpec::Integers => Repr::Int(BigInt::zero()),
            RingSpec::SIntegers { primes } => {
                Repr::SInt { num: BigInt::zero(), exps: vec![0; primes.len()] }
            }
            RingSpec::Quadratic { .. } => Repr::Quad { a: BigInt::zero(), b: BigInt::zero() },
            RingSpec::FiniteField(fq) => Repr::Fq(fq.el_zero()),
            RingSpec::PolyRing { .. } => Repr::Poly { num: FqPoly::zero(), exps: vec![] },
            RingSpec::LocalizedPoly { .. } => {
                let n = spec.poly_generators().len();
                Repr::Poly { num: FqPoly::zero(), exps: vec![0; n] }
            }
        };
        RingElement { spec: spec.clone(), repr }
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::from_i64(spec, 1)
    }

    pub fn from_i64(spec: &Arc<RingSpec>, n: i64) -> Self {
        Self::from_bigint(spec, BigInt::from(n))
    }

    pub fn from_bigint(spec: &Arc<RingSpec>, n: BigInt) -> Self {
        let repr = match &**spec {
            RingSpec::Integers => Repr::Int(n),
            RingSpec::SIntegers { primes } => {
                let (num, exps) = extract_prime_powers(n, primes);
                Repr::SInt { num, exps }
            }
            RingSpec::Quadratic { .. } => Repr::Quad { a: n, b: BigInt::zero() },
            RingSpec::FiniteField(fq) => {
                let r = n.mod_floor(&BigInt::from(fq.p));
                let r: u64 = r.try_into().unwrap();
                Repr::Fq(fq.el_from_u64(r))
            }
            RingSpec::PolyRing { base } | RingSpec::LocalizedPoly { base, .. } => {
                let r = n.mod_floor(&BigInt::from(base.p));
                let r: u64 = r.try_into().unwrap();
                let num = FqPoly::constant(base, base.el_from_u64(r));
                return Self::from_poly_raw(spec, num);
            }
        };
        RingElement { spec: spec.clone(), repr }
    }

    /// a + b*sqrt(d) in a quadratic ring.
    pub fn quad(spec: &Arc<RingSpec>, a: i64, b: i64) -> Result<Self> {
        match &**spec {
            RingSpec::Quadratic { .. } => Ok(RingElement {
                spec: spec.clone(),
                repr: Repr::Quad { a: BigInt::from(a), b: BigInt::from(b) },
            }),
            _ => Err(Error::UnsupportedSpec("sqrt(d) only exists in a quadratic ring".into())),
        }
    }

    pub fn sqrt_d(spec: &Arc<RingSpec>) -> Result<Self> {
        Self::quad(spec, 0, 1)
    }

    /// The variable t of a polynomial or localized polynomial ring.
    pub fn var_t(spec: &Arc<RingSpec>) -> Result<Self> {
        match &**spec {
            RingSpec::PolyRing { base } | RingSpec::LocalizedPoly { base, .. } => {
                Ok(Self::from_poly_raw(spec, FqPoly::t(base)))
            }
            _ => Err(Error::UnsupportedSpec("t only exists in a polynomial ring".into())),
        }
    }

    /// The field generator s of an extension finite field.
    pub fn field_gen(spec: &Arc<RingSpec>) -> Result<Self> {
        match &**spec {
            RingSpec::FiniteField(fq) => {
                Ok(RingElement { spec: spec.clone(), repr: Repr::Fq(fq.el_gen()) })
            }
            _ => Err(Error::UnsupportedSpec("s only exists in a finite field".into())),
        }
    }

    pub fn from_fq(spec: &Arc<RingSpec>, el: FqElem) -> Result<Self> {
        match &**spec {
            RingSpec::FiniteField(_) => Ok(RingElement { spec: spec.clone(), repr: Repr::Fq(el) }),
            _ => Err(Error::UnsupportedSpec("not a finite field".into())),
        }
    }

    /// Embed a polynomial numerator, extracting inverted-generator factors so
    /// the stored numerator is coprime to all of them.
    pub fn from_poly(spec: &Arc<RingSpec>, poly: FqPoly) -> Result<Self> {
        match &**spec {
            RingSpec::PolyRing { .. } | RingSpec::LocalizedPoly { .. } => {
                Ok(Self::from_poly_raw(spec, poly))
            }
            _ => Err(Error::UnsupportedSpec("not a polynomial ring".into())),
        }
    }

    fn from_poly_raw(spec: &Arc<RingSpec>, poly: FqPoly) -> Self {
        let base = spec.base_field().unwrap();
        let gens = spec.poly_generators();
        if poly.is_zero() {
            return RingElement {
                spec: spec.clone(),
                repr: Repr::Poly { num: FqPoly::zero(), exps: vec![0; gens.len()] },
            };
        }
        let mut num = poly;
        let mut exps = Vec::with_capacity(gens.len());
        for g in &gens {
            let (v, rest) = num.valuation(base, g);
            num = rest;
            exps.push(v as i64);
        }
        RingElement { spec: spec.clone(), repr: Repr::Poly { num, exps } }
    }

    fn with_poly(spec: &Arc<RingSpec>, num: FqPoly, exps: Vec<i64>) -> Self {
        // renormalize: numerator may have picked up generator factors
        let base = spec.base_field().unwrap();
        let gens = spec.poly_generators();
        if num.is_zero() {
            return Self::zero(spec);
        }
        let mut num = num;
        let mut exps = exps;
        for (i, g) in gens.iter().enumerate() {
            let (v, rest) = num.valuation(base, g);
            num = rest;
            exps[i] += v as i64;
        }
        RingElement { spec: spec.clone(), repr: Repr::Poly { num, exps } }
    }

    fn with_sint(spec: &Arc<RingSpec>, num: BigInt, mut exps: Vec<i64>) -> Self {
        let primes = match &**spec {
            RingSpec::SIntegers { primes } => primes,
            _ => unreachable!(),
        };
        if num.is_zero() {
            return Self::zero(spec);
        }
        let (num, extra) = extract_prime_powers(num, primes);
        for (e, x) in exps.iter_mut().zip(extra) {
            *e += x;
        }
        RingElement { spec: spec.clone(), repr: Repr::SInt { num, exps } }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(n) => n.is_zero(),
            Repr::SInt { num, .. } => num.is_zero(),
            Repr::Quad { a, b } => a.is_zero() && b.is_zero(),
            Repr::Fq(el) => el.iter().all(|&c| c == 0),
            Repr::Poly { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.spec)
    }

    fn check_same_spec(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_spec(other)?;
        let spec = &self.spec;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (Repr::SInt { num: na, exps: ea }, Repr::SInt { num: nb, exps: eb }) => {
                if self.is_zero() {
                    return Ok(other.clone());
                }
                if other.is_zero() {
                    return Ok(self.clone());
                }
                let primes = match &**spec {
                    RingSpec::SIntegers { primes } => primes,
                    _ => unreachable!(),
                };
                // common generator exponent: min per prime
                let mins: Vec<i64> = ea.iter().zip(eb).map(|(&x, &y)| x.min(y)).collect();
                let mut sa = na.clone();
                let mut sb = nb.clone();
                for ((&p, (&x, &y)), &m) in primes.iter().zip(ea.iter().zip(eb)).zip(&mins) {
                    sa *= BigInt::from(p).pow((x - m) as u32);
                    sb *= BigInt::from(p).pow((y - m) as u32);
                }
                return Ok(Self::with_sint(spec, sa + sb, mins));
            }
            (Repr::Quad { a, b }, Repr::Quad { a: a2, b: b2 }) => {
                Repr::Quad { a: a + a2, b: b + b2 }
            }
            (Repr::Fq(x), Repr::Fq(y)) => {
                let fq = spec.base_field().unwrap();
                Repr::Fq(fq.el_add(x, y))
            }
            (Repr::Poly { num: na, exps: ea }, Repr::Poly { num: nb, exps: eb }) => {
                if self.is_zero() {
                    return Ok(other.clone());
                }
                if other.is_zero() {
                    return Ok(self.clone());
                }
                let base = spec.base_field().unwrap();
                let gens = spec.poly_generators();
                let mins: Vec<i64> = ea.iter().zip(eb).map(|(&x, &y)| x.min(y)).collect();
                let mut sa = na.clone();
                let mut sb = nb.clone();
                for ((g, (&x, &y)), &m) in gens.iter().zip(ea.iter().zip(eb)).zip(&mins) {
                    sa = sa.mul(base, &g.pow(base, (x - m) as u64));
                    sb = sb.mul(base, &g.pow(base, (y - m) as u64));
                }
                return Ok(Self::with_poly(spec, sa.add(base, &sb), mins));
            }
            _ => return Err(Error::SpecMismatch),
        };
        Ok(RingElement { spec: spec.clone(), repr })
    }

    pub fn neg(&self) -> Self {
        let spec = &self.spec;
        let repr = match &self.repr {
            Repr::Int(a) => Repr::Int(-a),
            Repr::SInt { num, exps } => Repr::SInt { num: -num, exps: exps.clone() },
            Repr::Quad { a, b } => Repr::Quad { a: -a, b: -b },
            Repr::Fq(x) => {
                let fq = spec.base_field().unwrap();
                Repr::Fq(fq.el_neg(x))
            }
            Repr::Poly { num, exps } => {
                let base = spec.base_field().unwrap();
                Repr::Poly { num: num.neg(base), exps: exps.clone() }
            }
        };
        RingElement { spec: spec.clone(), repr }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_spec(other)?;
        let spec = &self.spec;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (Repr::SInt { num: na, exps: ea }, Repr::SInt { num: nb, exps: eb }) => {
                if self.is_zero() || other.is_zero() {
                    return Ok(Self::zero(spec));
                }
                let exps = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                Repr::SInt { num: na * nb, exps }
            }
            (Repr::Quad { a, b }, Repr::Quad { a: a2, b: b2 }) => {
                let d = match &**spec {
                    RingSpec::Quadratic { d } => BigInt::from(*d),
                    _ => unreachable!(),
                };
                Repr::Quad { a: a * a2 + &d * b * b2, b: a * b2 + b * a2 }
            }
            (Repr::Fq(x), Repr::Fq(y)) => {
                let fq = spec.base_field().unwrap();
                Repr::Fq(fq.el_mul(x, y))
            }
            (Repr::Poly { num: na, exps: ea }, Repr::Poly { num: nb, exps: eb }) => {
                if self.is_zero() || other.is_zero() {
                    return Ok(Self::zero(spec));
                }
                let base = spec.base_field().unwrap();
                let exps = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                Repr::Poly { num: na.mul(base, nb), exps }
            }
            _ => return Err(Error::SpecMismatch),
        };
        Ok(RingElement { spec: spec.clone(), repr })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.spec);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Unit test with explicit factorization: `Some` exactly when the element
    /// is invertible, and the factorization multiplies back to the element.
    pub fn is_unit(&self) -> Option<UnitFactorization> {
        if self.is_zero() {
            return None;
        }
        let spec = &self.spec;
        match &self.repr {
            Repr::Int(n) => {
                if n.abs().is_one() {
                    Some(UnitFactorization { constant: self.clone(), exponents: vec![] })
                } else {
                    None
                }
            }
            Repr::SInt { num, exps } => {
                if num.abs().is_one() {
                    Some(UnitFactorization {
                        constant: Self::from_bigint_constant(spec, num.clone()),
                        exponents: exps.clone(),
                    })
                } else {
                    None
                }
            }
            Repr::Quad { a, b } => {
                let d = match &**spec {
                    RingSpec::Quadratic { d } => BigInt::from(*d),
                    _ => unreachable!(),
                };
                let norm = a * a - &d * b * b;
                if norm.abs().is_one() {
                    Some(UnitFactorization { constant: self.clone(), exponents: vec![] })
                } else {
                    None
                }
            }
            Repr::Fq(_) => Some(UnitFactorization { constant: self.clone(), exponents: vec![] }),
            Repr::Poly { num, exps } => {
                if num.is_constant() {
                    let base = spec.base_field().unwrap();
                    let c = num.coeffs[0].clone();
                    let constant = RingElement {
                        spec: spec.clone(),
                        repr: Repr::Poly {
                            num: FqPoly::constant(base, c),
                            exps: vec![0; exps.len()],
                        },
                    };
                    Some(UnitFactorization { constant, exponents: exps.clone() })
                } else {
                    None
                }
            }
        }
    }

    fn from_bigint_constant(spec: &Arc<RingSpec>, n: BigInt) -> Self {
        match &**spec {
            RingSpec::SIntegers { primes } => RingElement {
                spec: spec.clone(),
                repr: Repr::SInt { num: n, exps: vec![0; primes.len()] },
            },
            _ => Self::from_bigint(spec, n),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inv_unit(&self) -> Result<Self> {
        let fact = self.is_unit().ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        let spec = &self.spec;
        match &self.repr {
            Repr::Int(n) => Ok(Self::from_bigint(spec, n.clone())),
            Repr::SInt { num, exps } => Ok(RingElement {
                spec: spec.clone(),
                repr: Repr::SInt { num: num.clone(), exps: exps.iter().map(|e| -e).collect() },
            }),
            Repr::Quad { a, b } => {
                let d = match &**spec {
                    RingSpec::Quadratic { d } => BigInt::from(*d),
                    _ => unreachable!(),
                };
                let norm = a * a - &d * b * b;
                // (a + b s)(a - b s) = norm = ±1
                if norm.is_one() {
                    Ok(RingElement { spec: spec.clone(), repr: Repr::Quad { a: a.clone(), b: -b } })
                } else {
                    Ok(RingElement { spec: spec.clone(), repr: Repr::Quad { a: -a, b: b.clone() } })
                }
            }
            Repr::Fq(x) => {
                let fq = spec.base_field().unwrap();
                Ok(RingElement { spec: spec.clone(), repr: Repr::Fq(fq.el_inv(x)?) })
            }
            Repr::Poly { num, exps } => {
                let base = spec.base_field().unwrap();
                let c = base.el_inv(&num.coeffs[0])?;
                let _ = fact;
                Ok(RingElement {
                    spec: spec.clone(),
                    repr: Repr::Poly {
                        num: FqPoly::constant(base, c),
                        exps: exps.iter().map(|e| -e).collect(),
                    },
                })
            }
        }
    }

    /// Canonical quotient of two elements. The denominator must be a unit,
    /// i.e. a base unit times a product of inverted generators.
    pub fn divide(num: &Self, den: &Self) -> Result<Self> {
        num.check_same_spec(den)?;
        if den.is_zero() {
            return Err(Error::DenominatorNotInvertible("0".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero(&num.spec));
        }
        match den.is_unit() {
            Some(_) => num.mul(&den.inv_unit()?),
            None => Err(Error::DenominatorNotInvertible(den.to_string())),
        }
    }

    /// Accessors used by reduction, automorphisms and display.
    pub(crate) fn as_int(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Int(n) => Some(n),
            _ => None,
        }
    }

    pub(crate) fn as_sint(&self) -> Option<(&BigInt, &[i64])> {
        match &self.repr {
            Repr::SInt { num, exps } => Some((num, exps)),
            _ => None,
        }
    }

    pub(crate) fn as_quad(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.repr {
            Repr::Quad { a, b } => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_fq(&self) -> Option<&FqElem> {
        match &self.repr {
            Repr::Fq(el) => Some(el),
            _ => None,
        }
    }

    pub(crate) fn as_poly(&self) -> Option<(&FqPoly, &[i64])> {
        match &self.repr {
            Repr::Poly { num, exps } => Some((num, exps)),
            _ => None,
        }
    }

    pub(crate) fn make_poly(spec: &Arc<RingSpec>, num: FqPoly, exps: Vec<i64>) -> Self {
        Self::with_poly(spec, num, exps)
    }

    pub(crate) fn make_quad(spec: &Arc<RingSpec>, a: BigInt, b: BigInt) -> Self {
        RingElement { spec: spec.clone(), repr: Repr::Quad { a, b } }
    }
}

fn extract_prime_powers(n: BigInt, primes: &[u64]) -> (BigInt, Vec<i64>) {
    if n.is_zero() {
        return (n, vec![0; primes.len()]);
    }
    let mut num = n;
    let mut exps = Vec::with_capacity(primes.len());
    for &p in primes {
        let p = BigInt::from(p);
        let mut v = 0i64;
        loop {
            let (q, r) = num.div_rem(&p);
            if r.is_zero() {
                num = q;
                v += 1;
            } else {
                break;
            }
        }
        exps.push(v);
    }
    (num, exps)
}

/// Exact factorization of a unit: a base-ring unit times integer powers of
/// the inverted generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitFactorization {
    pub constant: RingElement,
    /// Exponents parallel to `RingSpec::generator_labels`.
    pub exponents: Vec<i64>,
}

impl UnitFactorization {
    /// Multiply the factors back together; always reproduces the original.
    pub fn product(&self) -> RingElement {
        let spec = self.constant.spec().clone();
        match &*spec {
            RingSpec::SIntegers { .. } => {
                let (num, _) = self.constant.as_sint().unwrap();
                RingElement {
                    spec: spec.clone(),
                    repr: Repr::SInt { num: num.clone(), exps: self.exponents.clone() },
                }
            }
            RingSpec::LocalizedPoly { .. } => {
                let (num, _) = self.constant.as_poly().unwrap();
                RingElement {
                    spec: spec.clone(),
                    repr: Repr::Poly { num: num.clone(), exps: self.exponents.clone() },
                }
            }
            _ => self.constant.clone(),
        }
    }

    pub fn labeled(&self) -> Vec<(String, i64)> {
        self.constant
            .spec()
            .generator_labels()
            .into_iter()
            .zip(self.exponents.iter().copied())
            .collect()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Int(n) => write!(f, "{n}"),
            Repr::SInt { num, exps } => {
                let primes = match &*self.spec {
                    RingSpec::SIntegers { primes } => primes,
                    _ => unreachable!(),
                };
                let mut n = num.clone();
                let mut den = BigInt::one();
                for (&p, &e) in primes.iter().zip(exps) {
                    if e >= 0 {
                        n *= BigInt::from(p).pow(e as u32);
                    } else {
                        den *= BigInt::from(p).pow((-e) as u32);
                    }
                }
                if den.is_one() {
                    write!(f, "{n}")
                } else {
                    write!(f, "{n}/{den}")
                }
            }
            Repr::Quad { a, b } => {
                if b.is_zero() {
                    write!(f, "{a}")
                } else if a.is_zero() {
                    if b.is_one() {
                        write!(f, "s")
                    } else if (-b).is_one() {
                        write!(f, "-s")
                    } else {
                        write!(f, "{b}s")
                    }
                } else if b.is_positive() {
                    if b.is_one() {
                        write!(f, "{a}+s")
                    } else {
                        write!(f, "{a}+{b}s")
                    }
                } else if (-b).is_one() {
                    write!(f, "{a}-s")
                } else {
                    write!(f, "{a}{b}s")
                }
            }
            Repr::Fq(el) => {
                let fq = self.spec.base_field().unwrap();
                write!(f, "{}", fq.el_display(el))
            }
            Repr::Poly { num, exps } => {
                let base = self.spec.base_field().unwrap();
                let gens = self.spec.poly_generators();
                // fold nonnegative powers into the numerator, keep the rest as
                // a factored denominator
                let mut top = num.clone();
                let mut den_parts: Vec<String> = Vec::new();
                for (g, &e) in gens.iter().zip(exps) {
                    if e > 0 {
                        top = top.mul(base, &g.pow(base, e as u64));
                    } else if e < 0 {
                        let gs = g.display(base);
                        let gs = if g.coeffs.len() > 2 || gs.contains('+') {
                            format!("({gs})")
                        } else {
                            gs
                        };
                        if e == -1 {
                            den_parts.push(gs);
                        } else {
                            den_parts.push(format!("{gs}^{}", -e));
                        }
                    }
                }
                let ts = top.display(base);
                if den_parts.is_empty() {
                    write!(f, "{ts}")
                } else {
                    let ts = if ts.contains('+') { format!("({ts})") } else { ts };
                    write!(f, "{}/{}", ts, den_parts.join("/"))
                }
            }
        }
    }
}

/// Canonicalize a raw fraction. The denominator must be a unit of the ring
/// (for the localized rings this is exactly the products of inverted
/// generators, up to base units).
pub fn normalize(num: &RingElement, den: &RingElement) -> Result<RingElement> {
    RingElement::divide(num, den)
}
