//! Arithmetic for finite fields F_q with q = p^k, and for polynomials over them.
//!
//! A field is described by its characteristic `p` and an explicit monic
//! irreducible modulus over F_p; the prime field is the degree-1 case, so
//! one code path serves both. Elements are coefficient vectors of length
//! `deg(modulus)`, polynomials are trimmed ascending coefficient vectors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Coefficients of an element of F_{p^k}, ascending powers of the field
/// generator, always of length k.
pub type FqElem = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FqSpec {
    pub p: u64,
    /// Monic modulus over F_p, ascending coefficients. Degree 1 gives F_p itself.
    pub modulus: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FqSpec {
    pub fn prime_field(p: u64) -> Self {
        FqSpec { p, modulus: vec![0, 1] }
    }

    pub fn extension(p: u64, modulus: Vec<u64>) -> Self {
        FqSpec { p, modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidSpec(format!("{} is not prime", self.p)));
        }
        if self.modulus.len() < 2 {
            return Err(Error::InvalidSpec("field modulus must have degree >= 1".into()));
        }
        if *self.modulus.last().unwrap() != 1 {
            return Err(Error::InvalidSpec("field modulus must be monic".into()));
        }
        if self.modulus.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidSpec("field modulus coefficient out of range".into()));
        }
        if self.degree() >= 2 {
            let base = FqSpec::prime_field(self.p);
            let m = FqPoly::from_scalars(&base, &self.modulus);
            if !m.is_irreducible(&base) {
                return Err(Error::InvalidSpec("field modulus is reducible".into()));
            }
        }
        Ok(())
    }

    // --- scalar arithmetic mod p ---

    fn sadd(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn smul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn sneg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    // --- field element arithmetic ---

    pub fn el_zero(&self) -> FqElem {
        vec![0; self.degree()]
    }

    pub fn el_one(&self) -> FqElem {
        let mut v = vec![0; self.degree()];
        v[0] = 1;
        v
    }

    pub fn el_from_u64(&self, c: u64) -> FqElem {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.p;
        v
    }

    pub fn el_from_i64(&self, c: i64) -> FqElem {
        let r = c.rem_euclid(self.p as i64) as u64;
        self.el_from_u64(r)
    }

    /// The residue of the field generator itself (the class of s); only
    /// meaningful for degree >= 2.
    pub fn el_gen(&self) -> FqElem {
        let mut v = vec![0; self.degree()];
        if self.degree() >= 2 {
            v[1] = 1;
        } else {
            // s == root of the linear modulus x + c, i.e. -c
            v[0] = self.sneg(self.modulus[0]);
        }
        v
    }

    pub fn el_is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn el_add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter().zip(b).map(|(&x, &y)| self.sadd(x, y)).collect()
    }

    pub fn el_neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|&x| self.sneg(x)).collect()
    }

    pub fn el_sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.el_add(a, &self.el_neg(b))
    }

    pub fn el_mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let k = self.degree();
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = self.sadd(prod[i + j], self.smul(x, y));
            }
        }
        // reduce modulo the monic modulus
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = i - k + j;
                prod[idx] = self.sadd(prod[idx], self.smul(c, self.sneg(m)));
            }
        }
        prod.truncate(k);
        prod
    }

    pub fn el_pow(&self, a: &FqElem, e: u128) -> FqElem {
        let mut result = self.el_one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.el_mul(&result, &base);
            }
            base = self.el_mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn el_inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.el_is_zero(a) {
            return Err(Error::NotAUnit("0".into()));
        }
        // a^(q-2)
        Ok(self.el_pow(a, (self.order() - 2) as u128))
    }

    /// x -> x^(p^k), the k-th Frobenius power.
    pub fn el_frobenius(&self, a: &FqElem, k: usize) -> FqElem {
        let e = (self.p as u128).pow((k % self.degree().max(1)) as u32);
        self.el_pow(a, e)
    }

    /// Deterministic indexing of field elements: digits base p, coefficient of
    /// s^i contributing p^i.
    pub fn el_index(&self, a: &FqElem) -> u64 {
        let mut idx = 0u64;
        for &c in a.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn el_from_index(&self, mut idx: u64) -> FqElem {
        let mut v = vec![0; self.degree()];
        for c in v.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |i| self.el_from_index(i))
    }

    pub fn el_display(&self, a: &FqElem) -> String {
        if self.degree() == 1 {
            return format!("{}", a[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "s".to_string(),
                (1, c) => format!("{c}s"),
                (i, 1) => format!("s^{i}"),
                (i, c) => format!("{c}s^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Polynomial over F_q in the variable t. Trimmed ascending coefficients;
/// the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoly {
    pub coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn zero() -> Self {
        FqPoly { coeffs: vec![] }
    }

    pub fn one(base: &FqSpec) -> Self {
        FqPoly { coeffs: vec![base.el_one()] }
    }

    pub fn t(base: &FqSpec) -> Self {
        FqPoly { coeffs: vec![base.el_zero(), base.el_one()] }
    }

    pub fn constant(base: &FqSpec, c: FqElem) -> Self {
        FqPoly { coeffs: vec![c] }.trimmed(base)
    }

    pub fn from_scalars(base: &FqSpec, scalars: &[u64]) -> Self {
        FqPoly { coeffs: scalars.iter().map(|&c| base.el_from_u64(c)).collect() }.trimmed(base)
    }

    fn trimmed(mut self, base: &FqSpec) -> Self {
        while let Some(last) = self.coeffs.last() {
            if base.el_is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self, base: &FqSpec) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == base.el_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, base: &FqSpec) -> bool {
        self.leading().map(|c| *c == base.el_one()).unwrap_or(false)
    }

    pub fn add(&self, base: &FqSpec, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| base.el_zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| base.el_zero());
            coeffs.push(base.el_add(&a, &b));
        }
        FqPoly { coeffs }.trimmed(base)
    }

    pub fn neg(&self, base: &FqSpec) -> FqPoly {
        FqPoly { coeffs: self.coeffs.iter().map(|c| base.el_neg(c)).collect() }
    }

    pub fn sub(&self, base: &FqSpec, other: &FqPoly) -> FqPoly {
        self.add(base, &other.neg(base))
    }

    pub fn mul(&self, base: &FqSpec, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero();
        }
        let mut coeffs = vec![base.el_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if base.el_is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = base.el_mul(a, b);
                coeffs[i + j] = base.el_add(&coeffs[i + j], &prod);
            }
        }
        FqPoly { coeffs }.trimmed(base)
    }

    pub fn mul_scalar(&self, base: &FqSpec, c: &FqElem) -> FqPoly {
        FqPoly { coeffs: self.coeffs.iter().map(|a| base.el_mul(a, c)).collect() }.trimmed(base)
    }

    pub fn pow(&self, base: &FqSpec, e: u64) -> FqPoly {
        let mut result = FqPoly::one(base);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(base, &b);
            }
            b = b.mul(base, &b);
            e >>= 1;
        }
        result
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, base: &FqSpec, den: &FqPoly) -> (FqPoly, FqPoly) {
        assert!(!den.is_zero(), "division by the zero polynomial");
        let dd = den.degree().unwrap();
        let lead_inv = base.el_inv(den.leading().unwrap()).unwrap();
        let mut rem = self.clone();
        let mut quot = FqPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = base.el_mul(rem.leading().unwrap(), &lead_inv);
            let shift = rd - dd;
            let mut term = vec![base.el_zero(); shift + 1];
            term[shift] = factor;
            let term = FqPoly { coeffs: term };
            quot = quot.add(base, &term);
            rem = rem.sub(base, &term.mul(base, den));
        }
        (quot, rem)
    }

    pub fn divides(&self, base: &FqSpec, other: &FqPoly) -> bool {
        other.divmod(base, self).1.is_zero()
    }

    pub fn gcd_monic(&self, base: &FqSpec, other: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(base, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = base.el_inv(a.leading().unwrap()).unwrap();
        a.mul_scalar(base, &inv)
    }

    pub fn coprime(&self, base: &FqSpec, other: &FqPoly) -> bool {
        self.gcd_monic(base, other).is_one(base)
    }

    /// Largest k with g^k dividing self; self must be nonzero.
    pub fn valuation(&self, base: &FqSpec, g: &FqPoly) -> (u32, FqPoly) {
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divmod(base, g);
            if r.is_zero() {
                v += 1;
                cur = q;
            } else {
                return (v, cur);
            }
        }
    }

    /// t^deg(f) * f(1/t): the coefficient vector reversed, then trimmed.
    pub fn reciprocal(&self, base: &FqSpec) -> FqPoly {
        assert!(!self.is_zero(), "reciprocal of the zero polynomial");
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        FqPoly { coeffs }.trimmed(base)
    }

    pub fn is_self_reciprocal(&self, base: &FqSpec) -> bool {
        *self == self.reciprocal(base)
    }

    /// Trial division by every monic polynomial of degree up to deg/2.
    /// Exhaustive and exact at the degrees this crate works with.
    pub fn is_irreducible(&self, base: &FqSpec) -> bool {
        let deg = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if deg == 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            for g in monic_polys(base, d) {
                if g.divides(base, self) {
                    return false;
                }
            }
        }
        true
    }

    pub fn eval(&self, base: &FqSpec, x: &FqElem) -> FqElem {
        let mut acc = base.el_zero();
        for c in self.coeffs.iter().rev() {
            acc = base.el_add(&base.el_mul(&acc, x), c);
        }
        acc
    }

    pub fn display(&self, base: &FqSpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if base.el_is_zero(c) {
                continue;
            }
            let cs = base.el_display(c);
            let coeff_part = if cs == "1" && i > 0 {
                String::new()
            } else if base.degree() > 1 && i > 0 && cs.contains('s') {
                format!("({cs})")
            } else {
                cs
            };
            let t = match i {
                0 => {
                    if coeff_part.is_empty() {
                        "1".into()
                    } else {
                        coeff_part
                    }
                }
                1 => {
                    if coeff_part.is_empty() {
                        "t".into()
                    } else {
                        format!("{coeff_part}*t")
                    }
                }
                i => {
                    if coeff_part.is_empty() {
                        format!("t^{i}")
                    } else {
                        format!("{coeff_part}*t^{i}")
                    }
                }
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

/// All monic polynomials of the given degree, in lexicographic order of the
/// lower coefficient vector (constant coefficient varying slowest digit last).
pub fn monic_polys(base: &FqSpec, degree: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = base.order();
    let count = q.pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(base.el_from_index(idx % q));
            idx /= q;
        }
        coeffs.push(base.el_one());
        FqPoly { coeffs }
    })
}

/// Smallest-degree monic irreducible polynomial coprime to everything in
/// `avoid`, ties broken by the enumeration order of `monic_polys`.
pub fn smallest_monic_irreducible_coprime(base: &FqSpec, avoid: &[FqPoly]) -> FqPoly {
    for d in 1..64 {
        for g in monic_polys(base, d) {
            if !g.is_irreducible(base) {
                continue;
            }
            if avoid.iter().all(|f| g.coprime(base, f)) {
                return g;
            }
        }
    }
    unreachable!("no coprime irreducible found below degree 64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FqSpec {
        FqSpec::prime_field(2)
    }

    #[test]
    fn modulus_validation() {
        assert!(FqSpec::prime_field(5).validate().is_ok());
        assert!(FqSpec::extension(2, vec![1, 1, 1]).validate().is_ok()); // s^2+s+1
        assert!(FqSpec::extension(2, vec![1, 0, 1]).validate().is_err()); // (s+1)^2
        assert!(FqSpec::extension(4, vec![0, 1]).validate().is_err());
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = FqSpec::extension(2, vec![1, 1, 1]);
        let s = f4.el_gen();
        // s^2 = s + 1
        assert_eq!(f4.el_mul(&s, &s), vec![1, 1]);
        let inv = f4.el_inv(&s).unwrap();
        assert_eq!(f4.el_mul(&s, &inv), f4.el_one());
    }

    #[test]
    fn divmod_roundtrip() {
        let base = f2();
        let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]); // 1+t+t^3
        let g = FqPoly::from_scalars(&base, &[1, 1]); // 1+t
        let (q, r) = f.divmod(&base, &g);
        assert_eq!(q.mul(&base, &g).add(&base, &r), f);
        assert!(!r.is_zero());
    }

    #[test]
    fn irreducibility_small_cases() {
        let base = f2();
        assert!(FqPoly::from_scalars(&base, &[1, 1, 0, 1]).is_irreducible(&base));
        assert!(!FqPoly::from_scalars(&base, &[1, 0, 1]).is_irreducible(&base));
        assert!(FqPoly::t(&base).is_irreducible(&base));
    }

    #[test]
    fn smallest_irreducible_avoiding_t() {
        let base = f2();
        let t = FqPoly::t(&base);
        let f = FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
        let g = smallest_monic_irreducible_coprime(&base, &[t, f]);
        assert_eq!(g, FqPoly::from_scalars(&base, &[1, 1])); // t+1
    }
}
