//! Text forms: ring specs from JSON, polynomials from dense digit strings or
//! sparse human form, ring elements from arithmetic expressions.

use super::fq::{FqPoly, FqSpec};
use super::{RingElement, RingSpec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Wire form of a ring spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpecJson {
    Integers,
    SIntegers { primes: Vec<u64> },
    Quadratic { d: i64 },
    FiniteField {
        p: u64,
        #[serde(default)]
        modulus: Option<String>,
    },
    PolyRing {
        p: u64,
        #[serde(default)]
        base_modulus: Option<String>,
    },
    LocalizedPoly {
        p: u64,
        #[serde(default)]
        base_modulus: Option<String>,
        #[serde(default)]
        t_inverted: bool,
        #[serde(default)]
        inverted: Vec<String>,
    },
}

fn base_from(p: u64, modulus: &Option<String>) -> Result<FqSpec> {
    let fq = match modulus {
        None => FqSpec::prime_field(p),
        Some(m) => {
            let base = FqSpec::prime_field(p);
            let poly = poly_from_str(&base, m)?;
            let coeffs: Vec<u64> = poly.coeffs.iter().map(|c| c[0]).collect();
            FqSpec::extension(p, coeffs)
        }
    };
    fq.validate()?;
    Ok(fq)
}

pub fn ring_spec_from_json(json: &str) -> Result<Arc<RingSpec>> {
    let parsed: RingSpecJson =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("ring spec: {e}")))?;
    ring_spec_from_dto(&parsed)
}

pub fn ring_spec_from_dto(dto: &RingSpecJson) -> Result<Arc<RingSpec>> {
    let spec = match dto {
        RingSpecJson::Integers => RingSpec::integers(),
        RingSpecJson::SIntegers { primes } => RingSpec::s_integers(primes),
        RingSpecJson::Quadratic { d } => RingSpec::quadratic(*d),
        RingSpecJson::FiniteField { p, modulus } => RingSpec::finite_field(base_from(*p, modulus)?),
        RingSpecJson::PolyRing { p, base_modulus } => {
            RingSpec::poly_ring(base_from(*p, base_modulus)?)
        }
        RingSpecJson::LocalizedPoly { p, base_modulus, t_inverted, inverted } => {
            let base = base_from(*p, base_modulus)?;
            let polys: Result<Vec<FqPoly>> =
                inverted.iter().map(|s| poly_from_str(&base, s)).collect();
            RingSpec::localized_poly(base, *t_inverted, polys?)
        }
    };
    spec.validate()?;
    Ok(spec)
}

pub fn ring_spec_to_dto(spec: &RingSpec) -> RingSpecJson {
    let mod_string = |fq: &FqSpec| -> Option<String> {
        if fq.degree() == 1 && fq.modulus == vec![0, 1] {
            None
        } else {
            let base = FqSpec::prime_field(fq.p);
            Some(FqPoly::from_scalars(&base, &fq.modulus).display(&base))
        }
    };
    match spec {
        RingSpec::Integers => RingSpecJson::Integers,
        RingSpec::SIntegers { primes } => RingSpecJson::SIntegers { primes: primes.clone() },
        RingSpec::Quadratic { d } => RingSpecJson::Quadratic { d: *d },
        RingSpec::FiniteField(fq) => RingSpecJson::FiniteField { p: fq.p, modulus: mod_string(fq) },
        RingSpec::PolyRing { base } => {
            RingSpecJson::PolyRing { p: base.p, base_modulus: mod_string(base) }
        }
        RingSpec::LocalizedPoly { base, t_inverted, inverted } => RingSpecJson::LocalizedPoly {
            p: base.p,
            base_modulus: mod_string(base),
            t_inverted: *t_inverted,
            inverted: inverted.iter().map(|f| f.display(base)).collect(),
        },
    }
}

/// Accepts the dense ascending-coefficient digit form ("1101" = 1+t+t^3 over
/// F_2) and the sparse human form ("t^3+t+1").
pub fn poly_from_str(base: &FqSpec, s: &str) -> Result<FqPoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s.len() >= 2 && s.bytes().all(|b| b.is_ascii_digit()) && base.p <= 10 {
        let scalars: Vec<u64> = s
            .bytes()
            .map(|b| {
                let d = (b - b'0') as u64;
                if d >= base.p {
                    Err(Error::Parse(format!("digit {d} out of range mod {}", base.p)))
                } else {
                    Ok(d)
                }
            })
            .collect::<Result<_>>()?;
        return Ok(FqPoly::from_scalars(base, &scalars));
    }
    // sparse form: evaluate as an expression in the polynomial ring
    let spec = RingSpec::poly_ring(base.clone());
    let el = element_from_str(&spec, s)?;
    let (num, _) = el.as_poly().unwrap();
    Ok(num.clone())
}

// --- a small expression grammar over a ring ---
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := atom ('^' int)?
//   atom   := int | 't' | 's' | '(' expr ')' | '-' factor
//
// 't' is the polynomial variable, 's' the quadratic root or field generator.

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    spec: &'a Arc<RingSpec>,
}

impl<'a> Parser<'a> {
    fn new(spec: &'a Arc<RingSpec>, s: &str) -> Self {
        Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, spec }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.bump() == Some(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{c}' at position {}", self.pos)))
        }
    }

    fn parse_expr(&mut self) -> Result<RingElement> {
        let mut acc = self.parse_term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?)?;
                }
                '-' => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<RingElement> {
        let mut acc = self.parse_factor()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.bump();
                    acc = acc.mul(&self.parse_factor()?)?;
                }
                '/' => {
                    self.bump();
                    acc = RingElement::divide(&acc, &self.parse_factor()?)?;
                }
                // implicit multiplication: "2t", "2s", "3(...)"
                't' | 's' | '(' => {
                    acc = acc.mul(&self.parse_factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<RingElement> {
        let base = self.parse_atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.parse_int()?;
            return if e >= 0 {
                base.pow(e as u32)
            } else {
                Ok(base.inv_unit()?.pow((-e) as u32)?)
            };
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<RingElement> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(self.parse_factor()?.neg())
            }
            Some('(') => {
                self.bump();
                let e = self.parse_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('t') => {
                self.bump();
                RingElement::var_t(self.spec)
            }
            Some('s') => {
                self.bump();
                match &**self.spec {
                    RingSpec::Quadratic { .. } => RingElement::sqrt_d(self.spec),
                    RingSpec::FiniteField(_) => RingElement::field_gen(self.spec),
                    _ => Err(Error::Parse("'s' has no meaning in this ring".into())),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_int()?;
                Ok(RingElement::from_i64(self.spec, n))
            }
            other => Err(Error::Parse(format!("unexpected {:?} at position {}", other, self.pos))),
        }
    }

    fn parse_int(&mut self) -> Result<i64> {
        let mut neg = false;
        if self.peek() == Some('-') {
            self.bump();
            neg = true;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(Error::Parse(format!("expected an integer at position {}", self.pos)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = s.parse().map_err(|_| Error::Parse(format!("bad integer {s}")))?;
        Ok(if neg { -v } else { v })
    }
}

/// Parse a ring element. For polynomial-type rings an all-digit string of
/// length >= 2 is read as the dense coefficient form.
pub fn element_from_str(spec: &Arc<RingSpec>, s: &str) -> Result<RingElement> {
    let trimmed = s.trim();
    if trimmed.len() >= 2
        && trimmed.bytes().all(|b| b.is_ascii_digit())
        && matches!(&**spec, RingSpec::PolyRing { .. } | RingSpec::LocalizedPoly { .. })
    {
        let base = spec.base_field().unwrap();
        if base.p <= 10 {
            let poly = poly_from_str(base, trimmed)?;
            return RingElement::from_poly(spec, poly);
        }
    }
    let mut p = Parser::new(spec, trimmed);
    let e = p.parse_expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("trailing input at position {}", p.pos)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ring_specs() {
        let spec =
            ring_spec_from_json(r#"{"kind":"localized_poly","p":2,"t_inverted":true,"inverted":["1+t+t^3"]}"#)
                .unwrap();
        match &*spec {
            RingSpec::LocalizedPoly { base, t_inverted, inverted } => {
                assert!(t_inverted);
                assert_eq!(inverted[0], FqPoly::from_scalars(base, &[1, 1, 0, 1]));
            }
            _ => panic!("wrong spec"),
        }
        assert!(ring_spec_from_json(r#"{"kind":"quadratic","d":4}"#).is_err());
    }

    #[test]
    fn dense_and_sparse_polys_agree() {
        let base = FqSpec::prime_field(2);
        let a = poly_from_str(&base, "1101").unwrap();
        let b = poly_from_str(&base, "t^3+t+1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn element_expressions() {
        let spec = RingSpec::s_integers(&[2, 3]);
        let e = element_from_str(&spec, "4/12").unwrap();
        assert_eq!(e.to_string(), "1/3");

        let q = RingSpec::quadratic(2);
        let e = element_from_str(&q, "3+2s").unwrap();
        assert_eq!(e, RingElement::quad(&q, 3, 2).unwrap());

        let base = FqSpec::prime_field(2);
        let rf = RingSpec::localized_poly(base.clone(), true, vec![poly_from_str(&base, "1101").unwrap()]);
        let e = element_from_str(&rf, "t^-1*(t+1)").unwrap();
        let t = RingElement::var_t(&rf).unwrap();
        let t1 = RingElement::make_poly(&rf, FqPoly::from_scalars(&base, &[1, 1]), vec![0, 0]);
        assert_eq!(e, t.inv_unit().unwrap().mul(&t1).unwrap());
    }

    #[test]
    fn display_parse_roundtrip() {
        let base = FqSpec::prime_field(2);
        let rf = RingSpec::localized_poly(base.clone(), true, vec![poly_from_str(&base, "1101").unwrap()]);
        let mut rng = crate::sampling::rng_from_seed(7);
        for _ in 0..100 {
            let x = crate::sampling::random_element(&rf, &mut rng);
            let back = element_from_str(&rf, &x.to_string()).unwrap();
            assert_eq!(back, x, "roundtrip failed for {x}");
        }
    }
}
