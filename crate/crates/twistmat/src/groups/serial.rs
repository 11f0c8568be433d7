//! Text and JSON forms of group elements: generator words like
//! "e(1,2;t+1)*d(2;t^-1)" and the {"diag": [...], "upper": {...}} object
//! shape.

use super::{diagonal_gen, elementary, multiply, GroupElement, IndexSet};
use crate::error::{Error, Result};
use crate::rings::parse::element_from_str;
use crate::rings::{RingElement, RingSpec};
use serde_json::{json, Map, Value};
use std::sync::Arc;

/// Parse a product of generators: `e(i,j;expr)` and `d(i;expr)` factors
/// joined by `*`; a bare `1` is the identity.
pub fn parse_generator_word(
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    word: &str,
) -> Result<GroupElement> {
    let s: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0usize;
    let mut acc = GroupElement::identity(ix, ring);
    if s.is_empty() {
        return Err(Error::Parse("empty group word".into()));
    }
    loop {
        match s.get(pos) {
            Some('1') => {
                pos += 1;
            }
            Some('e') | Some('d') => {
                let kind = s[pos];
                pos += 1;
                if s.get(pos) != Some(&'(') {
                    return Err(Error::Parse(format!("expected '(' at {pos} in group word")));
                }
                // find the matching close parenthesis
                let mut depth = 1;
                let start = pos + 1;
                let mut end = start;
                while end < s.len() && depth > 0 {
                    match s[end] {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    end += 1;
                }
                if depth != 0 {
                    return Err(Error::Parse("unbalanced parentheses in group word".into()));
                }
                let inner: String = s[start..end - 1].iter().collect();
                let (head, expr) = inner
                    .split_once(';')
                    .ok_or_else(|| Error::Parse("generator needs ';' before its entry".into()))?;
                let value = element_from_str(ring, expr)?;
                let factor = if kind == 'e' {
                    let (i, j) = head
                        .split_once(',')
                        .ok_or_else(|| Error::Parse("e(...) needs two indices".into()))?;
                    let i: usize =
                        i.parse().map_err(|_| Error::Parse(format!("bad index {i}")))?;
                    let j: usize =
                        j.parse().map_err(|_| Error::Parse(format!("bad index {j}")))?;
                    elementary(ix, ring, i, j, value)?
                } else {
                    let i: usize =
                        head.parse().map_err(|_| Error::Parse(format!("bad index {head}")))?;
                    diagonal_gen(ix, ring, i, value)?
                };
                acc = multiply(&acc, &factor)?;
                pos = end;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected {other:?} at {pos} in group word"
                )))
            }
        }
        match s.get(pos) {
            None => return Ok(acc),
            Some('*') => {
                pos += 1;
            }
            Some(c) => return Err(Error::Parse(format!("unexpected '{c}' in group word"))),
        }
    }
}

pub fn group_element_to_json(g: &GroupElement) -> Value {
    let n = g.ix().n();
    let diag: Vec<Value> =
        (1..=n).map(|i| Value::String(g.diag_entry(i).to_string())).collect();
    let mut upper = Map::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let r = g.upper_entry(i, j);
            if !r.is_zero() {
                upper.insert(format!("{i},{j}"), Value::String(r.to_string()));
            }
        }
    }
    json!({ "diag": diag, "upper": Value::Object(upper) })
}

pub fn group_element_from_json(
    ix: &IndexSet,
    ring: &Arc<RingSpec>,
    value: &Value,
) -> Result<GroupElement> {
    let n = ix.n();
    let obj = value.as_object().ok_or_else(|| Error::Parse("expected an object".into()))?;
    let mut diag = vec![RingElement::one(ring); n];
    if let Some(list) = obj.get("diag") {
        let list = list.as_array().ok_or_else(|| Error::Parse("diag must be a list".into()))?;
        if list.len() != n {
            return Err(Error::Parse(format!("diag must have {n} entries")));
        }
        for (k, v) in list.iter().enumerate() {
            let s = v.as_str().ok_or_else(|| Error::Parse("diag entries are strings".into()))?;
            diag[k] = element_from_str(ring, s)?;
        }
    }
    let mut upper = vec![RingElement::zero(ring); n * (n - 1) / 2];
    if let Some(map) = obj.get("upper") {
        let map = map.as_object().ok_or_else(|| Error::Parse("upper must be an object".into()))?;
        for (key, v) in map {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad position key {key}")))?;
            let i: usize = i.trim().parse().map_err(|_| Error::Parse(format!("bad index {i}")))?;
            let j: usize = j.trim().parse().map_err(|_| Error::Parse(format!("bad index {j}")))?;
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::IndexOutOfPattern(i, j));
            }
            let s = v.as_str().ok_or_else(|| Error::Parse("entries are strings".into()))?;
            let idx = (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
            upper[idx] = element_from_str(ring, s)?;
        }
    }
    GroupElement::from_parts(ix, ring, upper, diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_parsing() {
        let base = crate::rings::FqSpec::prime_field(2);
        let f = crate::rings::FqPoly::from_scalars(&base, &[1, 1, 0, 1]);
        let ring = RingSpec::localized_poly(base, true, vec![f]);
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let g = parse_generator_word(&ix, &ring, "e(1,2;t+1)*d(2;t^-1)").unwrap();
        let t = RingElement::var_t(&ring).unwrap();
        let t1 = t.add(&RingElement::one(&ring)).unwrap();
        assert_eq!(g.upper_entry(1, 2), &t1);
        assert_eq!(g.diag_entry(2), &t.inv_unit().unwrap());
        assert!(parse_generator_word(&ix, &ring, "d(1;t)").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let ring = RingSpec::s_integers(&[2, 3]);
        let ix = IndexSet::new(4, &[2, 3]).unwrap();
        let mut rng = crate::sampling::rng_from_seed(12);
        for _ in 0..50 {
            let g = crate::sampling::random_group_element(&ix, &ring, &mut rng);
            let v = group_element_to_json(&g);
            let back = group_element_from_json(&ix, &ring, &v).unwrap();
            assert_eq!(back, g);
        }
    }
}
