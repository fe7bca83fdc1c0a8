//! Canonical JSON: sorted keys, polynomials as `[{e, c}]` with decimal
//! string coefficients, elements as reduced words over `1..=rank`.

use hecke_core::coxeter::{CoxeterGroup, Elem};
use hecke_core::hecke::Row;
use hecke_core::int::Int;
use hecke_core::ordgroup::Exp;
use hecke_core::poly::{LaurentPoly, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{input, CliResult};

pub fn elem(g: &CoxeterGroup, w: Elem) -> Value {
    Value::Array(g.word(w).iter().map(|&s| json!(s + 1)).collect())
}

pub fn elems(g: &CoxeterGroup, ws: &[Elem]) -> Value {
    Value::Array(ws.iter().map(|&w| elem(g, w)).collect())
}

/// Parses a word over `1..=rank` back into an element.
pub fn parse_elem(g: &CoxeterGroup, v: &Value) -> CliResult<Elem> {
    let Some(arr) = v.as_array() else {
        return input("an element must be a word array");
    };
    let mut word = Vec::with_capacity(arr.len());
    for x in arr {
        match x.as_u64() {
            Some(s) if s >= 1 && s as usize <= g.rank() => word.push((s - 1) as u8),
            _ => return input(format!("bad generator {x} in word")),
        }
    }
    Ok(g.from_word(&word))
}

pub fn exp(e: &[i32]) -> Value {
    json!(e)
}

pub fn int(c: &Int) -> Value {
    Value::String(c.to_string())
}

pub fn poly(p: &Poly) -> Value {
    Value::Array(p.terms().iter().map(|(e, c)| json!({"e": exp(e), "c": int(c)})).collect())
}

pub fn rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_poly(p: &LaurentPoly<BigRational>) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| json!({"e": exp(e), "c": rational(c)}))
            .collect(),
    )
}

pub fn parse_exp(v: &Value) -> CliResult<Exp> {
    let Some(arr) = v.as_array() else {
        return input("an exponent must be an integer array");
    };
    arr.iter()
        .map(|x| match x.as_i64().and_then(|x| i32::try_from(x).ok()) {
            Some(x) => Ok(x),
            None => input(format!("bad exponent entry {x}")),
        })
        .collect()
}

pub fn parse_int(v: &Value) -> CliResult<Int> {
    match v {
        Value::String(s) => s.parse().or_else(|_| input(format!("bad integer {s:?}"))),
        Value::Number(n) => match n.as_i64() {
            Some(x) => Ok(Int::from(x)),
            None => input(format!("bad integer {n}")),
        },
        _ => input(format!("expected an integer, got {v}")),
    }
}

pub fn parse_rational(v: &Value) -> CliResult<BigRational> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return input(format!("expected a rational, got {v}")),
    };
    let big = |t: &str| t.trim().parse::<BigInt>().or_else(|_| input(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = big(d)?;
            if d == BigInt::from(0) {
                return input("zero denominator");
            }
            Ok(BigRational::new(big(n)?, d))
        }
        None => Ok(BigRational::from_integer(big(&s)?)),
    }
}

pub fn parse_poly(v: &Value) -> CliResult<Poly> {
    let Some(arr) = v.as_array() else {
        return input("a polynomial must be a term array");
    };
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let (Some(e), Some(c)) = (t.get("e"), t.get("c")) else {
            return input("a term needs e and c");
        };
        terms.push((parse_exp(e)?, parse_int(c)?));
    }
    Ok(Poly::from_terms(terms))
}

/// A sparse row `z ↦ p` keyed by element index.
pub fn row(r: &Row) -> Value {
    Value::Array(r.iter().map(|(z, p)| json!([z, poly(p)])).collect())
}

pub fn parse_row(v: &Value) -> CliResult<Row> {
    let Some(arr) = v.as_array() else {
        return input("a row must be an array");
    };
    arr.iter()
        .map(|entry| match entry.as_array().map(Vec::as_slice) {
            Some([z, p]) => match z.as_u64().and_then(|z| u32::try_from(z).ok()) {
                Some(z) => Ok((z, parse_poly(p)?)),
                None => input("bad row index"),
            },
            _ => input("a row entry is [index, polynomial]"),
        })
        .collect()
}

pub fn object(pairs: impl IntoIterator<Item = (String, Value)>) -> Value {
    Value::Object(pairs.into_iter().collect::<Map<_, _>>())
}
