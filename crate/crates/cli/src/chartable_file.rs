//! Character tables and representation data read from JSON.
//!
//! ```json
//! {
//!   "conductor": 5,
//!   "labels": ["1_W", ...],
//!   "classes": [{"word": [1, 2], "size": 2}, ...],
//!   "values": [[["2"], ["0", "1"], ...], ...],
//!   "a": [[0], [3], ...],
//!   "f": [["1"], ...]
//! }
//! ```
//!
//! Values are coordinate vectors in the power basis of `Q(2cos(2π/N))`
//! (a bare rational string is accepted for rational values). `a` and `f`
//! are optional; `a` is needed for E1 and E2.

use std::path::Path;

use hecke_core::chartable::CharacterTable;
use hecke_core::coxeter::CoxeterGroup;
use hecke_core::numfield::{NfElem, NumberField};
use hecke_core::ordgroup::Exp;
use hecke_core::verify::RepInvariantData;
use serde_json::{json, Value};

use crate::error::{input, CliResult};
use crate::json;

fn nf(field: &std::sync::Arc<NumberField>, v: &Value) -> CliResult<NfElem> {
    let coords = match v {
        Value::Array(a) => a.iter().map(json::parse_rational).collect::<CliResult<Vec<_>>>()?,
        other => vec![json::parse_rational(other)?],
    };
    if coords.len() > field.degree() {
        return input(format!(
            "value has {} coordinates but the field has degree {}",
            coords.len(),
            field.degree()
        ));
    }
    Ok(field.from_coords(coords))
}

fn nf_json(x: &NfElem) -> Value {
    Value::Array(x.coords().iter().map(|c| Value::String(json::rational(c))).collect())
}

/// A table with its optional `a`- and `f`-values.
pub type ParsedTable = (CharacterTable, Option<Vec<Exp>>, Option<Vec<NfElem>>);

/// Parses and validates (shape, class sizes, orthonormality) a table
/// together with optional `a` and `f`.
pub fn parse(v: &Value, g: &CoxeterGroup) -> CliResult<ParsedTable> {
    let conductor = v.get("conductor").and_then(Value::as_u64).unwrap_or(1);
    let field = NumberField::real_cyclotomic(conductor as u32);
    let labels: Vec<String> = match v.get("labels").and_then(Value::as_array) {
        Some(a) => a
            .iter()
            .map(|l| l.as_str().map(String::from).ok_or(()))
            .collect::<Result<_, _>>()
            .or_else(|_| input("labels must be strings"))?,
        None => return input("missing labels"),
    };
    let Some(classes) = v.get("classes").and_then(Value::as_array) else {
        return input("missing classes");
    };
    let mut class_words = Vec::with_capacity(classes.len());
    let mut class_sizes = Vec::with_capacity(classes.len());
    for c in classes {
        let (Some(word), Some(size)) = (c.get("word"), c.get("size").and_then(Value::as_u64)) else {
            return input("a class needs word and size");
        };
        let w = json::parse_elem(g, word)?;
        class_words.push(g.word(w).to_vec());
        class_sizes.push(size);
    }
    let Some(rows) = v.get("values").and_then(Value::as_array) else {
        return input("missing values");
    };
    let values = rows
        .iter()
        .map(|r| match r.as_array() {
            Some(r) => r.iter().map(|x| nf(&field, x)).collect::<CliResult<Vec<_>>>(),
            None => input("a character row must be an array"),
        })
        .collect::<CliResult<Vec<_>>>()?;
    let table = CharacterTable::new(field.clone(), labels, class_words, class_sizes, values, g.size())?;
    let a = match v.get("a") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => Some(a.iter().map(json::parse_exp).collect::<CliResult<Vec<_>>>()?),
        Some(_) => return input("a must be a list of exponent vectors"),
    };
    let f = match v.get("f") {
        None | Some(Value::Null) => None,
        Some(Value::Array(f)) => Some(f.iter().map(|x| nf(&field, x)).collect::<CliResult<Vec<_>>>()?),
        Some(_) => return input("f must be a list of field elements"),
    };
    Ok((table, a, f))
}

pub fn load(path: &Path, g: &CoxeterGroup) -> CliResult<ParsedTable> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    parse(&v, g)
}

/// Representation data for E1/E2; `a` must be present.
pub fn load_rep_data(path: &Path, g: &CoxeterGroup) -> CliResult<RepInvariantData> {
    let (table, a, f) = load(path, g)?;
    let Some(a) = a else {
        return input(format!("{} has no a-values", path.display()));
    };
    Ok(RepInvariantData::new(table, a, f)?)
}

pub fn to_json(table: &CharacterTable, a: Option<&[Exp]>, f: Option<&[NfElem]>) -> Value {
    let mut v = json!({
        "conductor": table.field.conductor(),
        "labels": table.labels,
        "classes": table.class_words.iter().zip(&table.class_sizes)
            .map(|(w, s)| json!({"word": w.iter().map(|x| x + 1).collect::<Vec<_>>(), "size": s}))
            .collect::<Vec<_>>(),
        "values": table.values.iter().map(|r| r.iter().map(nf_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    if let Some(a) = a {
        v["a"] = Value::Array(a.iter().map(|e| json::exp(e)).collect());
    }
    if let Some(f) = f {
        v["f"] = Value::Array(f.iter().map(nf_json).collect());
    }
    v
}
