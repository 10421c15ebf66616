//! JSON form of group-ring vectors: a list of `{element, re, im}` records.
//!
//! Exact coefficients are written as rational strings (`"-3/4"`), float
//! coefficients as numbers; either form is accepted on input.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Coefficient, GroupVector, VectorTuple};
use crate::group::GroupSpec;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub element: String,
    pub re: Value,
    #[serde(default = "zero_value")]
    pub im: Value,
}

fn zero_value() -> Value {
    Value::from(0)
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::param(format!(
            "coefficient must be a string or number, got {other}"
        ))),
    }
}

pub fn vector_to_records<C: Coefficient>(v: &GroupVector<C>) -> Vec<TermRecord> {
    v.terms()
        .iter()
        .map(|(x, a)| {
            let (re, im) = a.to_json_parts();
            TermRecord {
                element: v.group().format_element(x),
                re,
                im,
            }
        })
        .collect()
}

pub fn vector_from_records<C: Coefficient>(
    group: &GroupSpec,
    records: &[TermRecord],
) -> Result<GroupVector<C>> {
    let mut terms = Vec::with_capacity(records.len());
    for r in records {
        let x = group.parse_element(&r.element)?;
        let a = C::parse_parts(&scalar_text(&r.re)?, &scalar_text(&r.im)?)?;
        terms.push((x, a));
    }
    GroupVector::from_terms(group, terms)
}

pub fn vector_to_json<C: Coefficient>(v: &GroupVector<C>) -> Value {
    serde_json::to_value(vector_to_records(v)).expect("records serialize")
}

pub fn vector_from_json<C: Coefficient>(group: &GroupSpec, json: &Value) -> Result<GroupVector<C>> {
    let records: Vec<TermRecord> = serde_json::from_value(json.clone())
        .map_err(|e| Error::param(format!("vector JSON: {e}")))?;
    vector_from_records(group, &records)
}

/// A tuple is either a single vector (list of records) or a list of them.
pub fn tuple_from_json<C: Coefficient>(group: &GroupSpec, json: &Value) -> Result<VectorTuple<C>> {
    match json {
        Value::Array(items) if items.iter().all(Value::is_array) && !items.is_empty() => {
            let comps = items
                .iter()
                .map(|item| vector_from_json(group, item))
                .collect::<Result<_>>()?;
            VectorTuple::new(group, comps)
        }
        _ => Ok(VectorTuple::single(vector_from_json(group, json)?)),
    }
}

pub fn tuple_to_json<C: Coefficient>(t: &VectorTuple<C>) -> Value {
    Value::Array(t.components().iter().map(vector_to_json).collect())
}
