//! JSON spec files.
//!
//! Three shapes are accepted:
//!
//! ```json
//! {"label": "...", "b2": COEFF, "a": COEFF | "zero", "b_sign": "+" | "-"}
//! {"family": "laguerre", "alpha": "1/2"}
//! {"moments": ["1", "1", "2", "6", "24"], "count": 2}
//! ```
//!
//! where `COEFF` is `{"expr": "...", "params": {"name": "p/q"}}` or
//! `{"prefix": ["p/q", ...], "tail_expr": "...", "params": {...}}`.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use super::{builtin_family, expr, BSign, MomentSequence, RecurrenceSpec};
use crate::error::SpecError;
use crate::seqcore::rational::parse_rational;
use crate::seqcore::{EpSeq, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecInput {
    Recurrence(RecurrenceSpec),
    Moments { label: String, moments: MomentSequence, count: usize },
}

impl SpecInput {
    pub fn label(&self) -> &str {
        match self {
            SpecInput::Recurrence(s) => &s.label,
            SpecInput::Moments { label, .. } => label,
        }
    }
}

fn field_err(field: &str, msg: impl Into<String>) -> SpecError {
    SpecError::Field { field: field.to_string(), msg: msg.into() }
}

fn rational_field(field: &str, v: &Value) -> Result<Rational, SpecError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| field_err(field, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
        _ => Err(field_err(field, "expected a rational string \"p/q\"")),
    }
}

fn params_field(field: &str, obj: &Map<String, Value>) -> Result<BTreeMap<String, Rational>, SpecError> {
    let Some(params) = obj.get("params") else {
        return Ok(BTreeMap::new());
    };
    let params = params.as_object().ok_or_else(|| field_err(&format!("{field}.params"), "expected an object"))?;
    params.iter().map(|(k, v)| Ok((k.clone(), rational_field(&format!("{field}.params.{k}"), v)?))).collect()
}

fn coeff_field(field: &str, v: &Value) -> Result<EpSeq, SpecError> {
    let obj = v
        .as_object()
        .ok_or_else(|| field_err(field, "expected {\"expr\": ...} or {\"prefix\": ..., \"tail_expr\": ...}"))?;
    let params = params_field(field, obj)?;
    let lower = |key: &str, text: &Value| -> Result<_, SpecError> {
        let name = format!("{field}.{key}");
        let text = text.as_str().ok_or_else(|| field_err(&name, "expected a string"))?;
        expr::parse_coeff_expr(text, &params).map_err(|source| SpecError::Expr { field: name, source })
    };
    if let Some(e) = obj.get("expr") {
        return Ok(EpSeq::poly(lower("expr", e)?));
    }
    let tail = obj.get("tail_expr").ok_or_else(|| field_err(field, "missing `expr` or `tail_expr`"))?;
    let tail = lower("tail_expr", tail)?;
    let prefix = match obj.get("prefix") {
        None => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| rational_field(&format!("{field}.prefix[{i}]"), v))
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(field_err(&format!("{field}.prefix"), "expected an array")),
    };
    Ok(EpSeq::new(prefix, tail))
}

fn label_of(obj: &Map<String, Value>, default: &str) -> Result<String, SpecError> {
    match obj.get("label") {
        None => Ok(default.to_string()),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(field_err("label", "expected a string")),
    }
}

pub fn parse_spec_value(v: &Value) -> Result<SpecInput, SpecError> {
    let obj = v.as_object().ok_or_else(|| field_err("<root>", "expected a JSON object"))?;

    if let Some(family) = obj.get("family") {
        let name = family.as_str().ok_or_else(|| field_err("family", "expected a string"))?;
        let mut params = BTreeMap::new();
        if let Some(alpha) = obj.get("alpha") {
            params.insert("alpha".to_string(), rational_field("alpha", alpha)?);
        }
        let mut spec = builtin_family(name, &params)?;
        if obj.contains_key("label") {
            spec.label = label_of(obj, "")?;
        }
        return Ok(SpecInput::Recurrence(spec));
    }

    if let Some(moments) = obj.get("moments") {
        let items = moments.as_array().ok_or_else(|| field_err("moments", "expected an array"))?;
        let moments = items
            .iter()
            .enumerate()
            .map(|(i, v)| rational_field(&format!("moments[{i}]"), v))
            .collect::<Result<Vec<_>, _>>()?;
        let count = obj
            .get("count")
            .ok_or_else(|| field_err("count", "missing"))?
            .as_u64()
            .ok_or_else(|| field_err("count", "expected a natural number"))? as usize;
        let moments = MomentSequence::new(moments)?;
        return Ok(SpecInput::Moments { label: label_of(obj, "moments")?, moments, count });
    }

    let b2 = coeff_field("b2", obj.get("b2").ok_or_else(|| field_err("b2", "missing"))?)?;
    let a = match obj.get("a") {
        None => EpSeq::zero(),
        Some(Value::String(s)) if s == "zero" => EpSeq::zero(),
        Some(v) => coeff_field("a", v)?,
    };
    let b_sign = match obj.get("b_sign") {
        None => BSign::Positive,
        Some(Value::String(s)) if s == "+" => BSign::Positive,
        Some(Value::String(s)) if s == "-" => BSign::Negative,
        Some(_) => return Err(field_err("b_sign", "expected \"+\" or \"-\"")),
    };
    Ok(SpecInput::Recurrence(RecurrenceSpec::new(label_of(obj, "spec")?, b2, a, b_sign)))
}

pub fn parse_spec_str(text: &str) -> Result<SpecInput, SpecError> {
    let v: Value = serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))?;
    parse_spec_value(&v)
}
