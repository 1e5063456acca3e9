//! JSON documents describing named maps over a single quadratic field.
//!
//! Document shape:
//!
//! ```json
//! {
//!   "field_d": 2,
//!   "maps": {
//!     "z": {
//!       "breakpoints": ["0", "1"],
//!       "pieces": [
//!         {"a": "1", "b": "1", "c": "0", "d": "1"},
//!         {"a": "1", "b": "-2", "c": "3/2", "d": "-2"},
//!         {"a": "1", "b": "1", "c": "0", "d": "1"}
//!       ]
//!     }
//!   }
//! }
//! ```
//!
//! Numbers are exact: either a string `"num/den"` (or `"n"`), a JSON integer,
//! or an object `{"p": ..., "q": ...}` meaning `p + q*sqrt(field_d)`.

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, FieldSpec, QuadExt, Rational};
use crate::moebius::MoebiusMap;
use crate::pmap::PiecewiseProjMap;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct MapDocument {
    pub spec: FieldSpec,
    pub maps: BTreeMap<String, PiecewiseProjMap>,
}

fn rational_from_value(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from(num_bigint::BigInt::from(i)))
            } else {
                Err(Error::ParseError(
                    at.to_string(),
                    "non-integer JSON numbers are not exact; use \"num/den\"".into(),
                ))
            }
        }
        _ => Err(Error::ParseError(
            at.to_string(),
            "expected a rational as string or integer".into(),
        )),
    }
}

/// Parse an exact number in the given field.
pub fn quadext_from_value(v: &Value, spec: FieldSpec, at: &str) -> Result<QuadExt> {
    match v {
        Value::Object(o) => {
            let p = match o.get("p") {
                Some(pv) => rational_from_value(pv, at)?,
                None => Rational::zero(),
            };
            let q = match o.get("q") {
                Some(qv) => rational_from_value(qv, at)?,
                None => Rational::zero(),
            };
            if spec.is_rational() && !q.is_zero() {
                return Err(Error::ParseError(
                    at.to_string(),
                    "irrational part requires field_d > 1".into(),
                ));
            }
            Ok(QuadExt::new(p, q, spec))
        }
        _ => Ok(QuadExt::from_rational(rational_from_value(v, at)?, spec)),
    }
}

/// Serialize an exact number, using the string shorthand when rational.
pub fn quadext_to_value(x: &QuadExt) -> Value {
    if x.is_rational() {
        Value::String(format_rational(x.rational_part()))
    } else {
        json!({
            "p": format_rational(x.rational_part()),
            "q": format_rational(x.sqrt_part()),
        })
    }
}

fn moebius_from_value(v: &Value, spec: FieldSpec, at: &str) -> Result<MoebiusMap> {
    let o = v.as_object().ok_or_else(|| {
        Error::ParseError(at.to_string(), "piece must be an object".into())
    })?;
    let coeff = |k: &str| -> Result<QuadExt> {
        match o.get(k) {
            Some(cv) => quadext_from_value(cv, spec, &format!("{at}.{k}")),
            None => Err(Error::ParseError(
                at.to_string(),
                format!("missing coefficient '{k}'"),
            )),
        }
    };
    MoebiusMap::new(coeff("a")?, coeff("b")?, coeff("c")?, coeff("d")?)
}

pub fn moebius_to_value(m: &MoebiusMap) -> Value {
    let (a, b, c, d) = m.coeffs();
    json!({
        "a": quadext_to_value(a),
        "b": quadext_to_value(b),
        "c": quadext_to_value(c),
        "d": quadext_to_value(d),
    })
}

pub fn map_from_value(v: &Value, spec: FieldSpec, name: &str) -> Result<PiecewiseProjMap> {
    let o = v
        .as_object()
        .ok_or_else(|| Error::ValidationError(name.into(), "map must be an object".into()))?;
    let bk_val = o
        .get("breakpoints")
        .and_then(Value::as_array)
        .ok_or_else(|| {
            Error::ValidationError(name.into(), "missing 'breakpoints' array".into())
        })?;
    let pieces_val = o.get("pieces").and_then(Value::as_array).ok_or_else(|| {
        Error::ValidationError(name.into(), "missing 'pieces' array".into())
    })?;
    let mut breakpoints = Vec::with_capacity(bk_val.len());
    for (i, bv) in bk_val.iter().enumerate() {
        breakpoints.push(quadext_from_value(
            bv,
            spec,
            &format!("{name}.breakpoints[{i}]"),
        )?);
    }
    let mut pieces = Vec::with_capacity(pieces_val.len());
    for (i, pv) in pieces_val.iter().enumerate() {
        pieces.push(moebius_from_value(
            pv,
            spec,
            &format!("{name}.pieces[{i}]"),
        )?);
    }
    PiecewiseProjMap::new(breakpoints, pieces)
        .map_err(|e| Error::ValidationError(name.into(), e.to_string()))
}

pub fn map_to_value(m: &PiecewiseProjMap) -> Value {
    json!({
        "breakpoints": m.breakpoints().iter().map(quadext_to_value).collect::<Vec<_>>(),
        "pieces": m.pieces().iter().map(moebius_to_value).collect::<Vec<_>>(),
    })
}

/// Parse a whole document from JSON text.
pub fn parse_document(text: &str) -> Result<MapDocument> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::ParseError("document".into(), e.to_string()))?;
    let o = v.as_object().ok_or_else(|| {
        Error::ParseError("document".into(), "top level must be an object".into())
    })?;
    let d = o
        .get("field_d")
        .map(|dv| {
            dv.as_u64().ok_or_else(|| {
                Error::ParseError("field_d".into(), "must be a positive integer".into())
            })
        })
        .transpose()?
        .unwrap_or(1);
    let spec = FieldSpec::new(d)?;
    let mut maps = BTreeMap::new();
    if let Some(mv) = o.get("maps") {
        let mo = mv.as_object().ok_or_else(|| {
            Error::ParseError("maps".into(), "must be an object of named maps".into())
        })?;
        for (name, body) in mo {
            maps.insert(name.clone(), map_from_value(body, spec, name)?);
        }
    }
    Ok(MapDocument { spec, maps })
}

pub fn document_to_string(doc: &MapDocument) -> String {
    let mut maps = Map::new();
    for (name, m) in &doc.maps {
        maps.insert(name.clone(), map_to_value(m));
    }
    let v = json!({
        "field_d": doc.spec.d(),
        "maps": Value::Object(maps),
    });
    serde_json::to_string_pretty(&v).expect("valid JSON value")
}

impl MapDocument {
    pub fn get(&self, name: &str) -> Result<&PiecewiseProjMap> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::ValidationError(name.into(), "no such map in document".into()))
    }
}
