//! JSON schemas for fields, elements, polynomials, lines, catalogs, models
//! and GW classes.
//!
//! * Field descriptors: `"Q"`, `"F_101"` or `"fp:101"`, or objects
//!   `{"kind":"Q"}`, `{"kind":"Fp","p":101}`,
//!   `{"kind":"ext","base":…,"min_poly":["1","1","1"]}` with the minimal
//!   polynomial listed from the leading coefficient down.
//! * Elements of Q or F_p: strings `"p/q"` or `"p"`, or JSON integers.
//!   Elements of an extension: arrays of base coordinates in the power basis
//!   `1, z, z², …`.
//! * Polynomials: `{"vars":[…], "terms":[{"exps":[…], "coeff":"p/q"}]}`.
//! * Binary forms: `{"degree":d, "coeffs":[…]}`, leading `u^d` first.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::conic::ConicModel;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::gw::GwClass;
use crate::line_index::LineOnHypersurface;
use crate::matrix::ExactMatrix;
use crate::poly::{BinaryForm, MultiPoly};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_field(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => parse_field_str(s),
        Value::Object(o) => {
            let kind = o.get("kind").and_then(Value::as_str).ok_or_else(|| perr("field descriptor needs \"kind\""))?;
            match kind {
                "Q" | "rational" => Ok(Field::rational()),
                "Fp" | "prime" => {
                    let p =
                        o.get("p").and_then(Value::as_u64).ok_or_else(|| perr("prime field needs integer \"p\""))?;
                    Field::prime(p)
                }
                "ext" | "extension" => {
                    let base = parse_field(o.get("base").ok_or_else(|| perr("extension needs \"base\""))?)?;
                    let mp = o
                        .get("min_poly")
                        .and_then(Value::as_array)
                        .ok_or_else(|| perr("extension needs \"min_poly\""))?;
                    let coeffs = mp.iter().map(|c| parse_element(c, &base)).collect::<Result<Vec<_>>>()?;
                    Field::extension(&base, &coeffs)
                }
                other => Err(perr(format!("unknown field kind {other:?}"))),
            }
        }
        _ => Err(perr("field descriptor must be a string or an object")),
    }
}

/// `Q`, `F_p`, `fp:p`.
pub fn parse_field_str(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::rational());
    }
    let num = t.strip_prefix("fp:").or_else(|| t.strip_prefix("F_")).or_else(|| t.strip_prefix("Fp:"));
    match num {
        Some(p) => Field::prime(p.parse::<u64>().map_err(|_| perr(format!("bad prime in {t:?}")))?),
        None => Err(perr(format!("unknown field {t:?}; use Q or fp:P"))),
    }
}

pub fn field_to_json(f: &Field) -> Value {
    if f.is_rational() {
        json!({"kind": "Q"})
    } else if f.is_prime_field() {
        json!({"kind": "Fp", "p": f.characteristic()})
    } else {
        let mp: Vec<Value> = f.min_poly().unwrap().iter().map(element_to_json).collect();
        json!({"kind": "ext", "base": field_to_json(&f.base()), "min_poly": mp})
    }
}

fn parse_base_scalar(v: &Value, field: &Field) -> Result<FieldElement> {
    match v {
        Value::String(s) => field.parse_base(s),
        Value::Number(n) => {
            let s = n.to_string();
            if s.contains(['.', 'e', 'E']) {
                return Err(perr(format!("non-integer number {s}; use a \"p/q\" string")));
            }
            field.parse_base(&s)
        }
        _ => Err(perr(format!("expected a number or \"p/q\" string, got {v}"))),
    }
}

pub fn parse_element(v: &Value, field: &Field) -> Result<FieldElement> {
    if !field.is_extension() {
        return parse_base_scalar(v, field);
    }
    let base = field.base();
    match v {
        Value::Array(a) => {
            if a.len() > field.degree() {
                return Err(perr(format!("{} coordinates for a field of degree {}", a.len(), field.degree())));
            }
            let coords = a.iter().map(|c| parse_base_scalar(c, &base)).collect::<Result<Vec<_>>>()?;
            field.from_coords(&coords)
        }
        _ => Ok(parse_base_scalar(v, &base)?.embed(field)?),
    }
}

pub fn element_to_json(x: &FieldElement) -> Value {
    if x.field().is_extension() {
        Value::Array(x.coords().iter().map(element_to_json).collect())
    } else {
        Value::String(x.to_string())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyTerm {
    pub exps: Vec<u32>,
    pub coeff: Value,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<PolyTerm>,
}

pub fn parse_poly(v: &Value, field: &Field) -> Result<MultiPoly> {
    let pj: PolyJson = serde_json::from_value(v.clone()).map_err(|e| perr(format!("polynomial: {e}")))?;
    let nv = pj.vars.len();
    let terms =
        pj.terms.iter().map(|t| Ok((t.exps.clone(), parse_element(&t.coeff, field)?))).collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(field, nv, terms)
}

pub fn poly_to_json(p: &MultiPoly, vars: &[&str]) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(e, c)| json!({"exps": e, "coeff": element_to_json(c)}))
        .collect();
    json!({"vars": vars, "terms": terms})
}

pub fn parse_binary_form(v: &Value, field: &Field) -> Result<BinaryForm> {
    let (coeffs, declared) = match v {
        Value::Array(a) => (a.clone(), None),
        Value::Object(o) => {
            let c = o.get("coeffs").and_then(Value::as_array).ok_or_else(|| perr("binary form needs \"coeffs\""))?;
            (c.clone(), o.get("degree").and_then(Value::as_u64))
        }
        _ => return Err(perr("binary form must be an object or an array")),
    };
    if let Some(d) = declared {
        if d as usize + 1 != coeffs.len() {
            return Err(perr(format!("degree {d} needs {} coefficients, got {}", d + 1, coeffs.len())));
        }
    }
    let c = coeffs.iter().map(|x| parse_element(x, field)).collect::<Result<Vec<_>>>()?;
    BinaryForm::new(field, c)
}

pub fn binary_form_to_json(f: &BinaryForm) -> Value {
    json!({"degree": f.degree(), "coeffs": f.coeffs().iter().map(element_to_json).collect::<Vec<_>>()})
}

/// `{"span":[[…],[…]], "field":…}` with the hypersurface supplied separately.
pub fn parse_line_span(v: &Value, default_field: &Field) -> Result<ExactMatrix> {
    let field = match v.get("field") {
        Some(f) => parse_field(f)?,
        None => default_field.clone(),
    };
    let rows = v.get("span").and_then(Value::as_array).ok_or_else(|| perr("line needs \"span\""))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| perr("span rows must be arrays"))?
                .iter()
                .map(|x| parse_element(x, &field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.len() != 2 {
        return Err(perr(format!("span needs 2 rows, got {}", parsed.len())));
    }
    ExactMatrix::from_rows(&field, parsed)
}

/// The ground field named in a document, defaulting to Q.
pub fn parse_ground(doc: &Value) -> Result<Field> {
    doc.get("ground").map(parse_field).unwrap_or_else(|| Ok(Field::rational()))
}

fn parse_n(doc: &Value) -> Result<usize> {
    doc.get("n").and_then(Value::as_u64).map(|n| n as usize).ok_or_else(|| perr("document needs integer \"n\""))
}

/// `{"n":…, "F":…, "line":{"span":…, "field":…}, "ground":…}`. A ground
/// field passed by the caller takes precedence over the document's.
pub fn parse_line_input(doc: &Value, ground: Option<&Field>) -> Result<(LineOnHypersurface, Field)> {
    let n = parse_n(doc)?;
    let ground = match ground {
        Some(g) => g.clone(),
        None => parse_ground(doc)?,
    };
    let f = parse_poly(doc.get("F").ok_or_else(|| perr("document needs \"F\""))?, &ground)?;
    let span = parse_line_span(doc.get("line").ok_or_else(|| perr("document needs \"line\""))?, &ground)?;
    Ok((LineOnHypersurface::new(n, f, span)?, ground))
}

/// A labelled catalog line. A line defined over an extension stands for its
/// whole Galois orbit; its trace form accounts for every conjugate.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: String,
    pub line: LineOnHypersurface,
}

/// `{"n":…, "F":…, "ground":…, "lines":[{"label":…, "span":…, "field":…}]}`.
pub fn parse_catalog(doc: &Value, ground: Option<&Field>) -> Result<(Vec<CatalogEntry>, Field, usize)> {
    let n = parse_n(doc)?;
    let ground = match ground {
        Some(g) => g.clone(),
        None => parse_ground(doc)?,
    };
    let f = parse_poly(doc.get("F").ok_or_else(|| perr("catalog needs \"F\""))?, &ground)?;
    let lines = doc.get("lines").and_then(Value::as_array).ok_or_else(|| perr("catalog needs \"lines\""))?;
    let mut out = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        let span = parse_line_span(l, &ground)?;
        let label =
            l.get("label").and_then(Value::as_str).map(str::to_owned).unwrap_or_else(|| format!("line {}", i + 1));
        let line = LineOnHypersurface::new(n, f.clone(), span)?;
        out.push(CatalogEntry { label, line });
    }
    Ok((out, ground, n))
}

/// `{"n":…, "B":[["bx","by"],…], "Q":[[…]×3], "field":…}`.
pub fn parse_model(doc: &Value) -> Result<ConicModel> {
    let n = parse_n(doc)?;
    let field = match doc.get("field") {
        Some(f) => parse_field(f)?,
        None => Field::rational(),
    };
    let pts = doc.get("B").and_then(Value::as_array).ok_or_else(|| perr("model needs \"B\""))?;
    let b = pts
        .iter()
        .map(|p| {
            let a = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| perr("points are [bx, by] pairs"))?;
            Ok((parse_element(&a[0], &field)?, parse_element(&a[1], &field)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let qs = doc
        .get("Q")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 3)
        .ok_or_else(|| perr("model needs three forms in \"Q\""))?;
    let forms = qs.iter().map(|q| parse_binary_form(q, &field)).collect::<Result<Vec<_>>>()?;
    let [q0, q1, q2]: [BinaryForm; 3] = forms.try_into().unwrap();
    ConicModel::new(n, b, [q0, q1, q2])
}

pub fn model_to_json(m: &ConicModel) -> Value {
    let b: Vec<Value> = m.points().iter().map(|(x, y)| json!([element_to_json(x), element_to_json(y)])).collect();
    let q: Vec<Value> =
        m.conic().iter().map(|f| Value::Array(f.coeffs().iter().map(element_to_json).collect())).collect();
    json!({"n": m.n(), "field": field_to_json(m.field()), "B": b, "Q": q})
}

/// Largest rank for which the expanded diagonal is written out.
const DIAGONAL_LIMIT: u32 = 4096;

/// `{"base":…, "diagonal":[…]}` for moderate ranks, plus run-length
/// `terms`, rank, signature and the rendered class string.
pub fn gw_to_json(c: &GwClass) -> Value {
    let mut obj = serde_json::Map::new();
    let base = if c.base().is_extension() { field_to_json(c.base()) } else { Value::String(c.base().to_string()) };
    obj.insert("base".into(), base);
    let rank = c.rank();
    if rank <= BigUint::from(DIAGONAL_LIMIT) {
        let diag: Vec<Value> = c.diagonal().unwrap().iter().map(element_to_json).collect();
        obj.insert("diagonal".into(), Value::Array(diag));
    }
    let terms: Vec<Value> =
        c.terms().iter().map(|(a, m)| json!({"entry": element_to_json(a), "multiplicity": m.to_string()})).collect();
    obj.insert("terms".into(), Value::Array(terms));
    obj.insert("rank".into(), Value::String(rank.to_string()));
    if let Ok(inv) = c.invariants() {
        if let Some(sig) = inv.signature {
            obj.insert("signature".into(), Value::String(sig.to_string()));
        }
        obj.insert("discriminant".into(), element_to_json(&inv.discriminant));
    }
    obj.insert("class".into(), Value::String(c.render()));
    Value::Object(obj)
}

/// Accepts `{"base":…, "diagonal":[…]}` or `{"base":…, "terms":[{"entry","multiplicity"}]}`.
pub fn parse_gw(v: &Value) -> Result<GwClass> {
    let base = parse_field(v.get("base").ok_or_else(|| perr("class needs \"base\""))?)?;
    if let Some(d) = v.get("diagonal").and_then(Value::as_array) {
        let entries = d.iter().map(|x| parse_element(x, &base)).collect::<Result<Vec<_>>>()?;
        return GwClass::from_diagonal(&base, &entries);
    }
    let terms =
        v.get("terms").and_then(Value::as_array).ok_or_else(|| perr("class needs \"diagonal\" or \"terms\""))?;
    let mut acc = GwClass::zero(&base);
    for t in terms {
        let a = parse_element(t.get("entry").ok_or_else(|| perr("term needs \"entry\""))?, &base)?;
        let m: BigUint = match t.get("multiplicity") {
            Some(Value::String(s)) => s.parse().map_err(|_| perr(format!("bad multiplicity {s:?}")))?,
            Some(Value::Number(n)) => BigUint::from(n.as_u64().ok_or_else(|| perr("bad multiplicity"))?),
            _ => return Err(perr("term needs \"multiplicity\"")),
        };
        acc = acc.add(&GwClass::multiple(&a, m)?)?;
    }
    Ok(acc)
}
