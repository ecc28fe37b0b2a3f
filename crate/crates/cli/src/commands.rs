//! The single-shot subcommands.

use std::path::Path;

use serde_json::Value;

use segre_core::counts::{castelnuovo_count, chern_number, double_factorial, euler_class, porteous_identity_check};
use segre_core::io::{element_to_json, parse_catalog, parse_field_str, parse_line_input, parse_model};
use segre_core::line_index::{
    index_determinant, normalize_line, residue_degree, segre_alpha_n2, segre_index_n3, trace_class,
};
use segre_core::{Error, Field, GwClass};

use crate::report::{Report, Table};
use crate::Failure;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn ground_arg(ground: Option<&str>) -> Result<Option<Field>, Failure> {
    Ok(ground.map(parse_field_str).transpose()?)
}

fn text(x: &impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn euler(n: u32) -> Result<Report, Failure> {
    if n < 2 {
        return Err(Failure::usage(format!("--n must be at least 2, got {n}")));
    }
    let c = chern_number(n)?;
    let class = euler_class(n)?;
    let inv = class.invariants()?;
    let mut r = Report::new("euler");
    r.field("c", text(&c))
        .field("signature", text(&inv.signature.expect("signature over Q")))
        .field("class", class.render())
        .field("n", n)
        .field("double_factorial", text(&double_factorial(n)?));
    Ok(r)
}

pub fn chern(n: u32) -> Result<Report, Failure> {
    if n < 2 {
        return Err(Failure::usage(format!("--n must be at least 2, got {n}")));
    }
    let c = chern_number(n)?;
    let df = double_factorial(n)?;
    // The difference must be even and nonnegative for the Euler class to exist.
    let diff = &c - &df;
    let parity_ok = diff >= 0.into() && (&diff % 2u32) == 0.into();
    let mut r = Report::new("chern");
    r.field("n", n).field("c", text(&c)).field("digits", c.to_string().len()).field("parity_check", parity_ok);
    if !parity_ok {
        r.exit_code = 4;
    }
    Ok(r)
}

pub fn castelnuovo(n: u32) -> Result<Report, Failure> {
    if n < 3 {
        return Err(Failure::usage(format!("--n must be at least 3, got {n}")));
    }
    let count = castelnuovo_count(n)?;
    let ok = porteous_identity_check(n)?;
    let mut r = Report::new("castelnuovo");
    r.field("n", n).field("count", text(&count)).field("porteous_identity", ok);
    if !ok {
        r.exit_code = 4;
    }
    Ok(r)
}

pub fn local_index(path: &Path, ground: Option<&str>) -> Result<Report, Failure> {
    let doc = read_json(path)?;
    let (line, ground) = parse_line_input(&doc, ground_arg(ground)?.as_ref())?;
    let det = index_determinant(&line)?;
    let class = trace_class(&det, &ground)?;
    let mut r = Report::new("local-index");
    r.field("det", element_to_json(&det));
    if det.field() == &ground {
        r.field("square_class", element_to_json(&det.square_class()?));
    }
    r.field("class", class.render()).field("degree", residue_degree(&line, &ground)).field("rank", text(&class.rank()));
    Ok(r)
}

pub fn segre_index(path: &Path, ground: Option<&str>) -> Result<Report, Failure> {
    let doc = read_json(path)?;
    let (line, ground) = parse_line_input(&doc, ground_arg(ground)?.as_ref())?;
    let p = normalize_line(&line)?.p;
    let seg = match line.n {
        2 => trace_class(&segre_alpha_n2(&p[0], &p[1])?, &ground)?,
        3 => segre_index_n3(&p, &ground)?,
        n => return Err(Error::Unsupported(format!("Segre indices for n = {n}")).into()),
    };
    let local = trace_class(&index_determinant(&line)?, &ground)?;
    let equal = seg.gw_equal(&local)?;
    let mut r = Report::new("segre-index");
    r.field("segre", seg.render()).field("local", local.render()).field("equal", equal);
    if !equal {
        r.exit_code = 4;
    }
    Ok(r)
}

pub fn sum_indices(path: &Path, ground: Option<&str>, expect_euler: bool) -> Result<Report, Failure> {
    let doc = read_json(path)?;
    let (entries, ground, n) = parse_catalog(&doc, ground_arg(ground)?.as_ref())?;
    let mut total = GwClass::zero(&ground);
    let mut rows = Vec::with_capacity(entries.len());
    for e in &entries {
        let det = index_determinant(&e.line)?;
        let class = trace_class(&det, &ground)?;
        rows.push(vec![
            Value::String(e.label.clone()),
            Value::from(residue_degree(&e.line, &ground)),
            element_to_json(&det),
            Value::String(class.render()),
        ]);
        total = total.add(&class)?;
    }
    let mut r = Report::new("sum-indices");
    r.table = Some(Table { headers: vec!["line", "degree", "det", "class"], rows });
    r.field("lines", entries.len()).field("rank", text(&total.rank())).field("sum", total.render());
    if expect_euler && !entries.is_empty() {
        let n = u32::try_from(n).map_err(|_| Failure::usage("n out of range"))?;
        let expected = euler_class(n)?;
        let matches = total.gw_equal(&expected)?;
        r.field("expected", expected.render()).field("matches", matches);
        if !matches {
            r.exit_code = 4;
        }
    }
    Ok(r)
}

pub fn model(path: &Path) -> Result<Report, Failure> {
    let doc = read_json(path)?;
    let m = parse_model(&doc)?;
    let rep = m.verify_identity()?;
    let mut r = Report::new("model");
    r.field("n", m.n())
        .field("det_vb", element_to_json(&rep.det_vb))
        .field("R", element_to_json(&rep.r_value))
        .field("A", element_to_json(&rep.a_value))
        .field("equal", rep.passed())
        .field("nonzero", !rep.a_value.is_zero());
    if !rep.passed() {
        r.exit_code = 4;
    }
    Ok(r)
}
