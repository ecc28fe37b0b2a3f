//! `segre verify`: seeded randomized trials and the closed-form family.
//!
//! Trial `t` of a run with seed `s` draws from ChaCha8 seeded with `s ^ t`,
//! so any single trial can be replayed on its own. Trials run on a rayon
//! pool capped by `SEGRE_MAX_THREADS` and are reported in trial order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use segre_core::conic::{closed_form_checks, random_instance};
use segre_core::io::{element_to_json, parse_field_str};
use segre_core::line_index::construct::{
    mix_forms, product_construction, random_form, random_invertible, standard_line,
};
use segre_core::line_index::{local_index, segre_index_n3};
use segre_core::poly::resultant;
use segre_core::{BinaryForm, Field};

use crate::report::{Report, Table};
use crate::{Failure, Mode};

pub struct Options {
    pub mode: Mode,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub field: String,
    pub coeff_bound: i64,
    pub a: Vec<i64>,
    pub threads: Option<usize>,
}

struct Trial {
    passed: bool,
    cells: Vec<Value>,
}

pub fn run(opts: &Options) -> Result<Report, Failure> {
    if opts.coeff_bound < 1 {
        return Err(Failure::usage("--coeff-bound must be positive"));
    }
    let field = parse_field_str(&opts.field)?;
    match opts.mode {
        Mode::SymmetricFamily => symmetric_family(opts),
        Mode::ConicIdentity => {
            if opts.n < 3 {
                return Err(Failure::usage(format!("conic models need --n ≥ 3, got {}", opts.n)));
            }
            let trials = run_trials(opts, |s| conic_trial(opts, &field, s))?;
            Ok(summarize("verify conic-identity", vec!["trial", "seed", "det_vb", "A_zero", "result"], trials))
        }
        Mode::SegreEqualsLocal => {
            if opts.n != 3 {
                return Err(Failure::usage(format!("segre-equals-local supports --n 3 only, got {}", opts.n)));
            }
            let trials = run_trials(opts, |s| segre_trial(opts, &field, s))?;
            Ok(summarize("verify segre-equals-local", vec!["trial", "seed", "segre", "local", "result"], trials))
        }
    }
}

fn run_trials(opts: &Options, f: impl Fn(u64) -> Trial + Sync) -> Result<Vec<Trial>, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        if t == 0 {
            return Err(Failure::usage("SEGRE_MAX_THREADS must be positive"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(pool.install(|| {
        (0..opts.trials)
            .into_par_iter()
            .map(|t| {
                let s = opts.seed ^ t as u64;
                let mut trial = f(s);
                trial.cells.splice(0..0, [Value::from(t), Value::String(s.to_string())]);
                trial
            })
            .collect()
    }))
}

fn summarize(command: &'static str, headers: Vec<&'static str>, trials: Vec<Trial>) -> Report {
    let total = trials.len();
    let passed = trials.iter().filter(|t| t.passed).count();
    let mut r = Report::new(command);
    r.table = Some(Table { headers, rows: trials.into_iter().map(|t| t.cells).collect() });
    r.field("passed", passed).field("trials", total);
    r.headline = Some(format!("{passed}/{total} passed"));
    if passed != total {
        r.exit_code = 4;
    }
    r
}

fn failed(message: String, width: usize) -> Trial {
    let mut cells = vec![Value::Null; width - 1];
    cells.push(Value::String(format!("FAIL: {message}")));
    Trial { passed: false, cells }
}

fn conic_trial(opts: &Options, field: &Field, seed: u64) -> Trial {
    let model = match random_instance(opts.n, opts.coeff_bound, seed, field) {
        Ok(m) => m,
        Err(e) => return failed(e.to_string(), 3),
    };
    match model.verify_identity() {
        Ok(rep) => {
            let result = match (rep.passed(), rep.a_value.is_zero()) {
                (true, false) => "equal",
                (true, true) => "equal (both zero)",
                (false, _) => "FAIL",
            };
            Trial {
                passed: rep.passed(),
                cells: vec![element_to_json(&rep.det_vb), Value::from(rep.a_value.is_zero()), Value::from(result)],
            }
        }
        Err(e) => failed(e.to_string(), 3),
    }
}

fn discriminant(q: &BinaryForm) -> segre_core::FieldElement {
    let c = q.coeffs();
    &(&c[1] * &c[1]) - &(&c[0] * &c[2]).scale(4)
}

/// Draw three quadratics with distinct simple roots and pairwise no common
/// root, so the product quartics have three honest nodes.
fn draw_quadratics(rng: &mut ChaCha8Rng, field: &Field, bound: i64) -> [BinaryForm; 3] {
    loop {
        let q: [BinaryForm; 3] = std::array::from_fn(|_| random_form(rng, field, 2, bound));
        if q.iter().any(|f| discriminant(f).is_zero()) {
            continue;
        }
        let pairs = [(0, 1), (0, 2), (1, 2)];
        if pairs.iter().all(|&(i, j)| resultant(&q[i], &q[j]).map(|r| !r.is_zero()).unwrap_or(false)) {
            return q;
        }
    }
}

fn segre_trial(opts: &Options, field: &Field, seed: u64) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = draw_quadratics(&mut rng, field, opts.coeff_bound);
    let mix = random_invertible(&mut rng, field, 3, opts.coeff_bound);
    let outcome = product_construction([&q[0], &q[1], &q[2]]).and_then(|p| mix_forms(&mix, &p)).and_then(|p| {
        let line = standard_line(&p)?;
        let local = local_index(&line, field)?;
        let seg = segre_index_n3(&p, field)?;
        let equal = seg.gw_equal(&local)?;
        Ok((seg, local, equal))
    });
    match outcome {
        Ok((seg, local, equal)) => Trial {
            passed: equal,
            cells: vec![
                Value::String(seg.render()),
                Value::String(local.render()),
                Value::from(if equal { "equal" } else { "FAIL" }),
            ],
        },
        Err(e) => failed(e.to_string(), 3),
    }
}

fn symmetric_family(opts: &Options) -> Result<Report, Failure> {
    let a: Vec<i64> = if opts.a.is_empty() { (1..=opts.n as i64).collect() } else { opts.a.clone() };
    if a.len() < 3 {
        return Err(Failure::usage(format!("the symmetric family needs at least 3 parameters, got {}", a.len())));
    }
    let steps = closed_form_checks(&a)?;
    let trials = steps
        .into_iter()
        .map(|s| Trial {
            passed: s.passed,
            cells: vec![Value::from(s.step), Value::from(s.name), Value::from(s.passed), Value::String(s.detail)],
        })
        .collect();
    let mut r = summarize("verify symmetric-family", vec!["step", "name", "passed", "detail"], trials);
    r.summary.insert(0, ("n", Value::from(a.len())));
    Ok(r)
}
