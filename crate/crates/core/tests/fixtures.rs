use std::path::PathBuf;

use segre_core::counts::euler_class;
use segre_core::io::{parse_binary_form, parse_catalog, parse_element, parse_line_input, parse_model, parse_poly};
use segre_core::line_index::{local_index, normalize_line, residue_degree, segre_index_n3, sum_local_indices};
use segre_core::{Field, FieldElement};
use serde_json::Value;

fn load(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

#[test]
fn fermat_catalog_sums_to_the_euler_class() {
    let (entries, ground, n) = parse_catalog(&load("fermat_cubic_lines.json"), None).unwrap();
    assert_eq!((entries.len(), n), (15, 2));
    let lines: Vec<_> = entries.into_iter().map(|e| e.line).collect();
    let degrees: usize = lines.iter().map(|l| residue_degree(l, &ground)).sum();
    assert_eq!(degrees, 27);
    let total = sum_local_indices(&lines, &ground).unwrap();
    assert_eq!(total.rank(), 27u32.into());
    assert!(total.gw_equal(&euler_class(2).unwrap()).unwrap());
    assert_eq!(total.render(), "15⟨1⟩+12⟨−1⟩");
}

#[test]
fn fermat_rational_line() {
    let (line, ground) = parse_line_input(&load("fermat_rational_line.json"), None).unwrap();
    let class = local_index(&line, &ground).unwrap();
    assert_eq!(class.render(), "⟨1⟩");
}

#[test]
fn quintic_product_line() {
    let (line, ground) = parse_line_input(&load("quintic_product_line.json"), None).unwrap();
    let local = local_index(&line, &ground).unwrap();
    assert_eq!(local.render(), "⟨−1⟩");
    let p = normalize_line(&line).unwrap().p;
    assert!(segre_index_n3(&p, &ground).unwrap().gw_equal(&local).unwrap());
}

fn eval3(poly: &segre_core::MultiPoly, p: &[FieldElement]) -> FieldElement {
    poly.eval(p).unwrap()
}

#[test]
fn clebsch_fixture_is_consistent() {
    let doc = load("clebsch_sextic.json");
    let q = Field::rational();
    let orig = &doc["original"];
    let b_orig: Vec<Vec<FieldElement>> = orig["B"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_array().unwrap().iter().map(|c| parse_element(c, &q).unwrap()).collect())
        .collect();

    // The four cubics vanish on the six points.
    for cubic in orig["cubics"].as_array().unwrap() {
        let f = parse_poly(cubic, &q).unwrap();
        assert!(f.is_homogeneous_of_degree(3));
        for p in &b_orig {
            assert!(eval3(&f, p).is_zero());
        }
    }

    // The parameterization lies on the conic x²/4 + y²/9 − z².
    let conic = parse_poly(&orig["conic"], &q).unwrap();
    let param: Vec<_> =
        orig["parameterization"].as_array().unwrap().iter().map(|c| parse_binary_form(c, &q).unwrap()).collect();
    assert!(conic.substitute_conic([&param[0], &param[1], &param[2]]).unwrap().is_zero());

    // Z' = x + y + z, X' = x, Y' = y takes the original data to the model.
    let model = parse_model(&doc).unwrap();
    for (p, (bx, by)) in b_orig.iter().zip(model.points()) {
        let z = &(&p[0] + &p[1]) + &p[2];
        assert_eq!(&(&p[0] * &z.inv().unwrap()), bx);
        assert_eq!(&(&p[1] * &z.inv().unwrap()), by);
    }
    let [q0, q1, q2] = model.conic().clone();
    assert_eq!(q0, param[0].add(&param[1]).unwrap().add(&param[2]).unwrap());
    assert_eq!(q1, param[0]);
    assert_eq!(q2, param[1]);

    let rep = model.verify_identity().unwrap();
    assert!(rep.passed());
    assert!(!rep.a_value.is_zero());
}
