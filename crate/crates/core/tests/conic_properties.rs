use proptest::prelude::*;
use segre_core::conic::{point_resultant, random_instance, transform_model, ConicModel};
use segre_core::line_index::construct::random_invertible;
use segre_core::{BinaryForm, ExactMatrix, Field, FieldElement};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pts(field: &Field, raw: &[(i64, i64)]) -> Vec<(FieldElement, FieldElement)> {
    raw.iter().map(|&(x, y)| (field.int(x), field.int(y))).collect()
}

fn conic(field: &Field, c: [[i64; 3]; 3]) -> [BinaryForm; 3] {
    c.map(|row| BinaryForm::from_ints(field, &row))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn main_identity_over_q(n in 3usize..=5, seed in any::<u64>()) {
        let m = random_instance(n, 5, seed, &Field::rational()).unwrap();
        let rep = m.verify_identity().unwrap();
        prop_assert!(rep.passed(), "A = {} but (det V)^2n·R = {}", rep.a_value, &rep.v_value * &rep.r_value);
    }

    #[test]
    fn main_identity_over_small_primes(n in 3usize..=5, seed in any::<u64>(), p in prop::sample::select(vec![7u64, 11, 101])) {
        let m = random_instance(n, 5, seed, &Field::prime(p).unwrap()).unwrap();
        prop_assert!(m.verify_identity().unwrap().passed());
    }

    #[test]
    fn kernel_property(n in 3usize..=5, seed in any::<u64>()) {
        let m = random_instance(n, 2, seed, &Field::rational()).unwrap();
        let vr = m.vandermonde_vb().hstack(&m.rb_matrix()).unwrap();
        prop_assert!(vr.mul(&m.kb_matrix().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn scaling_the_conic(n in 3usize..=4, seed in any::<u64>(), l in 2i64..=5) {
        let f = Field::rational();
        let m = random_instance(n, 4, seed, &f).unwrap();
        let lam = f.int(l);
        let scaled = m.with_conic(m.conic().clone().map(|q| q.scale(&lam))).unwrap();
        let e = 2 * n * (n - 1);
        prop_assert_eq!(scaled.a_invariant().unwrap(), &m.a_invariant().unwrap() * &lam.pow(e as u64));
        for (bx, by) in m.points() {
            prop_assert_eq!(
                point_resultant(scaled.conic(), bx, by).unwrap(),
                &point_resultant(m.conic(), bx, by).unwrap() * &lam.pow(4)
            );
        }
        prop_assert_eq!(4 * n * (n - 1) / 2, e);
    }

    #[test]
    fn resultant_transport_under_coordinate_change(n in 3usize..=4, seed in any::<u64>()) {
        let f = Field::rational();
        let m = random_instance(n, 4, seed, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let a = random_invertible(&mut rng, &f, 3, 3);
        let Ok((moved, ws)) = transform_model(&m, &a) else { return Ok(()) };
        let det_a = a.determinant().unwrap();
        for (((bx, by), (cx, cy)), w) in m.points().iter().zip(moved.points()).zip(&ws) {
            let old = point_resultant(m.conic(), bx, by).unwrap();
            let new = point_resultant(moved.conic(), cx, cy).unwrap();
            prop_assert_eq!(&new * &(w * w), &old * &(&det_a * &det_a));
            if !old.is_zero() {
                prop_assert_eq!(new.square_class().unwrap(), old.square_class().unwrap());
            }
        }
        prop_assert!(moved.verify_identity().unwrap().passed());
    }
}

#[test]
fn zero_locus_degenerations() {
    let f = Field::rational();
    let q = conic(&f, [[1, 0, 1], [1, 1, 0], [0, 1, 2]]);
    // Generic: neither side vanishes.
    let generic = ConicModel::new(3, pts(&f, &[(0, 3), (2, 5), (7, -1)]), q.clone()).unwrap();
    let rep = generic.verify_identity().unwrap();
    assert!(rep.passed() && !rep.a_value.is_zero());

    // Three collinear points: det V_B = 0.
    let collinear = ConicModel::new(3, pts(&f, &[(0, 0), (1, 2), (3, 6)]), q.clone()).unwrap();
    let rep = collinear.verify_identity().unwrap();
    assert!(rep.det_vb.is_zero() && rep.a_value.is_zero() && rep.passed());

    // Six points on a conic for n = 4: det V_B = 0.
    let on_conic = pts(&f, &[(5, 0), (-5, 0), (0, 5), (0, -5), (3, 4), (-4, 3)]);
    let circle = conic(&f, [[2, 1, 1], [1, 0, 3], [0, 1, 1]]);
    let rep = ConicModel::new(4, on_conic, circle).unwrap().verify_identity().unwrap();
    assert!(rep.det_vb.is_zero() && rep.a_value.is_zero() && rep.passed());

    // A point of B on the parameterized conic: R = 0 while det V_B ≠ 0.
    let t = (f.int(2), f.int(1));
    let img: Vec<FieldElement> = q.iter().map(|x| x.eval(&t.0, &t.1)).collect();
    let b_on = (&img[1] * &img[0].inv().unwrap(), &img[2] * &img[0].inv().unwrap());
    let mut b = pts(&f, &[(0, 3), (7, -1)]);
    b.push(b_on);
    let rep = ConicModel::new(3, b, q).unwrap().verify_identity().unwrap();
    assert!(!rep.det_vb.is_zero() && rep.r_value.is_zero() && rep.a_value.is_zero() && rep.passed());
}

#[test]
fn galois_stable_points_give_rational_invariants() {
    let q = Field::rational();
    for d in [-1i64, 2, 5, -3] {
        let l = Field::extension_int(&q, &[1, 0, -d]).unwrap();
        let s = l.generator().unwrap();
        let el = |a: i64, b: i64| &l.int(a) + &s.scale(b);
        let pair = |x: (i64, i64), y: (i64, i64)| [(el(x.0, x.1), el(y.0, y.1)), (el(x.0, -x.1), el(y.0, -y.1))];
        let qf = conic(&l, [[1, 1, 2], [0, 1, -1], [1, 0, 3]]);

        let mut b3 = vec![(l.int(2), l.int(5))];
        b3.extend(pair((1, 1), (0, 2)));
        let mut b4 = Vec::new();
        for (x, y) in [((1, 1), (0, 2)), ((3, 0), (1, -1)), ((-2, 1), (2, 1))] {
            b4.extend(pair(x, y));
        }
        for (n, b) in [(3, b3), (4, b4)] {
            let m = ConicModel::new(n, b, qf.clone()).unwrap();
            let rep = m.verify_identity().unwrap();
            assert!(rep.passed(), "d = {d}, n = {n}");
            assert!((&rep.det_vb * &rep.det_vb).in_base().is_some(), "(det V_B)² not rational for d = {d}");
            assert!(rep.r_value.in_base().is_some(), "R not rational for d = {d}");
            assert!(!rep.a_value.is_zero(), "d = {d}, n = {n}: det V_B = {}, R = {}", rep.det_vb, rep.r_value);
        }
    }
}

#[test]
fn kernel_property_on_degenerate_points() {
    let f = Field::rational();
    let m =
        ConicModel::new(3, pts(&f, &[(0, 0), (1, 1), (2, 2)]), conic(&f, [[1, 0, 1], [0, 1, 0], [1, 1, 1]])).unwrap();
    let k: ExactMatrix = m.kb_matrix().unwrap();
    assert!(m.vandermonde_vb().hstack(&m.rb_matrix()).unwrap().mul(&k).unwrap().is_zero());
}
