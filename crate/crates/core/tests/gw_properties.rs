use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use segre_core::gw::{hilbert_symbol, trace_form, trace_gram, Place};
use segre_core::{Field, FieldElement, GwClass};

fn class(field: &Field, entries: &[i64]) -> GwClass {
    let e: Vec<FieldElement> = entries.iter().map(|&a| field.int(a)).collect();
    GwClass::from_diagonal(field, &e).unwrap()
}

fn nonzero_entries(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((-30i64..=30).prop_filter("nonzero", |x| *x != 0), 1..=max_len)
}

fn small_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

proptest! {
    #[test]
    fn ring_laws(which in 0usize..2, a in nonzero_entries(3), b in nonzero_entries(3), c in nonzero_entries(2)) {
        let field = if which == 0 { Field::rational() } else { Field::prime(7).unwrap() };
        // Over F_7 some draws reduce to 0; skip those.
        prop_assume!(a.iter().chain(&b).chain(&c).all(|x| x % 7 != 0 || which == 0));
        let (x, y, z) = (class(&field, &a), class(&field, &b), class(&field, &c));
        prop_assert!(x.add(&y).unwrap().gw_equal(&y.add(&x).unwrap()).unwrap());
        let l = x.add(&y).unwrap().add(&z).unwrap();
        let r = x.add(&y.add(&z).unwrap()).unwrap();
        prop_assert!(l.gw_equal(&r).unwrap());
        let dist_l = x.mul(&y.add(&z).unwrap()).unwrap();
        let dist_r = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert!(dist_l.gw_equal(&dist_r).unwrap());
    }

    #[test]
    fn a_plus_minus_a_is_hyperbolic(a in (-1000i64..=1000).prop_filter("nonzero", |x| *x != 0)) {
        let q = Field::rational();
        let c = class(&q, &[a, -a]);
        prop_assert!(c.gw_equal(&GwClass::hyperbolic(&q, BigUint::from(1u32))).unwrap());
        let f = Field::prime(101).unwrap();
        prop_assume!(a % 101 != 0);
        let cp = class(&f, &[a, -a]);
        prop_assert!(cp.gw_equal(&GwClass::hyperbolic(&f, BigUint::from(1u32))).unwrap());
    }

    #[test]
    fn hilbert_reciprocity(a in (-400i64..=400).prop_filter("nonzero", |x| *x != 0),
                           b in (-400i64..=400).prop_filter("nonzero", |x| *x != 0)) {
        let ar = BigRational::from_integer(BigInt::from(a));
        let br = BigRational::from_integer(BigInt::from(b));
        let mut primes = small_primes(2 * a.unsigned_abs() * b.unsigned_abs());
        primes.sort();
        let mut prod = hilbert_symbol(&ar, &br, &Place::Real).unwrap();
        for p in primes {
            prod *= hilbert_symbol(&ar, &br, &Place::Prime(BigUint::from(p))).unwrap();
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn quadratic_trace_form_determinant(d in prop::sample::select(vec![-7i64, -3, -1, 2, 3, 5, 6, 10]),
                                        x in -12i64..=12, y in -12i64..=12) {
        prop_assume!(x != 0 || y != 0);
        let q = Field::rational();
        let l = Field::extension_int(&q, &[1, 0, -d]).unwrap();
        let alpha = l.from_coords(&[q.int(x), q.int(y)]).unwrap();
        let form = trace_form(&alpha).unwrap();
        prop_assert_eq!(form.rank(), BigUint::from(2u32));
        let gram_det = trace_gram(&alpha).unwrap().determinant().unwrap();
        let norm = alpha.norm_to_base();
        prop_assert_eq!(&gram_det, &(&norm * &q.int(4 * d)));
        // Signed discriminant of a rank-2 form is −det, i.e. −d·N(α) up to squares.
        let inv = form.invariants().unwrap();
        prop_assert_eq!(inv.discriminant, (&norm * &q.int(-d)).square_class().unwrap());
    }

    #[test]
    fn trace_form_rank_is_degree(x in -9i64..=9, y in -9i64..=9, z in -9i64..=9) {
        prop_assume!(x != 0 || y != 0 || z != 0);
        let q = Field::rational();
        let l = Field::extension_int(&q, &[1, 0, 0, -2]).unwrap();
        let alpha = l.from_coords(&[q.int(x), q.int(y), q.int(z)]).unwrap();
        prop_assert_eq!(trace_form(&alpha).unwrap().rank(), BigUint::from(3u32));
    }
}

#[test]
fn rank_one_products_multiply_entries() {
    let q = Field::rational();
    for (a, b) in [(2, 3), (-1, -1), (5, -10), (7, 28)] {
        let prod = class(&q, &[a]).mul(&class(&q, &[b])).unwrap();
        assert!(prod.gw_equal(&class(&q, &[a * b])).unwrap());
    }
    let h = GwClass::hyperbolic(&q, BigUint::from(1u32));
    assert!(class(&q, &[-6]).mul(&h).unwrap().gw_equal(&h).unwrap());
}
