use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use segre_core::conic::closed_form_checks;
use segre_core::counts::{
    chern_number, double_factorial, euler_class, porteous_identity_check, symmetric_identity_check,
};

/// `∫ (a−b)·∏_{k=0}^{2n−1}(k·a + (2n−1−k)·b)`, read off as the coefficient of
/// `a^{n+1} b^n` of a dense bivariate product in i128.
fn naive_chern(n: usize) -> i128 {
    let d = 2 * n - 1;
    // poly[i][j] is the coefficient of a^i b^j.
    let mut poly = vec![vec![0i128; 2 * n + 2]; 2 * n + 2];
    poly[0][0] = 1;
    let mut factors: Vec<(i128, i128)> = (0..=d).map(|k| (k as i128, (d - k) as i128)).collect();
    factors.push((1, -1));
    for (x, y) in factors {
        let mut next = vec![vec![0i128; 2 * n + 2]; 2 * n + 2];
        for i in 0..2 * n + 1 {
            for j in 0..2 * n + 1 {
                let c = poly[i][j];
                if c == 0 {
                    continue;
                }
                next[i + 1][j] = next[i + 1][j].checked_add(c.checked_mul(x).unwrap()).unwrap();
                next[i][j + 1] = next[i][j + 1].checked_add(c.checked_mul(y).unwrap()).unwrap();
            }
        }
        poly = next;
    }
    poly[n + 1][n]
}

#[test]
fn chern_matches_naive_oracle() {
    for n in 2..=10usize {
        assert_eq!(chern_number(n as u32).unwrap().to_string(), naive_chern(n).to_string(), "n = {n}");
    }
}

#[test]
fn chern_parity_matches_real_count() {
    for n in 2..=40u32 {
        let diff = chern_number(n).unwrap() - double_factorial(n).unwrap();
        assert!(diff >= BigInt::from(0) && (&diff % 2u32) == BigInt::from(0), "n = {n}");
    }
}

#[test]
fn euler_class_rank_and_signature() {
    for n in 2..=8u32 {
        let inv = euler_class(n).unwrap().invariants().unwrap();
        assert_eq!(BigInt::from(inv.rank), chern_number(n).unwrap());
        assert_eq!(inv.signature.unwrap(), double_factorial(n).unwrap());
    }
}

#[test]
fn porteous_identity_range() {
    assert!((3..=100).all(|n| porteous_identity_check(n).unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_identity_all_splits(vals in prop::collection::vec(-20i64..=20, 8)) {
        for n in 1..=8usize {
            let v: Vec<BigInt> = vals[..n].iter().map(|&x| BigInt::from(x)).collect();
            for j in 1..=n {
                for i in 0..=n {
                    prop_assert!(symmetric_identity_check(n, j, i, &v).unwrap(), "n={} j={} i={}", n, j, i);
                }
            }
        }
    }

    #[test]
    fn closed_form_on_random_tuples(n in 3usize..=5, pool in prop::collection::hash_set(-12i64..=12, 5)) {
        let a: Vec<i64> = pool.into_iter().take(n).collect();
        prop_assume!(a.len() == n);
        for s in closed_form_checks(&a).unwrap() {
            prop_assert!(s.passed, "a = {:?}, step {}: {}", a, s.step, s.detail);
        }
    }
}

#[test]
fn closed_form_on_consecutive_integers() {
    for n in 3..=7i64 {
        let a: Vec<i64> = (1..=n).collect();
        let steps = closed_form_checks(&a).unwrap();
        assert_eq!(steps.len(), 4);
        assert!(steps.iter().all(|s| s.passed), "n = {n}");
    }
}

#[test]
fn large_chern_values_fit_the_euler_class() {
    let c = euler_class(10).unwrap();
    assert_eq!(c.rank(), chern_number(10).unwrap().to_biguint().unwrap());
    assert_eq!(double_factorial(10).unwrap().to_u64(), Some(654_729_075));
    assert!(c.rank() > BigUint::from(u64::MAX));
}
