//! Global counts: the top Chern number of `Sym^{2n−1}(S^∨)` on the
//! Grassmannian of lines in `P^{n+1}`, the real count `(2n−1)!!`, and the
//! resulting Euler class in GW(Q).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::gw::GwClass;

/// Top Chern number `c(n)`.
///
/// The Chern roots of `Sym^{2n−1}(S^∨)` are `k·a + (2n−1−k)·b` for the roots
/// `a, b` of `S^∨`. Multiplying by the Vandermonde `a − b` antisymmetrizes,
/// and the coefficient of `a^{n+1}b^n` integrates over G(2, n+2). Setting
/// `b = 1` the product is univariate, so the result is the coefficient of
/// `a^{n+1}`.
pub fn chern_number(n: u32) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let d = 2 * n - 1;
    // coeffs[i] is the coefficient of a^i.
    let mut coeffs = vec![BigInt::one()];
    for k in 0..=d {
        let (x, y) = (BigInt::from(k), BigInt::from(d - k));
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c * &x;
            next[i] += c * &y;
        }
        coeffs = next;
    }
    let n = n as usize;
    Ok(&coeffs[n] - &coeffs[n + 1])
}

/// `(2n−1)!! = 1·3·5·…·(2n−1)`.
pub fn double_factorial(n: u32) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok((1..=n).map(|k| BigInt::from(2 * k - 1)).product())
}

/// `e(Sym^{2n−1}(S^∨)) = (2n−1)!!⟨1⟩ + ((c(n) − (2n−1)!!)/2)·H` over Q.
pub fn euler_class(n: u32) -> Result<GwClass> {
    let c = chern_number(n)?;
    let df = double_factorial(n)?;
    let diff = &c - &df;
    if diff.is_odd() || diff < BigInt::zero() {
        return Err(Error::CheckFailed(format!("c({n}) − (2n−1)!! = {diff} is not a nonnegative even number")));
    }
    let f = Field::rational();
    let h = GwClass::hyperbolic(&f, (&diff / BigInt::from(2)).to_biguint().unwrap());
    GwClass::multiple(&f.one(), df.to_biguint().unwrap())?.add(&h)
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of `(n−3)`-planes meeting a general degree-`(2n−2)` rational curve
/// in `P^{n−1}` in `2n−4` points: `binom(n, 2)`.
pub fn castelnuovo_count(n: u32) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
    }
    Ok(binom(n as u64, 2))
}

/// The Porteous determinant `binom(n,2)² − binom(n+1,2)·binom(n−1,2)` equals
/// `binom(n,2)`.
pub fn porteous_identity_check(n: u32) -> Result<bool> {
    let m = castelnuovo_count(n)?;
    let n = n as u64;
    let lhs = BigInt::from(&m * &m) - BigInt::from(binom(n + 1, 2) * binom(n - 1, 2));
    Ok(lhs == BigInt::from(m))
}

/// `e_k(xs)` with `e_0 = 1` and `e_k = 0` for `k` outside `0..=len`.
pub fn elementary_symmetric(xs: &[BigInt], k: i64) -> BigInt {
    if k < 0 || k as usize > xs.len() {
        return BigInt::zero();
    }
    let k = k as usize;
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for x in xs {
        for j in (1..=k).rev() {
            let prev = &e[j - 1] * x;
            e[j] += prev;
        }
    }
    e.swap_remove(k)
}

/// Check `e_{i+1}(X₁..X_n) = Σ_{z=0}^{i+1} e_z(X₁..X_j)·e_{i−z+1}(X_{j+1}..X_n)`
/// on concrete values.
pub fn symmetric_identity_check(n: usize, j: usize, i: usize, values: &[BigInt]) -> Result<bool> {
    if values.len() != n {
        return Err(Error::Shape(format!("expected {n} values, got {}", values.len())));
    }
    if j < 1 || j > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ j ≤ n, got j = {j}")));
    }
    let (left, right) = values.split_at(j);
    let lhs = elementary_symmetric(values, i as i64 + 1);
    let rhs: BigInt =
        (0..=i as i64 + 1).map(|z| elementary_symmetric(left, z) * elementary_symmetric(right, i as i64 - z + 1)).sum();
    Ok(lhs == rhs)
}
