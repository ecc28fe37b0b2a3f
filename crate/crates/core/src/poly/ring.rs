use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::FieldElement;

/// A commutative ring whose values know enough about themselves to produce
/// the neutral elements of their own ring.
pub trait Ring:
    Sized + Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_int(&self, k: i64) -> Self;
    /// Whether `self` and `other` live in the same ring.
    fn same_ring(&self, other: &Self) -> bool;
}

/// An integral domain with exact division.
pub trait ExactDivision: Ring {
    /// `self / d` when `d` divides `self`, otherwise `None`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(k)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
}

impl ExactDivision for FieldElement {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.checked_div(d).ok()
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_int(&self, k: i64) -> Self {
        self * k
    }
    fn same_ring(&self, _: &Self) -> bool {
        true
    }
}

impl ExactDivision for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

/// `b² − 4ac` for the binary quadratic `a·s² + b·st + c·t²`, over any ring.
pub fn discriminant_quadratic<R: Ring>(a: &R, b: &R, c: &R) -> Result<R> {
    if !a.same_ring(b) || !a.same_ring(c) {
        return Err(Error::FieldMismatch("discriminant coefficient".into(), "another coefficient ring".into()));
    }
    Ok(b.clone() * b.clone() - (a.clone() * c.clone()).mul_int(4))
}

/// Fraction-free Bareiss determinant over an integral domain.
///
/// Every intermediate division is exact, so entries never leave the ring.
pub fn bareiss_det<R: ExactDivision>(mut m: Vec<Vec<R>>, one: R) -> R {
    let n = m.len();
    if n == 0 {
        return one;
    }
    let mut sign_flip = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) else {
                return prev.zero_like();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
