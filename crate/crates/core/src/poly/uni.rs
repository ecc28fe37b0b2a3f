//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::poly::ring::{ExactDivision, Ring};

/// Coefficients are stored in ascending order with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let mut p = UniPoly { field: field.clone(), coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Evaluate at a point of an extension of the coefficient field.
    pub fn eval_in(&self, x: &FieldElement) -> Result<FieldElement> {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &c.embed(x.field())?;
        }
        Ok(acc)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero leading coefficient"))
    }

    pub fn derivative(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(i as i64)).collect())
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let Some(dd) = d.degree() else { return Err(Error::DivisionByZero) };
        let inv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); n - dd];
        for k in (dd..n).rev() {
            let c = &r[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = &r[idx] - &(&c * di);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient, or [`Error::InexactDivision`].
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        Ok(a.monic())
    }

    /// The product of the distinct irreducible factors (characteristic 0 or
    /// degree below the characteristic).
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.monic());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.field.one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Roots lying in the coefficient field, without multiplicity.
    ///
    /// Over Q the search is exact for degree ≤ 3. Over F_p every residue is
    /// tried, which is limited to p < 2²⁰.
    pub fn roots_in_base(&self) -> Result<Vec<FieldElement>> {
        let f = self.squarefree_part()?;
        let Some(d) = f.degree() else {
            return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
        };
        if d == 0 {
            return Ok(vec![]);
        }
        if self.field.is_prime_field() {
            let p = self.field.characteristic();
            if p >= 1 << 20 {
                return Err(Error::Unsupported(format!("root search over F_{p}")));
            }
            return Ok((0..p as i64).map(|a| self.field.int(a)).filter(|a| f.eval(a).is_zero()).collect());
        }
        if !self.field.is_rational() {
            return Err(Error::Unsupported(format!("root search over {}", self.field)));
        }
        if d > 3 {
            return Err(Error::Unsupported("rational root search above degree 3".into()));
        }
        rational_roots_small(&f)
    }

    /// Split a squarefree polynomial of degree ≤ 3 over Q or F_p into monic
    /// irreducible factors.
    pub fn factor_small(&self) -> Result<Vec<Self>> {
        let mut rest = self.squarefree_part()?;
        let mut factors = Vec::new();
        for r in self.roots_in_base()? {
            let lin = Self::new(&self.field, vec![-r, self.field.one()]);
            rest = rest.exact_div(&lin)?;
            factors.push(lin);
        }
        if rest.degree().unwrap_or(0) > 0 {
            factors.push(rest.monic());
        }
        Ok(factors)
    }

    /// Coefficients mapped into an extension field.
    pub fn embed(&self, target: &Field) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(target, coeffs))
    }
}

/// Integer polynomial value, used by the exact root search.
fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Integer roots of a monic integer polynomial in `[lo, hi]` on which it is
/// monotone, found by bisection.
fn monotone_integer_root(g: &[BigInt], lo: &BigInt, hi: &BigInt, out: &mut Vec<BigInt>) {
    if lo > hi {
        return;
    }
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let (fa, fb) = (eval_int(g, &a), eval_int(g, &b));
    if fa.is_zero() {
        out.push(a);
        return;
    }
    if fb.is_zero() {
        out.push(b);
        return;
    }
    if fa.signum() == fb.signum() {
        return;
    }
    let sa = fa.signum();
    while &b - &a > BigInt::one() {
        let mid: BigInt = (&a + &b).div_floor(&BigInt::from(2));
        let fm = eval_int(g, &mid);
        if fm.is_zero() {
            out.push(mid);
            return;
        }
        if fm.signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
}

/// Rational roots of a squarefree rational polynomial of degree 1 to 3.
///
/// Writing f = c·∏ with integer coefficients a_i and leading coefficient
/// a_d, the substitution x = y/a_d turns f into a monic integer polynomial
/// g whose rational roots are integers. Those are located exactly by
/// splitting the line at the critical points of g.
fn rational_roots_small(f: &UniPoly) -> Result<Vec<FieldElement>> {
    let field = f.field.clone();
    let rats: Vec<_> = f.coeffs.iter().map(|c| c.to_rational().unwrap()).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let a: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let d = a.len() - 1;
    let lead = a[d].clone();
    // g(y) = lead^{d-1} f(y/lead) has coefficients a_i·lead^{d-1-i}.
    let g: Vec<BigInt> = (0..=d)
        .map(|i| if i == d { BigInt::one() } else { &a[i] * num_traits::pow(lead.clone(), d - 1 - i) })
        .collect();
    let bound = g.iter().take(d).map(|c| c.abs()).max().unwrap_or_default() + BigInt::one();
    let mut ys = Vec::new();
    match d {
        1 => ys.push(-g[0].clone()),
        2 => {
            let disc = &g[1] * &g[1] - BigInt::from(4) * &g[0];
            if let Some(s) = crate::fields::arith::exact_sqrt(&disc) {
                for r in [(-&g[1] + &s), (-&g[1] - &s)] {
                    if r.is_even() {
                        ys.push(r / 2);
                    }
                }
            }
        }
        3 => {
            // g' = 3y² + 2·g2·y + g1, critical points (−g2 ± √D)/3 with D = g2² − 3·g1.
            let disc = &g[2] * &g[2] - BigInt::from(3) * &g[1];
            let neg_b = -g[2].clone();
            let three = BigInt::from(3);
            let mut windows = Vec::new();
            let mut cuts = Vec::new();
            if disc.is_negative() {
                monotone_integer_root(&g, &-bound.clone(), &bound, &mut ys);
            } else {
                let s: BigInt = disc.sqrt();
                let one = BigInt::one();
                let c1_lo: BigInt = Integer::div_floor(&(&neg_b - &s - &one), &three) - &one;
                let c1_hi: BigInt = Integer::div_ceil(&(&neg_b - &s), &three) + &one;
                let c2_lo: BigInt = Integer::div_floor(&(&neg_b + &s), &three) - &one;
                let c2_hi: BigInt = Integer::div_ceil(&(&neg_b + &s + &one), &three) + &one;
                windows.push((c1_lo.clone(), c1_hi.clone()));
                windows.push((c2_lo.clone(), c2_hi.clone()));
                cuts.push((-bound.clone(), &c1_lo - 1));
                cuts.push((&c1_hi + 1, &c2_lo - 1));
                cuts.push((&c2_hi + 1, bound.clone()));
                for (lo, hi) in cuts {
                    monotone_integer_root(&g, &lo, &hi, &mut ys);
                }
                for (lo, hi) in windows {
                    let mut y = lo;
                    while y <= hi {
                        if eval_int(&g, &y).is_zero() {
                            ys.push(y.clone());
                        }
                        y += 1;
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    ys.sort();
    ys.dedup();
    let mut roots = Vec::new();
    for y in ys {
        let x = field.from_rational(&num_rational::BigRational::new(y, lead.clone()))?;
        if f.eval(&x).is_zero() {
            roots.push(x);
        }
    }
    Ok(roots)
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("({c})x^{i}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(&self.field, coeffs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        self + (-rhs)
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.field, out)
    }
}

impl Ring for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        UniPoly::constant(self.field.one())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(&self.field.int(k))
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.field == other.field
    }
}

impl ExactDivision for UniPoly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.exact_div(d).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let f = Field::rational();
        let a = UniPoly::from_ints(&f, &[-1, 0, 1]);
        let b = UniPoly::from_ints(&f, &[1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        assert_eq!(a.exact_div(&b).unwrap(), UniPoly::from_ints(&f, &[-1, 1]));
        assert!(a.exact_div(&UniPoly::from_ints(&f, &[2, 1])).is_err());
    }

    #[test]
    fn rational_roots_of_cubics() {
        let f = Field::rational();
        // 6x³ − 11x² + 6x − 1 = (2x − 1)(3x − 1)(x − 1)
        let p = UniPoly::from_ints(&f, &[-1, 6, -11, 6]);
        let roots = p.roots_in_base().unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(p.eval(r).is_zero());
        }
        // x³ − 2 has no rational root.
        assert!(UniPoly::from_ints(&f, &[-2, 0, 0, 1]).roots_in_base().unwrap().is_empty());
        // Large roots: (x − 10^12)(x + 3)(x² + 1).
        let big = 1_000_000_000_000i64;
        let q = UniPoly::from_ints(&f, &[-big, 1]) * UniPoly::from_ints(&f, &[3, 1]);
        let r = q.roots_in_base().unwrap();
        assert_eq!(r, vec![f.int(-3), f.int(big)]);
        let c = q.clone() * UniPoly::from_ints(&f, &[7, 2]);
        assert_eq!(c.roots_in_base().unwrap().len(), 3);
    }

    #[test]
    fn factor_over_fp() {
        let f = Field::prime(7).unwrap();
        // (x − 1)(x² + 1) over F_7, where x² + 1 is irreducible.
        let p = UniPoly::from_ints(&f, &[-1, 1]) * UniPoly::from_ints(&f, &[1, 0, 1]);
        let facs = p.factor_small().unwrap();
        assert_eq!(facs.len(), 2);
        assert_eq!(facs[1], UniPoly::from_ints(&f, &[1, 0, 1]));
    }
}
