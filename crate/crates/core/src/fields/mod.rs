//! Exact fields: the rationals, prime fields of odd characteristic, and simple
//! extensions `k[z]/(f)` of either.
//!
//! A [`Field`] is a cheap, reference-counted descriptor. Every [`FieldElement`]
//! carries its descriptor, so elements from different fields can never be
//! mixed by accident: the arithmetic operators panic on a mismatch, while the
//! fallible methods return [`Error::FieldMismatch`].
//!
//! Extension elements are stored as coordinate vectors in the power basis
//! `1, z, …, z^{d-1}`. Only one level of extension is supported.

pub mod arith;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Q(Vec<BigRational>),
    P(Vec<u64>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Kind {
    Rational,
    Prime(u64),
    /// `modulus` holds the monic minimal polynomial in ascending order.
    Ext {
        base: Field,
        modulus: Repr,
    },
}

/// Descriptor of an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field(Arc<Kind>);

// Base-field coefficient arithmetic, shared by the rational and modular cases.
trait BaseOps {
    type C: Clone + PartialEq;
    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn inv(&self, a: &Self::C) -> Option<Self::C>;
}

struct RatOps;
struct ModOps(u64);

impl BaseOps for RatOps {
    type C = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

impl BaseOps for ModOps {
    type C = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| arith::pow_mod(*a, self.0 - 2, self.0))
    }
}

fn trim<O: BaseOps>(o: &O, mut a: Vec<O::C>) -> Vec<O::C> {
    while a.last().is_some_and(|c| o.is_zero(c)) {
        a.pop();
    }
    a
}

/// Product of two residues modulo a monic polynomial (all ascending).
fn mul_mod<O: BaseOps>(o: &O, a: &[O::C], b: &[O::C], modulus: &[O::C]) -> Vec<O::C> {
    let d = modulus.len() - 1;
    let mut prod = vec![o.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if o.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = o.add(&prod[i + j], &o.mul(x, y));
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k].clone();
        if o.is_zero(&c) {
            continue;
        }
        for (t, m) in modulus.iter().enumerate().take(d) {
            let idx = k - d + t;
            prod[idx] = o.sub(&prod[idx], &o.mul(&c, m));
        }
        prod[k] = o.zero();
    }
    prod.truncate(d);
    prod.resize(d, o.zero());
    prod
}

fn poly_divrem<O: BaseOps>(o: &O, a: &[O::C], b: &[O::C]) -> (Vec<O::C>, Vec<O::C>) {
    let b = trim(o, b.to_vec());
    let mut r = trim(o, a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = o.inv(b.last().expect("nonzero divisor")).expect("field");
    let mut q = vec![o.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = o.mul(r.last().unwrap(), &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = o.sub(&r[shift + i], &o.mul(&c, bi));
        }
        q[shift] = c;
        r.pop();
        r = trim(o, r);
    }
    (q, r)
}

fn poly_mul<O: BaseOps>(o: &O, a: &[O::C], b: &[O::C]) -> Vec<O::C> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![o.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = o.add(&prod[i + j], &o.mul(x, y));
        }
    }
    trim(o, prod)
}

fn poly_sub<O: BaseOps>(o: &O, a: &[O::C], b: &[O::C]) -> Vec<O::C> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| o.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| o.zero());
            o.sub(&x, &y)
        })
        .collect();
    trim(o, out)
}

/// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm.
/// Returns `None` when `gcd(a, modulus) ≠ 1`.
fn inv_mod<O: BaseOps>(o: &O, a: &[O::C], modulus: &[O::C]) -> Option<Vec<O::C>> {
    let d = modulus.len() - 1;
    let (mut r0, mut r1) = (modulus.to_vec(), trim(o, a.to_vec()));
    let (mut s0, mut s1) = (vec![], vec![o.one()]);
    if r1.is_empty() {
        return None;
    }
    while !r1.is_empty() {
        let (q, r) = poly_divrem(o, &r0, &r1);
        let s = poly_sub(o, &s0, &poly_mul(o, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = o.inv(&r0[0])?;
    let mut out: Vec<O::C> = s0.iter().map(|x| o.mul(x, &c)).collect();
    let (_, out_red) = poly_divrem(o, &out, modulus);
    out = out_red;
    out.resize(d, o.zero());
    Some(out)
}

/// Determinant by Gaussian elimination over the base field.
fn det_base<O: BaseOps>(o: &O, mut m: Vec<Vec<O::C>>) -> O::C {
    let n = m.len();
    let mut det = o.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !o.is_zero(&m[r][col])) else {
            return o.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = o.neg(&det);
        }
        det = o.mul(&det, &m[col][col]);
        let inv = o.inv(&m[col][col]).unwrap();
        for r in col + 1..n {
            if o.is_zero(&m[r][col]) {
                continue;
            }
            let f = o.mul(&m[r][col], &inv);
            let (top, rest) = m.split_at_mut(r);
            for (x, p) in rest[0].iter_mut().zip(&top[col]).skip(col) {
                *x = o.sub(x, &o.mul(&f, p));
            }
        }
    }
    det
}

/// Multiplication-by-`a` matrix on the power basis; column j holds `a·z^j`.
fn mult_matrix<O: BaseOps>(o: &O, a: &[O::C], modulus: &[O::C]) -> Vec<Vec<O::C>> {
    let d = modulus.len() - 1;
    let mut cols = Vec::with_capacity(d);
    let mut basis = vec![o.zero(); d];
    basis[0] = o.one();
    for _ in 0..d {
        cols.push(mul_mod(o, a, &basis, modulus));
        let mut z = vec![o.zero(); d];
        z[1] = o.one();
        basis = mul_mod(o, &basis, &z, modulus);
    }
    (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
}

impl Field {
    /// The field of rational numbers.
    pub fn rational() -> Field {
        Field(Arc::new(Kind::Rational))
    }

    /// The prime field F_p for an odd prime p.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 3 || !arith::is_prime_u64(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not an odd prime")));
        }
        Ok(Field(Arc::new(Kind::Prime(p))))
    }

    /// The simple extension `base[z]/(f)` where `min_poly` lists the
    /// coefficients of the monic polynomial f from the leading term down.
    ///
    /// Irreducibility of f is the caller's responsibility. Towers are
    /// rejected: `base` must be Q or F_p.
    pub fn extension(base: &Field, min_poly: &[FieldElement]) -> Result<Field> {
        if base.is_extension() {
            return Err(Error::InvalidField(
                "extension towers are not supported; give a single minimal polynomial over Q or F_p".into(),
            ));
        }
        if min_poly.len() < 3 {
            return Err(Error::InvalidField("minimal polynomial must have degree ≥ 2".into()));
        }
        for c in min_poly {
            if c.field() != base {
                return Err(Error::FieldMismatch(c.field().to_string(), base.to_string()));
            }
        }
        if !min_poly[0].is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let modulus = match base.kind() {
            Kind::Rational => Repr::Q(min_poly.iter().rev().map(|c| c.q()[0].clone()).collect()),
            Kind::Prime(_) => Repr::P(min_poly.iter().rev().map(|c| c.p()[0]).collect()),
            Kind::Ext { .. } => unreachable!(),
        };
        Ok(Field(Arc::new(Kind::Ext { base: base.clone(), modulus })))
    }

    /// Convenience wrapper around [`Field::extension`] for integer coefficients.
    pub fn extension_int(base: &Field, min_poly: &[i64]) -> Result<Field> {
        let coeffs: Vec<FieldElement> = min_poly.iter().map(|&c| base.int(c)).collect();
        Field::extension(base, &coeffs)
    }

    fn kind(&self) -> &Kind {
        &self.0
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.kind(), Kind::Rational)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.kind(), Kind::Prime(_))
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.kind(), Kind::Ext { .. })
    }

    /// The characteristic, with 0 for fields over Q.
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            Kind::Rational => 0,
            Kind::Prime(p) => *p,
            Kind::Ext { base, .. } => base.characteristic(),
        }
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        match self.kind() {
            Kind::Ext { modulus, .. } => repr_len(modulus) - 1,
            _ => 1,
        }
    }

    /// The base of an extension, or the field itself for Q and F_p.
    pub fn base(&self) -> Field {
        match self.kind() {
            Kind::Ext { base, .. } => base.clone(),
            _ => self.clone(),
        }
    }

    /// Coefficients of the minimal polynomial, leading term first.
    pub fn min_poly(&self) -> Option<Vec<FieldElement>> {
        match self.kind() {
            Kind::Ext { base, modulus } => {
                let d = repr_len(modulus);
                Some((0..d).rev().map(|i| base.elem(repr_coord(modulus, i))).collect())
            }
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        let d = self.degree();
        let repr = if self.characteristic() == 0 { Repr::Q(vec![BigRational::zero(); d]) } else { Repr::P(vec![0; d]) };
        FieldElement { field: self.clone(), repr }
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    /// The image of an integer.
    pub fn int(&self, k: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(k))
    }

    pub fn from_bigint(&self, k: &BigInt) -> FieldElement {
        let mut e = self.zero();
        match &mut e.repr {
            Repr::Q(c) => c[0] = BigRational::from_integer(k.clone()),
            Repr::P(c) => {
                let p = BigInt::from(self.characteristic());
                c[0] = k.mod_floor(&p).to_u64().unwrap();
            }
        }
        e
    }

    /// The image of a rational number; fails over F_p when p divides the
    /// denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        num.checked_div(&den)
    }

    /// The image of `num/den`.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// The class of `z` in `k[z]/(f)`.
    pub fn generator(&self) -> Result<FieldElement> {
        if !self.is_extension() {
            return Err(Error::InvalidArgument(format!("{self} has no generator")));
        }
        let mut e = self.zero();
        match &mut e.repr {
            Repr::Q(c) => c[1] = BigRational::one(),
            Repr::P(c) => c[1] = 1,
        }
        Ok(e)
    }

    /// Build an element of an extension from base-field coordinates in the
    /// power basis. Missing trailing coordinates are zero.
    pub fn from_coords(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        let base = self.base();
        let d = self.degree();
        if coords.len() > d {
            return Err(Error::Shape(format!("{} coordinates for a degree-{d} field", coords.len())));
        }
        let mut e = self.zero();
        for (i, c) in coords.iter().enumerate() {
            if c.field != base {
                return Err(Error::FieldMismatch(c.field.to_string(), base.to_string()));
            }
            match (&mut e.repr, &c.repr) {
                (Repr::Q(v), Repr::Q(w)) => v[i] = w[0].clone(),
                (Repr::P(v), Repr::P(w)) => v[i] = w[0],
                _ => unreachable!(),
            }
        }
        Ok(e)
    }

    /// Smallest positive quadratic non-residue of a prime field.
    pub fn non_residue(&self) -> Option<FieldElement> {
        let Kind::Prime(p) = self.kind() else { return None };
        (2..*p).find(|&a| arith::legendre_u64(a, *p) == -1).map(|a| self.int(a as i64))
    }

    fn elem(&self, c: Coord) -> FieldElement {
        match c {
            Coord::Q(q) => FieldElement { field: self.clone(), repr: Repr::Q(vec![q]) },
            Coord::P(v) => FieldElement { field: self.clone(), repr: Repr::P(vec![v]) },
        }
    }
}

enum Coord {
    Q(BigRational),
    P(u64),
}

fn repr_len(r: &Repr) -> usize {
    match r {
        Repr::Q(v) => v.len(),
        Repr::P(v) => v.len(),
    }
}

fn repr_coord(r: &Repr, i: usize) -> Coord {
    match r {
        Repr::Q(v) => Coord::Q(v[i].clone()),
        Repr::P(v) => Coord::P(v[i]),
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Rational => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "F_{p}"),
            Kind::Ext { base, modulus } => {
                let d = repr_len(modulus);
                let mut terms = Vec::new();
                for i in (0..d).rev() {
                    let c = base.elem(repr_coord(modulus, i));
                    if c.is_zero() {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "z".to_string(),
                        _ => format!("z^{i}"),
                    };
                    if mono.is_empty() {
                        terms.push(c.to_string());
                    } else if c.is_one() {
                        terms.push(mono);
                    } else {
                        terms.push(format!("{c}*{mono}"));
                    }
                }
                write!(f, "{base}[z]/({})", terms.join(" + "))
            }
        }
    }
}

/// An exact element of a [`Field`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    fn q(&self) -> &[BigRational] {
        match &self.repr {
            Repr::Q(v) => v,
            Repr::P(_) => unreachable!("rational coordinates requested from a prime-field element"),
        }
    }

    fn p(&self) -> &[u64] {
        match &self.repr {
            Repr::P(v) => v,
            Repr::Q(_) => unreachable!("modular coordinates requested from a rational element"),
        }
    }

    fn modulus(&self) -> Option<&Repr> {
        match self.field.kind() {
            Kind::Ext { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    fn prime(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(v) => v.iter().all(Zero::is_zero),
            Repr::P(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Q(v) => v[0].is_one() && v[1..].iter().all(Zero::is_zero),
            Repr::P(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            (Repr::P(a), Repr::P(b)) => {
                let o = ModOps(self.prime());
                Repr::P(a.iter().zip(b).map(|(x, y)| o.add(x, y)).collect())
            }
            _ => unreachable!(),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr, self.modulus()) {
            (Repr::Q(a), Repr::Q(b), None) => Repr::Q(vec![&a[0] * &b[0]]),
            (Repr::P(a), Repr::P(b), None) => Repr::P(vec![ModOps(self.prime()).mul(&a[0], &b[0])]),
            (Repr::Q(a), Repr::Q(b), Some(Repr::Q(m))) => Repr::Q(mul_mod(&RatOps, a, b, m)),
            (Repr::P(a), Repr::P(b), Some(Repr::P(m))) => Repr::P(mul_mod(&ModOps(self.prime()), a, b, m)),
            _ => unreachable!(),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    fn neg_ref(&self) -> Self {
        let repr = match &self.repr {
            Repr::Q(a) => Repr::Q(a.iter().map(|x| -x).collect()),
            Repr::P(a) => {
                let o = ModOps(self.prime());
                Repr::P(a.iter().map(|x| o.neg(x)).collect())
            }
        };
        FieldElement { field: self.field.clone(), repr }
    }

    /// Multiplicative inverse. In an extension whose modulus is reducible,
    /// a nonzero non-unit yields [`Error::ZeroDivisor`].
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match (&self.repr, self.modulus()) {
            (Repr::Q(a), None) => Repr::Q(vec![a[0].recip()]),
            (Repr::P(a), None) => Repr::P(vec![ModOps(self.prime()).inv(&a[0]).unwrap()]),
            (Repr::Q(a), Some(Repr::Q(m))) => Repr::Q(inv_mod(&RatOps, a, m).ok_or(Error::ZeroDivisor)?),
            (Repr::P(a), Some(Repr::P(m))) => Repr::P(inv_mod(&ModOps(self.prime()), a, m).ok_or(Error::ZeroDivisor)?),
            _ => unreachable!(),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Signed integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: i64) -> Self {
        self * &self.field.int(k)
    }

    /// Coordinates in the power basis as base-field elements (a single
    /// coordinate for Q and F_p).
    pub fn coords(&self) -> Vec<FieldElement> {
        let base = self.field.base();
        (0..self.field.degree()).map(|i| base.elem(repr_coord(&self.repr, i))).collect()
    }

    /// The rational value of an element of Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        match (&self.repr, self.field.kind()) {
            (Repr::Q(v), Kind::Rational) => Some(v[0].clone()),
            _ => None,
        }
    }

    /// The residue in `[0, p)` of an element of F_p.
    pub fn to_residue(&self) -> Option<u64> {
        match (&self.repr, self.field.kind()) {
            (Repr::P(v), Kind::Prime(_)) => Some(v[0]),
            _ => None,
        }
    }

    /// Embed a base-field element into an extension of it.
    pub fn embed(&self, target: &Field) -> Result<Self> {
        if &self.field == target {
            return Ok(self.clone());
        }
        if target.base() != self.field || self.field.is_extension() {
            return Err(Error::FieldMismatch(self.field.to_string(), target.to_string()));
        }
        target.from_coords(std::slice::from_ref(self))
    }

    /// The element as a base-field value when it lies in the base field.
    pub fn in_base(&self) -> Option<Self> {
        let c = self.coords();
        c[1..].iter().all(FieldElement::is_zero).then(|| c[0].clone())
    }

    fn mult_matrix_trace_det(&self) -> Result<(FieldElement, FieldElement)> {
        let base = self.field.base();
        match (&self.repr, self.modulus()) {
            (Repr::Q(a), Some(Repr::Q(m))) => {
                let mm = mult_matrix(&RatOps, a, m);
                let tr = (0..mm.len()).fold(BigRational::zero(), |s, i| s + &mm[i][i]);
                let det = det_base(&RatOps, mm);
                Ok((base.elem(Coord::Q(tr)), base.elem(Coord::Q(det))))
            }
            (Repr::P(a), Some(Repr::P(m))) => {
                let o = ModOps(self.prime());
                let mm = mult_matrix(&o, a, m);
                let tr = (0..mm.len()).fold(0, |s, i| o.add(&s, &mm[i][i]));
                let det = det_base(&o, mm);
                Ok((base.elem(Coord::P(tr)), base.elem(Coord::P(det))))
            }
            _ => Err(Error::InvalidArgument(format!("{} is not an extension field", self.field))),
        }
    }

    /// Field trace down to the base field.
    pub fn trace(&self) -> Result<FieldElement> {
        Ok(self.mult_matrix_trace_det()?.0)
    }

    /// Field norm down to the base field.
    pub fn norm(&self) -> Result<FieldElement> {
        Ok(self.mult_matrix_trace_det()?.1)
    }

    /// Trace to the base field, or the element itself when the field is Q or F_p.
    pub fn trace_to_base(&self) -> FieldElement {
        if self.field.is_extension() {
            self.trace().unwrap()
        } else {
            self.clone()
        }
    }

    /// Norm to the base field, or the element itself when the field is Q or F_p.
    pub fn norm_to_base(&self) -> FieldElement {
        if self.field.is_extension() {
            self.norm().unwrap()
        } else {
            self.clone()
        }
    }

    /// Canonical representative of the square class: a signed squarefree
    /// integer over Q, and 1 or the smallest non-residue over F_p.
    pub fn square_class(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        match (&self.repr, self.field.kind()) {
            (Repr::Q(v), Kind::Rational) => {
                let n = v[0].numer() * v[0].denom();
                Ok(self.field.from_bigint(&arith::squarefree_part(&n)?))
            }
            (Repr::P(v), Kind::Prime(p)) => {
                if arith::legendre_u64(v[0], *p) == 1 {
                    Ok(self.field.one())
                } else {
                    Ok(self.field.non_residue().unwrap())
                }
            }
            _ => Err(Error::Unsupported(format!("square-class canonicalization over {}; use is_square", self.field))),
        }
    }

    /// Whether the element is a square in its field. Supported over Q, F_p,
    /// every extension of F_p, and quadratic extensions of Q.
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        match self.field.kind() {
            Kind::Rational => Ok(rational_sqrt(&self.q()[0]).is_some()),
            Kind::Prime(p) => Ok(arith::legendre_u64(self.p()[0], *p) == 1),
            Kind::Ext { base, modulus } => {
                if base.is_prime_field() {
                    // The norm map of finite fields is surjective, so x is a
                    // square exactly when its norm is.
                    return self.norm()?.is_square();
                }
                let Repr::Q(m) = modulus else { unreachable!() };
                if m.len() != 3 {
                    return Err(Error::Unsupported(format!("square test over {}", self.field)));
                }
                quadratic_is_square(self.q(), m)
            }
        }
    }

    /// Exact square root in Q, when it exists.
    pub fn rational_sqrt(&self) -> Option<FieldElement> {
        let r = rational_sqrt(&self.to_rational()?)?;
        Some(self.field.elem(Coord::Q(r)))
    }

    /// Sign of a rational element.
    pub fn signum(&self) -> Option<i32> {
        let r = self.to_rational()?;
        Some(if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        })
    }

    /// Total order on representations, used to keep collections canonical.
    /// Only meaningful between elements of one field.
    pub fn cmp_repr(&self, other: &Self) -> Ordering {
        self.repr.cmp(&other.repr)
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = arith::exact_sqrt(r.numer())?;
    let d = arith::exact_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

/// Square test in Q[z]/(z² + pz + q) via the explicit radical formula.
fn quadratic_is_square(x: &[BigRational], m: &[BigRational]) -> Result<bool> {
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    // With w = z + p/2 we have w² = d and x = a + b·w.
    let p = &m[1];
    let d = p * p / &four - &m[0];
    let b = x[1].clone();
    let a = &x[0] - &b * p / &two;
    if b.is_zero() {
        return Ok(rational_sqrt(&a).is_some() || rational_sqrt(&(&a / &d)).is_some());
    }
    let Some(c) = rational_sqrt(&(&a * &a - &d * &b * &b)) else {
        return Ok(false);
    };
    // (s + t·w)² = x forces s² = (a ± c)/2.
    Ok([(&a + &c) / &two, (&a - &c) / &two].iter().any(|s2| !s2.is_zero() && rational_sqrt(s2).is_some()))
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.field.is_extension() {
            return match &self.repr {
                Repr::Q(v) => write!(f, "{}", v[0]),
                Repr::P(v) => write!(f, "{}", v[0]),
            };
        }
        let coords = self.coords();
        let mut terms = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            terms.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => mono,
                (false, false) => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch in arithmetic")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Helper for tests and fixtures: the rational number `n`.
pub fn q(n: i64) -> FieldElement {
    Field::rational().int(n)
}

/// Helper: the rational number `n/d`.
pub fn qr(n: i64, d: i64) -> FieldElement {
    Field::rational().ratio(n, d).expect("nonzero denominator")
}

/// Parse an integer or fraction `"p/q"` into a [`BigRational`].
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

impl Field {
    /// Parse a base-field value written as an integer or `"p/q"`.
    pub fn parse_base(&self, s: &str) -> Result<FieldElement> {
        self.base().from_rational(&parse_rational(s)?)
    }
}

/// The distinct primes dividing a nonzero integer.
pub(crate) fn prime_support(n: &BigInt) -> Result<Vec<BigUint>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(arith::factorize(n.magnitude())?.into_iter().map(|(p, _)| p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Field {
        Field::extension_int(&Field::rational(), &[1, 0, 1]).unwrap()
    }

    fn qomega() -> Field {
        Field::extension_int(&Field::rational(), &[1, 1, 1]).unwrap()
    }

    #[test]
    fn trace_examples() {
        let l = qi();
        let i = l.generator().unwrap();
        assert_eq!(l.one().trace().unwrap(), q(2));
        assert_eq!(i.trace().unwrap(), q(0));
        assert_eq!(qomega().generator().unwrap().trace().unwrap(), q(-1));
    }

    #[test]
    fn norm_examples() {
        let l = qi();
        let i = l.generator().unwrap();
        assert_eq!(l.one().norm().unwrap(), q(1));
        assert_eq!((l.int(2) + i).norm().unwrap(), q(5));
        let w = qomega();
        assert_eq!((w.one() - w.generator().unwrap()).norm().unwrap(), q(3));
    }

    #[test]
    fn extension_construction() {
        assert_eq!(qi().degree(), 2);
        assert_eq!(qomega().degree(), 2);
        let f5 = Field::prime(5).unwrap();
        let e = Field::extension_int(&f5, &[1, 0, -2]).unwrap();
        assert_eq!(e.degree(), 2);
        let z = e.generator().unwrap();
        assert_eq!(&z * &z, e.int(2));
        assert!(Field::extension_int(&qi(), &[1, 0, 1]).is_err());
        assert!(Field::extension_int(&Field::rational(), &[2, 0, 1]).is_err());
        assert!(Field::extension_int(&Field::rational(), &[1, 1]).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_err());
    }

    #[test]
    fn square_class_examples() {
        assert_eq!(q(18).square_class().unwrap(), q(2));
        assert_eq!(qr(-1, 4).square_class().unwrap(), q(-1));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.int(4).square_class().unwrap(), f7.one());
        assert_eq!(f7.int(3).square_class().unwrap(), f7.int(3));
        assert!(q(0).square_class().is_err());
        assert!(qi().one().square_class().is_err());
    }

    #[test]
    fn square_test_examples() {
        assert!(q(1296).is_square().unwrap());
        assert!(!Field::prime(5).unwrap().int(2).is_square().unwrap());
        let l = qi();
        let two_i = l.generator().unwrap().scale(2);
        assert!(two_i.is_square().unwrap());
        assert!(!l.generator().unwrap().is_square().unwrap());
        assert!(l.int(-1).is_square().unwrap());
        assert!(!l.int(3).is_square().unwrap());
        assert!(l.int(-4).is_square().unwrap());
    }

    #[test]
    fn inverse_in_extension() {
        let w = qomega();
        let x = w.int(3) + w.generator().unwrap().scale(-2);
        assert!((&x * &x.inv().unwrap()).is_one());
        let red = Field::extension_int(&Field::rational(), &[1, 0, -1]).unwrap();
        let zp1 = red.generator().unwrap() + red.one();
        assert_eq!(zp1.inv(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(qr(6, -4).to_string(), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(qomega().to_string(), "Q[z]/(z^2 + z + 1)");
        let w = qomega();
        assert_eq!((w.int(2) - w.generator().unwrap()).to_string(), "2 + -1*z");
        let f101 = Field::prime(101).unwrap();
        assert_eq!(f101.parse_base("1/2").unwrap(), f101.int(51));
    }
}
