//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::poly::binary::BinaryForm;
use crate::poly::ring::Ring;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        MultiPoly { nvars, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(&c.field().clone(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(field, nvars, vec![(e, field.one())]).unwrap()
    }

    pub fn from_terms(field: &Field, nvars: usize, terms: Vec<(Vec<u32>, FieldElement)>) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Shape(format!("exponent vector of length {} for {nvars} variables", e.len())));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(e);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &FieldElement)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElement {
        self.terms.get(&Monomial(e.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.0.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.field.one(), self.nvars);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitute `x_i ↦ images[i]`, where the images live in a common ring
    /// of polynomials (possibly with a different variable count or over an
    /// extension field).
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::Shape(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let target = images.first().map(|p| (p.field.clone(), p.nvars));
        let (field, nv) = target.unwrap_or((self.field.clone(), 0));
        let mut powers: Vec<Vec<MultiPoly>> =
            images.iter().map(|p| vec![MultiPoly::constant(field.one(), nv), p.clone()]).collect();
        let mut acc = MultiPoly::zero(&field, nv);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.embed(&field)?, nv);
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().clone() * images[i].clone();
                    powers[i].push(next);
                }
                term = term * powers[i][e as usize].clone();
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Evaluate at a point with coordinates in the coefficient field or an
    /// extension of it.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::Shape("point dimension".into()));
        }
        let field = point.first().map_or(self.field.clone(), |p| p.field().clone());
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.embed(&field)?;
            for (x, &e) in point.iter().zip(&m.0) {
                t = &t * &x.pow(e as u64);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficients mapped into an extension field.
    pub fn embed(&self, target: &Field) -> Result<Self> {
        let mut out = Self::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.0.clone(), c.embed(target)?);
        }
        Ok(out)
    }

    /// The part of the polynomial whose degree in the variables `vars`
    /// equals `d`.
    pub fn part_of_degree_in(&self, vars: &[usize], d: u32) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            if vars.iter().map(|&i| m.0[i]).sum::<u32>() == d {
                out.add_term(m.0.clone(), c.clone());
            }
        }
        out
    }

    /// Regard a polynomial in the two variables `(u, v)` at positions `iu`
    /// and `iv` as a binary form of the given degree. Every other variable
    /// must be absent.
    pub fn to_binary_form(&self, iu: usize, iv: usize, degree: usize) -> Result<BinaryForm> {
        let mut f = BinaryForm::zero(&self.field, degree);
        let mut coeffs = f.coeffs().to_vec();
        for (m, c) in &self.terms {
            let other = m.0.iter().enumerate().any(|(i, &e)| i != iu && i != iv && e > 0);
            if other || (m.0[iu] + m.0[iv]) as usize != degree {
                return Err(Error::NotHomogeneous(degree));
            }
            coeffs[m.0[iv] as usize] = c.clone();
        }
        f = BinaryForm::new(&self.field, coeffs)?;
        Ok(f)
    }

    /// The binary form `f(Q_0, Q_1, Q_2)` for a homogeneous ternary `f`.
    pub fn substitute_conic(&self, q: [&BinaryForm; 3]) -> Result<BinaryForm> {
        if self.nvars != 3 {
            return Err(Error::Shape("conic substitution needs a ternary form".into()));
        }
        let e = self.total_degree().unwrap_or(0);
        if !self.is_homogeneous_of_degree(e) {
            return Err(Error::NotHomogeneous(e as usize));
        }
        let field = q[0].field();
        let mut acc = BinaryForm::zero(field, 2 * e as usize);
        for (m, c) in &self.terms {
            let mut t = BinaryForm::from_ints(field, &[1]).scale(&c.embed(field)?);
            for (i, &k) in m.0.iter().enumerate() {
                t = t.mul(&q[i].pow(k as usize))?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("({c})·x^{:?}", m.0)).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.field, rhs.field, "field mismatch in polynomial arithmetic");
        for (m, c) in rhs.terms {
            self.add_term(m.0, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let m1 = -self.field.one();
        self.scale(&m1)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.field, rhs.field, "field mismatch in polynomial arithmetic");
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.field, self.nvars)
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(self.field.one(), self.nvars)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(&self.field.int(k))
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars
    }
}
