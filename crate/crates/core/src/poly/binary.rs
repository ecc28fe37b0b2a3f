//! Binary forms: homogeneous polynomials in `(u, v)` of a declared degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::matrix::ExactMatrix;
use crate::poly::uni::UniPoly;

/// A binary form `Σ c_k u^{d-k} v^k`, stored with `coeffs[k] = c_k`, so the
/// coefficient of `u^d` comes first.
///
/// The degree is part of the value: `u²` declared as a cubic would be a
/// different form with a vanishing leading coefficient. The zero form is
/// allowed in every degree.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    /// Form of degree `coeffs.len() - 1` from coefficients in descending
    /// powers of `u`.
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape("a binary form needs at least one coefficient".into()));
        }
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
            }
        }
        Ok(BinaryForm { field: field.clone(), coeffs })
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.int(c)).collect()).expect("nonempty coefficient list")
    }

    pub fn zero(field: &Field, degree: usize) -> Self {
        BinaryForm { field: field.clone(), coeffs: vec![field.zero(); degree + 1] }
    }

    /// The monomial `c·u^{d-k} v^k` of degree `d`.
    pub fn monomial(c: FieldElement, d: usize, k: usize) -> Self {
        let mut f = Self::zero(c.field(), d);
        f.coeffs[k] = c;
        f
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients in descending powers of `u`.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `u^j v^{d-j}`, indexed by the exponent of `u`.
    pub fn coeff_u_pow(&self, j: usize) -> &FieldElement {
        &self.coeffs[self.degree() - j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.degree() != other.degree() {
            return Err(Error::Shape(format!("degrees {} and {} differ", self.degree(), other.degree())));
        }
        Ok(BinaryForm {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        BinaryForm { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(BinaryForm { field: self.field.clone(), coeffs: out })
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::from_ints(&self.field, &[1]);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// `Σ c_i f_i` for forms of a common degree.
    pub fn linear_combination(coeffs: &[FieldElement], forms: &[BinaryForm]) -> Result<Self> {
        let first = forms.first().ok_or_else(|| Error::Shape("empty combination".into()))?;
        let mut acc = Self::zero(&first.field, first.degree());
        for (c, f) in coeffs.iter().zip(forms) {
            acc = acc.add(&f.scale(c))?;
        }
        Ok(acc)
    }

    pub fn eval(&self, u: &FieldElement, v: &FieldElement) -> FieldElement {
        let d = self.degree();
        let mut acc = self.field.zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(&(c * &u.pow((d - k) as u64)) * &v.pow(k as u64));
        }
        acc
    }

    /// The form `f(a·u + b·v, c·u + d·v)`.
    pub fn substitute_linear(&self, m: [&FieldElement; 4]) -> Result<Self> {
        let [a, b, c, d] = m;
        let lu = Self::new(&self.field, vec![a.clone(), b.clone()])?;
        let lv = Self::new(&self.field, vec![c.clone(), d.clone()])?;
        let deg = self.degree();
        let mut acc = Self::zero(&self.field, deg);
        for (k, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let term = lu.pow(deg - k).mul(&lv.pow(k))?.scale(coef);
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Exact quotient `f / g`, of degree `deg f − deg g`.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        self.check(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if g.degree() > self.degree() {
            return Err(Error::InexactDivision);
        }
        // Divide from the u-side: the first nonzero coefficient of g pivots.
        let shift = g.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let lead_inv = g.coeffs[shift].inv()?;
        let qd = self.degree() - g.degree();
        let mut rem = self.coeffs.clone();
        let mut q = vec![self.field.zero(); qd + 1];
        for i in 0..=qd {
            if i + shift >= rem.len() {
                break;
            }
            let c = &rem[i + shift] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * gj);
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(BinaryForm { field: self.field.clone(), coeffs: q })
    }

    /// The dehomogenization `f(z, 1)` as a polynomial in `z = u/v`.
    pub fn to_univariate(&self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().rev().cloned().collect())
    }

    /// Homogenize a polynomial in `z = u/v` to the given degree.
    pub fn from_univariate(p: &UniPoly, degree: usize) -> Result<Self> {
        if p.degree().is_some_and(|d| d > degree) {
            return Err(Error::Shape(format!("polynomial of degree above {degree}")));
        }
        let coeffs = (0..=degree).rev().map(|j| p.coeff(j)).collect();
        Self::new(p.field(), coeffs)
    }

    pub fn embed(&self, target: &Field) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.embed(target)).collect::<Result<Vec<_>>>()?;
        Self::new(target, coeffs)
    }
}

/// Sylvester matrix: `deg g` shifted rows of `f` on top, then `deg f`
/// shifted rows of `g`.
pub fn sylvester_matrix(f: &BinaryForm, g: &BinaryForm) -> Result<ExactMatrix> {
    f.check(g)?;
    let (m, n) = (f.degree(), g.degree());
    if m == 0 || n == 0 {
        return Err(Error::Shape("resultant needs forms of positive degree".into()));
    }
    let size = m + n;
    let mut s = ExactMatrix::zeros(&f.field, size, size);
    for r in 0..n {
        for (k, c) in f.coeffs.iter().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs.iter().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    Ok(s)
}

/// The resultant `det Sylvester(f, g)` for the declared degrees.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<FieldElement> {
    sylvester_matrix(f, g)?.determinant()
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mono = |e: usize, var: &str| match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = [mono(d - k, "u"), mono(k, "v")].concat();
            let cs = if self.field.is_extension() { format!("({c})") } else { c.to_string() };
            terms.push(match (m.is_empty(), c.is_one()) {
                (true, _) => cs,
                (false, true) => m,
                (false, false) => format!("{cs}*{m}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm(deg {}: {})", self.degree(), self)
    }
}
