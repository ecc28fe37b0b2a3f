//! Dense matrices over an exact field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::poly::ring::bareiss_det;

/// A dense row-major matrix whose entries share one field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, field: field.clone(), entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(e.field().to_string(), field.to_string()));
                }
                entries.push(e);
            }
        }
        Ok(ExactMatrix { rows: r, cols: c, field: field.clone(), entries })
    }

    /// Integer matrix over the given field.
    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.field(), &self.field, "entry from a different field");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = &*e * s;
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-self.field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    /// Copy of the matrix with entries mapped into an extension field.
    pub fn embed(&self, target: &Field) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, field: target.clone(), entries })
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape("column counts differ".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, field: self.field.clone(), entries })
    }

    /// Place `self` and `other` side by side.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("row counts differ".into()));
        }
        let rows = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r);
                row.extend(other.row(r));
                row
            })
            .collect();
        Self::from_rows(&self.field, rows)
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("{}×{} matrix is not square", self.rows, self.cols)));
        }
        Ok(())
    }

    /// Exact determinant. Over Q the rows are scaled to integers and the
    /// Bareiss recurrence runs on `BigInt`; other fields use Gaussian
    /// elimination.
    pub fn determinant(&self) -> Result<FieldElement> {
        self.require_square()?;
        if self.field.is_rational() {
            return Ok(self.det_rational());
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            det = &det * &m[col][col];
            let inv = m[col][col].inv()?;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                let (top, rest) = m.split_at_mut(r);
                for (x, p) in rest[0].iter_mut().zip(&top[col]).skip(col) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        Ok(det)
    }

    fn det_rational(&self) -> FieldElement {
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row: Vec<BigRational> = self.row(r).iter().map(|e| e.to_rational().unwrap()).collect();
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let d = bareiss_det(rows, BigInt::one());
        self.field.from_rational(&BigRational::new(d, scale)).unwrap()
    }

    /// Row-reduce a copy; returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(p, r);
            let inv = m[r][c].inv().expect("nonzero pivot");
            m[r] = m[r].iter().map(|x| x * &inv).collect();
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    m[i] = m[i].iter().zip(&m[r]).map(|(a, b)| a - &(&f * b)).collect();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Self::from_rows(&self.field, m).unwrap_or_else(|_| self.clone()), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : M·x = 0}`, one column vector per entry.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -red.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n))?;
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let rows = (0..n).map(|r| red.row(r)[n..].to_vec()).collect();
        Self::from_rows(&self.field, rows)
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let rows = (0..self.rows)
            .filter(|&r| r != skip_r)
            .map(|r| (0..self.cols).filter(|&c| c != skip_c).map(|c| self.get(r, c).clone()).collect())
            .collect();
        Self::from_rows(&self.field, rows).unwrap()
    }

    /// The classical adjugate, defined for singular matrices too.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(&self.field, 1));
        }
        let det = self.determinant()?;
        if !det.is_zero() {
            return Ok(self.inverse()?.scale(&det));
        }
        if self.rank() < n - 1 {
            return Ok(Self::zeros(&self.field, n, n));
        }
        let mut adj = Self::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                let d = self.minor(c, r).determinant()?;
                adj.set(r, c, if (r + c) % 2 == 0 { d } else { -d });
            }
        }
        Ok(adj)
    }

    /// The Kronecker product `M ⊗ I₂`: entry `(2r+s, 2c+t)` is `M[r][c]·δ_{st}`.
    pub fn kronecker_with_identity2(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut out = Self::zeros(&self.field, 2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                for s in 0..2 {
                    out.set(2 * r + s, 2 * c + s, self.get(r, c).clone());
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}×{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_ints(&Field::rational(), rows).unwrap()
    }

    #[test]
    fn determinant_examples() {
        let f = Field::rational();
        assert!(ExactMatrix::identity(&f, 6).determinant().unwrap().is_one());
        let vb = qm(&[vec![1, 1, 2], vec![1, 1, 3], vec![1, 2, 3]]);
        assert_eq!(vb.determinant().unwrap(), f.int(-1));
        let rep = qm(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]);
        assert!(rep.determinant().unwrap().is_zero());
        assert!(qm(&[vec![1, 2]]).determinant().is_err());
    }

    #[test]
    fn rational_entries() {
        let f = Field::rational();
        let m = ExactMatrix::from_rows(
            &f,
            vec![vec![f.ratio(1, 2).unwrap(), f.ratio(1, 3).unwrap()], vec![f.int(1), f.ratio(-1, 5).unwrap()]],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), f.ratio(-1, 10).unwrap() - f.ratio(1, 3).unwrap());
    }

    #[test]
    fn kronecker_examples() {
        let f = Field::rational();
        let a = qm(&[vec![7]]);
        assert_eq!(a.kronecker_with_identity2().unwrap(), qm(&[vec![7, 0], vec![0, 7]]));
        let swap = qm(&[vec![0, 1], vec![1, 0]]);
        let k = swap.kronecker_with_identity2().unwrap();
        assert_eq!(k, qm(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]));
        assert!(k.determinant().unwrap().is_one());
        assert_eq!(f.one(), k.determinant().unwrap());
    }

    #[test]
    fn adjugate_and_kernel() {
        let m = qm(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let adj = m.adjugate().unwrap();
        assert!(m.mul(&adj).unwrap().is_zero());
        assert!(!adj.is_zero());
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let col = ExactMatrix::from_rows(m.field(), k[0].iter().map(|x| vec![x.clone()]).collect()).unwrap();
        assert!(m.mul(&col).unwrap().is_zero());
    }
}
