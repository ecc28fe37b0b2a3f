//! Local indices of lines on hypersurfaces of degree `2n−1` in `P^{n+1}`.
//!
//! After a unimodular change of coordinates putting the line at
//! `V(y₁,…,y_n)`, the equation reads `F = Σ yᵢ·Pᵢ(u,v) + (terms of degree ≥ 2
//! in y)`. The local index of the simple zero `ℓ` of `σ_F` is the trace form
//! of the determinant of the `2n×2n` matrix whose column pairs are the
//! coefficient vectors of `u·Pᵢ` and `v·Pᵢ`.

mod nodes;

pub use nodes::{quartic_nodes, segre_index_n3, NodeData};

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::gw::{trace_form, GwClass};
use crate::matrix::ExactMatrix;
use crate::poly::{discriminant_quadratic, resultant, BinaryForm, MultiPoly};

/// A line on a hypersurface `V(F) ⊂ P^{n+1}` with `deg F = 2n−1`.
///
/// `F` may have coefficients in a subfield of the span's field; the span's
/// field is the field of definition `k(ℓ)`.
#[derive(Clone, Debug)]
pub struct LineOnHypersurface {
    pub n: usize,
    pub f: MultiPoly,
    pub span: ExactMatrix,
}

/// The line in normal form.
#[derive(Clone, Debug)]
pub struct NormalizedLine {
    /// `P₁,…,P_n`, each of degree `2n−2`, over `k(ℓ)`.
    pub p: Vec<BinaryForm>,
    /// Rows `r₁, r₂, c₁, …, c_n`: old coordinates are `X = u·r₁ + v·r₂ + Σ yᵢ·cᵢ`.
    pub change_of_coords: ExactMatrix,
    /// The part of `F` of degree at least 2 in `y`, in variables `(u, v, y₁, …, y_n)`.
    pub r_part: MultiPoly,
}

impl LineOnHypersurface {
    pub fn new(n: usize, f: MultiPoly, span: ExactMatrix) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
        }
        if f.nvars() != n + 2 || span.rows() != 2 || span.cols() != n + 2 {
            return Err(Error::Shape(format!(
                "need F in {} variables and a 2×{} span, got {} variables and {}×{}",
                n + 2,
                n + 2,
                f.nvars(),
                span.rows(),
                span.cols()
            )));
        }
        Ok(LineOnHypersurface { n, f, span })
    }

    /// The field of definition of the line.
    pub fn field(&self) -> &Field {
        self.span.field()
    }
}

/// Put the line at `V(y₁,…,y_n)` and read off `P₁,…,P_n`.
///
/// The span is completed to a basis with the standard basis vectors of the
/// non-pivot columns of its row echelon form; the last of them is rescaled so
/// the change of coordinates has determinant 1.
pub fn normalize_line(line: &LineOnHypersurface) -> Result<NormalizedLine> {
    let n = line.n;
    let deg = 2 * n - 1;
    if line.f.is_zero() || !line.f.is_homogeneous_of_degree(deg as u32) {
        return Err(Error::NotHomogeneous(deg));
    }
    let field = line.field().clone();
    let (_, pivots) = line.span.rref();
    if pivots.len() < 2 {
        return Err(Error::DegenerateSpan);
    }
    let mut rows = line.span.to_rows();
    for j in (0..n + 2).filter(|j| !pivots.contains(j)) {
        let mut e = vec![field.zero(); n + 2];
        e[j] = field.one();
        rows.push(e);
    }
    let m = ExactMatrix::from_rows(&field, rows.clone())?;
    let det = m.determinant()?;
    let scale = det.inv()?;
    let last = rows.last_mut().unwrap();
    for x in last.iter_mut() {
        *x = &*x * &scale;
    }
    let change = ExactMatrix::from_rows(&field, rows)?;

    let nv = n + 2;
    let images: Vec<MultiPoly> = (0..nv)
        .map(|j| {
            let mut acc = MultiPoly::zero(&field, nv);
            for (i, row) in change.to_rows().iter().enumerate() {
                acc = acc + MultiPoly::var(&field, nv, i).scale(&row[j]);
            }
            acc
        })
        .collect();
    let g = line.f.embed(&field)?.substitute(&images)?;
    let yvars: Vec<usize> = (2..nv).collect();
    if !g.part_of_degree_in(&yvars, 0).is_zero() {
        return Err(Error::LineNotOnHypersurface);
    }
    let linear = g.part_of_degree_in(&yvars, 1);
    let mut p = Vec::with_capacity(n);
    for i in 0..n {
        let mut coeffs = vec![field.zero(); deg];
        for (e, c) in linear.terms() {
            if e[2 + i] == 1 {
                coeffs[e[1] as usize] = c.clone();
            }
        }
        p.push(BinaryForm::new(&field, coeffs)?);
    }
    let r_part = g - linear;
    Ok(NormalizedLine { p, change_of_coords: change, r_part })
}

/// The `2n×2n` matrix with columns `u·Pᵢ`, `v·Pᵢ` in the monomial basis
/// `u^{2n−1}, u^{2n−2}v, …, v^{2n−1}`.
pub fn index_matrix(p: &[BinaryForm]) -> Result<ExactMatrix> {
    let n = p.len();
    if n == 0 {
        return Err(Error::Shape("no forms".into()));
    }
    let field = p[0].field().clone();
    for pi in p {
        if pi.degree() != 2 * n - 2 {
            return Err(Error::Shape(format!("expected forms of degree {}, got {}", 2 * n - 2, pi.degree())));
        }
        if pi.field() != &field {
            return Err(Error::FieldMismatch(pi.field().to_string(), field.to_string()));
        }
    }
    let mut a = ExactMatrix::zeros(&field, 2 * n, 2 * n);
    for (i, pi) in p.iter().enumerate() {
        for (r, c) in pi.coeffs().iter().enumerate() {
            a.set(r, 2 * i, c.clone());
            a.set(r + 1, 2 * i + 1, c.clone());
        }
    }
    Ok(a)
}

/// `Tr_{L/k}⟨det⟩` where L is the field of `det`.
pub fn trace_class(det: &FieldElement, ground: &Field) -> Result<GwClass> {
    let l = det.field();
    if l == ground {
        return GwClass::one_dim(det);
    }
    if l.is_extension() && &l.base() == ground {
        return trace_form(det);
    }
    Err(Error::Unsupported(format!("trace from {l} down to {ground}")))
}

/// Determinant of the index matrix of a normalized line; errors when zero.
pub fn index_determinant(line: &LineOnHypersurface) -> Result<FieldElement> {
    let norm = normalize_line(line)?;
    let det = index_matrix(&norm.p)?.determinant()?;
    if det.is_zero() {
        return Err(Error::NonSimpleLine);
    }
    Ok(det)
}

/// The local index `Tr_{k(ℓ)/k}⟨det A⟩` as a class over `ground`.
pub fn local_index(line: &LineOnHypersurface, ground: &Field) -> Result<GwClass> {
    trace_class(&index_determinant(line)?, ground)
}

/// `α = Disc_x(Disc_{u,v}(x₁P₂ − x₂P₁))` for quadratic `P₁, P₂`, checked
/// against `16·Res(P₁, P₂)`.
pub fn segre_alpha_n2(p1: &BinaryForm, p2: &BinaryForm) -> Result<FieldElement> {
    if p1.degree() != 2 || p2.degree() != 2 {
        return Err(Error::Shape("expected two quadratic forms".into()));
    }
    let field = p1.field();
    let res = resultant(p1, p2)?;
    if res.is_zero() {
        return Err(Error::NonSimpleLine);
    }
    let x1 = MultiPoly::var(field, 2, 0);
    let x2 = MultiPoly::var(field, 2, 1);
    let c: Vec<MultiPoly> = (0..3).map(|k| x1.scale(&p2.coeffs()[k]) - x2.scale(&p1.coeffs()[k])).collect();
    let inner = discriminant_quadratic(&c[0], &c[1], &c[2])?;
    let q = inner.to_binary_form(0, 1, 2)?;
    let alpha = discriminant_quadratic(&q.coeffs()[0], &q.coeffs()[1], &q.coeffs()[2])?;
    if alpha != res.scale(16) {
        return Err(Error::CheckFailed(format!("nested discriminant {alpha} differs from 16·Res = {}", res.scale(16))));
    }
    Ok(alpha)
}

/// Degree of the field of definition of a line over `ground`.
pub fn residue_degree(line: &LineOnHypersurface, ground: &Field) -> usize {
    if line.field() == ground {
        1
    } else {
        line.field().degree()
    }
}

/// Sum of local indices over a catalog of lines (one representative per
/// Galois orbit).
pub fn sum_local_indices(lines: &[LineOnHypersurface], ground: &Field) -> Result<GwClass> {
    let mut acc = GwClass::zero(ground);
    for l in lines {
        acc = acc.add(&local_index(l, ground)?)?;
    }
    Ok(acc)
}

/// Builders for test and demonstration instances.
pub mod construct {
    use super::*;
    use rand::Rng;

    /// `F = Σ yᵢ·Pᵢ(u,v)` in variables `(u, v, y₁, …, y_n)` with the line
    /// `V(y)`, spanned by the first two coordinate vectors.
    pub fn standard_line(p: &[BinaryForm]) -> Result<LineOnHypersurface> {
        let n = p.len();
        let field = p[0].field().clone();
        let nv = n + 2;
        let mut terms = Vec::new();
        for (i, pi) in p.iter().enumerate() {
            let d = pi.degree() as u32;
            for (k, c) in pi.coeffs().iter().enumerate() {
                let mut e = vec![0u32; nv];
                e[0] = d - k as u32;
                e[1] = k as u32;
                e[2 + i] = 1;
                terms.push((e, c.clone()));
            }
        }
        let f = MultiPoly::from_terms(&field, nv, terms)?;
        let mut span = ExactMatrix::zeros(&field, 2, nv);
        span.set(0, 0, field.one());
        span.set(1, 1, field.one());
        LineOnHypersurface::new(n, f, span)
    }

    /// `P = (Q₂Q₃, Q₁Q₃, Q₁Q₂)`, whose index determinant is
    /// `∏_{i<j} Res(Qᵢ, Qⱼ)`.
    pub fn product_construction(q: [&BinaryForm; 3]) -> Result<Vec<BinaryForm>> {
        Ok(vec![q[1].mul(q[2])?, q[0].mul(q[2])?, q[0].mul(q[1])?])
    }

    /// A random binary form with integer coefficients in `[−bound, bound]`.
    pub fn random_form<R: Rng>(rng: &mut R, field: &Field, degree: usize, bound: i64) -> BinaryForm {
        let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
        BinaryForm::from_ints(field, &coeffs)
    }

    /// A random invertible `k×k` integer matrix with entries in `[−bound, bound]`.
    pub fn random_invertible<R: Rng>(rng: &mut R, field: &Field, k: usize, bound: i64) -> ExactMatrix {
        loop {
            let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
            let m = ExactMatrix::from_ints(field, &rows).unwrap();
            if !m.determinant().unwrap().is_zero() {
                return m;
            }
        }
    }

    /// `P' = N·P` for a matrix `N` acting on the `y` coordinates.
    pub fn mix_forms(n_mat: &ExactMatrix, p: &[BinaryForm]) -> Result<Vec<BinaryForm>> {
        (0..n_mat.rows()).map(|r| BinaryForm::linear_combination(&n_mat.row(r), p)).collect()
    }

    /// Move the standard line by a unimodular change of coordinates
    /// `X = M·X'`, returning the transformed equation and the transported
    /// span.
    pub fn transform_line(line: &LineOnHypersurface, m: &ExactMatrix) -> Result<LineOnHypersurface> {
        let field = line.field().clone();
        let nv = line.n + 2;
        let images: Vec<MultiPoly> = (0..nv)
            .map(|r| {
                let mut acc = MultiPoly::zero(&field, nv);
                for c in 0..nv {
                    acc = acc + MultiPoly::var(&field, nv, c).scale(m.get(r, c));
                }
                acc
            })
            .collect();
        let f = line.f.embed(&field)?.substitute(&images)?;
        // A point X on the old line corresponds to X' = M⁻¹·X on the new one.
        let inv = m.inverse()?;
        let span = line.span.mul(&inv.transpose())?;
        LineOnHypersurface::new(line.n, f, span)
    }
}

#[cfg(test)]
mod tests {
    use super::construct::*;
    use super::*;
    use crate::fields::q;

    fn fermat() -> MultiPoly {
        let f = Field::rational();
        let terms = (0..4)
            .map(|i| {
                let mut e = vec![0; 4];
                e[i] = 3;
                (e, f.one())
            })
            .collect();
        MultiPoly::from_terms(&f, 4, terms).unwrap()
    }

    #[test]
    fn fermat_rational_line() {
        let f = Field::rational();
        let span = ExactMatrix::from_ints(&f, &[vec![1, -1, 0, 0], vec![0, 0, 1, -1]]).unwrap();
        let line = LineOnHypersurface::new(2, fermat(), span).unwrap();
        let norm = normalize_line(&line).unwrap();
        assert_eq!(norm.p[0], BinaryForm::from_ints(&f, &[3, 0, 0]));
        assert_eq!(norm.p[1], BinaryForm::from_ints(&f, &[0, 0, -3]));
        assert_eq!(norm.change_of_coords.determinant().unwrap(), q(1));
        assert_eq!(index_determinant(&line).unwrap(), q(81));
        assert_eq!(local_index(&line, &f).unwrap(), GwClass::one_dim(&q(1)).unwrap());
    }

    #[test]
    fn line_off_hypersurface() {
        let f = Field::rational();
        let span = ExactMatrix::from_ints(&f, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let line = LineOnHypersurface::new(2, fermat(), span).unwrap();
        assert!(matches!(normalize_line(&line), Err(Error::LineNotOnHypersurface)));
        let span = ExactMatrix::from_ints(&f, &[vec![1, -1, 0, 0], vec![2, -2, 0, 0]]).unwrap();
        let line = LineOnHypersurface::new(2, fermat(), span).unwrap();
        assert!(matches!(normalize_line(&line), Err(Error::DegenerateSpan)));
    }

    #[test]
    fn index_matrix_layout() {
        let f = Field::rational();
        let p = [BinaryForm::from_ints(&f, &[3, 0, 0]), BinaryForm::from_ints(&f, &[0, 0, 3])];
        let a = index_matrix(&p).unwrap();
        assert_eq!(a, ExactMatrix::identity(&f, 4).scale(&q(3)));
        assert_eq!(a.determinant().unwrap(), q(81));
        let same = [p[0].clone(), p[0].clone()];
        assert_eq!(index_matrix(&same).unwrap().determinant().unwrap(), q(0));
    }

    #[test]
    fn alpha_n2_examples() {
        let f = Field::rational();
        let b = |c: &[i64]| BinaryForm::from_ints(&f, c);
        assert_eq!(segre_alpha_n2(&b(&[3, 0, 0]), &b(&[0, 0, 3])).unwrap(), q(1296));
        assert_eq!(segre_alpha_n2(&b(&[1, 0, 0]), &b(&[0, 0, 1])).unwrap(), q(16));
        assert_eq!(segre_alpha_n2(&b(&[1, 0, 1]), &b(&[1, 0, -1])).unwrap(), q(64));
        assert!(matches!(segre_alpha_n2(&b(&[1, 0, 1]), &b(&[2, 0, 2])), Err(Error::NonSimpleLine)));
    }

    #[test]
    fn quintic_product_local_index() {
        let f = Field::rational();
        let q1 = BinaryForm::from_ints(&f, &[0, 1, 0]);
        let q2 = BinaryForm::from_ints(&f, &[1, 0, -1]);
        let q3 = BinaryForm::from_ints(&f, &[1, 0, 1]);
        let p = product_construction([&q1, &q2, &q3]).unwrap();
        let line = standard_line(&p).unwrap();
        let norm = normalize_line(&line).unwrap();
        assert_eq!(norm.p, p);
        let expected = resultant(&q1, &q2).unwrap() * resultant(&q1, &q3).unwrap() * resultant(&q2, &q3).unwrap();
        assert_eq!(expected, q(-4));
        assert_eq!(index_determinant(&line).unwrap(), expected);
        assert_eq!(local_index(&line, &f).unwrap(), GwClass::one_dim(&q(-1)).unwrap());
    }

    #[test]
    fn transformed_line_keeps_class() {
        let f = Field::rational();
        let q1 = BinaryForm::from_ints(&f, &[1, 1, 0]);
        let q2 = BinaryForm::from_ints(&f, &[1, 0, -2]);
        let q3 = BinaryForm::from_ints(&f, &[2, 1, 1]);
        let line = standard_line(&product_construction([&q1, &q2, &q3]).unwrap()).unwrap();
        let m = ExactMatrix::from_ints(
            &f,
            &[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 0, 2], vec![1, 0, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 1, 0, 0, 1]],
        )
        .unwrap();
        let moved = transform_line(&line, &m).unwrap();
        let a = local_index(&line, &f).unwrap();
        let b = local_index(&moved, &f).unwrap();
        assert!(a.gw_equal(&b).unwrap());
    }
}
