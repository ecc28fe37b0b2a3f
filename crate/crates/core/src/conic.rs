//! Conic models of rational Gauß curves.
//!
//! A model is a set B of `m = binom(n,2)` points in the affine patch `Z ≠ 0`
//! of `P²` together with a parameterized conic `(Q₀ : Q₁ : Q₂)` in the
//! coordinates `(Z : X : Y)`. Plane curves of degree `n−1` through B map the
//! conic to a rational curve of degree `2n−2` in `P^{n−1}`. Two invariants
//! are attached to the model:
//!
//! * `A(B,Q)`: the index determinant of the `n` binary forms obtained by
//!   substituting the conic into a kernel basis of the interpolation map;
//! * `R(B,Q) = ∏_b Res(Q₁ − b_x·Q₀, Q₂ − b_y·Q₀)`;
//!
//! and they satisfy `A = (det V_B)^{2n}·R` exactly.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counts::elementary_symmetric;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::line_index::index_matrix;
use crate::matrix::ExactMatrix;
use crate::poly::{resultant, BinaryForm};

/// Points `B`, a parameterized conic `Q`, and `n` with `|B| = binom(n, 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicModel {
    n: usize,
    field: Field,
    b: Vec<(FieldElement, FieldElement)>,
    q: [BinaryForm; 3],
}

/// Both sides of `A(B,Q) = (det V_B)^{2n}·R(B,Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub a_value: FieldElement,
    pub det_vb: FieldElement,
    pub r_value: FieldElement,
    /// `(det V_B)^{2n}`.
    pub v_value: FieldElement,
    pub lhs_equals_rhs: bool,
    pub zero_locus_consistent: bool,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.lhs_equals_rhs && self.zero_locus_consistent
    }
}

/// Exponents `(i, j)` of `x^i y^j` for the columns of `V_B`:
/// `1, x, y, x², xy, y², …` up to degree `n−2`.
pub fn low_monomials(n: usize) -> Vec<(usize, usize)> {
    (0..=n - 2).flat_map(|d| (0..=d).map(move |j| (d - j, j))).collect()
}

/// Exponents for the columns of `R_B`: `x^{n−1}, x^{n−2}y, …, y^{n−1}`.
pub fn high_monomials(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|j| (n - 1 - j, j)).collect()
}

pub fn binom2(n: usize) -> usize {
    n * (n - 1) / 2
}

impl ConicModel {
    pub fn new(n: usize, b: Vec<(FieldElement, FieldElement)>, q: [BinaryForm; 3]) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("conic models need n ≥ 3, got {n}")));
        }
        if b.len() != binom2(n) {
            return Err(Error::Shape(format!("need {} points for n = {n}, got {}", binom2(n), b.len())));
        }
        let field = q[0].field().clone();
        if q.iter().any(|f| f.degree() != 2 || f.field() != &field) {
            return Err(Error::Shape("the conic needs three quadratic forms over one field".into()));
        }
        for (x, y) in &b {
            if x.field() != &field || y.field() != &field {
                return Err(Error::FieldMismatch(x.field().to_string(), field.to_string()));
            }
        }
        for i in 0..b.len() {
            if b[..i].contains(&b[i]) {
                return Err(Error::InvalidArgument(format!("duplicate point ({}, {})", b[i].0, b[i].1)));
            }
        }
        Ok(ConicModel { n, field, b, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[(FieldElement, FieldElement)] {
        &self.b
    }

    pub fn conic(&self) -> &[BinaryForm; 3] {
        &self.q
    }

    /// The same points with the conic replaced.
    pub fn with_conic(&self, q: [BinaryForm; 3]) -> Result<Self> {
        Self::new(self.n, self.b.clone(), q)
    }

    fn eval_matrix(&self, monos: &[(usize, usize)]) -> ExactMatrix {
        let rows = self
            .b
            .iter()
            .map(|(x, y)| monos.iter().map(|&(i, j)| &x.pow(i as u64) * &y.pow(j as u64)).collect())
            .collect();
        ExactMatrix::from_rows(&self.field, rows).expect("rectangular")
    }

    /// The `m×m` interpolation matrix of monomials of degree ≤ `n−2`.
    pub fn vandermonde_vb(&self) -> ExactMatrix {
        self.eval_matrix(&low_monomials(self.n))
    }

    /// The `m×n` matrix of degree-`(n−1)` monomials at B.
    pub fn rb_matrix(&self) -> ExactMatrix {
        self.eval_matrix(&high_monomials(self.n))
    }

    /// `K_B = [−adj(V_B)·R_B ; det(V_B)·I_n]`, whose columns lie in the kernel
    /// of `[V_B | R_B]`.
    pub fn kb_matrix(&self) -> Result<ExactMatrix> {
        let v = self.vandermonde_vb();
        let r = self.rb_matrix();
        let top = v.adjugate()?.mul(&r)?.neg();
        let bottom = ExactMatrix::identity(&self.field, self.n).scale(&v.determinant()?);
        let k = top.vstack(&bottom)?;
        if !v.hstack(&r)?.mul(&k)?.is_zero() {
            return Err(Error::CheckFailed("[V_B | R_B]·K_B is not zero".into()));
        }
        Ok(k)
    }

    /// The `(2n−1)×(m+n)` matrix sending the coefficients of a degree-`(n−1)`
    /// curve (in the column order of `[V_B | R_B]`) to those of its
    /// restriction to the conic.
    pub fn substitution_matrix(&self) -> Result<ExactMatrix> {
        substitution_matrix(&self.q, self.n)
    }

    /// The `n` binary forms of degree `2n−2` given by the columns of `𝚀·K_B`.
    pub fn gauss_forms(&self) -> Result<Vec<BinaryForm>> {
        let m = self.substitution_matrix()?.mul(&self.kb_matrix()?)?;
        (0..self.n).map(|c| BinaryForm::new(&self.field, m.col(c))).collect()
    }

    /// `A(B,Q)`.
    pub fn a_invariant(&self) -> Result<FieldElement> {
        index_matrix(&self.gauss_forms()?)?.determinant()
    }

    /// `R(B,Q)`.
    pub fn r_invariant(&self) -> Result<FieldElement> {
        let mut acc = self.field.one();
        for (bx, by) in &self.b {
            acc = &acc * &point_resultant(&self.q, bx, by)?;
        }
        Ok(acc)
    }

    pub fn verify_identity(&self) -> Result<IdentityReport> {
        let a_value = self.a_invariant()?;
        let det_vb = self.vandermonde_vb().determinant()?;
        let r_value = self.r_invariant()?;
        let v_value = det_vb.pow(2 * self.n as u64);
        let rhs = &v_value * &r_value;
        Ok(IdentityReport {
            lhs_equals_rhs: a_value == rhs,
            zero_locus_consistent: a_value.is_zero() == rhs.is_zero(),
            a_value,
            det_vb,
            r_value,
            v_value,
        })
    }
}

/// `Res(Q₁ − b_x·Q₀, Q₂ − b_y·Q₀)`.
pub fn point_resultant(q: &[BinaryForm; 3], bx: &FieldElement, by: &FieldElement) -> Result<FieldElement> {
    let f = q[1].sub(&q[0].scale(bx))?;
    let g = q[2].sub(&q[0].scale(by))?;
    resultant(&f, &g)
}

/// Substitution matrix for a conic and degree `n−1`: the column for the
/// monomial `x^i y^j` holds the coefficients of `Q₀^{n−1−i−j}·Q₁^i·Q₂^j`.
pub fn substitution_matrix(q: &[BinaryForm; 3], n: usize) -> Result<ExactMatrix> {
    let field = q[0].field().clone();
    let monos: Vec<(usize, usize)> = low_monomials(n).into_iter().chain(high_monomials(n)).collect();
    let mut m = ExactMatrix::zeros(&field, 2 * n - 1, monos.len());
    for (c, &(i, j)) in monos.iter().enumerate() {
        let f = q[0].pow(n - 1 - i - j).mul(&q[1].pow(i))?.mul(&q[2].pow(j))?;
        for (r, x) in f.coeffs().iter().enumerate() {
            m.set(r, c, x.clone());
        }
    }
    Ok(m)
}

/// The model with `B = {(aᵢ, aⱼ) : i < j}` and `Q = (v², u², u²)`.
pub fn symmetric_family(a: &[FieldElement]) -> Result<ConicModel> {
    let n = a.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("conic models need n ≥ 3, got {n}")));
    }
    for i in 0..n {
        if a[..i].contains(&a[i]) {
            return Err(Error::InvalidArgument(format!("repeated value {}", a[i])));
        }
    }
    let field = a[0].field().clone();
    let mut b = Vec::with_capacity(binom2(n));
    for i in 0..n {
        for j in i + 1..n {
            b.push((a[i].clone(), a[j].clone()));
        }
    }
    let q = [
        BinaryForm::from_ints(&field, &[0, 0, 1]),
        BinaryForm::from_ints(&field, &[1, 0, 0]),
        BinaryForm::from_ints(&field, &[1, 0, 0]),
    ];
    ConicModel::new(n, b, q)
}

/// Outcome of one step of the closed-form evaluation of the symmetric family.
#[derive(Clone, Debug, PartialEq)]
pub struct StepCheck {
    pub step: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The four closed-form steps for the symmetric family over Q:
///
/// 1. `R = ∏_{i<j}(aᵢ − aⱼ)²`;
/// 2. `det V_B ≠ 0`;
/// 3. after dividing by `det V_B`, the coefficient of `u^j v^{2n−2−j}` in the
///    `i`-th form is `(−1)^ℓ·e_ℓ(a with a_{n−i+1} removed)` for `j = 2n−2−2ℓ`,
///    and zero for odd `j`;
/// 4. the `n×n` matrix `N` of those coefficients has `det N = ±∏(aᵢ−aⱼ)`,
///    and `N ⊗ I₂` is the index matrix of the divided forms with
///    determinant `(det N)²`.
pub fn closed_form_checks(a: &[i64]) -> Result<Vec<StepCheck>> {
    let f = Field::rational();
    let vals: Vec<FieldElement> = a.iter().map(|&x| f.int(x)).collect();
    let model = symmetric_family(&vals)?;
    let n = a.len();
    let mut vandermonde = f.one();
    for i in 0..n {
        for j in i + 1..n {
            vandermonde = &vandermonde * &(&vals[i] - &vals[j]);
        }
    }
    let mut out = Vec::with_capacity(4);

    let r = model.r_invariant()?;
    let r_expected = &vandermonde * &vandermonde;
    out.push(StepCheck {
        step: 1,
        name: "R equals the squared Vandermonde product",
        passed: r == r_expected,
        detail: format!("R = {r}, expected {r_expected}"),
    });

    let det_v = model.vandermonde_vb().determinant()?;
    out.push(StepCheck {
        step: 2,
        name: "det V_B is nonzero",
        passed: !det_v.is_zero(),
        detail: format!("det V_B = {det_v}"),
    });
    if det_v.is_zero() {
        return Ok(out);
    }

    let inv = det_v.inv()?;
    let forms: Vec<BinaryForm> = model.gauss_forms()?.iter().map(|p| p.scale(&inv)).collect();
    let ints: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let mut mismatch = None;
    let mut nmat = ExactMatrix::zeros(&f, n, n);
    'outer: for (i, p) in forms.iter().enumerate() {
        // Column i (0-based) omits a_{n−i} (1-based index n−i+1 for i ≥ 1).
        let omit = n - 1 - i;
        let rest: Vec<BigInt> = ints.iter().enumerate().filter(|&(k, _)| k != omit).map(|(_, x)| x.clone()).collect();
        for j in 0..=2 * n - 2 {
            let got = p.coeff_u_pow(j);
            let expected = if j % 2 == 1 {
                f.zero()
            } else {
                let l = (2 * n - 2 - j) / 2;
                let e = f.from_bigint(&elementary_symmetric(&rest, l as i64));
                if l % 2 == 1 {
                    -e
                } else {
                    e
                }
            };
            if *got != expected {
                mismatch = Some(format!("form {}: coefficient of u^{j} is {got}, expected {expected}", i + 1));
                break 'outer;
            }
            if j % 2 == 0 {
                nmat.set((2 * n - 2 - j) / 2, i, got.clone());
            }
        }
    }
    out.push(StepCheck {
        step: 3,
        name: "coefficients are signed elementary symmetric polynomials",
        passed: mismatch.is_none(),
        detail: mismatch.unwrap_or_else(|| "all coefficients match".into()),
    });

    let det_n = nmat.determinant()?;
    let kron = nmat.kronecker_with_identity2()?;
    let det_kron = kron.determinant()?;
    let idx = index_matrix(&forms)?;
    let passed = (det_n == vandermonde || det_n == -vandermonde.clone()) && det_kron == &det_n * &det_n && kron == idx;
    out.push(StepCheck {
        step: 4,
        name: "det N is ± the Vandermonde product and det(N ⊗ I₂) = (det N)²",
        passed,
        detail: format!("det N = {det_n}, ∏(aᵢ−aⱼ) = {vandermonde}, det(N ⊗ I₂) = {det_kron}"),
    });
    Ok(out)
}

/// A reproducible random model.
///
/// Points have coordinates uniform in `[−bound, bound]` over Q or uniform in
/// F_p, and are distinct; the conic has coefficients in the same range.
/// The generator is ChaCha8 seeded with `seed`.
pub fn random_instance(n: usize, coeff_bound: i64, seed: u64, field: &Field) -> Result<ConicModel> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("conic models need n ≥ 3, got {n}")));
    }
    if field.is_extension() {
        return Err(Error::Unsupported(format!("random models over {field}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> FieldElement {
        if field.is_prime_field() {
            let p = field.characteristic();
            field.from_bigint(&BigInt::from(rng.gen_range(0..p)))
        } else {
            field.int(rng.gen_range(-coeff_bound..=coeff_bound))
        }
    };
    let m = binom2(n);
    let side = if field.is_prime_field() { field.characteristic() as u128 } else { 2 * coeff_bound as u128 + 1 };
    if side * side < m as u128 {
        return Err(Error::InvalidArgument(format!("only {} distinct points available", side * side)));
    }
    let mut b: Vec<(FieldElement, FieldElement)> = Vec::with_capacity(m);
    while b.len() < m {
        let pt = (draw(&mut rng), draw(&mut rng));
        if !b.contains(&pt) {
            b.push(pt);
        }
    }
    let form =
        |rng: &mut ChaCha8Rng| -> Result<BinaryForm> { BinaryForm::new(field, (0..3).map(|_| draw(rng)).collect()) };
    let q = [form(&mut rng)?, form(&mut rng)?, form(&mut rng)?];
    ConicModel::new(n, b, q)
}

/// Apply a projective change of coordinates `A` (acting on `(Z, X, Y)`) to a
/// model: the conic becomes `A·Q` and each point `b̂ = (1, b_x, b_y)` becomes
/// `A·b̂ / w` with `w = a₁₁ + a₁₂b_x + a₁₃b_y`. Returns the new model and the
/// list of `w`s.
pub fn transform_model(model: &ConicModel, a: &ExactMatrix) -> Result<(ConicModel, Vec<FieldElement>)> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::Shape("expected a 3×3 matrix".into()));
    }
    let q = model.conic();
    let mut newq = Vec::with_capacity(3);
    for r in 0..3 {
        newq.push(BinaryForm::linear_combination(&a.row(r), q)?);
    }
    let mut pts = Vec::with_capacity(model.points().len());
    let mut ws = Vec::with_capacity(model.points().len());
    for (bx, by) in model.points() {
        let hat = [model.field().one(), bx.clone(), by.clone()];
        let img: Vec<FieldElement> =
            (0..3).map(|r| (0..3).fold(model.field().zero(), |acc, c| &acc + &(a.get(r, c) * &hat[c]))).collect();
        if img[0].is_zero() {
            return Err(Error::InvalidArgument("the change of coordinates moves a point to infinity".into()));
        }
        let w_inv = img[0].inv()?;
        pts.push((&img[1] * &w_inv, &img[2] * &w_inv));
        ws.push(img[0].clone());
    }
    let [q0, q1, q2]: [BinaryForm; 3] = newq.try_into().unwrap();
    Ok((ConicModel::new(model.n(), pts, [q0, q1, q2])?, ws))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::q;

    fn sym(a: &[i64]) -> ConicModel {
        let f = Field::rational();
        symmetric_family(&a.iter().map(|&x| f.int(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn vandermonde_examples() {
        let f = Field::rational();
        let m = sym(&[1, 2, 3]);
        assert_eq!(
            m.vandermonde_vb(),
            ExactMatrix::from_ints(&f, &[vec![1, 1, 2], vec![1, 1, 3], vec![1, 2, 3]]).unwrap()
        );
        assert_eq!(m.vandermonde_vb().determinant().unwrap(), q(-1));
        assert_eq!(m.rb_matrix(), ExactMatrix::from_ints(&f, &[vec![1, 2, 4], vec![1, 3, 9], vec![4, 6, 9]]).unwrap());
        let collinear = ConicModel::new(3, vec![(q(0), q(0)), (q(1), q(1)), (q(2), q(2))], m.conic().clone()).unwrap();
        assert_eq!(collinear.vandermonde_vb().determinant().unwrap(), q(0));
        assert!(!sym(&[1, 2, 3, 4]).vandermonde_vb().determinant().unwrap().is_zero());
    }

    #[test]
    fn kernel_and_substitution() {
        let f = Field::rational();
        let m = sym(&[1, 2, 3]);
        let k = m.kb_matrix().unwrap();
        assert_eq!((k.rows(), k.cols()), (6, 3));
        let conic = [
            BinaryForm::from_ints(&f, &[0, 0, 1]),
            BinaryForm::from_ints(&f, &[1, 0, 0]),
            BinaryForm::from_ints(&f, &[0, 1, 0]),
        ];
        let s = substitution_matrix(&conic, 3).unwrap();
        assert_eq!(s.rows(), 5);
        // Column order 1, x, y, x², xy, y²; the column for x is z·x ↦ v²·u².
        assert_eq!(s.col(1), [0, 0, 1, 0, 0].iter().map(|&x| q(x)).collect::<Vec<_>>());
        assert_eq!(s.col(0), [0, 0, 0, 0, 1].iter().map(|&x| q(x)).collect::<Vec<_>>());
        let collinear = ConicModel::new(3, vec![(q(0), q(0)), (q(1), q(1)), (q(2), q(2))], m.conic().clone()).unwrap();
        let kc = collinear.kb_matrix().unwrap();
        assert!((3..6).all(|r| (0..3).all(|c| kc.get(r, c).is_zero())));
    }

    #[test]
    fn invariants_symmetric_family() {
        let m = sym(&[1, 2, 3]);
        assert_eq!(m.r_invariant().unwrap(), q(4));
        assert_eq!(m.a_invariant().unwrap(), q(4));
        let rep = m.verify_identity().unwrap();
        assert!(rep.passed());
        assert_eq!(rep.v_value, q(1));
    }

    #[test]
    fn degenerate_models() {
        let f = Field::rational();
        let base = sym(&[1, 2, 3]);
        let collinear =
            ConicModel::new(3, vec![(q(0), q(0)), (q(1), q(1)), (q(2), q(2))], base.conic().clone()).unwrap();
        let rep = collinear.verify_identity().unwrap();
        assert!(rep.passed());
        assert!(rep.a_value.is_zero());
        // The conic (v², u², uv) passes through (0, 0) at [u:v] = [0:1].
        let qq = [
            BinaryForm::from_ints(&f, &[0, 0, 1]),
            BinaryForm::from_ints(&f, &[1, 0, 0]),
            BinaryForm::from_ints(&f, &[0, 1, 0]),
        ];
        let on_q = ConicModel::new(3, vec![(q(0), q(0)), (q(1), q(2)), (q(3), q(5))], qq).unwrap();
        let rep = on_q.verify_identity().unwrap();
        assert!(rep.passed());
        assert!(rep.r_value.is_zero());
        assert!(rep.a_value.is_zero());
    }

    #[test]
    fn closed_forms() {
        for a in [&[1, 2, 3][..], &[1, 2, 3, 4, 5], &[3, -1, 7, 2]] {
            let steps = closed_form_checks(a).unwrap();
            assert_eq!(steps.len(), 4);
            for s in &steps {
                assert!(s.passed, "{a:?} step {}: {}", s.step, s.detail);
            }
        }
        assert!(closed_form_checks(&[1, 2, 2]).is_err());
        assert!(symmetric_family(&[q(0), q(1)]).is_err());
    }

    #[test]
    fn model_validation() {
        let m = sym(&[1, 2, 3]);
        let mut pts = m.points().to_vec();
        pts[2] = pts[0].clone();
        assert!(ConicModel::new(3, pts, m.conic().clone()).is_err());
        assert!(ConicModel::new(4, m.points().to_vec(), m.conic().clone()).is_err());
    }

    #[test]
    fn random_instances_are_reproducible() {
        let f = Field::rational();
        let a = random_instance(3, 5, 1, &f).unwrap();
        assert_eq!(a, random_instance(3, 5, 1, &f).unwrap());
        assert!(a.verify_identity().unwrap().passed());
        let f101 = Field::prime(101).unwrap();
        let b = random_instance(5, 3, 7, &f101).unwrap();
        assert_eq!(b.field(), &f101);
        assert!(b.verify_identity().unwrap().passed());
    }

    #[test]
    fn transport_factor() {
        let f = Field::rational();
        let m = random_instance(3, 4, 11, &f).unwrap();
        let a = ExactMatrix::from_ints(&f, &[vec![2, 1, 0], vec![1, 1, 3], vec![0, -1, 1]]).unwrap();
        let (moved, ws) = transform_model(&m, &a).unwrap();
        let det = a.determinant().unwrap();
        for (k, ((bx, by), (cx, cy))) in m.points().iter().zip(moved.points()).enumerate() {
            let old = point_resultant(m.conic(), bx, by).unwrap();
            let new = point_resultant(moved.conic(), cx, cy).unwrap();
            let factor = (&det * &ws[k].inv().unwrap()).pow(2);
            assert_eq!(new, &factor * &old);
        }
    }
}
