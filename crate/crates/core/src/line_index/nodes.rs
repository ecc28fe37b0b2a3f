//! Nodes of the plane quartic `[P₁:P₂:P₃]` and the Segre index for `n = 3`.
//!
//! Two parameters `z₁ ≠ z₂` map to the same point exactly when every minor
//! of the 3×2 matrix `[P(z₁) P(z₂)]` vanishes. Writing `s = z₁+z₂`,
//! `p = z₁z₂` and reducing `Pᵢ(z)` modulo `z² − sz + p` to `αᵢ + βᵢz`, the
//! minors become `(z₂−z₁)·(αᵢβⱼ − αⱼβᵢ)`, so nodes are the common zeros of
//! `m_ij = αᵢβⱼ − αⱼβᵢ` in the `(s, p)` plane. Eliminating `p` by resultants
//! leaves a cubic in `s` whose irreducible factors are the Galois orbits of
//! nodes.

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::gw::GwClass;
use crate::matrix::ExactMatrix;
use crate::poly::{bareiss_det, resultant, BinaryForm, UniPoly};

use super::trace_class;

/// A node of the Gauß curve, defined over `field`.
#[derive(Clone, Debug)]
pub struct NodeData {
    /// `k(ν)`: the base field, or `base[s]/(f)` for an irreducible factor f.
    pub field: Field,
    /// Projective coordinates of the node, first nonzero entry 1.
    pub point: Vec<FieldElement>,
    /// `u² − s·uv + p·v²` (up to the reparameterization used internally),
    /// vanishing on the two preimages.
    pub param_quadratic: BinaryForm,
    /// `ℓ¹(P)/q` and `ℓ²(P)/q` for two independent linear forms through the node.
    pub residual: [BinaryForm; 2],
    /// `Res(Q₁^ν, Q₂^ν)`.
    pub alpha: FieldElement,
    /// `N_{k(ν)/k}(α_ν)`.
    pub alpha_norm: FieldElement,
}

impl NodeData {
    /// `[k(ν) : k]`.
    pub fn degree(&self) -> usize {
        if self.field.is_extension() {
            self.field.degree()
        } else {
            1
        }
    }
}

/// Polynomials in `(s, p)` stored as coefficient lists in `p` over `k[s]`.
#[derive(Clone, Debug)]
struct Bivariate(Vec<UniPoly>);

impl Bivariate {
    fn constant(c: UniPoly) -> Self {
        Bivariate(vec![c]).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(UniPoly::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, other: &Self, field: &Field) -> Self {
        let len = self.0.len().max(other.0.len());
        let zero = UniPoly::zero(field);
        let v = (0..len)
            .map(|i| self.0.get(i).unwrap_or(&zero).clone() + other.0.get(i).unwrap_or(&zero).clone())
            .collect();
        Bivariate(v).trim()
    }

    fn neg(&self) -> Self {
        Bivariate(self.0.iter().map(|c| -c.clone()).collect())
    }

    fn mul(&self, other: &Self, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Bivariate(vec![]);
        }
        let mut v = vec![UniPoly::zero(field); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Bivariate(v).trim()
    }

    /// Multiply by `p`.
    fn shift(&self, field: &Field) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![UniPoly::zero(field)];
        v.extend(self.0.iter().cloned());
        Bivariate(v)
    }

    fn degree_p(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Specialize `s ↦ s₀` to get a polynomial in `p`.
    fn at_s(&self, s0: &FieldElement) -> Result<UniPoly> {
        let coeffs = self.0.iter().map(|c| c.eval_in(s0)).collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(s0.field(), coeffs))
    }

    fn at(&self, s0: &FieldElement, p0: &FieldElement) -> Result<FieldElement> {
        Ok(self.at_s(s0)?.eval(p0))
    }
}

/// `Res_p(f, g)` as a polynomial in `s`.
fn resultant_in_p(f: &Bivariate, g: &Bivariate, field: &Field) -> UniPoly {
    let (a, b) = (f.degree_p(), g.degree_p());
    if a == 0 && b == 0 {
        return UniPoly::constant(field.one());
    }
    let size = a + b;
    let zero = UniPoly::zero(field);
    let mut rows = vec![vec![zero.clone(); size]; size];
    for r in 0..b {
        for k in 0..=a {
            rows[r][r + k] = f.0[a - k].clone();
        }
    }
    for r in 0..a {
        for k in 0..=b {
            rows[b + r][r + k] = g.0[b - k].clone();
        }
    }
    bareiss_det(rows, UniPoly::constant(field.one()))
}

/// Reductions of `z^k` modulo `z² − s·z + p` as `A_k + B_k·z`, for `k ≤ 4`.
fn power_reductions(field: &Field) -> Vec<(Bivariate, Bivariate)> {
    let s = Bivariate::constant(UniPoly::x(field));
    let one = Bivariate::constant(UniPoly::constant(field.one()));
    let zero = Bivariate(vec![]);
    let mut out = vec![(one.clone(), zero.clone()), (zero, one)];
    for k in 1..4 {
        let (a, b) = out[k].clone();
        let next_a = b.shift(field).neg();
        let next_b = a.add(&s.mul(&b, field), field);
        out.push((next_a, next_b));
    }
    out
}

/// `(αᵢ, βᵢ)` with `Pᵢ(z) ≡ αᵢ + βᵢ·z`.
fn reduce_forms(p: &[BinaryForm], field: &Field) -> Vec<(Bivariate, Bivariate)> {
    let red = power_reductions(field);
    p.iter()
        .map(|pi| {
            let mut a = Bivariate(vec![]);
            let mut b = Bivariate(vec![]);
            for (j, (aj, bj)) in red.iter().enumerate() {
                let c = Bivariate::constant(UniPoly::constant(pi.coeff_u_pow(j).clone()));
                a = a.add(&c.mul(aj, field), field);
                b = b.add(&c.mul(bj, field), field);
            }
            (a, b)
        })
        .collect()
}

fn minors(ab: &[(Bivariate, Bivariate)], field: &Field) -> Vec<Bivariate> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            out.push(ab[i].0.mul(&ab[j].1, field).add(&ab[j].0.mul(&ab[i].1, field).neg(), field));
        }
    }
    out
}

fn shear(c: i64, field: &Field) -> [FieldElement; 4] {
    [field.one(), field.zero(), field.int(c), field.one()]
}

fn apply(m: &[FieldElement; 4], f: &BinaryForm) -> Result<BinaryForm> {
    f.substitute_linear([&m[0], &m[1], &m[2], &m[3]])
}

/// Nodes when no preimage of a node sits at `v = 0`; `None` when the
/// eliminant has the wrong degree (so a reparameterization should be tried).
fn nodes_affine(p: &[BinaryForm]) -> Result<Option<Vec<NodeData>>> {
    let field = p[0].field().clone();
    let ab = reduce_forms(p, &field);
    let ms = minors(&ab, &field);
    let mut g: Option<UniPoly> = None;
    for i in 0..3 {
        for j in i + 1..3 {
            if ms[i].is_zero() || ms[j].is_zero() {
                continue;
            }
            let r = resultant_in_p(&ms[i], &ms[j], &field);
            if r.is_zero() {
                continue;
            }
            g = Some(match g {
                None => r,
                Some(acc) => acc.gcd(&r)?,
            });
        }
    }
    let Some(g) = g else { return Ok(None) };
    let g = g.squarefree_part()?;
    if g.degree() != Some(3) {
        return Ok(None);
    }
    let mut nodes = Vec::new();
    for factor in g.factor_small()? {
        let d = factor.degree().unwrap();
        let (kf, s0) = if d == 1 {
            let root = -factor.coeff(0);
            (field.clone(), root)
        } else {
            let desc: Vec<FieldElement> = factor.coeffs().iter().rev().cloned().collect();
            let kf = Field::extension(&field, &desc)?;
            let z = kf.generator()?;
            (kf, z)
        };
        let mut pg: Option<UniPoly> = None;
        for m in &ms {
            let mp = m.at_s(&s0)?;
            if mp.is_zero() {
                continue;
            }
            pg = Some(match pg {
                None => mp.monic(),
                Some(acc) => acc.gcd(&mp)?,
            });
        }
        let Some(pg) = pg else {
            return Err(Error::NonGenericGaussCurve("a whole family of parameter pairs collapses".into()));
        };
        match pg.degree() {
            Some(0) => continue,
            Some(1) => {}
            _ => return Err(Error::NonGenericGaussCurve("several parameter pairs share one sum".into())),
        }
        let p0 = -pg.coeff(0);
        if (&(&s0 * &s0) - &p0.scale(4)).is_zero() {
            return Err(Error::NonGenericGaussCurve("cusp: coincident preimages".into()));
        }
        let alpha_vec = ab.iter().map(|(a, _)| a.at(&s0, &p0)).collect::<Result<Vec<_>>>()?;
        let beta_vec = ab.iter().map(|(_, b)| b.at(&s0, &p0)).collect::<Result<Vec<_>>>()?;
        let point_src = if alpha_vec.iter().any(|x| !x.is_zero()) { &alpha_vec } else { &beta_vec };
        let lead = point_src
            .iter()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::NonGenericGaussCurve("node parameters map to a base point".into()))?;
        let lead_inv = lead.inv()?;
        let point: Vec<FieldElement> = point_src.iter().map(|x| x * &lead_inv).collect();

        let system = ExactMatrix::from_rows(&kf, vec![alpha_vec, beta_vec])?;
        let kernel = system.kernel();
        if kernel.len() != 2 {
            return Err(Error::NonGenericGaussCurve("node image is not a single point".into()));
        }
        let q = BinaryForm::new(&kf, vec![kf.one(), -s0.clone(), p0.clone()])?;
        let pk = p.iter().map(|f| f.embed(&kf)).collect::<Result<Vec<_>>>()?;
        let mut residual = Vec::with_capacity(2);
        for l in &kernel {
            residual.push(BinaryForm::linear_combination(l, &pk)?.exact_div(&q)?);
        }
        let alpha = resultant(&residual[0], &residual[1])?;
        if alpha.is_zero() {
            return Err(Error::NonSimpleLine);
        }
        let alpha_norm = alpha.norm_to_base();
        let [r0, r1]: [BinaryForm; 2] = residual.try_into().unwrap();
        nodes.push(NodeData { field: kf, point, param_quadratic: q, residual: [r0, r1], alpha, alpha_norm });
    }
    if nodes.iter().map(NodeData::degree).sum::<usize>() != 3 {
        return Ok(None);
    }
    Ok(Some(nodes))
}

/// The three nodes of the rational quartic `[P₁:P₂:P₃]`, one entry per
/// Galois orbit.
///
/// The forms must be quartics over Q or F_p. Parameterizations that put a
/// preimage at `v = 0` are handled by retrying after `v ↦ v + c·u`; the
/// reported quadratics and residual pairs are mapped back to the original
/// coordinates.
pub fn quartic_nodes(p: &[BinaryForm]) -> Result<Vec<NodeData>> {
    if p.len() != 3 || p.iter().any(|f| f.degree() != 4) {
        return Err(Error::Shape("expected three binary quartics".into()));
    }
    let field = p[0].field().clone();
    if field.is_extension() {
        return Err(Error::Unsupported(format!("node search over {field}")));
    }
    if p.iter().any(|f| f.field() != &field) {
        return Err(Error::FieldMismatch(p[1].field().to_string(), field.to_string()));
    }
    for c in 0..8i64 {
        if field.is_prime_field() && c as u64 >= field.characteristic() {
            break;
        }
        let m = shear(c, &field);
        let sheared = p.iter().map(|f| apply(&m, f)).collect::<Result<Vec<_>>>()?;
        if let Some(mut nodes) = nodes_affine(&sheared)? {
            if c != 0 {
                for node in &mut nodes {
                    let back = shear(-c, &node.field);
                    node.param_quadratic = apply(&back, &node.param_quadratic)?;
                    node.residual = [apply(&back, &node.residual[0])?, apply(&back, &node.residual[1])?];
                }
            }
            return Ok(nodes);
        }
    }
    Err(Error::NonGenericGaussCurve("the node eliminant never has degree 3".into()))
}

/// `Tr_{k(ℓ)/k}⟨∏_ν N_{k(ν)/k(ℓ)}(α_ν)⟩` for `k(ℓ)` the field of the forms.
pub fn segre_index_n3(p: &[BinaryForm], ground: &Field) -> Result<GwClass> {
    let nodes = quartic_nodes(p)?;
    let field = p[0].field();
    let mut prod = field.one();
    for n in &nodes {
        prod = &prod * &n.alpha_norm;
    }
    trace_class(&prod, ground)
}
