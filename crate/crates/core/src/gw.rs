//! The Grothendieck–Witt ring of Q and of F_p.
//!
//! A class is a diagonal form `⟨a₁,…,a_r⟩`, stored as square-class
//! representatives with multiplicities so that classes of astronomically large
//! rank (the Euler class for a tenfold has rank about 10²⁴) stay small.
//!
//! Equality over Q is decided by rank, signature, signed discriminant and the
//! Hasse invariants at the primes dividing `2·∏aᵢ`; over F_p by rank and
//! discriminant. Both sets are complete invariants for non-degenerate forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fields::{arith, prime_support, Field, FieldElement};
use crate::matrix::ExactMatrix;

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(BigUint),
}

/// An effective class in GW(k).
#[derive(Clone, PartialEq, Eq)]
pub struct GwClass {
    base: Field,
    /// Distinct representatives with positive multiplicities, sorted.
    terms: Vec<(FieldElement, BigUint)>,
}

/// Classical invariants of a class over Q or F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwInvariants {
    pub rank: BigUint,
    /// Square class of `(−1)^{r(r−1)/2}·∏aᵢ`.
    pub discriminant: FieldElement,
    /// Square class of the plain Gram determinant `∏aᵢ`.
    pub determinant: FieldElement,
    /// Only over Q.
    pub signature: Option<BigInt>,
    /// `∏_{i<j}(aᵢ,aⱼ)_p` at the primes dividing `2·∏aᵢ` (Q only).
    pub hasse: BTreeMap<BigUint, i8>,
}

fn reduce(a: &FieldElement) -> Result<FieldElement> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if a.field().is_extension() {
        Ok(a.clone())
    } else {
        a.square_class()
    }
}

impl GwClass {
    /// The zero class (rank 0).
    pub fn zero(base: &Field) -> Self {
        GwClass { base: base.clone(), terms: vec![] }
    }

    /// The rank-one class `⟨a⟩`.
    pub fn one_dim(a: &FieldElement) -> Result<Self> {
        Self::from_diagonal(a.field(), std::slice::from_ref(a))
    }

    pub fn from_diagonal(base: &Field, entries: &[FieldElement]) -> Result<Self> {
        let mut c = Self::zero(base);
        for a in entries {
            if a.field() != base {
                return Err(Error::FieldMismatch(a.field().to_string(), base.to_string()));
            }
            c.insert(reduce(a)?, BigUint::one());
        }
        Ok(c)
    }

    /// `m·⟨a⟩`.
    pub fn multiple(a: &FieldElement, m: BigUint) -> Result<Self> {
        let mut c = Self::zero(a.field());
        if !m.is_zero() {
            c.insert(reduce(a)?, m);
        }
        Ok(c)
    }

    /// `m` copies of `H = ⟨1⟩ + ⟨−1⟩`.
    pub fn hyperbolic(base: &Field, m: BigUint) -> Self {
        let mut c = Self::zero(base);
        if !m.is_zero() {
            c.insert(reduce(&base.one()).unwrap(), m.clone());
            c.insert(reduce(&-base.one()).unwrap(), m);
        }
        c
    }

    fn insert(&mut self, a: FieldElement, m: BigUint) {
        match self.terms.binary_search_by(|(x, _)| x.cmp_repr(&a)) {
            Ok(i) => self.terms[i].1 += m,
            Err(i) => self.terms.insert(i, (a, m)),
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn terms(&self) -> &[(FieldElement, BigUint)] {
        &self.terms
    }

    pub fn rank(&self) -> BigUint {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    /// The expanded diagonal. Refuses ranks above one million.
    pub fn diagonal(&self) -> Result<Vec<FieldElement>> {
        let r = self.rank();
        if r > BigUint::from(1_000_000u32) {
            return Err(Error::Unsupported(format!("expanding a diagonal of rank {r}")));
        }
        let mut out = Vec::new();
        for (a, m) in &self.terms {
            for _ in 0..m.to_usize().unwrap() {
                out.push(a.clone());
            }
        }
        Ok(out)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::FieldMismatch(self.base.to_string(), other.base.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut c = self.clone();
        for (a, m) in &other.terms {
            c.insert(a.clone(), m.clone());
        }
        Ok(c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut c = Self::zero(&self.base);
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                c.insert(reduce(&(a * b))?, m * n);
            }
        }
        Ok(c)
    }

    pub fn invariants(&self) -> Result<GwInvariants> {
        let rank = self.rank();
        let minus_parity = {
            // r(r−1)/2 is odd exactly when r ≡ 2, 3 (mod 4).
            let r4 = (&rank % 4u32).to_u32().unwrap();
            r4 == 2 || r4 == 3
        };
        let mut det = self.base.one();
        for (a, m) in &self.terms {
            if m.is_odd() {
                det = &det * a;
            }
        }
        let disc = if minus_parity { -det.clone() } else { det.clone() };
        match (self.base.is_rational(), self.base.is_prime_field()) {
            (true, _) => {
                let discriminant = disc.square_class()?;
                let signature =
                    self.terms.iter().map(|(a, m)| BigInt::from(m.clone()) * a.signum().unwrap()).sum::<BigInt>();
                let mut hasse = BTreeMap::new();
                for p in self.relevant_primes()? {
                    hasse.insert(p.clone(), self.hasse_at(&Place::Prime(p))?);
                }
                Ok(GwInvariants {
                    rank,
                    discriminant,
                    determinant: det.square_class()?,
                    signature: Some(signature),
                    hasse,
                })
            }
            (_, true) => Ok(GwInvariants {
                rank,
                discriminant: disc.square_class()?,
                determinant: det.square_class()?,
                signature: None,
                hasse: BTreeMap::new(),
            }),
            _ => Err(Error::Unsupported(format!("GW invariants over {}", self.base))),
        }
    }

    /// Primes dividing `2·∏aᵢ`.
    fn relevant_primes(&self) -> Result<BTreeSet<BigUint>> {
        let mut ps = BTreeSet::new();
        ps.insert(BigUint::from(2u32));
        for (a, _) in &self.terms {
            let r = a.to_rational().expect("rational entry");
            ps.extend(prime_support(&(r.numer() * r.denom()))?);
        }
        Ok(ps)
    }

    /// `∏_{i<j}(aᵢ,aⱼ)_v` over the expanded diagonal.
    pub fn hasse_at(&self, place: &Place) -> Result<i8> {
        let mut parity = false;
        let rats: Vec<BigRational> = self.terms.iter().map(|(a, _)| a.to_rational().expect("rational entry")).collect();
        for (i, (_, m)) in self.terms.iter().enumerate() {
            // Pairs inside one block: C(m, 2) copies of (a, a).
            let pairs: BigUint = m * (m - 1u32) / 2u32;
            if pairs.is_odd() && hilbert_symbol(&rats[i], &rats[i], place)? == -1 {
                parity = !parity;
            }
            for (j, (_, n)) in self.terms.iter().enumerate().skip(i + 1) {
                if (m * n).is_odd() && hilbert_symbol(&rats[i], &rats[j], place)? == -1 {
                    parity = !parity;
                }
            }
        }
        Ok(if parity { -1 } else { 1 })
    }

    /// Decide equality in GW(k) for k = Q or F_p.
    pub fn gw_equal(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        if self.base.is_extension() {
            return Err(Error::Unsupported(format!("deciding equality in GW({})", self.base)));
        }
        let (a, b) = (self.invariants()?, other.invariants()?);
        if a.rank != b.rank || a.discriminant != b.discriminant || a.signature != b.signature {
            return Ok(false);
        }
        if !self.base.is_rational() {
            return Ok(true);
        }
        let primes: BTreeSet<&BigUint> = a.hasse.keys().chain(b.hasse.keys()).collect();
        for p in primes {
            let ha = match a.hasse.get(p) {
                Some(h) => *h,
                None => self.hasse_at(&Place::Prime(p.clone()))?,
            };
            let hb = match b.hasse.get(p) {
                Some(h) => *h,
                None => other.hasse_at(&Place::Prime(p.clone()))?,
            };
            if ha != hb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(s, t)` with the class equal to `s⟨1⟩ + t⟨−1⟩`, when such a pair exists.
    pub fn plus_minus_counts(&self) -> Result<Option<(BigUint, BigUint)>> {
        let inv = self.invariants()?;
        let (s, t) = match inv.signature {
            Some(sig) => {
                let r = BigInt::from(inv.rank.clone());
                let s: BigInt = (&r + &sig) / 2;
                let t: BigInt = (&r - &sig) / 2;
                (s.to_biguint().unwrap(), t.to_biguint().unwrap())
            }
            None => {
                // Over F_p, ⟨−1⟩ appears once when the discriminant needs it.
                let one = self.base.one();
                let mut found = None;
                for t in [BigUint::zero(), BigUint::one()] {
                    if t > inv.rank {
                        continue;
                    }
                    let s = &inv.rank - &t;
                    let cand = Self::multiple(&one, s.clone())?.add(&Self::multiple(&-one.clone(), t.clone())?)?;
                    if cand.invariants()?.discriminant == inv.discriminant {
                        found = Some((s, t));
                        break;
                    }
                }
                let Some(st) = found else { return Ok(None) };
                st
            }
        };
        let one = self.base.one();
        let cand = Self::multiple(&one, s.clone())?.add(&Self::multiple(&-one, t.clone())?)?;
        Ok(self.gw_equal(&cand)?.then_some((s, t)))
    }

    /// Report string: `s⟨1⟩+t⟨−1⟩` when possible, otherwise the diagonal.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        if !self.base.is_extension() {
            if let Ok(Some((s, t))) = self.plus_minus_counts() {
                let part = |m: &BigUint, sym: &str| match m {
                    m if m.is_one() => format!("⟨{sym}⟩"),
                    m => format!("{m}⟨{sym}⟩"),
                };
                let mut parts = Vec::new();
                if !s.is_zero() {
                    parts.push(part(&s, "1"));
                }
                if !t.is_zero() {
                    parts.push(part(&t, "−1"));
                }
                return parts.join("+");
            }
        }
        self.to_string()
    }
}

fn fmt_entry(a: &FieldElement) -> String {
    a.to_string().replace('-', "−")
}

impl fmt::Display for GwClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, m)| if m.is_one() { format!("⟨{}⟩", fmt_entry(a)) } else { format!("{m}⟨{}⟩", fmt_entry(a)) })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for GwClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GW({}): {}", self.base, self)
    }
}

/// Split a nonzero rational as `p^v · u` with u a p-adic unit, returning v
/// and u's numerator and denominator.
fn split_valuation(a: &BigRational, p: &BigUint) -> (i64, BigInt, BigInt) {
    let pi = BigInt::from(p.clone());
    let mut v = 0i64;
    let (mut n, mut d) = (a.numer().clone(), a.denom().clone());
    while (&n % &pi).is_zero() {
        n /= &pi;
        v += 1;
    }
    while (&d % &pi).is_zero() {
        d /= &pi;
        v -= 1;
    }
    (v, n, d)
}

/// The Hilbert symbol `(a, b)_v` of two nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = match place {
        Place::Real => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => p,
    };
    if !arith::is_probable_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let (alpha, an, ad) = split_valuation(a, p);
    let (beta, bn, bd) = split_valuation(b, p);
    // Units are represented as n·d, which has the same square class as n/d.
    let u = an * ad;
    let w = bn * bd;
    let mut exp = 0u64;
    if p == &BigUint::from(2u32) {
        let eps = |x: &BigInt| -> u64 { (x.mod_floor(&BigInt::from(4)) == BigInt::from(3)) as u64 };
        let omega = |x: &BigInt| -> u64 {
            let r = x.mod_floor(&BigInt::from(8));
            (r == BigInt::from(3) || r == BigInt::from(5)) as u64
        };
        exp += eps(&u) * eps(&w);
        exp += (alpha.rem_euclid(2) as u64) * omega(&w);
        exp += (beta.rem_euclid(2) as u64) * omega(&u);
        return Ok(if exp.is_multiple_of(2) { 1 } else { -1 });
    }
    let pm = p.clone();
    let eps_p = ((&pm - 1u32) / 2u32).is_odd() as u64;
    exp += (alpha.rem_euclid(2) as u64) * (beta.rem_euclid(2) as u64) * eps_p;
    let mut sign = if exp.is_multiple_of(2) { 1 } else { -1 };
    if beta.rem_euclid(2) == 1 {
        sign *= arith::legendre_big(&u, &pm);
    }
    if alpha.rem_euclid(2) == 1 {
        sign *= arith::legendre_big(&w, &pm);
    }
    Ok(sign as i8)
}

/// Diagonalize a symmetric Gram matrix. When every remaining diagonal entry
/// vanishes, a row/column with a nonzero off-diagonal entry is first added
/// to the pivot row/column.
pub fn diagonalize_symmetric(gram: &ExactMatrix) -> Result<Vec<FieldElement>> {
    let n = gram.rows();
    let mut g = gram.to_rows();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !g[i][i].is_zero()) {
                g.swap(k, i);
                for row in g.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                let rj = g[j].clone();
                for (c, x) in g[k].iter_mut().enumerate() {
                    *x = &*x + &rj[c];
                }
                for row in g.iter_mut() {
                    let add = row[j].clone();
                    row[k] = &row[k] + &add;
                }
            } else {
                return Err(Error::InvalidArgument("degenerate symmetric form".into()));
            }
        }
        let piv = g[k][k].clone();
        let inv = piv.inv()?;
        for i in k + 1..n {
            if g[i][k].is_zero() {
                continue;
            }
            let f = &g[i][k] * &inv;
            let rk = g[k].clone();
            for (c, x) in g[i].iter_mut().enumerate() {
                *x = &*x - &(&f * &rk[c]);
            }
            for row in g.iter_mut() {
                let sub = &f * &row[k];
                row[i] = &row[i] - &sub;
            }
        }
        diag.push(piv);
    }
    Ok(diag)
}

/// The Gram matrix of `(x, y) ↦ Tr_{L/k}(α·x·y)` on the power basis of L.
pub fn trace_gram(alpha: &FieldElement) -> Result<ExactMatrix> {
    let l = alpha.field();
    if !l.is_extension() {
        return ExactMatrix::from_rows(l, vec![vec![alpha.clone()]]);
    }
    let d = l.degree();
    let z = l.generator()?;
    let powers: Vec<FieldElement> = (0..2 * d - 1).map(|e| z.pow(e as u64)).collect();
    let traces = powers.iter().map(|p| (alpha * p).trace()).collect::<Result<Vec<_>>>()?;
    let rows = (0..d).map(|i| (0..d).map(|j| traces[i + j].clone()).collect()).collect();
    ExactMatrix::from_rows(&l.base(), rows)
}

/// The trace form `Tr_{L/k}⟨α⟩` as a class over k; `⟨α⟩` when L = k.
pub fn trace_form(alpha: &FieldElement) -> Result<GwClass> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    let gram = trace_gram(alpha)?;
    let diag = diagonalize_symmetric(&gram)?;
    GwClass::from_diagonal(gram.field(), &diag)
}
