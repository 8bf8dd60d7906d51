//! Heisenberg groups, the Schrödinger representation on theta functions,
//! group algebras, and the projector onto the reduced quotient.
//!
//! Finite elements use canonical coordinates `(p, q, k)` with
//! `p, q ∈ Z_N^g`, `k ∈ Z_{2N}` and law
//! `(p,q,k)(p',q',k') = (p+p', q+q', k+k'+2p·q')`. The exponential
//! `exp(pP + qQ + kE)` is the canonical triple `(p, q, k + p·q)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclo, CycloRing};
use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;
use crate::symplectic::{omega, Lagrangian, SymplecticMatrix};

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Element of the integer Heisenberg group `H(Z^g)` with law
/// `(p,q,k)(p',q',k') = (p+p', q+q', k+k'+ω((p,q),(p',q')))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisInt {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub k: i64,
}

impl HeisInt {
    pub fn new(p: Vec<i64>, q: Vec<i64>, k: i64) -> Self {
        assert_eq!(p.len(), q.len(), "p and q must have equal length");
        HeisInt { p, q, k }
    }

    pub fn identity(genus: usize) -> Self {
        HeisInt::new(vec![0; genus], vec![0; genus], 0)
    }

    pub fn genus(&self) -> usize {
        self.p.len()
    }

    fn pq(&self) -> Vec<i64> {
        self.p.iter().chain(&self.q).copied().collect()
    }

    pub fn mul(&self, other: &HeisInt) -> HeisInt {
        let w = omega(&self.pq(), &other.pq());
        HeisInt {
            p: self.p.iter().zip(&other.p).map(|(a, b)| a + b).collect(),
            q: self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect(),
            k: self.k + other.k + w,
        }
    }

    /// The map `F(p,q,k) = (p mod N, q mod N, k + p·q mod 2N)`.
    pub fn to_finite(&self, level: u32) -> HeisFin {
        let k = self.k + dot(&self.p, &self.q);
        HeisFin::new(level, self.p.clone(), self.q.clone(), k)
    }
}

/// Element of the finite Heisenberg group `H(Z_N^g)` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisFin {
    #[serde(skip)]
    level: u32,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub k: i64,
}

impl HeisFin {
    /// Builds an element and reduces its coordinates.
    pub fn new(level: u32, p: Vec<i64>, q: Vec<i64>, k: i64) -> Self {
        assert_eq!(p.len(), q.len(), "p and q must have equal length");
        let n = level as i64;
        HeisFin {
            level,
            p: p.into_iter().map(|x| x.rem_euclid(n)).collect(),
            q: q.into_iter().map(|x| x.rem_euclid(n)).collect(),
            k: k.rem_euclid(2 * n),
        }
    }

    /// `exp(pP + qQ + kE)`, the canonical triple `(p, q, k + p·q)`.
    pub fn exp(level: u32, p: Vec<i64>, q: Vec<i64>, k: i64) -> Self {
        let c = k + dot(&p, &q);
        HeisFin::new(level, p, q, c)
    }

    pub fn identity(level: u32, genus: usize) -> Self {
        HeisFin::new(level, vec![0; genus], vec![0; genus], 0)
    }

    /// Central element `exp(kE) = (0, 0, k)`.
    pub fn central(level: u32, genus: usize, k: i64) -> Self {
        HeisFin::new(level, vec![0; genus], vec![0; genus], k)
    }

    /// The generators `exp(P_j)`, `exp(Q_j)` and `exp(E)`.
    pub fn generators(level: u32, genus: usize) -> Vec<HeisFin> {
        let mut out = Vec::with_capacity(2 * genus + 1);
        for j in 0..genus {
            let mut e = vec![0; genus];
            e[j] = 1;
            out.push(HeisFin::new(level, e.clone(), vec![0; genus], 0));
            out.push(HeisFin::new(level, vec![0; genus], e, 0));
        }
        out.push(HeisFin::central(level, genus, 1));
        out
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn genus(&self) -> usize {
        self.p.len()
    }

    /// Re-attaches the level after deserialization.
    pub fn with_level(self, level: u32) -> Self {
        HeisFin::new(level, self.p, self.q, self.k)
    }

    pub fn mul(&self, other: &HeisFin) -> HeisFin {
        debug_assert_eq!(self.level, other.level);
        HeisFin::new(
            self.level,
            self.p.iter().zip(&other.p).map(|(a, b)| a + b).collect(),
            self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect(),
            self.k + other.k + 2 * dot(&self.p, &other.q),
        )
    }

    pub fn inverse(&self) -> HeisFin {
        HeisFin::new(
            self.level,
            self.p.iter().map(|x| -x).collect(),
            self.q.iter().map(|x| -x).collect(),
            -self.k + 2 * dot(&self.p, &self.q),
        )
    }

    /// The exponent `k'` with `self = exp(pP + qQ + k'E)`.
    pub fn exp_k(&self) -> i64 {
        (self.k - dot(&self.p, &self.q)).rem_euclid(2 * self.level as i64)
    }
}

/// Index of `μ ∈ Z_N^g` in lexicographic order.
pub fn theta_index(mu: &[i64], level: u32) -> usize {
    let n = level as i64;
    mu.iter()
        .fold(0usize, |acc, &m| acc * level as usize + m.rem_euclid(n) as usize)
}

/// Inverse of [`theta_index`].
pub fn theta_multi_index(mut idx: usize, level: u32, genus: usize) -> Vec<i64> {
    let mut mu = vec![0i64; genus];
    for j in (0..genus).rev() {
        mu[j] = (idx % level as usize) as i64;
        idx /= level as usize;
    }
    mu
}

pub fn theta_dim(level: u32, genus: usize) -> usize {
    (level as usize).pow(genus as u32)
}

/// A vector in the span of `θ_μ`, `μ ∈ Z_N^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaVector {
    pub genus: usize,
    pub entries: Vec<Cyclo>,
}

impl ThetaVector {
    pub fn zero(ring: &Arc<CycloRing>, genus: usize) -> Self {
        ThetaVector {
            genus,
            entries: vec![ring.zero(); theta_dim(ring.level(), genus)],
        }
    }

    pub fn basis(ring: &Arc<CycloRing>, genus: usize, mu: &[i64]) -> Self {
        let mut v = Self::zero(ring, genus);
        v.entries[theta_index(mu, ring.level())] = ring.one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclo::is_zero)
    }
}

/// `ρ(p,q,k)θ_μ = ζ_{2N}^{k − 2p·q − 2q·μ} θ_{μ+p}`.
pub fn schrodinger_matrix(ring: &Arc<CycloRing>, u: &HeisFin) -> CycloMatrix {
    let n = ring.level();
    let g = u.genus();
    let dim = theta_dim(n, g);
    let base = u.k - 2 * dot(&u.p, &u.q);
    let mut m = CycloMatrix::zeros(ring, dim, dim);
    for col in 0..dim {
        let mu = theta_multi_index(col, n, g);
        let shifted: Vec<i64> = mu.iter().zip(&u.p).map(|(a, b)| a + b).collect();
        m.set(
            theta_index(&shifted, n),
            col,
            ring.t_pow(base - 2 * dot(&u.q, &mu)),
        );
    }
    m
}

/// Weyl quantization of `e^{2πi(p·x + q·y)}`:
/// `θ_μ ↦ e^{−πi p·q/N − 2πi μ·q/N} θ_{μ+p}`.
pub fn weyl_op(ring: &Arc<CycloRing>, p: &[i64], q: &[i64]) -> CycloMatrix {
    let u = HeisInt::new(p.to_vec(), q.to_vec(), 0).to_finite(ring.level());
    schrodinger_matrix(ring, &u)
}

/// Checks `Op(p,q)·Op(p',q') = t^{ω} Op(p+p', q+q')` and returns `ω`, or
/// `None` if the identity fails.
pub fn weyl_product_phase(
    ring: &Arc<CycloRing>,
    p: &[i64],
    q: &[i64],
    p2: &[i64],
    q2: &[i64],
) -> Option<i64> {
    let x: Vec<i64> = p.iter().chain(q).copied().collect();
    let y: Vec<i64> = p2.iter().chain(q2).copied().collect();
    let w = omega(&x, &y);
    let lhs = weyl_op(ring, p, q).mul(&weyl_op(ring, p2, q2)).ok()?;
    let ps: Vec<i64> = p.iter().zip(p2).map(|(a, b)| a + b).collect();
    let qs: Vec<i64> = q.iter().zip(q2).map(|(a, b)| a + b).collect();
    let rhs = weyl_op(ring, &ps, &qs).scale(&ring.t_pow(w));
    (lhs == rhs).then_some(w)
}

fn all_vectors(level: u32, len: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..theta_dim(level, len)).map(move |i| theta_multi_index(i, level, len))
}

/// Rank of the `N^{2g}` Weyl operators as vectors in `End(C^{N^g})`.
pub fn operator_basis_rank(ring: &Arc<CycloRing>, genus: usize) -> usize {
    let n = ring.level();
    let dim = theta_dim(n, genus);
    let ops: Vec<CycloMatrix> = all_vectors(n, 2 * genus)
        .map(|v| weyl_op(ring, &v[..genus], &v[genus..]))
        .collect();
    let stacked = CycloMatrix::from_fn(ring, ops.len(), dim * dim, |i, j| {
        ops[i].entries()[j].clone()
    });
    stacked.rank()
}

/// Dimension of `{A : Aρ(u) = ρ(u)A for all generators u}`.
pub fn commutant_dim(ring: &Arc<CycloRing>, genus: usize) -> usize {
    let n = ring.level();
    let dim = theta_dim(n, genus);
    let gens: Vec<CycloMatrix> = HeisFin::generators(n, genus)
        .iter()
        .map(|u| schrodinger_matrix(ring, u))
        .collect();
    // Unknown A is flattened row-major; one equation per (generator, i, j).
    let unknowns = dim * dim;
    let mut eqs = CycloMatrix::zeros(ring, gens.len() * unknowns, unknowns);
    for (gi, gm) in gens.iter().enumerate() {
        for i in 0..dim {
            for j in 0..dim {
                let row = gi * unknowns + i * dim + j;
                for k in 0..dim {
                    // (A G)_{ij} = Σ_k A_{ik} G_{kj}
                    let gkj = gm.get(k, j);
                    if !gkj.is_zero() {
                        let idx = i * dim + k;
                        let v = eqs.get(row, idx) + gkj;
                        eqs.set(row, idx, v);
                    }
                    // (G A)_{ij} = Σ_k G_{ik} A_{kj}
                    let gik = gm.get(i, k);
                    if !gik.is_zero() {
                        let idx = k * dim + j;
                        let v = eqs.get(row, idx) - gik;
                        eqs.set(row, idx, v);
                    }
                }
            }
        }
    }
    unknowns - eqs.rank()
}

/// Action of a symplectic matrix on `H(Z_N^g)`:
/// `exp(pP + qQ + kE) ↦ exp((Ap+Bq)P + (Cp+Dq)Q + kE)`.
pub fn mcg_on_heis(h: &SymplecticMatrix, u: &HeisFin) -> Result<HeisFin> {
    if h.genus() != u.genus() {
        return Err(Error::Shape(format!(
            "genus {} matrix acting on genus {} element",
            h.genus(),
            u.genus()
        )));
    }
    let g = u.genus();
    let k = u.exp_k();
    let x: Vec<i64> = u.p.iter().chain(&u.q).copied().collect();
    let y = h.apply(&x);
    Ok(HeisFin::exp(u.level(), y[..g].to_vec(), y[g..].to_vec(), k))
}

/// The skein class `t^k γ` with `[γ] = c = (p, q)` goes to `(p, q, k + p·q)`.
pub fn skein_curve_to_heis(c: &[i64], k: i64) -> HeisInt {
    let g = c.len() / 2;
    let (p, q) = (c[..g].to_vec(), c[g..].to_vec());
    let hash = dot(&p, &q);
    HeisInt::new(p, q, k + hash)
}

/// A finitely supported element of the group algebra `C[H(Z_N^g)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlg {
    ring: Arc<CycloRing>,
    genus: usize,
    terms: BTreeMap<HeisFin, Cyclo>,
}

impl GroupAlg {
    pub fn zero(ring: &Arc<CycloRing>, genus: usize) -> Self {
        GroupAlg {
            ring: Arc::clone(ring),
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn element(ring: &Arc<CycloRing>, u: &HeisFin) -> Self {
        let mut x = Self::zero(ring, u.genus());
        x.add_term(u.clone(), ring.one());
        x
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HeisFin, &Cyclo)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, u: HeisFin, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(u);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GroupAlg) -> GroupAlg {
        let mut out = self.clone();
        for (u, c) in &other.terms {
            out.add_term(u.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cyclo) -> GroupAlg {
        let mut out = GroupAlg::zero(&self.ring, self.genus);
        for (u, x) in &self.terms {
            out.add_term(u.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &GroupAlg) -> GroupAlg {
        let mut out = GroupAlg::zero(&self.ring, self.genus);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Applies a symplectic automorphism to every group element.
    pub fn transform(&self, h: &SymplecticMatrix) -> Result<GroupAlg> {
        let mut out = GroupAlg::zero(&self.ring, self.genus);
        for (u, c) in &self.terms {
            out.add_term(mcg_on_heis(h, u)?, c.clone());
        }
        Ok(out)
    }

    /// `Σ c_u ρ(u)`.
    pub fn represent(&self) -> CycloMatrix {
        let dim = theta_dim(self.ring.level(), self.genus);
        let mut m = CycloMatrix::zeros(&self.ring, dim, dim);
        for (u, c) in &self.terms {
            m = m
                .add(&schrodinger_matrix(&self.ring, u).scale(c))
                .expect("same shape");
        }
        m
    }
}

/// The subgroup `exp(L + ZE)` of `H(Z_N^g)` with its character
/// `χ(exp(l + kE)) = ζ_{2N}^k`, stored as element ↦ exponent of `ζ_{2N}`.
pub fn lagrangian_subgroup(level: u32, lag: &Lagrangian) -> Result<BTreeMap<HeisFin, i64>> {
    let g = lag.genus();
    let n = level as i64;
    let mut out: BTreeMap<HeisFin, i64> = BTreeMap::new();
    for coeffs in all_vectors(level, g) {
        let mut l = vec![0i64; 2 * g];
        for (c, v) in coeffs.iter().zip(lag.basis()) {
            for (a, b) in l.iter_mut().zip(v) {
                *a += c * b;
            }
        }
        for k in 0..2 * n {
            let u = HeisFin::exp(level, l[..g].to_vec(), l[g..].to_vec(), k);
            if let Some(&prev) = out.get(&u) {
                if prev != k {
                    return Err(Error::NotLagrangian(
                        "character is inconsistent on exp(L + ZE)".into(),
                    ));
                }
            }
            out.insert(u, k);
        }
    }
    let expected = 2 * theta_dim(level, g + 1);
    if out.len() != expected {
        return Err(Error::NotLagrangian(format!(
            "exp(L + ZE) has {} elements, expected {expected} (basis not primitive mod N)",
            out.len()
        )));
    }
    Ok(out)
}

/// `π_L(x) = |K|^{-1} Σ_{u' ∈ K} χ(u')^{-1} x u'` with `K = exp(L + ZE)`.
pub fn pi_l(x: &GroupAlg, lag: &Lagrangian) -> Result<GroupAlg> {
    let ring = x.ring();
    let sub = lagrangian_subgroup(ring.level(), lag)?;
    let weight = ring.ratio(1, sub.len() as i64);
    let mut out = GroupAlg::zero(ring, x.genus());
    for (u, a) in x.terms() {
        for (v, &k) in &sub {
            out.add_term(u.mul(v), &(a * &ring.t_pow(-k)) * &weight);
        }
    }
    Ok(out)
}

/// Lift of a theta vector through `π_{hL}` for `L` the standard
/// Lagrangian: `θ_μ ↦ N^{-g} Σ_q h·(exp(μP) exp(qQ))`.
pub fn section_lift(v: &ThetaVector, h: &SymplecticMatrix) -> Result<GroupAlg> {
    let ring = v.entries[0].ring().clone();
    let n = ring.level();
    let g = v.genus;
    let weight = ring.ratio(1, theta_dim(n, g) as i64);
    let mut out = GroupAlg::zero(&ring, g);
    for (idx, c) in v.entries.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mu = theta_multi_index(idx, n, g);
        let coef = c * &weight;
        for q in all_vectors(n, g) {
            let u = HeisFin::new(n, mu.clone(), vec![0; g], 0)
                .mul(&HeisFin::new(n, vec![0; g], q, 0));
            out.add_term(mcg_on_heis(h, &u)?, coef.clone());
        }
    }
    Ok(out)
}

/// The quotient map for the standard Lagrangian, `x ↦ ρ(x)θ_0`; on group
/// elements `(p, q, c) ↦ ζ_{2N}^{c − 2p·q} θ_p`.
pub fn quotient_to_theta(x: &GroupAlg) -> ThetaVector {
    let ring = x.ring();
    let n = ring.level();
    let mut v = ThetaVector::zero(ring, x.genus());
    for (u, c) in x.terms() {
        let idx = theta_index(&u.p, n);
        let phase = ring.t_pow(u.k - 2 * dot(&u.p, &u.q));
        v.entries[idx] += &(c * &phase);
    }
    v
}
