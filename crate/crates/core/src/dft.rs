//! Discrete Fourier transforms: the projective action of the mapping class
//! group on theta functions.
//!
//! Two independent constructions are provided. The twist construction
//! colors the surgery curve of a Dehn twist by `Ω` and evaluates it in the
//! Heisenberg representation. The averaging construction lifts `θ_μ` to
//! the group algebra, transports the lift by `h`, and projects back. Both
//! satisfy the exact Egorov identity `ρ(h) ρ(u) ρ(h)^{-1} = ρ(h·u)`.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::{Cyclo, CycloRing};
use crate::error::{Error, Result};
use crate::heis::{
    mcg_on_heis, quotient_to_theta, schrodinger_matrix, theta_dim, theta_multi_index, GroupAlg,
    HeisFin,
};
use crate::matrix::CycloMatrix;
use crate::rt::signature;
use crate::symplectic::{omega, Lagrangian, SymplecticMatrix};

/// A Dehn twist about the curve with homology class `curve`, with sign `sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    pub curve: Vec<i64>,
    pub sign: i64,
}

/// A word in Dehn twists, read in operator order: the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MCGWord {
    pub genus: usize,
    pub letters: Vec<Twist>,
}

impl MCGWord {
    pub fn empty(genus: usize) -> Self {
        MCGWord {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn twist(curve: Vec<i64>, sign: i64) -> Self {
        MCGWord {
            genus: curve.len() / 2,
            letters: vec![Twist { curve, sign }],
        }
    }

    /// Parses a word such as `"S T t"` or `"+(1,0,0,1) -(0,1,0,0)"`.
    ///
    /// Torus letters: `A`/`a` twist about `a = (1,0)` and its inverse,
    /// `B`/`b` about `b = (0,1)`, `T` = `B`, `S` = `BAB`; lowercase inverts.
    /// Explicit curves `±(c_1,…,c_2g)` work in any genus.
    pub fn parse(text: &str, genus: usize) -> Result<Self> {
        let mut w = MCGWord::empty(genus);
        let err = |msg: String| Error::Parse { line: 1, msg };
        for tok in text.split_whitespace() {
            if let Some(rest) = tok.strip_prefix('+').or_else(|| tok.strip_prefix('-')) {
                let sign = if tok.starts_with('+') { 1 } else { -1 };
                let inner = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| err(format!("expected ±(c1,...,c2g), got {tok:?}")))?;
                let curve = inner
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(format!("bad curve class {tok:?}")))?;
                if curve.len() != 2 * genus {
                    return Err(err(format!(
                        "curve {tok:?} has {} entries, genus {genus} needs {}",
                        curve.len(),
                        2 * genus
                    )));
                }
                w.letters.push(Twist { curve, sign });
                continue;
            }
            for ch in tok.chars() {
                if genus != 1 {
                    return Err(err(format!(
                        "letter {ch:?} is a torus preset; use explicit curves in genus {genus}"
                    )));
                }
                let a = |s| Twist { curve: vec![1, 0], sign: s };
                let b = |s| Twist { curve: vec![0, 1], sign: s };
                let seq = match ch {
                    'A' => vec![a(1)],
                    'a' => vec![a(-1)],
                    'B' | 'T' => vec![b(1)],
                    'b' | 't' => vec![b(-1)],
                    'S' => vec![b(1), a(1), b(1)],
                    's' => vec![b(-1), a(-1), b(-1)],
                    other => return Err(err(format!("unknown letter {other:?}"))),
                };
                w.letters.extend(seq);
            }
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` followed (on the right) by `other`, so `other` acts first.
    pub fn then(&self, other: &MCGWord) -> MCGWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        MCGWord {
            genus: self.genus,
            letters,
        }
    }

    pub fn inverse(&self) -> MCGWord {
        MCGWord {
            genus: self.genus,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|t| Twist {
                    curve: t.curve.clone(),
                    sign: -t.sign,
                })
                .collect(),
        }
    }

    /// The induced action on `H_1 = Z^{2g}`.
    pub fn matrix(&self) -> Result<SymplecticMatrix> {
        let mut h = SymplecticMatrix::identity(self.genus);
        for t in &self.letters {
            h = h.compose(&SymplecticMatrix::dehn_twist(&t.curve, t.sign)?);
        }
        SymplecticMatrix::new(h.rows().to_vec())
    }

    /// Linking matrix of the surgery description of the mapping cylinder,
    /// closed off by `0`-framed `b`-curves.
    ///
    /// Letter `i` contributes a component with framing `p_i·q_i + ε_i`;
    /// for `i` left of `j`, `lk = p_j·q_i`. The closing curve `K_k` (class
    /// of `b_k`) sits outside all of them, so `lk(j, K_k) = (p_j)_k`.
    pub fn surgery_linking_matrix(&self) -> Vec<Vec<i64>> {
        let g = self.genus;
        let n = self.letters.len();
        let size = n + g;
        let mut m = vec![vec![0i64; size]; size];
        let pq = |c: &[i64]| (c[..g].to_vec(), c[g..].to_vec());
        for i in 0..n {
            let (pi, qi) = pq(&self.letters[i].curve);
            m[i][i] = dot(&pi, &qi) + self.letters[i].sign;
            for j in i + 1..n {
                let (pj, _) = pq(&self.letters[j].curve);
                m[i][j] = dot(&pj, &qi);
                m[j][i] = m[i][j];
            }
            for k in 0..g {
                m[i][n + k] = pi[k];
                m[n + k][i] = pi[k];
            }
        }
        m
    }

    /// Signature of [`Self::surgery_linking_matrix`].
    pub fn framing(&self) -> i64 {
        signature(&self.surgery_linking_matrix())
    }
}

impl fmt::Display for MCGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|t| {
                let c: Vec<String> = t.curve.iter().map(i64::to_string).collect();
                format!("{}({})", if t.sign > 0 { '+' } else { '-' }, c.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Words in `T_a^{±1}`, `T_b^{±1}` for an element of `SL(2, Z)`, by the
/// Euclidean algorithm on the first column.
pub fn torus_word(h: &SymplecticMatrix) -> Result<MCGWord> {
    if h.genus() != 1 {
        return Err(Error::Shape("torus_word needs a 2x2 matrix".into()));
    }
    let r = h.rows();
    let mut m = [[r[0][0], r[0][1]], [r[1][0], r[1][1]]];
    // m = G_k ⋯ G_1 h; `undo` collects G_1^{-1}, …, G_k^{-1}.
    let mut undo = MCGWord::empty(1);
    let a = |s: i64| Twist { curve: vec![1, 0], sign: s };
    let b = |s: i64| Twist { curve: vec![0, 1], sign: s };
    while m[1][0] != 0 {
        if m[0][0] == 0 || m[0][0].abs() > m[1][0].abs() {
            // T_a^k: row0 -= k·row1
            let k = if m[0][0] == 0 { -1 } else { m[0][0] / m[1][0] };
            for c in 0..2 {
                m[0][c] -= k * m[1][c];
            }
            for _ in 0..k.abs() {
                undo.letters.push(a(-k.signum()));
            }
        } else {
            // T_b^k: row1 += k·row0
            let k = -(m[1][0] / m[0][0]);
            for c in 0..2 {
                m[1][c] += k * m[0][c];
            }
            for _ in 0..k.abs() {
                undo.letters.push(b(-k.signum()));
            }
        }
    }
    let mut rest = MCGWord::empty(1);
    let x = m[0][1];
    let (sgn, x) = if m[0][0] == 1 { (1, x) } else { (-1, -x) };
    if sgn == -1 {
        // −I = S²
        rest = MCGWord::parse("S S", 1)?;
    }
    // (1 x; 0 1) = T_a^{-x}
    for _ in 0..x.abs() {
        rest.letters.push(a(-x.signum()));
    }
    Ok(undo.then(&rest))
}

/// `N^{-1/2} Σ_j t^{εj²} ρ(exp(j·c))`, the transform of a Dehn twist.
pub fn twist_transform(ring: &Arc<CycloRing>, curve: &[i64], sign: i64) -> CycloMatrix {
    let n = ring.level();
    let g = curve.len() / 2;
    let dim = theta_dim(n, g);
    let mut m = CycloMatrix::zeros(ring, dim, dim);
    for j in 0..n as i64 {
        let p: Vec<i64> = curve[..g].iter().map(|x| j * x).collect();
        let q: Vec<i64> = curve[g..].iter().map(|x| j * x).collect();
        let u = HeisFin::exp(n, p, q, 0);
        let term = schrodinger_matrix(ring, &u).scale(&ring.t_pow(sign * j * j));
        m = m.add(&term).expect("same shape");
    }
    m.scale(&ring.level_pow_half(-1))
}

/// A transform together with the signature bookkeeping of its surgery data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedTransform {
    pub matrix: CycloMatrix,
    /// Signature of the surgery linking matrix.
    pub framing: i64,
    /// `Σ ε` over the twists.
    pub twist_count: i64,
}

impl NormalizedTransform {
    /// `ζ_8^{-framing}` times the raw product.
    pub fn normalized(&self) -> CycloMatrix {
        self.matrix.scale(&self.matrix.ring().zeta8_pow(-self.framing))
    }
}

/// Product of twist transforms along a word.
pub fn rho_word(ring: &Arc<CycloRing>, w: &MCGWord) -> Result<NormalizedTransform> {
    w.matrix()?;
    let dim = theta_dim(ring.level(), w.genus);
    let mut m = CycloMatrix::identity(ring, dim);
    for t in &w.letters {
        m = m.mul(&twist_transform(ring, &t.curve, t.sign))?;
    }
    Ok(NormalizedTransform {
        matrix: m,
        framing: w.framing(),
        twist_count: w.letters.iter().map(|t| t.sign).sum(),
    })
}

/// The signature-normalized transform of a torus mapping class, computed
/// from its Euclidean word.
pub fn rho_normalized(ring: &Arc<CycloRing>, h: &SymplecticMatrix) -> Result<CycloMatrix> {
    Ok(rho_word(ring, &torus_word(h)?)?.normalized())
}

fn all_vectors(level: u32, len: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..theta_dim(level, len)).map(move |i| theta_multi_index(i, level, len))
}

/// Result of the averaging construction.
#[derive(Clone, Debug)]
pub struct Averaged {
    pub matrix: CycloMatrix,
    /// `(p, q)` of the right translation `exp(pP + qQ)` that was needed to
    /// make the average nonzero; `None` when the plain average works.
    pub shift: Option<Vec<i64>>,
}

/// Columns `θ_μ ↦ [N^{-g} Σ_q h·exp(μP) · h·exp(qQ) · w]` in the quotient
/// by the standard Lagrangian.
pub fn rho_averaging(ring: &Arc<CycloRing>, h: &SymplecticMatrix) -> Result<CycloMatrix> {
    Ok(rho_averaging_detail(ring, h)?.matrix)
}

pub fn rho_averaging_detail(ring: &Arc<CycloRing>, h: &SymplecticMatrix) -> Result<Averaged> {
    let n = ring.level();
    let g = h.genus();
    let dim = theta_dim(n, g);
    let weight = ring.ratio(1, dim as i64);
    let mut avg = GroupAlg::zero(ring, g);
    for q in all_vectors(n, g) {
        let u = mcg_on_heis(h, &HeisFin::exp(n, vec![0; g], q, 0))?;
        avg.add_term(u, weight.clone());
    }
    let lifts: Vec<GroupAlg> = all_vectors(n, g)
        .map(|mu| {
            let u = mcg_on_heis(h, &HeisFin::exp(n, mu, vec![0; g], 0))?;
            Ok(GroupAlg::element(ring, &u).mul(&avg))
        })
        .collect::<Result<_>>()?;
    for shift in all_vectors(n, 2 * g) {
        let w = GroupAlg::element(ring, &HeisFin::exp(n, shift[..g].to_vec(), shift[g..].to_vec(), 0));
        let cols: Vec<Vec<Cyclo>> = lifts
            .iter()
            .map(|x| quotient_to_theta(&x.mul(&w)).entries)
            .collect();
        if cols.iter().all(|c| c.iter().all(Cyclo::is_zero)) {
            continue;
        }
        let matrix = CycloMatrix::from_fn(ring, dim, dim, |i, j| cols[j][i].clone());
        let shift = shift.iter().any(|&x| x != 0).then_some(shift);
        return Ok(Averaged { matrix, shift });
    }
    Err(Error::DegenerateTransversal(format!(
        "every right translate of the averaged lift projects to zero for {h:?}"
    )))
}

/// Outcome of an Egorov check; `witness` is the first generator that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgorovReport {
    pub holds: bool,
    pub invertible: bool,
    pub witness: Option<HeisFin>,
}

/// Checks `M ρ(u) = ρ(h·u) M` for `u ∈ {exp(P_j), exp(Q_j), exp(E)}` and
/// that `M` has full rank.
pub fn egorov_check(
    ring: &Arc<CycloRing>,
    h: &SymplecticMatrix,
    m: &CycloMatrix,
) -> Result<EgorovReport> {
    let n = ring.level();
    let g = h.genus();
    let invertible = m.rank() == m.rows();
    for u in HeisFin::generators(n, g) {
        let lhs = m.mul(&schrodinger_matrix(ring, &u))?;
        let rhs = schrodinger_matrix(ring, &mcg_on_heis(h, &u)?).mul(m)?;
        if lhs != rhs {
            return Ok(EgorovReport {
                holds: false,
                invertible,
                witness: Some(u),
            });
        }
    }
    Ok(EgorovReport {
        holds: invertible,
        invertible,
        witness: None,
    })
}

/// Signature of `ω(x1,x2) + ω(x2,x3) + ω(x3,x1)` on `L1 ⊕ L2 ⊕ L3`.
pub fn maslov_index(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Result<i64> {
    let g = l1.genus();
    if l2.genus() != g || l3.genus() != g {
        return Err(Error::NotLagrangian("Lagrangians of different genus".into()));
    }
    let mut basis: Vec<(usize, &Vec<i64>)> = Vec::with_capacity(3 * g);
    for (slot, l) in [l1, l2, l3].into_iter().enumerate() {
        for v in l.basis() {
            basis.push((slot, v));
        }
    }
    // Twice the polarized form: for x in slot a and y in slot b the pairs
    // (a, b) ∈ {(0,1), (1,2), (2,0)} contribute ω(x, y), and the reversed
    // pairs contribute ω(y, x).
    let gram: Vec<Vec<i64>> = basis
        .iter()
        .map(|&(a, x)| {
            basis
                .iter()
                .map(|&(b, y)| {
                    if (a + 1) % 3 == b {
                        omega(x, y)
                    } else if (b + 1) % 3 == a {
                        omega(y, x)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    Ok(signature(&gram))
}

/// `λ` with `ρ(h')ρ(h) = λ ρ(h'h)` for the normalized torus transforms,
/// alongside `τ = τ(h'hL, h'L, L)` for the standard Lagrangian `L`.
#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub lambda: Cyclo,
    pub tau: i64,
    pub expected: Cyclo,
}

impl CocycleReport {
    pub fn matches(&self) -> bool {
        self.lambda == self.expected
    }
}

pub fn cocycle_scalar(
    ring: &Arc<CycloRing>,
    h: &SymplecticMatrix,
    h2: &SymplecticMatrix,
) -> Result<CocycleReport> {
    let prod = h2.compose(h);
    let lhs = rho_normalized(ring, h2)?.mul(&rho_normalized(ring, h)?)?;
    let rhs = rho_normalized(ring, &prod)?;
    let lambda = lhs.ratio_to(&rhs).ok_or_else(|| {
        Error::NotSymplectic("ρ(h')ρ(h) is not a scalar multiple of ρ(h'h)".into())
    })?;
    let l = Lagrangian::standard(1);
    let tau = maslov_index(&l.image(&prod), &l.image(h2), &l)?;
    Ok(CocycleReport {
        lambda,
        tau,
        expected: ring.zeta8_pow(-tau),
    })
}

/// The `N`-point DFT matrix `N^{-1/2} e^{-2πi jk/N}`.
pub fn dft_matrix(ring: &Arc<CycloRing>) -> CycloMatrix {
    let n = ring.level() as usize;
    CycloMatrix::from_fn(ring, n, n, |j, k| {
        ring.t_pow(-2 * (j * k) as i64)
    })
    .scale(&ring.level_pow_half(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(n: i64) -> Arc<CycloRing> {
        CycloRing::new(n).unwrap()
    }

    #[test]
    fn parse_words() {
        let w = MCGWord::parse("S T t", 1).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.matrix().unwrap(), SymplecticMatrix::s());
        let w = MCGWord::parse("+(1,0,0,1) -(0,1,0,0)", 2).unwrap();
        assert_eq!(w.letters[1].sign, -1);
        assert!(MCGWord::parse("S", 2).is_err());
        assert!(MCGWord::parse("Q", 1).is_err());
        assert!(MCGWord::parse("+(1,0", 1).is_err());
    }

    #[test]
    fn twist_about_b_is_diagonal() {
        for n in [2i64, 4, 6] {
            let r = ring(n);
            let m = twist_transform(&r, &[0, 1], 1);
            for mu in 0..n {
                for nu in 0..n {
                    let e = m.get(nu as usize, mu as usize);
                    if mu == nu {
                        assert_eq!(*e, &r.zeta8_pow(1) * &r.t_pow(-mu * mu));
                    } else {
                        assert!(e.is_zero());
                    }
                }
            }
        }
        let r = ring(2);
        let m = twist_transform(&r, &[0, 1], 1);
        assert_eq!(m.get(0, 0), &r.zeta8_pow(1));
        assert_eq!(m.get(1, 1), &r.zeta8_pow(-1));
    }

    #[test]
    fn twist_about_a_is_circulant() {
        let r = ring(4);
        let m = twist_transform(&r, &[1, 0], 1);
        for j in 0..4i64 {
            for mu in 0..4i64 {
                let row = ((mu + j) % 4) as usize;
                assert_eq!(*m.get(row, mu as usize), &r.t_pow(j * j) * &r.level_pow_half(-1));
            }
        }
        assert!(m.is_unitary());
    }

    #[test]
    fn empty_word() {
        let r = ring(4);
        let t = rho_word(&r, &MCGWord::empty(1)).unwrap();
        assert_eq!(t.matrix, CycloMatrix::identity(&r, 4));
        assert_eq!(t.framing, 0);
        let b = rho_word(&r, &MCGWord::parse("T", 1).unwrap()).unwrap();
        assert_eq!(b.matrix, twist_transform(&r, &[0, 1], 1));
        assert_eq!(b.framing, 1);
    }

    #[test]
    fn braid_and_modular_relations() {
        for n in [2i64, 4, 6] {
            let r = ring(n);
            let a = twist_transform(&r, &[1, 0], 1);
            let b = twist_transform(&r, &[0, 1], 1);
            let aba = a.mul(&b).unwrap().mul(&a).unwrap();
            let bab = b.mul(&a).unwrap().mul(&b).unwrap();
            assert_eq!(aba, bab);
            let ab = a.mul(&b).unwrap();
            let mut p = CycloMatrix::identity(&r, n as usize);
            for _ in 0..6 {
                p = p.mul(&ab).unwrap();
            }
            assert_eq!(p, CycloMatrix::identity(&r, n as usize));
        }
    }

    #[test]
    fn s_squared_and_fourth_power() {
        for n in [2i64, 4, 6] {
            let r = ring(n);
            let s = rho_word(&r, &MCGWord::parse("S", 1).unwrap()).unwrap().matrix;
            let s2 = s.mul(&s).unwrap();
            let flip = CycloMatrix::from_fn(&r, n as usize, n as usize, |i, j| {
                if (i + j) % n as usize == 0 { r.one() } else { r.zero() }
            });
            assert!(s2.ratio_to(&flip).is_some());
            assert!(s2.mul(&s2).unwrap().as_scalar().is_some());
        }
    }

    #[test]
    fn torus_words_reproduce_matrices() {
        for (a, b, c, d) in [(1, 0, 0, 1), (0, -1, 1, 0), (2, 1, 1, 1), (-1, 0, 0, -1), (1, 5, 0, 1), (3, -2, -4, 3), (-2, 1, -5, 2)] {
            let h = SymplecticMatrix::torus(a, b, c, d).unwrap();
            assert_eq!(torus_word(&h).unwrap().matrix().unwrap(), h);
        }
    }

    #[test]
    fn egorov_for_twists() {
        for n in [2i64, 4, 6] {
            let r = ring(n);
            for (c, s) in [([0, 1], 1), ([1, 0], 1), ([1, 1], -1), ([2, 1], 1)] {
                let m = twist_transform(&r, &c, s);
                let h = SymplecticMatrix::dehn_twist(&c, s).unwrap();
                assert!(egorov_check(&r, &h, &m).unwrap().holds, "N={n} c={c:?}");
            }
        }
    }

    #[test]
    fn wrong_sign_fails_egorov() {
        let r = ring(4);
        let m = twist_transform(&r, &[0, 1], -1);
        let rep = egorov_check(&r, &SymplecticMatrix::t(), &m).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.witness, Some(HeisFin::new(4, vec![1], vec![0], 0)));
        let id = CycloMatrix::identity(&r, 4);
        assert!(egorov_check(&r, &SymplecticMatrix::identity(1), &id).unwrap().holds);
    }

    #[test]
    fn averaging_examples() {
        let r = ring(4);
        let id = rho_averaging(&r, &SymplecticMatrix::identity(1)).unwrap();
        assert!(id.as_scalar().is_some());
        let s = rho_averaging(&r, &SymplecticMatrix::s()).unwrap();
        // M θ_μ = N^{-1} Σ_q t^{2μq} θ_{-q}
        for mu in 0..4i64 {
            for q in 0..4i64 {
                let row = (-q).rem_euclid(4) as usize;
                assert_eq!(*s.get(row, mu as usize), &r.t_pow(2 * mu * q) * &r.ratio(1, 4));
            }
        }
        let t = rho_averaging(&r, &SymplecticMatrix::t()).unwrap();
        assert!(t.ratio_to(&twist_transform(&r, &[0, 1], 1)).is_some());
    }

    #[test]
    fn averaging_needs_a_shift_sometimes() {
        let r = ring(2);
        let h = SymplecticMatrix::torus(1, 2, 0, 1).unwrap();
        let avg = rho_averaging_detail(&r, &h).unwrap();
        assert!(avg.shift.is_some());
        assert!(egorov_check(&r, &h, &avg.matrix).unwrap().holds);
    }

    #[test]
    fn s_map_is_the_dft() {
        for n in [2i64, 4, 6] {
            let r = ring(n);
            let m = rho_averaging(&r, &SymplecticMatrix::s()).unwrap();
            // Writing θ_{-q} as row -q turns e^{+2πiμq/N} into e^{-2πi μ·row/N}.
            let scaled = m.scale(&r.level_pow_half(1));
            let lam = scaled.ratio_to(&dft_matrix(&r)).unwrap();
            assert!((lam.to_complex().norm() - 1.0).abs() < 1e-12);
            assert!(lam.is_one());
        }
    }

    #[test]
    fn maslov_examples() {
        let l = Lagrangian::standard(1);
        let l2 = Lagrangian::new(vec![vec![1, 0]]).unwrap();
        let d = Lagrangian::new(vec![vec![1, 1]]).unwrap();
        assert_eq!(maslov_index(&l, &l, &l2).unwrap(), 0);
        let tau = maslov_index(&l2, &d, &l).unwrap();
        assert_eq!(tau.abs(), 1);
        assert_eq!(maslov_index(&d, &l2, &l).unwrap(), -tau);
    }

    #[test]
    fn cocycle_identity_cases() {
        let r = ring(4);
        let s = SymplecticMatrix::s();
        let id = SymplecticMatrix::identity(1);
        let rep = cocycle_scalar(&r, &s, &id).unwrap();
        assert!(rep.lambda.is_one());
        let rep = cocycle_scalar(&r, &s, &s).unwrap();
        assert!(rep.matches(), "λ = {}, τ = {}", rep.lambda, rep.tau);
    }

    #[test]
    fn wall_identity_for_framings() {
        let words = ["S", "T", "ST", "sTT", "TTs", "AbA", "SSS", "tSt"];
        let l = Lagrangian::standard(1);
        for w1 in words {
            for w2 in words {
                let a = MCGWord::parse(w1, 1).unwrap();
                let b = MCGWord::parse(w2, 1).unwrap();
                let (h, h2) = (a.matrix().unwrap(), b.matrix().unwrap());
                let prod = h2.compose(&h);
                let tau = maslov_index(&l, &l.image(&h2), &l.image(&prod)).unwrap();
                assert_eq!(b.then(&a).framing(), a.framing() + b.framing() + tau, "{w2}·{w1}");
            }
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = String> {
        proptest::collection::vec(prop_oneof![Just('S'), Just('T'), Just('s'), Just('t')], 0..=max)
            .prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn maslov_is_symplectic_invariant(w in arb_word(5), a in -3i64..4, b in -3i64..4) {
            let h = MCGWord::parse(&w, 1).unwrap().matrix().unwrap();
            let l1 = Lagrangian::standard(1);
            let l2 = Lagrangian::new(vec![vec![1, a]]).unwrap();
            let l3 = Lagrangian::new(vec![vec![b, 1]]).unwrap_or(Lagrangian::new(vec![vec![1, 0]]).unwrap());
            let before = maslov_index(&l1, &l2, &l3).unwrap();
            let after = maslov_index(&l1.image(&h), &l2.image(&h), &l3.image(&h)).unwrap();
            prop_assert_eq!(before, after);
            prop_assert_eq!(maslov_index(&l2, &l1, &l3).unwrap(), -before);
        }

        #[test]
        fn framing_mod_8_depends_only_on_matrix(w in arb_word(6)) {
            let word = MCGWord::parse(&w, 1).unwrap();
            let h = word.matrix().unwrap();
            let canon = torus_word(&h).unwrap();
            prop_assert_eq!((word.framing() - canon.framing()).rem_euclid(8), 0);
        }

        #[test]
        fn transforms_are_unitary_and_egorov(w in arb_word(4)) {
            let r = ring(4);
            let word = MCGWord::parse(&w, 1).unwrap();
            let t = rho_word(&r, &word).unwrap();
            prop_assert!(t.matrix.is_unitary());
            let h = word.matrix().unwrap();
            prop_assert!(egorov_check(&r, &h, &t.matrix).unwrap().holds);
        }
    }
}
