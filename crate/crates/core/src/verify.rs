//! Self-checks grouped into suites, as run by the `verify` subcommand.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{normalized_gauss_sum, CycloRing};
use crate::dft::{
    cocycle_scalar, dft_matrix, egorov_check, rho_averaging, rho_word, twist_transform, MCGWord,
};
use crate::error::{Error, Result};
use crate::heis::{commutant_dim, operator_basis_rank, schrodinger_matrix, weyl_op, HeisFin};
use crate::link::{parse_link, random_kirby_walk, FramedLinkData};
use crate::matrix::CycloMatrix;
use crate::rt::z_invariant;
use crate::symplectic::SymplecticMatrix;
use crate::theta_num::{bargmann_project, toeplitz_closed_form, weyl_from_toeplitz, ThetaGrid, ThetaParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gauss,
    Rep,
    Analytic,
    Egorov,
    Cocycle,
    Kirby,
    Controls,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Gauss,
        Suite::Rep,
        Suite::Analytic,
        Suite::Egorov,
        Suite::Cocycle,
        Suite::Kirby,
        Suite::Controls,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gauss => "gauss",
            Suite::Rep => "rep",
            Suite::Analytic => "analytic",
            Suite::Egorov => "egorov",
            Suite::Cocycle => "cocycle",
            Suite::Kirby => "kirby",
            Suite::Controls => "controls",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Levels used at genus 1.
    pub levels: Vec<u32>,
    /// `Some(2)` adds genus-2 checks at level 2 where a suite supports them.
    pub genus: Option<usize>,
    pub seed: u64,
    /// Replace the twist transform of `b` by its inverse (negative control).
    pub wrong_sign: bool,
    pub grid: usize,
    pub truncation: i64,
    pub cocycle_pairs: usize,
    pub kirby_walks: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            levels: vec![2, 4, 6],
            genus: None,
            seed: 0,
            wrong_sign: false,
            grid: crate::theta_num::DEFAULT_GRID,
            truncation: crate::theta_num::DEFAULT_TRUNCATION,
            cocycle_pairs: 50,
            kirby_walks: 100,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Gauss => gauss()?,
        Suite::Rep => rep(cfg)?,
        Suite::Analytic => analytic(cfg)?,
        Suite::Egorov => egorov(cfg)?,
        Suite::Cocycle => cocycle(cfg)?,
        Suite::Kirby => kirby(cfg)?,
        Suite::Controls => controls(cfg)?,
    };
    Ok(SuiteReport { suite, checks })
}

fn gauss() -> Result<Vec<Check>> {
    (2..=20)
        .step_by(2)
        .map(|n| {
            let r = CycloRing::new(n)?;
            let s = normalized_gauss_sum(&r);
            Ok(Check::new(format!("gauss sum N={n}"), s == r.zeta8_pow(1), s.to_string()))
        })
        .collect()
}

fn random_heis(rng: &mut ChaCha8Rng, n: u32, g: usize) -> HeisFin {
    let mut v = || (0..g).map(|_| rng.gen_range(0..n as i64)).collect::<Vec<_>>();
    let (p, q) = (v(), v());
    HeisFin::new(n, p, q, rng.gen_range(0..2 * n as i64))
}

/// Homomorphism, unitarity, operator-basis rank and irreducibility.
pub fn rep_checks(ring: &Arc<CycloRing>, g: usize, samples: usize, seed: u64) -> Vec<Check> {
    let n = ring.level();
    let tag = format!("(g={g}, N={n})");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hom = (0..samples).all(|_| {
        let (u, v) = (random_heis(&mut rng, n, g), random_heis(&mut rng, n, g));
        let lhs = schrodinger_matrix(ring, &u).mul(&schrodinger_matrix(ring, &v));
        lhs.ok().as_ref() == Some(&schrodinger_matrix(ring, &u.mul(&v)))
    });
    let unitary = HeisFin::generators(n, g)
        .iter()
        .all(|u| schrodinger_matrix(ring, u).is_unitary());
    let dim = (n as usize).pow(g as u32);
    let rank = operator_basis_rank(ring, g);
    let comm = commutant_dim(ring, g);
    vec![
        Check::new(format!("homomorphism {tag}"), hom, format!("{samples} random pairs")),
        Check::new(format!("unitary generators {tag}"), unitary, ""),
        Check::new(format!("operator basis rank {tag}"), rank == dim * dim, format!("rank {rank}")),
        Check::new(format!("commutant dimension {tag}"), comm == 1, format!("dim {comm}")),
    ]
}

fn rep(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &n in &cfg.levels {
        out.extend(rep_checks(&CycloRing::new(n as i64)?, 1, 20, cfg.seed));
    }
    if cfg.genus == Some(2) {
        out.extend(rep_checks(&CycloRing::new(2)?, 2, 20, cfg.seed));
    }
    Ok(out)
}

/// Largest errors seen by [`analytic_errors`].
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct AnalyticErrors {
    /// Relative error of nonzero Toeplitz elements (absolute for zeros).
    pub toeplitz: f64,
    /// `max |⟨θ_μ, θ_ν⟩ − δ_μν|`.
    pub gram: f64,
    /// `max |e^{πR/(2N)} T_{p,q} − Op(p,q)|`.
    pub weyl: f64,
}

/// Toeplitz, Gram and Weyl-bridge errors for `(p, q) ∈ {−2..2}²`.
pub fn analytic_errors(params: &ThetaParams) -> Result<AnalyticErrors> {
    let grid = ThetaGrid::new(params)?;
    let n = params.level() as i64;
    let ring = CycloRing::new(n)?;
    let mut e = AnalyticErrors::default();
    for row in grid.gram()?.iter().enumerate() {
        for (j, v) in row.1.iter().enumerate() {
            let target = if row.0 == j { 1.0 } else { 0.0 };
            e.gram = e.gram.max((v - target).norm());
        }
    }
    for p in -2..=2 {
        for q in -2..=2 {
            let quad = grid.toeplitz_matrix(p, q)?;
            for (nu, row) in quad.iter().enumerate() {
                for (mu, v) in row.iter().enumerate() {
                    let closed = toeplitz_closed_form(params, &[p], &[q], &[mu as i64], &[nu as i64]);
                    let d = (closed - v).norm();
                    let rel = if closed.norm() > 0.0 { d / closed.norm() } else { d };
                    e.toeplitz = e.toeplitz.max(rel);
                }
            }
            let bridged = weyl_from_toeplitz(&grid, p, q)?;
            let exact = weyl_op(&ring, &[p], &[q]).to_complex();
            for (a, b) in bridged.iter().flatten().zip(exact.iter().flatten()) {
                e.weyl = e.weyl.max((a - b).norm());
            }
        }
    }
    Ok(e)
}

fn analytic(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [2u32, 4] {
        for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.5, 1.0)] {
            let params = ThetaParams::torus(n, tau)?
                .with_grid(cfg.grid)
                .with_truncation(cfg.truncation);
            let tag = format!("(N={n}, tau={tau})");
            match analytic_errors(&params) {
                Ok(e) => {
                    out.push(Check::new(format!("toeplitz {tag}"), e.toeplitz < 1e-6, format!("{:.2e}", e.toeplitz)));
                    out.push(Check::new(format!("gram {tag}"), e.gram < 1e-6, format!("{:.2e}", e.gram)));
                    out.push(Check::new(format!("weyl bridge {tag}"), e.weyl < 1e-8, format!("{:.2e}", e.weyl)));
                }
                Err(err @ Error::Quadrature { .. }) => {
                    out.push(Check::new(format!("quadrature {tag}"), false, err.to_string()));
                }
                Err(err) => return Err(err),
            }
        }
    }
    let params = ThetaParams::torus(2, Complex64::new(0.0, 1.0))?.with_grid(cfg.grid);
    for mu in 0..2 {
        let b = bargmann_project(&params, mu)?;
        out.push(Check::new(
            format!("bargmann mu={mu}"),
            b.off_mass < 1e-5,
            format!("off-mass {:.2e}", b.off_mass),
        ));
    }
    Ok(out)
}

fn egorov_line(ring: &Arc<CycloRing>, name: String, h: &SymplecticMatrix, m: &CycloMatrix) -> Result<Check> {
    let rep = egorov_check(ring, h, m)?;
    let detail = match (&rep.witness, rep.invertible) {
        (Some(u), _) => format!("fails at (p={:?}, q={:?}, k={})", u.p, u.q, u.k),
        (None, false) => "transform is singular".into(),
        (None, true) => String::new(),
    };
    Ok(Check::new(name, rep.holds, detail))
}

/// Curve classes used for genus-2 checks, as `(p1, p2, q1, q2)`.
pub const GENUS2_CURVES: [[i64; 4]; 6] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, -1, 0, 0],
    [0, 0, 1, 1],
];

fn egorov(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let torus_curves: [[i64; 2]; 4] = [[1, 0], [0, 1], [1, 1], [1, -1]];
    for &n in &cfg.levels {
        let ring = CycloRing::new(n as i64)?;
        for c in torus_curves {
            for eps in [1, -1] {
                let h = SymplecticMatrix::dehn_twist(&c, eps)?;
                let sign = if cfg.wrong_sign && c == [0, 1] { -eps } else { eps };
                let m = twist_transform(&ring, &c, sign);
                out.push(egorov_line(&ring, format!("twist {c:?}^{eps} N={n}"), &h, &m)?);
            }
        }
        for word in ["S", "T", "S T T s", "A b A"] {
            let w = MCGWord::parse(word, 1)?;
            let h = w.matrix()?;
            out.push(egorov_line(&ring, format!("word {word:?} N={n}"), &h, &rho_word(&ring, &w)?.matrix)?);
            out.push(egorov_line(&ring, format!("averaging {word:?} N={n}"), &h, &rho_averaging(&ring, &h)?)?);
        }
    }
    if cfg.genus == Some(2) {
        let ring = CycloRing::new(2)?;
        for c in GENUS2_CURVES {
            let h = SymplecticMatrix::dehn_twist(&c, 1)?;
            out.push(egorov_line(&ring, format!("g=2 twist {c:?}"), &h, &twist_transform(&ring, &c, 1))?);
            out.push(egorov_line(&ring, format!("g=2 averaging {c:?}"), &h, &rho_averaging(&ring, &h)?)?);
        }
        let w = MCGWord::parse("+(1,0,0,0) +(0,0,1,0) -(1,-1,0,0) +(0,0,1,1)", 2)?;
        let h = w.matrix()?;
        out.push(egorov_line(&ring, "g=2 averaging word".into(), &h, &rho_averaging(&ring, &h)?)?);
    }
    Ok(out)
}

/// A random word of length `1..=max_len` over `S`, `T`, `s`, `t`.
pub fn random_torus_word(rng: &mut impl Rng, max_len: usize) -> String {
    const LETTERS: [&str; 4] = ["S", "T", "s", "t"];
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| LETTERS[rng.gen_range(0..4)])
        .collect::<Vec<_>>()
        .join(" ")
}

fn cocycle(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &n in &cfg.levels {
        let ring = CycloRing::new(n as i64)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ n as u64);
        let mut bad = None;
        for _ in 0..cfg.cocycle_pairs {
            let (w1, w2) = (random_torus_word(&mut rng, 6), random_torus_word(&mut rng, 6));
            let h = MCGWord::parse(&w1, 1)?.matrix()?;
            let h2 = MCGWord::parse(&w2, 1)?.matrix()?;
            let rep = cocycle_scalar(&ring, &h, &h2)?;
            if !rep.matches() {
                bad = Some(format!("h={w1:?}, h'={w2:?}: lambda={}, tau={}", rep.lambda, rep.tau));
                break;
            }
        }
        out.push(Check::new(
            format!("cocycle N={n}"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} pairs", cfg.cocycle_pairs)),
        ));
        let s = SymplecticMatrix::s();
        let rep = cocycle_scalar(&ring, &s, &s)?;
        out.push(Check::new(format!("cocycle S,S N={n}"), rep.matches(), format!("tau={}", rep.tau)));
        let m = rho_averaging(&ring, &s)?.scale(&ring.level_pow_half(1));
        out.push(Check::new(format!("S is the DFT N={n}"), m == dft_matrix(&ring), ""));
    }
    Ok(out)
}

/// A symmetric matrix with `n ≤ max_n` rows and entries in `[-bound, bound]`.
pub fn random_linking(rng: &mut impl Rng, max_n: usize, bound: i64) -> FramedLinkData {
    let n = rng.gen_range(0..=max_n);
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            b[i][j] = v;
            b[j][i] = v;
        }
    }
    FramedLinkData { n, b }
}

fn kirby(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &n in &cfg.levels {
        let ring = CycloRing::new(n as i64)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(n as u64));
        let mut bad = None;
        for _ in 0..cfg.kirby_walks {
            let d = random_linking(&mut rng, 4, 3);
            let w = random_kirby_walk(&d, 10, rng.gen());
            if z_invariant(&w, &ring) != z_invariant(&d, &ring) {
                bad = Some(format!("{:?} -> {:?}", d.b, w.b));
                break;
            }
            let mirror = d.mirror();
            if z_invariant(&mirror, &ring) != z_invariant(&d, &ring).conj() {
                bad = Some(format!("mirror {:?}", d.b));
                break;
            }
        }
        out.push(Check::new(
            format!("kirby and mirror N={n}"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} walks", cfg.kirby_walks)),
        ));
    }
    Ok(out)
}

fn controls(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let ring = CycloRing::new(cfg.levels.first().copied().unwrap_or(2) as i64)?;
    let t = SymplecticMatrix::t();
    let wrong = egorov_check(&ring, &t, &twist_transform(&ring, &[0, 1], -1))?;
    let witness_p = wrong
        .witness
        .as_ref()
        .is_some_and(|u| u.p == [1] && u.q == [0] && u.k == 0);
    let odd = matches!(parse_link("X 0 1 +"), Err(Error::Parity(..)));
    let zero = z_invariant(&FramedLinkData::unknot(0), &ring);
    let empty = z_invariant(&FramedLinkData::empty(), &ring);
    Ok(vec![
        Check::new("wrong-sign twist fails at exp(P)", !wrong.holds && witness_p, format!("{:?}", wrong.witness)),
        Check::new("odd crossing count rejected", odd, ""),
        Check::new("[[0]] and empty differ", zero != empty, format!("{zero} vs {empty}")),
    ])
}
