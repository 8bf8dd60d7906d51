//! Floating-point theta functions and quadrature on the Jacobian.
//!
//! With `e(t) = exp(2πiNt)` and `n_μ = n + μ/N`,
//!
//! ```text
//! θ_μ(z) = Σ_{n ∈ Z^g} e(½ n_μᵀ Π n_μ + n_μᵀ z),   z = x + Π y.
//! ```
//!
//! The series is truncated to `|n|_∞ ≤ R`. Terms decay like
//! `exp(-πN λ_min(Y) |n|²)`, so `R = 10` is far past double precision for
//! `Y ≳ 0.1`. Inner products are taken against the weight
//! `(2N)^{g/2} det(Y)^{1/2} e^{-2πN yᵀYy}` on the unit square; the
//! integrand is periodic, so the rectangle rule converges geometrically.
//! Quadrature is implemented for `g = 1` only.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cyclo::CycloRing;
use crate::error::{Error, Result};
use crate::heis::{theta_dim, theta_index, theta_multi_index};
use crate::matrix::CycloMatrix;

pub const DEFAULT_TRUNCATION: i64 = 10;
pub const DEFAULT_GRID: usize = 200;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct ThetaParams {
    level: u32,
    x: Vec<Vec<f64>>,
    y: Vec<Vec<f64>>,
    y_inv: Vec<Vec<f64>>,
    pub truncation: i64,
    pub grid: usize,
    pub tolerance: f64,
}

impl ThetaParams {
    pub fn new(level: u32, period: &[Vec<Complex64>]) -> Result<Self> {
        let g = period.len();
        if level < 2 || level % 2 != 0 {
            return Err(Error::InvalidLevel(level as i64));
        }
        if g == 0 || period.iter().any(|r| r.len() != g) {
            return Err(Error::Shape("period matrix must be square".into()));
        }
        for i in 0..g {
            for j in 0..g {
                if (period[i][j] - period[j][i]).norm() > 1e-14 {
                    return Err(Error::Shape("period matrix must be symmetric".into()));
                }
            }
        }
        let x: Vec<Vec<f64>> = period.iter().map(|r| r.iter().map(|c| c.re).collect()).collect();
        let y: Vec<Vec<f64>> = period.iter().map(|r| r.iter().map(|c| c.im).collect()).collect();
        if !is_positive_definite(&y) {
            return Err(Error::NotPositiveDefinite);
        }
        let y_inv = invert(&y).ok_or(Error::NotPositiveDefinite)?;
        Ok(ThetaParams {
            level,
            x,
            y,
            y_inv,
            truncation: DEFAULT_TRUNCATION,
            grid: DEFAULT_GRID,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    /// Genus one with `Π = tau`.
    pub fn torus(level: u32, tau: Complex64) -> Result<Self> {
        Self::new(level, &[vec![tau]])
    }

    pub fn with_truncation(mut self, r: i64) -> Self {
        self.truncation = r.max(1);
        self
    }

    pub fn with_grid(mut self, m: usize) -> Self {
        self.grid = m;
        self
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn genus(&self) -> usize {
        self.x.len()
    }

    pub fn period(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.x[i][j], self.y[i][j])
    }

    fn require_torus(&self) -> Result<()> {
        if self.genus() == 1 {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "quadrature is implemented for genus 1, got genus {}",
                self.genus()
            )))
        }
    }
}

fn is_positive_definite(m: &[Vec<f64>]) -> bool {
    // Cholesky
    let n = m.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = m[i][i] - s;
                if d <= 0.0 {
                    return false;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (m[i][j] - s) / l[j][j];
            }
        }
    }
    true
}

fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| f64::from(u8::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        let d = a[c][c];
        a[c].iter_mut().for_each(|v| *v /= d);
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let pivot_row = a[c].clone();
                a[r].iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= f * pv);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn lattice_points(g: usize, r: i64) -> Vec<Vec<i64>> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(g as u32))
        .map(|mut idx| {
            let mut v = vec![0i64; g];
            for slot in v.iter_mut() {
                *slot = (idx % side) as i64 - r;
                idx /= side;
            }
            v
        })
        .collect()
}

fn theta_term(params: &ThetaParams, nmu: &[f64], z: &[Complex64]) -> Complex64 {
    let g = params.genus();
    let n = params.level as f64;
    let mut quad = Complex64::new(0.0, 0.0);
    for i in 0..g {
        for j in 0..g {
            quad += params.period(i, j) * nmu[i] * nmu[j];
        }
    }
    let lin: Complex64 = (0..g).map(|i| z[i] * nmu[i]).sum();
    let t = quad * 0.5 + lin;
    (Complex64::new(0.0, 2.0 * PI * n) * t).exp()
}

/// Truncated theta series `θ_μ(z)`.
pub fn theta_eval(params: &ThetaParams, mu: &[i64], z: &[Complex64]) -> Complex64 {
    let n = params.level as f64;
    lattice_points(params.genus(), params.truncation)
        .iter()
        .map(|v| {
            let nmu: Vec<f64> = v.iter().zip(mu).map(|(&a, &m)| a as f64 + m as f64 / n).collect();
            theta_term(params, &nmu, z)
        })
        .sum()
}

/// The same truncated sum, accumulated from the outermost shell inwards.
pub fn theta_eval_reference(params: &ThetaParams, mu: &[i64], z: &[Complex64]) -> Complex64 {
    let n = params.level as f64;
    let mut pts = lattice_points(params.genus(), params.truncation);
    pts.sort_by_key(|v| std::cmp::Reverse(v.iter().map(|x| x.abs()).max().unwrap_or(0)));
    let mut acc = Complex64::new(0.0, 0.0);
    for v in pts {
        let nmu: Vec<f64> = v.iter().zip(mu).map(|(&a, &m)| a as f64 + m as f64 / n).collect();
        acc += theta_term(params, &nmu, z);
    }
    acc
}

/// `θ_μ(x + Π y)` for `g = 1`.
pub fn theta_xy(params: &ThetaParams, mu: i64, x: f64, y: f64) -> Complex64 {
    let z = Complex64::new(x, 0.0) + params.period(0, 0) * y;
    theta_eval(params, &[mu], &[z])
}

/// `R = qᵀY⁻¹q − 2qᵀY⁻¹Xp + pᵀ(XY⁻¹X + Y)p`, with `Δ_Π E_{p,q} = −2πR E_{p,q}`.
pub fn laplace_r(params: &ThetaParams, p: &[i64], q: &[i64]) -> f64 {
    let pf: Vec<f64> = p.iter().map(|&v| v as f64).collect();
    let qf: Vec<f64> = q.iter().map(|&v| v as f64).collect();
    let mat_vec = |m: &[Vec<f64>], v: &[f64]| -> Vec<f64> {
        m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    };
    let dotf = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let yinv_q = mat_vec(&params.y_inv, &qf);
    let xp = mat_vec(&params.x, &pf);
    let yinv_xp = mat_vec(&params.y_inv, &xp);
    let yp = mat_vec(&params.y, &pf);
    dotf(&qf, &yinv_q) - 2.0 * dotf(&qf, &yinv_xp) + dotf(&xp, &yinv_xp) + dotf(&pf, &yp)
}

/// Samples of every `θ_μ` on an `m × m` grid of the unit square, for `g = 1`.
#[derive(Clone, Debug)]
pub struct ThetaGrid {
    params: ThetaParams,
    m: usize,
    /// `samples[μ][j·m + i] = θ_μ(x_i + Π y_j)`, `x_i = i/m`, `y_j = j/m`.
    samples: Vec<Vec<Complex64>>,
    weights: Vec<f64>,
}

impl ThetaGrid {
    pub fn new(params: &ThetaParams) -> Result<Self> {
        params.require_torus()?;
        let m = params.grid;
        if m < 4 || m % 2 != 0 {
            return Err(Error::Config(format!("grid size must be even and at least 4, got {m}")));
        }
        let n = params.level;
        let samples = (0..n as i64)
            .map(|mu| {
                (0..m * m)
                    .into_par_iter()
                    .map(|idx| {
                        let (i, j) = (idx % m, idx / m);
                        theta_xy(params, mu, i as f64 / m as f64, j as f64 / m as f64)
                    })
                    .collect()
            })
            .collect();
        Ok(ThetaGrid {
            params: params.clone(),
            m,
            samples,
            weights: Self::weights_for(params),
        })
    }

    pub fn params(&self) -> &ThetaParams {
        &self.params
    }

    pub fn theta(&self, mu: i64) -> &[Complex64] {
        &self.samples[mu.rem_euclid(self.params.level as i64) as usize]
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let m = self.m;
        (0..m * m).map(move |idx| ((idx % m) as f64 / m as f64, (idx / m) as f64 / m as f64))
    }

    /// Samples `f(x, y)` on the grid.
    pub fn sample(&self, f: impl Fn(f64, f64) -> Complex64 + Sync) -> Vec<Complex64> {
        let m = self.m;
        (0..m * m)
            .into_par_iter()
            .map(|idx| f((idx % m) as f64 / m as f64, (idx / m) as f64 / m as f64))
            .collect()
    }

    fn rule(&self, f: &[Complex64], g: &[Complex64], stride: usize) -> Complex64 {
        let m = self.m;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (0..m).step_by(stride) {
            let mut row = Complex64::new(0.0, 0.0);
            for i in (0..m).step_by(stride) {
                let k = j * m + i;
                row += f[k] * g[k].conj();
            }
            acc += row * self.weights[j];
        }
        let pts = (m / stride) as f64;
        acc / (pts * pts)
    }

    /// `⟨f, g⟩` from samples, with the half-grid rule as an error estimate.
    pub fn inner_product(&self, f: &[Complex64], g: &[Complex64]) -> Result<Complex64> {
        let fine = self.rule(f, g, 1);
        let coarse = self.rule(f, g, 2);
        let estimate = (fine - coarse).norm();
        let scale = fine.norm().max(1.0);
        if estimate > self.params.tolerance * scale {
            return Err(Error::Quadrature {
                estimate,
                tolerance: self.params.tolerance * scale,
            });
        }
        Ok(fine)
    }

    /// `⟨E_{p,q} θ_μ, θ_ν⟩` by quadrature, `E_{p,q} = e^{2πi(px + qy)}`.
    pub fn toeplitz(&self, p: i64, q: i64, mu: i64, nu: i64) -> Result<Complex64> {
        let e = self.sample(|x, y| {
            Complex64::from_polar(1.0, 2.0 * PI * (p as f64 * x + q as f64 * y))
        });
        let f: Vec<Complex64> = e.iter().zip(self.theta(mu)).map(|(a, b)| a * b).collect();
        self.inner_product(&f, self.theta(nu))
    }

    /// Matrix of `⟨θ_μ, θ_ν⟩`.
    pub fn gram(&self) -> Result<Vec<Vec<Complex64>>> {
        let n = self.params.level as i64;
        (0..n)
            .map(|nu| (0..n).map(|mu| self.inner_product(self.theta(mu), self.theta(nu))).collect())
            .collect()
    }

    /// Toeplitz matrix of `E_{p,q}` (row `ν`, column `μ`).
    pub fn toeplitz_matrix(&self, p: i64, q: i64) -> Result<Vec<Vec<Complex64>>> {
        let n = self.params.level as i64;
        let e = self.sample(|x, y| {
            Complex64::from_polar(1.0, 2.0 * PI * (p as f64 * x + q as f64 * y))
        });
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n as usize]; n as usize];
        for mu in 0..n {
            let f: Vec<Complex64> = e.iter().zip(self.theta(mu)).map(|(a, b)| a * b).collect();
            for nu in 0..n {
                out[nu as usize][mu as usize] = self.inner_product(&f, self.theta(nu))?;
            }
        }
        Ok(out)
    }
}

/// `⟨f, g⟩` for functions on the torus, sampled on the default grid.
pub fn inner_product(
    params: &ThetaParams,
    f: impl Fn(f64, f64) -> Complex64 + Sync,
    g: impl Fn(f64, f64) -> Complex64 + Sync,
) -> Result<Complex64> {
    params.require_torus()?;
    let full = ThetaGrid {
        params: params.clone(),
        m: params.grid,
        samples: Vec::new(),
        weights: ThetaGrid::weights_for(params),
    };
    let fs = full.sample(f);
    let gs = full.sample(g);
    full.inner_product(&fs, &gs)
}

impl ThetaGrid {
    fn weights_for(params: &ThetaParams) -> Vec<f64> {
        let m = params.grid;
        let nf = params.level as f64;
        let y = params.y[0][0];
        let pref = (2.0 * nf).sqrt() * y.sqrt();
        (0..m)
            .map(|j| {
                let yy = j as f64 / m as f64;
                pref * (-2.0 * PI * nf * y * yy * yy).exp()
            })
            .collect()
    }
}

/// `e^{−2πi q·μ/N − πi q·p/N − πR/(2N)}` when `ν ≡ μ + p`, else `0`.
pub fn toeplitz_closed_form(params: &ThetaParams, p: &[i64], q: &[i64], mu: &[i64], nu: &[i64]) -> Complex64 {
    let n = params.level as i64;
    let hit = mu
        .iter()
        .zip(p)
        .zip(nu)
        .all(|((&m, &pp), &v)| (m + pp - v).rem_euclid(n) == 0);
    if !hit {
        return Complex64::new(0.0, 0.0);
    }
    let nf = n as f64;
    let qmu: i64 = q.iter().zip(mu).map(|(a, b)| a * b).sum();
    let qp: i64 = q.iter().zip(p).map(|(a, b)| a * b).sum();
    let r = laplace_r(params, p, q);
    let phase = -2.0 * PI * qmu as f64 / nf - PI * qp as f64 / nf;
    Complex64::from_polar((-PI * r / (2.0 * nf)).exp(), phase)
}

/// Closed form and quadrature value of a Toeplitz matrix element.
#[derive(Clone, Copy, Debug)]
pub struct ToeplitzElement {
    pub closed: Complex64,
    pub quadrature: Complex64,
}

impl ToeplitzElement {
    /// Relative error, falling back to absolute error when the closed form is zero.
    pub fn error(&self) -> f64 {
        let d = (self.closed - self.quadrature).norm();
        if self.closed.norm() > 0.0 {
            d / self.closed.norm()
        } else {
            d
        }
    }
}

pub fn toeplitz_element(params: &ThetaParams, p: i64, q: i64, mu: i64, nu: i64) -> Result<ToeplitzElement> {
    let grid = ThetaGrid::new(params)?;
    Ok(ToeplitzElement {
        closed: toeplitz_closed_form(params, &[p], &[q], &[mu], &[nu]),
        quadrature: grid.toeplitz(p, q, mu, nu)?,
    })
}

/// `e^{πR/(2N)}` times the quadrature Toeplitz matrix of `E_{p,q}`.
pub fn weyl_from_toeplitz(grid: &ThetaGrid, p: i64, q: i64) -> Result<Vec<Vec<Complex64>>> {
    let params = grid.params();
    let r = laplace_r(params, &[p], &[q]);
    let f = (PI * r / (2.0 * params.level as f64)).exp();
    Ok(grid
        .toeplitz_matrix(p, q)?
        .into_iter()
        .map(|row| row.into_iter().map(|v| v * f).collect())
        .collect())
}

/// Projection of `s_μ = δ(y − μ/N) e^{2πiNyx}` onto the theta basis.
#[derive(Clone, Debug)]
pub struct BargmannReport {
    pub coeffs: Vec<Complex64>,
    /// `(Σ_{ν≠μ} |c_ν|²)^{1/2} / |c_μ|`.
    pub off_mass: f64,
    /// `(2N)^{1/2} Y^{1/2} e^{−3πiXμ²/N − 5πYμ²/N}`.
    pub predicted: Complex64,
}

pub fn bargmann_project(params: &ThetaParams, mu: i64) -> Result<BargmannReport> {
    params.require_torus()?;
    let n = params.level as i64;
    let nf = n as f64;
    let m = params.grid;
    let (x0, y0) = (params.x[0][0], params.y[0][0]);
    let tau = params.period(0, 0);
    let mu_f = mu.rem_euclid(n) as f64;
    let pref = (2.0 * nf).sqrt() * y0.sqrt() * (-2.0 * PI * nf * y0 * mu_f * mu_f / (nf * nf)).exp();
    let integral = |nu: i64, stride: usize| -> Complex64 {
        let pts: Vec<usize> = (0..m).step_by(stride).collect();
        let s: Complex64 = pts
            .par_iter()
            .map(|&i| {
                let x = i as f64 / m as f64;
                let z = Complex64::new(x, 0.0) + tau * (mu_f / nf);
                Complex64::from_polar(1.0, 2.0 * PI * mu_f * x) * theta_eval(params, &[nu], &[z]).conj()
            })
            .sum();
        s / pts.len() as f64
    };
    let mut coeffs = Vec::with_capacity(n as usize);
    for nu in 0..n {
        let fine = integral(nu, 1);
        let coarse = integral(nu, 2);
        let estimate = (fine - coarse).norm();
        let tol = params.tolerance * fine.norm().max(1.0);
        if estimate > tol {
            return Err(Error::Quadrature { estimate, tolerance: tol });
        }
        coeffs.push(fine * pref);
    }
    let idx = mu.rem_euclid(n) as usize;
    let off: f64 = coeffs
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != idx)
        .map(|(_, c)| c.norm_sqr())
        .sum();
    let predicted = Complex64::from_polar(
        (2.0 * nf).sqrt() * y0.sqrt() * (-5.0 * PI * y0 * mu_f * mu_f / nf).exp(),
        -3.0 * PI * x0 * mu_f * mu_f / nf,
    );
    Ok(BargmannReport {
        off_mass: off.sqrt() / coeffs[idx].norm(),
        coeffs,
        predicted,
    })
}

/// Weyl quantization of `e^{2πi(p·x + q·y)}` in the real polarization:
/// `s_μ ↦ t^{p·q + 2q·μ} s_{μ+p}` (midpoint ordering).
pub fn real_polarization_matrix(ring: &Arc<CycloRing>, p: &[i64], q: &[i64]) -> CycloMatrix {
    let n = ring.level();
    let g = p.len();
    let dim = theta_dim(n, g);
    let pq: i64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
    let mut m = CycloMatrix::zeros(ring, dim, dim);
    for col in 0..dim {
        let mu = theta_multi_index(col, n, g);
        let qmu: i64 = q.iter().zip(&mu).map(|(a, b)| a * b).sum();
        let target: Vec<i64> = mu.iter().zip(p).map(|(a, b)| a + b).collect();
        m.set(theta_index(&target, n), col, ring.t_pow(pq + 2 * qmu));
    }
    m
}

/// The reflected real representation `(p, q, k) ↦ t^k R(q, p)`, a
/// homomorphism of the integer Heisenberg group.
pub fn reflected_real_rep(ring: &Arc<CycloRing>, p: &[i64], q: &[i64], k: i64) -> CycloMatrix {
    real_polarization_matrix(ring, q, p).scale(&ring.t_pow(k))
}
