//! The `U(1)` Reshetikhin-Turaev invariant from surgery data.
//!
//! Coloring each component of a framed link by
//! `Ω = N^{-1/2} Σ_{j=0}^{N-1} (j parallel copies)` and evaluating in the
//! skein module of S³ gives the generalized Gauss sum
//! `Ω(L) = N^{-n/2} Σ_{c ∈ Z_N^n} t^{cᵀBc}`. The invariant of the surgered
//! manifold is `Z(M) = e^{-πi·sign(B)/4} Ω(L)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclo, CycloRing};
use crate::link::FramedLinkData;

/// Number of colorings `c ∈ Z_N^n` with `cᵀBc ≡ r (mod 2N)`, for each `r`.
pub fn coloring_counts(b: &[Vec<i64>], level: u32) -> Vec<u64> {
    let n = b.len();
    let m = 2 * level as i64;
    let bm: Vec<Vec<i64>> = b
        .iter()
        .map(|r| r.iter().map(|v| v.rem_euclid(m)).collect())
        .collect();
    if n == 0 {
        let mut counts = vec![0u64; m as usize];
        counts[0] = 1;
        return counts;
    }
    (0..level as i64)
        .into_par_iter()
        .map(|c0| {
            let mut counts = vec![0u64; m as usize];
            let mut c = vec![0i64; n];
            c[0] = c0;
            let start = (bm[0][0] * c0 * c0).rem_euclid(m);
            accumulate(&bm, level as i64, m, 1, &mut c, start, &mut counts);
            counts
        })
        .reduce(
            || vec![0u64; m as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn accumulate(
    b: &[Vec<i64>],
    level: i64,
    m: i64,
    depth: usize,
    c: &mut [i64],
    partial: i64,
    counts: &mut [u64],
) {
    if depth == b.len() {
        counts[partial as usize] += 1;
        return;
    }
    let lin: i64 = (0..depth).map(|j| 2 * b[depth][j] * c[j]).sum::<i64>() % m;
    let diag = b[depth][depth];
    for ci in 0..level {
        c[depth] = ci;
        let v = (partial + diag * ci * ci % m + ci * lin) % m;
        accumulate(b, level, m, depth + 1, c, v, counts);
    }
    c[depth] = 0;
}

/// `Ω(L)` by summing over all `N^n` colorings.
pub fn omega_eval(d: &FramedLinkData, ring: &Arc<CycloRing>) -> Cyclo {
    let counts = coloring_counts(&d.b, ring.level());
    let mut s = ring.zero();
    for (r, &k) in counts.iter().enumerate() {
        if k != 0 {
            s += &ring.t_pow(r as i64).scale_by(&BigRational::from_integer(BigInt::from(k)));
        }
    }
    &s * &ring.level_pow_half(-(d.n as i32))
}

/// `Ω(L)` as the product over the connected pieces of the linking graph.
pub fn omega_eval_fast(d: &FramedLinkData, ring: &Arc<CycloRing>) -> Cyclo {
    let mut out = ring.one();
    for comp in components(d) {
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| d.b[i][j]).collect())
            .collect();
        let piece = FramedLinkData {
            n: comp.len(),
            b: sub,
        };
        out = &out * &omega_eval(&piece, ring);
    }
    out
}

fn components(d: &FramedLinkData) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d.n];
    let mut out = Vec::new();
    for s in 0..d.n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..d.n {
                if !seen[j] && d.b[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Signature of a symmetric integer matrix, by exact congruence
/// diagonalization over `Q`.
pub fn signature(b: &[Vec<i64>]) -> i64 {
    let n = b.len();
    let mut a: Vec<Vec<BigRational>> = b
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // All remaining diagonal entries vanish: e_k ↦ e_k + e_j gives
                // a new diagonal entry 2·a_kj.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
            for rr in k..n {
                let v = &f * &a[rr][k];
                a[rr][r] -= v;
            }
        }
    }
    sig
}

/// `Z(M) = ζ_8^{-sign(B)} Ω(L)`.
pub fn z_invariant(d: &FramedLinkData, ring: &Arc<CycloRing>) -> Cyclo {
    &ring.zeta8_pow(-signature(&d.b)) * &omega_eval_fast(d, ring)
}

/// A surgery link together with the signature of a bounded 4-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryPresentation {
    pub link: FramedLinkData,
    pub framing: i64,
}

impl SurgeryPresentation {
    pub fn new(link: FramedLinkData) -> Self {
        let framing = signature(&link.b);
        SurgeryPresentation { link, framing }
    }
}

/// The invariant of the framed manifold `(M, m)`, which is `Ω(L)` itself.
pub fn framed_invariant(sp: &SurgeryPresentation, ring: &Arc<CycloRing>) -> Cyclo {
    omega_eval_fast(&sp.link, ring)
}

pub fn mirror(d: &FramedLinkData) -> FramedLinkData {
    d.mirror()
}

pub fn connected_sum(a: &FramedLinkData, b: &FramedLinkData) -> FramedLinkData {
    a.connected_sum(b)
}
