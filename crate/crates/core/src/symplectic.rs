//! Integer symplectic matrices and integral Lagrangian subspaces.
//!
//! Vectors are written `(p, q)` with `p, q ∈ Z^g`; the form is
//! `ω((p,q),(p',q')) = p·q' − q·p'`. A matrix acts on column vectors,
//! so `h = (A B; C D)` sends `(p, q)` to `(Ap + Bq, Cp + Dq)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ω((p,q),(p',q'))`; each argument is a `2g`-vector `(p, q)`.
pub fn omega(x: &[i64], y: &[i64]) -> i64 {
    let g = x.len() / 2;
    (0..g).map(|j| x[j] * y[g + j] - x[g + j] * y[j]).sum()
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    genus: usize,
    m: Vec<Vec<i64>>,
}

impl SymplecticMatrix {
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self> {
        let n = m.len();
        if n == 0 || n % 2 != 0 || m.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected a 2g x 2g matrix, got {n} rows")));
        }
        let h = SymplecticMatrix { genus: n / 2, m };
        h.validate()?;
        Ok(h)
    }

    /// 2x2 convenience constructor `(a b; c d)`.
    pub fn torus(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(vec![vec![a, b], vec![c, d]])
    }

    pub fn identity(genus: usize) -> Self {
        let n = 2 * genus;
        let m = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        SymplecticMatrix { genus, m }
    }

    /// `S = (0 −1; 1 0)`.
    pub fn s() -> Self {
        SymplecticMatrix {
            genus: 1,
            m: vec![vec![0, -1], vec![1, 0]],
        }
    }

    /// `T = (1 0; 1 1)`, the positive twist about `b`.
    pub fn t() -> Self {
        SymplecticMatrix {
            genus: 1,
            m: vec![vec![1, 0], vec![1, 1]],
        }
    }

    /// The Dehn twist `x ↦ x + ε·ω(x, c)·c`.
    pub fn dehn_twist(c: &[i64], eps: i64) -> Result<Self> {
        let n = c.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::Shape(format!("curve class of odd length {n}")));
        }
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let mut e = vec![0i64; n];
            e[j] = 1;
            let w = eps * omega(&e, c);
            for i in 0..n {
                m[i][j] = e[i] + w * c[i];
            }
        }
        Ok(SymplecticMatrix { genus: n / 2, m })
    }

    fn validate(&self) -> Result<()> {
        let n = 2 * self.genus;
        for i in 0..n {
            for j in 0..n {
                let ci = self.column(i);
                let cj = self.column(j);
                let mut ei = vec![0i64; n];
                let mut ej = vec![0i64; n];
                ei[i] = 1;
                ej[j] = 1;
                if omega(&ci, &cj) != omega(&ei, &ej) {
                    return Err(Error::NotSymplectic(format!(
                        "ω(h e_{i}, h e_{j}) = {} but ω(e_{i}, e_{j}) = {}",
                        omega(&ci, &cj),
                        omega(&ei, &ej)
                    )));
                }
            }
        }
        let det = integer_det(&self.m);
        if det != 1 {
            return Err(Error::NotSymplectic(format!("determinant {det}")));
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.m.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.m
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        let n = 2 * self.genus;
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.m[i][k] * rhs.m[k][j]).sum())
                    .collect()
            })
            .collect();
        SymplecticMatrix { genus: self.genus, m }
    }

    /// `h^{-1} = J^{-1} hᵀ J`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let g = self.genus;
        let j = |i: usize, k: usize| -> i64 {
            if i < g && k == i + g {
                1
            } else if i >= g && k + g == i {
                -1
            } else {
                0
            }
        };
        let n = 2 * g;
        let m = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let mut s = 0;
                        for a in 0..n {
                            for b in 0..n {
                                // J^{-1} = -J
                                s += -j(r, a) * self.m[b][a] * j(b, c);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        SymplecticMatrix { genus: g, m }
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn integer_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Rank over `Q` of the given integer vectors.
pub fn integer_rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            if rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                for j in 0..cols {
                    rows[r][j] = rows[r][j] * a - rows[rank][j] * b;
                }
                let g = rows[r].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    rows[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An integral Lagrangian subspace, given by `g` basis columns in `Z^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lagrangian {
    genus: usize,
    basis: Vec<Vec<i64>>,
}

impl Lagrangian {
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self> {
        let g = basis.len();
        if g == 0 || basis.iter().any(|v| v.len() != 2 * g) {
            return Err(Error::NotLagrangian(format!(
                "need g vectors of length 2g, got {} vectors",
                g
            )));
        }
        for i in 0..g {
            for j in i + 1..g {
                if omega(&basis[i], &basis[j]) != 0 {
                    return Err(Error::NotLagrangian(format!(
                        "basis vectors {i} and {j} pair to {}",
                        omega(&basis[i], &basis[j])
                    )));
                }
            }
        }
        if integer_rank(&basis) != g {
            return Err(Error::NotLagrangian("basis vectors are dependent".into()));
        }
        Ok(Lagrangian { genus: g, basis })
    }

    /// The span of the `b`-classes, i.e. the `q`-coordinate axes.
    pub fn standard(genus: usize) -> Self {
        let basis = (0..genus)
            .map(|j| {
                let mut v = vec![0i64; 2 * genus];
                v[genus + j] = 1;
                v
            })
            .collect();
        Lagrangian { genus, basis }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn image(&self, h: &SymplecticMatrix) -> Lagrangian {
        Lagrangian {
            genus: self.genus,
            basis: self.basis.iter().map(|v| h.apply(v)).collect(),
        }
    }
}
