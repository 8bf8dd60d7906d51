//! Dense matrices over the cyclotomic field.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::cyclo::{Cyclo, CycloRing};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct CycloMatrix {
    ring: Arc<CycloRing>,
    rows: usize,
    cols: usize,
    data: Vec<Cyclo>,
}

impl CycloMatrix {
    pub fn zeros(ring: &Arc<CycloRing>, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            ring: Arc::clone(ring),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<CycloRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_fn(
        ring: &Arc<CycloRing>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Cyclo,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CycloMatrix {
            ring: Arc::clone(ring),
            rows,
            cols,
            data,
        }
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclo) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyclo] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclo::is_zero)
    }

    pub fn mul(&self, rhs: &CycloMatrix) -> Result<CycloMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b)?;
                    out.data[i * rhs.cols + j] += &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &CycloMatrix) -> Result<CycloMatrix> {
        self.same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(CycloMatrix { data, ..self.clone() })
    }

    pub fn sub(&self, rhs: &CycloMatrix) -> Result<CycloMatrix> {
        self.add(&rhs.scale(&self.ring.integer(-1)))
    }

    pub fn scale(&self, c: &Cyclo) -> CycloMatrix {
        CycloMatrix {
            data: self.data.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    pub fn conj_transpose(&self) -> CycloMatrix {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_unitary(&self) -> bool {
        self.rows == self.cols
            && self
                .mul(&self.conj_transpose())
                .is_ok_and(|p| p == Self::identity(&self.ring, self.rows))
    }

    /// Returns `λ` if `self = λ·I`.
    pub fn as_scalar(&self) -> Option<Cyclo> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let lam = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { *e == lam } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(lam)
    }

    /// Returns `λ` with `self = λ·other`, if such a scalar exists and
    /// `other` is nonzero.
    pub fn ratio_to(&self, other: &CycloMatrix) -> Option<Cyclo> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let pivot = other.data.iter().position(|x| !x.is_zero())?;
        let lam = self.data[pivot].checked_div(&other.data[pivot]).ok()?;
        let all = self
            .data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| *a == &lam * b);
        all.then_some(lam)
    }

    /// Rank over `Q(ζ_L)` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.swap(rank * cols + j, p * cols + j);
            }
            let inv = m[rank * cols + c].inv().expect("nonzero pivot");
            for j in c..cols {
                m[rank * cols + j] = &m[rank * cols + j] * &inv;
            }
            for r in 0..rows {
                if r == rank || m[r * cols + c].is_zero() {
                    continue;
                }
                let f = m[r * cols + c].clone();
                for j in c..cols {
                    let t = &f * &m[rank * cols + j];
                    if !t.is_zero() {
                        m[r * cols + j] -= &t;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Cyclo> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn apply(&self, v: &[Cyclo]) -> Result<Vec<Cyclo>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_complex()).collect())
            .collect()
    }

    fn same_shape(&self, rhs: &CycloMatrix) -> Result<()> {
        if self.rows == rhs.rows && self.cols == rhs.cols {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )))
        }
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycloMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
