//! Exact arithmetic in `Q(ζ_L)[N^{1/2}]` for `L = lcm(8, 2N)`.
//!
//! Every invariant computed by this crate is a number of the form
//! `(Σ c_k ζ_L^k) · N^{m/2}` with rational `c_k`. The cyclotomic part is
//! kept reduced modulo `Φ_L` in the power basis, so two values are equal
//! exactly when their reduced coefficient vectors agree. Odd powers of
//! `N^{1/2}` are eliminated on demand by the quadratic Gauss sum
//! `N^{1/2} = ζ_8^{-1} Σ_{j=0}^{N-1} ζ_{2N}^{j²}`, which keeps equality
//! decidable without a separate real-quadratic extension.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ring `Q(ζ_L)` together with the level `N` it was built for.
#[derive(Debug)]
pub struct CycloRing {
    level: u32,
    order: u32,
    phi: Vec<i64>,
    /// `powers[k]` is `ζ_L^k` reduced mod `Φ_L`, for `0 <= k < L`.
    powers: Vec<Vec<i64>>,
    sqrt_level: Vec<BigRational>,
}

impl CycloRing {
    pub fn new(level: i64) -> Result<Arc<Self>> {
        if level < 2 || level % 2 != 0 || level > 1 << 20 {
            return Err(Error::InvalidLevel(level));
        }
        let level = level as u32;
        let order = 8u32.lcm(&(2 * level));
        let phi = cyclotomic_polynomial(order as usize);
        let d = phi.len() - 1;

        // x^k mod Φ_L for k < L, by repeated multiplication with x.
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            let top = cur[d - 1];
            let mut next = vec![0i64; d];
            next[1..d].copy_from_slice(&cur[..d - 1]);
            if top != 0 {
                for i in 0..d {
                    next[i] -= top * phi[i];
                }
            }
            cur = next;
        }

        let mut ring = CycloRing {
            level,
            order,
            phi,
            powers,
            sqrt_level: Vec::new(),
        };
        // N^{1/2} = ζ_8^{-1} Σ_j t^{j²}, with t = ζ_{2N}.
        let mut acc = vec![BigRational::zero(); d];
        let t_step = ring.order / (2 * level);
        let z8_inv = ring.order - ring.order / 8;
        for j in 0..level as u64 {
            let e = ((j * j) % (2 * level as u64)) as u32 * t_step + z8_inv;
            let row = &ring.powers[(e % ring.order) as usize];
            for (a, &r) in acc.iter_mut().zip(row) {
                if r != 0 {
                    *a += BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        ring.sqrt_level = acc;
        Ok(Arc::new(ring))
    }

    /// The level `N`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// The order `L` of the root of unity `ζ_L`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree `φ(L)` of the field.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Integer coefficients of `Φ_L`, lowest degree first.
    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.phi
    }

    pub fn zero(self: &Arc<Self>) -> Cyclo {
        Cyclo {
            ring: Arc::clone(self),
            coeffs: vec![BigRational::zero(); self.degree()],
            scale: 0,
        }
    }

    pub fn one(self: &Arc<Self>) -> Cyclo {
        self.integer(1)
    }

    pub fn integer(self: &Arc<Self>, n: i64) -> Cyclo {
        self.rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(self: &Arc<Self>, num: i64, den: i64) -> Cyclo {
        self.rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(self: &Arc<Self>, q: BigRational) -> Cyclo {
        let mut x = self.zero();
        x.coeffs[0] = q;
        x
    }

    /// `ζ_L^k`, periodic in `k` modulo `L`.
    pub fn zeta(self: &Arc<Self>, k: i64) -> Cyclo {
        let e = k.rem_euclid(self.order as i64) as usize;
        Cyclo {
            ring: Arc::clone(self),
            coeffs: self.powers[e]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            scale: 0,
        }
    }

    /// `t^k` with `t = e^{iπ/N} = ζ_{2N}`.
    pub fn t_pow(self: &Arc<Self>, k: i64) -> Cyclo {
        let step = (self.order / (2 * self.level)) as i64;
        self.zeta(k.rem_euclid(2 * self.level as i64) * step)
    }

    /// `ζ_8^k = e^{iπk/4}`.
    pub fn zeta8_pow(self: &Arc<Self>, k: i64) -> Cyclo {
        let step = (self.order / 8) as i64;
        self.zeta(k.rem_euclid(8) * step)
    }

    /// `N^{m/2}` kept symbolic.
    pub fn level_pow_half(self: &Arc<Self>, m: i32) -> Cyclo {
        let mut x = self.one();
        x.scale = m;
        x
    }

    /// `ζ_L^k` for `k` reduced into `[0, L)`, as a borrowed integer row.
    fn power_row(&self, k: usize) -> &[i64] {
        &self.powers[k % self.order as usize]
    }

    fn same(&self, other: &CycloRing) -> bool {
        self.level == other.level
    }
}

impl PartialEq for CycloRing {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}

impl Eq for CycloRing {}

/// `Φ_n` by recursive division: `Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d`.
fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for j in 0..=dd {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An exact value `(Σ_k c_k ζ_L^k) · N^{scale/2}`.
#[derive(Clone)]
pub struct Cyclo {
    ring: Arc<CycloRing>,
    coeffs: Vec<BigRational>,
    scale: i32,
}

pub type ScaledCyclotomic = Cyclo;

impl Cyclo {
    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        let n = self.normalize();
        n.coeffs[0].is_one() && n.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The same value with `scale = 0`: odd powers of `N^{1/2}` are
    /// replaced by the Gauss-sum expression for `N^{1/2}`.
    pub fn normalize(&self) -> Cyclo {
        if self.scale == 0 {
            return self.clone();
        }
        let half = self.scale.div_euclid(2);
        let odd = self.scale.rem_euclid(2) == 1;
        let factor = level_power(self.ring.level, half);
        let mut coeffs: Vec<BigRational> = self.coeffs.iter().map(|c| c * &factor).collect();
        if odd {
            coeffs = self.ring.mul_coeffs(&coeffs, &self.ring.sqrt_level);
        }
        Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs,
            scale: 0,
        }
    }

    /// The same value with `scale ∈ {0, 1}` or `scale = 0`, whichever has
    /// fewer nonzero coefficients.
    pub fn simplified(&self) -> Cyclo {
        let half = self.scale.div_euclid(2);
        let f = level_power(self.ring.level, half);
        let folded = Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| c * &f).collect(),
            scale: self.scale.rem_euclid(2),
        };
        if folded.scale == 0 {
            return folded;
        }
        let flat = folded.normalize();
        let count = |x: &Cyclo| x.coeffs.iter().filter(|c| !c.is_zero()).count();
        if count(&flat) <= count(&folded) {
            flat
        } else {
            folded
        }
    }

    fn check_ring(&self, other: &Cyclo) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.level, other.ring.level))
        }
    }

    pub fn checked_add(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check_ring(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs,
            scale: a.scale,
        })
    }

    pub fn checked_mul(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        Ok(Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs: self.ring.mul_coeffs(&self.coeffs, &other.coeffs),
            scale: self.scale + other.scale,
        })
    }

    /// Brings two values to a common scale (same parity: the smaller one;
    /// otherwise both to zero).
    fn aligned(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        if self.scale == other.scale {
            return (self.clone(), other.clone());
        }
        if (self.scale - other.scale) % 2 == 0 {
            let lo = self.scale.min(other.scale);
            let lift = |x: &Cyclo| {
                let f = level_power(x.ring.level, (x.scale - lo) / 2);
                Cyclo {
                    ring: Arc::clone(&x.ring),
                    coeffs: x.coeffs.iter().map(|c| c * &f).collect(),
                    scale: lo,
                }
            };
            (lift(self), lift(other))
        } else {
            (self.normalize(), other.normalize())
        }
    }

    /// Complex conjugation, `ζ_L^k ↦ ζ_L^{L-k}`.
    pub fn conj(&self) -> Cyclo {
        let l = self.ring.order as usize;
        let d = self.ring.degree();
        let mut out = vec![BigRational::zero(); d];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = self.ring.power_row((l - k) % l);
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs: out,
            scale: self.scale,
        }
    }

    pub fn scale_by(&self, q: &BigRational) -> Cyclo {
        Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            scale: self.scale,
        }
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<BigRational> = self
            .ring
            .phi
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a = trim(self.coeffs.clone());
        let inv = poly_inverse_mod(&a, &phi).ok_or(Error::DivisionByZero)?;
        let mut coeffs = inv;
        coeffs.resize(self.ring.degree(), BigRational::zero());
        Ok(Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs,
            scale: -self.scale,
        })
    }

    pub fn checked_div(&self, other: &Cyclo) -> Result<Cyclo> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Cyclo {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// If the value is `ζ_L^k` for some `k`, returns that `k`.
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        let n = self.normalize();
        (0..self.ring.order).find(|&k| {
            let row = self.ring.power_row(k as usize);
            n.coeffs
                .iter()
                .zip(row)
                .all(|(c, &r)| *c == BigRational::from_integer(BigInt::from(r)))
        })
    }

    /// Complex embedding with `ζ_L = e^{2πi/L}`.
    pub fn to_complex(&self) -> Complex64 {
        let l = self.ring.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / l;
            re += cf * ang.cos();
            im += cf * ang.sin();
        }
        let s = (self.ring.level as f64).powf(self.scale as f64 / 2.0);
        Complex64::new(re * s, im * s)
    }

    /// A bound on `|to_complex() - exact|` from the rounding of each term.
    pub fn error_bound(&self) -> f64 {
        let mag: f64 = self.coeffs.iter().map(|c| rational_to_f64(c).abs()).sum();
        let s = (self.ring.level as f64).powf(self.scale as f64 / 2.0);
        8.0 * f64::EPSILON * (mag + 1.0) * s.max(1.0) * self.coeffs.len() as f64
    }

    /// `|self - z| < tol` in the complex embedding.
    pub fn approx_eq(&self, z: Complex64, tol: f64) -> bool {
        (self.to_complex() - z).norm() < tol
    }

    pub fn to_json_repr(&self) -> CycloJson {
        CycloJson {
            level: self.ring.level,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [JsonInt::from_big(c.numer()), JsonInt::from_big(c.denom())])
                .collect(),
            scale: self.scale,
        }
    }

    pub fn from_json_repr(repr: &CycloJson, ring: &Arc<CycloRing>) -> Result<Cyclo> {
        if repr.level != ring.level {
            return Err(Error::RingMismatch(repr.level, ring.level));
        }
        let mut out = ring.zero();
        for (k, [num, den]) in repr.coeffs.iter().enumerate() {
            let num = num.to_big()?;
            let den = den.to_big()?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let c = BigRational::new(num, den);
            if c.is_zero() {
                continue;
            }
            out += &ring.zeta(k as i64).scale_by(&c);
        }
        out.scale = repr.scale;
        Ok(out)
    }
}

impl CycloRing {
    fn mul_coeffs(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree();
        let mut full = vec![BigRational::zero(); 2 * d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                full[i + j] += x * y;
            }
        }
        let mut out: Vec<BigRational> = full[..d].to_vec();
        for (k, c) in full.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(self.power_row(k)) {
                if r != 0 {
                    *o += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        out
    }
}

fn level_power(level: u32, e: i32) -> BigRational {
    let base = BigInt::from(level);
    let p = num_traits::pow(base, e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn rational_to_f64(c: &BigRational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => c.to_f64().unwrap_or(f64::NAN),
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                r[i + j] -= t;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    (q, trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// `a^{-1} mod m` over `Q[x]`, if `gcd(a, m) = 1`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = trim(poly_sub(&s0, &poly_mul(&q, &s1)));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    let r0 = trim(r0);
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let c = r0[0].clone();
    let (_, rem) = poly_divmod(&s0, m);
    Some(rem.into_iter().map(|x| x / &c).collect())
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same(&other.ring) {
            return false;
        }
        if self.scale == other.scale {
            return self.coeffs == other.coeffs;
        }
        (self - other).is_zero()
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let this = self.simplified();
        let l = this.ring.order;
        let terms: Vec<String> = this
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                _ if c.is_one() => format!("z{l}^{k}"),
                _ if (-c).is_one() => format!("-z{l}^{k}"),
                _ => format!("({c})z{l}^{k}"),
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        match (this.scale, terms.len()) {
            (0, _) => write!(f, "{body}"),
            (_, 1) if body == "1" => write!(f, "sqrt(N)"),
            (_, 1) if body == "-1" => write!(f, "-sqrt(N)"),
            (_, 1) => write!(f, "{body}*sqrt(N)"),
            _ => write!(f, "({body})*sqrt(N)"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:expr) => {
        impl $tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                let f: fn(&Cyclo, &Cyclo) -> Result<Cyclo> = $imp;
                f(self, rhs).expect("cyclotomic operands from different rings")
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.checked_add(b));
forward_binop!(Sub, sub, |a, b| a.checked_add(&-b));
forward_binop!(Mul, mul, |a, b| a.checked_mul(b));

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            scale: self.scale,
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        if self.scale == rhs.scale && self.ring.same(&rhs.ring) {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        *self += &-rhs;
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, rhs: &Cyclo) {
        *self = &*self * rhs;
    }
}

/// Integer that serializes as a JSON number when it fits in `i64`, and as a
/// decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(x.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("not an integer: {s:?}"),
            }),
        }
    }
}

/// Wire form `{"N": int, "coeffs": [[num, den], ...], "scale": int}`;
/// entry `k` of `coeffs` is the coefficient of `ζ_L^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloJson {
    #[serde(rename = "N")]
    pub level: u32,
    pub coeffs: Vec<[JsonInt; 2]>,
    pub scale: i32,
}

impl CycloJson {
    /// Builds a fresh ring for this value's level and decodes into it.
    pub fn decode(&self) -> Result<Cyclo> {
        let ring = CycloRing::new(self.level as i64)?;
        Cyclo::from_json_repr(self, &ring)
    }
}

impl Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.simplified().to_json_repr().serialize(s)
    }
}

/// Sum of `N^{-1/2} Σ_j ζ_{2N}^{j²}`; equal to `ζ_8` for every even `N`.
pub fn normalized_gauss_sum(ring: &Arc<CycloRing>) -> Cyclo {
    let n = ring.level() as i64;
    let mut s = ring.zero();
    for j in 0..n {
        s += &ring.t_pow(j * j);
    }
    &s * &ring.level_pow_half(-1)
}
