//! The commutative ring `Z_n` of hypercomplex n-numbers and its circulant
//! matrix representation.
//!
//! A [`HyperNumber`] is stored by its eigenbasis components `k_α`, so ring
//! multiplication is componentwise. The representation map sends it to the
//! circulant matrix `Σ_r c_r [e₁]^r` whose spectrum, in DFT order, is exactly
//! those components:
//!
//! ```text
//! λ_j = Σ_r c_r exp(2π i j r / n)        c_r = (1/n) Σ_j λ_j exp(−2π i j r / n)
//! ```
//!
//! `[e₁]` is the cyclic shift with ones at `(i, i+1 mod n)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::{Add, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::C64;

/// `exp(sign · 2π i · idx / n)` with the angle reduced mod `n` first.
fn root_of_unity(n: usize, idx: usize, sign: f64) -> C64 {
    let angle = sign * TAU * ((idx % n) as f64) / (n as f64);
    C64::new(angle.cos(), angle.sin())
}

/// Forward map `c ↦ λ`, `λ_j = Σ_r c_r ω^{jr}`.
fn dft(c: &[C64]) -> Vec<C64> {
    let n = c.len();
    (0..n).map(|j| (0..n).map(|r| c[r] * root_of_unity(n, j * r, 1.0)).sum()).collect()
}

/// Inverse map `λ ↦ c`, including the `1/n`.
fn idft(lambda: &[C64]) -> Vec<C64> {
    let n = lambda.len();
    let scale = 1.0 / n as f64;
    (0..n).map(|r| (0..n).map(|j| lambda[j] * root_of_unity(n, j * r, -1.0)).sum::<C64>() * scale).collect()
}

/// Element of `Z_n`, held as its eigenbasis components `k_0 … k_{n−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperNumber {
    components: Vec<C64>,
}

impl HyperNumber {
    pub fn new(components: Vec<C64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidDimension("hypercomplex number needs n >= 1"));
        }
        Ok(Self { components })
    }

    /// Same as [`HyperNumber::new`]; the eigenvalues are the components.
    pub fn from_eigenvalues(lambda: Vec<C64>) -> Result<Self> {
        Self::new(lambda)
    }

    pub fn from_real(components: &[f64]) -> Result<Self> {
        Self::new(components.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::new(vec![C64::new(1.0, 0.0); n])
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![C64::zero(); n])
    }

    /// Complex scalar embedded as `z·1`.
    pub fn scalar(n: usize, z: C64) -> Result<Self> {
        Self::new(vec![z; n])
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn to_eigenvalues(&self) -> Vec<C64> {
        self.components.clone()
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    pub fn hyper_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a * b).collect() })
    }

    pub fn hyper_add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { components: self.components.iter().map(|k| k * s).collect() }
    }

    pub fn to_circulant(&self) -> CirculantMatrix {
        CirculantMatrix { first_row: idft(&self.components) }
    }

    pub fn from_circulant(c: &CirculantMatrix) -> Self {
        Self { components: c.eigenvalues() }
    }

    /// Largest componentwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_n(other)?;
        Ok(self.components.iter().zip(&other.components).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

impl Mul for &HyperNumber {
    type Output = HyperNumber;

    /// Panics on mismatched `n`; use [`HyperNumber::hyper_mul`] to get an error.
    fn mul(self, rhs: Self) -> HyperNumber {
        self.hyper_mul(rhs).expect("hypercomplex dimension mismatch")
    }
}

impl Add for &HyperNumber {
    type Output = HyperNumber;

    fn add(self, rhs: Self) -> HyperNumber {
        self.hyper_add(rhs).expect("hypercomplex dimension mismatch")
    }
}

/// Projector basis `π_α` of `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectorBasis {
    n: usize,
}

impl ProjectorBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("projector basis needs n >= 1"));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn projector(&self, alpha: usize) -> Result<HyperNumber> {
        if alpha >= self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: alpha });
        }
        let mut c = vec![C64::zero(); self.n];
        c[alpha] = C64::new(1.0, 0.0);
        HyperNumber::new(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = HyperNumber> + '_ {
        (0..self.n).map(move |a| self.projector(a).expect("index in range"))
    }
}

/// Circulant matrix given by its first row, `C = Σ_r c_r [e₁]^r`,
/// so `C[i][k] = c_{(k − i) mod n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    first_row: Vec<C64>,
}

impl CirculantMatrix {
    pub fn new(first_row: Vec<C64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::InvalidDimension("circulant matrix needs n >= 1"));
        }
        Ok(Self { first_row })
    }

    pub fn from_real(first_row: &[f64]) -> Result<Self> {
        Self::new(first_row.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn identity(n: usize) -> Result<Self> {
        shift_power(n, 0)
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[C64] {
        &self.first_row
    }

    pub fn get(&self, i: usize, k: usize) -> C64 {
        let n = self.n();
        self.first_row[(k + n - i % n) % n]
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<C64> {
        let n = self.n();
        let mut m = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                m.push(self.get(i, k));
            }
        }
        m
    }

    /// Spectrum in DFT order, without any `1/n` prefactor.
    pub fn eigenvalues(&self) -> Vec<C64> {
        dft(&self.first_row)
    }

    /// Product of circulants (cyclic convolution of first rows).
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        let n = self.n();
        if other.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: other.n() });
        }
        let row = (0..n).map(|t| (0..n).map(|r| self.first_row[r] * other.first_row[(t + n - r) % n]).sum()).collect();
        Ok(Self { first_row: row })
    }

    /// Matrix–vector product `C x`.
    pub fn apply(&self, x: &[C64]) -> Result<Vec<C64>> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        Ok((0..n).map(|i| (0..n).map(|k| self.get(i, k) * x[k]).sum()).collect())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.n();
        (0..n).all(|r| (self.first_row[r] - self.first_row[(n - r) % n].conj()).norm() <= tol)
    }
}

/// `[e₁]^p` for any integer `p` (taken mod `n`).
pub fn shift_power(n: usize, p: i64) -> Result<CirculantMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension("shift power needs n >= 1"));
    }
    let mut row = vec![C64::zero(); n];
    row[p.rem_euclid(n as i64) as usize] = C64::new(1.0, 0.0);
    CirculantMatrix::new(row)
}

pub fn eigenvalues(c: &CirculantMatrix) -> Vec<C64> {
    c.eigenvalues()
}

pub fn hyper_mul(a: &HyperNumber, b: &HyperNumber) -> Result<HyperNumber> {
    a.hyper_mul(b)
}

pub fn to_circulant(z: &HyperNumber) -> CirculantMatrix {
    z.to_circulant()
}

pub fn from_eigenvalues(lambda: Vec<C64>) -> Result<HyperNumber> {
    HyperNumber::from_eigenvalues(lambda)
}

/// Expansion coefficients of a per-chain vector in the circulant
/// eigenvectors `v_q = (ω^{qj})_j`: `x = Σ_q X_q v_q`, so a circulant with
/// spectrum `λ` acts on `X` as `X_q ↦ λ_q X_q`.
pub fn chain_modes(x: &[C64]) -> Vec<C64> {
    idft(x)
}

/// Inverse of [`chain_modes`]: `x_j = Σ_q X_q ω^{qj}`.
pub fn chain_modes_inverse(modes: &[C64]) -> Vec<C64> {
    dft(modes)
}
