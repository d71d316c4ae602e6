//! Finite complex matrices and Hamiltonian families sampled on a momentum grid.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Shorthand for a complex scalar.
pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// A square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(ComplexMatrix(m))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Real matrix given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| c64(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(n, n))
    }

    /// The 1x1 matrix `[z]`.
    pub fn scalar(z: C64) -> Self {
        ComplexMatrix(DMatrix::from_element(1, 1, z))
    }

    /// Pauli matrix `sigma_i`, with `sigma_0` the identity.
    pub fn pauli(i: usize) -> Self {
        let (o, z) = (c64(1.0, 0.0), c64(0.0, 0.0));
        let data = match i {
            0 => [o, z, z, o],
            1 => [z, o, o, z],
            2 => [z, c64(0.0, -1.0), c64(0.0, 1.0), z],
            3 => [o, z, z, -o],
            _ => panic!("Pauli index out of range: {i}"),
        };
        ComplexMatrix(DMatrix::from_row_slice(2, 2, &data))
    }

    /// `sigma_a (x) tau_b`, the first factor acting on the outer index.
    pub fn pauli2(a: usize, b: usize) -> Self {
        Self::pauli(a).kron(&Self::pauli(b))
    }

    /// Tensor product of Pauli matrices named by `0`, `x`, `y`, `z`, leftmost
    /// factor outermost: `"0y"` is `sigma_0 (x) sigma_y`.
    pub fn pauli_string(s: &str) -> Result<Self> {
        let mut out = Self::identity(1);
        for ch in s.chars() {
            let i = match ch {
                '0' => 0,
                'x' => 1,
                'y' => 2,
                'z' => 3,
                other => return Err(Error::Parse(format!("not a Pauli label: {other:?}"))),
            };
            out = out.kron(&Self::pauli(i));
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix(self.0.transpose())
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    /// `M`, `M*`, `M^T` or `M^dag` according to the pair `(phi, kappa)`.
    pub fn select(&self, phi: i8, kappa: i8) -> Self {
        match (phi, kappa) {
            (1, 1) => self.clone(),
            (-1, 1) => self.conj(),
            (-1, -1) => self.transpose(),
            (1, -1) => self.adjoint(),
            _ => panic!("invalid conjugation flags ({phi}, {kappa})"),
        }
    }

    /// `M` for `phi = 1`, `M*` for `phi = -1`.
    pub fn conj_if(&self, phi: i8) -> Self {
        if phi == 1 {
            self.clone()
        } else {
            self.conj()
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        ComplexMatrix(self.0.kronecker(&other.0))
    }

    pub fn scale(&self, z: C64) -> Self {
        ComplexMatrix(self.0.map(|w| w * z))
    }

    pub fn scale_re(&self, x: f64) -> Self {
        self.scale(c64(x, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0.iter().zip(other.0.iter()).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn unitary_residual(&self) -> f64 {
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.dim()))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest imaginary part in modulus.
    pub fn imag_residual(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    /// Sub-matrix on the given rows and columns.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<C64> {
        DMatrix::from_fn(rows.len(), cols.len(), |i, j| self.0[(rows[i], cols[j])])
    }

    /// Hermitian part `(M + M^dag)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_re(0.5)
    }

    /// Anti-Hermitian part `(M - M^dag)/2`.
    pub fn antihermitian_part(&self) -> Self {
        (self - &self.adjoint()).scale_re(0.5)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

/// A Hamiltonian sampled on the uniform grid `k_j = 2 pi i_j / N` in `d`
/// dimensions. Samples are stored row-major in the grid index.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianFamily {
    dim: usize,
    grid: usize,
    size: usize,
    samples: Vec<ComplexMatrix>,
}

impl HamiltonianFamily {
    /// A single matrix, read as a 0-dimensional family.
    pub fn zero_dim(h: ComplexMatrix) -> Self {
        let size = h.dim();
        HamiltonianFamily { dim: 0, grid: 1, size, samples: vec![h] }
    }

    pub fn from_samples(dim: usize, grid: usize, samples: Vec<ComplexMatrix>) -> Result<Self> {
        let grid = if dim == 0 { 1 } else { grid };
        if grid == 0 {
            return Err(Error::InvalidGrid("grid size must be positive".into()));
        }
        let expected = grid
            .checked_pow(dim as u32)
            .ok_or_else(|| Error::InvalidGrid("grid too large".into()))?;
        if samples.len() != expected {
            return Err(Error::SizeMismatch { expected, found: samples.len() });
        }
        let size = samples[0].dim();
        for s in &samples {
            if s.dim() != size {
                return Err(Error::SizeMismatch { expected: size, found: s.dim() });
            }
        }
        Ok(HamiltonianFamily { dim, grid, size, samples })
    }

    /// Samples `f(k)` at every grid momentum.
    pub fn from_fn<F>(dim: usize, grid: usize, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> ComplexMatrix,
    {
        let grid = if dim == 0 { 1 } else { grid };
        if grid == 0 {
            return Err(Error::InvalidGrid("grid size must be positive".into()));
        }
        let n = grid.pow(dim as u32);
        let samples = (0..n)
            .map(|flat| f(&momentum_of(flat, dim, grid)))
            .collect::<Vec<_>>();
        Self::from_samples(dim, grid, samples)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid_size(&self) -> usize {
        self.grid
    }

    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[ComplexMatrix] {
        &self.samples
    }

    pub fn sample(&self, flat: usize) -> &ComplexMatrix {
        &self.samples[flat]
    }

    pub fn coords(&self, flat: usize) -> Vec<usize> {
        coords_of(flat, self.dim, self.grid)
    }

    pub fn flat_index(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &i| acc * self.grid + (i % self.grid))
    }

    pub fn momentum(&self, flat: usize) -> Vec<f64> {
        momentum_of(flat, self.dim, self.grid)
    }

    /// Flat index of `-k`.
    pub fn negated_index(&self, flat: usize) -> usize {
        let c: Vec<usize> = self.coords(flat).iter().map(|&i| (self.grid - i) % self.grid).collect();
        self.flat_index(&c)
    }

    /// Flat index of `k + step * e_axis`, periodic.
    pub fn shifted_index(&self, flat: usize, axis: usize, step: isize) -> usize {
        let mut c = self.coords(flat);
        let g = self.grid as isize;
        c[axis] = (((c[axis] as isize + step) % g + g) % g) as usize;
        self.flat_index(&c)
    }

    /// Applies `f` sample by sample.
    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(&ComplexMatrix) -> ComplexMatrix,
    {
        let samples: Vec<ComplexMatrix> = self.samples.iter().map(f).collect();
        let size = samples[0].dim();
        HamiltonianFamily { dim: self.dim, grid: self.grid, size, samples }
    }

    pub fn try_map<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
    {
        let samples = self.samples.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::from_samples(self.dim, self.grid, samples)
    }

    pub fn scale(&self, z: C64) -> Self {
        self.map(|h| h.scale(z))
    }

    /// Sample-wise combination of two families on the same grid.
    pub fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
    {
        if self.dim != other.dim || self.grid != other.grid {
            return Err(Error::InvalidGrid("families live on different grids".into()));
        }
        if self.size != other.size {
            return Err(Error::SizeMismatch { expected: self.size, found: other.size });
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| f(a, b)).collect();
        Self::from_samples(self.dim, self.grid, samples)
    }
}

fn coords_of(flat: usize, dim: usize, grid: usize) -> Vec<usize> {
    let mut c = vec![0; dim];
    let mut r = flat;
    for j in (0..dim).rev() {
        c[j] = r % grid;
        r /= grid;
    }
    c
}

fn momentum_of(flat: usize, dim: usize, grid: usize) -> Vec<f64> {
    coords_of(flat, dim, grid)
        .into_iter()
        .map(|i| 2.0 * PI * i as f64 / grid as f64)
        .collect()
}
