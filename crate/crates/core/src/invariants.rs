//! Winding numbers, Chern numbers and zero-dimensional indices.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaps::check_tol;
use crate::hamiltonian::{c64, ComplexMatrix, HamiltonianFamily, C64};
use crate::linalg;

/// Above this distance from an integer a raw invariant is not trusted.
pub const QUANTIZATION_LIMIT: f64 = 0.05;

/// Largest phase advance of `det h` between neighbouring grid points that
/// still resolves the branch unambiguously.
const MAX_PHASE_STEP: f64 = 0.75 * PI;

/// Hermiticity threshold for inputs to the Hermitian indices.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    Winding,
    DetWinding,
    Chern,
    Signature,
    SignDet,
    Z2Pair,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantValue {
    pub kind: InvariantKind,
    pub value: i64,
    /// Second component, only for [`InvariantKind::Z2Pair`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<i64>,
    /// Distance of the raw sum from `value`.
    pub residual: f64,
}

impl InvariantValue {
    fn exact(kind: InvariantKind, value: i64) -> Self {
        InvariantValue { kind, value, second: None, residual: 0.0 }
    }

    pub fn pair(first: i64, second: i64) -> Self {
        InvariantValue { kind: InvariantKind::Z2Pair, value: first, second: Some(second), residual: 0.0 }
    }
}

fn quantize(kind: InvariantKind, raw: f64) -> Result<InvariantValue> {
    let value = raw.round();
    let residual = (raw - value).abs();
    if residual >= QUANTIZATION_LIMIT || !raw.is_finite() {
        return Err(Error::Unquantized { residual });
    }
    Ok(InvariantValue { kind, value: value as i64, second: None, residual })
}

fn require_dim(h: &HamiltonianFamily, d: usize, min_grid: usize) -> Result<()> {
    if h.dim() != d {
        return Err(Error::InvalidGrid(format!("expected a {d}-dimensional family, got d = {}", h.dim())));
    }
    if h.grid_size() < min_grid {
        return Err(Error::InvalidGrid(format!("need at least {min_grid} points per axis, got {}", h.grid_size())));
    }
    Ok(())
}

/// Winding of `det h(k)` around the origin, `(1/2 pi i) \oint tr h^-1 dh`.
///
/// Each step is the principal argument of `det h(k+1) / det h(k)`. Besides the
/// usual distance to the nearest integer, a single step rotating the phase by
/// more than `3 pi / 4` is reported as unquantized since its branch is unreliable.
pub fn winding_1d(h: &HamiltonianFamily, tol: f64) -> Result<InvariantValue> {
    check_tol(tol)?;
    require_dim(h, 1, 8)?;
    let margin = h
        .samples()
        .iter()
        .map(|s| linalg::min_singular_value(s.as_matrix()))
        .fold(f64::INFINITY, f64::min);
    if margin <= tol {
        return Err(Error::NotInvertible { margin });
    }
    winding_of_dets(h.samples().iter().map(|s| linalg::determinant(s.as_matrix())).collect())
}

fn winding_of_dets(dets: Vec<C64>) -> Result<InvariantValue> {
    let n = dets.len();
    let mut total = 0.0;
    let mut widest = 0.0f64;
    for j in 0..n {
        let step = (dets[(j + 1) % n] / dets[j]).arg();
        widest = widest.max(step.abs());
        total += step;
    }
    if widest > MAX_PHASE_STEP {
        return Err(Error::Unquantized { residual: widest / (2.0 * PI) });
    }
    quantize(InvariantKind::Winding, total / (2.0 * PI))
}

/// Spectral winding of `H_k - E_ref`.
pub fn det_winding_point_gap(h: &HamiltonianFamily, e_ref: C64, tol: f64) -> Result<InvariantValue> {
    check_tol(tol)?;
    require_dim(h, 1, 8)?;
    let shift = |m: &ComplexMatrix| m - &ComplexMatrix::identity(m.dim()).scale(e_ref);
    let margin = h
        .samples()
        .iter()
        .map(|s| linalg::min_singular_value(shift(s).as_matrix()))
        .fold(f64::INFINITY, f64::min);
    if margin <= tol {
        return Err(Error::ReferenceOnSpectrum { margin });
    }
    let mut v = winding_1d(&h.map(shift), tol)?;
    v.kind = InvariantKind::DetWinding;
    Ok(v)
}

fn hermitian_residual(h: &HamiltonianFamily) -> f64 {
    h.samples().iter().map(|s| s.hermitian_residual()).fold(0.0, f64::max)
}

/// Chern number of the bands below zero energy, by the lattice field-strength
/// construction with determinant links over the occupied frame.
///
/// The orientation is fixed so that `sin kx sx + sin ky sy + (1 - cos kx - cos ky) sz`
/// has Chern number `+1`.
pub fn chern_2d(h: &HamiltonianFamily, tol: f64) -> Result<InvariantValue> {
    check_tol(tol)?;
    require_dim(h, 2, 6)?;
    let residual = hermitian_residual(h);
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let mut frames: Vec<DMatrix<C64>> = Vec::with_capacity(h.len());
    let mut occupied = None;
    let mut margin = f64::INFINITY;
    for s in h.samples() {
        let (vals, vecs) = linalg::hermitian_eigen(s);
        margin = vals.iter().fold(margin, |m, v| m.min(v.abs()));
        let n_occ = vals.iter().filter(|&&v| v < 0.0).count();
        if *occupied.get_or_insert(n_occ) != n_occ {
            return Err(Error::Gapless { margin: 0.0 });
        }
        frames.push(vecs.columns(0, n_occ).into_owned());
    }
    if margin <= tol {
        return Err(Error::Gapless { margin });
    }
    let link = |a: usize, b: usize| -> Result<C64> {
        let z = (frames[a].adjoint() * &frames[b]).determinant();
        if z.norm() < 1e-12 {
            return Err(Error::InvalidGrid("overlap of neighbouring frames vanishes; refine the grid".into()));
        }
        Ok(z / z.norm())
    };
    let mut total = 0.0;
    for p in 0..h.len() {
        let px = h.shifted_index(p, 0, 1);
        let py = h.shifted_index(p, 1, 1);
        let pxy = h.shifted_index(px, 1, 1);
        let loop_phase = link(p, px)? * link(px, pxy)? * link(pxy, py)? * link(py, p)?;
        total += loop_phase.arg();
    }
    quantize(InvariantKind::Chern, total / (2.0 * PI))
}

/// Number of negative eigenvalues of a Hermitian matrix.
pub fn signature_0d(h: &ComplexMatrix, tol: f64) -> Result<InvariantValue> {
    check_tol(tol)?;
    let residual = h.hermitian_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let vals = linalg::hermitian_eigenvalues(h);
    let margin = vals.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if margin <= tol {
        return Err(Error::Gapless { margin });
    }
    Ok(InvariantValue::exact(InvariantKind::Signature, vals.iter().filter(|&&v| v < 0.0).count() as i64))
}

/// Sign of the determinant after bringing the matrix to real form.
///
/// Supported gauges, tried in order: the matrix itself, and `-iM` (the form
/// of a matrix odd under complex conjugation, such as class D† with `C = 1`).
pub fn sign_det(h: &ComplexMatrix, tol: f64) -> Result<InvariantValue> {
    check_tol(tol)?;
    for phase in [c64(1.0, 0.0), c64(0.0, -1.0)] {
        let m = h.scale(phase);
        if m.imag_residual() <= HERMITIAN_TOL {
            let det = linalg::determinant(m.as_matrix()).re;
            if linalg::min_singular_value(m.as_matrix()) <= tol {
                return Err(Error::Singular);
            }
            return Ok(InvariantValue::exact(InvariantKind::SignDet, if det > 0.0 { 1 } else { -1 }));
        }
    }
    Err(Error::NotRealizable)
}

/// `0` if `x / y` is positive, `1` if negative; the ratio must be real.
fn z2_of_ratio(x: C64, y: C64) -> Result<i64> {
    if y.norm() == 0.0 || x.norm() == 0.0 {
        return Err(Error::Singular);
    }
    let r = x / y;
    if r.im.abs() > 1e-8 * r.norm() {
        return Err(Error::NotRealizable);
    }
    Ok(if r.re > 0.0 { 0 } else { 1 })
}

/// Relative Z2 index `[h1] - [h0]` read from the sign of `det h1 / det h0`.
///
/// Meaningful whenever a symmetry forces both determinants onto the same real
/// line through the origin.
pub fn relative_det_sign(h1: &DMatrix<C64>, h0: &DMatrix<C64>) -> Result<i64> {
    z2_of_ratio(linalg::determinant(h1), linalg::determinant(h0))
}

/// Relative Z2 index from `Pf(h1 u) / Pf(h0 u)`, for matrices with an
/// antiunitary `u K` satisfying `u h^T u^dag = -h` and `u u* = 1`, which
/// makes `h u` antisymmetric.
pub fn relative_pfaffian_sign(h1: &DMatrix<C64>, h0: &DMatrix<C64>, u: &DMatrix<C64>) -> Result<i64> {
    let a1 = h1 * u;
    let a0 = h0 * u;
    for a in [&a1, &a0] {
        let asym = (a + a.transpose()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if asym > 1e-8 {
            return Err(Error::NotRealizable);
        }
    }
    z2_of_ratio(linalg::pfaffian(&a1), linalg::pfaffian(&a0))
}
