//! Point and line gaps, Hermitization, and spectral flattening.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{c64, ComplexMatrix, HamiltonianFamily, C64};
use crate::linalg;
use crate::symmetry::{verify_spec, SymmetrySpec};

/// Default threshold for gap verdicts.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Default number of samples on the deformation path, `t = 0, 0.1, ..., 1`.
pub const DEFAULT_PATH_STEPS: usize = 11;

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Which reference line a line gap refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Spectrum avoids the imaginary axis.
    Real,
    /// Spectrum avoids the real axis.
    #[serde(rename = "imag")]
    Imaginary,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Real => "real",
            Axis::Imaginary => "imag",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "re" | "r" => Ok(Axis::Real),
            "imag" | "imaginary" | "im" | "i" => Ok(Axis::Imaginary),
            other => Err(Error::Parse(format!("unknown axis {other:?}"))),
        }
    }
}

/// Gap margins of a family, minimized over the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    /// Smallest singular value.
    pub point_gap_margin: f64,
    /// Smallest `|Re E|`.
    pub real_line_margin: f64,
    /// Smallest `|Im E|`.
    pub imag_line_margin: f64,
    /// Smallest `1 / cond(V)` of the eigenvector matrix.
    pub diagonalizability_margin: f64,
    pub tol: f64,
    pub point_gapped: bool,
    pub real_line_gapped: bool,
    pub imag_line_gapped: bool,
}

/// Margins of every gap notion at tolerance `tol`.
///
/// The point-gap verdict also accepts a family whose eigenvalues all stay
/// farther than `tol` from zero, so a line gap always implies a point gap
/// even when the singular values of a badly non-normal matrix are tiny.
pub fn gap_report(h: &HamiltonianFamily, tol: f64) -> Result<GapReport> {
    check_tol(tol)?;
    let mut point = f64::INFINITY;
    let mut modulus = f64::INFINITY;
    let mut re = f64::INFINITY;
    let mut im = f64::INFINITY;
    let mut diag = f64::INFINITY;
    for sample in h.samples() {
        if sample.dim() == 0 {
            continue;
        }
        point = point.min(linalg::min_singular_value(sample.as_matrix()));
        let eig = linalg::eigen(sample);
        for e in &eig.values {
            modulus = modulus.min(e.norm());
            re = re.min(e.re.abs());
            im = im.min(e.im.abs());
        }
        diag = diag.min(1.0 / eig.condition());
    }
    Ok(GapReport {
        point_gap_margin: point,
        real_line_margin: re,
        imag_line_margin: im,
        diagonalizability_margin: diag,
        tol,
        point_gapped: point > tol || modulus > tol,
        real_line_gapped: re > tol,
        imag_line_gapped: im > tol,
    })
}

/// The doubled Hermitian matrix `[[0, H], [H^dag, 0]]`.
pub fn hermitize_matrix(h: &ComplexMatrix) -> ComplexMatrix {
    let n = h.dim();
    let m = h.as_matrix();
    let mut out = DMatrix::<C64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out[(i, n + j)] = m[(i, j)];
            out[(n + j, i)] = m[(i, j)].conj();
        }
    }
    ComplexMatrix::new(out).expect("entries of a finite matrix stay finite")
}

/// Hermitization sample by sample. The result anticommutes with `sigma_z (x) 1`.
pub fn hermitize(h: &HamiltonianFamily) -> HamiltonianFamily {
    h.map(hermitize_matrix)
}

fn sign_flatten(m: &ComplexMatrix, axis: Axis, tol: f64) -> Result<ComplexMatrix> {
    let n = m.dim();
    if n == 0 {
        return Ok(m.clone());
    }
    let eig = linalg::eigen(m);
    let margin = eig
        .values
        .iter()
        .map(|e| match axis {
            Axis::Real => e.re.abs(),
            Axis::Imaginary => e.im.abs(),
        })
        .fold(f64::INFINITY, f64::min);
    if margin <= tol {
        return Err(Error::NoLineGap { axis: axis.to_string(), margin });
    }
    let condition = eig.condition();
    if condition > 1.0 / tol {
        return Err(Error::NearDefective { condition });
    }
    let left = eig.left().ok_or(Error::NearDefective { condition: f64::INFINITY })?;
    let signs = DVector::from_iterator(
        n,
        eig.values.iter().map(|e| {
            let x = match axis {
                Axis::Real => e.re,
                Axis::Imaginary => e.im,
            };
            c64(x.signum(), 0.0)
        }),
    );
    let q = &eig.vectors * DMatrix::from_diagonal(&signs) * left;
    ComplexMatrix::new(q)
}

/// `Q = P+ - P-` from the spectral projectors on either side of the axis.
///
/// For [`Axis::Imaginary`] this flattens `iH` instead, so that in both cases
/// `Q^2 = 1`; the spectrum of `Q` is `+1` where `Im E < 0`.
pub fn flatten(h: &HamiltonianFamily, axis: Axis, tol: f64) -> Result<HamiltonianFamily> {
    check_tol(tol)?;
    match axis {
        Axis::Real => h.try_map(|m| sign_flatten(m, Axis::Real, tol)),
        Axis::Imaginary => h.try_map(|m| sign_flatten(&m.scale(c64(0.0, 1.0)), Axis::Real, tol)),
    }
}

/// Flattening in the original frame: eigenvalues go to `sign(Re E)` for the
/// real axis and to `i sign(Im E)` for the imaginary one. Commutes with every
/// symmetry of `H`.
pub fn flatten_in_place(h: &HamiltonianFamily, axis: Axis, tol: f64) -> Result<HamiltonianFamily> {
    check_tol(tol)?;
    match axis {
        Axis::Real => h.try_map(|m| sign_flatten(m, Axis::Real, tol)),
        Axis::Imaginary => {
            h.try_map(|m| sign_flatten(m, Axis::Imaginary, tol).map(|q| q.scale(c64(0.0, 1.0))))
        }
    }
}

/// Worst values seen along a certified deformation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathCertificate {
    pub axis: Axis,
    pub steps: usize,
    /// Smallest line-gap margin over all path samples.
    pub min_gap_margin: f64,
    /// Largest symmetry residual over all path samples.
    pub max_symmetry_residual: f64,
}

/// Result of [`deform`]: the (anti-)Hermitian end point, the flattened
/// start point and the path certificate.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub flattened: HamiltonianFamily,
    pub output: HamiltonianFamily,
    pub certificate: PathCertificate,
}

/// Deforms a line-gapped family to a Hermitian (real axis) or anti-Hermitian
/// (imaginary axis) one, certifying that `(1 - t) Q + t H'` keeps the gap and
/// every symmetry of `spec` at `steps` evenly spaced values of `t`.
pub fn deform(h: &HamiltonianFamily, axis: Axis, spec: &SymmetrySpec, steps: usize, tol: f64) -> Result<Deformation> {
    check_tol(tol)?;
    if steps < 2 {
        return Err(Error::InvalidGrid("a deformation path needs at least two samples".into()));
    }
    for (kind, residual) in verify_spec(h, spec)? {
        if residual > tol {
            return Err(Error::SymmetryBroken { kind: kind.to_string(), residual });
        }
    }
    let q = flatten_in_place(h, axis, tol)?;
    let target = match axis {
        Axis::Real => q.map(|m| m.hermitian_part()),
        Axis::Imaginary => q.map(|m| m.antihermitian_part()),
    };
    let mut min_gap = f64::INFINITY;
    let mut max_res = 0.0f64;
    for j in 0..steps {
        let t = j as f64 / (steps - 1) as f64;
        let path = q.zip_with(&target, |a, b| &a.scale_re(1.0 - t) + &b.scale_re(t))?;
        let margin = line_margin(&path, axis);
        if margin <= tol {
            return Err(Error::GapClosedAlongPath { t, margin });
        }
        min_gap = min_gap.min(margin);
        for (kind, residual) in verify_spec(&path, spec)? {
            if residual > tol {
                return Err(Error::SymmetryBroken { kind: kind.to_string(), residual });
            }
            max_res = max_res.max(residual);
        }
    }
    Ok(Deformation {
        flattened: q,
        output: target,
        certificate: PathCertificate { axis, steps, min_gap_margin: min_gap, max_symmetry_residual: max_res },
    })
}

/// The end point of [`deform`].
pub fn line_gap_deform(
    h: &HamiltonianFamily,
    axis: Axis,
    spec: &SymmetrySpec,
    steps: usize,
    tol: f64,
) -> Result<HamiltonianFamily> {
    deform(h, axis, spec, steps, tol).map(|d| d.output)
}

fn line_margin(h: &HamiltonianFamily, axis: Axis) -> f64 {
    let mut margin = f64::INFINITY;
    for s in h.samples() {
        for e in linalg::eigenvalues(s) {
            margin = margin.min(match axis {
                Axis::Real => e.re.abs(),
                Axis::Imaginary => e.im.abs(),
            });
        }
    }
    margin
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{SymmetryKind, SymmetryOp};

    fn unit_circle(n: usize) -> HamiltonianFamily {
        HamiltonianFamily::from_fn(1, n, |k| ComplexMatrix::scalar(c64(k[0].cos(), k[0].sin()))).unwrap()
    }

    #[test]
    fn unit_circle_margins() {
        let r = gap_report(&unit_circle(8), 1e-8).unwrap();
        assert!((r.point_gap_margin - 1.0).abs() < 1e-12);
        assert!(r.real_line_margin < 1e-12 && r.imag_line_margin < 1e-12);
        assert!(r.point_gapped && !r.real_line_gapped && !r.imag_line_gapped);
    }

    #[test]
    fn scalar_margins() {
        let r = gap_report(&HamiltonianFamily::zero_dim(ComplexMatrix::scalar(c64(2.0, 0.0))), 1e-8).unwrap();
        assert_eq!((r.point_gap_margin, r.real_line_margin), (2.0, 2.0));
        assert!((r.imag_line_margin - 0.0).abs() < 1e-15);
    }

    #[test]
    fn nilpotent_has_no_point_gap() {
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let fam = HamiltonianFamily::zero_dim(n);
        let r = gap_report(&fam, 1e-8).unwrap();
        assert!(r.point_gap_margin < 1e-15 && !r.point_gapped);
        assert!(flatten(&fam, Axis::Real, 1e-8).is_err());
    }

    #[test]
    fn rejects_bad_tolerance() {
        let fam = unit_circle(4);
        assert!(matches!(gap_report(&fam, 0.0), Err(Error::InvalidTolerance(_))));
        assert!(matches!(gap_report(&fam, f64::NAN), Err(Error::InvalidTolerance(_))));
    }

    #[test]
    fn hermitized_scalar_spectrum() {
        let h = HamiltonianFamily::zero_dim(ComplexMatrix::scalar(c64(0.0, 1.0)));
        let vals = linalg::hermitian_eigenvalues(hermitize(&h).sample(0));
        assert!((vals[0] + 1.0).abs() < 1e-15 && (vals[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn flatten_diagonal() {
        let m = ComplexMatrix::from_rows(&[vec![c64(1.0, 1.0), c64(0.0, 0.0)], vec![c64(0.0, 0.0), c64(-2.0, 0.0)]])
            .unwrap();
        let q = flatten(&HamiltonianFamily::zero_dim(m), Axis::Real, 1e-8).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert!(q.sample(0).max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn imaginary_flatten_is_flatten_of_i_h() {
        let m = ComplexMatrix::from_rows(&[vec![c64(1.0, 2.0), c64(0.3, 0.0)], vec![c64(0.0, 0.1), c64(-2.0, -0.5)]])
            .unwrap();
        let fam = HamiltonianFamily::zero_dim(m.clone());
        let q = flatten(&fam, Axis::Imaginary, 1e-8).unwrap();
        let direct = flatten(&fam.scale(c64(0.0, 1.0)), Axis::Real, 1e-8).unwrap();
        assert!(q.sample(0).max_abs_diff(direct.sample(0)) < 1e-12);
        let sq = q.sample(0) * q.sample(0);
        assert!(sq.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-10);
    }

    #[test]
    fn deform_diagonal_example() {
        let m = ComplexMatrix::from_rows(&[vec![c64(1.0, 1.0), c64(0.0, 0.0)], vec![c64(0.0, 0.0), c64(-2.0, 0.5)]])
            .unwrap();
        let out = line_gap_deform(&HamiltonianFamily::zero_dim(m), Axis::Real, &SymmetrySpec::empty(), 11, 1e-8).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert!(out.sample(0).max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn deform_keeps_trs_of_real_scalar() {
        let h = HamiltonianFamily::zero_dim(ComplexMatrix::identity(1));
        let t = SymmetryOp::new(SymmetryKind::Trs, ComplexMatrix::identity(1)).unwrap();
        let spec = SymmetrySpec::new(vec![t]).unwrap();
        let d = deform(&h, Axis::Real, &spec, 11, 1e-8).unwrap();
        assert!(d.output.sample(0).max_abs_diff(&ComplexMatrix::identity(1)) < 1e-15);
        assert_eq!(d.certificate.max_symmetry_residual, 0.0);
    }

    #[test]
    fn imaginary_deform_is_anti_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![c64(0.4, 1.0), c64(0.2, 0.0)], vec![c64(0.0, 0.3), c64(-0.1, -1.5)]])
            .unwrap();
        let out =
            line_gap_deform(&HamiltonianFamily::zero_dim(m), Axis::Imaginary, &SymmetrySpec::empty(), 11, 1e-8).unwrap();
        let a = out.sample(0);
        assert!((a + &a.adjoint()).max_abs() < 1e-12);
        let mut ims: Vec<f64> = linalg::eigenvalues(a).iter().map(|e| e.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!(ims[0] < -1e-3 && ims[1] > 1e-3);
    }

    #[test]
    fn broken_symmetry_is_reported() {
        let h = HamiltonianFamily::zero_dim(ComplexMatrix::scalar(c64(1.0, 0.5)));
        let t = SymmetryOp::new(SymmetryKind::Trs, ComplexMatrix::identity(1)).unwrap();
        let spec = SymmetrySpec::new(vec![t]).unwrap();
        assert!(matches!(deform(&h, Axis::Real, &spec, 11, 1e-8), Err(Error::SymmetryBroken { .. })));
    }
}
