//! Seeded random fixtures shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use nhtopo::linalg::hermitian_eigen;
use nhtopo::symmetry::{symmetrize, SymmetryOp, SymmetrySpec};
use nhtopo::{c64, ComplexMatrix, HamiltonianFamily};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let m = DMatrix::from_fn(n, n, |_, _| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    ComplexMatrix::new(m).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    random_matrix(rng, n).hermitian_part()
}

/// Largest singular value.
pub fn norm2(m: &ComplexMatrix) -> f64 {
    nhtopo::linalg::singular_values(m.as_matrix()).iter().fold(0.0, |a: f64, &s| a.max(s))
}

/// `sign(h)` for a Hermitian `h`; `None` if an eigenvalue is within `margin` of zero.
pub fn hermitian_sign(h: &ComplexMatrix, margin: f64) -> Option<ComplexMatrix> {
    let (vals, vecs) = hermitian_eigen(h);
    if vals.iter().any(|v| v.abs() < margin) {
        return None;
    }
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|v| c64(v.signum(), 0.0)),
    ));
    Some(ComplexMatrix::new(&vecs * d * vecs.adjoint()).unwrap())
}

/// The same symmetries acting on `op (x) 1_k`, reaching matrix size `n`.
pub fn widen(spec: &SymmetrySpec, n: usize) -> SymmetrySpec {
    let d = spec.ops().first().map_or(n, |o| o.dim());
    assert_eq!(n % d, 0, "cannot widen {d} to {n}");
    let pad = ComplexMatrix::identity(n / d);
    let ops = spec.ops().iter().map(|o| SymmetryOp::new(o.kind(), o.matrix().kron(&pad)).unwrap()).collect();
    SymmetrySpec::new(ops).unwrap()
}

/// A random non-Hermitian 1D family with the symmetries of `spec`: a few
/// Fourier harmonics, symmetrized over the group, scaled to unit norm.
pub fn random_symmetric_family(rng: &mut ChaCha8Rng, spec: &SymmetrySpec, n: usize, grid: usize) -> HamiltonianFamily {
    let harmonics: Vec<ComplexMatrix> = (0..3).map(|_| random_matrix(rng, n)).collect();
    let raw = HamiltonianFamily::from_fn(1, grid, |k| {
        harmonics.iter().enumerate().fold(ComplexMatrix::zeros(n), |acc, (m, a)| {
            &acc + &a.scale(c64(0.0, m as f64 * k[0]).exp())
        })
    })
    .unwrap();
    let sym = symmetrize(&raw, spec).unwrap();
    let scale = sym.samples().iter().map(norm2).fold(0.0, f64::max).max(1e-300);
    sym.scale(c64(1.0 / scale, 0.0))
}

/// `2 M + 0.3 R_k` with `M = sign` of a symmetrized random Hermitian matrix and
/// `R_k` a symmetrized random family of unit norm. Eigenvalues of `M` are
/// `+-1` and `M` is normal, so every eigenvalue has `|Re E| >= 1.7`.
pub fn real_gapped_family(rng: &mut ChaCha8Rng, spec: &SymmetrySpec, n: usize, grid: usize) -> HamiltonianFamily {
    loop {
        let g = HamiltonianFamily::zero_dim(random_hermitian(rng, n));
        let g = symmetrize(&g, spec).unwrap();
        let Some(m) = hermitian_sign(g.sample(0), 0.05) else { continue };
        let r = random_symmetric_family(rng, spec, n, grid);
        return r.map(|rk| &m.scale_re(2.0) + &rk.scale_re(0.3));
    }
}
