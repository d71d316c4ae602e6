//! Dense eigen- and singular-value helpers on top of nalgebra.

use nalgebra::DMatrix;

use crate::hamiltonian::{c64, ComplexMatrix, C64};

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(h: &ComplexMatrix) -> (Vec<f64>, DMatrix<C64>) {
    let herm = h.hermitian_part();
    let eig = herm.into_inner().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigen(h).0
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn min_singular_value(m: &DMatrix<C64>) -> f64 {
    singular_values(m).last().copied().unwrap_or(f64::INFINITY)
}

/// Ratio of the extreme singular values.
pub fn condition_number(m: &DMatrix<C64>) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// Eigen-decomposition `M = V diag(values) V^-1` of a general complex matrix.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<C64>,
    /// Right eigenvectors as unit-norm columns.
    pub vectors: DMatrix<C64>,
}

impl Eigen {
    /// Condition number of the eigenvector matrix; infinite when defective.
    pub fn condition(&self) -> f64 {
        condition_number(&self.vectors)
    }

    /// Rows of `V^-1`, the left eigenvectors dual to the right ones.
    pub fn left(&self) -> Option<DMatrix<C64>> {
        self.vectors.clone().try_inverse()
    }
}

/// Complex Schur form `(Q, T)` of `m`.
///
/// The unshifted QR iteration can stall on spectra symmetric under `E -> -E`
/// (off-diagonal block matrices hit this). A stalled attempt is retried on
/// `m + cI` for a few fixed complex `c`, which leaves the Schur vectors
/// unchanged, and the shift is removed from the diagonal afterwards. Matrices
/// within rounding of a multiple of the identity never deflate at the
/// tightest threshold whatever the shift, so the threshold is then relaxed
/// in steps up to `256 eps`.
fn schur(m: &DMatrix<C64>) -> (DMatrix<C64>, DMatrix<C64>) {
    const SHIFTS: [(f64, f64); 4] = [(0.0, 0.0), (0.1377, 0.0731), (-0.2113, 0.1571), (0.3019, -0.2687)];
    const THRESHOLDS: [f64; 3] = [1.0, 16.0, 256.0];
    let n = m.nrows();
    let scale = m.iter().fold(0.0f64, |a, z| a.max(z.norm())).max(1.0);
    for factor in THRESHOLDS {
        for (re, im) in SHIFTS {
            let c = c64(re * scale, im * scale);
            let shifted = m + DMatrix::<C64>::identity(n, n) * c;
            if let Some(s) = nalgebra::Schur::try_new(shifted, factor * f64::EPSILON, 1000 * n.max(1)) {
                let (q, mut t) = s.unpack();
                for i in 0..n {
                    t[(i, i)] -= c;
                }
                return (q, t);
            }
        }
    }
    panic!("Schur iteration failed to converge under every shift")
}

/// Complex Schur form followed by back substitution on the triangular factor.
pub fn eigen(m: &ComplexMatrix) -> Eigen {
    let n = m.dim();
    let (q, t) = schur(m.as_matrix());
    let scale = t.iter().fold(0.0f64, |a, z| a.max(z.norm())).max(f64::MIN_POSITIVE);
    let small = scale * f64::EPSILON;
    let mut y = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        let lambda = t[(i, i)];
        y[(i, i)] = c64(1.0, 0.0);
        for j in (0..i).rev() {
            let mut acc = c64(0.0, 0.0);
            for l in (j + 1)..=i {
                acc += t[(j, l)] * y[(l, i)];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < small {
                denom = c64(small, 0.0);
            }
            y[(j, i)] = -acc / denom;
        }
    }
    let mut v = q * y;
    for mut col in v.column_iter_mut() {
        let nrm = col.norm();
        if nrm > 0.0 {
            col /= c64(nrm, 0.0);
        }
    }
    let values = (0..n).map(|i| t[(i, i)]).collect();
    Eigen { values, vectors: v }
}

pub fn eigenvalues(m: &ComplexMatrix) -> Vec<C64> {
    if m.dim() == 0 {
        return Vec::new();
    }
    schur(m.as_matrix()).1.diagonal().iter().copied().collect()
}

pub fn determinant(m: &DMatrix<C64>) -> C64 {
    if m.is_empty() {
        return c64(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// Pfaffian of an antisymmetric matrix by pivoted Gaussian elimination.
pub fn pfaffian(a: &DMatrix<C64>) -> C64 {
    let n = a.nrows();
    if n % 2 == 1 {
        return c64(0.0, 0.0);
    }
    let mut a = a.clone();
    let mut pf = c64(1.0, 0.0);
    let mut k = 0;
    while k + 1 < n {
        let mut kp = k + 1;
        for r in (k + 1)..n {
            if a[(r, k)].norm() > a[(kp, k)].norm() {
                kp = r;
            }
        }
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            pf = -pf;
        }
        if a[(k + 1, k)].norm() == 0.0 {
            return c64(0.0, 0.0);
        }
        let pivot = a[(k, k + 1)];
        pf *= pivot;
        if k + 2 < n {
            let tau: Vec<C64> = ((k + 2)..n).map(|j| a[(k, j)] / pivot).collect();
            let col: Vec<C64> = ((k + 2)..n).map(|i| a[(i, k + 1)]).collect();
            for (ii, i) in ((k + 2)..n).enumerate() {
                for (jj, j) in ((k + 2)..n).enumerate() {
                    a[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    pf
}

/// Columns spanning the eigenspace of a Hermitian matrix for eigenvalues near `target`.
pub fn eigenspace(h: &ComplexMatrix, target: f64, tol: f64) -> DMatrix<C64> {
    let (vals, vecs) = hermitian_eigen(h);
    let cols: Vec<usize> = (0..vals.len()).filter(|&i| (vals[i] - target).abs() < tol).collect();
    DMatrix::from_fn(vecs.nrows(), cols.len(), |r, c| vecs[(r, cols[c])])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_of_a_near_scalar_matrix() {
        // A flattened involution equal to -1 up to rounding, taken from a failing run.
        let rows = [
            [(-1.0000000000000004, 1.4988010832439613e-15), (6.106226635438361e-16, 3.608224830031759e-16), (-4.440892098500626e-16, 3.0531133177191805e-16), (-3.885780586188048e-16, -1.6653345369377348e-16)],
            [(8.326672684688674e-17, 5.551115123125783e-17), (-1.0, -7.494005416219807e-16), (0.0, -9.43689570931383e-16), (1.942890293094024e-16, 6.938893903907228e-16)],
            [(3.608224830031759e-16, 1.1102230246251565e-16), (-6.938893903907228e-16, 4.718447854656915e-16), (-9.999999999999996e-1, 8.673617379884035e-16), (-2.220446049250313e-16, 3.5388358909926865e-16)],
            [(2.636779683484747e-16, 3.3306690738754696e-16), (-2.220446049250313e-16, -7.771561172376096e-16), (-3.3306690738754696e-16, 3.3306690738754696e-16), (-1.0, -1.3877787807814457e-16)],
        ];
        let m = ComplexMatrix::new(DMatrix::from_fn(4, 4, |i, j| c64(rows[i][j].0, rows[i][j].1))).unwrap();
        for e in eigenvalues(&m) {
            assert!((e + c64(1.0, 0.0)).norm() < 1e-12, "{e}");
        }
    }

    fn sample_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5
        };
        let m = DMatrix::from_fn(n, n, |_, _| c64(next(), next()));
        ComplexMatrix::new(m).unwrap()
    }

    #[test]
    fn eigen_reconstructs_generic_matrices() {
        for n in 1..7 {
            let m = sample_matrix(n, n as u64 + 11);
            let e = eigen(&m);
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(e.values.clone()));
            let rec = &e.vectors * d * e.left().unwrap();
            let err = ComplexMatrix::new(rec).unwrap().max_abs_diff(&m);
            assert!(err < 1e-10, "n = {n}: {err}");
        }
    }

    #[test]
    fn jordan_block_is_flagged_by_condition_number() {
        let j = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(eigen(&j).condition() > 1e10);
    }

    #[test]
    fn pfaffian_of_four_by_four_matches_closed_form() {
        let v = [0.3, -1.2, 0.7, 2.1, -0.4, 0.9];
        let mut a = DMatrix::<C64>::zeros(4, 4);
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (x, &(i, j)) in v.iter().zip(pairs.iter()) {
            a[(i, j)] = c64(*x, 0.5 * x);
            a[(j, i)] = -a[(i, j)];
        }
        let closed = a[(0, 1)] * a[(2, 3)] - a[(0, 2)] * a[(1, 3)] + a[(0, 3)] * a[(1, 2)];
        assert!((pfaffian(&a) - closed).norm() < 1e-12);
        assert!((pfaffian(&a) * pfaffian(&a) - determinant(&a)).norm() < 1e-10);
    }

    #[test]
    fn hermitian_eigen_sorted() {
        let h = ComplexMatrix::pauli(2).scale_re(2.0);
        let (vals, _) = hermitian_eigen(&h);
        assert_eq!(vals.len(), 2);
        assert!((vals[0] + 2.0).abs() < 1e-14 && (vals[1] - 2.0).abs() < 1e-14);
    }
}
