//! Symmetry operators, the 54-class catalog, and class detection.

mod class;
mod detect;
mod kind;
mod op;

pub use class::{Family, SymmetryClassId};
pub use detect::{closure, detect_class};
pub use kind::SymmetryKind;
pub use op::{commutation_phase, SymmetryOp, SymmetrySpec, OPERATOR_TOL};

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianFamily;

fn check_compatible(h: &HamiltonianFamily, op: &SymmetryOp) -> Result<()> {
    if op.dim() != h.matrix_size() {
        return Err(Error::SizeMismatch { expected: h.matrix_size(), found: op.dim() });
    }
    if op.kind().is_antiunitary() && h.dim() > 0 && h.grid_size() % 2 == 1 {
        return Err(Error::InvalidGrid("antiunitary symmetries need an even grid".into()));
    }
    Ok(())
}

/// Largest entry of `u H_k^{phi,kappa} u^dag - c H_{phi k}` over the grid.
pub fn verify_symmetry(h: &HamiltonianFamily, op: &SymmetryOp) -> Result<f64> {
    check_compatible(h, op)?;
    let c = op.kind().c() as f64;
    let mut worst = 0.0f64;
    for flat in 0..h.len() {
        let target = if op.kind().is_antiunitary() { h.negated_index(flat) } else { flat };
        let lhs = op.act(h.sample(flat));
        worst = worst.max(lhs.max_abs_diff(&h.sample(target).scale_re(c)));
    }
    Ok(worst)
}

/// Residual of every operator in the spec.
pub fn verify_spec(h: &HamiltonianFamily, spec: &SymmetrySpec) -> Result<Vec<(SymmetryKind, f64)>> {
    spec.ops().iter().map(|op| verify_symmetry(h, op).map(|r| (op.kind(), r))).collect()
}

/// Fails with `SymmetryBroken` on the first residual above `tol`.
pub fn require_symmetric(h: &HamiltonianFamily, spec: &SymmetrySpec, tol: f64) -> Result<()> {
    for (kind, residual) in verify_spec(h, spec)? {
        if residual > tol {
            return Err(Error::SymmetryBroken { kind: kind.to_string(), residual });
        }
    }
    Ok(())
}

/// Projects a family onto the symmetric subspace by averaging
/// `c_g u_g E_{phi_g k}^{phi_g,kappa_g} u_g^dag` over the group generated by the spec.
pub fn symmetrize(h: &HamiltonianFamily, spec: &SymmetrySpec) -> Result<HamiltonianFamily> {
    let group = closure(spec)?;
    for op in group.values() {
        check_compatible(h, op)?;
    }
    let weight = 1.0 / (group.len() + 1) as f64;
    let samples = (0..h.len())
        .map(|flat| {
            let mut acc = h.sample(flat).clone();
            for op in group.values() {
                let src = if op.kind().is_antiunitary() { h.negated_index(flat) } else { flat };
                acc = &acc + &op.act(h.sample(src)).scale_re(op.kind().c() as f64);
            }
            acc.scale_re(weight)
        })
        .collect();
    HamiltonianFamily::from_samples(h.dim(), h.grid_size(), samples)
}
