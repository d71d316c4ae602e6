use std::collections::BTreeMap;

use super::kind::SymmetryKind;
use crate::error::{Error, Result};
use crate::hamiltonian::{c64, ComplexMatrix, C64};

/// Tolerance for unitarity and for the algebraic relations between operators.
pub const OPERATOR_TOL: f64 = 1e-12;

/// One symmetry: its kind and a unitary matrix.
///
/// Unitary-type operators (`phi = +1`) are rescaled on construction so that
/// `u^2 = 1`. For antiunitary operators the phase is free and `u u^*` is
/// `+1` or `-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryOp {
    kind: SymmetryKind,
    matrix: ComplexMatrix,
    square_sign: Option<i8>,
}

impl SymmetryOp {
    pub fn new(kind: SymmetryKind, matrix: ComplexMatrix) -> Result<Self> {
        let residual = matrix.unitary_residual();
        if residual > OPERATOR_TOL {
            return Err(Error::NotUnitary { residual });
        }
        let n = matrix.dim();
        let id = ComplexMatrix::identity(n);
        if kind == SymmetryKind::Unitary {
            return Ok(SymmetryOp { kind, matrix, square_sign: None });
        }
        if kind.is_antiunitary() {
            let sq = &matrix * &matrix.conj();
            let sign = if sq.trace().re >= 0.0 { 1 } else { -1 };
            let residual = sq.max_abs_diff(&id.scale_re(sign as f64));
            if residual > OPERATOR_TOL {
                return Err(Error::BadSquare { residual });
            }
            Ok(SymmetryOp { kind, matrix, square_sign: Some(sign) })
        } else {
            let sq = &matrix * &matrix;
            let z = sq.trace() / c64(n.max(1) as f64, 0.0);
            let residual = sq.max_abs_diff(&id.scale(z));
            if residual > OPERATOR_TOL || (z.norm() - 1.0).abs() > OPERATOR_TOL {
                return Err(Error::BadSquare { residual });
            }
            let matrix = matrix.scale(z.sqrt().inv());
            Ok(SymmetryOp { kind, matrix, square_sign: Some(1) })
        }
    }

    /// Like [`SymmetryOp::new`], also checking a declared square sign.
    /// For unitary-type kinds the sign refers to the normalized operator and is `+1`.
    pub fn with_square_sign(kind: SymmetryKind, matrix: ComplexMatrix, declared: i8) -> Result<Self> {
        let op = Self::new(kind, matrix)?;
        match op.square_sign {
            Some(actual) if actual != declared => Err(Error::SquareSignMismatch { declared, actual }),
            _ => Ok(op),
        }
    }

    pub fn kind(&self) -> SymmetryKind {
        self.kind
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn square_sign(&self) -> Option<i8> {
        self.square_sign
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `u X^{phi,kappa} u^dag`; the symmetry holds when this equals `c H_{phi k}`.
    pub fn act(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let (phi, _, kappa) = self.kind.flags();
        &(&self.matrix * &x.select(phi, kappa)) * &self.matrix.adjoint()
    }

    /// The same symmetry written in the basis `V`: `u -> V^dag u V^{phi}`.
    pub fn in_basis(&self, v: &ComplexMatrix) -> Self {
        let matrix = &(&v.adjoint() * &self.matrix) * &v.conj_if(self.kind.phi());
        SymmetryOp { kind: self.kind, matrix, square_sign: self.square_sign }
    }

    /// The same matrix read as a symmetry of `iH`.
    pub fn for_i_times(&self) -> Self {
        SymmetryOp { kind: self.kind.under_i(), matrix: self.matrix.clone(), square_sign: self.square_sign }
    }

    fn rescaled(&self, z: C64) -> Self {
        SymmetryOp { kind: self.kind, matrix: self.matrix.scale(z), square_sign: self.square_sign }
    }
}

/// Phase `z` in `u_a u_b^{phi_a} = z u_b u_a^{phi_b}`, if the relation holds.
pub fn commutation_phase(a: &ComplexMatrix, phi_a: i8, b: &ComplexMatrix, phi_b: i8) -> Option<C64> {
    let lhs = a * &b.conj_if(phi_a);
    let rhs = b * &a.conj_if(phi_b);
    let n = a.dim().max(1) as f64;
    let z = (&rhs.adjoint() * &lhs).trace() / c64(n, 0.0);
    let ok = lhs.max_abs_diff(&rhs.scale(z)) < 1e3 * OPERATOR_TOL && (z.norm() - 1.0).abs() < 1e3 * OPERATOR_TOL;
    ok.then_some(z)
}

/// A set of symmetry operators, at most one per kind, with the signs of
/// their pairwise commutation relations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymmetrySpec {
    ops: Vec<SymmetryOp>,
    signs: BTreeMap<(SymmetryKind, SymmetryKind), i8>,
}

impl SymmetrySpec {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks sizes and kinds, fixes the relative phase of antiunitary
    /// operators so that `u_a u_b^* = u_b u_a^*`, and records every sign.
    pub fn new(ops: Vec<SymmetryOp>) -> Result<Self> {
        let mut ops = ops;
        for (i, a) in ops.iter().enumerate() {
            if a.dim() != ops[0].dim() {
                return Err(Error::SizeMismatch { expected: ops[0].dim(), found: a.dim() });
            }
            if ops[..i].iter().any(|b| b.kind == a.kind) {
                return Err(Error::NotInCatalog(format!("two operators of kind {}", a.kind)));
            }
        }
        let anchor = ops.iter().position(|o| o.kind.is_antiunitary());
        if let Some(p) = anchor {
            for i in 0..ops.len() {
                if i == p || !ops[i].kind.is_antiunitary() {
                    continue;
                }
                let z = commutation_phase(&ops[p].matrix, -1, &ops[i].matrix, -1).ok_or_else(|| {
                    Error::NotInCatalog(format!("{} and {} satisfy no commutation relation", ops[p].kind, ops[i].kind))
                })?;
                ops[i] = ops[i].rescaled(C64::from_polar(1.0, z.arg() / 2.0));
            }
        }
        let mut signs = BTreeMap::new();
        for i in 0..ops.len() {
            for j in (i + 1)..ops.len() {
                let (a, b) = (&ops[i], &ops[j]);
                let z = commutation_phase(&a.matrix, a.kind.phi(), &b.matrix, b.kind.phi()).ok_or_else(|| {
                    Error::NotInCatalog(format!("{} and {} satisfy no commutation relation", a.kind, b.kind))
                })?;
                if z.im.abs() > 1e-9 {
                    return Err(Error::NotInCatalog(format!(
                        "{} and {} commute up to a non-real phase",
                        a.kind, b.kind
                    )));
                }
                signs.insert(ordered(a.kind, b.kind), if z.re > 0.0 { 1 } else { -1 });
            }
        }
        Ok(SymmetrySpec { ops, signs })
    }

    /// Like [`SymmetrySpec::new`], also checking declared commutation signs.
    pub fn with_declared_signs(ops: Vec<SymmetryOp>, declared: &[(SymmetryKind, SymmetryKind, i8)]) -> Result<Self> {
        let spec = Self::new(ops)?;
        for &(a, b, sign) in declared {
            match spec.sign(a, b) {
                Some(actual) if actual == sign => {}
                Some(actual) => {
                    return Err(Error::CommutationSignMismatch { pair: format!("{a}/{b}"), declared: sign, actual })
                }
                None => return Err(Error::NotInCatalog(format!("sign declared for absent pair {a}/{b}"))),
            }
        }
        Ok(spec)
    }

    pub fn ops(&self) -> &[SymmetryOp] {
        &self.ops
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn get(&self, kind: SymmetryKind) -> Option<&SymmetryOp> {
        self.ops.iter().find(|o| o.kind == kind)
    }

    pub fn sign(&self, a: SymmetryKind, b: SymmetryKind) -> Option<i8> {
        self.signs.get(&ordered(a, b)).copied()
    }

    pub fn signs(&self) -> &BTreeMap<(SymmetryKind, SymmetryKind), i8> {
        &self.signs
    }

    pub fn kinds(&self) -> Vec<SymmetryKind> {
        self.ops.iter().map(|o| o.kind).collect()
    }

    /// The operators reinterpreted as symmetries of `iH`.
    pub fn for_i_times(&self) -> Self {
        let ops = self.ops.iter().map(SymmetryOp::for_i_times).collect();
        Self::new(ops).expect("relations are unchanged by H -> iH")
    }

    /// All operators written in the basis `V`.
    pub fn in_basis(&self, v: &ComplexMatrix) -> Result<Self> {
        Self::new(self.ops.iter().map(|o| o.in_basis(v)).collect())
    }
}

fn ordered(a: SymmetryKind, b: SymmetryKind) -> (SymmetryKind, SymmetryKind) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SymmetryKind::*;

    fn p(i: usize) -> ComplexMatrix {
        ComplexMatrix::pauli(i)
    }

    #[test]
    fn antiunitary_square_sign() {
        assert_eq!(SymmetryOp::new(Trs, ComplexMatrix::identity(2)).unwrap().square_sign(), Some(1));
        let iy = p(2).scale(c64(0.0, 1.0));
        assert_eq!(SymmetryOp::new(Trs, iy.clone()).unwrap().square_sign(), Some(-1));
        assert_eq!(
            SymmetryOp::with_square_sign(Trs, iy, 1),
            Err(Error::SquareSignMismatch { declared: 1, actual: -1 })
        );
    }

    #[test]
    fn unitary_type_is_normalized() {
        let op = SymmetryOp::new(Chiral, p(3).scale(c64(0.0, 1.0))).unwrap();
        let sq = op.matrix() * op.matrix();
        assert!(sq.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::identity(2).scale_re(2.0);
        assert!(matches!(SymmetryOp::new(Trs, m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn commutation_signs() {
        let t = SymmetryOp::new(Trs, ComplexMatrix::identity(2)).unwrap();
        let eta = SymmetryOp::new(PseudoHermitian, p(2)).unwrap();
        let spec = SymmetrySpec::new(vec![t.clone(), eta]).unwrap();
        assert_eq!(spec.sign(PseudoHermitian, Trs), Some(-1));
        let eta = SymmetryOp::new(PseudoHermitian, p(3)).unwrap();
        let spec = SymmetrySpec::new(vec![t, eta]).unwrap();
        assert_eq!(spec.sign(Trs, PseudoHermitian), Some(1));
    }

    #[test]
    fn antiunitary_pair_is_gauge_fixed() {
        let t = SymmetryOp::new(Trs, ComplexMatrix::identity(2)).unwrap();
        let c = SymmetryOp::new(Phs, p(1).scale(c64(0.0, 1.0))).unwrap();
        let spec = SymmetrySpec::new(vec![t, c]).unwrap();
        assert_eq!(spec.sign(Trs, Phs), Some(1));
        let c = spec.get(Phs).unwrap().matrix();
        let lhs = c.conj();
        assert!(lhs.max_abs_diff(c) < 1e-14);
    }

    #[test]
    fn duplicate_kinds_rejected() {
        let t = SymmetryOp::new(Trs, ComplexMatrix::identity(1)).unwrap();
        assert!(SymmetrySpec::new(vec![t.clone(), t]).is_err());
    }
}
