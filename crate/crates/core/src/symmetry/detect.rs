use std::collections::BTreeMap;

use super::class::{Family, SymmetryClassId};
use super::kind::SymmetryKind::{self, *};
use super::op::{commutation_phase, SymmetryOp, SymmetrySpec, OPERATOR_TOL};
use crate::error::{Error, Result};
use crate::hamiltonian::{c64, ComplexMatrix};

/// Every element of the group generated by the spec, one matrix per kind,
/// normalized like a generator. The identity is left out.
pub fn closure(spec: &SymmetrySpec) -> Result<BTreeMap<SymmetryKind, SymmetryOp>> {
    let n = spec.ops().first().map_or(0, |o| o.dim());
    let mut elems: Vec<(SymmetryKind, ComplexMatrix)> = vec![(Unitary, ComplexMatrix::identity(n))];
    for g in spec.ops() {
        if g.kind() == Unitary {
            return Err(Error::NotInCatalog("unitary symmetries must be block-diagonalized first".into()));
        }
        let mut grown = elems.clone();
        for (kind, m) in &elems {
            let k = g.kind().compose(*kind);
            let prod = g.matrix() * &m.conj_if(g.kind().phi());
            match grown.iter().find(|(k2, _)| *k2 == k) {
                Some((_, existing)) => {
                    if !proportional(existing, &prod) {
                        return Err(Error::NotInCatalog(format!(
                            "{} is redundant but differs from the product of the other generators",
                            g.kind()
                        )));
                    }
                }
                None => grown.push((k, prod)),
            }
        }
        elems = grown;
    }
    elems
        .into_iter()
        .filter(|(k, _)| *k != Unitary)
        .map(|(k, m)| SymmetryOp::new(k, m).map(|op| (k, op)))
        .collect()
}

fn proportional(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    let n = a.dim().max(1) as f64;
    let prod = a * &b.adjoint();
    let z = prod.trace() / c64(n, 0.0);
    prod.max_abs_diff(&ComplexMatrix::identity(a.dim()).scale(z)) < 1e3 * OPERATOR_TOL
}

/// Sign `eps` in `u_a u_b^{phi_a} = eps u_b u_a^{phi_b}`, for one
/// antiunitary and one unitary-type operator.
fn eps(a: &SymmetryOp, b: &SymmetryOp) -> Result<i8> {
    let z = commutation_phase(a.matrix(), a.kind().phi(), b.matrix(), b.kind().phi())
        .ok_or_else(|| Error::NotInCatalog(format!("{} and {} satisfy no commutation relation", a.kind(), b.kind())))?;
    if z.im.abs() > 1e-9 {
        return Err(Error::NotInCatalog(format!("{} and {} commute up to a non-real phase", a.kind(), b.kind())));
    }
    Ok(if z.re > 0.0 { 1 } else { -1 })
}

/// `s` of a real class from the squares of its antiunitary generators.
fn real_s(t_sign: Option<i8>, c_sign: Option<i8>) -> u8 {
    match (t_sign, c_sign) {
        (Some(1), None) => 0,
        (Some(-1), None) => 4,
        (None, Some(1)) => 2,
        (None, Some(-1)) => 6,
        (Some(1), Some(1)) => 1,
        (Some(-1), Some(1)) => 3,
        (Some(-1), Some(-1)) => 5,
        (Some(1), Some(-1)) => 7,
        _ => unreachable!("at least one antiunitary generator"),
    }
}

fn sign_str(e: i8) -> char {
    if e > 0 {
        '+'
    } else {
        '-'
    }
}

/// The catalog class of a set of generators.
///
/// The group generated by the operators is closed first, so that e.g.
/// TRS together with TRS† is read as TRS with pH. When both SLS and pH
/// are present the extra symmetry is read from whichever was declared,
/// SLS by preference.
pub fn detect_class(spec: &SymmetrySpec) -> Result<SymmetryClassId> {
    let all = closure(spec)?;
    let has = |k| all.contains_key(&k);
    let declared = spec.kinds();
    let extra = if declared.contains(&Sublattice) || (!declared.contains(&PseudoHermitian) && has(Sublattice)) {
        all.get(&Sublattice)
    } else {
        all.get(&PseudoHermitian)
    };
    let sq = |k| all.get(&k).and_then(|o: &SymmetryOp| o.square_sign());

    if has(Trs) || has(Phs) {
        let s = real_s(sq(Trs), sq(Phs));
        let Some(x) = extra else {
            return SymmetryClassId::new(Family::RealAz, s as i64, None);
        };
        let letter = if x.kind() == Sublattice { "S" } else { "η" };
        let mut label = letter.to_string();
        for k in [Trs, Phs] {
            if let Some(a) = all.get(&k) {
                label.push(sign_str(eps(a, x)?));
            }
        }
        return find_label(Family::RealAzU, s, &label);
    }
    if has(TrsDagger) || has(PhsDagger) {
        if extra.is_some() {
            return Err(Error::NotInCatalog("dagger symmetries with an extra unitary-type symmetry".into()));
        }
        let s = real_s(sq(TrsDagger), sq(PhsDagger));
        return SymmetryClassId::new(Family::RealAzDagger, s as i64, None);
    }
    match (all.get(&Chiral), extra) {
        (None, None) => SymmetryClassId::new(Family::ComplexAz, 0, None),
        (Some(_), None) => SymmetryClassId::new(Family::ComplexAz, 1, None),
        (None, Some(x)) => SymmetryClassId::new(Family::ComplexAzU, 0, Some(if x.kind() == Sublattice { 1 } else { 0 })),
        (Some(g), Some(x)) => {
            let z = commutation_phase(g.matrix(), 1, x.matrix(), 1)
                .ok_or_else(|| Error::NotInCatalog("CS and the extra symmetry satisfy no relation".into()))?;
            SymmetryClassId::new(Family::ComplexAzU, 1, Some(if z.re > 0.0 { 0 } else { 1 }))
        }
    }
}

fn find_label(family: Family, s: u8, label: &str) -> Result<SymmetryClassId> {
    let p = family.t_period().expect("extra family");
    (0..p)
        .map(|t| SymmetryClassId::new(family, s as i64, Some(t as i64)).expect("valid indices"))
        .find(|c| c.label().is_some_and(|l| l.split(',').any(|part| part == label)))
        .ok_or_else(|| Error::NotInCatalog(format!("no class with s = {s} and label {label}")))
}
