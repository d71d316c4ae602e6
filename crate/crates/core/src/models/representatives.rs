//! One explicit set of generators for each of the 54 classes.

use crate::hamiltonian::ComplexMatrix;
use crate::symmetry::{Family, SymmetryClassId, SymmetryKind, SymmetryOp, SymmetrySpec};

use SymmetryKind::*;

/// Generators of the real AZ+U classes, indexed by `(s, t)`: TRS, PHS, and
/// either SLS (`S`) or pH (`E`), each as a Pauli string.
const REAL_U: [[&[(char, &str)]; 4]; 8] = [
    [&[('T', "0"), ('E', "0")], &[('T', "0"), ('S', "y")], &[('T', "0"), ('E', "y")], &[('T', "00"), ('S', "0x")]],
    [
        &[('T', "0x"), ('C', "00"), ('S', "0x")],
        &[('T', "0"), ('C', "x"), ('S', "y")],
        &[('T', "xz"), ('C', "0z"), ('S', "0x")],
        &[('T', "00"), ('C', "0z"), ('S', "0x")],
    ],
    [&[('C', "0"), ('E', "0")], &[('C', "00"), ('S', "0x")], &[('C', "0"), ('E', "y")], &[('C', "0z"), ('S', "0x")]],
    [
        &[('T', "0y"), ('C', "0z"), ('S', "0x")],
        &[('T', "0y"), ('C', "00"), ('S', "0x")],
        &[('T', "y0"), ('C', "00"), ('S', "0x")],
        &[('T', "0y"), ('C', "00"), ('S', "yx")],
    ],
    [&[('T', "y"), ('E', "0")], &[('T', "0y"), ('S', "0x")], &[('T', "y"), ('E', "x")], &[('T', "y0"), ('S', "0x")]],
    [
        &[('T', "yx"), ('C', "y0"), ('S', "0x")],
        &[('T', "0y"), ('C', "xy"), ('S', "y0")],
        &[('T', "xy"), ('C', "0y"), ('S', "0x")],
        &[('T', "0y"), ('C', "xy"), ('S', "yx")],
    ],
    [&[('C', "y"), ('E', "0")], &[('C', "y0"), ('S', "0x")], &[('C', "y"), ('E', "x")], &[('C', "y"), ('S', "x")]],
    [
        &[('T', "0"), ('C', "y"), ('S', "y")],
        &[('T', "00"), ('C', "0y"), ('S', "yx")],
        &[('T', "00"), ('C', "y0"), ('S', "0x")],
        &[('T', "0"), ('C', "y"), ('S', "x")],
    ],
];

/// TRS and PHS of the real AZ classes by `s`; `None` where absent.
const REAL_AZ: [(Option<&str>, Option<&str>); 8] = [
    (Some("0"), None),
    (Some("0"), Some("x")),
    (None, Some("0")),
    (Some("0y"), Some("00")),
    (Some("y"), None),
    (Some("y0"), Some("yz")),
    (None, Some("y")),
    (Some("0"), Some("y")),
];

fn op(kind: SymmetryKind, pauli: &str) -> SymmetryOp {
    let m = ComplexMatrix::pauli_string(pauli).expect("valid Pauli string");
    SymmetryOp::new(kind, m).expect("Pauli strings are unitary")
}

fn widen(ops: Vec<(SymmetryKind, &str)>) -> Vec<SymmetryOp> {
    let width = ops.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
    ops.into_iter()
        .map(|(k, p)| {
            let padded = format!("{p}{}", "0".repeat(width - p.len()));
            op(k, &padded)
        })
        .collect()
}

/// A generator set whose detected class is `class`.
///
/// Operators are Pauli strings on at most four states, chosen so that the
/// class admits a Hermitian matrix with a gap at zero. They exist to exercise
/// detection and to seed random symmetric families.
pub fn class_representative(class: SymmetryClassId) -> SymmetrySpec {
    let (s, t) = (class.s() as usize, class.t().map(|t| t as usize));
    let ops: Vec<(SymmetryKind, &str)> = match class.family() {
        Family::ComplexAz => {
            if s == 0 {
                vec![]
            } else {
                vec![(Chiral, "z")]
            }
        }
        Family::RealAz | Family::RealAzDagger => {
            let dagger = class.family() == Family::RealAzDagger;
            let (t_op, c_op) = REAL_AZ[s];
            let mut v = Vec::new();
            if let Some(m) = t_op {
                v.push((if dagger { TrsDagger } else { Trs }, m));
            }
            if let Some(m) = c_op {
                v.push((if dagger { PhsDagger } else { Phs }, m));
            }
            v
        }
        Family::ComplexAzU => match (s, t.expect("t present")) {
            (0, 0) => vec![(PseudoHermitian, "z")],
            (0, _) => vec![(Sublattice, "z")],
            (_, 0) => vec![(Chiral, "z0"), (Sublattice, "0z")],
            (_, _) => vec![(Chiral, "y"), (Sublattice, "z")],
        },
        Family::RealAzU => REAL_U[s][t.expect("t present")]
            .iter()
            .map(|&(letter, m)| {
                let kind = match letter {
                    'T' => Trs,
                    'C' => Phs,
                    'S' => Sublattice,
                    _ => PseudoHermitian,
                };
                (kind, m)
            })
            .collect(),
    };
    SymmetrySpec::new(widen(ops)).expect("representatives are consistent")
}
