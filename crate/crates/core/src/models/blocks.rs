//! Generator models for the eighteen zero-dimensional blocks, and the
//! harness that reads the real-line-gap to point-gap map off them.
//!
//! Every block lists Hermitian generators of the real-line-gap group and
//! generators of the point-gap group. Where a pseudo-Hermiticity `eta` is
//! present the point-gap problem is analysed through the Hermitian matrix
//! `eta H` and the operators it inherits (`eta C`, `eta C T^dag`, ...), so
//! point generators are stored at that reduced level. A block passes when
//! the invariants of the Hermitian generators, measured in units of the point
//! generators, reproduce the block matrix used by the table engine.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaps::gap_report;
use crate::group::{AbelianGroup, GroupHom};
use crate::hamiltonian::{c64, ComplexMatrix, HamiltonianFamily, C64};
use crate::invariants::{relative_det_sign, relative_pfaffian_sign, signature_0d};
use crate::ktable::{k_group, standard_blocks, Gap};
use crate::linalg;
use crate::symmetry::{
    detect_class, symmetrize, verify_spec, Family, SymmetryClassId, SymmetryKind, SymmetryOp, SymmetrySpec,
};

use SymmetryKind::*;

const RESIDUAL_TOL: f64 = 1e-12;
const GAP_TOL: f64 = 1e-8;

/// A named operator: its role in the model, the kind it acts as, and the
/// literal matrix (no phase normalization).
#[derive(Clone, Debug)]
pub struct NamedOp {
    pub name: &'static str,
    pub kind: SymmetryKind,
    pub matrix: ComplexMatrix,
    /// Declared `uu*` sign for antiunitary kinds.
    pub square: Option<i8>,
}

/// A reference Hamiltonian `h0` and a generator `h1`; the K-group element
/// is the difference `[h1] - [h0]`.
#[derive(Clone, Debug)]
pub struct GeneratorPair {
    pub label: String,
    pub ops: Vec<NamedOp>,
    pub spec: SymmetrySpec,
    pub h0: ComplexMatrix,
    pub h1: ComplexMatrix,
}

impl GeneratorPair {
    fn new(
        label: &str,
        ops: Vec<NamedOp>,
        declared: &[(SymmetryKind, SymmetryKind, i8)],
        h0: ComplexMatrix,
        h1: ComplexMatrix,
    ) -> Result<Self> {
        let built = ops
            .iter()
            .map(|o| match o.square {
                Some(s) => SymmetryOp::with_square_sign(o.kind, o.matrix.clone(), s),
                None => SymmetryOp::new(o.kind, o.matrix.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = SymmetrySpec::with_declared_signs(built, declared)?;
        Ok(GeneratorPair { label: label.to_string(), ops, spec, h0, h1 })
    }

    pub fn op(&self, name: &str) -> Result<&ComplexMatrix> {
        self.ops
            .iter()
            .find(|o| o.name == name)
            .map(|o| &o.matrix)
            .ok_or_else(|| Error::UnknownId(format!("operator {name} in generator {}", self.label)))
    }

    pub fn families(&self) -> [HamiltonianFamily; 2] {
        [HamiltonianFamily::zero_dim(self.h0.clone()), HamiltonianFamily::zero_dim(self.h1.clone())]
    }
}

type Reduce = fn(&GeneratorPair) -> Result<GeneratorPair>;
type Read = fn(&GeneratorPair) -> Result<Vec<i64>>;

/// One of the eighteen blocks.
pub struct BlockModel {
    pub id: u8,
    pub slug: &'static str,
    pub class: SymmetryClassId,
    /// Generators of the real-line-gap group, one per factor.
    pub hermitian: Vec<GeneratorPair>,
    /// Generators of the point-gap group at the reduced level, one per factor.
    pub point: Vec<GeneratorPair>,
    /// How the point-gap invariant is read, stated in words.
    pub method: &'static str,
    lr: Read,
    reduce: Reduce,
    p: Read,
}

impl BlockModel {
    /// Real-line-gap invariants of a Hermitian generator.
    pub fn lr_invariant(&self, g: &GeneratorPair) -> Result<Vec<i64>> {
        (self.lr)(g)
    }

    /// The reduced Hermitian problem attached to a generator of the class.
    pub fn reduced(&self, g: &GeneratorPair) -> Result<GeneratorPair> {
        (self.reduce)(g)
    }

    /// Point-gap invariants of a reduced generator.
    pub fn p_invariant(&self, g: &GeneratorPair) -> Result<Vec<i64>> {
        (self.p)(g)
    }
}

/// One line of a block report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockReport {
    pub id: u8,
    pub slug: String,
    pub class: String,
    pub domain: String,
    pub codomain: String,
    pub method: String,
    /// The map read off the generators.
    pub derived: Vec<Vec<i64>>,
    /// The block used by the table engine.
    pub expected: Vec<Vec<i64>>,
    pub map: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl BlockReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn m(s: &str) -> ComplexMatrix {
    ComplexMatrix::pauli_string(s).expect("valid Pauli string")
}

fn im(s: &str) -> ComplexMatrix {
    m(s).scale(c64(0.0, 1.0))
}

fn neg(a: &ComplexMatrix) -> ComplexMatrix {
    -a
}

fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).expect("square literal")
}

fn named(name: &'static str, kind: SymmetryKind, matrix: ComplexMatrix) -> NamedOp {
    let square = if kind.is_antiunitary() {
        let p = &matrix * &matrix.conj();
        Some(if p.get(0, 0).re > 0.0 { 1 } else { -1 })
    } else {
        None
    };
    NamedOp { name, kind, matrix, square }
}

/// Projector-free basis of the eigenspace of a normal matrix for `lambda`.
fn sector(op: &ComplexMatrix, lambda: C64) -> DMatrix<C64> {
    let shifted = op - &ComplexMatrix::identity(op.dim()).scale(lambda);
    let gram = &shifted.adjoint() * &shifted;
    linalg::eigenspace(&gram, 0.0, 1e-8)
}

fn restrict(h: &ComplexMatrix, b: &DMatrix<C64>) -> DMatrix<C64> {
    b.adjoint() * h.as_matrix() * b
}

fn negatives(h: DMatrix<C64>) -> Result<i64> {
    if h.is_empty() {
        return Ok(0);
    }
    Ok(signature_0d(&ComplexMatrix::new(h)?, GAP_TOL)?.value)
}

/// `n_-(h1) - n_-(h0)`, optionally inside one eigenspace of `op`.
fn dsig(g: &GeneratorPair, within: Option<(&ComplexMatrix, C64)>) -> Result<i64> {
    let b = match within {
        Some((op, lambda)) => sector(op, lambda),
        None => DMatrix::identity(g.h0.dim(), g.h0.dim()),
    };
    Ok(negatives(restrict(&g.h1, &b))? - negatives(restrict(&g.h0, &b))?)
}

/// Class D index of `[h1] - [h0]` for a particle-hole operator `u K`,
/// optionally inside one eigenspace of `op` that `u K` preserves.
fn pf_z2(g: &GeneratorPair, u: &ComplexMatrix, within: Option<(&ComplexMatrix, C64)>) -> Result<i64> {
    let b = match within {
        Some((op, lambda)) => sector(op, lambda),
        None => DMatrix::identity(g.h0.dim(), g.h0.dim()),
    };
    if b.ncols() == 0 {
        return Ok(0);
    }
    let u_r = b.adjoint() * u.as_matrix() * b.map(|z| z.conj());
    relative_pfaffian_sign(&restrict(&g.h1, &b), &restrict(&g.h0, &b), &u_r)
}

/// Both square roots of `gamma^2`, for a unitary squaring to a phase.
fn root_pair(gamma: &ComplexMatrix) -> (C64, C64) {
    let r = (gamma * gamma).get(0, 0).sqrt();
    (r, -r)
}

/// Chiral index: sign of the determinant of the off-diagonal block of `h`
/// between the two eigenspaces of `gamma`, relative to the reference.
fn chiral_z2(g: &GeneratorPair, gamma: &ComplexMatrix, within: Option<(&ComplexMatrix, C64)>) -> Result<i64> {
    let outer = match within {
        Some((op, lambda)) => sector(op, lambda),
        None => DMatrix::identity(g.h0.dim(), g.h0.dim()),
    };
    if outer.ncols() == 0 {
        return Ok(0);
    }
    let gamma_r = ComplexMatrix::new(restrict(gamma, &outer))?;
    let (p, q) = root_pair(&gamma_r);
    let (bp, bq) = (&outer * sector(&gamma_r, p), &outer * sector(&gamma_r, q));
    let block = |h: &ComplexMatrix| bp.adjoint() * h.as_matrix() * &bq;
    relative_det_sign(&block(&g.h1), &block(&g.h0))
}

fn identity_reduce(g: &GeneratorPair) -> Result<GeneratorPair> {
    Ok(g.clone())
}

/// `eta H` with the listed inherited operators, each given as a product of
/// the generator's own operators.
fn eta_reduce(g: &GeneratorPair, inherited: &[(&'static str, SymmetryKind)]) -> Result<GeneratorPair> {
    let eta = g.op("η")?;
    let mut ops = Vec::new();
    for &(name, kind) in inherited {
        let matrix = match name {
            "T" => g.op("T")?.clone(),
            "ηC" => eta * g.op("C")?,
            "ηΓ" => eta * g.op("Γ")?,
            "ηCT†" => &(eta * g.op("C")?) * &g.op("T")?.adjoint(),
            other => return Err(Error::UnknownId(format!("inherited operator {other}"))),
        };
        ops.push(named(name, kind, matrix));
    }
    GeneratorPair::new(&format!("{} (eta H)", g.label), ops, &[], eta * &g.h0, eta * &g.h1)
}

/// `h1` equal to `h0` outside the `lambda` eigenspace of `op` and to `-h0` inside.
fn flip_in_sector(h0: &ComplexMatrix, op: &ComplexMatrix, lambda: C64) -> ComplexMatrix {
    let b = sector(op, lambda);
    let p = ComplexMatrix::new(&b * b.adjoint()).expect("finite projector");
    let reflect = &ComplexMatrix::identity(h0.dim()) - &p.scale_re(2.0);
    &reflect * h0
}

fn one() -> ComplexMatrix {
    ComplexMatrix::identity(1)
}

fn scalar(x: f64) -> ComplexMatrix {
    ComplexMatrix::scalar(c64(x, 0.0))
}

const I: C64 = C64 { re: 0.0, im: 1.0 };
const PLUS: C64 = C64 { re: 1.0, im: 0.0 };
const MINUS: C64 = C64 { re: -1.0, im: 0.0 };

fn class(family: Family, s: i64, t: Option<i64>) -> SymmetryClassId {
    SymmetryClassId::new(family, s, t).expect("catalog class")
}

fn block_1() -> Result<BlockModel> {
    let gen = |label, eta: f64| {
        GeneratorPair::new(label, vec![named("η", PseudoHermitian, scalar(eta))], &[], one(), scalar(-1.0))
    };
    Ok(BlockModel {
        id: 1,
        slug: "A+eta",
        class: class(Family::ComplexAzU, 0, Some(0)),
        hermitian: vec![gen("(1,0)", 1.0)?, gen("(0,1)", -1.0)?],
        point: vec![GeneratorPair::new("eta H", vec![], &[], one(), scalar(-1.0))?],
        method: "negative eigenvalues of eta H",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?, dsig(g, Some((g.op("η")?, MINUS)))?]),
        reduce: |g| eta_reduce(g, &[]),
        p: |g| Ok(vec![dsig(g, None)?]),
    })
}

fn block_2() -> Result<BlockModel> {
    let g = GeneratorPair::new("T=1", vec![named("T", Trs, one())], &[], one(), scalar(-1.0))?;
    Ok(BlockModel {
        id: 2,
        slug: "AI",
        class: class(Family::RealAz, 0, None),
        hermitian: vec![g.clone()],
        point: vec![g],
        method: "sign of det H in the real gauge T = 1",
        lr: |g| Ok(vec![dsig(g, None)?]),
        reduce: identity_reduce,
        p: |g| Ok(vec![relative_det_sign(g.h1.as_matrix(), g.h0.as_matrix())?]),
    })
}

fn block_3() -> Result<BlockModel> {
    let herm = GeneratorPair::new("C=1", vec![named("C", PhsDagger, m("0"))], &[], m("y"), neg(&m("y")))?;
    let point = GeneratorPair::new(
        "C=1, H=±i",
        vec![named("C", PhsDagger, one())],
        &[],
        ComplexMatrix::scalar(I),
        ComplexMatrix::scalar(-I),
    )?;
    Ok(BlockModel {
        id: 3,
        slug: "D-dag",
        class: class(Family::RealAzDagger, 2, None),
        hermitian: vec![herm],
        point: vec![point],
        method: "sign of det(-iH), real when C = 1",
        lr: |g| Ok(vec![pf_z2(g, g.op("C")?, None)?]),
        reduce: identity_reduce,
        p: |g| Ok(vec![relative_det_sign(g.h1.as_matrix(), g.h0.as_matrix())?]),
    })
}

fn block_4() -> Result<BlockModel> {
    let g = GeneratorPair::new(
        "T=1, C=sx",
        vec![named("T", Trs, m("0")), named("C", Phs, m("x"))],
        &[],
        m("z"),
        neg(&m("z")),
    )?;
    Ok(BlockModel {
        id: 4,
        slug: "BDI",
        class: class(Family::RealAz, 1, None),
        hermitian: vec![g.clone()],
        point: vec![g],
        method: "sign of Pf(H u_C), H u_C being antisymmetric",
        lr: |g| Ok(vec![chiral_z2(g, &(g.op("T")? * &g.op("C")?.conj()), None)?]),
        reduce: identity_reduce,
        p: |g| Ok(vec![pf_z2(g, g.op("C")?, None)?]),
    })
}

fn block_5() -> Result<BlockModel> {
    let gen = |label, sign: f64| {
        GeneratorPair::new(
            label,
            vec![named("η", PseudoHermitian, m("0").scale_re(sign)), named("C", Phs, m("0"))],
            &[(Phs, PseudoHermitian, 1)],
            m("y"),
            neg(&m("y")),
        )
    };
    Ok(BlockModel {
        id: 5,
        slug: "D+eta+",
        class: class(Family::RealAzU, 2, Some(0)),
        hermitian: vec![gen("(1,0)", 1.0)?, gen("(0,1)", -1.0)?],
        point: vec![GeneratorPair::new("eta H", vec![named("ηC", Phs, m("0"))], &[], m("y"), neg(&m("y")))?],
        method: "class D Pfaffian of eta H with eta C",
        lr: |g| {
            let (eta, c) = (g.op("η")?, g.op("C")?);
            Ok(vec![pf_z2(g, c, Some((eta, PLUS)))?, pf_z2(g, c, Some((eta, MINUS)))?])
        },
        reduce: |g| eta_reduce(g, &[("ηC", Phs)]),
        p: |g| Ok(vec![pf_z2(g, g.op("ηC")?, None)?]),
    })
}

fn block_6() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=sy, C=1",
        vec![named("η", PseudoHermitian, m("y")), named("C", Phs, m("0"))],
        &[(Phs, PseudoHermitian, -1)],
        m("y"),
        neg(&m("y")),
    )?;
    let point = GeneratorPair::new("eta H", vec![named("ηC", Trs, m("y"))], &[], m("0"), neg(&m("0")))?;
    Ok(BlockModel {
        id: 6,
        slug: "D+eta-",
        class: class(Family::RealAzU, 2, Some(2)),
        hermitian: vec![herm],
        point: vec![point],
        method: "negative eigenvalues of eta H, Kramers paired by eta C",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηC", Trs)]),
        p: |g| Ok(vec![dsig(g, None)?]),
    })
}

fn block_7() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=sy, C=sy",
        vec![named("η", PseudoHermitian, m("y")), named("C", Phs, m("y"))],
        &[(Phs, PseudoHermitian, -1)],
        m("y"),
        neg(&m("y")),
    )?;
    let point = GeneratorPair::new("eta H", vec![named("ηC", Trs, one())], &[], one(), scalar(-1.0))?;
    Ok(BlockModel {
        id: 7,
        slug: "C+eta-",
        class: class(Family::RealAzU, 6, Some(2)),
        hermitian: vec![herm],
        point: vec![point],
        method: "negative eigenvalues of eta H",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηC", Trs)]),
        p: |g| Ok(vec![dsig(g, None)?]),
    })
}

fn block_8() -> Result<BlockModel> {
    let gen = |label, eta: f64| {
        GeneratorPair::new(
            label,
            vec![named("η", PseudoHermitian, scalar(eta)), named("T", Trs, one())],
            &[(Trs, PseudoHermitian, 1)],
            one(),
            scalar(-1.0),
        )
    };
    Ok(BlockModel {
        id: 8,
        slug: "AI+eta+",
        class: class(Family::RealAzU, 0, Some(0)),
        hermitian: vec![gen("(1,0)", 1.0)?, gen("(0,1)", -1.0)?],
        point: vec![GeneratorPair::new("eta H", vec![named("T", Trs, one())], &[], one(), scalar(-1.0))?],
        method: "negative eigenvalues of eta H",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?, dsig(g, Some((g.op("η")?, MINUS)))?]),
        reduce: |g| eta_reduce(g, &[("T", Trs)]),
        p: |g| Ok(vec![dsig(g, None)?]),
    })
}

fn block_9() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "T=1, eta=sy",
        vec![named("T", Trs, m("0")), named("η", PseudoHermitian, m("y"))],
        &[(Trs, PseudoHermitian, -1)],
        m("0"),
        neg(&m("0")),
    )?;
    let point = GeneratorPair::new("eta H", vec![named("T", Phs, m("0"))], &[], m("y"), neg(&m("y")))?;
    Ok(BlockModel {
        id: 9,
        slug: "AI+eta-",
        class: class(Family::RealAzU, 0, Some(2)),
        hermitian: vec![herm],
        point: vec![point],
        method: "class D Pfaffian of eta H, with T acting as particle-hole symmetry",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("T", Phs)]),
        p: |g| Ok(vec![pf_z2(g, g.op("T")?, None)?]),
    })
}

fn block_10() -> Result<BlockModel> {
    let gen = |label, eta: f64| {
        GeneratorPair::new(
            label,
            vec![named("η", PseudoHermitian, m("0").scale_re(eta)), named("T", Trs, m("y"))],
            &[(Trs, PseudoHermitian, 1)],
            m("0"),
            neg(&m("0")),
        )
    };
    Ok(BlockModel {
        id: 10,
        slug: "AII+eta+",
        class: class(Family::RealAzU, 4, Some(0)),
        hermitian: vec![gen("(1,0)", 1.0)?, gen("(0,1)", -1.0)?],
        point: vec![GeneratorPair::new("eta H", vec![named("T", Trs, m("y"))], &[], m("0"), neg(&m("0")))?],
        method: "negative eigenvalues of eta H, Kramers paired",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?, dsig(g, Some((g.op("η")?, MINUS)))?]),
        reduce: |g| eta_reduce(g, &[("T", Trs)]),
        p: |g| Ok(vec![dsig(g, None)?]),
    })
}

fn block_11() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=sz, Gamma=sx",
        vec![named("η", PseudoHermitian, m("z")), named("Γ", Chiral, m("x"))],
        &[(Chiral, PseudoHermitian, -1)],
        m("z"),
        neg(&m("z")),
    )?;
    let x = im("y");
    let point = |label, lambda| {
        GeneratorPair::new(
            label,
            vec![named("ηΓ", Unitary, x.clone())],
            &[],
            m("0"),
            flip_in_sector(&m("0"), &x, lambda),
        )
    };
    Ok(BlockModel {
        id: 11,
        slug: "AIII+S-,eta-",
        class: class(Family::ComplexAzU, 1, Some(1)),
        hermitian: vec![herm],
        point: vec![point("eta Gamma = +i", I)?, point("eta Gamma = -i", -I)?],
        method: "negative eigenvalues of eta H in the eta Gamma = ±i sectors",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηΓ", Unitary)]),
        p: |g| {
            let x = g.op("ηΓ")?;
            Ok(vec![dsig(g, Some((x, I)))?, dsig(g, Some((x, -I)))?])
        },
    })
}

fn block_12() -> Result<BlockModel> {
    let ops = || vec![named("T", Trs, m("0")), named("S", Sublattice, m("z"))];
    let signs = [(Trs, Sublattice, 1)];
    let herm = GeneratorPair::new("T=1, S=sz", ops(), &signs, m("x"), neg(&m("x")))?;
    let first = GeneratorPair::new("(1,0)", ops(), &signs, m("x"), real(&[&[0.0, -1.0], &[1.0, 0.0]]))?;
    let second = GeneratorPair::new("(0,1)", ops(), &signs, m("x"), real(&[&[0.0, 1.0], &[-1.0, 0.0]]))?;
    Ok(BlockModel {
        id: 12,
        slug: "AI+S+",
        class: class(Family::RealAzU, 0, Some(3)),
        hermitian: vec![herm],
        point: vec![first, second],
        method: "signs of det h1 and det h2, the off-diagonal blocks in the S = sz basis",
        lr: |g| Ok(vec![chiral_z2(g, g.op("S")?, None)?]),
        reduce: identity_reduce,
        p: |g| {
            let s = g.op("S")?;
            let (bp, bm) = (sector(s, PLUS), sector(s, MINUS));
            let upper = |h: &ComplexMatrix| bp.adjoint() * h.as_matrix() * &bm;
            let lower = |h: &ComplexMatrix| bm.adjoint() * h.as_matrix() * &bp;
            Ok(vec![
                relative_det_sign(&upper(&g.h1), &upper(&g.h0))?,
                relative_det_sign(&lower(&g.h1), &lower(&g.h0))?,
            ])
        },
    })
}

fn block_13() -> Result<BlockModel> {
    let gen = |label, eta: f64| {
        GeneratorPair::new(
            label,
            vec![
                named("η", PseudoHermitian, m("0").scale_re(eta)),
                named("T", Trs, m("0")),
                named("C", Phs, m("x")),
            ],
            &[(Trs, PseudoHermitian, 1), (Phs, PseudoHermitian, 1), (Trs, Phs, 1)],
            m("z"),
            neg(&m("z")),
        )
    };
    let point = GeneratorPair::new(
        "eta H",
        vec![named("T", Trs, m("0")), named("ηC", Phs, m("x"))],
        &[],
        m("z"),
        neg(&m("z")),
    )?;
    Ok(BlockModel {
        id: 13,
        slug: "BDI+S++,eta++",
        class: class(Family::RealAzU, 1, Some(0)),
        hermitian: vec![gen("(1,0)", 1.0)?, gen("(0,1)", -1.0)?],
        point: vec![point],
        method: "class BDI chiral index of eta H with T and eta C",
        lr: |g| {
            let (eta, gamma) = (g.op("η")?, g.op("T")? * &g.op("C")?.conj());
            Ok(vec![chiral_z2(g, &gamma, Some((eta, PLUS)))?, chiral_z2(g, &gamma, Some((eta, MINUS)))?])
        },
        reduce: |g| eta_reduce(g, &[("T", Trs), ("ηC", Phs)]),
        p: |g| Ok(vec![chiral_z2(g, &(g.op("T")? * &g.op("ηC")?.conj()), None)?]),
    })
}

fn block_14() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=sz, T=1, C=sx",
        vec![named("η", PseudoHermitian, m("z")), named("T", Trs, m("0")), named("C", Phs, m("x"))],
        &[(Trs, PseudoHermitian, 1), (Phs, PseudoHermitian, -1), (Trs, Phs, 1)],
        m("z"),
        neg(&m("z")),
    )?;
    let point = GeneratorPair::new(
        "eta C T^dag = i sy",
        vec![named("ηCT†", Unitary, im("y")), named("T", Trs, m("0"))],
        &[],
        m("0"),
        neg(&m("0")),
    )?;
    Ok(BlockModel {
        id: 14,
        slug: "BDI+S-+,eta+-",
        class: class(Family::RealAzU, 1, Some(1)),
        hermitian: vec![herm],
        point: vec![point],
        method: "negative eigenvalues of eta H in the eta C T^dag = +i sector",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηCT†", Unitary), ("T", Trs)]),
        p: |g| Ok(vec![dsig(g, Some((g.op("ηCT†")?, I)))?]),
    })
}

fn block_15() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=sz t0, T=sx t0, C=1",
        vec![named("η", PseudoHermitian, m("z0")), named("T", Trs, m("x0")), named("C", Phs, m("00"))],
        &[(Trs, PseudoHermitian, -1), (Phs, PseudoHermitian, 1), (Trs, Phs, 1)],
        m("zy"),
        neg(&m("zy")),
    )?;
    let x = im("y0");
    let point = |label, lambda| {
        GeneratorPair::new(
            label,
            vec![named("ηCT†", Unitary, x.clone()), named("T", Phs, m("x0"))],
            &[],
            m("0y"),
            flip_in_sector(&m("0y"), &x, lambda),
        )
    };
    Ok(BlockModel {
        id: 15,
        slug: "BDI+S+-,eta-+",
        class: class(Family::RealAzU, 1, Some(3)),
        hermitian: vec![herm],
        point: vec![point("eta C T^dag = +i", I)?, point("eta C T^dag = -i", -I)?],
        method: "class D Pfaffian of eta H inside each eta C T^dag = ±i sector, T acting as particle-hole symmetry",
        lr: |g| Ok(vec![pf_z2(g, g.op("C")?, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηCT†", Unitary), ("T", Phs)]),
        p: |g| {
            let (x, t) = (g.op("ηCT†")?, g.op("T")?);
            Ok(vec![pf_z2(g, t, Some((x, I)))?, pf_z2(g, t, Some((x, -I)))?])
        },
    })
}

/// Point generators flipping the sign of `h0 = 1` in one eigenspace of `x`.
fn sector_points(x: &ComplexMatrix, t: ComplexMatrix, lambdas: [C64; 2]) -> Result<Vec<GeneratorPair>> {
    let n = x.dim();
    lambdas
        .iter()
        .map(|&lambda| {
            GeneratorPair::new(
                &format!("eta C T^dag = {}", if lambda == PLUS { "+1" } else { "-1" }),
                vec![named("ηCT†", Unitary, x.clone()), named("T", Trs, t.clone())],
                &[],
                ComplexMatrix::identity(n),
                flip_in_sector(&ComplexMatrix::identity(n), x, lambda),
            )
        })
        .collect()
}

fn block_16() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=s0 tz, T=i sy t0, C=s0 tx",
        vec![named("η", PseudoHermitian, m("0z")), named("T", Trs, im("y0")), named("C", Phs, m("0x"))],
        &[(Trs, PseudoHermitian, 1), (Phs, PseudoHermitian, -1), (Trs, Phs, 1)],
        m("0z"),
        neg(&m("0z")),
    )?;
    Ok(BlockModel {
        id: 16,
        slug: "DIII+S+-,eta+-",
        class: class(Family::RealAzU, 3, Some(3)),
        hermitian: vec![herm],
        point: sector_points(&m("yy"), im("y0"), [PLUS, MINUS])?,
        method: "negative eigenvalues of eta H in the eta C T^dag = ±1 sectors, Kramers paired",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηCT†", Unitary), ("T", Trs)]),
        p: |g| {
            let x = g.op("ηCT†")?;
            Ok(vec![dsig(g, Some((x, PLUS)))?, dsig(g, Some((x, MINUS)))?])
        },
    })
}

fn block_17() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=s0 tz, T=i sy t0, C=i s0 ty",
        vec![named("η", PseudoHermitian, m("0z")), named("T", Trs, im("y0")), named("C", Phs, im("0y"))],
        &[(Trs, PseudoHermitian, 1), (Phs, PseudoHermitian, -1), (Trs, Phs, 1)],
        m("0z"),
        neg(&m("0z")),
    )?;
    let point = GeneratorPair::new(
        "eta C T^dag = i sy",
        vec![named("ηCT†", Unitary, im("y")), named("T", Trs, im("y"))],
        &[],
        m("0"),
        neg(&m("0")),
    )?;
    Ok(BlockModel {
        id: 17,
        slug: "CII+S-+,eta+-",
        class: class(Family::RealAzU, 5, Some(1)),
        hermitian: vec![herm],
        point: vec![point],
        method: "negative eigenvalues of eta H in the eta C T^dag = +i sector",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηCT†", Unitary), ("T", Trs)]),
        p: |g| Ok(vec![dsig(g, Some((g.op("ηCT†")?, I)))?]),
    })
}

fn block_18() -> Result<BlockModel> {
    let herm = GeneratorPair::new(
        "eta=sz, T=1, C=i sy",
        vec![named("η", PseudoHermitian, m("z")), named("T", Trs, m("0")), named("C", Phs, im("y"))],
        &[(Trs, PseudoHermitian, 1), (Phs, PseudoHermitian, -1), (Trs, Phs, 1)],
        m("z"),
        neg(&m("z")),
    )?;
    Ok(BlockModel {
        id: 18,
        slug: "CI+S+-,eta+-",
        class: class(Family::RealAzU, 7, Some(3)),
        hermitian: vec![herm],
        point: sector_points(&m("x"), m("0"), [PLUS, MINUS])?,
        method: "negative eigenvalues of eta H in the eta C T^dag = ±1 sectors",
        lr: |g| Ok(vec![dsig(g, Some((g.op("η")?, PLUS)))?]),
        reduce: |g| eta_reduce(g, &[("ηCT†", Unitary), ("T", Trs)]),
        p: |g| {
            let x = g.op("ηCT†")?;
            Ok(vec![dsig(g, Some((x, PLUS)))?, dsig(g, Some((x, MINUS)))?])
        },
    })
}

/// All eighteen block models, in order.
pub fn block_models() -> Result<Vec<BlockModel>> {
    let builders: [fn() -> Result<BlockModel>; 18] = [
        block_1, block_2, block_3, block_4, block_5, block_6, block_7, block_8, block_9, block_10, block_11,
        block_12, block_13, block_14, block_15, block_16, block_17, block_18,
    ];
    builders.iter().map(|b| b()).collect()
}

/// Looks a block up by number (`"3"`), slug (`"D-dag"`) or class name (`"D†"`).
pub fn block_model(id: &str) -> Result<BlockModel> {
    let id = id.trim();
    let wanted_class = id.parse::<SymmetryClassId>().ok();
    block_models()?
        .into_iter()
        .find(|b| {
            id.parse::<u8>().is_ok_and(|n| n == b.id)
                || b.slug.eq_ignore_ascii_case(id)
                || wanted_class.is_some_and(|c| c == b.class)
        })
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn outcome<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(name, false, e.to_string());
                None
            }
        }
    }
}

fn residuals(rec: &mut Recorder, what: &str, g: &GeneratorPair) {
    for (i, fam) in g.families().iter().enumerate() {
        if let Some(res) = rec.outcome(what, verify_spec(fam, &g.spec)) {
            let worst = res.iter().map(|r| r.1).fold(0.0, f64::max);
            rec.push(
                format!("{what}: symmetries of h{i}"),
                worst < RESIDUAL_TOL,
                format!("largest residual {worst:.1e}"),
            );
        }
    }
}

fn unit_of(factor_scale: u64) -> i64 {
    factor_scale as i64
}

/// Runs every check on one block.
pub fn verify_block(id: &str) -> Result<BlockReport> {
    let block = block_model(id)?;
    let expected = standard_blocks()
        .into_iter()
        .find(|b| b.id == block.id)
        .ok_or_else(|| Error::UnknownId(block.id.to_string()))?;
    let domain = k_group(block.class, Gap::Lr, 0);
    let codomain = k_group(block.class, Gap::P, 0);
    let mut rec = Recorder { checks: Vec::new() };

    for g in &block.hermitian {
        residuals(&mut rec, &format!("Hermitian generator {}", g.label), g);
        if let Some(c) = rec.outcome("class detection", detect_class(&g.spec)) {
            rec.push(format!("class of generator {}", g.label), c == block.class, format!("detected {c}"));
        }
        for (i, h) in [&g.h0, &g.h1].iter().enumerate() {
            let herm = h.hermitian_residual();
            let fam = HamiltonianFamily::zero_dim((*h).clone());
            if let Some(r) = rec.outcome("gap", gap_report(&fam, GAP_TOL)) {
                rec.push(
                    format!("{}: h{i} Hermitian with a real line gap", g.label),
                    herm < RESIDUAL_TOL && r.real_line_gapped,
                    format!("Hermitian residual {herm:.1e}, |Re E| >= {:.3}", r.real_line_margin),
                );
            }
        }
        if let Some(reduced) = rec.outcome("reduction", block.reduced(g)) {
            residuals(&mut rec, &format!("reduced {}", g.label), &reduced);
        }
    }
    for g in &block.point {
        residuals(&mut rec, &format!("point generator {}", g.label), g);
        for (i, fam) in g.families().iter().enumerate() {
            if let Some(r) = rec.outcome("gap", gap_report(fam, GAP_TOL)) {
                rec.push(
                    format!("point generator {}: h{i} point gapped", g.label),
                    r.point_gapped,
                    format!("smallest singular value {:.3}", r.point_gap_margin),
                );
            }
        }
    }

    let lr_units: Vec<i64> = domain.factors().iter().map(|f| unit_of(f.scale)).collect();
    let p_units: Vec<Option<i64>> = codomain.factors().iter().map(|_| None).collect();
    let mut p_units = p_units;
    for (i, g) in block.point.iter().enumerate() {
        let Some(v) = rec.outcome("point invariant", block.p_invariant(g)) else { continue };
        let normalized = reduce_mod(&codomain, &v);
        let nonzero: Vec<usize> = (0..normalized.len()).filter(|&j| normalized[j] != 0).collect();
        let ok = nonzero == vec![i] || (block.point.len() == 1 && nonzero.len() == codomain.rank());
        rec.push(format!("point generator {} spans its factor", g.label), ok, format!("invariants {v:?}"));
        for &j in &nonzero {
            p_units[j].get_or_insert(v[j]);
        }
    }

    let mut derived = vec![vec![0i64; domain.rank()]; codomain.rank()];
    for (j, g) in block.hermitian.iter().enumerate() {
        if let Some(v) = rec.outcome("real-line invariant", block.lr_invariant(g)) {
            let mut want = vec![0i64; domain.rank()];
            want[j] = lr_units[j];
            let got = reduce_mod(&domain, &v);
            rec.push(
                format!("Hermitian generator {} is the generator of factor {j}", g.label),
                got == reduce_mod(&domain, &want),
                format!("invariants {v:?}"),
            );
        }
        let image = block.reduced(g).and_then(|r| block.p_invariant(&r));
        let Some(image) = rec.outcome("point invariant of Hermitian generator", image) else { continue };
        for (i, &x) in image.iter().enumerate() {
            match p_units.get(i).copied().flatten() {
                Some(u) if x % u == 0 => derived[i][j] = x / u,
                Some(u) => rec.push("image is a multiple of the point generator", false, format!("{x} / {u}")),
                None => rec.push("point unit", false, format!("no point generator covers factor {i}")),
            }
        }
    }

    let derived_hom = rec.outcome("derived map", GroupHom::new(domain.clone(), codomain.clone(), derived.clone()));
    let expected_hom = rec.outcome("expected map", expected.hom());
    if let (Some(d), Some(e)) = (&derived_hom, &expected_hom) {
        rec.push(
            "derived map equals the block",
            d.matrix() == e.matrix(),
            format!("derived {:?}, expected {:?}", d.matrix(), e.matrix()),
        );
    }
    if block.id == 4 {
        let possible = one_by_one_point_gap_possible(&[Trs, Phs])?;
        rec.push("no 1x1 point-gapped model", !possible, "TRS and PHS force a 1x1 Hamiltonian to vanish");
    }
    let map = derived_hom.as_ref().map(|h| h.map_string()).unwrap_or_default();
    let passed = rec.checks.iter().all(|c| c.passed);
    Ok(BlockReport {
        id: block.id,
        slug: block.slug.to_string(),
        class: block.class.name(),
        domain: domain.to_string(),
        codomain: codomain.to_string(),
        method: block.method.to_string(),
        derived: derived_hom.map(|h| h.matrix().to_vec()).unwrap_or(derived),
        expected: expected.matrix.clone(),
        map,
        checks: rec.checks,
        passed,
    })
}

fn reduce_mod(g: &AbelianGroup, v: &[i64]) -> Vec<i64> {
    v.iter()
        .zip(g.factors())
        .map(|(&x, f)| if f.modulus == 0 { x } else { x.rem_euclid(f.modulus as i64) })
        .collect()
}

/// Whether any nonzero 1x1 Hamiltonian respects symmetries of the given
/// kinds. Phases of 1x1 operators drop out of the action, so it is enough
/// to project `1` and `i` with unit operators.
pub fn one_by_one_point_gap_possible(kinds: &[SymmetryKind]) -> Result<bool> {
    let ops = kinds.iter().map(|&k| SymmetryOp::new(k, one())).collect::<Result<Vec<_>>>()?;
    let spec = SymmetrySpec::new(ops)?;
    for z in [c64(1.0, 0.0), I] {
        let fam = HamiltonianFamily::zero_dim(ComplexMatrix::scalar(z));
        if symmetrize(&fam, &spec)?.sample(0).max_abs() > 1e-12 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Reports for all eighteen blocks.
pub fn verify_all_blocks() -> Result<Vec<BlockReport>> {
    (1..=18).map(|i| verify_block(&i.to_string())).collect()
}
