//! Named models: the eighteen blocks and a handful of lattice exemplars.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaps::gap_report;
use crate::hamiltonian::{c64, ComplexMatrix, HamiltonianFamily};
use crate::symmetry::{verify_spec, SymmetryKind, SymmetryOp, SymmetrySpec};

use super::blocks::{block_model, block_models, Check};

/// Numeric knobs of a parametrized model.
pub type Params = BTreeMap<String, f64>;

/// The gap a model is claimed to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapClaim {
    Point,
    RealLine,
    ImagLine,
    BothLines,
}

#[derive(Clone, Debug)]
pub struct CatalogModel {
    pub label: String,
    pub family: HamiltonianFamily,
    pub symmetry: SymmetrySpec,
    pub gap: GapClaim,
}

/// An expected invariant, per model label, with the statement it supports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub invariant: String,
    pub values: Vec<(String, Vec<i64>)>,
    pub statement: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub title: String,
    pub models: Vec<CatalogModel>,
    pub claims: Vec<Claim>,
}

impl CatalogEntry {
    pub fn model(&self, label: &str) -> Result<&CatalogModel> {
        self.models
            .iter()
            .find(|m| m.label == label)
            .ok_or_else(|| Error::UnknownId(format!("{} has no model {label}", self.id)))
    }

    /// Symmetry residuals and gap verdicts of every model.
    pub fn check(&self, residual_tol: f64, gap_tol: f64) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for m in &self.models {
            let worst = verify_spec(&m.family, &m.symmetry)?.iter().map(|r| r.1).fold(0.0, f64::max);
            out.push(Check {
                name: format!("{}: symmetries", m.label),
                passed: worst < residual_tol,
                detail: format!("largest residual {worst:.1e}"),
            });
            let g = gap_report(&m.family, gap_tol)?;
            let ok = match m.gap {
                GapClaim::Point => g.point_gapped,
                GapClaim::RealLine => g.real_line_gapped,
                GapClaim::ImagLine => g.imag_line_gapped,
                GapClaim::BothLines => g.real_line_gapped && g.imag_line_gapped,
            };
            out.push(Check {
                name: format!("{}: {:?} gap", m.label, m.gap),
                passed: ok,
                detail: format!(
                    "point {:.3}, real line {:.3}, imaginary line {:.3}",
                    g.point_gap_margin, g.real_line_margin, g.imag_line_margin
                ),
            });
        }
        Ok(out)
    }
}

/// Exemplar names accepted by [`catalog_get`].
pub const EXEMPLARS: [&str; 5] = ["hatano", "qwz-chern", "a+s-1d", "aiii+s-2d-real", "aiii+s-2d-imag"];

/// Every id in the catalog: block numbers, then exemplars.
pub fn catalog_ids() -> Vec<String> {
    (1..=18).map(|i| i.to_string()).chain(EXEMPLARS.iter().map(|s| s.to_string())).collect()
}

/// Looks up an entry with default parameters.
pub fn catalog_get(id: &str) -> Result<CatalogEntry> {
    catalog_build(id, &Params::new())
}

/// Builds an entry. Blocks accept a number, slug or class name; exemplars
/// take the parameters listed in their constructors.
pub fn catalog_build(id: &str, params: &Params) -> Result<CatalogEntry> {
    let key = id.trim().to_ascii_lowercase();
    let p = Knobs { params, used: Vec::new() };
    let entry = match key.as_str() {
        "hatano" => hatano_entry(p),
        "qwz-chern" => qwz_entry(p),
        "a+s-1d" => a_plus_s_entry(p),
        "aiii+s-2d-real" => aiii_entry(p, false),
        "aiii+s-2d-imag" => aiii_entry(p, true),
        _ => {
            if !params.is_empty() {
                return Err(Error::Parse(format!("block {id} takes no parameters")));
            }
            block_entry(id)
        }
    }?;
    Ok(entry)
}

struct Knobs<'a> {
    params: &'a Params,
    used: Vec<&'static str>,
}

impl Knobs<'_> {
    fn get(&mut self, name: &'static str, default: f64) -> f64 {
        self.used.push(name);
        self.params.get(name).copied().unwrap_or(default)
    }

    fn grid(&mut self, default: usize) -> Result<usize> {
        let n = self.get("n", default as f64);
        if n.fract() != 0.0 || n < 1.0 {
            return Err(Error::InvalidGrid(format!("n = {n}")));
        }
        Ok(n as usize)
    }

    fn finish(self) -> Result<()> {
        match self.params.keys().find(|k| !self.used.contains(&k.as_str())) {
            Some(k) => Err(Error::Parse(format!("unknown parameter {k:?}"))),
            None => Ok(()),
        }
    }
}

/// `t_r e^{ik} + t_l e^{-ik}`, a single band.
pub fn hatano(tr: f64, tl: f64, n: usize) -> Result<HamiltonianFamily> {
    HamiltonianFamily::from_fn(1, n, |k| {
        let z = c64(0.0, k[0]).exp().scale(tr) + c64(0.0, -k[0]).exp().scale(tl);
        ComplexMatrix::scalar(z)
    })
}

/// The two-band lattice model `sin kx sx + sin ky sy + (m - cos kx - cos ky) sz`.
pub fn qwz(mass: f64, n: usize) -> Result<HamiltonianFamily> {
    HamiltonianFamily::from_fn(2, n, |k| qwz_at(mass, k))
}

fn qwz_at(mass: f64, k: &[f64]) -> ComplexMatrix {
    let d = [k[0].sin(), k[1].sin(), mass - k[0].cos() - k[1].cos()];
    (1..=3).fold(ComplexMatrix::zeros(2), |acc, i| &acc + &ComplexMatrix::pauli(i).scale_re(d[i - 1]))
}

/// `[[0, h1], [h2, 0]]` from two equally sized blocks.
pub fn off_diagonal(h1: &ComplexMatrix, h2: &ComplexMatrix) -> ComplexMatrix {
    let n = h1.dim();
    let mut m = nalgebra::DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, n), (n, n)).copy_from(h1.as_matrix());
    m.view_mut((n, 0), (n, n)).copy_from(h2.as_matrix());
    ComplexMatrix::new(m).expect("finite blocks")
}

/// Splits a family of `[[a, h1], [h2, b]]` into the off-diagonal blocks.
pub fn split_off_diagonal(h: &HamiltonianFamily) -> Result<(HamiltonianFamily, HamiltonianFamily)> {
    let size = h.matrix_size();
    if size % 2 == 1 {
        return Err(Error::SizeMismatch { expected: size + 1, found: size });
    }
    let (top, bottom): (Vec<usize>, Vec<usize>) = ((0..size / 2).collect(), (size / 2..size).collect());
    let pick = |rows: &[usize], cols: &[usize]| {
        h.try_map(|m| ComplexMatrix::new(m.block(rows, cols)))
    };
    Ok((pick(&top, &bottom)?, pick(&bottom, &top)?))
}

/// A+S chain: `h1 = e^{iwk}`, `h2 = i (1 + a cos k) e^{-iwk}`, `S = sz`.
/// Both line gaps are open since `h1 h2` stays on the positive imaginary axis.
pub fn a_plus_s(w: i64, a: f64, n: usize) -> Result<HamiltonianFamily> {
    HamiltonianFamily::from_fn(1, n, |k| {
        let phase = c64(0.0, w as f64 * k[0]).exp();
        let h1 = ComplexMatrix::scalar(phase);
        let h2 = ComplexMatrix::scalar(c64(0.0, 1.0 + a * k[0].cos()) * phase.conj());
        off_diagonal(&h1, &h2)
    })
}

/// AIII+S- plane: `h1` the two-band model at `mass`, `h2 = ratio h1 + p cos kx sx`.
/// Positive `ratio` opens a real line gap, negative an imaginary one.
pub fn aiii_s_minus(mass: f64, ratio: f64, p: f64, n: usize) -> Result<HamiltonianFamily> {
    HamiltonianFamily::from_fn(2, n, |k| {
        let h1 = qwz_at(mass, k);
        let h2 = &h1.scale_re(ratio) + &ComplexMatrix::pauli(1).scale_re(p * k[0].cos());
        off_diagonal(&h1, &h2)
    })
}

fn a_plus_s_spec() -> SymmetrySpec {
    let s = SymmetryOp::new(SymmetryKind::Sublattice, ComplexMatrix::pauli(3)).expect("unitary");
    SymmetrySpec::new(vec![s]).expect("single operator")
}

fn aiii_s_minus_spec() -> SymmetrySpec {
    let op = |k, s| SymmetryOp::new(k, ComplexMatrix::pauli_string(s).expect("Pauli")).expect("unitary");
    SymmetrySpec::new(vec![op(SymmetryKind::Chiral, "y0"), op(SymmetryKind::Sublattice, "z0")])
        .expect("consistent operators")
}

fn hatano_entry(mut p: Knobs) -> Result<CatalogEntry> {
    let (tr, tl, n) = (p.get("tr", 1.0), p.get("tl", 0.0), p.grid(8)?);
    p.finish()?;
    let expected = if tr.abs() > tl.abs() { 1 } else { -1 };
    Ok(CatalogEntry {
        id: "hatano".into(),
        title: "single-band chain with asymmetric hopping".into(),
        models: vec![CatalogModel {
            label: "H".into(),
            family: hatano(tr, tl, n)?,
            symmetry: SymmetrySpec::empty(),
            gap: GapClaim::Point,
        }],
        claims: vec![Claim {
            invariant: "det_winding".into(),
            values: vec![("H".into(), vec![expected])],
            statement: "spectral winding around E = 0".into(),
        }],
    })
}

fn qwz_entry(mut p: Knobs) -> Result<CatalogEntry> {
    let (mass, n) = (p.get("mass", 1.0), p.grid(24)?);
    p.finish()?;
    let c = if mass > 0.0 && mass < 2.0 {
        1
    } else if mass < 0.0 && mass > -2.0 {
        -1
    } else {
        0
    };
    Ok(CatalogEntry {
        id: "qwz-chern".into(),
        title: "two-band Chern insulator".into(),
        models: vec![CatalogModel {
            label: "H".into(),
            family: qwz(mass, n)?,
            symmetry: SymmetrySpec::empty(),
            gap: GapClaim::RealLine,
        }],
        claims: vec![Claim {
            invariant: "chern".into(),
            values: vec![("H".into(), vec![c])],
            statement: "Chern number of the lower band".into(),
        }],
    })
}

fn a_plus_s_entry(mut p: Knobs) -> Result<CatalogEntry> {
    let (w, a, n) = (p.get("w", 1.0), p.get("a", 0.2), p.grid(32)?);
    p.finish()?;
    if w.fract() != 0.0 {
        return Err(Error::Parse(format!("w must be an integer, got {w}")));
    }
    if a.abs() >= 1.0 {
        return Err(Error::Parse(format!("|a| must be below 1, got {a}")));
    }
    let w = w as i64;
    Ok(CatalogEntry {
        id: "a+s-1d".into(),
        title: "A+S chain with independent off-diagonal blocks".into(),
        models: vec![CatalogModel {
            label: "H".into(),
            family: a_plus_s(w, a, n)?,
            symmetry: a_plus_s_spec(),
            gap: GapClaim::BothLines,
        }],
        claims: vec![Claim {
            invariant: "winding".into(),
            values: vec![("h1".into(), vec![w]), ("h2".into(), vec![-w])],
            statement: "W(h2) = -W(h1), before and after flattening to either line gap".into(),
        }],
    })
}

fn aiii_entry(mut p: Knobs, imaginary: bool) -> Result<CatalogEntry> {
    let default_ratio = if imaginary { -0.6 } else { 0.6 };
    let (mass, ratio, pert, n) = (p.get("mass", 1.0), p.get("ratio", default_ratio), p.get("p", 0.15), p.grid(24)?);
    p.finish()?;
    let (c1, c2) = (1, if ratio > 0.0 { 1 } else { -1 });
    Ok(CatalogEntry {
        id: if imaginary { "aiii+s-2d-imag" } else { "aiii+s-2d-real" }.into(),
        title: format!(
            "AIII+S- plane with Hermitian blocks, {} line gap",
            if imaginary { "imaginary" } else { "real" }
        ),
        models: vec![CatalogModel {
            label: "H".into(),
            family: aiii_s_minus(mass, ratio, pert, n)?,
            symmetry: aiii_s_minus_spec(),
            gap: if imaginary { GapClaim::ImagLine } else { GapClaim::RealLine },
        }],
        claims: vec![Claim {
            invariant: "chern".into(),
            values: vec![("h1".into(), vec![c1]), ("h2".into(), vec![c2])],
            statement: if imaginary {
                "C(h2) = -C(h1) after flattening to the imaginary line gap"
            } else {
                "C(h2) = C(h1) after flattening to the real line gap"
            }
            .into(),
        }],
    })
}

fn block_entry(id: &str) -> Result<CatalogEntry> {
    let block = block_model(id)?;
    let spec = crate::ktable::standard_blocks()
        .into_iter()
        .find(|b| b.id == block.id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))?;
    let hom = spec.hom()?;
    let mut models = Vec::new();
    let mut lr_values = Vec::new();
    for (j, g) in block.hermitian.iter().enumerate() {
        for (tag, h) in [("H0", &g.h0), ("H1", &g.h1)] {
            models.push(CatalogModel {
                label: format!("{} {tag}", g.label),
                family: HamiltonianFamily::zero_dim(h.clone()),
                symmetry: g.spec.clone(),
                gap: GapClaim::RealLine,
            });
        }
        let mut v = vec![0; hom.domain().rank()];
        v[j] = hom.domain().factors()[j].scale as i64;
        lr_values.push((g.label.clone(), v));
    }
    for g in &block.point {
        for (tag, h) in [("H0", &g.h0), ("H1", &g.h1)] {
            models.push(CatalogModel {
                label: format!("point {} {tag}", g.label),
                family: HamiltonianFamily::zero_dim(h.clone()),
                symmetry: g.spec.clone(),
                gap: GapClaim::Point,
            });
        }
    }
    Ok(CatalogEntry {
        id: block.slug.to_string(),
        title: format!("{} block, {} -> {}", block.class, hom.domain(), hom.codomain()),
        models,
        claims: vec![
            Claim {
                invariant: "real line".into(),
                values: lr_values,
                statement: "each Hermitian generator spans one summand".into(),
            },
            Claim { invariant: "forgetful map".into(), values: vec![], statement: hom.map_string() },
        ],
    })
}

/// All block entries followed by the exemplars at default parameters.
pub fn catalog_all() -> Result<Vec<CatalogEntry>> {
    let mut out = block_models()?
        .iter()
        .map(|b| block_entry(&b.id.to_string()))
        .collect::<Result<Vec<_>>>()?;
    for name in EXEMPLARS {
        out.push(catalog_get(name)?);
    }
    Ok(out)
}
