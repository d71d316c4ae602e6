//! The JSON model file: a catalog reference or explicit samples, plus the
//! symmetry operators.

use std::collections::BTreeMap;
use std::path::Path;

use nhtopo::models::{catalog_build, Params};
use nhtopo::symmetry::{SymmetryKind, SymmetryOp, SymmetrySpec};
use nhtopo::{c64, ComplexMatrix, Error, HamiltonianFamily};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA: u32 = 1;

/// `[re, im]` pairs, row-major.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub schema: u32,
    pub d: usize,
    pub grid: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogRef>,
    /// One matrix per grid point, in the family's flat order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<MatrixJson>>,
    #[serde(default)]
    pub symmetries: Vec<SymmetryEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRef {
    pub name: String,
    /// Label of one model inside the entry; the first when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryEntry {
    pub kind: String,
    pub matrix: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_sign: Option<i8>,
    /// Sign `s` in `U_a U_b^{phi_a} = s U_b U_a^{phi_b}` for later operators.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub commutation_signs: BTreeMap<String, i8>,
}

/// A loaded model.
#[derive(Clone, Debug)]
pub struct Model {
    pub family: HamiltonianFamily,
    pub spec: SymmetrySpec,
}

pub fn kind_spelling(kind: SymmetryKind) -> &'static str {
    match kind {
        SymmetryKind::Unitary => "U",
        SymmetryKind::Trs => "TRS",
        SymmetryKind::Phs => "PHS",
        SymmetryKind::Chiral => "CS",
        SymmetryKind::PseudoHermitian => "pH",
        SymmetryKind::TrsDagger => "TRSdag",
        SymmetryKind::PhsDagger => "PHSdag",
        SymmetryKind::Sublattice => "SLS",
    }
}

fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect()).collect()
}

fn matrix_from_json(rows: &MatrixJson) -> Result<ComplexMatrix, CliError> {
    let rows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&[re, im]| c64(re, im)).collect()).collect();
    Ok(ComplexMatrix::from_rows(&rows)?)
}

fn spec_to_json(spec: &SymmetrySpec) -> Vec<SymmetryEntry> {
    spec.ops()
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let commutation_signs = spec.ops()[i + 1..]
                .iter()
                .filter_map(|other| spec.sign(op.kind(), other.kind()).map(|s| (kind_spelling(other.kind()).to_string(), s)))
                .collect();
            SymmetryEntry {
                kind: kind_spelling(op.kind()).into(),
                matrix: matrix_to_json(op.matrix()),
                square_sign: op.square_sign(),
                commutation_signs,
            }
        })
        .collect()
}

fn spec_from_json(entries: &[SymmetryEntry]) -> Result<SymmetrySpec, CliError> {
    let mut ops = Vec::new();
    let mut declared = Vec::new();
    for e in entries {
        let kind: SymmetryKind = e.kind.parse()?;
        let matrix = matrix_from_json(&e.matrix)?;
        ops.push(match e.square_sign {
            Some(s) => SymmetryOp::with_square_sign(kind, matrix, s)?,
            None => SymmetryOp::new(kind, matrix)?,
        });
        for (other, &sign) in &e.commutation_signs {
            declared.push((kind, other.parse()?, sign));
        }
    }
    Ok(SymmetrySpec::with_declared_signs(ops, &declared)?)
}

impl ModelFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
        if file.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema version {}", file.schema)).into());
        }
        if file.catalog.is_some() == file.samples.is_some() {
            return Err(Error::Parse("a model file needs exactly one of `catalog` and `samples`".into()).into());
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }

    /// Explicit samples of a family.
    pub fn from_model(model: &Model) -> Self {
        let h = &model.family;
        ModelFile {
            schema: SCHEMA,
            d: h.dim(),
            grid: h.grid_size(),
            size: h.matrix_size(),
            catalog: None,
            samples: Some(h.samples().iter().map(matrix_to_json).collect()),
            symmetries: spec_to_json(&model.spec),
        }
    }

    /// A catalog reference, with the symmetries written out.
    pub fn from_catalog(name: &str, label: &str, params: BTreeMap<String, f64>, model: &Model) -> Self {
        ModelFile {
            catalog: Some(CatalogRef { name: name.into(), model: Some(label.into()), params }),
            samples: None,
            ..Self::from_model(model)
        }
    }

    pub fn load(&self) -> Result<Model, CliError> {
        let model = match (&self.catalog, &self.samples) {
            (Some(c), _) => {
                let params: Params = c.params.clone();
                let entry = catalog_build(&c.name, &params)?;
                let m = match &c.model {
                    Some(label) => entry.model(label)?,
                    None => entry.models.first().ok_or_else(|| Error::UnknownId(c.name.clone()))?,
                };
                let spec = if self.symmetries.is_empty() { m.symmetry.clone() } else { spec_from_json(&self.symmetries)? };
                Model { family: m.family.clone(), spec }
            }
            (None, Some(samples)) => {
                let matrices = samples.iter().map(matrix_from_json).collect::<Result<Vec<_>, _>>()?;
                let family = HamiltonianFamily::from_samples(self.d, self.grid, matrices)?;
                Model { family, spec: spec_from_json(&self.symmetries)? }
            }
            (None, None) => unreachable!("checked in parse"),
        };
        let h = &model.family;
        if h.dim() != self.d {
            return Err(Error::InvalidGrid(format!("file says d = {}, model has d = {}", self.d, h.dim())).into());
        }
        if h.dim() > 0 && h.grid_size() != self.grid {
            return Err(Error::InvalidGrid(format!("file says grid = {}, model has {}", self.grid, h.grid_size())).into());
        }
        if h.matrix_size() != self.size {
            return Err(Error::SizeMismatch { expected: self.size, found: h.matrix_size() }.into());
        }
        if let Some(op) = model.spec.ops().first() {
            if op.dim() != self.size {
                return Err(Error::SizeMismatch { expected: self.size, found: op.dim() }.into());
            }
        }
        Ok(model)
    }
}
