use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::{k_group, Engine, Gap};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupHom};
use crate::symmetry::SymmetryClassId;

const EMBEDDED_RECORDS: &str = include_str!("../../data/oracle.tsv");
const EMBEDDED_ERRATA: &str = include_str!("../../data/errata.tsv");

/// A column of the classification tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    #[serde(rename = "K_P")]
    KP,
    #[serde(rename = "K_Lr")]
    KLr,
    #[serde(rename = "K_Li")]
    KLi,
    #[serde(rename = "f_r")]
    FR,
    #[serde(rename = "f_i")]
    FI,
    #[serde(rename = "intrinsic")]
    Intrinsic,
}

impl Field {
    pub const ALL: [Field; 6] = [Field::KP, Field::KLr, Field::KLi, Field::FR, Field::FI, Field::Intrinsic];

    pub fn name(self) -> &'static str {
        match self {
            Field::KP => "K_P",
            Field::KLr => "K_Lr",
            Field::KLi => "K_Li",
            Field::FR => "f_r",
            Field::FI => "f_i",
            Field::Intrinsic => "intrinsic",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Field::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One transcribed row: groups and maps as printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub class: SymmetryClassId,
    pub delta: u8,
    pub values: [String; 6],
}

impl OracleRecord {
    pub fn get(&self, field: Field) -> &str {
        &self.values[field as usize]
    }
}

/// A correction to a printed cell. It applies only while the record still
/// holds the printed value, so a re-keyed table is never silently patched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub class: SymmetryClassId,
    pub delta: u8,
    pub field: Field,
    pub printed: String,
    pub corrected: String,
    pub note: String,
}

/// Reference tables to compare generated output against.
#[derive(Clone, Debug)]
pub struct Oracle {
    records: Vec<OracleRecord>,
    errata: Vec<Erratum>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').map(str::trim).collect()))
}

fn parse_delta(s: &str, line: usize) -> Result<u8> {
    s.parse().ok().filter(|d| *d < 8).ok_or_else(|| Error::Parse(format!("line {line}: bad delta `{s}`")))
}

impl Oracle {
    /// The tables shipped with the crate.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_RECORDS, EMBEDDED_ERRATA).expect("embedded oracle data is well formed")
    }

    pub fn parse(records: &str, errata: &str) -> Result<Self> {
        let mut recs = Vec::new();
        for (line, cols) in data_lines(records) {
            if cols.len() != 8 {
                return Err(Error::Parse(format!("line {line}: expected 8 columns, found {}", cols.len())));
            }
            let values = std::array::from_fn(|i| cols[i + 2].to_string());
            recs.push(OracleRecord { class: cols[0].parse()?, delta: parse_delta(cols[1], line)?, values });
        }
        let mut errs = Vec::new();
        for (line, cols) in data_lines(errata) {
            if cols.len() < 5 {
                return Err(Error::Parse(format!("errata line {line}: expected at least 5 columns")));
            }
            errs.push(Erratum {
                class: cols[0].parse()?,
                delta: parse_delta(cols[1], line)?,
                field: Field::parse(cols[2])?,
                printed: cols[3].to_string(),
                corrected: cols[4].to_string(),
                note: cols.get(5).unwrap_or(&"").to_string(),
            });
        }
        Ok(Oracle { records: recs, errata: errs })
    }

    /// Records from a file, with the shipped errata.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, EMBEDDED_ERRATA)
    }

    pub fn records(&self) -> &[OracleRecord] {
        &self.records
    }

    pub fn errata(&self) -> &[Erratum] {
        &self.errata
    }

    pub fn record(&self, class: SymmetryClassId, delta: u8) -> Option<&OracleRecord> {
        self.records.iter().find(|r| r.class == class && r.delta == delta)
    }

    /// The cell after errata, and the erratum used if any.
    pub fn value(&self, rec: &OracleRecord, field: Field) -> (String, Option<&Erratum>) {
        let printed = rec.get(field);
        let fix = self
            .errata
            .iter()
            .find(|e| e.class == rec.class && e.delta == rec.delta && e.field == field && e.printed == printed);
        match fix {
            Some(e) => (e.corrected.clone(), Some(e)),
            None => (printed.to_string(), None),
        }
    }
}

/// All six fields for one class in one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub class: SymmetryClassId,
    pub delta: u8,
    pub k_p: AbelianGroup,
    pub k_lr: AbelianGroup,
    pub k_li: AbelianGroup,
    pub f_r: GroupHom,
    pub f_i: GroupHom,
    pub intrinsic: AbelianGroup,
}

impl TableRow {
    pub fn compute(engine: &Engine, class: SymmetryClassId, delta: u8) -> Result<Self> {
        let d = delta as i64;
        Ok(TableRow {
            class,
            delta,
            k_p: k_group(class, Gap::P, d),
            k_lr: k_group(class, Gap::Lr, d),
            k_li: k_group(class, Gap::Li, d),
            f_r: engine.f_r(class, d)?,
            f_i: engine.f_i(class, d)?,
            intrinsic: engine.intrinsic(class, d)?,
        })
    }

    /// Text of a field, in the data-file spelling.
    pub fn text(&self, field: Field) -> String {
        match field {
            Field::KP => self.k_p.canonical().ascii(),
            Field::KLr => self.k_lr.canonical().ascii(),
            Field::KLi => self.k_li.canonical().ascii(),
            Field::FR => self.f_r.map_string(),
            Field::FI => self.f_i.map_string(),
            Field::Intrinsic => self.intrinsic.canonical().ascii(),
        }
    }
}

#[derive(Serialize)]
struct RowJson<'a> {
    class: String,
    delta: u8,
    #[serde(rename = "K_P")]
    k_p: String,
    #[serde(rename = "K_Lr")]
    k_lr: String,
    #[serde(rename = "K_Li")]
    k_li: String,
    f_r: String,
    f_i: String,
    f_r_matrix: &'a [Vec<i64>],
    f_i_matrix: &'a [Vec<i64>],
    intrinsic: String,
}

impl Serialize for TableRow {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RowJson {
            class: self.class.name(),
            delta: self.delta,
            k_p: self.text(Field::KP),
            k_lr: self.text(Field::KLr),
            k_li: self.text(Field::KLi),
            f_r: self.text(Field::FR),
            f_i: self.text(Field::FI),
            f_r_matrix: self.f_r.matrix(),
            f_i_matrix: self.f_i.matrix(),
            intrinsic: self.text(Field::Intrinsic),
        }
        .serialize(serializer)
    }
}

/// Generated rows, in catalog order and then by `delta`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TableSet {
    pub rows: Vec<TableRow>,
}

impl TableSet {
    pub fn generate(engine: &Engine, classes: &[SymmetryClassId], deltas: &[u8]) -> Result<Self> {
        let mut rows = Vec::with_capacity(classes.len() * deltas.len());
        for &class in classes {
            for &d in deltas {
                rows.push(TableRow::compute(engine, class, d)?);
            }
        }
        Ok(TableSet { rows })
    }

    /// Same columns as the oracle data file.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# class\tdelta\tK_P\tK_Lr\tK_Li\tf_r\tf_i\tintrinsic\n");
        for r in &self.rows {
            let cells: Vec<String> = Field::ALL.iter().map(|&f| r.text(f)).collect();
            let _ = writeln!(out, "{}\t{}\t{}", r.class.name(), r.delta, cells.join("\t"));
        }
        out
    }

    /// One block per class: the two maps into the point-gap group, then
    /// the intrinsic quotient, with one column per `delta`.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let mut classes: Vec<SymmetryClassId> = Vec::new();
        for r in &self.rows {
            if !classes.contains(&r.class) {
                classes.push(r.class);
            }
        }
        for class in classes {
            let rows: Vec<&TableRow> = self.rows.iter().filter(|r| r.class == class).collect();
            let _ = writeln!(out, "### {class}\n");
            let head: Vec<String> = rows.iter().map(|r| format!("δ={}", r.delta)).collect();
            let _ = writeln!(out, "| gap | {} |", head.join(" | "));
            let _ = writeln!(out, "|---|{}", "---|".repeat(rows.len()));
            let line = |f: &dyn Fn(&TableRow) -> String| rows.iter().map(|r| f(r)).collect::<Vec<_>>().join(" | ");
            let _ = writeln!(out, "| Lr→P | {} |", line(&|r| format!("{}→{}", r.k_lr, r.k_p)));
            let _ = writeln!(out, "| f_r | {} |", line(&|r| r.f_r.map_string()));
            let _ = writeln!(out, "| Li→P | {} |", line(&|r| format!("{}→{}", r.k_li, r.k_p)));
            let _ = writeln!(out, "| f_i | {} |", line(&|r| r.f_i.map_string()));
            let _ = writeln!(out, "| intrinsic | {} |\n", line(&|r| r.intrinsic.to_string()));
        }
        out
    }

    /// Compares every cell against the oracle.
    pub fn diff(&self, oracle: &Oracle) -> DiffReport {
        let mut report = DiffReport::default();
        for row in &self.rows {
            report.rows_checked += 1;
            let Some(rec) = oracle.record(row.class, row.delta) else {
                report.mismatches.push(Mismatch {
                    class: row.class,
                    delta: row.delta,
                    field: None,
                    expected: "(no oracle record)".into(),
                    found: String::new(),
                });
                continue;
            };
            for field in Field::ALL {
                report.cells_checked += 1;
                let (expected, erratum) = oracle.value(rec, field);
                if let Some(e) = erratum {
                    report.errata_applied.push(e.clone());
                }
                match compare(row, field, &expected) {
                    Verdict::Equal => {}
                    Verdict::Orientation => report.orientation_matches.push((row.class, row.delta, field)),
                    Verdict::Different => report.mismatches.push(Mismatch {
                        class: row.class,
                        delta: row.delta,
                        field: Some(field),
                        expected,
                        found: row.text(field),
                    }),
                }
            }
        }
        report
    }
}

enum Verdict {
    Equal,
    Orientation,
    Different,
}

fn canonical(s: &str) -> Option<String> {
    s.parse::<AbelianGroup>().ok().map(|g| g.canonical().ascii())
}

fn compare(row: &TableRow, field: Field, expected: &str) -> Verdict {
    let hom = match field {
        Field::FR => &row.f_r,
        Field::FI => &row.f_i,
        _ => {
            return if canonical(expected).as_deref() == Some(row.text(field).as_str()) {
                Verdict::Equal
            } else {
                Verdict::Different
            };
        }
    };
    let Ok(printed) = GroupHom::parse_map(expected, hom.domain(), hom.codomain()) else {
        return Verdict::Different;
    };
    if printed.matrix() == hom.matrix() {
        return Verdict::Equal;
    }
    if orientation_equivalent(hom, &printed) {
        Verdict::Orientation
    } else {
        Verdict::Different
    }
}

/// Equal after flipping the sign of the second free summand of a rank-two
/// domain (for `1x2` maps) or codomain (for `2x1` maps).
fn orientation_equivalent(a: &GroupHom, b: &GroupHom) -> bool {
    let (ma, mb) = (a.matrix(), b.matrix());
    let free = |g: &AbelianGroup| g.factors().iter().all(|f| f.is_free());
    match (ma.len(), ma.first().map_or(0, Vec::len)) {
        (1, 2) if free(a.domain()) => ma[0][0] == mb[0][0] && ma[0][1] == -mb[0][1],
        (2, 1) if free(a.codomain()) => ma[0][0] == mb[0][0] && ma[1][0] == -mb[1][0],
        _ => false,
    }
}

/// A cell that disagrees with the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub class: SymmetryClassId,
    pub delta: u8,
    /// `None` when the oracle has no record for the row.
    pub field: Option<Field>,
    pub expected: String,
    pub found: String,
}

/// Outcome of comparing generated tables with the oracle.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DiffReport {
    pub rows_checked: usize,
    pub cells_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Map cells that agree up to the sign convention of a free summand.
    pub orientation_matches: Vec<(SymmetryClassId, u8, Field)>,
    pub errata_applied: Vec<Erratum>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Notes on conventions that differ from the printed tables.
    pub fn header(&self) -> Vec<String> {
        let mut out = vec![
            "point-gap groups of classes with an extra symmetry use the shift (s+1-delta, t+1)".to_string(),
            format!("{} printed cells corrected by errata", self.errata_applied.len()),
            format!(
                "{} map cells agree up to the orientation of a free summand",
                self.orientation_matches.len()
            ),
        ];
        for e in &self.errata_applied {
            out.push(format!(
                "erratum {} delta={} {}: {} -> {} ({})",
                e.class, e.delta, e.field, e.printed, e.corrected, e.note
            ));
        }
        for (c, d, f) in &self.orientation_matches {
            out.push(format!("orientation {c} delta={d} {f}"));
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in self.header() {
            let _ = writeln!(out, "# {h}");
        }
        let _ = writeln!(
            out,
            "{} rows, {} cells checked, {} mismatches",
            self.rows_checked,
            self.cells_checked,
            self.mismatches.len()
        );
        for m in &self.mismatches {
            let field = m.field.map_or("row".to_string(), |f| f.to_string());
            let _ = writeln!(out, "MISMATCH {} delta={} {field}: expected {} found {}", m.class, m.delta, m.expected, m.found);
        }
        out
    }
}

/// Full sweep over all 54 classes and `delta = 0..7`, compared with the
/// shipped oracle.
pub fn generate_tables() -> Result<(TableSet, DiffReport)> {
    let set = TableSet::generate(&Engine::standard(), &SymmetryClassId::all(), &[0, 1, 2, 3, 4, 5, 6, 7])?;
    let report = set.diff(&Oracle::embedded());
    Ok((set, report))
}
