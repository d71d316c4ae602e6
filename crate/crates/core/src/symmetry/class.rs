use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The five families of internal symmetry classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// A, AIII.
    #[serde(rename = "cAZ")]
    ComplexAz,
    /// The eight real Altland-Zirnbauer classes.
    #[serde(rename = "rAZ")]
    RealAz,
    /// The eight real classes built from TRS† and PHS†.
    #[serde(rename = "rAZd")]
    RealAzDagger,
    /// A or AIII with an extra SLS or pH.
    #[serde(rename = "cAZU")]
    ComplexAzU,
    /// A real AZ class with an extra SLS or pH.
    #[serde(rename = "rAZU")]
    RealAzU,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::ComplexAz, Family::RealAz, Family::RealAzDagger, Family::ComplexAzU, Family::RealAzU];

    pub fn is_complex(self) -> bool {
        matches!(self, Family::ComplexAz | Family::ComplexAzU)
    }

    pub fn has_extra(self) -> bool {
        matches!(self, Family::ComplexAzU | Family::RealAzU)
    }

    /// Period of `s`, and of the dimension shift.
    pub fn period(self) -> u8 {
        if self.is_complex() {
            2
        } else {
            8
        }
    }

    /// Period of `t`, for families that carry one.
    pub fn t_period(self) -> Option<u8> {
        match self {
            Family::ComplexAzU => Some(2),
            Family::RealAzU => Some(4),
            _ => None,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Family::ComplexAz => "cAZ",
            Family::RealAz => "rAZ",
            Family::RealAzDagger => "rAZd",
            Family::ComplexAzU => "cAZU",
            Family::RealAzU => "rAZU",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.short().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownId(format!("family `{s}`")))
    }
}

const COMPLEX_AZ: [&str; 2] = ["A", "AIII"];
const REAL_AZ: [&str; 8] = ["AI", "BDI", "D", "DIII", "AII", "CII", "C", "CI"];

const COMPLEX_LABELS: [[&str; 2]; 2] = [["η", "S"], ["S+,η+", "S-,η-"]];

fn real_labels(s: u8) -> [&'static str; 4] {
    match s % 4 {
        0 => ["η+", "S-", "η-", "S+"],
        2 => ["η+", "S+", "η-", "S-"],
        1 => ["S++,η++", "S-+,η+-", "S--,η--", "S+-,η-+"],
        _ => ["S--,η++", "S-+,η-+", "S++,η--", "S+-,η+-"],
    }
}

/// One of the 54 internal symmetry classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetryClassId {
    family: Family,
    s: u8,
    t: Option<u8>,
}

impl SymmetryClassId {
    /// Reduces `s` and `t` by their periods. `t` must be given exactly for
    /// the families with an extra symmetry.
    pub fn new(family: Family, s: i64, t: Option<i64>) -> Result<Self> {
        let s = s.rem_euclid(family.period() as i64) as u8;
        let t = match (family.t_period(), t) {
            (Some(p), Some(t)) => Some(t.rem_euclid(p as i64) as u8),
            (None, None) => None,
            (Some(_), None) => return Err(Error::NotInCatalog(format!("{} needs an index t", family.short()))),
            (None, Some(_)) => return Err(Error::NotInCatalog(format!("{} takes no index t", family.short()))),
        };
        Ok(SymmetryClassId { family, s, t })
    }

    pub(crate) const fn raw(family: Family, s: u8, t: Option<u8>) -> Self {
        SymmetryClassId { family, s, t }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn t(&self) -> Option<u8> {
        self.t
    }

    /// All 54 classes: A, AIII, the real AZ classes, their dagger versions,
    /// then the classes with an extra symmetry ordered by `t` and `s`.
    pub fn all() -> Vec<SymmetryClassId> {
        let mut out = Vec::with_capacity(54);
        out.extend((0..2).map(|s| Self::raw(Family::ComplexAz, s, None)));
        out.extend((0..8).map(|s| Self::raw(Family::RealAz, s, None)));
        out.extend((0..8).map(|s| Self::raw(Family::RealAzDagger, s, None)));
        for t in 0..2 {
            out.extend((0..2).map(|s| Self::raw(Family::ComplexAzU, s, Some(t))));
        }
        for t in 0..4 {
            out.extend((0..8).map(|s| Self::raw(Family::RealAzU, s, Some(t))));
        }
        out
    }

    /// Name of the underlying AZ class, without dagger or extra symmetry.
    pub fn az_name(&self) -> &'static str {
        if self.family.is_complex() {
            COMPLEX_AZ[self.s as usize]
        } else {
            REAL_AZ[self.s as usize]
        }
    }

    /// The extra-symmetry label such as `S-+,η+-`.
    pub fn label(&self) -> Option<&'static str> {
        let t = self.t? as usize;
        Some(match self.family {
            Family::ComplexAzU => COMPLEX_LABELS[self.s as usize][t],
            _ => real_labels(self.s)[t],
        })
    }

    pub fn name(&self) -> String {
        match (self.family, self.label()) {
            (Family::RealAzDagger, _) => format!("{}†", self.az_name()),
            (_, Some(label)) => format!("{}+{}", self.az_name(), label),
            _ => self.az_name().to_string(),
        }
    }

    /// Name with ASCII spellings (`eta`, `dag`).
    pub fn ascii_name(&self) -> String {
        self.name().replace('η', "eta").replace('†', "dag")
    }

    /// The class whose zero-dimensional groups describe `self` in `delta`
    /// dimensions: `s` shifts down by `delta`.
    pub fn shifted(&self, delta: i64) -> Self {
        let p = self.family.period() as i64;
        SymmetryClassId { s: (self.s as i64 - delta).rem_euclid(p) as u8, ..*self }
    }

    /// The class of `iH` when `H` is in class `self`.
    pub fn i_map(&self) -> Self {
        use Family::*;
        let (f, s, t) = (self.family, self.s, self.t);
        match f {
            ComplexAz => match s {
                0 => *self,
                _ => Self::raw(ComplexAzU, 0, Some(0)),
            },
            ComplexAzU => match (s, t) {
                (0, Some(0)) => Self::raw(ComplexAz, 1, None),
                _ => *self,
            },
            RealAz => match s {
                0 => Self::raw(RealAzDagger, 2, None),
                4 => Self::raw(RealAzDagger, 6, None),
                1 | 5 => Self::raw(RealAzU, s + 1, Some(0)),
                3 | 7 => Self::raw(RealAzU, s - 1, Some(2)),
                _ => *self,
            },
            RealAzDagger => match s {
                2 => Self::raw(RealAz, 0, None),
                6 => Self::raw(RealAz, 4, None),
                1 | 5 => Self::raw(RealAzU, s - 1, Some(0)),
                3 | 7 => Self::raw(RealAzU, s - 3, Some(2)),
                _ => *self,
            },
            RealAzU => {
                let t = t.expect("extra-symmetry class has t");
                let (fam, s2, t2) = REAL_U_I_MAP[s as usize][t as usize];
                Self::raw(fam, s2, t2)
            }
        }
    }

    /// True for the first member (in catalog order) of each `i_map` orbit.
    pub fn is_orbit_representative(&self) -> bool {
        let all = Self::all();
        let pos = |c: &Self| all.iter().position(|x| x == c).expect("catalog member");
        pos(self) <= pos(&self.i_map())
    }
}

/// Image of `(s, t)` under `H -> iH` for the real classes with an extra symmetry.
const REAL_U_I_MAP: [[(Family, u8, Option<u8>); 4]; 8] = {
    use Family::*;
    const fn u(s: u8, t: u8) -> (Family, u8, Option<u8>) {
        (RealAzU, s, Some(t))
    }
    [
        [(RealAzDagger, 1, None), u(4, 1), (RealAzDagger, 3, None), u(0, 3)],
        [u(1, 0), u(3, 1), u(3, 0), u(1, 3)],
        [(RealAz, 1, None), u(2, 1), (RealAz, 3, None), u(2, 3)],
        [u(1, 2), u(1, 1), u(3, 2), u(3, 3)],
        [(RealAzDagger, 5, None), u(0, 1), (RealAzDagger, 7, None), u(4, 3)],
        [u(5, 0), u(7, 1), u(7, 0), u(5, 3)],
        [(RealAz, 5, None), u(6, 1), (RealAz, 7, None), u(6, 3)],
        [u(5, 2), u(5, 1), u(7, 2), u(7, 3)],
    ]
};

impl fmt::Display for SymmetryClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn normalize_name(s: &str) -> String {
    let mut out = s.trim().to_string();
    for (from, to) in [
        ("\\eta", "η"),
        ("eta", "η"),
        ("^\\dag", "†"),
        ("\\dag", "†"),
        ("^dag", "†"),
        ("dag", "†"),
        ("\u{2212}", "-"),
        ("₊", "+"),
        ("₋", "-"),
    ] {
        out = out.replace(from, to);
    }
    out.chars().filter(|c| !c.is_whitespace() && !matches!(c, '_' | '{' | '}' | '$' | '\\')).collect()
}

impl FromStr for SymmetryClassId {
    type Err = Error;

    /// Accepts catalog names, ASCII spellings (`AIII+S-,eta-`, `Ddag`) and
    /// a single component of a paired label (`BDI+S-+`, `CI+eta+-`).
    fn from_str(s: &str) -> Result<Self> {
        let key = normalize_name(s);
        let all = Self::all();
        if let Some(c) = all.iter().find(|c| c.name() == key) {
            return Ok(*c);
        }
        if let Some((base, label)) = key.split_once('+') {
            let hits: Vec<_> = all
                .iter()
                .filter(|c| c.family.has_extra() && c.az_name() == base)
                .filter(|c| c.label().is_some_and(|l| l.split(',').any(|part| part == label)))
                .collect();
            if let [c] = hits.as_slice() {
                return Ok(**c);
            }
        }
        Err(Error::UnknownId(format!("symmetry class `{s}`")))
    }
}

impl Serialize for SymmetryClassId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for SymmetryClassId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
