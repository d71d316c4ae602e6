use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The eight ways a matrix can act on a non-Hermitian Hamiltonian,
/// `u H^{phi,kappa} u^dag = c H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SymmetryKind {
    #[serde(rename = "Uni")]
    Unitary,
    #[serde(rename = "TRS")]
    Trs,
    #[serde(rename = "PHS")]
    Phs,
    #[serde(rename = "CS")]
    Chiral,
    #[serde(rename = "pH")]
    PseudoHermitian,
    #[serde(rename = "TRS†")]
    TrsDagger,
    #[serde(rename = "PHS†")]
    PhsDagger,
    #[serde(rename = "SLS")]
    Sublattice,
}

use SymmetryKind::*;

impl SymmetryKind {
    pub const ALL: [SymmetryKind; 8] =
        [Unitary, Trs, Phs, Chiral, PseudoHermitian, TrsDagger, PhsDagger, Sublattice];

    /// `(phi, c, kappa)`.
    pub fn flags(self) -> (i8, i8, i8) {
        match self {
            Unitary => (1, 1, 1),
            Trs => (-1, 1, 1),
            Phs => (-1, -1, -1),
            Chiral => (1, -1, -1),
            PseudoHermitian => (1, 1, -1),
            TrsDagger => (-1, 1, -1),
            PhsDagger => (-1, -1, 1),
            Sublattice => (1, -1, 1),
        }
    }

    pub fn from_flags(phi: i8, c: i8, kappa: i8) -> SymmetryKind {
        *Self::ALL.iter().find(|k| k.flags() == (phi, c, kappa)).expect("flags are +-1")
    }

    pub fn phi(self) -> i8 {
        self.flags().0
    }

    pub fn c(self) -> i8 {
        self.flags().1
    }

    pub fn kappa(self) -> i8 {
        self.flags().2
    }

    pub fn is_antiunitary(self) -> bool {
        self.phi() == -1
    }

    /// Kind of the composite of two symmetries: flags multiply.
    pub fn compose(self, other: SymmetryKind) -> SymmetryKind {
        let (a, b, c) = self.flags();
        let (x, y, z) = other.flags();
        Self::from_flags(a * x, b * y, c * z)
    }

    /// What this symmetry becomes for `iH`: `c` picks up `phi * kappa`.
    pub fn under_i(self) -> SymmetryKind {
        let (phi, c, kappa) = self.flags();
        Self::from_flags(phi, phi * c * kappa, kappa)
    }

    pub fn name(self) -> &'static str {
        match self {
            Unitary => "Uni",
            Trs => "TRS",
            Phs => "PHS",
            Chiral => "CS",
            PseudoHermitian => "pH",
            TrsDagger => "TRS†",
            PhsDagger => "PHS†",
            Sublattice => "SLS",
        }
    }

    /// Conventional letter for the operator matrix.
    pub fn symbol(self) -> &'static str {
        match self {
            Unitary => "U",
            Trs => "T",
            Phs => "C",
            Chiral => "Γ",
            PseudoHermitian => "η",
            TrsDagger => "T†",
            PhsDagger => "C†",
            Sublattice => "S",
        }
    }
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymmetryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace("dag", "†").replace('+', "").to_ascii_uppercase();
        let kind = match key.as_str() {
            "UNI" | "U" => Unitary,
            "TRS" | "T" => Trs,
            "PHS" | "C" => Phs,
            "CS" | "Γ" | "GAMMA" => Chiral,
            "PH" | "ETA" | "η" => PseudoHermitian,
            "TRS†" => TrsDagger,
            "PHS†" => PhsDagger,
            "SLS" | "S" => Sublattice,
            _ => return Err(Error::Parse(format!("unknown symmetry kind `{s}`"))),
        };
        Ok(kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_are_distinct() {
        let mut seen: Vec<_> = SymmetryKind::ALL.iter().map(|k| k.flags()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn composition_closes_dagger_pairs() {
        assert_eq!(Trs.compose(TrsDagger), PseudoHermitian);
        assert_eq!(Trs.compose(PhsDagger), Sublattice);
        assert_eq!(Phs.compose(TrsDagger), Sublattice);
        assert_eq!(Trs.compose(Phs), Chiral);
        assert_eq!(Chiral.compose(Chiral), Unitary);
    }

    #[test]
    fn multiplying_by_i_swaps_pairs() {
        assert_eq!(Trs.under_i(), PhsDagger);
        assert_eq!(Chiral.under_i(), PseudoHermitian);
        for k in SymmetryKind::ALL {
            assert_eq!(k.under_i().under_i(), k);
        }
        for k in [Unitary, Phs, TrsDagger, Sublattice] {
            assert_eq!(k.under_i(), k);
        }
    }

    #[test]
    fn parse_accepts_ascii_names() {
        assert_eq!("TRSdag".parse::<SymmetryKind>().unwrap(), TrsDagger);
        assert_eq!("pH".parse::<SymmetryKind>().unwrap(), PseudoHermitian);
        assert_eq!("eta".parse::<SymmetryKind>().unwrap(), PseudoHermitian);
        assert!("XYZ".parse::<SymmetryKind>().is_err());
    }
}
