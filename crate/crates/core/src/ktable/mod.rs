//! Classification groups for all 54 classes in every dimension, the maps
//! from line-gap to point-gap groups, and the intrinsic quotients.

mod blocks;
mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use blocks::{standard_blocks, BlockSpec};
pub use oracle::{
    generate_tables, DiffReport, Erratum, Field, Mismatch, Oracle, OracleRecord, TableRow, TableSet,
};

use crate::error::{Error, Result};
use crate::group::{hom_is_unique, quotient_by_images, AbelianGroup, CyclicFactor, GroupHom};
use crate::symmetry::{Family, SymmetryClassId};

/// Complex or real classifying spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    C,
    R,
}

/// `pi_0(C_s)` or `pi_0(R_s)`, with `s` taken modulo the period.
pub fn pi0(space: Space, s: i64) -> AbelianGroup {
    match space {
        Space::C => match s.rem_euclid(2) {
            0 => AbelianGroup::z(),
            _ => AbelianGroup::trivial(),
        },
        Space::R => match s.rem_euclid(8) {
            0 => AbelianGroup::z(),
            1 | 2 => AbelianGroup::z2(),
            4 => AbelianGroup::two_z(),
            _ => AbelianGroup::trivial(),
        },
    }
}

/// Point gap, real line gap, imaginary line gap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gap {
    P,
    Lr,
    Li,
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gap::P => "P",
            Gap::Lr => "Lr",
            Gap::Li => "Li",
        })
    }
}

impl FromStr for Gap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p" | "point" => Ok(Gap::P),
            "lr" | "real" => Ok(Gap::Lr),
            "li" | "imag" | "imaginary" => Ok(Gap::Li),
            _ => Err(Error::Parse(format!("unknown gap `{s}`"))),
        }
    }
}

/// Zero-dimensional group of a class with an extra unitary-type symmetry.
fn extra_symmetry_group(complex: bool, s: i64, t: i64) -> AbelianGroup {
    if complex {
        match t.rem_euclid(2) {
            0 => pi0(Space::C, s).direct_sum(&pi0(Space::C, s)),
            _ => pi0(Space::C, s + 1),
        }
    } else {
        match t.rem_euclid(4) {
            0 => pi0(Space::R, s).direct_sum(&pi0(Space::R, s)),
            1 => pi0(Space::R, s - 1),
            2 => pi0(Space::C, s),
            _ => pi0(Space::R, s + 1),
        }
    }
}

/// Classification group of `class` in `delta` dimensions for the given gap.
pub fn k_group(class: SymmetryClassId, gap: Gap, delta: i64) -> AbelianGroup {
    let s = class.s() as i64;
    match gap {
        Gap::Li => k_group(class.i_map(), Gap::Lr, delta),
        Gap::Lr => match class.family() {
            Family::ComplexAz => pi0(Space::C, s - delta),
            Family::RealAz | Family::RealAzDagger => pi0(Space::R, s - delta),
            f => extra_symmetry_group(f.is_complex(), s - delta, class.t().unwrap_or(0) as i64),
        },
        Gap::P => match class.family() {
            Family::ComplexAz => pi0(Space::C, s + 1 - delta),
            Family::RealAz => pi0(Space::R, s + 1 - delta),
            Family::RealAzDagger => pi0(Space::R, s - 1 - delta),
            f => extra_symmetry_group(f.is_complex(), s + 1 - delta, class.t().unwrap_or(0) as i64 + 1),
        },
    }
}

/// Classes where both maps are `Z -> Z (+) Z` and have opposite images.
fn opposite_sign(class: SymmetryClassId) -> bool {
    match class.family() {
        Family::ComplexAzU => (class.s(), class.t()) == (1, Some(1)),
        Family::RealAzU => class.s() % 2 == 1 && class.t() == Some(3),
        _ => false,
    }
}

/// Classes where both maps are `Z -> Z (+) Z` and coincide.
fn same_sign(class: SymmetryClassId) -> bool {
    match class.family() {
        Family::ComplexAzU => (class.s(), class.t()) == (0, Some(1)),
        Family::RealAzU => class.s().is_multiple_of(2) && class.t() == Some(3),
        _ => false,
    }
}

/// One free summand mapped into two free summands.
fn double_free_shape(h: &GroupHom) -> bool {
    let free = |g: &AbelianGroup| g.factors().iter().all(CyclicFactor::is_free);
    h.domain().rank() == 1 && h.codomain().rank() == 2 && free(h.domain()) && free(h.codomain())
}

/// Builds the maps from a set of blocks. [`Engine::standard`] uses the
/// eighteen blocks of [`standard_blocks`].
#[derive(Clone, Debug)]
pub struct Engine {
    blocks: Vec<BlockSpec>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::standard()
    }
}

impl Engine {
    pub fn standard() -> Self {
        Engine { blocks: standard_blocks() }
    }

    pub fn with_blocks(blocks: Vec<BlockSpec>) -> Self {
        Engine { blocks }
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn block_for(&self, class: SymmetryClassId) -> Option<&BlockSpec> {
        self.blocks.iter().find(|b| b.class == class)
    }

    /// Map from the real-line-gap group to the point-gap group.
    pub fn f_r(&self, class: SymmetryClassId, delta: i64) -> Result<GroupHom> {
        let domain = k_group(class, Gap::Lr, delta);
        let codomain = k_group(class, Gap::P, delta);
        if hom_is_unique(&domain, &codomain) {
            return Ok(GroupHom::zero(domain, codomain));
        }
        let base = class.shifted(delta);
        match self.block_for(base) {
            Some(b) => GroupHom::new(domain, codomain, b.matrix.clone()),
            None => Err(Error::MissingBlock { class: base.name(), delta }),
        }
    }

    /// Map from the imaginary-line-gap group: the real-line-gap map of the
    /// class of `iH`, with the relative sign fixed where both maps are
    /// `Z -> Z (+) Z`.
    pub fn f_i(&self, class: SymmetryClassId, delta: i64) -> Result<GroupHom> {
        let partner = self.f_r(class.i_map(), delta)?;
        let codomain = k_group(class, Gap::P, delta);
        if partner.codomain() != &codomain {
            return Err(Error::CodomainMismatch(format!(
                "{} at delta = {delta}: {} vs {}",
                class,
                partner.codomain(),
                codomain
            )));
        }
        let fr = self.f_r(class, delta)?;
        if !(double_free_shape(&partner) && double_free_shape(&fr)) {
            return Ok(partner);
        }
        if same_sign(class) {
            Ok(partner)
        } else if opposite_sign(class) {
            let m = fr.matrix();
            GroupHom::new(fr.domain().clone(), codomain, vec![m[0].clone(), m[1].iter().map(|a| -a).collect()])
        } else {
            Err(Error::AmbiguousRelativeSign { class: class.name(), delta })
        }
    }

    /// `K_P / (im f_r + im f_i)`.
    pub fn intrinsic(&self, class: SymmetryClassId, delta: i64) -> Result<AbelianGroup> {
        let fr = self.f_r(class, delta)?;
        let fi = self.f_i(class, delta)?;
        quotient_by_images(&k_group(class, Gap::P, delta), &[&fr, &fi])
    }
}

pub fn f_r(class: SymmetryClassId, delta: i64) -> Result<GroupHom> {
    Engine::standard().f_r(class, delta)
}

pub fn f_i(class: SymmetryClassId, delta: i64) -> Result<GroupHom> {
    Engine::standard().f_i(class, delta)
}

pub fn intrinsic(class: SymmetryClassId, delta: i64) -> Result<AbelianGroup> {
    Engine::standard().intrinsic(class, delta)
}
