use serde::Serialize;

use crate::error::Result;
use crate::group::GroupHom;
use crate::symmetry::{Family, SymmetryClassId};

use super::{k_group, Gap};

/// A zero-dimensional class whose real-line-gap to point-gap map is not
/// forced by the groups alone, with the image of each domain generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSpec {
    pub id: u8,
    pub class: SymmetryClassId,
    /// One row per codomain factor, one column per domain factor.
    pub matrix: Vec<Vec<i64>>,
}

impl BlockSpec {
    pub fn hom(&self) -> Result<GroupHom> {
        GroupHom::new(k_group(self.class, Gap::Lr, 0), k_group(self.class, Gap::P, 0), self.matrix.clone())
    }
}

fn block(id: u8, family: Family, s: u8, t: Option<u8>, matrix: &[&[i64]]) -> BlockSpec {
    BlockSpec {
        id,
        class: SymmetryClassId::new(family, s as i64, t.map(|t| t as i64)).expect("catalog indices"),
        matrix: matrix.iter().map(|r| r.to_vec()).collect(),
    }
}

/// The eighteen blocks, numbered in the order they are usually listed.
pub fn standard_blocks() -> Vec<BlockSpec> {
    use Family::*;
    vec![
        block(1, ComplexAzU, 0, Some(0), &[&[1, -1]]),
        block(2, RealAz, 0, None, &[&[1]]),
        block(3, RealAzDagger, 2, None, &[&[0]]),
        block(4, RealAz, 1, None, &[&[1]]),
        block(5, RealAzU, 2, Some(0), &[&[1, 1]]),
        block(6, RealAzU, 2, Some(2), &[&[1]]),
        block(7, RealAzU, 6, Some(2), &[&[2]]),
        block(8, RealAzU, 0, Some(0), &[&[1, -1]]),
        block(9, RealAzU, 0, Some(2), &[&[1]]),
        block(10, RealAzU, 4, Some(0), &[&[1, -1]]),
        block(11, ComplexAzU, 1, Some(1), &[&[1], &[1]]),
        block(12, RealAzU, 0, Some(3), &[&[1], &[1]]),
        block(13, RealAzU, 1, Some(0), &[&[1, 1]]),
        block(14, RealAzU, 1, Some(1), &[&[1]]),
        block(15, RealAzU, 1, Some(3), &[&[1], &[1]]),
        block(16, RealAzU, 3, Some(3), &[&[1], &[1]]),
        block(17, RealAzU, 5, Some(1), &[&[2]]),
        block(18, RealAzU, 7, Some(3), &[&[1], &[1]]),
    ]
}
