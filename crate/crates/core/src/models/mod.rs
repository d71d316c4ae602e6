//! Explicit models: class representatives, the zero-dimensional block
//! generators, and lattice exemplars.

pub mod blocks;
pub mod catalog;
mod representatives;

pub use blocks::{block_model, block_models, verify_all_blocks, verify_block, BlockModel, BlockReport, Check};
pub use catalog::{
    catalog_all, catalog_build, catalog_get, catalog_ids, split_off_diagonal, CatalogEntry, CatalogModel, Claim,
    GapClaim, Params, EXEMPLARS,
};
pub use representatives::class_representative;
