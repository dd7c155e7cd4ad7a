//! Crossing complexes: circles, region trees, sphere pieces, closing disks,
//! and the capping of pieces to embedded spheres.

pub mod capping;
pub mod complex;
pub mod reconstruct;
#[cfg(test)]
mod tests;

pub use capping::{cap_piece, capped_wall, Capped};
pub use complex::{ClosingDisk, CrossingComplex, RegionTree, SpherePiece};
pub use reconstruct::reconstruct_splitting;
