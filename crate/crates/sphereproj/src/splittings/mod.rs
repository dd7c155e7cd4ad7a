//! Marked graphs as models of simple sphere systems, their Bass-Serre trees,
//! minimal-position crossing data, walls, and compatibility tests.

pub mod blowup;
pub mod core_rect;
pub mod cover;
pub mod format;
pub mod marked_graph;
pub mod splitting;
#[cfg(test)]
mod tests;
pub mod wall;

pub use core_rect::{core_rectangles, Circle};
pub use cover::{
    bridge_crossings, loop_crossings, CoverTree, CrossingSequence, Side, TreeEdgeLift, TreeVertex,
};
pub use marked_graph::{GraphEdge, MarkedGraph, Pointing};
pub use splitting::{
    conjugacy_key, exact_key, read_splitting, standard_extension, OneEdgeSplitting, SplitTree,
    SplittingKind,
};
pub use wall::Wall;
