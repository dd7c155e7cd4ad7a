//! Combinatorial models of sphere systems in doubled handlebodies.
//!
//! The library computes with simple sphere systems in the connected sum W_n
//! of n copies of S^1 x S^2, modeled as marked graphs together with their
//! Bass-Serre trees. On top of that sit surgery projections onto sphere
//! stabilizers, crossing complexes recording intersection circles, a fixed
//! hexagon model of the once-punctured surface with its doubling map to
//! spheres, and a workbench for graph exploration and Lipschitz experiments.

pub mod error;
pub mod freegroup;
pub mod crossings;
pub mod splittings;

pub use error::{Error, Result};
