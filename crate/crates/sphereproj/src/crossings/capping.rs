//! Capping sphere pieces with their closing disks.
//!
//! The homotopy class of a capped piece is computed through its side
//! function on ends: the side of the host wall, flipped once for each
//! boundary circle whose pocket (the quadrant between the discarded part of
//! the host wall and the closing disk) contains the end.

use super::complex::CrossingComplex;
use super::reconstruct::reconstruct_splitting;
use crate::error::{Error, Result};
use crate::freegroup::Word;
use crate::splittings::cover::{Side, TreeEdgeLift, TreeVertex};
use crate::splittings::splitting::OneEdgeSplitting;
use crate::splittings::wall::Wall;

/// Result of capping a sphere piece.
#[derive(Clone, Debug)]
pub enum Capped {
    /// The capped sphere bounds a ball once the basepoint is forgotten.
    Inessential,
    /// An essential sphere, as a wall together with its exact splitting.
    Sphere { wall: Wall, splitting: OneEdgeSplitting },
}

/// The wall (ends-side function) of the capped piece.
pub fn capped_wall(cc: &CrossingComplex, piece: &super::complex::SpherePiece) -> Result<Wall> {
    let rank = cc.graph.rank();
    let host = TreeEdgeLift {
        copy: Word::identity(rank),
        edge: piece.edge,
    };
    let host_wall = Wall::from_lift(&cc.tree, &host);
    if piece.boundary.is_empty() {
        return Ok(host_wall);
    }
    let sigma_wall = Wall::from_splitting(&cc.split);
    let rt = &cc.walls[piece.edge];
    let mut parts: Vec<Wall> = vec![host_wall];
    let mut pocket_sides: Vec<(bool, bool)> = Vec::new(); // (s_i, rho_bar_i)
    for &ci in &piece.boundary {
        let circle = &cc.circles[ci];
        // translate carrying the base splitting wall to the lift crossing
        // the representative wall (1, e)
        let g_i = cc.tree.to_std(&circle.lift.copy).inverse();
        let lift_wall = sigma_wall.translate(&g_i);
        // rho_i: the lift-wall side of the piece's region
        let region = &rt.regions[piece.region];
        let rep_std = cc.split.from_adapted(&region.rep);
        let rho = lift_wall.eval(&rep_std);
        // s_i: host-wall side of the regions beyond the circle on the lift,
        // away from the (translated) basepoint; read off the base splitting
        // wall's region tree and translate
        let tree_idx = cc
            .sigma_wall
            .circles
            .iter()
            .position(|(c, _, _)| *c == ci)
            .ok_or_else(|| Error::ModelInconsistency("circle missing on sigma wall".into()))?;
        let far = cc.sigma_wall.far_side(tree_idx, cc.base_region);
        let (_, a, b) = cc.sigma_wall.circles[tree_idx];
        let far_endpoint = if far.contains(&a) { a } else { b };
        let w_base = &cc.sigma_wall.regions[far_endpoint];
        let w_i = TreeVertex {
            copy: cc.tree.to_cover(&g_i).mul(&w_base.copy),
            vertex: w_base.vertex,
        };
        let s_i = cc.tree.side(&host, &w_i) == Side::Term;
        pocket_sides.push((s_i, !rho));
        parts.push(lift_wall);
    }
    let part_refs: Vec<&Wall> = parts.iter().collect();
    let combined = Wall::combine(rank, &part_refs, &|vals: &[bool]| {
        let mut v = vals[0];
        for (i, &(s, rho_bar)) in pocket_sides.iter().enumerate() {
            if vals[0] == s && vals[i + 1] == rho_bar {
                v = !v;
            }
        }
        v
    });
    Ok(combined)
}

/// Caps a piece and identifies the resulting sphere.
pub fn cap_piece(cc: &CrossingComplex, piece: &super::complex::SpherePiece) -> Result<Capped> {
    if piece.boundary.is_empty() {
        // a closed piece is the original sphere
        let splitting = crate::splittings::read_splitting(&cc.graph, piece.edge)?;
        let host = TreeEdgeLift {
            copy: Word::identity(cc.graph.rank()),
            edge: piece.edge,
        };
        return Ok(Capped::Sphere {
            wall: Wall::from_lift(&cc.tree, &host),
            splitting,
        });
    }
    let wall = capped_wall(cc, piece)?;
    if !wall.is_essential() {
        return Ok(Capped::Inessential);
    }
    let splitting = reconstruct_splitting(&wall)?;
    Ok(Capped::Sphere { wall, splitting })
}
