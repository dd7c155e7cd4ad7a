//! Intersection circles between the walls of a marked graph and the wall of
//! a one-edge splitting, computed through the flip structure of the
//! splitting's side function on the graph's Bass-Serre tree.
//!
//! The side of the splitting wall, read as a function on tree vertices,
//! changes across finitely many computable "flip" edges. Every wall crossing
//! the splitting wall separates two flip edges, hence lies in their convex
//! hull; quadrant emptiness is then exact because both side functions are
//! constant on the components hanging off the hull.

use super::cover::{CoverTree, Side, TreeEdgeLift, TreeVertex};
use super::marked_graph::MarkedGraph;
use super::splitting::{OneEdgeSplitting, SplitTree};
use crate::error::{Error, Result};
use crate::freegroup::Word;
use std::collections::BTreeSet;

/// One F_n-orbit of intersection circles: the lift `(copy, edge)` of a graph
/// wall crossing the base wall of the splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub lift: TreeEdgeLift,
    /// the same translate in standard letters
    pub translate: Word,
}

pub const DEFAULT_WINDOW: usize = 4096;

/// All crossings between walls of `graph` and the base wall of `sigma`.
/// Empty output means the splitting sphere is compatible with the system.
pub fn core_rectangles(
    graph: &MarkedGraph,
    sigma: &OneEdgeSplitting,
    window: usize,
) -> Result<Vec<Circle>> {
    let tree = CoverTree::new(graph)?;
    let split = SplitTree::new(sigma)?;
    core_rectangles_with(&tree, &split, window)
}

pub fn core_rectangles_with(
    tree: &CoverTree,
    split: &SplitTree,
    window: usize,
) -> Result<Vec<Circle>> {
    let graph = &tree.graph;
    // 1. flip edges of the splitting side function on the cover
    let mut flips: Vec<TreeEdgeLift> = Vec::new();
    for (k, &ei) in graph.marking_edges().iter().enumerate() {
        let label = &graph.edges()[ei].label;
        let va = split.vertex_a(&Word::identity(graph.rank()));
        let vl = split.vertex_a(label);
        for elem in split.path_edges(&va, &vl) {
            let s = split.from_adapted(&elem);
            // lift (u, ei) with psi(u) = s^-1
            let u = tree.to_cover(&s.inverse());
            flips.push(TreeEdgeLift { copy: u, edge: ei });
        }
        let _ = k;
    }
    flips.sort_by(|a, b| (a.edge, a.copy.letters()).cmp(&(b.edge, b.copy.letters())));
    flips.dedup();
    if flips.len() > window {
        return Err(Error::Undecided(format!(
            "flip set size {} exceeds window {window}",
            flips.len()
        )));
    }
    if flips.len() <= 1 {
        return Ok(Vec::new());
    }

    // 2. convex hull of the flip edges
    let mut hull: BTreeSet<(Vec<i8>, usize)> = BTreeSet::new();
    let key = |l: &TreeEdgeLift| (l.copy.letters().to_vec(), l.edge);
    for f in &flips {
        hull.insert(key(f));
    }
    let endpoints: Vec<TreeVertex> = flips
        .iter()
        .flat_map(|f| {
            let (a, b) = tree.endpoints(f);
            [a, b]
        })
        .collect();
    for i in 0..endpoints.len() {
        for j in (i + 1)..endpoints.len() {
            for (lift, _) in tree.path(&endpoints[i], &endpoints[j]) {
                hull.insert(key(&lift));
                if hull.len() > window {
                    return Err(Error::Undecided(format!(
                        "hull size exceeds window {window}"
                    )));
                }
            }
        }
    }
    let hull_lifts: Vec<TreeEdgeLift> = hull
        .iter()
        .map(|(copy, edge)| TreeEdgeLift {
            copy: Word::reduce(graph.rank(), copy).expect("stored reduced"),
            edge: *edge,
        })
        .collect();

    // 3. hull vertex set and hanging components with their constant sides
    let mut verts: Vec<TreeVertex> = Vec::new();
    for l in &hull_lifts {
        let (a, b) = tree.endpoints(l);
        if !verts.contains(&a) {
            verts.push(a);
        }
        if !verts.contains(&b) {
            verts.push(b);
        }
    }
    // boundary components: (attachment vertex index, sigma-side of component)
    let mut boundary: Vec<(usize, bool)> = Vec::new();
    for (vi, v) in verts.iter().enumerate() {
        for (lift, side_at) in tree.incident(v) {
            if hull.contains(&key(&lift)) {
                continue;
            }
            let (a, b) = tree.endpoints(&lift);
            let far = match side_at {
                Side::Init => b,
                Side::Term => a,
            };
            debug_assert!(!verts.contains(&far), "hull must be convex");
            let s2 = split.side(&tree.to_std(&far.copy));
            boundary.push((vi, s2));
        }
    }

    // 4. exact quadrant test per hull edge
    let mut out = Vec::new();
    for lift in &hull_lifts {
        let mut quads: BTreeSet<(bool, bool)> = BTreeSet::new();
        for &(vi, s2) in &boundary {
            let s1 = tree.side(lift, &verts[vi]) == Side::Term;
            quads.insert((s1, s2));
        }
        if quads.len() == 4 {
            out.push(Circle {
                translate: tree.to_std(&lift.copy),
                lift: lift.clone(),
            });
        }
    }
    Ok(out)
}
