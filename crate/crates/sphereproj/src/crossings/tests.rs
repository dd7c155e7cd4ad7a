use super::capping::{cap_piece, Capped};
use super::complex::CrossingComplex;
use super::reconstruct::reconstruct_splitting;

use crate::splittings::marked_graph::{MarkedGraph, Pointing};
use crate::splittings::splitting::{exact_key, read_splitting, OneEdgeSplitting, SplitTree};
use crate::splittings::wall::Wall;
use crate::freegroup::Word;

fn w(rank: usize, s: &str) -> Word {
    Word::parse(rank, s).unwrap()
}

fn pointed_rose2() -> MarkedGraph {
    MarkedGraph::rose(2, Pointing::Vertex(0))
}

fn crossing_sigma() -> OneEdgeSplitting {
    OneEdgeSplitting::separating(2, vec![w(2, "ab")], vec![w(2, "b")])
        .unwrap()
        .with_basepoint()
}

#[test]
fn reconstruct_lift_walls() {
    // walls of plain splittings reconstruct to the same splitting
    for s in [
        OneEdgeSplitting::corank1(2, vec![w(2, "b")], w(2, "a")).unwrap(),
        OneEdgeSplitting::separating(2, vec![w(2, "a")], vec![w(2, "b")]).unwrap(),
        OneEdgeSplitting::corank1(2, vec![w(2, "ab")], w(2, "a")).unwrap(),
        OneEdgeSplitting::separating(2, vec![w(2, "ab")], vec![w(2, "b")]).unwrap(),
        OneEdgeSplitting::corank1(3, vec![w(3, "b"), w(3, "c")], w(3, "a")).unwrap(),
        OneEdgeSplitting::separating(3, vec![w(3, "a"), w(3, "bcB")], vec![w(3, "b")]).unwrap(),
    ] {
        let wall = Wall::from_splitting(&SplitTree::new(&s).unwrap());
        let rec = reconstruct_splitting(&wall).unwrap();
        let wall2 = Wall::from_splitting(&SplitTree::new(&rec).unwrap());
        assert!(wall.equal_on_ends(&wall2).is_some(), "round trip for {s:?}");
        assert_eq!(rec.is_separating(), s.is_separating());
    }
}

#[test]
fn compatible_complex_trivial() {
    let g = pointed_rose2();
    // sigma = a sphere of the system itself (basepointed version)
    let s = read_splitting(&g, 0).unwrap().with_basepoint();
    let cc = CrossingComplex::build(&g, &s, 4096).unwrap();
    assert!(cc.circles.is_empty());
    cc.validate().unwrap();
    // every wall has a single region; pieces are whole spheres
    let pieces = cc.sphere_pieces();
    assert_eq!(pieces.len(), g.edges().len());
    for p in &pieces {
        assert!(p.boundary.is_empty());
        match cap_piece(&cc, p).unwrap() {
            Capped::Sphere { splitting, .. } => {
                let orig = read_splitting(&g, p.edge).unwrap();
                assert_eq!(exact_key(&splitting), exact_key(&orig));
            }
            Capped::Inessential => panic!("closed pieces are essential"),
        }
    }
    assert!(cc.closing_disks().is_empty());
}

#[test]
fn crossing_complex_structure() {
    let g = pointed_rose2();
    let s = crossing_sigma();
    let cc = CrossingComplex::build(&g, &s, 4096).unwrap();
    assert!(!cc.circles.is_empty());
    cc.validate().unwrap();
    // Euler bookkeeping: #pieces = #circles + #walls
    let pieces = cc.sphere_pieces();
    assert_eq!(pieces.len(), cc.circles.len() + g.edges().len());
    // each circle: two pieces on its wall gain a boundary circle
    for (ci, _c) in cc.circles.iter().enumerate() {
        let count: usize = pieces
            .iter()
            .map(|p| p.boundary.iter().filter(|&&b| b == ci).count())
            .sum();
        assert_eq!(count, 2, "each circle bounds exactly two pieces");
    }
    // closing disks: one per circle, properly nested (validated), depths >= 1
    let disks = cc.closing_disks();
    assert_eq!(disks.len(), cc.circles.len());
    for d in &disks {
        assert!(d.nesting_depth >= 1);
        assert!(!d.far_regions.contains(&cc.base_region));
    }
}

#[test]
fn capped_spheres_compatible() {
    let g = pointed_rose2();
    let s = crossing_sigma();
    let cc = CrossingComplex::build(&g, &s, 4096).unwrap();
    let sigma_wall = Wall::from_splitting(&cc.split);
    let mut capped_walls: Vec<Wall> = Vec::new();
    for p in cc.sphere_pieces() {
        match cap_piece(&cc, &p).unwrap() {
            Capped::Sphere { wall, splitting } => {
                // compatible with sigma: no crossing, and compatible with
                // all previously capped spheres
                assert!(!wall.crosses(&sigma_wall), "capped sphere must avoid sigma");
                // the reconstructed splitting is certified against the wall
                let w2 = Wall::from_splitting(&SplitTree::new(&splitting).unwrap());
                assert!(w2.equal_on_ends(&wall).is_some());
                for cw in &capped_walls {
                    assert!(!wall.crosses(cw), "capped spheres pairwise compatible");
                }
                capped_walls.push(wall);
            }
            Capped::Inessential => {}
        }
    }
    assert!(!capped_walls.is_empty());
}
