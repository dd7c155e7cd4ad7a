//! The Bass-Serre tree of a marked graph: the universal cover, with vertices
//! addressed by deck-group elements in edge-label coordinates.
//!
//! Non-tree edges are indexed by "B-letters" b_1, b_2, ... in order; the deck
//! group is free on these and acts by left multiplication. A vertex of the
//! tree is a pair (copy, graph vertex); crossing the lift of a non-tree edge
//! multiplies the copy by the edge's B-letter. Paths, sides of walls, axes of
//! group elements and bridges between axes are all computed exactly.

use super::marked_graph::MarkedGraph;
use crate::error::{Error, Result};
use crate::freegroup::{cyclic_reduce, CyclicWord, FreeMap, Letter, Word};

/// A vertex of the universal cover: (deck element in B-coordinates, vertex).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeVertex {
    pub copy: Word,
    pub vertex: usize,
}

/// An edge lift: `copy` is the deck coordinate of the init endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeEdgeLift {
    pub copy: Word,
    pub edge: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Init,
    Term,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Init => Side::Term,
            Side::Term => Side::Init,
        }
    }
}

/// Tree machinery bound to a marked graph.
pub struct CoverTree {
    pub graph: MarkedGraph,
    /// B-letter (1-based) for each non-tree edge; None for tree edges.
    b_letter: Vec<Option<Letter>>,
    /// edge index per B-letter
    b_edge: Vec<usize>,
    /// psi: B-coordinates -> standard letters (the marking)
    psi: FreeMap,
    /// phi: standard letters -> B-coordinates (the marking inverse)
    phi: FreeMap,
}

impl CoverTree {
    pub fn new(graph: &MarkedGraph) -> Result<CoverTree> {
        let marking = graph.marking()?;
        let mut b_letter = vec![None; graph.edges().len()];
        let mut b_edge = Vec::new();
        for (k, &i) in graph.marking_edges().iter().enumerate() {
            b_letter[i] = Some((k + 1) as Letter);
            b_edge.push(i);
        }
        let phi = marking.inverse_map();
        Ok(CoverTree {
            graph: graph.clone(),
            b_letter,
            b_edge,
            psi: marking,
            phi,
        })
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    /// Converts a deck element from B-coordinates to standard letters.
    pub fn to_std(&self, b: &Word) -> Word {
        self.psi.apply(b)
    }

    /// Converts a group element from standard letters to B-coordinates.
    pub fn to_cover(&self, w: &Word) -> Word {
        self.phi.apply(w)
    }

    pub fn base_vertex(&self) -> TreeVertex {
        TreeVertex {
            copy: Word::identity(self.rank()),
            vertex: self.graph.base_vertex(),
        }
    }

    /// The two endpoints of an edge lift.
    pub fn endpoints(&self, lift: &TreeEdgeLift) -> (TreeVertex, TreeVertex) {
        let e = &self.graph.edges()[lift.edge];
        let init = TreeVertex {
            copy: lift.copy.clone(),
            vertex: e.init,
        };
        let term_copy = match self.b_letter[lift.edge] {
            Some(b) => lift.copy.mul(&Word::generator(self.rank(), b)),
            None => lift.copy.clone(),
        };
        let term = TreeVertex {
            copy: term_copy,
            vertex: e.term,
        };
        (init, term)
    }

    /// Edge lifts incident to a tree vertex, with the side at which the
    /// vertex sits.
    pub fn incident(&self, v: &TreeVertex) -> Vec<(TreeEdgeLift, Side)> {
        let mut out = Vec::new();
        for (i, e) in self.graph.edges().iter().enumerate() {
            if e.init == v.vertex {
                out.push((
                    TreeEdgeLift {
                        copy: v.copy.clone(),
                        edge: i,
                    },
                    Side::Init,
                ));
            }
            if e.term == v.vertex {
                let copy = match self.b_letter[i] {
                    Some(b) => v.copy.mul(&Word::generator(self.rank(), -b)),
                    None => v.copy.clone(),
                };
                out.push((
                    TreeEdgeLift { copy, edge: i },
                    Side::Term,
                ));
            }
        }
        out
    }

    /// The reduced edge path between two tree vertices, as (lift, forward).
    pub fn path(&self, from: &TreeVertex, to: &TreeVertex) -> Vec<(TreeEdgeLift, bool)> {
        let mut out = Vec::new();
        let u = from.copy.inverse().mul(&to.copy);
        let mut cur_copy = from.copy.clone();
        let mut cur_vertex = from.vertex;
        for &l in u.letters() {
            let edge = self.b_edge[(l.unsigned_abs() as usize) - 1];
            let e = &self.graph.edges()[edge];
            let (entry, exit) = if l > 0 { (e.init, e.term) } else { (e.term, e.init) };
            for (i, fwd) in self.graph.tree_path(cur_vertex, entry) {
                out.push((
                    TreeEdgeLift {
                        copy: cur_copy.clone(),
                        edge: i,
                    },
                    fwd,
                ));
            }
            let bword = Word::generator(self.rank(), l);
            let lift_copy = if l > 0 {
                cur_copy.clone()
            } else {
                cur_copy.mul(&bword)
            };
            out.push((
                TreeEdgeLift {
                    copy: lift_copy,
                    edge,
                },
                l > 0,
            ));
            cur_copy = cur_copy.mul(&bword);
            cur_vertex = exit;
        }
        for (i, fwd) in self.graph.tree_path(cur_vertex, to.vertex) {
            out.push((
                TreeEdgeLift {
                    copy: cur_copy.clone(),
                    edge: i,
                },
                fwd,
            ));
        }
        out
    }

    pub fn distance(&self, a: &TreeVertex, b: &TreeVertex) -> usize {
        self.path(a, b).len()
    }

    /// Which side of a wall a vertex lies on. The vertex may be an endpoint
    /// of the wall (it then lies on its own side).
    pub fn side(&self, wall: &TreeEdgeLift, of: &TreeVertex) -> Side {
        let (init, _) = self.endpoints(wall);
        if *of == init {
            return Side::Init;
        }
        let crossings = self
            .path(of, &init)
            .iter()
            .filter(|(l, _)| l == wall)
            .count();
        debug_assert!(crossings <= 1);
        if crossings == 1 {
            Side::Term
        } else {
            Side::Init
        }
    }

    /// Applies the deck action of a B-coordinates element to a vertex.
    pub fn deck(&self, g: &Word, v: &TreeVertex) -> TreeVertex {
        TreeVertex {
            copy: g.mul(&v.copy),
            vertex: v.vertex,
        }
    }

    /// The axis of a nontrivial conjugacy class, given in standard letters.
    pub fn axis(&self, w: &CyclicWord) -> Result<Axis> {
        if w.is_empty() {
            return Err(Error::TrivialWord);
        }
        let b_word = self.to_cover(&w.as_word());
        let (c, _) = cyclic_reduce(&b_word);
        if c.is_empty() {
            return Err(Error::TrivialWord);
        }
        let letters = c.letters().to_vec();
        let entry_vertex = |l: Letter| {
            let e = &self.graph.edges()[self.b_edge[(l.unsigned_abs() as usize) - 1]];
            if l > 0 {
                e.init
            } else {
                e.term
            }
        };
        let base = TreeVertex {
            copy: Word::identity(self.rank()),
            vertex: entry_vertex(letters[0]),
        };
        // one period: from base to c . base
        let target = TreeVertex {
            copy: c.as_word(),
            vertex: base.vertex,
        };
        let period = self.path(&base, &target);
        Ok(Axis {
            translation: c,
            base,
            period,
        })
    }

    /// Tests whether a vertex lies on a translated axis line.
    pub fn on_line(&self, line: &TreeLine, v: &TreeVertex) -> bool {
        let g = line
            .translate
            .mul(&line.axis.translation.as_word())
            .mul(&line.translate.inverse());
        let gv = self.deck(&g, v);
        self.distance(v, &gv) == line.axis.period.len()
    }

    /// The bridge between two axis lines: the edge path of the unique
    /// shortest connection, empty when the lines intersect.
    pub fn bridge(&self, l1: &TreeLine, l2: &TreeLine) -> Vec<(TreeEdgeLift, bool)> {
        let p1 = self.deck(&l1.translate, &l1.axis.base);
        let p2 = self.deck(&l2.translate, &l2.axis.base);
        let path = self.path(&p1, &p2);
        // vertices along the path
        let mut verts = vec![p1.clone()];
        for (lift, fwd) in &path {
            let (init, term) = self.endpoints(lift);
            verts.push(if *fwd { term } else { init });
        }
        // last vertex on l1, first vertex on l2
        let mut x = 0usize;
        for (i, v) in verts.iter().enumerate() {
            if self.on_line(l1, v) {
                x = i;
            }
        }
        let mut y = verts.len() - 1;
        for (i, v) in verts.iter().enumerate() {
            if self.on_line(l2, v) {
                y = i;
                break;
            }
        }
        if x >= y {
            return Vec::new();
        }
        path[x..y].to_vec()
    }
}

/// The invariant line of a group element, stored per period.
#[derive(Clone, Debug)]
pub struct Axis {
    /// cyclically reduced translation word in B-coordinates
    pub translation: CyclicWord,
    /// a vertex on the axis
    pub base: TreeVertex,
    /// itinerary of one period starting at `base`
    pub period: Vec<(TreeEdgeLift, bool)>,
}

/// A translated axis line `translate . axis`.
#[derive(Clone, Debug)]
pub struct TreeLine {
    pub axis: Axis,
    /// deck element in B-coordinates
    pub translate: Word,
}

impl TreeLine {
    pub fn new(axis: Axis, translate: Word) -> TreeLine {
        TreeLine { axis, translate }
    }
}

/// A crossing sequence: the oriented walls crossed by a loop (cyclic, one
/// period) or an arc (ordered).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSequence {
    pub steps: Vec<(TreeEdgeLift, bool)>,
    pub cyclic: bool,
}

/// The cyclic wall itinerary of the axis of `w` in the tree of `graph`.
pub fn loop_crossings(graph: &MarkedGraph, w: &CyclicWord) -> Result<CrossingSequence> {
    let tree = CoverTree::new(graph)?;
    let axis = tree.axis(w)?;
    Ok(CrossingSequence {
        steps: axis.period,
        cyclic: true,
    })
}

/// The wall itinerary of the bridge between the axes of two conjugates
/// `t1 c1 t1^-1` and `t2 c2 t2^-1` (translates in standard letters).
pub fn bridge_crossings(
    graph: &MarkedGraph,
    axis1: (&CyclicWord, &Word),
    axis2: (&CyclicWord, &Word),
) -> Result<CrossingSequence> {
    let tree = CoverTree::new(graph)?;
    let a1 = tree.axis(axis1.0)?;
    let a2 = tree.axis(axis2.0)?;
    let l1 = TreeLine::new(a1, tree.to_cover(axis1.1));
    let l2 = TreeLine::new(a2, tree.to_cover(axis2.1));
    Ok(CrossingSequence {
        steps: tree.bridge(&l1, &l2),
        cyclic: false,
    })
}
