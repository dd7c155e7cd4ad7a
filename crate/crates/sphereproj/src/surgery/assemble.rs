//! Assembly of a marked graph from a compatible collection of exact
//! one-edge splittings.
//!
//! The graph is grown by inserting one sphere at a time. Vertices whose
//! regions are not yet simply connected carry scaffold loops spelling a
//! basis of the vertex group; inserting a sphere located at such a vertex
//! restricts the sphere's wall to the vertex group, reconstructs the induced
//! splitting there, and blows the vertex up accordingly, re-spelling the
//! scaffolding on both sides. A simple system consumes all scaffolding by
//! the end. Every step is certified by reading the inserted sphere back off
//! the graph.

use crate::error::{Error, Result};
use crate::freegroup::{Letter, SubgroupGraph, Word};
use crate::splittings::cover::{CoverTree, Side};
use crate::splittings::marked_graph::{GraphEdge, MarkedGraph, Pointing};
use crate::splittings::splitting::{exact_key, read_splitting, standard_extension, OneEdgeSplitting, SplitTree};
use crate::splittings::wall::Wall;

pub struct Assembler {
    graph: MarkedGraph,
    scaffold: Vec<bool>,
    tree: CoverTree,
    walls: Vec<Wall>,
}

impl Assembler {
    /// Starts from the standard extension of the first sphere; its basis
    /// loops are scaffolding.
    pub fn new(first: &OneEdgeSplitting) -> Result<Assembler> {
        let graph = standard_extension(first)?;
        let scaffold: Vec<bool> = (0..graph.edges().len()).map(|i| i != 0).collect();
        let mut a = Assembler {
            graph,
            scaffold,
            tree: CoverTree::new(&MarkedGraph::rose(first.rank(), Pointing::None))?,
            walls: Vec::new(),
        };
        a.rebuild()?;
        Ok(a)
    }

    fn rebuild(&mut self) -> Result<()> {
        self.tree = CoverTree::new(&self.graph)?;
        self.walls = (0..self.graph.edges().len())
            .map(|e| {
                Wall::from_lift(
                    &self.tree,
                    &crate::splittings::cover::TreeEdgeLift {
                        copy: Word::identity(self.graph.rank()),
                        edge: e,
                    },
                )
            })
            .collect();
        Ok(())
    }

    pub fn graph(&self) -> &MarkedGraph {
        &self.graph
    }

    /// Inserts a sphere; returns false if an equivalent sphere is already
    /// present.
    pub fn insert(&mut self, wall: &Wall, splitting: &OneEdgeSplitting) -> Result<bool> {
        let key = exact_key(splitting);
        for e in 0..self.graph.edges().len() {
            if self.scaffold[e] {
                continue;
            }
            if exact_key(&read_splitting(&self.graph, e)?) == key {
                return Ok(false);
            }
        }
        // locate the sphere: walk from the base region across lifts that
        // separate it from the current region
        let mut at = self.tree.base_vertex();
        let mut hops = 0usize;
        'walk: loop {
            hops += 1;
            if hops > 400 {
                return Err(Error::ModelInconsistency("assembly walk did not converge".into()));
            }
            for (lift, side_at) in self.tree.incident(&at) {
                let lift_wall = self.walls[lift.edge].translate(&self.tree.to_std(&lift.copy));
                let near = side_at == Side::Term;
                if wall.equal_on_ends(&lift_wall).is_some() {
                    if self.scaffold[lift.edge] {
                        break 'walk; // coincides with scaffolding: rebuild here
                    }
                    return Ok(false); // parallel to an existing sphere
                }
                if wall.crosses(&lift_wall) {
                    if self.scaffold[lift.edge] {
                        break 'walk;
                    }
                    return Err(Error::ModelInconsistency(
                        "inserted sphere crosses an existing sphere".into(),
                    ));
                }
                if wall.beyond(&lift_wall, !near) {
                    let (a, b) = self.tree.endpoints(&lift);
                    at = if side_at == Side::Init { b } else { a };
                    continue 'walk;
                }
            }
            break;
        }

        // vertex group scaffolding at the located vertex
        let vert = at.vertex;
        let recenter = self.tree.to_std(&at.copy);
        let scaffold_edges: Vec<usize> = (0..self.graph.edges().len())
            .filter(|&i| {
                self.scaffold[i]
                    && self.graph.edges()[i].init == vert
                    && self.graph.edges()[i].term == vert
            })
            .collect();
        if scaffold_edges.is_empty() {
            return Err(Error::ModelInconsistency(
                "sphere located in a simply connected region".into(),
            ));
        }
        let labels: Vec<Word> = scaffold_edges
            .iter()
            .map(|&i| self.graph.edges()[i].label.clone())
            .collect();
        let sub_graph = SubgroupGraph::from_words(self.graph.rank(), &labels);
        let basis = sub_graph.basis();
        let margin = basis.iter().map(|b| b.len()).max().unwrap_or(1) + sub_graph.vertex_count() + 1;
        let recentered = wall.translate(&recenter.inverse());
        let sub_wall = recentered.restrict(&basis, margin)?;
        let sub_split = super::super::crossings::reconstruct_splitting(&sub_wall)?;
        let embed = |u: &Word| -> Word {
            let mut w = Word::identity(self.graph.rank());
            for &l in u.letters() {
                let b = &basis[(l.unsigned_abs() as usize) - 1];
                w = if l > 0 { w.mul(b) } else { w.mul(&b.inverse()) };
            }
            w
        };

        let near_u = recentered.eval(&Word::identity(self.graph.rank()));
        let num_vertices = self.graph.num_vertices();
        let mut pointing = self.graph.pointing();
        use crate::splittings::splitting::SplittingKind;

        // for separating sub-splittings: decide, on the original graph,
        // which real half-edges at `vert` move to the far side
        let mut moves: Vec<(usize, bool)> = Vec::new(); // (edge, end_is_init)
        if sub_split.is_separating() {
            for i in 0..self.graph.edges().len() {
                if self.scaffold[i] {
                    continue;
                }
                let e = &self.graph.edges()[i];
                for end_is_init in [true, false] {
                    let endv = if end_is_init { e.init } else { e.term };
                    if endv != vert {
                        continue;
                    }
                    // lift adjacent to the located cluster region
                    let copy = if end_is_init {
                        at.copy.clone()
                    } else {
                        match self.edge_b_letter(i) {
                            Some(b) => at.copy.mul(&Word::generator(self.graph.rank(), -b)),
                            None => at.copy.clone(),
                        }
                    };
                    let lw = self.walls[i].translate(&self.tree.to_std(&copy));
                    let to_near = lw.beyond(wall, near_u);
                    let to_far = lw.beyond(wall, !near_u);
                    let side_far = match (to_near, to_far) {
                        (true, false) => false,
                        (false, true) => true,
                        _ => {
                            return Err(Error::ModelInconsistency(
                                "half-edge side assignment ambiguous".into(),
                            ))
                        }
                    };
                    if side_far {
                        moves.push((i, end_is_init));
                    }
                }
            }
        }

        // rebuild the edge list: removed scaffolding, moved half-edges, new
        // scaffolding and the new real edge
        let removed: std::collections::HashSet<usize> = scaffold_edges.iter().copied().collect();
        let mut edges: Vec<GraphEdge> = Vec::new();
        let mut scaffold: Vec<bool> = Vec::new();
        let mut index_map: Vec<Option<usize>> = Vec::new();
        for (i, e) in self.graph.edges().iter().enumerate() {
            if removed.contains(&i) {
                index_map.push(None);
                continue;
            }
            index_map.push(Some(edges.len()));
            let mut e = e.clone();
            let nv = num_vertices;
            if moves.contains(&(i, true)) {
                e.init = nv;
            }
            if moves.contains(&(i, false)) {
                e.term = nv;
            }
            edges.push(e);
            scaffold.push(self.scaffold[i]);
        }
        if let Pointing::Edge(pe, s) = pointing {
            pointing = Pointing::Edge(
                index_map[pe].ok_or_else(|| {
                    Error::ModelInconsistency("pointed edge removed during assembly".into())
                })?,
                s,
            );
        }

        let new_real_edge_index;
        let new_num_vertices;
        match sub_split.kind() {
            SplittingKind::Corank1 { basis_a, stable } => {
                for p in basis_a {
                    edges.push(GraphEdge {
                        init: vert,
                        term: vert,
                        label: embed(p),
                        tree: false,
                    });
                    scaffold.push(true);
                }
                new_real_edge_index = edges.len();
                edges.push(GraphEdge {
                    init: vert,
                    term: vert,
                    label: embed(stable),
                    tree: false,
                });
                scaffold.push(false);
                new_num_vertices = num_vertices;
            }
            SplittingKind::Separating { basis_a, basis_b } => {
                let nv = num_vertices;
                for p in basis_a {
                    edges.push(GraphEdge {
                        init: vert,
                        term: vert,
                        label: embed(p),
                        tree: false,
                    });
                    scaffold.push(true);
                }
                for q in basis_b {
                    edges.push(GraphEdge {
                        init: nv,
                        term: nv,
                        label: embed(q),
                        tree: false,
                    });
                    scaffold.push(true);
                }
                new_real_edge_index = edges.len();
                edges.push(GraphEdge {
                    init: vert,
                    term: nv,
                    label: Word::identity(self.graph.rank()),
                    tree: true,
                });
                scaffold.push(false);
                if pointing == Pointing::Vertex(vert) {
                    let base_side = wall.eval(&Word::identity(self.graph.rank()));
                    if base_side != near_u {
                        pointing = Pointing::Vertex(nv);
                    }
                }
                new_num_vertices = num_vertices + 1;
            }
        }
        self.graph = MarkedGraph::new_unchecked_valences(
            self.graph.rank(),
            new_num_vertices,
            edges,
            pointing,
        )?;
        self.scaffold = scaffold;
        self.rebuild()?;
        // certificate: the inserted edge reads back as the requested sphere
        let got = read_splitting(&self.graph, new_real_edge_index)?;
        if exact_key(&got) != key {
            return Err(Error::ModelInconsistency(format!(
                "assembly certificate failed: inserted sphere reads back differently",
            )));
        }
        let got_wall = Wall::from_splitting(&SplitTree::new(&got)?);
        let want_wall = Wall::from_splitting(&SplitTree::new(splitting)?);
        if got_wall.equal_on_ends(&want_wall).is_none() {
            return Err(Error::ModelInconsistency(
                "assembly wall certificate failed".into(),
            ));
        }
        Ok(true)
    }

    fn edge_b_letter(&self, edge: usize) -> Option<Letter> {
        let mut k = 0;
        for (i, e) in self.graph.edges().iter().enumerate() {
            if !e.tree {
                k += 1;
                if i == edge {
                    return Some(k as Letter);
                }
            } else if i == edge {
                return None;
            }
        }
        None
    }

    /// Finishes the assembly: all scaffolding must be consumed and the
    /// result must be a valid simple system.
    pub fn finish(self) -> Result<MarkedGraph> {
        if self.scaffold.iter().any(|&s| s) {
            return Err(Error::ModelInconsistency(
                "sphere set is not simple: scaffolding remains".into(),
            ));
        }
        MarkedGraph::new(
            self.graph.rank(),
            self.graph.num_vertices(),
            self.graph.edges().to_vec(),
            self.graph.pointing(),
        )
    }
}

/// Assembles the simple system with the given sphere set. The first sphere
/// seeds the construction (for projections: the basepointed splitting).
pub fn assemble(spheres: &[(Wall, OneEdgeSplitting)]) -> Result<MarkedGraph> {
    let (first_wall, first) = spheres
        .first()
        .ok_or_else(|| Error::InvalidGraph("cannot assemble an empty sphere set".into()))?;
    let _ = first_wall;
    let mut asm = Assembler::new(first)?;
    for (w, s) in &spheres[1..] {
        asm.insert(w, s)?;
    }
    asm.finish()
}
