//! Crossing complexes: the combinatorial record of the intersection between
//! a pointed simple sphere system and a basepointed sphere.
//!
//! Each wall (sphere lift) cut by its intersection circles falls into
//! regions; the dual structure is a tree. For a system wall the regions are
//! labeled by vertices of the splitting tree it traverses, for the splitting
//! wall by vertices of the system tree. The basepoint, which lies on the
//! splitting sphere, designates a region of the splitting wall; closing
//! disks are the circle sides pointing away from it.

use crate::error::{Error, Result};
use crate::freegroup::Word;
use crate::splittings::core_rect::{core_rectangles_with, Circle};
use crate::splittings::cover::{CoverTree, TreeEdgeLift, TreeVertex};
use crate::splittings::marked_graph::{MarkedGraph, Pointing};
use crate::splittings::splitting::{CosetVertex, OneEdgeSplitting, SplitTree};

/// A tree of wall regions: vertices are regions, edges are circles.
#[derive(Clone, Debug)]
pub struct RegionTree<V, E> {
    pub regions: Vec<V>,
    /// (circle payload, region index, region index)
    pub circles: Vec<(E, usize, usize)>,
}

impl<V: PartialEq, E> RegionTree<V, E> {
    fn region_index(&self, v: &V) -> Option<usize> {
        self.regions.iter().position(|r| r == v)
    }

    /// Splits the tree at a circle: returns the set of region indices on the
    /// far side from `root_region`.
    pub fn far_side(&self, circle: usize, root_region: usize) -> Vec<usize> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.regions.len()];
        for (i, (_, a, b)) in self.circles.iter().enumerate() {
            adj[*a].push((i, *b));
            adj[*b].push((i, *a));
        }
        let mut seen = vec![false; self.regions.len()];
        seen[root_region] = true;
        let mut stack = vec![root_region];
        while let Some(v) = stack.pop() {
            for &(ci, w) in &adj[v] {
                if ci == circle || seen[w] {
                    continue;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
        (0..self.regions.len()).filter(|&i| !seen[i]).collect()
    }

    /// Distance from a circle to a region, counting regions stepped through.
    pub fn circle_depth(&self, circle: usize, root_region: usize) -> usize {
        // depth = number of circles strictly between the root region and
        // this circle's near endpoint, plus one
        let far = self.far_side(circle, root_region);
        let (_, a, b) = &self.circles[circle];
        let near = if far.contains(a) { *b } else { *a };
        // BFS distance in circles from root region to `near`
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.regions.len()];
        for (i, (_, x, y)) in self.circles.iter().enumerate() {
            adj[*x].push((i, *y));
            adj[*y].push((i, *x));
        }
        let mut dist = vec![usize::MAX; self.regions.len()];
        dist[root_region] = 0;
        let mut q = std::collections::VecDeque::new();
        q.push_back(root_region);
        while let Some(v) = q.pop_front() {
            for &(_, w) in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist[near] + 1
    }
}

/// A sphere piece: a region of a system wall, with its boundary circles.
#[derive(Clone, Debug)]
pub struct SpherePiece {
    /// which sphere orbit of the system hosts the piece
    pub edge: usize,
    /// region index in the host wall's region tree
    pub region: usize,
    /// indices into `circles` of the boundary circles
    pub boundary: Vec<usize>,
}

/// A closing disk: the side of a circle on the splitting wall pointing away
/// from the basepoint region.
#[derive(Clone, Debug)]
pub struct ClosingDisk {
    /// index into `circles`
    pub circle: usize,
    /// distance to the basepoint region in the splitting-wall region tree
    pub nesting_depth: usize,
    /// regions of the splitting wall covered by the disk
    pub far_regions: Vec<usize>,
}

pub struct CrossingComplex {
    pub graph: MarkedGraph,
    pub sigma: OneEdgeSplitting,
    pub tree: CoverTree,
    pub split: SplitTree,
    /// circle orbits: lifts of system walls crossing the base splitting wall
    pub circles: Vec<Circle>,
    /// region tree of the base splitting wall (regions = system-tree
    /// vertices, circles = indices into `circles`)
    pub sigma_wall: RegionTree<TreeVertex, usize>,
    /// index of the basepoint region in `sigma_wall.regions`
    pub base_region: usize,
    /// per system edge: region tree of the wall lift (1, e); regions are
    /// splitting-tree vertices, circles are indices into `circles`
    pub walls: Vec<RegionTree<CosetVertex, usize>>,
}

impl CrossingComplex {
    pub fn build(
        graph: &MarkedGraph,
        sigma: &OneEdgeSplitting,
        window: usize,
    ) -> Result<CrossingComplex> {
        if !sigma.basepointed {
            return Err(Error::InvalidGraph(
                "crossing complex needs a basepointed splitting".into(),
            ));
        }
        let base_graph_vertex = match graph.pointing() {
            Pointing::Vertex(v) => v,
            Pointing::Edge(e, _) => graph.edges()[e].init,
            Pointing::None => {
                return Err(Error::InvalidGraph(
                    "crossing complex needs a pointed system".into(),
                ))
            }
        };
        let tree = CoverTree::new(graph)?;
        let split = SplitTree::new(sigma)?;
        let circles = core_rectangles_with(&tree, &split, window)?;

        // splitting-wall region tree: spanned by the circle lifts in the
        // system tree
        let mut sigma_wall = RegionTree {
            regions: Vec::new(),
            circles: Vec::new(),
        };
        {
            let mut add_region = |rt: &mut RegionTree<TreeVertex, usize>, v: TreeVertex| {
                match rt.region_index(&v) {
                    Some(i) => i,
                    None => {
                        rt.regions.push(v);
                        rt.regions.len() - 1
                    }
                }
            };
            for (ci, c) in circles.iter().enumerate() {
                let (a, b) = tree.endpoints(&c.lift);
                let ia = add_region(&mut sigma_wall, a);
                let ib = add_region(&mut sigma_wall, b);
                sigma_wall.circles.push((ci, ia, ib));
            }
            // connectivity (Euler) check: the span of the circle lifts must
            // use no other edges
            if !circles.is_empty() {
                for i in 0..circles.len() {
                    for j in (i + 1)..circles.len() {
                        let (a, _) = tree.endpoints(&circles[i].lift);
                        let (b, _) = tree.endpoints(&circles[j].lift);
                        for (step, _) in tree.path(&a, &b) {
                            if !circles.iter().any(|c| c.lift == step) {
                                return Err(Error::ModelInconsistency(format!(
                                    "splitting wall region span leaks through ({}, e{})",
                                    step.copy, step.edge
                                )));
                            }
                        }
                    }
                }
                if sigma_wall.regions.len() != circles.len() + 1 {
                    return Err(Error::ModelInconsistency(
                        "splitting-wall Euler identity failed".into(),
                    ));
                }
            }
        }
        // basepoint region: the system-tree vertex of the basepoint
        let base_vertex = TreeVertex {
            copy: Word::identity(graph.rank()),
            vertex: base_graph_vertex,
        };
        let base_region = if circles.is_empty() {
            sigma_wall.regions.push(base_vertex.clone());
            0
        } else {
            sigma_wall.region_index(&base_vertex).ok_or_else(|| {
                Error::ModelInconsistency(
                    "basepoint region is not met by the splitting wall".into(),
                )
            })?
        };

        // per system edge: region tree of the representative wall (1, e)
        let mut walls = Vec::new();
        for e in 0..graph.edges().len() {
            let mut rt: RegionTree<CosetVertex, usize> = RegionTree {
                regions: Vec::new(),
                circles: Vec::new(),
            };
            // circles on wall (1, e): from circle (u, e): the splitting lift
            // crossing it is the edge with element psi(u)^-1
            let mut lifts: Vec<(usize, Word)> = Vec::new(); // (circle idx, adapted element)
            for (ci, c) in circles.iter().enumerate() {
                if c.lift.edge != e {
                    continue;
                }
                let g = tree.to_std(&c.lift.copy).inverse();
                lifts.push((ci, split.to_adapted(&g)));
            }
            for (ci, elem) in &lifts {
                let (va, vb) = split_edge_endpoints(&split, elem);
                let ia = match rt.region_index(&va) {
                    Some(i) => i,
                    None => {
                        rt.regions.push(va);
                        rt.regions.len() - 1
                    }
                };
                let ib = match rt.region_index(&vb) {
                    Some(i) => i,
                    None => {
                        rt.regions.push(vb);
                        rt.regions.len() - 1
                    }
                };
                rt.circles.push((*ci, ia, ib));
            }
            if lifts.is_empty() {
                // unsplit wall: a single region
                rt.regions.push(split.vertex_a(&Word::identity(graph.rank())));
            } else {
                // span check in the splitting tree
                for i in 0..lifts.len() {
                    for j in (i + 1)..lifts.len() {
                        let (a, _) = split_edge_endpoints(&split, &lifts[i].1);
                        let (b, _) = split_edge_endpoints(&split, &lifts[j].1);
                        for elem in split.path_edges(&a, &b) {
                            if !lifts.iter().any(|(_, l)| *l == elem) {
                                return Err(Error::ModelInconsistency(format!(
                                    "system wall e{e} region span leaks",
                                )));
                            }
                        }
                    }
                }
                if rt.regions.len() != lifts.len() + 1 {
                    return Err(Error::ModelInconsistency(format!(
                        "system wall e{e} Euler identity failed",
                    )));
                }
            }
            walls.push(rt);
        }

        Ok(CrossingComplex {
            graph: graph.clone(),
            sigma: sigma.clone(),
            tree,
            split,
            circles,
            sigma_wall,
            base_region,
            walls,
        })
    }

    /// All sphere pieces, one per region of each wall orbit.
    pub fn sphere_pieces(&self) -> Vec<SpherePiece> {
        let mut out = Vec::new();
        for (e, rt) in self.walls.iter().enumerate() {
            for r in 0..rt.regions.len() {
                let boundary: Vec<usize> = rt
                    .circles
                    .iter()
                    .filter(|(_, a, b)| *a == r || *b == r)
                    .map(|(ci, _, _)| *ci)
                    .collect();
                out.push(SpherePiece {
                    edge: e,
                    region: r,
                    boundary,
                });
            }
        }
        out
    }

    /// The nested family of closing disks, one per circle.
    pub fn closing_disks(&self) -> Vec<ClosingDisk> {
        let mut out = Vec::new();
        for ci in 0..self.circles.len() {
            let tree_idx = self
                .sigma_wall
                .circles
                .iter()
                .position(|(c, _, _)| *c == ci)
                .expect("every circle lies on the splitting wall");
            let far_regions = self.sigma_wall.far_side(tree_idx, self.base_region);
            let nesting_depth = self.sigma_wall.circle_depth(tree_idx, self.base_region);
            out.push(ClosingDisk {
                circle: ci,
                nesting_depth,
                far_regions,
            });
        }
        out
    }

    /// Structural checks: Euler identities, proper nesting of closing disks.
    pub fn validate(&self) -> Result<()> {
        if !self.circles.is_empty()
            && self.sigma_wall.regions.len() != self.circles.len() + 1
        {
            return Err(Error::ModelInconsistency("sigma wall Euler".into()));
        }
        for (e, rt) in self.walls.iter().enumerate() {
            if rt.regions.len() != rt.circles.len() + 1 {
                return Err(Error::ModelInconsistency(format!("wall e{e} Euler")));
            }
        }
        // proper nesting: closing disks, as far-side region sets, are
        // pairwise nested or disjoint
        let disks = self.closing_disks();
        for i in 0..disks.len() {
            for j in (i + 1)..disks.len() {
                let a: std::collections::BTreeSet<_> =
                    disks[i].far_regions.iter().copied().collect();
                let b: std::collections::BTreeSet<_> =
                    disks[j].far_regions.iter().copied().collect();
                let inter = a.intersection(&b).count();
                if inter != 0 && inter != a.len().min(b.len()) {
                    return Err(Error::ModelInconsistency(
                        "closing disks not properly nested".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Textual dump of circles, pieces and disks for golden-file tests.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "circles {}", self.circles.len()).unwrap();
        for (i, c) in self.circles.iter().enumerate() {
            writeln!(s, "circle {i}: wall e{} copy {}", c.lift.edge, c.lift.copy).unwrap();
        }
        for (e, rt) in self.walls.iter().enumerate() {
            writeln!(s, "wall e{e}: {} regions", rt.regions.len()).unwrap();
        }
        writeln!(
            s,
            "sigma wall: {} regions, basepoint region {}",
            self.sigma_wall.regions.len(),
            self.base_region
        )
        .unwrap();
        for d in self.closing_disks() {
            writeln!(
                s,
                "disk at circle {}: depth {}, {} far regions",
                d.circle,
                d.nesting_depth,
                d.far_regions.len()
            )
            .unwrap();
        }
        s
    }

    /// DOT export of the splitting-wall region tree.
    pub fn sigma_wall_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "graph sigma_wall {{").unwrap();
        for (i, r) in self.sigma_wall.regions.iter().enumerate() {
            let mark = if i == self.base_region {
                ", style=filled, fillcolor=lightblue"
            } else {
                ""
            };
            writeln!(s, "  r{i} [label=\"({}, v{})\"{mark}];", r.copy, r.vertex).unwrap();
        }
        for (ci, a, b) in &self.sigma_wall.circles {
            writeln!(s, "  r{a} -- r{b} [label=\"c{ci}\"];").unwrap();
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

/// Endpoints of a splitting-tree edge given by its element (adapted
/// coordinates).
pub fn split_edge_endpoints(split: &SplitTree, elem: &Word) -> (CosetVertex, CosetVertex) {
    let g = split.from_adapted(elem);
    if split.splitting.is_separating() {
        (split.vertex_a(&g), split.vertex_b(&g))
    } else {
        let t_std = split.from_adapted(&Word::generator(
            split.rank(),
            split.rank() as crate::freegroup::Letter,
        ));
        (split.vertex_a(&g), split.vertex_a(&g.mul(&t_std)))
    }
}
