//! Blow-ups (inverse forest collapses) and the disjointness relation between
//! sphere systems, decided by bounded common-refinement search.

use super::marked_graph::{GraphEdge, MarkedGraph, Pointing};
use crate::error::Result;
use crate::freegroup::Word;

/// Half-edges at a vertex: (edge index, true = init end).
fn half_edges(g: &MarkedGraph, v: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.init == v {
            out.push((i, true));
        }
        if e.term == v {
            out.push((i, false));
        }
    }
    out
}

/// All single-vertex blow-ups of `g`: splits of one vertex along a new tree
/// edge, with both sides keeping valence >= 2 plus the new edge.
pub fn single_blowups(g: &MarkedGraph) -> Vec<MarkedGraph> {
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        let hs = half_edges(g, v);
        let n = hs.len();
        if n < 4 {
            continue;
        }
        // subsets of half-edges moved to the new vertex; avoid the
        // complement-symmetric duplicates by pinning half-edge 0 to stay
        for mask in 1u32..(1 << (n - 1)) {
            let moved: Vec<(usize, bool)> = (0..n - 1)
                .filter(|&k| mask & (1 << k) != 0)
                .map(|k| hs[k + 1])
                .collect();
            if moved.len() < 2 || n - moved.len() < 2 {
                continue;
            }
            let new_v = g.num_vertices();
            let mut edges = g.edges().to_vec();
            for &(i, at_init) in &moved {
                if at_init {
                    edges[i].init = new_v;
                } else {
                    edges[i].term = new_v;
                }
            }
            edges.push(GraphEdge {
                init: v,
                term: new_v,
                label: Word::identity(g.rank()),
                tree: true,
            });
            if let Ok(h) = MarkedGraph::new(g.rank(), g.num_vertices() + 1, edges.clone(), g.pointing()) {
                out.push(h);
            }
            // splitting the basepoint region leaves the basepoint on either side
            if g.pointing() == Pointing::Vertex(v) {
                if let Ok(h) =
                    MarkedGraph::new(g.rank(), g.num_vertices() + 1, edges, Pointing::Vertex(new_v))
                {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// One representative per equivalence class of marked graphs admitting a
/// forest collapse onto `g`, with at most `max_edges` edges (including `g`
/// itself).
pub fn blowups(g: &MarkedGraph, max_edges: usize, pointed: bool) -> Result<Vec<MarkedGraph>> {
    let mut out: Vec<MarkedGraph> = vec![g.clone()];
    let mut frontier: Vec<MarkedGraph> = vec![g.clone()];
    while let Some(h) = frontier.pop() {
        if h.edges().len() >= max_edges {
            continue;
        }
        'cand: for b in single_blowups(&h) {
            for known in &out {
                if known.edges().len() == b.edges().len() && known.equivalent(&b, pointed)? {
                    continue 'cand;
                }
            }
            out.push(b.clone());
            frontier.push(b);
        }
    }
    Ok(out)
}

/// All forests of a graph (edge subsets without loops or cycles), excluding
/// a basepointed sphere if any.
fn forests(g: &MarkedGraph) -> Vec<Vec<usize>> {
    let mut candidate_edges = Vec::new();
    for i in 0..g.edges().len() {
        if g.is_loop(i) {
            continue;
        }
        if matches!(g.pointing(), Pointing::Edge(pe, _) if pe == i) {
            continue;
        }
        candidate_edges.push(i);
    }
    let mut out = vec![Vec::new()];
    for &i in &candidate_edges {
        let mut extended = Vec::new();
        for f in &out {
            let mut f2 = f.clone();
            f2.push(i);
            if is_forest(g, &f2) {
                extended.push(f2);
            }
        }
        out.extend(extended);
    }
    out
}

fn is_forest(g: &MarkedGraph, edges: &[usize]) -> bool {
    let mut uf: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for &i in edges {
        let e = &g.edges()[i];
        let (a, b) = (find(&mut uf, e.init), find(&mut uf, e.term));
        if a == b {
            return false;
        }
        uf[a] = b;
    }
    true
}

/// Every system sharing a common refinement with `g` (including `g` itself),
/// up to equivalence: the result of collapsing any forest in any bounded
/// blow-up. These are exactly the systems disjoint from `g` up to homotopy.
pub fn compatible_systems(g: &MarkedGraph, pointed: bool) -> Result<Vec<MarkedGraph>> {
    let max_edges = (3 * g.rank()).saturating_sub(3).max(g.edges().len());
    let mut out: Vec<MarkedGraph> = Vec::new();
    for h in blowups(g, max_edges, pointed)? {
        'coll: for f in forests(&h) {
            let c = match h.collapse(&f) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if MarkedGraph::new(c.rank(), c.num_vertices(), c.edges().to_vec(), c.pointing())
                .is_err()
            {
                continue; // violates system valence conditions
            }
            for known in &out {
                if known.edges().len() == c.edges().len() && known.equivalent(&c, pointed)? {
                    continue 'coll;
                }
            }
            out.push(c);
        }
    }
    Ok(out)
}

/// Disjoint realizability of two systems: a common marked graph collapses
/// onto both by forests. Equivalent systems count as adjacent (distance-0
/// convention handled by callers).
pub fn adjacent(g1: &MarkedGraph, g2: &MarkedGraph, pointed: bool) -> Result<bool> {
    if g1.rank() != g2.rank() {
        return Err(crate::Error::RankMismatch(g1.rank(), g2.rank()));
    }
    for c in compatible_systems(g1, pointed)? {
        if c.edges().len() == g2.edges().len() && c.equivalent(g2, pointed)? {
            return Ok(true);
        }
    }
    Ok(false)
}
