//! Marked graphs: dual graphs of simple sphere systems.
//!
//! Vertices are complementary pieces, edges are spheres. A spanning tree is
//! fixed and every non-tree edge carries a label word; the labels freely
//! generate F_n and determine the identification of the graph's fundamental
//! group with F_n (tree edges read the identity). Pointed graphs additionally
//! record where the basepoint sits: in a complementary piece (vertex) or on
//! a sphere (oriented edge).

use crate::error::{Error, Result};
use crate::freegroup::{FreeMap, Letter, Word};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub init: usize,
    pub term: usize,
    /// Marking label; identity for spanning-tree edges.
    pub label: Word,
    pub tree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pointing {
    None,
    Vertex(usize),
    /// Basepoint on the sphere of this edge; the sign is the transverse
    /// orientation (+1 = along the stored edge orientation).
    Edge(usize, i8),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedGraph {
    rank: usize,
    num_vertices: usize,
    edges: Vec<GraphEdge>,
    pointing: Pointing,
}

impl MarkedGraph {
    pub fn new(
        rank: usize,
        num_vertices: usize,
        edges: Vec<GraphEdge>,
        pointing: Pointing,
    ) -> Result<MarkedGraph> {
        let g = MarkedGraph {
            rank,
            num_vertices,
            edges,
            pointing,
        };
        g.validate()?;
        Ok(g)
    }

    /// Construction without the sphere-system valence conditions, for
    /// intermediate graphs during assembly and blow-up enumeration.
    pub fn new_unchecked_valences(
        rank: usize,
        num_vertices: usize,
        edges: Vec<GraphEdge>,
        pointing: Pointing,
    ) -> Result<MarkedGraph> {
        let g = MarkedGraph {
            rank,
            num_vertices,
            edges,
            pointing,
        };
        g.validate_core()?;
        Ok(g)
    }

    /// The rose on n petals: one vertex, generator-labeled loops.
    pub fn rose(rank: usize, pointing: Pointing) -> MarkedGraph {
        let edges = (1..=rank)
            .map(|i| GraphEdge {
                init: 0,
                term: 0,
                label: Word::generator(rank, i as Letter),
                tree: false,
            })
            .collect();
        MarkedGraph::new(rank, 1, edges, pointing).expect("rose is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn pointing(&self) -> Pointing {
        self.pointing
    }

    pub fn with_pointing(&self, pointing: Pointing) -> MarkedGraph {
        let mut g = self.clone();
        g.pointing = pointing;
        g
    }

    /// Base vertex used for exact marking comparisons and tree loci.
    pub fn base_vertex(&self) -> usize {
        match self.pointing {
            Pointing::None => 0,
            Pointing::Vertex(v) => v,
            Pointing::Edge(e, _) => self.edges[e].init,
        }
    }

    fn validate_core(&self) -> Result<()> {
        if self.num_vertices == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        for e in &self.edges {
            if e.init >= self.num_vertices || e.term >= self.num_vertices {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            if e.tree && !e.label.is_empty() {
                return Err(Error::InvalidGraph("tree edge with nontrivial label".into()));
            }
            if e.label.rank() != self.rank && !e.label.is_empty() {
                return Err(Error::RankMismatch(e.label.rank(), self.rank));
            }
        }
        match self.pointing {
            Pointing::Vertex(v) if v >= self.num_vertices => {
                return Err(Error::InvalidGraph("pointing vertex out of range".into()))
            }
            Pointing::Edge(e, s) => {
                if e >= self.edges.len() || (s != 1 && s != -1) {
                    return Err(Error::InvalidGraph("pointing edge out of range".into()));
                }
            }
            _ => {}
        }
        // spanning tree: acyclic and connects all vertices
        let tree_edges: Vec<usize> = (0..self.edges.len())
            .filter(|&i| self.edges[i].tree)
            .collect();
        if tree_edges.len() + 1 != self.num_vertices {
            return Err(Error::InvalidGraph(format!(
                "spanning tree has {} edges for {} vertices",
                tree_edges.len(),
                self.num_vertices
            )));
        }
        let mut reach = vec![false; self.num_vertices];
        let mut q = VecDeque::new();
        reach[0] = true;
        q.push_back(0usize);
        while let Some(v) = q.pop_front() {
            for &i in &tree_edges {
                let e = &self.edges[i];
                for (a, b) in [(e.init, e.term), (e.term, e.init)] {
                    if a == v && !reach[b] {
                        reach[b] = true;
                        q.push_back(b);
                    }
                }
            }
        }
        if !reach.iter().all(|&r| r) {
            return Err(Error::InvalidGraph("spanning tree does not span".into()));
        }
        // Betti number must equal the rank
        let betti = self.edges.len() + 1 - self.num_vertices;
        if betti != self.rank {
            return Err(Error::InvalidGraph(format!(
                "first Betti number {betti} != rank {}",
                self.rank
            )));
        }
        // labels must freely generate F_n
        if self.rank > 0 {
            self.marking()?;
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        self.validate_core()?;
        // sphere-system conditions: no inessential sphere (valence-1 vertex),
        // no parallel spheres (valence-2 vertex with two distinct edges)
        for v in 0..self.num_vertices {
            let mut deg = 0usize;
            let mut incident: Vec<usize> = Vec::new();
            for (i, e) in self.edges.iter().enumerate() {
                if e.init == v {
                    deg += 1;
                    incident.push(i);
                }
                if e.term == v {
                    deg += 1;
                    incident.push(i);
                }
            }
            if deg == 0 && self.num_vertices > 1 {
                return Err(Error::InvalidGraph(format!("isolated vertex {v}")));
            }
            if deg == 1 {
                return Err(Error::InvalidGraph(format!(
                    "valence-1 vertex {v} (inessential sphere)"
                )));
            }
            if deg == 2 {
                incident.dedup();
                if incident.len() != 1 {
                    return Err(Error::InvalidGraph(format!(
                        "valence-2 vertex {v} (parallel spheres)"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indices of the non-tree edges, in order; these carry the marking.
    pub fn marking_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| !self.edges[i].tree)
            .collect()
    }

    /// The marking as a verified automorphism b_k -> label(e_k) of F_n,
    /// where b_k runs over non-tree edges in order.
    pub fn marking(&self) -> Result<FreeMap> {
        let labels: Vec<Word> = self
            .marking_edges()
            .iter()
            .map(|&i| self.edges[i].label.clone())
            .collect();
        FreeMap::automorphism(self.rank, labels).map_err(|_| {
            Error::InvalidGraph("marking labels do not freely generate".into())
        })
    }

    /// Acts by an automorphism: labels are pushed forward through `f`.
    pub fn act(&self, f: &FreeMap) -> Result<MarkedGraph> {
        if !f.is_verified() {
            return Err(Error::NotInvertible);
        }
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            if !e.tree {
                e.label = f.apply(&e.label);
            }
        }
        Ok(g)
    }

    /// Degree of a vertex (loops count twice).
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.init == v) as usize + (e.term == v) as usize)
            .sum()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].init == self.edges[e].term
    }

    /// Spanning-tree path from `from` to `to` as (edge, forward) pairs.
    pub fn tree_path(&self, from: usize, to: usize) -> Vec<(usize, bool)> {
        if from == to {
            return Vec::new();
        }
        // BFS over tree edges from `from`
        let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; self.num_vertices];
        let mut seen = vec![false; self.num_vertices];
        seen[from] = true;
        let mut q = VecDeque::new();
        q.push_back(from);
        while let Some(v) = q.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                if !e.tree {
                    continue;
                }
                for (a, b, fwd) in [(e.init, e.term, true), (e.term, e.init, false)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        prev[b] = Some((v, i, fwd));
                        q.push_back(b);
                    }
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while let Some((p, i, fwd)) = prev[cur] {
            path.push((i, fwd));
            cur = p;
            if cur == from {
                break;
            }
        }
        path.reverse();
        path
    }

    /// Re-expresses the marking with a different spanning tree. The set
    /// `new_tree` must be a spanning tree (edge indices).
    pub fn with_spanning_tree(&self, new_tree: &[usize]) -> Result<MarkedGraph> {
        let mut is_new_tree = vec![false; self.edges.len()];
        for &i in new_tree {
            is_new_tree[i] = true;
        }
        if new_tree.len() + 1 != self.num_vertices {
            return Err(Error::InvalidGraph("not a spanning tree".into()));
        }
        // BFS over the new tree computing g(v) = old marking word of the
        // new-tree path from vertex 0
        let mut gword: Vec<Option<Word>> = vec![None; self.num_vertices];
        gword[0] = Some(Word::identity(self.rank));
        let mut q = VecDeque::new();
        q.push_back(0usize);
        while let Some(v) = q.pop_front() {
            for &i in new_tree {
                let e = &self.edges[i];
                for (a, b, fwd) in [(e.init, e.term, true), (e.term, e.init, false)] {
                    if a == v && gword[b].is_none() {
                        let w = if fwd {
                            gword[v].as_ref().unwrap().mul(&e.label)
                        } else {
                            gword[v].as_ref().unwrap().mul(&e.label.inverse())
                        };
                        gword[b] = Some(w);
                        q.push_back(b);
                    }
                }
            }
        }
        if gword.iter().any(|w| w.is_none()) {
            return Err(Error::InvalidGraph("new tree does not span".into()));
        }
        let gword: Vec<Word> = gword.into_iter().map(|w| w.unwrap()).collect();
        let mut edges = self.edges.clone();
        for (i, e) in edges.iter_mut().enumerate() {
            let w = gword[e.init].mul(&self.edges[i].label).mul(&gword[e.term].inverse());
            e.tree = is_new_tree[i];
            e.label = if e.tree {
                debug_assert!(w.is_empty(), "tree label must vanish");
                Word::identity(self.rank)
            } else {
                w
            };
        }
        MarkedGraph::new_unchecked_valences(self.rank, self.num_vertices, edges, self.pointing)
    }

    /// Chooses a spanning tree containing `required` (which must be a forest)
    /// and avoiding `avoid` where possible.
    pub fn choose_spanning_tree(
        &self,
        required: &[usize],
        avoid: &[usize],
    ) -> Result<Vec<usize>> {
        let mut comp: Vec<usize> = (0..self.num_vertices).collect();
        fn find(comp: &mut Vec<usize>, mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        let mut tree = Vec::new();
        let mut try_add = |comp: &mut Vec<usize>, tree: &mut Vec<usize>, i: usize| -> bool {
            let e = &self.edges[i];
            let (a, b) = (find(comp, e.init), find(comp, e.term));
            if a == b {
                return false;
            }
            comp[a] = b;
            tree.push(i);
            true
        };
        for &i in required {
            if !try_add(&mut comp, &mut tree, i) {
                return Err(Error::NonForest);
            }
        }
        let avoided: std::collections::HashSet<usize> = avoid.iter().copied().collect();
        for i in 0..self.edges.len() {
            if !avoided.contains(&i) {
                try_add(&mut comp, &mut tree, i);
            }
        }
        for i in 0..self.edges.len() {
            try_add(&mut comp, &mut tree, i);
        }
        if tree.len() + 1 != self.num_vertices {
            return Err(Error::InvalidGraph("graph not connected".into()));
        }
        Ok(tree)
    }

    /// Collapses a forest of edges (contraction); the marking is preserved.
    pub fn collapse(&self, forest: &[usize]) -> Result<MarkedGraph> {
        for &i in forest {
            if self.is_loop(i) {
                return Err(Error::NonForest);
            }
            if let Pointing::Edge(pe, _) = self.pointing {
                if pe == i {
                    return Err(Error::InvalidGraph(
                        "cannot collapse the basepointed sphere".into(),
                    ));
                }
            }
        }
        // re-choose spanning tree to contain the forest
        let tree = self.choose_spanning_tree(forest, &[])?;
        let g = self.with_spanning_tree(&tree)?;
        // contract forest edges
        let mut repr: Vec<usize> = (0..g.num_vertices).collect();
        fn find(repr: &mut Vec<usize>, mut x: usize) -> usize {
            while repr[x] != x {
                repr[x] = repr[repr[x]];
                x = repr[x];
            }
            x
        }
        let in_forest: std::collections::HashSet<usize> = forest.iter().copied().collect();
        for &i in forest {
            let (a, b) = (find(&mut repr, g.edges[i].init), find(&mut repr, g.edges[i].term));
            if a != b {
                repr[a] = b;
            } else {
                return Err(Error::NonForest);
            }
        }
        // renumber vertices
        let mut newid = vec![usize::MAX; g.num_vertices];
        let mut count = 0usize;
        for v in 0..g.num_vertices {
            let r = find(&mut repr, v);
            if newid[r] == usize::MAX {
                newid[r] = count;
                count += 1;
            }
            newid[v] = newid[r];
        }
        let mut edges = Vec::new();
        let mut edge_map = vec![usize::MAX; g.edges.len()];
        for (i, e) in g.edges.iter().enumerate() {
            if in_forest.contains(&i) {
                continue;
            }
            edge_map[i] = edges.len();
            edges.push(GraphEdge {
                init: newid[e.init],
                term: newid[e.term],
                label: e.label.clone(),
                tree: e.tree,
            });
        }
        let pointing = match g.pointing {
            Pointing::None => Pointing::None,
            Pointing::Vertex(v) => Pointing::Vertex(newid[v]),
            Pointing::Edge(e, s) => Pointing::Edge(edge_map[e], s),
        };
        MarkedGraph::new_unchecked_valences(g.rank, count, edges, pointing)
    }

    /// All graph isomorphisms onto `other` (vertex map, edge map, and for
    /// each edge whether orientation is preserved).
    pub fn isomorphisms(&self, other: &MarkedGraph) -> Vec<GraphIso> {
        let mut out = Vec::new();
        if self.num_vertices != other.num_vertices
            || self.edges.len() != other.edges.len()
            || self.rank != other.rank
        {
            return out;
        }
        let mut vmap = vec![usize::MAX; self.num_vertices];
        let mut used = vec![false; other.num_vertices];
        self.iso_search(other, 0, &mut vmap, &mut used, &mut out);
        out
    }

    fn iso_search(
        &self,
        other: &MarkedGraph,
        v: usize,
        vmap: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<GraphIso>,
    ) {
        if v == self.num_vertices {
            self.match_edges(other, vmap, out);
            return;
        }
        for w in 0..other.num_vertices {
            if used[w] || self.valence(v) != other.valence(w) {
                continue;
            }
            vmap[v] = w;
            used[w] = true;
            self.iso_search(other, v + 1, vmap, used, out);
            used[w] = false;
            vmap[v] = usize::MAX;
        }
    }

    fn match_edges(&self, other: &MarkedGraph, vmap: &[usize], out: &mut Vec<GraphIso>) {
        // group edges by unordered endpoint pair under the vertex map
        use std::collections::HashMap;
        let key = |a: usize, b: usize| if a <= b { (a, b) } else { (b, a) };
        let mut mine: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            mine.entry(key(vmap[e.init], vmap[e.term])).or_default().push(i);
        }
        let mut theirs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, e) in other.edges.iter().enumerate() {
            theirs.entry(key(e.init, e.term)).or_default().push(i);
        }
        if mine.len() != theirs.len() {
            return;
        }
        let mut classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (k, v) in &mine {
            match theirs.get(k) {
                Some(w) if w.len() == v.len() => classes.push((v.clone(), w.clone())),
                _ => return,
            }
        }
        // enumerate bijections within classes
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for mut p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
                p.clear();
            }
            out
        }
        let mut assignments: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for (srcs, dsts) in &classes {
            let ps = perms(srcs.len());
            let mut next = Vec::new();
            for asg in &assignments {
                for p in &ps {
                    let mut a2 = asg.clone();
                    for (k, &pi) in p.iter().enumerate() {
                        a2.push((srcs[k], dsts[pi]));
                    }
                    next.push(a2);
                }
            }
            assignments = next;
        }
        for asg in assignments {
            let mut emap = vec![usize::MAX; self.edges.len()];
            for &(s, d) in &asg {
                emap[s] = d;
            }
            // orientations: forced for non-loops, free for loops
            let mut loop_edges = Vec::new();
            let mut orient = vec![true; self.edges.len()];
            let mut ok = true;
            for (i, e) in self.edges.iter().enumerate() {
                let f = &other.edges[emap[i]];
                if vmap[e.init] == vmap[e.term] {
                    if f.init != f.term || f.init != vmap[e.init] {
                        ok = false;
                        break;
                    }
                    loop_edges.push(i);
                } else if f.init == vmap[e.init] && f.term == vmap[e.term] {
                    orient[i] = true;
                } else if f.init == vmap[e.term] && f.term == vmap[e.init] {
                    orient[i] = false;
                } else {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for mask in 0..(1usize << loop_edges.len()) {
                let mut o = orient.clone();
                for (bit, &i) in loop_edges.iter().enumerate() {
                    o[i] = mask & (1 << bit) == 0;
                }
                out.push(GraphIso {
                    vmap: vmap.to_vec(),
                    emap: emap.clone(),
                    orient: o,
                });
            }
        }
    }

    /// The word read in `self`'s marking by a path given as (edge, forward)
    /// steps.
    pub fn path_word(&self, path: &[(usize, bool)]) -> Word {
        let mut w = Word::identity(self.rank);
        for &(i, fwd) in path {
            let l = &self.edges[i].label;
            w = if fwd { w.mul(l) } else { w.mul(&l.inverse()) };
        }
        w
    }

    /// The marking automorphism induced by transporting `self`'s marking
    /// through the isomorphism: returns beta with
    /// beta(label_self(loop)) = label_other(iso(loop)), based at `base`.
    pub fn transported_marking(
        &self,
        other: &MarkedGraph,
        iso: &GraphIso,
        base: usize,
    ) -> Result<FreeMap> {
        let mut image_words = Vec::new();
        for &i in &self.marking_edges() {
            let e = &self.edges[i];
            let mut loop_path = self.tree_path(base, e.init);
            loop_path.push((i, true));
            loop_path.extend(self.tree_path(e.term, base));
            // map through the isomorphism and read in `other`
            let mut w = Word::identity(self.rank);
            for &(j, fwd) in &loop_path {
                let jj = iso.emap[j];
                let f = fwd == iso.orient[j];
                let l = &other.edges[jj].label;
                w = if f { w.mul(l) } else { w.mul(&l.inverse()) };
            }
            image_words.push(w);
        }
        // beta = V . U^-1 with U = self marking, V = image words
        let u = self.marking()?;
        let v = FreeMap::endomorphism(self.rank, image_words)?;
        let uinv = u.inverse_map();
        let beta = FreeMap::endomorphism(
            self.rank,
            (1..=self.rank)
                .map(|k| v.apply(&uinv.image_of(k as Letter)))
                .collect(),
        )?;
        Ok(beta)
    }

    /// Equivalence of marked graphs: exactly matching markings for pointed
    /// graphs, up to inner automorphism for unpointed ones.
    pub fn equivalent(&self, other: &MarkedGraph, pointed: bool) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        for iso in self.isomorphisms(other) {
            if pointed && !iso.respects_pointing(self, other) {
                continue;
            }
            let base = if pointed { self.base_vertex() } else { 0 };
            let beta = self.transported_marking(other, &iso, base)?;
            let beta = match beta.verified() {
                Ok(b) => b,
                Err(_) => continue,
            };
            let hit = if pointed {
                (1..=self.rank).all(|k| beta.image_of(k as Letter) == Word::generator(self.rank, k as Letter))
            } else {
                beta.inner_conjugator().is_some()
            };
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl MarkedGraph {
    /// All spanning trees (as sorted edge index sets).
    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        let non_loops: Vec<usize> = (0..self.edges.len())
            .filter(|&i| !self.is_loop(i))
            .collect();
        let need = self.num_vertices - 1;
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(
            g: &MarkedGraph,
            non_loops: &[usize],
            from: usize,
            need: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if current.len() == need {
                // check spanning (acyclicity is maintained below)
                let mut uf: Vec<usize> = (0..g.num_vertices).collect();
                fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
                    while uf[x] != x {
                        uf[x] = uf[uf[x]];
                        x = uf[x];
                    }
                    x
                }
                for &i in current.iter() {
                    let (a, b) = (find(&mut uf, g.edges[i].init), find(&mut uf, g.edges[i].term));
                    uf[a] = b;
                }
                let root = find(&mut uf, 0);
                if (0..g.num_vertices).all(|v| find(&mut uf, v) == root) {
                    out.push(current.clone());
                }
                return;
            }
            for (k, &i) in non_loops.iter().enumerate().skip(from) {
                // quick acyclicity check
                let mut uf: Vec<usize> = (0..g.num_vertices).collect();
                fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
                    while uf[x] != x {
                        uf[x] = uf[uf[x]];
                        x = uf[x];
                    }
                    x
                }
                let mut ok = true;
                for &j in current.iter().chain(std::iter::once(&i)) {
                    let (a, b) = (find(&mut uf, g.edges[j].init), find(&mut uf, g.edges[j].term));
                    if a == b {
                        ok = false;
                        break;
                    }
                    uf[a] = b;
                }
                if !ok {
                    continue;
                }
                current.push(i);
                rec(g, non_loops, k + 1, need, current, out);
                current.pop();
            }
        }
        rec(self, &non_loops, 0, need, &mut current, &mut out);
        out
    }

    /// All label tuples of minimal total length in the inner-conjugation
    /// orbit of this graph's marking (labels conjugated simultaneously).
    fn inner_minimal_labelings(&self) -> Vec<Vec<Word>> {
        let labels: Vec<Word> = self.edges.iter().map(|e| e.label.clone()).collect();
        let total = |ls: &[Word]| ls.iter().map(|w| w.len()).sum::<usize>();
        let conj_all = |ls: &[Word], c: &Word| -> Vec<Word> {
            ls.iter()
                .map(|w| {
                    if w.is_empty() {
                        w.clone()
                    } else {
                        w.conjugate(c)
                    }
                })
                .collect()
        };
        // convex descent with plateau exploration in the Cayley tree
        let mut best = total(&labels);
        let mut frontier: Vec<Word> = vec![Word::identity(self.rank)];
        let mut seen: std::collections::HashSet<Word> = frontier.iter().cloned().collect();
        let mut minimal: Vec<(Word, Vec<Word>)> = vec![(Word::identity(self.rank), labels.clone())];
        let mut guard = 0usize;
        while let Some(c) = frontier.pop() {
            guard += 1;
            if guard > 50_000 {
                break;
            }
            for i in 1..=self.rank {
                for &sgn in &[1i8, -1] {
                    let c2 = c.mul(&Word::generator(self.rank, sgn * i as Letter));
                    if seen.contains(&c2) {
                        continue;
                    }
                    let ls = conj_all(&labels, &c2);
                    let t = total(&ls);
                    if t < best {
                        best = t;
                        minimal.clear();
                    }
                    if t <= best {
                        seen.insert(c2.clone());
                        minimal.push((c2.clone(), ls));
                        frontier.push(c2);
                    }
                }
            }
        }
        minimal
            .into_iter()
            .filter(|(c, ls)| {
                let _ = c;
                total(ls) == best
            })
            .map(|(_, ls)| ls)
            .collect()
    }

    /// Canonical presentation and key of the marked graph. For pointed
    /// graphs the marking is canonicalized exactly; for unpointed graphs
    /// also up to inner automorphism.
    pub fn canonicalize(&self, pointed: bool) -> (MarkedGraph, String) {
        let mut best: Option<(String, MarkedGraph)> = None;
        let perms = permutations(self.num_vertices);
        for tree in self.spanning_trees() {
            let re = match self.with_spanning_tree(&tree) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let labelings = if pointed {
                vec![re.edges.iter().map(|e| e.label.clone()).collect::<Vec<_>>()]
            } else {
                re.inner_minimal_labelings()
            };
            for labels in &labelings {
                for perm in &perms {
                    // rows: (init, term, tree, label letters, orig index, flipped)
                    let mut rows: Vec<(usize, usize, bool, Vec<Letter>, usize, bool)> = Vec::new();
                    for (i, e) in re.edges.iter().enumerate() {
                        let (mut a, mut b) = (perm[e.init], perm[e.term]);
                        let mut label = labels[i].clone();
                        let flip = if a != b {
                            a > b
                        } else {
                            label.inverse().letters() < label.letters()
                        };
                        if flip {
                            std::mem::swap(&mut a, &mut b);
                            label = label.inverse();
                        }
                        rows.push((a, b, e.tree, label.letters().to_vec(), i, flip));
                    }
                    let mut order: Vec<usize> = (0..rows.len()).collect();
                    order.sort_by(|&x, &y| {
                        (&rows[x].0, &rows[x].1, &rows[x].2, &rows[x].3)
                            .cmp(&(&rows[y].0, &rows[y].1, &rows[y].2, &rows[y].3))
                    });
                    let pointing = match re.pointing {
                        Pointing::None => Pointing::None,
                        Pointing::Vertex(v) => Pointing::Vertex(perm[v]),
                        Pointing::Edge(e, s) => {
                            let pos = order.iter().position(|&k| rows[k].4 == e).unwrap();
                            let flipped = rows.iter().find(|r| r.4 == e).map(|r| r.5).unwrap();
                            Pointing::Edge(pos, if flipped { -s } else { s })
                        }
                    };
                    let mut key = format!("r{};p{:?};", self.rank, pointing);
                    use std::fmt::Write;
                    for &k in &order {
                        let (a, b, t, ref l, _, _) = rows[k];
                        write!(key, "[{a},{b},{t},{l:?}]").unwrap();
                    }
                    let better = match &best {
                        None => true,
                        Some((bk, _)) => key < *bk,
                    };
                    if better {
                        let edges: Vec<GraphEdge> = order
                            .iter()
                            .map(|&k| {
                                let (a, b, t, ref l, _, _) = rows[k];
                                GraphEdge {
                                    init: a,
                                    term: b,
                                    label: Word::reduce(self.rank, l).expect("canonical label"),
                                    tree: t,
                                }
                            })
                            .collect();
                        let g = MarkedGraph {
                            rank: self.rank,
                            num_vertices: self.num_vertices,
                            edges,
                            pointing,
                        };
                        best = Some((key, g));
                    }
                }
            }
        }
        let (key, g) = best.expect("at least one presentation");
        (g, key)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct GraphIso {
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
    /// orient[i]: true if edge i keeps its orientation under the map.
    pub orient: Vec<bool>,
}

impl GraphIso {
    pub fn respects_pointing(&self, a: &MarkedGraph, b: &MarkedGraph) -> bool {
        match (a.pointing(), b.pointing()) {
            (Pointing::None, Pointing::None) => true,
            (Pointing::Vertex(v), Pointing::Vertex(w)) => self.vmap[v] == w,
            (Pointing::Edge(e, s), Pointing::Edge(f, t)) => {
                self.emap[e] == f
                    && if self.orient[e] { s == t } else { s == -t }
            }
            _ => false,
        }
    }
}
