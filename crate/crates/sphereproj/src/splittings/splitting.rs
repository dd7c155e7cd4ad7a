//! One-edge free splittings: single essential spheres.
//!
//! A separating sphere corresponds to a decomposition F_n = A * B, a
//! nonseparating one to F_n = A * <t> with A a corank-1 free factor. The
//! splitting's Bass-Serre tree is computed through coordinates adapted to the
//! combined basis; vertices are cosets with canonical representatives and
//! edges are labeled by group elements.

use crate::error::{Error, Result};
use crate::freegroup::{FreeMap, Letter, SubgroupGraph, Word};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplittingKind {
    Separating { basis_a: Vec<Word>, basis_b: Vec<Word> },
    Corank1 { basis_a: Vec<Word>, stable: Word },
}

/// A one-edge free splitting of F_n, i.e. a single essential sphere.
/// `basepointed` records whether the sphere carries the basepoint; the
/// orientation sign fixes the transverse orientation of the sphere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneEdgeSplitting {
    rank: usize,
    kind: SplittingKind,
    pub basepointed: bool,
    pub orientation: i8,
}

impl OneEdgeSplitting {
    pub fn separating(
        rank: usize,
        basis_a: Vec<Word>,
        basis_b: Vec<Word>,
    ) -> Result<OneEdgeSplitting> {
        if basis_a.is_empty() || basis_b.is_empty() {
            return Err(Error::InvalidBasis(
                "separating splitting needs both parts nonempty".into(),
            ));
        }
        let s = OneEdgeSplitting {
            rank,
            kind: SplittingKind::Separating { basis_a, basis_b },
            basepointed: false,
            orientation: 1,
        };
        s.adapted()?; // verifies the combined basis
        Ok(s)
    }

    pub fn corank1(rank: usize, basis_a: Vec<Word>, stable: Word) -> Result<OneEdgeSplitting> {
        let s = OneEdgeSplitting {
            rank,
            kind: SplittingKind::Corank1 { basis_a, stable },
            basepointed: false,
            orientation: 1,
        };
        s.adapted()?;
        Ok(s)
    }

    pub fn with_basepoint(mut self) -> OneEdgeSplitting {
        self.basepointed = true;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> &SplittingKind {
        &self.kind
    }

    pub fn is_separating(&self) -> bool {
        matches!(self.kind, SplittingKind::Separating { .. })
    }

    /// The combined basis words, A-part first; for corank-1 the stable
    /// letter comes last.
    pub fn combined_basis(&self) -> Vec<Word> {
        match &self.kind {
            SplittingKind::Separating { basis_a, basis_b } => {
                let mut v = basis_a.clone();
                v.extend(basis_b.iter().cloned());
                v
            }
            SplittingKind::Corank1 { basis_a, stable } => {
                let mut v = basis_a.clone();
                v.push(stable.clone());
                v
            }
        }
    }

    pub fn rank_a(&self) -> usize {
        match &self.kind {
            SplittingKind::Separating { basis_a, .. } => basis_a.len(),
            SplittingKind::Corank1 { basis_a, .. } => basis_a.len(),
        }
    }

    /// The adapted-coordinates automorphism x_i -> combined basis word i,
    /// verified (this is the basis check).
    pub fn adapted(&self) -> Result<FreeMap> {
        FreeMap::automorphism(self.rank, self.combined_basis())
            .map_err(|e| Error::InvalidBasis(format!("splitting basis invalid: {e}")))
    }
}

/// Letter classification in adapted coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum LetterClass {
    A,
    B, // B-part letters (separating) or the stable letter (corank-1)
}

/// The Bass-Serre tree of a one-edge splitting, with canonical coset
/// representatives in adapted coordinates.
pub struct SplitTree {
    pub splitting: OneEdgeSplitting,
    adapted: FreeMap,
    adapted_inv: FreeMap,
    rank_a: usize,
}

/// A vertex of the splitting tree: a coset with canonical representative in
/// adapted coordinates. For separating splittings vertices alternate between
/// A-cosets and B-cosets; for corank-1 all vertices are A-cosets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetVertex {
    pub is_a: bool,
    /// canonical representative, adapted coordinates
    pub rep: Word,
}

impl SplitTree {
    pub fn new(splitting: &OneEdgeSplitting) -> Result<SplitTree> {
        let adapted = splitting.adapted()?;
        let adapted_inv = adapted.inverse_map();
        Ok(SplitTree {
            splitting: splitting.clone(),
            rank_a: splitting.rank_a(),
            adapted,
            adapted_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.splitting.rank()
    }

    fn class(&self, l: Letter) -> LetterClass {
        if (l.unsigned_abs() as usize) <= self.rank_a {
            LetterClass::A
        } else {
            LetterClass::B
        }
    }

    /// Converts a standard-letter element to adapted coordinates.
    pub fn to_adapted(&self, w: &Word) -> Word {
        self.adapted_inv.apply(w)
    }

    /// Converts an adapted-coordinates element to standard letters.
    pub fn from_adapted(&self, w: &Word) -> Word {
        self.adapted.apply(w)
    }

    fn strip_trailing(&self, w: &Word, class: LetterClass) -> Word {
        let letters = w.letters();
        let mut end = letters.len();
        while end > 0 && self.class(letters[end - 1]) == class {
            end -= 1;
        }
        w.prefix(end)
    }

    /// The A-coset vertex of an element (standard letters).
    pub fn vertex_a(&self, g: &Word) -> CosetVertex {
        let ga = self.to_adapted(g);
        CosetVertex {
            is_a: true,
            rep: self.strip_trailing(&ga, LetterClass::A),
        }
    }

    /// For separating splittings: the B-coset vertex of an element.
    pub fn vertex_b(&self, g: &Word) -> CosetVertex {
        debug_assert!(self.splitting.is_separating());
        let ga = self.to_adapted(g);
        CosetVertex {
            is_a: false,
            rep: self.strip_trailing(&ga, LetterClass::B),
        }
    }

    /// Parent in the tree rooted at the base A-vertex, with the edge element
    /// (adapted coordinates) of the connecting edge. Root has no parent.
    pub fn parent(&self, v: &CosetVertex) -> Option<(CosetVertex, Word)> {
        if self.splitting.is_separating() {
            if v.is_a {
                if v.rep.is_empty() {
                    return None; // root
                }
                // rep ends with a B-syllable; parent is the B-vertex of rep
                let parent = CosetVertex {
                    is_a: false,
                    rep: self.strip_trailing(&v.rep, LetterClass::B),
                };
                Some((parent, v.rep.clone()))
            } else {
                if v.rep.is_empty() {
                    // vertex B, parent root A via edge 1
                    return Some((
                        CosetVertex {
                            is_a: true,
                            rep: Word::identity(self.rank()),
                        },
                        Word::identity(self.rank()),
                    ));
                }
                let parent = CosetVertex {
                    is_a: true,
                    rep: self.strip_trailing(&v.rep, LetterClass::A),
                };
                Some((parent, v.rep.clone()))
            }
        } else {
            // corank-1: rep ends with a t-letter (or is empty at the root)
            if v.rep.is_empty() {
                return None;
            }
            let letters = v.rep.letters();
            let last = letters[letters.len() - 1];
            debug_assert_eq!(self.class(last), LetterClass::B);
            let q = v.rep.prefix(letters.len() - 1);
            let parent = CosetVertex {
                is_a: true,
                rep: self.strip_trailing(&q, LetterClass::A),
            };
            let elem = if last > 0 { q } else { v.rep.clone() };
            Some((parent, elem))
        }
    }

    pub fn depth(&self, v: &CosetVertex) -> usize {
        let mut d = 0;
        let mut cur = v.clone();
        while let Some((p, _)) = self.parent(&cur) {
            d += 1;
            cur = p;
        }
        d
    }

    /// Edge elements (adapted coordinates) along the path between two
    /// vertices.
    pub fn path_edges(&self, u: &CosetVertex, v: &CosetVertex) -> Vec<Word> {
        let mut au = vec![u.clone()];
        let mut av = vec![v.clone()];
        let mut eu = Vec::new();
        let mut ev = Vec::new();
        let mut du = self.depth(u);
        let mut dv = self.depth(v);
        let mut cu = u.clone();
        let mut cv = v.clone();
        while du > dv {
            let (p, e) = self.parent(&cu).unwrap();
            eu.push(e);
            cu = p;
            au.push(cu.clone());
            du -= 1;
        }
        while dv > du {
            let (p, e) = self.parent(&cv).unwrap();
            ev.push(e);
            cv = p;
            av.push(cv.clone());
            dv -= 1;
        }
        while cu != cv {
            let (pu, e1) = self.parent(&cu).expect("distinct vertices at root");
            let (pv, e2) = self.parent(&cv).expect("distinct vertices at root");
            eu.push(e1);
            ev.push(e2);
            cu = pu;
            cv = pv;
        }
        let _ = (au, av);
        ev.reverse();
        eu.extend(ev);
        eu
    }

    /// Side of the base edge (element 1) a group element's vertex lies on,
    /// before applying the stored orientation: `false` is the root side.
    pub fn raw_side(&self, g: &Word) -> bool {
        let v = self.vertex_a(g);
        if self.splitting.is_separating() {
            // B-side iff the canonical representative starts with a B-letter
            match v.rep.letters().first() {
                None => false,
                Some(&l) => self.class(l) == LetterClass::B,
            }
        } else {
            // t-side iff the representative starts with a positive t-letter
            match v.rep.letters().first() {
                None => false,
                Some(&l) => self.class(l) == LetterClass::B && l > 0,
            }
        }
    }

    /// Oriented side of a group element with respect to the base wall.
    pub fn side(&self, g: &Word) -> bool {
        let s = self.raw_side(g);
        if self.splitting.orientation >= 0 {
            s
        } else {
            !s
        }
    }

    /// Elements `k` (standard letters) such that the hop from k to k*x
    /// crosses the base wall, for each signed generator x: these bound the
    /// non-constancy region of the side function.
    pub fn side_flip_support(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for i in 1..=self.rank() {
            for &sgn in &[1i8, -1] {
                let x = Word::generator(self.rank(), sgn * i as Letter);
                // path edges from base vertex A to xA; hop crosses base wall
                // iff some edge element equals 1; translates k with k^-1 on
                // the path give flips: k in S^-1 for edge elements S
                let va = CosetVertex {
                    is_a: true,
                    rep: Word::identity(self.rank()),
                };
                let vx = self.vertex_a(&x);
                for e in self.path_edges(&va, &vx) {
                    let k = self.from_adapted(&e.inverse());
                    out.push(k);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Reads off the exact one-edge splitting of the sphere `edge` inside a
/// marked graph: the vertex groups of the tree obtained by collapsing all
/// other edges.
pub fn read_splitting(
    graph: &super::marked_graph::MarkedGraph,
    edge: usize,
) -> Result<OneEdgeSplitting> {
    use super::marked_graph::Pointing;
    let rank = graph.rank();
    // is the edge a bridge?
    let mut reach = vec![false; graph.num_vertices()];
    let e0 = &graph.edges()[edge];
    reach[e0.init] = true;
    let mut q = std::collections::VecDeque::new();
    q.push_back(e0.init);
    while let Some(v) = q.pop_front() {
        for (i, e) in graph.edges().iter().enumerate() {
            if i == edge {
                continue;
            }
            for (a, b) in [(e.init, e.term), (e.term, e.init)] {
                if a == v && !reach[b] {
                    reach[b] = true;
                    q.push_back(b);
                }
            }
        }
    }
    let bridge = !reach[e0.term];
    let basepointed = matches!(graph.pointing(), Pointing::Edge(pe, _) if pe == edge);
    if bridge {
        // separating: A = labels on the base-vertex side, B = the rest
        let g = graph.with_spanning_tree(&graph.choose_spanning_tree(&[edge], &[])?)?;
        let base = g.base_vertex();
        // recompute reachability in g minus edge
        let mut reach = vec![false; g.num_vertices()];
        reach[g.edges()[edge].init] = true;
        let mut q = std::collections::VecDeque::new();
        q.push_back(g.edges()[edge].init);
        while let Some(v) = q.pop_front() {
            for (i, e) in g.edges().iter().enumerate() {
                if i == edge {
                    continue;
                }
                for (a, b) in [(e.init, e.term), (e.term, e.init)] {
                    if a == v && !reach[b] {
                        reach[b] = true;
                        q.push_back(b);
                    }
                }
            }
        }
        let base_side_init = reach[base];
        let mut basis_a = Vec::new();
        let mut basis_b = Vec::new();
        for (i, e) in g.edges().iter().enumerate() {
            if e.tree {
                continue;
            }
            debug_assert_eq!(reach[e.init], reach[e.term]);
            // loops on the basepoint side generate A
            if reach[e.init] == base_side_init {
                basis_a.push(e.label.clone());
            } else {
                basis_b.push(e.label.clone());
            }
            let _ = i;
        }
        let mut s = OneEdgeSplitting::separating(rank, basis_a, basis_b)?;
        s.basepointed = basepointed;
        if let Pointing::Edge(pe, sign) = graph.pointing() {
            if pe == edge {
                s.orientation = sign;
            }
        }
        Ok(s)
    } else {
        // nonseparating: re-choose the spanning tree avoiding the edge
        let tree = graph.choose_spanning_tree(&[], &[edge])?;
        if tree.contains(&edge) {
            return Err(Error::InvalidGraph("edge unavoidable in tree".into()));
        }
        let g = graph.with_spanning_tree(&tree)?;
        let stable = g.edges()[edge].label.clone();
        let mut basis_a = Vec::new();
        for (i, e) in g.edges().iter().enumerate() {
            if !e.tree && i != edge {
                basis_a.push(e.label.clone());
            }
        }
        let mut s = OneEdgeSplitting::corank1(rank, basis_a, stable)?;
        s.basepointed = basepointed;
        if let Pointing::Edge(pe, sign) = graph.pointing() {
            if pe == edge {
                s.orientation = sign;
            }
        }
        Ok(s)
    }
}

/// The standard simple extension of a splitting: roses of basis loops on the
/// splitting's vertices. The splitting sphere is edge 0 of the result.
pub fn standard_extension(
    s: &OneEdgeSplitting,
) -> Result<super::marked_graph::MarkedGraph> {
    use super::marked_graph::{GraphEdge, MarkedGraph, Pointing};
    let rank = s.rank();
    let pointing = if s.basepointed {
        Pointing::Edge(0, s.orientation)
    } else {
        Pointing::Vertex(0)
    };
    match s.kind() {
        SplittingKind::Separating { basis_a, basis_b } => {
            let mut edges = vec![GraphEdge {
                init: 0,
                term: 1,
                label: Word::identity(rank),
                tree: true,
            }];
            for w in basis_a {
                edges.push(GraphEdge {
                    init: 0,
                    term: 0,
                    label: w.clone(),
                    tree: false,
                });
            }
            for w in basis_b {
                edges.push(GraphEdge {
                    init: 1,
                    term: 1,
                    label: w.clone(),
                    tree: false,
                });
            }
            MarkedGraph::new(rank, 2, edges, pointing)
        }
        SplittingKind::Corank1 { basis_a, stable } => {
            let mut edges = vec![GraphEdge {
                init: 0,
                term: 0,
                label: stable.clone(),
                tree: false,
            }];
            for w in basis_a {
                edges.push(GraphEdge {
                    init: 0,
                    term: 0,
                    label: w.clone(),
                    tree: false,
                });
            }
            MarkedGraph::new(rank, 1, edges, pointing)
        }
    }
}

/// Canonical key of the exact splitting (pointed sphere class).
pub fn exact_key(s: &OneEdgeSplitting) -> String {
    match s.kind() {
        SplittingKind::Separating { basis_a, basis_b } => {
            let ka = SubgroupGraph::from_words(s.rank(), basis_a).canonical_key();
            let kb = SubgroupGraph::from_words(s.rank(), basis_b).canonical_key();
            let (x, y) = if ka <= kb { (ka, kb) } else { (kb, ka) };
            format!("sep|{x}|{y}")
        }
        SplittingKind::Corank1 { basis_a, stable } => {
            let ka = SubgroupGraph::from_words(s.rank(), basis_a).canonical_key();
            let t = double_coset_canonical(s.rank(), basis_a, stable);
            format!("cork|{ka}|{t}")
        }
    }
}

/// Canonical key of the splitting up to conjugacy (unpointed sphere class).
pub fn conjugacy_key(s: &OneEdgeSplitting) -> String {
    match s.kind() {
        SplittingKind::Separating { basis_a, basis_b } => {
            let ka = SubgroupGraph::from_words(s.rank(), basis_a).conjugacy_key();
            let kb = SubgroupGraph::from_words(s.rank(), basis_b).conjugacy_key();
            let (x, y) = if ka <= kb { (ka, kb) } else { (kb, ka) };
            format!("sep|{x}|{y}")
        }
        SplittingKind::Corank1 { basis_a, .. } => {
            let ka = SubgroupGraph::from_words(s.rank(), basis_a).conjugacy_key();
            format!("cork|{ka}")
        }
    }
}

/// Canonical representative of the double coset A t A: breadth-first search
/// over basis multiplications, minimizing (length, letters).
fn double_coset_canonical(rank: usize, basis_a: &[Word], t: &Word) -> String {
    use std::collections::HashSet;
    let mut gens: Vec<Word> = Vec::new();
    for w in basis_a {
        gens.push(w.clone());
        gens.push(w.inverse());
    }
    let max_gen_len = gens.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut best = t.clone();
    let mut seen: HashSet<Word> = HashSet::new();
    let mut frontier = vec![t.clone()];
    seen.insert(t.clone());
    let cap = t.len() + 2 * max_gen_len + 2;
    let mut steps = 0usize;
    while let Some(w) = frontier.pop() {
        steps += 1;
        if steps > 20_000 {
            break;
        }
        for g in &gens {
            for cand in [g.mul(&w), w.mul(g)] {
                if cand.len() <= cap && !seen.contains(&cand) {
                    if (cand.len(), cand.letters().to_vec())
                        < (best.len(), best.letters().to_vec())
                    {
                        best = cand.clone();
                    }
                    seen.insert(cand.clone());
                    frontier.push(cand);
                }
            }
        }
    }
    format!("{best}")
}
