//! Folded subgroup graphs for finitely generated subgroups of F_n.
//!
//! Used for membership tests, subgroup bases, intersections, and canonical
//! keys for subgroups (exact and up to conjugacy).

use super::words::{Letter, Word};
use std::collections::{HashMap, VecDeque};

type V = u32;

/// A folded labeled graph with a basepoint. After folding, edges are
/// deterministic: at most one outgoing edge per signed letter at each vertex.
#[derive(Clone, Debug)]
pub struct SubgroupGraph {
    rank: usize,
    base: V,
    /// next[v][dir(l)] = target of the l-labeled edge at v
    next: Vec<Vec<Option<V>>>,
}

#[inline]
fn dir(rank: usize, l: Letter) -> usize {
    debug_assert!(l != 0 && (l.unsigned_abs() as usize) <= rank);
    if l > 0 {
        (l as usize) - 1
    } else {
        rank + (-l as usize) - 1
    }
}

#[inline]
fn undir(rank: usize, d: usize) -> Letter {
    if d < rank {
        (d + 1) as Letter
    } else {
        -((d - rank + 1) as Letter)
    }
}

struct Folder {
    rank: usize,
    uf: Vec<V>,
    slots: Vec<HashMap<usize, V>>,
    queue: VecDeque<(V, Letter, V)>,
}

impl Folder {
    fn new(rank: usize) -> Folder {
        Folder {
            rank,
            uf: Vec::new(),
            slots: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn new_vertex(&mut self) -> V {
        let v = self.uf.len() as V;
        self.uf.push(v);
        self.slots.push(HashMap::new());
        v
    }

    fn find(&mut self, mut x: V) -> V {
        while self.uf[x as usize] != x {
            self.uf[x as usize] = self.uf[self.uf[x as usize] as usize];
            x = self.uf[x as usize];
        }
        x
    }

    fn add_edge(&mut self, a: V, l: Letter, b: V) {
        self.queue.push_back((a, l, b));
    }

    fn merge(&mut self, a: V, b: V) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        // merge rb into ra; requeue rb's slots as edge claims
        self.uf[rb as usize] = ra;
        let slots = std::mem::take(&mut self.slots[rb as usize]);
        for (d, t) in slots {
            self.queue.push_back((ra, undir(self.rank, d), t));
        }
    }

    fn run(&mut self) {
        while let Some((a, l, b)) = self.queue.pop_front() {
            let ra = self.find(a);
            let rb = self.find(b);
            let d = dir(self.rank, l);
            let dinv = dir(self.rank, -l);
            match self.slots[ra as usize].get(&d).copied() {
                Some(t) => {
                    let rt = self.find(t);
                    if rt != rb {
                        self.merge(rt, rb);
                    }
                }
                None => {
                    self.slots[ra as usize].insert(d, rb);
                    match self.slots[rb as usize].get(&dinv).copied() {
                        Some(t) => {
                            let rt = self.find(t);
                            if rt != ra {
                                self.merge(rt, ra);
                            }
                        }
                        None => {
                            self.slots[rb as usize].insert(dinv, ra);
                        }
                    }
                }
            }
        }
    }
}

impl SubgroupGraph {
    pub fn from_words(rank: usize, words: &[Word]) -> SubgroupGraph {
        let mut f = Folder::new(rank);
        let base = f.new_vertex();
        for w in words {
            if w.is_empty() {
                continue;
            }
            let mut cur = base;
            let letters = w.letters();
            for (i, &l) in letters.iter().enumerate() {
                let target = if i + 1 == letters.len() {
                    base
                } else {
                    f.new_vertex()
                };
                f.add_edge(cur, l, target);
                cur = target;
            }
        }
        f.run();
        Self::from_folder(f, base)
    }

    fn from_folder(mut f: Folder, base: V) -> SubgroupGraph {
        let rank = f.rank;
        let base_root = f.find(base);
        // compact reachable roots
        let mut remap: HashMap<V, V> = HashMap::new();
        let mut order: Vec<V> = Vec::new();
        remap.insert(base_root, 0);
        order.push(base_root);
        let mut stack = vec![base_root];
        while let Some(v) = stack.pop() {
            let slot_items: Vec<(usize, V)> =
                f.slots[v as usize].iter().map(|(&d, &t)| (d, t)).collect();
            for (_, t) in slot_items {
                let rt = f.find(t);
                if !remap.contains_key(&rt) {
                    remap.insert(rt, order.len() as V);
                    order.push(rt);
                    stack.push(rt);
                }
            }
        }
        let mut next = vec![vec![None; 2 * rank]; order.len()];
        for (nv, &ov) in order.iter().enumerate() {
            let slot_items: Vec<(usize, V)> =
                f.slots[ov as usize].iter().map(|(&d, &t)| (d, t)).collect();
            for (d, t) in slot_items {
                let rt = f.find(t);
                next[nv][d] = Some(remap[&rt]);
            }
        }
        SubgroupGraph {
            rank,
            base: 0,
            next,
        }
    }

    pub fn rank_param(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, w: &Word) -> bool {
        let mut cur = self.base;
        for &l in w.letters() {
            match self.next[cur as usize][dir(self.rank, l)] {
                Some(t) => cur = t,
                None => return false,
            }
        }
        cur == self.base
    }

    /// Walks `w` from the base vertex; returns the end vertex if the whole
    /// word can be read.
    pub fn walk(&self, w: &Word) -> Option<u32> {
        let mut cur = self.base;
        for &l in w.letters() {
            cur = self.next[cur as usize][dir(self.rank, l)]?;
        }
        Some(cur)
    }

    pub fn vertex_count(&self) -> usize {
        self.next.len()
    }

    /// First Betti number = rank of the subgroup.
    pub fn subgroup_rank(&self) -> usize {
        let v = self.next.len();
        let mut e = 0usize;
        for row in &self.next {
            for d in 0..self.rank {
                if row[d].is_some() {
                    e += 1;
                }
            }
        }
        e + 1 - v
    }

    /// True iff the subgroup is all of F_n.
    pub fn is_whole_group(&self) -> bool {
        self.next.len() == 1 && (0..2 * self.rank).all(|d| self.next[0][d].is_some())
    }

    /// A free basis of the subgroup, read off a spanning tree.
    pub fn basis(&self) -> Vec<Word> {
        let n = self.next.len();
        let mut parent: Vec<Option<(V, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut path: Vec<Word> = vec![Word::identity(self.rank); n];
        seen[self.base as usize] = true;
        let mut q = VecDeque::new();
        q.push_back(self.base);
        while let Some(v) = q.pop_front() {
            for d in 0..2 * self.rank {
                if let Some(t) = self.next[v as usize][d] {
                    if !seen[t as usize] {
                        seen[t as usize] = true;
                        let l = undir(self.rank, d);
                        parent[t as usize] = Some((v, l));
                        path[t as usize] = path[v as usize].mul(&Word::generator(self.rank, l));
                        q.push_back(t);
                    }
                }
            }
        }
        let in_tree = |a: V, l: Letter, b: V| -> bool {
            parent[b as usize] == Some((a, l)) || parent[a as usize] == Some((b, -l))
        };
        let mut out = Vec::new();
        for v in 0..n as V {
            for d in 0..self.rank {
                if let Some(t) = self.next[v as usize][d] {
                    let l = undir(self.rank, d);
                    if !in_tree(v, l, t) {
                        let w = path[v as usize]
                            .mul(&Word::generator(self.rank, l))
                            .mul(&path[t as usize].inverse());
                        out.push(w);
                    }
                }
            }
        }
        out
    }

    /// Intersection of two based subgroups (component of the base pair in the
    /// product graph).
    pub fn intersect(&self, other: &SubgroupGraph) -> SubgroupGraph {
        assert_eq!(self.rank, other.rank);
        let mut ids: HashMap<(V, V), V> = HashMap::new();
        let mut next: Vec<Vec<Option<V>>> = Vec::new();
        let mut stack = vec![(self.base, other.base)];
        ids.insert((self.base, other.base), 0);
        next.push(vec![None; 2 * self.rank]);
        while let Some((a, b)) = stack.pop() {
            let vid = ids[&(a, b)];
            for d in 0..2 * self.rank {
                if let (Some(ta), Some(tb)) = (self.next[a as usize][d], other.next[b as usize][d])
                {
                    let key = (ta, tb);
                    let tid = *ids.entry(key).or_insert_with(|| {
                        next.push(vec![None; 2 * self.rank]);
                        stack.push(key);
                        (next.len() - 1) as V
                    });
                    next[vid as usize][d] = Some(tid);
                }
            }
        }
        let mut g = SubgroupGraph {
            rank: self.rank,
            base: 0,
            next,
        };
        g.prune();
        g
    }

    /// Removes valence-<=1 vertices other than the base.
    fn prune(&mut self) {
        loop {
            let mut victim = None;
            for v in 0..self.next.len() as V {
                if v == self.base {
                    continue;
                }
                let deg: usize = (0..2 * self.rank)
                    .filter(|&d| self.next[v as usize][d].is_some())
                    .count();
                if deg <= 1 {
                    victim = Some(v);
                    break;
                }
            }
            let Some(v) = victim else { break };
            for d in 0..2 * self.rank {
                if let Some(t) = self.next[v as usize][d] {
                    let l = undir(self.rank, d);
                    self.next[t as usize][dir(self.rank, -l)] = None;
                }
            }
            // swap-remove v
            let last = (self.next.len() - 1) as V;
            self.next.swap(v as usize, last as usize);
            self.next.pop();
            if self.base == last {
                self.base = v;
            }
            for row in self.next.iter_mut() {
                for slot in row.iter_mut() {
                    if *slot == Some(last) {
                        *slot = Some(v);
                    }
                }
            }
        }
    }

    /// Canonical key for the subgroup as a based subgroup (exact equality).
    pub fn canonical_key(&self) -> String {
        canonical_bfs_key(self, self.base)
    }

    /// Canonical key for the conjugacy class: prune the base-tail, then
    /// minimize the BFS key over all starting vertices.
    pub fn conjugacy_key(&self) -> String {
        let mut g = self.clone();
        loop {
            if g.next.len() <= 1 {
                break;
            }
            let deg: usize = (0..2 * g.rank)
                .filter(|&d| g.next[g.base as usize][d].is_some())
                .count();
            if deg == 1 {
                let d = (0..2 * g.rank)
                    .find(|&d| g.next[g.base as usize][d].is_some())
                    .unwrap();
                let t = g.next[g.base as usize][d].unwrap();
                let l = undir(g.rank, d);
                g.next[g.base as usize][d] = None;
                g.next[t as usize][dir(g.rank, -l)] = None;
                let old_base = g.base;
                g.base = t;
                // drop the isolated old base
                let last = (g.next.len() - 1) as V;
                g.next.swap(old_base as usize, last as usize);
                g.next.pop();
                if g.base == last {
                    g.base = old_base;
                }
                for row in g.next.iter_mut() {
                    for slot in row.iter_mut() {
                        if *slot == Some(last) {
                            *slot = Some(old_base);
                        }
                    }
                }
            } else {
                break;
            }
        }
        (0..g.next.len() as V)
            .map(|v| canonical_bfs_key(&g, v))
            .min()
            .unwrap_or_default()
    }
}

fn canonical_bfs_key(g: &SubgroupGraph, start: V) -> String {
    let mut label: HashMap<V, usize> = HashMap::new();
    let mut order = Vec::new();
    label.insert(start, 0);
    order.push(start);
    let mut q = VecDeque::new();
    q.push_back(start);
    while let Some(v) = q.pop_front() {
        for d in 0..2 * g.rank {
            if let Some(t) = g.next[v as usize][d] {
                if !label.contains_key(&t) {
                    label.insert(t, order.len());
                    order.push(t);
                    q.push_back(t);
                }
            }
        }
    }
    let mut s = String::new();
    use std::fmt::Write;
    for &v in &order {
        write!(s, "[").unwrap();
        for d in 0..2 * g.rank {
            match g.next[v as usize][d] {
                Some(t) => write!(s, "{},", label[&t]).unwrap(),
                None => write!(s, "-,").unwrap(),
            }
        }
        write!(s, "]").unwrap();
    }
    s
}
