//! Walls: two-sided partitions of the ends of F_n induced by sphere lifts.
//!
//! A wall is stored as a side function on group positions, represented by a
//! finite prefix tree over reduced words which is constant on every leaf
//! cone. Ends correspond to leaf cones, so crossing, nesting and equality of
//! sphere lifts become finite checks on pairs of trees.

use super::cover::{CoverTree, Side, TreeEdgeLift};
use super::splitting::SplitTree;
use crate::freegroup::{Letter, Word};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
enum WallNode {
    Leaf(bool),
    Node { value: bool, children: Vec<(Letter, WallNode)> },
}

/// A cone-rational side function on F_n, standing for the end partition of an
/// embedded sphere lift in the universal cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    rank: usize,
    root: WallNode,
}

impl Wall {
    /// Builds a wall from a side function and a support set: `eval` must be
    /// constant on every cone containing no support point.
    pub fn build(rank: usize, eval: &dyn Fn(&Word) -> bool, support: &[Word]) -> Wall {
        let support: Vec<&Word> = support.iter().collect();
        let root = build_node(rank, eval, &Word::identity(rank), &support);
        Wall { rank, root }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Side of a group position.
    pub fn eval(&self, w: &Word) -> bool {
        let mut node = &self.root;
        for &l in w.letters() {
            match node {
                WallNode::Leaf(v) => return *v,
                WallNode::Node { children, .. } => {
                    match children.iter().find(|(cl, _)| *cl == l) {
                        Some((_, child)) => node = child,
                        None => unreachable!("child for every allowed letter"),
                    }
                }
            }
        }
        match node {
            WallNode::Leaf(v) => *v,
            WallNode::Node { value, .. } => *value,
        }
    }

    /// Internal node words: a valid support set for this wall.
    pub fn support(&self) -> Vec<Word> {
        let mut out = Vec::new();
        collect_support(&self.root, &Word::identity(self.rank), &mut out);
        out
    }

    /// Pairs of sides realized by ends (leaf cones of the mutual refinement).
    pub fn quadrants(&self, other: &Wall) -> BTreeSet<(bool, bool)> {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = BTreeSet::new();
        joint_leaves(
            self.rank,
            View::At(&self.root),
            View::At(&other.root),
            None,
            &mut |a, b| {
                out.insert((a, b));
            },
        );
        out
    }

    /// Side values realized by ends.
    pub fn end_values(&self) -> BTreeSet<bool> {
        let mut out = BTreeSet::new();
        leaves(&self.root, &mut |v| {
            out.insert(v);
        });
        out
    }

    /// Both complementary pieces contain ends.
    pub fn is_essential(&self) -> bool {
        self.end_values().len() == 2
    }

    /// Equality as partitions of ends; `Some(true)` means equal with flipped
    /// signs.
    pub fn equal_on_ends(&self, other: &Wall) -> Option<bool> {
        let q = self.quadrants(other);
        if q.iter().all(|&(a, b)| a == b) {
            Some(false)
        } else if q.iter().all(|&(a, b)| a != b) {
            Some(true)
        } else {
            None
        }
    }

    /// All four end quadrants are nonempty: the spheres must intersect.
    pub fn crosses(&self, other: &Wall) -> bool {
        self.quadrants(other).len() == 4
    }

    /// True if this wall's ends partition is entirely inside the `far` side
    /// of `other` (i.e. `other`'s `!far` halfspace sees only one side of
    /// self). Degenerate equal partitions count as beyond.
    pub fn beyond(&self, other: &Wall, far: bool) -> bool {
        let q = self.quadrants(other);
        let near_pairs: Vec<bool> = q
            .iter()
            .filter(|&&(_, o)| o != far)
            .map(|&(s, _)| s)
            .collect();
        near_pairs.len() < 2
    }

    /// The translated wall g . self (positions h evaluate to self(g^-1 h)).
    pub fn translate(&self, g: &Word) -> Wall {
        let ginv = g.inverse();
        let support: Vec<Word> = self.support().iter().map(|s| g.mul(s)).collect();
        let eval = |h: &Word| self.eval(&ginv.mul(h));
        Wall::build(self.rank, &eval, &support)
    }

    /// Pointwise combination of several walls.
    pub fn combine(rank: usize, parts: &[&Wall], f: &dyn Fn(&[bool]) -> bool) -> Wall {
        let mut support = Vec::new();
        for p in parts {
            support.extend(p.support());
        }
        support.sort();
        support.dedup();
        let eval = |h: &Word| {
            let vals: Vec<bool> = parts.iter().map(|p| p.eval(h)).collect();
            f(&vals)
        };
        Wall::build(rank, &eval, &support)
    }

    /// Restriction of the side function to a subgroup, over the subgroup's
    /// own letters. The basis must be Nielsen-reduced; `margin` must bound
    /// the cancellation a further basis factor can push into a reduced
    /// image word (max basis word length suffices for reduced bases).
    pub fn restrict(&self, basis: &[Word], margin: usize) -> crate::Result<Wall> {
        let sub_rank = basis.len();
        let rank = self.rank;
        let embed = |u: &Word| -> Word {
            let mut w = Word::identity(rank);
            for &l in u.letters() {
                let b = &basis[(l.unsigned_abs() as usize) - 1];
                w = if l > 0 { w.mul(b) } else { w.mul(&b.inverse()) };
            }
            w
        };
        let hard_cap = 2 * (self.depth() + margin) + 8;
        let eval = |u: &Word| self.eval(&embed(u));
        let root = build_restricted(
            sub_rank,
            &eval,
            &Word::identity(sub_rank),
            &|u: &Word| {
                // constant on the subgroup cone when the embedded word sits
                // inside a leaf cone with margin to spare
                let w = embed(u);
                self.leaf_margin(&w).map(|m| m > margin).unwrap_or(false)
            },
            hard_cap,
        )
        .ok_or_else(|| {
            crate::Error::ModelInconsistency("wall restriction did not stabilize".into())
        })?;
        Ok(Wall {
            rank: sub_rank,
            root,
        })
    }

    /// If `w` lies inside a leaf cone, how many letters beyond the leaf root
    /// it has; `None` if `w` is at an internal node.
    fn leaf_margin(&self, w: &Word) -> Option<usize> {
        let mut node = &self.root;
        for (i, &l) in w.letters().iter().enumerate() {
            match node {
                WallNode::Leaf(_) => return Some(w.len() - i),
                WallNode::Node { children, .. } => {
                    node = &children.iter().find(|(cl, _)| *cl == l).unwrap().1;
                }
            }
        }
        match node {
            WallNode::Leaf(_) => Some(0),
            WallNode::Node { .. } => None,
        }
    }

    pub fn depth(&self) -> usize {
        fn d(n: &WallNode) -> usize {
            match n {
                WallNode::Leaf(_) => 0,
                WallNode::Node { children, .. } => {
                    1 + children.iter().map(|(_, c)| d(c)).max().unwrap_or(0)
                }
            }
        }
        d(&self.root)
    }

    /// The wall of an edge lift in a marked-graph cover: side of the position
    /// of each group element (Term side = true).
    pub fn from_lift(tree: &CoverTree, lift: &TreeEdgeLift) -> Wall {
        let rank = tree.rank();
        let base_graph_vertex = tree.graph.base_vertex();
        let eval = |g: &Word| {
            let v = super::cover::TreeVertex {
                copy: tree.to_cover(g),
                vertex: base_graph_vertex,
            };
            tree.side(lift, &v) == Side::Term
        };
        // flip support: hops k -> k x crossing the lift
        let mut support = Vec::new();
        for i in 1..=rank {
            for &sgn in &[1i8, -1] {
                let x = Word::generator(rank, sgn * i as Letter);
                let from = tree.base_vertex();
                let to = super::cover::TreeVertex {
                    copy: tree.to_cover(&x),
                    vertex: base_graph_vertex,
                };
                for (step, _) in tree.path(&from, &to) {
                    if step.edge == lift.edge {
                        // k with phi(k) = lift.copy . step.copy^-1
                        let k = tree.to_std(&lift.copy.mul(&step.copy.inverse()));
                        support.push(k.clone());
                        support.push(k.mul(&x));
                    }
                }
            }
        }
        support.sort();
        support.dedup();
        Wall::build(rank, &eval, &support)
    }

    /// The wall of the base edge of a splitting tree.
    pub fn from_splitting(split: &SplitTree) -> Wall {
        let rank = split.rank();
        let eval = |g: &Word| split.side(g);
        let mut support = Vec::new();
        for k in split.side_flip_support() {
            for i in 1..=rank {
                for &sgn in &[1i8, -1] {
                    let x = Word::generator(rank, sgn * i as Letter);
                    support.push(k.mul(&x));
                }
            }
            support.push(k);
        }
        support.sort();
        support.dedup();
        Wall::build(rank, &eval, &support)
    }
}

enum View<'a> {
    At(&'a WallNode),
    Constant(bool),
}

fn view_step<'a>(v: &View<'a>, l: Letter) -> View<'a> {
    match v {
        View::Constant(b) => View::Constant(*b),
        View::At(WallNode::Leaf(b)) => View::Constant(*b),
        View::At(WallNode::Node { children, .. }) => {
            match children.iter().find(|(cl, _)| *cl == l) {
                Some((_, child)) => View::At(child),
                None => unreachable!("complete child sets"),
            }
        }
    }
}

fn joint_leaves(
    rank: usize,
    a: View<'_>,
    b: View<'_>,
    last: Option<Letter>,
    emit: &mut dyn FnMut(bool, bool),
) {
    let a_done = matches!(a, View::Constant(_)) || matches!(a, View::At(WallNode::Leaf(_)));
    let b_done = matches!(b, View::Constant(_)) || matches!(b, View::At(WallNode::Leaf(_)));
    if a_done && b_done {
        let va = match a {
            View::Constant(v) => v,
            View::At(WallNode::Leaf(v)) => *v,
            _ => unreachable!(),
        };
        let vb = match b {
            View::Constant(v) => v,
            View::At(WallNode::Leaf(v)) => *v,
            _ => unreachable!(),
        };
        emit(va, vb);
        return;
    }
    for i in 1..=rank {
        for &sgn in &[1i8, -1] {
            let l = sgn * i as Letter;
            if let Some(pl) = last {
                if l == -pl {
                    continue;
                }
            }
            joint_leaves(rank, view_step(&a, l), view_step(&b, l), Some(l), emit);
        }
    }
}

fn leaves(node: &WallNode, emit: &mut dyn FnMut(bool)) {
    match node {
        WallNode::Leaf(v) => emit(*v),
        WallNode::Node { children, .. } => {
            for (_, c) in children {
                leaves(c, emit);
            }
        }
    }
}

fn collect_support(node: &WallNode, at: &Word, out: &mut Vec<Word>) {
    if let WallNode::Node { children, .. } = node {
        out.push(at.clone());
        for (l, c) in children {
            collect_support(c, &at.push(*l), out);
        }
    }
}

fn build_node(
    rank: usize,
    eval: &dyn Fn(&Word) -> bool,
    at: &Word,
    support: &[&Word],
) -> WallNode {
    let in_cone: Vec<&Word> = support
        .iter()
        .filter(|s| s.starts_with(at))
        .copied()
        .collect();
    if in_cone.is_empty() {
        return WallNode::Leaf(eval(at));
    }
    let last = at.letters().last().copied();
    let mut children = Vec::new();
    for i in 1..=rank {
        for &sgn in &[1i8, -1] {
            let l = sgn * i as Letter;
            if Some(-l) == last {
                continue;
            }
            children.push((l, build_node(rank, eval, &at.push(l), &in_cone)));
        }
    }
    let value = eval(at);
    let all_same = children
        .iter()
        .all(|(_, c)| matches!(c, WallNode::Leaf(v) if *v == value));
    if all_same {
        return WallNode::Leaf(value);
    }
    WallNode::Node { value, children }
}

fn build_restricted(
    rank: usize,
    eval: &dyn Fn(&Word) -> bool,
    at: &Word,
    is_constant: &dyn Fn(&Word) -> bool,
    cap: usize,
) -> Option<WallNode> {
    if is_constant(at) {
        return Some(WallNode::Leaf(eval(at)));
    }
    if at.len() > cap {
        return None;
    }
    let last = at.letters().last().copied();
    let mut children = Vec::new();
    for i in 1..=rank {
        for &sgn in &[1i8, -1] {
            let l = sgn * i as Letter;
            if Some(-l) == last {
                continue;
            }
            children.push((l, build_restricted(rank, eval, &at.push(l), is_constant, cap)?));
        }
    }
    let value = eval(at);
    let all_same = children
        .iter()
        .all(|(_, c)| matches!(c, WallNode::Leaf(v) if *v == value));
    if all_same {
        return Some(WallNode::Leaf(value));
    }
    Some(WallNode::Node { value, children })
}
