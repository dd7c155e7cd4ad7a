use super::blowup::{adjacent, blowups, compatible_systems};
use super::core_rect::core_rectangles;
use super::cover::{loop_crossings, CoverTree, Side, TreeEdgeLift, TreeVertex};
use super::format::{parse_graph, print_graph};
use super::marked_graph::{GraphEdge, MarkedGraph, Pointing};
use super::splitting::{read_splitting, standard_extension, OneEdgeSplitting, SplitTree};
use super::wall::Wall;
use crate::freegroup::{cyclic_reduce, FreeMap, Word};

fn w(rank: usize, s: &str) -> Word {
    Word::parse(rank, s).unwrap()
}

fn rose2() -> MarkedGraph {
    MarkedGraph::rose(2, Pointing::None)
}

/// Theta graph: two vertices, three parallel edges; rank 2.
fn theta2() -> MarkedGraph {
    MarkedGraph::new(
        2,
        2,
        vec![
            GraphEdge {
                init: 0,
                term: 1,
                label: Word::identity(2),
                tree: true,
            },
            GraphEdge {
                init: 0,
                term: 1,
                label: w(2, "a"),
                tree: false,
            },
            GraphEdge {
                init: 0,
                term: 1,
                label: w(2, "b"),
                tree: false,
            },
        ],
        Pointing::None,
    )
    .unwrap()
}

#[test]
fn format_roundtrip() {
    for g in [rose2(), theta2()] {
        let text = print_graph(&g);
        let g2 = parse_graph(&text).unwrap();
        assert_eq!(g, g2);
    }
}

#[test]
fn act_examples() {
    let g = rose2();
    let id = FreeMap::identity(2);
    assert!(g.act(&id).unwrap().equivalent(&g, false).unwrap());
    // action law: act(f, act(h, G)) = act(compose(f,h), G)
    let f = FreeMap::automorphism(2, vec![w(2, "ab"), w(2, "b")]).unwrap();
    let h = FreeMap::automorphism(2, vec![w(2, "b"), w(2, "a")]).unwrap();
    let lhs = g.act(&h).unwrap().act(&f).unwrap();
    let rhs = g.act(&f.compose(&h)).unwrap();
    assert_eq!(lhs, rhs);
    // inner action is trivial on unpointed graphs
    let inner = FreeMap::inner(2, &w(2, "ab"));
    assert!(g.act(&inner).unwrap().equivalent(&g, false).unwrap());
}

#[test]
fn equivalence_examples() {
    let g = rose2();
    assert!(g.equivalent(&g, false).unwrap());
    assert!(g.equivalent(&g, true).unwrap());
    // swapping the petals is realized by a graph isomorphism
    let swap = FreeMap::automorphism(2, vec![w(2, "b"), w(2, "a")]).unwrap();
    assert!(g.act(&swap).unwrap().equivalent(&g, false).unwrap());
    // a transvection is not
    let f = FreeMap::automorphism(2, vec![w(2, "ab"), w(2, "b")]).unwrap();
    assert!(!g.act(&f).unwrap().equivalent(&g, false).unwrap());
}

#[test]
fn collapse_examples() {
    let th = theta2();
    // collapsing by the empty forest is the identity
    let same = th.collapse(&[]).unwrap();
    assert!(same.equivalent(&th, false).unwrap());
    // collapsing either of two tree-able edges gives roses
    let r0 = th.collapse(&[0]).unwrap();
    assert_eq!(r0.num_vertices(), 1);
    assert!(r0.equivalent(&rose2(), false).unwrap());
    let r1 = th.collapse(&[1]).unwrap();
    assert_eq!(r1.num_vertices(), 1);
    // the two roses are adjacent (theta is the common refinement)
    assert!(adjacent(&r0, &r1, false).unwrap());
}

#[test]
fn blowups_contain_theta() {
    let bl = blowups(&rose2(), 3, false).unwrap();
    assert!(bl.iter().any(|h| h.equivalent(&theta2(), false).unwrap()));
}

#[test]
fn adjacency_examples() {
    let g = rose2();
    assert!(adjacent(&g, &g, false).unwrap());
    // rose vs rose acted by a cubed transvection is not adjacent
    let f = FreeMap::automorphism(2, vec![w(2, "ab"), w(2, "b")]).unwrap();
    let f3 = f.compose(&f).compose(&f);
    let far = g.act(&f3).unwrap();
    assert!(!adjacent(&g, &far, false).unwrap());
}

#[test]
fn loop_crossing_examples() {
    let g = rose2();
    // w = b crosses the b-petal once per period
    let (cb, _) = cyclic_reduce(&w(2, "b"));
    let seq = loop_crossings(&g, &cb).unwrap();
    assert_eq!(seq.steps.len(), 1);
    assert!(seq.cyclic);
    // conjugates give the same itinerary
    let (cb2, _) = cyclic_reduce(&w(2, "abA"));
    let seq2 = loop_crossings(&g, &cb2).unwrap();
    assert_eq!(seq, seq2);
    // theta graph: [a,b] itinerary length equals the brute-force reduced
    // cyclic edge-path length (a -> e1 e0^-1, b -> e2 e0^-1)
    let th = theta2();
    let (comm, _) = cyclic_reduce(&w(2, "abAB"));
    let seq3 = loop_crossings(&th, &comm).unwrap();
    let a_loop: Vec<i8> = vec![2, -1];
    let b_loop: Vec<i8> = vec![3, -1];
    let inv = |p: &[i8]| p.iter().rev().map(|&x| -x).collect::<Vec<i8>>();
    let mut edge_path: Vec<i8> = Vec::new();
    for part in [a_loop.clone(), b_loop.clone(), inv(&a_loop), inv(&b_loop)] {
        edge_path.extend(part);
    }
    let reduced = Word::reduce(3, &edge_path).unwrap();
    let (cyc, _) = cyclic_reduce(&reduced);
    assert_eq!(cyc.len(), 6, "oracle sanity");
    assert_eq!(seq3.steps.len(), cyc.len());
}

#[test]
fn bridge_examples() {
    let g = rose2();
    let (cb, _) = cyclic_reduce(&w(2, "b"));
    // both axes equal: empty bridge
    let s = super::cover::bridge_crossings(&g, (&cb, &Word::identity(2)), (&cb, &Word::identity(2)))
        .unwrap();
    assert!(s.steps.is_empty());
    // axis of b vs a-translate: bridge crosses the a-petal once
    let s2 =
        super::cover::bridge_crossings(&g, (&cb, &Word::identity(2)), (&cb, &w(2, "a"))).unwrap();
    assert_eq!(s2.steps.len(), 1);
    // reversal symmetry
    let s3 =
        super::cover::bridge_crossings(&g, (&cb, &w(2, "a")), (&cb, &Word::identity(2))).unwrap();
    assert_eq!(s3.steps.len(), 1);
}

#[test]
fn side_matches_parity_oracle() {
    use rand::{Rng, SeedableRng};
    let g = theta2();
    let tree = CoverTree::new(&g).unwrap();
    let wall = TreeEdgeLift {
        copy: tree.to_cover(&w(2, "a")),
        edge: 2,
    };
    let (wall_init, _) = tree.endpoints(&wall);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let len = rng.gen_range(0..6);
        let raw: Vec<i8> = (0..len)
            .map(|_| {
                let l = rng.gen_range(1..=2i8);
                if rng.gen_bool(0.5) {
                    l
                } else {
                    -l
                }
            })
            .collect();
        let gword = Word::reduce(2, &raw).unwrap();
        let v = TreeVertex {
            copy: tree.to_cover(&gword),
            vertex: rng.gen_range(0..2),
        };
        if v == wall_init {
            continue;
        }
        // independent route: parity through the base vertex
        let base = tree.base_vertex();
        let p1 = tree
            .path(&v, &base)
            .iter()
            .filter(|(l, _)| *l == wall)
            .count();
        let p2 = tree
            .path(&base, &wall_init)
            .iter()
            .filter(|(l, _)| *l == wall)
            .count();
        let expect = if (p1 + p2) % 2 == 1 {
            Side::Term
        } else {
            Side::Init
        };
        assert_eq!(tree.side(&wall, &v), expect);
    }
}

#[test]
fn read_splitting_roundtrip() {
    // nonseparating: petal of the rose
    let g = rose2();
    let s = read_splitting(&g, 0).unwrap();
    assert!(!s.is_separating());
    // separating: the bridge of a dumbbell
    let dumbbell = MarkedGraph::new(
        2,
        2,
        vec![
            GraphEdge {
                init: 0,
                term: 0,
                label: w(2, "a"),
                tree: false,
            },
            GraphEdge {
                init: 0,
                term: 1,
                label: Word::identity(2),
                tree: true,
            },
            GraphEdge {
                init: 1,
                term: 1,
                label: w(2, "b"),
                tree: false,
            },
        ],
        Pointing::None,
    )
    .unwrap();
    let s2 = read_splitting(&dumbbell, 1).unwrap();
    assert!(s2.is_separating());
    // standard extensions reproduce valid systems containing the sphere
    let ext = standard_extension(&s2).unwrap();
    assert!(ext.equivalent(&dumbbell, false).unwrap());
}

#[test]
fn core_rectangles_compatible_cases() {
    let g = rose2();
    // a sphere of the system itself: no intersection circles
    let s = read_splitting(&g, 0).unwrap();
    assert!(core_rectangles(&g, &s, 4096).unwrap().is_empty());
    let s1 = read_splitting(&g, 1).unwrap();
    assert!(core_rectangles(&g, &s1, 4096).unwrap().is_empty());
    // a separating splitting compatible with the dumbbell refinement
    let sep = OneEdgeSplitting::separating(2, vec![w(2, "a")], vec![w(2, "b")]).unwrap();
    assert!(core_rectangles(&g, &sep, 4096).unwrap().is_empty());
}

#[test]
fn core_rectangles_crossing_case() {
    let g = rose2();
    // the only spheres disjoint from the rose are the blow-up spheres with
    // factors <ba^-1>, <ab> and the separating (<a>,<b>); so the corank-1
    // splitting (basisA = {ab}, stable a) is compatible...
    let s = OneEdgeSplitting::corank1(2, vec![w(2, "ab")], w(2, "a")).unwrap();
    assert!(core_rectangles(&g, &s, 4096).unwrap().is_empty());
    // ...while the separating splitting (<ab>, <b>) genuinely crosses
    let s2 = OneEdgeSplitting::separating(2, vec![w(2, "ab")], vec![w(2, "b")]).unwrap();
    let circles = core_rectangles(&g, &s2, 4096).unwrap();
    assert!(!circles.is_empty(), "twisted splitting must cross the rose");
    // halfspace-incidence oracle at depth+2 agrees
    let oracle = brute_force_circles(&g, &s2, 2);
    let mut got: Vec<(usize, Vec<i8>)> = circles
        .iter()
        .map(|c| (c.lift.edge, c.lift.copy.letters().to_vec()))
        .collect();
    got.sort();
    assert_eq!(got, oracle);
}

#[test]
fn wall_basics() {
    let g = rose2();
    let tree = CoverTree::new(&g).unwrap();
    // wall of the a-petal base lift
    let lift_a = TreeEdgeLift {
        copy: Word::identity(2),
        edge: 0,
    };
    let wa = Wall::from_lift(&tree, &lift_a);
    assert!(wa.is_essential());
    // translates of the same wall are disjoint or nested, never crossing
    let wa2 = wa.translate(&w(2, "a"));
    assert!(!wa.crosses(&wa2));
    assert!(wa.equal_on_ends(&wa).is_some());
    assert!(wa.equal_on_ends(&wa2).is_none());
    // splitting wall matches the lift wall for the same sphere
    let s = read_splitting(&g, 0).unwrap();
    let st = SplitTree::new(&s).unwrap();
    let ws = Wall::from_splitting(&st);
    assert!(ws.is_essential());
    assert!(wa.equal_on_ends(&ws).is_some(), "same sphere, same ends partition");
    // the b-petal wall crosses nothing of the a-petal wall
    let lift_b = TreeEdgeLift {
        copy: Word::identity(2),
        edge: 1,
    };
    let wb = Wall::from_lift(&tree, &lift_b);
    assert!(!wa.crosses(&wb));
    // a genuinely crossing pair
    let sep = OneEdgeSplitting::separating(2, vec![w(2, "ab")], vec![w(2, "b")]).unwrap();
    let circles = core_rectangles(&g, &sep, 4096).unwrap();
    let wsig = Wall::from_splitting(&SplitTree::new(&sep).unwrap());
    assert!(!circles.is_empty());
    for c in &circles {
        let wl = Wall::from_lift(&tree, &c.lift);
        assert!(wl.crosses(&wsig), "every reported circle is a genuine crossing");
    }
}

#[test]
fn compatible_systems_include_expected() {
    let systems = compatible_systems(&rose2(), false).unwrap();
    // at least: the rose itself, the theta, the dumbbell, and the two roses

    assert!(systems.iter().any(|s| s.equivalent(&theta2(), false).unwrap()));
    assert!(systems.len() >= 3);
}

/// Brute-force halfspace-incidence circle computation: candidate walls with
/// bounded copies, quadrant witnesses from a bounded ball.
fn brute_force_circles(
    g: &MarkedGraph,
    s: &OneEdgeSplitting,
    extra_depth: usize,
) -> Vec<(usize, Vec<i8>)> {
    let tree = CoverTree::new(g).unwrap();
    let split = SplitTree::new(s).unwrap();
    // candidate copies: all reduced B-words up to depth D
    let exact = core_rectangles(g, s, 4096).unwrap();
    let dmax = exact
        .iter()
        .map(|c| c.lift.copy.len())
        .max()
        .unwrap_or(0)
        + extra_depth;
    let rank = g.rank();
    let mut copies = vec![Word::identity(rank)];
    let mut frontier = vec![Word::identity(rank)];
    for _ in 0..dmax {
        let mut next = Vec::new();
        for u in &frontier {
            for i in 1..=rank {
                for &sgn in &[1i8, -1] {
                    let l = sgn * i as i8;
                    if u.letters().last() == Some(&-l) {
                        continue;
                    }
                    let v = u.push(l);
                    next.push(v.clone());
                    copies.push(v);
                }
            }
        }
        frontier = next;
    }
    // witness elements: ball of radius dmax + 2 in standard letters
    let mut witnesses = vec![Word::identity(rank)];
    let mut wfrontier = vec![Word::identity(rank)];
    for _ in 0..(dmax + 2) {
        let mut next = Vec::new();
        for u in &wfrontier {
            for i in 1..=rank {
                for &sgn in &[1i8, -1] {
                    let l = sgn * i as i8;
                    if u.letters().last() == Some(&-l) {
                        continue;
                    }
                    let v = u.push(l);
                    next.push(v.clone());
                    witnesses.push(v);
                }
            }
        }
        wfrontier = next;
    }
    let mut out = Vec::new();
    for copy in &copies {
        for edge in 0..g.edges().len() {
            let lift = TreeEdgeLift {
                copy: copy.clone(),
                edge,
            };
            let mut quads = std::collections::BTreeSet::new();
            for gw in &witnesses {
                let v = TreeVertex {
                    copy: tree.to_cover(gw),
                    vertex: g.base_vertex(),
                };
                let s1 = tree.side(&lift, &v) == Side::Term;
                let s2 = split.side(gw);
                quads.insert((s1, s2));
            }
            if quads.len() == 4 {
                out.push((edge, copy.letters().to_vec()));
            }
        }
    }
    out.sort();
    out
}
