use sphereproj::freegroup::Word;
use sphereproj::splittings::*;
use sphereproj::splittings::core_rect::core_rectangles;
use sphereproj::splittings::splitting::SplitTree;
use sphereproj::splittings::cover::{CoverTree, TreeVertex, Side};

fn w(rank: usize, s: &str) -> Word { Word::parse(rank, s).unwrap() }

fn main() {
    let g = MarkedGraph::rose(2, Pointing::None);
    let s = OneEdgeSplitting::corank1(2, vec![w(2, "ab")], w(2, "a")).unwrap();
    let split = SplitTree::new(&s).unwrap();
    // side function on small ball
    for text in ["", "a", "b", "A", "B", "ab", "ba", "aa", "bb", "aB", "Ab", "AB", "BA", "bA"] {
        let g_el = w(2, text);
        let va = split.vertex_a(&g_el);
        println!("side({}) = {}  vertexA rep={} adapted={}", text, split.side(&g_el), va.rep, split.to_adapted(&g_el));
    }
    // flip support
    println!("flip support: {:?}", split.side_flip_support().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let circles = core_rectangles(&g, &s, 4096).unwrap();
    println!("exact circles: {:?}", circles.iter().map(|c| (c.lift.edge, c.lift.copy.to_string())).collect::<Vec<_>>());
    // brute force with depth 3
    let tree = CoverTree::new(&g).unwrap();
    let rank = 2;
    let mut copies = vec![Word::identity(rank)];
    let mut frontier = vec![Word::identity(rank)];
    for _ in 0..2 {
        let mut next = Vec::new();
        for u in &frontier { for i in 1..=rank { for &sgn in &[1i8,-1] {
            let l = sgn * i as i8;
            if u.letters().last() == Some(&-l) { continue; }
            let v = u.push(l); next.push(v.clone()); copies.push(v);
        }}}
        frontier = next;
    }
    let mut witnesses = vec![Word::identity(rank)];
    let mut wf = vec![Word::identity(rank)];
    for _ in 0..5 {
        let mut next = Vec::new();
        for u in &wf { for i in 1..=rank { for &sgn in &[1i8,-1] {
            let l = sgn * i as i8;
            if u.letters().last() == Some(&-l) { continue; }
            let v = u.push(l); next.push(v.clone()); witnesses.push(v);
        }}}
        wf = next;
    }
    for copy in &copies {
        for edge in 0..2 {
            let lift = cover::TreeEdgeLift { copy: copy.clone(), edge };
            let mut quads = std::collections::BTreeSet::new();
            for gw in &witnesses {
                let v = TreeVertex { copy: tree.to_cover(gw), vertex: 0 };
                let s1 = tree.side(&lift, &v) == Side::Term;
                let s2 = split.side(gw);
                quads.insert((s1, s2));
            }
            if quads.len() == 4 {
                println!("oracle circle: edge {} copy {}", edge, copy);
            }
        }
    }
}
