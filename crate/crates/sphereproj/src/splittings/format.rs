//! Textual formats for marked graphs and splittings, plus DOT export.
//!
//! Marked graph files look like:
//!
//! ```text
//! rank 2; pointed vertex v0
//! vertex v0
//! vertex v1
//! edge e0: v0 -> v1 tree
//! edge e1: v0 -> v1 label=a
//! edge e2: v0 -> v1 label=b
//! ```
//!
//! Pointings are `none`, `vertex <name>` or `edge <name>+`/`edge <name>-`.

use super::marked_graph::{GraphEdge, MarkedGraph, Pointing};
use super::splitting::{OneEdgeSplitting, SplittingKind};
use crate::error::{Error, Result};
use crate::freegroup::Word;
use std::collections::HashMap;
use std::fmt::Write as _;

pub fn print_graph(g: &MarkedGraph) -> String {
    let mut s = String::new();
    let pointing = match g.pointing() {
        Pointing::None => "none".to_string(),
        Pointing::Vertex(v) => format!("vertex v{v}"),
        Pointing::Edge(e, sign) => format!("edge e{e}{}", if sign >= 0 { "+" } else { "-" }),
    };
    writeln!(s, "rank {}; pointed {}", g.rank(), pointing).unwrap();
    for v in 0..g.num_vertices() {
        writeln!(s, "vertex v{v}").unwrap();
    }
    for (i, e) in g.edges().iter().enumerate() {
        if e.tree {
            writeln!(s, "edge e{i}: v{} -> v{} tree", e.init, e.term).unwrap();
        } else {
            writeln!(s, "edge e{i}: v{} -> v{} label={}", e.init, e.term, e.label).unwrap();
        }
    }
    s
}

pub fn parse_graph(text: &str) -> Result<MarkedGraph> {
    let mut rank = None;
    let mut pointing_raw: Option<String> = None;
    let mut vertices: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(String, String, String, Option<String>)> = Vec::new();
    let mut edge_names: HashMap<String, usize> = HashMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: &str| Error::Parse {
            line: ln + 1,
            col: 1,
            msg: msg.to_string(),
        };
        if let Some(rest) = line.strip_prefix("rank ") {
            let mut parts = rest.splitn(2, ';');
            let r: usize = parts
                .next()
                .unwrap()
                .trim()
                .parse()
                .map_err(|_| perr("bad rank"))?;
            rank = Some(r);
            if let Some(p) = parts.next() {
                let p = p.trim();
                let p = p.strip_prefix("pointed").ok_or_else(|| perr("expected `pointed`"))?;
                pointing_raw = Some(p.trim().to_string());
            }
        } else if let Some(rest) = line.strip_prefix("vertex ") {
            let name = rest.trim().to_string();
            let id = vertices.len();
            vertices.insert(name, id);
        } else if let Some(rest) = line.strip_prefix("edge ") {
            let (name, rest) = rest
                .split_once(':')
                .ok_or_else(|| perr("expected `edge name: u -> v ...`"))?;
            let (uv, attr) = {
                let rest = rest.trim();
                match rest.rsplit_once(' ') {
                    Some((uv, attr)) => (uv.trim(), attr.trim()),
                    None => return Err(perr("missing edge attribute")),
                }
            };
            let (u, v) = uv
                .split_once("->")
                .ok_or_else(|| perr("expected `u -> v`"))?;
            let label = if attr == "tree" {
                None
            } else if let Some(l) = attr.strip_prefix("label=") {
                Some(l.trim().to_string())
            } else {
                return Err(perr("edge attribute must be `tree` or `label=<word>`"));
            };
            edge_names.insert(name.trim().to_string(), edges.len());
            edges.push((
                u.trim().to_string(),
                v.trim().to_string(),
                name.trim().to_string(),
                label,
            ));
        } else {
            return Err(perr("unrecognized line"));
        }
    }
    let rank = rank.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing rank header".into(),
    })?;
    let mut graph_edges = Vec::new();
    for (u, v, _name, label) in &edges {
        let ui = *vertices.get(u).ok_or_else(|| Error::Parse {
            line: 1,
            col: 1,
            msg: format!("unknown vertex {u}"),
        })?;
        let vi = *vertices.get(v).ok_or_else(|| Error::Parse {
            line: 1,
            col: 1,
            msg: format!("unknown vertex {v}"),
        })?;
        let (label, tree) = match label {
            None => (Word::identity(rank), true),
            Some(l) => (Word::parse(rank, l)?, false),
        };
        graph_edges.push(GraphEdge {
            init: ui,
            term: vi,
            label,
            tree,
        });
    }
    let pointing = match pointing_raw.as_deref() {
        None | Some("none") => Pointing::None,
        Some(p) => {
            if let Some(v) = p.strip_prefix("vertex ") {
                Pointing::Vertex(*vertices.get(v.trim()).ok_or_else(|| Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("unknown pointing vertex {v}"),
                })?)
            } else if let Some(e) = p.strip_prefix("edge ") {
                let e = e.trim();
                let (name, sign) = if let Some(n) = e.strip_suffix('+') {
                    (n, 1)
                } else if let Some(n) = e.strip_suffix('-') {
                    (n, -1)
                } else {
                    (e, 1)
                };
                Pointing::Edge(
                    *edge_names.get(name).ok_or_else(|| Error::Parse {
                        line: 1,
                        col: 1,
                        msg: format!("unknown pointing edge {name}"),
                    })?,
                    sign,
                )
            } else {
                return Err(Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("bad pointing `{p}`"),
                });
            }
        }
    };
    MarkedGraph::new(rank, vertices.len(), graph_edges, pointing)
}

pub fn print_splitting(s: &OneEdgeSplitting) -> String {
    let mut out = String::new();
    writeln!(out, "rank {}", s.rank()).unwrap();
    match s.kind() {
        SplittingKind::Separating { basis_a, basis_b } => {
            writeln!(out, "kind separating").unwrap();
            for w in basis_a {
                writeln!(out, "A = {w}").unwrap();
            }
            for w in basis_b {
                writeln!(out, "B = {w}").unwrap();
            }
        }
        SplittingKind::Corank1 { basis_a, stable } => {
            writeln!(out, "kind corank1").unwrap();
            for w in basis_a {
                writeln!(out, "A = {w}").unwrap();
            }
            writeln!(out, "stable = {stable}").unwrap();
        }
    }
    if s.basepointed {
        writeln!(out, "basepointed true").unwrap();
    }
    if s.orientation < 0 {
        writeln!(out, "orient -").unwrap();
    }
    out
}

pub fn parse_splitting(text: &str) -> Result<OneEdgeSplitting> {
    let mut rank = None;
    let mut kind: Option<String> = None;
    let mut basis_a = Vec::new();
    let mut basis_b = Vec::new();
    let mut stable = None;
    let mut basepointed = false;
    let mut orientation = 1i8;
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse {
            line: ln + 1,
            col: 1,
            msg,
        };
        if let Some(r) = line.strip_prefix("rank ") {
            rank = Some(r.trim().parse::<usize>().map_err(|_| perr("bad rank".into()))?);
        } else if let Some(k) = line.strip_prefix("kind ") {
            kind = Some(k.trim().to_string());
        } else if let Some(w) = line.strip_prefix("A =") {
            basis_a.push(w.trim().to_string());
        } else if let Some(w) = line.strip_prefix("B =") {
            basis_b.push(w.trim().to_string());
        } else if let Some(w) = line.strip_prefix("stable =") {
            stable = Some(w.trim().to_string());
        } else if let Some(b) = line.strip_prefix("basepointed") {
            basepointed = b.trim() == "true";
        } else if let Some(o) = line.strip_prefix("orient") {
            orientation = if o.trim() == "-" { -1 } else { 1 };
        } else {
            return Err(perr(format!("unrecognized line `{line}`")));
        }
    }
    let rank = rank.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing rank".into(),
    })?;
    let parse_words = |ws: &[String]| -> Result<Vec<Word>> {
        ws.iter().map(|w| Word::parse(rank, w)).collect()
    };
    let mut s = match kind.as_deref() {
        Some("separating") => {
            OneEdgeSplitting::separating(rank, parse_words(&basis_a)?, parse_words(&basis_b)?)?
        }
        Some("corank1") => {
            let t = stable.ok_or(Error::Parse {
                line: 1,
                col: 1,
                msg: "missing stable letter".into(),
            })?;
            OneEdgeSplitting::corank1(rank, parse_words(&basis_a)?, Word::parse(rank, &t)?)?
        }
        _ => {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "kind must be separating or corank1".into(),
            })
        }
    };
    s.basepointed = basepointed;
    s.orientation = orientation;
    Ok(s)
}

/// DOT export of a marked graph.
pub fn graph_to_dot(g: &MarkedGraph, name: &str) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {name} {{").unwrap();
    for v in 0..g.num_vertices() {
        let mark = match g.pointing() {
            Pointing::Vertex(p) if p == v => ", style=filled, fillcolor=lightblue",
            _ => "",
        };
        writeln!(s, "  v{v} [label=\"v{v}\"{mark}];").unwrap();
    }
    for (i, e) in g.edges().iter().enumerate() {
        let style = if e.tree { "dashed" } else { "solid" };
        let lbl = if e.tree {
            format!("e{i}")
        } else {
            format!("e{i}:{}", e.label)
        };
        let extra = match g.pointing() {
            Pointing::Edge(pe, _) if pe == i => ", color=red",
            _ => "",
        };
        writeln!(
            s,
            "  v{} -> v{} [label=\"{lbl}\", style={style}{extra}];",
            e.init, e.term
        )
        .unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}
