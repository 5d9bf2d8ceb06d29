//! Graphviz export.

use std::fmt::Write;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::graph::Graph;
use crate::ray::{Linkage, RaySpec};
use crate::world::{Coord, Truncation};

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "deeppink", "cyan4"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v} [label={}];", quote(&g.label(v))).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// A window drawn at its coordinates, with the in-window parts of `rays`
/// coloured and the paths of `linkage` dashed. Vertices of the linkage's
/// finite set are boxes.
pub fn truncation_to_dot(t: &Truncation, rays: &[RaySpec], linkage: Option<&Linkage>) -> String {
    let g = t.graph();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut ray_edge: FxHashMap<(usize, usize), usize> = FxHashMap::default();
    let mut ray_vertex: FxHashMap<usize, usize> = FxHashMap::default();
    for (i, r) in rays.iter().enumerate() {
        let pos = r.window_positions(t);
        for (j, &(p, v)) in pos.iter().enumerate() {
            ray_vertex.insert(v, i);
            if j > 0 && pos[j - 1].0 + 1 == p {
                ray_edge.insert(key(pos[j - 1].1, v), i);
            }
        }
    }
    let mut dashed: FxHashSet<(usize, usize)> = FxHashSet::default();
    let mut boxed: FxHashSet<usize> = FxHashSet::default();
    if let Some(l) = linkage {
        for p in &l.paths {
            let vs: Vec<Option<usize>> = p.path.iter().map(|&c| t.vertex(c)).collect();
            for w in vs.windows(2) {
                if let [Some(a), Some(b)] = *w {
                    dashed.insert(key(a, b));
                }
            }
        }
        boxed.extend(l.after.iter().filter_map(|&c| t.vertex(c)));
    }

    let mut out = String::from("graph G {\n  node [shape=circle, width=0.15, fixedsize=true, fontsize=6];\n");
    for v in 0..g.n() {
        let [x, y]: Coord = t.coord(v);
        let mut attrs = vec![format!("pos=\"{x},{y}!\""), format!("label=\"{x},{y}\"")];
        if let Some(&i) = ray_vertex.get(&v) {
            attrs.push(format!("color={}", PALETTE[i % PALETTE.len()]));
        }
        if boxed.contains(&v) {
            attrs.push("shape=box".into());
        }
        writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
    }
    for (u, v) in g.edges() {
        let mut attrs = Vec::new();
        match ray_edge.get(&key(u, v)) {
            Some(&i) => attrs.push(format!("color={}, penwidth=2", PALETTE[i % PALETTE.len()])),
            None => attrs.push("color=gray".into()),
        }
        if dashed.contains(&key(u, v)) {
            attrs = vec!["style=dashed, penwidth=2".into()];
        }
        writeln!(out, "  {u} -- {v} [{}];", attrs.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}
