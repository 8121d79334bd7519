//! SVG and DOT figures of small triangulations and drawings.

use std::fmt::Write;

use tutte_core::surface::Color;
use tutte_core::{Drawing, Triangulation, VertexId};

const SIZE: f64 = 600.0;

fn fill(c: Color) -> &'static str {
    match c {
        Color::Red => "#f2b8b5",
        Color::Blue => "#b5c9f2",
    }
}

/// Vertex positions in the unit square.
///
/// On a surface with boundary the longest boundary cycle is pinned to a
/// circle and every other vertex is moved to the average of its
/// neighbours until nothing moves; closed surfaces get a circular layout.
pub fn layout(t: &Triangulation) -> Vec<(f64, f64)> {
    let n = t.n_vertices();
    let circle = |i: usize, k: usize| {
        let a = std::f64::consts::TAU * i as f64 / k as f64;
        (0.5 + 0.45 * a.cos(), 0.5 - 0.45 * a.sin())
    };
    let Some(outer) = t.boundary_cycles().into_iter().max_by_key(Vec::len) else {
        return (0..n).map(|i| circle(i, n)).collect();
    };
    let mut pos = vec![(0.5, 0.5); n];
    let mut pinned = vec![false; n];
    for (i, &h) in outer.iter().enumerate() {
        let v = t.origin(h).idx();
        pos[v] = circle(i, outer.len());
        pinned[v] = true;
    }
    let neighbours: Vec<Vec<usize>> = t.vertices().map(|v| t.star(v).into_iter().map(|h| t.head(h).idx()).collect()).collect();
    for _ in 0..10_000 {
        let mut moved = 0f64;
        for v in 0..n {
            if pinned[v] || neighbours[v].is_empty() {
                continue;
            }
            let k = neighbours[v].len() as f64;
            let x = neighbours[v].iter().map(|&w| pos[w].0).sum::<f64>() / k;
            let y = neighbours[v].iter().map(|&w| pos[w].1).sum::<f64>() / k;
            moved = moved.max((x - pos[v].0).abs() + (y - pos[v].1).abs());
            pos[v] = (x, y);
        }
        if moved < 1e-9 {
            break;
        }
    }
    pos
}

fn at(pos: &[(f64, f64)], v: VertexId) -> (f64, f64) {
    let (x, y) = pos[v.idx()];
    (x * SIZE, y * SIZE)
}

/// The host with its faces filled by color, optionally with a drawing on top.
pub fn svg(t: &Triangulation, drawing: Option<&Drawing>) -> String {
    let pos = layout(t);
    let mut out = format!("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n");
    for f in t.faces() {
        let pts: Vec<String> = t
            .face_half_edges(f)
            .iter()
            .map(|&h| {
                let (x, y) = at(&pos, t.origin(h));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(out, "  <polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.6\" stroke=\"#666\" stroke-width=\"0.5\"/>", pts.join(" "), fill(t.color(f))).unwrap();
    }
    for h in t.half_edges().filter(|&h| t.is_outer(h)) {
        let ((x1, y1), (x2, y2)) = (at(&pos, t.origin(h)), at(&pos, t.head(h)));
        writeln!(out, "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#000\" stroke-width=\"1.5\"/>").unwrap();
    }
    if let Some(d) = drawing {
        for (e, w) in d.edge_map.iter().enumerate() {
            if w.is_empty() {
                continue;
            }
            let mut pts = vec![at(&pos, t.origin(w[0]))];
            pts.extend(w.iter().map(|&h| at(&pos, t.head(h))));
            let pts: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            writeln!(out, "  <polyline class=\"edge{e}\" points=\"{}\" fill=\"none\" stroke=\"#222\" stroke-width=\"2\"/>", pts.join(" ")).unwrap();
        }
        for &v in &d.vertex_map {
            let (x, y) = at(&pos, v);
            writeln!(out, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#000\"/>").unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The dual graph: one node per face, one edge per interior edge.
pub fn tri_dot(t: &Triangulation) -> String {
    let mut out = String::from("graph tri {\n  node [style=filled];\n");
    for f in t.faces() {
        writeln!(out, "  f{} [fillcolor=\"{}\"];", f.idx(), fill(t.color(f))).unwrap();
    }
    for h in t.half_edges() {
        let g = t.twin(h);
        if let (Some(a), Some(b)) = (t.face(h), t.face(g)) {
            if h < g {
                writeln!(out, "  f{} -- f{} [label=\"{h}\"];", a.idx(), b.idx()).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The drawn graph, each vertex labelled by its host vertex and each edge
/// by its walk.
pub fn drawing_dot(f: &Drawing) -> String {
    let mut out = String::from("graph drawing {\n");
    for (v, x) in f.vertex_map.iter().enumerate() {
        writeln!(out, "  v{v} [label=\"{v}@{x}\"];").unwrap();
    }
    for (e, (&(u, v), w)) in f.graph.edges.iter().zip(&f.edge_map).enumerate() {
        let walk: Vec<String> = w.iter().map(|h| h.to_string()).collect();
        writeln!(out, "  v{u} -- v{v} [label=\"e{e}: {}\"];", walk.join(",")).unwrap();
    }
    out.push_str("}\n");
    out
}
