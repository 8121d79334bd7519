//! Seeded generators for drawings and small fixtures.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;

use crate::drawing::{Drawing, Graph};
use crate::surface::{build_torus, Color, HalfEdgeId, Triangulation, VertexId};
use crate::walkcalc::Walk;

/// A shortest walk between two host vertices, by breadth-first search.
pub fn shortest_path(t: &Triangulation, from: VertexId, to: VertexId) -> Option<Vec<HalfEdgeId>> {
    let mut via: Vec<Option<HalfEdgeId>> = alloc::vec![None; t.n_vertices()];
    let mut seen = alloc::vec![false; t.n_vertices()];
    seen[from.idx()] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut x = to;
            while let Some(h) = via[x.idx()] {
                path.push(h);
                x = t.origin(h);
            }
            path.reverse();
            return Some(path);
        }
        for h in t.star(v) {
            let w = t.head(h);
            if !seen[w.idx()] {
                seen[w.idx()] = true;
                via[w.idx()] = Some(h);
                queue.push_back(w);
            }
        }
    }
    None
}

/// A uniformly random walk of the given length.
pub fn random_walk(t: &Triangulation, rng: &mut impl Rng, start: VertexId, len: usize) -> Vec<HalfEdgeId> {
    let mut v = start;
    (0..len)
        .map(|_| {
            let star = t.star(v);
            let h = star[rng.gen_range(0..star.len())];
            v = t.head(h);
            h
        })
        .collect()
}

/// A random connected drawing with `n_edges` edges whose images have
/// length at most `max_walk`. Some edges close cycles between existing
/// vertices, others hang new vertices off the drawing.
pub fn random_drawing(t: &Triangulation, rng: &mut impl Rng, n_edges: usize, max_walk: usize) -> Drawing {
    let mut vertex_map = alloc::vec![VertexId::from_idx(rng.gen_range(0..t.n_vertices()))];
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    while edges.len() < n_edges {
        let u = rng.gen_range(0..vertex_map.len());
        let from = vertex_map[u];
        let closing = vertex_map.len() > 1 && rng.gen_bool(0.35);
        if closing {
            let v = rng.gen_range(0..vertex_map.len());
            let detour = rng.gen_range(0..=max_walk / 2);
            let mut walk = random_walk(t, rng, from, detour);
            let mid = walk.last().map_or(from, |&h| t.head(h));
            walk.extend(shortest_path(t, mid, vertex_map[v]).expect("hosts are connected"));
            if walk.len() <= max_walk {
                edges.push((u, v));
                edge_map.push(walk);
            }
            continue;
        }
        let len = rng.gen_range(0..=max_walk);
        let walk = random_walk(t, rng, from, len);
        let end = walk.last().map_or(from, |&h| t.head(h));
        vertex_map.push(end);
        edges.push((u, vertex_map.len() - 1));
        edge_map.push(walk);
    }
    Drawing::new(Graph::new(vertex_map.len(), edges), vertex_map, edge_map)
}

/// Closed walks turning by `3` at every vertex, with the given color on
/// their left; one per orbit of `h ↦ rot_cw³(twin h)`.
pub fn straight_cycles(t: &Triangulation, color: Color) -> Vec<Vec<HalfEdgeId>> {
    let mut seen = alloc::vec![false; t.n_half_edges()];
    let mut out = Vec::new();
    for h in t.half_edges() {
        if seen[h.idx()] || t.left_color(h) != Some(color) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = h;
        while !seen[x.idx()] {
            seen[x.idx()] = true;
            cycle.push(x);
            x = t.rot_cw_n(t.twin(x), 3);
        }
        out.push(cycle);
    }
    out
}

/// The closed walk `C` on the one-vertex torus that makes a `−2_r`-turn
/// and a `2_b`-turn, so that no rewriting makes it reduced.
pub fn torus_stalling_walk() -> (Triangulation, Walk) {
    let t = build_torus();
    let w = Walk::closed(&t, alloc::vec![HalfEdgeId(0), HalfEdgeId(3)]);
    (t, w)
}

/// The torus loop through `a+` three times, which turns by `3_r` everywhere.
pub fn torus_straight_loop() -> (Triangulation, Walk) {
    let t = build_torus();
    let w = Walk::closed(&t, alloc::vec![HalfEdgeId(0); 3]);
    (t, w)
}
