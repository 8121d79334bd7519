//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod fixtures;

use tutte_core::surface::{Color, HalfEdgeId, Triangulation, VertexId};

/// Signed turn and color, computed from positions in the clockwise star.
pub fn oracle_turn(t: &Triangulation, e1: HalfEdgeId, e2: HalfEdgeId) -> Option<(i64, Color)> {
    let v = t.head(e1);
    if t.is_boundary_vertex(v) || t.origin(e2) != v {
        return None;
    }
    let star = t.star(v);
    let d = star.len() as i64;
    let pos = |h: HalfEdgeId| star.iter().position(|&g| g == h).unwrap() as i64;
    let k = (pos(e2) - pos(t.twin(e1))).rem_euclid(d);
    let s = if 2 * k <= d { k } else { k - d };
    Some((s, t.left_color(e1).unwrap()))
}

pub fn oracle_bad(turn: (i64, Color)) -> bool {
    let (s, c) = turn;
    s == 0 || s == 1 || s == -1 || ((s == 2 || s == -2) && c == Color::Red)
}

/// Open walk is reduced and never turns at a boundary vertex.
pub fn oracle_reduced_open(t: &Triangulation, edges: &[HalfEdgeId]) -> bool {
    edges
        .windows(2)
        .all(|w| matches!(oracle_turn(t, w[0], w[1]), Some(x) if !oracle_bad(x)))
}

pub fn oracle_reduced_closed(t: &Triangulation, edges: &[HalfEdgeId]) -> bool {
    let n = edges.len();
    (0..n).all(|i| matches!(oracle_turn(t, edges[(i + n - 1) % n], edges[i]), Some(x) if !oracle_bad(x)))
}

/// Every walk of length at most `max_len` from `x`, pruned to reduced
/// prefixes, ending at `y`.
pub fn reduced_walks_between(
    t: &Triangulation,
    x: VertexId,
    y: VertexId,
    max_len: usize,
) -> Vec<Vec<HalfEdgeId>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn rec(
        t: &Triangulation,
        v: VertexId,
        y: VertexId,
        max_len: usize,
        path: &mut Vec<HalfEdgeId>,
        out: &mut Vec<Vec<HalfEdgeId>>,
    ) {
        if v == y {
            out.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        for h in t.star(v) {
            if let Some(&last) = path.last() {
                match oracle_turn(t, last, h) {
                    Some(x) if !oracle_bad(x) => {}
                    _ => continue,
                }
            }
            path.push(h);
            rec(t, t.head(h), y, max_len, path, out);
            path.pop();
        }
    }
    rec(t, x, y, max_len, &mut path, &mut out);
    out
}

/// All closed walks of exactly `len` edges (as edge sequences) through `v`.
pub fn closed_walks(t: &Triangulation, len: usize) -> Vec<Vec<HalfEdgeId>> {
    let mut out = Vec::new();
    let mut path: Vec<HalfEdgeId> = Vec::new();
    fn rec(t: &Triangulation, len: usize, path: &mut Vec<HalfEdgeId>, out: &mut Vec<Vec<HalfEdgeId>>) {
        if path.len() == len {
            if t.head(*path.last().unwrap()) == t.origin(path[0]) {
                out.push(path.clone());
            }
            return;
        }
        let starts: Vec<HalfEdgeId> = match path.last() {
            None => t.half_edges().collect(),
            Some(&h) => t.star(t.head(h)),
        };
        for h in starts {
            path.push(h);
            rec(t, len, path, out);
            path.pop();
        }
    }
    rec(t, len, &mut path, &mut out);
    out
}

/// Result of examining one cycle of a contracted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleVerdict {
    pub pulled_left: bool,
    pub pulled_right: bool,
    /// Some vertex follows the cycle at two different corners.
    pub ambiguous: bool,
    pub followers: std::collections::BTreeSet<usize>,
}

impl CycleVerdict {
    pub fn balances(&self) -> bool {
        self.pulled_left && !self.pulled_right && !self.ambiguous
    }
}

/// Directed edges of a contracted graph: (from, to, image, edge index).
pub fn directed_edges(edges: &[(usize, usize, HalfEdgeId)], t: &Triangulation) -> Vec<(usize, usize, HalfEdgeId, usize)> {
    let mut out = Vec::new();
    for (i, &(a, b, h)) in edges.iter().enumerate() {
        out.push((a, b, h, i));
        out.push((b, a, t.twin(h), i));
    }
    out
}

/// Every simple cycle as a list of directed-edge positions, each cycle
/// listed once per starting point and direction.
pub fn simple_cycles(n: usize, dir: &[(usize, usize, HalfEdgeId, usize)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(
        start: usize,
        v: usize,
        dir: &[(usize, usize, HalfEdgeId, usize)],
        on: &mut Vec<bool>,
        used: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for (k, &(a, b, _, i)) in dir.iter().enumerate() {
            if a != v || used.iter().any(|&u| dir[u].3 == i) {
                continue;
            }
            if b == start {
                let mut c = used.clone();
                c.push(k);
                out.push(c);
            } else if !on[b] && b > start {
                on[b] = true;
                used.push(k);
                rec(start, b, dir, on, used, out);
                used.pop();
                on[b] = false;
            }
        }
    }
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        rec(s, s, dir, &mut on, &mut Vec::new(), &mut out);
    }
    out
}

/// Color of the `3`-turns made by the image of a cycle, if all its turns
/// are `3`-turns of one color.
pub fn straight_color(t: &Triangulation, images: &[HalfEdgeId]) -> Option<Color> {
    let n = images.len();
    let turns: Vec<_> = (0..n).map(|i| oracle_turn(t, images[(i + n - 1) % n], images[i])).collect();
    let c = turns[0]?.1;
    turns.iter().all(|&x| x == Some((3, c))).then_some(c)
}

/// Expands every walk following the cycle and records how it is pulled.
pub fn follow(
    t: &Triangulation,
    n: usize,
    dir: &[(usize, usize, HalfEdgeId, usize)],
    cycle: &[usize],
) -> CycleVerdict {
    let len = cycle.len();
    let img = |p: usize| dir[cycle[p % len]].2;
    // corner at position p: entered by img(p-1), left by img(p)
    let corner = |p: usize| (t.twin(img(p + len - 1)), img(p));
    let mut seen = std::collections::BTreeSet::new();
    let mut corners: Vec<std::collections::BTreeSet<(HalfEdgeId, HalfEdgeId)>> = vec![Default::default(); n];
    let mut stack: Vec<(usize, usize)> = (0..len).map(|p| (dir[cycle[p]].0, p)).collect();
    let mut verdict = CycleVerdict { pulled_left: false, pulled_right: false, ambiguous: false, followers: Default::default() };
    while let Some((w, p)) = stack.pop() {
        if !seen.insert((w, p)) {
            continue;
        }
        verdict.followers.insert(w);
        let (a, b) = corner(p);
        corners[w].insert((a, b));
        let star = t.star(t.origin(b));
        let d = star.len();
        let pos = |h: HalfEdgeId| star.iter().position(|&g| g == h).unwrap();
        let kb = (pos(b) + d - pos(a)) % d;
        for &(x, y, h, _) in dir {
            if x != w {
                continue;
            }
            if h == b {
                stack.push((y, (p + 1) % len));
            } else if h == a {
                stack.push((y, (p + len - 1) % len));
            } else {
                let k = (pos(h) + d - pos(a)) % d;
                if k < kb {
                    verdict.pulled_left = true;
                } else {
                    verdict.pulled_right = true;
                }
            }
        }
    }
    verdict.ambiguous = corners.iter().any(|c| c.len() > 1);
    verdict
}
