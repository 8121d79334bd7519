//! Charts of the universal cover of a closed reducing triangulation.
//!
//! A vertex of the cover is named by the reduced walk that reaches it from
//! a fixed basepoint. Reduced walks with given endpoints in the cover are
//! unique, so two walks on the base lead to the same cover vertex exactly
//! when their reductions agree.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::drawing::{EdgeImage, Simplicial};
use crate::surface::{validate_reducing, FaceId, HalfEdgeId, Triangulation, TriangulationBuilder, VertexId};
use crate::walkcalc::{reduce_open, Walk, WalkError};

const REDUCTION_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("the base has boundary")]
    NotClosed,
    #[error("the base is not a reducing triangulation")]
    NotReducing,
    #[error("walk starts at {0}, not at the projection of the chosen lift")]
    WrongStart(VertexId),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("half-edge {0} does not have red on its left")]
    NotRedLeft(HalfEdgeId),
}

/// A lazily explored part of the universal cover.
#[derive(Clone, Debug)]
pub struct CoverChart<'a> {
    base: &'a Triangulation,
    basepoint: VertexId,
    words: Vec<Vec<HalfEdgeId>>,
    index: BTreeMap<Vec<HalfEdgeId>, usize>,
    adjacent: BTreeMap<(usize, HalfEdgeId), usize>,
}

/// A cover vertex together with a base half-edge leaving its projection.
pub type ChartHalfEdge = (usize, HalfEdgeId);

impl<'a> CoverChart<'a> {
    pub fn new(base: &'a Triangulation, basepoint: VertexId) -> Result<CoverChart<'a>, CoverError> {
        if !base.is_closed() {
            return Err(CoverError::NotClosed);
        }
        if !validate_reducing(base).ok {
            return Err(CoverError::NotReducing);
        }
        let mut chart = CoverChart {
            base,
            basepoint,
            words: Vec::new(),
            index: BTreeMap::new(),
            adjacent: BTreeMap::new(),
        };
        chart.intern(Vec::new());
        Ok(chart)
    }

    pub fn base(&self) -> &'a Triangulation {
        self.base
    }

    /// The chart vertex of the basepoint.
    pub fn root(&self) -> usize {
        0
    }

    pub fn n_vertices(&self) -> usize {
        self.words.len()
    }

    pub fn projection(&self, v: usize) -> VertexId {
        self.words[v].last().map_or(self.basepoint, |&h| self.base.head(h))
    }

    /// The reduced walk from the basepoint to `v`.
    pub fn word(&self, v: usize) -> &[HalfEdgeId] {
        &self.words[v]
    }

    fn intern(&mut self, word: Vec<HalfEdgeId>) -> usize {
        if let Some(&v) = self.index.get(&word) {
            return v;
        }
        self.index.insert(word.clone(), self.words.len());
        self.words.push(word);
        self.words.len() - 1
    }

    /// The head of the lift of `h` starting at `v`.
    pub fn neighbor(&mut self, v: usize, h: HalfEdgeId) -> Result<usize, CoverError> {
        if let Some(&w) = self.adjacent.get(&(v, h)) {
            return Ok(w);
        }
        if self.base.origin(h) != self.projection(v) {
            return Err(CoverError::WrongStart(self.base.origin(h)));
        }
        let mut edges = self.words[v].clone();
        edges.push(h);
        let reduced = reduce_open(self.base, &Walk::open(self.basepoint, edges), REDUCTION_BUDGET)?;
        let w = self.intern(reduced.edges);
        self.adjacent.insert((v, h), w);
        self.adjacent.insert((w, self.base.twin(h)), v);
        Ok(w)
    }

    /// True when every edge at `v` has been lifted.
    pub fn is_complete(&self, v: usize) -> bool {
        self.base.star(self.projection(v)).iter().all(|&h| self.adjacent.contains_key(&(v, h)))
    }

    /// Completes the star of every vertex within `radius` of the root.
    pub fn expand(&mut self, radius: usize) -> Result<(), CoverError> {
        let mut dist = BTreeMap::from([(0usize, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for h in self.base.star(self.projection(v)) {
                let w = self.neighbor(v, h)?;
                if d < radius && !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(())
    }

    /// Chart vertices visited by the lift of `w` starting at `from`.
    pub fn lift_walk(&mut self, w: &Walk, from: usize) -> Result<Vec<usize>, CoverError> {
        if w.start != self.projection(from) {
            return Err(CoverError::WrongStart(w.start));
        }
        w.check(self.base)?;
        let mut out = alloc::vec![from];
        let mut v = from;
        for &h in &w.edges {
            v = self.neighbor(v, h)?;
            out.push(v);
        }
        Ok(out)
    }

    /// The explored triangles around complete vertices, as a plane
    /// triangulation.
    pub fn to_triangulation(&self) -> Option<ChartTriangulation> {
        let t = self.base;
        let mut faces: BTreeMap<(usize, FaceId), [ChartHalfEdge; 3]> = BTreeMap::new();
        for v in 0..self.n_vertices() {
            if !self.is_complete(v) {
                continue;
            }
            for h in t.star(self.projection(v)) {
                let f = t.face(h)?;
                let y = self.adjacent[&(v, h)];
                let z = self.adjacent[&(v, t.rot_ccw(h))];
                let corners = [(v, h), (y, t.next(h)), (z, t.prev(h))];
                let canonical = t.face_half_edge(f);
                let key = corners.iter().find(|c| c.1 == canonical)?.0;
                faces.entry((key, f)).or_insert(corners);
            }
        }
        if faces.is_empty() {
            return None;
        }
        let mut b = TriangulationBuilder::new();
        let mut slot: BTreeMap<ChartHalfEdge, HalfEdgeId> = BTreeMap::new();
        for (&(_, f), corners) in &faces {
            let id = b.add_face(t.color(f));
            for (j, &c) in corners.iter().enumerate() {
                slot.insert(c, b.he(id, j));
            }
        }
        for (&(v, h), &a) in &slot {
            let Some(&w) = self.adjacent.get(&(v, h)) else { continue };
            if let Some(&g) = slot.get(&(w, t.twin(h))) {
                if a < g {
                    b.glue(a, g).ok()?;
                }
            }
        }
        let tri = b.finish().ok()?;
        let mut chart_vertex = alloc::vec![usize::MAX; tri.n_vertices()];
        let mut projection = alloc::vec![None; tri.n_half_edges()];
        for (&(v, h), &a) in &slot {
            chart_vertex[tri.origin(a).idx()] = v;
            projection[a.idx()] = Some(h);
        }
        Some(ChartTriangulation { tri, chart_vertex, projection })
    }
}

/// A finished piece of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTriangulation {
    pub tri: Triangulation,
    /// Chart vertex of every vertex of `tri`.
    pub chart_vertex: Vec<usize>,
    /// Base half-edge under every inner half-edge of `tri`; outer ones have none.
    pub projection: Vec<Option<HalfEdgeId>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Lines turning `3_r` at every vertex; they are escaped on their right.
    Left,
    /// Lines turning `−3_r` at every vertex; they are escaped on their left.
    Right,
}

/// The part of a line between positions `−L` and `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineWindow {
    pub side: Side,
    /// Base half-edges `l_{−L} … l_{L−1}`; `l_0` leaves the central vertex.
    pub edges: Vec<HalfEdgeId>,
    /// Chart vertices at positions `−L … L`.
    pub vertices: Vec<usize>,
    pub half_width: usize,
}

impl LineWindow {
    pub fn center(&self) -> usize {
        self.vertices[self.half_width]
    }

    pub fn walk(&self, t: &Triangulation) -> Walk {
        Walk::open(t.origin(self.edges[0]), self.edges.clone())
    }
}

/// The edge after `h` on a line of the given side.
pub fn line_step(t: &Triangulation, side: Side, h: HalfEdgeId) -> HalfEdgeId {
    match side {
        Side::Left => t.rot_cw_n(t.twin(h), 3),
        Side::Right => t.rot_ccw_n(t.twin(h), 3),
    }
}

/// The edge before `h` on a line of the given side.
pub fn line_step_back(t: &Triangulation, side: Side, h: HalfEdgeId) -> HalfEdgeId {
    match side {
        Side::Left => t.twin(t.rot_ccw_n(h, 3)),
        Side::Right => t.twin(t.rot_cw_n(h, 3)),
    }
}

/// The window of the line of the given side whose edge `l_0` is `first`,
/// lifted so that its central vertex is `v`. Every vertex lies on `deg/2`
/// lines of each side, one for each edge leaving it with red on its left.
pub fn line_window(
    chart: &mut CoverChart<'_>,
    v: usize,
    first: HalfEdgeId,
    side: Side,
    half_width: usize,
) -> Result<LineWindow, CoverError> {
    let t = chart.base();
    if t.left_color(first) != Some(crate::surface::Color::Red) {
        return Err(CoverError::NotRedLeft(first));
    }
    if t.origin(first) != chart.projection(v) {
        return Err(CoverError::WrongStart(t.origin(first)));
    }
    let mut forward = alloc::vec![first];
    while forward.len() < half_width {
        forward.push(line_step(t, side, *forward.last().unwrap()));
    }
    forward.truncate(half_width);
    let mut backward = Vec::new();
    let mut h = first;
    for _ in 0..half_width {
        h = line_step_back(t, side, h);
        backward.push(h);
    }
    backward.reverse();
    let mut vertices = Vec::with_capacity(2 * half_width + 1);
    let mut x = v;
    for &h in backward.iter().rev() {
        x = chart.neighbor(x, t.twin(h))?;
        vertices.push(x);
    }
    vertices.reverse();
    vertices.push(v);
    let mut x = v;
    for &h in &forward {
        x = chart.neighbor(x, h)?;
        vertices.push(x);
    }
    backward.extend(forward);
    Ok(LineWindow { side, edges: backward, vertices, half_width })
}

/// Result of a bounded escape search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Escape {
    /// Edges of the subdivided graph, as (edge index, traversed forward),
    /// ending with the edge that leaves the line.
    Escapes(Vec<(usize, bool)>),
    NoWitnessWithinBounds,
}

/// Searches for a walk from `v` whose image follows the non-negative part
/// of the line starting with `first`, possibly going back and forth but
/// never behind the central vertex, and then leaves it on the escape side.
///
/// The search is exhaustive over walks of at most `depth` edges staying
/// within the first `window` edges of the line; a negative answer is not a
/// proof that no witness exists.
pub fn escape_probe(
    t: &Triangulation,
    s: &Simplicial,
    v: usize,
    first: HalfEdgeId,
    side: Side,
    depth: usize,
    window: usize,
) -> Escape {
    if t.origin(first) != s.vertex_map[v] || t.left_color(first) != Some(crate::surface::Color::Red) {
        return Escape::NoWitnessWithinBounds;
    }
    let mut line = alloc::vec![first];
    for _ in 0..window {
        line.push(line_step(t, side, *line.last().unwrap()));
    }
    let before = line_step_back(t, side, first);
    // slots at position i: entered through `back(i)`, left through `line[i]`
    let back = |i: usize| if i == 0 { t.twin(before) } else { t.twin(line[i - 1]) };
    let escapes = |i: usize, h: HalfEdgeId| {
        let star = t.star_from(back(i));
        let k = star.iter().position(|&g| g == h).unwrap();
        let forward = star.iter().position(|&g| g == line[i]).unwrap();
        match side {
            Side::Left => k > forward,
            Side::Right => k > 0 && k < forward,
        }
    };
    let incidence = s.incidence();
    let mut parent: BTreeMap<(usize, usize), Option<((usize, usize), (usize, bool))>> = BTreeMap::new();
    parent.insert((v, 0), None);
    let mut queue = VecDeque::from([((v, 0usize), 0usize)]);
    let path_to = |parent: &BTreeMap<(usize, usize), Option<((usize, usize), (usize, bool))>>, mut at: (usize, usize)| {
        let mut path = Vec::new();
        while let Some(Some((prev, e))) = parent.get(&at) {
            path.push(*e);
            at = *prev;
        }
        path.reverse();
        path
    };
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    while let Some(((u, i), d)) = queue.pop_front() {
        if !visited.insert((u, i)) || d >= depth {
            continue;
        }
        for &(e, other) in &incidence[u] {
            let forward_dir = s.edges[e].ends.0 == u;
            let step = (e, forward_dir);
            let next = match s.image_from(t, e, u) {
                EdgeImage::Point(_) => Some((other, i)),
                EdgeImage::Edge(h) if h == line[i] => (i < window).then_some((other, i + 1)),
                EdgeImage::Edge(h) if h == back(i) => (i > 0).then(|| (other, i - 1)),
                EdgeImage::Edge(h) => {
                    if escapes(i, h) {
                        let mut path = path_to(&parent, (u, i));
                        path.push(step);
                        return Escape::Escapes(path);
                    }
                    None
                }
            };
            if let Some(state) = next {
                if let alloc::collections::btree_map::Entry::Vacant(e) = parent.entry(state) {
                    e.insert(Some(((u, i), step)));
                    queue.push_back((state, d + 1));
                }
            }
        }
    }
    Escape::NoWitnessWithinBounds
}

/// Search bounds used when the caller gives none: twice the size of the
/// subdivided graph for the depth, and `3(m + 1)` for the window, with `m`
/// the number of host edges.
pub fn default_escape_bounds(t: &Triangulation, s: &Simplicial) -> (usize, usize) {
    (2 * (s.graph.n_vertices + s.graph.edges.len()), 3 * (t.n_edges() + 1))
}

/// Runs [`escape_probe`] on every line through the image of `v`.
pub fn escape_all(t: &Triangulation, s: &Simplicial, v: usize, depth: usize, window: usize) -> Vec<(HalfEdgeId, Side, Escape)> {
    let mut out = Vec::new();
    for first in t.star(s.vertex_map[v]) {
        if t.left_color(first) != Some(crate::surface::Color::Red) {
            continue;
        }
        for side in [Side::Left, Side::Right] {
            out.push((first, side, escape_probe(t, s, v, first, side, depth, window)));
        }
    }
    out
}

/// Largest flat zone (a subdivided triangle whose inner vertices have
/// degree six) of the cover with a corner at the lift of `origin(corner)`
/// and first side along `corner`, searched up to size `cap`.
pub fn flat_zone_at(chart: &mut CoverChart<'_>, from: usize, corner: HalfEdgeId, cap: usize) -> Result<usize, CoverError> {
    let mut best = 0;
    for s in 1..=cap {
        if !flat_zone_fits(chart, from, corner, s)? {
            break;
        }
        best = s;
    }
    Ok(best)
}

/// Size of the largest flat zone found at any corner of the basepoint's
/// lift, capped at `cap`.
pub fn flat_zone_size(chart: &mut CoverChart<'_>, cap: usize) -> Result<usize, CoverError> {
    let t = chart.base();
    let mut best = 0;
    for v in t.vertices() {
        let path = crate::gen::shortest_path(t, chart.projection(0), v).expect("connected base");
        let lift = *chart.lift_walk(&Walk::open(chart.projection(0), path), 0)?.last().unwrap();
        for h in t.star(v) {
            best = best.max(flat_zone_at(chart, lift, h, cap)?);
        }
    }
    Ok(best)
}

/// Lays out a flat zone of size `s` with half-edges `E(i, j)` from `P(i, j)`
/// to `P(i+1, j)` and checks every face and every inner degree.
fn flat_zone_fits(chart: &mut CoverChart<'_>, from: usize, corner: HalfEdgeId, s: usize) -> Result<bool, CoverError> {
    let t = chart.base();
    if t.origin(corner) != chart.projection(from) {
        return Err(CoverError::WrongStart(t.origin(corner)));
    }
    // rows[j][i] = E(i, j) for i + j < s
    let mut rows: Vec<Vec<HalfEdgeId>> = Vec::new();
    let mut bottom = alloc::vec![corner];
    for _ in 1..s {
        bottom.push(t.rot_cw_n(t.twin(*bottom.last().unwrap()), 3));
    }
    rows.push(bottom);
    for j in 0..s - 1 {
        let row: Vec<HalfEdgeId> = (0..s - j - 1).map(|i| t.rot_ccw_n(t.prev(rows[j][i]), 2)).collect();
        rows.push(row);
    }
    for j in 0..s {
        for i in 0..s - j {
            let e = rows[j][i];
            // the down triangle to the right of the up triangle on E(i, j)
            if i + j + 1 < s {
                let across = t.next(t.twin(t.next(e)));
                if across != t.twin(t.prev(rows[j][i + 1])) || t.next(across) != t.twin(rows[j + 1][i]) {
                    return Ok(false);
                }
            }
            let inner = i >= 1 && j >= 1;
            if inner && t.degree(t.origin(e)) != 6 {
                return Ok(false);
            }
        }
    }
    // positions in the chart must be pairwise distinct
    let mut seen = BTreeSet::new();
    let mut left = from;
    for j in 0..s {
        let mut x = left;
        if !seen.insert(x) {
            return Ok(false);
        }
        for i in 0..s - j {
            x = chart.neighbor(x, rows[j][i])?;
            if !seen.insert(x) {
                return Ok(false);
            }
        }
        left = chart.neighbor(left, t.twin(t.prev(rows[j][0])))?;
    }
    Ok(seen.insert(left))
}
