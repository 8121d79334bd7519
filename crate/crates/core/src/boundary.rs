//! Drawings on bordered hosts whose vertices may be pinned to the boundary
//! in a prescribed order.
//!
//! Harmonizing such a drawing goes through a closed host: every boundary
//! component gets a crown of fans, the result is glued to its mirror image,
//! and gadgets of genus three fill the seams. Anchored vertices are tied
//! to the seam by stem edges that no move can reach.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::drawing::{DrawingError, EdgeImage, Graph};
use crate::harmonizer::{self, AuditError, Config, HarmonizeError, HarmonyState, MoveTrace};
use crate::surface::{
    copy_into, double_with_gadgets, validate_reducing, Doubled, HalfEdgeId, SurfaceError, Triangulation,
    TriangulationBuilder, VertexId,
};
use crate::Drawing;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoundaryError {
    #[error("the host has no boundary")]
    ClosedHost,
    #[error("the host is not a reducing triangulation")]
    NotReducing,
    #[error("anchor vertex {0} is not on the boundary")]
    NotOnBoundary(VertexId),
    #[error("boundary vertex {0} is met twice by the boundary")]
    Pinched(VertexId),
    #[error("drawing vertex {vertex} is anchored at {anchor} but drawn at {drawn}")]
    Misplaced { vertex: usize, anchor: VertexId, drawn: VertexId },
    #[error("drawing vertex {0} is anchored twice")]
    Duplicate(usize),
    #[error("drawing vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Harmonize(#[from] HarmonizeError),
    #[error("move {0} breaks the guard: {1}")]
    Guard(usize, GuardViolation),
    #[error("the trace does not audit: {0}")]
    Audit(#[from] AuditError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GuardViolation {
    /// A stem edge changed its image.
    StemMoved(usize),
    /// An edge image uses a guard edge.
    GuardUsed(usize),
    /// An edge of the drawing left the host and its mirror.
    LeftHost(usize),
    /// An anchored vertex moved.
    AnchorMoved(usize),
    /// An edge of the drawing got longer than it was.
    Longer(usize),
}

impl core::fmt::Display for GuardViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GuardViolation::StemMoved(e) => write!(f, "stem edge {e} was remapped"),
            GuardViolation::GuardUsed(e) => write!(f, "edge {e} uses a guard edge"),
            GuardViolation::LeftHost(e) => write!(f, "edge {e} leaves the host"),
            GuardViolation::AnchorMoved(v) => write!(f, "anchored vertex {v} moved"),
            GuardViolation::Longer(e) => write!(f, "edge {e} got longer"),
        }
    }
}

/// Drawing vertices pinned to boundary vertices of the host, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Anchor {
    pub lists: BTreeMap<VertexId, Vec<usize>>,
}

impl Anchor {
    pub fn new() -> Anchor {
        Anchor::default()
    }

    pub fn push(&mut self, at: VertexId, vertex: usize) {
        self.lists.entry(at).or_default().push(vertex);
    }

    pub fn is_empty(&self) -> bool {
        self.lists.values().all(Vec::is_empty)
    }

    pub fn len(&self) -> usize {
        self.lists.values().map(Vec::len).sum()
    }

    /// Anchored vertices at `x`, in order.
    pub fn at(&self, x: VertexId) -> &[usize] {
        self.lists.get(&x).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.lists.values().flatten().copied()
    }

    pub fn check(&self, t: &Triangulation, f: &Drawing) -> Result<(), BoundaryError> {
        let mut seen = BTreeSet::new();
        for (&x, list) in &self.lists {
            if x.idx() >= t.n_vertices() || !t.is_boundary_vertex(x) {
                return Err(BoundaryError::NotOnBoundary(x));
            }
            for &v in list {
                let drawn = *f.vertex_map.get(v).ok_or(BoundaryError::UnknownVertex(v))?;
                if drawn != x {
                    return Err(BoundaryError::Misplaced { vertex: v, anchor: x, drawn });
                }
                if !seen.insert(v) {
                    return Err(BoundaryError::Duplicate(v));
                }
            }
        }
        Ok(())
    }
}

/// The boundary corner at `x`: the interior half-edge leaving `x` along the
/// boundary, followed clockwise by the outer gap and then by the outer
/// half-edge leaving `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub vertex: VertexId,
    pub inner: HalfEdgeId,
    pub outer: HalfEdgeId,
}

/// Boundary corners of every boundary vertex.
pub fn corners(t: &Triangulation) -> Result<BTreeMap<VertexId, Corner>, BoundaryError> {
    let mut out = BTreeMap::new();
    for cycle in t.boundary_cycles() {
        let len = cycle.len();
        for (i, &o) in cycle.iter().enumerate() {
            let x = t.origin(o);
            let inner = t.twin(cycle[(i + len - 1) % len]);
            let corner = Corner { vertex: x, inner, outer: o };
            if out.insert(x, corner).is_some() {
                return Err(BoundaryError::Pinched(x));
            }
        }
    }
    Ok(out)
}

/// A half-edge of the host graph extended by stems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarHalfEdge {
    Host(HalfEdgeId),
    /// From the boundary vertex to the tip of the stem.
    StemOut(usize),
    StemIn(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stem {
    pub at: VertexId,
    /// Position in the anchor list at `at`, from 1.
    pub rank: usize,
    pub vertex: usize,
}

/// The host graph with a stem for every anchored vertex, and the drawing
/// extended by one edge along each stem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarExtension {
    /// Host vertices keep their indices; the tip of stem `i` is vertex
    /// `n_host_vertices + i`.
    pub n_host_vertices: usize,
    pub stems: Vec<Stem>,
    /// Clockwise rotation at every vertex.
    pub rotation: Vec<Vec<StarHalfEdge>>,
    /// Original vertices and edges keep their indices; stem edges come last.
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<Vec<StarHalfEdge>>,
}

impl StarExtension {
    pub fn n_vertices(&self) -> usize {
        self.n_host_vertices + self.stems.len()
    }

    pub fn head(&self, t: &Triangulation, h: StarHalfEdge) -> usize {
        match h {
            StarHalfEdge::Host(h) => t.head(h).idx(),
            StarHalfEdge::StemOut(i) => self.n_host_vertices + i,
            StarHalfEdge::StemIn(i) => self.stems[i].at.idx(),
        }
    }
}

pub fn build_star_extension(t: &Triangulation, f: &Drawing, a: &Anchor) -> Result<StarExtension, BoundaryError> {
    f.check(t)?;
    if t.is_closed() {
        return Err(BoundaryError::ClosedHost);
    }
    a.check(t, f)?;
    let corners = corners(t)?;
    let mut stems = Vec::new();
    for (&x, list) in &a.lists {
        for (i, &v) in list.iter().enumerate() {
            stems.push(Stem { at: x, rank: i + 1, vertex: v });
        }
    }
    let n = t.n_vertices();
    let mut rotation: Vec<Vec<StarHalfEdge>> = t
        .vertices()
        .map(|v| {
            let start = corners.get(&v).map_or(t.vertex_half_edge(v), |c| c.outer);
            t.star_from(start).into_iter().map(StarHalfEdge::Host).collect()
        })
        .collect();
    for (i, s) in stems.iter().enumerate() {
        // the star starts at the outer half-edge, so stems go at its end
        rotation[s.at.idx()].push(StarHalfEdge::StemOut(i));
    }
    rotation.extend((0..stems.len()).map(|i| alloc::vec![StarHalfEdge::StemIn(i)]));
    let mut edges = f.graph.edges.clone();
    let mut vertex_map: Vec<usize> = f.vertex_map.iter().map(|v| v.idx()).collect();
    let mut edge_map: Vec<Vec<StarHalfEdge>> =
        f.edge_map.iter().map(|w| w.iter().copied().map(StarHalfEdge::Host).collect()).collect();
    for (i, s) in stems.iter().enumerate() {
        vertex_map.push(n + i);
        edges.push((s.vertex, vertex_map.len() - 1));
        edge_map.push(alloc::vec![StarHalfEdge::StemOut(i)]);
    }
    Ok(StarExtension {
        n_host_vertices: n,
        stems,
        rotation,
        graph: Graph::new(vertex_map.len(), edges),
        vertex_map,
        edge_map,
    })
}

/// A host with crowns attached to its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crowned {
    pub tri: Triangulation,
    /// Image of every half-edge of the original host, outer ones included.
    pub he: Vec<HalfEdgeId>,
    /// Interior crown edges leaving each original boundary vertex, clockwise.
    pub fans: BTreeMap<VertexId, Vec<HalfEdgeId>>,
}

/// Attaches to every boundary component a crown in which each boundary
/// vertex `x` is the apex of a fan with at least `need(x)` interior edges.
pub fn attach_crowns(t: &Triangulation, need: impl Fn(VertexId) -> usize) -> Result<Crowned, BoundaryError> {
    let mut b = TriangulationBuilder::new();
    let copy = copy_into(&mut b, t, false);
    let mut fans: BTreeMap<VertexId, Vec<HalfEdgeId>> = BTreeMap::new();
    for cycle in t.boundary_cycles() {
        let len = cycle.len();
        // base triangle on each boundary edge, with local sides
        // 0: along the edge, 1: from its head outwards, 2: back to its tail
        let base: Vec<_> = cycle
            .iter()
            .map(|&o| {
                let c = t.left_color(t.twin(o)).expect("interior side").flip();
                (b.add_face(c), c)
            })
            .collect();
        for j in 0..len {
            let o = cycle[j];
            b.glue(copy[t.twin(o).idx()].expect("interior side"), b.he(base[j].0, 0)).expect("fresh crown");
            let x = t.head(o);
            let (first, color) = base[j];
            let want = base[(j + 1) % len].1;
            let mut r = need(x).saturating_sub(1).max(1);
            // the fan and its two neighbours alternate colors
            if (r % 2 == 1) != (want == color) {
                r += 1;
            }
            let mut prev = (first, 1);
            let mut c = color;
            let mut fan = alloc::vec![b.he(first, 1)];
            for _ in 0..r {
                c = c.flip();
                let g = b.add_face(c);
                b.glue(b.he(prev.0, prev.1), b.he(g, 0)).expect("fresh crown");
                prev = (g, 1);
                fan.push(b.he(g, 1));
            }
            let next = base[(j + 1) % len].0;
            b.glue(b.he(prev.0, prev.1), b.he(next, 2)).expect("fresh crown");
            fans.insert(x, fan);
        }
    }
    let tri = b.finish().map_err(SurfaceError::from)?;
    let mut he = alloc::vec![HalfEdgeId(0); t.n_half_edges()];
    for h in t.half_edges() {
        he[h.idx()] = match copy[h.idx()] {
            Some(g) => g,
            None => tri.twin(copy[t.twin(h).idx()].expect("interior side")),
        };
    }
    Ok(Crowned { tri, he, fans })
}

/// Everything needed to go from the bordered host to the closed one and back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub crowned: Crowned,
    pub doubled: Doubled,
    /// The closed drawing: the copy of the drawing (same indices), its
    /// mirror, then the tip vertices. Edges are the copy, the mirror, the
    /// stems of the copy and the stems of the mirror.
    pub drawing: Drawing,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub stems: Vec<Stem>,
    /// First three and last three interior crown edges at every anchored
    /// corner, in the copy and in the mirror.
    pub guards: BTreeSet<HalfEdgeId>,
    /// Closed-host half-edges of the copy of the host, by original half-edge.
    pub copy_he: Vec<HalfEdgeId>,
    pub mirror_he: Vec<HalfEdgeId>,
}

impl Extension {
    pub fn host(&self) -> &Triangulation {
        &self.doubled.tri
    }

    /// Each anchored vertex has two stems in the copy and two in the mirror.
    pub fn stem_edges(&self) -> core::ops::Range<usize> {
        2 * self.n_edges..2 * self.n_edges + 4 * self.stems.len()
    }

    pub fn copy_vertex(&self, t: &Triangulation, v: VertexId) -> VertexId {
        self.host().origin(self.copy_he[t.vertex_half_edge(v).idx()])
    }

    /// Original half-edge under a closed-host half-edge of the copy.
    pub fn original_half_edges(&self) -> BTreeMap<HalfEdgeId, HalfEdgeId> {
        self.copy_he.iter().enumerate().map(|(i, &h)| (h, HalfEdgeId(i as u32))).collect()
    }

    /// Closed-host half-edges of the host and of its mirror.
    pub fn flat_half_edges(&self) -> BTreeSet<HalfEdgeId> {
        self.copy_he.iter().chain(&self.mirror_he).copied().collect()
    }
}

/// Fan positions of the two stems of the anchored vertex of the given
/// rank. Every gap between stems, and between stems and the ends of the
/// fan, spans three fan edges, so that the cycle through a vertex, its two
/// tips and its mirror turns by at least three at both ends.
fn stem_slots(rank: usize) -> [usize; 2] {
    let p = 3 + 6 * (rank - 1);
    [p, p + 3]
}

/// Interior crown edges needed at a corner with `k` anchored vertices.
pub fn fan_size(k: usize) -> usize {
    if k == 0 {
        6
    } else {
        stem_slots(k)[1] + 4
    }
}

/// Builds the closed host and the closed drawing.
pub fn extend_for_harmonization(t: &Triangulation, f: &Drawing, a: &Anchor) -> Result<Extension, BoundaryError> {
    if t.is_closed() {
        return Err(BoundaryError::ClosedHost);
    }
    if !validate_reducing(t).ok {
        return Err(BoundaryError::NotReducing);
    }
    let star = build_star_extension(t, f, a)?;
    let crowned = attach_crowns(t, |x| fan_size(a.at(x).len()))?;
    let doubled = double_with_gadgets(&crowned.tri)?;
    let tb = &doubled.tri;
    let copy_he: Vec<HalfEdgeId> = crowned.he.iter().map(|&h| doubled.copy_he[h.idx()]).collect();
    let mirror_he: Vec<HalfEdgeId> = crowned.he.iter().map(|&h| doubled.mirror_he[h.idx()]).collect();
    let vertex = |map: &[HalfEdgeId], v: VertexId| tb.origin(map[t.vertex_half_edge(v).idx()]);

    let n = f.graph.n_vertices;
    let m = f.graph.edges.len();
    let mut vertex_map: Vec<VertexId> = f.vertex_map.iter().map(|&v| vertex(&copy_he, v)).collect();
    vertex_map.extend(f.vertex_map.iter().map(|&v| vertex(&mirror_he, v)));
    let mut edges: Vec<(usize, usize)> = f.graph.edges.clone();
    edges.extend(f.graph.edges.iter().map(|&(u, v)| (u + n, v + n)));
    let mut edge_map: Vec<Vec<HalfEdgeId>> =
        f.edge_map.iter().map(|w| w.iter().map(|h| copy_he[h.idx()]).collect()).collect();
    edge_map.extend(f.edge_map.iter().map(|w| w.iter().map(|h| mirror_he[h.idx()]).collect()));

    let mut guards = BTreeSet::new();
    let mut tips = Vec::new();
    for s in &star.stems {
        let fan = &crowned.fans[&s.at];
        for p in stem_slots(s.rank) {
            let (c, mi) = (doubled.copy_he[fan[p].idx()], doubled.mirror_he[fan[p].idx()]);
            vertex_map.push(tb.head(c));
            tips.push((s.vertex, vertex_map.len() - 1, c, mi));
        }
    }
    for &(v, tip, c, _) in &tips {
        edges.push((v, tip));
        edge_map.push(alloc::vec![c]);
    }
    for &(v, tip, _, mi) in &tips {
        edges.push((v + n, tip));
        edge_map.push(alloc::vec![mi]);
    }
    for (&x, list) in &a.lists {
        if list.is_empty() {
            continue;
        }
        let fan = &crowned.fans[&x];
        let last = stem_slots(list.len())[1];
        for i in (0..3).chain(last + 1..last + 4) {
            let e = fan[i];
            for g in [doubled.copy_he[e.idx()], doubled.mirror_he[e.idx()]] {
                guards.insert(g);
                guards.insert(tb.twin(g));
            }
        }
    }
    let drawing = Drawing::new(Graph::new(vertex_map.len(), edges), vertex_map, edge_map);
    Ok(Extension { crowned, doubled, drawing, n_vertices: n, n_edges: m, stems: star.stems, guards, copy_he, mirror_he })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredOutcome {
    pub drawing: Drawing,
    pub extension: Extension,
    pub trace: MoveTrace,
    pub closed: HarmonyState,
}

/// Harmonizes a drawing on a bordered host without moving its anchored
/// vertices, by harmonizing its closed extension and keeping the copy.
///
/// The result is meaningful when the drawing can be untangled relative to
/// the anchor; that hypothesis is not checked.
pub fn harmonize_rel_anchor(t: &Triangulation, f: &Drawing, a: &Anchor, cfg: Config) -> Result<AnchoredOutcome, BoundaryError> {
    let ext = extend_for_harmonization(t, f, a)?;
    let tb = ext.host();
    let initial = HarmonyState::new(tb, &ext.drawing)?;
    let out = harmonizer::harmonize(tb, &ext.drawing, cfg)?;
    harmonizer::audit(tb, &initial, &out.trace)?;
    check_guards(t, f, a, &ext, &initial, &out.trace)?;
    let back = ext.original_half_edges();
    let closed = out.drawing;
    let vertex_back: BTreeMap<VertexId, VertexId> = t.vertices().map(|v| (ext.copy_vertex(t, v), v)).collect();
    let vertex_map = closed.vertex_map[..ext.n_vertices].iter().map(|v| vertex_back[v]).collect();
    let edge_map = closed.edge_map[..ext.n_edges].iter().map(|w| w.iter().map(|h| back[h]).collect()).collect();
    let drawing = Drawing::new(f.graph.clone(), vertex_map, edge_map);
    Ok(AnchoredOutcome { drawing, extension: ext, trace: out.trace, closed: out.state })
}

/// Replays the trace and checks that stems keep their images, no guard
/// edge is ever used, the copy and the mirror stay on their side, anchored
/// vertices stay put and no edge of the drawing gets longer.
pub fn check_guards(
    t: &Triangulation,
    f: &Drawing,
    a: &Anchor,
    ext: &Extension,
    initial: &HarmonyState,
    trace: &MoveTrace,
) -> Result<(), BoundaryError> {
    let tb = ext.host();
    let flat = ext.flat_half_edges();
    let flat_vertices: BTreeSet<VertexId> = flat.iter().map(|&h| tb.origin(h)).collect();
    let stems = ext.stem_edges();
    let start_images: Vec<EdgeImage> = initial.simplicial.edges.iter().map(|e| e.image).collect();
    let anchored: Vec<(usize, VertexId)> = a
        .vertices()
        .flat_map(|v| [(v, ext.copy_vertex(t, f.vertex_map[v])), (v + ext.n_vertices, ext.drawing.vertex_map[v + ext.n_vertices])])
        .collect();
    let start_lengths = initial.simplicial.lengths();
    let check = |i: usize, s: &HarmonyState| -> Result<(), BoundaryError> {
        let fail = |g| Err(BoundaryError::Guard(i, g));
        for (k, e) in s.simplicial.edges.iter().enumerate() {
            if stems.contains(&e.edge) {
                if e.image != start_images[k] {
                    return fail(GuardViolation::StemMoved(e.edge));
                }
                continue;
            }
            match e.image {
                EdgeImage::Edge(h) => {
                    if ext.guards.contains(&h) {
                        return fail(GuardViolation::GuardUsed(e.edge));
                    }
                    if !flat.contains(&h) {
                        return fail(GuardViolation::LeftHost(e.edge));
                    }
                }
                EdgeImage::Point(v) => {
                    if !flat_vertices.contains(&v) {
                        return fail(GuardViolation::LeftHost(e.edge));
                    }
                }
            }
        }
        for &(v, x) in &anchored {
            if s.position(v) != x {
                return fail(GuardViolation::AnchorMoved(v));
            }
        }
        let lengths = s.simplicial.lengths();
        if let Some(e) = (0..lengths.len()).find(|&e| lengths[e] > start_lengths[e]) {
            return fail(GuardViolation::Longer(e));
        }
        Ok(())
    };
    let mut s = initial.clone();
    check(0, &s)?;
    for (i, e) in trace.entries.iter().enumerate() {
        let mv = harmonizer::Move { kind: e.kind.clone(), steps: e.steps.clone(), version: s.version() };
        harmonizer::apply_move(tb, &mut s, &mv)?;
        check(i, &s)?;
    }
    Ok(())
}
