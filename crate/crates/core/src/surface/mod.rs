//! Oriented combinatorial triangulations with 2-colored faces.
//!
//! Every edge is stored as two half-edges. Interior half-edges belong to a
//! triangle (`next` runs counterclockwise inside it); half-edges on the outer
//! side of a boundary edge belong to no face and their `next` runs along the
//! boundary cycle, so that a hole behaves like a (large, uncolored) face.
//! With this convention the clockwise rotation around a vertex is
//! `rot_cw(h) = next(twin(h))` everywhere, including boundary vertices.

mod build;
mod constructors;
mod patch;
mod validate;

use alloc::vec::Vec;
use core::fmt;

pub use build::{BuildError, TriangulationBuilder};
pub use constructors::{
    build_one_gadget, build_three_gadget, build_torus, crown, cut_edge, double_with_gadgets,
    subdivide, Doubled, Gadget, SurfaceError,
};
pub(crate) use constructors::copy_into;
pub use patch::{disk_patch, Patch, PatchError};
pub use validate::{
    validate_raw, validate_reducing, StructuralError, ValidationReport, Violation, ViolationKind,
    ViolationLocation,
};

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn idx(self) -> usize {
                self.0 as usize
            }

            #[inline]
            pub fn from_idx(i: usize) -> Self {
                $name(i as u32)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(
    /// A directed edge of the triangulation.
    HalfEdgeId
);
id_type!(VertexId);
id_type!(FaceId);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// Index tables exactly as they appear in a serialized triangulation.
///
/// Nothing is checked; see [`validate_raw`] and [`Triangulation::from_raw`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMap {
    pub next: Vec<u32>,
    pub twin: Vec<Option<u32>>,
    pub origin: Vec<u32>,
    /// Interior faces as (color, representative half-edge).
    pub faces: Vec<(Color, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    next: Vec<HalfEdgeId>,
    twin: Vec<HalfEdgeId>,
    origin: Vec<VertexId>,
    face: Vec<Option<FaceId>>,
    face_he: Vec<HalfEdgeId>,
    colors: Vec<Color>,
    vertex_he: Vec<HalfEdgeId>,
    boundary_vertex: Vec<bool>,
}

impl Triangulation {
    pub fn n_half_edges(&self) -> usize {
        self.next.len()
    }

    pub fn n_edges(&self) -> usize {
        self.next.len() / 2
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_he.len()
    }

    /// Number of (triangular) interior faces.
    pub fn n_faces(&self) -> usize {
        self.face_he.len()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdgeId> + Clone {
        (0..self.next.len()).map(HalfEdgeId::from_idx)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        (0..self.vertex_he.len()).map(VertexId::from_idx)
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> + Clone {
        (0..self.face_he.len()).map(FaceId::from_idx)
    }

    #[inline]
    pub fn next(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.next[h.idx()]
    }

    /// Predecessor of an interior half-edge inside its triangle.
    #[inline]
    pub fn prev(&self, h: HalfEdgeId) -> HalfEdgeId {
        debug_assert!(self.face[h.idx()].is_some());
        self.next(self.next(h))
    }

    #[inline]
    pub fn twin(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.twin[h.idx()]
    }

    #[inline]
    pub fn origin(&self, h: HalfEdgeId) -> VertexId {
        self.origin[h.idx()]
    }

    #[inline]
    pub fn head(&self, h: HalfEdgeId) -> VertexId {
        self.origin[self.twin[h.idx()].idx()]
    }

    #[inline]
    pub fn face(&self, h: HalfEdgeId) -> Option<FaceId> {
        self.face[h.idx()]
    }

    /// True for half-edges on the outer side of a boundary edge.
    #[inline]
    pub fn is_outer(&self, h: HalfEdgeId) -> bool {
        self.face[h.idx()].is_none()
    }

    /// True for interior half-edges whose twin is outer.
    pub fn is_boundary_edge(&self, h: HalfEdgeId) -> bool {
        !self.is_outer(h) && self.is_outer(self.twin(h))
    }

    pub fn face_half_edge(&self, f: FaceId) -> HalfEdgeId {
        self.face_he[f.idx()]
    }

    pub fn face_half_edges(&self, f: FaceId) -> [HalfEdgeId; 3] {
        let h = self.face_he[f.idx()];
        [h, self.next(h), self.next(self.next(h))]
    }

    pub fn color(&self, f: FaceId) -> Color {
        self.colors[f.idx()]
    }

    /// Color of the face on the left of `h`, if `h` is interior.
    #[inline]
    pub fn left_color(&self, h: HalfEdgeId) -> Option<Color> {
        self.face(h).map(|f| self.colors[f.idx()])
    }

    /// Next outgoing half-edge clockwise around `origin(h)`.
    #[inline]
    pub fn rot_cw(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.next(self.twin(h))
    }

    /// Next outgoing half-edge counterclockwise around `origin(h)`.
    #[inline]
    pub fn rot_ccw(&self, h: HalfEdgeId) -> HalfEdgeId {
        // twin(prev(h)) for interior h; outer half-edges need the orbit walk.
        if self.face[h.idx()].is_some() {
            self.twin(self.prev(h))
        } else {
            let mut g = h;
            loop {
                let c = self.rot_cw(g);
                if c == h {
                    return g;
                }
                g = c;
            }
        }
    }

    pub fn rot_cw_n(&self, h: HalfEdgeId, n: usize) -> HalfEdgeId {
        (0..n).fold(h, |g, _| self.rot_cw(g))
    }

    pub fn rot_ccw_n(&self, h: HalfEdgeId, n: usize) -> HalfEdgeId {
        (0..n).fold(h, |g, _| self.rot_ccw(g))
    }

    /// Some outgoing half-edge of `v`.
    pub fn vertex_half_edge(&self, v: VertexId) -> HalfEdgeId {
        self.vertex_he[v.idx()]
    }

    /// Outgoing half-edges of `v` in clockwise order.
    pub fn star(&self, v: VertexId) -> Vec<HalfEdgeId> {
        self.star_from(self.vertex_he[v.idx()])
    }

    /// Outgoing half-edges around `origin(h)` clockwise, starting at `h`.
    pub fn star_from(&self, h: HalfEdgeId) -> Vec<HalfEdgeId> {
        let mut out = Vec::new();
        let mut g = h;
        loop {
            out.push(g);
            g = self.rot_cw(g);
            if g == h {
                break;
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.star(v).len()
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.boundary_vertex[v.idx()]
    }

    pub fn is_closed(&self) -> bool {
        self.face.iter().all(Option::is_some)
    }

    /// Number of clockwise rotations taking `from` to `to` around their
    /// common origin, or `None` if they do not share one.
    pub fn cw_distance(&self, from: HalfEdgeId, to: HalfEdgeId) -> Option<usize> {
        if self.origin(from) != self.origin(to) {
            return None;
        }
        let mut g = from;
        let mut k = 0;
        while g != to {
            g = self.rot_cw(g);
            k += 1;
            if g == from {
                return None;
            }
        }
        Some(k)
    }

    /// Boundary cycles, each listed as its outer half-edges in `next` order.
    pub fn boundary_cycles(&self) -> Vec<Vec<HalfEdgeId>> {
        let mut seen = alloc::vec![false; self.n_half_edges()];
        let mut cycles = Vec::new();
        for h in self.half_edges() {
            if !self.is_outer(h) || seen[h.idx()] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut g = h;
            while !seen[g.idx()] {
                seen[g.idx()] = true;
                cyc.push(g);
                g = self.next(g);
            }
            cycles.push(cyc);
        }
        cycles
    }

    pub fn n_boundary_edges(&self) -> usize {
        self.face.iter().filter(|f| f.is_none()).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    /// Genus from `chi = 2 - 2g - b`.
    pub fn genus(&self) -> i64 {
        let b = self.boundary_cycles().len() as i64;
        (2 - b - self.euler_characteristic()) / 2
    }

    pub fn raw(&self) -> RawMap {
        RawMap {
            next: self.next.iter().map(|h| h.0).collect(),
            twin: self.twin.iter().map(|h| Some(h.0)).collect(),
            origin: self.origin.iter().map(|v| v.0).collect(),
            faces: self
                .face_he
                .iter()
                .zip(&self.colors)
                .map(|(h, c)| (*c, h.0))
                .collect(),
        }
    }

    /// Rebuilds a triangulation from index tables, keeping every id as given.
    pub fn from_raw(raw: &RawMap) -> Result<Triangulation, StructuralError> {
        let report = validate_raw(raw)?;
        if let Some(v) = report.violations.iter().find(|v| v.kind.is_structural()) {
            return Err(StructuralError::Malformed(*v));
        }
        let n = raw.next.len();
        let next: Vec<HalfEdgeId> = raw.next.iter().map(|&h| HalfEdgeId(h)).collect();
        let twin: Vec<HalfEdgeId> = raw.twin.iter().map(|h| HalfEdgeId(h.unwrap())).collect();
        let origin: Vec<VertexId> = raw.origin.iter().map(|&v| VertexId(v)).collect();
        let mut face = alloc::vec![None; n];
        let mut face_he = Vec::with_capacity(raw.faces.len());
        let mut colors = Vec::with_capacity(raw.faces.len());
        for (fi, &(c, h)) in raw.faces.iter().enumerate() {
            let mut g = HalfEdgeId(h);
            for _ in 0..3 {
                face[g.idx()] = Some(FaceId::from_idx(fi));
                g = next[g.idx()];
            }
            face_he.push(HalfEdgeId(h));
            colors.push(c);
        }
        let n_vertices = raw
            .origin
            .iter()
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0);
        let mut vertex_he = alloc::vec![None; n_vertices];
        let mut boundary_vertex = alloc::vec![false; n_vertices];
        for h in 0..n {
            let v = origin[h].idx();
            if vertex_he[v].is_none() {
                vertex_he[v] = Some(HalfEdgeId::from_idx(h));
            }
            if face[h].is_none() {
                boundary_vertex[v] = true;
            }
        }
        let vertex_he = vertex_he
            .into_iter()
            .enumerate()
            .map(|(v, h)| h.ok_or(StructuralError::UnusedVertex(v as u32)))
            .collect::<Result<Vec<_>, _>>()?;
        let t = Triangulation {
            next,
            twin,
            origin,
            face,
            face_he,
            colors,
            vertex_he,
            boundary_vertex,
        };
        // vertex ids must coincide with rotation orbits
        for v in t.vertices() {
            let count = t.star(v).len();
            let listed = t.origin.iter().filter(|&&o| o == v).count();
            if count != listed {
                return Err(StructuralError::VertexNotAnOrbit(v.0));
            }
        }
        Ok(t)
    }

    /// Same map with the given face colors.
    pub(crate) fn recolored(&self, colors: Vec<Color>) -> Triangulation {
        debug_assert_eq!(colors.len(), self.n_faces());
        let mut t = self.clone();
        t.colors = colors;
        t
    }

    /// Same map with colors exchanged.
    pub fn with_swapped_colors(&self) -> Triangulation {
        let mut t = self.clone();
        for c in &mut t.colors {
            *c = c.flip();
        }
        t
    }
}
