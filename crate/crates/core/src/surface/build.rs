use alloc::vec::Vec;

use super::{Color, FaceId, HalfEdgeId, Triangulation, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("half-edge {0} is out of range")]
    OutOfRange(HalfEdgeId),
    #[error("half-edge {0} is already glued")]
    AlreadyGlued(HalfEdgeId),
    #[error("half-edge {0} cannot be glued to itself")]
    SelfGlue(HalfEdgeId),
    #[error("boundary walk through half-edge {0} does not close")]
    OpenBoundary(HalfEdgeId),
}

/// Assembles a triangulation from colored triangles and pairwise gluings.
///
/// Face `f` owns the half-edges `3f`, `3f+1`, `3f+2` in counterclockwise
/// order. Half-edges left unglued become boundary edges; their outer twins
/// are appended after all interior half-edges, in the order of the interior
/// half-edge they pair with. Vertices are numbered by first appearance when
/// scanning half-edges in id order.
#[derive(Clone, Debug, Default)]
pub struct TriangulationBuilder {
    colors: Vec<Color>,
    twin: Vec<Option<HalfEdgeId>>,
}

impl TriangulationBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_face(&mut self, color: Color) -> FaceId {
        let f = FaceId::from_idx(self.colors.len());
        self.colors.push(color);
        self.twin.extend([None, None, None]);
        f
    }

    pub fn n_faces(&self) -> usize {
        self.colors.len()
    }

    /// Local half-edge `j` (0, 1 or 2) of face `f`.
    pub fn he(&self, f: FaceId, j: usize) -> HalfEdgeId {
        debug_assert!(j < 3);
        HalfEdgeId::from_idx(3 * f.idx() + j)
    }

    pub fn is_glued(&self, h: HalfEdgeId) -> bool {
        self.twin.get(h.idx()).is_some_and(Option::is_some)
    }

    pub fn glue(&mut self, a: HalfEdgeId, b: HalfEdgeId) -> Result<(), BuildError> {
        for h in [a, b] {
            match self.twin.get(h.idx()) {
                None => return Err(BuildError::OutOfRange(h)),
                Some(Some(_)) => return Err(BuildError::AlreadyGlued(h)),
                Some(None) => {}
            }
        }
        if a == b {
            return Err(BuildError::SelfGlue(a));
        }
        self.twin[a.idx()] = Some(b);
        self.twin[b.idx()] = Some(a);
        Ok(())
    }

    pub fn finish(self) -> Result<Triangulation, BuildError> {
        let n_inner = self.twin.len();
        let mut next: Vec<HalfEdgeId> = (0..n_inner)
            .map(|h| HalfEdgeId::from_idx(3 * (h / 3) + (h + 1) % 3))
            .collect();
        let mut twin: Vec<HalfEdgeId> = Vec::with_capacity(n_inner);
        let mut outer = Vec::new();
        for (h, t) in self.twin.iter().enumerate() {
            match t {
                Some(t) => twin.push(*t),
                None => {
                    let o = HalfEdgeId::from_idx(n_inner + outer.len());
                    outer.push(HalfEdgeId::from_idx(h));
                    twin.push(o);
                }
            }
        }
        for &h in &outer {
            twin.push(h);
        }
        let n = n_inner + outer.len();
        let prev = |h: HalfEdgeId| HalfEdgeId::from_idx(3 * (h.idx() / 3) + (h.idx() + 2) % 3);
        // The outer successor of twin(h) leaves origin(h) along the hole:
        // rotate counterclockwise from h until the hole is reached.
        for &h in &outer {
            let mut x = h;
            let mut found = None;
            for _ in 0..=n_inner {
                let p = prev(x);
                let tp = twin[p.idx()];
                if tp.idx() >= n_inner {
                    found = Some(tp);
                    break;
                }
                x = tp;
            }
            next.push(found.ok_or(BuildError::OpenBoundary(h))?);
        }
        let mut face = Vec::with_capacity(n);
        face.extend((0..n_inner).map(|h| Some(FaceId::from_idx(h / 3))));
        face.resize(n, None);

        let mut origin = alloc::vec![VertexId(u32::MAX); n];
        let mut vertex_he = Vec::new();
        let mut boundary_vertex = Vec::new();
        for h in 0..n {
            if origin[h].0 != u32::MAX {
                continue;
            }
            let v = VertexId::from_idx(vertex_he.len());
            vertex_he.push(HalfEdgeId::from_idx(h));
            let mut on_boundary = false;
            let mut g = h;
            loop {
                origin[g] = v;
                on_boundary |= g >= n_inner;
                g = next[twin[g].idx()].idx();
                if g == h {
                    break;
                }
            }
            boundary_vertex.push(on_boundary);
        }
        let face_he = (0..self.colors.len())
            .map(|f| HalfEdgeId::from_idx(3 * f))
            .collect();
        Ok(Triangulation {
            next,
            twin,
            origin,
            face,
            face_he,
            colors: self.colors,
            vertex_he,
            boundary_vertex,
        })
    }
}
