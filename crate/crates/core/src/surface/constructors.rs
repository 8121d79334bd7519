use alloc::vec::Vec;

use super::{
    validate_reducing, BuildError, Color, FaceId, HalfEdgeId, RawMap, Triangulation,
    TriangulationBuilder, ViolationKind,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("input is not a reducing triangulation: {0:?}")]
    NotReducing(Vec<ViolationKind>),
    #[error("a crown needs at least two triangles, got {0}")]
    CrownTooSmall(usize),
    #[error("input has no boundary")]
    ClosedInput,
    #[error("half-edge {0} is not an interior half-edge")]
    NotInterior(HalfEdgeId),
    #[error(transparent)]
    Build(#[from] BuildError),
}

fn require_reducing(t: &Triangulation) -> Result<(), SurfaceError> {
    let report = validate_reducing(t);
    if report.ok {
        Ok(())
    } else {
        Err(SurfaceError::NotReducing(report.kinds()))
    }
}

/// The one-vertex torus made of a red and a blue triangle.
///
/// Half-edges `0..6` are `a+, a-, b+, b-, c+, c-`; the red face is
/// `a+ b+ c-` and the blue face is `c+ a- b-`.
pub fn build_torus() -> Triangulation {
    let raw = RawMap {
        next: alloc::vec![2, 3, 5, 4, 1, 0],
        twin: alloc::vec![Some(1), Some(0), Some(3), Some(2), Some(5), Some(4)],
        origin: alloc::vec![0; 6],
        faces: alloc::vec![(Color::Red, 0), (Color::Blue, 4)],
    };
    Triangulation::from_raw(&raw).expect("torus tables are well formed")
}

/// Copies the faces of `t` into `b`, gluing its interior edges, and returns
/// the builder id of every interior half-edge of `t`.
///
/// A mirrored copy reverses the orientation: the image of `h` runs from
/// `head(h)` to `origin(h)` and lies in a face of the opposite color.
pub(crate) fn copy_into(
    b: &mut TriangulationBuilder,
    t: &Triangulation,
    mirror: bool,
) -> Vec<Option<HalfEdgeId>> {
    let mut map = alloc::vec![None; t.n_half_edges()];
    for f in t.faces() {
        let color = if mirror {
            t.color(f).flip()
        } else {
            t.color(f)
        };
        let g = b.add_face(color);
        let hs = t.face_half_edges(f);
        for (i, h) in hs.iter().enumerate() {
            let local = if mirror { 2 - i } else { i };
            map[h.idx()] = Some(b.he(g, local));
        }
    }
    for h in t.half_edges() {
        let g = t.twin(h);
        if h < g {
            if let (Some(x), Some(y)) = (map[h.idx()], map[g.idx()]) {
                b.glue(x, y).expect("fresh copy");
            }
        }
    }
    map
}

/// Rebuilds `t` with the listed edges cut open. Face order is kept; half-edge
/// ids are renumbered so that face `f` owns `3f..3f+3`.
pub fn cut_edge(t: &Triangulation, h: HalfEdgeId) -> Result<Triangulation, SurfaceError> {
    if t.is_outer(h) || t.is_outer(t.twin(h)) {
        return Err(SurfaceError::NotInterior(h));
    }
    let mut b = TriangulationBuilder::new();
    let mut map = alloc::vec![None; t.n_half_edges()];
    for f in t.faces() {
        let g = b.add_face(t.color(f));
        for (i, x) in t.face_half_edges(f).iter().enumerate() {
            map[x.idx()] = Some(b.he(g, i));
        }
    }
    for x in t.half_edges() {
        let y = t.twin(x);
        if x < y && x != h && y != h {
            if let (Some(p), Some(q)) = (map[x.idx()], map[y.idx()]) {
                b.glue(p, q)?;
            }
        }
    }
    Ok(b.finish()?)
}

/// Splits every face into four, adding a midpoint on every edge.
///
/// Face `f` becomes faces `4f..4f+3`: three corner faces with the parent
/// color, then the central face with the opposite color.
pub fn subdivide(t: &Triangulation) -> Result<Triangulation, SurfaceError> {
    require_reducing(t)?;
    Ok(subdivide_unchecked(t))
}

pub(crate) fn subdivide_unchecked(t: &Triangulation) -> Triangulation {
    let mut b = TriangulationBuilder::new();
    // first half (origin to midpoint) and second half (midpoint to head)
    let mut first = alloc::vec![HalfEdgeId(0); t.n_half_edges()];
    let mut second = alloc::vec![HalfEdgeId(0); t.n_half_edges()];
    for f in t.faces() {
        let c = t.color(f);
        let corners = [b.add_face(c), b.add_face(c), b.add_face(c)];
        let center = b.add_face(c.flip());
        let hs = t.face_half_edges(f);
        for i in 0..3 {
            first[hs[i].idx()] = b.he(corners[i], 0);
            second[hs[i].idx()] = b.he(corners[(i + 1) % 3], 2);
            let inner = b.he(corners[i], 1);
            let mid = b.he(center, (i + 2) % 3);
            b.glue(inner, mid).expect("fresh faces");
        }
    }
    for h in t.half_edges() {
        let g = t.twin(h);
        if !t.is_outer(h) && !t.is_outer(g) && h < g {
            b.glue(first[h.idx()], second[g.idx()])
                .expect("fresh faces");
            b.glue(second[h.idx()], first[g.idx()])
                .expect("fresh faces");
        }
    }
    b.finish().expect("subdivision of a valid map")
}

/// An annulus made of `k` triangles in a circular strip, alternately colored.
///
/// Even-indexed triangles have their base on one boundary and odd-indexed
/// ones on the other. Odd `k` yields an odd dual cycle.
pub fn crown(k: usize) -> Result<Triangulation, SurfaceError> {
    if k < 2 {
        return Err(SurfaceError::CrownTooSmall(k));
    }
    let mut b = TriangulationBuilder::new();
    let faces: Vec<FaceId> = (0..k)
        .map(|i| b.add_face(if i % 2 == 0 { Color::Red } else { Color::Blue }))
        .collect();
    // (left side, right side) locals for up and down triangles
    let sides = |i: usize| if i.is_multiple_of(2) { (2, 1) } else { (0, 1) };
    for i in 0..k {
        let j = (i + 1) % k;
        let right = b.he(faces[i], sides(i).1);
        let left = b.he(faces[j], sides(j).0);
        b.glue(right, left)?;
    }
    Ok(b.finish()?)
}

/// A boundary-filling piece whose boundary is a 2-cycle of one red-incident
/// and one blue-incident edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub tri: Triangulation,
    /// Interior boundary half-edge whose face is red.
    pub red_edge: HalfEdgeId,
    /// Interior boundary half-edge whose face is blue.
    pub blue_edge: HalfEdgeId,
}

impl Gadget {
    fn from_tri(tri: Triangulation) -> Gadget {
        let mut red = None;
        let mut blue = None;
        for h in tri.half_edges().filter(|&h| tri.is_boundary_edge(h)) {
            match tri.left_color(h) {
                Some(Color::Red) => red = red.or(Some(h)),
                Some(Color::Blue) => blue = blue.or(Some(h)),
                None => {}
            }
        }
        Gadget {
            red_edge: red.expect("gadget has a red boundary edge"),
            blue_edge: blue.expect("gadget has a blue boundary edge"),
            tri,
        }
    }
}

/// Genus one, one boundary component made of two edges.
pub fn build_one_gadget() -> Gadget {
    let s = subdivide_unchecked(&build_torus());
    let h = s
        .half_edges()
        .find(|&h| s.origin(h) != s.head(h))
        .expect("subdivided torus has non-loop edges");
    Gadget::from_tri(cut_edge(&s, h).expect("interior edge"))
}

/// Three one-gadgets chained through their boundary edges: genus three.
pub fn build_three_gadget() -> Gadget {
    let one = build_one_gadget();
    let mut b = TriangulationBuilder::new();
    let maps: Vec<_> = (0..3).map(|_| copy_into(&mut b, &one.tri, false)).collect();
    let m = |i: usize, h: HalfEdgeId| maps[i][h.idx()].expect("interior");
    for i in 0..2 {
        b.glue(m(i, one.blue_edge), m(i + 1, one.red_edge))
            .expect("gadget boundary edges are free");
    }
    let tri = b.finish().expect("valid gluing");
    Gadget {
        red_edge: m(0, one.red_edge),
        blue_edge: m(2, one.blue_edge),
        tri,
    }
}

/// A closed surface made from a bordered one: the original, its mirror image,
/// and a three-gadget sewn into every boundary edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Doubled {
    pub tri: Triangulation,
    /// Image of each half-edge of the input (outer ones included) in the copy.
    pub copy_he: Vec<HalfEdgeId>,
    /// Image of each half-edge of the input in the mirror, same direction.
    pub mirror_he: Vec<HalfEdgeId>,
    /// Faces `0..n_copy_faces` come from the copy, the next block of equal
    /// size from the mirror, the rest from gadgets.
    pub n_copy_faces: usize,
}

impl Doubled {
    pub fn copy_vertex(&self, t0: &Triangulation, v: super::VertexId) -> super::VertexId {
        self.tri.origin(self.copy_he[t0.vertex_half_edge(v).idx()])
    }

    pub fn mirror_vertex(&self, t0: &Triangulation, v: super::VertexId) -> super::VertexId {
        self.tri
            .origin(self.mirror_he[t0.vertex_half_edge(v).idx()])
    }

    /// True if the face belongs to the copy or to the mirror.
    pub fn in_double(&self, f: FaceId) -> bool {
        f.idx() < 2 * self.n_copy_faces
    }
}

pub fn double_with_gadgets(t0: &Triangulation) -> Result<Doubled, SurfaceError> {
    require_reducing(t0)?;
    if t0.is_closed() {
        return Err(SurfaceError::ClosedInput);
    }
    let gadget = build_three_gadget();
    let mut b = TriangulationBuilder::new();
    let copy = copy_into(&mut b, t0, false);
    let mirror = copy_into(&mut b, t0, true);
    for h in t0.half_edges().filter(|&h| t0.is_boundary_edge(h)) {
        let g = copy_into(&mut b, &gadget.tri, false);
        let red = g[gadget.red_edge.idx()].unwrap();
        let blue = g[gadget.blue_edge.idx()].unwrap();
        let (ch, mh) = (copy[h.idx()].unwrap(), mirror[h.idx()].unwrap());
        if t0.left_color(h) == Some(Color::Red) {
            b.glue(ch, blue)?;
            b.glue(mh, red)?;
        } else {
            b.glue(ch, red)?;
            b.glue(mh, blue)?;
        }
    }
    let tri = b.finish()?;
    let mut copy_he = alloc::vec![HalfEdgeId(0); t0.n_half_edges()];
    let mut mirror_he = alloc::vec![HalfEdgeId(0); t0.n_half_edges()];
    for h in t0.half_edges().filter(|&h| !t0.is_outer(h)) {
        let c = copy[h.idx()].unwrap();
        let m = mirror[h.idx()].unwrap();
        copy_he[h.idx()] = c;
        mirror_he[h.idx()] = tri.twin(m);
        if t0.is_boundary_edge(h) {
            let o = t0.twin(h);
            copy_he[o.idx()] = tri.twin(c);
            mirror_he[o.idx()] = m;
        }
    }
    Ok(Doubled {
        tri,
        copy_he,
        mirror_he,
        n_copy_faces: t0.n_faces(),
    })
}
