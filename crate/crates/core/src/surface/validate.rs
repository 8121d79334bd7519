use alloc::vec::Vec;
use core::fmt;

use super::{Color, RawMap, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    DegreeTooLow,
    DualNotBipartite,
    NonTriangleFace,
    Disconnected,
    TwinBroken,
}

impl ViolationKind {
    /// Violations that prevent building a [`Triangulation`] at all.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            ViolationKind::NonTriangleFace | ViolationKind::TwinBroken
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::DegreeTooLow => "DegreeTooLow",
            ViolationKind::DualNotBipartite => "DualNotBipartite",
            ViolationKind::NonTriangleFace => "NonTriangleFace",
            ViolationKind::Disconnected => "Disconnected",
            ViolationKind::TwinBroken => "TwinBroken",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationLocation {
    HalfEdge(u32),
    Vertex(u32),
    Face(u32),
}

impl fmt::Display for ViolationLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationLocation::HalfEdge(h) => write!(f, "he {h}"),
            ViolationLocation::Vertex(v) => write!(f, "vertex {v}"),
            ViolationLocation::Face(x) => write!(f, "face {x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: ViolationLocation,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind.name(), self.location)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// Distinct violation kinds, sorted.
    pub fn kinds(&self) -> Vec<ViolationKind> {
        let mut k: Vec<_> = self.violations.iter().map(|v| v.kind).collect();
        k.sort();
        k.dedup();
        k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructuralError {
    #[error("index tables have different lengths")]
    LengthMismatch,
    #[error("the map has no half-edges")]
    Empty,
    #[error("half-edge {0} refers to an out-of-range half-edge")]
    IndexOutOfRange(u32),
    #[error("face {0} refers to an out-of-range half-edge")]
    FaceOutOfRange(u32),
    #[error("vertex {0} has no half-edge")]
    UnusedVertex(u32),
    #[error("vertex {0} is not a single rotation orbit")]
    VertexNotAnOrbit(u32),
    #[error("malformed map: {0}")]
    Malformed(Violation),
}

/// Checks index tables for every reducing-triangulation condition.
///
/// Out-of-range indices are reported as a [`StructuralError`]; everything
/// else lands in the report.
pub fn validate_raw(raw: &RawMap) -> Result<ValidationReport, StructuralError> {
    let n = raw.next.len();
    if raw.twin.len() != n || raw.origin.len() != n {
        return Err(StructuralError::LengthMismatch);
    }
    if n == 0 {
        return Err(StructuralError::Empty);
    }
    for h in 0..n {
        let bad_twin = matches!(raw.twin[h], Some(t) if t as usize >= n);
        if raw.next[h] as usize >= n || bad_twin {
            return Err(StructuralError::IndexOutOfRange(h as u32));
        }
    }
    for (f, &(_, h)) in raw.faces.iter().enumerate() {
        if h as usize >= n {
            return Err(StructuralError::FaceOutOfRange(f as u32));
        }
    }

    let mut violations = Vec::new();
    let push = |violations: &mut Vec<Violation>, kind, location| {
        violations.push(Violation { kind, location })
    };
    let next = |h: usize| raw.next[h] as usize;

    let mut face_of: Vec<Option<usize>> = alloc::vec![None; n];
    for (f, &(_, h)) in raw.faces.iter().enumerate() {
        let h = h as usize;
        let orbit = [h, next(h), next(next(h))];
        let distinct = orbit[0] != orbit[1] && orbit[1] != orbit[2] && orbit[0] != orbit[2];
        let shared = orbit.iter().any(|&g| face_of[g].is_some());
        if next(orbit[2]) != h || !distinct || shared {
            push(
                &mut violations,
                ViolationKind::NonTriangleFace,
                ViolationLocation::Face(f as u32),
            );
            continue;
        }
        for g in orbit {
            face_of[g] = Some(f);
        }
    }
    for h in 0..n {
        let loc = ViolationLocation::HalfEdge(h as u32);
        let Some(t) = raw.twin[h] else {
            push(&mut violations, ViolationKind::TwinBroken, loc);
            continue;
        };
        let t = t as usize;
        let mismatched = t == h || raw.twin[t] != Some(h as u32) || raw.origin[t] != raw.origin[next(h)];
        if mismatched || (face_of[h].is_none() && face_of[t].is_none()) {
            push(&mut violations, ViolationKind::TwinBroken, loc);
        }
        if face_of[h].is_none() && face_of[next(h)].is_some() {
            push(&mut violations, ViolationKind::NonTriangleFace, loc);
        }
    }
    let structural = !violations.is_empty();

    let n_vertices = raw
        .origin
        .iter()
        .map(|&v| v as usize + 1)
        .max()
        .unwrap_or(0);
    let mut degree = alloc::vec![0usize; n_vertices];
    let mut on_boundary = alloc::vec![false; n_vertices];
    for h in 0..n {
        let v = raw.origin[h] as usize;
        degree[v] += 1;
        on_boundary[v] |= face_of[h].is_none();
    }
    for v in 0..n_vertices {
        if degree[v] > 0 && !on_boundary[v] && degree[v] < 6 {
            push(
                &mut violations,
                ViolationKind::DegreeTooLow,
                ViolationLocation::Vertex(v as u32),
            );
        }
    }

    if !structural {
        for h in 0..n {
            let t = raw.twin[h].unwrap() as usize;
            if h < t {
                if let (Some(a), Some(b)) = (face_of[h], face_of[t]) {
                    if raw.faces[a].0 == raw.faces[b].0 {
                        push(
                            &mut violations,
                            ViolationKind::DualNotBipartite,
                            ViolationLocation::HalfEdge(h as u32),
                        );
                    }
                }
            }
        }
    }

    // connectivity through next and twin
    let mut seen = alloc::vec![false; n];
    let mut stack = alloc::vec![0usize];
    seen[0] = true;
    while let Some(h) = stack.pop() {
        let mut nbrs = alloc::vec![next(h)];
        if let Some(t) = raw.twin[h] {
            nbrs.push(t as usize);
        }
        for g in nbrs {
            if !seen[g] {
                seen[g] = true;
                stack.push(g);
            }
        }
    }
    if let Some(h) = seen.iter().position(|s| !s) {
        push(
            &mut violations,
            ViolationKind::Disconnected,
            ViolationLocation::HalfEdge(h as u32),
        );
    }

    Ok(ValidationReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Reports every violated reducing condition of an already built map.
pub fn validate_reducing(t: &Triangulation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut push = |kind, location| report.violations.push(Violation { kind, location });
    for v in t.vertices() {
        if !t.is_boundary_vertex(v) && t.degree(v) < 6 {
            push(ViolationKind::DegreeTooLow, ViolationLocation::Vertex(v.0));
        }
    }
    for h in t.half_edges() {
        let g = t.twin(h);
        if h < g {
            if let (Some(a), Some(b)) = (t.left_color(h), t.left_color(g)) {
                if a == b {
                    push(
                        ViolationKind::DualNotBipartite,
                        ViolationLocation::HalfEdge(h.0),
                    );
                }
            }
        }
    }
    let mut seen = alloc::vec![false; t.n_half_edges()];
    let mut stack = alloc::vec![t.half_edges().next().unwrap()];
    seen[0] = true;
    while let Some(h) = stack.pop() {
        for g in [t.next(h), t.twin(h)] {
            if !seen[g.idx()] {
                seen[g.idx()] = true;
                stack.push(g);
            }
        }
    }
    if let Some(h) = seen.iter().position(|s| !s) {
        push(
            ViolationKind::Disconnected,
            ViolationLocation::HalfEdge(h as u32),
        );
    }
    report.ok = report.violations.is_empty();
    report
}

/// Colors dual faces by breadth-first search; `None` if the dual is not bipartite.
pub(crate) fn two_color(t: &Triangulation) -> Option<Vec<Color>> {
    let mut color: Vec<Option<Color>> = alloc::vec![None; t.n_faces()];
    for start in t.faces() {
        if color[start.idx()].is_some() {
            continue;
        }
        color[start.idx()] = Some(Color::Red);
        let mut queue = alloc::collections::VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let c = color[f.idx()].unwrap();
            for h in t.face_half_edges(f) {
                if let Some(g) = t.face(t.twin(h)) {
                    match color[g.idx()] {
                        None => {
                            color[g.idx()] = Some(c.flip());
                            queue.push_back(g);
                        }
                        Some(d) if d == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}
