use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::validate::two_color;
use super::{Color, HalfEdgeId, Triangulation, TriangulationBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PatchError {
    #[error("no admissible degree list")]
    NoDegrees,
    #[error("growth failed after {0} attempts")]
    GrowthFailed(usize),
}

/// A triangulated disk grown around a central vertex.
#[derive(Clone, Debug)]
pub struct Patch {
    pub tri: Triangulation,
    /// Combinatorial distance from the center vertex (vertex 0) at growth time.
    pub level: Vec<usize>,
}

const ATTEMPTS: usize = 64;

/// Grows a disk by completing vertex stars in breadth-first order until
/// every vertex at distance at most `radius` from the center is interior.
///
/// Interior degrees are drawn from `degrees`; the center may be forced to
/// `center_degree`. Faces get a proper 2-coloring whenever one exists
/// (always, when all interior degrees are even) and an arbitrary
/// breadth-first coloring otherwise.
pub fn disk_patch<R: Rng + ?Sized>(
    rng: &mut R,
    radius: usize,
    degrees: &[usize],
    center_degree: Option<usize>,
) -> Result<Patch, PatchError> {
    if degrees.iter().all(|&d| d < 3) {
        return Err(PatchError::NoDegrees);
    }
    for _ in 0..ATTEMPTS {
        if let Some(p) = try_grow(rng, radius, degrees, center_degree) {
            return Ok(p);
        }
    }
    Err(PatchError::GrowthFailed(ATTEMPTS))
}

struct Growth {
    triangles: Vec<[usize; 3]>,
    edges: BTreeMap<(usize, usize), ()>,
    /// successor and predecessor along the counterclockwise boundary cycle
    succ: Vec<usize>,
    pred: Vec<usize>,
    incident: Vec<usize>,
    level: Vec<usize>,
}

impl Growth {
    fn vertex(&mut self, level: usize) -> usize {
        self.succ.push(usize::MAX);
        self.pred.push(usize::MAX);
        self.incident.push(0);
        self.level.push(level);
        self.level.len() - 1
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains_key(&(a.min(b), a.max(b)))
    }

    fn triangle(&mut self, t: [usize; 3]) {
        for i in 0..3 {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            self.edges.insert((a.min(b), a.max(b)), ());
            self.incident[t[i]] += 1;
        }
        self.triangles.push(t);
    }
}

fn try_grow<R: Rng + ?Sized>(
    rng: &mut R,
    radius: usize,
    degrees: &[usize],
    center_degree: Option<usize>,
) -> Option<Patch> {
    let mut g = Growth {
        triangles: Vec::new(),
        edges: BTreeMap::new(),
        succ: Vec::new(),
        pred: Vec::new(),
        incident: Vec::new(),
        level: Vec::new(),
    };
    let d0 = match center_degree {
        Some(d) => d,
        None => *degrees.choose(rng)?,
    };
    let c = g.vertex(0);
    let ring: Vec<usize> = (0..d0).map(|_| g.vertex(1)).collect();
    for i in 0..d0 {
        let (a, b) = (ring[i], ring[(i + 1) % d0]);
        g.triangle([c, a, b]);
        g.succ[a] = b;
        g.pred[b] = a;
    }
    let mut queue: VecDeque<usize> = ring.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        if g.level[v] > radius {
            break;
        }
        let (a, b) = (g.pred[v], g.succ[v]);
        let t = g.incident[v];
        let closing_ok = a != b && !g.has_edge(a, b) && g.succ[b] != a;
        let options: Vec<usize> = degrees
            .iter()
            .copied()
            .filter(|&d| d > t + 1 || (d == t + 1 && closing_ok))
            .collect();
        let d = *options.choose(rng)?;
        let k = d - t - 1;
        let mut chain = Vec::with_capacity(k + 2);
        chain.push(a);
        for _ in 0..k {
            let x = g.vertex(g.level[v] + 1);
            chain.push(x);
            queue.push_back(x);
        }
        chain.push(b);
        for w in chain.windows(2) {
            g.triangle([v, w[0], w[1]]);
            g.succ[w[0]] = w[1];
            g.pred[w[1]] = w[0];
        }
        g.succ[v] = usize::MAX;
        g.pred[v] = usize::MAX;
    }

    let mut b = TriangulationBuilder::new();
    let mut he: BTreeMap<(usize, usize), HalfEdgeId> = BTreeMap::new();
    for tri in &g.triangles {
        let f = b.add_face(Color::Red);
        for i in 0..3 {
            let (p, q) = (tri[i], tri[(i + 1) % 3]);
            let h = b.he(f, i);
            if let Some(&o) = he.get(&(q, p)) {
                b.glue(h, o).ok()?;
            }
            if he.insert((p, q), h).is_some() {
                return None;
            }
        }
    }
    let tri = b.finish().ok()?;
    let mut level = alloc::vec![0; tri.n_vertices()];
    for (fi, t3) in g.triangles.iter().enumerate() {
        for i in 0..3 {
            level[tri.origin(HalfEdgeId::from_idx(3 * fi + i)).idx()] = g.level[t3[i]];
        }
    }
    let colors = two_color(&tri).unwrap_or_else(|| greedy_colors(&tri));
    Some(Patch {
        tri: tri.recolored(colors),
        level,
    })
}

fn greedy_colors(t: &Triangulation) -> Vec<Color> {
    let mut color: Vec<Option<Color>> = alloc::vec![None; t.n_faces()];
    for start in t.faces() {
        if color[start.idx()].is_some() {
            continue;
        }
        color[start.idx()] = Some(Color::Red);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let c = color[f.idx()].unwrap();
            for h in t.face_half_edges(f) {
                if let Some(g) = t.face(t.twin(h)) {
                    if color[g.idx()].is_none() {
                        color[g.idx()] = Some(c.flip());
                        queue.push_back(g);
                    }
                }
            }
        }
    }
    color.into_iter().map(Option::unwrap).collect()
}
