use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::HarmonizeError;
use crate::drawing::{factor_homomorphism, factor_simplicial, Drawing, EdgeImage, Graph, Homomorphism, Simplicial};
use crate::surface::{HalfEdgeId, Triangulation, VertexId};
use crate::walkcalc::{reduce_open, Walk};

/// The simplicial form of a drawing being harmonized.
///
/// The subdivided graph is fixed once and for all; moves only change where
/// its vertices sit and which host edge (or vertex) each of its edges uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonyState {
    pub graph: Graph,
    pub simplicial: Simplicial,
    version: u64,
}

impl HarmonyState {
    pub fn new(t: &Triangulation, f: &Drawing) -> Result<HarmonyState, HarmonizeError> {
        if !t.is_closed() {
            return Err(HarmonizeError::HostHasBoundary);
        }
        let simplicial = factor_simplicial(t, f)?;
        Ok(HarmonyState { graph: f.graph.clone(), simplicial, version: 0 })
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn drawing(&self) -> Drawing {
        self.simplicial.to_drawing(&self.graph)
    }

    pub fn homomorphism(&self, t: &Triangulation) -> Homomorphism {
        factor_homomorphism(t, &self.simplicial)
    }

    /// Image lengths of the original edges.
    pub fn lengths(&self) -> Vec<usize> {
        self.simplicial.lengths()
    }

    pub fn total_length(&self) -> usize {
        self.lengths().iter().sum()
    }

    /// Position of a vertex of the subdivided graph.
    pub fn position(&self, v: usize) -> VertexId {
        self.simplicial.vertex_map[v]
    }

    /// Images every subdivided edge would get if each cluster in `steps`
    /// (named by any of its members) moved along the given host half-edge.
    pub(crate) fn preview(
        &self,
        t: &Triangulation,
        steps: &[(usize, HalfEdgeId)],
    ) -> Result<Vec<EdgeImage>, HarmonizeError> {
        let hom = self.homomorphism(t);
        let mut by_cluster = BTreeMap::new();
        for &(v, h) in steps {
            let c = hom.clusters.cluster_of[v];
            if t.origin(h) != hom.vertex_map[c] {
                return Err(HarmonizeError::Stale);
            }
            if by_cluster.insert(c, h).is_some() {
                return Err(HarmonizeError::Stale);
            }
        }
        let step_of = |v: usize| by_cluster.get(&hom.clusters.cluster_of[v]).copied();
        self.simplicial
            .edges
            .iter()
            .map(|e| {
                let (s0, s1) = (step_of(e.ends.0), step_of(e.ends.1));
                if s0.is_none() && s1.is_none() {
                    return Ok(e.image);
                }
                let new = retarget(t, e.image, self.position(e.ends.0), s0, s1)?;
                if new.len() > e.image.len() {
                    return Err(HarmonizeError::Lengthens);
                }
                Ok(new)
            })
            .collect()
    }

    /// Moves clusters along host half-edges, installing images computed by
    /// [`HarmonyState::preview`] for the same steps.
    pub(crate) fn commit(&mut self, t: &Triangulation, steps: &[(usize, HalfEdgeId)], images: Vec<EdgeImage>) {
        let hom = self.homomorphism(t);
        for &(v, h) in steps {
            for &u in &hom.clusters.members[hom.clusters.cluster_of[v]] {
                self.simplicial.vertex_map[u] = t.head(h);
            }
        }
        for (e, img) in self.simplicial.edges.iter_mut().zip(images) {
            e.image = img;
        }
        self.version += 1;
    }
}

/// New image of an edge whose ends slide along `s0` and `s1`.
fn retarget(
    t: &Triangulation,
    image: EdgeImage,
    tail: VertexId,
    s0: Option<HalfEdgeId>,
    s1: Option<HalfEdgeId>,
) -> Result<EdgeImage, HarmonizeError> {
    let mut edges = Vec::with_capacity(3);
    let start = match s0 {
        Some(h) => {
            edges.push(t.twin(h));
            t.head(h)
        }
        None => tail,
    };
    if let EdgeImage::Edge(h) = image {
        edges.push(h);
    }
    edges.extend(s1);
    let w = reduce_open(t, &Walk::open(start, edges), 64).map_err(|_| HarmonizeError::Lengthens)?;
    match w.edges.as_slice() {
        [] => Ok(EdgeImage::Point(start)),
        [h] => Ok(EdgeImage::Edge(*h)),
        _ => Err(HarmonizeError::Lengthens),
    }
}
