//! Graphs drawn in the 1-skeleton of a triangulation, and their
//! simplicial and homomorphism factorizations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::surface::{HalfEdgeId, Triangulation, VertexId};
use crate::walkcalc::Walk;

/// An abstract graph; loops and parallel edges are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Graph {
        Graph { n_vertices, edges }
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DrawingError {
    #[error("edge {0} has an endpoint out of range")]
    BadEndpoint(usize),
    #[error("vertex map has {0} entries for {1} vertices")]
    VertexCount(usize, usize),
    #[error("edge map has {0} entries for {1} edges")]
    EdgeCount(usize, usize),
    #[error("image of edge {0} does not connect the images of its endpoints")]
    EndpointMismatch(usize),
    #[error("image of edge {0} is not a walk")]
    Broken(usize),
    #[error("vertex {0} is not a host vertex")]
    HostVertex(usize),
}

/// A map sending vertices to host vertices and edges to walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub graph: Graph,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<Vec<HalfEdgeId>>,
}

impl Drawing {
    pub fn new(graph: Graph, vertex_map: Vec<VertexId>, edge_map: Vec<Vec<HalfEdgeId>>) -> Drawing {
        Drawing { graph, vertex_map, edge_map }
    }

    pub fn check(&self, t: &Triangulation) -> Result<(), DrawingError> {
        let g = &self.graph;
        if self.vertex_map.len() != g.n_vertices {
            return Err(DrawingError::VertexCount(self.vertex_map.len(), g.n_vertices));
        }
        if self.edge_map.len() != g.edges.len() {
            return Err(DrawingError::EdgeCount(self.edge_map.len(), g.edges.len()));
        }
        for (v, x) in self.vertex_map.iter().enumerate() {
            if x.idx() >= t.n_vertices() {
                return Err(DrawingError::HostVertex(v));
            }
        }
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            if a >= g.n_vertices || b >= g.n_vertices {
                return Err(DrawingError::BadEndpoint(i));
            }
            let walk = &self.edge_map[i];
            if walk.iter().any(|h| h.idx() >= t.n_half_edges()) {
                return Err(DrawingError::Broken(i));
            }
            let w = Walk::open(self.vertex_map[a], walk.clone());
            if w.check(t).is_err() {
                return Err(if walk.first().is_some_and(|&h| t.origin(h) != w.start) {
                    DrawingError::EndpointMismatch(i)
                } else {
                    DrawingError::Broken(i)
                });
            }
            if w.end(t) != self.vertex_map[b] {
                return Err(DrawingError::EndpointMismatch(i));
            }
        }
        Ok(())
    }

    pub fn edge_walk(&self, e: usize) -> Walk {
        Walk::open(self.vertex_map[self.graph.edges[e].0], self.edge_map[e].clone())
    }
}

/// Per-edge image lengths and their sum.
pub fn lengths(f: &Drawing) -> (Vec<usize>, usize) {
    let per: Vec<usize> = f.edge_map.iter().map(Vec::len).collect();
    let total = per.iter().sum();
    (per, total)
}

/// Image of an edge of a simplicial map, read from its first to its second
/// endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeImage {
    Point(VertexId),
    Edge(HalfEdgeId),
}

impl EdgeImage {
    pub fn reversed(self, t: &Triangulation) -> EdgeImage {
        match self {
            EdgeImage::Point(x) => EdgeImage::Point(x),
            EdgeImage::Edge(h) => EdgeImage::Edge(t.twin(h)),
        }
    }

    pub fn len(self) -> usize {
        match self {
            EdgeImage::Point(_) => 0,
            EdgeImage::Edge(_) => 1,
        }
    }

    pub fn is_point(self) -> bool {
        matches!(self, EdgeImage::Point(_))
    }
}

/// Where a vertex of the subdivided graph comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Original(usize),
    /// `index`-th interior vertex (starting at 1) of the subdivided edge.
    Subdivision { edge: usize, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplicialEdge {
    pub ends: (usize, usize),
    pub image: EdgeImage,
    pub edge: usize,
    pub index: usize,
}

/// The subdivided graph `Ḡ` with a map sending every edge to a vertex or
/// an edge of the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplicial {
    pub graph: Graph,
    pub provenance: Vec<Provenance>,
    pub vertex_map: Vec<VertexId>,
    pub edges: Vec<SimplicialEdge>,
    /// Subdivided path of each original edge, as indices into `edges`.
    pub paths: Vec<Vec<usize>>,
}

pub fn factor_simplicial(t: &Triangulation, f: &Drawing) -> Result<Simplicial, DrawingError> {
    f.check(t)?;
    let mut provenance: Vec<Provenance> = (0..f.graph.n_vertices).map(Provenance::Original).collect();
    let mut vertex_map = f.vertex_map.clone();
    let mut edges = Vec::new();
    let mut paths = Vec::with_capacity(f.graph.edges.len());
    for (e, &(a, b)) in f.graph.edges.iter().enumerate() {
        let walk = &f.edge_map[e];
        let mut path = Vec::new();
        if walk.is_empty() {
            path.push(edges.len());
            edges.push(SimplicialEdge {
                ends: (a, b),
                image: EdgeImage::Point(f.vertex_map[a]),
                edge: e,
                index: 0,
            });
        } else {
            let mut prev = a;
            for (i, &h) in walk.iter().enumerate() {
                let next = if i + 1 == walk.len() {
                    b
                } else {
                    provenance.push(Provenance::Subdivision { edge: e, index: i + 1 });
                    vertex_map.push(t.head(h));
                    vertex_map.len() - 1
                };
                path.push(edges.len());
                edges.push(SimplicialEdge {
                    ends: (prev, next),
                    image: EdgeImage::Edge(h),
                    edge: e,
                    index: i,
                });
                prev = next;
            }
        }
        paths.push(path);
    }
    let graph = Graph::new(vertex_map.len(), edges.iter().map(|s| s.ends).collect());
    Ok(Simplicial { graph, provenance, vertex_map, edges, paths })
}

impl Simplicial {
    /// Reassembles the drawing of the original graph.
    pub fn to_drawing(&self, original: &Graph) -> Drawing {
        let n = original.n_vertices;
        let edge_map = self
            .paths
            .iter()
            .map(|p| {
                p.iter()
                    .filter_map(|&i| match self.edges[i].image {
                        EdgeImage::Edge(h) => Some(h),
                        EdgeImage::Point(_) => None,
                    })
                    .collect()
            })
            .collect();
        Drawing::new(original.clone(), self.vertex_map[..n].to_vec(), edge_map)
    }

    /// Length of the image of each original edge.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths
            .iter()
            .map(|p| p.iter().map(|&i| self.edges[i].image.len()).sum())
            .collect()
    }

    /// Image of edge `i` read away from its endpoint `v`.
    pub fn image_from(&self, t: &Triangulation, i: usize, v: usize) -> EdgeImage {
        let e = &self.edges[i];
        if e.ends.0 == v {
            e.image
        } else {
            e.image.reversed(t)
        }
    }

    /// Incident (edge, other endpoint) pairs of every vertex; loops appear twice.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = alloc::vec![Vec::new(); self.vertex_map.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.ends.0].push((i, e.ends.1));
            inc[e.ends.1].push((i, e.ends.0));
        }
        inc
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Clusters of a simplicial map with their spur status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPartition {
    /// Cluster index of every vertex.
    pub cluster_of: Vec<usize>,
    /// Members of every cluster, ascending; clusters are sorted by smallest member.
    pub members: Vec<Vec<usize>>,
    /// For spurs, the common outgoing directed host edge.
    pub spur: Vec<Option<HalfEdgeId>>,
}

impl ClusterPartition {
    pub fn n_clusters(&self) -> usize {
        self.members.len()
    }

    pub fn is_spur(&self, c: usize) -> bool {
        self.spur[c].is_some()
    }
}

pub fn clusters_and_spurs(t: &Triangulation, s: &Simplicial) -> ClusterPartition {
    let n = s.vertex_map.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut comp: Vec<usize> = (0..n).collect();
    for e in &s.edges {
        let (a, b) = e.ends;
        let (x, y) = (find(&mut comp, a), find(&mut comp, b));
        comp[x.max(y)] = x.min(y);
        if e.image.is_point() {
            let (x, y) = (find(&mut parent, a), find(&mut parent, b));
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut index = alloc::vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut cluster_of = alloc::vec![0; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = members.len();
            members.push(Vec::new());
        }
        cluster_of[v] = index[r];
        members[index[r]].push(v);
    }
    let mut outgoing: Vec<BTreeSet<HalfEdgeId>> = alloc::vec![BTreeSet::new(); members.len()];
    for (i, e) in s.edges.iter().enumerate() {
        if let EdgeImage::Edge(_) = e.image {
            let (a, b) = e.ends;
            if let EdgeImage::Edge(h) = s.image_from(t, i, a) {
                outgoing[cluster_of[a]].insert(h);
            }
            if let EdgeImage::Edge(h) = s.image_from(t, i, b) {
                outgoing[cluster_of[b]].insert(h);
            }
        }
    }
    let mut comp_size = alloc::vec![0usize; n];
    for v in 0..n {
        comp_size[find(&mut comp, v)] += 1;
    }
    let spur = (0..members.len())
        .map(|c| {
            let root = find(&mut comp, members[c][0]);
            let whole_component = comp_size[root] == members[c].len();
            if whole_component || outgoing[c].len() != 1 {
                None
            } else {
                outgoing[c].first().copied()
            }
        })
        .collect();
    ClusterPartition { cluster_of, members, spur }
}

/// The contracted graph `Ĝ`, in which every edge maps to a host edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub clusters: ClusterPartition,
    pub vertex_map: Vec<VertexId>,
    /// (tail cluster, head cluster, image from tail to head, index in `Ḡ`)
    pub edges: Vec<(usize, usize, HalfEdgeId, usize)>,
}

pub fn factor_homomorphism(t: &Triangulation, s: &Simplicial) -> Homomorphism {
    let clusters = clusters_and_spurs(t, s);
    let vertex_map = clusters.members.iter().map(|m| s.vertex_map[m[0]]).collect();
    let edges = s
        .edges
        .iter()
        .enumerate()
        .filter_map(|(i, e)| match e.image {
            EdgeImage::Edge(h) => Some((clusters.cluster_of[e.ends.0], clusters.cluster_of[e.ends.1], h, i)),
            EdgeImage::Point(_) => None,
        })
        .collect();
    Homomorphism { clusters, vertex_map, edges }
}
