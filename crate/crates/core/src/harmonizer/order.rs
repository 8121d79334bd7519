use alloc::vec::Vec;

use crate::drawing::Homomorphism;
use crate::surface::{Color, Triangulation};

/// The contracted graph with every edge directed so that its image has a
/// blue triangle on its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftBlueDigraph {
    pub n_vertices: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl LeftBlueDigraph {
    pub fn sources(&self) -> Vec<usize> {
        let mut indeg = alloc::vec![0usize; self.n_vertices];
        for &(_, b) in &self.arcs {
            indeg[b] += 1;
        }
        (0..self.n_vertices).filter(|&v| indeg[v] == 0).collect()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arcs.iter().all(|&(_, b)| b != v)
    }
}

pub fn left_blue_direction(hom: &Homomorphism, t: &Triangulation) -> LeftBlueDigraph {
    let arcs = hom
        .edges
        .iter()
        .map(|&(a, b, h, _)| if t.left_color(h) == Some(Color::Blue) { (a, b) } else { (b, a) })
        .collect();
    LeftBlueDigraph { n_vertices: hom.vertex_map.len(), arcs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("the digraph has a directed cycle")]
    Cyclic,
    #[error("the digraph has {0} sources")]
    Sources(usize),
}

/// Layered topological order: the source, then the sources of what remains,
/// and so on, each layer in ascending order.
pub fn proper_monotonic_ordering(d: &LeftBlueDigraph) -> Result<Vec<usize>, OrderError> {
    let n = d.n_vertices;
    let mut indeg = alloc::vec![0usize; n];
    let mut out = alloc::vec![Vec::new(); n];
    for &(a, b) in &d.arcs {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut layer: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    if layer.len() != 1 && n > 0 {
        return Err(if layer.is_empty() { OrderError::Cyclic } else { OrderError::Sources(layer.len()) });
    }
    let mut order = Vec::with_capacity(n);
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    next.push(w);
                }
            }
        }
        order.extend_from_slice(&layer);
        next.sort_unstable();
        layer = next;
    }
    if order.len() != n {
        return Err(OrderError::Cyclic);
    }
    Ok(order)
}

fn ranks(order: &[usize], n: usize) -> Option<Vec<usize>> {
    let mut rank = alloc::vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return None;
        }
        rank[v] = i;
    }
    rank.iter().all(|&r| r != usize::MAX).then_some(rank)
}

/// Every arc points from a lower to a higher position.
pub fn is_monotonic(order: &[usize], d: &LeftBlueDigraph) -> bool {
    ranks(order, d.n_vertices).is_some_and(|r| d.arcs.iter().all(|&(a, b)| r[a] < r[b]))
}

/// Every vertex but the first has a lower neighbour, and the lowpoints
/// (vertices whose neighbours other than the first are all higher) form a
/// prefix of the order.
pub fn is_proper(order: &[usize], n: usize, edges: &[(usize, usize)]) -> bool {
    let Some(r) = ranks(order, n) else { return false };
    let mut has_lower = alloc::vec![false; n];
    let mut lowpoint = alloc::vec![true; n];
    let first = order.first().copied();
    for &(a, b) in edges {
        for (x, y) in [(a, b), (b, a)] {
            if r[y] < r[x] {
                has_lower[x] = true;
                if Some(y) != first {
                    lowpoint[x] = false;
                }
            }
            if x == y && Some(x) != first {
                lowpoint[x] = false;
            }
        }
    }
    let lower_ok = order.iter().skip(1).all(|&v| has_lower[v]);
    let lows: Vec<bool> = order.iter().map(|&v| lowpoint[v]).collect();
    let prefix = lows.iter().take_while(|&&l| l).count();
    lower_ok && lows[prefix..].iter().all(|&l| !l)
}
