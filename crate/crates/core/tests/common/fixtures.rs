//! Seeded instances shared by the integration tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tutte_core::boundary::Anchor;
use tutte_core::drawing::{factor_homomorphism, factor_simplicial};
use tutte_core::gen::straight_cycles;
use tutte_core::harmonizer::find_balancing_colored;
use tutte_core::surface::*;
use tutte_core::{Drawing, Graph};

use super::*;

pub fn disk(seed: u64) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    disk_patch(&mut rng, 2, &[6, 8], None).unwrap().tri
}

pub fn annulus(seed: u64) -> Triangulation {
    let c = crown(8 + 2 * (seed as usize % 3)).unwrap();
    if seed.is_multiple_of(2) {
        c
    } else {
        subdivide(&c).unwrap()
    }
}

/// Anchors every vertex drawn on the boundary, in random order.
pub fn anchor_all(t: &Triangulation, f: &Drawing, rng: &mut ChaCha8Rng) -> Anchor {
    let mut on: Vec<usize> = (0..f.graph.n_vertices).filter(|&v| t.is_boundary_vertex(f.vertex_map[v])).collect();
    on.shuffle(rng);
    let mut a = Anchor::new();
    for &v in &on {
        a.push(f.vertex_map[v], v);
    }
    a
}

/// A cycle wound around a short straight closed walk, with random tails
/// and followers hanging off it.
pub fn balancing_fixture(t: &Triangulation, rng: &mut impl Rng) -> Drawing {
    let color = if rng.gen_bool(0.5) { Color::Red } else { Color::Blue };
    let cycles: Vec<_> = straight_cycles(t, color).into_iter().filter(|c| c.len() <= 4).collect();
    let base = &cycles[rng.gen_range(0..cycles.len())];
    let winding = rng.gen_range(1..=2);
    let walk: Vec<HalfEdgeId> = base.iter().copied().cycle().take(base.len() * winding).collect();
    let n = walk.len();
    let mut vm: Vec<VertexId> = walk.iter().map(|&h| t.origin(h)).collect();
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut em: Vec<Vec<HalfEdgeId>> = walk.iter().map(|&h| vec![h]).collect();
    let extra = rng.gen_range(0..=5);
    for _ in 0..extra {
        let u = rng.gen_range(0..vm.len());
        let star = t.star(vm[u]);
        let h = star[rng.gen_range(0..star.len())];
        if rng.gen_bool(0.2) && vm.len() > 1 {
            // an extra edge between existing vertices when the host allows it
            if let Some(v) = (0..vm.len()).find(|&v| v != u && vm[v] == t.head(h)) {
                edges.push((u, v));
                em.push(vec![h]);
                continue;
            }
        }
        vm.push(t.head(h));
        edges.push((u, vm.len() - 1));
        em.push(vec![h]);
    }
    Drawing::new(Graph::new(vm.len(), edges), vm, em)
}

pub fn balancing_check(t: &Triangulation, f: &Drawing) -> (bool, bool) {
    let s = factor_simplicial(t, f).unwrap();
    let hom = factor_homomorphism(t, &s);
    let n = hom.vertex_map.len();
    assert!(n <= 15, "{n} vertices");
    let plain: Vec<_> = hom.edges.iter().map(|&(a, b, h, _)| (a, b, h)).collect();
    let dir = directed_edges(&plain, t);
    let cycles = simple_cycles(n, &dir);
    let mut any = false;
    for color in [Color::Red, Color::Blue] {
        let oracle = cycles.iter().any(|c| {
            let images: Vec<_> = c.iter().map(|&k| dir[k].2).collect();
            straight_color(t, &images) == Some(color) && follow(t, n, &dir, c).balances()
        });
        let found = find_balancing_colored(&hom, t, color);
        assert_eq!(found.is_some(), oracle, "color {color:?}");
        if let Some(b) = found {
            any = true;
            let c: Vec<usize> = b.cycle_edges.iter().map(|&(i, fwd)| 2 * i + usize::from(!fwd)).collect();
            for k in 0..c.len() {
                assert_eq!(dir[c[k]].1, dir[c[(k + 1) % c.len()]].0, "witness is not closed");
            }
            let vertices: std::collections::BTreeSet<_> = c.iter().map(|&k| dir[k].0).collect();
            assert_eq!(vertices.len(), c.len(), "witness is not simple");
            let images: Vec<_> = c.iter().map(|&k| dir[k].2).collect();
            assert_eq!(straight_color(t, &images), Some(color));
            let v = follow(t, n, &dir, &c);
            assert!(v.balances());
            let followers: std::collections::BTreeSet<_> = b.followers.iter().map(|&(x, _)| x).collect();
            assert_eq!(followers, v.followers);
        }
    }
    (any, !cycles.is_empty())
}

