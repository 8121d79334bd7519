use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
mod common;

use common::fixtures::{anchor_all, annulus, disk};
use tutte_core::boundary::*;
use tutte_core::gen::{random_drawing, random_walk, shortest_path};
use tutte_core::harmonizer::{self, is_locally_stable, Config};
use tutte_core::surface::*;
use tutte_core::{Drawing, Graph};

fn boundary_vertices(t: &Triangulation) -> Vec<VertexId> {
    t.vertices().filter(|&v| t.is_boundary_vertex(v)).collect()
}

/// A path from one boundary vertex to another through an interior vertex,
/// with detours so that there is something to harmonize.
fn anchored_path(t: &Triangulation, seed: u64) -> (Drawing, Anchor) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bd = boundary_vertices(t);
    let (x, y) = (bd[0], bd[bd.len() / 2]);
    let mid = t.vertices().find(|&v| !t.is_boundary_vertex(v)).unwrap();
    let leg = |rng: &mut ChaCha8Rng, a: VertexId, b: VertexId| {
        let mut w = random_walk(t, rng, a, 4);
        let end = w.last().map_or(a, |&h| t.head(h));
        w.extend(shortest_path(t, end, b).unwrap());
        w
    };
    let e0 = leg(&mut rng, x, mid);
    let e1 = leg(&mut rng, mid, y);
    let f = Drawing::new(Graph::new(3, vec![(0, 1), (1, 2)]), vec![x, mid, y], vec![e0, e1]);
    let mut a = Anchor::new();
    a.push(x, 0);
    a.push(y, 2);
    (f, a)
}

#[test]
fn empty_anchor_leaves_the_host_graph_alone() {
    let t = disk(1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_drawing(&t, &mut rng, 6, 4);
    let s = build_star_extension(&t, &f, &Anchor::new()).unwrap();
    assert!(s.stems.is_empty());
    assert_eq!(s.n_vertices(), t.n_vertices());
    assert_eq!(s.graph, f.graph);
    for v in t.vertices() {
        let mut got: Vec<_> = s.rotation[v.idx()].clone();
        let mut want: Vec<_> = t.star(v).into_iter().map(StarHalfEdge::Host).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }
}

#[test]
fn stems_sit_between_the_boundary_edges_in_anchor_order() {
    let t = disk(2);
    let x = boundary_vertices(&t)[0];
    let f = Drawing::new(Graph::new(3, vec![(0, 2), (1, 2)]), vec![x, x, x], vec![vec![], vec![]]);
    let mut a = Anchor::new();
    a.push(x, 1);
    a.push(x, 0);
    let s = build_star_extension(&t, &f, &a).unwrap();
    assert_eq!(s.stems.len(), 2);
    let corner = corners(&t).unwrap()[&x];
    let rot = &s.rotation[x.idx()];
    let d = rot.len();
    let at = rot.iter().position(|&h| h == StarHalfEdge::Host(corner.inner)).unwrap();
    let seq: Vec<_> = (0..4).map(|i| rot[(at + i) % d]).collect();
    assert_eq!(seq, vec![StarHalfEdge::Host(corner.inner), StarHalfEdge::StemOut(0), StarHalfEdge::StemOut(1), StarHalfEdge::Host(corner.outer)]);
    assert_eq!(s.stems[0].vertex, 1);
    assert_eq!(s.stems[1].vertex, 0);
    // the gap of the corner is the outer side of the host
    assert!(t.is_outer(t.twin(corner.inner)));
    assert_eq!(t.rot_cw(corner.inner), corner.outer);
    for (i, stem) in s.stems.iter().enumerate() {
        let e = 2 + i;
        assert_eq!(s.graph.edges[e], (stem.vertex, 3 + i));
        assert_eq!(s.edge_map[e], vec![StarHalfEdge::StemOut(i)]);
        assert_eq!(s.head(&t, StarHalfEdge::StemOut(i)), t.n_vertices() + i);
    }
}

#[test]
fn anchors_are_checked() {
    let t = disk(3);
    let x = boundary_vertices(&t)[0];
    let inner = t.vertices().find(|&v| !t.is_boundary_vertex(v)).unwrap();
    let f = Drawing::new(Graph::new(2, vec![(0, 1)]), vec![x, inner], vec![shortest_path(&t, x, inner).unwrap()]);
    let mut a = Anchor::new();
    a.push(inner, 1);
    assert_eq!(build_star_extension(&t, &f, &a).unwrap_err(), BoundaryError::NotOnBoundary(inner));
    let mut a = Anchor::new();
    a.push(boundary_vertices(&t)[1], 0);
    assert!(matches!(build_star_extension(&t, &f, &a), Err(BoundaryError::Misplaced { vertex: 0, .. })));
    let mut a = Anchor::new();
    a.push(x, 0);
    a.push(x, 0);
    assert_eq!(build_star_extension(&t, &f, &a).unwrap_err(), BoundaryError::Duplicate(0));
    let torus = build_torus();
    let g = Drawing::new(Graph::new(1, vec![]), vec![VertexId(0)], vec![]);
    assert_eq!(build_star_extension(&torus, &g, &Anchor::new()).unwrap_err(), BoundaryError::ClosedHost);
    assert_eq!(extend_for_harmonization(&torus, &g, &Anchor::new()).unwrap_err(), BoundaryError::ClosedHost);
}

#[test]
fn crowns_give_every_anchored_vertex_room() {
    let t = disk(4);
    let bd = boundary_vertices(&t);
    let x = bd[0];
    let f = Drawing::new(Graph::new(4, vec![]), vec![x, x, x, bd[1]], vec![]);
    let mut a = Anchor::new();
    for v in 0..3 {
        a.push(x, v);
    }
    a.push(bd[1], 3);
    let ext = extend_for_harmonization(&t, &f, &a).unwrap();
    let t0 = &ext.crowned.tri;
    assert!(t0.is_boundary_vertex(t0.head(ext.crowned.fans[&x][0])));
    for &v in &bd {
        let v0 = t0.origin(ext.crowned.he[t.vertex_half_edge(v).idx()]);
        assert!(!t0.is_boundary_vertex(v0));
        // edges at v added by the crown
        let added = t0.degree(v0) - t.degree(v);
        assert_eq!(added, ext.crowned.fans[&v].len());
        assert!(added >= a.at(v).len() + 6);
        assert!(added >= fan_size(a.at(v).len()));
    }
    assert!(ext.crowned.fans[&bd[1]].len() >= 7);
    assert!(validate_reducing(t0).ok);
    assert_eq!(ext.guards.len(), 2 * 2 * 2 * 6);
    for e in ext.stem_edges() {
        assert_eq!(ext.drawing.edge_map[e].len(), 1);
        assert!(!ext.guards.contains(&ext.drawing.edge_map[e][0]));
    }
}

#[test]
fn closed_host_is_reducing_and_has_the_expected_genus() {
    for seed in 0..4 {
        let t = disk(seed);
        let (f, a) = anchored_path(&t, seed);
        let ext = extend_for_harmonization(&t, &f, &a).unwrap();
        let tb = ext.host();
        assert!(tb.is_closed());
        assert!(validate_reducing(tb).ok);
        // doubling along circles keeps χ; each seam edge is cut open and
        // receives a gadget of genus three with one boundary component
        let t0 = &ext.crowned.tri;
        let seams = t0.n_boundary_edges() as i64;
        assert_eq!(tb.euler_characteristic(), 2 * t0.euler_characteristic() - 6 * seams);
        assert!(ext.drawing.check(tb).is_ok());
    }
}

#[test]
fn mirror_half_is_the_mirror_image() {
    let t = disk(5);
    let (f, a) = anchored_path(&t, 5);
    let ext = extend_for_harmonization(&t, &f, &a).unwrap();
    let tb = ext.host();
    let (n, m) = (ext.n_vertices, ext.n_edges);
    for v in 0..n {
        let x = f.vertex_map[v];
        assert_eq!(ext.drawing.vertex_map[n + v], tb.origin(ext.mirror_he[t.vertex_half_edge(x).idx()]));
    }
    for e in 0..m {
        let w: Vec<_> = f.edge_map[e].iter().map(|h| ext.mirror_he[h.idx()]).collect();
        assert_eq!(ext.drawing.edge_map[m + e], w);
        assert_eq!(ext.drawing.graph.edges[m + e], (f.graph.edges[e].0 + n, f.graph.edges[e].1 + n));
    }
    for h in t.half_edges().filter(|&h| !t.is_outer(h)) {
        let c = t.left_color(h).unwrap();
        assert_eq!(tb.left_color(ext.copy_he[h.idx()]), Some(c));
        assert_eq!(tb.left_color(tb.twin(ext.mirror_he[h.idx()])), Some(c.flip()));
    }
    // tips are shared by both halves
    let k = 2 * ext.stems.len();
    for i in 0..k {
        let copy = ext.drawing.graph.edges[2 * m + i];
        let mirror = ext.drawing.graph.edges[2 * m + k + i];
        assert_eq!(copy.1, mirror.1);
        assert_eq!(copy.0 + n, mirror.0);
    }
}

#[test]
fn anchored_path_harmonizes_with_fixed_ends() {
    for seed in 0..4 {
        let t = disk(seed);
        let (f, a) = anchored_path(&t, seed);
        let out = harmonize_rel_anchor(&t, &f, &a, Config::default()).unwrap();
        let g = &out.drawing;
        assert!(g.check(&t).is_ok());
        assert_eq!(g.vertex_map[0], f.vertex_map[0]);
        assert_eq!(g.vertex_map[2], f.vertex_map[2]);
        for e in 0..2 {
            assert!(g.edge_map[e].len() <= f.edge_map[e].len());
        }
        assert!(is_locally_stable(out.extension.host(), &out.closed).unwrap());
        // harmonize_rel_anchor replays the trace against the guards
        assert_eq!(out.extension.stem_edges().len(), 8);
        assert!(!out.trace.is_empty());
    }
}

#[test]
fn empty_anchor_is_plain_doubling() {
    let t = disk(6);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let f = random_drawing(&t, &mut rng, 5, 6);
    let out = harmonize_rel_anchor(&t, &f, &Anchor::new(), Config::default()).unwrap();
    let ext = extend_for_harmonization(&t, &f, &Anchor::new()).unwrap();
    assert_eq!(ext.drawing.graph.n_vertices, 2 * f.graph.n_vertices);
    let plain = harmonizer::harmonize(ext.host(), &ext.drawing, Config::default()).unwrap();
    let back = ext.original_half_edges();
    for e in 0..f.graph.edges.len() {
        let w: Vec<_> = plain.drawing.edge_map[e].iter().map(|h| back[h]).collect();
        assert_eq!(out.drawing.edge_map[e], w);
    }
}

#[test]
fn single_anchor_on_a_tree_stays_put() {
    // with one stem per anchored vertex the closed extension of this tree
    // would be a tree, free to slide off the host
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let t = disk_patch(&mut rng, 2, &[6, 8], None).unwrap().tri;
    let f = random_drawing(&t, &mut rng, 4, 6);
    let a = anchor_all(&t, &f, &mut rng);
    assert_eq!(a.len(), 1);
    let v = a.vertices().next().unwrap();
    let out = harmonize_rel_anchor(&t, &f, &a, Config::default()).unwrap();
    assert_eq!(out.drawing.vertex_map[v], f.vertex_map[v]);
    // everything is pulled onto the anchored vertex
    assert!(out.drawing.edge_map.iter().all(Vec::is_empty));
    assert!(out.drawing.vertex_map.iter().all(|&x| x == f.vertex_map[v]));
}

#[test]
fn anchors_at_one_vertex_joined_by_a_point_edge_stay_put() {
    let t = disk(3);
    let x = boundary_vertices(&t)[0];
    let f = Drawing::new(Graph::new(2, vec![(0, 1)]), vec![x, x], vec![vec![]]);
    let mut a = Anchor::new();
    a.push(x, 1);
    a.push(x, 0);
    let out = harmonize_rel_anchor(&t, &f, &a, Config::default()).unwrap();
    assert_eq!(out.drawing, f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn guards_hold_on_random_anchored_drawings(seed in any::<u64>(), edges in 2usize..7, on_disk in any::<bool>()) {
        let t = if on_disk { disk(seed % 5) } else { annulus(seed) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_drawing(&t, &mut rng, edges, 6);
        let a = anchor_all(&t, &f, &mut rng);
        let out = harmonize_rel_anchor(&t, &f, &a, Config::default()).unwrap();
        for v in a.vertices() {
            prop_assert_eq!(out.drawing.vertex_map[v], f.vertex_map[v]);
        }
        for e in 0..f.graph.edges.len() {
            prop_assert!(out.drawing.edge_map[e].len() <= f.edge_map[e].len());
        }
        prop_assert!(out.drawing.check(&t).is_ok());
    }
}
