mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tutte_core::cover::*;
use tutte_core::drawing::factor_simplicial;
use tutte_core::gen::random_walk;
use tutte_core::surface::*;
use tutte_core::walkcalc::*;
use tutte_core::{Drawing, Graph};

fn doubled() -> Triangulation {
    double_with_gadgets(&crown(4).unwrap()).unwrap().tri
}

fn red_left(t: &Triangulation, v: VertexId) -> HalfEdgeId {
    t.star(v).into_iter().find(|&h| t.left_color(h) == Some(Color::Red)).unwrap()
}

#[test]
fn chart_requires_a_closed_reducing_base() {
    let c = crown(4).unwrap();
    assert_eq!(CoverChart::new(&c, VertexId(0)).unwrap_err(), CoverError::NotClosed);
    let t = build_torus();
    assert!(CoverChart::new(&t, VertexId(0)).is_ok());
}

#[test]
fn torus_chart_is_a_flat_disk() {
    let t = build_torus();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    chart.expand(2).unwrap();
    let piece = chart.to_triangulation().unwrap();
    let tri = &piece.tri;
    assert_eq!(tri.euler_characteristic(), 1);
    assert_eq!(tri.boundary_cycles().len(), 1);
    let mut complete = 0;
    for v in tri.vertices() {
        if chart.is_complete(piece.chart_vertex[v.idx()]) {
            complete += 1;
            assert!(!tri.is_boundary_vertex(v));
            assert_eq!(tri.degree(v), 6);
        }
    }
    // hexagonal ball of radius 1 plus its first ring
    assert_eq!(complete, 1 + 6 + 12);
}

#[test]
fn radius_zero_is_the_star_of_the_basepoint() {
    let t = doubled();
    let v = VertexId(3);
    let mut chart = CoverChart::new(&t, v).unwrap();
    chart.expand(0).unwrap();
    assert!(chart.is_complete(0));
    assert_eq!(chart.n_vertices(), 1 + t.degree(v));
    let piece = chart.to_triangulation().unwrap();
    assert_eq!(piece.tri.n_faces(), t.degree(v));
}

#[test]
fn expanding_twice_changes_nothing() {
    let t = doubled();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    chart.expand(2).unwrap();
    let n = chart.n_vertices();
    chart.expand(2).unwrap();
    assert_eq!(chart.n_vertices(), n);
}

#[test]
fn projection_commutes_with_the_map() {
    let t = doubled();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    chart.expand(2).unwrap();
    let piece = chart.to_triangulation().unwrap();
    let tri = &piece.tri;
    assert_eq!(tri.euler_characteristic(), 1);
    for a in tri.half_edges() {
        let Some(p) = piece.projection[a.idx()] else { continue };
        assert_eq!(piece.projection[tri.next(a).idx()], Some(t.next(p)));
        if let Some(q) = piece.projection[tri.twin(a).idx()] {
            assert_eq!(q, t.twin(p));
        }
        assert_eq!(chart.projection(piece.chart_vertex[tri.origin(a).idx()]), t.origin(p));
    }
}

#[test]
fn spur_and_face_boundaries_lift_to_closed_walks() {
    let t = doubled();
    let v = VertexId(0);
    let mut chart = CoverChart::new(&t, v).unwrap();
    for h in t.star(v) {
        let spur = chart.lift_walk(&Walk::open(v, vec![h, t.twin(h)]), 0).unwrap();
        assert_eq!(*spur.last().unwrap(), 0);
        let face = chart.lift_walk(&Walk::open(v, vec![h, t.next(h), t.prev(h)]), 0).unwrap();
        assert_eq!(*face.last().unwrap(), 0);
        assert_ne!(face[1], face[2]);
    }
    // going around the link of a vertex is contractible
    let w = t.star(v)[0];
    let link = (0..t.degree(v)).map(|i| t.next(t.rot_ccw_n(w, i)));
    let around: Vec<HalfEdgeId> = std::iter::once(w).chain(link).chain([t.twin(w)]).collect();
    assert!(Walk::open(v, around.clone()).check(&t).is_ok());
    assert_eq!(*chart.lift_walk(&Walk::open(v, around), 0).unwrap().last().unwrap(), 0);
}

#[test]
fn torus_generator_does_not_close_up() {
    let (t, w) = torus_straight_loop_parts();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    let lift = chart.lift_walk(&w, 0).unwrap();
    assert_eq!(lift.len(), 4);
    let distinct: std::collections::BTreeSet<_> = lift.iter().collect();
    assert_eq!(distinct.len(), 4);
}

fn torus_straight_loop_parts() -> (Triangulation, Walk) {
    tutte_core::gen::torus_straight_loop()
}

#[test]
fn lift_rejects_a_walk_from_elsewhere() {
    let t = doubled();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    let h = t.star(VertexId(1))[0];
    assert!(matches!(chart.lift_walk(&Walk::open(VertexId(1), vec![h]), 0), Err(CoverError::WrongStart(_))));
}

#[test]
fn torus_lines_are_straight() {
    let t = build_torus();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    let first = red_left(&t, VertexId(0));
    let left = line_window(&mut chart, 0, first, Side::Left, 5).unwrap();
    assert_eq!(left.edges.len(), 10);
    assert_eq!(left.vertices.len(), 11);
    assert_eq!(left.center(), 0);
    // degree six: a three-turn leaves through the opposite slot
    for w in left.edges.windows(2) {
        assert_eq!(w[1], w[0]);
        assert_eq!(oracle_turn(&t, w[0], w[1]), Some((3, Color::Red)));
    }
}

#[test]
fn lines_turn_by_three_and_are_simple() {
    let t = doubled();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    for v in [VertexId(0), VertexId(5), VertexId(9)] {
        let base = *chart.lift_walk(&Walk::open(VertexId(0), tutte_core::gen::shortest_path(&t, VertexId(0), v).unwrap()), 0).unwrap().last().unwrap();
        for first in t.star(v).into_iter().filter(|&h| t.left_color(h) == Some(Color::Red)) {
            for (side, sign) in [(Side::Left, 3), (Side::Right, -3)] {
                let win = line_window(&mut chart, base, first, side, 6).unwrap();
                assert_eq!(win.edges[6], first);
                assert_eq!(win.center(), base);
                for w in win.edges.windows(2) {
                    // at degree six the two three-turns coincide
                    let (s, c) = oracle_turn(&t, w[0], w[1]).unwrap();
                    assert_eq!(c, Color::Red);
                    assert!(s == sign || (s == -sign && t.degree(t.head(w[0])) == 6));
                }
                assert!(oracle_reduced_open(&t, &win.edges));
                assert!(is_reduced(&t, &win.walk(&t)).unwrap());
                let distinct: std::collections::BTreeSet<_> = win.vertices.iter().collect();
                assert_eq!(distinct.len(), win.vertices.len());
                let lifted = chart.lift_walk(&win.walk(&t), win.vertices[0]).unwrap();
                assert_eq!(lifted, win.vertices);
            }
        }
    }
}

#[test]
fn line_needs_red_on_the_left() {
    let t = doubled();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    let blue = t.star(VertexId(0)).into_iter().find(|&h| t.left_color(h) == Some(Color::Blue)).unwrap();
    assert_eq!(line_window(&mut chart, 0, blue, Side::Left, 2).unwrap_err(), CoverError::NotRedLeft(blue));
}

/// Clockwise position of `h` counted from the slot entering along the line.
fn escapes_oracle(t: &Triangulation, side: Side, incoming: HalfEdgeId, forward: HalfEdgeId, h: HalfEdgeId) -> bool {
    let star = t.star(t.origin(h));
    let d = star.len();
    let pos = |x: HalfEdgeId| star.iter().position(|&g| g == x).unwrap();
    let back = pos(t.twin(incoming));
    let k = (pos(h) + d - back) % d;
    let f = (pos(forward) + d - back) % d;
    match side {
        Side::Left => k > f,
        Side::Right => k > 0 && k < f,
    }
}

fn line_edges(t: &Triangulation, first: HalfEdgeId, side: Side, n: usize) -> Vec<HalfEdgeId> {
    let mut out = vec![first];
    while out.len() < n {
        out.push(line_step(t, side, *out.last().unwrap()));
    }
    out
}

#[test]
fn star_leaving_on_the_escape_side_escapes_at_once() {
    let t = doubled();
    let v = VertexId(0);
    let first = red_left(&t, v);
    let back = t.twin(line_step_back(&t, Side::Left, first));
    let star = t.star_from(back);
    for (side, slot) in [(Side::Left, star[4]), (Side::Right, star[1])] {
        let f = Drawing::new(Graph::new(2, vec![(0, 1)]), vec![v, t.head(slot)], vec![vec![slot]]);
        let s = factor_simplicial(&t, &f).unwrap();
        let got = escape_probe(&t, &s, 0, first, side, 4, 4);
        assert_eq!(got, Escape::Escapes(vec![(0, true)]));
        assert!(escapes_oracle(&t, side, line_step_back(&t, side, first), first, slot));
    }
}

#[test]
fn drawing_along_a_line_does_not_escape() {
    let t = doubled();
    let v = VertexId(0);
    let first = red_left(&t, v);
    for side in [Side::Left, Side::Right] {
        let line = line_edges(&t, first, side, 6);
        let mut vertex_map = vec![v];
        vertex_map.extend(line.iter().map(|&h| t.head(h)));
        let edges = (0..6).map(|i| (i, i + 1)).collect();
        let f = Drawing::new(Graph::new(7, edges), vertex_map, line.iter().map(|&h| vec![h]).collect());
        let s = factor_simplicial(&t, &f).unwrap();
        assert_eq!(escape_probe(&t, &s, 0, first, side, 20, 6), Escape::NoWitnessWithinBounds);
    }
}

#[test]
fn escape_after_walking_along_the_line() {
    let t = doubled();
    let v = VertexId(0);
    let first = red_left(&t, v);
    let line = line_edges(&t, first, Side::Left, 3);
    let at = t.head(line[1]);
    let out = t.star(at).into_iter().find(|&h| escapes_oracle(&t, Side::Left, line[1], line[2], h)).unwrap();
    let f = Drawing::new(
        Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]),
        vec![v, t.head(line[0]), at, t.head(out)],
        vec![vec![line[0]], vec![line[1]], vec![out]],
    );
    let s = factor_simplicial(&t, &f).unwrap();
    let Escape::Escapes(w) = escape_probe(&t, &s, 0, first, Side::Left, 6, 6) else { panic!("no witness") };
    let images: Vec<_> = w.iter().map(|&(e, fwd)| {
        let (a, b) = s.edges[e].ends;
        s.image_from(&t, e, if fwd { a } else { b })
    }).collect();
    assert_eq!(images.len(), 3);
    assert_eq!(images[0], tutte_core::drawing::EdgeImage::Edge(line[0]));
    assert_eq!(images[1], tutte_core::drawing::EdgeImage::Edge(line[1]));
    // the same drawing does not escape within too small a window
    assert_eq!(escape_probe(&t, &s, 0, first, Side::Left, 6, 1), Escape::NoWitnessWithinBounds);
    assert_eq!(escape_probe(&t, &s, 0, first, Side::Left, 2, 6), Escape::NoWitnessWithinBounds);
}

#[test]
fn flat_zones_are_unbounded_on_the_torus() {
    let t = build_torus();
    let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
    assert_eq!(flat_zone_size(&mut chart, 9).unwrap(), 9);
}

#[test]
fn flat_zones_are_bounded_on_doubled_surfaces() {
    for k in [4, 6] {
        for t in [double_with_gadgets(&crown(k).unwrap()).unwrap().tri] {
            for t in [t.clone(), subdivide(&t).unwrap()] {
                let cap = 3 * (t.n_edges() + 1);
                let mut chart = CoverChart::new(&t, VertexId(0)).unwrap();
                let size = flat_zone_size(&mut chart, cap).unwrap();
                assert!(size < cap, "size {size} reaches {cap}");
                // a zone of size three has one inner vertex, of degree six
                let six = t.vertices().any(|v| t.degree(v) == 6);
                assert_eq!(size >= 3, six);
                assert!(size >= 2);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lifts_project_back(seed in any::<u64>(), len in 0usize..14) {
        let t = doubled();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = VertexId(0);
        let edges = random_walk(&t, &mut rng, v, len);
        let w = Walk::open(v, edges.clone());
        let mut chart = CoverChart::new(&t, v).unwrap();
        let lift = chart.lift_walk(&w, 0).unwrap();
        prop_assert_eq!(lift.len(), len + 1);
        let verts = w.vertices(&t);
        for (i, &x) in lift.iter().enumerate() {
            prop_assert_eq!(chart.projection(x), verts[i]);
        }
        // homotopic walks end at the same lift
        let r = reduce_open(&t, &w, 100_000).unwrap();
        let rl = chart.lift_walk(&r, 0).unwrap();
        prop_assert_eq!(rl.last(), lift.last());
        // and the reduced walk is the name of the endpoint
        prop_assert_eq!(chart.word(*lift.last().unwrap()), &r.edges[..]);
    }

    #[test]
    fn backtracking_returns_to_the_start(seed in any::<u64>(), len in 1usize..10) {
        let t = doubled();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = VertexId(2);
        let edges = random_walk(&t, &mut rng, v, len);
        let mut back: Vec<_> = edges.iter().rev().map(|&h| t.twin(h)).collect();
        let mut all = edges.clone();
        all.append(&mut back);
        let mut chart = CoverChart::new(&t, v).unwrap();
        let lift = chart.lift_walk(&Walk::open(v, all), 0).unwrap();
        prop_assert_eq!(*lift.last().unwrap(), 0);
        prop_assert_eq!(lift[len - 1], lift[len + 1]);
    }
}
