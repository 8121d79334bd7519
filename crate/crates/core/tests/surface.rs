use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tutte_core::surface::*;

fn counts(t: &Triangulation) -> (usize, usize, usize) {
    (t.n_vertices(), t.n_edges(), t.n_faces())
}

#[test]
fn torus_is_reducing_with_one_vertex() {
    let t = build_torus();
    assert_eq!(counts(&t), (1, 3, 2));
    assert_eq!(t.euler_characteristic(), 0);
    assert_eq!(t.genus(), 1);
    assert_eq!(t.degree(VertexId(0)), 6);
    assert!(validate_reducing(&t).ok);
    let colors: Vec<_> = t.faces().map(|f| t.color(f)).collect();
    assert_eq!(colors, vec![Color::Red, Color::Blue]);
    let star: Vec<u32> = t.star_from(HalfEdgeId(0)).iter().map(|h| h.0).collect();
    assert_eq!(star, vec![0, 3, 5, 1, 2, 4]);
}

#[test]
fn subdivided_torus() {
    let t = subdivide(&build_torus()).unwrap();
    assert_eq!(counts(&t), (4, 12, 8));
    assert!(validate_reducing(&t).ok);
    for v in t.vertices() {
        assert_eq!(t.degree(v), 6);
    }
}

#[test]
fn subdivide_rejects_non_reducing_input() {
    let t = crown(3).unwrap();
    assert!(matches!(subdivide(&t), Err(SurfaceError::NotReducing(_))));
}

#[test]
fn crowns() {
    let c4 = crown(4).unwrap();
    assert_eq!(counts(&c4), (4, 8, 4));
    assert!(validate_reducing(&c4).ok);
    assert_eq!(c4.boundary_cycles().len(), 2);
    assert_eq!(c4.euler_characteristic(), 0);

    let c2 = crown(2).unwrap();
    assert_eq!(counts(&c2), (2, 4, 2));
    let shared = c2
        .half_edges()
        .filter(|&h| !c2.is_outer(h) && !c2.is_outer(c2.twin(h)))
        .count();
    assert_eq!(shared, 4, "two triangles share two sides");

    for k in [3, 5, 7] {
        let r = validate_reducing(&crown(k).unwrap());
        assert_eq!(r.kinds(), vec![ViolationKind::DualNotBipartite], "crown({k})");
    }
    assert_eq!(crown(1), Err(SurfaceError::CrownTooSmall(1)));
}

#[test]
fn gadgets() {
    let one = build_one_gadget();
    assert!(validate_reducing(&one.tri).ok);
    assert_eq!(one.tri.n_boundary_edges(), 2);
    assert_eq!(one.tri.boundary_cycles().len(), 1);
    assert_eq!(one.tri.genus(), 1);
    assert_eq!(one.tri.left_color(one.red_edge), Some(Color::Red));
    assert_eq!(one.tri.left_color(one.blue_edge), Some(Color::Blue));
    assert!(one.tri.is_boundary_edge(one.red_edge) && one.tri.is_boundary_edge(one.blue_edge));

    let three = build_three_gadget();
    assert!(validate_reducing(&three.tri).ok);
    assert_eq!(three.tri.genus(), 3);
    assert_eq!(three.tri.euler_characteristic(), -5);
    assert_eq!(three.tri.n_boundary_edges(), 2);
    assert_eq!(three.tri.left_color(three.red_edge), Some(Color::Red));
    assert_eq!(three.tri.left_color(three.blue_edge), Some(Color::Blue));
}

#[test]
fn doubled_crown() {
    let c = crown(4).unwrap();
    let d = double_with_gadgets(&c).unwrap();
    let t = &d.tri;
    assert!(t.is_closed());
    assert!(validate_reducing(t).ok);
    assert_eq!(counts(t), (28, 156, 104));
    assert_eq!(t.euler_characteristic(), 2 * c.euler_characteristic() - 6 * 4);
    assert_eq!(t.genus(), 13);
    // directed edges of the copy and of the mirror keep their endpoints
    for h in c.half_edges() {
        let (x, y) = (d.copy_he[h.idx()], d.mirror_he[h.idx()]);
        assert_eq!(t.origin(x), d.copy_vertex(&c, c.origin(h)));
        assert_eq!(t.head(x), d.copy_vertex(&c, c.head(h)));
        assert_eq!(t.origin(y), d.mirror_vertex(&c, c.origin(h)));
        assert_eq!(t.head(y), d.mirror_vertex(&c, c.head(h)));
        if let Some(col) = c.left_color(h) {
            assert_eq!(t.left_color(x), Some(col));
            assert_eq!(t.left_color(t.twin(y)), Some(col.flip()));
        }
    }
    assert!(matches!(double_with_gadgets(&build_torus()), Err(SurfaceError::ClosedInput)));
}

#[test]
fn doubled_subdivided_crown() {
    let c = subdivide(&crown(4).unwrap()).unwrap();
    let d = double_with_gadgets(&c).unwrap();
    assert!(validate_reducing(&d.tri).ok);
    let b = c.n_boundary_edges() as i64;
    assert_eq!(d.tri.euler_characteristic(), 2 * c.euler_characteristic() - 6 * b);
}

#[test]
fn disk_patches() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = disk_patch(&mut rng, 2, &[6, 8], None).unwrap();
    assert_eq!(p.tri.euler_characteristic(), 1);
    assert_eq!(p.tri.boundary_cycles().len(), 1);
    assert!(validate_reducing(&p.tri).ok);

    let bad = disk_patch(&mut rng, 1, &[6], Some(5)).unwrap();
    let r = validate_reducing(&bad.tri);
    assert!(r.has(ViolationKind::DegreeTooLow));
}

#[test]
fn raw_round_trip_and_structural_errors() {
    let t = double_with_gadgets(&crown(4).unwrap()).unwrap().tri;
    let raw = t.raw();
    assert_eq!(Triangulation::from_raw(&raw).unwrap(), t);

    let mut broken = build_torus().raw();
    broken.next[0] = 99;
    assert_eq!(validate_raw(&broken), Err(StructuralError::IndexOutOfRange(0)));

    let mut twinless = build_torus().raw();
    twinless.twin[2] = None;
    let r = validate_raw(&twinless).unwrap();
    assert!(r.has(ViolationKind::TwinBroken));
    assert!(!r.ok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn patch_invariants(seed in any::<u64>(), radius in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = disk_patch(&mut rng, radius, &[6, 8], None).unwrap();
        let t = &p.tri;
        prop_assert!(validate_reducing(t).ok);
        prop_assert_eq!(t.euler_characteristic(), 1);
        let degree_sum: usize = t.vertices().map(|v| t.degree(v)).sum();
        prop_assert_eq!(degree_sum, t.n_half_edges());
        for v in t.vertices() {
            for h in t.star(v) {
                prop_assert_eq!(t.origin(h), v);
                prop_assert_eq!(t.rot_ccw(t.rot_cw(h)), h);
            }
        }
        let s = subdivide(t).unwrap();
        prop_assert!(validate_reducing(&s).ok);
        prop_assert_eq!(s.n_vertices(), t.n_vertices() + t.n_edges());
        prop_assert_eq!(s.euler_characteristic(), t.euler_characteristic());
        prop_assert_eq!(s.genus(), t.genus());
    }

    #[test]
    fn even_crowns_are_reducing_annuli(half in 1usize..12) {
        let t = crown(2 * half).unwrap();
        prop_assert!(validate_reducing(&t).ok);
        prop_assert_eq!(t.euler_characteristic(), 0);
        prop_assert_eq!(t.boundary_cycles().len(), 2);
        prop_assert_eq!(Triangulation::from_raw(&t.raw()).unwrap(), t);
    }
}

#[test]
fn degree_six_closed_surfaces_are_tori() {
    let mut t = build_torus();
    for _ in 0..2 {
        t = subdivide(&t).unwrap();
        assert!(t.vertices().all(|v| t.degree(v) == 6));
        assert_eq!(t.euler_characteristic(), 0);
    }
}
