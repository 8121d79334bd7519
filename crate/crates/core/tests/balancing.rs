mod common;

use common::fixtures::{balancing_check, balancing_fixture};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tutte_core::drawing::{factor_homomorphism, factor_simplicial};
use tutte_core::gen::straight_cycles;
use tutte_core::harmonizer::*;
use tutte_core::surface::*;
use tutte_core::{Drawing, Graph};

#[test]
fn detector_agrees_with_brute_force() {
    let t = double_with_gadgets(&crown(4).unwrap()).unwrap().tri;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut found = 0;
    for _ in 0..50 {
        let f = balancing_fixture(&t, &mut rng);
        found += usize::from(balancing_check(&t, &f).0);
    }
    assert!(found > 0 && found < 50, "found {found} of 50");
}

#[test]
fn leftward_tail_balances_and_rightward_pull_blocks() {
    let t = double_with_gadgets(&crown(4).unwrap()).unwrap().tri;
    let cycle = straight_cycles(&t, Color::Red).into_iter().find(|c| c.len() == 2).unwrap();
    let n = cycle.len();
    let mut vm: Vec<VertexId> = cycle.iter().map(|&h| t.origin(h)).collect();
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut em: Vec<Vec<HalfEdgeId>> = cycle.iter().map(|&h| vec![h]).collect();
    // the corner at vertex 0 is entered through a = twin(cycle[n-1]); a+1 is on the left
    let a = t.twin(cycle[n - 1]);
    let left = t.rot_cw(a);
    vm.push(t.head(left));
    edges.push((0, vm.len() - 1));
    em.push(vec![left]);
    let f = Drawing::new(Graph::new(vm.len(), edges.clone()), vm.clone(), em.clone());
    assert!(balancing_check(&t, &f).0);
    let state = HarmonyState::new(&t, &f).unwrap();
    let mv = find_balancing(&t, &state).unwrap().expect("balancing applies");
    assert!(matches!(mv.kind, MoveKind::Balancing { rotation: Rotation::Clockwise, .. }));
    let mut after = state.clone();
    apply_move(&t, &mut after, &mv).unwrap();
    assert!(after.total_length() < state.total_length());

    // the slot just before a (clockwise from the outgoing slot) is on the right
    let right = t.rot_ccw(a);
    vm.push(t.head(right));
    edges.push((0, vm.len() - 1));
    em.push(vec![right]);
    let g = Drawing::new(Graph::new(vm.len(), edges), vm, em);
    assert!(!balancing_check(&t, &g).0);
    assert!(find_balancing(&t, &HarmonyState::new(&t, &g).unwrap()).unwrap().is_none());
}

#[test]
fn counterclockwise_when_only_the_second_left_slot_is_used() {
    let t = double_with_gadgets(&crown(4).unwrap()).unwrap().tri;
    let cycle = straight_cycles(&t, Color::Red).into_iter().find(|c| c.len() == 2).unwrap();
    let mut vm: Vec<VertexId> = cycle.iter().map(|&h| t.origin(h)).collect();
    let mut edges = vec![(0, 1), (1, 0)];
    let mut em: Vec<Vec<HalfEdgeId>> = cycle.iter().map(|&h| vec![h]).collect();
    let a = t.twin(cycle[1]);
    let left = t.rot_cw_n(a, 2);
    vm.push(t.head(left));
    edges.push((0, 2));
    em.push(vec![left]);
    let f = Drawing::new(Graph::new(3, edges), vm, em);
    let state = HarmonyState::new(&t, &f).unwrap();
    let mv = find_balancing(&t, &state).unwrap().expect("balancing applies");
    assert!(matches!(mv.kind, MoveKind::Balancing { rotation: Rotation::Counterclockwise, .. }));
}

#[test]
fn acyclic_graphs_never_balance() {
    let t = double_with_gadgets(&crown(4).unwrap()).unwrap().tri;
    let h = HalfEdgeId(0);
    let f = Drawing::new(Graph::new(2, vec![(0, 1)]), vec![t.origin(h), t.head(h)], vec![vec![h]]);
    let s = factor_simplicial(&t, &f).unwrap();
    let hom = factor_homomorphism(&t, &s);
    assert!(find_balancing_colored(&hom, &t, Color::Red).is_none());
    assert!(find_balancing_colored(&hom, &t, Color::Blue).is_none());
}
