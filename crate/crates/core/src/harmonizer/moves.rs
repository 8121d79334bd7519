use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{HarmonizeError, HarmonyState, Move, MoveKind};
use crate::drawing::Homomorphism;
use crate::surface::{Color, HalfEdgeId, Triangulation, VertexId};

/// How the edges of one contracted vertex leave its host vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalView {
    /// Smallest member of the cluster.
    pub rep: usize,
    pub position: VertexId,
    pub slots: BTreeSet<HalfEdgeId>,
    /// Some edge has both ends in the cluster.
    pub has_loop: bool,
}

pub fn used_slots(hom: &Homomorphism, t: &Triangulation) -> Vec<LocalView> {
    let mut views: Vec<LocalView> = hom
        .clusters
        .members
        .iter()
        .zip(&hom.vertex_map)
        .map(|(m, &position)| LocalView { rep: m[0], position, slots: BTreeSet::new(), has_loop: false })
        .collect();
    for &(a, b, h, _) in &hom.edges {
        views[a].slots.insert(h);
        views[b].slots.insert(t.twin(h));
        if a == b {
            views[a].has_loop = true;
        }
    }
    views
}

/// Slot to slide along when the view spans a `2_r` corner.
pub(crate) fn flip_slot(t: &Triangulation, view: &LocalView) -> Option<HalfEdgeId> {
    if view.has_loop || view.slots.len() != 2 {
        return None;
    }
    let mut it = view.slots.iter().copied();
    let (s, u) = (it.next()?, it.next()?);
    for (x, y) in [(s, u), (u, s)] {
        if t.rot_cw_n(x, 2) == y && t.left_color(t.twin(x)) == Some(Color::Red) {
            return Some(t.rot_cw(x));
        }
    }
    None
}

/// Slot to slide along when the used slots are one to three consecutive
/// positions around the host vertex.
pub(crate) fn shortening_slot(t: &Triangulation, view: &LocalView) -> Option<HalfEdgeId> {
    let k = view.slots.len();
    if view.has_loop || k == 0 || k > 3 {
        return None;
    }
    for &s in &view.slots {
        let run: BTreeSet<HalfEdgeId> = (0..k).map(|i| t.rot_cw_n(s, i)).collect();
        if run == view.slots {
            return Some(if k == 3 { t.rot_cw(s) } else { s });
        }
    }
    None
}

fn scan(
    t: &Triangulation,
    state: &HarmonyState,
    pick: impl Fn(&Triangulation, &LocalView) -> Option<HalfEdgeId>,
    make: impl Fn(usize, VertexId) -> MoveKind,
    allowed: impl Fn(usize) -> bool,
) -> Option<Move> {
    let hom = state.homomorphism(t);
    used_slots(&hom, t).iter().filter(|v| allowed(v.rep)).find_map(|v| {
        pick(t, v).map(|h| Move { kind: make(v.rep, t.head(h)), steps: alloc::vec![(v.rep, h)], version: state.version() })
    })
}

pub fn find_flip(t: &Triangulation, state: &HarmonyState) -> Option<Move> {
    find_flip_where(t, state, |_| true)
}

pub(crate) fn find_flip_where(t: &Triangulation, state: &HarmonyState, allowed: impl Fn(usize) -> bool) -> Option<Move> {
    scan(t, state, flip_slot, |vertex, target| MoveKind::Flip { vertex, target }, allowed)
}

pub fn find_shortening(t: &Triangulation, state: &HarmonyState) -> Option<Move> {
    find_shortening_where(t, state, |_| true)
}

pub(crate) fn find_shortening_where(t: &Triangulation, state: &HarmonyState, allowed: impl Fn(usize) -> bool) -> Option<Move> {
    scan(t, state, shortening_slot, |vertex, target| MoveKind::Shortening { vertex, target }, allowed)
}

/// Applies a move found on this very state.
pub fn apply_move(t: &Triangulation, state: &mut HarmonyState, mv: &Move) -> Result<(), HarmonizeError> {
    if mv.version != state.version() {
        return Err(HarmonizeError::Stale);
    }
    let images = state.preview(t, &mv.steps)?;
    let old = &state.simplicial.edges;
    let shorter = old.iter().zip(&images).any(|(e, n)| n.len() < e.image.len());
    match mv.kind {
        MoveKind::Flip { .. } if shorter => return Err(HarmonizeError::FlipChangedLength),
        MoveKind::Shortening { .. } | MoveKind::Balancing { .. } if !shorter => {
            return Err(HarmonizeError::NotShorter)
        }
        _ => {}
    }
    state.commit(t, &mv.steps, images);
    Ok(())
}
