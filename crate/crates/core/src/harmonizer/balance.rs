use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::moves::used_slots;
use super::{HarmonizeError, HarmonyState, Move, MoveKind, Rotation};
use crate::drawing::Homomorphism;
use crate::surface::{Color, HalfEdgeId, Triangulation};

/// A cycle of the contracted graph whose image turns by `3` with the given
/// color at every vertex, with every vertex following it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balancing {
    pub color: Color,
    /// Contracted vertices along the cycle, in its direction.
    pub cycle: Vec<usize>,
    /// Edge indices of the cycle, each with `true` when traversed from its
    /// tail to its head.
    pub cycle_edges: Vec<(usize, bool)>,
    /// Every follower with the slot by which the cycle (or the walk it
    /// follows) enters its host vertex.
    pub followers: Vec<(usize, HalfEdgeId)>,
}

struct Split {
    copy_of: BTreeMap<(usize, HalfEdgeId), usize>,
    copies: Vec<(usize, HalfEdgeId)>,
    red: Vec<bool>,
    green: Vec<bool>,
    /// (from copy, to copy, edge index, traversed forward)
    arcs: Vec<(usize, usize, usize, bool)>,
}

fn split(hom: &Homomorphism, t: &Triangulation, color: Color) -> Split {
    let key = |s: HalfEdgeId| {
        if t.left_color(t.twin(s)) == Some(color) {
            s
        } else {
            t.rot_ccw_n(s, 3)
        }
    };
    let views = used_slots(hom, t);
    let mut sp = Split { copy_of: BTreeMap::new(), copies: Vec::new(), red: Vec::new(), green: Vec::new(), arcs: Vec::new() };
    for (c, view) in views.iter().enumerate() {
        for &s in &view.slots {
            let a = key(s);
            if sp.copy_of.contains_key(&(c, a)) {
                continue;
            }
            let inside = [a, t.rot_cw_n(a, 3)];
            let left = [t.rot_cw(a), t.rot_cw_n(a, 2)];
            let red = view.slots.iter().any(|x| !inside.contains(x) && !left.contains(x));
            let green = !red && view.slots.iter().any(|x| left.contains(x));
            sp.copy_of.insert((c, a), sp.copies.len());
            sp.copies.push((c, a));
            sp.red.push(red);
            sp.green.push(green);
        }
    }
    for (i, &(a, b, h, _)) in hom.edges.iter().enumerate() {
        let u = sp.copy_of[&(a, key(h))];
        let w = sp.copy_of[&(b, key(t.twin(h)))];
        if t.left_color(h) == Some(color) {
            sp.arcs.push((u, w, i, true));
        } else {
            sp.arcs.push((w, u, i, false));
        }
    }
    sp
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A directed cycle among `nodes`, as a list of arc indices.
fn directed_cycle(sp: &Split, nodes: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &(u, _, _, _)) in sp.arcs.iter().enumerate() {
        if nodes.contains(&u) {
            out.entry(u).or_default().push(k);
        }
    }
    // 0 unvisited, 1 on the stack, 2 done
    let mut state: BTreeMap<usize, u8> = BTreeMap::new();
    for &root in nodes {
        if state.get(&root).copied().unwrap_or(0) != 0 {
            continue;
        }
        // stack of (node, next arc position, arc used to enter)
        let mut stack: Vec<(usize, usize, Option<usize>)> = alloc::vec![(root, 0, None)];
        state.insert(root, 1);
        while let Some(top) = stack.last_mut() {
            let (u, pos) = (top.0, top.1);
            let arcs = out.get(&u).map_or(&[][..], Vec::as_slice);
            if pos == arcs.len() {
                state.insert(u, 2);
                stack.pop();
                continue;
            }
            top.1 += 1;
            let k = arcs[pos];
            let w = sp.arcs[k].1;
            match state.get(&w).copied().unwrap_or(0) {
                0 => {
                    state.insert(w, 1);
                    stack.push((w, 0, Some(k)));
                }
                1 => {
                    let start = stack.iter().position(|&(x, _, _)| x == w).unwrap();
                    let mut cycle: Vec<usize> = stack[start + 1..].iter().map(|&(_, _, e)| e.unwrap()).collect();
                    cycle.push(k);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

/// Searches for a cycle making only `3`-turns of the given color that is
/// pulled left and not pulled right.
///
/// Components in which a contracted vertex follows the cycle at two
/// different corners are skipped, since no single slide moves all of them.
pub fn find_balancing_colored(hom: &Homomorphism, t: &Triangulation, color: Color) -> Option<Balancing> {
    colored_where(hom, t, color, &|_| true)
}

fn colored_where(hom: &Homomorphism, t: &Triangulation, color: Color, allowed: &dyn Fn(usize) -> bool) -> Option<Balancing> {
    let sp = split(hom, t, color);
    let n = sp.copies.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for &(u, w, _, _) in &sp.arcs {
        let (x, y) = (find(&mut parent, u), find(&mut parent, w));
        parent[x.max(y)] = x.min(y);
    }
    let mut comps: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for c in 0..n {
        let r = find(&mut parent, c);
        comps.entry(r).or_default().insert(c);
    }
    for nodes in comps.values() {
        if !allowed(hom.clusters.members[sp.copies[*nodes.first()?].0][0]) {
            continue;
        }
        if nodes.iter().any(|&c| sp.red[c]) || !nodes.iter().any(|&c| sp.green[c]) {
            continue;
        }
        let vertices: BTreeSet<usize> = nodes.iter().map(|&c| sp.copies[c].0).collect();
        if vertices.len() != nodes.len() {
            continue;
        }
        let Some(arcs) = directed_cycle(&sp, nodes) else { continue };
        let cycle = arcs.iter().map(|&k| sp.copies[sp.arcs[k].0].0).collect();
        let cycle_edges = arcs.iter().map(|&k| (sp.arcs[k].2, sp.arcs[k].3)).collect();
        let followers = nodes.iter().map(|&c| sp.copies[c]).collect();
        return Some(Balancing { color, cycle, cycle_edges, followers });
    }
    None
}

/// Finds a balancing and the rotation that performs it: clockwise when
/// that shortens some edge, counterclockwise otherwise.
pub fn find_balancing(t: &Triangulation, state: &HarmonyState) -> Result<Option<Move>, HarmonizeError> {
    find_balancing_where(t, state, |_| true)
}

pub(crate) fn find_balancing_where(
    t: &Triangulation,
    state: &HarmonyState,
    allowed: impl Fn(usize) -> bool,
) -> Result<Option<Move>, HarmonizeError> {
    let hom = state.homomorphism(t);
    for color in [Color::Red, Color::Blue] {
        let Some(b) = colored_where(&hom, t, color, &allowed) else { continue };
        let rep = |c: usize| hom.clusters.members[c][0];
        for (rotation, turn) in [(Rotation::Clockwise, 1), (Rotation::Counterclockwise, 2)] {
            let steps: Vec<_> = b.followers.iter().map(|&(c, a)| (rep(c), t.rot_cw_n(a, turn))).collect();
            let Ok(images) = state.preview(t, &steps) else { continue };
            let old = &state.simplicial.edges;
            if old.iter().zip(&images).any(|(e, n)| n.len() < e.image.len()) {
                let kind = MoveKind::Balancing {
                    cycle: b.cycle.iter().map(|&c| rep(c)).collect(),
                    followers: b.followers.iter().map(|&(c, _)| rep(c)).collect(),
                    rotation,
                };
                return Ok(Some(Move { kind, steps, version: state.version() }));
            }
        }
        return Err(HarmonizeError::BalancingInvariant);
    }
    Ok(None)
}
