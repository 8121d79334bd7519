use alloc::vec::Vec;

use super::balance::find_balancing_where;
use super::moves::{apply_move, find_flip_where, find_shortening_where, flip_slot, used_slots};
use super::order::{left_blue_direction, proper_monotonic_ordering, LeftBlueDigraph};
use super::{find_balancing, find_flip, find_shortening, HarmonizeError, HarmonyState, Move, MoveKind, MoveTrace, Phase};
use crate::drawing::Drawing;
use crate::surface::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Move budget; `None` uses [`default_budget`] with `budget_constant`.
    pub budget: Option<usize>,
    pub budget_constant: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config { budget: None, budget_constant: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub drawing: Drawing,
    pub state: HarmonyState,
    pub trace: MoveTrace,
    pub budget: usize,
    /// The host is a torus, where termination is not guaranteed.
    pub torus_host: bool,
}

/// `c · (m + n) · n²`, with `m` host edges and `n` vertices plus edges of
/// the subdivided graph.
pub fn default_budget(t: &Triangulation, state: &HarmonyState, c: usize) -> usize {
    let g = &state.simplicial.graph;
    let n = g.n_vertices + g.edges.len();
    c.saturating_mul(t.n_edges() + n).saturating_mul(n).saturating_mul(n).max(1)
}

pub fn harmonize(t: &Triangulation, f: &Drawing, cfg: Config) -> Result<Outcome, HarmonizeError> {
    let mut state = HarmonyState::new(t, f)?;
    let budget = cfg.budget.unwrap_or_else(|| default_budget(t, &state, cfg.budget_constant));
    let trace = harmonize_state(t, &mut state, budget)?;
    Ok(Outcome { drawing: state.drawing(), state, trace, budget, torus_host: t.genus() == 1 })
}

/// True when no flip, shortening or balancing applies.
pub fn is_locally_stable(t: &Triangulation, state: &HarmonyState) -> Result<bool, HarmonizeError> {
    Ok(find_shortening(t, state).is_none() && find_balancing(t, state)?.is_none() && find_flip(t, state).is_none())
}

struct Runner<'a> {
    t: &'a Triangulation,
    trace: MoveTrace,
    budget: usize,
    run: usize,
    root: usize,
}

impl Runner<'_> {
    fn apply(&mut self, state: &mut HarmonyState, mv: &Move, phase: Phase) -> Result<(), HarmonizeError> {
        if self.trace.len() >= self.budget {
            return Err(HarmonizeError::Budget { budget: self.budget, trace: core::mem::take(&mut self.trace) });
        }
        let before = state.total_length();
        apply_move(self.t, state, mv)?;
        self.trace.record(mv, before, state.total_length(), phase, self.run, self.root);
        Ok(())
    }

    /// Applies a shortening or balancing inside the component, if any.
    fn strict(&mut self, state: &mut HarmonyState, inside: &dyn Fn(usize) -> bool, phase: Phase) -> Result<bool, HarmonizeError> {
        let mv = match find_shortening_where(self.t, state, inside) {
            Some(mv) => Some(mv),
            None => find_balancing_where(self.t, state, inside)?,
        };
        match mv {
            Some(mv) => {
                self.apply(state, &mv, phase)?;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn component(&mut self, state: &mut HarmonyState, inside: &dyn Fn(usize) -> bool) -> Result<(), HarmonizeError> {
        let t = self.t;
        'restart: loop {
            self.run += 1;
            let root = self.root;
            let root_cluster = |s: &HarmonyState| s.homomorphism(t).clusters.cluster_of[root];

            loop {
                if self.strict(state, inside, Phase::One)? {
                    continue 'restart;
                }
                let r = root_cluster(state);
                let hom = state.homomorphism(t);
                let not_root = |v: usize| inside(v) && hom.clusters.cluster_of[v] != r;
                match find_flip_where(t, state, not_root) {
                    Some(mv) => self.apply(state, &mv, Phase::One)?,
                    None => break,
                }
            }

            if let Some(order) = self.step_two_order(state, inside) {
                self.trace.orders.insert(self.run, order.clone());
                let mut i = 0;
                loop {
                    if self.strict(state, inside, Phase::Two)? {
                        continue 'restart;
                    }
                    let v = order[i % order.len()];
                    let hom = state.homomorphism(t);
                    let view = &used_slots(&hom, t)[hom.clusters.cluster_of[v]];
                    let Some(h) = flip_slot(t, view) else { break };
                    let mv = Move {
                        kind: MoveKind::Flip { vertex: view.rep, target: t.head(h) },
                        steps: alloc::vec![(view.rep, h)],
                        version: state.version(),
                    };
                    self.apply(state, &mv, Phase::Two)?;
                    i += 1;
                }
            }

            loop {
                if self.strict(state, inside, Phase::Three)? {
                    continue 'restart;
                }
                match find_flip_where(t, state, inside) {
                    Some(mv) => self.apply(state, &mv, Phase::Three)?,
                    None => return Ok(()),
                }
            }
        }
    }

    /// The layered order of the component's left-blue digraph, as cluster
    /// representatives, when that digraph is acyclic with one source.
    fn step_two_order(&self, state: &HarmonyState, inside: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let hom = state.homomorphism(self.t);
        let full = left_blue_direction(&hom, self.t);
        let local: Vec<usize> = (0..hom.vertex_map.len()).filter(|&c| inside(hom.clusters.members[c][0])).collect();
        let mut index = alloc::vec![usize::MAX; hom.vertex_map.len()];
        for (i, &c) in local.iter().enumerate() {
            index[c] = i;
        }
        let arcs = full
            .arcs
            .iter()
            .filter(|&&(a, _)| index[a] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]))
            .collect();
        let d = LeftBlueDigraph { n_vertices: local.len(), arcs };
        let order = proper_monotonic_ordering(&d).ok()?;
        Some(order.into_iter().map(|i| hom.clusters.members[local[i]][0]).collect())
    }
}

/// Runs the routine on every connected component in turn, starting again
/// from its first step after every shortening or balancing.
pub fn harmonize_state(t: &Triangulation, state: &mut HarmonyState, budget: usize) -> Result<MoveTrace, HarmonizeError> {
    let g = &state.simplicial.graph;
    let n = g.n_vertices;
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &g.edges {
        let (x, y) = (find(&mut comp, a), find(&mut comp, b));
        comp[x.max(y)] = x.min(y);
    }
    let comp: Vec<usize> = (0..n).map(|v| find(&mut comp, v)).collect();
    let mut runner = Runner { t, trace: MoveTrace::default(), budget, run: 0, root: 0 };
    for root in 0..n {
        if comp[root] != root {
            continue;
        }
        runner.root = root;
        let inside = |v: usize| comp[v] == root;
        runner.component(state, &inside)?;
    }
    Ok(runner.trace)
}
