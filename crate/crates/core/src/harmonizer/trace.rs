use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::order::left_blue_direction;
use super::{HarmonizeError, HarmonyState, Move, MoveKind};
use crate::surface::{Color, HalfEdgeId, Triangulation};
use crate::walkcalc::turn_between;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    One,
    Two,
    Three,
}

impl Phase {
    pub fn number(self) -> u8 {
        match self {
            Phase::One => 1,
            Phase::Two => 2,
            Phase::Three => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Phase> {
        match n {
            1 => Some(Phase::One),
            2 => Some(Phase::Two),
            3 => Some(Phase::Three),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub kind: MoveKind,
    pub steps: Vec<(usize, HalfEdgeId)>,
    pub before: usize,
    pub after: usize,
    pub phase: Phase,
    /// Restarts of the routine seen so far; flips of one segment share it.
    pub run: usize,
    /// Smallest subdivided-graph vertex of the component being harmonized,
    /// which is also the pinned root of the first step.
    pub root: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveTrace {
    pub entries: Vec<TraceEntry>,
    /// Orders used by the second step, by run.
    pub orders: BTreeMap<usize, Vec<usize>>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn flips_in(&self, phase: Phase) -> usize {
        self.entries.iter().filter(|e| e.kind.is_flip() && e.phase == phase).count()
    }

    /// Shortenings and balancings, which interrupt the routine.
    pub fn interrupts(&self) -> usize {
        self.entries.iter().filter(|e| !e.kind.is_flip()).count()
    }

    pub(crate) fn record(&mut self, mv: &Move, before: usize, after: usize, phase: Phase, run: usize, root: usize) {
        self.entries.push(TraceEntry { kind: mv.kind.clone(), steps: mv.steps.clone(), before, after, phase, run, root });
    }
}

/// Re-applies every move of a trace to a copy of `initial`.
pub fn replay(t: &Triangulation, initial: &HarmonyState, trace: &MoveTrace) -> Result<HarmonyState, HarmonizeError> {
    let mut s = initial.clone();
    for e in &trace.entries {
        let mv = Move { kind: e.kind.clone(), steps: e.steps.clone(), version: s.version() };
        super::apply_move(t, &mut s, &mv)?;
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error("move {0} cannot be replayed: {1}")]
    Replay(usize, HarmonizeError),
    #[error("move {0} lengthens original edge {1}")]
    Longer(usize, usize),
    #[error("move {0} records lengths that do not match the replay")]
    Recorded(usize),
    #[error("move {0} is a shortening or balancing that does not shorten")]
    NotStrict(usize),
    #[error("move {0} flips a vertex that is not a source")]
    NotSource(usize),
    #[error("move {0} flips vertex {1} twice with no neighbour flipped in between")]
    NoNeighbourFlip(usize, usize),
    #[error("segment ending at move {0}: vertex {1} is flipped {2} times at distance {3}")]
    DistanceBound(usize, usize, usize, usize),
    #[error("segment ending at move {0} flips every vertex of its component")]
    NothingPinned(usize),
    #[error("second-step segment ending at move {0} is not {1}-forward")]
    NotForward(usize, usize),
}

/// Facts gathered while auditing a trace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditSummary {
    pub segments: usize,
    pub longest_forward: usize,
}

struct Segment {
    phase: Phase,
    run: usize,
    root: usize,
    start: usize,
    end: usize,
}

fn segments(trace: &MoveTrace) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for (i, e) in trace.entries.iter().enumerate() {
        if !e.kind.is_flip() {
            continue;
        }
        match out.last_mut() {
            Some(s) if s.end == i && s.phase == e.phase && s.run == e.run && s.root == e.root => s.end = i + 1,
            _ => out.push(Segment { phase: e.phase, run: e.run, root: e.root, start: i, end: i + 1 }),
        }
    }
    out
}

/// Replays a trace and checks the monotonicity of lengths and the bounds
/// on flip sequences: between two flips of a vertex some neighbour is
/// flipped; in the first and third steps a vertex at distance `i` from an
/// unflipped vertex is flipped at most `i` times; a second-step sequence of
/// `kq + 1` flips moves its first vertex along `k` consecutive edges making
/// only `3_r`-turns.
pub fn audit(t: &Triangulation, initial: &HarmonyState, trace: &MoveTrace) -> Result<AuditSummary, AuditError> {
    let mut s = initial.clone();
    let mut states = Vec::with_capacity(trace.len() + 1);
    states.push(s.clone());
    for (i, e) in trace.entries.iter().enumerate() {
        let before = s.lengths();
        if e.kind.is_flip() {
            let hom = s.homomorphism(t);
            let c = hom.clusters.cluster_of[e.steps[0].0];
            if !left_blue_direction(&hom, t).is_source(c) {
                return Err(AuditError::NotSource(i));
            }
        }
        let mv = Move { kind: e.kind.clone(), steps: e.steps.clone(), version: s.version() };
        super::apply_move(t, &mut s, &mv).map_err(|err| AuditError::Replay(i, err))?;
        let after = s.lengths();
        if let Some(k) = (0..after.len()).find(|&k| after[k] > before[k]) {
            return Err(AuditError::Longer(i, k));
        }
        let (b, a) = (before.iter().sum::<usize>(), after.iter().sum::<usize>());
        if (b, a) != (e.before, e.after) {
            return Err(AuditError::Recorded(i));
        }
        if !e.kind.is_flip() && a >= b {
            return Err(AuditError::NotStrict(i));
        }
        states.push(s.clone());
    }

    let mut summary = AuditSummary::default();
    for seg in segments(trace) {
        summary.segments += 1;
        let start = &states[seg.start];
        let hom = start.homomorphism(t);
        let comp = component(&hom, hom.clusters.cluster_of[seg.root]);
        let flipped: Vec<usize> = trace.entries[seg.start..seg.end]
            .iter()
            .map(|e| hom.clusters.cluster_of[e.steps[0].0])
            .collect();
        check_neighbour_flips(&hom, &flipped, seg.start)?;
        match seg.phase {
            Phase::One | Phase::Three => {
                let pinned: Vec<usize> = if seg.phase == Phase::One {
                    alloc::vec![hom.clusters.cluster_of[seg.root]]
                } else {
                    let f: BTreeSet<usize> = flipped.iter().copied().collect();
                    comp.iter().copied().filter(|c| !f.contains(c)).collect()
                };
                if pinned.is_empty() {
                    return Err(AuditError::NothingPinned(seg.end - 1));
                }
                let dist = distances(&hom, &pinned);
                let mut count: BTreeMap<usize, usize> = BTreeMap::new();
                for &c in &flipped {
                    *count.entry(c).or_default() += 1;
                }
                for (&c, &k) in &count {
                    let d = dist.get(&c).copied().unwrap_or(usize::MAX);
                    if k > d {
                        return Err(AuditError::DistanceBound(seg.end - 1, hom.clusters.members[c][0], k, d));
                    }
                }
            }
            Phase::Two => {
                let q = comp.len();
                let p = seg.end - seg.start;
                let k = (p - 1) / q;
                let v0 = trace.orders.get(&seg.run).and_then(|o| o.first()).copied();
                let Some(v0) = v0 else { return Err(AuditError::NotForward(seg.end - 1, k)) };
                let c0 = hom.clusters.cluster_of[v0];
                let walk: Vec<HalfEdgeId> = trace.entries[seg.start..seg.end]
                    .iter()
                    .filter(|e| hom.clusters.cluster_of[e.steps[0].0] == c0)
                    .map(|e| e.steps[0].1)
                    .collect();
                let best = longest_straight(t, &walk);
                summary.longest_forward = summary.longest_forward.max(best);
                if best < k {
                    return Err(AuditError::NotForward(seg.end - 1, k));
                }
            }
        }
    }
    Ok(summary)
}

fn neighbours(hom: &crate::drawing::Homomorphism) -> Vec<BTreeSet<usize>> {
    let mut nb = alloc::vec![BTreeSet::new(); hom.vertex_map.len()];
    for &(a, b, _, _) in &hom.edges {
        nb[a].insert(b);
        nb[b].insert(a);
    }
    nb
}

fn component(hom: &crate::drawing::Homomorphism, c: usize) -> Vec<usize> {
    distances(hom, &[c]).into_keys().collect()
}

fn distances(hom: &crate::drawing::Homomorphism, from: &[usize]) -> BTreeMap<usize, usize> {
    let nb = neighbours(hom);
    let mut dist = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &c in from {
        dist.insert(c, 0);
        queue.push_back(c);
    }
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for &y in &nb[x] {
            if let alloc::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

fn check_neighbour_flips(hom: &crate::drawing::Homomorphism, flipped: &[usize], offset: usize) -> Result<(), AuditError> {
    let nb = neighbours(hom);
    let mut last: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &c) in flipped.iter().enumerate() {
        if let Some(&j) = last.get(&c) {
            if !flipped[j + 1..i].iter().any(|x| nb[c].contains(x)) {
                return Err(AuditError::NoNeighbourFlip(offset + i, hom.clusters.members[c][0]));
            }
        }
        last.insert(c, i);
    }
    Ok(())
}

/// Length of the longest subwalk all of whose turns are `3_r`.
fn longest_straight(t: &Triangulation, walk: &[HalfEdgeId]) -> usize {
    if walk.is_empty() {
        return 0;
    }
    let (mut best, mut cur) = (1, 1);
    for w in walk.windows(2) {
        let straight = turn_between(t, w[0], w[1]).is_ok_and(|x| x.is(3, Color::Red));
        cur = if straight { cur + 1 } else { 1 };
        best = best.max(cur);
    }
    best
}
