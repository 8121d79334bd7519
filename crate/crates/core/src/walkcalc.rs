//! Turns, bad turns and reduction of walks by local rewriting.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::surface::{Color, HalfEdgeId, Triangulation, VertexId};

/// A finite walk in the 1-skeleton, as a sequence of directed half-edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub start: VertexId,
    pub edges: Vec<HalfEdgeId>,
    pub closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("half-edges {0} and {1} are not consecutive")]
    NotConsecutive(HalfEdgeId, HalfEdgeId),
    #[error("walk does not start at its start vertex")]
    BadStart,
    #[error("closed walk does not return to its start")]
    NotClosed,
    #[error("turns at boundary vertex {0} are not defined")]
    BoundaryVertex(VertexId),
    #[error("position {0} has no turn")]
    NoTurnAt(usize),
    #[error("no reduced form within {0} rewrites")]
    Budget(usize),
}

impl Walk {
    pub fn open(start: VertexId, edges: Vec<HalfEdgeId>) -> Walk {
        Walk { start, edges, closed: false }
    }

    pub fn empty(start: VertexId) -> Walk {
        Walk::open(start, Vec::new())
    }

    /// A closed walk starting at the origin of its first edge.
    pub fn closed(t: &Triangulation, edges: Vec<HalfEdgeId>) -> Walk {
        let start = edges.first().map_or(VertexId(0), |&h| t.origin(h));
        Walk { start, edges, closed: true }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self, t: &Triangulation) -> VertexId {
        self.edges.last().map_or(self.start, |&h| t.head(h))
    }

    pub fn check(&self, t: &Triangulation) -> Result<(), WalkError> {
        if let Some(&h) = self.edges.first() {
            if t.origin(h) != self.start {
                return Err(WalkError::BadStart);
            }
        }
        for w in self.edges.windows(2) {
            if t.head(w[0]) != t.origin(w[1]) {
                return Err(WalkError::NotConsecutive(w[0], w[1]));
            }
        }
        if self.closed && self.end(t) != self.start {
            return Err(WalkError::NotClosed);
        }
        Ok(())
    }

    pub fn reversed(&self, t: &Triangulation) -> Walk {
        Walk {
            start: self.end(t),
            edges: self.edges.iter().rev().map(|&h| t.twin(h)).collect(),
            closed: self.closed,
        }
    }

    /// Visited vertices, endpoints included.
    pub fn vertices(&self, t: &Triangulation) -> Vec<VertexId> {
        let mut out = alloc::vec![self.start];
        out.extend(self.edges.iter().map(|&h| t.head(h)));
        out
    }

    /// Positions that carry a turn: `1..len` for open walks, every position
    /// of a non-empty closed walk (position 0 is the turn at the wrap).
    pub fn turn_positions(&self) -> core::ops::Range<usize> {
        if self.closed {
            0..self.edges.len()
        } else {
            1..self.edges.len().max(1)
        }
    }

    /// The turn made when entering edge `i`.
    pub fn turn(&self, t: &Triangulation, i: usize) -> Result<Turn, WalkError> {
        if !self.turn_positions().contains(&i) {
            return Err(WalkError::NoTurnAt(i));
        }
        let n = self.edges.len();
        turn_between(t, self.edges[(i + n - 1) % n], self.edges[i])
    }

    pub fn turns(&self, t: &Triangulation) -> Result<Vec<Turn>, WalkError> {
        self.turn_positions().map(|i| self.turn(t, i)).collect()
    }
}

/// A turn: clockwise rotation count from the reversed incoming half-edge to
/// the outgoing one, with the color on the left of the incoming edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Turn {
    pub clockwise_steps: usize,
    pub degree: usize,
    pub subscript: Color,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TurnClass {
    Bad,
    Good,
}

impl Turn {
    pub fn signed_value(&self) -> i64 {
        let (k, d) = (self.clockwise_steps as i64, self.degree as i64);
        if 2 * k <= d {
            k
        } else {
            k - d
        }
    }

    pub fn classify(&self) -> TurnClass {
        let s = self.signed_value();
        if s.abs() <= 1 || (s.abs() == 2 && self.subscript == Color::Red) {
            TurnClass::Bad
        } else {
            TurnClass::Good
        }
    }

    pub fn is_bad(&self) -> bool {
        self.classify() == TurnClass::Bad
    }

    /// True for a `value_color` turn such as `3_r`.
    pub fn is(&self, value: i64, color: Color) -> bool {
        self.signed_value() == value && self.subscript == color
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.subscript {
            Color::Red => 'r',
            Color::Blue => 'b',
        };
        write!(f, "{}_{}", self.signed_value(), c)
    }
}

/// Turn at `head(e1)` for the consecutive pair `e1`, `e2`.
pub fn turn_between(t: &Triangulation, e1: HalfEdgeId, e2: HalfEdgeId) -> Result<Turn, WalkError> {
    let v = t.head(e1);
    if v != t.origin(e2) {
        return Err(WalkError::NotConsecutive(e1, e2));
    }
    if t.is_boundary_vertex(v) {
        return Err(WalkError::BoundaryVertex(v));
    }
    let clockwise_steps = t
        .cw_distance(t.twin(e1), e2)
        .expect("half-edges share their origin");
    Ok(Turn {
        clockwise_steps,
        degree: t.degree(v),
        subscript: t.left_color(e1).expect("edges at interior vertices are interior"),
    })
}

pub fn classify(turn: &Turn) -> TurnClass {
    turn.classify()
}

pub fn is_reduced(t: &Triangulation, w: &Walk) -> Result<bool, WalkError> {
    Ok(w.turns(t)?.iter().all(|x| !x.is_bad()))
}

/// Replacement for the corner `e1 e2`, or `None` if the turn is good.
/// An empty replacement removes a spur.
fn rewrite(t: &Triangulation, e1: HalfEdgeId, e2: HalfEdgeId, turn: &Turn) -> Option<Vec<HalfEdgeId>> {
    let d = turn.degree;
    let red = turn.subscript == Color::Red;
    let k = turn.clockwise_steps;
    if k == 0 {
        Some(Vec::new())
    } else if k == 1 {
        Some(alloc::vec![t.twin(t.prev(e1))])
    } else if k == d - 1 {
        Some(alloc::vec![t.next(t.twin(e1))])
    } else if k == 2 && red {
        Some(alloc::vec![t.twin(t.prev(e1)), t.twin(t.next(e2))])
    } else if k == d - 2 && red {
        let te1 = t.twin(e1);
        Some(alloc::vec![t.next(te1), t.next(t.rot_ccw(te1))])
    } else {
        None
    }
}

fn priority(turn: &Turn) -> Option<u8> {
    if !turn.is_bad() {
        None
    } else if turn.signed_value() == 0 {
        Some(0)
    } else if turn.signed_value().abs() == 1 {
        Some(1)
    } else {
        Some(2)
    }
}

/// Position of the highest-priority bad turn (spurs, then ±1, then ±2_r),
/// leftmost among equals.
fn first_bad(t: &Triangulation, w: &Walk) -> Result<Option<(usize, Turn)>, WalkError> {
    let mut best: Option<(u8, usize, Turn)> = None;
    for i in w.turn_positions() {
        let turn = w.turn(t, i)?;
        if let Some(p) = priority(&turn) {
            if best.is_none_or(|(q, _, _)| p < q) {
                best = Some((p, i, turn));
                if p == 0 {
                    break;
                }
            }
        }
    }
    Ok(best.map(|(_, i, x)| (i, x)))
}

/// Applies one rewrite at the bad turn entering edge `i`.
fn rewrite_at(t: &Triangulation, w: &mut Walk, i: usize, turn: &Turn) {
    let n = w.edges.len();
    if w.closed && i == 0 {
        // bring the wrap corner to positions 0, 1
        w.edges.rotate_right(1);
        return rewrite_at(t, w, 1, turn);
    }
    let (e1, e2) = (w.edges[i - 1], w.edges[i]);
    let repl = rewrite(t, e1, e2, turn).expect("bad turn has a rewrite");
    w.edges.splice(i - 1..=i, repl);
    if w.closed {
        w.start = w.edges.first().map_or(t.origin(e1), |&h| t.origin(h));
    }
    debug_assert!(n >= w.edges.len());
}

/// Rewrites `w` until no bad turn remains, keeping its endpoints.
///
/// On a simply connected host the result is the unique reduced walk between
/// the endpoints. Fails if a turn at a boundary vertex is needed or the
/// budget runs out.
pub fn reduce_open(t: &Triangulation, w: &Walk, budget: usize) -> Result<Walk, WalkError> {
    w.check(t)?;
    let mut cur = Walk::open(w.start, w.edges.clone());
    for _ in 0..budget {
        match first_bad(t, &cur)? {
            None => return Ok(cur),
            Some((i, turn)) => rewrite_at(t, &mut cur, i, &turn),
        }
    }
    match first_bad(t, &cur)? {
        None => Ok(cur),
        Some(_) => Err(WalkError::Budget(budget)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StallReason {
    /// A cyclic rotation of an earlier state came back.
    Cycle,
    Budget,
    /// A single loop with a bad turn at its own corner.
    LoneLoop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedReduction {
    Reduced(Walk),
    Stalled {
        reason: StallReason,
        /// States visited, the last one being the repeated (or final) state.
        states: Vec<Walk>,
    },
}

fn canonical_rotation(edges: &[HalfEdgeId]) -> Vec<HalfEdgeId> {
    (0..edges.len().max(1))
        .map(|r| {
            let mut v = edges.to_vec();
            if !v.is_empty() {
                v.rotate_left(r);
            }
            v
        })
        .min()
        .unwrap_or_default()
}

/// Rewrites a closed walk cyclically until no bad turn remains, a state
/// repeats, or `budget` rewrites were made.
pub fn reduce_closed(t: &Triangulation, w: &Walk, budget: usize) -> Result<ClosedReduction, WalkError> {
    w.check(t)?;
    let mut cur = Walk { closed: true, ..w.clone() };
    let mut seen = BTreeSet::new();
    let mut states = alloc::vec![cur.clone()];
    seen.insert(canonical_rotation(&cur.edges));
    for _ in 0..budget {
        let Some((i, turn)) = first_bad(t, &cur)? else {
            return Ok(ClosedReduction::Reduced(cur));
        };
        if cur.len() == 1 {
            return Ok(ClosedReduction::Stalled { reason: StallReason::LoneLoop, states });
        }
        rewrite_at(t, &mut cur, i, &turn);
        states.push(cur.clone());
        if !seen.insert(canonical_rotation(&cur.edges)) {
            return Ok(ClosedReduction::Stalled { reason: StallReason::Cycle, states });
        }
    }
    match first_bad(t, &cur)? {
        None => Ok(ClosedReduction::Reduced(cur)),
        Some(_) => Ok(ClosedReduction::Stalled { reason: StallReason::Budget, states }),
    }
}
