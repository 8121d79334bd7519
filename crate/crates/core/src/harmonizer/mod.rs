//! Monotone harmonization of drawings by flips, shortenings and balancings.

mod balance;
mod moves;
mod order;
mod routine;
mod state;
mod trace;

use alloc::vec::Vec;

use crate::drawing::DrawingError;
use crate::surface::{HalfEdgeId, VertexId};

pub use balance::{find_balancing, find_balancing_colored, Balancing};
pub use moves::{apply_move, find_flip, find_shortening, used_slots, LocalView};
pub use order::{
    is_monotonic, is_proper, left_blue_direction, proper_monotonic_ordering, LeftBlueDigraph, OrderError,
};
pub use routine::{default_budget, harmonize, harmonize_state, is_locally_stable, Config, Outcome};
pub use state::HarmonyState;
pub use trace::{audit, replay, AuditError, AuditSummary, MoveTrace, Phase, TraceEntry};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HarmonizeError {
    #[error("the host surface has boundary")]
    HostHasBoundary,
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error("the move was computed for another state")]
    Stale,
    #[error("the move would lengthen an edge")]
    Lengthens,
    #[error("a flip changed the length of an edge")]
    FlipChangedLength,
    #[error("the move does not shorten any edge")]
    NotShorter,
    #[error("no rotation of a detected balancing shortens the drawing")]
    BalancingInvariant,
    #[error("move budget of {budget} exhausted")]
    Budget { budget: usize, trace: MoveTrace },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rotation {
    Clockwise,
    Counterclockwise,
}

/// Vertices of the contracted graph are named by their smallest member in
/// the subdivided graph, which survives flips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Flip { vertex: usize, target: VertexId },
    Shortening { vertex: usize, target: VertexId },
    Balancing { cycle: Vec<usize>, followers: Vec<usize>, rotation: Rotation },
}

impl MoveKind {
    pub fn name(&self) -> &'static str {
        match self {
            MoveKind::Flip { .. } => "flip",
            MoveKind::Shortening { .. } => "short",
            MoveKind::Balancing { .. } => "bal",
        }
    }

    pub fn is_flip(&self) -> bool {
        matches!(self, MoveKind::Flip { .. })
    }
}

/// A move together with the slides it performs: each listed cluster moves
/// along one host half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub steps: Vec<(usize, HalfEdgeId)>,
    pub version: u64,
}
