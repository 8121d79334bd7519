#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boundary;
pub mod cover;
pub mod drawing;
pub mod gen;
pub mod harmonizer;
pub mod surface;
pub mod walkcalc;

pub use drawing::{Drawing, Graph};
pub use surface::{Color, FaceId, HalfEdgeId, Triangulation, VertexId};
pub use walkcalc::{Turn, Walk};
