//! Exact computation of two-variable knot polynomials over planar diagram
//! codes: the skein (HOMFLY) polynomial, the framed Kauffman and Dubrovnik
//! polynomials, annulus doubles and Whitehead doubles, and the Rudolph
//! polynomial obtained as a Möbius transform over sublinks.

pub mod corpus;
pub mod diagram;
mod engine;
pub mod error;
pub mod kauffman;
pub mod poly;
pub mod rational;
pub mod rudolph;
pub mod satellite;
pub mod skein;
pub mod store;
pub mod verify;

pub use diagram::{Diagram, Framing, SublinkMask};
pub use engine::DEFAULT_BUDGET;
pub use error::{DiagramError, EngineError, PolyError};
pub use poly::{BiLaurent, Degree, Vars, AX, VZ};
pub use rational::{UniLaurent, UniLaurentRational};
