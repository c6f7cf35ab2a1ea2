//! Discrete Jordan curve toolkit on grid graphs.
//!
//! Curves and paths live on the `(n+1) x (n+1)` grid of integer points and are
//! given either as unordered edge sets ([`EdgeSet`]) or as directed edge
//! sequences ([`EdgeSequence`]). The crate checks the combinatorial lemmas
//! behind the discrete Jordan curve theorem, produces intersection witnesses,
//! converts between curve and st-connectivity instances, and writes the
//! corresponding propositional tautologies.

pub mod error;
pub mod generate;
pub mod grid;
pub mod instance;
pub mod parity;
pub mod reductions;
pub mod render;
pub mod sequence;
pub mod tautologies;

pub use error::{Error, Result};
pub use grid::{
    pair_code, Color, DirectedEdge, Direction, Edge, EdgeSequence, EdgeSet, GridPoint, SequenceKind, SidePair,
};
pub use parity::{IntersectionWitness, ParityProfile};
