//! Arc diagrams of real-normalized differentials with simple zeros and one
//! double pole, and the moves that connect diagrams sharing a polarized
//! period lattice.
//!
//! * [`diagram`]: arcs with exact rational endpoints and integer lattice
//!   vectors, intersection matrices, admissibility.
//! * [`moves`]: shifts and Vasiliev moves with their transvection matrices.
//! * [`caravan`]: the normal form and a search that reaches it.
//! * [`symplectic`]: generators of `Sp(2g, Z)` and a constructive word
//!   decomposition.
//! * [`planner`]: explicit move sequences between caravans.
//! * [`cli`]: the `isoperiod` command.

pub mod caravan;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod layout;
pub mod matrix;
pub mod moves;
pub mod planner;
pub mod random;
pub mod rational;
pub mod render;
pub mod symplectic;

pub use diagram::{ArcDiagram, End};
pub use error::{Error, Result};
pub use moves::Move;
