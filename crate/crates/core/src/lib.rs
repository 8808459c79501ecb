//! Trapezoid orders: finite posets, their trapezoid representations, exact
//! search for unconstrained, proper and unit representations, and
//! autonomous-set analysis for lifting results to trapezoid graphs.

pub mod autonomy;
pub mod corpus;
pub mod embed;
pub mod error;
pub mod format;
pub mod poset;
pub mod rational;
pub mod representation;
pub mod solver;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use poset::{IncompGraph, Poset, Relation};
pub use representation::{Endpoint, Trapezoid, TrapezoidRepresentation};
pub use solver::{Mode, SolveOptions};
