//! Bidirected minimum Manhattan networks: a factor-2 approximation, the
//! empty-rectangle baseline, feasibility checks and an exact oracle for
//! small instances.

pub mod approximation;
pub mod baseline;
pub mod decomposition;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod svg;
pub mod verify;

pub use approximation::{solve, Solution};
pub use error::{Error, Result};
pub use geometry::{DirectedNetwork, Grid, GridEdge, Node, Orientation, Point, RectilinearNetwork, Rotation, TerminalSet};
