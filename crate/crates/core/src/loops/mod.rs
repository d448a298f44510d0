//! Loops on a quasi-surface: words, generic representatives, homotopy
//! moves, canonical representatives and simplification.

mod generic;
pub mod moves;
mod sample;
mod simple;
mod table;
mod word;

use thiserror::Error;

use crate::surface::GeometryError;

pub use generic::{
    check_family, disk_crossings, Cut, DiskCrossing, Endpoint, GatePoint, GenericLoop, Layout, Leg, LoopSpec,
    PointSpec, SelfIntersection, Stage, StrandSpec,
};
pub use sample::{random_word, shortest_path};
pub use simple::{exists_simple_placement, make_simple, simplify_by_pushing, Simplified};
pub use table::{loop_from_word, Allocator, ClassTable};
pub use word::{cyclic_reduce, format_letters, free_reduce, parse_letters, path_ends, CyclicWord, Letter};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LoopError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("not an edge path of the graph: {0}")]
    NotAPath(String),
    #[error("malformed loop: {0}")]
    Malformed(String),
    #[error("crossing points lie on different gates")]
    DifferentGates,
    #[error("move does not apply: {0}")]
    MoveMismatch(String),
    #[error("simplification did not finish within {0} steps")]
    IterationBound(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
