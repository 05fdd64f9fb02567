use core::fmt;

use crate::grid::{Cell, TwoEdge, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The board needs `q ≥ 2`.
    Parameter {
        q: u32,
    },
    DegenerateRow {
        vertex: Vertex,
    },
    /// A 2-edge half placed on a fixed 1-edge cell.
    OneEdgeCell(Cell),
    EqualHalves(Cell),
    OutOfRange {
        q: u32,
        edge: TwoEdge,
    },
    /// An operation that requires an admissible input got one that is not.
    NotAdmissible,
    QMismatch {
        expected: u32,
        found: u32,
    },
    IncompleteAssignment {
        missing: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter { q } => write!(f, "q must be at least 2 (got {q})"),
            Error::DegenerateRow { vertex } => {
                write!(f, "row {{{vertex},{vertex}}} is not a 2-subset")
            }
            Error::OneEdgeCell(cell) => write!(f, "cell {cell} is a 1-edge cell"),
            Error::EqualHalves(cell) => write!(f, "both halves are the cell {cell}"),
            Error::OutOfRange { q, edge } => {
                write!(f, "edge {edge} does not fit on the q={q} board")
            }
            Error::NotAdmissible => f.write_str("family is not admissible"),
            Error::QMismatch { expected, found } => {
                write!(f, "expected a q={expected} family, found q={found}")
            }
            Error::IncompleteAssignment { missing } => {
                write!(f, "assignment is missing {missing} variable(s)")
            }
        }
    }
}

impl core::error::Error for Error {}
