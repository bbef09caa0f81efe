//! Certificates for the K5-subdivision dichotomy.
//!
//! For any input graph this library produces exactly one of three
//! independently checkable certificates:
//!
//! * a **TK5 witness** — five branch vertices of degree four joined by ten
//!   internally disjoint paths (a K5 subdivision),
//! * a **planar embedding** — a rotation system whose faces satisfy Euler's
//!   formula, or
//! * a **small cut** — a vertex cut of order at most four.
//!
//! Soundness rests on the structure theorem that every 5-connected nonplanar
//! graph contains a K5 subdivision, so the three outcomes cover all graphs.
//! Every certificate is re-verified by an independent checker before it is
//! emitted; searches are deterministic (identical inputs yield identical
//! certificates) and bounded by an explicit [`Budget`].
//!
//! The library targets "desk scale" instances: graphs are stored as bitset
//! adjacency rows and capped at 64 vertices. All heavy operations take a
//! budget and fail with [`Error::BudgetExceeded`] instead of running away.

#![forbid(unsafe_code)]

pub mod certify;
pub mod corpus;
mod flow;
pub mod format;
pub mod graph;
pub mod ladders;
pub mod paths;
pub mod planarity;
pub mod quadruples;
pub mod tk5;

pub use graph::{Cut, Graph, Separation, MAX_VERTICES};

use thiserror::Error;

/// Unified error type for all operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// The operation needs a nonempty vertex set.
    #[error("vertex set is empty")]
    EmptySet,
    /// `contract` requires the contracted set to induce a connected subgraph.
    #[error("contraction set does not induce a connected subgraph")]
    DisconnectedContractionSet,
    /// The graph is too small for the requested operation.
    #[error("graph too small: {0}")]
    TooSmall(String),
    /// The graph exceeds the hard vertex cap or the configured guard.
    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    /// A bounded search ran out of budget before reaching a verdict.
    #[error("search budget exceeded")]
    BudgetExceeded,
    /// A lemma-shaped operation was called on inputs violating its hypothesis.
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    /// The operation requires a 2-connected graph.
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    /// The operation requires a 5-connected graph.
    #[error("graph is not 5-connected")]
    NotFiveConnected,
    /// A structural precondition failed.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    /// The instance is not a rung.
    #[error("instance is not a rung")]
    NotARung,
    /// Ladder templates cannot be glued.
    #[error("incompatible gluing: {0}")]
    IncompatibleGluing(String),
    /// An object guaranteed to exist by theory was not found; this signals a
    /// falsification of the underlying structure result on the given input.
    #[error("guaranteed object not found")]
    NotFound,
    /// A contracted-graph witness could not be lifted to the original graph.
    #[error("witness lift failed: {0}")]
    LiftFailed(String),
    /// A certificate payload does not match its declared kind.
    #[error("certificate kind mismatch: {0}")]
    KindMismatch(String),
    /// Invalid generator or CLI parameters.
    #[error("bad parameters: {0}")]
    BadParameters(String),
    /// A certified outcome contradicts the structure theorem; this is a hard
    /// implementation error, never a property of the input.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// Underlying I/O failure (message only, to keep the type comparable).
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource bounds for search operations.
///
/// `max_vertices` guards combinatorial enumerations that are only sensible at
/// desk scale; `max_steps` caps search-tree nodes across backtracking
/// searches. Both default to values comfortable for graphs up to roughly
/// twenty vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: MAX_VERTICES,
            max_steps: 50_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_vertices: MAX_VERTICES,
            max_steps: u64::MAX,
        }
    }

    /// A budget with a custom step cap and the default vertex guard.
    pub fn with_steps(max_steps: u64) -> Self {
        Budget {
            max_steps,
            ..Budget::default()
        }
    }
}

/// Step counter threaded through backtracking searches.
#[derive(Debug)]
pub(crate) struct Stepper {
    steps: u64,
    limit: u64,
}

impl Stepper {
    pub(crate) fn new(budget: Budget) -> Self {
        Stepper {
            steps: 0,
            limit: budget.max_steps,
        }
    }

    /// Count one search node; errors once the budget is exhausted.
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limit {
            Err(Error::BudgetExceeded)
        } else {
            Ok(())
        }
    }

    /// Count `k` nodes at once (used before materializing a candidate space
    /// whose size is known up front).
    pub(crate) fn charge(&mut self, k: u64) -> Result<()> {
        self.steps = self.steps.saturating_add(k);
        if self.steps > self.limit {
            Err(Error::BudgetExceeded)
        } else {
            Ok(())
        }
    }
}
