//! Exact arithmetic for polytope numbers.
//!
//! A polytope number P(n) counts the lattice-like points that an
//! `n`-fold layered copy of a polytope P carries, generalizing the
//! classical polygonal and pyramidal numbers. This crate constructs
//! polytopes combinatorially (simplexes, cross polytopes, cubes,
//! hypersimplexes, pyramids, bipyramids, products), equips them with
//! pointed triangulations induced by a generic linear functional, and
//! computes P(n) and the interior variant P♯(n) three independent ways:
//!
//! * a face recurrence over the face lattice,
//! * a vertex description (sums along weakly decreasing face chains),
//! * a geometric description (unions of simplex grids over a
//!   triangulation).
//!
//! On top of the sequences it extracts the coefficients of four
//! decomposition theorems that write P(n) against simplex numbers, each
//! by combinatorial counting and (where a closed form exists) by an
//! explicit inverse-matrix solve, and cross-validates everything against
//! classical combinatorics: Eulerian numbers, Stirling numbers, Narayana
//! numbers, MacMahon's box formula, lattice path and standard Young
//! tableau counts.
//!
//! All arithmetic is exact: coordinates are `Ratio<i128>` rationals and
//! every count is an `i128`. Overflow checks stay on in release builds,
//! so a result is either exact or a panic, never silently wrong.

pub mod budget;
pub mod decompose;
pub mod export;
pub mod expr;
pub mod shelling;
pub mod hull;
pub mod identities;
pub mod numbers;
pub mod lattice;
pub mod linalg;
pub mod moebius;
pub mod rat;
pub mod triangulate;
pub mod verify;

pub use budget::Budget;
pub use expr::PolytopeExpr;
pub use lattice::{Face, Polytope};
pub use numbers::NumberContext;
pub use triangulate::{ApexAssignment, GenericFunctional, PointedTriangulation};

/// Errors shared by the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("degenerate apex chain: {0}")]
    DegenerateChain(String),
    #[error("shelling search exhausted: {0}")]
    SearchExhausted(String),
    #[error("input not usable by the hull oracle: {0}")]
    OracleInput(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Inconsistent(format!("serialization: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
