//! Exact computer algebra for 3-Bihom-Lie superalgebras over the rationals.
//!
//! The crate provides the algebraic objects (graded spaces, even structure
//! maps, sparse bracket tensors), exhaustive axiom checkers that certify each
//! construction on concrete inputs, and the constructions themselves: Yau
//! twists, direct sums, tensor products with totally associative factors,
//! semidirect products, `T_θ`- and `T*_θ`-extensions, derivation spaces, and
//! derived/central series. All arithmetic is exact; no floating point exists
//! anywhere in the crate.
//!
//! ```
//! use bihomlie::catalog;
//! use bihomlie::quadratic::{reconstruct_tstar, tstar_extension};
//! use bihomlie::rep::CocycleTensor;
//! use bihomlie::{Subspace, Vector};
//!
//! // The nilpotent algebra [e1,e2,e3] = e4 verifies, and its T*-extension
//! // by the zero cocycle reconstructs from the embedded dual copy.
//! let g = catalog::n4();
//! assert!(g.verify().overall());
//!
//! let theta = CocycleTensor::zero(&g.space, &g.space.dual());
//! let ext = tstar_extension(&g, &theta).unwrap();
//! let dual_copy = Subspace::from_vectors(
//!     8,
//!     &(4..8).map(|i| Vector::unit(8, i)).collect::<Vec<_>>(),
//! )
//! .unwrap();
//! let rec = reconstruct_tstar(&ext.quadratic, &dual_copy).unwrap();
//! assert!(rec.report.overall());
//! assert_eq!(rec.quotient.bracket, g.bracket);
//! ```

pub mod assoc3;
pub mod bihom2;
pub mod bracket;
pub mod catalog;
pub mod derivation;
pub mod format;
pub mod graded;
pub mod linalg;
pub mod quadratic;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod series;
pub mod sweep;
pub mod threebihom;

pub use bihom2::{osp12_family, yau_twist2, BihomLieSuper2};
pub use bracket::{BiBracket, TriBracket};
pub use graded::{GradedSpace, Subspace, Vector};
pub use linalg::{solve_linear, EvenMap, Matrix, ParityMap, SolveOutcome};
pub use report::{Check, Status, VerificationReport, Witness};
pub use scalar::Scalar;
pub use threebihom::ThreeBihomLieSuper;

use thiserror::Error as ThisError;

/// Errors across the crate: malformed inputs, violated preconditions, and
/// constructions whose certified postconditions failed to re-verify.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cannot parse scalar {input:?}: {reason}")]
    ScalarParse { input: String, reason: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular map: {0}")]
    SingularMap(String),

    #[error("parity violation in {what}: {detail}")]
    ParityViolation { what: String, detail: String },

    #[error("vector is not homogeneous")]
    NotHomogeneous,

    #[error("{map} is not a bracket homomorphism; witness tuple {witness:?}")]
    NotAHomomorphism { map: String, witness: Vec<usize> },

    #[error("maps do not commute: {0}")]
    MapsDoNotCommute(String),

    #[error("precondition `{gate}` failed")]
    FailedPrecondition {
        gate: String,
        report: Option<VerificationReport>,
    },

    #[error("fixed-point hypothesis failed: {0}")]
    NotFixedPoint(String),

    #[error("parameter must be nonzero: {0}")]
    ZeroParameter(String),

    #[error("symmetry condition fails at triple {witness:?}")]
    SymmetryConditionFails { witness: Vec<usize> },

    #[error("associative tensor factor has a nonzero odd part")]
    OddAssociativeFactor,

    #[error("cocycle condition `{condition}` fails")]
    CocycleFails {
        condition: String,
        report: VerificationReport,
    },

    #[error("intertwining equation `{0}` fails")]
    IntertwiningFails(String),

    #[error("no dual basis: the form is degenerate on the pairing")]
    NoDualBasis,

    #[error("parity obstruction: subspace is not graded")]
    ParityObstruction,

    #[error("certified construction failed to re-verify: {what}")]
    ReportedMismatch {
        what: String,
        report: VerificationReport,
    },

    #[error("invalid field `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Exit-code class for the CLI: input errors versus mathematical
    /// failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::ScalarParse { .. }
                | Error::Validation { .. }
                | Error::Parse(_)
        )
    }
}
