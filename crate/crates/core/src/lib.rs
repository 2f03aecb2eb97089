//! Table algebras and C-algebras given by structure constants: axiom checks,
//! character tables and standard multiplicities, closed subsets and quotients,
//! duality for commutative algebras, and association schemes.
//!
//! Everything numeric is generic over [`Scalar`], implemented for exact
//! [`Rational`] and floating [`C64`].
//!
//! ```
//! use tablealg::{character_table, fixtures, ChartabOptions};
//!
//! let t = fixtures::rank_three_not_in_s();
//! let (ct, _) = character_table(&t, ChartabOptions::default()).unwrap();
//! assert_eq!(ct.zeta[0], tablealg::int(1));
//! ```

pub mod algebra;
pub mod chartab;
pub mod closed;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod linalg;
pub mod scalar;
pub mod scheme;

pub use algebra::{
    AlgebraElement, Axiom, BasisIndex, StructureConstantTable, TableBuilder, ValidationReport, Violation,
};
pub use chartab::{
    character_table, characters_auto, check_standard_condition, standard_trace, CharacterTable, Characters,
    ChartabOptions, IdempotentSet, Mode,
};
pub use closed::{closure, enumerate_closed_subsets, quotient, ClosedSubset, QuotientAlgebra};
pub use duality::{dual_algebra, eigenmatrices, DualAlgebra, EigenmatrixPair};
pub use error::{Error, Result};
pub use format::{parse_scheme, parse_tba, write_scheme, write_tba};
pub use linalg::Matrix;
pub use scalar::{int, rational, Rational, Scalar, C64, DEFAULT_TOL, INTEGRALITY_TOL};
pub use scheme::{scheme_to_algebra, MatrixRepresentation, SchemeRelations};
