//! Exact equivariant Burnside-group computations for surfaces with a cyclic group action.
//!
//! * [`chars`]: cyclic groups, characters, faithful character labels.
//! * [`symbol`], [`presentation`]: symbols, the vanishing and blow-up relations, and the
//!   quotient of the rational sector computed through [`smith`].
//! * [`toric`], [`class`]: smooth toric surface fans with a torsion-translation action and
//!   their classes.
//! * [`ledger`]: exceptional-divisor invariants `c`, `C_G` and `C_orb` of birational maps.
//! * [`scenario`], [`verify`], [`random`]: worked examples and seeded property harnesses.
//!
//! Matrices, Smith forms and presentations are generic over the integer scalar
//! ([`scalar::IntScalar`]); the aliases below fix it to arbitrary precision.

pub mod chars;
pub mod class;
pub mod error;
pub mod formal;
pub mod ledger;
pub mod matrix;
pub mod oracle;
pub mod presentation;
pub mod random;
pub mod scenario;
pub mod scalar;
pub mod smith;
pub mod symbol;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use symbol::SymbolSum;

pub type Int = num_bigint::BigInt;
pub type IntMatrix = matrix::Matrix<Int>;
pub type IntSparseMatrix = matrix::SparseMatrix<Int>;
pub type IntSmithForm = smith::SmithForm<Int>;
pub type QuotientPresentation = presentation::Presentation<Int>;
pub type QuotientReduction = presentation::Reduction<Int>;
