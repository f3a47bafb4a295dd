//! Exact cohomology and regularity of coherent sheaves on weighted projective spaces.
//!
//! Sheaves are direct sums of line bundles `O(d)`, homology sheaves of monads of such sums,
//! and twists and sums of these. Every dimension is computed exactly over `Q`.

pub mod bignum;
pub mod cohomology;
pub mod document;
mod error;
pub mod oracle;
pub mod generation;
pub mod linalg;
pub mod monomials;
pub mod poly;
pub mod regularity;
pub mod sample;
mod settings;
pub mod sheaf;
pub mod verify;
mod weights;

pub use cohomology::{cohom, euler_char, CohomologyTable};
pub use error::{Error, Result};
pub use linalg::RationalMatrix;
pub use poly::Polynomial;
pub use settings::Settings;
pub use sheaf::{GradedMatrix, Monad, SheafExpr, SplitBundle};
pub use weights::Weights;
