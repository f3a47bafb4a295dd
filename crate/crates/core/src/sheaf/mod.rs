//! Representations of the sheaves the library computes with, and constructions on them.

mod expr;
mod koszul;
mod matrix;
mod monad;
mod split;
mod window;

pub use expr::{pullback_expand, pullback_shifts, Leaf, Restriction, SheafExpr, SheafNode};
pub use koszul::koszul_complex;
pub use matrix::GradedMatrix;
pub use monad::{validate_monad, Certification, Monad, ValidityReport};
pub use split::SplitBundle;
pub use window::{certify_cokernel_vanishes, complete_intersection_cap, Window};
