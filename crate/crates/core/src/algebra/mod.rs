//! The graded Lie algebras `L^s_λ`: basis indexing, the bracket, and
//! structural checks (Jacobi, center).

mod basis;
mod bracket;
mod element;
mod structure;

pub use basis::{AlgebraParams, BasisIndex, HalfInt, Kind, Sector, Window};
pub use bracket::{bracket, bracket_basis, BracketRule};
pub use element::{degree_of, Degree, Element};
pub use structure::{center_in_window, check_jacobi, check_jacobi_with, JacobiReport, JacobiViolation};
