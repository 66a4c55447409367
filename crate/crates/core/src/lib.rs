//! Exact-arithmetic workbench for the deformative Schrödinger–Virasoro Lie
//! algebras `L^s_λ`.
//!
//! The algebra has basis `{L_n, M_n, Y_{s+n}, c}` with `s ∈ {0, 1/2}` and a
//! rational deformation parameter `λ`. Degrees are stored doubled so the
//! integer and half-integer gradings share one representation.
//!
//! Everything is computed over the rationals: brackets, tensor actions,
//! Yang–Baxter obstructions, derivation tables and first-cohomology
//! dimensions on finite degree windows.
//!
//! ```
//! use svlie::prelude::*;
//!
//! let p = AlgebraParams::new(Sector::Half, q(-1), true);
//! let x = Element::basis(BasisIndex::l(2));
//! let y = Element::basis(BasisIndex::l(-2));
//! let z = bracket(&x, &y, &p).unwrap();
//! assert_eq!(z.to_string(), "-4*L[0] - 1/2*c");
//! ```

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod derivation;
pub mod error;
pub mod linalg;
pub mod literal;
pub mod rational;
pub mod suite;
pub mod tensor;

pub use error::{Result, SvlieError};

pub mod prelude {
    pub use crate::algebra::{
        bracket, center_in_window, check_jacobi, degree_of, AlgebraParams, BasisIndex, Degree,
        Element, HalfInt, Kind, Sector, Window,
    };
    pub use crate::cohomology::{solve_h1, CohomologyReport, Module, SolverConfig};
    pub use crate::derivation::{
        catalog, inner, is_derivation, CatalogParams, DerivationTable, Target, Value,
    };
    pub use crate::literal::{parse_element, parse_tensor2};
    pub use crate::rational::{q, qf, Rational};
    pub use crate::tensor::{
        check_cybe, check_mybe, coboundary, cyclic, diag_action, diag_action3, twist, ybe_c,
        Tensor2, Tensor3,
    };
    pub use crate::{Result, SvlieError};
}
