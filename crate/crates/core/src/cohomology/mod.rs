//! First cohomology `H¹ = Der / Inn` on finite degree windows, and the
//! window-checkable structural statements built on it.
//!
//! # Truncation
//!
//! An outer window `[-N, N]` carries the generators whose values are unknown.
//! The value at a generator `g` is expanded over target coordinates of degree
//! `deg g + α` whose legs have `|dd| ≤ |dd(g)| + B` (the support slack `B`,
//! default `N/2`). The derivation identity is imposed at every coordinate for
//! every generator pair `g < h` with `dd(g) + dd(h)` in the window, so no
//! equation is ever cut. Solutions are then restricted to the interior
//! `[-N/2, N/2]`, and the inner derivations of vectors with legs `|dd| ≤ B`
//! are restricted the same way. `dim_h1` is the dimension of the restricted
//! solution space modulo the restricted inner space.
//!
//! Bounding leg support is what keeps formal infinite sums (which satisfy
//! every windowed equation but are not elements of the module) out of the
//! solution space.

mod checks;
mod system;

pub use checks::{
    case_rows, case_table_regression, skew_preserving_witness, verify_center_tensor_identity,
    verify_invariants_are_central, verify_skew_image_lemma, CaseRow, CenterTensorReport,
    InvariantsReport, SkewImageReport, Verdict, CASE_ROWS,
};
pub use system::{
    assemble, solve_h1, CaseDescriptor, CohomologyReport, Coord, Equation, LinearSystem, Module,
    SolverConfig,
};
