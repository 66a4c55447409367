//! Derivations `L → L` and `L → L⊗L`: tables on a window, the derivation
//! identity, inner derivations, and the named degree-zero catalog.

mod catalog;
mod table;

pub use catalog::{catalog, CatalogParams, Family, Named, Role, Side};
pub use table::{
    homogeneous_component, inner, is_derivation, DerivationReport, DerivationTable,
    DerivationViolation, Target, Value,
};
