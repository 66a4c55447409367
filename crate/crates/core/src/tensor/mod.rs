//! Tensor powers of the algebra under the diagonal adjoint action, the
//! coboundary cobracket `Δ_r`, and Yang–Baxter obstructions.

mod ops;
mod types;

pub use ops::{
    check_cojacobi_identity, check_compatibility, check_cybe, check_mybe, coboundary, cyclic,
    diag_action, diag_action3, diag_action_n, is_skew, mybe_witness, skew_part_membership, twist,
    ybe_c, CojacobiReport,
};
pub use types::{Tensor, Tensor2, Tensor3};
