//! Structural checks on finite windows: invariants of L and L (x) L, the
//! skew-image statement, and the center-tensor cohomology identity.

use svlie::cohomology::{verify_center_tensor_identity, verify_invariants_are_central, verify_skew_image_lemma};
use svlie::prelude::*;

fn main() -> Result<()> {
    let w = Window::symmetric(8);
    for (s, lambda, central) in [(Sector::Zero, q(0), true), (Sector::Half, q(-2), true), (Sector::Zero, q(5), false)] {
        let p = AlgebraParams::new(s, lambda, central);
        println!("{p}");
        for power in [1, 2] {
            let inv = verify_invariants_are_central(&p, power, &w)?;
            println!("  invariants in power {power}: {} found, {} from the center, match = {}", inv.kernel.len(), inv.expected.len(), inv.passed);
        }
        let skew = verify_skew_image_lemma(&p, &w)?;
        println!("  skew image on {} degrees: {}", skew.dims.len(), if skew.passed() { "skew plus central" } else { "fails" });
    }

    let p = AlgebraParams::new(Sector::Zero, q(-2), true);
    let report = verify_center_tensor_identity(&p, &SolverConfig::new(12))?;
    println!("\ncenter-tensor identity for {p}: {report:?}");
    Ok(())
}
