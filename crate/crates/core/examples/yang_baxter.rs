//! Classical and modified Yang-Baxter checks for candidate r-matrices,
//! together with the cobrackets they induce.
//!
//! ```bash
//! cargo run --example yang_baxter
//! ```

use svlie::tensor::{check_cojacobi_identity, is_skew};
use svlie::prelude::*;

fn main() -> Result<()> {
    let p = AlgebraParams::new(Sector::Zero, q(5), true);
    let w = Window::symmetric(8);

    let candidates = [
        // L_0 and L_1 span a two-dimensional subalgebra: a solution.
        "L[0] (x) L[1] - L[1] (x) L[0]",
        // [L_0, M_2] = 2M_2, so L_0 and M_2 span a subalgebra as well.
        "L[0] (x) M[2] - M[2] (x) L[0]",
        "L[1] (x) L[-1] - L[-1] (x) L[1]",
    ];
    for text in candidates {
        let r = parse_tensor2(text)?;
        assert!(is_skew(&r));
        let c = ybe_c(&r, &p)?;
        println!("r = {r}");
        println!("  CYBE: {}", if c.is_zero() { "satisfied".to_string() } else { format!("c(r) = {c}") });
        println!("  MYBE on |dd| <= 8: {}", if check_mybe(&r, &p, &w)? { "satisfied" } else { "violated" });

        let x = Element::basis(BasisIndex::l(2));
        println!("  cobracket of L[2]: {}", coboundary(&r, &x, &p)?);
        let cj = check_cojacobi_identity(&r, &x, &p)?;
        println!("  co-Jacobi against L[2].c(r): {}", if cj.holds() { "holds" } else { "fails" });
    }
    Ok(())
}
