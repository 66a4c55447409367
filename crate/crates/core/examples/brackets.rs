//! Brackets of element literals in a few members of the family, and the
//! center each one has on a small window.
//!
//! ```bash
//! cargo run --example brackets
//! ```

use svlie::prelude::*;

fn show(p: &AlgebraParams, x: &str, y: &str) -> Result<()> {
    let (a, b) = (parse_element(x)?, parse_element(y)?);
    println!("  [{a}, {b}] = {}", bracket(&a, &b, p)?);
    Ok(())
}

fn main() -> Result<()> {
    let rows = [
        AlgebraParams::new(Sector::Half, q(-1), true),
        AlgebraParams::new(Sector::Zero, q(0), true),
        AlgebraParams::new(Sector::Zero, qf(-5, 3), false),
    ];
    for p in &rows {
        println!("{p}");
        show(p, "L[2]", "L[-2]")?;
        show(p, "L[1]", "M[3] - 2*M[-1]")?;
        if p.s == Sector::Half {
            show(p, "Y[1/2]", "Y[3/2]")?;
            show(p, "L[-1]", "Y[5/2]")?;
        } else {
            show(p, "Y[1]", "Y[-1]")?;
            show(p, "L[2] + 1/3*L[0]", "Y[2]")?;
        }
        let center: Vec<String> = center_in_window(p, &Window::symmetric(12)).iter().map(|z| z.to_string()).collect();
        println!("  center on |dd| <= 12: {}", if center.is_empty() { "0".into() } else { center.join(", ") });
    }
    Ok(())
}
