//! First cohomology on truncated windows: dimensions, their stability as the
//! window grows, and explicit representatives.
//!
//! ```bash
//! cargo run --release --example cohomology
//! ```

use svlie::prelude::*;

fn main() -> Result<()> {
    println!("degree-0 H^1(L, L) as the window grows:");
    for (s, lambda) in [(Sector::Half, q(-1)), (Sector::Zero, q(0)), (Sector::Zero, q(1)), (Sector::Zero, qf(-5, 3))] {
        let p = AlgebraParams::new(s, lambda, true);
        let dims: Vec<String> = [8, 12, 16]
            .iter()
            .map(|&n| solve_h1(&p, Module::Algebra, HalfInt(0), &SolverConfig::new(n)).map(|r| r.dim_h1.to_string()))
            .collect::<Result<_>>()?;
        println!("  {:<36} N = 8, 12, 16: {}", p.to_string(), dims.join(", "));
    }

    let p = AlgebraParams::new(Sector::Half, q(-1), true);
    let report = solve_h1(&p, Module::Algebra, HalfInt(0), &SolverConfig::new(12).with_certificates())?;
    println!("\n{p}: {} unknowns, {} equations, rank {}", report.unknowns, report.equations, report.rank);
    println!("  dim Der = {}, dim Inn = {}, dim H^1 = {}", report.dim_der, report.dim_inn, report.dim_h1);
    for (i, cert) in report.certificates.iter().enumerate() {
        let shown: Vec<String> = cert.values.iter().take(4).map(|(g, v)| format!("{g} -> {v}")).collect();
        println!("  class {i}: {} ...", shown.join(", "));
    }

    // Nonzero degrees are usually all inner.
    for alpha in [HalfInt(1), HalfInt(-2), HalfInt(4)] {
        let r = solve_h1(&p, Module::Algebra, alpha, &SolverConfig::new(12))?;
        println!("  degree {alpha}: dim H^1 = {}", r.dim_h1);
    }

    // With values in the tensor square, the count decides whether coboundary
    // cobrackets must come from triangular r-matrices.
    let r = solve_h1(&p, Module::TensorSquare, HalfInt(0), &SolverConfig::new(12))?;
    println!("\ndegree-0 H^1(L, L (x) L) for {p}: {}", r.dim_h1);
    Ok(())
}
