//! Sweeps the Jacobi identity over every generator triple of a window.
//!
//! Pass `--window N` to change the bound on doubled degrees (default 10).

use svlie::prelude::*;

fn main() {
    let n = std::env::args()
        .skip_while(|a| a != "--window")
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let w = Window::symmetric(n);
    for s in [Sector::Zero, Sector::Half] {
        for lambda in [q(-2), q(-1), q(0), qf(3, 5), q(4)] {
            for central in [true, false] {
                let p = AlgebraParams::new(s, lambda.clone(), central);
                let report = check_jacobi(&p, &w);
                println!(
                    "{:<40} {:>6} triples  {}",
                    p.to_string(),
                    report.triples_checked,
                    if report.passed() { "ok" } else { "VIOLATED" }
                );
            }
        }
    }
}
