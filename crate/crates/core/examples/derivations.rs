//! Degree-zero derivation families: build each one, check the derivation
//! identity, and show that a formula moved to the wrong row breaks.

use svlie::derivation::{Family, Named, Role, Side};
use svlie::prelude::*;

fn main() -> Result<()> {
    let w = Window::symmetric(12);

    for (s, lambda) in svlie::cohomology::case_rows() {
        let p = AlgebraParams::new(s, lambda, true);
        let family = Family::for_params(&p)?;
        let named: Vec<&str> = Named::for_params(&p)?.iter().map(|n| n.name()).collect();
        let mut ok = true;
        for target in [Target::Algebra, Target::TensorSquare] {
            for (_, table) in family.basis_tables(&p, target, &w)? {
                ok &= is_derivation(&table, &p)?.passed();
            }
        }
        println!("{:<36} {:<7} roles {:?}  named [{}]  {}", p.to_string(), family.name(), family.roles(), named.join(", "), if ok { "all derivations" } else { "FAILED" });
    }

    // The L_n -> n^3 M_n formula belongs to λ = -2; at λ = 3 it is not a derivation.
    let p = AlgebraParams::new(Sector::Half, q(3), true);
    let wrong = Family::Sigma2.table_unchecked(&p, Target::Algebra, &CatalogParams::algebra(Side::unit(Role::LScale)), &w);
    let report = is_derivation(&wrong, &p)?;
    let v = &report.violations[0];
    println!("\nsigma2 formula on {p}: {} of {} pairs fail, first at ({}, {}) with residual {}", report.violations.len(), report.pairs_checked, v.pair.0, v.pair.1, v.residual);

    // Inner derivations g -> [g, v] pass for any v.
    let v = Value::Element(parse_element("Y[1/2]")?);
    println!("x -> [x, Y[1/2]] is a derivation: {}", is_derivation(&inner(&v, &p, &w)?, &p)?.passed());

    // Tables round-trip through JSON, the format `svlie check-derivation` reads.
    let table = Named::LToN3M.table(&AlgebraParams::new(Sector::Zero, q(-2), true), &Window::symmetric(4))?;
    println!("\n{}", serde_json::to_string_pretty(&table.to_json()).unwrap());
    Ok(())
}
