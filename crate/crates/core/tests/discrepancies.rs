//! Pinned facts behind the rows where solver counts differ from the listed
//! derivation families. Each test states the identity that explains the gap.

use svlie::cohomology::assemble;
use svlie::derivation::{Family, Named};
use svlie::linalg::Echelon;
use svlie::prelude::*;

fn minus_one(s: Sector, central: bool) -> AlgebraParams {
    AlgebraParams::new(s, q(-1), central)
}

/// `Y_n ↦ nM_n` at `(0, −1)` is `x ↦ [Y_0, x]`, hence inner.
#[test]
fn y_to_nm_is_bracket_with_y0() {
    for central in [true, false] {
        let p = minus_one(Sector::Zero, central);
        let w = Window::symmetric(16);
        let mut sum = Named::YToNM.table(&p, &w).unwrap();
        let ad = inner(&Value::Element(Element::basis(BasisIndex::y(0))), &p, &w).unwrap();
        sum.add_scaled(&ad, &q(1));
        assert!(sum.is_zero(), "left over: {:?}", sum.values);
    }
}

/// `L_n ↦ −sgn(n) Σ_{0<a<n or n<a<0} a(n−a) M_a ⊗ M_{n−a}`, zero elsewhere.
fn half_sum(p: &AlgebraParams, w: &Window) -> DerivationTable {
    let mut table = DerivationTable::zero(Target::TensorSquare, HalfInt(0), *w);
    for g in w.generators(p) {
        if g.kind != Kind::L {
            continue;
        }
        let n = g.dd / 2;
        let mut t = Tensor2::zero();
        let (lo, hi) = if n > 0 { (1, n - 1) } else { (n + 1, -1) };
        for a in lo..=hi {
            let c = -i64::from(n.signum()) * i64::from(a) * i64::from(n - a);
            t.add_term([BasisIndex::m(a), BasisIndex::m(n - a)], q(c));
        }
        table.set(g, Value::Tensor2(t));
    }
    table
}

#[test]
fn half_sum_is_a_derivation_at_minus_one() {
    for s in [Sector::Zero, Sector::Half] {
        for central in [true, false] {
            let p = minus_one(s, central);
            let report = is_derivation(&half_sum(&p, &Window::symmetric(20)), &p).unwrap();
            assert!(report.passed(), "{p}: {:?}", report.violations.first());
        }
    }
}

#[test]
fn flipping_the_sign_for_negative_degrees_breaks_it() {
    let p = minus_one(Sector::Zero, true);
    let w = Window::symmetric(16);
    let mut d = half_sum(&p, &w);
    for (g, v) in d.values.iter_mut() {
        if g.dd < 0 {
            if let Value::Tensor2(t) = v {
                *t = t.scale(&q(-1));
            }
        }
    }
    assert!(!is_derivation(&d, &p).unwrap().passed());
}

/// The half-sum class is not inner on the window, and together with the
/// inner derivations and the catalog family it spans every solution.
#[test]
fn half_sum_accounts_for_the_extra_tensor_class() {
    let cfg = SolverConfig::new(16);
    for s in [Sector::Zero, Sector::Half] {
        let p = minus_one(s, true);
        let sys = assemble(&p, Module::TensorSquare, HalfInt(0), &cfg).unwrap();
        let mut span = Echelon::new();
        for row in sys.inner_interior_rows().unwrap() {
            span.insert(row);
        }
        let inner_rank = span.rank();
        let family = Family::for_params(&p).unwrap();
        for (_, table) in family.basis_tables(&p, Target::TensorSquare, &cfg.window).unwrap() {
            span.insert(sys.interior_row(&table).unwrap());
        }
        let extra = sys.interior_row(&half_sum(&p, &cfg.window)).unwrap();
        assert!(!span.contains(&extra), "{p}: half-sum lies in inner + catalog");
        span.insert(extra);

        let report = solve_h1(&p, Module::TensorSquare, HalfInt(0), &cfg).unwrap();
        assert_eq!(report.dim_inn, inner_rank);
        assert_eq!(span.rank(), report.dim_der, "{p}");
    }
}

#[test]
fn certificates_are_derivations() {
    let cfg = SolverConfig::new(12).with_certificates();
    let cases = [
        (Sector::Half, q(-1), Module::Algebra),
        (Sector::Zero, q(0), Module::Algebra),
        (Sector::Half, q(-1), Module::TensorSquare),
        (Sector::Zero, q(-2), Module::TensorSquare),
    ];
    for (s, lambda, module) in cases {
        let p = AlgebraParams::new(s, lambda, true);
        let report = solve_h1(&p, module, HalfInt(0), &cfg).unwrap();
        assert_eq!(report.certificates.len(), report.dim_h1);
        for cert in &report.certificates {
            let check = is_derivation(cert, &p).unwrap();
            assert!(check.passed(), "{p} {module:?}: {:?}", check.violations.first());
        }
    }
}

/// Degree-zero derivations into the tensor square send `L_0` to an invariant,
/// and on these rows every invariant has central legs.
#[test]
fn tensor_certificates_send_l0_to_central_legs() {
    let cfg = SolverConfig::new(12).with_certificates();
    for (s, lambda) in [(Sector::Half, q(-1)), (Sector::Zero, q(0)), (Sector::Zero, q(5))] {
        let p = AlgebraParams::new(s, lambda, true);
        let center: Vec<BasisIndex> = center_in_window(&p, &cfg.window).iter().flat_map(|z| z.support().collect::<Vec<_>>()).collect();
        let report = solve_h1(&p, Module::TensorSquare, HalfInt(0), &cfg).unwrap();
        for cert in &report.certificates {
            if let Value::Tensor2(t) = cert.value(BasisIndex::l(0)) {
                for leg in t.legs() {
                    assert!(center.contains(&leg), "{p}: D(L_0) has non-central leg {leg}");
                }
            }
        }
    }
}
