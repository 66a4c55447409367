//! Acceptance run: one PASS/FAIL line per numbered criterion, then a single
//! assertion over all of them. Expected numbers are written out here or
//! recomputed with the oracle in `common`, never read back from the library.

mod common;

use std::process::Command;
use std::time::Instant;

use proptest::test_runner::{Config, TestRunner};
use svlie::cohomology::{
    case_table_regression, verify_center_tensor_identity, verify_invariants_are_central, verify_skew_image_lemma,
    Verdict,
};
use svlie::derivation::{Family, Named, Role, Side};
use svlie::prelude::*;
use svlie::tensor::check_cojacobi_identity;

use common::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn half(l: i64, central: bool) -> AlgebraParams {
    AlgebraParams::new(Sector::Half, q(l), central)
}

fn zero(l: Rational, central: bool) -> AlgebraParams {
    AlgebraParams::new(Sector::Zero, l, central)
}

/// The eight rows with a degree-zero family, generic λ taken as 3 and 5.
fn case_rows() -> Vec<(Sector, Rational)> {
    vec![
        (Sector::Half, q(-1)),
        (Sector::Half, q(-2)),
        (Sector::Half, q(3)),
        (Sector::Zero, q(0)),
        (Sector::Zero, q(-1)),
        (Sector::Zero, q(-2)),
        (Sector::Zero, q(1)),
        (Sector::Zero, q(5)),
    ]
}

fn bracket_table() -> Outcome {
    let p = half(-1, true);
    let e = |i| Element::basis(i);
    let cases = [
        (BasisIndex::l(1), BasisIndex::l(-1), "-2*L[0]"),
        (BasisIndex::l(2), BasisIndex::l(-2), "-4*L[0] - 1/2*c"),
        (BasisIndex::y(1), BasisIndex::y(-1), "-M[0]"),
        (BasisIndex::l(1), BasisIndex::m(2), "3*M[3]"),
    ];
    let mut bad = Vec::new();
    for (a, b, want) in cases {
        let got = bracket(&e(a), &e(b), &p).unwrap();
        if got != parse_element(want).unwrap() || got != oracle_bracket_elements(&e(a), &e(b), &p) {
            bad.push(format!("[{a},{b}] = {got}"));
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { "4 hand cases exact".into() } else { bad.join("; ") })
}

fn jacobi_suite() -> Outcome {
    let lambdas = [
        (Sector::Half, q(-1)),
        (Sector::Half, q(-2)),
        (Sector::Half, q(3)),
        (Sector::Zero, q(-2)),
        (Sector::Zero, q(-1)),
        (Sector::Zero, q(0)),
        (Sector::Zero, q(1)),
        (Sector::Zero, q(5)),
        (Sector::Zero, qf(-5, 3)),
    ];
    let w = Window::symmetric(12);
    let mut triples = 0;
    for (s, l) in lambdas {
        for central in [true, false] {
            let p = AlgebraParams::new(s, l.clone(), central);
            // The library bracket must agree with the oracle on every in-window pair.
            let gens = w.generators(&p);
            for &a in &gens {
                for &b in &gens {
                    let lib = bracket(&Element::basis(a), &Element::basis(b), &p).unwrap();
                    let orc = oracle_bracket_elements(&Element::basis(a), &Element::basis(b), &p);
                    if lib != orc {
                        return ok(false, format!("{p}: [{a},{b}] = {lib}, oracle {orc}"));
                    }
                }
            }
            let r = check_jacobi(&p, &w);
            triples += r.triples_checked;
            if !r.passed() {
                return ok(false, format!("{p}: {} violations", r.violations.len()));
            }
        }
    }
    ok(true, format!("18 algebras, {triples} triples, no violations"))
}

fn yang_baxter() -> Outcome {
    let r = skew(BasisIndex::l(0), BasisIndex::l(1));
    let control = skew(BasisIndex::l(-1), BasisIndex::l(2));
    let w = Window::symmetric(8);
    for p in [half(-1, true), zero(q(5), true), zero(q(0), false)] {
        if !ybe_c(&r, &p).unwrap().is_zero() || !oracle_ybe(&r, &p).is_zero() {
            return ok(false, format!("c(r) != 0 for {p}"));
        }
        let c = ybe_c(&control, &p).unwrap();
        if c.is_zero() || c != oracle_ybe(&control, &p) {
            return ok(false, format!("control c(r') wrong for {p}"));
        }
        for t in [&r, &control] {
            for g in w.generators(&p) {
                if !check_cojacobi_identity(t, &Element::basis(g), &p).unwrap().holds() {
                    return ok(false, format!("co-Jacobi fails at {g} for {p}"));
                }
            }
        }
    }
    ok(true, "c(r) = 0, c(r') != 0, co-Jacobi identity exact for both on dd in [-8, 8]")
}

/// Independent derivation check through the oracle.
fn oracle_is_derivation(t: &DerivationTable, p: &AlgebraParams) -> bool {
    let gens = t.window.generators(p);
    let as_tensor = |v: &Value| match v {
        Value::Element(e) => Tensor2::from_terms(e.iter().map(|(a, c)| ([*a, BasisIndex::c()], c.clone()))),
        Value::Tensor2(x) => x.clone(),
    };
    let act = |x: BasisIndex, v: &Value| -> Tensor2 {
        match v {
            Value::Element(e) => {
                let b = oracle_bracket_elements(&Element::basis(x), e, p);
                Tensor2::from_terms(b.iter().map(|(a, c)| ([*a, BasisIndex::c()], c.clone())))
            }
            Value::Tensor2(u) => oracle_act2(&Element::basis(x), u, p),
        }
    };
    for (i, &g) in gens.iter().enumerate() {
        for &h in &gens[i + 1..] {
            if !t.window.contains(g.dd + h.dd) {
                continue;
            }
            let mut lhs = Tensor2::zero();
            for (k, c) in oracle_bracket(g, h, p) {
                lhs.add_scaled(&as_tensor(&t.value(k)), &c);
            }
            let rhs = &act(g, &t.value(h)) - &act(h, &t.value(g));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn derivation_catalog() -> Outcome {
    let w = Window::symmetric(16);
    let mut count = 0;
    for (s, l) in case_rows() {
        for central in [true, false] {
            let p = AlgebraParams::new(s, l.clone(), central);
            let family = Family::for_params(&p).unwrap();
            let mut tables = Vec::new();
            for target in [Target::Algebra, Target::TensorSquare] {
                tables.extend(family.basis_tables(&p, target, &w).unwrap());
            }
            for named in Named::for_params(&p).unwrap() {
                tables.push((named.name().into(), named.table(&p, &w).unwrap()));
            }
            for (name, t) in tables {
                count += 1;
                if !is_derivation(&t, &p).unwrap().passed() || !oracle_is_derivation(&t, &p) {
                    return ok(false, format!("{name} is not a derivation of {p}"));
                }
            }
        }
    }
    let alg = |role| CatalogParams::algebra(Side::unit(role));
    let controls = [
        (half(-1, true), Family::Sigma2.table_unchecked(&half(-1, true), Target::Algebra, &alg(Role::LScale), &w)),
        (zero(q(-2), true), Family::Rho2.table_unchecked(&zero(q(-2), true), Target::Algebra, &alg(Role::YToM), &w)),
        (zero(q(5), false), Family::Rho4.table_unchecked(&zero(q(5), false), Target::Algebra, &alg(Role::YToM), &w)),
        (zero(q(-1), true), Named::LToN3M.table_unchecked(&zero(q(-1), true), &w)),
    ];
    for (p, t) in &controls {
        let r = is_derivation(t, p).unwrap();
        if r.passed() || oracle_is_derivation(t, p) {
            return ok(false, format!("a mismatched control passes on {p}"));
        }
    }
    ok(true, format!("{count} tables pass; {} mismatched controls fail with witnesses", controls.len()))
}

fn algebra_h1_table() -> Outcome {
    // s = 1/2 at λ = 0, −1, −2, generic; s = 0 at λ = 0, −1, −2, 1, generic.
    let table = [
        (Sector::Half, q(0), 3),
        (Sector::Half, q(-1), 2),
        (Sector::Half, q(-2), 2),
        (Sector::Half, q(3), 1),
        (Sector::Zero, q(0), 3),
        (Sector::Zero, q(-1), 3),
        (Sector::Zero, q(-2), 2),
        (Sector::Zero, q(1), 2),
        (Sector::Zero, q(5), 1),
        (Sector::Zero, qf(-5, 3), 1),
    ];
    let mut bad = Vec::new();
    for (s, l, want) in table {
        for central in [true, false] {
            let p = AlgebraParams::new(s, l.clone(), central);
            let dims: Vec<usize> = [12, 16, 20]
                .iter()
                .map(|&n| solve_h1(&p, Module::Algebra, HalfInt(0), &SolverConfig::new(n)).unwrap().dim_h1)
                .collect();
            if dims.iter().any(|d| *d != want) {
                bad.push(format!("{p}: {dims:?}, want {want}"));
            }
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { "all rows match at N = 12, 16, 20".into() } else { bad.join("; ") })
}

fn nonzero_degrees() -> Outcome {
    let cfg = SolverConfig::new(16);
    let mut solves = 0;
    for (s, l) in case_rows() {
        for central in [true, false] {
            let p = AlgebraParams::new(s, l.clone(), central);
            for dd in [-4, -3, -2, -1, 1, 2, 3, 4] {
                for module in [Module::Algebra, Module::TensorSquare] {
                    solves += 1;
                    let r = solve_h1(&p, module, HalfInt(dd), &cfg).unwrap();
                    if r.dim_h1 != 0 {
                        return ok(false, format!("{p} {module:?} degree {}: {}", HalfInt(dd), r.dim_h1));
                    }
                }
            }
        }
    }
    ok(true, format!("{solves} solves, all zero"))
}

/// Free scalars of each row's family, counted from its formulas.
fn free_scalars(s: Sector, l: &Rational) -> usize {
    match (s, l) {
        (Sector::Half, l) if *l == q(-1) || *l == q(-2) => 2,
        (Sector::Half, _) => 1,
        (Sector::Zero, l) if *l == q(0) || *l == q(-1) => 3,
        (Sector::Zero, l) if *l == q(-2) || *l == q(1) => 2,
        (Sector::Zero, _) => 1,
    }
}

fn tensor_case_table() -> Outcome {
    let rows = case_table_regression(&case_rows(), &SolverConfig::new(16)).unwrap();
    let mut bad = Vec::new();
    for r in &rows {
        let lambda = svlie::rational::parse_rational(&r.lambda).unwrap();
        let p = AlgebraParams::new(r.s, lambda.clone(), r.central);
        let center = oracle_center(&p, &Window::symmetric(8)).len();
        let want = free_scalars(r.s, &lambda) * 2 * center;
        let origin = r.s == Sector::Zero && lambda == q(0);
        let want_verdict =
            if !r.central && !origin { Verdict::TriangularCoboundary } else { Verdict::NotTriangularCoboundary };
        let verdict = if r.dim_h1 == 0 { Verdict::TriangularCoboundary } else { Verdict::NotTriangularCoboundary };
        if r.dim_h1 != want || verdict != want_verdict {
            bad.push(format!("{p}: {} want {want}, {verdict:?} want {want_verdict:?}", r.dim_h1));
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { format!("{} rows match", rows.len()) } else { bad.join("; ") })
}

fn invariants_and_skew() -> Outcome {
    let w = Window::symmetric(12);
    for p in [zero(q(0), true), half(-2, true), zero(q(5), false)] {
        let center = oracle_center(&p, &w).len();
        for power in [1usize, 2] {
            let r = verify_invariants_are_central(&p, power, &w).unwrap();
            if !r.passed || r.kernel.len() != center.pow(power as u32) {
                return ok(false, format!("{p}: power {power} gives {} invariants", r.kernel.len()));
            }
        }
        let r = verify_skew_image_lemma(&p, &w).unwrap();
        if !r.passed() {
            return ok(false, format!("{p}: skew-image lemma fails in degrees {:?}", r.failures));
        }
    }
    ok(true, "3 rows, powers 1 and 2 and the skew-image lemma")
}

fn center_tensor() -> Outcome {
    let mut details = Vec::new();
    for p in [zero(q(-2), true), half(3, true)] {
        let r = verify_center_tensor_identity(&p, &SolverConfig::new(16)).unwrap();
        details.push(format!("{p}: {} vs {}", r.left, r.right));
        if !r.passed() {
            return ok(false, details.join("; "));
        }
    }
    ok(true, details.join("; "))
}

fn cli_and_round_trip() -> Outcome {
    let status = Command::new(env!("CARGO_BIN_EXE_svlie"))
        .args(["verify-paper", "--window", "16"])
        .env("SVLIE_THREADS", "2")
        .output()
        .expect("binary runs");
    let code = status.status.code();
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let round_trip = runner.run(&with_params(|p| (element(p), tensor2(p))), |(_, (x, t))| {
        let xs = x.to_string();
        let ts = t.to_string();
        proptest::prop_assert_eq!(parse_element(&xs).unwrap().to_string(), xs);
        proptest::prop_assert_eq!(parse_element(&x.to_string()).unwrap(), x);
        proptest::prop_assert_eq!(parse_tensor2(&ts).unwrap(), t);
        Ok(())
    });
    let failing: Vec<String> = String::from_utf8_lossy(&status.stdout)
        .lines()
        .filter(|l| l.starts_with("[FAIL]"))
        .map(|l| l.chars().take(40).collect())
        .collect();
    ok(
        code == Some(0) && round_trip.is_ok(),
        format!("verify-paper exit {code:?} (failing: {}); round trip {}", failing.join(" | "), if round_trip.is_ok() { "ok on 1000 literals" } else { "FAILED" }),
    )
}

#[test]
fn acceptance_criteria() {
    type Criterion = (u8, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (1, "bracket table", bracket_table),
        (2, "Jacobi suite", jacobi_suite),
        (3, "CYBE and co-Jacobi identity", yang_baxter),
        (4, "derivation catalog", derivation_catalog),
        (5, "degree-zero outer derivations of L", algebra_h1_table),
        (6, "nonzero-degree innerness", nonzero_degrees),
        (7, "tensor-square degree-zero table and verdicts", tensor_case_table),
        (8, "invariant tensors and skew-image lemma", invariants_and_skew),
        (9, "center-tensor identity", center_tensor),
        (10, "CLI regression and literal round trip", cli_and_round_trip),
    ];
    let mut failed = Vec::new();
    for (id, title, check) in criteria {
        let start = Instant::now();
        let out = check();
        println!(
            "{} criterion {id:>2}: {title} ({:.1}s): {}",
            if out.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
        if !out.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
