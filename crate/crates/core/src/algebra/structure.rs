use std::collections::BTreeMap;

use rayon::prelude::*;

use super::basis::{AlgebraParams, BasisIndex, Kind, Window};
use super::bracket::BracketRule;
use super::element::Element;
use crate::linalg;
use crate::rational::Rational;

/// A generator triple whose Jacobiator is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [BasisIndex; 3],
    pub jacobiator: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub window: Window,
    pub triples_checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn bracket_with<R: BracketRule + ?Sized>(rule: &R, x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&rule.bracket_generators(*a, *b), &(ca * cb));
        }
    }
    out
}

/// Jacobi identity over every generator triple `g < h < k` of `w` whose
/// pairwise and total degree sums stay in `w`.
pub fn check_jacobi(p: &AlgebraParams, w: &Window) -> JacobiReport {
    check_jacobi_with(p, w)
}

/// As [`check_jacobi`], for an arbitrary bracket table.
pub fn check_jacobi_with<R: BracketRule + ?Sized>(rule: &R, w: &Window) -> JacobiReport {
    let gens = rule.generators(w);
    let per_first: Vec<(usize, Vec<JacobiViolation>)> = (0..gens.len())
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            let mut bad = Vec::new();
            let g = gens[i];
            for j in i + 1..gens.len() {
                let h = gens[j];
                if !w.contains(g.dd + h.dd) {
                    continue;
                }
                let gh = rule.bracket_generators(g, h);
                for &k in &gens[j + 1..] {
                    if !w.contains(g.dd + k.dd) || !w.contains(h.dd + k.dd) || !w.contains(g.dd + h.dd + k.dd) {
                        continue;
                    }
                    checked += 1;
                    let kx = Element::basis(k);
                    let gx = Element::basis(g);
                    let mut jac = bracket_with(rule, &gh, &kx);
                    jac += &bracket_with(rule, &rule.bracket_generators(h, k), &gx);
                    jac += &bracket_with(rule, &rule.bracket_generators(k, g), &Element::basis(h));
                    if !jac.is_zero() {
                        bad.push(JacobiViolation { triple: [g, h, k], jacobiator: jac });
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let mut report = JacobiReport { window: *w, triples_checked: 0, violations: Vec::new() };
    for (checked, bad) in per_first {
        report.triples_checked += checked;
        report.violations.extend(bad);
    }
    report
}

/// Basis of the elements supported in `w` that commute with every generator of `w`.
///
/// The center is graded, so each degree is solved separately; `c` (when
/// present) comes first, then the remaining vectors by degree.
pub fn center_in_window(p: &AlgebraParams, w: &Window) -> Vec<Element> {
    let gens = w.generators(p);
    let mut out = Vec::new();
    for dd in w.lo..=w.hi {
        let basis = p.basis_at(dd);
        if basis.is_empty() {
            continue;
        }
        // One equation per (generator, output index): sum_i x_i [g, b_i] = 0.
        let mut eqs: BTreeMap<(BasisIndex, BasisIndex), Vec<(usize, Rational)>> = BTreeMap::new();
        for &g in &gens {
            for (i, &b) in basis.iter().enumerate() {
                for (k, coeff) in p.bracket_generators(g, b).iter() {
                    eqs.entry((g, *k)).or_default().push((i, coeff.clone()));
                }
            }
        }
        let rows: Vec<_> = eqs.into_values().collect();
        for v in linalg::kernel_basis(&rows, basis.len()) {
            out.push(Element::from_terms(v.into_iter().map(|(i, c)| (basis[i], c))));
        }
    }
    out.sort_by_key(|e| {
        let lead = e.support().next();
        (lead.map(|b| b.kind != Kind::C).unwrap_or(true), lead.map(|b| b.dd), lead.map(|b| b.kind))
    });
    out
}
