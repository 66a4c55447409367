use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{center_in_window, AlgebraParams, BasisIndex, Element, HalfInt, Sector, Window};
use crate::derivation::{DerivationTable, Family, Target, Value};
use crate::error::Result;
use crate::linalg::{kernel_basis, Echelon, Row};
use crate::rational::{fmt_rational, q, qf, Rational};
use crate::tensor::{diag_action, twist, Tensor2};

use super::system::{assemble, solve_h1, Module, SolverConfig};

/// Sparse equations keyed by (generator, target coordinate), each a list of
/// (unknown column, coefficient).
type Equations<K> = BTreeMap<(BasisIndex, K), Vec<(usize, Rational)>>;

/// Vectors over a shared coordinate set, indexed on first sight.
struct Coords<K: Ord + Clone> {
    index: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Coords<K> {
    fn new() -> Self {
        Coords { index: BTreeMap::new() }
    }

    fn id(&mut self, k: K) -> usize {
        let n = self.index.len();
        *self.index.entry(k).or_insert(n)
    }

    fn row<I: IntoIterator<Item = (K, Rational)>>(&mut self, it: I) -> Row {
        let entries: Vec<(usize, Rational)> = it.into_iter().map(|(k, c)| (self.id(k), c)).collect();
        Row::from_rational(entries)
    }
}

fn span_rank(rows: impl IntoIterator<Item = Row>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

fn value_terms(v: &Value) -> Vec<(Vec<BasisIndex>, Rational)> {
    match v {
        Value::Element(e) => e.iter().map(|(a, c)| (vec![*a], c.clone())).collect(),
        Value::Tensor2(t) => t.iter().map(|(k, c)| (k.to_vec(), c.clone())).collect(),
    }
}

/// Result of comparing the invariants of `L^{⊗n}` with `C^{⊗n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantsReport {
    pub power: usize,
    pub window: Window,
    /// Basis of `{v supported in the window : g·v = 0 for every generator g}`.
    pub kernel: Vec<Value>,
    /// `n`-fold products of the center basis.
    pub expected: Vec<Value>,
    pub passed: bool,
}

/// Invariant vectors of the first or second tensor power, solved degree by
/// degree over all vectors with legs in `w`, compared with the span of
/// products of center elements. The action is computed exactly, so no
/// boundary restriction is needed.
pub fn verify_invariants_are_central(p: &AlgebraParams, power: usize, w: &Window) -> Result<InvariantsReport> {
    assert!(power == 1 || power == 2, "only powers 1 and 2 are supported");
    let gens = w.generators(p);
    let center = center_in_window(p, w);
    let per_degree: Vec<Result<Vec<Value>>> = (w.lo..=w.hi)
        .into_par_iter()
        .map(|dd| {
            let basis: Vec<Vec<BasisIndex>> = if power == 1 {
                p.basis_at(dd).into_iter().map(|b| vec![b]).collect()
            } else {
                let mut out = Vec::new();
                for da in w.lo..=w.hi {
                    if !w.contains(dd - da) {
                        continue;
                    }
                    for a in p.basis_at(da) {
                        for b in p.basis_at(dd - da) {
                            out.push(vec![a, b]);
                        }
                    }
                }
                out
            };
            if basis.is_empty() {
                return Ok(Vec::new());
            }
            let mut eqs: Equations<Vec<BasisIndex>> = BTreeMap::new();
            for &g in &gens {
                for (i, legs) in basis.iter().enumerate() {
                    let moved = act_on_legs(g, legs, p);
                    for (k, c) in moved {
                        eqs.entry((g, k)).or_default().push((i, c));
                    }
                }
            }
            let rows: Vec<_> = eqs.into_values().collect();
            Ok(kernel_basis(&rows, basis.len())
                .into_iter()
                .map(|v| legs_to_value(v.into_iter().map(|(i, c)| (basis[i].clone(), c)), power))
                .collect())
        })
        .collect();
    let mut kernel = Vec::new();
    for r in per_degree {
        kernel.extend(r?);
    }
    let expected: Vec<Value> = if power == 1 {
        center.iter().cloned().map(Value::Element).collect()
    } else {
        center
            .iter()
            .flat_map(|a| center.iter().map(move |b| Value::Tensor2(Tensor2::product(a, b))))
            .collect()
    };
    let mut coords: Coords<Vec<BasisIndex>> = Coords::new();
    let k_rows: Vec<Row> = kernel.iter().map(|v| coords.row(value_terms(v))).collect();
    let e_rows: Vec<Row> = expected.iter().map(|v| coords.row(value_terms(v))).collect();
    let rk = span_rank(k_rows.clone());
    let re = span_rank(e_rows.clone());
    let both = span_rank(k_rows.into_iter().chain(e_rows));
    Ok(InvariantsReport { power, window: *w, kernel, expected, passed: rk == re && re == both })
}

fn act_on_legs(g: BasisIndex, legs: &[BasisIndex], p: &AlgebraParams) -> Vec<(Vec<BasisIndex>, Rational)> {
    let mut out = Vec::new();
    for slot in 0..legs.len() {
        for (k, c) in crate::algebra::bracket_basis(g, legs[slot], p) {
            let mut new = legs.to_vec();
            new[slot] = k;
            out.push((new, c));
        }
    }
    out
}

fn legs_to_value<I: IntoIterator<Item = (Vec<BasisIndex>, Rational)>>(terms: I, power: usize) -> Value {
    if power == 1 {
        Value::Element(Element::from_terms(terms.into_iter().map(|(l, c)| (l[0], c))))
    } else {
        Value::Tensor2(Tensor2::from_terms(terms.into_iter().map(|(l, c)| ([l[0], l[1]], c))))
    }
}

/// First generator of `w` whose action on `v` is not skew.
pub fn skew_preserving_witness(v: &Tensor2, p: &AlgebraParams, w: &Window) -> Result<Option<BasisIndex>> {
    for g in w.generators(p) {
        let moved = diag_action(&Element::basis(g), v, p)?;
        if twist(&moved) != -&moved {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewImageReport {
    pub window: Window,
    /// `dim W_d` per doubled degree `d`, where `W_d` is the space of
    /// tensors `v` with `g·v` skew for every generator `g`.
    pub dims: BTreeMap<i32, usize>,
    /// Degrees where `W_d` is not inside skew tensors plus `C⊗C`.
    pub failures: Vec<i32>,
}

impl SkewImageReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every tensor moved into the skew tensors by all generators is
/// a skew tensor plus an element of `C⊗C`, degree by degree over tensors with
/// legs in `w`.
pub fn verify_skew_image_lemma(p: &AlgebraParams, w: &Window) -> Result<SkewImageReport> {
    let gens = w.generators(p);
    let center = center_in_window(p, w);
    let per_degree: Vec<(i32, usize, bool)> = (w.lo..=w.hi)
        .into_par_iter()
        .map(|dd| {
            let mut basis = Vec::new();
            for da in w.lo..=w.hi {
                if !w.contains(dd - da) {
                    continue;
                }
                for a in p.basis_at(da) {
                    for b in p.basis_at(dd - da) {
                        basis.push([a, b]);
                    }
                }
            }
            if basis.is_empty() {
                return (dd, 0, true);
            }
            // (g·v) + τ(g·v) = 0, one row per (g, coordinate).
            let mut eqs: Equations<[BasisIndex; 2]> = BTreeMap::new();
            for &g in &gens {
                for (i, legs) in basis.iter().enumerate() {
                    for (k, c) in act_on_legs(g, legs, p) {
                        let k = [k[0], k[1]];
                        eqs.entry((g, k)).or_default().push((i, c.clone()));
                        eqs.entry((g, [k[1], k[0]])).or_default().push((i, c));
                    }
                }
            }
            let rows: Vec<_> = eqs.into_values().collect();
            let kernel = kernel_basis(&rows, basis.len());
            let mut coords: Coords<[BasisIndex; 2]> = Coords::new();
            let mut allowed: Vec<Row> = Vec::new();
            for [a, b] in &basis {
                if a < b {
                    allowed.push(coords.row([([*a, *b], q(1)), ([*b, *a], q(-1))]));
                }
            }
            for z1 in &center {
                for z2 in &center {
                    let t = Tensor2::product(z1, z2);
                    if t.total_degree() == Some(dd) {
                        allowed.push(coords.row(t.iter().map(|(k, c)| (*k, c.clone()))));
                    }
                }
            }
            let w_rows: Vec<Row> = kernel
                .iter()
                .map(|v| coords.row(v.iter().map(|(i, c)| (basis[*i], c.clone()))))
                .collect();
            let base = span_rank(allowed.clone());
            let joint = span_rank(allowed.into_iter().chain(w_rows));
            (dd, kernel.len(), base == joint)
        })
        .collect();
    let mut report = SkewImageReport { window: *w, dims: BTreeMap::new(), failures: Vec::new() };
    for (dd, dim, ok) in per_degree {
        report.dims.insert(dd, dim);
        if !ok {
            report.failures.push(dd);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterTensorReport {
    pub center_dim: usize,
    pub algebra_h1: usize,
    /// `dim H¹(L, C⊗L + L⊗C)_0`.
    pub left: usize,
    /// `dim (C⊗H¹(L,L)_0 + H¹(L,L)_0⊗C)`.
    pub right: usize,
    /// `2·dim C·dim H¹(L,L)_0 − right`.
    pub overlap: usize,
}

impl CenterTensorReport {
    pub fn passed(&self) -> bool {
        self.left == self.right
    }
}

/// Compares degree-zero `H¹` with values in `C⊗L + L⊗C` against the span of
/// `z⊗D` and `D⊗z` for center elements `z` and outer derivations `D` of the
/// algebra, both taken modulo inner derivations on the interior.
pub fn verify_center_tensor_identity(p: &AlgebraParams, cfg: &SolverConfig) -> Result<CenterTensorReport> {
    let center = center_in_window(p, &Window::symmetric(4));
    let alg = solve_h1(p, Module::Algebra, HalfInt(0), &cfg.with_certificates())?;
    if center.is_empty() {
        return Ok(CenterTensorReport { center_dim: 0, algebra_h1: alg.dim_h1, left: 0, right: 0, overlap: 0 });
    }
    let left = solve_h1(p, Module::CenterTensor, HalfInt(0), cfg)?.dim_h1;
    let sys = assemble(p, Module::CenterTensor, HalfInt(0), cfg)?;
    let inner = sys.inner_interior_rows()?;
    let mut products = Vec::new();
    for d in &alg.certificates {
        for z in &center {
            let mut zl = DerivationTable::zero(Target::TensorSquare, HalfInt(0), d.window);
            let mut zr = zl.clone();
            for (g, v) in &d.values {
                if let Value::Element(e) = v {
                    zl.set(*g, Value::Tensor2(Tensor2::product(z, e)));
                    zr.set(*g, Value::Tensor2(Tensor2::product(e, z)));
                }
            }
            products.push(sys.interior_row(&zl)?);
            products.push(sys.interior_row(&zr)?);
        }
    }
    let base = span_rank(inner.clone());
    let right = span_rank(inner.into_iter().chain(products)) - base;
    Ok(CenterTensorReport {
        center_dim: center.len(),
        algebra_h1: alg.dim_h1,
        left,
        right,
        overlap: 2 * center.len() * alg.dim_h1 - right,
    })
}

/// Whether a coboundary cobracket can be triangular, judged by degree-zero
/// tensor cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    TriangularCoboundary,
    NotTriangularCoboundary,
}

impl Verdict {
    fn from_dim(dim: usize) -> Verdict {
        if dim == 0 {
            Verdict::TriangularCoboundary
        } else {
            Verdict::NotTriangularCoboundary
        }
    }
}

/// The eight `(s, λ)` rows with a catalog family; the generic rows use
/// `λ = 3` (`s = 1/2`) and `λ = 5` (`s = 0`).
pub const CASE_ROWS: [(Sector, i64, i64); 8] = [
    (Sector::Half, -1, 1),
    (Sector::Half, -2, 1),
    (Sector::Half, 3, 1),
    (Sector::Zero, 0, 1),
    (Sector::Zero, -1, 1),
    (Sector::Zero, -2, 1),
    (Sector::Zero, 1, 1),
    (Sector::Zero, 5, 1),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub s: Sector,
    pub lambda: String,
    pub central: bool,
    /// Free scalars of the row's family times `2·dim C`.
    pub expected_dim: usize,
    pub dim_h1: usize,
    pub expected_verdict: Verdict,
    pub verdict: Verdict,
}

impl CaseRow {
    pub fn passed(&self) -> bool {
        self.expected_dim == self.dim_h1 && self.expected_verdict == self.verdict
    }
}

/// Degree-zero tensor cohomology for each row and central setting, against
/// the family parameter counts. The expected verdict is "triangular" exactly
/// for centerless rows other than `(0, 0)`.
pub fn case_table_regression(rows: &[(Sector, Rational)], cfg: &SolverConfig) -> Result<Vec<CaseRow>> {
    let jobs: Vec<AlgebraParams> = rows
        .iter()
        .flat_map(|(s, l)| [true, false].map(|central| AlgebraParams::new(*s, l.clone(), central)))
        .collect();
    jobs.par_iter()
        .map(|p| {
            let center_dim = center_in_window(p, &Window::symmetric(4)).len();
            let expected_dim = Family::for_params(p)?.parameter_count(Target::TensorSquare, center_dim);
            let dim_h1 = solve_h1(p, Module::TensorSquare, HalfInt(0), cfg)?.dim_h1;
            let origin = p.s == Sector::Zero && p.lambda == q(0);
            let expected_verdict = if !p.central && !origin {
                Verdict::TriangularCoboundary
            } else {
                Verdict::NotTriangularCoboundary
            };
            Ok(CaseRow {
                s: p.s,
                lambda: fmt_rational(&p.lambda),
                central: p.central,
                expected_dim,
                dim_h1,
                expected_verdict,
                verdict: Verdict::from_dim(dim_h1),
            })
        })
        .collect()
}

/// The case rows as parameter pairs.
pub fn case_rows() -> Vec<(Sector, Rational)> {
    CASE_ROWS.iter().map(|(s, n, d)| (*s, qf(*n, *d))).collect()
}
