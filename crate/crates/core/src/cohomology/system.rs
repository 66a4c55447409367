use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{bracket_basis, center_in_window, AlgebraParams, BasisIndex, Element, HalfInt, Sector, Window};
use crate::derivation::{DerivationTable, Target, Value};
use crate::error::{Result, SvlieError};
use crate::linalg::{echelon_by_component, Echelon, Int, Row};
use crate::rational::{fmt_rational, Rational};
use crate::tensor::Tensor2;

/// Target module of the derivations being solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Module {
    /// `L` under the adjoint action.
    Algebra,
    /// `L ⊗ L` under the diagonal action.
    TensorSquare,
    /// The submodule `C⊗L + L⊗C` of `L ⊗ L`, `C` the center.
    CenterTensor,
}

impl Module {
    pub fn target(self) -> Target {
        match self {
            Module::Algebra => Target::Algebra,
            _ => Target::TensorSquare,
        }
    }
}

impl From<Target> for Module {
    fn from(t: Target) -> Module {
        match t {
            Target::Algebra => Module::Algebra,
            Target::TensorSquare => Module::TensorSquare,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub window: Window,
    /// Leg slack `B`; `None` means half the window radius.
    pub support_slack: Option<i32>,
    /// Whether to compute explicit representatives of the `H¹` classes.
    pub certificates: bool,
}

impl SolverConfig {
    pub fn new(n: i32) -> Self {
        SolverConfig { window: Window::symmetric(n), support_slack: None, certificates: false }
    }

    pub fn with_certificates(mut self) -> Self {
        self.certificates = true;
        self
    }

    pub fn slack(&self) -> i32 {
        self.support_slack.unwrap_or(self.window.radius() / 2)
    }
}

/// A target coordinate: one generator for the algebra, a pair for tensors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    One(BasisIndex),
    Two(BasisIndex, BasisIndex),
}

impl Coord {
    /// `g·coord` as a list of coordinates with coefficients.
    fn acted(self, g: BasisIndex, k: &Constants) -> Vec<(Coord, Frac)> {
        match self {
            Coord::One(a) => k.bracket(g, a).iter().map(|&(x, c)| (Coord::One(x), c)).collect(),
            Coord::Two(a, b) => {
                let mut out: Vec<(Coord, Frac)> = k.bracket(g, a).iter().map(|&(x, c)| (Coord::Two(x, b), c)).collect();
                out.extend(k.bracket(g, b).iter().map(|&(x, c)| (Coord::Two(a, x), c)));
                out
            }
        }
    }
}

/// An exact fraction `(num, den)` with `den > 0`.
type Frac = (i128, i128);

fn to_frac(r: &Rational) -> Result<Frac> {
    match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) if n.unsigned_abs() < 1 << 62 && d < 1 << 62 => Ok((n, d)),
        _ => Err(SvlieError::InvalidParams(format!("structure constant {r} is too large"))),
    }
}

fn frac_to_rational((n, d): Frac) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Brackets `[g, a]` of window generators with basis vectors up to a degree
/// bound, converted once to machine fractions.
#[derive(Debug, Clone)]
struct Constants {
    params: AlgebraParams,
    table: HashMap<(BasisIndex, BasisIndex), Vec<(BasisIndex, Frac)>>,
}

impl Constants {
    fn new(p: &AlgebraParams, gens: &[BasisIndex], reach: i32) -> Result<Constants> {
        let others: Vec<BasisIndex> = (-reach..=reach).flat_map(|dd| p.basis_at(dd)).collect();
        let mut table = HashMap::with_capacity(gens.len() * others.len());
        for &g in gens {
            for &a in &others {
                table.insert((g, a), Self::compute(p, g, a)?);
            }
        }
        Ok(Constants { params: p.clone(), table })
    }

    fn compute(p: &AlgebraParams, g: BasisIndex, a: BasisIndex) -> Result<Vec<(BasisIndex, Frac)>> {
        bracket_basis(g, a, p).into_iter().map(|(k, c)| Ok((k, to_frac(&c)?))).collect()
    }

    fn bracket(&self, g: BasisIndex, a: BasisIndex) -> std::borrow::Cow<'_, [(BasisIndex, Frac)]> {
        match self.table.get(&(g, a)) {
            Some(v) => std::borrow::Cow::Borrowed(v),
            // Constants already converted for the same algebra cannot fail here.
            None => std::borrow::Cow::Owned(Self::compute(&self.params, g, a).expect("structure constants fit")),
        }
    }
}

/// A primitive row from fraction entries, exact in every case.
fn row_from_fractions(entries: Vec<(usize, i128, i128)>) -> Row {
    match Row::from_fractions(entries.clone()) {
        Some(r) => r,
        None => Row::from_rational(entries.into_iter().map(|(c, n, d)| (c, frac_to_rational((n, d))))),
    }
}

/// One scalar equation: the coefficient at `coord` of
/// `D([g,h]) − g·D(h) + h·D(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub pair: (BasisIndex, BasisIndex),
    pub coord: Coord,
    pub row: Row,
}

/// The derivation identity as a sparse linear system.
///
/// Unknown columns are ordered with exterior generators (outside the
/// interior window) first, then by decreasing `|dd|` of the generator, then
/// canonically. Pivots are taken at the lowest column, so exterior unknowns
/// are eliminated before interior ones.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub params: AlgebraParams,
    pub module: Module,
    pub degree: HalfInt,
    pub window: Window,
    pub interior: Window,
    pub slack: i32,
    pub unknowns: Vec<(BasisIndex, Coord)>,
    /// Columns `0..exterior` belong to exterior generators.
    pub exterior: usize,
    pub equations: Vec<Equation>,
    coords: BTreeMap<BasisIndex, Vec<Coord>>,
    column: HashMap<(BasisIndex, Coord), usize>,
    constants: Constants,
}

fn center_generators(p: &AlgebraParams) -> Result<HashSet<BasisIndex>> {
    let mut out = HashSet::new();
    for z in center_in_window(p, &Window::symmetric(4)) {
        let mut it = z.iter();
        match (it.next(), it.next()) {
            (Some((b, _)), None) => {
                out.insert(*b);
            }
            _ => return Err(SvlieError::Case(format!("center vector {z} is not a single generator"))),
        }
    }
    Ok(out)
}

/// Target coordinates of total doubled degree `dd` whose legs satisfy `|leg| ≤ lim`.
fn target_coords(p: &AlgebraParams, module: Module, dd: i32, lim: i32, center: &HashSet<BasisIndex>) -> Vec<Coord> {
    match module {
        Module::Algebra => p.basis_at(dd).into_iter().map(Coord::One).collect(),
        Module::TensorSquare | Module::CenterTensor => {
            let mut out = Vec::new();
            for da in -lim..=lim {
                let db = dd - da;
                if db.abs() > lim {
                    continue;
                }
                for a in p.basis_at(da) {
                    for b in p.basis_at(db) {
                        if module == Module::TensorSquare || center.contains(&a) || center.contains(&b) {
                            out.push(Coord::Two(a, b));
                        }
                    }
                }
            }
            out.sort();
            out
        }
    }
}

/// Builds the system for derivations of degree `alpha` into `module`.
pub fn assemble(p: &AlgebraParams, module: Module, alpha: HalfInt, cfg: &SolverConfig) -> Result<LinearSystem> {
    let w = cfg.window;
    let interior = w.interior();
    let slack = cfg.slack();
    let gens = w.generators(p);
    if gens.is_empty() {
        return Err(SvlieError::EmptyWindow);
    }
    let center = if module == Module::CenterTensor { center_generators(p)? } else { HashSet::new() };
    let coords: BTreeMap<BasisIndex, Vec<Coord>> = gens
        .iter()
        .map(|g| (*g, target_coords(p, module, g.dd + alpha.doubled(), g.dd.abs() + slack, &center)))
        .collect();

    let mut order: Vec<BasisIndex> = gens.clone();
    order.sort_by_key(|g| (interior.contains(g.dd), std::cmp::Reverse(g.dd.abs()), *g));
    let mut unknowns = Vec::new();
    let mut exterior = 0;
    for g in &order {
        for t in &coords[g] {
            unknowns.push((*g, *t));
        }
        if !interior.contains(g.dd) {
            exterior = unknowns.len();
        }
    }
    let column: HashMap<(BasisIndex, Coord), usize> = unknowns.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let constants = Constants::new(p, &gens, w.radius() + slack + alpha.doubled().abs())?;
    let k = &constants;

    let equations: Vec<Equation> = (0..gens.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let g = gens[i];
            let mut out = Vec::new();
            for &h in &gens[i + 1..] {
                if !w.contains(g.dd + h.dd) {
                    continue;
                }
                let mut eq: BTreeMap<Coord, Vec<(usize, i128, i128)>> = BTreeMap::new();
                for &(x, (n, d)) in k.bracket(g, h).iter() {
                    for t in &coords[&x] {
                        eq.entry(*t).or_default().push((column[&(x, *t)], n, d));
                    }
                }
                for t in &coords[&h] {
                    for (t2, (n, d)) in t.acted(g, k) {
                        eq.entry(t2).or_default().push((column[&(h, *t)], -n, d));
                    }
                }
                for t in &coords[&g] {
                    for (t2, (n, d)) in t.acted(h, k) {
                        eq.entry(t2).or_default().push((column[&(g, *t)], n, d));
                    }
                }
                for (coord, entries) in eq {
                    let row = row_from_fractions(entries);
                    if !row.is_zero() {
                        out.push(Equation { pair: (g, h), coord, row });
                    }
                }
            }
            out
        })
        .collect();

    Ok(LinearSystem {
        params: p.clone(),
        module,
        degree: alpha,
        window: w,
        interior,
        slack,
        unknowns,
        exterior,
        equations,
        coords,
        column,
        constants,
    })
}

impl LinearSystem {
    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn interior_count(&self) -> usize {
        self.unknowns.len() - self.exterior
    }

    /// Basis vectors `v` of degree `alpha` in the module with legs `|dd| ≤ slack`.
    pub fn inner_sources(&self) -> Result<Vec<Coord>> {
        let center = if self.module == Module::CenterTensor { center_generators(&self.params)? } else { HashSet::new() };
        Ok(target_coords(&self.params, self.module, self.degree.doubled(), self.slack, &center))
    }

    /// The table `g ↦ g·v` as a vector over the columns of generators
    /// accepted by `keep`.
    fn inner_vector(&self, v: Coord, keep: impl Fn(BasisIndex) -> bool) -> Vec<(usize, Frac)> {
        let mut out = Vec::new();
        for g in self.coords.keys() {
            if !keep(*g) {
                continue;
            }
            for (t, c) in v.acted(*g, &self.constants) {
                let col = self.column.get(&(*g, t)).expect("inner image lies inside the leg bound");
                out.push((*col, c));
            }
        }
        out
    }

    /// Restricted inner derivations as rows over interior columns
    /// (column `0` is the first interior unknown).
    pub fn inner_interior_rows(&self) -> Result<Vec<Row>> {
        let interior = self.interior;
        let ext = self.exterior;
        Ok(self
            .inner_sources()?
            .into_iter()
            .map(|v| {
                let vec = self.inner_vector(v, |g| interior.contains(g.dd));
                row_from_fractions(vec.into_iter().map(|(c, (n, d))| (c - ext, n, d)).collect())
            })
            .collect())
    }

    /// The interior values of `table` as a row over interior columns. Fails if
    /// a value uses a coordinate outside the unknowns.
    pub fn interior_row(&self, table: &DerivationTable) -> Result<Row> {
        let mut entries = Vec::new();
        for (g, v) in &table.values {
            if !self.interior.contains(g.dd) {
                continue;
            }
            let coords: Vec<(Coord, Rational)> = match v {
                Value::Element(e) => e.iter().map(|(a, c)| (Coord::One(*a), c.clone())).collect(),
                Value::Tensor2(t) => t.iter().map(|([a, b], c)| (Coord::Two(*a, *b), c.clone())).collect(),
            };
            for (t, c) in coords {
                let col = self.column.get(&(*g, t)).ok_or_else(|| {
                    SvlieError::Malformed(format!("value at {g} leaves the solver's coordinate space"))
                })?;
                entries.push((col - self.exterior, c));
            }
        }
        Ok(Row::from_rational(entries))
    }

    /// Exact check that every inner derivation solves the system.
    pub fn inner_contained(&self) -> Result<bool> {
        let sources = self.inner_sources()?;
        // Column -> (source index, coefficient), so each equation is evaluated once for all sources.
        let mut by_col: HashMap<usize, Vec<(usize, Frac)>> = HashMap::new();
        for (i, v) in sources.iter().enumerate() {
            for (col, c) in self.inner_vector(*v, |_| true) {
                by_col.entry(col).or_default().push((i, c));
            }
        }
        let ok = self.equations.par_iter().all(|eq| {
            let mut fast: HashMap<usize, Vec<(usize, i128, i128)>> = HashMap::new();
            let mut exact = false;
            'outer: for (col, a) in &eq.row.entries {
                for &(i, (n, d)) in by_col.get(col).into_iter().flatten() {
                    match a {
                        Int::Small(a) if a.checked_mul(n).is_some() => fast.entry(i).or_default().push((0, a * n, d)),
                        _ => {
                            exact = true;
                            break 'outer;
                        }
                    }
                }
            }
            if !exact {
                if let Some(all_zero) = fast.into_values().map(Row::from_fractions).collect::<Option<Vec<Row>>>() {
                    return all_zero.iter().all(Row::is_zero);
                }
            }
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (col, a) in &eq.row.entries {
                for &(i, c) in by_col.get(col).into_iter().flatten() {
                    *acc.entry(i).or_default() += a.to_rational() * frac_to_rational(c);
                }
            }
            acc.values().all(num_traits::Zero::is_zero)
        });
        Ok(ok)
    }

    /// Interior-restricted values of a column vector, as a derivation table.
    pub fn table_from_interior(&self, vector: &[(usize, Rational)]) -> DerivationTable {
        let mut table = DerivationTable::zero(self.module.target(), self.degree, self.interior);
        let mut per_gen: BTreeMap<BasisIndex, Value> = BTreeMap::new();
        for (col, c) in vector {
            let (g, t) = self.unknowns[*col];
            let entry = per_gen.entry(g).or_insert_with(|| Value::zero(self.module.target()));
            let unit = match t {
                Coord::One(a) => Value::Element(Element::basis(a)),
                Coord::Two(a, b) => Value::Tensor2(Tensor2::basis([a, b])),
            };
            entry.add_scaled(&unit, c);
        }
        for (g, v) in per_gen {
            table.set(g, v);
        }
        table
    }
}

/// `(s, λ, central, module, α, window, interior, slack)` of a computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseDescriptor {
    pub s: Sector,
    pub lambda: String,
    pub central: bool,
    pub module: Module,
    pub degree: HalfInt,
    pub window: Window,
    pub interior: Window,
    pub support_slack: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub case: CaseDescriptor,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Dimension of the solution space restricted to the interior.
    pub dim_der: usize,
    /// Dimension of the restricted inner derivations.
    pub dim_inn: usize,
    pub dim_h1: usize,
    pub inner_contained: bool,
    /// Interior tables representing a basis of `H¹`, when requested.
    pub certificates: Vec<DerivationTable>,
}

impl CohomologyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "case": self.case,
            "unknowns": self.unknowns,
            "equations": self.equations,
            "rank": self.rank,
            "dim_der": self.dim_der,
            "dim_inn": self.dim_inn,
            "dim_h1": self.dim_h1,
            "inner_contained": self.inner_contained,
            "certificates": self.certificates.iter().map(DerivationTable::to_json).collect::<Vec<_>>(),
        })
    }
}

fn row_to_rational(r: &Row) -> Vec<(usize, Rational)> {
    r.entries.iter().map(|(c, v)| (*c, Int::to_rational(v))).collect()
}

/// Degree-`alpha` first cohomology of the algebra with values in `module`.
pub fn solve_h1(p: &AlgebraParams, module: Module, alpha: HalfInt, cfg: &SolverConfig) -> Result<CohomologyReport> {
    let sys = assemble(p, module, alpha, cfg)?;
    let n = sys.unknown_count();
    let ext = sys.exterior;
    let rows: Vec<Row> = sys.equations.iter().map(|e| e.row.clone()).collect();
    let echelons = echelon_by_component(rows, n);
    let rank: usize = echelons.iter().map(Echelon::rank).sum();
    // Rows whose pivot is interior have no exterior entries; their kernel on
    // interior columns is exactly the restriction of the solution space.
    let interior_rows: Vec<Row> = echelons
        .iter()
        .flat_map(|e| e.rows().iter())
        .filter(|r| r.lead().is_some_and(|c| c >= ext))
        .map(|r| Row { entries: r.entries.iter().map(|(c, v)| (c - ext, v.clone())).collect() })
        .collect();
    let dim_der = sys.interior_count() - interior_rows.len();

    let mut inner_echelon = Echelon::new();
    for row in sys.inner_interior_rows()? {
        inner_echelon.insert(row);
    }
    let dim_inn = inner_echelon.rank();
    let dim_h1 = dim_der.checked_sub(dim_inn).ok_or_else(|| {
        SvlieError::Malformed(format!("inner space ({dim_inn}) exceeds derivation space ({dim_der})"))
    })?;

    let mut certificates = Vec::new();
    if cfg.certificates && dim_h1 > 0 {
        let mut kernel = Echelon::new();
        for r in interior_rows {
            kernel.insert(r);
        }
        let mut quotient = inner_echelon.clone();
        for v in kernel.kernel(sys.interior_count()) {
            if certificates.len() == dim_h1 {
                break;
            }
            let row = Row::from_rational(v.iter().cloned());
            if quotient.insert(row.clone()).is_some() {
                let shifted: Vec<(usize, Rational)> = row_to_rational(&row).into_iter().map(|(c, x)| (c + ext, x)).collect();
                certificates.push(sys.table_from_interior(&shifted));
            }
        }
    }

    Ok(CohomologyReport {
        case: CaseDescriptor {
            s: p.s,
            lambda: fmt_rational(&p.lambda),
            central: p.central,
            module,
            degree: alpha,
            window: sys.window,
            interior: sys.interior,
            support_slack: sys.slack,
        },
        unknowns: n,
        equations: sys.equations.len(),
        rank,
        dim_der,
        dim_inn,
        dim_h1,
        inner_contained: sys.inner_contained()?,
        certificates,
    })
}
