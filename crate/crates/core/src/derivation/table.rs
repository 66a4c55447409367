use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{bracket, AlgebraParams, BasisIndex, Degree, Element, HalfInt, Window};
use crate::error::{Result, SvlieError};
use crate::literal::{parse_element, parse_tensor2};
use crate::rational::Rational;
use crate::tensor::{diag_action, Tensor2};

/// The module a derivation takes values in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Algebra,
    TensorSquare,
}

impl Target {
    pub fn parse(text: &str) -> Result<Target> {
        match text {
            "algebra" => Ok(Target::Algebra),
            "tensor-square" | "tensor" => Ok(Target::TensorSquare),
            other => Err(SvlieError::Malformed(format!("unknown target {other:?}"))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Algebra => "algebra",
            Target::TensorSquare => "tensor-square",
        })
    }
}

/// A value in the target module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Element(Element),
    Tensor2(Tensor2),
}

impl Value {
    pub fn zero(target: Target) -> Value {
        match target {
            Target::Algebra => Value::Element(Element::zero()),
            Target::TensorSquare => Value::Tensor2(Tensor2::zero()),
        }
    }

    pub fn target(&self) -> Target {
        match self {
            Value::Element(_) => Target::Algebra,
            Value::Tensor2(_) => Target::TensorSquare,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Element(e) => e.is_zero(),
            Value::Tensor2(t) => t.is_zero(),
        }
    }

    /// `self += factor * other`; both must share a target.
    pub fn add_scaled(&mut self, other: &Value, factor: &Rational) {
        match (self, other) {
            (Value::Element(a), Value::Element(b)) => a.add_scaled(b, factor),
            (Value::Tensor2(a), Value::Tensor2(b)) => a.add_scaled(b, factor),
            _ => panic!("mixed derivation targets"),
        }
    }

    /// `x·value`: the bracket on the algebra, the diagonal action on tensors.
    pub fn acted_on_by(&self, x: &Element, p: &AlgebraParams) -> Result<Value> {
        Ok(match self {
            Value::Element(e) => Value::Element(bracket(x, e, p)?),
            Value::Tensor2(t) => Value::Tensor2(diag_action(x, t, p)?),
        })
    }

    /// Doubled degrees of the terms.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = match self {
            Value::Element(e) => e.support().map(|b| b.dd).collect(),
            Value::Tensor2(t) => t.iter().map(|(k, _)| k[0].dd + k[1].dd).collect(),
        };
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn degree(&self) -> Degree {
        match self.degrees().as_slice() {
            [] => Degree::Any,
            [d] => Degree::Homogeneous(HalfInt(*d)),
            _ => Degree::Inhomogeneous,
        }
    }

    /// The part of the value in doubled degree `dd`.
    pub fn component(&self, dd: i32) -> Value {
        match self {
            Value::Element(e) => Value::Element(e.filter(|b| b.dd == dd)),
            Value::Tensor2(t) => Value::Tensor2(t.filter(|k| k[0].dd + k[1].dd == dd)),
        }
    }

    pub fn parse(target: Target, text: &str) -> Result<Value> {
        Ok(match target {
            Target::Algebra => Value::Element(parse_element(text)?),
            Target::TensorSquare => Value::Tensor2(parse_tensor2(text)?),
        })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(e) => e.fmt(f),
            Value::Tensor2(t) => t.fmt(f),
        }
    }
}

/// A linear map given by its values on every generator of a window.
/// Generators without an entry map to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTable {
    pub target: Target,
    /// `None` for a rule that is not homogeneous.
    pub degree: Option<HalfInt>,
    pub window: Window,
    pub values: BTreeMap<BasisIndex, Value>,
}

impl DerivationTable {
    pub fn zero(target: Target, degree: HalfInt, window: Window) -> Self {
        Self { target, degree: Some(degree), window, values: BTreeMap::new() }
    }

    pub fn value(&self, g: BasisIndex) -> Value {
        self.values.get(&g).cloned().unwrap_or_else(|| Value::zero(self.target))
    }

    /// Sets a value, dropping zeros so equality is representation equality.
    pub fn set(&mut self, g: BasisIndex, v: Value) {
        if v.is_zero() {
            self.values.remove(&g);
        } else {
            self.values.insert(g, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Values only on generators inside `w`.
    pub fn restrict(&self, w: &Window) -> DerivationTable {
        DerivationTable {
            target: self.target,
            degree: self.degree,
            window: *w,
            values: self.values.iter().filter(|(g, _)| w.contains(g.dd)).map(|(g, v)| (*g, v.clone())).collect(),
        }
    }

    /// `self + factor * other`, pointwise.
    pub fn add_scaled(&mut self, other: &DerivationTable, factor: &Rational) {
        if self.degree != other.degree {
            self.degree = None;
        }
        for (g, v) in &other.values {
            let mut cur = self.value(*g);
            cur.add_scaled(v, factor);
            self.set(*g, cur);
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson::from(self)).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<DerivationTable> {
        let raw: TableJson = serde_json::from_str(text).map_err(|e| SvlieError::Malformed(e.to_string()))?;
        raw.into_table()
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    target: Target,
    degree: Option<HalfInt>,
    window: Window,
    values: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    gen: String,
    value: String,
}

impl From<&DerivationTable> for TableJson {
    fn from(t: &DerivationTable) -> Self {
        TableJson {
            target: t.target,
            degree: t.degree,
            window: t.window,
            values: t.values.iter().map(|(g, v)| EntryJson { gen: g.to_string(), value: v.to_string() }).collect(),
        }
    }
}

impl TableJson {
    fn into_table(self) -> Result<DerivationTable> {
        let mut table = DerivationTable { target: self.target, degree: self.degree, window: self.window, values: BTreeMap::new() };
        for entry in self.values {
            let g = parse_element(&entry.gen)?;
            let gen = match g.iter().next() {
                Some((b, c)) if g.len() == 1 && *c == crate::rational::q(1) => *b,
                _ => return Err(SvlieError::Malformed(format!("not a generator: {:?}", entry.gen))),
            };
            table.set(gen, Value::parse(self.target, &entry.value)?);
        }
        Ok(table)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationViolation {
    pub pair: (BasisIndex, BasisIndex),
    /// `D([g,h]) − g·D(h) + h·D(g)`.
    pub residual: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationReport {
    pub pairs_checked: usize,
    pub violations: Vec<DerivationViolation>,
}

impl DerivationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `D([g,h]) = g·D(h) − h·D(g)` for every generator pair `g < h` of
/// the table's window whose bracket degree also lies in the window.
pub fn is_derivation(d: &DerivationTable, p: &AlgebraParams) -> Result<DerivationReport> {
    let gens = d.window.generators(p);
    for g in d.values.keys() {
        p.validate(*g)?;
    }
    let per_first: Vec<Result<(usize, Vec<DerivationViolation>)>> = (0..gens.len())
        .into_par_iter()
        .map(|i| {
            let g = gens[i];
            let ge = Element::basis(g);
            let dg = d.value(g);
            let mut checked = 0;
            let mut bad = Vec::new();
            for &h in &gens[i + 1..] {
                if !d.window.contains(g.dd + h.dd) {
                    continue;
                }
                checked += 1;
                let he = Element::basis(h);
                let mut residual = Value::zero(d.target);
                for (k, c) in bracket(&ge, &he, p)?.iter() {
                    residual.add_scaled(&d.value(*k), c);
                }
                residual.add_scaled(&d.value(h).acted_on_by(&ge, p)?, &-crate::rational::q(1));
                residual.add_scaled(&dg.acted_on_by(&he, p)?, &crate::rational::q(1));
                if !residual.is_zero() {
                    bad.push(DerivationViolation { pair: (g, h), residual });
                }
            }
            Ok((checked, bad))
        })
        .collect();
    let mut report = DerivationReport { pairs_checked: 0, violations: Vec::new() };
    for r in per_first {
        let (c, v) = r?;
        report.pairs_checked += c;
        report.violations.extend(v);
    }
    Ok(report)
}

/// The inner derivation `g ↦ g·v` on the generators of `w`. The zero vector
/// gives the zero table of degree 0.
pub fn inner(v: &Value, p: &AlgebraParams, w: &Window) -> Result<DerivationTable> {
    let degree = match v.degree() {
        Degree::Any => HalfInt(0),
        Degree::Homogeneous(d) => d,
        Degree::Inhomogeneous => return Err(SvlieError::Inhomogeneous),
    };
    let mut table = DerivationTable::zero(v.target(), degree, *w);
    for g in w.generators(p) {
        table.set(g, v.acted_on_by(&Element::basis(g), p)?);
    }
    Ok(table)
}

/// Degree-`alpha` part of a table: at a generator of doubled degree `q`,
/// keeps the part of its value in doubled degree `q + 2·alpha`.
pub fn homogeneous_component(d: &DerivationTable, alpha: HalfInt) -> DerivationTable {
    let mut out = DerivationTable::zero(d.target, alpha, d.window);
    for (g, v) in &d.values {
        out.set(*g, v.component(g.dd + alpha.doubled()));
    }
    out
}
