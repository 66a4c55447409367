use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{center_in_window, AlgebraParams, BasisIndex, Element, HalfInt, Kind, Sector, Window};
use crate::error::{Result, SvlieError};
use crate::rational::{q, Rational};
use crate::tensor::Tensor2;

use super::table::{DerivationTable, Target, Value};

/// The scalar slots of a degree-zero family, named by what they scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// Leading coefficient of the `L_n ↦ P(n) M_n` polynomial.
    LScale,
    /// Constant term of that polynomial (only in the linear `μn + ν` family).
    LShift,
    /// `Y ↦ γY`, `M ↦ 2γM`.
    Weight,
    /// `Y_n ↦ ζ q(n) M_n` (integer sector only).
    YToM,
}

/// Scalars for one side of a family. The algebra target uses `left` only; the
/// tensor target puts `left` scalars on `leg ⊗ X` and `right` on `X ⊗ leg†`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Side {
    pub l_scale: Rational,
    pub l_shift: Rational,
    pub weight: Rational,
    pub y_to_m: Rational,
}

impl Side {
    pub fn unit(role: Role) -> Side {
        let mut s = Side::default();
        *s.slot_mut(role) = q(1);
        s
    }

    fn slot_mut(&mut self, role: Role) -> &mut Rational {
        match role {
            Role::LScale => &mut self.l_scale,
            Role::LShift => &mut self.l_shift,
            Role::Weight => &mut self.weight,
            Role::YToM => &mut self.y_to_m,
        }
    }
}

/// Scalars and center legs for a catalog family.
///
/// `z` legs accompany `L` values, `w` legs the weight part, `v` legs the
/// `Y → M` part; the `_dag` legs sit in the right tensor slot. Legs must be
/// central.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CatalogParams {
    pub left: Side,
    pub right: Side,
    pub z: Element,
    pub w: Element,
    pub v: Element,
    pub z_dag: Element,
    pub w_dag: Element,
    pub v_dag: Element,
}

impl CatalogParams {
    /// Algebra-target parameters.
    pub fn algebra(side: Side) -> Self {
        CatalogParams { left: side, ..Default::default() }
    }

    /// Tensor-target parameters with the same leg in every left (right) slot.
    pub fn tensor(left: Side, leg: Element, right: Side, leg_dag: Element) -> Self {
        CatalogParams {
            left,
            right,
            z: leg.clone(),
            w: leg.clone(),
            v: leg,
            z_dag: leg_dag.clone(),
            w_dag: leg_dag.clone(),
            v_dag: leg_dag,
        }
    }
}

/// The degree-zero families, one per case row of the parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `s = 1/2, λ = −1`: `L_n ↦ α(n²−n)M_n`, weight `β`.
    Sigma1,
    /// `s = 1/2, λ = −2`: `L_n ↦ αn³M_n`, weight `β`.
    Sigma2,
    /// `s = 1/2`, generic `λ`: weight only.
    Sigma3,
    /// `s = 0, λ = 0`: `L_n ↦ (μn+ν)M_n`, weight `γ`.
    Rho1,
    /// `s = 0, λ = −1`: `L_n ↦ μn²M_n`, `Y_n ↦ γY_n + ζnM_n`.
    Rho2,
    /// `s = 0, λ = −2`: `L_n ↦ μn³M_n`, weight `γ`.
    Rho3,
    /// `s = 0, λ = 1`: `Y_n ↦ γY_n + ζM_n`.
    Rho4,
    /// `s = 0`, generic `λ`: weight only.
    Rho5,
}

pub const ALL_FAMILIES: [Family; 8] = [
    Family::Sigma1,
    Family::Sigma2,
    Family::Sigma3,
    Family::Rho1,
    Family::Rho2,
    Family::Rho3,
    Family::Rho4,
    Family::Rho5,
];

fn lambda_is(p: &AlgebraParams, v: i64) -> bool {
    p.lambda == q(v)
}

impl Family {
    pub fn all() -> [Family; 8] {
        ALL_FAMILIES
    }

    /// The family covering `p`. `(s, λ) = (1/2, 0)` and `(0, −3)` have no
    /// family and give [`SvlieError::DeferredCase`].
    pub fn for_params(p: &AlgebraParams) -> Result<Family> {
        let deferred = || Err(SvlieError::DeferredCase(format!("no catalog family for s={}, lambda={}", p.s, crate::rational::fmt_rational(&p.lambda))));
        match p.s {
            Sector::Half => {
                if lambda_is(p, -1) {
                    Ok(Family::Sigma1)
                } else if lambda_is(p, -2) {
                    Ok(Family::Sigma2)
                } else if lambda_is(p, 0) {
                    deferred()
                } else {
                    Ok(Family::Sigma3)
                }
            }
            Sector::Zero => {
                if lambda_is(p, 0) {
                    Ok(Family::Rho1)
                } else if lambda_is(p, -1) {
                    Ok(Family::Rho2)
                } else if lambda_is(p, -2) {
                    Ok(Family::Rho3)
                } else if lambda_is(p, 1) {
                    Ok(Family::Rho4)
                } else if lambda_is(p, -3) {
                    deferred()
                } else {
                    Ok(Family::Rho5)
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Sigma1 => "sigma1",
            Family::Sigma2 => "sigma2",
            Family::Sigma3 => "sigma3",
            Family::Rho1 => "rho1",
            Family::Rho2 => "rho2",
            Family::Rho3 => "rho3",
            Family::Rho4 => "rho4",
            Family::Rho5 => "rho5",
        }
    }

    pub fn roles(self) -> &'static [Role] {
        use Role::*;
        match self {
            Family::Sigma1 | Family::Sigma2 | Family::Rho3 => &[LScale, Weight],
            Family::Sigma3 | Family::Rho5 => &[Weight],
            Family::Rho1 => &[LScale, LShift, Weight],
            Family::Rho2 => &[LScale, Weight, YToM],
            Family::Rho4 => &[Weight, YToM],
        }
    }

    /// Number of free scalars times the number of independent legs: the
    /// dimension this family contributes to degree-zero `H¹`.
    pub fn parameter_count(self, target: Target, center_dim: usize) -> usize {
        match target {
            Target::Algebra => self.roles().len(),
            Target::TensorSquare => self.roles().len() * 2 * center_dim,
        }
    }

    fn l_coefficient(self, n: i64, side: &Side) -> Rational {
        let n = q(n);
        match self {
            Family::Sigma1 => &side.l_scale * (&n * &n - &n),
            Family::Sigma2 | Family::Rho3 => &side.l_scale * (&n * &n * &n),
            Family::Rho1 => &side.l_scale * &n + &side.l_shift,
            Family::Rho2 => &side.l_scale * (&n * &n),
            _ => Rational::zero(),
        }
    }

    fn y_to_m_coefficient(self, n: i64, side: &Side) -> Rational {
        match self {
            Family::Rho2 => &side.y_to_m * q(n),
            Family::Rho4 => side.y_to_m.clone(),
            _ => Rational::zero(),
        }
    }

    /// The family's table, after checking that it matches `p` and that every
    /// leg is central.
    pub fn table(self, p: &AlgebraParams, target: Target, params: &CatalogParams, w: &Window) -> Result<DerivationTable> {
        let actual = Family::for_params(p)?;
        if actual != self {
            return Err(SvlieError::Case(format!(
                "{} does not apply to {}; the matching family is {}",
                self.name(),
                p,
                actual.name()
            )));
        }
        if target == Target::TensorSquare {
            check_legs(p, params)?;
        }
        Ok(self.table_unchecked(p, target, params, w))
    }

    /// The family's formulas evaluated without any case or leg check; used to
    /// build negative controls.
    pub fn table_unchecked(self, p: &AlgebraParams, target: Target, params: &CatalogParams, w: &Window) -> DerivationTable {
        let mut table = DerivationTable::zero(target, HalfInt(0), *w);
        let left = &params.left;
        let right = &params.right;
        for g in w.generators(p) {
            let n = (g.dd / 2) as i64;
            let m_here = BasisIndex::new(Kind::M, g.dd);
            let value = match g.kind {
                Kind::L => Sided {
                    left: vec![(self.l_coefficient(n, left), &params.z, m_here)],
                    right: vec![(self.l_coefficient(n, right), &params.z_dag, m_here)],
                },
                Kind::M => Sided {
                    left: vec![(q(2) * &left.weight, &params.w, g)],
                    right: vec![(q(2) * &right.weight, &params.w_dag, g)],
                },
                Kind::Y => {
                    let mut s = Sided {
                        left: vec![(left.weight.clone(), &params.w, g)],
                        right: vec![(right.weight.clone(), &params.w_dag, g)],
                    };
                    if g.dd % 2 == 0 {
                        s.left.push((self.y_to_m_coefficient(n, left), &params.v, m_here));
                        s.right.push((self.y_to_m_coefficient(n, right), &params.v_dag, m_here));
                    }
                    s
                }
                Kind::C => continue,
            };
            table.set(g, value.realize(target));
        }
        table
    }

    /// One table per free scalar (and, for tensors, per side and center basis
    /// leg). These span the family.
    pub fn basis_tables(self, p: &AlgebraParams, target: Target, w: &Window) -> Result<Vec<(String, DerivationTable)>> {
        let mut out = Vec::new();
        match target {
            Target::Algebra => {
                for &role in self.roles() {
                    let params = CatalogParams::algebra(Side::unit(role));
                    out.push((format!("{}:{:?}", self.name(), role), self.table(p, target, &params, w)?));
                }
            }
            Target::TensorSquare => {
                let center = center_in_window(p, &Window::symmetric(4));
                for &role in self.roles() {
                    for leg in &center {
                        let l = CatalogParams::tensor(Side::unit(role), leg.clone(), Side::default(), Element::zero());
                        out.push((format!("{}:{:?}:{}(x)_", self.name(), role, leg), self.table(p, target, &l, w)?));
                        let r = CatalogParams::tensor(Side::default(), Element::zero(), Side::unit(role), leg.clone());
                        out.push((format!("{}:{:?}:_(x){}", self.name(), role, leg), self.table(p, target, &r, w)?));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Terms `coeff · leg ⊗ X` (left) and `coeff · X ⊗ leg` (right).
struct Sided<'a> {
    left: Vec<(Rational, &'a Element, BasisIndex)>,
    right: Vec<(Rational, &'a Element, BasisIndex)>,
}

impl Sided<'_> {
    fn realize(self, target: Target) -> Value {
        match target {
            Target::Algebra => {
                let mut e = Element::zero();
                for (c, _, x) in self.left {
                    e.add_term(x, c);
                }
                Value::Element(e)
            }
            Target::TensorSquare => {
                let mut t = Tensor2::zero();
                for (c, leg, x) in self.left {
                    t.add_scaled(&Tensor2::product(leg, &Element::basis(x)), &c);
                }
                for (c, leg, x) in self.right {
                    t.add_scaled(&Tensor2::product(&Element::basis(x), leg), &c);
                }
                Value::Tensor2(t)
            }
        }
    }
}

fn check_legs(p: &AlgebraParams, params: &CatalogParams) -> Result<()> {
    let probe = Window::symmetric(4).generators(p);
    for (name, leg) in [
        ("z", &params.z),
        ("w", &params.w),
        ("v", &params.v),
        ("z_dag", &params.z_dag),
        ("w_dag", &params.w_dag),
        ("v_dag", &params.v_dag),
    ] {
        for b in leg.support() {
            p.validate(b)?;
        }
        for &g in &probe {
            if !crate::algebra::bracket(&Element::basis(g), leg, p)?.is_zero() {
                return Err(SvlieError::Case(format!("leg {name} = {leg} is not central for {p}")));
            }
        }
    }
    Ok(())
}

/// The full family table for `p`'s case row.
pub fn catalog(p: &AlgebraParams, target: Target, params: &CatalogParams, w: &Window) -> Result<Vec<(String, DerivationTable)>> {
    let family = Family::for_params(p)?;
    Ok(vec![(family.name().to_string(), family.table(p, target, params, w)?)])
}

/// Individual outer derivations `L → L` of degree zero, each a single formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Named {
    /// `Y ↦ Y`, `M ↦ 2M`: the weight grading; exists for every `(s, λ)`.
    Weight,
    /// `L_n ↦ M_n` (`λ = 0`).
    LToM,
    /// `L_n ↦ nM_n` (`λ = 0`).
    LToNM,
    /// `L_n ↦ (n²−n)M_n` (`s = 1/2, λ = −1`).
    LToN2MinusNM,
    /// `L_n ↦ n²M_n` (`s = 0, λ = −1`).
    LToN2M,
    /// `L_n ↦ n³M_n` (`λ = −2`).
    LToN3M,
    /// `Y_n ↦ nM_n` (`s = 0, λ = −1`).
    YToNM,
    /// `Y_n ↦ M_n` (`s = 0, λ = 1`).
    YToM,
}

impl Named {
    pub fn name(self) -> &'static str {
        match self {
            Named::Weight => "weight",
            Named::LToM => "L->M",
            Named::LToNM => "L->nM",
            Named::LToN2MinusNM => "L->(n^2-n)M",
            Named::LToN2M => "L->n^2M",
            Named::LToN3M => "L->n^3M",
            Named::YToNM => "Y->nM",
            Named::YToM => "Y->M",
        }
    }

    /// The listed outer derivations for `p`; their count is the expected
    /// `dim H¹(L, L)_0`. `(0, −3)` is deferred.
    pub fn for_params(p: &AlgebraParams) -> Result<Vec<Named>> {
        use Named::*;
        let mut out = vec![Weight];
        match p.s {
            Sector::Half => {
                if lambda_is(p, 0) {
                    out.extend([LToM, LToNM]);
                } else if lambda_is(p, -1) {
                    out.push(LToN2MinusNM);
                } else if lambda_is(p, -2) {
                    out.push(LToN3M);
                }
            }
            Sector::Zero => {
                if lambda_is(p, 0) {
                    out.extend([LToM, LToNM]);
                } else if lambda_is(p, -1) {
                    out.extend([LToN2M, YToNM]);
                } else if lambda_is(p, -2) {
                    out.push(LToN3M);
                } else if lambda_is(p, 1) {
                    out.push(YToM);
                } else if lambda_is(p, -3) {
                    return Err(SvlieError::DeferredCase(format!("no derivation list for {p}")));
                }
            }
        }
        Ok(out)
    }

    pub fn admits(self, p: &AlgebraParams) -> bool {
        match Named::for_params(p) {
            Ok(list) => list.contains(&self),
            Err(_) => self == Named::Weight,
        }
    }

    pub fn table(self, p: &AlgebraParams, w: &Window) -> Result<DerivationTable> {
        if !self.admits(p) {
            return Err(SvlieError::Case(format!("{} is not a listed derivation for {p}", self.name())));
        }
        Ok(self.table_unchecked(p, w))
    }

    pub fn table_unchecked(self, p: &AlgebraParams, w: &Window) -> DerivationTable {
        let mut table = DerivationTable::zero(Target::Algebra, HalfInt(0), *w);
        for g in w.generators(p) {
            let n = (g.dd / 2) as i64;
            let m_here = BasisIndex::new(Kind::M, g.dd);
            let value = match (self, g.kind) {
                (Named::Weight, Kind::Y) => Element::basis(g),
                (Named::Weight, Kind::M) => Element::term(g, q(2)),
                (Named::LToM, Kind::L) => Element::basis(m_here),
                (Named::LToNM, Kind::L) => Element::term(m_here, q(n)),
                (Named::LToN2MinusNM, Kind::L) => Element::term(m_here, q(n * n - n)),
                (Named::LToN2M, Kind::L) => Element::term(m_here, q(n * n)),
                (Named::LToN3M, Kind::L) => Element::term(m_here, q(n * n * n)),
                (Named::YToNM, Kind::Y) if g.dd % 2 == 0 => Element::term(m_here, q(n)),
                (Named::YToM, Kind::Y) if g.dd % 2 == 0 => Element::basis(m_here),
                _ => continue,
            };
            table.set(g, Value::Element(value));
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::is_derivation;
    use crate::rational::qf;

    #[test]
    fn sigma1_hand_values() {
        let p = AlgebraParams::new(Sector::Half, q(-1), true);
        let params = CatalogParams::algebra(Side { l_scale: q(1), ..Default::default() });
        let t = Family::Sigma1.table(&p, Target::Algebra, &params, &Window::symmetric(8)).unwrap();
        assert_eq!(t.value(BasisIndex::l(3)), Value::Element(Element::term(BasisIndex::m(3), q(6))));
        assert!(t.value(BasisIndex::y(1)).is_zero());
        assert!(t.value(BasisIndex::l(1)).is_zero());
        assert!(is_derivation(&t, &p).unwrap().passed());
    }

    #[test]
    fn rho1_tensor_with_c_leg() {
        let p = AlgebraParams::new(Sector::Zero, q(0), true);
        let params = CatalogParams::tensor(
            Side { l_scale: q(1), ..Default::default() },
            Element::basis(BasisIndex::c()),
            Side::default(),
            Element::zero(),
        );
        let t = Family::Rho1.table(&p, Target::TensorSquare, &params, &Window::symmetric(8)).unwrap();
        assert_eq!(
            t.value(BasisIndex::l(2)),
            Value::Tensor2(Tensor2::term([BasisIndex::c(), BasisIndex::m(2)], q(2)))
        );
        assert!(t.value(BasisIndex::m(1)).is_zero());
        assert!(is_derivation(&t, &p).unwrap().passed());
    }

    #[test]
    fn wrong_case_and_noncentral_leg() {
        let p = AlgebraParams::new(Sector::Half, qf(1, 2), true);
        let params = CatalogParams::algebra(Side::unit(Role::LScale));
        assert!(matches!(
            Family::Sigma1.table(&p, Target::Algebra, &params, &Window::symmetric(4)),
            Err(SvlieError::Case(_))
        ));
        let bad = CatalogParams::tensor(Side::unit(Role::Weight), Element::basis(BasisIndex::l(0)), Side::default(), Element::zero());
        assert!(matches!(
            Family::Sigma3.table(&p, Target::TensorSquare, &bad, &Window::symmetric(4)),
            Err(SvlieError::Case(_))
        ));
    }

    #[test]
    fn deferred_rows() {
        let p = AlgebraParams::new(Sector::Zero, q(-3), true);
        assert!(matches!(Family::for_params(&p), Err(SvlieError::DeferredCase(_))));
        assert!(matches!(Named::for_params(&p), Err(SvlieError::DeferredCase(_))));
    }

    #[test]
    fn parameter_counts() {
        assert_eq!(Family::Rho1.parameter_count(Target::TensorSquare, 2), 12);
        assert_eq!(Family::Rho1.parameter_count(Target::TensorSquare, 1), 6);
        assert_eq!(Family::Sigma1.parameter_count(Target::TensorSquare, 1), 4);
        assert_eq!(Family::Rho2.parameter_count(Target::Algebra, 0), 3);
    }
}
