use crate::algebra::{bracket_basis, AlgebraParams, BasisIndex, Element, Window};
use crate::error::Result;
use crate::rational::Rational;

use super::types::{Tensor, Tensor2, Tensor3};

fn validate_tensor<const K: usize>(t: &Tensor<K>, p: &AlgebraParams) -> Result<()> {
    t.legs().try_for_each(|b| p.validate(b))
}

fn validate_element(x: &Element, p: &AlgebraParams) -> Result<()> {
    x.support().try_for_each(|b| p.validate(b))
}

/// `τ(a⊗b) = b⊗a`.
pub fn twist(t: &Tensor2) -> Tensor2 {
    t.map_legs(|[a, b]| [*b, *a])
}

/// `ξ(a⊗b⊗c) = b⊗c⊗a`.
pub fn cyclic(t: &Tensor3) -> Tensor3 {
    t.map_legs(|[a, b, c]| [*b, *c, *a])
}

pub fn is_skew(t: &Tensor2) -> bool {
    twist(t) == -t
}

/// Membership in `Im(1−τ)`, which is exactly the space of skew tensors.
pub fn skew_part_membership(t: &Tensor2) -> bool {
    is_skew(t)
}

/// Leibniz action of one generator on every leg; no parity validation.
fn act_generator<const K: usize>(g: BasisIndex, t: &Tensor<K>, p: &AlgebraParams, out: &mut Tensor<K>, scale: &Rational) {
    for (legs, c) in t.iter() {
        for slot in 0..K {
            for (k, b) in bracket_basis(g, legs[slot], p) {
                let mut new_legs = *legs;
                new_legs[slot] = k;
                out.add_term(new_legs, b * c * scale);
            }
        }
    }
}

/// Diagonal adjoint action on `K`-fold tensors.
pub fn diag_action_n<const K: usize>(x: &Element, t: &Tensor<K>, p: &AlgebraParams) -> Result<Tensor<K>> {
    validate_element(x, p)?;
    validate_tensor(t, p)?;
    let mut out = Tensor::zero();
    for (g, c) in x.iter() {
        act_generator(*g, t, p, &mut out, c);
    }
    Ok(out)
}

/// `x·(a⊗b) = [x,a]⊗b + a⊗[x,b]`.
pub fn diag_action(x: &Element, t: &Tensor2, p: &AlgebraParams) -> Result<Tensor2> {
    diag_action_n(x, t, p)
}

/// The three-slot Leibniz action.
pub fn diag_action3(x: &Element, t: &Tensor3, p: &AlgebraParams) -> Result<Tensor3> {
    diag_action_n(x, t, p)
}

/// The coboundary cobracket `Δ_r(x) = x·r`. Skewness of `r` is not enforced.
pub fn coboundary(r: &Tensor2, x: &Element, p: &AlgebraParams) -> Result<Tensor2> {
    diag_action(x, r, p)
}

/// `c(r) = Σ [a_i,a_j]⊗b_i⊗b_j + Σ a_i⊗[b_i,a_j]⊗b_j + Σ a_i⊗a_j⊗[b_i,b_j]`.
pub fn ybe_c(r: &Tensor2, p: &AlgebraParams) -> Result<Tensor3> {
    validate_tensor(r, p)?;
    let mut out = Tensor3::zero();
    for ([ai, bi], ci) in r.iter() {
        for ([aj, bj], cj) in r.iter() {
            let w = ci * cj;
            for (k, c) in bracket_basis(*ai, *aj, p) {
                out.add_term([k, *bi, *bj], c * &w);
            }
            for (k, c) in bracket_basis(*bi, *aj, p) {
                out.add_term([*ai, k, *bj], c * &w);
            }
            for (k, c) in bracket_basis(*bi, *bj, p) {
                out.add_term([*ai, *aj, k], c * &w);
            }
        }
    }
    Ok(out)
}

/// Classical Yang–Baxter equation `c(r) = 0`.
pub fn check_cybe(r: &Tensor2, p: &AlgebraParams) -> Result<bool> {
    Ok(ybe_c(r, p)?.is_zero())
}

/// First generator of `w` (in canonical order) that moves `c(r)`, with its image.
pub fn mybe_witness(r: &Tensor2, p: &AlgebraParams, w: &Window) -> Result<Option<(BasisIndex, Tensor3)>> {
    let c = ybe_c(r, p)?;
    if c.is_zero() {
        return Ok(None);
    }
    for g in w.generators(p) {
        let moved = diag_action3(&Element::basis(g), &c, p)?;
        if !moved.is_zero() {
            return Ok(Some((g, moved)));
        }
    }
    Ok(None)
}

/// Modified Yang–Baxter equation `g·c(r) = 0` for every generator `g` of `w`.
pub fn check_mybe(r: &Tensor2, p: &AlgebraParams, w: &Window) -> Result<bool> {
    Ok(mybe_witness(r, p, w)?.is_none())
}

/// Both sides of `(1+ξ+ξ²)(1⊗Δ_r)Δ_r(x) = x·c(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CojacobiReport {
    pub lhs: Tensor3,
    pub rhs: Tensor3,
}

impl CojacobiReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_cojacobi_identity(r: &Tensor2, x: &Element, p: &AlgebraParams) -> Result<CojacobiReport> {
    let delta = coboundary(r, x, p)?;
    // (1⊗Δ_r)(a⊗b) = a ⊗ (b·r)
    let mut nested = Tensor3::zero();
    for ([a, b], c) in delta.iter() {
        let br = coboundary(r, &Element::basis(*b), p)?;
        for ([u, v], d) in br.iter() {
            nested.add_term([*a, *u, *v], c * d);
        }
    }
    let once = cyclic(&nested);
    let twice = cyclic(&once);
    let lhs = &(&nested + &once) + &twice;
    let rhs = diag_action3(x, &ybe_c(r, p)?, p)?;
    Ok(CojacobiReport { lhs, rhs })
}

/// Cocycle identity `Δ_r([x,y]) = x·Δ_r(y) − y·Δ_r(x)`.
pub fn check_compatibility(r: &Tensor2, x: &Element, y: &Element, p: &AlgebraParams) -> Result<bool> {
    let xy = crate::algebra::bracket(x, y, p)?;
    let lhs = coboundary(r, &xy, p)?;
    let rhs = &diag_action(x, &coboundary(r, y, p)?, p)? - &diag_action(y, &coboundary(r, x, p)?, p)?;
    Ok(lhs == rhs)
}
