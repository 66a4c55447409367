use num_traits::Zero;

use super::basis::{AlgebraParams, BasisIndex, Kind, Window};
use super::element::Element;
use crate::error::Result;
use crate::rational::{q, qf, Rational};

/// Bracket of two basis generators, without parity validation.
///
/// Returns at most two terms (an `L`, `M` or `Y` term, plus `c` for
/// `[L_n, L_{-n}]`). Unlisted pairs bracket to zero.
pub fn bracket_basis(a: BasisIndex, b: BasisIndex, p: &AlgebraParams) -> Vec<(BasisIndex, Rational)> {
    if a > b {
        let mut out = bracket_basis(b, a, p);
        for (_, c) in out.iter_mut() {
            *c = -c.clone();
        }
        return out;
    }
    let mut out = Vec::with_capacity(2);
    let dd = a.dd + b.dd;
    match (a.kind, b.kind) {
        (Kind::L, Kind::L) => {
            let n = (a.dd / 2) as i64;
            let m = (b.dd / 2) as i64;
            if m != n {
                out.push((BasisIndex::new(Kind::L, dd), q(m - n)));
            }
            if dd == 0 && p.central && m * m * m != m {
                out.push((BasisIndex::c(), qf(m * m * m - m, 12)));
            }
        }
        (Kind::L, Kind::M) => {
            let n = q((a.dd / 2) as i64);
            let m = q((b.dd / 2) as i64);
            let coeff = m - &p.lambda * n;
            if !coeff.is_zero() {
                out.push((BasisIndex::new(Kind::M, dd), coeff));
            }
        }
        (Kind::L, Kind::Y) => {
            let n = q((a.dd / 2) as i64);
            let y = qf(b.dd as i64, 2);
            let coeff = y - (&p.lambda + q(1)) * qf(1, 2) * n;
            if !coeff.is_zero() {
                out.push((BasisIndex::new(Kind::Y, dd), coeff));
            }
        }
        (Kind::Y, Kind::Y) => {
            let diff = (b.dd - a.dd) as i64;
            if diff != 0 {
                out.push((BasisIndex::new(Kind::M, dd), qf(diff, 2)));
            }
        }
        _ => {}
    }
    out
}

/// Bilinear bracket on elements. Fails if any `Y` index has the wrong parity for `p.s`.
pub fn bracket(x: &Element, y: &Element, p: &AlgebraParams) -> Result<Element> {
    for i in x.support().chain(y.support()) {
        p.validate(i)?;
    }
    let mut out = Element::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let w = ca * cb;
            for (k, c) in bracket_basis(*a, *b, p) {
                out.add_term(k, c * &w);
            }
        }
    }
    Ok(out)
}

/// A bracket table on basis generators; lets structural checks run against
/// alternative (e.g. deliberately corrupted) tables.
pub trait BracketRule: Sync {
    fn bracket_generators(&self, a: BasisIndex, b: BasisIndex) -> Element;
    fn generators(&self, window: &Window) -> Vec<BasisIndex>;
}

impl BracketRule for AlgebraParams {
    fn bracket_generators(&self, a: BasisIndex, b: BasisIndex) -> Element {
        Element::from_terms(bracket_basis(a, b, self))
    }

    fn generators(&self, window: &Window) -> Vec<BasisIndex> {
        window.generators(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Sector;

    fn el(terms: &[(BasisIndex, Rational)]) -> Element {
        Element::from_terms(terms.iter().cloned())
    }

    #[test]
    fn witt_part_without_central_term() {
        let p = AlgebraParams::new(Sector::Half, q(3), true);
        let r = bracket(&Element::basis(BasisIndex::l(1)), &Element::basis(BasisIndex::l(-1)), &p).unwrap();
        assert_eq!(r, el(&[(BasisIndex::l(0), q(-2))]));
    }

    #[test]
    fn virasoro_central_term() {
        let p = AlgebraParams::new(Sector::Zero, q(0), true);
        let r = bracket(&Element::basis(BasisIndex::l(2)), &Element::basis(BasisIndex::l(-2)), &p).unwrap();
        assert_eq!(r, el(&[(BasisIndex::l(0), q(-4)), (BasisIndex::c(), qf(-1, 2))]));
        let centerless = AlgebraParams { central: false, ..p };
        let r = bracket(&Element::basis(BasisIndex::l(2)), &Element::basis(BasisIndex::l(-2)), &centerless).unwrap();
        assert_eq!(r, el(&[(BasisIndex::l(0), q(-4))]));
    }

    #[test]
    fn y_y_lands_in_m() {
        let p = AlgebraParams::new(Sector::Half, q(7), true);
        let r = bracket(&Element::basis(BasisIndex::y(1)), &Element::basis(BasisIndex::y(-1)), &p).unwrap();
        assert_eq!(r, el(&[(BasisIndex::m(0), q(-1))]));
    }

    #[test]
    fn l_y_with_lambda_minus_one() {
        let p = AlgebraParams::new(Sector::Half, q(-1), true);
        let r = bracket(&Element::basis(BasisIndex::l(1)), &Element::basis(BasisIndex::y(1)), &p).unwrap();
        assert_eq!(r, el(&[(BasisIndex::y(3), qf(1, 2))]));
    }

    #[test]
    fn l_m_deformation() {
        let p = AlgebraParams::new(Sector::Half, q(-1), true);
        let r = bracket(&Element::basis(BasisIndex::l(1)), &Element::basis(BasisIndex::m(2)), &p).unwrap();
        assert_eq!(r, el(&[(BasisIndex::m(3), q(3))]));
    }

    #[test]
    fn reversed_order_is_antisymmetric() {
        let p = AlgebraParams::new(Sector::Zero, qf(-5, 3), true);
        let a = Element::basis(BasisIndex::m(2));
        let b = Element::basis(BasisIndex::l(-1));
        let ab = bracket(&a, &b, &p).unwrap();
        let ba = bracket(&b, &a, &p).unwrap();
        assert_eq!(ab, -ba);
        assert!(!ab.is_zero());
    }

    #[test]
    fn central_and_abelian_pairs_vanish() {
        let p = AlgebraParams::new(Sector::Zero, q(2), true);
        let pairs = [
            (BasisIndex::c(), BasisIndex::l(3)),
            (BasisIndex::m(1), BasisIndex::m(-1)),
            (BasisIndex::m(1), BasisIndex::y(2)),
        ];
        for (a, b) in pairs {
            assert!(bracket(&Element::basis(a), &Element::basis(b), &p).unwrap().is_zero());
        }
    }

    #[test]
    fn parity_violation_is_rejected() {
        let p = AlgebraParams::new(Sector::Zero, q(0), true);
        let bad = Element::basis(BasisIndex::y(1));
        assert!(bracket(&bad, &Element::basis(BasisIndex::l(1)), &p).is_err());
    }
}
