use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::{BasisIndex, Element};
use crate::rational::{fmt_rational, Rational};

/// Finitely supported rational combination of `K`-fold tensors of generators.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Tensor<const K: usize> {
    terms: BTreeMap<[BasisIndex; K], Rational>,
}

pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const K: usize> Tensor<K> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn basis(legs: [BasisIndex; K]) -> Self {
        Self::term(legs, Rational::one())
    }

    pub fn term(legs: [BasisIndex; K], coeff: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(legs, coeff);
        t
    }

    pub fn from_terms<I: IntoIterator<Item = ([BasisIndex; K], Rational)>>(terms: I) -> Self {
        let mut t = Self::zero();
        for (k, c) in terms {
            t.add_term(k, c);
        }
        t
    }

    pub fn add_term(&mut self, legs: [BasisIndex; K], coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(*k, c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, legs: &[BasisIndex; K]) -> Rational {
        self.terms.get(legs).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[BasisIndex; K], &Rational)> {
        self.terms.iter()
    }

    /// Every generator occurring in any leg.
    pub fn legs(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        self.terms.keys().flat_map(|k| k.iter().copied())
    }

    /// Common total doubled degree, `None` for zero or inhomogeneous tensors.
    pub fn total_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|k| k.iter().map(|b| b.dd).sum::<i32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn filter(&self, mut keep: impl FnMut(&[BasisIndex; K]) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (*k, c.clone())).collect() }
    }

    pub fn map_legs(&self, f: impl Fn(&[BasisIndex; K]) -> [BasisIndex; K]) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }
}

impl Tensor2 {
    /// `a ⊗ b` expanded bilinearly.
    pub fn product(a: &Element, b: &Element) -> Self {
        let mut t = Self::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                t.add_term([*x, *y], cx * cy);
            }
        }
        t
    }
}

impl<const K: usize> fmt::Display for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (legs, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", fmt_rational(&mag))?;
            }
            for (i, leg) in legs.iter().enumerate() {
                if i > 0 {
                    write!(f, " (x) ")?;
                }
                write!(f, "{leg}")?;
            }
        }
        Ok(())
    }
}

impl<const K: usize> Add for &Tensor<K> {
    type Output = Tensor<K>;
    fn add(self, rhs: Self) -> Tensor<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<const K: usize> Add for Tensor<K> {
    type Output = Tensor<K>;
    fn add(mut self, rhs: Self) -> Tensor<K> {
        self += &rhs;
        self
    }
}

impl<const K: usize> AddAssign<&Tensor<K>> for Tensor<K> {
    fn add_assign(&mut self, rhs: &Tensor<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl<const K: usize> Sub for &Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, rhs: Self) -> Tensor<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<const K: usize> Sub for Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, rhs: Self) -> Tensor<K> {
        &self - &rhs
    }
}

impl<const K: usize> Neg for Tensor<K> {
    type Output = Tensor<K>;
    fn neg(self) -> Tensor<K> {
        self.scale(&-Rational::one())
    }
}

impl<const K: usize> Neg for &Tensor<K> {
    type Output = Tensor<K>;
    fn neg(self) -> Tensor<K> {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn display_and_cancellation() {
        let mut t = Tensor2::from_terms([
            ([BasisIndex::l(0), BasisIndex::l(1)], q(1)),
            ([BasisIndex::l(1), BasisIndex::l(0)], q(-1)),
        ]);
        assert_eq!(t.to_string(), "L[0] (x) L[1] - L[1] (x) L[0]");
        t.add_term([BasisIndex::l(0), BasisIndex::l(1)], q(-1));
        assert_eq!(t.to_string(), "-L[1] (x) L[0]");
        let u = Tensor3::term([BasisIndex::c(), BasisIndex::m(0), BasisIndex::y(1)], qf(3, 2));
        assert_eq!(u.to_string(), "3/2*c (x) M[0] (x) Y[1/2]");
    }

    #[test]
    fn product_is_bilinear() {
        let a = Element::from_terms([(BasisIndex::l(1), q(2)), (BasisIndex::m(1), q(1))]);
        let b = Element::basis(BasisIndex::c());
        let t = Tensor2::product(&a, &b);
        assert_eq!(t.len(), 2);
        assert_eq!(t.coeff(&[BasisIndex::l(1), BasisIndex::c()]), q(2));
        assert_eq!(t.total_degree(), Some(2));
    }
}
