use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::basis::{BasisIndex, HalfInt};
use crate::rational::{fmt_rational, Rational};

/// A finitely supported vector of `L^s_λ`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<BasisIndex, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: BasisIndex) -> Self {
        Self::term(index, Rational::one())
    }

    pub fn term(index: BasisIndex, coeff: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisIndex, Rational)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, index: BasisIndex, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
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

    pub fn add_scaled(&mut self, other: &Element, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (i, c) in &other.terms {
            self.add_term(*i, c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Element {
        if factor.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(i, c)| (*i, c * factor)).collect(),
        }
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

    pub fn coeff(&self, index: BasisIndex) -> Rational {
        self.terms.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        self.terms.keys().copied()
    }

    /// Drops every term whose index fails `keep`.
    pub fn filter(&self, mut keep: impl FnMut(BasisIndex) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| keep(**i))
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (index, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{index}")?;
            } else {
                write!(f, "{}*{index}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (i, c) in &rhs.terms {
            self.add_term(*i, c.clone());
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Rational> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Rational) -> Element {
        self.scale(rhs)
    }
}

/// Result of [`degree_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero element has every degree.
    Any,
    Homogeneous(HalfInt),
    Inhomogeneous,
}

pub fn degree_of(x: &Element) -> Degree {
    let mut dds = x.support().map(|i| i.dd);
    match dds.next() {
        None => Degree::Any,
        Some(first) => {
            if dds.all(|d| d == first) {
                Degree::Homogeneous(HalfInt(first))
            } else {
                Degree::Inhomogeneous
            }
        }
    }
}
