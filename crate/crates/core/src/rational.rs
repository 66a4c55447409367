//! Rational scalars and small helpers around `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/2"`; decimals and anything else are rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let valid_int = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    match den {
        None => Some(Rational::from_integer(n)),
        Some(d) => {
            if !valid_int(d, false) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

/// Canonical text form: `3`, `-1/2`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Clears denominators of a list of rationals and removes the common content,
/// returning primitive integers with the same projective direction.
pub fn primitive_integers<'a, I>(values: I) -> Vec<BigInt>
where
    I: IntoIterator<Item = &'a Rational> + Clone,
{
    let mut lcm = BigInt::one();
    for v in values.clone() {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = values
        .into_iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if !g.is_zero() && !g.is_one() {
        for i in ints.iter_mut() {
            *i /= &g;
        }
    }
    ints
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
