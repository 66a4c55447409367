use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SvlieError};
use crate::rational::{fmt_rational, parse_rational, q, qf, Rational};

/// Which half of the family: `s = 0` (twisted) or `s = 1/2` (original).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1/2")]
    Half,
}

impl Sector {
    /// `2s`, i.e. 0 or 1.
    pub fn doubled(self) -> i32 {
        match self {
            Sector::Zero => 0,
            Sector::Half => 1,
        }
    }

    pub fn value(self) -> Rational {
        match self {
            Sector::Zero => q(0),
            Sector::Half => qf(1, 2),
        }
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        if *r == q(0) {
            Ok(Sector::Zero)
        } else if *r == qf(1, 2) {
            Ok(Sector::Half)
        } else {
            Err(SvlieError::InvalidParams(format!(
                "s must be 0 or 1/2, got {}",
                fmt_rational(r)
            )))
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let r = parse_rational(text)
            .ok_or_else(|| SvlieError::InvalidParams(format!("not a rational: {text:?}")))?;
        Self::from_rational(&r)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Zero => write!(f, "0"),
            Sector::Half => write!(f, "1/2"),
        }
    }
}

/// Selects one algebra `L^s_λ`, with or without the central element `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    pub s: Sector,
    pub lambda: Rational,
    /// When false, `c` is quotiented out: bracket results lose their `c` part.
    pub central: bool,
}

impl AlgebraParams {
    pub fn new(s: Sector, lambda: Rational, central: bool) -> Self {
        Self { s, lambda, central }
    }

    /// Checks the parity rule for `index` against this algebra.
    pub fn validate(&self, index: BasisIndex) -> Result<()> {
        let ok = match index.kind {
            Kind::L | Kind::M => index.dd.rem_euclid(2) == 0,
            Kind::Y => index.dd.rem_euclid(2) == self.s.doubled(),
            Kind::C => index.dd == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(SvlieError::InvalidIndex {
                index,
                reason: format!("parity does not match s = {}", self.s),
            })
        }
    }

    pub fn is_valid(&self, index: BasisIndex) -> bool {
        self.validate(index).is_ok()
    }

    /// All basis indices of doubled degree `dd` (including `c` at 0 when central).
    pub fn basis_at(&self, dd: i32) -> Vec<BasisIndex> {
        let mut out = Vec::with_capacity(4);
        if dd.rem_euclid(2) == 0 {
            out.push(BasisIndex::new(Kind::L, dd));
            out.push(BasisIndex::new(Kind::M, dd));
        }
        if dd.rem_euclid(2) == self.s.doubled() {
            out.push(BasisIndex::new(Kind::Y, dd));
        }
        if dd == 0 && self.central {
            out.push(BasisIndex::c());
        }
        out
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={}, lambda={}, central={}",
            self.s,
            fmt_rational(&self.lambda),
            self.central
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    L,
    M,
    Y,
    C,
}

/// A generator tag with doubled degree; ordering is `(kind, dd)` with `L < M < Y < C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub kind: Kind,
    pub dd: i32,
}

impl BasisIndex {
    pub const fn new(kind: Kind, dd: i32) -> Self {
        Self { kind, dd }
    }

    /// `L_n` (integer degree `n`).
    pub const fn l(n: i32) -> Self {
        Self::new(Kind::L, 2 * n)
    }

    /// `M_n` (integer degree `n`).
    pub const fn m(n: i32) -> Self {
        Self::new(Kind::M, 2 * n)
    }

    /// `Y` at doubled degree `dd`; `Y_{1/2}` is `y(1)`.
    pub const fn y(dd: i32) -> Self {
        Self::new(Kind::Y, dd)
    }

    pub const fn c() -> Self {
        Self::new(Kind::C, 0)
    }

    pub fn degree(self) -> HalfInt {
        HalfInt(self.dd)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::L => write!(f, "L[{}]", HalfInt(self.dd)),
            Kind::M => write!(f, "M[{}]", HalfInt(self.dd)),
            Kind::Y => write!(f, "Y[{}]", HalfInt(self.dd)),
            Kind::C => write!(f, "c"),
        }
    }
}

/// A half-integer stored doubled: `HalfInt(3)` is `3/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub fn from_integer(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub fn doubled(self) -> i32 {
        self.0
    }

    pub fn to_rational(self) -> Rational {
        qf(self.0 as i64, 2)
    }

    pub fn from_rational(r: &Rational) -> Option<Self> {
        let twice = r * q(2);
        if !twice.is_integer() {
            return None;
        }
        let v: i64 = twice.numer().try_into().ok()?;
        i32::try_from(v).ok().map(HalfInt)
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::from_rational(&parse_rational(text)?)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        HalfInt::parse(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("not a half-integer: {text:?}")))
    }
}

/// Doubled-degree interval `[lo, hi]` with `lo <= 0 <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > 0 || hi < 0 {
            return Err(SvlieError::InvalidWindow {
                lo,
                hi,
                reason: "window must contain 0".into(),
            });
        }
        Ok(Self { lo, hi })
    }

    /// `[-n, n]` in doubled degree.
    pub fn symmetric(n: i32) -> Self {
        let n = n.abs();
        Self { lo: -n, hi: n }
    }

    pub fn contains(&self, dd: i32) -> bool {
        self.lo <= dd && dd <= self.hi
    }

    pub fn contains_index(&self, index: BasisIndex) -> bool {
        self.contains(index.dd)
    }

    /// The half-size window used for interior restriction.
    pub fn interior(&self) -> Window {
        Window {
            lo: -((-self.lo) / 2),
            hi: self.hi / 2,
        }
    }

    pub fn radius(&self) -> i32 {
        self.hi.max(-self.lo)
    }

    /// Every valid generator of `p` inside the window, in canonical order.
    pub fn generators(&self, p: &AlgebraParams) -> Vec<BasisIndex> {
        let mut out: Vec<BasisIndex> = (self.lo..=self.hi).flat_map(|dd| p.basis_at(dd)).collect();
        out.sort();
        out
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
