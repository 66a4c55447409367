//! Test-side oracle: structure constants written out from the defining
//! brackets, independent of the library's bracket code, plus proptest
//! strategies shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use svlie::prelude::*;

/// `[a, b]` of two basis vectors, straight from the bracket table with
/// degrees as rationals.
pub fn oracle_bracket(a: BasisIndex, b: BasisIndex, p: &AlgebraParams) -> BTreeMap<BasisIndex, Rational> {
    let mut out = BTreeMap::new();
    let deg = |x: BasisIndex| qf(x.dd as i64, 2);
    let lambda = p.lambda.clone();
    let sum = a.dd + b.dd;
    let mut put = |k: BasisIndex, c: Rational| {
        if c != q(0) {
            *out.entry(k).or_insert_with(|| q(0)) += c;
        }
    };
    match (a.kind, b.kind) {
        (Kind::L, Kind::L) => {
            let (n, m) = (deg(a), deg(b));
            put(BasisIndex::new(Kind::L, sum), &m - &n);
            if p.central && sum == 0 {
                put(BasisIndex::c(), (&m * &m * &m - &m) / q(12));
            }
        }
        (Kind::L, Kind::M) => put(BasisIndex::new(Kind::M, sum), deg(b) - &lambda * deg(a)),
        (Kind::L, Kind::Y) => put(BasisIndex::new(Kind::Y, sum), deg(b) - (&lambda + q(1)) / q(2) * deg(a)),
        (Kind::Y, Kind::Y) => put(BasisIndex::new(Kind::M, sum), deg(b) - deg(a)),
        (Kind::M, Kind::L) | (Kind::Y, Kind::L) => {
            for (k, c) in oracle_bracket(b, a, p) {
                put(k, -c);
            }
        }
        _ => {}
    }
    out.retain(|_, c| *c != q(0));
    out
}

pub fn oracle_bracket_elements(x: &Element, y: &Element, p: &AlgebraParams) -> Element {
    let mut out = Element::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            for (k, c) in oracle_bracket(*a, *b, p) {
                out.add_term(k, ca * cb * c);
            }
        }
    }
    out
}

/// `x·t` on a rank-2 tensor through the oracle bracket.
pub fn oracle_act2(x: &Element, t: &Tensor2, p: &AlgebraParams) -> Tensor2 {
    let mut out = Tensor2::zero();
    for ([a, b], c) in t.iter() {
        let left = oracle_bracket_elements(x, &Element::basis(*a), p);
        for (k, d) in left.iter() {
            out.add_term([*k, *b], c * d);
        }
        let right = oracle_bracket_elements(x, &Element::basis(*b), p);
        for (k, d) in right.iter() {
            out.add_term([*a, *k], c * d);
        }
    }
    out
}

/// Center spanned by single generators, found by bracketing against every
/// generator of `w` with the oracle.
pub fn oracle_center(p: &AlgebraParams, w: &Window) -> Vec<BasisIndex> {
    let gens = w.generators(p);
    gens.iter().copied().filter(|z| gens.iter().all(|g| oracle_bracket(*g, *z, p).is_empty())).collect()
}

/// `c(r) = [r12, r13] + [r12, r23] + [r13, r23]` through the oracle bracket.
pub fn oracle_ybe(r: &Tensor2, p: &AlgebraParams) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ([a, b], x) in r.iter() {
        for ([c, d], y) in r.iter() {
            let xy = x * y;
            for (k, e) in oracle_bracket(*a, *c, p) {
                out.add_term([k, *b, *d], &xy * e);
            }
            for (k, e) in oracle_bracket(*b, *c, p) {
                out.add_term([*a, k, *d], &xy * e);
            }
            for (k, e) in oracle_bracket(*b, *d, p) {
                out.add_term([*a, *c, k], &xy * e);
            }
        }
    }
    out
}

pub fn sector() -> impl Strategy<Value = Sector> {
    prop_oneof![Just(Sector::Zero), Just(Sector::Half)]
}

pub fn lambda() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

pub fn params() -> impl Strategy<Value = AlgebraParams> {
    (sector(), lambda(), any::<bool>()).prop_map(|(s, l, c)| AlgebraParams::new(s, l, c))
}

/// A valid non-central generator of `p` with `|n| ≤ 6`.
pub fn generator(p: &AlgebraParams) -> impl Strategy<Value = BasisIndex> {
    let half = p.s == Sector::Half;
    (0..3u8, -6i32..=6).prop_map(move |(k, n)| match k {
        0 => BasisIndex::l(n),
        1 => BasisIndex::m(n),
        _ => BasisIndex::y(2 * n + i32::from(half)),
    })
}

pub fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| qf(n, d))
}

pub fn element(p: &AlgebraParams) -> impl Strategy<Value = Element> {
    prop::collection::vec((generator(p), coeff()), 0..4).prop_map(Element::from_terms)
}

pub fn tensor2(p: &AlgebraParams) -> impl Strategy<Value = Tensor2> {
    prop::collection::vec((generator(p), generator(p), coeff()), 0..4)
        .prop_map(|terms| Tensor2::from_terms(terms.into_iter().map(|(a, b, c)| ([a, b], c))))
}

/// A skew tensor `Σ c (a⊗b − b⊗a)`.
pub fn skew_tensor(p: &AlgebraParams) -> impl Strategy<Value = Tensor2> {
    prop::collection::vec((generator(p), generator(p), coeff()), 1..3).prop_map(|terms| {
        let mut t = Tensor2::zero();
        for (a, b, c) in terms {
            t.add_term([a, b], c.clone());
            t.add_term([b, a], -c);
        }
        t
    })
}

/// Params paired with values drawn for them.
pub fn with_params<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(&AlgebraParams) -> S + Clone + 'static,
) -> impl Strategy<Value = (AlgebraParams, T)> {
    params().prop_flat_map(move |p| {
        let s = f(&p);
        (Just(p), s)
    })
}

pub fn skew(a: BasisIndex, b: BasisIndex) -> Tensor2 {
    Tensor2::from_terms([([a, b], q(1)), ([b, a], q(-1))])
}
