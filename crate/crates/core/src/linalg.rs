//! Exact sparse linear algebra over the integers.
//!
//! Rows are primitive integer vectors (content 1, positive leading entry).
//! Elimination is fraction-free: a row `r` is reduced by a pivot row `p` at
//! column `k` as `p[k]*r - r[k]*p`, then divided by its content. Entries are
//! `i128` until an operation overflows, after which that entry becomes a
//! `BigInt`; results are identical either way.
//!
//! The pivot of a row is its lowest column. Callers choose the column order,
//! which makes the echelon form (and every certificate derived from it)
//! deterministic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::rational::Rational;

/// Integer with a machine-word fast path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Int {
    Small(i128),
    Big(BigInt),
}

impl Int {
    fn from_big(b: BigInt) -> Int {
        match b.to_i128() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    fn neg(&self) -> Int {
        match self {
            Int::Small(v) => v.checked_neg().map(Int::Small).unwrap_or_else(|| Int::Big(-BigInt::from(*v))),
            Int::Big(b) => Int::from_big(-b),
        }
    }

    fn mul(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() * o.to_big())
    }

    fn sub(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() - o.to_big())
    }

    fn gcd(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if *a != i128::MIN && *b != i128::MIN {
                return Int::Small(a.abs().gcd(&b.abs()));
            }
        }
        Int::from_big(self.to_big().gcd(&o.to_big()))
    }

    fn div_exact(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(v) = a.checked_div(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() / o.to_big())
    }

    fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.to_big())
    }
}

/// A sparse primitive integer row, sorted by column, without zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Row {
    pub entries: Vec<(usize, Int)>,
}

impl Row {
    /// Scales a rational row to a primitive integer row (same direction).
    pub fn from_rational<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> Row {
        let mut map: HashMap<usize, Rational> = HashMap::new();
        for (c, v) in entries {
            *map.entry(c).or_insert_with(Rational::zero) += v;
        }
        let mut sorted: Vec<(usize, Rational)> = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        sorted.sort_by_key(|(c, _)| *c);
        let mut lcm = BigInt::one();
        for (_, v) in &sorted {
            lcm = lcm.lcm(v.denom());
        }
        let mut row = Row {
            entries: sorted
                .into_iter()
                .map(|(c, v)| (c, Int::from_big(v.numer() * (&lcm / v.denom()))))
                .collect(),
        };
        row.normalize();
        row
    }

    /// Builds a primitive row from fractions `(col, num, den)` with `den > 0`,
    /// summing repeated columns. `None` if an intermediate overflows `i128`;
    /// callers then fall back to [`Row::from_rational`].
    pub fn from_fractions(mut entries: Vec<(usize, i128, i128)>) -> Option<Row> {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, i128, i128)> = Vec::with_capacity(entries.len());
        for (c, n, d) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => {
                    let num = last.1.checked_mul(d)?.checked_add(n.checked_mul(last.2)?)?;
                    let den = last.2.checked_mul(d)?;
                    let g = num.gcd(&den).max(1);
                    *last = (c, num / g, den / g);
                }
                _ => merged.push((c, n, d)),
            }
        }
        merged.retain(|e| e.1 != 0);
        let mut lcm: i128 = 1;
        for e in &merged {
            lcm = (lcm / lcm.gcd(&e.2)).checked_mul(e.2)?;
        }
        let mut out = Vec::with_capacity(merged.len());
        for (c, n, d) in merged {
            out.push((c, Int::Small(n.checked_mul(lcm / d)?)));
        }
        let mut row = Row { entries: out };
        row.normalize();
        Some(row)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Option<&Int> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Divides by the content and makes the leading entry positive.
    fn normalize(&mut self) {
        let Some((_, first)) = self.entries.first() else { return };
        let negate = first.is_negative();
        let mut g = Int::Small(0);
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if negate {
            g = g.neg();
        }
        if !g.is_one() {
            for (_, v) in self.entries.iter_mut() {
                *v = v.div_exact(&g);
            }
        }
    }

    /// `a*self - b*other`, normalized.
    fn combine(&self, a: &Int, other: &Row, b: &Int) -> Row {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while i < x.len() || j < y.len() {
            let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
            let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
            if take_x {
                out.push((x[i].0, a.mul(&x[i].1)));
                i += 1;
            } else if take_y {
                out.push((y[j].0, b.mul(&y[j].1).neg()));
                j += 1;
            } else {
                let v = a.mul(&x[i].1).sub(&b.mul(&y[j].1));
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        let mut row = Row { entries: out };
        row.normalize();
        row
    }

    /// Eliminates `col` from `self` using `pivot`, whose leading column is `col`.
    fn eliminate(&self, col: usize, pivot: &Row) -> Row {
        match self.get(col) {
            None => self.clone(),
            Some(v) => {
                let p = &pivot.entries[0].1;
                let g = p.gcd(v);
                self.combine(&p.div_exact(&g), pivot, &v.div_exact(&g))
            }
        }
    }

    pub fn to_rational(&self) -> Vec<(usize, Rational)> {
        self.entries.iter().map(|(c, v)| (*c, v.to_rational())).collect()
    }
}

/// Row echelon form built by inserting rows one at a time.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: HashMap<usize, usize>,
    rows: Vec<Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces leading entries against existing pivots until the lead is new.
    pub fn reduce(&self, mut row: Row) -> Row {
        while let Some(lead) = row.lead() {
            match self.pivots.get(&lead) {
                Some(&idx) => row = row.eliminate(lead, &self.rows[idx]),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, row: Row) -> Option<usize> {
        let row = self.reduce(row);
        let lead = row.lead()?;
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        Some(lead)
    }

    pub fn contains(&self, row: &Row) -> bool {
        self.reduce(row.clone()).is_zero()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// Reduced row echelon form: pivot rows sorted by pivot, each pivot column
    /// cleared from every other row.
    pub fn reduced(&self) -> Vec<Row> {
        let mut rows: Vec<Row> = self.rows.clone();
        rows.sort_by_key(|r| r.lead());
        // Back-substitution from the last pivot keeps later rows already reduced.
        for i in (0..rows.len()).rev() {
            let col = rows[i].lead().expect("nonzero pivot row");
            let (head, tail) = rows.split_at_mut(i);
            let pivot = &tail[0];
            for r in head.iter_mut() {
                if r.get(col).is_some() {
                    *r = r.eliminate(col, pivot);
                }
            }
        }
        rows
    }

    /// Kernel basis over columns `0..ncols`, one vector per free column in
    /// increasing order, each with coefficient 1 on its free column.
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<(usize, Rational)>> {
        let rref = self.reduced();
        let pivot_set: HashMap<usize, usize> =
            rref.iter().enumerate().map(|(i, r)| (r.lead().unwrap(), i)).collect();
        // For each free column, rows that mention it.
        let mut by_free: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
        for r in &rref {
            let (pc, pv) = (&r.entries[0].0, r.entries[0].1.to_rational());
            for (c, v) in &r.entries[1..] {
                by_free.entry(*c).or_default().push((*pc, -v.to_rational() / &pv));
            }
        }
        (0..ncols)
            .filter(|c| !pivot_set.contains_key(c))
            .map(|f| {
                let mut v = by_free.remove(&f).unwrap_or_default();
                v.push((f, Rational::one()));
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }
}

/// Rank of a list of rational rows.
pub fn rank(rows: &[Vec<(usize, Rational)>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(Row::from_rational(r.iter().cloned()));
    }
    e.rank()
}

/// Kernel basis of a list of rational rows over `ncols` unknowns.
pub fn kernel_basis(rows: &[Vec<(usize, Rational)>], ncols: usize) -> Vec<Vec<(usize, Rational)>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(Row::from_rational(r.iter().cloned()));
    }
    e.kernel(ncols)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits rows into groups that share no column. Groups are ordered by their
/// smallest column; rows keep their relative order within a group.
pub fn components(rows: Vec<Row>, ncols: usize) -> Vec<Vec<Row>> {
    let mut parent: Vec<usize> = (0..ncols).collect();
    for r in &rows {
        if let Some(first) = r.lead() {
            let a = find(&mut parent, first);
            for (c, _) in &r.entries[1..] {
                let b = find(&mut parent, *c);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Row>)> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for r in rows {
        let Some(lead) = r.lead() else { continue };
        let root = find(&mut parent, lead);
        let gi = *index.entry(root).or_insert_with(|| {
            groups.push((root, Vec::new()));
            groups.len() - 1
        });
        groups[gi].1.push(r);
    }
    groups.sort_by_key(|(root, _)| *root);
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Echelon forms of independent row groups, computed in parallel.
pub fn echelon_by_component(rows: Vec<Row>, ncols: usize) -> Vec<Echelon> {
    components(rows, ncols)
        .into_par_iter()
        .map(|mut group| {
            // Sparse rows first: they become pivots and keep fill and entry growth down.
            group.sort_by_key(|r| r.entries.len());
            let mut e = Echelon::new();
            for r in group {
                e.insert(r);
            }
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn row(v: &[(usize, i64)]) -> Vec<(usize, Rational)> {
        v.iter().map(|(c, x)| (*c, q(*x))).collect()
    }

    #[test]
    fn primitive_normalization() {
        let r = Row::from_rational(vec![(2, qf(-1, 2)), (5, qf(3, 4))]);
        assert_eq!(r.entries, vec![(2, Int::Small(2)), (5, Int::Small(-3))]);
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![row(&[(0, 1), (1, 2), (2, 3)]), row(&[(0, 2), (1, 4), (2, 6)]), row(&[(1, 1), (2, 1)])];
        assert_eq!(rank(&rows), 2);
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 1);
        // x0 + 2x1 + 3x2 = 0, x1 + x2 = 0, x2 = 1 -> x1 = -1, x0 = -1
        assert_eq!(k[0], vec![(0, q(-1)), (1, q(-1)), (2, q(1))]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX;
        let rows = vec![
            row(&[(0, big), (1, big - 1)]),
            row(&[(0, big - 2), (1, big)]),
            row(&[(0, 3), (1, 7), (2, big)]),
        ];
        assert_eq!(rank(&rows), 3);
        let k = kernel_basis(&rows, 4);
        assert_eq!(k, vec![vec![(3, q(1))]]);
    }

    #[test]
    fn components_split() {
        let rows = vec![
            Row::from_rational(row(&[(0, 1), (3, 1)])),
            Row::from_rational(row(&[(1, 1)])),
            Row::from_rational(row(&[(3, 2), (4, 1)])),
        ];
        let groups = components(rows, 5);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].len(), 2);
        let total: usize = echelon_by_component(groups.concat(), 5).iter().map(Echelon::rank).sum();
        assert_eq!(total, 3);
    }
}
