//! Exact sparse linear algebra over `Q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, BigRational>;

/// Add `c · src` into `dst`, dropping cancelled entries.
pub fn axpy(dst: &mut SparseVec, c: &BigRational, src: &SparseVec) {
    for (&k, v) in src {
        let e = dst.entry(k).or_insert_with(BigRational::zero);
        *e += c * v;
        if e.is_zero() {
            dst.remove(&k);
        }
    }
}

/// An echelon basis grown one vector at a time.
///
/// Every stored row has a pivot (its first column) with coefficient one and
/// is reduced against all earlier pivots, so membership and reduction are
/// exact.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Reduce `v` modulo the span: the result has no entry in a pivot column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[&k];
            axpy(&mut v, &(-c), row);
            cursor = k + 1;
        }
        v
    }

    /// Insert `v`; returns true when it was independent of the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, c)) = r.iter().next() else { return false };
        let inv = c.recip();
        let r: SparseVec = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        // keep earlier rows reduced in the new pivot column
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &(-c), &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a dense integer matrix given row by row.
pub fn rank_dense(rows: &[Vec<i64>]) -> usize {
    rank(rows.iter().map(|r| {
        r.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| (k, BigRational::from_integer(x.into())))
            .collect::<SparseVec>()
    }))
}

/// A sparse integer vector: column index to nonzero entry.
pub type IntVec = BTreeMap<usize, BigInt>;

/// Scale a rational row to a primitive integer row with the same span.
pub fn primitive(v: &SparseVec) -> IntVec {
    let mut den = BigInt::one();
    for c in v.values() {
        den = den.lcm(c.denom());
    }
    let mut out: IntVec = v.iter().map(|(&k, c)| (k, (c * BigRational::from_integer(den.clone())).to_integer())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut IntVec) {
    let mut g = BigInt::zero();
    for c in v.values() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.values_mut() {
            *c /= &g;
        }
    }
}

/// A row echelon form over `Z` built by fraction-free elimination.
///
/// Rows are kept primitive and only forward elimination is performed, which
/// is all a rank computation needs.
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    rows: BTreeMap<usize, IntVec>,
}

impl IntEchelon {
    pub fn new() -> Self {
        IntEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert `v`; returns true when it was independent of the span.
    pub fn insert(&mut self, mut v: IntVec) -> bool {
        v.retain(|_, c| !c.is_zero());
        loop {
            let Some((&lead, a)) = v.iter().next() else { return false };
            let Some(row) = self.rows.get(&lead) else {
                make_primitive(&mut v);
                if v[&lead].is_negative() {
                    for c in v.values_mut() {
                        *c = -&*c;
                    }
                }
                self.rows.insert(lead, v);
                return true;
            };
            let b = &row[&lead];
            let g = a.gcd(b);
            let (fa, fb) = (b / &g, a / &g);
            let mut next: IntVec = BTreeMap::new();
            for (&k, c) in &v {
                if k != lead {
                    next.insert(k, c * &fa);
                }
            }
            for (&k, c) in row {
                if k == lead {
                    continue;
                }
                let e = next.entry(k).or_insert_with(BigInt::zero);
                *e -= c * &fb;
                if e.is_zero() {
                    next.remove(&k);
                }
            }
            make_primitive(&mut next);
            v = next;
        }
    }
}

/// Rank of rational rows by fraction-free integer elimination.
pub fn rank_fraction_free<'a>(rows: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut e = IntEchelon::new();
    for r in rows {
        e.insert(primitive(r));
    }
    e.rank()
}

/// A sparse vector with a single unit entry.
pub fn unit(k: usize) -> SparseVec {
    BTreeMap::from([(k, BigRational::one())])
}
