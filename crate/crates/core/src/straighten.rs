//! Defining quadrics of the pure-spinor cone, their loop versions on
//! intervals, straightening relations and normal forms in `A[δ,δ′]`.
//!
//! Variables: `λ = (0)`, `w_ij = (ij)`, `p_i = (i)`. The ten quadrics are
//! `(−1)^{i+1} λ p_i − Pf_i(w)` and `Σ_j p_j w_ji` with
//! `Pf_i(w) = w_jk w_lm − w_jl w_km + w_jm w_kl` for the ordered complement
//! `j < k < l < m` of `i`, and `w_ji = −w_ij`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::rat;
use crate::poset::{is_clutter, join, meet, Label, Vertex};
use crate::weight::Weight;

/// Which of the ten cone quadrics a relation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QuadricKind {
    /// `(−1)^{i+1} λ p_i − Pf_i(w)`.
    Pfaffian(u8),
    /// `Σ_j p_j w_ji`.
    Contraction(u8),
}

impl QuadricKind {
    pub const ALL: [QuadricKind; 10] = [
        QuadricKind::Pfaffian(1),
        QuadricKind::Pfaffian(2),
        QuadricKind::Pfaffian(3),
        QuadricKind::Pfaffian(4),
        QuadricKind::Pfaffian(5),
        QuadricKind::Contraction(1),
        QuadricKind::Contraction(2),
        QuadricKind::Contraction(3),
        QuadricKind::Contraction(4),
        QuadricKind::Contraction(5),
    ];
}

/// An unordered pair of vertices, stored sorted by the total order.
pub type Pair = (Vertex, Vertex);

pub fn pair(a: Vertex, b: Vertex) -> Pair {
    if a <= b { (a, b) } else { (b, a) }
}

/// A homogeneous quadratic relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricRelation {
    pub terms: BTreeMap<Pair, BigRational>,
    /// Cone quadric and mode index `k` (the `z^k` coefficient).
    pub tag: (QuadricKind, i64),
}

impl QuadricRelation {
    pub fn clutters(&self) -> Vec<Pair> {
        self.terms.keys().copied().filter(|(a, b)| is_clutter(*a, *b)).collect()
    }

    /// Common Aut-weight of the monomials, if they share one.
    pub fn weight(&self) -> Option<Weight> {
        let mut ws = self.terms.keys().map(|(a, b)| a.weight() + b.weight());
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    /// Plain polynomial text with variables written `x[label^level]`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for ((a, b), c) in &self.terms {
            let sign = if c < &BigRational::zero() { "-" } else { "+" };
            let abs = if c < &BigRational::zero() { -c.clone() } else { c.clone() };
            if s.is_empty() && sign == "+" {
                s.push_str(&format!("{abs}*x[{a}]*x[{b}]"));
            } else {
                s.push_str(&format!(" {sign} {abs}*x[{a}]*x[{b}]"));
            }
        }
        if s.is_empty() { "0".into() } else { s }
    }
}

/// JSON form of a relation: `(vertex, vertex, coefficient)` rows.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationExport {
    pub tag: String,
    pub terms: Vec<(String, String, String)>,
    pub text: String,
}

impl From<&QuadricRelation> for RelationExport {
    fn from(r: &QuadricRelation) -> Self {
        RelationExport {
            tag: format!("{:?} k={}", r.tag.0, r.tag.1),
            terms: r.terms.iter().map(|((a, b), c)| (a.to_string(), b.to_string(), c.to_string())).collect(),
            text: r.to_text(),
        }
    }
}

impl fmt::Display for QuadricRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn pair_label(i: u8, j: u8) -> Label {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    Label::from_name(&format!("{a}{b}")).expect("pair label")
}

fn single_label(i: u8) -> Label {
    Label::from_name(&i.to_string()).expect("single label")
}

/// Cone quadric as a list of bilinear terms `c · x ⊗ y` on labels.
fn bilinear(kind: QuadricKind) -> Vec<(i64, Label, Label)> {
    match kind {
        QuadricKind::Pfaffian(i) => {
            let e = if i % 2 == 1 { 1 } else { -1 };
            let c: Vec<u8> = (1..=5).filter(|&x| x != i).collect();
            let (j, k, l, m) = (c[0], c[1], c[2], c[3]);
            vec![
                (e, Label::L0, single_label(i)),
                (-1, pair_label(j, k), pair_label(l, m)),
                (1, pair_label(j, l), pair_label(k, m)),
                (-1, pair_label(j, m), pair_label(k, l)),
            ]
        }
        QuadricKind::Contraction(i) => (1..=5u8)
            .filter(|&j| j != i)
            .map(|j| (if j < i { 1 } else { -1 }, single_label(j), pair_label(j, i)))
            .collect(),
    }
}

/// The `z^k` coefficient of a cone quadric evaluated on `λ(z) = Σ_l λ^{β^l} z^l`,
/// with only the variables accepted by `present` kept.
fn loop_relation(kind: QuadricKind, k: i64, levels: (i64, i64), present: &dyn Fn(Vertex) -> bool) -> QuadricRelation {
    let mut terms: BTreeMap<Pair, BigRational> = BTreeMap::new();
    for (c, x, y) in bilinear(kind) {
        for l in levels.0..=levels.1 {
            let m = k - l;
            if m < levels.0 || m > levels.1 {
                continue;
            }
            let (a, b) = (Vertex::new(x, l), Vertex::new(y, m));
            if !present(a) || !present(b) {
                continue;
            }
            let e = terms.entry(pair(a, b)).or_insert_with(BigRational::zero);
            *e += rat(c);
        }
    }
    terms.retain(|_, c| !c.is_zero());
    QuadricRelation { terms, tag: (kind, k) }
}

/// The ten quadrics on the sixteen level-zero variables.
pub fn cone_relations() -> Vec<QuadricRelation> {
    QuadricKind::ALL.iter().map(|&kind| loop_relation(kind, 0, (0, 0), &|_| true)).collect()
}

/// Loop relations of an interval: the `z^k` coefficients for `2N ≤ k ≤ 2N′`,
/// where `[N, N′]` is the level range of the interval, with absent
/// variables set to zero. Relations that vanish identically are dropped.
pub fn loop_relations(i: &Interval) -> Vec<QuadricRelation> {
    let levels = level_range(i.elements());
    let present = |v: Vertex| i.contains(v);
    let mut out = Vec::new();
    for k in 2 * levels.0..=2 * levels.1 {
        for &kind in &QuadricKind::ALL {
            let r = loop_relation(kind, k, levels, &present);
            if !r.terms.is_empty() {
                out.push(r);
            }
        }
    }
    out
}

fn level_range(elems: &[Vertex]) -> (i64, i64) {
    let lo = elems.iter().map(|v| v.level).min().unwrap_or(0);
    let hi = elems.iter().map(|v| v.level).max().unwrap_or(0);
    (lo, hi)
}

/// Enumerate the weak `d`-chains of an interval as sorted index vectors.
pub fn standard_monomials(elems: &[Vertex], d: usize) -> Vec<Vec<usize>> {
    let n = elems.len();
    let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| crate::poset::leq(elems[a], elems[b])).collect()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, leq: &[Vec<bool>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for b in start..n {
            if cur.last().is_none_or(|&a| leq[a][b]) {
                cur.push(b);
                rec(n, d, leq, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, d, &leq, &mut cur, &mut out);
    out
}

/// Number of standard monomials of degree `d`.
pub fn standard_monomial_count(elems: &[Vertex], d: usize) -> num_bigint::BigInt {
    crate::hilbert::hilbert_function(elems, d)[d].clone()
}

/// A straightening relation `λ^α λ^β = Σ c_{γδ} λ^γ λ^δ` with standard right side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightening {
    pub clutter: Pair,
    pub rhs: BTreeMap<Pair, BigRational>,
}

impl Straightening {
    /// The relation `clutter − rhs`.
    pub fn relation(&self) -> QuadricRelation {
        let mut terms = BTreeMap::from([(self.clutter, BigRational::one())]);
        for (p, c) in &self.rhs {
            terms.insert(*p, -c.clone());
        }
        QuadricRelation { terms, tag: (QuadricKind::Pfaffian(0), 0) }
    }

    /// Coefficient of `λ^{α∧β} λ^{α∨β}`.
    pub fn rectangle_coefficient(&self) -> BigRational {
        let (a, b) = self.clutter;
        self.rhs.get(&pair(meet(a, b), join(a, b))).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Keep only the clutter and rectangle terms (the Hibi degeneration).
    pub fn hibi_contract(&self) -> Straightening {
        let (a, b) = self.clutter;
        let key = pair(meet(a, b), join(a, b));
        let rhs = self.rhs.iter().filter(|(p, _)| **p == key).map(|(p, c)| (*p, c.clone())).collect();
        Straightening { clutter: self.clutter, rhs }
    }

    /// Exponent of `h` attached to a right-hand term in the degeneration family.
    pub fn h_exponent(&self, term: Pair) -> i64 {
        let (a, b) = self.clutter;
        term.0.ell() + term.1.ell() - a.ell() - b.ell()
    }
}

/// All straightening relations of an interval, obtained by row reduction of
/// the degree-two loop relations with the clutter monomials as pivots.
#[derive(Clone, Debug)]
pub struct StraighteningTable {
    pub elements: Vec<Vertex>,
    pub rules: BTreeMap<Pair, Straightening>,
    /// Rank of the degree-two relations.
    pub rank: usize,
}

impl StraighteningTable {
    pub fn new(i: &Interval) -> Result<StraighteningTable> {
        let elems = i.elements().to_vec();
        let mut monos: Vec<Pair> = Vec::new();
        let n = elems.len();
        for a in 0..n {
            for b in a..n {
                monos.push((elems[a], elems[b]));
            }
        }
        // clutter columns first so that they become pivots
        monos.sort_by_key(|p| (!is_clutter(p.0, p.1), *p));
        let col: HashMap<Pair, usize> = monos.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let n_clutters = monos.iter().filter(|p| is_clutter(p.0, p.1)).count();
        let mut ech = Echelon::new();
        for r in loop_relations(i) {
            let v: SparseVec = r.terms.iter().map(|(p, c)| (col[p], c.clone())).collect();
            ech.insert(v);
        }
        let rank = ech.rank();
        let mut rules = BTreeMap::new();
        for &p in ech.pivots() {
            if p >= n_clutters {
                return Err(Error::Unsupported(format!("relation without clutter in {i}")));
            }
            let row = ech.row(p).unwrap();
            let rhs: BTreeMap<Pair, BigRational> =
                row.iter().filter(|(k, _)| **k != p).map(|(k, c)| (monos[*k], -c.clone())).collect();
            if rhs.keys().any(|k| col[k] < n_clutters) {
                return Err(Error::Unsupported(format!("degree-two relations of {i} do not straighten")));
            }
            rules.insert(monos[p], Straightening { clutter: monos[p], rhs });
        }
        Ok(StraighteningTable { elements: elems, rules, rank })
    }

    /// The straightening of one clutter.
    pub fn straighten(&self, a: Vertex, b: Vertex) -> Result<&Straightening> {
        if !self.elements.contains(&a) {
            return Err(Error::NotInInterval(a.to_string()));
        }
        if !self.elements.contains(&b) {
            return Err(Error::NotInInterval(b.to_string()));
        }
        if !is_clutter(a, b) {
            return Err(Error::NotClutter(a.to_string(), b.to_string()));
        }
        self.rules.get(&pair(a, b)).ok_or_else(|| Error::Unsupported(format!("no relation for ({a},{b})")))
    }
}

/// Straighten one clutter of an interval.
pub fn straighten(a: Vertex, b: Vertex, i: &Interval) -> Result<Straightening> {
    StraighteningTable::new(i)?.straighten(a, b).cloned()
}

/// Rank of the ideal in degree `d` on the full monomial basis, by
/// multiplying every loop relation by every monomial of degree `d − 2`.
/// The result is computed per Aut-weight slice.
pub fn ideal_rank_in_degree(i: &Interval, d: usize) -> usize {
    let elems = i.elements();
    let n = elems.len();
    let idx: HashMap<Vertex, usize> = elems.iter().enumerate().map(|(k, v)| (*v, k)).collect();
    let rels: Vec<Vec<(Vec<usize>, BigRational)>> = loop_relations(i)
        .into_iter()
        .map(|r| r.terms.into_iter().map(|((a, b), c)| (vec![idx[&a], idx[&b]], c)).collect())
        .collect();
    if d < 2 {
        return 0;
    }
    let weight_of = |m: &[usize]| -> Weight { m.iter().map(|&k| elems[k].weight()).sum() };
    let cofactors = all_monomials(n, d - 2);
    // group products by weight
    let mut slices: BTreeMap<Weight, Vec<Vec<(Vec<usize>, BigRational)>>> = BTreeMap::new();
    for r in &rels {
        let rw = weight_of(&r[0].0);
        for m in &cofactors {
            let w = rw + weight_of(m);
            let prod: Vec<(Vec<usize>, BigRational)> = r
                .iter()
                .map(|(mono, c)| {
                    let mut x = mono.clone();
                    x.extend_from_slice(m);
                    x.sort_unstable();
                    (x, c.clone())
                })
                .collect();
            slices.entry(w).or_default().push(prod);
        }
    }
    let mut total = 0;
    for rows in slices.into_values() {
        let mut col: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut ech = Echelon::new();
        for row in rows {
            let mut v = SparseVec::new();
            for (m, c) in row {
                let len = col.len();
                let k = *col.entry(m).or_insert(len);
                let e = v.entry(k).or_insert_with(BigRational::zero);
                *e += c;
            }
            v.retain(|_, c| !c.is_zero());
            ech.insert(v);
        }
        total += ech.rank();
    }
    total
}

/// All sorted index vectors of length `d` over `0..n` (monomials of degree `d`).
pub fn all_monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for b in start..n {
            cur.push(b);
            rec(n, d, cur, out);
            cur.pop();
        }
    }
    rec(n, d, &mut cur, &mut out);
    out
}

/// Normal forms of monomials in the standard-monomial basis.
///
/// Monomials are sorted index vectors into the interval's element list;
/// results are sparse combinations of standard monomials.
pub struct NormalForm {
    pub elements: Vec<Vertex>,
    leq: Vec<Vec<bool>>,
    rules: HashMap<(usize, usize), Vec<((usize, usize), BigRational)>>,
    memo: HashMap<Vec<usize>, BTreeMap<Vec<usize>, BigRational>>,
}

impl NormalForm {
    pub fn new(table: &StraighteningTable) -> NormalForm {
        let elems = table.elements.clone();
        let n = elems.len();
        let idx: HashMap<Vertex, usize> = elems.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| crate::poset::leq(elems[a], elems[b])).collect()).collect();
        let rules = table
            .rules
            .iter()
            .map(|((a, b), s)| {
                let key = (idx[a], idx[b]);
                let rhs = s.rhs.iter().map(|((g, d), c)| ((idx[g], idx[d]), c.clone())).collect();
                (key, rhs)
            })
            .collect();
        NormalForm { elements: elems, leq, rules, memo: HashMap::new() }
    }

    pub fn is_standard(&self, m: &[usize]) -> bool {
        m.windows(2).all(|w| self.leq[w[0]][w[1]])
    }

    fn first_clutter(&self, m: &[usize]) -> Option<(usize, usize)> {
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if !self.leq[m[i]][m[j]] && !self.leq[m[j]][m[i]] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Normal form of a (sorted) monomial.
    pub fn reduce(&mut self, m: &[usize]) -> BTreeMap<Vec<usize>, BigRational> {
        if self.is_standard(m) {
            return BTreeMap::from([(m.to_vec(), BigRational::one())]);
        }
        if let Some(r) = self.memo.get(m) {
            return r.clone();
        }
        let (i, j) = self.first_clutter(m).unwrap();
        let key = (m[i].min(m[j]), m[i].max(m[j]));
        let rhs = self.rules.get(&key).cloned().unwrap_or_default();
        let mut rest: Vec<usize> = m.to_vec();
        rest.remove(j);
        rest.remove(i);
        let mut out: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for ((g, d), c) in rhs {
            let mut x = rest.clone();
            x.push(g);
            x.push(d);
            x.sort_unstable();
            for (y, cy) in self.reduce(&x) {
                let e = out.entry(y).or_insert_with(BigRational::zero);
                *e += &c * cy;
            }
        }
        out.retain(|_, c| !c.is_zero());
        self.memo.insert(m.to_vec(), out.clone());
        out
    }

    /// Normal form of a linear combination of monomials.
    pub fn reduce_combination(&mut self, v: &BTreeMap<Vec<usize>, BigRational>) -> BTreeMap<Vec<usize>, BigRational> {
        let mut out: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for (m, c) in v {
            for (y, cy) in self.reduce(m) {
                let e = out.entry(y).or_insert_with(BigRational::zero);
                *e += c * cy;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Product of a standard monomial with a generator, in normal form.
    pub fn times_generator(&mut self, m: &[usize], g: usize) -> BTreeMap<Vec<usize>, BigRational> {
        let mut x = m.to_vec();
        x.push(g);
        x.sort_unstable();
        self.reduce(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{one_at, zero_at};

    #[test]
    fn ten_cone_quadrics_each_with_one_clutter() {
        let rels = cone_relations();
        assert_eq!(rels.len(), 10);
        for r in &rels {
            assert_eq!(r.clutters().len(), 1, "{r}");
            assert!(r.weight().is_some());
        }
    }

    #[test]
    fn pf5_straightening() {
        let i = Interval::closed(zero_at(0), one_at(0)).unwrap();
        let v = |s: &str| s.parse::<Vertex>().unwrap();
        let s = straighten(v("(14)^0"), v("(23)^0"), &i).unwrap();
        // w14 w23 = w13 w24 − w12 w34 + λ p5
        let expect: BTreeMap<Pair, BigRational> = BTreeMap::from([
            (pair(v("(13)^0"), v("(24)^0")), rat(1)),
            (pair(v("(12)^0"), v("(34)^0")), rat(-1)),
            (pair(v("(0)^0"), v("(5)^0")), rat(1)),
        ]);
        assert_eq!(s.rhs, expect);
        assert!(s.h_exponent(pair(v("(0)^0"), v("(5)^0"))) > 0);
        assert_eq!(s.h_exponent(pair(v("(13)^0"), v("(24)^0"))), 0);
    }
}
