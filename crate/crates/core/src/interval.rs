//! Intervals `[δ,δ′]` of Ê as finite distributive lattices.
//!
//! Covers the element enumeration, Core and capacity, the Gorenstein
//! classifier, the join-irreducible poset of Birkhoff's theorem, the linear
//! forms `Reg` and `Alt`, chains of Gorenstein intervals and the enumeration of
//! capacity-two intervals.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{self, m_class, vertices_in_band, Label, Side, Vertex};

/// A closed or semi-open interval of Ê with its cached element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lower: Vertex,
    pub upper: Vertex,
    pub open_lower: bool,
    pub open_upper: bool,
    elements: Vec<Vertex>,
}

impl Interval {
    /// Build `[lower, upper]` with optional excluded endpoints.
    pub fn build(lower: Vertex, upper: Vertex, open_lower: bool, open_upper: bool) -> Result<Interval> {
        if !poset::leq(lower, upper) {
            return Err(Error::NotComparable { lower: lower.to_string(), upper: upper.to_string() });
        }
        let elements = vertices_in_band(lower.rho(), upper.rho())
            .into_iter()
            .filter(|&x| poset::leq(lower, x) && poset::leq(x, upper))
            .filter(|&x| !(open_lower && x == lower) && !(open_upper && x == upper))
            .collect();
        Ok(Interval { lower, upper, open_lower, open_upper, elements })
    }

    /// The closed interval `[lower, upper]`.
    pub fn closed(lower: Vertex, upper: Vertex) -> Result<Interval> {
        Interval::build(lower, upper, false, false)
    }

    /// Elements sorted by the total order (which refines ρ).
    pub fn elements(&self) -> &[Vertex] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        !self.open_lower && !self.open_upper
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.elements.binary_search(&v).ok()
    }

    /// `ρ(upper) − ρ(lower)`.
    pub fn rank(&self) -> i64 {
        self.upper.rho() - self.lower.rho()
    }

    /// `leq[i][j]` is true iff `elements[i] ≤ elements[j]`.
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.elements.len();
        let mut m = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i..n {
                m[i][j] = poset::leq(self.elements[i], self.elements[j]);
            }
        }
        m
    }

    /// Elements grouped by ρ.
    pub fn levels(&self) -> BTreeMap<i64, Vec<Vertex>> {
        let mut map: BTreeMap<i64, Vec<Vertex>> = BTreeMap::new();
        for &v in &self.elements {
            map.entry(v.rho()).or_default().push(v);
        }
        map
    }

    /// Core (elements sharing their ρ with another element) and capacity.
    pub fn core_and_capacity(&self) -> CoreInfo {
        core_info(&self.elements)
    }

    /// The Gorenstein classifier on closed intervals.
    pub fn is_gorenstein(&self) -> bool {
        let cap = self.core_and_capacity().capacity;
        match cap {
            0 | 1 => true,
            2 => false,
            _ => m_class(self.lower, Side::Plus) != 2 && m_class(self.upper, Side::Minus) != 2,
        }
    }

    /// The poset of join-irreducible elements of the lattice.
    pub fn join_irreducibles(&self) -> IrreduciblePoset {
        IrreduciblePoset::of(self)
    }

    /// `Reg` and `Alt` linear forms of the element set.
    pub fn reg_alt(&self) -> RegAlt {
        reg_alt(&self.elements)
    }

    /// Summary suitable for JSON emission.
    pub fn summary(&self) -> IntervalSummary {
        let info = self.core_and_capacity();
        IntervalSummary {
            schema: 1,
            interval: self.to_string(),
            lower: self.lower.to_string(),
            upper: self.upper.to_string(),
            open_lower: self.open_lower,
            open_upper: self.open_upper,
            size: self.len(),
            rank: self.rank(),
            capacity: info.capacity,
            core_size: info.core.len(),
            gorenstein: self.is_closed() && self.is_gorenstein(),
        }
    }
}

/// JSON view of an interval.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalSummary {
    pub schema: u32,
    pub interval: String,
    pub lower: String,
    pub upper: String,
    pub open_lower: bool,
    pub open_upper: bool,
    pub size: usize,
    pub rank: i64,
    pub capacity: usize,
    pub core_size: usize,
    pub gorenstein: bool,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.open_lower { '(' } else { '[' };
        let r = if self.open_upper { ')' } else { ']' };
        write!(f, "{l}{}:{}{r}", self.lower, self.upper)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Interval> {
        let bad = || Error::Parse(format!("bad interval `{s}`, expected e.g. [(0)^-1:(1)^2]"));
        let s = s.trim();
        if s.len() < 2 {
            return Err(bad());
        }
        let open_lower = match s.as_bytes()[0] {
            b'[' => false,
            b'(' => true,
            _ => return Err(bad()),
        };
        let open_upper = match s.as_bytes()[s.len() - 1] {
            b']' => false,
            b')' => true,
            _ => return Err(bad()),
        };
        let inner = &s[1..s.len() - 1];
        let (a, b) = inner.split_once(':').ok_or_else(bad)?;
        Interval::build(a.parse()?, b.parse()?, open_lower, open_upper)
    }
}

/// Core of a finite vertex set and its capacity.
///
/// The capacity counts the ρ-values carried by two elements, i.e. `|Core|/2`.
/// This is the quantity for which a rectangle `[α∧β, α∨β]` spanned by a
/// clutter has capacity one and for which the capacity-two list is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreInfo {
    pub core: Vec<Vertex>,
    pub capacity: usize,
}

pub fn core_info(set: &[Vertex]) -> CoreInfo {
    let mut by_rho: BTreeMap<i64, Vec<Vertex>> = BTreeMap::new();
    for &v in set {
        by_rho.entry(v.rho()).or_default().push(v);
    }
    let mut core: Vec<Vertex> = by_rho.values().filter(|g| g.len() > 1).flatten().copied().collect();
    core.sort();
    let capacity = by_rho.values().filter(|g| g.len() > 1).count();
    CoreInfo { core, capacity }
}

/// A linear form `Σ c_α λ^α` with integer coefficients.
pub type LinearForm = Vec<(Vertex, i64)>;

/// The linear forms `Reg` (one per ρ-value) and `Alt` (one per doubled ρ-value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegAlt {
    pub reg: Vec<LinearForm>,
    pub alt: Vec<LinearForm>,
}

pub fn reg_alt(set: &[Vertex]) -> RegAlt {
    let mut by_rho: BTreeMap<i64, Vec<Vertex>> = BTreeMap::new();
    for &v in set {
        by_rho.entry(v.rho()).or_default().push(v);
    }
    let mut reg = Vec::new();
    let mut alt = Vec::new();
    for group in by_rho.values_mut() {
        group.sort();
        reg.push(group.iter().map(|&v| (v, 1)).collect());
        if group.len() == 2 {
            alt.push(vec![(group[1], 1), (group[0], -1)]);
        }
    }
    RegAlt { reg, alt }
}

/// The join-irreducible elements of an interval with the induced order.
#[derive(Clone, Debug)]
pub struct IrreduciblePoset {
    pub vertices: Vec<Vertex>,
    /// `order[i][j]` iff `vertices[i] ≤ vertices[j]`.
    pub order: Vec<Vec<bool>>,
}

impl IrreduciblePoset {
    /// Join-irreducibles: non-bottom elements with exactly one lower cover inside the interval.
    pub fn of(i: &Interval) -> IrreduciblePoset {
        let els = i.elements();
        let vertices: Vec<Vertex> = els
            .iter()
            .copied()
            .filter(|&x| {
                let below = x.co_covers().into_iter().filter(|y| i.contains(*y)).count();
                below == 1
            })
            .collect();
        let n = vertices.len();
        let mut order = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                order[a][b] = poset::leq(vertices[a], vertices[b]);
            }
        }
        IrreduciblePoset { vertices, order }
    }

    /// Number of order ideals (down-closed subsets), by enumeration over antichains.
    pub fn count_order_ideals(&self) -> u128 {
        let n = self.vertices.len();
        // Process in a linear extension; an ideal is decided element by element,
        // and an element may be added only if all its predecessors were added.
        fn rec(k: usize, n: usize, order: &[Vec<bool>], chosen: &mut Vec<bool>) -> u128 {
            if k == n {
                return 1;
            }
            let mut total = rec(k + 1, n, order, chosen);
            if (0..k).all(|j| !order[j][k] || chosen[j]) {
                chosen[k] = true;
                total += rec(k + 1, n, order, chosen);
                chosen[k] = false;
            }
            total
        }
        let mut chosen = vec![false; n];
        rec(0, n, &self.order, &mut chosen)
    }

    /// Birkhoff's bijection: `x ↦ {j ≤ x}` is injective on the interval and
    /// the number of order ideals equals the interval size.
    pub fn verify_birkhoff(&self, i: &Interval) -> bool {
        let mut images: Vec<Vec<bool>> = i
            .elements()
            .iter()
            .map(|&x| self.vertices.iter().map(|&j| poset::leq(j, x)).collect())
            .collect();
        let total = images.len();
        images.sort();
        images.dedup();
        images.len() == total && self.count_order_ideals() == total as u128
    }

    /// All maximal chains have the same length.
    pub fn is_pure(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let cover = |a: usize, b: usize| -> bool {
            a != b && self.order[a][b] && !(0..n).any(|c| c != a && c != b && self.order[a][c] && self.order[c][b])
        };
        // Longest and shortest maximal chain lengths ending at each vertex, in a
        // linear extension (vertices are already sorted by the total order).
        let minimal: Vec<bool> = (0..n).map(|b| !(0..n).any(|a| a != b && self.order[a][b])).collect();
        let maximal: Vec<bool> = (0..n).map(|a| !(0..n).any(|b| a != b && self.order[a][b])).collect();
        let mut lo = vec![usize::MAX; n];
        let mut hi = vec![0usize; n];
        for b in 0..n {
            if minimal[b] {
                lo[b] = 1;
                hi[b] = 1;
            }
            for a in 0..b {
                if cover(a, b) {
                    lo[b] = lo[b].min(lo[a] + 1);
                    hi[b] = hi[b].max(hi[a] + 1);
                }
            }
        }
        let ends: Vec<usize> = (0..n).filter(|&a| maximal[a]).collect();
        let min_len = ends.iter().map(|&a| lo[a]).min().unwrap();
        let max_len = ends.iter().map(|&a| hi[a]).max().unwrap();
        min_len == max_len
    }
}

/// A chain `δ = δ₁ ⋖ … ⋖ δₙ = δ′` with every `[δᵢ, β]` Gorenstein and `δᵢ ∈ M₁⁺` for `i > 1`.
pub fn gorenstein_chain(delta: Vertex, delta2: Vertex, beta: Vertex) -> Result<Vec<Vertex>> {
    let fail = |why: &str| Error::NoChain(format!("{delta} -> {delta2} below {beta}: {why}"));
    if !poset::leq(delta, delta2) || !poset::leq(delta2, beta) {
        return Err(fail("endpoints not ordered"));
    }
    let gor = |x: Vertex| Interval::closed(x, beta).map(|i| i.is_gorenstein()).unwrap_or(false);
    if !gor(delta) || !gor(delta2) {
        return Err(fail("end intervals are not Gorenstein"));
    }
    if delta == delta2 {
        return Ok(vec![delta]);
    }
    if m_class(delta2, Side::Plus) != 1 {
        return Err(fail("target is not in M1+"));
    }
    fn dfs(cur: Vertex, target: Vertex, ok: &dyn Fn(Vertex) -> bool, path: &mut Vec<Vertex>) -> bool {
        if cur == target {
            return true;
        }
        let mut next = cur.covers();
        next.sort();
        for n in next {
            if poset::leq(n, target) && ok(n) {
                path.push(n);
                if dfs(n, target, ok, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    let ok = |x: Vertex| m_class(x, Side::Plus) == 1 && gor(x);
    let mut path = vec![delta];
    if dfs(delta, delta2, &ok, &mut path) {
        Ok(path)
    } else {
        Err(fail("no admissible path"))
    }
}

/// Largest rank considered when searching for capacity-two intervals; an
/// interval of rank above 8 always contains three doubled ρ-values.
const CAP2_RANK_BOUND: i64 = 12;

/// All closed intervals with capacity two whose lower end has ρ in `[lo, hi)`.
pub fn enumerate_cap2(rho_lo: i64, rho_hi: i64) -> Vec<Interval> {
    let mut out = Vec::new();
    for delta in vertices_in_band(rho_lo, rho_hi - 1) {
        for up in vertices_in_band(delta.rho(), delta.rho() + CAP2_RANK_BOUND) {
            if poset::leq(delta, up) {
                let i = Interval::closed(delta, up).expect("ordered");
                if i.core_and_capacity().capacity == 2 {
                    out.push(i);
                }
            }
        }
    }
    out
}

/// The capacity-two intervals listed explicitly for period `r`.
pub fn cap2_table(r: i64) -> Vec<(Vertex, Vertex)> {
    use Label::*;
    let v = Vertex::new;
    let mut out = Vec::new();
    let high: [(Label, i64, [(Label, i64); 3]); 4] = [
        (L12, 0, [(L35, -1), (L25, -1), (L15, -1)]),
        (L4, 0, [(L24, 0), (L23, 0), (L1, -1)]),
        (L25, 0, [(L13, 0), (L12, 0), (L0, 0)]),
        (L23, 0, [(L3, -1), (L4, -1), (L5, -1)]),
    ];
    for (up, ul, lows) in high {
        for (lo, ll) in lows {
            out.push((v(lo, r + ll), v(up, r + ul)));
        }
    }
    let low: [(Label, i64, [(Label, i64); 3]); 4] = [
        (L2, 0, [(L24, 1), (L34, 1), (L5, 1)]),
        (L45, 0, [(L13, 1), (L14, 1), (L15, 1)]),
        (L34, 0, [(L3, 0), (L2, 0), (L1, 0)]),
        (L14, 0, [(L35, 0), (L45, 0), (L0, 1)]),
    ];
    for (lo, ll, ups) in low {
        for (up, ul) in ups {
            out.push((v(lo, r + ll), v(up, r + ul)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(iv("[(0)^0:(1)^0]").len(), 16);
        let small = iv("[(0)^0:(13)^0]");
        let names: Vec<String> = small.elements().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["(0)^0", "(12)^0", "(13)^0"]);
        assert_eq!(iv("((0)^0:(12)^0]").elements().len(), 1);
        assert!("[(1)^0:(0)^0]".parse::<Interval>().is_err());
        assert_eq!(iv("((45)^-1:(1)^0]").to_string(), "((45)^-1:(1)^0]");
    }

    #[test]
    fn capacity_examples() {
        let a = iv("[(0)^0:(1)^0]").core_and_capacity();
        assert_eq!(a.core.len(), 10);
        assert_eq!(a.capacity, 5);
        assert_eq!(iv("[(0)^0:(13)^0]").core_and_capacity().capacity, 0);
        assert!(iv("[(5)^-1:(24)^0]").core_and_capacity().capacity >= 3);
        assert_eq!(iv("[(13)^0:(24)^0]").core_and_capacity().capacity, 1);
    }

    #[test]
    fn classifier_examples() {
        assert!(iv("[(0)^-1:(1)^1]").is_gorenstein());
        assert!(iv("[(0)^0:(1)^0]").is_gorenstein());
        assert!(!iv("[(45)^-1:(1)^0]").is_gorenstein());
        assert!(iv("[(0)^0:(13)^0]").is_gorenstein());
        assert!(iv("[(13)^0:(24)^0]").is_gorenstein());
    }

    #[test]
    fn irreducible_examples() {
        for s in ["[(0)^0:(1)^0]", "[(0)^-1:(1)^1]", "[(45)^-1:(1)^0]"] {
            let i = iv(s);
            let j = i.join_irreducibles();
            assert!(j.verify_birkhoff(&i), "{s}");
            assert_eq!(j.is_pure(), i.is_gorenstein(), "{s}");
        }
    }

    #[test]
    fn reg_alt_examples() {
        let ra = iv("[(0)^0:(13)^0]").reg_alt();
        assert_eq!(ra.reg.len(), 3);
        assert!(ra.alt.is_empty());
        for delta in vertices_in_band(-9, 0) {
            let one = Vertex::new(Label::L1, -1);
            if let Ok(i) = Interval::closed(delta, one) {
                assert_eq!(i.reg_alt().reg.len() as i64, 3 - delta.rho());
            }
        }
    }

    #[test]
    fn chain_examples() {
        let b: Vertex = "(1)^1".parse().unwrap();
        let d: Vertex = "(0)^0".parse().unwrap();
        assert_eq!(gorenstein_chain(d, d, b).unwrap(), vec![d]);
    }
}
