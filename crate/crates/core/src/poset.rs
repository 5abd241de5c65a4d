//! The periodic graded lattice Ê of decorated spinor labels.
//!
//! A vertex is a label from the sixteen-element set E (the weights of the
//! half-spin representation of Spin(10)) together with an integer level `r`.
//! The cover relation of one period is stored as a literal table; everything
//! else (order, meet, join, the involution σ, clutter sets) is derived from it
//! and from the planar embedding `f`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the sixteen spinor labels `(0)`, `(ij)`, `(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    L0,
    L12,
    L13,
    L14,
    L15,
    L23,
    L24,
    L25,
    L34,
    L35,
    L45,
    L1,
    L2,
    L3,
    L4,
    L5,
}

/// Shape of a label as a weight of the spinor representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind {
    /// `(0)`: the weight `det^{-1/2}`.
    Empty,
    /// `(ij)`: the weight `det^{-1/2} z_i z_j`, indices are 1-based.
    Pair(usize, usize),
    /// `(k)`: the weight `det^{1/2} z_k^{-1}`, 1-based.
    Single(usize),
}

struct LabelData {
    name: &'static str,
    kind: LabelKind,
    /// ρ at level 0.
    rho0: i64,
    /// Embedding `f` at level 0.
    f0: (i64, i64),
    /// Position inside one block of the total order; labels `(1)`, `(2)`, `(3)`
    /// of level `r-1` sit in block `r`.
    block_shift: i64,
    pos: i64,
}

const LABEL_DATA: [LabelData; 16] = [
    LabelData { name: "0", kind: LabelKind::Empty, rho0: 0, f0: (-4, -10), block_shift: 0, pos: 0 },
    LabelData { name: "12", kind: LabelKind::Pair(1, 2), rho0: 1, f0: (-2, -8), block_shift: 0, pos: 2 },
    LabelData { name: "13", kind: LabelKind::Pair(1, 3), rho0: 2, f0: (0, -6), block_shift: 0, pos: 4 },
    LabelData { name: "14", kind: LabelKind::Pair(1, 4), rho0: 3, f0: (-2, -4), block_shift: 0, pos: 6 },
    LabelData { name: "15", kind: LabelKind::Pair(1, 5), rho0: 4, f0: (-4, -2), block_shift: 0, pos: 8 },
    LabelData { name: "23", kind: LabelKind::Pair(2, 3), rho0: 3, f0: (2, -4), block_shift: 0, pos: 7 },
    LabelData { name: "24", kind: LabelKind::Pair(2, 4), rho0: 4, f0: (0, -2), block_shift: 0, pos: 9 },
    LabelData { name: "25", kind: LabelKind::Pair(2, 5), rho0: 5, f0: (-2, 0), block_shift: 0, pos: 10 },
    LabelData { name: "34", kind: LabelKind::Pair(3, 4), rho0: 5, f0: (2, 0), block_shift: 0, pos: 11 },
    LabelData { name: "35", kind: LabelKind::Pair(3, 5), rho0: 6, f0: (0, 2), block_shift: 0, pos: 12 },
    LabelData { name: "45", kind: LabelKind::Pair(4, 5), rho0: 7, f0: (-2, 4), block_shift: 0, pos: 14 },
    LabelData { name: "1", kind: LabelKind::Single(1), rho0: 10, f0: (4, 10), block_shift: 1, pos: 5 },
    LabelData { name: "2", kind: LabelKind::Single(2), rho0: 9, f0: (2, 8), block_shift: 1, pos: 3 },
    LabelData { name: "3", kind: LabelKind::Single(3), rho0: 8, f0: (0, 6), block_shift: 1, pos: 1 },
    LabelData { name: "4", kind: LabelKind::Single(4), rho0: 7, f0: (2, 4), block_shift: 0, pos: 15 },
    LabelData { name: "5", kind: LabelKind::Single(5), rho0: 6, f0: (4, 2), block_shift: 0, pos: 13 },
];

impl Label {
    pub const ALL: [Label; 16] = [
        Label::L0,
        Label::L12,
        Label::L13,
        Label::L14,
        Label::L15,
        Label::L23,
        Label::L24,
        Label::L25,
        Label::L34,
        Label::L35,
        Label::L45,
        Label::L1,
        Label::L2,
        Label::L3,
        Label::L4,
        Label::L5,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    fn data(self) -> &'static LabelData {
        &LABEL_DATA[self.index()]
    }

    pub fn name(self) -> &'static str {
        self.data().name
    }

    pub fn kind(self) -> LabelKind {
        self.data().kind
    }

    pub fn from_name(s: &str) -> Option<Label> {
        Label::ALL.iter().copied().find(|l| l.name() == s)
    }

    /// Doubled spin-torus weight: `det^{±1/2}` contributes `±1` to every coordinate.
    pub fn doubled_weight(self) -> [i64; 5] {
        match self.kind() {
            LabelKind::Empty => [-1; 5],
            LabelKind::Pair(i, j) => {
                let mut w = [-1; 5];
                w[i - 1] = 1;
                w[j - 1] = 1;
                w
            }
            LabelKind::Single(k) => {
                let mut w = [1; 5];
                w[k - 1] = -1;
                w
            }
        }
    }
}

/// One period of the cover relation: `(lower label, upper label, level shift)`,
/// meaning `lower^r ⋖ upper^{r+shift}` for every `r`.
pub const COVER_TABLE: [(Label, Label, i64); 24] = [
    (Label::L0, Label::L12, 0),
    (Label::L12, Label::L13, 0),
    (Label::L3, Label::L12, 1),
    (Label::L3, Label::L2, 0),
    (Label::L2, Label::L13, 1),
    (Label::L2, Label::L1, 0),
    (Label::L13, Label::L14, 0),
    (Label::L13, Label::L23, 0),
    (Label::L1, Label::L23, 1),
    (Label::L14, Label::L15, 0),
    (Label::L14, Label::L24, 0),
    (Label::L23, Label::L24, 0),
    (Label::L15, Label::L25, 0),
    (Label::L24, Label::L25, 0),
    (Label::L24, Label::L34, 0),
    (Label::L25, Label::L35, 0),
    (Label::L34, Label::L35, 0),
    (Label::L34, Label::L5, 0),
    (Label::L35, Label::L45, 0),
    (Label::L35, Label::L4, 0),
    (Label::L5, Label::L4, 0),
    (Label::L45, Label::L0, 1),
    (Label::L45, Label::L3, 0),
    (Label::L4, Label::L3, 0),
];

/// A vertex `label^level` of Ê.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub label: Label,
    pub level: i64,
}

impl Vertex {
    pub const fn new(label: Label, level: i64) -> Vertex {
        Vertex { label, level }
    }

    /// The rank function ρ.
    pub fn rho(self) -> i64 {
        self.label.data().rho0 + 8 * self.level
    }

    /// The T-degree `u`, which is the level.
    pub fn level_u(self) -> i64 {
        self.level
    }

    /// τ^k: shift the level by `k`.
    pub fn tau(self, k: i64) -> Vertex {
        Vertex::new(self.label, self.level + k)
    }

    /// The planar embedding `f`.
    pub fn f_embed(self) -> (i64, i64) {
        let (x, y) = self.label.data().f0;
        (x, y + 16 * self.level)
    }

    /// `ℓ = ‖f‖²`.
    pub fn ell(self) -> i64 {
        let (x, y) = self.f_embed();
        x * x + y * y
    }

    /// The vertex with a given embedding point, if any.
    pub fn from_f(p: (i64, i64)) -> Option<Vertex> {
        Label::ALL.iter().find_map(|&l| {
            let (x, y) = l.data().f0;
            if x == p.0 && (p.1 - y).rem_euclid(16) == 0 {
                Some(Vertex::new(l, (p.1 - y).div_euclid(16)))
            } else {
                None
            }
        })
    }

    /// The involution σ, defined by `f(σ v) = -f(v)`.
    pub fn sigma(self) -> Vertex {
        let (x, y) = self.f_embed();
        Vertex::from_f((-x, -y)).expect("embedding image is closed under negation")
    }

    /// Position in the total order: `(block, position within block)`.
    fn order_key(self) -> (i64, i64) {
        let d = self.label.data();
        (self.level + d.block_shift, d.pos)
    }

    /// Upper covers.
    pub fn covers(self) -> Vec<Vertex> {
        COVER_TABLE
            .iter()
            .filter(|(lo, _, _)| *lo == self.label)
            .map(|&(_, hi, s)| Vertex::new(hi, self.level + s))
            .collect()
    }

    /// Lower covers.
    pub fn co_covers(self) -> Vec<Vertex> {
        COVER_TABLE
            .iter()
            .filter(|(_, hi, _)| *hi == self.label)
            .map(|&(lo, _, s)| Vertex::new(lo, self.level - s))
            .collect()
    }

    /// The Aut-weight of the generator `λ^v`: `t q^level z^{doubled weight}`.
    pub fn weight(self) -> crate::weight::Weight {
        crate::weight::Weight::new(1, self.level, self.label.doubled_weight())
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^{}", self.label.name(), self.level)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Vertex> {
        let bad = || Error::Parse(format!("bad vertex `{s}`, expected e.g. (13)^-1"));
        let s = s.trim();
        let rest = s.strip_prefix('(').ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let label = Label::from_name(&rest[..close]).ok_or_else(bad)?;
        let lvl = rest[close + 1..].strip_prefix('^').ok_or_else(bad)?;
        let level = lvl.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(Vertex::new(label, level))
    }
}

/// Total order of the monomial ordering: a linear extension of `≤` refining ρ.
pub fn total_cmp(a: Vertex, b: Vertex) -> Ordering {
    a.cmp(&b)
}

/// The two vertices of rank `k`, in increasing total order.
pub fn vertices_at_rho(k: i64) -> [Vertex; 2] {
    let r = k.div_euclid(8);
    let o = k.rem_euclid(8);
    use Label::*;
    let (a, b) = match o {
        0 => (Vertex::new(L0, r), Vertex::new(L3, r - 1)),
        1 => (Vertex::new(L12, r), Vertex::new(L2, r - 1)),
        2 => (Vertex::new(L13, r), Vertex::new(L1, r - 1)),
        3 => (Vertex::new(L14, r), Vertex::new(L23, r)),
        4 => (Vertex::new(L15, r), Vertex::new(L24, r)),
        5 => (Vertex::new(L25, r), Vertex::new(L34, r)),
        6 => (Vertex::new(L35, r), Vertex::new(L5, r)),
        _ => (Vertex::new(L45, r), Vertex::new(L4, r)),
    };
    [a, b]
}

/// All vertices with `lo ≤ ρ ≤ hi`, sorted by the total order.
pub fn vertices_in_band(lo: i64, hi: i64) -> Vec<Vertex> {
    (lo..=hi).flat_map(vertices_at_rho).collect()
}

fn push_unique(v: &mut Vec<Vertex>, x: Vertex) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// The vertices of rank `k` lying below `v` (empty if `k > ρ(v)`).
fn below_at(v: Vertex, k: i64) -> Vec<Vertex> {
    let mut cur = vec![v];
    let mut rho = v.rho();
    if k > rho {
        return Vec::new();
    }
    while rho > k {
        let mut next = Vec::with_capacity(2);
        for x in &cur {
            for y in x.co_covers() {
                push_unique(&mut next, y);
            }
        }
        cur = next;
        rho -= 1;
    }
    cur
}

/// The vertices of rank `k` lying above `v`.
fn above_at(v: Vertex, k: i64) -> Vec<Vertex> {
    let mut cur = vec![v];
    let mut rho = v.rho();
    if k < rho {
        return Vec::new();
    }
    while rho < k {
        let mut next = Vec::with_capacity(2);
        for x in &cur {
            for y in x.covers() {
                push_unique(&mut next, y);
            }
        }
        cur = next;
        rho += 1;
    }
    cur
}

/// The partial order of Ê.
pub fn leq(a: Vertex, b: Vertex) -> bool {
    above_at(a, b.rho()).contains(&b)
}

/// Meet (greatest lower bound).
pub fn meet(a: Vertex, b: Vertex) -> Vertex {
    let mut k = a.rho().min(b.rho());
    loop {
        let da = below_at(a, k);
        let db = below_at(b, k);
        let common: Vec<Vertex> = da.into_iter().filter(|x| db.contains(x)).collect();
        match common.len() {
            0 => k -= 1,
            1 => return common[0],
            _ => unreachable!("Ê is a lattice: two maximal common lower bounds cannot exist"),
        }
    }
}

/// Join (least upper bound).
pub fn join(a: Vertex, b: Vertex) -> Vertex {
    let mut k = a.rho().max(b.rho());
    loop {
        let ua = above_at(a, k);
        let ub = above_at(b, k);
        let common: Vec<Vertex> = ua.into_iter().filter(|x| ub.contains(x)).collect();
        match common.len() {
            0 => k += 1,
            1 => return common[0],
            _ => unreachable!("Ê is a lattice: two minimal common upper bounds cannot exist"),
        }
    }
}

/// True iff `a` and `b` are incomparable.
pub fn is_clutter(a: Vertex, b: Vertex) -> bool {
    !leq(a, b) && !leq(b, a)
}

/// Side selector for clutter sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `CL⁺(v)`: clutter partners of rank at most ρ(v).
    Plus,
    /// `CL⁻(v)`: clutter partners of rank at least ρ(v).
    Minus,
}

/// Band half-width large enough to contain every clutter partner.
const CLUTTER_BAND: i64 = 16;

/// The clutter partners of `v` on one side, sorted by the total order.
pub fn cl_set(v: Vertex, side: Side) -> Vec<Vertex> {
    let r = v.rho();
    let (lo, hi) = match side {
        Side::Plus => (r - CLUTTER_BAND, r),
        Side::Minus => (r, r + CLUTTER_BAND),
    };
    vertices_in_band(lo, hi)
        .into_iter()
        .filter(|&w| w != v && is_clutter(v, w))
        .collect()
}

/// `|CL^±(v)|`, the index of the class `M_i^±` containing `v`.
pub fn m_class(v: Vertex, side: Side) -> usize {
    cl_set(v, side).len()
}

/// Membership in `M = M₁⁺ ∩ M₁⁻`.
pub fn in_m(v: Vertex) -> bool {
    m_class(v, Side::Plus) == 1 && m_class(v, Side::Minus) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["(0)^-2", "(13)^0", "(5)^3", "(45)^-1"] {
            assert_eq!(v(s).to_string(), s);
        }
        assert!("(6)^0".parse::<Vertex>().is_err());
        assert!("(12)0".parse::<Vertex>().is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(v("(0)^0").rho(), 0);
        assert_eq!(v("(1)^-1").rho(), 2);
        assert_eq!(v("(45)^-1").rho(), -1);
        assert_eq!(v("(12)^3").level_u(), 3);
        assert_eq!(v("(5)^2").tau(1).level_u(), 3);
    }

    #[test]
    fn cover_examples() {
        assert!(v("(45)^-1").covers().contains(&v("(0)^0")));
        assert_eq!(v("(0)^0").covers(), vec![v("(12)^0")]);
        let mut c = v("(13)^0").covers();
        c.sort();
        assert_eq!(c, vec![v("(14)^0"), v("(23)^0")]);
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(meet(v("(14)^0"), v("(23)^0")), v("(13)^0"));
        assert_eq!(join(v("(14)^0"), v("(23)^0")), v("(24)^0"));
        assert_eq!(meet(v("(3)^0"), v("(3)^0")), v("(3)^0"));
        assert!(leq(v("(5)^-1"), v("(4)^-1")));
        assert!(!leq(v("(4)^-1"), v("(0)^0")));
        assert!(!leq(v("(5)^-1"), v("(0)^0")));
        assert!(leq(v("(45)^-1"), v("(0)^0")));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(v("(25)^0").sigma(), v("(34)^0"));
        assert_eq!(v("(34)^0").sigma(), v("(25)^0"));
        assert_eq!(v("(1)^-1").sigma().rho(), 8);
        assert_eq!(v("(0)^0").sigma(), v("(1)^0"));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(v("(34)^0").f_embed(), (2, 0));
        assert_eq!(v("(34)^0").ell(), 4);
        assert_eq!(v("(24)^0").f_embed(), (0, -2));
        assert_eq!(v("(35)^0").f_embed(), (0, 2));
        assert_eq!(v("(25)^0").f_embed(), (-2, 0));
        let l = |s: &str| v(s).ell();
        assert_eq!(l("(14)^0") + l("(23)^0"), l("(13)^0") + l("(24)^0"));
    }

    #[test]
    fn clutter_examples() {
        assert!(is_clutter(v("(14)^0"), v("(23)^0")));
        assert!(!is_clutter(v("(0)^0"), v("(12)^0")));
        assert_eq!(m_class(v("(13)^0"), Side::Minus), 1);
        assert_eq!(m_class(v("(45)^0"), Side::Plus), 2);
        assert_eq!(m_class(v("(0)^0"), Side::Minus), 3);
        assert_eq!(
            cl_set(v("(0)^0"), Side::Minus),
            vec![v("(3)^-1"), v("(2)^-1"), v("(1)^-1")]
        );
        assert!(in_m(v("(13)^5")));
    }

    #[test]
    fn total_order_examples() {
        assert_eq!(total_cmp(v("(4)^-1"), v("(0)^0")), Ordering::Less);
        assert_eq!(total_cmp(v("(12)^0"), v("(2)^-1")), Ordering::Less);
        assert_eq!(total_cmp(v("(0)^0"), v("(3)^-1")), Ordering::Less);
        assert_eq!(total_cmp(v("(45)^0"), v("(4)^0")), Ordering::Less);
    }
}
