//! Structural invariants of Ê checked exhaustively on a window of periods.

use std::collections::BTreeSet;

use proptest::prelude::*;
use spinor_core::interval::Interval;
use spinor_core::poset::{
    self, cl_set, in_m, is_clutter, join, leq, m_class, meet, vertices_at_rho, vertices_in_band, Label, Side,
    Vertex, COVER_TABLE,
};

fn window() -> Vec<Vertex> {
    vertices_in_band(-24, 31)
}

fn labels(names: &[&str]) -> BTreeSet<Label> {
    names.iter().map(|n| Label::from_name(n).unwrap()).collect()
}

#[test]
fn two_vertices_per_rank_and_graded_covers() {
    for k in -24..=31 {
        let [a, b] = vertices_at_rho(k);
        assert_ne!(a, b);
        assert_eq!(a.rho(), k);
        assert_eq!(b.rho(), k);
        assert!(a < b);
    }
    let all: BTreeSet<Vertex> = window().into_iter().collect();
    assert_eq!(all.len(), 2 * 56);
    for v in window() {
        for c in v.covers() {
            assert_eq!(c.rho(), v.rho() + 1);
            assert!(c.co_covers().contains(&v));
            assert!(v < c);
        }
        assert_eq!(v.tau(1).rho(), v.rho() + 8);
    }
    assert_eq!(COVER_TABLE.len(), 24);
}

#[test]
fn clutter_classes_match_explicit_lists() {
    let m1p = labels(&["12", "13", "23", "24", "25", "35", "4", "3"]);
    let m2p = labels(&["14", "2", "45", "34"]);
    let m1m = labels(&["13", "14", "24", "34", "35", "45", "3", "2"]);
    let m2m = labels(&["4", "12", "23", "25"]);
    let m3 = labels(&["0", "1", "15", "5"]);
    let m = labels(&["3", "13", "24", "35"]);
    for v in window() {
        let p = m_class(v, Side::Plus);
        let n = m_class(v, Side::Minus);
        let expect_p = if m1p.contains(&v.label) { 1 } else if m2p.contains(&v.label) { 2 } else { 3 };
        let expect_n = if m1m.contains(&v.label) { 1 } else if m2m.contains(&v.label) { 2 } else { 3 };
        assert_eq!(p, expect_p, "CL+ of {v}");
        assert_eq!(n, expect_n, "CL- of {v}");
        assert!(m3.contains(&v.label) == (p == 3));
        assert!(m3.contains(&v.label) == (n == 3));
        assert_eq!(in_m(v), m.contains(&v.label));
        assert!(!(p == 2 && n == 2), "M2- and M2+ are disjoint");
        for side in [Side::Plus, Side::Minus] {
            let cl = cl_set(v, side);
            for w in cl.windows(2) {
                assert!(leq(w[0], w[1]), "CL set of {v} is a chain");
            }
            for w in &cl {
                assert!(is_clutter(v, *w));
            }
        }
    }
}

#[test]
fn sigma_and_tau_symmetries() {
    for v in window() {
        let s = v.sigma();
        assert_eq!(s.sigma(), v);
        assert_eq!(s.rho(), 10 - v.rho());
        assert_eq!(v.tau(1).sigma(), v.sigma().tau(-1));
        for c in v.covers() {
            assert!(s.co_covers().contains(&c.sigma()), "sigma reverses covers");
            assert!(v.tau(3).covers().contains(&c.tau(3)));
        }
    }
    let anchors = [("(25)^0", "(34)^0"), ("(24)^0", "(35)^0")];
    for (a, b) in anchors {
        let a: Vertex = a.parse().unwrap();
        let b: Vertex = b.parse().unwrap();
        assert_eq!(a.sigma(), b);
    }
}

#[test]
fn embedding_properties() {
    for v in window() {
        let (x, y) = v.f_embed();
        assert!(x % 2 == 0 && y % 2 == 0 && (x + y).rem_euclid(4) == 2, "{v} outside the coset");
        assert!(v.ell() > 0);
        assert_eq!(v.tau(1).f_embed(), (x, y + 16));
        for c in v.covers() {
            let (cx, cy) = c.f_embed();
            assert!((cx - x).abs() == 2 && cy - y == 2);
        }
    }
}

#[test]
fn distributivity_on_small_intervals() {
    for lo in vertices_in_band(0, 7) {
        for hi in vertices_in_band(lo.rho(), lo.rho() + 10) {
            if !leq(lo, hi) {
                continue;
            }
            let i = Interval::closed(lo, hi).unwrap();
            let e = i.elements();
            let n = e.len();
            let idx = |v: Vertex| i.index_of(v).expect("interval is a sublattice");
            let mut mt = vec![vec![0; n]; n];
            let mut jn = vec![vec![0; n]; n];
            for a in 0..n {
                for b in 0..n {
                    mt[a][b] = idx(meet(e[a], e[b]));
                    jn[a][b] = idx(join(e[a], e[b]));
                    assert!(leq(e[mt[a][b]], e[a]) && leq(e[a], e[jn[a][b]]));
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(mt[a][jn[b][c]], jn[mt[a][b]][mt[a][c]], "distributivity in {i}");
                    }
                }
            }
        }
    }
}

#[test]
fn meet_with_lower_clutter_partners_is_a_common_cover() {
    for d in window() {
        let partners = cl_set(d, Side::Minus);
        let meets: BTreeSet<Vertex> = partners.iter().map(|&g| meet(g, d)).collect();
        assert_eq!(meets.len(), 1, "meet independent of the partner for {d}");
        let a = *meets.iter().next().unwrap();
        assert!(a.covers().contains(&d), "{a} covered by {d}");
    }
}

#[test]
fn potential_ell_is_minimized_on_the_lattice_rectangle_among_equal_weight_pairs() {
    let band = vertices_in_band(-12, 22);
    for a in vertices_in_band(-4, 12) {
        for b in vertices_in_band(a.rho(), a.rho() + 8) {
            if !is_clutter(a, b) {
                continue;
            }
            let (m, j) = (meet(a, b), join(a, b));
            assert_eq!(a.ell() + b.ell(), m.ell() + j.ell(), "rectangle identity");
            let (fa, fb) = (a.f_embed(), b.f_embed());
            let center = (fa.0 + fb.0, fa.1 + fb.1);
            let total = a.ell() + b.ell();
            for &g in &band {
                let (gx, gy) = g.f_embed();
                let Some(d) = Vertex::from_f((center.0 - gx, center.1 - gy)) else { continue };
                if g > d || g.weight() + d.weight() != a.weight() + b.weight() {
                    continue;
                }
                let s = g.ell() + d.ell();
                if total >= s {
                    assert!(leq(m, g) && leq(g, j) && leq(m, d) && leq(d, j), "{g},{d} for clutter {a},{b}");
                }
                let corner = (g == a.min(b) && d == a.max(b)) || (g == m && d == j);
                assert_eq!(total == s, corner, "equality at opposite corners only: {g},{d} vs {a},{b}");
            }
        }
    }
}

fn arb_vertex() -> impl Strategy<Value = Vertex> {
    (0usize..16, -6i64..6).prop_map(|(l, r)| Vertex::new(Label::ALL[l], r))
}

proptest! {
    #[test]
    fn lattice_laws(a in arb_vertex(), b in arb_vertex(), c in arb_vertex()) {
        prop_assert_eq!(meet(a, b), meet(b, a));
        prop_assert_eq!(join(a, meet(a, b)), a);
        prop_assert_eq!(meet(a, join(a, b)), a);
        prop_assert_eq!(meet(meet(a, b), c), meet(a, meet(b, c)));
        prop_assert_eq!(leq(a, b), meet(a, b) == a);
        prop_assert_eq!(leq(a, b), leq(b.sigma(), a.sigma()));
        prop_assert_eq!(leq(a, b), leq(a.tau(2), b.tau(2)));
        if leq(a, b) && a != b {
            prop_assert!(a < b, "total order extends the partial order");
        }
        prop_assert_eq!(poset::total_cmp(a, b), poset::total_cmp(a.tau(1), b.tau(1)));
    }
}
