//! Lattice-level invariants of intervals: Birkhoff reconstruction, the
//! classifier against join-irreducible purity, capacity-two enumeration.

use std::collections::BTreeSet;

use spinor_core::interval::{cap2_table, enumerate_cap2, gorenstein_chain, Interval};
use spinor_core::poset::{self, m_class, vertices_in_band, Side, Vertex};

fn window_intervals(max_rank: i64) -> Vec<Interval> {
    let mut out = Vec::new();
    for lo in vertices_in_band(-16, 23) {
        for hi in vertices_in_band(lo.rho(), lo.rho() + max_rank) {
            if hi.level <= 2 && poset::leq(lo, hi) {
                out.push(Interval::closed(lo, hi).unwrap());
            }
        }
    }
    out
}

#[test]
fn classifier_matches_join_irreducible_purity() {
    let mut checked = 0;
    for i in window_intervals(10) {
        let j = i.join_irreducibles();
        assert!(j.verify_birkhoff(&i), "Birkhoff fails on {i}");
        assert_eq!(i.is_gorenstein(), j.is_pure(), "classifier vs purity on {i}");
        checked += 1;
    }
    assert!(checked > 500);
}

#[test]
fn capacity_two_enumeration_matches_table() {
    for r in -1..=1 {
        let found: BTreeSet<(Vertex, Vertex)> =
            enumerate_cap2(8 * r, 8 * r + 8).iter().map(|i| (i.lower, i.upper)).collect();
        assert_eq!(found.len(), 24);
        let listed: BTreeSet<(Vertex, Vertex)> = (r - 1..=r + 1)
            .flat_map(cap2_table)
            .filter(|(lo, _)| lo.rho() >= 8 * r && lo.rho() < 8 * r + 8)
            .collect();
        assert_eq!(found, listed);
        for (lo, hi) in found {
            assert!(m_class(lo, Side::Plus) == 2 || m_class(hi, Side::Minus) == 2);
        }
    }
}

#[test]
fn gorenstein_chains_step_by_covers() {
    let beta: Vertex = "(1)^1".parse().unwrap();
    let mut built = 0;
    for d in vertices_in_band(-8, 8) {
        for d2 in vertices_in_band(d.rho(), 8) {
            if !poset::leq(d, d2) || !poset::leq(d2, beta) || m_class(d2, Side::Plus) != 1 {
                continue;
            }
            let g = |x: Vertex| Interval::closed(x, beta).unwrap().is_gorenstein();
            if !g(d) || !g(d2) {
                continue;
            }
            let chain = gorenstein_chain(d, d2, beta).unwrap();
            assert_eq!(chain[0], d);
            assert_eq!(*chain.last().unwrap(), d2);
            for w in chain.windows(2) {
                assert_eq!(w[1].rho(), w[0].rho() + 1);
                assert!(w[0].covers().contains(&w[1]));
                assert!(g(w[1]) && m_class(w[1], Side::Plus) == 1);
            }
            if m_class(d, Side::Minus) == 3 && chain.len() > 1 {
                let m1: Vec<Vertex> = d.covers().into_iter().filter(|c| m_class(*c, Side::Plus) == 1).collect();
                assert_eq!(m1, vec![chain[1]]);
            }
            built += 1;
        }
    }
    assert!(built > 20);
}
