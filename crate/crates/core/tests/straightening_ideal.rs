//! Quadrics of the cone and their loop versions, standard monomials and
//! degree-two straightening.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use spinor_core::hilbert::{hilbert_function, one_at, zero_at};
use spinor_core::interval::Interval;
use spinor_core::poset::{cl_set, in_m, is_clutter, join, m_class, meet, vertices_in_band, Side, Vertex};
use spinor_core::straighten::*;

fn v(s: &str) -> Vertex {
    s.parse().unwrap()
}

fn iv(s: &str) -> Interval {
    s.parse().unwrap()
}

fn cone() -> Interval {
    Interval::closed(zero_at(0), one_at(0)).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn pfaffian_relation_for_index_five() {
    let r = cone_relations().into_iter().find(|r| r.tag.0 == QuadricKind::Pfaffian(5)).unwrap();
    // λ p₅ − (w₁₂w₃₄ − w₁₃w₂₄ + w₁₄w₂₃), up to an overall sign
    let expect = BTreeMap::from([
        (pair(v("(0)^0"), v("(5)^0")), BigRational::one()),
        (pair(v("(12)^0"), v("(34)^0")), -BigRational::one()),
        (pair(v("(13)^0"), v("(24)^0")), BigRational::one()),
        (pair(v("(14)^0"), v("(23)^0")), -BigRational::one()),
    ]);
    let neg: BTreeMap<_, _> = expect.iter().map(|(k, c)| (*k, -c.clone())).collect();
    assert!(r.terms == expect || r.terms == neg, "{}", r.to_text());
    assert_eq!(r.clutters(), vec![pair(v("(14)^0"), v("(23)^0"))]);
}

#[test]
fn cone_has_ten_relations_in_sixteen_variables() {
    let rels = cone_relations();
    assert_eq!(rels.len(), 10);
    let vars: std::collections::BTreeSet<Vertex> = rels.iter().flat_map(|r| r.terms.keys().flat_map(|(a, b)| [*a, *b])).collect();
    assert_eq!(vars.len(), 16);
    assert!(rels.iter().all(|r| r.clutters().len() == 1));
}

#[test]
fn loop_relation_counts() {
    assert_eq!(loop_relations(&cone()).len(), 10);
    assert_eq!(loop_relations(&Interval::closed(zero_at(0), one_at(1)).unwrap()).len(), 30);
    assert_eq!(loop_relations(&Interval::closed(zero_at(-1), one_at(1)).unwrap()).len(), 50);
}

#[test]
fn loop_relations_have_one_clutter_and_a_weight() {
    let i = Interval::closed(zero_at(-1), one_at(1)).unwrap();
    for r in loop_relations(&i) {
        assert_eq!(r.clutters().len(), 1, "{}", r.to_text());
        assert!(r.weight().is_some(), "{}", r.to_text());
        assert!(r.terms.values().all(|c| !c.is_zero()));
    }
}

#[test]
fn standard_monomial_counts() {
    let c = cone();
    assert_eq!(standard_monomials(c.elements(), 1).len(), 16);
    assert_eq!(standard_monomial_count(c.elements(), 2), BigInt::from(126));
    assert_eq!(standard_monomial_count(iv("((0)^0:(1)^0]").elements(), 1), BigInt::from(15));
    assert_eq!(standard_monomial_count(c.elements(), 0), BigInt::one());
    // 136 monomials of degree two less one clutter per quadric
    assert_eq!(binomial(17, 2) - 10, 126);
}

#[test]
fn standard_monomials_are_weak_chains() {
    let c = cone();
    let e = c.elements();
    for m in standard_monomials(e, 3) {
        for w in m.windows(2) {
            assert!(spinor_core::poset::leq(e[w[0]], e[w[1]]));
        }
    }
}

#[test]
fn quotient_dimension_matches_standard_monomials() {
    let c = cone();
    let hf = hilbert_function(c.elements(), 4);
    for d in 0..=4usize {
        let all = binomial(16 + d as u64 - 1, d as u64) as usize;
        let quotient = all - ideal_rank_in_degree(&c, d);
        assert_eq!(BigInt::from(quotient), standard_monomial_count(c.elements(), d), "degree {d}");
        assert_eq!(BigInt::from(quotient), hf[d]);
    }
}

#[test]
fn straightening_of_the_pf5_clutter() {
    let s = straighten(v("(14)^0"), v("(23)^0"), &cone()).unwrap();
    assert_eq!(s.clutter, pair(v("(14)^0"), v("(23)^0")));
    assert_eq!(meet(v("(14)^0"), v("(23)^0")), v("(13)^0"));
    assert_eq!(join(v("(14)^0"), v("(23)^0")), v("(24)^0"));
    assert_eq!(s.rhs.len(), 3);
    assert!(s.rectangle_coefficient().abs() == BigRational::one());
    assert!(s.rhs.contains_key(&pair(v("(12)^0"), v("(34)^0"))));
    assert!(s.rhs.contains_key(&pair(v("(0)^0"), v("(5)^0"))));
}

#[test]
fn straightening_shape() {
    let i = Interval::closed(zero_at(-1), one_at(1)).unwrap();
    let table = StraighteningTable::new(&i).unwrap();
    let clutters: usize = {
        let e = i.elements();
        (0..e.len()).flat_map(|a| (a + 1..e.len()).map(move |b| (a, b))).filter(|&(a, b)| is_clutter(e[a], e[b])).count()
    };
    // one relation per clutter, each solved uniquely
    assert_eq!(table.rules.len(), clutters);
    assert_eq!(table.rank, clutters);
    for s in table.rules.values() {
        let (a, b) = s.clutter;
        let (lo, hi) = (meet(a, b), join(a, b));
        assert!(!s.rectangle_coefficient().is_zero(), "no rectangle term for {a},{b}");
        for (g, d) in s.rhs.keys() {
            if (*g, *d) == pair(lo, hi) {
                continue;
            }
            assert!(spinor_core::poset::leq(*g, lo) && *g != lo, "{g} is not below {lo}");
            assert!(spinor_core::poset::leq(hi, *d) && *d != hi, "{d} is not above {hi}");
        }
    }
}

#[test]
fn hibi_contraction_and_h_exponents() {
    let i = Interval::closed(zero_at(-1), one_at(1)).unwrap();
    let table = StraighteningTable::new(&i).unwrap();
    for s in table.rules.values() {
        let (a, b) = s.clutter;
        let rect = pair(meet(a, b), join(a, b));
        let h = s.hibi_contract();
        assert_eq!(h.rhs.keys().copied().collect::<Vec<_>>(), vec![rect]);
        assert_eq!(s.h_exponent(rect), 0);
        for t in s.rhs.keys().filter(|t| **t != rect) {
            assert!(s.h_exponent(*t) > 0, "h-exponent of {t:?} in the straightening of {a},{b}");
        }
    }
    let s = straighten(v("(14)^0"), v("(23)^0"), &cone()).unwrap();
    let expect = v("(0)^0").ell() + v("(5)^0").ell() - v("(14)^0").ell() - v("(23)^0").ell();
    assert_eq!(s.h_exponent(pair(v("(0)^0"), v("(5)^0"))), expect);
    assert!(expect > 0);
}

#[test]
fn straighten_errors() {
    let c = cone();
    assert!(matches!(straighten(v("(12)^0"), v("(13)^0"), &c), Err(spinor_core::Error::NotClutter(_, _))));
    assert!(matches!(straighten(v("(14)^0"), v("(23)^1"), &c), Err(spinor_core::Error::NotInInterval(_))));
}

#[test]
fn covers_in_m2_minus_are_annihilated_above_the_open_end() {
    let mut checked = 0;
    for d in vertices_in_band(-8, 8).into_iter().filter(|d| in_m(*d)) {
        for d1 in d.covers() {
            if m_class(d1, Side::Minus) != 2 {
                continue;
            }
            let partners = cl_set(d1, Side::Minus);
            let beta = partners.iter().fold(d1, |acc, g| join(acc, *g));
            let i = Interval::build(d, beta, true, false).unwrap();
            let table = StraighteningTable::new(&i).unwrap();
            for g in &partners {
                let s = table.straighten(d1, *g).unwrap();
                if spinor_core::poset::leq(meet(d1, *g), d) {
                    assert!(s.rhs.is_empty(), "λ^{d1}·λ^{g} does not vanish in {i}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 2, "only {checked} cases");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relations_of_random_intervals_are_homogeneous(lo in -12i64..12, width in 0i64..8, pick in 0usize..2, pick2 in 0usize..2) {
        let a = spinor_core::poset::vertices_at_rho(lo)[pick];
        let b = spinor_core::poset::vertices_at_rho(lo + width)[pick2];
        prop_assume!(spinor_core::poset::leq(a, b));
        let i = Interval::closed(a, b).unwrap();
        for r in loop_relations(&i) {
            prop_assert!(r.weight().is_some());
            prop_assert!(r.clutters().len() <= 1);
        }
    }
}
