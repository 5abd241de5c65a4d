//! Partition functions: virtual characters of local cohomology at `z = 1`.
//!
//! `Z^bare_c` is the alternating sum of local-cohomology characters of an
//! interval algebra with supports in the ideal `c`; as a rational function it
//! is a signed Hilbert series. `Z_a` is its renormalization by the character
//! of `[δ,(1)^{−1}]`. This module evaluates both, expands them in `q`, and
//! checks the functional equations they are expected to satisfy as exact
//! identities of rational functions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{chi_of_elements, exterior_poly_minus_t, hilbert_dp, hilbert_rational_elements, hilbert_recursion, one_at, zero_at, Refine};
use crate::interval::Interval;
use crate::poly::MonomialMap;
use crate::poset::{leq, Vertex};
use crate::rational::RationalFunction;
use crate::series::{q_expand as q_expand_rational, GradedSeries};

/// The ideals of an interval algebra used as supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdealKind {
    Zero,
    A,
    APrime,
    B,
    F,
    FPrime,
    M,
    P,
}

impl IdealKind {
    pub const ALL: [IdealKind; 8] =
        [IdealKind::Zero, IdealKind::A, IdealKind::APrime, IdealKind::B, IdealKind::F, IdealKind::FPrime, IdealKind::M, IdealKind::P];

    pub fn name(self) -> &'static str {
        match self {
            IdealKind::Zero => "0",
            IdealKind::A => "a",
            IdealKind::APrime => "a'",
            IdealKind::B => "b",
            IdealKind::F => "f",
            IdealKind::FPrime => "f'",
            IdealKind::M => "m",
            IdealKind::P => "p",
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdealKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<IdealKind> {
        IdealKind::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "zero" && *k == IdealKind::Zero) || s == k.name().replace('\'', "prime"))
            .ok_or_else(|| Error::Parse(format!("unknown ideal `{s}`, expected one of 0, a, a', b, f, f', m, p")))
    }
}

/// An ideal of `A[δ,δ′]` described by its vertex set `N(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealDescriptor {
    pub kind: IdealKind,
    /// The vertices inverted by the ideal's module, sorted.
    pub n_set: Vec<Vertex>,
    /// `s(c) = |N(c)|`.
    pub s: usize,
    /// The homological shift `s′(c)`, defined for `a, a′, b, f, f′`.
    pub s_prime: Option<i64>,
}

/// Check that `[δ,δ′]` is closed with `δ ≤ (0)^0` and `(1)^{−1} ≤ δ′`.
pub fn check_ideal_interval(i: &Interval) -> Result<()> {
    if !i.is_closed() || !leq(i.lower, zero_at(0)) || !leq(one_at(-1), i.upper) {
        return Err(Error::BadIntervalForIdeal(i.to_string()));
    }
    Ok(())
}

impl IdealDescriptor {
    pub fn new(i: &Interval, kind: IdealKind) -> Result<IdealDescriptor> {
        check_ideal_interval(i)?;
        let elems = i.elements();
        let pick = |f: &dyn Fn(Vertex) -> bool| -> Vec<Vertex> { elems.iter().copied().filter(|v| f(*v)).collect() };
        let n_a = pick(&|v| leq(v, one_at(-1)));
        let n_a2 = pick(&|v| leq(zero_at(1), v));
        let n_set = match kind {
            IdealKind::Zero => Vec::new(),
            IdealKind::A => n_a,
            IdealKind::APrime => n_a2,
            IdealKind::B => pick(&|v| leq(zero_at(0), v)),
            IdealKind::F => pick(&|v| v.rho() <= -1),
            IdealKind::FPrime => pick(&|v| v.rho() >= 0),
            IdealKind::M => elems.to_vec(),
            IdealKind::P => pick(&|v| !n_a.contains(&v) && !n_a2.contains(&v)),
        };
        let (rd, rd2) = (i.lower.rho(), i.upper.rho());
        let s_prime = match kind {
            IdealKind::A => Some(3 - rd),
            IdealKind::APrime => Some(rd2 - 8),
            IdealKind::B => Some(rd2 - 2),
            IdealKind::F => Some(-rd),
            IdealKind::FPrime => Some(rd2 + 1),
            _ => None,
        };
        let s = n_set.len();
        Ok(IdealDescriptor { kind, n_set, s, s_prime })
    }

    /// The maximal ideal of any interval, `N(m)` = all vertices.
    ///
    /// Unlike [`IdealDescriptor::new`] this needs no position relative to
    /// `(0)^0` and `(1)^{−1}`.
    pub fn maximal(i: &Interval) -> IdealDescriptor {
        let n_set = i.elements().to_vec();
        IdealDescriptor { kind: IdealKind::M, s: n_set.len(), n_set, s_prime: None }
    }

    /// All eight descriptors, after checking
    /// `N(m) = N(a) ⊔ N(p) ⊔ N(a′)` and `N(b) = N(p) ∪ N(a′)`.
    pub fn all(i: &Interval) -> Result<BTreeMap<IdealKind, IdealDescriptor>> {
        let mut out = BTreeMap::new();
        for k in IdealKind::ALL {
            out.insert(k, IdealDescriptor::new(i, k)?);
        }
        let set = |k: IdealKind| -> &Vec<Vertex> { &out[&k].n_set };
        let mut union: Vec<Vertex> = set(IdealKind::A).iter().chain(set(IdealKind::P)).chain(set(IdealKind::APrime)).copied().collect();
        let total = union.len();
        union.sort();
        union.dedup();
        let disjoint = union.len() == total;
        let mut b: Vec<Vertex> = set(IdealKind::P).iter().chain(set(IdealKind::APrime)).copied().collect();
        b.sort();
        if !disjoint || &union != set(IdealKind::M) || &b != set(IdealKind::B) {
            return Err(Error::BadIntervalForIdeal(format!("{i}: the N-set identities fail")));
        }
        Ok(out)
    }

    /// The character exponent `(a, u)` of the vertex set `N(c)` as an
    /// interval, i.e. the weight of `χ[N(c)]`.
    pub fn chi_weight(&self) -> (i64, i64) {
        chi_of_elements(&self.n_set).tq()
    }
}

/// `(N, N′)` when the interval is `[(0)^N, (1)^{N′}]`.
pub fn family_indices(i: &Interval) -> Option<(i64, i64)> {
    (i.is_closed() && i.lower == zero_at(i.lower.level) && i.upper == one_at(i.upper.level)).then_some((i.lower.level, i.upper.level))
}

fn parity_sign(n: usize) -> BigRational {
    if n.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `Z^bare_a = (−1)^{|[δ,(1)^{−1}]|} A(t,q) T_a(t,q) ΛS₊(−t,q)`.
///
/// Each vertex `α ∈ N(a)` contributes `v̂^{−1}(1 − v̂)/(1 − v̂^{−1}) = −1` to
/// `T_a ΛS₊(−t)`, so the two signs cancel and `Z^bare_a = A`. The family
/// `[(0)^N, (1)^{N′}]` uses the closed recursion; other intervals read `A`
/// off the chain-counting DP (at most 40 vertices).
pub fn z_bare(i: &Interval) -> Result<RationalFunction> {
    check_ideal_interval(i)?;
    match family_indices(i) {
        Some((n, n2)) => hilbert_recursion(n, n2),
        None if i.len() <= 40 => hilbert_rational_elements(i.elements()),
        None => Err(Error::BudgetExceeded(format!("{i}: {} vertices outside the closed-form family", i.len()))),
    }
}

/// `Z^bare_a = A` of any admissible interval as a `t`-series through `t^t_max`.
pub fn z_bare_series(i: &Interval, t_max: i64, refine: Refine) -> Result<GradedSeries> {
    check_ideal_interval(i)?;
    Ok(hilbert_dp(i, t_max, refine))
}

/// `Z^bare_c` for `c ∈ {a, a′, b}` as a rational function.
///
/// `T_c · ΛS₊(−t) = (−1)^{s(c)}` as rational functions, so
/// `Z^bare_c = (−1)^{s(a)+s(c)} A`; the ideals differ only in the direction
/// of expansion.
pub fn z_bare_ideal(i: &Interval, kind: IdealKind) -> Result<RationalFunction> {
    if !matches!(kind, IdealKind::A | IdealKind::APrime | IdealKind::B) {
        return Err(Error::Unsupported(format!("Z^bare for the ideal {kind}")));
    }
    let a = z_bare(i)?;
    let na = IdealDescriptor::new(i, IdealKind::A)?;
    let nc = IdealDescriptor::new(i, kind)?;
    Ok(a.scale(&parity_sign(na.s + nc.s)))
}

/// A renormalized partition function `Z_a = χ[δ,(1)^{−1}] · Z^bare_a`.
#[derive(Clone, Debug)]
pub struct PartitionFunction {
    pub interval: Interval,
    /// The twist monomial `t^a q^u`, the weight of `χ[δ,(1)^{−1}]`.
    pub twist: (i64, i64),
    pub bare: RationalFunction,
    pub form: RationalFunction,
}

impl PartitionFunction {
    /// True when `form / bare` is exactly the twist monomial.
    pub fn twist_holds(&self) -> bool {
        self.form == &self.bare * &RationalFunction::mono(self.twist.0, self.twist.1)
    }
}

/// `Z_a` of `[(0)^N, (1)^{N′}]`: `A_N^{N′}(t, q) · t^{4−4N} q^{−2+4N−2N²}`.
pub fn z_renorm(i: &Interval) -> Result<PartitionFunction> {
    let bare = z_bare(i)?;
    let twist = IdealDescriptor::new(i, IdealKind::A)?.chi_weight();
    let form = &bare * &RationalFunction::mono(twist.0, twist.1);
    Ok(PartitionFunction { interval: i.clone(), twist, bare, form })
}

/// `Z_a` for the family member `[(0)^N, (1)^{N′}]`.
pub fn z_renorm_family(n: i64, n2: i64) -> Result<PartitionFunction> {
    z_renorm(&Interval::closed(zero_at(n), one_at(n2))?)
}

/// The closed-form twist `t^{4−4N} q^{−2+4N−2N²}` of `[(0)^N, (1)^{−1}]`.
pub fn special_twist(n: i64) -> (i64, i64) {
    (4 - 4 * n, -2 + 4 * n - 2 * n * n)
}

/// `q`-slices of `Z_a` with `q_min ≤ q-degree ≤ q_max`.
pub fn q_expand(pf: &PartitionFunction, q_min: i64, q_max: i64) -> Result<BTreeMap<i64, RationalFunction>> {
    Ok(q_expand_rational(&pf.form, q_max)?.into_iter().filter(|(k, _)| *k >= q_min).collect())
}

/// The symmetries tested on partition functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Equation {
    /// `Z[δ,δ′](t,q) = c · t^a q^u · Z[τ^{−1}σ(δ′), τ^{−1}σ(δ)](q/t, q)`.
    Star,
    /// `Z[δ,δ′](t,q) = c · t^a q^u · Z[σ(δ′), σ(δ)](1/t, q)`.
    FieldAntifield,
}

impl Equation {
    pub fn map(self) -> MonomialMap {
        match self {
            Equation::Star => MonomialMap::t_to_q_over_t(),
            Equation::FieldAntifield => MonomialMap::t_inverse(),
        }
    }

    /// The interval whose partition function appears on the right side.
    pub fn image(self, i: &Interval) -> Result<Interval> {
        match self {
            Equation::Star => Interval::closed(i.upper.sigma().tau(-1), i.lower.sigma().tau(-1)),
            Equation::FieldAntifield => Interval::closed(i.upper.sigma(), i.lower.sigma()),
        }
    }

    /// The sign and monomial `(±1, t-exp, q-exp)` stated for `Z_a`.
    pub fn stated_twist(self) -> (i64, i64, i64) {
        match self {
            Equation::Star => (-1, -4, 2),
            Equation::FieldAntifield => (-1, -8, 0),
        }
    }

    /// The interval family on which the equation is posed, indexed by `N`.
    pub fn family(self, n: i64) -> Result<Interval> {
        match self {
            Equation::Star => Interval::closed(zero_at(-n - 1), one_at(n)),
            Equation::FieldAntifield => Interval::closed(zero_at(-n), one_at(n)),
        }
    }
}

impl FromStr for Equation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Equation> {
        match s {
            "star" => Ok(Equation::Star),
            "faf" | "field-antifield" => Ok(Equation::FieldAntifield),
            _ => Err(Error::Parse(format!("unknown equation `{s}`, expected star or faf"))),
        }
    }
}

/// Outcome of an exact functional-equation check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub equation: String,
    pub interval: Interval,
    pub image: Interval,
    /// `lhs − rhs`; zero exactly when the identity holds.
    pub defect: RationalFunction,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.defect.is_zero()
    }
}

/// Check `lhs = sign · t^a q^u · rhs(map)` exactly.
fn check_identity(
    label: String,
    interval: &Interval,
    image: &Interval,
    lhs: &RationalFunction,
    rhs: &RationalFunction,
    map: &MonomialMap,
    (sign, a, u): (i64, i64, i64),
) -> Result<IdentityCheck> {
    let moved = rhs.substitute(map)?;
    let right = (&moved * &RationalFunction::mono(a, u)).scale(&BigRational::from_integer(sign.into()));
    Ok(IdentityCheck { equation: label, interval: interval.clone(), image: image.clone(), defect: lhs - &right })
}

/// Check a functional equation for `Z_a` on `i` with the given twist.
pub fn functional_equation(i: &Interval, eq: Equation, twist: (i64, i64, i64)) -> Result<IdentityCheck> {
    let image = eq.image(i)?;
    let lhs = z_renorm(i)?.form;
    let rhs = if image == *i { lhs.clone() } else { z_renorm(&image)?.form };
    let label = format!("{eq:?}: Z = {}·t^{}q^{}·Z(image)", twist.0, twist.1, twist.2);
    check_identity(label, i, &image, &lhs, &rhs, &eq.map(), twist)
}

/// `Z_a(t,q) = −t^{−4} q² Z_a(q/t, q)` on `[(0)^{−N−1}, (1)^N]`.
pub fn verify_star_duality(n: i64) -> Result<IdentityCheck> {
    functional_equation(&Equation::Star.family(n)?, Equation::Star, Equation::Star.stated_twist())
}

/// `Z_a(t,q) = −t^{−8} Z_a(1/t, q)` on `[(0)^{−N}, (1)^N]`.
pub fn verify_field_antifield(n: i64) -> Result<IdentityCheck> {
    functional_equation(&Equation::FieldAntifield.family(n)?, Equation::FieldAntifield, Equation::FieldAntifield.stated_twist())
}

/// The twist `(±1, t-exp, q-exp)` for which `eq` holds on `Z_a` of `i`,
/// found from the leading terms and then verified exactly; `None` when the
/// ratio of the two sides is not a signed monomial.
pub fn solve_twist(i: &Interval, eq: Equation) -> Result<Option<(i64, i64, i64)>> {
    let image = eq.image(i)?;
    let lhs = z_renorm(i)?.form;
    let rhs = z_renorm(&image)?.form.substitute(&eq.map())?;
    let (p1, d1) = lhs.to_polys();
    let (p2, d2) = rhs.to_polys();
    let x = &p1 * &d2;
    let y = &p2 * &d1;
    let (Some((kx, cx)), Some((ky, cy))) = (x.leading_grlex(), y.leading_grlex()) else { return Ok(None) };
    let c = cx / cy;
    let sign = if c == BigRational::one() {
        1
    } else if c == -BigRational::one() {
        -1
    } else {
        return Ok(None);
    };
    let twist = (sign, kx.0 - ky.0, kx.1 - ky.1);
    let check = check_identity(String::new(), i, &image, &lhs, &z_renorm(&image)?.form, &eq.map(), twist)?;
    Ok(check.holds().then_some(twist))
}

/// `ZBV^bare = Z^bare · ΛS₊(−t, q)` at `z = 1`, for `c ∈ {a, a′}`.
pub fn zbv_ideal(i: &Interval, kind: IdealKind) -> Result<RationalFunction> {
    Ok(z_bare_ideal(i, kind)?.mul_poly(&exterior_poly_minus_t(i.elements())))
}

/// `ZBV^bare_a` of the interval.
pub fn zbv(i: &Interval) -> Result<RationalFunction> {
    zbv_ideal(i, IdealKind::A)
}

/// Outcome of the BV exchange
/// `ZBV^bare_a(t,q) = ± t^{s(m)−a(m)} q^{u′(m)−u(m)} ZBV^bare_{a′}(1/t, 1/q)` at `z = 1`.
///
/// `(a(m), u(m))` is the weight of `χ[δ,δ′]` and `u′(m) = Σ_α u(α)` is the
/// `q`-weight of the top exterior power, the `q`-analogue of `r′(m)`. The
/// sign `(−1)^{s′(m)−s(m)}` is reported rather than assumed, since `s′(m)`
/// is not tabulated.
#[derive(Clone, Debug, Serialize)]
pub struct BvReport {
    pub interval: String,
    pub t_exponent: i64,
    pub q_exponent: i64,
    /// The sign for which the identity holds, if any.
    pub sign: Option<i64>,
    /// Whether the identity also holds with no `q`-twist.
    pub holds_without_q_twist: bool,
}

impl BvReport {
    pub fn holds(&self) -> bool {
        self.sign.is_some()
    }
}

fn signed_match(left: &RationalFunction, right: &RationalFunction) -> Option<i64> {
    if left == right {
        Some(1)
    } else if *left == -right {
        Some(-1)
    } else {
        None
    }
}

pub fn verify_bv_duality(i: &Interval) -> Result<BvReport> {
    let left = zbv_ideal(i, IdealKind::A)?;
    let right = zbv_ideal(i, IdealKind::APrime)?.substitute(&MonomialMap::invert_both())?;
    let chi_m = chi_of_elements(i.elements());
    let u_top: i64 = i.elements().iter().map(|v| v.level_u()).sum();
    let t_exponent = i.len() as i64 - chi_m.a;
    let q_exponent = u_top - chi_m.u;
    let sign = signed_match(&left, &(&right * &RationalFunction::mono(t_exponent, q_exponent)));
    let holds_without_q_twist = signed_match(&left, &(&right * &RationalFunction::mono(t_exponent, 0))).is_some();
    Ok(BvReport { interval: i.to_string(), t_exponent, q_exponent, sign, holds_without_q_twist })
}

/// Check `Z^bare_a(t,q) = ± t^{e_t} q^{e_q} Z^bare_b(1/t, 1/q)` and return
/// the monomial `(sign, e_t, e_q)` for which it holds.
pub fn bare_exchange(i: &Interval) -> Result<Option<(i64, i64, i64)>> {
    let left = z_bare_ideal(i, IdealKind::A)?;
    let right = z_bare_ideal(i, IdealKind::B)?.substitute(&MonomialMap::invert_both())?;
    let (p1, d1) = left.to_polys();
    let (p2, d2) = right.to_polys();
    let x = &p1 * &d2;
    let y = &p2 * &d1;
    let (Some((kx, cx)), Some((ky, cy))) = (x.leading_grlex(), y.leading_grlex()) else { return Ok(None) };
    let c = cx / cy;
    let sign = if c.is_one() { 1 } else if c == -BigRational::one() { -1 } else { return Ok(None) };
    let m = RationalFunction::mono(kx.0 - ky.0, kx.1 - ky.1).scale(&BigRational::from_integer(sign.into()));
    Ok((left == &m * &right).then_some((sign, kx.0 - ky.0, kx.1 - ky.1)))
}

/// One stabilized `q`-slice.
#[derive(Clone, Debug)]
pub struct StableSlice {
    pub q_degree: i64,
    /// The first `N` at which the window agrees with `N + 1`.
    pub stable_from: Option<i64>,
    /// Lowest `t`-exponent of the compared window.
    pub t_start: i64,
    /// Coefficients of `t^{t_start}, …, t^{t_start + t_depth − 1}`.
    pub coefficients: Vec<BigRational>,
    /// The slice at the largest `N` computed.
    pub slice: RationalFunction,
}

/// Result of a stabilization scan over `[(0)^{−N}, (1)^N]`.
#[derive(Clone, Debug)]
pub struct StabilizationReport {
    pub slices: Vec<StableSlice>,
    pub n_max_used: i64,
    pub budget_exceeded: bool,
}

impl StabilizationReport {
    pub fn all_stable(&self) -> bool {
        !self.budget_exceeded && self.slices.iter().all(|s| s.stable_from.is_some())
    }
}

/// Lowest `t`-exponent with a possibly nonzero coefficient in a slice.
fn slice_t_order(r: &RationalFunction) -> i64 {
    r.numerator().t_range().map(|(lo, _)| lo).unwrap_or(0)
}

/// Laurent coefficients of a `t`-slice on `[t_start, t_start + depth)`.
pub fn slice_window(r: &RationalFunction, t_start: i64, depth: usize) -> Result<Vec<BigRational>> {
    let t_max = t_start + depth as i64 - 1;
    let s = r.expand(t_max)?;
    Ok(s.t_coeffs(t_start))
}

/// Grow `N` from 1 until each requested `q`-slice of `Z_a[(0)^{−N},(1)^N]`
/// has the same first `t_depth` coefficients for `N` and `N + 1`, and stays
/// equal once more (`N + 2`) to confirm.
pub fn stabilization_scan(q_orders: &[i64], t_depth: usize, n_max: i64) -> Result<StabilizationReport> {
    let q_min = *q_orders.iter().min().unwrap_or(&0);
    let q_max = *q_orders.iter().max().unwrap_or(&0);
    let mut history: Vec<BTreeMap<i64, RationalFunction>> = Vec::new();
    let mut stable: BTreeMap<i64, i64> = BTreeMap::new();
    let mut n = 1;
    let mut budget_exceeded = false;
    loop {
        let pf = z_renorm_family(-n, n)?;
        history.push(q_expand(&pf, q_min, q_max)?);
        if history.len() >= 3 {
            let k = history.len();
            for &q in q_orders {
                if stable.contains_key(&q) {
                    continue;
                }
                let zero = RationalFunction::zero();
                let s0 = history[k - 3].get(&q).unwrap_or(&zero);
                let s1 = history[k - 2].get(&q).unwrap_or(&zero);
                let s2 = history[k - 1].get(&q).unwrap_or(&zero);
                let t0 = slice_t_order(s0).min(slice_t_order(s1)).min(slice_t_order(s2));
                let w0 = slice_window(s0, t0, t_depth)?;
                if w0 == slice_window(s1, t0, t_depth)? && w0 == slice_window(s2, t0, t_depth)? {
                    stable.insert(q, n - 2);
                }
            }
        }
        if q_orders.iter().all(|q| stable.contains_key(q)) {
            break;
        }
        if n >= n_max {
            budget_exceeded = true;
            break;
        }
        n += 1;
    }
    let last = history.last().cloned().unwrap_or_default();
    let mut slices = Vec::new();
    for &q in q_orders {
        let slice = last.get(&q).cloned().unwrap_or_else(RationalFunction::zero);
        let t_start = slice_t_order(&slice);
        let coefficients = slice_window(&slice, t_start, t_depth)?;
        slices.push(StableSlice { q_degree: q, stable_from: stable.get(&q).copied(), t_start, coefficients, slice });
    }
    Ok(StabilizationReport { slices, n_max_used: n, budget_exceeded })
}

/// Coefficient of `t^a q^u` in the `q`-expansion of a rational function,
/// with `t`-slices expanded as Laurent series.
pub fn coefficient(f: &RationalFunction, a: i64, u: i64) -> Result<BigRational> {
    let slices = q_expand_rational(f, u)?;
    match slices.get(&u) {
        None => Ok(BigRational::zero()),
        Some(s) => {
            let lo = slice_t_order(s);
            if a < lo {
                return Ok(BigRational::zero());
            }
            Ok(slice_window(s, lo, (a - lo + 1) as usize)?.pop().unwrap_or_else(BigRational::zero))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly2;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::closed(zero_at(a), one_at(b)).unwrap()
    }

    #[test]
    fn n_sets_partition_the_interval() {
        let i = iv(-1, 1);
        let all = IdealDescriptor::all(&i).unwrap();
        assert_eq!(all[&IdealKind::A].s, 16);
        assert_eq!(all[&IdealKind::M].s, 48);
        assert_eq!(all[&IdealKind::A].s_prime, Some(11));
        assert_eq!(all[&IdealKind::B].s + all[&IdealKind::A].s, 48);
        assert!(all[&IdealKind::Zero].n_set.is_empty());
    }

    #[test]
    fn bad_interval_for_ideal() {
        let small = Interval::closed(zero_at(1), one_at(1)).unwrap();
        assert!(matches!(z_bare(&small), Err(Error::BadIntervalForIdeal(_))));
    }

    #[test]
    fn renorm_twist_is_the_special_character() {
        for n in -3..0 {
            let pf = z_renorm_family(n, 0).unwrap();
            assert_eq!(pf.twist, special_twist(n));
            assert!(pf.twist_holds());
        }
        assert_eq!(special_twist(-1), (8, -8));
    }

    #[test]
    fn leading_slice_is_shifted_cone_series() {
        let pf = z_renorm_family(-1, 0).unwrap();
        let s = q_expand(&pf, -2, -2).unwrap();
        let a00 = RationalFunction::over_binomials(Poly2::from_t_coeffs(&[1, 5, 5, 1]), &[(1, 0, 11)]).unwrap();
        assert_eq!(s[&-2], &a00 * &RationalFunction::mono(4, 0));
    }
}
