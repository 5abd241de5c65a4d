//! Truncated multigraded series graded primarily by `t`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rat, Poly2};
use crate::rational::{Factor, RationalFunction};
use crate::weight::Weight;

/// Exponent key `t^t q^q z^z` with the doubled spin-torus weight `z`
/// (all zero for series that are not refined by the spin torus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SeriesKey {
    pub t: i64,
    pub q: i64,
    pub z: [i64; 5],
}

impl SeriesKey {
    pub const fn tq(t: i64, q: i64) -> SeriesKey {
        SeriesKey { t, q, z: [0; 5] }
    }

    fn add(&self, o: &SeriesKey) -> SeriesKey {
        let mut z = self.z;
        for (a, b) in z.iter_mut().zip(o.z) {
            *a += b;
        }
        SeriesKey { t: self.t + o.t, q: self.q + o.q, z }
    }
}

impl From<Weight> for SeriesKey {
    fn from(w: Weight) -> Self {
        SeriesKey { t: w.a, q: w.u, z: w.r }
    }
}

/// A series known exactly in every `t`-degree up to `t_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    coeffs: BTreeMap<SeriesKey, BigRational>,
    t_max: i64,
}

impl GradedSeries {
    pub fn zero(t_max: i64) -> Self {
        GradedSeries { coeffs: BTreeMap::new(), t_max }
    }

    pub fn one(t_max: i64) -> Self {
        let mut s = GradedSeries::zero(t_max);
        s.add_term(SeriesKey::tq(0, 0), BigRational::one());
        s
    }

    pub fn t_max(&self) -> i64 {
        self.t_max
    }

    pub fn coeffs(&self) -> &BTreeMap<SeriesKey, BigRational> {
        &self.coeffs
    }

    /// Add `c · key`; terms beyond the truncation are dropped.
    pub fn add_term(&mut self, key: SeriesKey, c: BigRational) {
        if key.t > self.t_max || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn from_poly(p: &Poly2, t_max: i64) -> Self {
        let mut s = GradedSeries::zero(t_max);
        for (&(t, q), c) in p.terms() {
            s.add_term(SeriesKey::tq(t, q), c.clone());
        }
        s
    }

    /// Coefficient of `t^t q^q` summed over spin weights.
    pub fn coeff(&self, t: i64, q: i64) -> BigRational {
        self.coeffs
            .range(SeriesKey { t, q, z: [i64::MIN; 5] }..=SeriesKey { t, q, z: [i64::MAX; 5] })
            .map(|(_, c)| c.clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn coeff_key(&self, key: &SeriesKey) -> BigRational {
        self.coeffs.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients of `t^d` summed over `q` and `z`, for `d` in `t_min..=t_max`.
    pub fn t_coeffs(&self, t_min: i64) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); (self.t_max - t_min + 1).max(0) as usize];
        for (k, c) in &self.coeffs {
            if k.t >= t_min {
                v[(k.t - t_min) as usize] += c;
            }
        }
        v
    }

    /// The `t`-series multiplying `q^q_deg`, as a map `t ↦ coefficient`.
    pub fn q_slice(&self, q_deg: i64) -> BTreeMap<i64, BigRational> {
        let mut m: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if k.q == q_deg {
                *m.entry(k.t).or_insert_with(BigRational::zero) += c;
            }
        }
        m.retain(|_, c| !c.is_zero());
        m
    }

    /// Drop the spin-torus refinement.
    pub fn forget_z(&self) -> Self {
        let mut s = GradedSeries::zero(self.t_max);
        for (k, c) in &self.coeffs {
            s.add_term(SeriesKey::tq(k.t, k.q), c.clone());
        }
        s
    }

    /// Set `q = 1`.
    pub fn forget_q(&self) -> Self {
        let mut s = GradedSeries::zero(self.t_max);
        for (k, c) in &self.coeffs {
            s.add_term(SeriesKey { t: k.t, q: 0, z: k.z }, c.clone());
        }
        s
    }

    pub fn truncate(&self, t_max: i64) -> Self {
        let t_max = t_max.min(self.t_max);
        GradedSeries { coeffs: self.coeffs.iter().filter(|(k, _)| k.t <= t_max).map(|(k, c)| (*k, c.clone())).collect(), t_max }
    }

    /// Lowest `t`-degree with a nonzero coefficient.
    pub fn t_order(&self) -> Option<i64> {
        self.coeffs.keys().map(|k| k.t).min()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.truncate(o.t_max);
        for (k, c) in &o.coeffs {
            s.add_term(*k, c.clone());
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut s = GradedSeries::zero(self.t_max);
        for (k, v) in &self.coeffs {
            s.add_term(*k, v * c);
        }
        s
    }

    /// Product, valid through the degree determined by both truncations
    /// and the lowest degrees present.
    pub fn mul(&self, o: &Self) -> Self {
        let t_max = match (self.t_order(), o.t_order()) {
            (Some(a), Some(b)) => (self.t_max + b).min(o.t_max + a),
            _ => self.t_max.min(o.t_max),
        };
        let mut s = GradedSeries::zero(t_max);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &o.coeffs {
                if ka.t + kb.t <= t_max {
                    s.add_term(ka.add(kb), ca * cb);
                }
            }
        }
        s
    }

    /// Add, requiring both operands to share the truncation.
    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.t_max != o.t_max {
            return Err(Error::TruncationMismatch(self.t_max, o.t_max));
        }
        Ok(self.add(o))
    }

    /// Multiply, requiring both operands to share the truncation.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.t_max != o.t_max {
            return Err(Error::TruncationMismatch(self.t_max, o.t_max));
        }
        Ok(self.mul(o))
    }

    /// The `t`-adic expansion of `f` through `t^t_max`.
    ///
    /// Fails when a denominator factor involves `q` alone.
    pub fn expand(f: &RationalFunction, t_max: i64) -> Result<Self> {
        let num = f.numerator();
        if num.is_zero() {
            return Ok(GradedSeries::zero(t_max));
        }
        let (lo, _) = num.t_range().unwrap();
        let budget = t_max - lo;
        if budget < 0 {
            return Ok(GradedSeries::zero(t_max));
        }
        let mut inv = Poly2::one();
        for (fac, &e) in f.denominator_factors() {
            if fac.m.0 <= 0 {
                return Err(Error::NotExpandable(format!("denominator factor without t: {:?}", fac.m)));
            }
            inv = inv.mul_trunc_t(&inverse_factor_power(fac, e, budget, Direction::T), budget);
        }
        let p = num.mul_trunc_t(&inv, t_max);
        Ok(GradedSeries::from_poly(&p, t_max))
    }

    /// Every coefficient as `(t, q, z, value)` rows.
    pub fn rows(&self) -> Vec<(i64, i64, [i64; 5], String)> {
        self.coeffs.iter().map(|(k, c)| (k.t, k.q, k.z, c.to_string())).collect()
    }

    /// Polynomial in `t, q` with the spin weights summed out.
    pub fn to_poly(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (k, c) in &self.coeffs {
            p.add_term(k.t, k.q, c.clone());
        }
        p
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_poly(), self.t_max + 1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    /// Truncate on `t`-degree.
    T,
    /// Truncate on `q`-degree.
    Q,
}

/// `1 / Φ̃_d(m)^e` as a power series in `m`, truncated at `budget` in the
/// chosen direction (the monomial `m` has positive degree there).
///
/// Uses `1/Φ̃_d(x) = Π_{k|d, k<d} Φ̃_k(x) · Σ_n x^{dn}`.
pub(crate) fn inverse_factor_power(fac: &Factor, e: u32, budget: i64, dir: Direction) -> Poly2 {
    let step = match dir {
        Direction::T => fac.m.0,
        Direction::Q => fac.m.1,
    };
    assert!(step > 0, "expansion monomial must have positive degree");
    let mut numer = Poly2::one();
    for k in 1..fac.d {
        if fac.d.is_multiple_of(k) {
            numer = &numer * &Factor { d: k, m: fac.m }.poly();
        }
    }
    let numer = numer.pow(e);
    // Σ_n C(n+e−1, e−1) x^{dn}
    let big_step = step * fac.d as i64;
    let mut geo = Poly2::zero();
    let mut n: i64 = 0;
    let mut binom = BigInt::one();
    let e = e as i64;
    while n * big_step <= budget {
        geo.add_term(
            n * fac.d as i64 * fac.m.0,
            n * fac.d as i64 * fac.m.1,
            BigRational::from_integer(binom.clone()),
        );
        n += 1;
        binom = binom * BigInt::from(n + e - 1) / BigInt::from(n);
    }
    match dir {
        Direction::T => numer.mul_trunc_t(&geo, budget),
        Direction::Q => numer.mul_trunc_q(&geo, budget),
    }
}

/// The `q`-expansion of a rational function: for each `q`-degree up to
/// `q_max` the coefficient as a rational function of `t`.
///
/// Factors `Φ̃_d(t^j q^i)` with `i > 0` are expanded in powers of the
/// monomial, factors with `i < 0` in powers of its inverse, and pure
/// `t`-factors stay in the coefficient denominators.
pub fn q_expand(f: &RationalFunction, q_max: i64) -> Result<BTreeMap<i64, RationalFunction>> {
    let num = f.numerator();
    let mut out = BTreeMap::new();
    if num.is_zero() {
        return Ok(out);
    }
    let mut pieces: Vec<(Factor, u32)> = Vec::new();
    let mut t_den: Vec<(i64, u32, Factor)> = Vec::new();
    let mut unit_q = 0i64;
    let mut unit = Poly2::one();
    for (fac, &e) in f.denominator_factors() {
        let (j, i) = fac.m;
        if i == 0 {
            t_den.push((j, e, *fac));
        } else if i > 0 {
            pieces.push((*fac, e));
        } else {
            // Φ̃_d(m) = u · Φ̃_d(1/m); the inverse of u multiplies the expansion.
            let inv_m = (-j, -i);
            let u = if fac.d == 1 {
                Poly2::from_int_terms(&[(j, i, -1)])
            } else {
                let ph = crate::poly::totient(fac.d) as i64;
                Poly2::from_int_terms(&[(j * ph, i * ph, 1)])
            };
            // 1/u^e as a monomial.
            let (&(ut, uq), uc) = u.terms().iter().next().unwrap();
            let inv_u = Poly2::monomial(uc.recip(), -ut, -uq).pow(e);
            unit_q += -uq * e as i64;
            unit = &unit * &inv_u;
            pieces.push((Factor { d: fac.d, m: inv_m }, e));
        }
    }
    let (q_lo, _) = num.q_range().unwrap();
    let base_q = q_lo + unit_q;
    let budget = q_max - base_q;
    if budget < 0 {
        return Ok(out);
    }
    let mut acc = num.mul_trunc_q(&unit, q_max);
    for (fac, e) in &pieces {
        let s = inverse_factor_power(fac, *e, budget, Direction::Q);
        acc = acc.mul_trunc_q(&s, q_max);
    }
    let mut by_q: BTreeMap<i64, Poly2> = BTreeMap::new();
    for (&(t, q), c) in acc.terms() {
        by_q.entry(q).or_default().add_term(t, 0, c.clone());
    }
    for (q, p) in by_q {
        let mut r = RationalFunction::from_poly(p);
        for (j, e, fac) in &t_den {
            let mut d = RationalFunction::one();
            // 1/Φ̃_d(t^j) = Π_{k|d,k<d} Φ̃_k(t^j) / (1 − t^{jd})
            let mut numer = Poly2::one();
            for k in 1..fac.d {
                if fac.d % k == 0 {
                    numer = &numer * &Factor { d: k, m: (*j, 0) }.poly();
                }
            }
            let one = RationalFunction::over_binomials(numer, &[(*j * fac.d as i64, 0, 1)])?;
            for _ in 0..*e {
                d = &d * &one;
            }
            r = &r * &d;
        }
        if !r.is_zero() {
            out.insert(q, r);
        }
    }
    Ok(out)
}
