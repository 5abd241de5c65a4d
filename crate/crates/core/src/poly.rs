//! Laurent polynomials in `t` and `q` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A monomial substitution `t ↦ t^a q^b`, `q ↦ t^c q^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub t_to: (i64, i64),
    pub q_to: (i64, i64),
}

impl MonomialMap {
    pub const IDENTITY: MonomialMap = MonomialMap { t_to: (1, 0), q_to: (0, 1) };

    /// `t ↦ t^a q^b`, `q` fixed.
    pub const fn t_to(a: i64, b: i64) -> MonomialMap {
        MonomialMap { t_to: (a, b), q_to: (0, 1) }
    }

    /// `t ↦ 1/t`.
    pub const fn t_inverse() -> MonomialMap {
        MonomialMap::t_to(-1, 0)
    }

    /// `t ↦ q/t`.
    pub const fn t_to_q_over_t() -> MonomialMap {
        MonomialMap::t_to(-1, 1)
    }

    /// `t ↦ 1/t`, `q ↦ 1/q`.
    pub const fn invert_both() -> MonomialMap {
        MonomialMap { t_to: (-1, 0), q_to: (0, -1) }
    }

    /// Image of the exponent vector `(i, j)` of `t^i q^j`.
    pub fn apply(&self, (i, j): (i64, i64)) -> (i64, i64) {
        (i * self.t_to.0 + j * self.q_to.0, i * self.t_to.1 + j * self.q_to.1)
    }

    /// True when the map is invertible on exponent vectors.
    pub fn is_unimodular(&self) -> bool {
        (self.t_to.0 * self.q_to.1 - self.t_to.1 * self.q_to.0).abs() == 1
    }
}

/// `Σ c_{ij} t^i q^j`, keys `(i, j)` sorted lexicographically with `t > q`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(i64, i64), BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2::default()
    }

    pub fn one() -> Poly2 {
        Poly2::monomial(BigRational::one(), 0, 0)
    }

    pub fn constant(c: BigRational) -> Poly2 {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, t: i64, q: i64) -> Poly2 {
        let mut p = Poly2::zero();
        p.add_term(t, q, c);
        p
    }

    /// `t^i q^j` with coefficient one.
    pub fn mono(t: i64, q: i64) -> Poly2 {
        Poly2::monomial(BigRational::one(), t, q)
    }

    /// Build from integer terms `(t, q, c)`.
    pub fn from_int_terms(terms: &[(i64, i64, i64)]) -> Poly2 {
        let mut p = Poly2::zero();
        for &(t, q, c) in terms {
            p.add_term(t, q, rat(c));
        }
        p
    }

    /// A univariate polynomial in `t` from its coefficient list starting at `t^0`.
    pub fn from_t_coeffs(cs: &[i64]) -> Poly2 {
        let mut p = Poly2::zero();
        for (k, &c) in cs.iter().enumerate() {
            p.add_term(k as i64, 0, rat(c));
        }
        p
    }

    pub fn add_term(&mut self, t: i64, q: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((t, q)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(t, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: i64, q: i64) -> BigRational {
        self.terms.get(&(t, q)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiply by `t^dt q^dq`.
    pub fn shift(&self, dt: i64, dq: i64) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(&(t, q), v)| ((t + dt, q + dq), v.clone())).collect() }
    }

    pub fn substitute(&self, m: &MonomialMap) -> Poly2 {
        let mut p = Poly2::zero();
        for (&k, v) in &self.terms {
            let (t, q) = m.apply(k);
            p.add_term(t, q, v.clone());
        }
        p
    }

    /// `(min, max)` of the `t`-exponents, `None` for zero.
    pub fn t_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|k| k.0);
        let first = it.next()?;
        Some(it.fold((first, first), |(a, b), x| (a.min(x), b.max(x))))
    }

    /// `(min, max)` of the `q`-exponents, `None` for zero.
    pub fn q_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|k| k.1);
        let first = it.next()?;
        Some(it.fold((first, first), |(a, b), x| (a.min(x), b.max(x))))
    }

    /// Only terms with `t`-degree at most `t_max`.
    pub fn truncate_t(&self, t_max: i64) -> Poly2 {
        Poly2 { terms: self.terms.iter().filter(|(k, _)| k.0 <= t_max).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// Only terms with `q`-degree at most `q_max`.
    pub fn truncate_q(&self, q_max: i64) -> Poly2 {
        Poly2 { terms: self.terms.iter().filter(|(k, _)| k.1 <= q_max).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// Product keeping only terms with `t`-degree at most `t_max`.
    pub fn mul_trunc_t(&self, o: &Poly2, t_max: i64) -> Poly2 {
        let mut out: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                if a + c > t_max {
                    continue;
                }
                *out.entry((a + c, b + d)).or_insert_with(BigRational::zero) += x * y;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Poly2 { terms: out }
    }

    /// Product keeping only terms with `q`-degree at most `q_max`.
    pub fn mul_trunc_q(&self, o: &Poly2, q_max: i64) -> Poly2 {
        let mut out: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                if b + d > q_max {
                    continue;
                }
                *out.entry((a + c, b + d)).or_insert_with(BigRational::zero) += x * y;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Poly2 { terms: out }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d` if `d` divides `self` in the Laurent ring.
    ///
    /// Both are shifted to ordinary polynomials and divided by the
    /// lexicographic (`t > q`) division algorithm; a single divisor is a
    /// Gröbner basis of the ideal it generates, so the remainder vanishes
    /// exactly when `d` divides.
    pub fn divide_exact(&self, d: &Poly2) -> Option<Poly2> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly2::zero());
        }
        let (dt0, _) = d.t_range().unwrap();
        let (dq0, _) = d.q_range().unwrap();
        let dd = d.shift(-dt0, -dq0);
        let (nt0, _) = self.t_range().unwrap();
        let (nq0, _) = self.q_range().unwrap();
        let mut r = self.shift(-nt0, -nq0);
        let (&(lt, lq), lc) = dd.terms.iter().next_back().unwrap();
        let lc = lc.clone();
        let mut quot = Poly2::zero();
        while let Some((&(rt, rq), rc)) = r.terms.iter().next_back() {
            if rt < lt || rq < lq {
                return None;
            }
            let c = rc / &lc;
            let (st, sq) = (rt - lt, rq - lq);
            quot.add_term(st, sq, c.clone());
            for (&(a, b), x) in &dd.terms {
                r.add_term(a + st, b + sq, -(x * &c));
            }
        }
        Some(quot.shift(nt0 - dt0, nq0 - dq0))
    }

    /// Coefficients as a univariate `t`-polynomial, requiring `q`-degree zero.
    pub fn is_univariate_t(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    /// Substitute `q = 1`, giving a polynomial in `t` (stored with `q`-degree zero).
    pub fn at_q_one(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (&(t, _), c) in &self.terms {
            p.add_term(t, 0, c.clone());
        }
        p
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Leading term under graded-lex with `t > q`.
    pub fn leading_grlex(&self) -> Option<((i64, i64), &BigRational)> {
        self.terms.iter().max_by_key(|(k, _)| (k.0 + k.1, k.0)).map(|(k, v)| (*k, v))
    }

    fn fmt_var(f: &mut fmt::Formatter<'_>, name: &str, e: i64, first: &mut bool) -> fmt::Result {
        if e == 0 {
            return Ok(());
        }
        if !*first {
            write!(f, "*")?;
        }
        *first = false;
        if e == 1 {
            write!(f, "{name}")
        } else {
            write!(f, "{name}^{e}")
        }
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut start = true;
        for (&(t, q), c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if start {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            start = false;
            let unit = a.is_one();
            let mut first = true;
            if !unit || (t == 0 && q == 0) {
                write!(f, "{a}")?;
                first = false;
            }
            Poly2::fmt_var(f, "t", t, &mut first)?;
            Poly2::fmt_var(f, "q", q, &mut first)?;
        }
        Ok(())
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(t, q), c) in &o.terms {
            p.add_term(t, q, c.clone());
        }
        p
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(t, q), c) in &o.terms {
            p.add_term(t, q, -c.clone());
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect() }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, o: &Poly2) -> Poly2 {
        let mut out: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                *out.entry((a + c, b + d)).or_insert_with(BigRational::zero) += x * y;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Poly2 { terms: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $m(self, o: Poly2) -> Poly2 {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Cyclotomic polynomial `Φ_d` as integer coefficients from degree zero.
pub fn cyclotomic(d: u32) -> Vec<i64> {
    assert!(d >= 1);
    // x^d - 1 divided by Φ_e for every proper divisor e.
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            num = divide_univariate(&num, &cyclotomic(e));
        }
    }
    num
}

fn divide_univariate(n: &[i64], d: &[i64]) -> Vec<i64> {
    let mut r = n.to_vec();
    let dl = d.len() - 1;
    let lead = d[dl];
    assert!(lead == 1 || lead == -1);
    let mut q = vec![0i64; r.len() - dl];
    for k in (0..q.len()).rev() {
        let c = r[k + dl] * lead;
        q[k] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[k + j] -= c * dj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Euler's totient.
pub fn totient(d: u32) -> u32 {
    (1..=d).filter(|&k| num_integer::gcd(k, d) == 1).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn exact_division() {
        let one_minus_t = Poly2::from_int_terms(&[(0, 0, 1), (1, 0, -1)]);
        let n = one_minus_t.pow(3);
        assert_eq!(n.divide_exact(&one_minus_t).unwrap(), one_minus_t.pow(2));
        let one_minus_qt = Poly2::from_int_terms(&[(0, 0, 1), (1, 1, -1)]);
        assert!(n.divide_exact(&one_minus_qt).is_none());
        let prod = &one_minus_qt * &Poly2::from_int_terms(&[(3, -2, 2), (0, 1, 5)]);
        assert_eq!(
            prod.divide_exact(&one_minus_qt).unwrap(),
            Poly2::from_int_terms(&[(3, -2, 2), (0, 1, 5)])
        );
    }

    #[test]
    fn substitution() {
        let p = Poly2::from_int_terms(&[(1, 0, 1), (2, 1, 3)]);
        let s = p.substitute(&MonomialMap::t_to_q_over_t());
        assert_eq!(s, Poly2::from_int_terms(&[(-1, 1, 1), (-2, 3, 3)]));
        assert_eq!(s.substitute(&MonomialMap::t_to_q_over_t()), p);
    }
}
