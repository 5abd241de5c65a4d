//! Bivariate rational functions with factored cyclotomic-binomial denominators.
//!
//! Every denominator met in the character computations is a product of
//! factors `Φ_d(m)` with `m = t^j q^i` a primitive monomial. Keeping the
//! denominator factored makes cancellation, common denominators and
//! `t`- or `q`-adic expansion exact and cheap, and the representation
//! is canonical once every factor dividing the numerator is cancelled.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{cyclotomic, rat, totient, MonomialMap, Poly2};

/// `Φ̃_d(t^j q^i)` where `Φ̃_1(x) = 1 − x` and `Φ̃_d = Φ_d` for `d ≥ 2`.
///
/// The monomial is primitive and oriented: `j > 0`, or `j = 0` and `i > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub d: u32,
    pub m: (i64, i64),
}

impl Factor {
    /// Coefficients of `Φ̃_d` from degree zero.
    fn coeffs(d: u32) -> Vec<i64> {
        if d == 1 {
            vec![1, -1]
        } else {
            cyclotomic(d)
        }
    }

    pub fn poly(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (k, c) in Factor::coeffs(self.d).into_iter().enumerate() {
            let k = k as i64;
            p.add_term(k * self.m.0, k * self.m.1, rat(c));
        }
        p
    }

    /// Image of `Φ̃_d(m)` under a unimodular monomial map, as `unit · factor`
    /// with `unit` a signed monomial `(sign, t, q)`.
    fn substitute(&self, map: &MonomialMap) -> ((i64, i64, i64), Factor) {
        let m = map.apply(self.m);
        orient(self.d, m)
    }
}

/// Orient `Φ̃_d(m)` for a primitive `m`, returning `(unit, factor)` with
/// `Φ̃_d(m) = unit · Φ̃_d(m')`.
fn orient(d: u32, m: (i64, i64)) -> ((i64, i64, i64), Factor) {
    if m.0 > 0 || (m.0 == 0 && m.1 > 0) {
        return ((1, 0, 0), Factor { d, m });
    }
    let inv = (-m.0, -m.1);
    if d == 1 {
        // 1 − m = −m (1 − 1/m)
        ((-1, m.0, m.1), Factor { d, m: inv })
    } else {
        // Φ_d(x) = x^{φ(d)} Φ_d(1/x) for d ≥ 2
        let e = totient(d) as i64;
        ((1, m.0 * e, m.1 * e), Factor { d, m: inv })
    }
}

/// Factor `1 − c^n` for a (possibly non-primitive) monomial `t^j q^i`.
fn binomial_factors(j: i64, i: i64) -> Result<((i64, i64, i64), Vec<Factor>)> {
    if j == 0 && i == 0 {
        return Err(Error::DivisionByZero);
    }
    let g = j.gcd(&i);
    let base = (j / g, i / g);
    let n = g as u32;
    // 1 − x^n = Π_{e | n} Φ̃_e(x)
    let mut unit = (1i64, 0i64, 0i64);
    let mut out = Vec::new();
    for e in 1..=n {
        if n.is_multiple_of(e) {
            let (u, f) = orient(e, base);
            unit = (unit.0 * u.0, unit.1 + u.1, unit.2 + u.2);
            out.push(f);
        }
    }
    Ok((unit, out))
}

/// `num / (t^mt q^mq · Π factor^e)`.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly2,
    mono: (i64, i64),
    den: BTreeMap<Factor, u32>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly2::one())
    }

    pub fn from_poly(p: Poly2) -> Self {
        RationalFunction { num: p, mono: (0, 0), den: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction::from_poly(Poly2::constant(c))
    }

    pub fn mono(t: i64, q: i64) -> Self {
        RationalFunction::from_poly(Poly2::mono(t, q))
    }

    /// `num / Π (1 − t^j q^i)^e` for the given `(j, i, e)` list.
    pub fn over_binomials(num: Poly2, binomials: &[(i64, i64, u32)]) -> Result<Self> {
        let mut r = RationalFunction::from_poly(num);
        for &(j, i, e) in binomials {
            let (unit, fs) = binomial_factors(j, i)?;
            for _ in 0..e {
                r.apply_unit_inverse(unit);
                for f in &fs {
                    *r.den.entry(*f).or_insert(0) += 1;
                }
            }
        }
        r.normalize();
        Ok(r)
    }

    /// `1 / (1 − t^j q^i)^e`.
    pub fn inverse_binomial(j: i64, i: i64, e: u32) -> Result<Self> {
        RationalFunction::over_binomials(Poly2::one(), &[(j, i, e)])
    }

    /// Divide by a signed monomial `s · t^a q^b`.
    fn apply_unit_inverse(&mut self, (s, a, b): (i64, i64, i64)) {
        if s < 0 {
            self.num = -&self.num;
        }
        self.mono = (self.mono.0 + a, self.mono.1 + b);
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator_factors(&self) -> &BTreeMap<Factor, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel every denominator factor dividing the numerator and fold the
    /// monomial part of the denominator into the numerator.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            self.mono = (0, 0);
            return;
        }
        self.num = self.num.shift(-self.mono.0, -self.mono.1);
        self.mono = (0, 0);
        let keys: Vec<Factor> = self.den.keys().copied().collect();
        for f in keys {
            let fp = f.poly();
            let e = self.den.get_mut(&f).unwrap();
            while *e > 0 {
                match self.num.divide_exact(&fp) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    /// Denominator as an expanded Laurent polynomial.
    pub fn denominator_poly(&self) -> Poly2 {
        let mut p = Poly2::mono(self.mono.0, self.mono.1);
        for (f, &e) in &self.den {
            p = &p * &f.poly().pow(e);
        }
        p
    }

    fn lcm_den(a: &BTreeMap<Factor, u32>, b: &BTreeMap<Factor, u32>) -> BTreeMap<Factor, u32> {
        let mut l = a.clone();
        for (f, &e) in b {
            let x = l.entry(*f).or_insert(0);
            *x = (*x).max(e);
        }
        l
    }

    /// Numerator rescaled to the denominator `target ⊇ self.den`.
    fn lift(&self, target: &BTreeMap<Factor, u32>) -> Poly2 {
        let mut n = self.num.shift(-self.mono.0, -self.mono.1);
        for (f, &e) in target {
            let have = self.den.get(f).copied().unwrap_or(0);
            if e > have {
                n = &n * &f.poly().pow(e - have);
            }
        }
        n
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut r = self.clone();
        r.num = r.num.scale(c);
        r.normalize();
        r
    }

    /// Multiply by `t^a q^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        let mut r = self.clone();
        r.num = r.num.shift(a, b);
        r
    }

    pub fn mul_poly(&self, p: &Poly2) -> Self {
        let mut r = self.clone();
        r.num = &r.num * p;
        r.normalize();
        r
    }

    /// Apply a unimodular monomial substitution.
    pub fn substitute(&self, map: &MonomialMap) -> Result<Self> {
        if !map.is_unimodular() {
            return Err(Error::Unsupported("non-unimodular substitution".into()));
        }
        let mut r = RationalFunction {
            num: self.num.substitute(map),
            mono: map.apply(self.mono),
            den: BTreeMap::new(),
        };
        for (f, &e) in &self.den {
            let (unit, g) = f.substitute(map);
            for _ in 0..e {
                r.apply_unit_inverse(unit);
            }
            *r.den.entry(g).or_insert(0) += e;
        }
        r.normalize();
        Ok(r)
    }

    /// `t ↦ t^a q^b` convenience wrapper.
    pub fn subst_t(&self, a: i64, b: i64) -> Result<Self> {
        self.substitute(&MonomialMap::t_to(a, b))
    }

    /// Set `q = 1`; fails when a denominator factor vanishes there.
    pub fn at_q_one(&self) -> Result<Self> {
        let mut r = RationalFunction::from_poly(self.num.at_q_one());
        for (f, &e) in &self.den {
            if f.m.0 == 0 {
                return Err(Error::DivisionByZero);
            }
            // 1/Φ̃_d(x) = [Π_{e|d, e<d} Φ̃_e(x)] / (1 − x^d) with x = t^j
            let mut numer = Poly2::one();
            for k in 1..f.d {
                if f.d % k == 0 {
                    numer = &numer * &Factor { d: k, m: (f.m.0, 0) }.poly();
                }
            }
            let tmp = RationalFunction::over_binomials(numer, &[(f.m.0 * f.d as i64, 0, 1)])?;
            for _ in 0..e {
                r = &r * &tmp;
            }
        }
        r.num = r.num.shift(-self.mono.0, 0);
        r.normalize();
        Ok(r)
    }

    /// Canonical exported pair `(numerator, denominator)` of ordinary
    /// polynomials: common monomial removed, integer coefficients with
    /// joint content one, denominator leading coefficient positive under
    /// graded-lex with `t > q`.
    pub fn to_polys(&self) -> (Poly2, Poly2) {
        if self.num.is_zero() {
            return (Poly2::zero(), Poly2::one());
        }
        let mut n = self.num.clone();
        let mut d = self.denominator_poly();
        let (nt, _) = n.t_range().unwrap();
        let (nq, _) = n.q_range().unwrap();
        let (dt, _) = d.t_range().unwrap();
        let (dq, _) = d.q_range().unwrap();
        let (st, sq) = (nt.min(dt), nq.min(dq));
        n = n.shift(-st, -sq);
        d = d.shift(-st, -sq);
        let mut l = BigInt::one();
        for c in n.terms().values().chain(d.terms().values()) {
            l = l.lcm(c.denom());
        }
        let lr = BigRational::from_integer(l);
        n = n.scale(&lr);
        d = d.scale(&lr);
        let mut g = BigInt::zero();
        for c in n.terms().values().chain(d.terms().values()) {
            g = g.gcd(c.numer());
        }
        let mut s = BigRational::from_integer(g).recip();
        if d.leading_grlex().unwrap().1.is_negative() {
            s = -s;
        }
        (n.scale(&s), d.scale(&s))
    }

    /// Coefficients of the `t`-adic expansion through `t_max`.
    pub fn expand(&self, t_max: i64) -> Result<crate::series::GradedSeries> {
        crate::series::GradedSeries::expand(self, t_max)
    }

    /// True when this function is `R(1/t) = (−1)^d t^p R(t)` for some `p`,
    /// returning that `p`. Only meaningful for functions of `t` alone.
    pub fn palindromy_exponent(&self, d: i64) -> Option<i64> {
        let inv = self.substitute(&MonomialMap::t_inverse()).ok()?;
        if self.is_zero() {
            return None;
        }
        // inv / self must be a signed monomial ±t^p.
        let (n1, d1) = inv.to_polys();
        let (n2, d2) = self.to_polys();
        let lhs = &n1 * &d2;
        let rhs = &n2 * &d1;
        let (lt, _) = lhs.t_range()?;
        let (rt, _) = rhs.t_range()?;
        let p = lt - rt;
        let sign = if d.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        if lhs == rhs.shift(p, 0).scale(&sign) {
            Some(p)
        } else {
            None
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        (self - o).is_zero()
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let den = RationalFunction::lcm_den(&self.den, &o.den);
        let num = &self.lift(&den) + &o.lift(&den);
        let mut r = RationalFunction { num, mono: (0, 0), den };
        r.normalize();
        r
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        let mut r = self.clone();
        r.num = -&r.num;
        r
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        let mut den = self.den.clone();
        for (f, &e) in &o.den {
            *den.entry(*f).or_insert(0) += e;
        }
        let mut r = RationalFunction {
            num: &self.num * &o.num,
            mono: (self.mono.0 + o.mono.0, self.mono.1 + o.mono.1),
            den,
        };
        r.normalize();
        r
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_polys();
        if d == Poly2::one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n}) / ({d})")
        }
    }
}

/// Plain-text and JSON friendly form of a rational function.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RationalExport {
    /// `(t_deg, q_deg, coefficient)` triples of the numerator.
    pub numerator: Vec<(i64, i64, String)>,
    /// `(t_deg, q_deg, coefficient)` triples of the denominator.
    pub denominator: Vec<(i64, i64, String)>,
    pub text: String,
}

impl From<&RationalFunction> for RationalExport {
    fn from(r: &RationalFunction) -> Self {
        let (n, d) = r.to_polys();
        let rows = |p: &Poly2| p.terms().iter().map(|(&(t, q), c)| (t, q, c.to_string())).collect();
        RationalExport { numerator: rows(&n), denominator: rows(&d), text: r.to_string() }
    }
}
