//! Aut-weights `(a, u, r)`: C×-degree, T-degree and doubled spin-torus weight.

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An Aut-weight, read as the monomial `t^a q^u z^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub a: i64,
    pub u: i64,
    /// Doubled spin-torus exponents; `det^{±1/2}` contributes `±1` to each.
    pub r: [i64; 5],
}

impl Weight {
    pub const ZERO: Weight = Weight { a: 0, u: 0, r: [0; 5] };

    pub const fn new(a: i64, u: i64, r: [i64; 5]) -> Weight {
        Weight { a, u, r }
    }

    /// The `(t, q)` part, forgetting the spin torus.
    pub fn tq(self) -> (i64, i64) {
        (self.a, self.u)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        let mut r = self.r;
        for (x, y) in r.iter_mut().zip(o.r) {
            *x += y;
        }
        Weight::new(self.a + o.a, self.u + o.u, r)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.a, -self.u, self.r.map(|x| -x))
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self + (-o)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |x, y| x + y)
    }
}
