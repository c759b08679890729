//! The numerical semigroup `S = <a, b>` and the shifted sets `S_i = m_i + S`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Upper bound on `a` and `b`; keeps every `a*b*q` weight we form well inside `i64`.
pub const MAX_GENERATOR: i64 = 1 << 20;

/// A coprime pair `(a, b)` with `a, b >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SemigroupPair {
    a: i64,
    b: i64,
    /// `b^{-1} mod a`
    b_inv_mod_a: i64,
    /// `a^{-1} mod b`
    a_inv_mod_b: i64,
}

/// Which shifted set a membership query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    S1,
    S2,
    Both,
}

/// Inverse of `x` modulo `m` for coprime `x, m` (`m >= 2`).
fn inverse_mod(x: i64, m: i64) -> i64 {
    x.rem_euclid(m).extended_gcd(&m).x.rem_euclid(m)
}

impl SemigroupPair {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::InvalidPair {
                a,
                b,
                reason: "both generators must be at least 2",
            });
        }
        if a > MAX_GENERATOR || b > MAX_GENERATOR {
            return Err(Error::InvalidPair {
                a,
                b,
                reason: "generator too large",
            });
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidPair {
                a,
                b,
                reason: "generators must be coprime",
            });
        }
        Ok(SemigroupPair {
            a,
            b,
            b_inv_mod_a: inverse_mod(b, a),
            a_inv_mod_b: inverse_mod(a, b),
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn ab(&self) -> i64 {
        self.a * self.b
    }

    /// `m1 = b(a-1)`
    pub fn m1(&self) -> i64 {
        self.b * (self.a - 1)
    }

    /// `m2 = a(b-1)`
    pub fn m2(&self) -> i64 {
        self.a * (self.b - 1)
    }

    pub fn frobenius(&self) -> i64 {
        self.a * self.b - self.a - self.b
    }

    pub fn conductor(&self) -> i64 {
        self.frobenius() + 1
    }

    /// The same semigroup with the generators listed in the other order.
    pub fn swapped(&self) -> Self {
        SemigroupPair {
            a: self.b,
            b: self.a,
            b_inv_mod_a: self.a_inv_mod_b,
            a_inv_mod_b: self.b_inv_mod_a,
        }
    }

    /// Membership `n ∈ S`.
    ///
    /// In the residue class of `n` mod `a` the smallest element of `S` is `v*b`
    /// with `v ≡ n * b^{-1} (mod a)`, `0 <= v < a`.
    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let v = (n as i128 % self.a as i128) * self.b_inv_mod_a as i128 % self.a as i128;
        n as i128 >= v * self.b as i128
    }

    /// The unique `(u, v)` with `n = u*b + v*a`, `u >= 0`, `0 <= v < b`.
    ///
    /// This is the exponent pair of the monomial `x1^u x2^v` under
    /// `x1 -> s^b`, `x2 -> s^a`.
    pub fn canonical_decomposition(&self, n: i64) -> Result<(i64, i64)> {
        if !self.contains(n) {
            return Err(Error::NotInSemigroup(n));
        }
        let v = ((n as i128 % self.b as i128) * self.a_inv_mod_b as i128 % self.b as i128) as i64;
        let u = (n - v * self.a) / self.b;
        debug_assert!(u >= 0 && u * self.b + v * self.a == n);
        Ok((u, v))
    }

    /// `d*b - a ∈ S`; holds exactly when `d >= a`.
    pub fn lemma1_predicate(&self, d: i64) -> bool {
        match d.checked_mul(self.b).and_then(|x| x.checked_sub(self.a)) {
            Some(x) => self.contains(x),
            None => d > 0,
        }
    }

    pub fn shifted_membership(&self, n: i64, which: Shift) -> bool {
        let in_s1 = || n.checked_sub(self.m1()).is_some_and(|x| self.contains(x));
        let in_s2 = || n.checked_sub(self.m2()).is_some_and(|x| self.contains(x));
        match which {
            Shift::S1 => in_s1(),
            Shift::S2 => in_s2(),
            Shift::Both => in_s1() && in_s2(),
        }
    }

    /// Elements of `S` in the closed interval `[lo, hi]`, ascending.
    pub fn elements_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo.max(0)..=hi).filter(move |&n| self.contains(n))
    }
}
