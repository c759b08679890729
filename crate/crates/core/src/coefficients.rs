//! Coefficient fields and the Case I / Case II split.
//!
//! All computations are generic over [`Field`]. Characteristic zero uses exact
//! rationals; characteristic `p` uses [`Fp`] with the prime fixed at compile
//! time. [`with_field!`](crate::with_field) maps a runtime characteristic onto
//! one of these types.

use std::fmt::{self, Debug, Display};
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::SemigroupPair;

/// Exact scalar arithmetic in a prime field or in `Q`.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const CHARACTERISTIC: u64;

    /// Canonical image of an integer.
    fn from_i64(z: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Field for BigRational {
    const CHARACTERISTIC: u64 = 0;

    fn from_i64(z: i64) -> Self {
        BigRational::from_integer(BigInt::from(z))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// The prime field `GF(P)`. Values are kept in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(value: i64) -> Self {
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn from_i64(z: i64) -> Self {
        Fp::new(z)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

/// Nonzero characteristics accepted by [`with_field!`](crate::with_field).
pub const SUPPORTED_PRIMES: [u64; 18] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
];

#[cfg(test)]
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The characteristic of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || SUPPORTED_PRIMES.contains(&characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// The characteristic divides neither generator.
    CaseI,
    /// The characteristic divides `a`.
    CaseIIDividesA,
    /// The characteristic divides `b`; handled by swapping the generators.
    CaseIIDividesB,
}

impl CaseTag {
    pub fn is_case_one(self) -> bool {
        self == CaseTag::CaseI
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::CaseI => "CaseI",
            CaseTag::CaseIIDividesA => "CaseII_dividesA",
            CaseTag::CaseIIDividesB => "CaseII_dividesB",
        }
    }
}

pub fn classify_case(pair: &SemigroupPair, field: FieldSpec) -> CaseTag {
    let p = field.characteristic as i64;
    if p == 0 {
        CaseTag::CaseI
    } else if pair.a() % p == 0 {
        CaseTag::CaseIIDividesA
    } else if pair.b() % p == 0 {
        CaseTag::CaseIIDividesB
    } else {
        CaseTag::CaseI
    }
}

pub fn scalar_of_integer<F: Field>(z: i64) -> F {
    F::from_i64(z)
}

/// A semigroup pair together with its coefficient field.
///
/// When the characteristic divides `b` the generators are swapped once, here,
/// so that every downstream computation only ever sees "the characteristic
/// divides `a`". All labels, weights and generator names produced downstream
/// refer to [`Setting::pair`], the working pair.
#[derive(Clone, Debug)]
pub struct Setting<F> {
    original: SemigroupPair,
    pair: SemigroupPair,
    case: CaseTag,
    _field: PhantomData<F>,
}

impl<F: Field> Setting<F> {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let original = SemigroupPair::new(a, b)?;
        Self::from_pair(original)
    }

    pub fn from_pair(original: SemigroupPair) -> Result<Self> {
        let field = FieldSpec::new(F::CHARACTERISTIC)?;
        let case = classify_case(&original, field);
        let pair = match case {
            CaseTag::CaseIIDividesB => original.swapped(),
            _ => original,
        };
        Ok(Setting {
            original,
            pair,
            case,
            _field: PhantomData,
        })
    }

    /// The pair all computations run on.
    pub fn pair(&self) -> &SemigroupPair {
        &self.pair
    }

    /// The pair as given by the caller.
    pub fn original(&self) -> &SemigroupPair {
        &self.original
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn is_case_one(&self) -> bool {
        self.case.is_case_one()
    }

    pub fn is_swapped(&self) -> bool {
        self.case == CaseTag::CaseIIDividesB
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec {
            characteristic: F::CHARACTERISTIC,
        }
    }

    pub fn scalar(&self, z: i64) -> F {
        F::from_i64(z)
    }
}
