//! Elements of `A = k[s^a, s^b]` as finitely supported maps `S -> k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coefficients::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<F> {
    terms: BTreeMap<i64, F>,
}

impl<F: Field> Default for AlgebraElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    /// `c * s^exponent`
    pub fn monomial(exponent: i64, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(exponent, c);
        e
    }

    pub fn add_term(&mut self, exponent: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c.clone());
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(*e, x.clone() * c.clone());
        }
        out
    }

    /// Multiply by `s^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn coefficient(&self, exponent: i64) -> F {
        self.terms.get(&exponent).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &F)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})s^{e}")?;
        }
        Ok(())
    }
}
