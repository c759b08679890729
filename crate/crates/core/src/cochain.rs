//! Hochschild cochains `Hom_{A^e}(F_m, A)` and their coboundary.
//!
//! A cochain is determined by its values on the free generators; the key
//! `(e_I t^(q), s^α)` is the map sending `e_I t^(q)` to `s^α` and every other
//! generator to zero. Its bidegree is `(|I| + 2q, α - w(I, q))`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::coefficients::{Field, Setting};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::CheckReport;
use crate::resolution::{differential, Cell, ResolutionElement, Wedge};
use crate::semigroup::SemigroupPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CochainKey {
    pub cell: Cell,
    pub alpha: i64,
}

impl CochainKey {
    pub const fn new(wedge: Wedge, q: u32, alpha: i64) -> Self {
        CochainKey {
            cell: Cell::new(wedge, q),
            alpha,
        }
    }

    pub fn degree(&self) -> u32 {
        self.cell.degree()
    }

    pub fn weight(&self, pair: &SemigroupPair) -> i64 {
        self.alpha - self.cell.weight(pair)
    }
}

impl fmt::Display for CochainKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, s^{})", self.cell, self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<F> {
    terms: BTreeMap<CochainKey, F>,
}

impl<F: Field> Default for Cochain<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Cochain<F> {
    pub fn zero() -> Self {
        Cochain {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(key: CochainKey) -> Self {
        Self::monomial(key, F::one())
    }

    pub fn monomial(key: CochainKey, c: F) -> Self {
        let mut x = Self::zero();
        x.add_term(key, c);
        x
    }

    pub fn add_term(&mut self, key: CochainKey, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(*k, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(*k, -c.clone());
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, x.clone() * c.clone());
        }
        out
    }

    pub fn coefficient(&self, key: &CochainKey) -> F {
        self.terms.get(key).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CochainKey, &F)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CochainKey> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn weight(&self, pair: &SemigroupPair) -> Option<i64> {
        let mut it = self.terms.keys().map(|k| k.weight(pair));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Splits into weight-homogeneous components.
    pub fn weight_components(&self, pair: &SemigroupPair) -> BTreeMap<(u32, i64), Cochain<F>> {
        let mut out: BTreeMap<(u32, i64), Cochain<F>> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry((k.degree(), k.weight(pair)))
                .or_default()
                .add_term(*k, c.clone());
        }
        out
    }

    /// The value on `(s^l ⊗ s^r)·cell`, extended `A^e`-linearly.
    pub fn evaluate(&self, x: &ResolutionElement<F>) -> AlgebraElement<F> {
        let mut out = AlgebraElement::zero();
        for (t, c) in x.iter() {
            for (k, v) in self.terms.range(
                CochainKey {
                    cell: t.cell,
                    alpha: i64::MIN,
                }..=CochainKey {
                    cell: t.cell,
                    alpha: i64::MAX,
                },
            ) {
                out.add_term(t.left + t.right + k.alpha, c.clone() * v.clone());
            }
        }
        out
    }

    /// The cochain `x ↦ g(x)` on the cells of degree `m` given a map on cells.
    pub fn from_cell_values(
        m: u32,
        mut value: impl FnMut(Cell) -> Result<AlgebraElement<F>>,
    ) -> Result<Self> {
        let mut out = Self::zero();
        for cell in Cell::of_degree(m) {
            for (alpha, c) in value(cell)?.iter() {
                out.add_term(CochainKey { cell, alpha }, c.clone());
            }
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Display for Cochain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){k}")?;
        }
        Ok(())
    }
}

/// The coboundary `∂` of one key, as `(integer coefficient, key)` terms.
fn key_coboundary(setting_case_one: bool, pair: &SemigroupPair, k: CochainKey) -> Vec<(i64, CochainKey)> {
    let (a, b) = (pair.a(), pair.b());
    let (m1, m2) = (pair.m1(), pair.m2());
    let q = k.cell.q;
    let alpha = k.alpha;
    match k.cell.wedge {
        Wedge::Empty => vec![],
        Wedge::E1 if setting_case_one => vec![(a, CochainKey::new(Wedge::Empty, q + 1, alpha + m1))],
        Wedge::E1 => vec![],
        Wedge::E2 => vec![(-b, CochainKey::new(Wedge::Empty, q + 1, alpha + m2))],
        Wedge::E12 => {
            let mut v = vec![(b, CochainKey::new(Wedge::E1, q + 1, alpha + m2))];
            if setting_case_one {
                v.push((a, CochainKey::new(Wedge::E2, q + 1, alpha + m1)));
            }
            v
        }
    }
}

/// The closed-form coboundary in the case of `setting`.
pub fn coboundary<F: Field>(setting: &Setting<F>, c: &Cochain<F>) -> Cochain<F> {
    let pair = setting.pair();
    let mut out = Cochain::zero();
    for (k, x) in c.iter() {
        for (z, key) in key_coboundary(setting.is_case_one(), pair, *k) {
            out.add_term(key, x.clone() * F::from_i64(z));
        }
    }
    out
}

/// `∂f = f ∘ d` computed through the resolution differential.
pub fn coboundary_by_composition<F: Field>(
    setting: &Setting<F>,
    c: &Cochain<F>,
    m: u32,
) -> Result<Cochain<F>> {
    let pair = setting.pair();
    Cochain::from_cell_values(m + 1, |cell| {
        let dx = differential(pair, &ResolutionElement::cell(cell))?;
        Ok(c.evaluate(&dx))
    })
}

/// Basis keys of the `(m, n)` graded piece: `|I| + 2q = m`, `α = n + w(I, q) ∈ S`.
pub fn graded_basis(pair: &SemigroupPair, m: u32, n: i64) -> Vec<CochainKey> {
    Cell::of_degree(m)
        .into_iter()
        .map(|cell| CochainKey {
            cell,
            alpha: n + cell.weight(pair),
        })
        .filter(|k| pair.contains(k.alpha))
        .collect()
}

/// Matrix of `∂: C^m_n -> C^{m+1}_n` in the graded bases.
pub fn coboundary_matrix<F: Field>(setting: &Setting<F>, m: u32, n: i64) -> Matrix<F> {
    let pair = setting.pair();
    let src = graded_basis(pair, m, n);
    let dst = graded_basis(pair, m + 1, n);
    let mut mat = Matrix::zeros(dst.len(), src.len());
    for (j, k) in src.iter().enumerate() {
        let img = coboundary(setting, &Cochain::basis(*k));
        for (key, c) in img.iter() {
            let i = dst
                .iter()
                .position(|d| d == key)
                .expect("coboundary stays in S and preserves weight");
            mat.set(i, j, c.clone());
        }
    }
    mat
}

fn coordinates<F: Field>(basis: &[CochainKey], c: &Cochain<F>) -> Vec<F> {
    basis.iter().map(|k| c.coefficient(k)).collect()
}

fn from_coordinates<F: Field>(basis: &[CochainKey], x: &[F]) -> Cochain<F> {
    let mut out = Cochain::zero();
    for (k, c) in basis.iter().zip(x) {
        out.add_term(*k, c.clone());
    }
    out
}

/// `dim ker ∂^{m+1} - rank ∂^m` on the `(m, n)` piece.
pub fn hh_dimension<F: Field>(setting: &Setting<F>, m: u32, n: i64) -> usize {
    let pair = setting.pair();
    let dim = graded_basis(pair, m, n).len();
    let out_rank = coboundary_matrix(setting, m, n).rank();
    let in_rank = if m == 0 {
        0
    } else {
        coboundary_matrix(setting, m - 1, n).rank()
    };
    dim - out_rank - in_rank
}

pub fn is_cocycle<F: Field>(setting: &Setting<F>, c: &Cochain<F>) -> bool {
    coboundary(setting, c).is_zero()
}

/// Whether the cocycle `c` is a coboundary, with a preimage when it is.
pub fn is_coboundary<F: Field>(
    setting: &Setting<F>,
    c: &Cochain<F>,
) -> Result<(bool, Option<Cochain<F>>)> {
    if !is_cocycle(setting, c) {
        return Err(Error::NotACocycle);
    }
    let pair = setting.pair();
    let mut witness = Cochain::zero();
    for ((m, n), piece) in c.weight_components(pair) {
        if m == 0 {
            return Ok((false, None));
        }
        let src = graded_basis(pair, m - 1, n);
        let dst = graded_basis(pair, m, n);
        let mat = coboundary_matrix(setting, m - 1, n);
        match mat.solve(&coordinates(&dst, &piece)) {
            Some(x) => witness.add_assign(&from_coordinates(&src, &x)),
            None => return Ok((false, None)),
        }
    }
    Ok((true, Some(witness)))
}

/// `∂ ∘ ∂ = 0` on every key with `m <= max_degree` and weight in the window.
pub fn verify_coboundary_squared<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    weights: (i64, i64),
) -> CheckReport {
    let pair = setting.pair();
    let mut report = CheckReport::new("∂∘∂ = 0");
    for m in 0..=max_degree {
        for n in weights.0..=weights.1 {
            for k in graded_basis(pair, m, n) {
                report.tick();
                let c = Cochain::<F>::basis(k);
                let dc = coboundary(setting, &c);
                if dc.degree().is_some_and(|d| d != m + 1) || dc.weight(pair).is_some_and(|w| w != n) {
                    report.fail(format!("∂{k} is not homogeneous of bidegree ({}, {n})", m + 1));
                }
                if !coboundary(setting, &dc).is_zero() {
                    report.fail(format!("∂∂{k} ≠ 0"));
                }
            }
        }
    }
    report
}

/// The closed-form coboundary agrees with `f ∘ d` on every windowed key.
pub fn verify_coboundary_formula<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    weights: (i64, i64),
) -> CheckReport {
    let pair = setting.pair();
    let mut report = CheckReport::new("closed-form ∂ equals composition with d");
    for m in 0..=max_degree {
        for n in weights.0..=weights.1 {
            for k in graded_basis(pair, m, n) {
                report.tick();
                let c = Cochain::<F>::basis(k);
                match coboundary_by_composition(setting, &c, m) {
                    Ok(x) if x == coboundary(setting, &c) => {}
                    Ok(x) => report.fail(format!("∂{k}: closed form {} vs composition {x}", coboundary(setting, &c))),
                    Err(e) => report.fail(format!("∂{k}: {e}")),
                }
            }
        }
    }
    report
}

/// The `t`-key `(t^(Q), s^γ)` heading the block that contains `k`.
pub fn block_head(pair: &SemigroupPair, k: CochainKey) -> CochainKey {
    let (m1, m2) = (pair.m1(), pair.m2());
    let q = k.cell.q;
    match k.cell.wedge {
        Wedge::Empty => k,
        Wedge::E1 => CochainKey::new(Wedge::Empty, q + 1, k.alpha + m1),
        Wedge::E2 => CochainKey::new(Wedge::Empty, q + 1, k.alpha + m2),
        Wedge::E12 => CochainKey::new(Wedge::Empty, q + 2, k.alpha + m1 + m2),
    }
}

/// The matrix of `∂` is block diagonal: each block consists of the keys
/// `(t^(Q), s^γ)`, `(e1 t^(Q-1), s^{γ-m1})`, `(e2 t^(Q-1), s^{γ-m2})`,
/// `(e1e2 t^(Q-2), s^{γ-m1-m2})` lying in `S`, and `∂` never leaves a block.
pub fn verify_block_structure<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    weights: (i64, i64),
) -> CheckReport {
    let pair = setting.pair();
    let mut report = CheckReport::new("∂ is block diagonal");
    for m in 0..=max_degree {
        for n in weights.0..=weights.1 {
            for k in graded_basis(pair, m, n) {
                report.tick();
                let head = block_head(pair, k);
                if !pair.contains(head.alpha) {
                    report.fail(format!("block head of {k} is not in S"));
                }
                for target in coboundary(setting, &Cochain::<F>::basis(k)).keys() {
                    if block_head(pair, *target) != head {
                        report.fail(format!("∂{k} reaches {target} outside its block"));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, Gf3, Rational};

    fn q(z: i64) -> Rational {
        Rational::from_i64(z)
    }

    #[test]
    fn case_one_examples() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let p = *s.pair();
        let c = Cochain::basis(CochainKey::new(Wedge::E1, 0, 0));
        assert_eq!(
            coboundary(&s, &c),
            Cochain::monomial(CochainKey::new(Wedge::Empty, 1, p.m1()), q(2))
        );
        let e12 = Cochain::basis(CochainKey::new(Wedge::E12, 0, 0));
        assert!(!coboundary(&s, &e12).is_zero());
        assert!(coboundary(&s, &coboundary(&s, &e12)).is_zero());
    }

    #[test]
    fn case_two_kills_e1() {
        let s = Setting::<Gf2>::new(2, 3).unwrap();
        let c = Cochain::basis(CochainKey::new(Wedge::E1, 3, 5));
        assert!(coboundary(&s, &c).is_zero());
    }

    #[test]
    fn dimension_examples() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        assert_eq!(hh_dimension(&s, 0, 5), 1);
        assert_eq!(hh_dimension(&s, 0, 1), 0);
        assert_eq!(hh_dimension(&s, 2, -6), 1);
        assert_eq!(hh_dimension(&s, 2, -1), 0);
    }

    #[test]
    fn coboundary_membership() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let p = *s.pair();
        let c = Cochain::basis(CochainKey::new(Wedge::Empty, 1, p.m1()));
        let (yes, w) = is_coboundary(&s, &c).unwrap();
        assert!(yes);
        assert_eq!(coboundary(&s, &w.unwrap()), c);
        let (yes, w) = is_coboundary(&s, &Cochain::<Rational>::zero()).unwrap();
        assert!(yes && w.unwrap().is_zero());
        let c = Cochain::basis(CochainKey::new(Wedge::Empty, 1, 0));
        assert!(!is_coboundary(&s, &c).unwrap().0);
        let e1 = Cochain::basis(CochainKey::new(Wedge::E1, 0, 0));
        assert_eq!(is_coboundary(&s, &e1), Err(Error::NotACocycle));
    }

    #[test]
    fn closed_form_matches_composition() {
        for (a, b) in [(2, 3), (3, 4), (4, 3), (2, 5)] {
            let s = Setting::<Rational>::new(a, b).unwrap();
            let w = (-3 * a * b, 2 * a * b);
            assert!(verify_coboundary_formula(&s, 5, w).passed);
            assert!(verify_coboundary_squared(&s, 5, w).passed);
            assert!(verify_block_structure(&s, 5, w).passed);
        }
        let s = Setting::<Gf2>::new(2, 3).unwrap();
        let rep = verify_coboundary_formula(&s, 5, (-18, 12));
        assert!(rep.passed, "{rep:?}");
        let s = Setting::<Gf3>::new(2, 3).unwrap();
        let rep = verify_coboundary_formula(&s, 5, (-18, 12));
        assert!(rep.passed, "{rep:?}");
    }
}
