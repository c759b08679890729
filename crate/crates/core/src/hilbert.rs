//! Truncated bigraded Hilbert series and their comparison with dimension counts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::count_by_bidegree;
use crate::cochain::hh_dimension;
use crate::coefficients::{Field, Setting};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::semigroup::SemigroupPair;

/// A bivariate series `Σ c_{m,n} x^m y^n`, `m >= 0`, kept for `m <= max_degree`.
///
/// For every degree `m` the series records a lower bound `low[m]` on the
/// `y`-exponents that occur and a bound `valid[m]` such that every coefficient
/// `(m, n)` with `n <= valid[m]` is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    max_degree: u32,
    coeffs: BTreeMap<(u32, i64), i64>,
    low: Vec<i64>,
    valid: Vec<i64>,
}

const NONE: i64 = i64::MAX;

impl BiSeries {
    pub fn zero(max_degree: u32) -> Self {
        let k = max_degree as usize + 1;
        BiSeries {
            max_degree,
            coeffs: BTreeMap::new(),
            low: vec![NONE; k],
            valid: vec![NONE; k],
        }
    }

    /// An exact polynomial.
    pub fn polynomial(max_degree: u32, terms: &[(u32, i64, i64)]) -> Self {
        let mut s = Self::zero(max_degree);
        for &(m, n, c) in terms {
            s.add_term(m, n, c);
        }
        s
    }

    pub fn monomial(max_degree: u32, m: u32, n: i64) -> Self {
        Self::polynomial(max_degree, &[(m, n, 1)])
    }

    fn add_term(&mut self, m: u32, n: i64, c: i64) {
        if m > self.max_degree || c == 0 {
            return;
        }
        let slot = self.coeffs.entry((m, n)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&(m, n));
        }
        let l = &mut self.low[m as usize];
        *l = (*l).min(n);
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// The exact coefficient, or an error if the truncation cannot certify it.
    pub fn coefficient(&self, m: u32, n: i64) -> Result<i64> {
        if m > self.max_degree || n > self.valid[m as usize] {
            return Err(Error::TruncationTooSmall { m, n });
        }
        Ok(self.coeffs.get(&(m, n)).copied().unwrap_or(0))
    }

    pub fn valid_to(&self, m: u32) -> i64 {
        self.valid[m as usize]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let max_degree = self.max_degree.min(other.max_degree);
        let mut out = Self::zero(max_degree);
        for (&(m, n), &c) in self.coeffs.iter() {
            out.add_term(m, n, c);
        }
        for (&(m, n), &c) in other.coeffs.iter() {
            out.add_term(m, n, sign * c);
        }
        for m in 0..=max_degree as usize {
            out.valid[m] = self.valid[m].min(other.valid[m]);
            out.low[m] = out.low[m].min(self.low[m]).min(other.low[m]);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let max_degree = self.max_degree.min(other.max_degree);
        let mut out = Self::zero(max_degree);
        for (&(m1, n1), &c1) in self.coeffs.iter() {
            for (&(m2, n2), &c2) in other.coeffs.iter() {
                if m1 + m2 <= max_degree {
                    out.add_term(m1 + m2, n1 + n2, c1 * c2);
                }
            }
        }
        for m in 0..=max_degree as usize {
            let mut valid = NONE;
            let mut low = NONE;
            for m1 in 0..=m {
                let m2 = m - m1;
                let (l1, l2) = (self.low[m1], other.low[m2]);
                if l1 != NONE && l2 != NONE {
                    low = low.min(l1 + l2);
                }
                // terms of one factor at m1 that may be missing combine with
                // terms of the other factor at m2
                if l2 != NONE && self.valid[m1] != NONE {
                    valid = valid.min(self.valid[m1].saturating_add(l2));
                }
                if l1 != NONE && other.valid[m2] != NONE {
                    valid = valid.min(other.valid[m2].saturating_add(l1));
                }
            }
            out.valid[m] = valid;
            out.low[m] = out.low[m].min(low);
        }
        out
    }

    /// Multiply by `x^m y^n`.
    pub fn shift(&self, m: u32, n: i64) -> Self {
        self.mul(&Self::monomial(self.max_degree, m, n))
    }

    /// Nonzero coefficients with `m <= max_degree`, `n` in the window, as
    /// sorted `(m, n, c)` triples.
    pub fn triples(&self, max_degree: u32, weights: (i64, i64)) -> Result<Vec<(u32, i64, i64)>> {
        let mut out = Vec::new();
        for m in 0..=max_degree {
            for n in weights.0..=weights.1 {
                let c = self.coefficient(m, n)?;
                if c != 0 {
                    out.push((m, n, c));
                }
            }
        }
        Ok(out)
    }
}

/// Truncation parameters: degrees `<= max_degree`, exponents of `H1` up to `n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub max_degree: u32,
    pub n_max: i64,
}

impl Truncation {
    /// Large enough to certify every coefficient with `n <= weight_max`.
    pub fn for_window(pair: &SemigroupPair, max_degree: u32, weight_max: i64) -> Self {
        let reach = (max_degree as i64 / 2 + 2) * pair.ab() + pair.a() + pair.b();
        Truncation {
            max_degree,
            n_max: weight_max.max(0) + reach,
        }
    }
}

/// `Σ_{n ∈ S} y^n`.
pub fn series_h1(pair: &SemigroupPair, trunc: Truncation) -> BiSeries {
    let mut s = BiSeries::zero(trunc.max_degree);
    for n in pair.elements_in(0, trunc.n_max) {
        s.add_term(0, n, 1);
    }
    s.valid[0] = trunc.n_max;
    s
}

/// `x^2 y^{-ab} / (1 - x^2 y^{-ab})`, exact up to the degree bound.
pub fn series_geometric(pair: &SemigroupPair, trunc: Truncation) -> BiSeries {
    let terms: Vec<(u32, i64, i64)> = (1..=trunc.max_degree.div_ceil(2))
        .map(|q| (2 * q, -(q as i64) * pair.ab(), 1))
        .collect();
    BiSeries::polynomial(trunc.max_degree, &terms)
}

/// The named pieces of the Case I series.
#[derive(Clone, Debug)]
pub struct CaseOneParts {
    pub h1: BiSeries,
    pub h21: BiSeries,
    pub h22: BiSeries,
    pub h23: BiSeries,
    pub h24: BiSeries,
    pub h2: BiSeries,
    pub h31: BiSeries,
    pub h32: BiSeries,
    pub h33: BiSeries,
    pub h3: BiSeries,
    pub total: BiSeries,
}

pub fn case_one_parts(pair: &SemigroupPair, trunc: Truncation) -> CaseOneParts {
    let md = trunc.max_degree;
    let (m1, m2, ab, fr) = (pair.m1(), pair.m2(), pair.ab(), pair.frobenius());
    let h1 = series_h1(pair, trunc);
    let g = series_geometric(pair, trunc);
    let gh1 = g.mul(&h1);
    let h21 = gh1.clone();
    let h22 = gh1.shift(0, m1);
    let h23 = gh1.shift(0, m2);
    let h24 = g.mul(&BiSeries::monomial(md, 0, m1 + m2).add(&h1.shift(0, ab)));
    let h2 = h21.sub(&h22.add(&h23)).add(&h24);
    let h31 = BiSeries::monomial(md, 1, fr).add(&h1.shift(1, 0));
    let h32 = gh1.shift(1, 0);
    let h33 = g.mul(&h1.sub(&BiSeries::monomial(md, 0, 0))).shift(1, fr);
    let h3 = h31.add(&h32).sub(&h33);
    let total = h1.add(&h2).add(&h3);
    CaseOneParts { h1, h21, h22, h23, h24, h2, h31, h32, h33, h3, total }
}

pub fn series_case_one(pair: &SemigroupPair, trunc: Truncation) -> BiSeries {
    case_one_parts(pair, trunc).total
}

/// Which exponent the odd factor `(1 + x y^{-?})` of the Case II series uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    MinusA,
    MinusB,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::MinusA => "minus-a",
            Variant::MinusB => "minus-b",
        }
    }
}

/// `(1 + G (1 - y^{m2})) (1 + x y^{-a or -b}) H1`.
pub fn series_case_two(pair: &SemigroupPair, trunc: Truncation, variant: Variant) -> BiSeries {
    let md = trunc.max_degree;
    let h1 = series_h1(pair, trunc);
    let g = series_geometric(pair, trunc);
    let one = BiSeries::monomial(md, 0, 0);
    let even = one.add(&g.mul(&one.sub(&BiSeries::monomial(md, 0, pair.m2()))));
    let exponent = match variant {
        Variant::MinusA => -pair.a(),
        Variant::MinusB => -pair.b(),
    };
    even.mul(&one.add(&BiSeries::monomial(md, 1, exponent))).mul(&h1)
}

/// The series for the case of `setting`; in Case II the variant picks the odd factor.
pub fn series_for<F: Field>(setting: &Setting<F>, trunc: Truncation, variant: Variant) -> BiSeries {
    if setting.is_case_one() {
        series_case_one(setting.pair(), trunc)
    } else {
        series_case_two(setting.pair(), trunc, variant)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub m: u32,
    pub n: i64,
    pub series: i64,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantComparison {
    /// `"case-one"`, `"minus-a"` or `"minus-b"`.
    pub variant: String,
    pub matches: bool,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertComparison {
    pub comparisons: Vec<VariantComparison>,
    /// Variants whose series matches the counts everywhere in the window.
    pub matching: Vec<String>,
    /// The counts agree with the linear-algebra dimensions.
    pub counts_consistent: bool,
}

/// Compares series coefficients with the standard-basis counts and with
/// `hh_dimension` over the window; in Case II both variants are compared.
pub fn compare_with_counts<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    weights: (i64, i64),
) -> Result<HilbertComparison> {
    let pair = setting.pair();
    let trunc = Truncation::for_window(pair, max_degree, weights.1);
    let counts = count_by_bidegree(setting, max_degree, weights);
    let mut counts_consistent = true;
    for m in 0..=max_degree {
        for n in weights.0..=weights.1 {
            if counts.get(&(m, n)).copied().unwrap_or(0) != hh_dimension(setting, m, n) {
                counts_consistent = false;
            }
        }
    }
    let variants: Vec<(String, BiSeries)> = if setting.is_case_one() {
        vec![("case-one".to_string(), series_case_one(pair, trunc))]
    } else {
        [Variant::MinusA, Variant::MinusB]
            .into_iter()
            .map(|v| (v.name().to_string(), series_case_two(pair, trunc, v)))
            .collect()
    };
    let mut comparisons = Vec::new();
    for (name, series) in variants {
        let mut mismatches = Vec::new();
        for m in 0..=max_degree {
            for n in weights.0..=weights.1 {
                let s = series.coefficient(m, n)?;
                let c = counts.get(&(m, n)).copied().unwrap_or(0) as i64;
                if s != c {
                    mismatches.push(Mismatch { m, n, series: s, count: c });
                }
            }
        }
        comparisons.push(VariantComparison {
            variant: name,
            matches: mismatches.is_empty(),
            mismatches,
        });
    }
    let matching = comparisons.iter().filter(|c| c.matches).map(|c| c.variant.clone()).collect();
    Ok(HilbertComparison {
        comparisons,
        matching,
        counts_consistent,
    })
}

/// Passes when the counts agree with `hh_dimension` and exactly one series
/// variant matches them.
pub fn verify_hilbert<F: Field>(setting: &Setting<F>, max_degree: u32, weights: (i64, i64)) -> CheckReport {
    let mut report = CheckReport::new("Hilbert series matches dimension counts");
    report.tick();
    match compare_with_counts(setting, max_degree, weights) {
        Err(e) => report.fail(e.to_string()),
        Ok(cmp) => {
            report.checked = (max_degree as u64 + 1) * (weights.1 - weights.0 + 1) as u64 * cmp.comparisons.len() as u64;
            if !cmp.counts_consistent {
                report.fail("standard-basis counts differ from hh_dimension");
            }
            if cmp.matching.len() != 1 {
                let first = cmp
                    .comparisons
                    .iter()
                    .find_map(|c| c.mismatches.first().map(|x| format!("{}: {x:?}", c.variant)));
                report.fail(format!("matching variants {:?}; first mismatch {}", cmp.matching, first.unwrap_or_default()));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, Rational};

    fn pair(a: i64, b: i64) -> SemigroupPair {
        SemigroupPair::new(a, b).unwrap()
    }

    /// `(1 - y^{ab}) / ((1 - y^a)(1 - y^b))` by long division of power series.
    fn rational_h1(p: &SemigroupPair, n_max: i64) -> Vec<i64> {
        let len = n_max as usize + 1;
        let mut num = vec![0i64; len];
        num[0] = 1;
        if (p.ab() as usize) < len {
            num[p.ab() as usize] = -1;
        }
        for g in [p.a() as usize, p.b() as usize] {
            // divide by (1 - y^g)
            for i in g..len {
                num[i] += num[i - g];
            }
        }
        num
    }

    #[test]
    fn h1_is_the_semigroup() {
        for (a, b) in [(2, 3), (3, 5), (4, 7)] {
            let p = pair(a, b);
            let t = Truncation { max_degree: 2, n_max: 60 };
            let h = series_h1(&p, t);
            let r = rational_h1(&p, 60);
            for n in 0..=60 {
                assert_eq!(h.coefficient(0, n).unwrap(), r[n as usize]);
            }
            assert_eq!(h.coefficient(0, p.frobenius()).unwrap(), 0);
            assert_eq!(h.coefficient(1, 4).unwrap(), 0);
        }
        let h = series_h1(&pair(2, 3), Truncation { max_degree: 0, n_max: 6 });
        let row: Vec<i64> = (0..=6).map(|n| h.coefficient(0, n).unwrap()).collect();
        assert_eq!(row, vec![1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(series_h1(&pair(3, 5), Truncation { max_degree: 0, n_max: 9 }).coefficient(0, 8), Ok(1));
    }

    #[test]
    fn truncation_is_reported() {
        let h = series_h1(&pair(2, 3), Truncation { max_degree: 4, n_max: 10 });
        assert_eq!(h.coefficient(0, 11), Err(Error::TruncationTooSmall { m: 0, n: 11 }));
        let g = series_geometric(&pair(2, 3), Truncation { max_degree: 4, n_max: 10 });
        let prod = g.mul(&h);
        assert!(prod.coefficient(2, 10 - 6).is_ok());
        assert!(prod.coefficient(2, 10 - 5).is_err());
    }

    #[test]
    fn case_one_examples() {
        let p = pair(2, 3);
        let t = Truncation::for_window(&p, 6, 12);
        let s = series_case_one(&p, t);
        let row2: Vec<i64> = (-20..=12).filter(|&n| s.coefficient(2, n).unwrap() != 0).collect();
        assert_eq!(row2, vec![-6, -4]);
        assert_eq!(s.coefficient(2, -6), Ok(1));
        assert!(s.coefficient(1, p.frobenius()).unwrap() >= 1);
        for n in -5..=12 {
            assert_eq!(s.coefficient(0, n).unwrap(), p.contains(n) as i64);
        }
        for m in 0..=6 {
            for n in -30..=12 {
                assert!(s.coefficient(m, n).unwrap() >= 0);
            }
        }
    }

    #[test]
    fn case_one_pieces_count_their_families() {
        let s = Setting::<Rational>::new(3, 4).unwrap();
        let p = *s.pair();
        let w = (-60, 36);
        let parts = case_one_parts(&p, Truncation::for_window(&p, 6, w.1));
        let counts = count_by_bidegree(&s, 6, w);
        for m in 0..=6u32 {
            for n in w.0..=w.1 {
                let c = counts.get(&(m, n)).copied().unwrap_or(0) as i64;
                let (h1, h2, h3) = (
                    parts.h1.coefficient(m, n).unwrap(),
                    parts.h2.coefficient(m, n).unwrap(),
                    parts.h3.coefficient(m, n).unwrap(),
                );
                match m {
                    0 => assert_eq!((h1, h2, h3), (c, 0, 0)),
                    _ if m % 2 == 0 => assert_eq!((h1, h2, h3), (0, c, 0)),
                    _ => assert_eq!((h1, h2, h3), (0, 0, c)),
                }
                // every (t^(q), s^α) with α ∈ S
                let q = m / 2;
                if m % 2 == 0 && m > 0 {
                    let alpha = n + q as i64 * p.ab();
                    assert_eq!(parts.h21.coefficient(m, n).unwrap(), p.contains(alpha) as i64);
                    assert_eq!(parts.h22.coefficient(m, n).unwrap(), p.contains(alpha - p.m1()) as i64);
                }
            }
        }
    }

    #[test]
    fn case_two_variants() {
        let p = pair(2, 3);
        let t = Truncation::for_window(&p, 6, 12);
        let minus_b = series_case_two(&p, t, Variant::MinusB);
        let minus_a = series_case_two(&p, t, Variant::MinusA);
        assert_eq!(minus_b.coefficient(1, -3), Ok(1));
        assert_eq!(minus_b.coefficient(1, -2), Ok(0));
        assert_eq!(minus_a.coefficient(1, -2), Ok(1));
        for n in -5..=12 {
            assert_eq!(minus_a.coefficient(0, n).unwrap(), p.contains(n) as i64);
            assert_eq!(minus_b.coefficient(0, n).unwrap(), p.contains(n) as i64);
        }
    }

    #[test]
    fn comparisons() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let c = compare_with_counts(&s, 6, (-20, 12)).unwrap();
        assert_eq!(c.matching, vec!["case-one".to_string()]);
        assert!(c.counts_consistent);
        let s = Setting::<Gf2>::new(2, 3).unwrap();
        let c = compare_with_counts(&s, 6, (-20, 12)).unwrap();
        assert_eq!(c.matching, vec!["minus-b".to_string()]);
        let bad = &c.comparisons[0];
        assert_eq!(bad.variant, "minus-a");
        assert!(bad.mismatches.iter().any(|x| (x.m, x.n) == (1, -3)));
        assert!(bad.mismatches.iter().any(|x| (x.m, x.n) == (1, -2)));
        let s = Setting::<Rational>::new(3, 4).unwrap();
        assert!(verify_hilbert(&s, 4, (-60, 36)).passed);
    }
}
