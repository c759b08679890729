//! Standard cocycles and the standard basis of `HH^m` in each weight.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cochain::{coboundary_matrix, graded_basis, hh_dimension, is_coboundary, is_cocycle, Cochain, CochainKey};
use crate::coefficients::{Field, Setting};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::CheckReport;
use crate::resolution::Wedge;
use crate::semigroup::SemigroupPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    /// `(1, s^α)`
    Unit,
    /// `(t^(q), s^α)`
    T,
    /// `b(e1 t^(q), s^{α-m1}) + a(e2 t^(q), s^{α-m2})`
    OddPair,
    /// `(e1 t^(q), s^α)`
    E1,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Unit => "unit",
            ClassKind::T => "t",
            ClassKind::OddPair => "oddpair",
            ClassKind::E1 => "e1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StandardClassLabel {
    pub kind: ClassKind,
    pub q: u32,
    pub alpha: i64,
}

impl StandardClassLabel {
    pub const fn unit(alpha: i64) -> Self {
        StandardClassLabel {
            kind: ClassKind::Unit,
            q: 0,
            alpha,
        }
    }

    /// `(t^(q), s^α)`; `q = 0` gives the unit label.
    pub const fn t(q: u32, alpha: i64) -> Self {
        if q == 0 {
            Self::unit(alpha)
        } else {
            StandardClassLabel {
                kind: ClassKind::T,
                q,
                alpha,
            }
        }
    }

    pub const fn odd_pair(q: u32, alpha: i64) -> Self {
        StandardClassLabel {
            kind: ClassKind::OddPair,
            q,
            alpha,
        }
    }

    pub const fn e1(q: u32, alpha: i64) -> Self {
        StandardClassLabel {
            kind: ClassKind::E1,
            q,
            alpha,
        }
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            ClassKind::Unit => 0,
            ClassKind::T => 2 * self.q,
            ClassKind::OddPair | ClassKind::E1 => 2 * self.q + 1,
        }
    }

    pub fn weight(&self, pair: &SemigroupPair) -> i64 {
        let tq = self.q as i64 * pair.ab();
        match self.kind {
            ClassKind::Unit => self.alpha,
            ClassKind::T => self.alpha - tq,
            ClassKind::OddPair => self.alpha - pair.ab() - tq,
            ClassKind::E1 => self.alpha - pair.b() - tq,
        }
    }

    /// Whether this is one of the standard basis classes for the case of `setting`.
    pub fn is_standard<F: Field>(&self, setting: &Setting<F>) -> bool {
        let p = setting.pair();
        let (m1, m2) = (p.m1(), p.m2());
        let a = self.alpha;
        match (self.kind, setting.is_case_one()) {
            (ClassKind::Unit, _) => self.q == 0 && p.contains(a),
            (ClassKind::T, true) => {
                self.q > 0 && p.contains(a) && !p.contains(a - m1) && !p.contains(a - m2)
            }
            (ClassKind::T, false) => self.q > 0 && p.contains(a) && !p.contains(a - m2),
            (ClassKind::OddPair, true) => {
                p.contains(a - m1)
                    && p.contains(a - m2)
                    && (self.q == 0 || !p.contains(a - m1 - m2))
            }
            (ClassKind::E1, false) => p.contains(a) && (self.q == 0 || !p.contains(a - m2)),
            (ClassKind::OddPair, false) | (ClassKind::E1, true) => false,
        }
    }

    pub fn check_standard<F: Field>(&self, setting: &Setting<F>) -> Result<()> {
        if self.is_standard(setting) {
            Ok(())
        } else {
            Err(Error::UnsupportedLabel(self.to_string()))
        }
    }

    /// The cocycle the label denotes. Defined for any label whose exponents
    /// lie in `S`, standard or not.
    pub fn representative<F: Field>(&self, setting: &Setting<F>) -> Result<Cochain<F>> {
        let p = setting.pair();
        let q = self.q;
        let key = |wedge, alpha: i64| -> Result<CochainKey> {
            if p.contains(alpha) {
                Ok(CochainKey::new(wedge, q, alpha))
            } else {
                Err(Error::UnsupportedLabel(self.to_string()))
            }
        };
        Ok(match self.kind {
            ClassKind::Unit | ClassKind::T => Cochain::basis(key(Wedge::Empty, self.alpha)?),
            ClassKind::E1 => Cochain::basis(key(Wedge::E1, self.alpha)?),
            ClassKind::OddPair => {
                let mut c = Cochain::monomial(key(Wedge::E1, self.alpha - p.m1())?, F::from_i64(p.b()));
                c.add_term(key(Wedge::E2, self.alpha - p.m2())?, F::from_i64(p.a()));
                c
            }
        })
    }
}

impl fmt::Display for StandardClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:q={}:alpha={}", self.kind.name(), self.q, self.alpha)
    }
}

impl FromStr for StandardClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLabel(s.to_string());
        let mut parts = s.trim().split(':');
        let kind = match parts.next().ok_or_else(bad)? {
            "unit" => ClassKind::Unit,
            "t" => ClassKind::T,
            "oddpair" => ClassKind::OddPair,
            "e1" => ClassKind::E1,
            _ => return Err(bad()),
        };
        let q: u32 = parts
            .next()
            .and_then(|x| x.strip_prefix("q="))
            .and_then(|x| x.parse().ok())
            .ok_or_else(bad)?;
        let alpha: i64 = parts
            .next()
            .and_then(|x| x.strip_prefix("alpha="))
            .and_then(|x| x.parse().ok())
            .ok_or_else(bad)?;
        if parts.next().is_some() || (kind == ClassKind::Unit && q != 0) {
            return Err(bad());
        }
        Ok(match kind {
            ClassKind::T => StandardClassLabel::t(q, alpha),
            _ => StandardClassLabel { kind, q, alpha },
        })
    }
}

/// The standard basis of the `(m, n)` component (at most one class).
pub fn standard_basis<F: Field>(setting: &Setting<F>, m: u32, n: i64) -> Vec<StandardClassLabel> {
    let p = setting.pair();
    let q = m / 2;
    let tq = q as i64 * p.ab();
    let candidate = if m == 0 {
        StandardClassLabel::unit(n)
    } else if m % 2 == 0 {
        StandardClassLabel::t(q, n + tq)
    } else if setting.is_case_one() {
        StandardClassLabel::odd_pair(q, n + p.ab() + tq)
    } else {
        StandardClassLabel::e1(q, n + p.b() + tq)
    };
    if candidate.is_standard(setting) {
        vec![candidate]
    } else {
        vec![]
    }
}

/// A spanning set of `ker ∂` in degree `m` over the weight window.
pub fn standard_cocycles_kernel<F: Field>(
    setting: &Setting<F>,
    m: u32,
    weights: (i64, i64),
) -> Vec<Cochain<F>> {
    let p = setting.pair();
    let q = m / 2;
    let tq = q as i64 * p.ab();
    let mut out = Vec::new();
    for n in weights.0..=weights.1 {
        let label = if m % 2 == 0 {
            StandardClassLabel::t(q, n + tq)
        } else if setting.is_case_one() {
            StandardClassLabel::odd_pair(q, n + p.ab() + tq)
        } else {
            StandardClassLabel::e1(q, n + p.b() + tq)
        };
        if let Ok(c) = label.representative(setting) {
            out.push(c);
        }
    }
    out
}

/// Coordinates of the class of the cocycle `c` in the standard basis.
pub fn reduce_to_standard<F: Field>(
    setting: &Setting<F>,
    c: &Cochain<F>,
) -> Result<Vec<(F, StandardClassLabel)>> {
    if !is_cocycle(setting, c) {
        return Err(Error::NotACocycle);
    }
    let pair = setting.pair();
    let mut out = Vec::new();
    for ((m, n), piece) in c.weight_components(pair) {
        let labels = standard_basis(setting, m, n);
        let keys = graded_basis(pair, m, n);
        let mut columns: Vec<Vec<F>> = Vec::new();
        for l in &labels {
            let r = l.representative(setting)?;
            columns.push(keys.iter().map(|k| r.coefficient(k)).collect());
        }
        if m > 0 {
            let d = coboundary_matrix(setting, m - 1, n);
            for j in 0..d.cols() {
                columns.push((0..d.rows()).map(|i| d.get(i, j).clone()).collect());
            }
        }
        let mat = Matrix::from_columns(keys.len(), &columns);
        let rhs: Vec<F> = keys.iter().map(|k| piece.coefficient(k)).collect();
        let x = mat.solve(&rhs).ok_or(Error::NotACocycle)?;
        for (l, coeff) in labels.into_iter().zip(x) {
            if !coeff.is_zero() {
                out.push((coeff, l));
            }
        }
    }
    out.sort_by(|x, y| x.1.cmp(&y.1));
    Ok(out)
}

/// Number of standard classes per bidegree; zero entries omitted.
pub fn count_by_bidegree<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    weights: (i64, i64),
) -> BTreeMap<(u32, i64), usize> {
    let mut out = BTreeMap::new();
    for m in 0..=max_degree {
        for n in weights.0..=weights.1 {
            let k = standard_basis(setting, m, n).len();
            if k > 0 {
                out.insert((m, n), k);
            }
        }
    }
    out
}

/// Standard basis sizes equal the linear-algebra dimensions; every
/// representative is a cocycle and not a coboundary.
pub fn verify_classification<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    weights: (i64, i64),
) -> CheckReport {
    let mut report = CheckReport::new("standard basis matches hh_dimension");
    for m in 0..=max_degree {
        for n in weights.0..=weights.1 {
            report.tick();
            let labels = standard_basis(setting, m, n);
            let dim = hh_dimension(setting, m, n);
            if labels.len() != dim {
                report.fail(format!("({m}, {n}): {} standard classes, dimension {dim}", labels.len()));
            }
            for l in labels {
                let ok = l
                    .representative(setting)
                    .and_then(|r| is_coboundary(setting, &r))
                    .map(|(b, _)| !b);
                if ok != Ok(true) {
                    report.fail(format!("{l} is not a nonzero class"));
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
    use proptest::prelude::*;

    #[test]
    fn kernel_examples() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let ker = standard_cocycles_kernel(&s, 1, (0, 3));
        let expected: Vec<Cochain<Rational>> = (6..=9)
            .map(|a| StandardClassLabel::odd_pair(0, a).representative(&s).unwrap())
            .collect();
        assert_eq!(ker, expected);
        let s2 = Setting::<Gf2>::new(2, 3).unwrap();
        let ker = standard_cocycles_kernel(&s2, 1, (-3, -3));
        assert_eq!(ker, vec![Cochain::basis(CochainKey::new(Wedge::E1, 0, 0))]);
        assert!(standard_cocycles_kernel(&s, 0, (1, 1)).is_empty());
    }

    #[test]
    fn basis_examples() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        assert_eq!(standard_basis(&s, 3, -6), vec![StandardClassLabel::odd_pair(1, 6)]);
        assert_eq!(standard_basis(&s, 1, 1), vec![StandardClassLabel::odd_pair(0, 7)]);
        let s2 = Setting::<Gf2>::new(2, 3).unwrap();
        assert_eq!(standard_basis(&s2, 2, -4), vec![StandardClassLabel::t(1, 2)]);
    }

    #[test]
    fn even_rows_for_two_three() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let counts = count_by_bidegree(&s, 6, (-40, 20));
        for q in 1..=3i64 {
            let row: Vec<i64> = counts.keys().filter(|k| k.0 == 2 * q as u32).map(|k| k.1).collect();
            assert_eq!(row, vec![-6 * q, -6 * q + 2]);
        }
        let row1: Vec<i64> = counts.keys().filter(|k| k.0 == 1).map(|k| k.1).collect();
        assert_eq!(row1, (0..=20).collect::<Vec<_>>());
    }

    #[test]
    fn degree_zero_row_is_semigroup() {
        for s in [Setting::<Rational>::new(3, 5).unwrap()] {
            let counts = count_by_bidegree(&s, 0, (-5, 30));
            for n in -5..=30 {
                assert_eq!(counts.contains_key(&(0, n)), s.pair().contains(n));
            }
        }
    }

    #[test]
    fn classification_matches_linear_algebra() {
        for (a, b) in [(2, 3), (3, 4), (3, 5), (2, 5), (4, 3)] {
            let w = (-5 * a * b, 3 * a * b);
            let rep = verify_classification(&Setting::<Rational>::new(a, b).unwrap(), 6, w);
            assert!(rep.passed, "{rep:?}");
            let rep = verify_classification(&Setting::<Gf2>::new(a, b).unwrap(), 6, w);
            assert!(rep.passed, "{rep:?}");
            let rep = verify_classification(&Setting::<Gf3>::new(a, b).unwrap(), 6, w);
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn reduction_examples() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let l = StandardClassLabel::t(2, 2);
        let r = l.representative(&s).unwrap();
        assert_eq!(reduce_to_standard(&s, &r).unwrap(), vec![(Rational::from_i64(1), l)]);
        // add ∂(e1 t^(1), s^0) = a (t^(2), s^{m1})
        let mut c = r.clone();
        c.add_term(CochainKey::new(Wedge::Empty, 2, s.pair().m1()), Rational::from_i64(2));
        assert_eq!(reduce_to_standard(&s, &c).unwrap(), vec![(Rational::from_i64(1), l)]);
        let bad = Cochain::<Rational>::basis(CochainKey::new(Wedge::E1, 0, 0));
        assert_eq!(reduce_to_standard(&s, &bad), Err(Error::NotACocycle));
    }

    #[test]
    fn labels_round_trip() {
        for l in [
            StandardClassLabel::unit(4),
            StandardClassLabel::t(2, -1),
            StandardClassLabel::odd_pair(0, 7),
            StandardClassLabel::e1(3, 0),
        ] {
            assert_eq!(l.to_string().parse::<StandardClassLabel>(), Ok(l));
        }
        assert_eq!("t:q=0:alpha=3".parse(), Ok(StandardClassLabel::unit(3)));
        for bad in ["x:q=0:alpha=0", "t:q=1", "unit:q=1:alpha=0", "e1:q=-1:alpha=0", "t:q=1:alpha=2:z"] {
            assert!(bad.parse::<StandardClassLabel>().is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn odd_pair_condition_as_shifted_semigroup(a in 2i64..9, b in 2i64..9, alpha in -20i64..120) {
            prop_assume!(SemigroupPair::new(a, b).is_ok());
            let p = SemigroupPair::new(a, b).unwrap();
            let both = p.contains(alpha - p.m1()) && p.contains(alpha - p.m2());
            let alt = alpha == p.m1() + p.m2() || p.contains(alpha - p.ab());
            prop_assert_eq!(both, alt);
            if both && alpha != p.m1() + p.m2() {
                let gamma = alpha - p.ab();
                prop_assert_eq!(p.contains(alpha - p.m1() - p.m2()), p.contains(gamma - p.frobenius()));
            }
        }
    }
}
