//! Hochschild cohomology dimensions from the normalized bar complex.
//!
//! A normalized `m`-cochain of weight `n` assigns to every tuple
//! `(γ1, …, γm)` of nonzero elements of `S` a multiple of `s^{n + Σγi}`.
//! The level `Σγi` is unbounded, so the cochains are truncated to levels
//! `<= L`. The coboundary only lowers levels through its outer terms, so the
//! truncation is a quotient complex; filtering by level, its first page is
//! `Hom(Tor^A_m(k, k)_Γ, A_{n+Γ})`. Once `L` exceeds every weight of
//! `Tor_{<= m+1}`, truncation does not change `H^m`.

use std::collections::{BTreeMap, HashMap};

use crate::coefficients::{Field, Setting};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::report::CheckReport;
use crate::semigroup::SemigroupPair;

/// Largest bar degree the oracle accepts.
pub const MAX_BAR_DEGREE: usize = 3;

/// An upper bound on the weights occurring in `Tor^A_k(k, k)` for `k <= degree`.
pub fn tor_weight_bound(pair: &SemigroupPair, degree: u32) -> i64 {
    let half = (degree / 2) as i64 * pair.ab();
    if degree % 2 == 0 {
        half
    } else {
        half + pair.a().max(pair.b())
    }
}

/// The truncation level used by [`bar_hh_dimension`] in degree `m`.
pub fn default_level(pair: &SemigroupPair, m: usize) -> i64 {
    tor_weight_bound(pair, m as u32 + 1) + pair.a().max(pair.b())
}

type Tuple = Vec<i64>;

/// The truncated cochain space `C^m_{<=L}` of weight `n`.
struct BarSpace {
    tuples: Vec<Tuple>,
    index: HashMap<Tuple, usize>,
}

fn enumerate(pair: &SemigroupPair, m: usize, n: i64, level: i64) -> BarSpace {
    let parts: Vec<i64> = pair.elements_in(1, level).collect();
    let mut tuples = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(parts: &[i64], m: usize, left: i64, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for &g in parts {
            if g > left {
                break;
            }
            cur.push(g);
            rec(parts, m, left - g, cur, out);
            cur.pop();
        }
    }
    rec(&parts, m, level, &mut cur, &mut tuples);
    tuples.retain(|t| pair.contains(n + t.iter().sum::<i64>()));
    let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    BarSpace { tuples, index }
}

/// `δ` of the basis cochain dual to `tau`, as `(tuple, sign)` terms on
/// `(m+1)`-tuples of level `<= level`.
fn coboundary_of_basis(pair: &SemigroupPair, tau: &[i64], level: i64) -> Vec<(Tuple, i64)> {
    let m = tau.len();
    let total: i64 = tau.iter().sum();
    let room = level - total;
    let mut out = Vec::new();
    for g in pair.elements_in(1, room) {
        // s^{γ0} φ(γ1, …, γm)
        let mut s = Vec::with_capacity(m + 1);
        s.push(g);
        s.extend_from_slice(tau);
        out.push((s, 1));
        // (-1)^{m+1} φ(γ0, …, γ_{m-1}) s^{γm}
        let mut s = tau.to_vec();
        s.push(g);
        out.push((s, if m % 2 == 0 { -1 } else { 1 }));
    }
    // (-1)^i φ(…, γ_{i-1} γ_i, …): split the i-th entry
    for (i, &x) in tau.iter().enumerate() {
        for g in pair.elements_in(1, x - 1) {
            if !pair.contains(x - g) {
                continue;
            }
            let mut s = Vec::with_capacity(m + 1);
            s.extend_from_slice(&tau[..i]);
            s.push(g);
            s.push(x - g);
            s.extend_from_slice(&tau[i + 1..]);
            out.push((s, if (i + 1) % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

fn coboundary_rank<F: Field>(pair: &SemigroupPair, src: &BarSpace, dst: &BarSpace, level: i64) -> usize {
    let mut mat = SparseMatrix::<F>::new(dst.tuples.len());
    for tau in &src.tuples {
        let mut col: BTreeMap<usize, F> = BTreeMap::new();
        for (s, sign) in coboundary_of_basis(pair, tau, level) {
            if let Some(&i) = dst.index.get(&s) {
                let slot = col.entry(i).or_insert_with(F::zero);
                *slot = slot.clone() + F::from_i64(sign);
            }
        }
        mat.push_row(col);
    }
    mat.rank()
}

/// `dim H^m` of the bar complex truncated at `level`.
pub fn bar_hh_dimension_at_level<F: Field>(setting: &Setting<F>, m: usize, n: i64, level: i64) -> Result<usize> {
    if m > MAX_BAR_DEGREE {
        return Err(Error::DegreeTooLarge { got: m, max: MAX_BAR_DEGREE });
    }
    let pair = setting.original();
    let here = enumerate(pair, m, n, level);
    let next = enumerate(pair, m + 1, n, level);
    let out_rank = coboundary_rank::<F>(pair, &here, &next, level);
    let in_rank = if m == 0 {
        0
    } else {
        coboundary_rank::<F>(pair, &enumerate(pair, m - 1, n, level), &here, level)
    };
    Ok(here.tuples.len() - out_rank - in_rank)
}

/// `dim HH^m(A)` in weight `n`, from the normalized bar complex.
pub fn bar_hh_dimension<F: Field>(setting: &Setting<F>, m: usize, n: i64) -> Result<usize> {
    if m > MAX_BAR_DEGREE {
        return Err(Error::DegreeTooLarge { got: m, max: MAX_BAR_DEGREE });
    }
    bar_hh_dimension_at_level(setting, m, n, default_level(setting.original(), m))
}

/// `δ ∘ δ = 0` on every basis cochain of degree `<= max_degree`, weights in
/// the window, at the default truncation level.
pub fn verify_bar_coboundary_squared<F: Field>(
    setting: &Setting<F>,
    max_degree: usize,
    weights: (i64, i64),
) -> CheckReport {
    let pair = setting.original();
    let mut report = CheckReport::new("bar δ∘δ = 0");
    for m in 0..=max_degree.min(MAX_BAR_DEGREE - 1) {
        let level = default_level(pair, m);
        for n in weights.0..=weights.1 {
            for tau in enumerate(pair, m, n, level).tuples {
                report.tick();
                let mut acc: BTreeMap<Tuple, i64> = BTreeMap::new();
                for (s, c1) in coboundary_of_basis(pair, &tau, level) {
                    for (r, c2) in coboundary_of_basis(pair, &s, level) {
                        *acc.entry(r).or_insert(0) += c1 * c2;
                    }
                }
                if acc.values().any(|&c| c != 0) {
                    report.fail(format!("δδ of the dual of {tau:?} in weight {n}"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::hh_dimension;
    use crate::{Gf2, Gf3, Rational};

    #[test]
    fn oracle_examples() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        assert_eq!(bar_hh_dimension(&s, 0, 4), Ok(1));
        assert_eq!(bar_hh_dimension(&s, 0, 1), Ok(0));
        assert_eq!(bar_hh_dimension(&s, 1, 1), Ok(1));
        let s2 = Setting::<Gf2>::new(2, 3).unwrap();
        assert_eq!(bar_hh_dimension(&s2, 1, -3), Ok(1));
        assert_eq!(bar_hh_dimension(&s2, 1, -2), Ok(0));
        assert_eq!(bar_hh_dimension(&s, 4, 0), Err(Error::DegreeTooLarge { got: 4, max: 3 }));
    }

    #[test]
    fn agrees_with_resolution() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        for m in 0..=2 {
            for n in -12..=12 {
                assert_eq!(bar_hh_dimension(&s, m, n).unwrap(), hh_dimension(&s, m as u32, n), "({m}, {n})");
            }
        }
        let s = Setting::<Gf3>::new(2, 3).unwrap();
        for m in 0..=2 {
            for n in -12..=12 {
                assert_eq!(bar_hh_dimension(&s, m, n).unwrap(), hh_dimension(&s, m as u32, n), "({m}, {n})");
            }
        }
    }

    #[test]
    fn stable_under_larger_levels() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let p = *s.original();
        for m in 0..=2 {
            for n in [-6, -4, -1, 0, 1, 5] {
                let base = bar_hh_dimension(&s, m, n).unwrap();
                let more = bar_hh_dimension_at_level(&s, m, n, default_level(&p, m) + p.ab()).unwrap();
                assert_eq!(base, more, "({m}, {n})");
            }
        }
    }

    #[test]
    fn delta_squared() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let rep = verify_bar_coboundary_squared(&s, 2, (-6, 3));
        assert!(rep.passed && rep.checked > 0, "{rep:?}");
    }
}
