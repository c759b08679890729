//! The presented rings of the two cases, normal forms by rewriting, and the
//! bigraded isomorphism check against cup products of cocycle classes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::classify::{standard_basis, StandardClassLabel};
use crate::coefficients::{Field, Setting};
use crate::cup::{cup_classes, ClassCoordinates};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::report::CheckReport;
use crate::semigroup::SemigroupPair;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: &'static str,
    pub degree: u32,
    pub weight: i64,
    /// The class the generator is sent to.
    pub image: StandardClassLabel,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponents over the generators, in generator order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(x, y)| x <= y)
    }

    fn quotient(&self, by: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&by.0).map(|(x, y)| x - y).collect())
    }
}

/// A rewriting rule `lead -> Σ c·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Monomial,
    pub rhs: Vec<(i64, Monomial)>,
}

pub type Polynomial<F> = BTreeMap<Monomial, F>;

#[derive(Clone, Debug)]
pub struct PresentedRing {
    pair: SemigroupPair,
    case_one: bool,
    generators: Vec<Generator>,
    rules: Vec<Rule>,
}

fn mono(exps: &[u32]) -> Monomial {
    Monomial(exps.to_vec())
}

impl PresentedRing {
    pub fn new<F: Field>(setting: &Setting<F>) -> Self {
        let p = *setting.pair();
        let (a, b, ab) = (p.a(), p.b(), p.ab());
        let (au, bu) = (a as u32, b as u32);
        if setting.is_case_one() {
            let generators = vec![
                Generator { name: "X1", degree: 0, weight: a, image: StandardClassLabel::unit(a) },
                Generator { name: "X2", degree: 0, weight: b, image: StandardClassLabel::unit(b) },
                Generator { name: "Y1", degree: 1, weight: 0, image: StandardClassLabel::odd_pair(0, ab) },
                Generator {
                    name: "Y2",
                    degree: 1,
                    weight: ab - a - b,
                    image: StandardClassLabel::odd_pair(0, p.m1() + p.m2()),
                },
                Generator { name: "T", degree: 2, weight: -ab, image: StandardClassLabel::t(1, 0) },
            ];
            let rules = vec![
                Rule { lead: mono(&[0, au, 0, 0, 0]), rhs: vec![(1, mono(&[bu, 0, 0, 0, 0]))] },
                Rule { lead: mono(&[bu - 1, 0, 0, 0, 1]), rhs: vec![] },
                Rule { lead: mono(&[0, au - 1, 0, 0, 1]), rhs: vec![] },
                Rule { lead: mono(&[0, 0, 0, 1, 1]), rhs: vec![] },
                Rule { lead: mono(&[0, 0, 2, 0, 0]), rhs: vec![] },
                Rule { lead: mono(&[0, 0, 0, 2, 0]), rhs: vec![] },
                Rule { lead: mono(&[0, 0, 1, 1, 0]), rhs: vec![] },
                Rule { lead: mono(&[1, 0, 0, 1, 0]), rhs: vec![(1, mono(&[0, au - 1, 1, 0, 0]))] },
                Rule { lead: mono(&[0, 1, 0, 1, 0]), rhs: vec![(1, mono(&[bu - 1, 0, 1, 0, 0]))] },
            ];
            PresentedRing { pair: p, case_one: true, generators, rules }
        } else {
            let generators = vec![
                Generator { name: "X1", degree: 0, weight: a, image: StandardClassLabel::unit(a) },
                Generator { name: "X2", degree: 0, weight: b, image: StandardClassLabel::unit(b) },
                Generator { name: "Y", degree: 1, weight: -b, image: StandardClassLabel::e1(0, 0) },
                Generator { name: "T", degree: 2, weight: -ab, image: StandardClassLabel::t(1, 0) },
            ];
            let y_squared = if F::CHARACTERISTIC == 2 && a % 4 != 0 {
                vec![(1, mono(&[0, au - 2, 0, 1]))]
            } else {
                vec![]
            };
            let rules = vec![
                Rule { lead: mono(&[bu, 0, 0, 0]), rhs: vec![(1, mono(&[0, au, 0, 0]))] },
                Rule { lead: mono(&[0, 0, 2, 0]), rhs: y_squared },
                Rule { lead: mono(&[bu - 1, 0, 0, 1]), rhs: vec![] },
                Rule { lead: mono(&[0, au, 0, 1]), rhs: vec![] },
            ];
            PresentedRing { pair: p, case_one: false, generators, rules }
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_case_one(&self) -> bool {
        self.case_one
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e as i64 * g.weight).sum()
    }

    pub fn generator(&self, i: usize) -> Monomial {
        let mut m = Monomial::one(self.generators.len());
        m.0[i] = 1;
        m
    }

    /// The product of two monomials, with the sign of reordering odd generators.
    pub fn mul_monomials(&self, x: &Monomial, y: &Monomial) -> (i64, Monomial) {
        let mut swaps = 0u32;
        for (i, g) in self.generators.iter().enumerate() {
            if !g.is_odd() {
                continue;
            }
            for (h, hg) in self.generators.iter().enumerate().take(i) {
                if hg.is_odd() {
                    swaps += x.0[i] * y.0[h];
                }
            }
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        (sign, Monomial(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect()))
    }

    pub fn mul<F: Field>(&self, x: &Polynomial<F>, y: &Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::new();
        for (m1, c1) in x {
            for (m2, c2) in y {
                let (s, m) = self.mul_monomials(m1, m2);
                add_term(&mut out, m, c1.clone() * c2.clone() * F::from_i64(s));
            }
        }
        out
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        !self.rules.iter().any(|r| r.lead.divides(m))
    }

    /// Normal form, trying rules in the listed order.
    pub fn normal_form<F: Field>(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let order: Vec<usize> = (0..self.rules.len()).collect();
        self.normal_form_with_order(p, &order)
    }

    /// Normal form, trying rules in the given order.
    pub fn normal_form_with_order<F: Field>(&self, p: &Polynomial<F>, order: &[usize]) -> Polynomial<F> {
        let mut todo = p.clone();
        let mut done = Polynomial::new();
        while let Some((m, c)) = todo.pop_last() {
            match order.iter().map(|&i| &self.rules[i]).find(|r| r.lead.divides(&m)) {
                None => add_term(&mut done, m, c),
                Some(rule) => {
                    let rest = m.quotient(&rule.lead);
                    let (s, _) = self.mul_monomials(&rule.lead, &rest);
                    for (k, rm) in &rule.rhs {
                        let (s2, prod) = self.mul_monomials(rm, &rest);
                        add_term(&mut todo, prod, c.clone() * F::from_i64(s * s2 * k));
                    }
                }
            }
        }
        done
    }

    /// Normal monomials with degree `<= max_degree` and weight in the window,
    /// ordered by (degree, weight, exponents).
    pub fn monomial_basis(&self, max_degree: u32, weights: (i64, i64)) -> Vec<Monomial> {
        let (a, b) = (self.pair.a(), self.pair.b());
        let mut out = Vec::new();
        let max_q = max_degree / 2;
        let odd: Vec<usize> = (0..self.generators.len()).filter(|&i| self.generators[i].is_odd()).collect();
        let t = self.generators.len() - 1;
        for q in 0..=max_q {
            for mask in 0u32..(1 << (2 * odd.len())) {
                // up to exponent 3 per odd generator, so squares are seen by is_normal
                let mut m = Monomial::one(self.generators.len());
                m.0[t] = q;
                for (k, &i) in odd.iter().enumerate() {
                    m.0[i] = (mask >> (2 * k)) & 3;
                }
                if self.degree(&m) > max_degree {
                    continue;
                }
                let base = self.weight(&m);
                let room = weights.1 - base;
                if room < 0 {
                    continue;
                }
                for u in 0..=(room / a) as u32 {
                    for v in 0..=((room - u as i64 * a) / b) as u32 {
                        let mut x = m.clone();
                        x.0[0] = u;
                        x.0[1] = v;
                        let w = self.weight(&x);
                        if w >= weights.0 && w <= weights.1 && self.is_normal(&x) {
                            out.push(x);
                        }
                    }
                }
            }
        }
        out.sort_by_key(|m| (self.degree(m), self.weight(m), m.clone()));
        out
    }

    /// The explicit list of normal monomials.
    pub fn is_listed_normal(&self, m: &Monomial) -> bool {
        let (a, b) = (self.pair.a() as u32, self.pair.b() as u32);
        let e = &m.0;
        if self.case_one {
            let (u, v, y1, y2, q) = (e[0], e[1], e[2], e[3], e[4]);
            match (y1, y2, q) {
                (0, 0, 0) | (1, 0, 0) => v < a,
                (0, 0, _) | (1, 0, _) => u < b - 1 && v < a - 1,
                (0, 1, 0) => u == 0 && v == 0,
                _ => false,
            }
        } else {
            let (u, v, y, q) = (e[0], e[1], e[2], e[3]);
            y <= 1 && if q == 0 { u < b } else { u < b - 1 && v < a }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, g)| if e == 1 { g.name.to_string() } else { format!("{}^{e}", g.name) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format_rule(&self, r: &Rule) -> String {
        let mut s = self.format_monomial(&r.lead);
        for (c, m) in &r.rhs {
            let sign = if *c > 0 { "-" } else { "+" };
            let k = c.abs();
            if k == 1 {
                s += &format!(" {sign} {}", self.format_monomial(m));
            } else {
                s += &format!(" {sign} {k}*{}", self.format_monomial(m));
            }
        }
        s
    }
}

impl fmt::Display for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.name).collect();
        let rels: Vec<String> = self.rules.iter().map(|r| self.format_rule(r)).collect();
        write!(f, "k[{}] / ({})", gens.join(", "), rels.join(", "))
    }
}

fn add_term<F: Field>(p: &mut Polynomial<F>, m: Monomial, c: F) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(m.clone()).or_insert_with(F::zero);
    *slot = slot.clone() + c;
    if slot.is_zero() {
        p.remove(&m);
    }
}

pub fn polynomial<F: Field>(terms: &[(i64, Monomial)]) -> Polynomial<F> {
    let mut p = Polynomial::new();
    for (c, m) in terms {
        add_term(&mut p, m.clone(), F::from_i64(*c));
    }
    p
}

/// Images of monomials in `HH*`, computed as iterated cup products of the
/// generator images in generator order.
pub struct ImageMap<'a, F> {
    setting: &'a Setting<F>,
    ring: &'a PresentedRing,
    cache: BTreeMap<Monomial, ClassCoordinates<F>>,
}

impl<'a, F: Field> ImageMap<'a, F> {
    pub fn new(setting: &'a Setting<F>, ring: &'a PresentedRing) -> Self {
        ImageMap { setting, ring, cache: BTreeMap::new() }
    }

    pub fn monomial(&mut self, m: &Monomial) -> Result<ClassCoordinates<F>> {
        if let Some(x) = self.cache.get(m) {
            return Ok(x.clone());
        }
        let out = match m.0.iter().rposition(|&e| e > 0) {
            None => vec![(F::one(), StandardClassLabel::unit(0))],
            Some(i) => {
                let mut rest = m.clone();
                rest.0[i] -= 1;
                let prefix = self.monomial(&rest)?;
                let g = self.ring.generators[i].image;
                cup_classes(self.setting, &prefix, &[(F::one(), g)])?
            }
        };
        self.cache.insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn polynomial(&mut self, p: &Polynomial<F>) -> Result<ClassCoordinates<F>> {
        let mut acc: BTreeMap<StandardClassLabel, F> = BTreeMap::new();
        for (m, c) in p {
            for (x, l) in self.monomial(m)? {
                let slot = acc.entry(l).or_insert_with(F::zero);
                *slot = slot.clone() + c.clone() * x;
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(l, c)| (c, l)).collect())
    }
}

/// The bigraded isomorphism certificate: basis counts agree, images of normal
/// monomials are independent, relations map to zero, and the map is
/// multiplicative on all windowed pairs of normal monomials.
pub fn iso_check<F: Field>(setting: &Setting<F>, max_degree: u32, weights: (i64, i64)) -> CheckReport {
    let mut report = CheckReport::new("presentation is isomorphic to HH*");
    if let Err(e) = iso_check_inner(setting, max_degree, weights, &mut report) {
        report.fail(e.to_string());
    }
    report
}

fn iso_check_inner<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    weights: (i64, i64),
    report: &mut CheckReport,
) -> Result<()> {
    let ring = PresentedRing::new(setting);
    let mut images = ImageMap::new(setting, &ring);
    let basis = ring.monomial_basis(max_degree, weights);

    let mut by_bidegree: BTreeMap<(u32, i64), Vec<&Monomial>> = BTreeMap::new();
    for m in &basis {
        by_bidegree.entry((ring.degree(m), ring.weight(m))).or_default().push(m);
    }
    for deg in 0..=max_degree {
        for n in weights.0..=weights.1 {
            report.tick();
            let labels = standard_basis(setting, deg, n);
            let monos = by_bidegree.get(&(deg, n)).cloned().unwrap_or_default();
            if labels.len() != monos.len() {
                report.fail(format!("({deg}, {n}): {} normal monomials, {} classes", monos.len(), labels.len()));
                continue;
            }
            let mut columns = Vec::new();
            for m in &monos {
                let img = images.monomial(m)?;
                columns.push(labels.iter().map(|l| coordinate(&img, l)).collect::<Vec<F>>());
                if img.iter().any(|(_, l)| !labels.contains(l)) {
                    report.fail(format!("image of {} leaves bidegree ({deg}, {n})", ring.format_monomial(m)));
                }
            }
            if Matrix::from_columns(labels.len(), &columns).rank() != labels.len() {
                report.fail(format!("images at ({deg}, {n}) are dependent"));
            }
        }
    }

    for rule in ring.rules() {
        report.tick();
        let mut rel = polynomial::<F>(&rule.rhs);
        for v in rel.values_mut() {
            *v = -v.clone();
        }
        add_term(&mut rel, rule.lead.clone(), F::one());
        if !images.polynomial(&rel)?.is_empty() {
            report.fail(format!("relation {} does not map to zero", ring.format_rule(rule)));
        }
    }

    for x in &basis {
        for y in &basis {
            let d = ring.degree(x) + ring.degree(y);
            let w = ring.weight(x) + ring.weight(y);
            if d > max_degree || w < weights.0 || w > weights.1 {
                continue;
            }
            report.tick();
            let (s, xy) = ring.mul_monomials(x, y);
            let nf = ring.normal_form(&polynomial::<F>(&[(s, xy)]));
            let lhs = images.polynomial(&nf)?;
            let rhs = cup_classes(setting, &images.monomial(x)?, &images.monomial(y)?)?;
            if lhs != rhs {
                report.fail(format!(
                    "{} * {}: image of normal form {lhs:?}, product of images {rhs:?}",
                    ring.format_monomial(x),
                    ring.format_monomial(y)
                ));
            }
        }
    }
    Ok(())
}

fn coordinate<F: Field>(x: &ClassCoordinates<F>, l: &StandardClassLabel) -> F {
    x.iter().find(|(_, m)| m == l).map(|(c, _)| c.clone()).unwrap_or_else(F::zero)
}

/// Normal forms are independent of the order in which rules are tried, on
/// all windowed products of normal monomials.
pub fn confluence_check<F: Field>(setting: &Setting<F>, max_degree: u32, weights: (i64, i64)) -> CheckReport {
    let ring = PresentedRing::new(setting);
    let mut report = CheckReport::new("rewriting is confluent");
    let basis = ring.monomial_basis(max_degree, weights);
    let forward: Vec<usize> = (0..ring.rules().len()).collect();
    let backward: Vec<usize> = forward.iter().rev().copied().collect();
    for x in &basis {
        for y in &basis {
            if ring.degree(x) + ring.degree(y) > max_degree {
                continue;
            }
            report.tick();
            let (s, xy) = ring.mul_monomials(x, y);
            let p = polynomial::<F>(&[(s, xy)]);
            let n1 = ring.normal_form_with_order(&p, &forward);
            let n2 = ring.normal_form_with_order(&p, &backward);
            if n1 != n2 {
                report.fail(format!("{} * {}", ring.format_monomial(x), ring.format_monomial(y)));
            }
            if ring.normal_form(&n1) != n1 {
                report.fail(format!("normal form of {} * {} is not idempotent", ring.format_monomial(x), ring.format_monomial(y)));
            }
            let d = ring.degree(x) + ring.degree(y);
            let w = ring.weight(x) + ring.weight(y);
            if n1.keys().any(|m| ring.degree(m) != d || ring.weight(m) != w || !ring.is_normal(m)) {
                report.fail(format!("normal form of {} * {} leaves its bidegree", ring.format_monomial(x), ring.format_monomial(y)));
            }
        }
    }
    report
}
