//! The free `A^e`-resolution `F` of `A` for the complete intersection
//! `k[x1, x2] / (x1^a - x2^b)`, with `x1 -> s^b` and `x2 -> s^a`.
//!
//! `F_m` is free on the cells `e_I t^(q)` with `|I| + 2q = m`. An element of
//! `F` is stored as a combination of terms `(s^α ⊗ s^β) · e_I t^(q)` with
//! `α, β ∈ S`; products in `A` are exponent sums.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::coefficients::{Field, Setting};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::semigroup::SemigroupPair;

/// The exterior part `e_I` of a cell, with `I ⊆ {1, 2}` sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Wedge {
    Empty,
    E1,
    E2,
    E12,
}

impl Wedge {
    pub fn len(self) -> u32 {
        match self {
            Wedge::Empty => 0,
            Wedge::E1 | Wedge::E2 => 1,
            Wedge::E12 => 2,
        }
    }

    pub fn is_empty(self) -> bool {
        self == Wedge::Empty
    }

    pub fn contains_one(self) -> bool {
        matches!(self, Wedge::E1 | Wedge::E12)
    }

    pub fn contains_two(self) -> bool {
        matches!(self, Wedge::E2 | Wedge::E12)
    }
}

/// A free generator `e_I t^(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub wedge: Wedge,
    pub q: u32,
}

impl Cell {
    pub const fn new(wedge: Wedge, q: u32) -> Self {
        Cell { wedge, q }
    }

    pub fn degree(&self) -> u32 {
        self.wedge.len() + 2 * self.q
    }

    /// `b[1 ∈ I] + a[2 ∈ I] + q·ab`; the differential preserves total weight.
    pub fn weight(&self, pair: &SemigroupPair) -> i64 {
        let mut w = self.q as i64 * pair.ab();
        if self.wedge.contains_one() {
            w += pair.b();
        }
        if self.wedge.contains_two() {
            w += pair.a();
        }
        w
    }

    /// The (at most two) cells of homological degree `m`.
    pub fn of_degree(m: u32) -> Vec<Cell> {
        if m % 2 == 0 {
            let mut v = vec![Cell::new(Wedge::Empty, m / 2)];
            if m >= 2 {
                v.push(Cell::new(Wedge::E12, m / 2 - 1));
            }
            v
        } else {
            vec![
                Cell::new(Wedge::E1, (m - 1) / 2),
                Cell::new(Wedge::E2, (m - 1) / 2),
            ]
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.wedge {
            Wedge::Empty => "",
            Wedge::E1 => "e1",
            Wedge::E2 => "e2",
            Wedge::E12 => "e1e2",
        };
        match (w.is_empty(), self.q) {
            (true, 0) => write!(f, "1"),
            (true, q) => write!(f, "t^({q})"),
            (false, 0) => write!(f, "{w}"),
            (false, q) => write!(f, "{w}t^({q})"),
        }
    }
}

/// One term `(s^left ⊗ s^right) · cell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub cell: Cell,
    pub left: i64,
    pub right: i64,
}

/// A finite `k`-combination of terms of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionElement<F> {
    terms: BTreeMap<Term, F>,
}

impl<F: Field> Default for ResolutionElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> ResolutionElement<F> {
    pub fn zero() -> Self {
        ResolutionElement {
            terms: BTreeMap::new(),
        }
    }

    /// `c · (s^left ⊗ s^right) · cell`
    pub fn term(cell: Cell, left: i64, right: i64, c: F) -> Self {
        let mut x = Self::zero();
        x.add_term(cell, left, right, c);
        x
    }

    /// `(1 ⊗ 1) · cell`
    pub fn cell(cell: Cell) -> Self {
        Self::term(cell, 0, 0, F::one())
    }

    pub fn add_term(&mut self, cell: Cell, left: i64, right: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let key = Term { cell, left, right };
        let slot = self.terms.entry(key).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            self.add_term(t.cell, t.left, t.right, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            self.add_term(t.cell, t.left, t.right, -c.clone());
        }
    }

    /// Multiply by `c · (s^left ⊗ s^right)`.
    pub fn act(&self, left: i64, right: i64, c: &F) -> Self {
        let mut out = Self::zero();
        for (t, x) in &self.terms {
            out.add_term(t.cell, t.left + left, t.right + right, x.clone() * c.clone());
        }
        out
    }

    /// Multiply by an element `Σ c (s^l ⊗ s^r)` of `A^e`.
    pub fn act_by(&self, coefficient: &EnvelopingElement<F>) -> Self {
        let mut out = Self::zero();
        for (&(l, r), c) in &coefficient.terms {
            out.add_assign(&self.act(l, r, c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cell: Cell, left: i64, right: i64) -> F {
        self.terms
            .get(&Term { cell, left, right })
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Common homological degree of all terms (`None` for zero or mixed).
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|t| t.cell.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Common total weight `left + right + w(cell)` of all terms.
    pub fn weight(&self, pair: &SemigroupPair) -> Option<i64> {
        let mut it = self
            .terms
            .keys()
            .map(|t| t.left + t.right + t.cell.weight(pair));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }
}

impl<F: Field> fmt::Display for ResolutionElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})(s^{}⊗s^{})·{}", t.left, t.right, t.cell)?;
        }
        Ok(())
    }
}

/// An element `Σ c (s^l ⊗ s^r)` of `A^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopingElement<F> {
    terms: BTreeMap<(i64, i64), F>,
}

impl<F: Field> EnvelopingElement<F> {
    pub fn zero() -> Self {
        EnvelopingElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, left: i64, right: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((left, right)).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(left, right));
        }
    }

    /// The image under multiplication `A^e -> A`.
    pub fn evaluate(&self) -> AlgebraElement<F> {
        let mut out = AlgebraElement::zero();
        for (&(l, r), c) in &self.terms {
            out.add_term(l + r, c.clone());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &F)> {
        self.terms.iter()
    }
}

/// `d(e_I t^(q))` as `(coefficient, left, right, cell)` terms.
fn cell_boundary(pair: &SemigroupPair, cell: Cell) -> Result<Vec<(i64, i64, i64, Cell)>> {
    let (a, b) = (pair.a(), pair.b());
    let q = cell.q;
    let mut out = Vec::new();
    match cell.wedge {
        Wedge::Empty => {
            if q == 0 {
                return Err(Error::DegreeZero);
            }
            // d(t) t^(q-1)
            for i in 0..a {
                out.push((1, i * b, b * (a - 1 - i), Cell::new(Wedge::E1, q - 1)));
            }
            for i in 0..b {
                out.push((-1, i * a, a * (b - 1 - i), Cell::new(Wedge::E2, q - 1)));
            }
        }
        Wedge::E1 => {
            // d(e1) t^(q) - e1 d(t) t^(q-1)
            out.push((1, b, 0, Cell::new(Wedge::Empty, q)));
            out.push((-1, 0, b, Cell::new(Wedge::Empty, q)));
            if q > 0 {
                for i in 0..b {
                    out.push((1, i * a, a * (b - 1 - i), Cell::new(Wedge::E12, q - 1)));
                }
            }
        }
        Wedge::E2 => {
            // d(e2) t^(q) - e2 d(t) t^(q-1), with e2 e1 = -e1 e2
            out.push((1, a, 0, Cell::new(Wedge::Empty, q)));
            out.push((-1, 0, a, Cell::new(Wedge::Empty, q)));
            if q > 0 {
                for i in 0..a {
                    out.push((1, i * b, b * (a - 1 - i), Cell::new(Wedge::E12, q - 1)));
                }
            }
        }
        Wedge::E12 => {
            // (d(e1) e2 - d(e2) e1) t^(q)
            out.push((1, b, 0, Cell::new(Wedge::E2, q)));
            out.push((-1, 0, b, Cell::new(Wedge::E2, q)));
            out.push((-1, a, 0, Cell::new(Wedge::E1, q)));
            out.push((1, 0, a, Cell::new(Wedge::E1, q)));
        }
    }
    Ok(out)
}

/// The resolution differential, extended `A^e`-linearly.
pub fn differential<F: Field>(
    pair: &SemigroupPair,
    x: &ResolutionElement<F>,
) -> Result<ResolutionElement<F>> {
    let mut out = ResolutionElement::zero();
    for (t, c) in x.iter() {
        for (k, l, r, cell) in cell_boundary(pair, t.cell)? {
            out.add_term(cell, t.left + l, t.right + r, c.clone() * F::from_i64(k));
        }
    }
    Ok(out)
}

/// `ε: F_0 = A^e -> A`, `s^α ⊗ s^β ↦ s^{α+β}`.
pub fn augmentation<F: Field>(x: &ResolutionElement<F>) -> Result<AlgebraElement<F>> {
    let mut out = AlgebraElement::zero();
    for (t, c) in x.iter() {
        if t.cell.degree() != 0 {
            return Err(Error::InvalidWindow(format!(
                "augmentation applied to a term of degree {}",
                t.cell.degree()
            )));
        }
        out.add_term(t.left + t.right, c.clone());
    }
    Ok(out)
}

/// The contracting homotopy `φ: F_m -> F_{m+1}` coming from the Morse matching.
///
/// Defined on the `k ⊗ A` basis `x1^u x2^v ⊗ 1 · e_I t^(q)` (`0 <= v < b`) and
/// extended `k ⊗ A`-linearly: the left factor is first rewritten in that
/// monomial basis, the right factor passes through.
pub fn contracting_homotopy<F: Field>(
    pair: &SemigroupPair,
    x: &ResolutionElement<F>,
) -> Result<ResolutionElement<F>> {
    let (a, b) = (pair.a(), pair.b());
    let mut out = ResolutionElement::zero();
    for (t, c) in x.iter() {
        let (u, v) = pair.canonical_decomposition(t.left)?;
        let q = t.cell.q;
        match t.cell.wedge {
            Wedge::E1 | Wedge::E12 => {}
            Wedge::Empty => {
                for i in 0..u {
                    out.add_term(
                        Cell::new(Wedge::E1, q),
                        i * b + v * a,
                        (u - 1 - i) * b + t.right,
                        c.clone(),
                    );
                }
                for i in 0..v {
                    out.add_term(
                        Cell::new(Wedge::E2, q),
                        i * a,
                        u * b + (v - 1 - i) * a + t.right,
                        c.clone(),
                    );
                }
            }
            Wedge::E2 => {
                for i in 0..u {
                    out.add_term(
                        Cell::new(Wedge::E12, q),
                        i * b + v * a,
                        (u - 1 - i) * b + t.right,
                        c.clone(),
                    );
                }
                if v == b - 1 {
                    out.add_term(Cell::new(Wedge::Empty, q + 1), 0, u * b + t.right, -c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Basis cells `s^α ⊗ 1 · cell` of degree `m` with total weight at most `max_weight`.
pub fn basis_cells(pair: &SemigroupPair, m: u32, max_weight: i64) -> Vec<(i64, Cell)> {
    let mut out = Vec::new();
    for cell in Cell::of_degree(m) {
        let w = cell.weight(pair);
        for alpha in pair.elements_in(0, max_weight - w) {
            out.push((alpha, cell));
        }
    }
    out
}

/// Checks `dφ + φd = id` (degree `m >= 1`) or `dφ = id - 1⊗ε` (degree 0) on
/// every basis cell of degree `m` and weight at most `max_weight`.
pub fn verify_homotopy_identity<F: Field>(
    setting: &Setting<F>,
    m: u32,
    max_weight: i64,
) -> CheckReport {
    let pair = setting.pair();
    let mut report = CheckReport::new(format!("homotopy identity, degree {m}"));
    for (alpha, cell) in basis_cells(pair, m, max_weight) {
        report.tick();
        let x = ResolutionElement::<F>::term(cell, alpha, 0, F::one());
        let outcome = (|| -> Result<bool> {
            let phi = contracting_homotopy(pair, &x)?;
            let mut lhs = differential(pair, &phi)?;
            let expected = if m == 0 {
                let mut e = x.clone();
                for (exp, c) in augmentation(&x)?.iter() {
                    e.add_term(cell, 0, exp, -c.clone());
                }
                e
            } else {
                lhs.add_assign(&contracting_homotopy(pair, &differential(pair, &x)?)?);
                x.clone()
            };
            Ok(lhs == expected)
        })();
        match outcome {
            Ok(true) => {}
            Ok(false) => report.fail(format!("(s^{alpha}⊗1)·{cell}")),
            Err(e) => report.fail(format!("(s^{alpha}⊗1)·{cell}: {e}")),
        }
    }
    report
}

/// `d ∘ d = 0` on all basis cells of degree `2..=max_degree`, and `ε ∘ d = 0`
/// in degree 1, within the weight window.
pub fn verify_d_squared<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    max_weight: i64,
) -> CheckReport {
    let pair = setting.pair();
    let mut report = CheckReport::new("d∘d = 0 and ε∘d = 0");
    for m in 1..=max_degree {
        for (alpha, cell) in basis_cells(pair, m, max_weight) {
            report.tick();
            let x = ResolutionElement::<F>::term(cell, alpha, 0, F::one());
            let Ok(dx) = differential(pair, &x) else {
                report.fail(format!("d undefined on {cell}"));
                continue;
            };
            if dx.weight(pair).is_some_and(|w| w != alpha + cell.weight(pair)) {
                report.fail(format!("d not weight-homogeneous on (s^{alpha}⊗1)·{cell}"));
            }
            let ok = if m == 1 {
                augmentation(&dx).map(|e| e.is_zero()).unwrap_or(false)
            } else {
                differential(pair, &dx).map(|e| e.is_zero()).unwrap_or(false)
            };
            if !ok {
                report.fail(format!("(s^{alpha}⊗1)·{cell}"));
            }
        }
    }
    report
}

/// An index `x1^u x2^v ⊗ 1 · cell` of the `k ⊗ A` basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorseVertex {
    pub u: i64,
    pub v: i64,
    pub cell: Cell,
}

impl MorseVertex {
    pub fn left_exponent(&self, pair: &SemigroupPair) -> i64 {
        self.u * pair.b() + self.v * pair.a()
    }

    pub fn weight(&self, pair: &SemigroupPair) -> i64 {
        self.left_exponent(pair) + self.cell.weight(pair)
    }
}

impl fmt::Display for MorseVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x1^{}x2^{}⊗1·{}", self.u, self.v, self.cell)
    }
}

/// A matched pair `source -> target` of the Morse matching; `target` has
/// degree one higher and `d(target)` has a unit component on `source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatchEdge {
    pub source: MorseVertex,
    pub target: MorseVertex,
}

/// The matching partner of a vertex, listed as a low-degree → high-degree edge.
pub fn morse_matching_edge(pair: &SemigroupPair, x: MorseVertex) -> Option<MatchEdge> {
    let b = pair.b();
    let MorseVertex { u, v, cell } = x;
    let q = cell.q;
    let mv = |u, v, wedge, q| MorseVertex {
        u,
        v,
        cell: Cell::new(wedge, q),
    };
    match cell.wedge {
        Wedge::Empty if u > 0 => Some(MatchEdge {
            source: x,
            target: mv(u - 1, v, Wedge::E1, q),
        }),
        Wedge::Empty if v > 0 => Some(MatchEdge {
            source: x,
            target: mv(0, v - 1, Wedge::E2, q),
        }),
        Wedge::Empty if q > 0 => Some(MatchEdge {
            source: mv(0, b - 1, Wedge::E2, q - 1),
            target: x,
        }),
        Wedge::Empty => None,
        Wedge::E1 => Some(MatchEdge {
            source: mv(u + 1, v, Wedge::Empty, q),
            target: x,
        }),
        Wedge::E2 if u > 0 => Some(MatchEdge {
            source: x,
            target: mv(u - 1, v, Wedge::E12, q),
        }),
        Wedge::E2 if v == b - 1 => Some(MatchEdge {
            source: x,
            target: mv(0, 0, Wedge::Empty, q + 1),
        }),
        Wedge::E2 => Some(MatchEdge {
            source: mv(0, v + 1, Wedge::Empty, q),
            target: x,
        }),
        Wedge::E12 => Some(MatchEdge {
            source: mv(u + 1, v, Wedge::E2, q),
            target: x,
        }),
    }
}

/// Components `d_{β,α}` of the differential out of a `k ⊗ A` basis vertex:
/// target vertex ↦ right-hand coefficient in `A`.
fn differential_components<F: Field>(
    pair: &SemigroupPair,
    x: MorseVertex,
) -> Result<BTreeMap<MorseVertex, AlgebraElement<F>>> {
    let elem = ResolutionElement::<F>::term(x.cell, x.left_exponent(pair), 0, F::one());
    let dx = differential(pair, &elem)?;
    let mut out: BTreeMap<MorseVertex, AlgebraElement<F>> = BTreeMap::new();
    for (t, c) in dx.iter() {
        let (u, v) = pair.canonical_decomposition(t.left)?;
        let target = MorseVertex { u, v, cell: t.cell };
        out.entry(target)
            .or_default()
            .add_term(t.right, c.clone());
    }
    out.retain(|_, e| !e.is_zero());
    Ok(out)
}

/// Morse-matching certificate on the window `degree <= max_degree`,
/// `weight <= max_weight`:
/// every matched component is a unit, matched cells pair up consistently, and
/// the digraph with matched edges reversed has no directed cycle.
pub fn morse_acyclicity_check<F: Field>(
    setting: &Setting<F>,
    max_degree: u32,
    max_weight: i64,
) -> CheckReport {
    let pair = setting.pair();
    let mut report = CheckReport::new("Morse matching acyclicity");
    let mut vertices = Vec::new();
    for m in 0..=max_degree {
        for cell in Cell::of_degree(m) {
            let w = cell.weight(pair);
            for left in pair.elements_in(0, max_weight - w) {
                let (u, v) = pair
                    .canonical_decomposition(left)
                    .expect("enumerated from S");
                vertices.push(MorseVertex { u, v, cell });
            }
        }
    }
    let mut graph = DiGraph::<MorseVertex, ()>::new();
    let index: HashMap<MorseVertex, NodeIndex> =
        vertices.iter().map(|&x| (x, graph.add_node(x))).collect();

    for &x in &vertices {
        report.tick();
        if let Some(edge) = morse_matching_edge(pair, x) {
            let back = morse_matching_edge(pair, if edge.source == x { edge.target } else { edge.source });
            if back != Some(edge) {
                report.fail(format!("matching not symmetric at {x}"));
            }
            if edge.target.cell.degree() != edge.source.cell.degree() + 1
                || edge.target.weight(pair) != edge.source.weight(pair)
            {
                report.fail(format!("matched pair {} -> {} not homogeneous", edge.source, edge.target));
            }
        }
        if x.cell.degree() == 0 {
            continue;
        }
        let comps = match differential_components::<F>(pair, x) {
            Ok(c) => c,
            Err(e) => {
                report.fail(format!("{x}: {e}"));
                continue;
            }
        };
        let matched_down = morse_matching_edge(pair, x)
            .filter(|e| e.target == x)
            .map(|e| e.source);
        if let Some(y) = matched_down {
            match comps.get(&y) {
                Some(c) if c.len() == 1 && c.iter().all(|(e, k)| e == 0 && !k.is_zero()) => {}
                _ => report.fail(format!("matched component {x} -> {y} is not a unit")),
            }
        }
        for (y, _) in comps {
            let (Some(&ix), Some(&iy)) = (index.get(&x), index.get(&y)) else {
                report.fail(format!("edge {x} -> {y} leaves the weight window"));
                continue;
            };
            if Some(y) == matched_down {
                graph.add_edge(iy, ix, ());
            } else {
                graph.add_edge(ix, iy, ());
            }
        }
    }
    if is_cyclic_directed(&graph) {
        report.fail("directed cycle in the matched digraph");
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, Rational};

    fn r(z: i64) -> Rational {
        Rational::from_i64(z)
    }

    fn pair(a: i64, b: i64) -> SemigroupPair {
        SemigroupPair::new(a, b).unwrap()
    }

    #[test]
    fn differential_of_e1() {
        let p = pair(2, 3);
        let d = differential(&p, &ResolutionElement::<Rational>::cell(Cell::new(Wedge::E1, 0))).unwrap();
        let mut expected = ResolutionElement::zero();
        expected.add_term(Cell::new(Wedge::Empty, 0), 3, 0, r(1));
        expected.add_term(Cell::new(Wedge::Empty, 0), 0, 3, r(-1));
        assert_eq!(d, expected);
    }

    #[test]
    fn differential_of_e1e2() {
        let p = pair(2, 3);
        let d = differential(&p, &ResolutionElement::<Rational>::cell(Cell::new(Wedge::E12, 0))).unwrap();
        let mut expected = ResolutionElement::zero();
        expected.add_term(Cell::new(Wedge::E2, 0), 3, 0, r(1));
        expected.add_term(Cell::new(Wedge::E2, 0), 0, 3, r(-1));
        expected.add_term(Cell::new(Wedge::E1, 0), 2, 0, r(-1));
        expected.add_term(Cell::new(Wedge::E1, 0), 0, 2, r(1));
        assert_eq!(d, expected);
    }

    #[test]
    fn differential_of_t() {
        // (1⊗s^3 + s^3⊗1)e1 − (1⊗s^4 + s^2⊗s^2 + s^4⊗1)e2
        let p = pair(2, 3);
        let d = differential(&p, &ResolutionElement::<Rational>::cell(Cell::new(Wedge::Empty, 1))).unwrap();
        let e1 = Cell::new(Wedge::E1, 0);
        let e2 = Cell::new(Wedge::E2, 0);
        let mut expected = ResolutionElement::zero();
        expected.add_term(e1, 0, 3, r(1));
        expected.add_term(e1, 3, 0, r(1));
        expected.add_term(e2, 0, 4, r(-1));
        expected.add_term(e2, 2, 2, r(-1));
        expected.add_term(e2, 4, 0, r(-1));
        assert_eq!(d, expected);
    }

    #[test]
    fn differential_rejects_degree_zero() {
        let p = pair(2, 3);
        let x = ResolutionElement::<Rational>::cell(Cell::new(Wedge::Empty, 0));
        assert_eq!(differential(&p, &x), Err(Error::DegreeZero));
    }

    #[test]
    fn augmentation_examples() {
        let one = Cell::new(Wedge::Empty, 0);
        let x = ResolutionElement::<Rational>::term(one, 2, 3, r(1));
        assert_eq!(augmentation(&x).unwrap(), AlgebraElement::monomial(5, r(1)));
        let y = ResolutionElement::<Rational>::cell(one);
        assert_eq!(augmentation(&y).unwrap(), AlgebraElement::monomial(0, r(1)));
        let mut z = ResolutionElement::<Rational>::term(one, 2, 0, r(1));
        z.add_term(one, 0, 2, r(-1));
        assert!(augmentation(&z).unwrap().is_zero());
    }

    #[test]
    fn homotopy_examples() {
        let p = pair(2, 3);
        // x1 x2 ⊗ 1 · e1 ↦ 0
        let x = ResolutionElement::<Rational>::term(Cell::new(Wedge::E1, 0), 3 + 2, 0, r(1));
        assert!(contracting_homotopy(&p, &x).unwrap().is_zero());
        // x2^2 ⊗ 1 · e2 ↦ −1⊗1 · t
        let y = ResolutionElement::<Rational>::term(Cell::new(Wedge::E2, 0), 4, 0, r(1));
        assert_eq!(
            contracting_homotopy(&p, &y).unwrap(),
            ResolutionElement::term(Cell::new(Wedge::Empty, 1), 0, 0, r(-1))
        );
        // x1 ⊗ 1 ↦ 1⊗1 · e1
        let z = ResolutionElement::<Rational>::term(Cell::new(Wedge::Empty, 0), 3, 0, r(1));
        let phi = contracting_homotopy(&p, &z).unwrap();
        assert_eq!(phi, ResolutionElement::cell(Cell::new(Wedge::E1, 0)));
        let mut expected = z.clone();
        expected.add_term(Cell::new(Wedge::Empty, 0), 0, 3, r(-1));
        assert_eq!(differential(&p, &phi).unwrap(), expected);
    }

    #[test]
    fn homotopy_identity_small_windows() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        for m in 0..=3 {
            let rep = verify_homotopy_identity(&s, m, 20);
            assert!(rep.passed, "{rep:?}");
        }
        let s = Setting::<Rational>::new(3, 5).unwrap();
        let rep = verify_homotopy_identity(&s, 2, 30);
        assert!(rep.passed && rep.checked > 0, "{rep:?}");
        let s = Setting::<Gf2>::new(2, 3).unwrap();
        assert!(verify_homotopy_identity(&s, 4, 30).passed);
    }

    #[test]
    fn d_squared_vanishes() {
        for (a, b) in [(2, 3), (3, 4), (5, 2)] {
            let s = Setting::<Rational>::new(a, b).unwrap();
            let rep = verify_d_squared(&s, 5, 4 * a * b);
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn morse_matching_contains_the_carry_edge() {
        let p = pair(2, 3);
        let x = MorseVertex {
            u: 0,
            v: 2,
            cell: Cell::new(Wedge::E2, 0),
        };
        let edge = morse_matching_edge(&p, x).unwrap();
        assert_eq!(
            edge.target,
            MorseVertex {
                u: 0,
                v: 0,
                cell: Cell::new(Wedge::Empty, 1)
            }
        );
        // the only unmatched cell is 1⊗1
        let one = MorseVertex {
            u: 0,
            v: 0,
            cell: Cell::new(Wedge::Empty, 0),
        };
        assert!(morse_matching_edge(&p, one).is_none());
    }

    #[test]
    fn morse_digraph_is_acyclic() {
        let s = Setting::<Rational>::new(2, 3).unwrap();
        let rep = morse_acyclicity_check(&s, 5, 30);
        assert!(rep.passed, "{rep:?}");
        let s = Setting::<Rational>::new(3, 4).unwrap();
        assert!(morse_acyclicity_check(&s, 4, 40).passed);
    }
}
