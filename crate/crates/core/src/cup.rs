//! Chain-map lifts of standard cocycles and the cup product `f ⌣ g = g ∘ f̃`.

use std::collections::BTreeMap;

use crate::algebra::AlgebraElement;
use crate::classify::{reduce_to_standard, standard_basis, ClassKind, StandardClassLabel};
use crate::cochain::{Cochain, CochainKey};
use crate::coefficients::{Field, Setting};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::resolution::{augmentation, contracting_homotopy, differential, Cell, EnvelopingElement, ResolutionElement, Wedge};
use crate::semigroup::SemigroupPair;

/// A class written in the standard basis.
pub type ClassCoordinates<F> = Vec<(F, StandardClassLabel)>;

/// `δ1 = Σ_{i=0}^{a-2} (i+1) x1^{a-2-i} ⊗ x1^i` with `x1 = s^b`.
pub fn delta1<F: Field>(pair: &SemigroupPair) -> EnvelopingElement<F> {
    delta(pair.a(), pair.b())
}

/// `δ2 = Σ_{i=0}^{b-2} (i+1) x2^{b-2-i} ⊗ x2^i` with `x2 = s^a`.
pub fn delta2<F: Field>(pair: &SemigroupPair) -> EnvelopingElement<F> {
    delta(pair.b(), pair.a())
}

fn delta<F: Field>(n: i64, step: i64) -> EnvelopingElement<F> {
    let mut e = EnvelopingElement::zero();
    for i in 0..=n - 2 {
        e.add_term(step * (n - 2 - i), step * i, F::from_i64(i + 1));
    }
    e
}

/// `(1 ⊗ P)·x` for `P ∈ A`.
fn right_times<F: Field>(p: &AlgebraElement<F>, x: &ResolutionElement<F>) -> ResolutionElement<F> {
    let mut out = ResolutionElement::zero();
    for (e, c) in p.iter() {
        out.add_assign(&x.act(0, e, c));
    }
    out
}

/// The values `P = f(e1 t^(q))`, `Q = f(e2 t^(q))` of an odd standard cocycle.
fn odd_values<F: Field>(pair: &SemigroupPair, f: &StandardClassLabel) -> (AlgebraElement<F>, AlgebraElement<F>) {
    match f.kind {
        ClassKind::OddPair => (
            AlgebraElement::monomial(f.alpha - pair.m1(), F::from_i64(pair.b())),
            AlgebraElement::monomial(f.alpha - pair.m2(), F::from_i64(pair.a())),
        ),
        _ => (AlgebraElement::monomial(f.alpha, F::one()), AlgebraElement::zero()),
    }
}

/// The closed-form lift `f̃_j` on the generator `(1⊗1)·cell`, `deg cell = deg f + j`.
pub fn lift_cell<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    j: u32,
    cell: Cell,
) -> Result<ResolutionElement<F>> {
    f.check_standard(setting)?;
    if cell.degree() != f.degree() + j {
        return Err(Error::InvalidWindow(format!(
            "lift of degree-{} class at stage {j} applied to {cell}",
            f.degree()
        )));
    }
    let pair = setting.pair();
    match f.kind {
        ClassKind::Unit | ClassKind::T => {
            if f.q > cell.q {
                return Ok(ResolutionElement::zero());
            }
            Ok(ResolutionElement::term(
                Cell::new(cell.wedge, cell.q - f.q),
                0,
                f.alpha,
                F::one(),
            ))
        }
        ClassKind::OddPair | ClassKind::E1 => {
            let (p, q) = odd_values::<F>(pair, f);
            let gen = |wedge, k| ResolutionElement::<F>::cell(Cell::new(wedge, k));
            let mut out = ResolutionElement::zero();
            if j % 2 == 1 {
                let k = (j - 1) / 2;
                match cell.wedge {
                    Wedge::Empty => {
                        out.add_assign(&right_times(&p, &gen(Wedge::E1, k).act_by(&delta1(pair))));
                        out.sub_assign(&right_times(&q, &gen(Wedge::E2, k).act_by(&delta2(pair))));
                    }
                    Wedge::E12 => {
                        out.add_assign(&right_times(&q, &gen(Wedge::E1, k)));
                        out.sub_assign(&right_times(&p, &gen(Wedge::E2, k)));
                    }
                    _ => unreachable!("odd stage acts on even cells"),
                }
            } else {
                let k = j / 2;
                let (same, other, d) = match cell.wedge {
                    Wedge::E1 => (&p, &q, delta2(pair)),
                    Wedge::E2 => (&q, &p, delta1(pair)),
                    _ => unreachable!("even stage acts on odd cells"),
                };
                out.add_assign(&right_times(same, &gen(Wedge::Empty, k)));
                if k > 0 {
                    out.sub_assign(&right_times(other, &gen(Wedge::E12, k - 1).act_by(&d)));
                }
            }
            Ok(out)
        }
    }
}

/// `f̃_j` extended `A^e`-linearly.
pub fn apply_lift<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    j: u32,
    x: &ResolutionElement<F>,
) -> Result<ResolutionElement<F>> {
    let mut out = ResolutionElement::zero();
    for (t, c) in x.iter() {
        out.add_assign(&lift_cell(setting, f, j, t.cell)?.act(t.left, t.right, c));
    }
    Ok(out)
}

/// The lifts `f̃_0, …, f̃_{j_max}` obtained from `f̃_j = φ ∘ f̃_{j-1} ∘ d`,
/// starting from `f̃_0(x) = 1 ⊗ f(x)`; tabulated on generators.
pub fn recursive_lifts<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    j_max: u32,
) -> Result<Vec<BTreeMap<Cell, ResolutionElement<F>>>> {
    let pair = setting.pair();
    let rep = f.representative(setting)?;
    let i = f.degree();
    let one = Cell::new(Wedge::Empty, 0);
    let mut stages: Vec<BTreeMap<Cell, ResolutionElement<F>>> = Vec::new();
    let mut base = BTreeMap::new();
    for cell in Cell::of_degree(i) {
        let mut x = ResolutionElement::zero();
        for (e, c) in rep.evaluate(&ResolutionElement::cell(cell)).iter() {
            x.add_term(one, 0, e, c.clone());
        }
        base.insert(cell, x);
    }
    stages.push(base);
    for j in 1..=j_max {
        let prev = &stages[j as usize - 1];
        let mut next = BTreeMap::new();
        for cell in Cell::of_degree(i + j) {
            let dx = differential(pair, &ResolutionElement::cell(cell))?;
            let mut img = ResolutionElement::zero();
            for (t, c) in dx.iter() {
                img.add_assign(&prev[&t.cell].act(t.left, t.right, c));
            }
            next.insert(cell, contracting_homotopy(pair, &img)?);
        }
        stages.push(next);
    }
    Ok(stages)
}

/// Checks `ε ∘ f̃_0 = f`, `d ∘ f̃_j = f̃_{j-1} ∘ d` and agreement with the
/// `φ`-recursion on every generator, for `j <= j_max`.
pub fn verify_lift<F: Field>(setting: &Setting<F>, f: &StandardClassLabel, j_max: u32) -> CheckReport {
    let mut report = CheckReport::new(format!("lifts of {f}"));
    if let Err(e) = verify_lift_inner(setting, f, j_max, &mut report) {
        report.fail(e.to_string());
    }
    report
}

fn verify_lift_inner<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    j_max: u32,
    report: &mut CheckReport,
) -> Result<()> {
    let pair = setting.pair();
    let rep = f.representative(setting)?;
    let i = f.degree();
    let recursion = recursive_lifts(setting, f, j_max)?;
    for j in 0..=j_max {
        for cell in Cell::of_degree(i + j) {
            report.tick();
            let x = ResolutionElement::cell(cell);
            let lifted = lift_cell(setting, f, j, cell)?;
            if j == 0 {
                if augmentation(&lifted)? != rep.evaluate(&x) {
                    report.fail(format!("ε∘f̃_0 ≠ f on {cell}"));
                }
            } else {
                let lhs = differential(pair, &lifted)?;
                let rhs = apply_lift(setting, f, j - 1, &differential(pair, &x)?)?;
                if lhs != rhs {
                    report.fail(format!("d∘f̃_{j} ≠ f̃_{}∘d on {cell}: {lhs} vs {rhs}", j - 1));
                }
            }
            if recursion[j as usize][&cell] != lifted {
                report.fail(format!(
                    "f̃_{j}({cell}): closed form {lifted} vs recursion {}",
                    recursion[j as usize][&cell]
                ));
            }
        }
    }
    Ok(())
}

/// The cochain `g ∘ f̃_{deg g}` before reduction.
pub fn cup_cochain<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    g: &StandardClassLabel,
) -> Result<Cochain<F>> {
    g.check_standard(setting)?;
    let rep = g.representative(setting)?;
    let j = g.degree();
    Cochain::from_cell_values(f.degree() + j, |cell| {
        Ok(rep.evaluate(&lift_cell(setting, f, j, cell)?))
    })
}

/// `[f] ⌣ [g]` in the standard basis, through lifts and reduction.
pub fn cup<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    g: &StandardClassLabel,
) -> Result<ClassCoordinates<F>> {
    reduce_to_standard(setting, &cup_cochain(setting, f, g)?)
}

/// The product of two classes given in standard coordinates.
pub fn cup_classes<F: Field>(
    setting: &Setting<F>,
    x: &[(F, StandardClassLabel)],
    y: &[(F, StandardClassLabel)],
) -> Result<ClassCoordinates<F>> {
    bilinear(x, y, |f, g| cup(setting, f, g))
}

fn bilinear<F: Field>(
    x: &[(F, StandardClassLabel)],
    y: &[(F, StandardClassLabel)],
    mut product: impl FnMut(&StandardClassLabel, &StandardClassLabel) -> Result<ClassCoordinates<F>>,
) -> Result<ClassCoordinates<F>> {
    let mut acc: BTreeMap<StandardClassLabel, F> = BTreeMap::new();
    for (c1, f) in x {
        for (c2, g) in y {
            for (c, l) in product(f, g)? {
                let slot = acc.entry(l).or_insert_with(F::zero);
                *slot = slot.clone() + c1.clone() * c2.clone() * c;
            }
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (c, l))
        .collect())
}

/// The product of two arbitrary cocycles.
pub fn cup_cocycles<F: Field>(setting: &Setting<F>, f: &Cochain<F>, g: &Cochain<F>) -> Result<ClassCoordinates<F>> {
    let x = reduce_to_standard(setting, f)?;
    let y = reduce_to_standard(setting, g)?;
    cup_classes(setting, &x, &y)
}

/// `c·[(t^(q), s^α)]` in standard coordinates: zero unless the label is standard.
fn t_class<F: Field>(setting: &Setting<F>, q: u32, alpha: i64, c: F) -> ClassCoordinates<F> {
    let l = StandardClassLabel::t(q, alpha);
    if !c.is_zero() && l.is_standard(setting) {
        vec![(c, l)]
    } else {
        vec![]
    }
}

fn single<F: Field>(setting: &Setting<F>, l: StandardClassLabel) -> ClassCoordinates<F> {
    if l.is_standard(setting) {
        vec![(F::one(), l)]
    } else {
        vec![]
    }
}

/// The tabulated product of two standard classes.
pub fn cup_closed_form<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    g: &StandardClassLabel,
) -> Result<ClassCoordinates<F>> {
    f.check_standard(setting)?;
    g.check_standard(setting)?;
    let pair = setting.pair();
    let q = f.q + g.q;
    let alpha = f.alpha + g.alpha;
    let even = |k: ClassKind| matches!(k, ClassKind::Unit | ClassKind::T);
    Ok(match (even(f.kind), even(g.kind)) {
        (true, true) => t_class(setting, q, alpha, F::one()),
        (true, false) | (false, true) => {
            let odd = if even(f.kind) { g.kind } else { f.kind };
            single(setting, StandardClassLabel { kind: odd, q, alpha })
        }
        (false, false) if setting.is_case_one() => vec![],
        (false, false) => {
            let a = pair.a();
            let c = F::from_i64(a * (a - 1) / 2);
            t_class(setting, q + 1, alpha + pair.b() * (a - 2), c)
        }
    })
}

/// The raw product of two odd Case I classes:
/// `ab(a-b)/2 · (t^(p+q+1), s^{α+β-ab})`.
pub fn odd_square_cochain<F: Field>(
    setting: &Setting<F>,
    f: &StandardClassLabel,
    g: &StandardClassLabel,
) -> Cochain<F> {
    let pair = setting.pair();
    let (a, b) = (pair.a(), pair.b());
    let gamma = f.alpha + g.alpha - pair.ab();
    if !pair.contains(gamma) {
        return Cochain::zero();
    }
    Cochain::monomial(
        CochainKey::new(Wedge::Empty, f.q + g.q + 1, gamma),
        F::from_i64(a * b * (a - b) / 2),
    )
}

/// Standard labels with degree `<= max_degree` and weight in the window.
pub fn standard_labels<F: Field>(setting: &Setting<F>, max_degree: u32, weights: (i64, i64)) -> Vec<StandardClassLabel> {
    let mut out = Vec::new();
    for m in 0..=max_degree {
        for n in weights.0..=weights.1 {
            out.extend(standard_basis(setting, m, n));
        }
    }
    out
}

/// Cup through lifts equals the closed form on all windowed pairs of total
/// degree `<= max_degree`; in Case I the raw odd-odd composition is the
/// stated multiple of a `t`-cochain and that cochain is a coboundary.
pub fn verify_cup_closed_form<F: Field>(setting: &Setting<F>, max_degree: u32, weights: (i64, i64)) -> CheckReport {
    let mut report = CheckReport::new("cup product equals closed form");
    let labels = standard_labels(setting, max_degree, weights);
    let pair = setting.pair();
    for f in &labels {
        for g in &labels {
            if f.degree() + g.degree() > max_degree {
                continue;
            }
            report.tick();
            let lhs = cup(setting, f, g);
            let rhs = cup_closed_form(setting, f, g);
            if lhs != rhs {
                report.fail(format!("{f} ⌣ {g}: lifts {lhs:?} vs closed form {rhs:?}"));
            }
            if setting.is_case_one() && f.kind == ClassKind::OddPair && g.kind == ClassKind::OddPair {
                let raw = cup_cochain(setting, f, g);
                let expected = odd_square_cochain(setting, f, g);
                if raw.as_ref() != Ok(&expected) {
                    report.fail(format!("{f} ⌣ {g}: raw composition {raw:?}"));
                }
                match crate::cochain::is_coboundary(setting, &expected) {
                    Ok((true, _)) => {}
                    _ => report.fail(format!("{f} ⌣ {g}: raw product is not a coboundary")),
                }
            }
            let w = f.weight(pair) + g.weight(pair);
            if let Ok(classes) = &lhs {
                for (_, l) in classes {
                    if l.degree() != f.degree() + g.degree() || l.weight(pair) != w {
                        report.fail(format!("{f} ⌣ {g} leaves its bidegree"));
                    }
                }
            }
        }
    }
    report
}

/// Unit law, graded commutativity and associativity on windowed classes.
pub fn verify_cup_algebra<F: Field>(setting: &Setting<F>, max_degree: u32, weights: (i64, i64)) -> CheckReport {
    let mut report = CheckReport::new("cup product is unital, commutative and associative");
    let labels = standard_labels(setting, max_degree, weights);
    let one = StandardClassLabel::unit(0);
    let mut table: BTreeMap<(StandardClassLabel, StandardClassLabel), ClassCoordinates<F>> = BTreeMap::new();
    let mut run = |report: &mut CheckReport| -> Result<()> {
        let mut cup = |f: &StandardClassLabel, g: &StandardClassLabel| -> Result<ClassCoordinates<F>> {
            if let Some(v) = table.get(&(*f, *g)) {
                return Ok(v.clone());
            }
            let v = cup(setting, f, g)?;
            table.insert((*f, *g), v.clone());
            Ok(v)
        };
        for f in &labels {
            report.tick();
            let me = vec![(F::one(), *f)];
            if cup(&one, f)? != me || cup(f, &one)? != me {
                report.fail(format!("unit law fails for {f}"));
            }
            for g in &labels {
                if f.degree() + g.degree() > max_degree {
                    continue;
                }
                report.tick();
                let fg = cup(f, g)?;
                let mut gf = cup(g, f)?;
                if f.degree() % 2 == 1 && g.degree() % 2 == 1 {
                    gf = gf.into_iter().map(|(c, l)| (-c, l)).collect();
                }
                if fg != gf {
                    report.fail(format!("{f} ⌣ {g} ≠ ±{g} ⌣ {f}"));
                }
                for h in &labels {
                    if f.degree() + g.degree() + h.degree() > max_degree {
                        continue;
                    }
                    report.tick();
                    let left = bilinear(&fg, &[(F::one(), *h)], &mut cup)?;
                    let gh = cup(g, h)?;
                    let right = bilinear(&[(F::one(), *f)], &gh, &mut cup)?;
                    if left != right {
                        report.fail(format!("({f} ⌣ {g}) ⌣ {h} ≠ {f} ⌣ ({g} ⌣ {h})"));
                    }
                }
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.fail(e.to_string());
    }
    report
}
