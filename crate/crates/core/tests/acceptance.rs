//! Acceptance gate: one PASS/FAIL line per criterion over every target instance.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hochschild_core::classify::StandardClassLabel;
use hochschild_core::cochain::hh_dimension;
use hochschild_core::cup::{cup, cup_closed_form};
use hochschild_core::hilbert::{compare_with_counts, series_case_two, Truncation, Variant};
use hochschild_core::oracle::bar_hh_dimension;
use hochschild_core::verify::*;
use hochschild_core::{with_field, CheckReport, Field, Result, Setting};

const PAIRS: [(i64, i64); 5] = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 3)];
const CHARS: [u64; 4] = [0, 2, 3, 5];
const BUDGET: Duration = Duration::from_secs(60);

type Key = (i64, i64, u64);

struct Gate {
    reports: BTreeMap<Key, Vec<CheckReport>>,
    all_passed: bool,
}

fn instances() -> impl Iterator<Item = Key> {
    PAIRS.into_iter().flat_map(|(a, b)| CHARS.into_iter().map(move |c| (a, b, c)))
}

fn setting<F: Field>(key: Key) -> Result<(Setting<F>, SuiteWindow)> {
    let s = Setting::<F>::new(key.0, key.1)?;
    let w = SuiteWindow::standard(key.0 * key.1);
    Ok((s, w))
}

impl Gate {
    /// Runs `body` on every instance, keeps the suite reports it returns and
    /// prints the verdict line.
    fn criterion<B>(&mut self, number: u32, title: &str, mut body: B)
    where
        B: FnMut(Key) -> Result<(Vec<CheckReport>, Vec<String>)>,
    {
        let start = Instant::now();
        let mut failure: Option<String> = None;
        let mut checked = 0u64;
        let mut notes = Vec::new();
        for key in instances() {
            match body(key) {
                Ok((reports, extra)) => {
                    for r in reports {
                        checked += r.checked;
                        if !r.passed && failure.is_none() {
                            failure = Some(format!("{key:?} {}: {}", r.name, r.counterexample.clone().unwrap_or_default()));
                        }
                        self.reports.entry(key).or_default().push(r);
                    }
                    notes.extend(extra.into_iter().map(|n| format!("{key:?} {n}")));
                }
                Err(e) => {
                    failure.get_or_insert(format!("{key:?}: {e}"));
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed > BUDGET {
            failure.get_or_insert(format!("took {elapsed:?}, budget {BUDGET:?}"));
        }
        for n in &notes {
            println!("    {n}");
        }
        let verdict = if failure.is_none() { "PASS" } else { "FAIL" };
        println!(
            "criterion {number} {verdict}: {title} ({checked} checks, {:.1}s){}",
            elapsed.as_secs_f64(),
            failure.map(|f| format!(" first failure: {f}")).unwrap_or_default()
        );
        if verdict == "FAIL" {
            self.all_passed = false;
        }
    }
}

fn fact(name: &str, ok: bool, what: impl FnOnce() -> String) -> CheckReport {
    let mut r = CheckReport::new(name);
    r.tick();
    if !ok {
        r.fail(what());
    }
    r
}

fn main() -> ExitCode {
    let mut gate = Gate {
        reports: BTreeMap::new(),
        all_passed: true,
    };

    gate.criterion(1, "resolution soundness, d∘d = 0 and ε∘d = 0", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            Ok((vec![check_resolution(&s, &w)], vec![]))
        })
    });

    gate.criterion(2, "contracting homotopy and Morse acyclicity", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            Ok((vec![check_homotopy(&s, &w), check_morse(&s, &w), check_coboundary(&s, &w)], vec![]))
        })
    });

    gate.criterion(3, "closed-form lifts commute and match the recursion", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            Ok((vec![check_lifts(&s, &w)], vec![]))
        })
    });

    gate.criterion(4, "dimensions agree: linear algebra, standard basis, series, bar complex", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            Ok((vec![check_dimensions(&s, &w), check_bar(&s, &w)], vec![]))
        })
    });

    gate.criterion(5, "cup product through lifts equals the closed form", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            let mut out = vec![check_cup(&s, &w), check_cup_algebra(&s, &w)];
            let mut notes = vec![];
            if key.2 == 2 && !s.is_case_one() && s.pair().a() % 4 != 0 {
                let y = StandardClassLabel::e1(0, 0);
                let sq = cup(&s, &y, &y)?;
                let expected = cup_closed_form(&s, &y, &y)?;
                notes.push(format!("square of e1:q=0:alpha=0 = {:?}", sq.iter().map(|(c, l)| format!("{c}·{l}")).collect::<Vec<_>>()));
                out.push(fact("nonzero odd square in characteristic 2", !sq.is_empty() && sq == expected, || format!("{sq:?}")));
            }
            Ok((out, notes))
        })
    });

    gate.criterion(6, "presentation is isomorphic to the cohomology ring", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            let mut out = vec![check_presentation(&s, &w), check_confluence(&s, &w)];
            if key == (2, 3, 0) {
                let totals: Vec<usize> = (2..=w.max_degree)
                    .map(|m| (w.weight_min..=w.weight_max).map(|n| hh_dimension(&s, m, n)).sum())
                    .collect();
                out.push(fact("total dimension 2 in degrees >= 2", totals.iter().all(|&t| t == 2), || format!("{totals:?}")));
            }
            Ok((out, vec![]))
        })
    });

    gate.criterion(7, "Case II series adjudication", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            let mut out = vec![check_hilbert(&s, &w)];
            let mut notes = vec![];
            if !s.is_case_one() {
                let cmp = compare_with_counts(&s, w.max_degree, w.weights())?;
                let other: Vec<String> = cmp
                    .comparisons
                    .iter()
                    .filter(|c| !c.matches)
                    .flat_map(|c| c.mismatches.iter().map(move |x| format!("{}({},{}): series {} vs {}", c.variant, x.m, x.n, x.series, x.count)))
                    .collect();
                let shown = other.iter().take(4).cloned().collect::<Vec<_>>().join(", ");
                notes.push(format!("matching {:?}; {} mismatches of the other variant: {shown}, …", cmp.matching, other.len()));
                out.push(fact("minus-b is the unique matching variant", cmp.matching == ["minus-b"] && !other.is_empty(), || format!("{:?}", cmp.matching)));
                let p = s.pair();
                let bar = bar_hh_dimension(&s, 1, -p.b())? as i64;
                let trunc = Truncation::for_window(p, 1, 0);
                let sa = series_case_two(p, trunc, Variant::MinusA).coefficient(1, -p.b())?;
                let sb = series_case_two(p, trunc, Variant::MinusB).coefficient(1, -p.b())?;
                notes.push(format!("bar oracle at (1, {}): {bar}; minus-a {sa}, minus-b {sb}", -p.b()));
                out.push(fact("bar oracle sides with minus-b", bar == sb && bar != sa, || format!("bar {bar}, minus-a {sa}, minus-b {sb}")));
            }
            Ok((out, notes))
        })
    });

    let mut earlier = std::mem::take(&mut gate.reports);
    gate.criterion(8, "verify reports are byte-identical across runs", |key| {
        with_field!(key.2, F => {
            let (s, w) = setting::<F>(key)?;
            let fresh = serde_json::to_string(&run_suite(&s, &w)).expect("serializable");
            let suite_names = [
                RESOLUTION, HOMOTOPY, MORSE, COBOUNDARY, LIFTS, DIMENSIONS, BAR, CUP, CUP_ALGEBRA, PRESENTATION,
                CONFLUENCE, HILBERT,
            ];
            let pieces = earlier.remove(&key).unwrap_or_default();
            let checks: Vec<CheckReport> = suite_names
                .iter()
                .filter_map(|n| pieces.iter().find(|r| r.name == *n).cloned())
                .collect();
            let assembled = SuiteReport {
                passed: checks.iter().all(|c| c.passed),
                checks,
                hilbert: compare_with_counts(&s, w.max_degree, w.weights()).ok(),
            };
            let assembled = serde_json::to_string(&assembled).expect("serializable");
            Ok((vec![fact("identical reports", fresh == assembled, || "reports differ".to_string())], vec![]))
        })
    });

    if gate.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
