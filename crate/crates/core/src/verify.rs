//! The full property suite behind `hochschild verify` and the acceptance run.

use serde::Serialize;

use crate::classify::verify_classification;
use crate::cochain::{hh_dimension, verify_block_structure, verify_coboundary_formula, verify_coboundary_squared};
use crate::coefficients::{Field, Setting};
use crate::cup::{standard_labels, verify_cup_algebra, verify_cup_closed_form, verify_lift};
use crate::hilbert::{compare_with_counts, verify_hilbert, HilbertComparison};
use crate::oracle::{bar_hh_dimension, verify_bar_coboundary_squared};
use crate::presentation::{confluence_check, iso_check};
use crate::report::CheckReport;
use crate::resolution::{morse_acyclicity_check, verify_d_squared, verify_homotopy_identity};

/// Bounds of one suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteWindow {
    pub max_degree: u32,
    pub weight_min: i64,
    pub weight_max: i64,
    /// Cells of the resolution are checked up to this weight.
    pub cell_weight: i64,
    /// Lifts are checked for `j <= lift_stages`.
    pub lift_stages: u32,
    /// The bar oracle runs for `m <= bar_degree`, `|n| <= bar_weight`.
    pub bar_degree: u32,
    pub bar_weight: i64,
}

impl SuiteWindow {
    /// `m <= 6`, `n ∈ [-5ab, 3ab]`, cells up to weight `5ab`, lifts to `j = 4`,
    /// bar oracle for `m <= 2`, `|n| <= 2ab`.
    pub fn standard(ab: i64) -> Self {
        SuiteWindow {
            max_degree: 6,
            weight_min: -5 * ab,
            weight_max: 3 * ab,
            cell_weight: 5 * ab,
            lift_stages: 4,
            bar_degree: 2,
            bar_weight: 2 * ab,
        }
    }

    pub fn weights(&self) -> (i64, i64) {
        (self.weight_min, self.weight_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    pub hilbert: Option<HilbertComparison>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub const RESOLUTION: &str = "resolution";
pub const HOMOTOPY: &str = "homotopy";
pub const MORSE: &str = "morse";
pub const COBOUNDARY: &str = "coboundary";
pub const LIFTS: &str = "lifts";
pub const DIMENSIONS: &str = "dimensions";
pub const BAR: &str = "bar-oracle";
pub const CUP: &str = "cup";
pub const CUP_ALGEBRA: &str = "cup-algebra";
pub const PRESENTATION: &str = "presentation";
pub const CONFLUENCE: &str = "confluence";
pub const HILBERT: &str = "hilbert";

fn named(name: &str, inner: CheckReport) -> CheckReport {
    let mut r = CheckReport::new(name);
    r.absorb(inner);
    r
}

pub fn check_resolution<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(RESOLUTION, verify_d_squared(setting, w.max_degree, w.cell_weight))
}

pub fn check_homotopy<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    let mut r = CheckReport::new(HOMOTOPY);
    for m in 0..=w.max_degree {
        r.absorb(verify_homotopy_identity(setting, m, w.cell_weight));
    }
    r
}

pub fn check_morse<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(MORSE, morse_acyclicity_check(setting, w.max_degree, w.cell_weight))
}

pub fn check_coboundary<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    let mut r = CheckReport::new(COBOUNDARY);
    r.absorb(verify_coboundary_squared(setting, w.max_degree, w.weights()));
    r.absorb(verify_coboundary_formula(setting, w.max_degree, w.weights()));
    r.absorb(verify_block_structure(setting, w.max_degree, w.weights()));
    r
}

pub fn check_lifts<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    let mut r = CheckReport::new(LIFTS);
    for f in standard_labels(setting, w.max_degree, w.weights()) {
        r.absorb(verify_lift(setting, &f, w.lift_stages));
    }
    r
}

pub fn check_dimensions<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(DIMENSIONS, verify_classification(setting, w.max_degree, w.weights()))
}

pub fn check_bar<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    let mut r = CheckReport::new(BAR);
    let top = w.bar_degree.min(w.max_degree);
    r.absorb(verify_bar_coboundary_squared(setting, top as usize, (-w.bar_weight, w.bar_weight)));
    for m in 0..=top {
        for n in -w.bar_weight..=w.bar_weight {
            r.tick();
            match bar_hh_dimension(setting, m as usize, n) {
                Ok(d) if d == hh_dimension(setting, m, n) => {}
                Ok(d) => r.fail(format!("bar dimension {d} ≠ {} at ({m}, {n})", hh_dimension(setting, m, n))),
                Err(e) => r.fail(format!("({m}, {n}): {e}")),
            }
        }
    }
    r
}

pub fn check_cup<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(CUP, verify_cup_closed_form(setting, w.max_degree, w.weights()))
}

pub fn check_cup_algebra<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(CUP_ALGEBRA, verify_cup_algebra(setting, w.max_degree, w.weights()))
}

pub fn check_presentation<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(PRESENTATION, iso_check(setting, w.max_degree, w.weights()))
}

pub fn check_confluence<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(CONFLUENCE, confluence_check(setting, w.max_degree, w.weights()))
}

pub fn check_hilbert<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> CheckReport {
    named(HILBERT, verify_hilbert(setting, w.max_degree, w.weights()))
}

/// Runs every check in a fixed order.
pub fn run_suite<F: Field>(setting: &Setting<F>, w: &SuiteWindow) -> SuiteReport {
    let checks = vec![
        check_resolution(setting, w),
        check_homotopy(setting, w),
        check_morse(setting, w),
        check_coboundary(setting, w),
        check_lifts(setting, w),
        check_dimensions(setting, w),
        check_bar(setting, w),
        check_cup(setting, w),
        check_cup_algebra(setting, w),
        check_presentation(setting, w),
        check_confluence(setting, w),
        check_hilbert(setting, w),
    ];
    let hilbert = compare_with_counts(setting, w.max_degree, w.weights()).ok();
    SuiteReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
        hilbert,
    }
}
