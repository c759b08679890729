use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hochschild_core::classify::{standard_basis, StandardClassLabel};
use hochschild_core::cochain::hh_dimension;
use hochschild_core::cup::{cup, cup_closed_form, ClassCoordinates};
use hochschild_core::hilbert::{compare_with_counts, series_for, verify_hilbert, Truncation, Variant};
use hochschild_core::presentation::{confluence_check, iso_check, PresentedRing};
use hochschild_core::verify::{run_suite, SuiteWindow};
use hochschild_core::{with_field, CheckReport, Error, Field, FieldSpec, Result, SemigroupPair, Setting};

/// Hochschild cohomology of k[s^a, s^b].
#[derive(Parser)]
#[command(name = "hochschild", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of HH^m in weight n over the window.
    Dim(Common),
    /// Standard basis labels per bidegree.
    Basis(Common),
    /// Product of two standard classes.
    Cup {
        #[command(flatten)]
        common: Common,
        /// e.g. "e1:q=0:alpha=0"
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Generators, relations, normal monomials and the isomorphism check.
    Present(Common),
    /// Hilbert series coefficients.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
    },
    /// The full property suite.
    Verify(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    a: i64,
    #[arg(long)]
    b: i64,
    /// 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long, default_value_t = 6)]
    max_degree: u32,
    /// Defaults to -5ab.
    #[arg(long, allow_negative_numbers = true)]
    weight_min: Option<i64>,
    /// Defaults to 3ab.
    #[arg(long, allow_negative_numbers = true)]
    weight_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    MinusA,
    MinusB,
    Both,
}

#[derive(Serialize)]
struct Params {
    a: i64,
    b: i64,
    #[serde(rename = "char")]
    characteristic: u64,
    working_a: i64,
    working_b: i64,
    max_degree: u32,
    weight_min: i64,
    weight_max: i64,
}

#[derive(Serialize)]
struct Output {
    params: Params,
    case: &'static str,
    results: Value,
    checks: Vec<CheckReport>,
}

struct Outcome {
    results: Value,
    text: Vec<String>,
    checks: Vec<CheckReport>,
}

struct Job {
    pair: SemigroupPair,
    characteristic: u64,
    max_degree: u32,
    weights: (i64, i64),
}

impl Job {
    fn new(c: &Common) -> Result<Job> {
        let pair = SemigroupPair::new(c.a, c.b)?;
        FieldSpec::new(c.characteristic)?;
        let ab = pair.ab();
        let weights = (c.weight_min.unwrap_or(-5 * ab), c.weight_max.unwrap_or(3 * ab));
        if weights.0 > weights.1 {
            return Err(Error::InvalidWindow(format!("weight-min {} exceeds weight-max {}", weights.0, weights.1)));
        }
        Ok(Job {
            pair,
            characteristic: c.characteristic,
            max_degree: c.max_degree,
            weights,
        })
    }

    fn bidegrees(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        (0..=self.max_degree).flat_map(move |m| (self.weights.0..=self.weights.1).map(move |n| (m, n)))
    }
}

fn coordinates<F: Field>(x: &ClassCoordinates<F>) -> Value {
    Value::Array(
        x.iter()
            .map(|(c, l)| json!({"coefficient": c.to_string(), "label": l.to_string()}))
            .collect(),
    )
}

fn format_coordinates<F: Field>(x: &ClassCoordinates<F>) -> String {
    if x.is_empty() {
        return "0".to_string();
    }
    x.iter().map(|(c, l)| format!("{c}·{l}")).collect::<Vec<_>>().join(" + ")
}

fn dim<F: Field>(s: &Setting<F>, job: &Job) -> Outcome {
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for (m, n) in job.bidegrees() {
        let d = hh_dimension(s, m, n);
        rows.push(json!({"m": m, "n": n, "dim": d}));
        if d > 0 {
            text.push(format!("HH^{m} weight {n}: {d}"));
        }
    }
    Outcome {
        results: Value::Array(rows),
        text,
        checks: vec![],
    }
}

fn basis<F: Field>(s: &Setting<F>, job: &Job) -> Outcome {
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for (m, n) in job.bidegrees() {
        let labels: Vec<String> = standard_basis(s, m, n).iter().map(|l| l.to_string()).collect();
        if !labels.is_empty() {
            text.push(format!("({m}, {n}): {}", labels.join(", ")));
            rows.push(json!({"m": m, "n": n, "labels": labels}));
        }
    }
    Outcome {
        results: Value::Array(rows),
        text,
        checks: vec![],
    }
}

fn cup_command<F: Field>(s: &Setting<F>, left: &str, right: &str) -> Result<Outcome> {
    let f: StandardClassLabel = left.parse()?;
    let g: StandardClassLabel = right.parse()?;
    f.check_standard(s)?;
    g.check_standard(s)?;
    let product = cup(s, &f, &g)?;
    let closed = cup_closed_form(s, &f, &g)?;
    let mut check = CheckReport::new("cup product equals closed form");
    check.tick();
    if product != closed {
        check.fail(format!("lifts give {}, closed form {}", format_coordinates(&product), format_coordinates(&closed)));
    }
    Ok(Outcome {
        results: json!({
            "left": f.to_string(),
            "right": g.to_string(),
            "product": coordinates(&product),
            "closed_form": coordinates(&closed),
        }),
        text: vec![format!("{f} ⌣ {g} = {}", format_coordinates(&product))],
        checks: vec![check],
    })
}

fn present<F: Field>(s: &Setting<F>, job: &Job) -> Outcome {
    let ring = PresentedRing::new(s);
    let generators: Vec<Value> = ring
        .generators()
        .iter()
        .map(|g| json!({"name": g.name, "degree": g.degree, "weight": g.weight, "image": g.image.to_string()}))
        .collect();
    let relations: Vec<String> = ring.rules().iter().map(|r| ring.format_rule(r)).collect();
    let mut by_bidegree: std::collections::BTreeMap<(u32, i64), Vec<String>> = Default::default();
    for m in ring.monomial_basis(job.max_degree, job.weights) {
        by_bidegree
            .entry((ring.degree(&m), ring.weight(&m)))
            .or_default()
            .push(ring.format_monomial(&m));
    }
    let mut text = vec![ring.to_string()];
    text.extend(
        ring.generators()
            .iter()
            .map(|g| format!("{} in ({}, {}) ↦ {}", g.name, g.degree, g.weight, g.image)),
    );
    let basis: Vec<Value> = by_bidegree
        .into_iter()
        .map(|((m, n), monomials)| {
            text.push(format!("({m}, {n}): {}", monomials.join(", ")));
            json!({"m": m, "n": n, "monomials": monomials})
        })
        .collect();
    Outcome {
        results: json!({
            "ring": ring.to_string(),
            "generators": generators,
            "relations": relations,
            "basis": basis,
        }),
        text,
        checks: vec![
            iso_check(s, job.max_degree, job.weights),
            confluence_check(s, job.max_degree, job.weights),
        ],
    }
}

fn hilbert<F: Field>(s: &Setting<F>, job: &Job, variant: VariantArg) -> Result<Outcome> {
    let trunc = Truncation::for_window(s.pair(), job.max_degree, job.weights.1);
    let variants: Vec<(&str, Variant)> = if s.is_case_one() {
        vec![("case-one", Variant::MinusB)]
    } else {
        match variant {
            VariantArg::MinusA => vec![("minus-a", Variant::MinusA)],
            VariantArg::MinusB => vec![("minus-b", Variant::MinusB)],
            VariantArg::Both => vec![("minus-a", Variant::MinusA), ("minus-b", Variant::MinusB)],
        }
    };
    let mut series = serde_json::Map::new();
    let mut text = Vec::new();
    for (name, v) in variants {
        let triples = series_for(s, trunc, v).triples(job.max_degree, job.weights)?;
        for (m, n, c) in &triples {
            text.push(format!("{name} ({m}, {n}): {c}"));
        }
        series.insert(name.to_string(), json!(triples));
    }
    let comparison = compare_with_counts(s, job.max_degree, job.weights)?;
    for c in &comparison.comparisons {
        if c.matches {
            text.push(format!("{} matches the dimension counts", c.variant));
        } else {
            let shown: Vec<String> = c
                .mismatches
                .iter()
                .map(|x| format!("({}, {}): series {} vs {}", x.m, x.n, x.series, x.count))
                .collect();
            text.push(format!("{} mismatches: {}", c.variant, shown.join(", ")));
        }
    }
    Ok(Outcome {
        results: json!({"series": series, "comparison": comparison}),
        text,
        checks: vec![verify_hilbert(s, job.max_degree, job.weights)],
    })
}

fn verify<F: Field>(s: &Setting<F>, job: &Job) -> Outcome {
    let window = SuiteWindow {
        max_degree: job.max_degree,
        weight_min: job.weights.0,
        weight_max: job.weights.1,
        ..SuiteWindow::standard(s.pair().ab())
    };
    let report = run_suite(s, &window);
    let text = vec![format!("suite {}", if report.passed { "passed" } else { "failed" })];
    Outcome {
        results: json!({"window": window, "passed": report.passed, "hilbert": report.hilbert}),
        text,
        checks: report.checks,
    }
}

fn run<F: Field>(command: &Command, job: &Job) -> Result<(&'static str, (i64, i64), Outcome)> {
    let s = Setting::<F>::from_pair(job.pair)?;
    let outcome = match command {
        Command::Dim(_) => dim(&s, job),
        Command::Basis(_) => basis(&s, job),
        Command::Cup { left, right, .. } => cup_command(&s, left, right)?,
        Command::Present(_) => present(&s, job),
        Command::Hilbert { variant, .. } => hilbert(&s, job, *variant)?,
        Command::Verify(_) => verify(&s, job),
    };
    Ok((s.case().name(), (s.pair().a(), s.pair().b()), outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Dim(c) | Command::Basis(c) | Command::Present(c) | Command::Verify(c) => c,
        Command::Cup { common, .. } | Command::Hilbert { common, .. } => common,
    };
    let result = Job::new(common).and_then(|job| {
        let r = with_field!(job.characteristic, F => run::<F>(&cli.command, &job))?;
        Ok((job, r))
    });
    let (job, (case, working, outcome)) = match result {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let passed = outcome.checks.iter().all(|c| c.passed);
    let mut text = String::new();
    match common.format {
        Format::Json => {
            let out = Output {
                params: Params {
                    a: common.a,
                    b: common.b,
                    characteristic: job.characteristic,
                    working_a: working.0,
                    working_b: working.1,
                    max_degree: job.max_degree,
                    weight_min: job.weights.0,
                    weight_max: job.weights.1,
                },
                case,
                results: outcome.results,
                checks: outcome.checks,
            };
            text = serde_json::to_string(&out).expect("output is serializable");
            text.push('\n');
        }
        Format::Text => {
            let _ = writeln!(
                text,
                "a = {}, b = {}, char {}, working pair ({}, {}), {case}",
                common.a, common.b, job.characteristic, working.0, working.1
            );
            for line in &outcome.text {
                let _ = writeln!(text, "{line}");
            }
            for c in &outcome.checks {
                let _ = match &c.counterexample {
                    None => writeln!(text, "{}: pass ({} checked)", c.name, c.checked),
                    Some(x) => writeln!(text, "{}: FAIL ({} checked) {x}", c.name, c.checked),
                };
            }
        }
    }
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().write_all(text.as_bytes());
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
