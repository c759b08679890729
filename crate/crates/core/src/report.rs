use serde::Serialize;

/// Outcome of one exhaustive property sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual instances examined.
    pub checked: u64,
    /// The first failing instance, if any.
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            checked: 0,
            counterexample: None,
        }
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    /// Records a failure; only the first counterexample is kept.
    pub fn fail(&mut self, what: impl Into<String>) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what.into());
        }
    }

    /// Folds a sub-check into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        if !other.passed {
            let msg = format!(
                "{}: {}",
                other.name,
                other.counterexample.unwrap_or_default()
            );
            self.fail(msg);
        }
    }
}
