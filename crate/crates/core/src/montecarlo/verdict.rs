use serde::{Deserialize, Serialize};

/// One checked statistic: the estimate, its uncertainty, the bound it is held
/// against and the outcome. `pass` is `None` for informational rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub statistic: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub estimate: f64,
    pub standard_error: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub bound_formula: String,
    /// Added to the bound before comparing, e.g. three standard errors.
    pub slack: f64,
    pub pass: Option<bool>,
    pub replicates: usize,
    pub base_seed: u64,
    /// Replicates dropped with a diagnostic.
    #[serde(default)]
    pub excluded: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerdictReport {
    /// `estimate <= bound + slack`.
    pub fn upper(
        statistic: impl Into<String>,
        estimate: f64,
        standard_error: f64,
        bound: f64,
        bound_formula: impl Into<String>,
        slack: f64,
    ) -> Self {
        VerdictReport {
            statistic: statistic.into(),
            n: None,
            estimate,
            standard_error,
            ci: None,
            bound: Some(bound),
            bound_formula: bound_formula.into(),
            slack,
            pass: Some(estimate <= bound + slack),
            replicates: 0,
            base_seed: 0,
            excluded: 0,
            note: None,
        }
    }

    /// `|estimate − target| <= slack`; the target is stored as the bound.
    pub fn close(
        statistic: impl Into<String>,
        estimate: f64,
        standard_error: f64,
        target: f64,
        target_formula: impl Into<String>,
        slack: f64,
    ) -> Self {
        let mut v = Self::upper(statistic, estimate, standard_error, target, target_formula, slack);
        v.pass = Some((estimate - target).abs() <= slack);
        v
    }

    /// A row with no pass/fail outcome.
    pub fn info(statistic: impl Into<String>, estimate: f64, standard_error: f64) -> Self {
        VerdictReport {
            statistic: statistic.into(),
            n: None,
            estimate,
            standard_error,
            ci: None,
            bound: None,
            bound_formula: String::new(),
            slack: 0.0,
            pass: None,
            replicates: 0,
            base_seed: 0,
            excluded: 0,
            note: None,
        }
    }

    /// A yes/no fact, e.g. an invariant checked in every replicate.
    pub fn flag(statistic: impl Into<String>, ok: bool, note: impl Into<String>) -> Self {
        let mut v = Self::info(statistic, if ok { 1.0 } else { 0.0 }, 0.0);
        v.bound_formula = "holds".into();
        v.pass = Some(ok);
        v.note = Some(note.into());
        v
    }

    pub fn at_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_run(mut self, replicates: usize, base_seed: u64) -> Self {
        self.replicates = replicates;
        self.base_seed = base_seed;
        self
    }

    pub fn with_ci(mut self, ci: (f64, f64)) -> Self {
        self.ci = Some(ci);
        self
    }

    pub fn with_excluded(mut self, excluded: usize) -> Self {
        self.excluded = excluded;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }

    /// One line for terminal output.
    pub fn summary(&self) -> String {
        let tag = match self.pass {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        let n = self.n.map(|n| format!(" n={n}")).unwrap_or_default();
        let bound = match self.bound {
            Some(b) => format!(" vs {} = {b:.6e} (+{:.3e})", self.bound_formula, self.slack),
            None => String::new(),
        };
        format!("[{tag}] {}{n}: {:.6e} ± {:.3e}{bound}", self.statistic, self.estimate, self.standard_error)
    }
}

/// The outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<VerdictReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<VerdictReport>) -> Self {
        let pass = checks.iter().all(|c| !c.failed());
        SuiteReport {
            suite: suite.into(),
            pass,
            checks,
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!("suite {}: {}\n", self.suite, if self.pass { "PASS" } else { "FAIL" });
        for c in &self.checks {
            s.push_str("  ");
            s.push_str(&c.summary());
            s.push('\n');
        }
        s
    }
}

/// A plot-ready row: one statistic at one `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub suite: String,
    pub n: Option<usize>,
    pub statistic: String,
    pub estimate: f64,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub bound: Option<f64>,
}

/// Flattens a report into series rows, one per check.
pub fn series_rows(report: &SuiteReport) -> Vec<SeriesRow> {
    report
        .checks
        .iter()
        .map(|c| SeriesRow {
            suite: report.suite.clone(),
            n: c.n,
            statistic: c.statistic.clone(),
            estimate: c.estimate,
            ci_low: c.ci.map(|x| x.0),
            ci_high: c.ci.map(|x| x.1),
            bound: c.bound,
        })
        .collect()
}
