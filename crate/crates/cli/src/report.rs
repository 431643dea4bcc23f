use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome of one verification case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One named check with its residual against a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tol: f64,
    pub seed: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub skip: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

/// Suite report: convention header, case list, tallied summary.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub convention: BTreeMap<String, serde_json::Value>,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            convention: BTreeMap::new(),
            cases: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn convention(&mut self, key: &str, value: impl Into<serde_json::Value>) -> &mut Self {
        self.convention.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, case: Case) {
        match case.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skip => self.summary.skip += 1,
        }
        self.cases.push(case);
    }

    /// Record a residual-vs-tolerance check.
    pub fn check(&mut self, name: &str, residual: f64, tol: f64, seed: u64, elapsed_ms: u64) {
        let status = if residual.is_finite() && residual <= tol { Status::Pass } else { Status::Fail };
        self.push(Case { name: name.to_string(), status, residual, tol, seed, elapsed_ms });
    }

    /// Record an exact yes/no check (tolerance 0, residual 0 or 1).
    pub fn check_flag(&mut self, name: &str, ok: bool, seed: u64, elapsed_ms: u64) {
        self.push(Case {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: if ok { 0.0 } else { 1.0 },
            tol: 0.0,
            seed,
            elapsed_ms,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// Human-readable rendering, one line per case.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "suite {}", self.suite);
        for (k, v) in &self.convention {
            let _ = writeln!(out, "  convention {k}: {v}");
        }
        for c in &self.cases {
            let mark = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            let _ = writeln!(
                out,
                "  [{mark}] {:<34} residual {:>12.3e}  tol {:>9.1e}  seed {}",
                c.name, c.residual, c.tol, c.seed
            );
        }
        let _ = writeln!(
            out,
            "  summary: {} pass, {} fail, {} skip",
            self.summary.pass, self.summary.fail, self.summary.skip
        );
        out
    }
}
