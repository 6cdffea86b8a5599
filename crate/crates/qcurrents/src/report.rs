//! Machine-readable result records for relation checks.

use serde::Serialize;

/// Concrete counterexample: the source state, the mode pair, and the two
/// differing coefficient vectors (rendered canonically).
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub state: String,
    pub modes: (i64, i64),
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub id: String,
    pub params: String,
    pub window: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of (state, mode pair, parameter) cells compared.
    pub cells: u64,
    pub millis: u128,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub config: serde_json::Value,
    pub checks: Vec<RelationReport>,
    pub summary: Summary,
}

impl ReportFile {
    pub fn new(config: serde_json::Value, checks: Vec<RelationReport>) -> Self {
        let total = checks.len();
        let passed = checks.iter().filter(|c| c.passed()).count();
        Self {
            config,
            checks,
            summary: Summary {
                total,
                passed,
                failed: total - passed,
            },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}
