use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Residual after one reduction step or reference iteration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepStat {
    pub label: String,
    pub residual_n: u64,
    pub residual_m: u64,
    pub residual_max_degree: u32,
    pub rounds: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
}

/// Everything measured in one trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub config_hash: String,
    pub seed: u64,
    pub algorithm: String,
    pub generator: String,
    pub n: u64,
    pub m: u64,
    pub d_avg: f64,
    pub solution_size: u64,
    pub valid: bool,
    pub iterations: u32,
    pub rounds: u64,
    pub budget_violations: u64,
    /// Maximum degree of the residual handed to the endgame; 0 for the
    /// reference frameworks, which run to completion.
    pub max_residual_degree_final: u32,
    pub steps: Vec<StepStat>,
    pub checks: Vec<CheckOutcome>,
    pub checks_failed: u32,
    /// Not part of the reproducible result.
    pub wall_time_ms: f64,
}

impl TrialRecord {
    /// JSON of the record with the wall time cleared.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_ms = 0.0;
        serde_json::to_string(&r).expect("record serialises")
    }

    /// SHA-256 of [`canonical_json`](Self::canonical_json), hex.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}
