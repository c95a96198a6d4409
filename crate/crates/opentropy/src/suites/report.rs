//! Trial records and per-suite aggregates.

use serde::{Deserialize, Serialize};

use crate::matrix::{HermitianMatrix, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisUnmet,
    Error,
}

/// One slack evaluation. For inequality checks `slack_min_eig` is the minimum
/// eigenvalue of the slack matrix; for equality checks it is minus the
/// residual Frobenius norm, so the same verdict rule applies to both.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlackReport {
    pub suite_id: String,
    pub trial_index: u64,
    pub hypothesis_satisfied: bool,
    pub slack_min_eig: f64,
    pub slack_norm: f64,
    pub scale: f64,
    pub verdict: Verdict,
    pub instance_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SlackReport {
    pub fn from_slack(
        suite_id: String,
        trial_index: u64,
        instance_seed: u64,
        hypothesis_satisfied: bool,
        slack: &HermitianMatrix,
        scale: f64,
        tol: &ToleranceConfig,
    ) -> Self {
        let slack_min_eig = slack.min_eigenvalue().unwrap_or(f64::NEG_INFINITY);
        let slack_norm = slack.frobenius_norm();
        Self::from_values(
            suite_id,
            trial_index,
            instance_seed,
            hypothesis_satisfied,
            slack_min_eig,
            slack_norm,
            scale,
            tol,
        )
    }

    /// Equality-style record: residual norm enters as `-residual`.
    pub fn from_residual(
        suite_id: String,
        trial_index: u64,
        instance_seed: u64,
        hypothesis_satisfied: bool,
        residual: f64,
        scale: f64,
        tol: &ToleranceConfig,
    ) -> Self {
        Self::from_values(
            suite_id,
            trial_index,
            instance_seed,
            hypothesis_satisfied,
            -residual,
            residual,
            scale,
            tol,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn from_values(
        suite_id: String,
        trial_index: u64,
        instance_seed: u64,
        hypothesis_satisfied: bool,
        slack_min_eig: f64,
        slack_norm: f64,
        scale: f64,
        tol: &ToleranceConfig,
    ) -> Self {
        let acceptable = slack_min_eig >= -tol.tol_order * scale.max(1.0);
        let verdict = if !hypothesis_satisfied {
            Verdict::HypothesisUnmet
        } else if acceptable {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        SlackReport {
            suite_id,
            trial_index,
            hypothesis_satisfied,
            slack_min_eig,
            slack_norm,
            scale,
            verdict,
            instance_seed,
            params: None,
            detail: None,
        }
    }

    pub fn hypothesis_unmet(
        suite_id: String,
        trial_index: u64,
        instance_seed: u64,
        detail: String,
    ) -> Self {
        SlackReport {
            suite_id,
            trial_index,
            hypothesis_satisfied: false,
            slack_min_eig: 0.0,
            slack_norm: 0.0,
            scale: 0.0,
            verdict: Verdict::HypothesisUnmet,
            instance_seed,
            params: None,
            detail: Some(detail),
        }
    }

    pub fn error(suite_id: String, trial_index: u64, instance_seed: u64, detail: String) -> Self {
        SlackReport {
            suite_id,
            trial_index,
            hypothesis_satisfied: false,
            slack_min_eig: 0.0,
            slack_norm: 0.0,
            scale: 0.0,
            verdict: Verdict::Error,
            instance_seed,
            params: None,
            detail: Some(detail),
        }
    }

    pub fn with_params(mut self, params: Option<String>) -> Self {
        self.params = params;
        self
    }
}

/// Replay handle for a recorded trial: enough to regenerate the instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplayHandle {
    pub suite_id: String,
    pub master_seed: u64,
    pub trial_index: u64,
    pub instance_seed: u64,
    pub slack_min_eig: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    pub trials: u64,
    pub records: u64,
    pub pass: u64,
    pub fail: u64,
    pub hypothesis_unmet: u64,
    pub error: u64,
    pub worst_slack_min_eig: f64,
    pub worst_trials: Vec<ReplayHandle>,
}

const WORST_KEPT: usize = 5;

impl SuiteSummary {
    pub fn aggregate(
        suite_id: String,
        params: Option<String>,
        master_seed: u64,
        trials: u64,
        reports: &[SlackReport],
    ) -> Self {
        let mut pass = 0;
        let mut fail = 0;
        let mut hypothesis_unmet = 0;
        let mut error = 0;
        let mut worst = f64::INFINITY;
        for r in reports {
            match r.verdict {
                Verdict::Pass => pass += 1,
                Verdict::Fail => fail += 1,
                Verdict::HypothesisUnmet => hypothesis_unmet += 1,
                Verdict::Error => error += 1,
            }
            if r.hypothesis_satisfied && r.slack_min_eig < worst {
                worst = r.slack_min_eig;
            }
        }
        // k smallest slacks among hypothesis-satisfied records,
        // (slack, trial_index) tie-break for order-independence
        let mut candidates: Vec<&SlackReport> =
            reports.iter().filter(|r| r.hypothesis_satisfied).collect();
        candidates.sort_by(|a, b| {
            a.slack_min_eig
                .total_cmp(&b.slack_min_eig)
                .then(a.trial_index.cmp(&b.trial_index))
        });
        let worst_trials = candidates
            .iter()
            .take(WORST_KEPT)
            .map(|r| ReplayHandle {
                suite_id: r.suite_id.clone(),
                master_seed,
                trial_index: r.trial_index,
                instance_seed: r.instance_seed,
                slack_min_eig: r.slack_min_eig,
            })
            .collect();
        SuiteSummary {
            suite_id,
            params,
            trials,
            records: reports.len() as u64,
            pass,
            fail,
            hypothesis_unmet,
            error,
            worst_slack_min_eig: if worst.is_finite() { worst } else { 0.0 },
            worst_trials,
        }
    }
}
