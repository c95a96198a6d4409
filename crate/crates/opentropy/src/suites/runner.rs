//! Seeded suite runner: maps trial indices to instances, instances to slack
//! reports. Trials are keyed by (master_seed, suite id, trial index) only, so
//! runs are reproducible regardless of thread count.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{OperatorTuple, PairKernel, PositiveMapDescriptor};
use crate::error::{Error, Result};
use crate::gen::{
    generate_thm28_pair, random_contraction_set, random_doubly_stochastic, random_hpd,
    random_positive_map, random_resolution_of_identity, random_simplex_floored,
    random_weight_function, random_weight_function_matching, trial_rng, trial_seed,
    DoublyStochasticMatrix, WeightFunction, THM28_DEFAULT_BUDGET,
};
use crate::matrix::{HermitianMatrix, ToleranceConfig};
use crate::scalar::ScalarFunction;
use crate::suites::checks::{
    check_cor_2_11, check_cor_2_4, check_cor_2_5, check_cor_2_6, check_entropy_duality,
    check_furuta_e8, check_hanp_jensen, check_jensen_refinement, check_kl_scalar,
    check_natural_subadditivity, check_theorem_lower, check_theorem_upper, check_thm_2_10,
    check_two_operator_bounds, CheckOutcome, JensenContext,
};
use crate::suites::report::{SlackReport, SuiteSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    ThmUpper,
    ThmLower,
    FurutaE8,
    TwoOperator,
    Cor24,
    Cor25,
    Cor26,
    Cor211,
    Kl,
    Duality,
    Subadd,
    Hanp,
    Jensen,
    Thm210,
}

impl SuiteId {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::ThmUpper => "thm-upper",
            SuiteId::ThmLower => "thm-lower",
            SuiteId::FurutaE8 => "furuta-e8",
            SuiteId::TwoOperator => "thm-e111",
            SuiteId::Cor24 => "cor-2.4",
            SuiteId::Cor25 => "cor-2.5",
            SuiteId::Cor26 => "cor-2.6",
            SuiteId::Cor211 => "cor-2.11",
            SuiteId::Kl => "kl",
            SuiteId::Duality => "duality",
            SuiteId::Subadd => "subadd",
            SuiteId::Hanp => "hanp",
            SuiteId::Jensen => "jensen",
            SuiteId::Thm210 => "thm-2.10",
        }
    }

    pub fn all() -> &'static [SuiteId] {
        &[
            SuiteId::ThmUpper,
            SuiteId::ThmLower,
            SuiteId::FurutaE8,
            SuiteId::TwoOperator,
            SuiteId::Cor24,
            SuiteId::Cor25,
            SuiteId::Cor26,
            SuiteId::Cor211,
            SuiteId::Kl,
            SuiteId::Duality,
            SuiteId::Subadd,
            SuiteId::Hanp,
            SuiteId::Jensen,
            SuiteId::Thm210,
        ]
    }

    /// One-line description for `check --list`.
    pub fn describe(&self) -> &'static str {
        match self {
            SuiteId::ThmUpper => "upper entropy bound for resolutions of identity (p in [0,1])",
            SuiteId::ThmLower => "lower entropy bound for resolutions of identity (p in [2,3])",
            SuiteId::FurutaE8 => "two-sided log-entropy chain under a power-mean gate",
            SuiteId::TwoOperator => "two-operator entropy bounds under spectral-order hypotheses",
            SuiteId::Cor24 => "entropy bounds at p = 1 and p = 0",
            SuiteId::Cor25 => "log of inverse sum vs mean log bound",
            SuiteId::Cor26 => "operator entropy bounded by log n",
            SuiteId::Cor211 => "entropy refinement through doubly stochastic mixing",
            SuiteId::Kl => "scalar Kullback-Leibler positivity",
            SuiteId::Duality => "entropy duality identity S_q(A|B) = -S_{1-q}(B|A)",
            SuiteId::Subadd => "subadditivity of the natural power mean",
            SuiteId::Hanp => "operator Jensen inequality for contraction families",
            SuiteId::Jensen => "refined weighted Jensen inequality",
            SuiteId::Thm210 => "interpolated Jensen refinement and its concavity",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::all()
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Full parameterization of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    pub trials: u64,
    pub dim: usize,
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub t0: f64,
    pub function: String,
    pub map_kind: String,
    pub master_seed: u64,
    pub tol: ToleranceConfig,
}

impl SuiteConfig {
    pub fn new(suite: SuiteId) -> Self {
        let (p, q, function) = match suite {
            SuiteId::ThmLower => (2.5, 0.0, "pow_0.5"),
            SuiteId::TwoOperator => (0.5, 0.0, "pow_0.5"),
            SuiteId::ThmUpper | SuiteId::Cor24 => (0.5, 0.0, "pow_0.5"),
            SuiteId::FurutaE8 => (0.5, 0.0, "log"),
            SuiteId::Duality => (0.0, 0.5, "log"),
            SuiteId::Subadd => (0.0, 0.5, "log"),
            SuiteId::Hanp | SuiteId::Jensen | SuiteId::Thm210 => (0.0, 0.0, "pow_0.5"),
            _ => (0.0, 0.0, "log"),
        };
        SuiteConfig {
            suite,
            trials: 100,
            dim: 3,
            n: 2,
            p,
            q,
            t0: 1.0,
            function: function.to_string(),
            map_kind: "identity".to_string(),
            master_seed: 0,
            tol: ToleranceConfig::default(),
        }
    }

    pub fn function(&self) -> Result<ScalarFunction> {
        ScalarFunction::lookup(&self.function)
    }

    /// Compact parameter string recorded on every report.
    pub fn params_string(&self) -> String {
        let mut parts = vec![format!("dim={}", self.dim)];
        match self.suite {
            SuiteId::ThmUpper | SuiteId::ThmLower => parts.extend([
                format!("n={}", self.n),
                format!("p={}", self.p),
                format!("f={}", self.function),
                format!("t0={}", self.t0),
            ]),
            SuiteId::FurutaE8 => parts.extend([
                format!("n={}", self.n),
                format!("p={}", self.p),
                format!("t0={}", self.t0),
            ]),
            SuiteId::TwoOperator => parts.extend([
                format!("p={}", self.p),
                format!("f={}", self.function),
                format!("t0={}", self.t0),
            ]),
            SuiteId::Cor24 => {
                parts.extend([format!("n={}", self.n), format!("f={}", self.function)])
            }
            SuiteId::Cor25 | SuiteId::Cor26 | SuiteId::Kl => parts.push(format!("n={}", self.n)),
            SuiteId::Cor211 => parts.extend([format!("n={}", self.n), format!("t={}", self.q)]),
            SuiteId::Duality | SuiteId::Subadd => parts.push(format!("q={}", self.q)),
            SuiteId::Hanp => parts.extend([
                format!("n={}", self.n),
                format!("f={}", self.function),
                format!("t0={}", self.t0),
            ]),
            SuiteId::Jensen | SuiteId::Thm210 => parts.extend([
                format!("n={}", self.n),
                format!("f={}", self.function),
                format!("phi={}", self.map_kind),
            ]),
        }
        parts.join(" ")
    }
}

/// Everything needed to evaluate (or perturb) one trial.
#[derive(Debug, Clone)]
pub enum TrialInstance {
    ResolutionPair {
        a: OperatorTuple,
        b: OperatorTuple,
    },
    Resolution {
        a: OperatorTuple,
    },
    GatedTuples {
        a: Vec<HermitianMatrix>,
        b: Vec<HermitianMatrix>,
    },
    Pair {
        a: HermitianMatrix,
        b: HermitianMatrix,
    },
    TuplePair {
        a: Vec<HermitianMatrix>,
        b: Vec<HermitianMatrix>,
    },
    ScalarPair {
        a: Vec<f64>,
        b: Vec<f64>,
    },
    ResolutionStoch {
        a: OperatorTuple,
        bmat: DoublyStochasticMatrix,
        cmat: DoublyStochasticMatrix,
    },
    Contractions {
        cs: Vec<DMatrix<Complex64>>,
        xs: Vec<HermitianMatrix>,
    },
    Weighted {
        omega1: WeightFunction,
        omega2: Option<WeightFunction>,
        phi: PositiveMapDescriptor,
        xs: Vec<HermitianMatrix>,
    },
}

/// Scales paired tuples so that `sum_j A_j nat_p B_j` has top eigenvalue
/// `target`; the natural power mean is jointly homogeneous of degree one.
pub(crate) fn rescale_gate(
    a: &mut [HermitianMatrix],
    b: &mut [HermitianMatrix],
    p: f64,
    target: f64,
    tol: &ToleranceConfig,
) -> Result<()> {
    let dim = a[0].dim();
    let mut gate = HermitianMatrix::zeros(dim);
    for (aj, bj) in a.iter().zip(b.iter()) {
        gate = gate.add(&PairKernel::new(aj, bj, tol)?.power_mean(p, tol)?)?;
    }
    let top = gate.max_eigenvalue()?;
    let s = target / top;
    for m in a.iter_mut() {
        *m = m.scale(s);
    }
    for m in b.iter_mut() {
        *m = m.scale(s);
    }
    Ok(())
}

pub fn generate_instance(cfg: &SuiteConfig, trial_index: u64) -> Result<TrialInstance> {
    let mut rng = trial_rng(cfg.master_seed, cfg.suite.as_str(), trial_index);
    let tol = &cfg.tol;
    match cfg.suite {
        SuiteId::ThmUpper | SuiteId::ThmLower | SuiteId::Cor24 => Ok(TrialInstance::ResolutionPair {
            a: random_resolution_of_identity(cfg.n, cfg.dim, &mut rng, tol)?,
            b: random_resolution_of_identity(cfg.n, cfg.dim, &mut rng, tol)?,
        }),
        SuiteId::FurutaE8 => {
            let mut a: Vec<HermitianMatrix> = (0..cfg.n)
                .map(|_| random_hpd(cfg.dim, (0.5, 2.0), &mut rng))
                .collect();
            let mut b: Vec<HermitianMatrix> = (0..cfg.n)
                .map(|_| random_hpd(cfg.dim, (0.5, 2.0), &mut rng))
                .collect();
            rescale_gate(&mut a, &mut b, cfg.p, 0.9, tol)?;
            Ok(TrialInstance::GatedTuples { a, b })
        }
        SuiteId::TwoOperator => {
            let (a, b, _) = generate_thm28_pair(cfg.dim, cfg.p, &mut rng, tol, THM28_DEFAULT_BUDGET)?;
            Ok(TrialInstance::Pair { a, b })
        }
        SuiteId::Cor25 | SuiteId::Cor26 => Ok(TrialInstance::Resolution {
            a: random_resolution_of_identity(cfg.n, cfg.dim, &mut rng, tol)?,
        }),
        SuiteId::Cor211 => Ok(TrialInstance::ResolutionStoch {
            a: random_resolution_of_identity(cfg.n, cfg.dim, &mut rng, tol)?,
            bmat: random_doubly_stochastic(cfg.n, cfg.n + 1, &mut rng),
            cmat: random_doubly_stochastic(cfg.n, cfg.n + 1, &mut rng),
        }),
        SuiteId::Kl => Ok(TrialInstance::ScalarPair {
            a: random_simplex_floored(cfg.n, 1e-3 / cfg.n as f64, &mut rng),
            b: random_simplex_floored(cfg.n, 1e-3 / cfg.n as f64, &mut rng),
        }),
        SuiteId::Duality => Ok(TrialInstance::Pair {
            a: random_hpd(cfg.dim, (0.3, 3.0), &mut rng),
            b: random_hpd(cfg.dim, (0.3, 3.0), &mut rng),
        }),
        SuiteId::Subadd => Ok(TrialInstance::TuplePair {
            a: (0..cfg.n)
                .map(|_| random_hpd(cfg.dim, (0.3, 3.0), &mut rng))
                .collect(),
            b: (0..cfg.n)
                .map(|_| random_hpd(cfg.dim, (0.3, 3.0), &mut rng))
                .collect(),
        }),
        SuiteId::Hanp => Ok(TrialInstance::Contractions {
            cs: random_contraction_set(cfg.n, cfg.dim, &mut rng),
            xs: (0..cfg.n)
                .map(|_| random_hpd(cfg.dim, (0.5, 2.0), &mut rng))
                .collect(),
        }),
        SuiteId::Jensen | SuiteId::Thm210 => {
            let omega1 = random_weight_function(cfg.n, cfg.n, &mut rng)?;
            let omega2 = if cfg.suite == SuiteId::Thm210 {
                Some(random_weight_function_matching(&omega1, &mut rng)?)
            } else {
                None
            };
            let dim_out = match cfg.map_kind.as_str() {
                "compression" => cfg.dim.saturating_sub(1).max(1),
                _ => cfg.dim,
            };
            let phi = random_positive_map(&cfg.map_kind, cfg.dim, dim_out, 2, &mut rng)?;
            let xs = (0..cfg.n)
                .map(|_| random_hpd(cfg.dim, (0.5, 2.0), &mut rng))
                .collect();
            Ok(TrialInstance::Weighted {
                omega1,
                omega2,
                phi,
                xs,
            })
        }
    }
}

const T_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const ETA_GRID: [f64; 2] = [0.25, 0.5];

pub fn evaluate_instance(cfg: &SuiteConfig, instance: &TrialInstance) -> Result<CheckOutcome> {
    let tol = &cfg.tol;
    match (cfg.suite, instance) {
        (SuiteId::ThmUpper, TrialInstance::ResolutionPair { a, b }) => {
            check_theorem_upper(a, b, cfg.p, &cfg.function()?, cfg.t0, tol)
        }
        (SuiteId::ThmLower, TrialInstance::ResolutionPair { a, b }) => {
            check_theorem_lower(a, b, cfg.p, &cfg.function()?, cfg.t0, tol)
        }
        (SuiteId::Cor24, TrialInstance::ResolutionPair { a, b }) => {
            check_cor_2_4(a, b, &cfg.function()?, tol)
        }
        (SuiteId::FurutaE8, TrialInstance::GatedTuples { a, b }) => {
            check_furuta_e8(a, b, cfg.p, cfg.t0, tol)
        }
        (SuiteId::TwoOperator, TrialInstance::Pair { a, b }) => {
            check_two_operator_bounds(a, b, cfg.p, &cfg.function()?, cfg.t0, tol)
        }
        (SuiteId::Cor25, TrialInstance::Resolution { a }) => check_cor_2_5(a, tol),
        (SuiteId::Cor26, TrialInstance::Resolution { a }) => check_cor_2_6(a, tol),
        (SuiteId::Cor211, TrialInstance::ResolutionStoch { a, bmat, cmat }) => {
            check_cor_2_11(a, bmat, cmat, cfg.q, tol)
        }
        (SuiteId::Kl, TrialInstance::ScalarPair { a, b }) => check_kl_scalar(a, b),
        (SuiteId::Duality, TrialInstance::Pair { a, b }) => check_entropy_duality(a, b, cfg.q, tol),
        (SuiteId::Subadd, TrialInstance::TuplePair { a, b }) => {
            check_natural_subadditivity(a, b, cfg.q, tol)
        }
        (SuiteId::Hanp, TrialInstance::Contractions { cs, xs }) => {
            check_hanp_jensen(cs, xs, cfg.t0, &cfg.function()?, tol)
        }
        (SuiteId::Jensen, TrialInstance::Weighted { omega1, phi, xs, .. }) => {
            let f = cfg.function()?;
            let ctx = JensenContext::new(&omega1.lambda, &omega1.mu, phi, xs, &f, tol)?;
            check_jensen_refinement(&ctx, omega1, tol)
        }
        (
            SuiteId::Thm210,
            TrialInstance::Weighted {
                omega1,
                omega2: Some(omega2),
                phi,
                xs,
            },
        ) => {
            let f = cfg.function()?;
            let ctx = JensenContext::new(&omega1.lambda, &omega1.mu, phi, xs, &f, tol)?;
            check_thm_2_10(&ctx, omega1, omega2, &T_GRID, &ETA_GRID, tol)
        }
        _ => Err(Error::InvalidKind(format!(
            "instance shape does not match suite {}",
            cfg.suite
        ))),
    }
}

/// Converts one check outcome into per-slack reports. Multi-slack checks
/// suffix the suite id with the slack label.
pub fn outcome_to_reports(
    cfg: &SuiteConfig,
    trial_index: u64,
    instance_seed: u64,
    outcome: &CheckOutcome,
) -> Vec<SlackReport> {
    let params = Some(cfg.params_string());
    if outcome.slacks.is_empty() {
        let detail = outcome
            .detail
            .clone()
            .unwrap_or_else(|| "hypotheses not satisfied".to_string());
        return vec![SlackReport::hypothesis_unmet(
            cfg.suite.as_str().to_string(),
            trial_index,
            instance_seed,
            detail,
        )
        .with_params(params)];
    }
    outcome
        .slacks
        .iter()
        .map(|ls| {
            let suite_id = if ls.label.is_empty() {
                cfg.suite.as_str().to_string()
            } else {
                format!("{}:{}", cfg.suite, ls.label)
            };
            let r = if ls.equality {
                SlackReport::from_residual(
                    suite_id,
                    trial_index,
                    instance_seed,
                    outcome.hypothesis_satisfied,
                    ls.slack.frobenius_norm(),
                    outcome.scale,
                    &cfg.tol,
                )
            } else {
                SlackReport::from_slack(
                    suite_id,
                    trial_index,
                    instance_seed,
                    outcome.hypothesis_satisfied,
                    &ls.slack,
                    outcome.scale,
                    &cfg.tol,
                )
            };
            r.with_params(params.clone())
        })
        .collect()
}

/// Generates, evaluates and reports a single trial; errors become records,
/// never panics.
pub fn run_trial(cfg: &SuiteConfig, trial_index: u64) -> Vec<SlackReport> {
    let instance_seed = trial_seed(cfg.master_seed, cfg.suite.as_str(), trial_index);
    let base = cfg.suite.as_str().to_string();
    let params = Some(cfg.params_string());
    let outcome = generate_instance(cfg, trial_index).and_then(|i| evaluate_instance(cfg, &i));
    match outcome {
        Ok(outcome) => outcome_to_reports(cfg, trial_index, instance_seed, &outcome),
        Err(Error::HypothesisUnmet(msg)) => {
            vec![SlackReport::hypothesis_unmet(base, trial_index, instance_seed, msg)
                .with_params(params)]
        }
        Err(e) => {
            vec![SlackReport::error(base, trial_index, instance_seed, e.to_string())
                .with_params(params)]
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_id: String,
    pub params: String,
    pub master_seed: u64,
    pub records: Vec<SlackReport>,
    pub summary: SuiteSummary,
}

/// Runs all trials of a suite in parallel; record order depends only on the
/// trial index, never on scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let records: Vec<SlackReport> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let summary = SuiteSummary::aggregate(
        cfg.suite.as_str().to_string(),
        Some(cfg.params_string()),
        cfg.master_seed,
        cfg.trials,
        &records,
    );
    SuiteReport {
        suite_id: cfg.suite.as_str().to_string(),
        params: cfg.params_string(),
        master_seed: cfg.master_seed,
        records,
        summary,
    }
}

/// Default parameter grid for the full battery (`check --all`).
pub fn battery_configs(master_seed: u64, trials: u64) -> Vec<SuiteConfig> {
    let mut out = Vec::new();
    let mut push = |suite: SuiteId, edit: &dyn Fn(&mut SuiteConfig)| {
        let mut cfg = SuiteConfig::new(suite);
        cfg.master_seed = master_seed;
        cfg.trials = trials;
        edit(&mut cfg);
        out.push(cfg);
    };

    let fns = ["pow_0.5", "ratio", "log1p"];
    for (i, &p) in [0.0, 0.25, 0.5, 0.75, 1.0].iter().enumerate() {
        for (j, f) in fns.iter().enumerate() {
            for (k, &t0) in [0.1, 1.0, 10.0].iter().enumerate() {
                push(SuiteId::ThmUpper, &|cfg| {
                    cfg.p = p;
                    cfg.function = f.to_string();
                    cfg.t0 = t0;
                    cfg.dim = 2 + (i + j + k) % 4;
                    cfg.n = 2 + (i + k) % 2;
                });
            }
        }
    }
    for (i, &p) in [2.0, 2.5, 3.0].iter().enumerate() {
        for (j, f) in fns.iter().enumerate() {
            push(SuiteId::ThmLower, &|cfg| {
                cfg.p = p;
                cfg.function = f.to_string();
                cfg.dim = 2 + (i + j) % 4;
                cfg.n = 2 + j % 2;
            });
        }
    }
    for (i, &p) in [0.0, 0.25, 0.5, 0.75, 1.0].iter().enumerate() {
        for (k, &t0) in [0.5, 1.0, 4.0].iter().enumerate() {
            push(SuiteId::FurutaE8, &|cfg| {
                cfg.p = p;
                cfg.t0 = t0;
                cfg.dim = 2 + (i + k) % 4;
                cfg.n = 2 + i % 2;
            });
        }
    }
    for (i, &p) in [0.0, 0.5, 1.0].iter().enumerate() {
        push(SuiteId::TwoOperator, &|cfg| {
            cfg.p = p;
            cfg.dim = 2 + i;
        });
    }
    for f in ["pow_0.5", "ratio"] {
        push(SuiteId::Cor24, &|cfg| {
            cfg.function = f.to_string();
            cfg.dim = 3;
            cfg.n = 3;
        });
    }
    for suite in [SuiteId::Cor25, SuiteId::Cor26] {
        for n in [2usize, 4] {
            push(suite, &|cfg| {
                cfg.n = n;
                cfg.dim = 3;
            });
        }
    }
    for &t in &[0.0, 0.5, 1.0] {
        push(SuiteId::Cor211, &|cfg| {
            cfg.q = t;
            cfg.n = 3;
            cfg.dim = 3;
        });
    }
    push(SuiteId::Kl, &|cfg| cfg.n = 5);
    for &q in &[-1.0, 0.0, 0.3, 0.5, 1.0, 2.0] {
        push(SuiteId::Duality, &|cfg| cfg.q = q);
    }
    for &q in &[0.0, 0.25, 0.5, 0.75, 1.0] {
        push(SuiteId::Subadd, &|cfg| cfg.q = q);
    }
    for f in ["log", "pow_0.5"] {
        push(SuiteId::Hanp, &|cfg| {
            cfg.function = f.to_string();
            cfg.n = 3;
        });
    }
    for kind in ["identity", "depolarizing", "compression", "kraus"] {
        push(SuiteId::Jensen, &|cfg| {
            cfg.map_kind = kind.to_string();
            cfg.n = 3;
            cfg.dim = 3;
        });
    }
    push(SuiteId::Thm210, &|cfg| {
        cfg.n = 3;
        cfg.dim = 2;
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_id_round_trip() {
        for id in SuiteId::all() {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), *id);
        }
        assert!(matches!(
            "no-such-suite".parse::<SuiteId>(),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn every_suite_runs_clean_on_defaults() {
        for id in SuiteId::all() {
            let mut cfg = SuiteConfig::new(*id);
            cfg.trials = 5;
            cfg.master_seed = 7;
            let report = run_suite(&cfg);
            assert_eq!(report.summary.fail, 0, "suite {id} had failures");
            assert_eq!(report.summary.error, 0, "suite {id} had errors");
            assert!(report.summary.pass > 0, "suite {id} produced no passes");
        }
    }

    #[test]
    fn records_are_deterministic() {
        let mut cfg = SuiteConfig::new(SuiteId::ThmUpper);
        cfg.trials = 8;
        cfg.master_seed = 123;
        let a = run_suite(&cfg);
        let b = run_suite(&cfg);
        let ja = serde_json::to_string(&a.records).unwrap();
        let jb = serde_json::to_string(&b.records).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn battery_covers_every_suite() {
        let configs = battery_configs(1, 2);
        for id in SuiteId::all() {
            assert!(configs.iter().any(|c| c.suite == *id), "missing {id}");
        }
    }
}
