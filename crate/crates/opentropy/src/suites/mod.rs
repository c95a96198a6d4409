//! Inequality suites: one check per inequality or identity, a seeded runner,
//! and an adversarial slack-minimization mode.

pub mod checks;
pub mod report;
pub mod runner;
pub mod search;

pub use checks::{CheckOutcome, LabeledSlack};
pub use report::{ReplayHandle, SlackReport, SuiteSummary, Verdict};
pub use runner::{
    battery_configs, evaluate_instance, generate_instance, run_suite, SuiteConfig, SuiteId,
    SuiteReport, TrialInstance,
};
pub use search::{adversarial_search, SearchConfig, WorstInstanceReport};





