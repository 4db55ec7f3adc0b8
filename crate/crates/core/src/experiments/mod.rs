//! Monte Carlo experiments and deterministic check suites.
//!
//! Every experiment takes an [`ExperimentConfig`] and returns an
//! [`ExperimentReport`]. Replica `r` at size `n` always draws from the same
//! random stream, so a report depends only on its config, never on the
//! number of worker threads.

pub mod burke;
pub mod config;
pub mod crossing;
pub mod gibbs;
pub mod kpz;
pub mod report;
pub mod runner;
pub mod stats;
pub mod suites;
pub mod verdicts;
pub mod walk;

pub use burke::{burke_default_config, run_burke_suite, BURKE};
pub use config::{parse_sizes, ExperimentConfig};
pub use crossing::{crossing_default_config, run_crossing_decay, sup_crossing_probability, CROSSING_DECAY};
pub use gibbs::{gibbs_default_config, run_gibbs_consistency, GIBBS};
pub use kpz::{exit_default_config, kpz_default_config, run_exit_tail, run_kpz_wandering, EXIT_TAIL, KPZ_WANDERING};
pub use report::{ExperimentReport, FitRecord, ReplicaTable, SizeStats, TestRecord, Verdict, SCHEMA_VERSION};
pub use runner::{replica_stream, run_replicas};
pub use suites::{
    couplings_default_config, identities_default_config, inequalities_default_config, moments_default_config,
    run_coupling_suite, run_identity_suite, run_inequality_suite, run_moment_suite, COUPLINGS, IDENTITIES, INEQUALITIES,
    MOMENTS,
};
pub use walk::{run_walk_maximum, walk_default_config, WALK_MAX};

use crate::error::{Error, Result};

/// A named experiment with its default configuration.
#[derive(Clone, Copy)]
pub struct Experiment {
    pub name: &'static str,
    pub default_config: fn() -> ExperimentConfig,
    pub run: fn(&ExperimentConfig) -> Result<ExperimentReport>,
}

/// The Monte Carlo experiments, in the order `all` runs them.
pub const EXPERIMENTS: [Experiment; 6] = [
    Experiment { name: KPZ_WANDERING, default_config: kpz_default_config, run: run_kpz_wandering },
    Experiment { name: EXIT_TAIL, default_config: exit_default_config, run: run_exit_tail },
    Experiment { name: CROSSING_DECAY, default_config: crossing_default_config, run: run_crossing_decay },
    Experiment { name: BURKE, default_config: burke_default_config, run: run_burke_suite },
    Experiment { name: GIBBS, default_config: gibbs_default_config, run: run_gibbs_consistency },
    Experiment { name: WALK_MAX, default_config: walk_default_config, run: run_walk_maximum },
];

/// The deterministic and moment check suites.
pub const SUITES: [Experiment; 4] = [
    Experiment { name: IDENTITIES, default_config: identities_default_config, run: run_identity_suite },
    Experiment { name: INEQUALITIES, default_config: inequalities_default_config, run: run_inequality_suite },
    Experiment { name: COUPLINGS, default_config: couplings_default_config, run: run_coupling_suite },
    Experiment { name: MOMENTS, default_config: moments_default_config, run: run_moment_suite },
];

pub fn find_experiment(name: &str) -> Result<Experiment> {
    EXPERIMENTS
        .iter()
        .chain(SUITES.iter())
        .find(|e| e.name == name)
        .copied()
        .ok_or_else(|| Error::Config(format!("unknown experiment '{name}'")))
}

/// Runs `cfg` with the experiment named by `cfg.name`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    (find_experiment(&cfg.name)?.run)(cfg)
}
