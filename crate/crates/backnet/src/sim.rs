//! Reproducible Monte Carlo comparison of the planners.
//!
//! Instances are generated from a counter-based generator (ChaCha8):
//! the experiment seed keys the generator and each `(M, trial)` cell gets
//! its own stream, so any trial can be regenerated in isolation and the
//! placements for a given `(M, trial)` are identical across `K` values —
//! cost comparisons across `K` then see the same topologies. Trials run
//! in parallel and are sorted before aggregation, so results are
//! schedule-independent and repeated runs are byte-identical.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::hybrid::hybrid_planning;
use crate::model::instance::ProblemInstance;
use crate::model::links::{link_costs, LinkModels};
use crate::model::topology::{BaseStation, Topology};
use crate::money::Money;
use crate::of::of_planning;
use crate::oracle::{brute_force_original_with_cap, DEFAULT_ORIGINAL_CAP};

/// Identity of the random generator, recorded in CSV headers.
pub const GENERATOR_ID: &str = "chacha8";

/// Minimum distance between any two generated stations; placements closer
/// than this are re-drawn because near-zero fiber prices distort
/// aggregates.
pub const MIN_SEPARATION_M: f64 = 1.0;

fn default_area_side_m() -> f64 {
    5_000.0
}

fn default_m_values() -> Vec<usize> {
    vec![5, 6, 7]
}

fn default_k_values() -> Vec<usize> {
    vec![1, 2, 3]
}

fn default_trials() -> usize {
    100
}

fn default_seed() -> u64 {
    42
}

fn default_alpha() -> f64 {
    0.95
}

fn default_d_t() -> f64 {
    1.0
}

fn default_oracle_cap() -> usize {
    DEFAULT_ORIGINAL_CAP
}

/// Full description of one Monte Carlo experiment.
#[derive(Debug, Clone, Deserialize)]
pub struct ExperimentConfig {
    /// Side of the square deployment area, in meters.
    #[serde(default = "default_area_side_m")]
    pub area_side_m: f64,
    /// Station counts to sweep.
    #[serde(rename = "M_values", default = "default_m_values")]
    pub m_values: Vec<usize>,
    /// Redundancy degrees to sweep; cells with `K >= M` are skipped.
    #[serde(rename = "K_values", default = "default_k_values")]
    pub k_values: Vec<usize>,
    /// Trials per `(M, K)` cell.
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Experiment seed; everything else derives from it.
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Reliability threshold for every generated instance.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Target rate for every generated instance.
    #[serde(rename = "D_t", default = "default_d_t")]
    pub d_t: f64,
    /// Link technology models for every generated instance.
    #[serde(default)]
    pub models: LinkModels,
    /// Also run the exhaustive oracle where the cap allows.
    #[serde(default)]
    pub oracle_enabled: bool,
    /// Station cap for oracle runs.
    #[serde(default = "default_oracle_cap")]
    pub oracle_cap_m: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            area_side_m: default_area_side_m(),
            m_values: default_m_values(),
            k_values: default_k_values(),
            trials: default_trials(),
            seed: default_seed(),
            alpha: default_alpha(),
            d_t: default_d_t(),
            models: LinkModels::default(),
            oracle_enabled: false,
            oracle_cap_m: default_oracle_cap(),
        }
    }
}

impl ExperimentConfig {
    /// Parses a config from JSON; missing fields take defaults.
    pub fn from_json(json: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(json)?;
        config.validate()?;
        Ok(config)
    }

    /// Checks the sweep makes sense: positive area, at least one trial,
    /// station counts at least 2, degrees at least 1, valid constraint
    /// parameters, and at least one runnable `(M, K)` cell.
    pub fn validate(&self) -> Result<()> {
        if !self.area_side_m.is_finite() || self.area_side_m <= 0.0 {
            return Err(Error::InvalidInstance(format!(
                "area side must be positive, got {}",
                self.area_side_m
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInstance("at least one trial required".into()));
        }
        if self.m_values.is_empty() || self.m_values.iter().any(|&m| m < 2) {
            return Err(Error::InvalidInstance(
                "M values must be non-empty and all at least 2".into(),
            ));
        }
        if self.k_values.is_empty() || self.k_values.contains(&0) {
            return Err(Error::InvalidInstance(
                "K values must be non-empty and all at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.alpha) || !self.alpha.is_finite() {
            return Err(Error::InvalidInstance(format!(
                "alpha must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        if !self.d_t.is_finite() || self.d_t <= 0.0 {
            return Err(Error::InvalidInstance(format!(
                "target rate must be positive, got {}",
                self.d_t
            )));
        }
        self.models.validate()?;
        if self.cells().is_empty() {
            return Err(Error::InvalidInstance(
                "no runnable (M, K) cell: every K ≥ its M".into(),
            ));
        }
        Ok(())
    }

    /// All runnable `(M, K)` cells in sweep order.
    fn cells(&self) -> Vec<(usize, usize)> {
        self.m_values
            .iter()
            .flat_map(|&m| {
                self.k_values
                    .iter()
                    .filter(move |&&k| k < m)
                    .map(move |&k| (m, k))
            })
            .collect()
    }
}

/// Outcome of one `(M, K, trial)` run.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub m: usize,
    pub k: usize,
    pub trial: usize,
    /// Fiber-only planner cost; `None` when that planner failed.
    pub of_cost: Option<Money>,
    /// Hybrid planner cost; `None` when that planner failed.
    pub hybrid_cost: Option<Money>,
    /// Oracle cost; `None` when disabled, over the cap, or failed.
    pub oracle_cost: Option<Money>,
    /// Share of fiber links among the hybrid plan's links.
    pub of_fraction_hybrid: Option<f64>,
    /// Share of fiber links among the fiber plan's links (1.0 by
    /// definition when the plan exists; kept for symmetric reporting).
    pub of_fraction_of: Option<f64>,
    /// Wall-clock time of the whole trial, in milliseconds.
    pub runtime_ms: f64,
    pub of_runtime_ms: Option<f64>,
    pub hybrid_runtime_ms: Option<f64>,
    pub oracle_runtime_ms: Option<f64>,
    /// First planner error encountered, if any.
    pub error: Option<String>,
}

/// Per-cell arithmetic means over the successful trials.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub m: usize,
    pub k: usize,
    /// Mean fiber-only cost in dollars.
    pub mean_of_cost: f64,
    /// Mean hybrid cost in dollars.
    pub mean_hybrid_cost: f64,
    /// Mean fiber-link share of the hybrid plan.
    pub mean_of_fraction: f64,
    /// Trials contributing to the means.
    pub samples: usize,
}

/// Everything an experiment produced.
#[derive(Debug, Clone)]
pub struct ExperimentResults {
    pub seed: u64,
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<AggregateRow>,
}

/// Generates the instance of one `(M, K, trial)` cell: `M` stations
/// placed uniformly in the square, re-drawn until every pair is at least
/// [`MIN_SEPARATION_M`] apart. Deterministic in `(seed, M, K, trial)`;
/// placements do not depend on `K`, so the same trial index compares the
/// planners on the same topology across `K` values.
pub fn generate_instance(
    config: &ExperimentConfig,
    m: usize,
    k: usize,
    trial: usize,
) -> Result<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(((m as u64) << 32) | trial as u64);
    let side = config.area_side_m;
    let stations = loop {
        let stations: Vec<BaseStation> = (0..m)
            .map(|id| BaseStation {
                id,
                x_m: rng.random::<f64>() * side,
                y_m: rng.random::<f64>() * side,
            })
            .collect();
        let well_separated = crate::model::topology::index_pairs(m)
            .all(|(i, j)| stations[i].distance_to(&stations[j]) >= MIN_SEPARATION_M);
        if well_separated {
            break stations;
        }
    };
    ProblemInstance::new(
        Topology::new(stations)?,
        k,
        config.alpha,
        config.d_t,
        config.models,
    )
}

fn run_trial(config: &ExperimentConfig, m: usize, k: usize, trial: usize) -> TrialRecord {
    let started = std::time::Instant::now();
    let mut record = TrialRecord {
        m,
        k,
        trial,
        of_cost: None,
        hybrid_cost: None,
        oracle_cost: None,
        of_fraction_hybrid: None,
        of_fraction_of: None,
        runtime_ms: 0.0,
        of_runtime_ms: None,
        hybrid_runtime_ms: None,
        oracle_runtime_ms: None,
        error: None,
    };
    let note_error = |record: &mut TrialRecord, stage: &str, err: &Error| {
        if record.error.is_none() {
            record.error = Some(format!("{stage}: {err}"));
        }
    };

    match generate_instance(config, m, k, trial) {
        Ok(instance) => {
            let costs = link_costs(instance.topology(), instance.models());

            let of_started = std::time::Instant::now();
            match of_planning(&instance) {
                Ok(plan) => {
                    record.of_runtime_ms = Some(of_started.elapsed().as_secs_f64() * 1e3);
                    record.of_cost = Some(plan.cost(&costs));
                    record.of_fraction_of = Some(fiber_fraction(&plan));
                }
                Err(err) => note_error(&mut record, "of_planning", &err),
            }

            let hybrid_started = std::time::Instant::now();
            match hybrid_planning(&instance) {
                Ok(plan) => {
                    record.hybrid_runtime_ms = Some(hybrid_started.elapsed().as_secs_f64() * 1e3);
                    record.hybrid_cost = Some(plan.cost(&costs));
                    record.of_fraction_hybrid = Some(fiber_fraction(&plan));
                }
                Err(err) => note_error(&mut record, "hybrid_planning", &err),
            }

            if config.oracle_enabled && m <= config.oracle_cap_m {
                let oracle_started = std::time::Instant::now();
                match brute_force_original_with_cap(&instance, config.oracle_cap_m) {
                    Ok(result) => {
                        record.oracle_runtime_ms =
                            Some(oracle_started.elapsed().as_secs_f64() * 1e3);
                        record.oracle_cost = Some(result.cost);
                    }
                    Err(err) => note_error(&mut record, "oracle", &err),
                }
            }
        }
        Err(err) => note_error(&mut record, "generate_instance", &err),
    }
    record.runtime_ms = started.elapsed().as_secs_f64() * 1e3;
    record
}

fn fiber_fraction(plan: &crate::model::plan::Plan) -> f64 {
    let total = plan.edge_count();
    if total == 0 {
        return 0.0;
    }
    plan.of_links().len() as f64 / total as f64
}

/// Runs every `(M, K, trial)` cell of the config (in parallel), then
/// sorts records and computes per-cell means over the successful trials.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResults> {
    config.validate()?;
    let jobs: Vec<(usize, usize, usize)> = config
        .cells()
        .into_iter()
        .flat_map(|(m, k)| (0..config.trials).map(move |trial| (m, k, trial)))
        .collect();
    let mut records: Vec<TrialRecord> = jobs
        .par_iter()
        .map(|&(m, k, trial)| run_trial(config, m, k, trial))
        .collect();
    records.sort_by_key(|r| (r.m, r.k, r.trial));

    let mut aggregates = Vec::new();
    for (m, k) in config.cells() {
        let cell: Vec<&TrialRecord> = records
            .iter()
            .filter(|r| r.m == m && r.k == k && r.of_cost.is_some() && r.hybrid_cost.is_some())
            .collect();
        if cell.is_empty() {
            continue;
        }
        let n = cell.len();
        // Sum in exact cents, divide once: scheduling cannot perturb means.
        let of_total: i64 = cell.iter().map(|r| r.of_cost.unwrap().cents()).sum();
        let hybrid_total: i64 = cell.iter().map(|r| r.hybrid_cost.unwrap().cents()).sum();
        let fraction_total: f64 = cell
            .iter()
            .map(|r| r.of_fraction_hybrid.unwrap_or(0.0))
            .sum();
        aggregates.push(AggregateRow {
            m,
            k,
            mean_of_cost: of_total as f64 / (100.0 * n as f64),
            mean_hybrid_cost: hybrid_total as f64 / (100.0 * n as f64),
            mean_of_fraction: fraction_total / n as f64,
            samples: n,
        });
    }
    aggregates.sort_by_key(|row| (row.m, row.k));
    Ok(ExperimentResults {
        seed: config.seed,
        records,
        aggregates,
    })
}

fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

fn optional_money(value: Option<Money>) -> String {
    value.map(|v| v.to_decimal_string()).unwrap_or_default()
}

fn optional_float(value: Option<f64>, decimals: usize) -> String {
    value.map(|v| format!("{v:.decimals$}")).unwrap_or_default()
}

/// Renders the per-trial CSV (one row per `(M, K, trial)`).
pub fn trials_csv(results: &ExperimentResults) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# generator={GENERATOR_ID} seed={}", results.seed);
    let _ = writeln!(
        out,
        "M,K,trial,of_cost,hybrid_cost,oracle_cost,of_fraction_hybrid,runtime_ms,\
         of_fraction_of,of_runtime_ms,hybrid_runtime_ms,oracle_runtime_ms,error"
    );
    for r in &results.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.3},{},{},{},{},{}",
            r.m,
            r.k,
            r.trial,
            optional_money(r.of_cost),
            optional_money(r.hybrid_cost),
            optional_money(r.oracle_cost),
            optional_float(r.of_fraction_hybrid, 6),
            r.runtime_ms,
            optional_float(r.of_fraction_of, 6),
            optional_float(r.of_runtime_ms, 3),
            optional_float(r.hybrid_runtime_ms, 3),
            optional_float(r.oracle_runtime_ms, 3),
            csv_field(r.error.as_deref().unwrap_or("")),
        );
    }
    out
}

/// Renders the aggregate CSV (one row per `(M, K)` cell). Contains no
/// timing data, so repeated same-seed runs are byte-identical.
pub fn aggregate_csv(results: &ExperimentResults) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# generator={GENERATOR_ID} seed={}", results.seed);
    let _ = writeln!(out, "M,K,mean_of_cost,mean_hybrid_cost,mean_of_fraction");
    for row in &results.aggregates {
        let _ = writeln!(
            out,
            "{},{},{:.4},{:.4},{:.6}",
            row.m, row.k, row.mean_of_cost, row.mean_hybrid_cost, row.mean_of_fraction
        );
    }
    out
}

/// Writes `trials.csv` and `aggregate.csv` into `dir`, returning their
/// paths.
pub fn write_csv_files(results: &ExperimentResults, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir)?;
    let trials_path = dir.join("trials.csv");
    let aggregate_path = dir.join("aggregate.csv");
    std::fs::write(&trials_path, trials_csv(results))?;
    std::fs::write(&aggregate_path, aggregate_csv(results))?;
    Ok((trials_path, aggregate_path))
}
