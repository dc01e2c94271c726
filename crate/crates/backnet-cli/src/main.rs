//! Command-line front-end for the backhaul planning toolkit.
//!
//! One subcommand per workflow: `plan` runs a planner on an instance file,
//! `validate` checks a plan against an instance, `oracle` compares both
//! planners against the exhaustive baseline, and `simulate` runs the Monte
//! Carlo harness. Machine-readable output (JSON or CSV) goes to stdout or
//! `--out`; human-readable progress goes to stderr. Verbosity is controlled
//! by the `BACKNET_LOG` environment variable (`error`, `info`, `debug`).
//!
//! Exit codes: 0 success (and, for `validate`, a feasible plan); 2 parse or
//! usage error; 3 infeasible; 4 internal consistency failure; 5 exhaustive
//! cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use backnet::model::plan::Plan;
use backnet::oracle::{brute_force_original_with_cap, DEFAULT_ORIGINAL_CAP};
use backnet::sim::{run_experiment, write_csv_files, ExperimentConfig};
use backnet::{
    check_feasibility, hybrid_planning_detailed, link_costs, of_planning, of_planning_trace, Error,
    FeasibilityReport, Money, ProblemInstance, Result,
};

#[derive(Parser)]
#[command(
    name = "backnet",
    version,
    about = "Minimum-cost resilient backhaul planning",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlannerChoice {
    /// Fiber-only planning by rounds of disjoint greedy augmentation.
    Of,
    /// Two-technology planning on top of the fiber planning.
    Hybrid,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a deployment plan for a problem instance.
    Plan {
        /// Problem instance JSON file.
        #[arg(long)]
        instance: PathBuf,
        /// Which planner to run.
        #[arg(long, value_enum, default_value_t = PlannerChoice::Hybrid)]
        planner: PlannerChoice,
        /// Write output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output encoding.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a plan against an instance, constraint by constraint.
    Validate {
        /// Problem instance JSON file.
        #[arg(long)]
        instance: PathBuf,
        /// Plan JSON file (e.g. the output of `plan`).
        #[arg(long)]
        plan: PathBuf,
        /// Write output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output encoding.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare both planners against the exhaustive baseline.
    Oracle {
        /// Problem instance JSON file.
        #[arg(long)]
        instance: PathBuf,
        /// Station cap for the exhaustive search.
        #[arg(long, default_value_t = DEFAULT_ORIGINAL_CAP)]
        caps: usize,
        /// Write output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output encoding.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the Monte Carlo experiment harness.
    Simulate {
        /// Experiment config JSON file; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for trials.csv and aggregate.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Encoding of the aggregate summary printed to stdout.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("BACKNET_LOG", "error"))
        .init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            // Failures still produce machine-readable output on stdout.
            println!(
                "{}",
                json!({ "error": { "kind": error_kind(&err), "message": err.to_string() } })
            );
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::InvalidInstance(_)
        | Error::InvalidPlan(_)
        | Error::InvalidQuery(_)
        | Error::Io(_) => 2,
        Error::Infeasible(_) | Error::InfeasibleAugmentation(_) => 3,
        Error::NoClique(_) | Error::InternalConsistency(_) => 4,
        Error::CapExceeded { .. } | Error::CombinatorialLimit { .. } => 5,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Parse(_) => "parse",
        Error::InvalidInstance(_) => "invalid_instance",
        Error::InvalidPlan(_) => "invalid_plan",
        Error::InvalidQuery(_) => "invalid_query",
        Error::Io(_) => "io",
        Error::Infeasible(_) => "infeasible",
        Error::InfeasibleAugmentation(_) => "infeasible_augmentation",
        Error::NoClique(_) => "no_clique",
        Error::InternalConsistency(_) => "internal_consistency",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::CombinatorialLimit { .. } => "combinatorial_limit",
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Plan {
            instance,
            planner,
            out,
            format,
        } => cmd_plan(&instance, planner, out.as_deref(), format),
        Command::Validate {
            instance,
            plan,
            out,
            format,
        } => cmd_validate(&instance, &plan, out.as_deref(), format),
        Command::Oracle {
            instance,
            caps,
            out,
            format,
        } => cmd_oracle(&instance, caps, out.as_deref(), format),
        Command::Simulate {
            config,
            seed,
            out,
            format,
        } => cmd_simulate(config.as_deref(), seed, &out, format),
    }
}

fn load_instance(path: &Path) -> Result<ProblemInstance> {
    ProblemInstance::from_json(&fs::read_to_string(path)?)
}

/// Writes the payload to `--out` when given, else to stdout.
fn emit(payload: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, payload)?,
        None => println!("{}", payload.trim_end()),
    }
    Ok(())
}

fn plan_value(plan: &Plan) -> Result<Value> {
    Ok(serde_json::from_str(&plan.to_json())?)
}

fn cmd_plan(
    instance_path: &Path,
    planner: PlannerChoice,
    out: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let instance = load_instance(instance_path)?;
    let costs = link_costs(instance.topology(), instance.models());
    let (plan, metadata) = match planner {
        PlannerChoice::Of => {
            let rounds = of_planning_trace(&instance)?;
            let plan = rounds.last().cloned().unwrap_or_else(|| {
                // M >= 2 always yields at least one round; M < 2 cannot
                // construct an instance, so this is unreachable in practice.
                Plan::empty(instance.m())
            });
            let metadata = json!({
                "planner": "of",
                "plan_cost": plan.cost(&costs).dollars(),
                "rounds": rounds.len(),
            });
            (plan, metadata)
        }
        PlannerChoice::Hybrid => {
            let outcome = hybrid_planning_detailed(&instance)?;
            let mut metadata = serde_json::to_value(&outcome.metadata)?;
            metadata
                .as_object_mut()
                .expect("metadata serializes to an object")
                .insert("planner".into(), json!("hybrid"));
            (outcome.plan, metadata)
        }
    };
    log::info!(
        "planned {} links for {} stations, cost {}",
        plan.edge_count(),
        instance.m(),
        plan.cost(&costs)
    );
    let payload = match format {
        Format::Json => {
            let body = json!({ "plan": plan_value(&plan)?, "metadata": metadata });
            serde_json::to_string_pretty(&body)? + "\n"
        }
        Format::Csv => {
            let mut rows = String::from("kind,station_a,station_b,cost\n");
            for (i, j) in plan.of_links() {
                rows += &format!("of,{i},{j},{}\n", costs.of(i, j).to_decimal_string());
            }
            for (i, j) in plan.hybrid_links() {
                rows += &format!(
                    "hybrid,{i},{j},{}\n",
                    costs.hybrid(i, j).to_decimal_string()
                );
            }
            rows
        }
    };
    emit(&payload, out)?;
    Ok(0)
}

fn cmd_validate(
    instance_path: &Path,
    plan_path: &Path,
    out: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let instance = load_instance(instance_path)?;
    // Accept both a bare plan document and the `plan` + `metadata` wrapper
    // that `backnet plan` emits, so plan output validates unmodified.
    let document: Value = serde_json::from_str(&fs::read_to_string(plan_path)?)?;
    let plan_node = document.get("plan").unwrap_or(&document);
    let plan = Plan::from_json(instance.m(), &plan_node.to_string())?;
    let report = check_feasibility(&plan, &instance)?;
    let payload = match format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => validate_csv(&report),
    };
    emit(&payload, out)?;
    if report.feasible {
        log::info!("plan is feasible");
        Ok(0)
    } else {
        eprintln!("error: plan violates at least one constraint");
        Ok(3)
    }
}

fn validate_csv(report: &FeasibilityReport) -> String {
    let mut rows = String::from("check,value\n");
    rows += &format!("exclusivity_ok,{}\n", report.exclusivity_ok);
    rows += &format!("connectivity_ok,{}\n", report.connectivity_ok);
    rows += &format!("min_path_diversity,{}\n", report.min_path_diversity);
    rows += &format!("required_diversity,{}\n", report.required_diversity);
    rows += &format!("reliability_ok,{}\n", report.reliability_ok);
    rows += &format!("rate_ok,{}\n", report.rate_ok);
    rows += &format!("feasible,{}\n", report.feasible);
    rows
}

fn gap_value(cost: Money, oracle: Money) -> Value {
    let absolute = (cost - oracle).dollars();
    let relative = if oracle.cents() > 0 {
        absolute / oracle.dollars()
    } else {
        0.0
    };
    json!({ "absolute": absolute, "relative": relative })
}

fn cmd_oracle(instance_path: &Path, cap: usize, out: Option<&Path>, format: Format) -> Result<u8> {
    let instance = load_instance(instance_path)?;
    let costs = link_costs(instance.topology(), instance.models());
    let oracle = brute_force_original_with_cap(&instance, cap)?;
    let hybrid_cost = hybrid_planning_detailed(&instance)?.plan.cost(&costs);
    let of_cost = of_planning(&instance)?.cost(&costs);
    log::info!(
        "oracle explored {} complete assignments; optimum {}",
        oracle.explored,
        oracle.cost
    );
    let payload = match format {
        Format::Json => {
            let body = json!({
                "oracle_cost": oracle.cost.dollars(),
                "hybrid_cost": hybrid_cost.dollars(),
                "of_cost": of_cost.dollars(),
                "gaps": {
                    "hybrid_vs_oracle": gap_value(hybrid_cost, oracle.cost),
                    "of_vs_oracle": gap_value(of_cost, oracle.cost),
                },
            });
            serde_json::to_string_pretty(&body)? + "\n"
        }
        Format::Csv => {
            let hybrid_abs = (hybrid_cost - oracle.cost).dollars();
            let of_abs = (of_cost - oracle.cost).dollars();
            let denom = oracle.cost.dollars();
            let mut rows = String::from("quantity,value\n");
            rows += &format!("oracle_cost,{}\n", oracle.cost.to_decimal_string());
            rows += &format!("hybrid_cost,{}\n", hybrid_cost.to_decimal_string());
            rows += &format!("of_cost,{}\n", of_cost.to_decimal_string());
            rows += &format!("hybrid_vs_oracle_absolute,{hybrid_abs:.2}\n");
            rows += &format!(
                "hybrid_vs_oracle_relative,{:.6}\n",
                if denom > 0.0 { hybrid_abs / denom } else { 0.0 }
            );
            rows += &format!("of_vs_oracle_absolute,{of_abs:.2}\n");
            rows += &format!(
                "of_vs_oracle_relative,{:.6}\n",
                if denom > 0.0 { of_abs / denom } else { 0.0 }
            );
            rows
        }
    };
    emit(&payload, out)?;
    Ok(0)
}

fn cmd_simulate(
    config_path: Option<&Path>,
    seed: Option<u64>,
    out: &Path,
    format: Format,
) -> Result<u8> {
    let mut config = match config_path {
        Some(path) => ExperimentConfig::from_json(&fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    config.validate()?;
    log::info!(
        "running {} trials per cell over M={:?}, K={:?}, seed {}",
        config.trials,
        config.m_values,
        config.k_values,
        config.seed
    );
    let results = run_experiment(&config)?;
    let (trials_path, aggregate_path) = write_csv_files(&results, out)?;

    let failures: Vec<&backnet::sim::TrialRecord> = results
        .records
        .iter()
        .filter(|r| r.error.is_some())
        .collect();
    eprintln!(
        "wrote {} and {}",
        trials_path.display(),
        aggregate_path.display()
    );
    eprintln!("   M   K  trials     mean OF cost mean hybrid cost  OF share");
    for row in &results.aggregates {
        eprintln!(
            "{:>4}{:>4}{:>8}{:>17.2}{:>17.2}{:>10.4}",
            row.m, row.k, row.samples, row.mean_of_cost, row.mean_hybrid_cost, row.mean_of_fraction
        );
    }
    if !failures.is_empty() {
        eprintln!(
            "warning: {} of {} trials failed; first failure: M={} K={} trial={} ({})",
            failures.len(),
            results.records.len(),
            failures[0].m,
            failures[0].k,
            failures[0].trial,
            failures[0].error.as_deref().unwrap_or("unknown"),
        );
    }

    match format {
        Format::Csv => print!("{}", backnet::sim::aggregate_csv(&results)),
        Format::Json => {
            let rows: Vec<Value> = results
                .aggregates
                .iter()
                .map(|row| {
                    json!({
                        "M": row.m,
                        "K": row.k,
                        "samples": row.samples,
                        "mean_of_cost": row.mean_of_cost,
                        "mean_hybrid_cost": row.mean_hybrid_cost,
                        "mean_of_fraction": row.mean_of_fraction,
                    })
                })
                .collect();
            let body = json!({
                "seed": results.seed,
                "failed_trials": failures.len(),
                "aggregates": rows,
            });
            println!("{}", serde_json::to_string_pretty(&body)?);
        }
    }
    Ok(0)
}
