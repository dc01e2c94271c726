//! Planning toolkit for resilient wireless backhaul networks.
//!
//! Given base-station positions and per-station resilience targets, the
//! toolkit designs minimum-cost backhaul topologies mixing two link
//! technologies: trenched optical fiber (priced per meter, fully reliable)
//! and hybrid RF/FSO radio links (flat price, reliability and rate decay
//! with distance). A valid plan must keep every station pair connected
//! through `K` link-disjoint paths and give every station its required
//! reliability and aggregate data rate.
//!
//! The crate provides:
//!
//! - [`model`]: domain types, link models, path-diversity and feasibility
//!   checking;
//! - [`of`]: the fiber-only planner built from `K` rounds of link-disjoint
//!   greedy cluster merging;
//! - [`hybrid`]: the two-technology planner that enumerates per-station
//!   link combinations and picks a consistent, cheapest selection via an
//!   exact maximum-weight clique search on a planning graph;
//! - [`oracle`]: exponential-time exhaustive baselines used to validate
//!   both planners on small instances;
//! - [`sim`]: a reproducible Monte Carlo harness comparing the planners
//!   over random topologies and writing CSV summaries.

pub mod error;
pub mod hybrid;
pub mod model;
pub mod money;
pub mod of;
pub mod oracle;
pub mod sim;

pub use error::{Error, Result};
pub use hybrid::{hybrid_planning, hybrid_planning_detailed, HybridOutcome};
pub use model::{
    check_feasibility, link_costs, min_path_diversity, node_rate, node_reliability, path_diversity,
    BaseStation, CostMatrices, FeasibilityReport, LinkChoice, LinkKind, LinkModels, Plan,
    ProblemInstance, ReliabilityPlateau, Topology, FEASIBILITY_TOL,
};
pub use money::Money;
pub use of::{augment_disjoint, of_planning, of_planning_trace};
pub use oracle::{brute_force_of, brute_force_original, redundancy_check, OracleResult};
