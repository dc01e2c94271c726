//! Domain model: stations, link technologies, plans, and the constraint
//! machinery (path diversity, reliability, rate) shared by every planner.

pub mod connectivity;
pub mod feasibility;
pub mod instance;
pub mod links;
pub mod plan;
pub mod topology;

pub use connectivity::{min_path_diversity, path_diversity};
pub use feasibility::{
    check_feasibility, node_rate, node_reliability, FeasibilityReport, FEASIBILITY_TOL,
};
pub use instance::ProblemInstance;
pub use links::{link_costs, CostMatrices, LinkModels, ReliabilityPlateau};
pub use plan::{LinkChoice, LinkKind, Plan};
pub use topology::{index_pairs, BaseStation, Topology};
