//! A complete planning problem: stations, resilience and service targets,
//! and the link technology models.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::links::LinkModels;
use crate::model::topology::{BaseStation, Topology};

/// One backhaul planning problem.
///
/// A plan for the instance must keep every station pair connected by at
/// least `k` link-disjoint paths, give every station availability at least
/// `alpha`, and provision every station with aggregate rate at least `d_t`.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    topology: Topology,
    k: usize,
    alpha: f64,
    d_t: f64,
    models: LinkModels,
}

/// Serialized form of an instance.
#[derive(Serialize, Deserialize)]
struct InstanceJson {
    stations: Vec<BaseStation>,
    #[serde(rename = "K")]
    k: usize,
    alpha: f64,
    #[serde(rename = "D_t")]
    d_t: f64,
    #[serde(default)]
    models: LinkModels,
}

impl ProblemInstance {
    /// Validates and assembles an instance.
    ///
    /// Structural errors (empty topology, out-of-range `alpha`, bad model
    /// parameters, `k == 0`) are [`Error::InvalidInstance`]; a redundancy
    /// degree `k >= M` is well-formed but unsatisfiable, reported as
    /// [`Error::Infeasible`].
    pub fn new(
        topology: Topology,
        k: usize,
        alpha: f64,
        d_t: f64,
        models: LinkModels,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
            return Err(Error::InvalidInstance(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        if !d_t.is_finite() || d_t <= 0.0 {
            return Err(Error::InvalidInstance(format!(
                "target rate D_t must be finite and positive, got {d_t}"
            )));
        }
        models.validate()?;
        if k == 0 {
            return Err(Error::InvalidInstance(
                "redundancy degree K must be at least 1".into(),
            ));
        }
        if k >= topology.len() {
            return Err(Error::Infeasible(format!(
                "{} stations admit at most {} link-disjoint paths per pair, \
                 so K = {k} is unsatisfiable",
                topology.len(),
                topology.len().saturating_sub(1),
            )));
        }
        Ok(ProblemInstance {
            topology,
            k,
            alpha,
            d_t,
            models,
        })
    }

    /// Parses an instance from its JSON form.
    pub fn from_json(json: &str) -> Result<Self> {
        let raw: InstanceJson = serde_json::from_str(json)?;
        let topology = Topology::new(raw.stations)?;
        ProblemInstance::new(topology, raw.k, raw.alpha, raw.d_t, raw.models)
    }

    /// Serializes the instance to its JSON form.
    pub fn to_json(&self) -> String {
        let raw = InstanceJson {
            stations: self.topology.stations().to_vec(),
            k: self.k,
            alpha: self.alpha,
            d_t: self.d_t,
            models: self.models,
        };
        serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail")
    }

    /// The station set and its geometry.
    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    /// Number of stations `M`.
    pub fn m(&self) -> usize {
        self.topology.len()
    }

    /// Required number of link-disjoint paths between every station pair.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Per-station availability target in `[0, 1]`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Per-station aggregate rate target.
    pub fn d_t(&self) -> f64 {
        self.d_t
    }

    /// Link technology models.
    pub fn models(&self) -> &LinkModels {
        &self.models
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stations(coords: &[(f64, f64)]) -> Vec<BaseStation> {
        coords
            .iter()
            .enumerate()
            .map(|(id, &(x_m, y_m))| BaseStation { id, x_m, y_m })
            .collect()
    }

    fn triangle() -> Topology {
        Topology::new(stations(&[(0.0, 0.0), (1_000.0, 0.0), (0.0, 1_000.0)])).unwrap()
    }

    #[test]
    fn accepts_a_valid_instance() {
        let inst = ProblemInstance::new(triangle(), 2, 0.95, 1.0, LinkModels::default()).unwrap();
        assert_eq!(inst.m(), 3);
        assert_eq!(inst.k(), 2);
        assert_eq!(inst.alpha(), 0.95);
    }

    #[test]
    fn rejects_structural_mistakes_as_invalid() {
        let bad_alpha = ProblemInstance::new(triangle(), 1, 1.5, 1.0, LinkModels::default());
        assert!(matches!(bad_alpha, Err(Error::InvalidInstance(_))));
        let bad_rate = ProblemInstance::new(triangle(), 1, 0.95, 0.0, LinkModels::default());
        assert!(matches!(bad_rate, Err(Error::InvalidInstance(_))));
        let zero_k = ProblemInstance::new(triangle(), 0, 0.95, 1.0, LinkModels::default());
        assert!(matches!(zero_k, Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn rejects_unsatisfiable_redundancy_as_infeasible() {
        let too_much = ProblemInstance::new(triangle(), 3, 0.95, 1.0, LinkModels::default());
        assert!(matches!(too_much, Err(Error::Infeasible(_))));
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{
            "stations": [
                { "id": 0, "x_m": 0.0, "y_m": 0.0 },
                { "id": 1, "x_m": 1000.0, "y_m": 0.0 },
                { "id": 2, "x_m": 0.0, "y_m": 1000.0 }
            ],
            "K": 2,
            "alpha": 0.95,
            "D_t": 1.0,
            "models": { "of_cost_per_m": 13.5, "hybrid_cost": 20000.0 }
        }"#;
        let inst = ProblemInstance::from_json(json).unwrap();
        assert_eq!(inst.m(), 3);
        assert_eq!(inst.k(), 2);
        assert_eq!(inst.d_t(), 1.0);
        assert_eq!(inst.models().hybrid_cost, 20_000.0);
        let again = ProblemInstance::from_json(&inst.to_json()).unwrap();
        assert_eq!(again.m(), inst.m());
        assert_eq!(again.k(), inst.k());
        assert_eq!(again.topology(), inst.topology());
    }

    #[test]
    fn json_models_are_optional() {
        let json = r#"{
            "stations": [
                { "id": 0, "x_m": 0.0, "y_m": 0.0 },
                { "id": 1, "x_m": 1000.0, "y_m": 0.0 }
            ],
            "K": 1,
            "alpha": 0.95,
            "D_t": 1.0
        }"#;
        let inst = ProblemInstance::from_json(json).unwrap();
        assert_eq!(inst.models(), &LinkModels::default());
    }

    #[test]
    fn json_parse_failures_are_parse_errors() {
        assert!(matches!(
            ProblemInstance::from_json("{"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            ProblemInstance::from_json(r#"{ "stations": [], "K": 1, "alpha": 0.9, "D_t": 1.0 }"#),
            Err(Error::InvalidInstance(_))
        ));
    }
}
