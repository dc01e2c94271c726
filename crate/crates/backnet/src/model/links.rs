//! Link technology models: deployment prices and the distance behavior of
//! hybrid RF/FSO links.
//!
//! Two link technologies are available between any station pair. Optical
//! fiber is priced per meter of trench and, once laid, is treated as fully
//! reliable at the target rate. A hybrid RF/FSO link has a flat equipment
//! price regardless of distance, but both its reliability and its
//! achievable rate fall off exponentially beyond technology-specific
//! break distances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::topology::Topology;
use crate::money::Money;

/// Reliability of a hybrid link at or below its break distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ReliabilityPlateau {
    /// Short hybrid links are exactly as reliable as the availability
    /// target `alpha`, so a single short hybrid link meets a node's
    /// availability constraint with nothing to spare.
    #[default]
    Threshold,
    /// Short hybrid links are perfectly reliable.
    Perfect,
}

fn default_of_cost_per_m() -> f64 {
    13.5
}

fn default_hybrid_cost() -> f64 {
    20_000.0
}

fn default_d_r_m() -> f64 {
    2_000.0
}

fn default_d_d_m() -> f64 {
    3_000.0
}

fn default_lambda_m() -> f64 {
    500.0
}

/// Pricing and distance-decay parameters for both link technologies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkModels {
    /// Optical fiber trenching price in dollars per meter.
    #[serde(default = "default_of_cost_per_m")]
    pub of_cost_per_m: f64,
    /// Flat price of one hybrid RF/FSO link in dollars.
    #[serde(default = "default_hybrid_cost")]
    pub hybrid_cost: f64,
    /// Distance up to which a hybrid link keeps its plateau reliability.
    #[serde(rename = "d_R_m", default = "default_d_r_m")]
    pub d_r_m: f64,
    /// Distance up to which a hybrid link sustains the full target rate.
    #[serde(rename = "d_D_m", default = "default_d_d_m")]
    pub d_d_m: f64,
    /// Exponential decay length of hybrid reliability beyond `d_r_m`.
    #[serde(rename = "lambda_R_m", default = "default_lambda_m")]
    pub lambda_r_m: f64,
    /// Exponential decay length of hybrid rate beyond `d_d_m`.
    #[serde(rename = "lambda_D_m", default = "default_lambda_m")]
    pub lambda_d_m: f64,
    /// Plateau reliability of short hybrid links.
    #[serde(default)]
    pub plateau: ReliabilityPlateau,
}

impl Default for LinkModels {
    fn default() -> Self {
        LinkModels {
            of_cost_per_m: default_of_cost_per_m(),
            hybrid_cost: default_hybrid_cost(),
            d_r_m: default_d_r_m(),
            d_d_m: default_d_d_m(),
            lambda_r_m: default_lambda_m(),
            lambda_d_m: default_lambda_m(),
            plateau: ReliabilityPlateau::default(),
        }
    }
}

impl LinkModels {
    /// Checks that every parameter is finite and strictly positive.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("of_cost_per_m", self.of_cost_per_m),
            ("hybrid_cost", self.hybrid_cost),
            ("d_R_m", self.d_r_m),
            ("d_D_m", self.d_d_m),
            ("lambda_R_m", self.lambda_r_m),
            ("lambda_D_m", self.lambda_d_m),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "link model parameter {name} must be finite and positive, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Price of an optical fiber link spanning `distance_m` meters.
    pub fn of_price(&self, distance_m: f64) -> Money {
        Money::from_dollars(self.of_cost_per_m * distance_m)
    }

    /// Price of one hybrid RF/FSO link (distance-independent).
    pub fn hybrid_price(&self) -> Money {
        Money::from_dollars(self.hybrid_cost)
    }

    /// Reliability of a hybrid link spanning `distance_m`, given the
    /// deployment-wide availability target `alpha`.
    ///
    /// The link holds its plateau value up to the break distance and decays
    /// exponentially past it; the curve is continuous at the break.
    pub fn hybrid_reliability(&self, distance_m: f64, alpha: f64) -> f64 {
        let plateau = match self.plateau {
            ReliabilityPlateau::Threshold => alpha,
            ReliabilityPlateau::Perfect => 1.0,
        };
        if distance_m <= self.d_r_m {
            plateau
        } else {
            plateau * (-(distance_m - self.d_r_m) / self.lambda_r_m).exp()
        }
    }

    /// Achievable rate of a hybrid link spanning `distance_m`, given the
    /// per-node target rate `d_t` (same unit as the returned value).
    ///
    /// Full rate holds up to the break distance, then decays exponentially;
    /// the curve is continuous at the break.
    pub fn hybrid_rate(&self, distance_m: f64, d_t: f64) -> f64 {
        if distance_m <= self.d_d_m {
            d_t
        } else {
            d_t * (-(distance_m - self.d_d_m) / self.lambda_d_m).exp()
        }
    }
}

/// Per-pair deployment prices for one topology, in exact cents.
///
/// Fiber prices scale with distance; the hybrid price is a flat figure that
/// the accessor exposes per pair for uniformity.
#[derive(Debug, Clone)]
pub struct CostMatrices {
    m: usize,
    of_cents: Vec<Money>,
    hybrid_flat: Money,
}

impl CostMatrices {
    /// Number of stations the matrices were built for.
    pub fn len(&self) -> usize {
        self.m
    }

    /// True when built for zero stations (never, post-construction).
    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Optical fiber price between stations `i` and `j`.
    pub fn of(&self, i: usize, j: usize) -> Money {
        self.of_cents[i * self.m + j]
    }

    /// Hybrid RF/FSO price between stations `i` and `j`.
    pub fn hybrid(&self, _i: usize, _j: usize) -> Money {
        self.hybrid_flat
    }
}

/// Prices every station pair under both technologies.
pub fn link_costs(topology: &Topology, models: &LinkModels) -> CostMatrices {
    let m = topology.len();
    let mut of_cents = vec![Money::ZERO; m * m];
    for (i, j) in topology.pairs() {
        let price = models.of_price(topology.distance_m(i, j));
        of_cents[i * m + j] = price;
        of_cents[j * m + i] = price;
    }
    CostMatrices {
        m,
        of_cents,
        hybrid_flat: models.hybrid_price(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::topology::BaseStation;

    const ALPHA: f64 = 0.95;
    const D_T: f64 = 1.0;

    #[test]
    fn of_price_scales_with_distance() {
        let models = LinkModels::default();
        assert_eq!(models.of_price(1_000.0), Money::from_dollars(13_500.0));
        assert_eq!(models.of_price(0.0), Money::ZERO);
    }

    #[test]
    fn hybrid_price_is_flat() {
        let models = LinkModels::default();
        assert_eq!(models.hybrid_price(), Money::from_dollars(20_000.0));
    }

    #[test]
    fn reliability_plateaus_then_decays() {
        let models = LinkModels::default();
        assert_eq!(models.hybrid_reliability(10.0, ALPHA), ALPHA);
        assert_eq!(models.hybrid_reliability(2_000.0, ALPHA), ALPHA);
        // One decay length past the break: alpha / e.
        let r = models.hybrid_reliability(2_500.0, ALPHA);
        let expected = ALPHA * (-1.0f64).exp();
        assert!((r - expected).abs() < 1e-12, "r = {r}, expected {expected}");
        // Continuity at the break distance.
        let just_past = models.hybrid_reliability(2_000.0 + 1e-9, ALPHA);
        assert!((just_past - ALPHA).abs() < 1e-9);
    }

    #[test]
    fn perfect_plateau_scales_the_whole_curve() {
        let models = LinkModels {
            plateau: ReliabilityPlateau::Perfect,
            ..LinkModels::default()
        };
        assert_eq!(models.hybrid_reliability(1_500.0, ALPHA), 1.0);
        let r = models.hybrid_reliability(2_500.0, ALPHA);
        assert!((r - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn rate_plateaus_then_decays() {
        let models = LinkModels::default();
        assert_eq!(models.hybrid_rate(2_999.0, D_T), D_T);
        assert_eq!(models.hybrid_rate(3_000.0, D_T), D_T);
        let rate = models.hybrid_rate(3_500.0, D_T);
        assert!((rate - D_T * (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_positive_parameters() {
        let mut models = LinkModels {
            hybrid_cost: 0.0,
            ..LinkModels::default()
        };
        assert!(models.validate().is_err());
        models.hybrid_cost = f64::NAN;
        assert!(models.validate().is_err());
        assert!(LinkModels::default().validate().is_ok());
    }

    #[test]
    fn prices_all_pairs() {
        let topo = Topology::new(vec![
            BaseStation {
                id: 0,
                x_m: 0.0,
                y_m: 0.0,
            },
            BaseStation {
                id: 1,
                x_m: 1_000.0,
                y_m: 0.0,
            },
            BaseStation {
                id: 2,
                x_m: 0.0,
                y_m: 2_000.0,
            },
        ])
        .unwrap();
        let costs = link_costs(&topo, &LinkModels::default());
        assert_eq!(costs.of(0, 1), Money::from_dollars(13_500.0));
        assert_eq!(costs.of(1, 0), Money::from_dollars(13_500.0));
        assert_eq!(costs.of(0, 2), Money::from_dollars(27_000.0));
        assert_eq!(costs.hybrid(1, 2), Money::from_dollars(20_000.0));
    }

    #[test]
    fn serde_uses_schema_field_names_and_defaults() {
        let json = r#"{ "of_cost_per_m": 13.5, "hybrid_cost": 20000.0,
                        "d_R_m": 2000.0, "d_D_m": 3000.0,
                        "lambda_R_m": 500.0, "lambda_D_m": 500.0 }"#;
        let models: LinkModels = serde_json::from_str(json).unwrap();
        assert_eq!(models, LinkModels::default());
        let empty: LinkModels = serde_json::from_str("{}").unwrap();
        assert_eq!(empty, LinkModels::default());
        let perfect: LinkModels = serde_json::from_str(r#"{ "plateau": "perfect" }"#).unwrap();
        assert_eq!(perfect.plateau, ReliabilityPlateau::Perfect);
        let round_trip: LinkModels =
            serde_json::from_str(&serde_json::to_string(&models).unwrap()).unwrap();
        assert_eq!(round_trip, models);
    }
}
