//! Base stations and the pairwise geometry between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A base station at a fixed planar position, coordinates in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseStation {
    /// Station index; a topology holds ids `0..M` exactly once each.
    pub id: usize,
    /// Easting in meters.
    pub x_m: f64,
    /// Northing in meters.
    pub y_m: f64,
}

impl BaseStation {
    /// Euclidean distance to another station, in meters.
    pub fn distance_to(&self, other: &BaseStation) -> f64 {
        (self.x_m - other.x_m).hypot(self.y_m - other.y_m)
    }
}

/// An immutable set of stations with a precomputed distance matrix.
///
/// Stations are kept sorted by id, and ids are required to be exactly
/// `0..M`, so the station id doubles as an index everywhere else in the
/// crate.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    stations: Vec<BaseStation>,
    /// Row-major `M x M` distance matrix in meters; diagonal is zero.
    dist_m: Vec<f64>,
}

impl Topology {
    /// Validates the station list and precomputes all pairwise distances.
    ///
    /// Requires at least one station, finite coordinates, and ids forming
    /// the contiguous range `0..M` (in any order).
    pub fn new(mut stations: Vec<BaseStation>) -> Result<Self> {
        if stations.is_empty() {
            return Err(Error::InvalidInstance("no stations given".into()));
        }
        for s in &stations {
            if !s.x_m.is_finite() || !s.y_m.is_finite() {
                return Err(Error::InvalidInstance(format!(
                    "station {} has non-finite coordinates",
                    s.id
                )));
            }
        }
        stations.sort_by_key(|s| s.id);
        for (idx, s) in stations.iter().enumerate() {
            if s.id != idx {
                return Err(Error::InvalidInstance(format!(
                    "station ids must cover 0..{} exactly once, found id {}",
                    stations.len(),
                    s.id
                )));
            }
        }
        let m = stations.len();
        let mut dist_m = vec![0.0; m * m];
        for i in 0..m {
            for j in (i + 1)..m {
                let d = stations[i].distance_to(&stations[j]);
                dist_m[i * m + j] = d;
                dist_m[j * m + i] = d;
            }
        }
        Ok(Topology { stations, dist_m })
    }

    /// Number of stations `M`.
    pub fn len(&self) -> usize {
        self.stations.len()
    }

    /// True when the topology holds no stations (never, post-construction).
    pub fn is_empty(&self) -> bool {
        self.stations.is_empty()
    }

    /// The station with the given id.
    pub fn station(&self, id: usize) -> &BaseStation {
        &self.stations[id]
    }

    /// All stations in id order.
    pub fn stations(&self) -> &[BaseStation] {
        &self.stations
    }

    /// Distance between stations `i` and `j` in meters.
    pub fn distance_m(&self, i: usize, j: usize) -> f64 {
        self.dist_m[i * self.stations.len() + j]
    }

    /// All unordered station pairs `(i, j)` with `i < j`, in lexicographic
    /// order. This is the canonical pair ordering used for tie-breaking and
    /// for encoding link assignments.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.stations.len();
        (0..m).flat_map(move |i| ((i + 1)..m).map(move |j| (i, j)))
    }
}

/// All unordered pairs `(i, j)` with `i < j` over `0..m`, lexicographic.
pub fn index_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| ((i + 1)..m).map(move |j| (i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn station(id: usize, x_m: f64, y_m: f64) -> BaseStation {
        BaseStation { id, x_m, y_m }
    }

    #[test]
    fn computes_euclidean_distances() {
        let topo = Topology::new(vec![
            station(0, 0.0, 0.0),
            station(1, 3.0, 4.0),
            station(2, 0.0, 4.0),
        ])
        .unwrap();
        assert_eq!(topo.len(), 3);
        assert_eq!(topo.distance_m(0, 1), 5.0);
        assert_eq!(topo.distance_m(1, 0), 5.0);
        assert_eq!(topo.distance_m(0, 2), 4.0);
        assert_eq!(topo.distance_m(1, 2), 3.0);
        assert_eq!(topo.distance_m(2, 2), 0.0);
    }

    #[test]
    fn sorts_stations_by_id() {
        let topo = Topology::new(vec![station(1, 1.0, 0.0), station(0, 0.0, 0.0)]).unwrap();
        assert_eq!(topo.station(0).x_m, 0.0);
        assert_eq!(topo.station(1).x_m, 1.0);
    }

    #[test]
    fn rejects_gapped_or_duplicate_ids() {
        assert!(Topology::new(vec![station(0, 0.0, 0.0), station(2, 1.0, 0.0)]).is_err());
        assert!(Topology::new(vec![station(0, 0.0, 0.0), station(0, 1.0, 0.0)]).is_err());
        assert!(Topology::new(vec![]).is_err());
    }

    #[test]
    fn rejects_non_finite_coordinates() {
        assert!(Topology::new(vec![station(0, f64::NAN, 0.0)]).is_err());
        assert!(Topology::new(vec![station(0, 0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn pairs_are_lexicographic() {
        let topo = Topology::new(vec![
            station(0, 0.0, 0.0),
            station(1, 1.0, 0.0),
            station(2, 2.0, 0.0),
        ])
        .unwrap();
        let pairs: Vec<_> = topo.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(index_pairs(3).collect::<Vec<_>>(), pairs);
    }
}
