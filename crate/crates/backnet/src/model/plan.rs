//! Deployment plans: which station pairs get which link technology.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::links::CostMatrices;
use crate::model::topology::index_pairs;
use crate::money::Money;

/// The two deployable link technologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// Trenched optical fiber.
    Of,
    /// Hybrid RF/FSO radio link.
    Hybrid,
}

/// The state of one station pair in a plan: no link, or one of the two
/// technologies. A pair never carries both at once in a valid plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LinkChoice {
    #[default]
    None,
    Of,
    Hybrid,
}

impl LinkChoice {
    /// The deployed technology, if any.
    pub fn kind(self) -> Option<LinkKind> {
        match self {
            LinkChoice::None => None,
            LinkChoice::Of => Some(LinkKind::Of),
            LinkChoice::Hybrid => Some(LinkKind::Hybrid),
        }
    }
}

/// A symmetric deployment plan over `M` stations.
///
/// Internally two boolean matrices (fiber and hybrid); symmetry is enforced
/// by construction and the diagonal is always empty. [`Plan::add_link`]
/// refuses to double-book a pair, so programmatically built plans keep the
/// one-technology-per-pair exclusivity invariant. Plans deserialized from
/// JSON preserve whatever the file says about each pair (except self-links,
/// which are unrepresentable) so that feasibility checking can report an
/// exclusivity violation instead of masking it as a parse error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    m: usize,
    of: Vec<bool>,
    hybrid: Vec<bool>,
}

/// Serialized form: two sorted lists of `[i, j]` endpoint pairs with `i < j`.
#[derive(Serialize, Deserialize)]
struct PlanJson {
    of_links: Vec<[usize; 2]>,
    hybrid_links: Vec<[usize; 2]>,
}

impl Plan {
    /// A plan over `m` stations with no links.
    pub fn empty(m: usize) -> Self {
        Plan {
            m,
            of: vec![false; m * m],
            hybrid: vec![false; m * m],
        }
    }

    /// Number of stations the plan spans.
    pub fn len(&self) -> usize {
        self.m
    }

    /// True when the plan spans zero stations.
    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.m || j >= self.m {
            return Err(Error::InvalidPlan(format!(
                "link endpoint out of range: ({i}, {j}) with {} stations",
                self.m
            )));
        }
        if i == j {
            return Err(Error::InvalidPlan(format!("self-link at station {i}")));
        }
        Ok(())
    }

    /// Deploys a link of the given kind on pair `(i, j)`.
    ///
    /// Errors when an endpoint is out of range, `i == j`, or the pair
    /// already carries a link of either kind.
    pub fn add_link(&mut self, i: usize, j: usize, kind: LinkKind) -> Result<()> {
        self.check_pair(i, j)?;
        if self.link(i, j) != LinkChoice::None {
            return Err(Error::InvalidPlan(format!(
                "pair ({i}, {j}) already carries a link"
            )));
        }
        let (a, b) = (i * self.m + j, j * self.m + i);
        match kind {
            LinkKind::Of => {
                self.of[a] = true;
                self.of[b] = true;
            }
            LinkKind::Hybrid => {
                self.hybrid[a] = true;
                self.hybrid[b] = true;
            }
        }
        Ok(())
    }

    /// The link state of pair `(i, j)`.
    ///
    /// For plans loaded from JSON a pair can illegally carry both
    /// technologies; this accessor then reports the fiber link and
    /// [`Plan::exclusivity_ok`] reports the violation.
    pub fn link(&self, i: usize, j: usize) -> LinkChoice {
        let idx = i * self.m + j;
        if self.of[idx] {
            LinkChoice::Of
        } else if self.hybrid[idx] {
            LinkChoice::Hybrid
        } else {
            LinkChoice::None
        }
    }

    /// True when pair `(i, j)` carries a link of either kind.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let idx = i * self.m + j;
        self.of[idx] || self.hybrid[idx]
    }

    /// True when pair `(i, j)` carries a fiber link.
    pub fn has_of(&self, i: usize, j: usize) -> bool {
        self.of[i * self.m + j]
    }

    /// True when pair `(i, j)` carries a hybrid link.
    pub fn has_hybrid(&self, i: usize, j: usize) -> bool {
        self.hybrid[i * self.m + j]
    }

    /// True when no pair carries both technologies at once.
    pub fn exclusivity_ok(&self) -> bool {
        index_pairs(self.m).all(|(i, j)| !(self.of[i * self.m + j] && self.hybrid[i * self.m + j]))
    }

    /// All fiber links as `(i, j)` pairs with `i < j`, lexicographic.
    pub fn of_links(&self) -> Vec<(usize, usize)> {
        index_pairs(self.m)
            .filter(|&(i, j)| self.of[i * self.m + j])
            .collect()
    }

    /// All hybrid links as `(i, j)` pairs with `i < j`, lexicographic.
    pub fn hybrid_links(&self) -> Vec<(usize, usize)> {
        index_pairs(self.m)
            .filter(|&(i, j)| self.hybrid[i * self.m + j])
            .collect()
    }

    /// All links of either kind as `(i, j)` pairs with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        index_pairs(self.m)
            .filter(|&(i, j)| self.has_edge(i, j))
            .collect()
    }

    /// Number of pairs carrying a link of either kind.
    pub fn edge_count(&self) -> usize {
        index_pairs(self.m)
            .filter(|&(i, j)| self.has_edge(i, j))
            .count()
    }

    /// Number of links of either kind incident to station `i`.
    pub fn degree(&self, i: usize) -> usize {
        (0..self.m)
            .filter(|&j| j != i && self.has_edge(i, j))
            .count()
    }

    /// True when the plan uses fiber links only.
    pub fn is_of_only(&self) -> bool {
        self.hybrid.iter().all(|&h| !h)
    }

    /// True when `self` contains every link of `other`, with matching kinds.
    pub fn contains(&self, other: &Plan) -> bool {
        self.m == other.m
            && (0..self.m * self.m).all(|idx| {
                (!other.of[idx] || self.of[idx]) && (!other.hybrid[idx] || self.hybrid[idx])
            })
    }

    /// Total deployment price of the plan under the given cost matrices.
    pub fn cost(&self, costs: &CostMatrices) -> Money {
        index_pairs(self.m)
            .map(|(i, j)| {
                let mut c = Money::ZERO;
                if self.of[i * self.m + j] {
                    c += costs.of(i, j);
                }
                if self.hybrid[i * self.m + j] {
                    c += costs.hybrid(i, j);
                }
                c
            })
            .sum()
    }

    /// Parses a plan for `m` stations from its JSON form.
    ///
    /// Endpoint pairs may appear in either order in the file; out-of-range
    /// endpoints and self-links are parse errors. A pair listed under both
    /// technologies is preserved as-is so feasibility checking can flag it.
    pub fn from_json(m: usize, json: &str) -> Result<Self> {
        let raw: PlanJson = serde_json::from_str(json)?;
        let mut plan = Plan::empty(m);
        for (list, matrix) in [
            (&raw.of_links, &mut plan.of),
            (&raw.hybrid_links, &mut plan.hybrid),
        ] {
            for &[i, j] in list {
                if i >= m || j >= m {
                    return Err(Error::Parse(format!(
                        "link endpoint out of range: [{i}, {j}] with {m} stations"
                    )));
                }
                if i == j {
                    return Err(Error::Parse(format!("self-link at station {i}")));
                }
                matrix[i * m + j] = true;
                matrix[j * m + i] = true;
            }
        }
        Ok(plan)
    }

    /// Serializes the plan to its JSON form (sorted link lists, `i < j`).
    pub fn to_json(&self) -> String {
        let as_json = PlanJson {
            of_links: self.of_links().iter().map(|&(i, j)| [i, j]).collect(),
            hybrid_links: self.hybrid_links().iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string_pretty(&as_json).expect("plan serialization cannot fail")
    }
}
