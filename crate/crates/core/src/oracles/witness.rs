use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::subsets::{intersection, intersection_size};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Sunflower,
    Fan,
    OmittingPair,
    IndependentSet,
    Matching,
}

/// A certificate that re-validates against its host, or standalone from the
/// edge values it carries.
///
/// `vertices[0]` holds the distinguished set: the core of a sunflower, the
/// apex of a fan, the shared set of an omitting pair, or the independent
/// set. For a fan the crossing edge is listed last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<Vec<Vertex>>,
    pub edges: Vec<usize>,
    pub edge_values: Vec<Vec<Vertex>>,
}

impl Witness {
    pub(crate) fn certified(
        kind: WitnessKind,
        h: &Hypergraph,
        vertices: Vec<Vec<Vertex>>,
        edges: Vec<usize>,
    ) -> Result<Self> {
        let edge_values = edges.iter().map(|&i| h.edge(i).to_vec()).collect();
        let w = Witness { kind, vertices, edges, edge_values };
        if w.validate(h) {
            Ok(w)
        } else {
            Err(Error::Verification(format!("{kind:?} witness fails its own check: {w:?}")))
        }
    }

    /// Checks the carried edge values against `h` and the pattern itself.
    pub fn validate(&self, h: &Hypergraph) -> bool {
        self.edges.len() == self.edge_values.len()
            && self
                .edges
                .iter()
                .zip(&self.edge_values)
                .all(|(&i, e)| i < h.len() && h.edge(i) == e.as_slice())
            && match self.kind {
                WitnessKind::IndependentSet => {
                    self.vertices.len() == 1 && h.is_independent(&self.vertices[0])
                }
                _ => self.validate_standalone(),
            }
    }

    /// Checks the pattern using only `edge_values` (independent sets cannot
    /// be checked without the host).
    pub fn validate_standalone(&self) -> bool {
        let es = &self.edge_values;
        let pairs = || (0..es.len()).flat_map(move |a| (a + 1..es.len()).map(move |b| (a, b)));
        match self.kind {
            WitnessKind::Sunflower => {
                let core = match self.vertices.first() {
                    Some(c) => c,
                    None => return false,
                };
                !es.is_empty()
                    && es.iter().all(|e| intersection_size(e, core) == core.len())
                    && pairs().all(|(a, b)| intersection(&es[a], &es[b]) == *core)
            }
            WitnessKind::Fan => {
                let apex = match self.vertices.first() {
                    Some(a) if a.len() == 1 => a,
                    _ => return false,
                };
                let Some((cross, petals)) = es.split_last() else { return false };
                let k = cross.len();
                petals.len() == k
                    && es.iter().all(|e| e.len() == k)
                    && intersection_size(cross, apex) == 0
                    && petals.iter().all(|p| intersection_size(p, cross) == 1)
                    && pairs()
                        .filter(|&(_, b)| b < petals.len())
                        .all(|(a, b)| intersection(&es[a], &es[b]) == *apex)
            }
            WitnessKind::OmittingPair => {
                es.len() == 2
                    && self.vertices.len() == 1
                    && intersection(&es[0], &es[1]) == self.vertices[0]
                    && es[0] != es[1]
            }
            WitnessKind::Matching => pairs().all(|(a, b)| intersection_size(&es[a], &es[b]) == 0),
            WitnessKind::IndependentSet => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }
}
