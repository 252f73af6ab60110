//! The chain of subgraphs `G_0 ⊂ G_1 ⊂ ... ⊂ G_r` used by the sampler.
//!
//! The removable edges are computed once on the input graph. They are
//! deleted in a uniformly random order; `G_0` is what remains, and replaying
//! the deletions backwards re-adds one edge per step until the input graph is
//! restored. `G_0` does not depend on the order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{removable_edges, CycleThreshold, Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelSequence {
    pub seed: u64,
    /// `G_0`
    pub base: Graph,
    /// `additions[i]` turns `G_i` into `G_{i+1}`.
    pub additions: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct PeelSequenceJson {
    seed: u64,
    n: usize,
    base_edges: Vec<Edge>,
    additions: Vec<Edge>,
}

impl PeelSequence {
    /// Number of update steps, `r`.
    pub fn steps(&self) -> usize {
        self.additions.len()
    }

    /// `G_i`: the base plus the first `i` additions.
    pub fn graph_at(&self, i: usize) -> Result<Graph> {
        if i > self.steps() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.steps() + 1,
            });
        }
        let mut g = self.base.clone();
        for &e in &self.additions[..i] {
            g.add_edge(e)?;
        }
        Ok(g)
    }

    /// Same base graph, different addition order. Used by oracles that fix
    /// the peel order by hand.
    pub fn with_additions(&self, additions: Vec<Edge>) -> Result<PeelSequence> {
        let mut a = additions.clone();
        let mut b = self.additions.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(Error::InvalidParameter(
                "new order must permute the same edges".into(),
            ));
        }
        Ok(PeelSequence {
            seed: self.seed,
            base: self.base.clone(),
            additions,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&PeelSequenceJson {
            seed: self.seed,
            n: self.base.n(),
            base_edges: self.base.edges().collect(),
            additions: self.additions.clone(),
        })?)
    }

    pub fn from_json(text: &str) -> Result<PeelSequence> {
        let raw: PeelSequenceJson = serde_json::from_str(text)?;
        let base = Graph::from_edges(raw.n, raw.base_edges.iter().map(|e| e.endpoints()))?;
        let seq = PeelSequence {
            seed: raw.seed,
            base,
            additions: raw.additions,
        };
        // reject additions that clash with the base or repeat
        seq.graph_at(seq.steps())?;
        Ok(seq)
    }
}

/// Builds the peel sequence of `g`. The removal order is a Fisher-Yates
/// shuffle of the lexicographically sorted removable edges under `seed`;
/// additions are that order reversed.
pub fn build_peel_sequence(g: &Graph, cap: CycleThreshold, seed: u64) -> PeelSequence {
    let mut order = removable_edges(g, cap);
    let base = g.without_edges(&order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    order.reverse();
    PeelSequence {
        seed,
        base,
        additions: order,
    }
}

/// Distance between the endpoints of `additions[i]` in `G_i`; `None` when
/// they are disconnected.
pub fn endpoint_distance_check(seq: &PeelSequence, i: usize) -> Result<Option<usize>> {
    if i >= seq.steps() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: seq.steps(),
        });
    }
    let g = seq.graph_at(i)?;
    let (v, u) = seq.additions[i].endpoints();
    Ok(g.distance(v, u))
}
