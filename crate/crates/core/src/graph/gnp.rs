use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    /// Expected degree; each pair is an edge with probability `d / n`.
    pub d: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, d: f64, seed: u64) -> Result<Self> {
        let params = GnpParams { n, d, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d.is_nan() || self.d <= 0.0 || self.d >= self.n as f64 {
            return Err(Error::InvalidParameter(format!(
                "G(n, d/n) needs 0 < d < n, got n = {}, d = {}",
                self.n, self.d
            )));
        }
        Ok(())
    }

    pub fn edge_probability(&self) -> f64 {
        self.d / self.n as f64
    }
}

/// Samples `G(n, d/n)`.
///
/// Pairs are visited in the order `(0,1), (0,2), (1,2), (0,3), ...` and the
/// gap to the next present pair is drawn from the geometric distribution
/// (Batagelj and Brandes), so the cost is `O(n + m)` rather than `O(n^2)`
/// while every pair is still included independently with probability `p`.
pub fn generate_gnp(params: &GnpParams) -> Result<Graph> {
    params.validate()?;
    let n = params.n;
    let p = params.edge_probability();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let log_q = (1.0 - p).ln();

    let mut edges = Vec::with_capacity((params.d * n as f64 / 2.0 * 1.1) as usize + 16);
    let mut hi: usize = 1;
    let mut lo: i64 = -1;
    while hi < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        lo += 1 + if skip.is_finite() && skip < i64::MAX as f64 / 4.0 {
            skip as i64
        } else {
            i64::MAX / 4
        };
        while lo >= hi as i64 && hi < n {
            lo -= hi as i64;
            hi += 1;
        }
        if hi < n {
            edges.push((lo as usize, hi));
        }
    }
    Graph::from_edges(n, edges)
}
