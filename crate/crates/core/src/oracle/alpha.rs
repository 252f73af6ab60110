use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::distance::ratio_to_f64;
use super::enumerate::for_each_coloring;
use crate::coloring::Color;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kempe::{check_pair, ChainFinder};

/// How a coloring is judged pathological for `(v, u, c, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathologyTest {
    /// `u` lies in the Kempe chain grown from `v`.
    #[default]
    KempeChain,
    /// `v` and `u` are joined through vertices colored `c` or `q`, found by
    /// union-find over the two-colored edges.
    UnionFind,
}

/// Counts for one ordered color pair `(c, q)`. "same" is the set of proper
/// colorings with `v` and `u` both colored `c`; "cross" has `v` colored `q`
/// and `u` colored `c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairAlpha {
    pub c: Color,
    pub q: Color,
    pub same_total: u64,
    pub same_pathological: u64,
    pub cross_total: u64,
    pub cross_pathological: u64,
}

impl PairAlpha {
    pub fn same_fraction(&self) -> BigRational {
        fraction(self.same_pathological, self.same_total)
    }

    pub fn cross_fraction(&self) -> BigRational {
        fraction(self.cross_pathological, self.cross_total)
    }

    pub fn max_fraction(&self) -> BigRational {
        self.same_fraction().max(self.cross_fraction())
    }
}

fn fraction(part: u64, whole: u64) -> BigRational {
    if whole == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(part), BigInt::from(whole))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaReport {
    pub v: Vertex,
    pub u: Vertex,
    pub k: usize,
    pub pairs: Vec<PairAlpha>,
    #[serde(serialize_with = "ratio_string")]
    pub alpha: BigRational,
    pub alpha_f64: f64,
}

fn ratio_string<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Pathological fractions of `(g, v, u)` over all proper `k`-colorings,
/// judged by Kempe chains.
pub fn measure_alpha(g: &Graph, v: Vertex, u: Vertex, k: usize) -> Result<AlphaReport> {
    measure_alpha_using(g, v, u, k, PathologyTest::KempeChain)
}

pub fn measure_alpha_using(
    g: &Graph,
    v: Vertex,
    u: Vertex,
    k: usize,
    test: PathologyTest,
) -> Result<AlphaReport> {
    let mut acc = AlphaAccumulator::new(g, v, u, k, test)?;
    for_each_coloring(g, k, |sigma| acc.observe(sigma))?;
    Ok(acc.finish())
}

/// Streams proper colorings into per-pair counts, so callers that already
/// enumerate can share the pass.
pub(crate) struct AlphaAccumulator<'g> {
    g: &'g Graph,
    v: Vertex,
    u: Vertex,
    k: usize,
    test: PathologyTest,
    finder: ChainFinder,
    /// Indexed by `c * k + q`.
    pairs: Vec<PairAlpha>,
}

impl<'g> AlphaAccumulator<'g> {
    pub(crate) fn new(
        g: &'g Graph,
        v: Vertex,
        u: Vertex,
        k: usize,
        test: PathologyTest,
    ) -> Result<Self> {
        check_pair(g, v, u)?;
        if k < 2 {
            return Err(Error::InvalidParameter("alpha needs at least two colors".into()));
        }
        let pairs = (0..k * k)
            .map(|i| PairAlpha {
                c: i / k,
                q: i % k,
                ..PairAlpha::default()
            })
            .collect();
        Ok(AlphaAccumulator {
            g,
            v,
            u,
            k,
            test,
            finder: ChainFinder::new(g.n()),
            pairs,
        })
    }

    fn pathological(&mut self, sigma: &[Color], q: Color) -> bool {
        match self.test {
            PathologyTest::KempeChain => {
                self.finder.find(self.g, self.v, sigma, q);
                self.finder.last_contains(self.u)
            }
            PathologyTest::UnionFind => {
                two_color_connected(self.g, sigma, self.v, self.u, sigma[self.v], q)
            }
        }
    }

    pub(crate) fn observe(&mut self, sigma: &[Color]) {
        let k = self.k;
        let (a, b) = (sigma[self.v], sigma[self.u]);
        if a == b {
            // sigma is in the "same" set of every pair (a, q)
            for q in (0..k).filter(|&q| q != a) {
                let bad = self.pathological(sigma, q);
                let pair = &mut self.pairs[a * k + q];
                pair.same_total += 1;
                pair.same_pathological += u64::from(bad);
            }
        } else {
            // v colored q = a, u colored c = b: the "cross" set of pair (b, a)
            let bad = self.pathological(sigma, b);
            let pair = &mut self.pairs[b * k + a];
            pair.cross_total += 1;
            pair.cross_pathological += u64::from(bad);
        }
    }

    pub(crate) fn finish(self) -> AlphaReport {
        let pairs: Vec<PairAlpha> = self.pairs.into_iter().filter(|p| p.c != p.q).collect();
        let alpha = pairs
            .iter()
            .map(PairAlpha::max_fraction)
            .max()
            .unwrap_or_else(BigRational::zero);
        AlphaReport {
            v: self.v,
            u: self.u,
            k: self.k,
            alpha_f64: ratio_to_f64(&alpha),
            alpha,
            pairs,
        }
    }
}

/// Whether `v` and `u` are joined by a path whose vertices are all colored
/// `c` or `q`.
pub fn two_color_connected(
    g: &Graph,
    sigma: &[Color],
    v: Vertex,
    u: Vertex,
    c: Color,
    q: Color,
) -> bool {
    let inside = |x: Vertex| sigma[x] == c || sigma[x] == q;
    if !inside(v) || !inside(u) {
        return false;
    }
    let mut parent: Vec<Vertex> = (0..g.n()).collect();
    fn root(parent: &mut [Vertex], mut x: Vertex) -> Vertex {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in g.edges() {
        let (a, b) = e.endpoints();
        if inside(a) && inside(b) {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
    }
    root(&mut parent, v) == root(&mut parent, u)
}
