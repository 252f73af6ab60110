use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::enumerate::for_each_coloring;
use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::{check_x_membership, Graph, Vertex};
use crate::kempe::{apply_switch, check_pair, ChainFinder};
use crate::peel::{build_peel_sequence, PeelSequence};
use crate::pipeline::RunConfig;

/// Work budget for exact law computations: support size times branching
/// times steps (times orders, when marginalizing).
const LAW_WORK_LIMIT: f64 = 1e8;

/// A probability mass function on colorings, stored as integer weights over
/// a common denominator so comparisons stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLaw {
    n: usize,
    k: usize,
    denominator: u128,
    weights: HashMap<Vec<Color>, u128>,
}

impl ExactLaw {
    /// Uniform law over the given (distinct) colorings.
    pub fn uniform<I>(n: usize, k: usize, colorings: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Color>>,
    {
        let weights: HashMap<_, _> = colorings.into_iter().map(|c| (c, 1u128)).collect();
        if weights.is_empty() {
            return Err(Error::Infeasible("uniform law over an empty set".into()));
        }
        if let Some(c) = weights.keys().find(|c| c.len() != n || c.iter().any(|&x| x >= k)) {
            return Err(Error::MismatchedUniverse(format!(
                "{c:?} is not a {k}-coloring of {n} vertices"
            )));
        }
        Ok(ExactLaw {
            n,
            k,
            denominator: weights.len() as u128,
            weights,
        })
    }

    /// The Gibbs distribution: uniform over proper colorings of `g`.
    pub fn uniform_proper(g: &Graph, k: usize) -> Result<Self> {
        let mut all = Vec::new();
        for_each_coloring(g, k, |c| all.push(c.to_vec()))?;
        Self::uniform(g.n(), k, all)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn denominator(&self) -> u128 {
        self.denominator
    }

    pub fn support_size(&self) -> usize {
        self.weights.values().filter(|&&w| w > 0).count()
    }

    pub fn weight(&self, coloring: &[Color]) -> u128 {
        self.weights.get(coloring).copied().unwrap_or(0)
    }

    pub fn mass(&self, coloring: &[Color]) -> BigRational {
        BigRational::new(
            BigInt::from(self.weight(coloring)),
            BigInt::from(self.denominator),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Color], u128)> + '_ {
        self.weights.iter().map(|(c, &w)| (c.as_slice(), w))
    }

    pub fn total_mass(&self) -> BigRational {
        let total: BigInt = self.weights.values().map(|&w| BigInt::from(w)).sum();
        BigRational::new(total, BigInt::from(self.denominator))
    }

    /// Total mass on colorings that are not proper for `g`.
    pub fn improper_mass(&self, g: &Graph) -> BigRational {
        let bad: BigInt = self
            .iter()
            .filter(|(c, _)| g.edges().any(|e| c[e.lo()] == c[e.hi()]))
            .map(|(_, w)| BigInt::from(w))
            .sum();
        BigRational::new(bad, BigInt::from(self.denominator))
    }

    /// Equal-weight mixture of laws on the same universe.
    pub fn mixture(laws: &[ExactLaw]) -> Result<ExactLaw> {
        let first = laws
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let mut lcm = 1u128;
        for law in laws {
            if (law.n, law.k) != (first.n, first.k) {
                return Err(Error::MismatchedUniverse("mixture components differ".into()));
            }
            lcm = (lcm / gcd(lcm, law.denominator))
                .checked_mul(law.denominator)
                .ok_or_else(overflow)?;
        }
        let denominator = lcm.checked_mul(laws.len() as u128).ok_or_else(overflow)?;
        let mut weights: HashMap<Vec<Color>, u128> = HashMap::new();
        for law in laws {
            let scale = lcm / law.denominator;
            for (c, w) in law.iter() {
                *weights.entry(c.to_vec()).or_default() += w * scale;
            }
        }
        Ok(ExactLaw {
            n: first.n,
            k: first.k,
            denominator,
            weights,
        })
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn overflow() -> Error {
    Error::GuardExceeded {
        what: "exact law denominator",
        size: f64::INFINITY,
        limit: u128::MAX as f64,
    }
}

/// Law of one update step applied to a coloring drawn from `input`.
pub fn update_law(g: &Graph, v: Vertex, u: Vertex, input: &ExactLaw) -> Result<ExactLaw> {
    check_pair(g, v, u)?;
    if input.n != g.n() {
        return Err(Error::MismatchedUniverse(format!(
            "law on {} vertices, graph on {}",
            input.n,
            g.n()
        )));
    }
    if input.k < 2 {
        return Err(Error::ContractViolation("update needs at least two colors".into()));
    }
    let mut finder = ChainFinder::new(g.n());
    step_law(g, v, u, input, &mut finder)
}

fn step_law(
    g: &Graph,
    v: Vertex,
    u: Vertex,
    input: &ExactLaw,
    finder: &mut ChainFinder,
) -> Result<ExactLaw> {
    let k = input.k;
    let branches = (k - 1) as u128;
    let denominator = input.denominator.checked_mul(branches).ok_or_else(overflow)?;
    let mut weights: HashMap<Vec<Color>, u128> = HashMap::with_capacity(input.weights.len());
    for (sigma, w) in input.iter() {
        let c = sigma[v];
        if c != sigma[u] {
            *weights.entry(sigma.to_vec()).or_default() += w * branches;
            continue;
        }
        for q in (0..k).filter(|&q| q != c) {
            let chain = finder.find(g, v, sigma, q);
            let mut tau = Coloring::from_raw(sigma.to_vec(), k);
            apply_switch(&mut tau, &chain);
            *weights.entry(tau.into_vec()).or_default() += w;
        }
    }
    Ok(ExactLaw {
        n: input.n,
        k,
        denominator,
        weights,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LawOptions {
    /// Average over every order of the re-added edges instead of using the
    /// sequence's own order.
    pub marginalize_order: bool,
}

/// Exact law of the sampler's output on `g`: the peel sequence is built from
/// `cfg.seed`, `G_0` is colored uniformly, and every switching color is
/// branched on.
pub fn exact_output_law(g: &Graph, cfg: &RunConfig, options: LawOptions) -> Result<ExactLaw> {
    cfg.validate()?;
    let membership = check_x_membership(g, cfg.d, cfg.cap);
    if !membership.member {
        return Err(Error::Rejected(
            membership.reason().unwrap_or("rejected").to_string(),
        ));
    }
    let seq = build_peel_sequence(g, cfg.cap, cfg.seed);
    exact_output_law_for_sequence(&seq, cfg.k, options)
}

/// Same as [`exact_output_law`] for an explicit sequence. The base graph
/// need not be a union of cycles; its coloring is taken uniform regardless.
pub fn exact_output_law_for_sequence(
    seq: &PeelSequence,
    k: usize,
    options: LawOptions,
) -> Result<ExactLaw> {
    if k < 2 && seq.steps() > 0 {
        return Err(Error::ContractViolation("update needs at least two colors".into()));
    }
    let n = seq.base.n();
    let r = seq.steps();
    let orders = if options.marginalize_order {
        (1..=r).map(|x| x as f64).product::<f64>()
    } else {
        1.0
    };
    let work = (k as f64).powi(n as i32) * (k.max(2) - 1) as f64 * r.max(1) as f64 * orders;
    if work > LAW_WORK_LIMIT {
        return Err(Error::GuardExceeded {
            what: "exact output law",
            size: work,
            limit: LAW_WORK_LIMIT,
        });
    }

    let start = ExactLaw::uniform_proper(&seq.base, k)?;
    if !options.marginalize_order {
        return propagate(seq, &start);
    }
    let laws = permutations(r)
        .map(|perm| {
            let order = perm.iter().map(|&i| seq.additions[i]).collect();
            propagate(&seq.with_additions(order)?, &start)
        })
        .collect::<Result<Vec<_>>>()?;
    ExactLaw::mixture(&laws)
}

fn propagate(seq: &PeelSequence, start: &ExactLaw) -> Result<ExactLaw> {
    let mut graph = seq.base.clone();
    let mut finder = ChainFinder::new(graph.n());
    let mut law = start.clone();
    for &edge in &seq.additions {
        let (v, u) = edge.endpoints();
        law = step_law(&graph, v, u, &law, &mut finder)?;
        graph.add_edge(edge)?;
    }
    Ok(law)
}

/// Permutations of `0..r` in lexicographic order.
fn permutations(r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = Some((0..r).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let p = current.as_mut().unwrap();
        match (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
            None => current = None,
            Some(i) => {
                let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
                p.swap(i - 1, j);
                p[i..].reverse();
            }
        }
        Some(out)
    })
}
