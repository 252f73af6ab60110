//! Kempe chains (disagreement graphs), q-switching, and the single-edge
//! update step.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// The maximal connected set of vertices reachable from `anchor` through
/// vertices colored with one of `colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempeChain {
    pub anchor: Vertex,
    /// `(sigma(anchor), q)`
    pub colors: (Color, Color),
    /// In BFS discovery order, anchor first.
    pub vertices: Vec<Vertex>,
    /// Adjacency entries examined while growing the chain.
    pub edge_visits: usize,
}

impl KempeChain {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

/// Chain search with reusable marks, so repeated searches on a large graph
/// cost time proportional to the chain rather than to `n`.
#[derive(Debug, Default)]
pub struct ChainFinder {
    stamp: Vec<u32>,
    current: u32,
    queue: VecDeque<Vertex>,
}

impl ChainFinder {
    pub fn new(n: usize) -> Self {
        ChainFinder {
            stamp: vec![0; n],
            current: 0,
            queue: VecDeque::new(),
        }
    }

    /// Restricted BFS from `v` over vertices colored `sigma[v]` or `q`. No
    /// precondition checks; the search is also well defined on improper
    /// colorings.
    pub fn find(&mut self, g: &Graph, v: Vertex, sigma: &[Color], q: Color) -> KempeChain {
        if self.stamp.len() < g.n() {
            self.stamp.resize(g.n(), 0);
        }
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.current = 1;
        }
        let c = sigma[v];
        let mut vertices = vec![v];
        let mut edge_visits = 0;
        self.stamp[v] = self.current;
        self.queue.clear();
        self.queue.push_back(v);
        while let Some(x) = self.queue.pop_front() {
            let neighbors = g.neighbors(x);
            edge_visits += neighbors.len();
            for &y in neighbors {
                if self.stamp[y] != self.current && (sigma[y] == c || sigma[y] == q) {
                    self.stamp[y] = self.current;
                    vertices.push(y);
                    self.queue.push_back(y);
                }
            }
        }
        KempeChain {
            anchor: v,
            colors: (c, q),
            vertices,
            edge_visits,
        }
    }

    /// Whether `x` belongs to the chain produced by the latest
    /// [`find`](Self::find).
    pub fn last_contains(&self, x: Vertex) -> bool {
        self.current != 0 && self.stamp.get(x) == Some(&self.current)
    }
}

fn check_anchor(g: &Graph, v: Vertex, sigma: &Coloring, q: Color) -> Result<()> {
    if v >= g.n() {
        return Err(Error::IndexOutOfRange {
            index: v,
            len: g.n(),
        });
    }
    sigma.ensure_proper(g)?;
    if q >= sigma.k() {
        return Err(Error::ContractViolation(format!(
            "color {q} outside 0..{}",
            sigma.k()
        )));
    }
    if q == sigma.get(v) {
        return Err(Error::ContractViolation(format!(
            "q = {q} equals the anchor's own color"
        )));
    }
    Ok(())
}

pub fn kempe_chain(g: &Graph, v: Vertex, sigma: &Coloring, q: Color) -> Result<KempeChain> {
    check_anchor(g, v, sigma, q)?;
    Ok(ChainFinder::new(g.n()).find(g, v, sigma.as_slice(), q))
}

/// Exchanges the two chain colors on every chain vertex.
pub fn apply_switch(sigma: &mut Coloring, chain: &KempeChain) {
    let (c, q) = chain.colors;
    for &w in &chain.vertices {
        let new = if sigma.get(w) == c { q } else { c };
        sigma.set(w, new);
    }
}

/// q-switching of `sigma` at `v`: the result agrees with `sigma` off the
/// Kempe chain and swaps `sigma(v)` with `q` on it.
pub fn switching(g: &Graph, v: Vertex, sigma: &Coloring, q: Color) -> Result<Coloring> {
    let chain = kempe_chain(g, v, sigma, q)?;
    let mut tau = sigma.clone();
    apply_switch(&mut tau, &chain);
    Ok(tau)
}

/// What one update step did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UpdateOutcome {
    /// `sigma(v) == sigma(u)` on entry.
    pub was_bad: bool,
    /// The drawn switching color, if any.
    pub q: Option<Color>,
    pub chain_size: usize,
    /// `v` and `u` still share a color after switching: the chain reached `u`.
    pub still_bad_after: bool,
}

impl UpdateOutcome {
    pub fn switch_failed(&self) -> bool {
        self.was_bad && self.still_bad_after
    }
}

/// Uniform color from `0..k` other than `c`.
pub fn draw_other_color<R: Rng + ?Sized>(rng: &mut R, k: usize, c: Color) -> Color {
    let r = rng.gen_range(0..k - 1);
    if r >= c {
        r + 1
    } else {
        r
    }
}

/// Update step with scratch space carried across calls.
#[derive(Debug, Default)]
pub struct Updater {
    finder: ChainFinder,
}

impl Updater {
    pub fn new(n: usize) -> Self {
        Updater {
            finder: ChainFinder::new(n),
        }
    }

    /// In-place update without precondition checks. A good coloring is left
    /// untouched and consumes no randomness; a bad one draws one color and
    /// switches, without retrying on failure.
    pub fn apply<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        v: Vertex,
        u: Vertex,
        sigma: &mut Coloring,
        rng: &mut R,
    ) -> UpdateOutcome {
        let c = sigma.get(v);
        if c != sigma.get(u) {
            return UpdateOutcome::default();
        }
        let q = draw_other_color(rng, sigma.k(), c);
        let chain = self.finder.find(g, v, sigma.as_slice(), q);
        apply_switch(sigma, &chain);
        UpdateOutcome {
            was_bad: true,
            q: Some(q),
            chain_size: chain.len(),
            still_bad_after: sigma.get(v) == sigma.get(u),
        }
    }
}

/// Update for a proper `sigma` of `g` and a non-adjacent pair `v != u`.
pub fn update<R: Rng + ?Sized>(
    g: &Graph,
    v: Vertex,
    u: Vertex,
    sigma: &Coloring,
    rng: &mut R,
) -> Result<(Coloring, UpdateOutcome)> {
    check_pair(g, v, u)?;
    sigma.ensure_proper(g)?;
    if sigma.k() < 2 {
        return Err(Error::ContractViolation(
            "update needs at least two colors".into(),
        ));
    }
    let mut tau = sigma.clone();
    let outcome = Updater::new(g.n()).apply(g, v, u, &mut tau, rng);
    Ok((tau, outcome))
}

pub(crate) fn check_pair(g: &Graph, v: Vertex, u: Vertex) -> Result<()> {
    for x in [v, u] {
        if x >= g.n() {
            return Err(Error::IndexOutOfRange {
                index: x,
                len: g.n(),
            });
        }
    }
    if v == u {
        return Err(Error::ContractViolation("v and u coincide".into()));
    }
    if g.has_edge(v, u) {
        return Err(Error::ContractViolation(format!(
            "v = {v} and u = {u} are already adjacent"
        )));
    }
    Ok(())
}
