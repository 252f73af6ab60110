use serde::Serialize;

use crate::coloring::Color;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Number of simple paths by length (in edges) whose vertices all use
/// colors `c` and `q` and alternate between them. Each undirected path is
/// counted once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathCounts {
    /// `by_length[l]` for `l` in `0..=max_len`; entry 0 is always 0.
    pub by_length: Vec<u64>,
}

impl PathCounts {
    pub fn get(&self, len: usize) -> u64 {
        self.by_length.get(len).copied().unwrap_or(0)
    }

    /// Counts of paths with a distinguished start, i.e. twice the
    /// undirected counts.
    pub fn directed(&self) -> Vec<u64> {
        self.by_length.iter().map(|&x| 2 * x).collect()
    }

    pub fn total(&self) -> u64 {
        self.by_length.iter().sum()
    }
}

/// Counts bichromatic `{c, q}` paths of length `1..=max_len` in `g` under
/// `sigma`. On a proper coloring every two-colored path alternates.
pub fn count_bichromatic_paths(
    g: &Graph,
    sigma: &[Color],
    c: Color,
    q: Color,
    max_len: usize,
) -> Result<PathCounts> {
    if c == q {
        return Err(Error::ContractViolation("path colors must differ".into()));
    }
    if sigma.len() != g.n() {
        return Err(Error::ContractViolation(format!(
            "coloring has {} entries for {} vertices",
            sigma.len(),
            g.n()
        )));
    }
    let mut counts = vec![0u64; max_len + 1];
    let mut on_path = vec![false; g.n()];
    let inside = |x: Vertex| sigma[x] == c || sigma[x] == q;
    for start in (0..g.n()).filter(|&x| inside(x)) {
        on_path[start] = true;
        walk(g, sigma, start, 0, max_len, &inside, &mut on_path, &mut counts);
        on_path[start] = false;
    }
    // every path was found once from each end
    for x in counts.iter_mut() {
        *x /= 2;
    }
    Ok(PathCounts { by_length: counts })
}

#[allow(clippy::too_many_arguments)]
fn walk(
    g: &Graph,
    sigma: &[Color],
    at: Vertex,
    len: usize,
    max_len: usize,
    inside: &dyn Fn(Vertex) -> bool,
    on_path: &mut [bool],
    counts: &mut [u64],
) {
    if len == max_len {
        return;
    }
    for &y in g.neighbors(at) {
        if on_path[y] || !inside(y) || sigma[y] == sigma[at] {
            continue;
        }
        counts[len + 1] += 1;
        on_path[y] = true;
        walk(g, sigma, y, len + 1, max_len, inside, on_path, counts);
        on_path[y] = false;
    }
}

/// Whether a simple path of exactly `len` edges starts at `start` and
/// alternates between colors `c` and `q`.
pub fn has_bichromatic_path_from(
    g: &Graph,
    sigma: &[Color],
    start: Vertex,
    c: Color,
    q: Color,
    len: usize,
) -> bool {
    if sigma[start] != c && sigma[start] != q {
        return false;
    }
    let mut on_path = vec![false; g.n()];
    on_path[start] = true;
    search(g, sigma, start, len, c, q, &mut on_path)
}

fn search(
    g: &Graph,
    sigma: &[Color],
    at: Vertex,
    left: usize,
    c: Color,
    q: Color,
    on_path: &mut [bool],
) -> bool {
    if left == 0 {
        return true;
    }
    let want = if sigma[at] == c { q } else { c };
    for &y in g.neighbors(at) {
        if on_path[y] || sigma[y] != want {
            continue;
        }
        on_path[y] = true;
        let found = search(g, sigma, y, left - 1, c, q, on_path);
        on_path[y] = false;
        if found {
            return true;
        }
    }
    false
}
