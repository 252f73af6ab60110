use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `k^n` search space the enumerator accepts.
pub const ENUMERATION_LIMIT: f64 = 1e8;

fn guard(g: &Graph, k: usize) -> Result<()> {
    let size = (k as f64).powi(g.n() as i32);
    if size > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            what: "coloring enumeration",
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Calls `visit` on every proper `k`-coloring of `g`, in lexicographic order.
pub fn for_each_coloring<F: FnMut(&[Color])>(g: &Graph, k: usize, mut visit: F) -> Result<()> {
    guard(g, k)?;
    let n = g.n();
    if n == 0 {
        visit(&[]);
        return Ok(());
    }
    if k == 0 {
        return Ok(());
    }
    // backtracking; a vertex only checks its earlier neighbours
    let mut colors: Vec<Color> = vec![0; n];
    let mut next: Vec<Color> = vec![0; n];
    let mut v = 0usize;
    loop {
        let mut placed = false;
        while next[v] < k {
            let c = next[v];
            next[v] += 1;
            if g.neighbors(v).iter().take_while(|&&w| w < v).all(|&w| colors[w] != c) {
                colors[v] = c;
                placed = true;
                break;
            }
        }
        if placed {
            if v + 1 == n {
                visit(&colors);
            } else {
                v += 1;
                next[v] = 0;
            }
        } else {
            if v == 0 {
                return Ok(());
            }
            v -= 1;
        }
    }
}

pub fn enumerate_colorings(g: &Graph, k: usize) -> Result<Vec<Coloring>> {
    let mut out = Vec::new();
    for_each_coloring(g, k, |c| out.push(Coloring::from_raw(c.to_vec(), k)))?;
    Ok(out)
}

/// All labelled simple graphs on `n` vertices, one per subset of the
/// `n(n-1)/2` pairs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    assert!(pairs.len() < 32, "too many labelled graphs on {n} vertices");
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p);
        Graph::from_edges(n, edges).expect("distinct pairs")
    })
}

/// Proper colorings of a path with `m` edges whose end colors are fixed to
/// `0` and `0` (`equal`) or `0` and `1`, by listing every assignment of the
/// inner vertices.
pub fn brute_path_count(k: usize, m: usize, equal: bool) -> u64 {
    let (a, b) = (0, usize::from(!equal));
    if b >= k {
        return 0;
    }
    if m == 0 {
        return u64::from(a == b);
    }
    let inner = m - 1;
    let mut count = 0;
    let mut seq = vec![0; m + 1];
    seq[0] = a;
    seq[m] = b;
    for code in 0..k.pow(inner as u32) {
        let mut x = code;
        for slot in seq.iter_mut().skip(1).take(inner) {
            *slot = x % k;
            x /= k;
        }
        if seq.windows(2).all(|w| w[0] != w[1]) {
            count += 1;
        }
    }
    count
}
