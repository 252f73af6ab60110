use rand::Rng;

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlauberMove {
    pub vertex: Vertex,
    pub from: Color,
    pub to: Color,
    /// No other color was available at `vertex`.
    pub frozen: bool,
}

/// One heat-bath step: a uniform vertex is recolored uniformly among the
/// colors absent from its neighbourhood. Keeps a proper coloring proper.
pub fn glauber_step<R: Rng + ?Sized>(g: &Graph, sigma: &mut Coloring, rng: &mut R) -> GlauberMove {
    let vertex = rng.gen_range(0..g.n());
    let from = sigma.get(vertex);
    let mut blocked = vec![false; sigma.k()];
    for &y in g.neighbors(vertex) {
        blocked[sigma.get(y)] = true;
    }
    let free: Vec<Color> = (0..sigma.k()).filter(|&c| !blocked[c]).collect();
    let to = if free.is_empty() {
        from
    } else {
        free[rng.gen_range(0..free.len())]
    };
    sigma.set(vertex, to);
    GlauberMove {
        vertex,
        from,
        to,
        frozen: free.iter().all(|&c| c == from),
    }
}

/// First-fit coloring in vertex order, if it fits in `k` colors.
pub fn greedy_coloring(g: &Graph, k: usize) -> Option<Coloring> {
    let mut colors = vec![0; g.n()];
    for v in 0..g.n() {
        let mut blocked = vec![false; k];
        for &y in g.neighbors(v).iter().filter(|&&y| y < v) {
            blocked[colors[y]] = true;
        }
        colors[v] = (0..k).find(|&c| !blocked[c])?;
    }
    Some(Coloring::from_raw(colors, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triangle_with_three_colors_is_frozen() {
        let g = Graph::cycle(3);
        let mut sigma = greedy_coloring(&g, 3).unwrap();
        let start = sigma.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            assert!(glauber_step(&g, &mut sigma, &mut rng).frozen);
        }
        assert_eq!(sigma, start);
    }

    #[test]
    fn stays_proper() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let mut sigma = greedy_coloring(&g, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            glauber_step(&g, &mut sigma, &mut rng);
            assert!(sigma.is_proper(&g));
        }
    }

    #[test]
    fn greedy_limits() {
        assert!(greedy_coloring(&Graph::complete(4), 3).is_none());
        assert!(greedy_coloring(&Graph::complete(4), 4).unwrap().is_proper(&Graph::complete(4)));
    }
}
