use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Edge, Graph, Vertex};
use crate::error::{Error, Result};

/// Length bound for "short" cycles: a cycle is short iff its length is
/// strictly below `value`. Zero means no cycle is short.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct CycleThreshold(usize);

impl CycleThreshold {
    pub const NONE: CycleThreshold = CycleThreshold(0);

    pub fn new(value: usize) -> Result<Self> {
        if value == 1 || value == 2 {
            return Err(Error::InvalidParameter(format!(
                "cycle threshold must be 0 or at least 3, got {value}"
            )));
        }
        Ok(CycleThreshold(value))
    }

    /// `ceil(log_d(n) / 9)`. Values below 3 admit no simple cycle and are
    /// normalized to [`CycleThreshold::NONE`], as is any `d <= 1`.
    pub fn from_formula(n: usize, d: f64) -> Self {
        if n < 2 || d.is_nan() || d <= 1.0 {
            return Self::NONE;
        }
        let raw = ((n as f64).ln() / d.ln() / 9.0).ceil();
        if raw < 3.0 {
            Self::NONE
        } else {
            CycleThreshold(raw as usize)
        }
    }

    pub fn value(self) -> usize {
        self.0
    }

    pub fn is_short(self, length: usize) -> bool {
        length < self.0
    }

    /// Longest path (in edges) worth searching between the endpoints of an
    /// edge: a path of length `L` closes a cycle of length `L + 1`.
    fn max_path_len(self) -> usize {
        self.0.saturating_sub(2)
    }
}

impl TryFrom<usize> for CycleThreshold {
    type Error = Error;

    fn try_from(value: usize) -> Result<Self> {
        CycleThreshold::new(value)
    }
}

impl From<CycleThreshold> for usize {
    fn from(t: CycleThreshold) -> usize {
        t.0
    }
}

/// Reusable scratch space for truncated BFS cycle searches. Stamping avoids
/// clearing an `n`-sized buffer per edge.
#[derive(Debug, Default)]
pub struct CycleSearch {
    stamp: Vec<u32>,
    depth: Vec<u32>,
    current: u32,
    queue: VecDeque<Vertex>,
}

impl CycleSearch {
    pub fn new(n: usize) -> Self {
        CycleSearch {
            stamp: vec![0; n],
            depth: vec![0; n],
            current: 0,
            queue: VecDeque::new(),
        }
    }

    /// Length of the shortest simple cycle through `e` if that length is
    /// short under `cap`. The caller guarantees `e` is an edge of `g`.
    pub fn shortest_through(&mut self, g: &Graph, e: Edge, cap: CycleThreshold) -> Option<usize> {
        let max_path = cap.max_path_len();
        if max_path < 2 {
            return None;
        }
        if self.stamp.len() < g.n() {
            self.stamp.resize(g.n(), 0);
            self.depth.resize(g.n(), 0);
        }
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.current = 1;
        }

        let (source, target) = e.endpoints();
        self.queue.clear();
        self.queue.push_back(source);
        self.stamp[source] = self.current;
        self.depth[source] = 0;

        while let Some(x) = self.queue.pop_front() {
            let dx = self.depth[x] as usize;
            if dx >= max_path {
                break;
            }
            for &y in g.neighbors(x) {
                if x == source && y == target {
                    continue;
                }
                if y == target {
                    return Some(dx + 2);
                }
                if self.stamp[y] != self.current {
                    self.stamp[y] = self.current;
                    self.depth[y] = (dx + 1) as u32;
                    self.queue.push_back(y);
                }
            }
        }
        None
    }
}

/// Shortest simple cycle through `e`, reported only when it is short under
/// `cap`.
pub fn shortest_cycle_through_edge(
    g: &Graph,
    e: Edge,
    cap: CycleThreshold,
) -> Result<Option<usize>> {
    if !g.contains(e) {
        return Err(Error::InvalidEdge(e.lo(), e.hi()));
    }
    Ok(CycleSearch::new(g.n()).shortest_through(g, e, cap))
}

/// Edges lying on no short cycle, in lexicographic order.
pub fn removable_edges(g: &Graph, cap: CycleThreshold) -> Vec<Edge> {
    if cap.max_path_len() < 2 {
        return g.edges().collect();
    }
    let mut search = CycleSearch::new(g.n());
    g.edges()
        .filter(|&e| search.shortest_through(g, e, cap).is_none())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5_with_chord() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap()
    }

    fn cap(v: usize) -> CycleThreshold {
        CycleThreshold::new(v).unwrap()
    }

    #[test]
    fn threshold_validation() {
        assert!(CycleThreshold::new(1).is_err());
        assert!(CycleThreshold::new(2).is_err());
        assert_eq!(CycleThreshold::new(0).unwrap(), CycleThreshold::NONE);
        assert!(!CycleThreshold::NONE.is_short(3));
        assert!(cap(4).is_short(3));
        assert!(!cap(4).is_short(4));
    }

    #[test]
    fn formula_threshold() {
        // log_5(1e5) / 9 ~ 0.8
        assert_eq!(CycleThreshold::from_formula(100_000, 5.0), CycleThreshold::NONE);
        // log_2(2^20) / 9 ~ 2.2 and log_2(2^30) / 9 ~ 3.3
        assert_eq!(CycleThreshold::from_formula(1 << 20, 2.0).value(), 3);
        assert_eq!(CycleThreshold::from_formula(1 << 30, 2.0).value(), 4);
        assert_eq!(CycleThreshold::from_formula(1000, 0.5), CycleThreshold::NONE);
    }

    #[test]
    fn triangle_edge() {
        let g = Graph::cycle(3);
        assert_eq!(shortest_cycle_through_edge(&g, Edge::new(0, 1), cap(9)).unwrap(), Some(3));
        assert_eq!(shortest_cycle_through_edge(&g, Edge::new(0, 1), cap(3)).unwrap(), None);
        assert_eq!(shortest_cycle_through_edge(&g, Edge::new(0, 1), cap(4)).unwrap(), Some(3));
    }

    #[test]
    fn path_has_no_cycle() {
        let g = Graph::path(3);
        for c in [0, 3, 9, 100] {
            assert_eq!(shortest_cycle_through_edge(&g, Edge::new(0, 1), cap(c)).unwrap(), None);
        }
    }

    #[test]
    fn chorded_pentagon() {
        let g = c5_with_chord();
        assert_eq!(shortest_cycle_through_edge(&g, Edge::new(0, 1), cap(9)).unwrap(), Some(3));
        assert_eq!(shortest_cycle_through_edge(&g, Edge::new(2, 3), cap(9)).unwrap(), Some(4));
        assert_eq!(shortest_cycle_through_edge(&g, Edge::new(2, 3), cap(4)).unwrap(), None);
        assert_eq!(shortest_cycle_through_edge(&g, Edge::new(2, 3), cap(5)).unwrap(), Some(4));
    }

    #[test]
    fn missing_edge_is_an_error() {
        let g = Graph::path(3);
        assert!(matches!(
            shortest_cycle_through_edge(&g, Edge::new(0, 2), cap(9)),
            Err(Error::InvalidEdge(0, 2))
        ));
    }

    #[test]
    fn removable_examples() {
        assert!(removable_edges(&Graph::cycle(3), cap(9)).is_empty());
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(removable_edges(&star, cap(9)).len(), 3);
        assert_eq!(
            removable_edges(&c5_with_chord(), cap(4)),
            vec![Edge::new(0, 4), Edge::new(2, 3), Edge::new(3, 4)]
        );
        assert_eq!(removable_edges(&c5_with_chord(), CycleThreshold::NONE).len(), 6);
    }
}
