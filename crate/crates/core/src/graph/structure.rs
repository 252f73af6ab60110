use serde::{Deserialize, Serialize};

use super::{removable_edges, CycleThreshold, Graph, Vertex};

/// Witness that a graph is a disjoint union of isolated vertices and
/// chordless cycles.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SimpleDecomposition {
    pub isolated_vertices: Vec<Vertex>,
    /// Each cycle in traversal order, starting at its smallest vertex and
    /// continuing towards that vertex's smaller neighbour.
    pub cycles: Vec<Vec<Vertex>>,
}

impl SimpleDecomposition {
    pub fn vertex_count(&self) -> usize {
        self.isolated_vertices.len() + self.cycles.iter().map(Vec::len).sum::<usize>()
    }

    pub fn longest_cycle(&self) -> Option<usize> {
        self.cycles.iter().map(Vec::len).max()
    }
}

/// Decomposes `g` into isolated vertices and cycles, or returns `None` if
/// some component is neither.
pub fn classify_simple(g: &Graph) -> Option<SimpleDecomposition> {
    if (0..g.n()).any(|v| g.degree(v) != 0 && g.degree(v) != 2) {
        return None;
    }
    // a connected 2-regular graph is a chordless cycle
    let mut decomposition = SimpleDecomposition::default();
    let mut seen = vec![false; g.n()];
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        if g.degree(start) == 0 {
            decomposition.isolated_vertices.push(start);
            continue;
        }
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = g.neighbors(start)[0];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            let nb = g.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        decomposition.cycles.push(cycle);
    }
    Some(decomposition)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Violation {
    /// The peeled base graph has a component that is neither a vertex nor a
    /// cycle.
    G0NotSimple,
    /// The base graph is a union of cycles but one of them is not short.
    G0CycleTooLong { length: usize, cap: usize },
    EdgeBoundExceeded { edges: usize, bound: f64 },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::G0NotSimple => "G0_not_simple",
            Violation::G0CycleTooLong { .. } => "G0_cycle_too_long",
            Violation::EdgeBoundExceeded { .. } => "edge_bound_exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub member: bool,
    pub violations: Vec<Violation>,
    pub edge_count: usize,
    pub edge_bound: f64,
    pub removable: usize,
    /// Decomposition of the base graph when it is simple.
    pub decomposition: Option<SimpleDecomposition>,
}

impl MembershipReport {
    /// Code of the first violated condition.
    pub fn reason(&self) -> Option<&'static str> {
        self.violations.first().map(Violation::code)
    }
}

/// `(1 + n^(-1/3)) * d * n / 2`
pub fn edge_bound(n: usize, d: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    (1.0 + n.powf(-1.0 / 3.0)) * d * n / 2.0
}

/// Tests whether `g` is an input the peel-and-update sampler accepts: the
/// graph left after deleting every removable edge must be a union of
/// isolated vertices and short cycles, and `g` must not have too many edges.
/// The outcome does not depend on any removal order.
pub fn check_x_membership(g: &Graph, d: f64, cap: CycleThreshold) -> MembershipReport {
    let removable = removable_edges(g, cap);
    let base = g.without_edges(&removable);
    let mut violations = Vec::new();

    let decomposition = classify_simple(&base);
    match &decomposition {
        None => violations.push(Violation::G0NotSimple),
        Some(dec) => {
            if let Some(length) = dec.cycles.iter().map(Vec::len).find(|&l| !cap.is_short(l)) {
                violations.push(Violation::G0CycleTooLong {
                    length,
                    cap: cap.value(),
                });
            }
        }
    }

    let bound = edge_bound(g.n(), d);
    if g.edge_count() as f64 > bound {
        violations.push(Violation::EdgeBoundExceeded {
            edges: g.edge_count(),
            bound,
        });
    }

    MembershipReport {
        member: violations.is_empty(),
        violations,
        edge_count: g.edge_count(),
        edge_bound: bound,
        removable: removable.len(),
        decomposition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap(v: usize) -> CycleThreshold {
        CycleThreshold::new(v).unwrap()
    }

    #[test]
    fn empty_graph_is_all_isolated() {
        let dec = classify_simple(&Graph::empty(5)).unwrap();
        assert_eq!(dec.isolated_vertices, vec![0, 1, 2, 3, 4]);
        assert!(dec.cycles.is_empty());
    }

    #[test]
    fn disjoint_cycles_and_vertex() {
        // C_3 on {0,1,2}, C_4 on {3,4,5,6}, vertex 7
        let g = Graph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)],
        )
        .unwrap();
        let dec = classify_simple(&g).unwrap();
        assert_eq!(dec.isolated_vertices, vec![7]);
        assert_eq!(dec.cycles, vec![vec![0, 1, 2], vec![3, 4, 5, 6]]);
        assert_eq!(dec.vertex_count(), 8);
    }

    #[test]
    fn path_is_not_simple() {
        assert!(classify_simple(&Graph::path(3)).is_none());
        assert!(classify_simple(&Graph::complete(4)).is_none());
    }

    #[test]
    fn cycle_traversal_order_is_consecutive() {
        let g = Graph::from_edges(5, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 0)]).unwrap();
        let dec = classify_simple(&g).unwrap();
        let cyc = &dec.cycles[0];
        assert_eq!(cyc[0], 0);
        assert_eq!(cyc[1], 2);
        for i in 0..cyc.len() {
            assert!(g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
        }
    }

    #[test]
    fn tree_is_member() {
        let tree = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let report = check_x_membership(&tree, 2.0, cap(9));
        assert!(report.member, "{report:?}");
        assert_eq!(report.removable, 5);
    }

    #[test]
    fn triangles_sharing_an_edge() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let report = check_x_membership(&g, 2.0, cap(9));
        assert!(!report.member);
        assert_eq!(report.reason(), Some("G0_not_simple"));
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn complete_four_is_rejected() {
        let report = check_x_membership(&Graph::complete(4), 3.0, cap(9));
        assert!(!report.member);
        // (1 + 4^(-1/3)) * 3 * 4 / 2 = 9.779..., so 6 edges are within the bound
        assert!((report.edge_bound - 9.779763149684619).abs() < 1e-9);
        let codes: Vec<_> = report.violations.iter().map(Violation::code).collect();
        assert_eq!(codes, vec!["G0_not_simple"]);
        // at d = 1 the bound is 3.26 and both conditions fail
        let report = check_x_membership(&Graph::complete(4), 1.0, cap(9));
        let codes: Vec<_> = report.violations.iter().map(Violation::code).collect();
        assert_eq!(codes, vec!["G0_not_simple", "edge_bound_exceeded"]);
    }

    #[test]
    fn long_cycle_in_base() {
        // cycle of length 5 is not short under cap 5 so its edges are removable;
        // under cap 6 it stays and is short
        let g = Graph::cycle(5);
        assert!(check_x_membership(&g, 2.5, cap(5)).member);
        let report = check_x_membership(&g, 2.5, cap(6));
        assert!(report.member);
        assert_eq!(report.decomposition.unwrap().cycles.len(), 1);
    }
}
