//! Undirected simple graphs stored as sorted adjacency lists.
//!
//! Vertices are `0..n`. An [`Edge`] is always normalized so that its first
//! endpoint is the smaller one, which makes edge iteration lexicographic and
//! keeps every consumer of randomness reproducible.

mod cycles;
mod gnp;
mod structure;

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cycles::{removable_edges, shortest_cycle_through_edge, CycleSearch, CycleThreshold};
pub use gnp::{generate_gnp, GnpParams};
pub use structure::{
    check_x_membership, classify_simple, edge_bound, MembershipReport, SimpleDecomposition,
    Violation,
};

pub type Vertex = usize;

/// An unordered vertex pair, stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Vertex, Vertex)")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }
}

impl TryFrom<(Vertex, Vertex)> for Edge {
    type Error = String;

    fn try_from((a, b): (Vertex, Vertex)) -> std::result::Result<Self, String> {
        if a == b {
            return Err(format!("self-loop at vertex {a}"));
        }
        Ok(Edge::new(a, b))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidEdge(a, b));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            edge_count += 1;
        }
        for (a, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge(a, w[0]));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count,
        })
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Self::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n() && b < self.n() && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.lo(), e.hi())
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, list)| {
            let start = list.partition_point(|&b| b < a);
            list[start..].iter().map(move |&b| Edge(a, b))
        })
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<()> {
        let (a, b) = e.endpoints();
        if a == b || b >= self.n() {
            return Err(Error::InvalidEdge(a, b));
        }
        match self.adjacency[a].binary_search(&b) {
            Ok(_) => Err(Error::InvalidEdge(a, b)),
            Err(pos) => {
                self.adjacency[a].insert(pos, b);
                let pos = self.adjacency[b].binary_search(&a).unwrap_err();
                self.adjacency[b].insert(pos, a);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<()> {
        let (a, b) = e.endpoints();
        if !self.contains(e) {
            return Err(Error::InvalidEdge(a, b));
        }
        let pos = self.adjacency[a].binary_search(&b).unwrap();
        self.adjacency[a].remove(pos);
        let pos = self.adjacency[b].binary_search(&a).unwrap();
        self.adjacency[b].remove(pos);
        self.edge_count -= 1;
        Ok(())
    }

    /// Copy of `self` with the given edges removed. Edges not present are
    /// ignored.
    pub fn without_edges(&self, edges: &[Edge]) -> Graph {
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        let kept = self
            .edges()
            .filter(|e| sorted.binary_search(e).is_err())
            .map(Edge::endpoints);
        Graph::from_edges(self.n(), kept).expect("subgraph of a valid graph")
    }

    /// BFS distance; `None` when `t` is unreachable from `s`.
    pub fn distance(&self, s: Vertex, t: Vertex) -> Option<usize> {
        if s == t {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([s]);
        dist[s] = 0;
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == t {
                        return Some(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for root in 0..self.n() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &y in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Reads the plain-text edge list: a header line `n m`, then `m` lines
    /// `u v`. Blank lines are skipped.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut lines = reader
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

        let (line_no, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let header = header?;
        let (n, m) = parse_pair(&header, line_no)?;

        let mut edges = Vec::with_capacity(m);
        for (line_no, line) in lines.by_ref().take(m) {
            let (u, v) = parse_pair(&line?, line_no)?;
            if u == v {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("vertex out of range for n = {n}"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: line_no,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("more than the announced {m} edges"),
            });
        }
        let mut sorted: Vec<Edge> = edges.iter().map(|&(u, v)| Edge::new(u, v)).collect();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line: 0,
                message: format!("duplicate edge {}", w[0]),
            });
        }
        Graph::from_edges(n, edges)
    }

    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.n(), self.edge_count())?;
        for e in self.edges() {
            writeln!(out, "{} {}", e.lo(), e.hi())?;
        }
        Ok(())
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut it = line.split_ascii_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(Error::Parse {
            line: line_no,
            message: "trailing tokens".into(),
        });
    }
    Ok(pair)
}
