use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

pub type Color = usize;

/// A total assignment of colors in `0..k` to the vertices of a graph.
/// Properness is checked on demand, not enforced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<Color>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<Color>, k: usize) -> Result<Self> {
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} has color {c}, outside 0..{k}"
            )));
        }
        Ok(Coloring { colors, k })
    }

    pub(crate) fn from_raw(colors: Vec<Color>, k: usize) -> Self {
        debug_assert!(colors.iter().all(|&c| c < k));
        Coloring { colors, k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn into_vec(self) -> Vec<Color> {
        self.colors
    }

    pub(crate) fn set(&mut self, v: Vertex, c: Color) {
        debug_assert!(c < self.k);
        self.colors[v] = c;
    }

    pub fn monochromatic_edges<'g>(&'g self, g: &'g Graph) -> impl Iterator<Item = Edge> + 'g {
        g.edges().filter(|e| self.colors[e.lo()] == self.colors[e.hi()])
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && self.monochromatic_edges(g).next().is_none()
    }

    /// Errors unless `self` is a proper coloring of `g`.
    pub fn ensure_proper(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::ContractViolation(format!(
                "coloring has {} entries for a graph on {} vertices",
                self.colors.len(),
                g.n()
            )));
        }
        if let Some(e) = self.monochromatic_edges(g).next() {
            return Err(Error::ContractViolation(format!(
                "coloring is not proper: edge {e} is monochromatic"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.colors {
            if !first {
                f.write_str(":")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_colors() {
        assert!(Coloring::new(vec![0, 3], 3).is_err());
        assert!(Coloring::new(vec![0, 2], 3).is_ok());
    }

    #[test]
    fn properness() {
        let g = Graph::path(3);
        assert!(Coloring::new(vec![0, 1, 0], 2).unwrap().is_proper(&g));
        let bad = Coloring::new(vec![0, 0, 1], 2).unwrap();
        assert!(!bad.is_proper(&g));
        assert!(matches!(bad.ensure_proper(&g), Err(Error::ContractViolation(_))));
        assert!(!Coloring::new(vec![0, 1], 2).unwrap().is_proper(&g));
        assert_eq!(bad.to_string(), "0:0:1");
    }
}
