//! Exact uniform sampling of proper colorings for graphs whose components are
//! isolated vertices and cycles.
//!
//! Once the first vertex `w_0` of a cycle is colored, the rest of the cycle is
//! a path whose far end is pinned to `w_0`. The conditional law of `w_i` given
//! `w_0..w_{i-1}` depends only on `w_{i-1}` and `w_0`, and is proportional to
//! the number of proper colorings of the remaining arc `w_i, ..., w_{L-1}, w_0`
//! with its two end colors fixed. Those counts come from a two-state transfer
//! recurrence kept in exact integers.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::SimpleDecomposition;

/// `N_eq(m)` and `N_neq(m)`: proper colorings of a path with `m` edges whose
/// end colors are fixed and equal, respectively fixed and distinct.
#[derive(Clone, Debug)]
pub struct PathCountTable {
    k: usize,
    equal: Vec<BigUint>,
    distinct: Vec<BigUint>,
}

impl PathCountTable {
    pub fn new(k: usize, max_len: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("need at least one color".into()));
        }
        let mut table = PathCountTable {
            k,
            equal: vec![BigUint::from(1u32)],
            distinct: vec![BigUint::zero()],
        };
        table.extend_to(max_len);
        Ok(table)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_len(&self) -> usize {
        self.equal.len() - 1
    }

    pub fn extend_to(&mut self, max_len: usize) {
        let k = self.k;
        while self.equal.len() <= max_len {
            let m = self.equal.len();
            let (eq, neq) = if k == 1 {
                (BigUint::zero(), BigUint::zero())
            } else {
                let prev_eq = &self.equal[m - 1];
                let prev_neq = &self.distinct[m - 1];
                (
                    prev_neq * (k - 1),
                    prev_eq + prev_neq * (k - 2),
                )
            };
            self.equal.push(eq);
            self.distinct.push(neq);
        }
    }

    /// Panics if `m` exceeds [`max_len`](Self::max_len).
    pub fn count(&self, m: usize, equal: bool) -> &BigUint {
        if equal {
            &self.equal[m]
        } else {
            &self.distinct[m]
        }
    }

    /// Proper colorings of the cycle `C_len`: a closed path with both ends on
    /// the same vertex.
    pub fn cycle_colorings(&self, len: usize) -> BigUint {
        self.count(len, true) * self.k
    }
}

pub fn path_count(k: usize, m: usize, equal: bool) -> Result<BigUint> {
    Ok(PathCountTable::new(k, m)?.count(m, equal).clone())
}

/// Exact conditional law of `w_i` (with `i = prefix.len()`) on the cycle
/// `w_0 .. w_{len-1}` given the colors of `w_0 .. w_{i-1}`. Entry `c` is the
/// probability of color `c`.
pub fn cycle_vertex_marginal(len: usize, k: usize, prefix: &[Color]) -> Result<Vec<BigRational>> {
    let i = prefix.len();
    if len < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {len} < 3")));
    }
    if i == 0 || i >= len {
        return Err(Error::ContractViolation(format!(
            "prefix length must be in 1..{len}, got {i}"
        )));
    }
    if let Some(&c) = prefix.iter().find(|&&c| c >= k) {
        return Err(Error::ContractViolation(format!("color {c} outside 0..{k}")));
    }
    if let Some(j) = (1..i).find(|&j| prefix[j] == prefix[j - 1]) {
        return Err(Error::ContractViolation(format!(
            "prefix is improper at w_{} = w_{j}",
            j - 1
        )));
    }

    let table = PathCountTable::new(k, len - i)?;
    let remaining = len - i;
    let weights: Vec<BigUint> = (0..k)
        .map(|c| {
            if c == prefix[i - 1] {
                BigUint::zero()
            } else {
                table.count(remaining, c == prefix[0]).clone()
            }
        })
        .collect();
    let total: BigUint = weights.iter().sum();
    if total.is_zero() {
        return Err(Error::Infeasible(format!(
            "no proper {k}-coloring of C_{len} extends the prefix"
        )));
    }
    let total = BigInt::from(total);
    Ok(weights
        .into_iter()
        .map(|w| BigRational::new(w.into(), total.clone()))
        .collect())
}

/// Draws an exactly uniform proper `k`-coloring of the graph described by
/// `decomposition`.
///
/// Randomness is consumed in a fixed order: one draw per isolated vertex (in
/// listed order), then each cycle in listed order, vertex by vertex.
pub fn sample_simple<R: Rng + ?Sized>(
    decomposition: &SimpleDecomposition,
    k: usize,
    rng: &mut R,
) -> Result<Coloring> {
    let n = decomposition.vertex_count();
    validate(decomposition, n)?;
    if n > 0 && k == 0 {
        return Err(Error::Infeasible("zero colors".into()));
    }
    let max_len = decomposition.longest_cycle().unwrap_or(0);
    let table = PathCountTable::new(k.max(1), max_len)?;
    if let Some(len) = decomposition
        .cycles
        .iter()
        .map(Vec::len)
        .find(|&len| table.count(len, true).is_zero())
    {
        return Err(Error::Infeasible(format!(
            "C_{len} has no proper {k}-coloring"
        )));
    }

    let mut colors = vec![0; n];
    for &v in &decomposition.isolated_vertices {
        colors[v] = rng.gen_range(0..k);
    }
    for cycle in &decomposition.cycles {
        sample_cycle(cycle, &table, &mut colors, rng);
    }
    Ok(Coloring::from_raw(colors, k))
}

fn sample_cycle<R: Rng + ?Sized>(
    cycle: &[usize],
    table: &PathCountTable,
    colors: &mut [Color],
    rng: &mut R,
) {
    let k = table.k();
    let len = cycle.len();
    let first = rng.gen_range(0..k);
    colors[cycle[0]] = first;
    let mut prev = first;
    for i in 1..len {
        let remaining = len - i;
        let next = if prev == first {
            // every admissible color is distinct from `first`: equal weights
            skip(rng.gen_range(0..k - 1), &[prev])
        } else {
            // `first` has weight N_eq, each of the other k - 2 colors N_neq
            let to_first = table.count(remaining, true);
            let to_other = table.count(remaining, false);
            let total = to_first + to_other * (k - 2);
            if uniform_below(rng, &total) < *to_first {
                first
            } else {
                let mut excluded = [prev, first];
                excluded.sort_unstable();
                skip(rng.gen_range(0..k - 2), &excluded)
            }
        };
        colors[cycle[i]] = next;
        prev = next;
    }
}

/// Maps an index in `0..k - excluded.len()` to the matching color once the
/// sorted `excluded` colors are skipped.
fn skip(mut index: Color, excluded: &[Color]) -> Color {
    for &e in excluded {
        if index >= e {
            index += 1;
        }
    }
    index
}

fn uniform_below<R: Rng + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    match bound.to_u64() {
        Some(b) => BigUint::from(rng.gen_range(0..b)),
        None => rng.gen_biguint_below(bound),
    }
}

fn validate(decomposition: &SimpleDecomposition, n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    let all = decomposition
        .isolated_vertices
        .iter()
        .chain(decomposition.cycles.iter().flatten());
    for &v in all {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} is out of range or listed twice"
            )));
        }
    }
    if let Some(c) = decomposition.cycles.iter().find(|c| c.len() < 3) {
        return Err(Error::InvalidParameter(format!(
            "cycle {c:?} has fewer than 3 vertices"
        )));
    }
    Ok(())
}
