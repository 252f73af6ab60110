use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::law::ExactLaw;
use crate::coloring::Color;
use crate::error::{Error, Result};

/// Exact total variation distance between two laws on the same universe.
pub fn tv_distance(p: &ExactLaw, q: &ExactLaw) -> Result<BigRational> {
    if (p.n(), p.k()) != (q.n(), q.k()) {
        return Err(Error::MismatchedUniverse(format!(
            "({} vertices, {} colors) vs ({} vertices, {} colors)",
            p.n(),
            p.k(),
            q.n(),
            q.k()
        )));
    }
    let (dp, dq) = (p.denominator(), q.denominator());
    // sum over the union of supports of |a/dp - b/dq|, scaled by dp*dq
    let terms = p
        .iter()
        .map(|(c, a)| (a, q.weight(c)))
        .chain(q.iter().filter(|(c, _)| p.weight(c) == 0).map(|(_, b)| (0, b)));
    let numerator = match dp.checked_mul(dq) {
        Some(_) => {
            let mut sum = BigInt::from(0);
            let mut acc: u128 = 0;
            for (a, b) in terms {
                let diff = (a * dq).abs_diff(b * dp);
                match acc.checked_add(diff) {
                    Some(x) => acc = x,
                    None => {
                        sum += BigInt::from(acc);
                        acc = diff;
                    }
                }
            }
            sum + BigInt::from(acc)
        }
        None => terms
            .map(|(a, b)| {
                let x = BigInt::from(a) * BigInt::from(dq) - BigInt::from(b) * BigInt::from(dp);
                if x < BigInt::from(0) {
                    -x
                } else {
                    x
                }
            })
            .sum(),
    };
    Ok(BigRational::new(
        numerator,
        BigInt::from(2) * BigInt::from(dp) * BigInt::from(dq),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

impl ChiSquare {
    fn from_statistic(statistic: f64, dof: usize) -> Self {
        let p_value = if !statistic.is_finite() {
            0.0
        } else if dof == 0 {
            1.0
        } else {
            ChiSquared::new(dof as f64)
                .map(|d| d.sf(statistic))
                .unwrap_or(f64::NAN)
        };
        ChiSquare {
            statistic,
            dof,
            p_value,
        }
    }
}

/// Pearson test of `counts` against the uniform law on its cells.
pub fn chi_square_uniform(counts: &[u64]) -> ChiSquare {
    let total: u64 = counts.iter().sum();
    if counts.is_empty() || total == 0 {
        return ChiSquare::from_statistic(0.0, 0);
    }
    let expected = total as f64 / counts.len() as f64;
    let statistic = counts
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    ChiSquare::from_statistic(statistic, counts.len() - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionReport {
    pub support_size: usize,
    pub sample_count: u64,
    /// Samples that fell outside the support of the reference law.
    pub outside_support: u64,
    pub tv_distance: f64,
    pub chi_square: Option<ChiSquare>,
}

/// Sample counts keyed by coloring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    counts: HashMap<Vec<Color>, u64>,
    total: u64,
}

impl EmpiricalDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, coloring: &[Color]) {
        *self.counts.entry(coloring.to_vec()).or_default() += 1;
        self.total += 1;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, coloring: &[Color]) -> u64 {
        self.counts.get(coloring).copied().unwrap_or(0)
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Counts as a list, for tests against uniform cells.
    pub fn counts(&self) -> impl Iterator<Item = (&[Color], u64)> + '_ {
        self.counts.iter().map(|(c, &n)| (c.as_slice(), n))
    }

    /// Total variation distance between the empirical law and `law`.
    pub fn tv_to(&self, law: &ExactLaw) -> f64 {
        if self.total == 0 {
            return 1.0;
        }
        let n = self.total as f64;
        let d = law.denominator() as f64;
        let mut sum = 0.0;
        for (c, w) in law.iter() {
            sum += (self.count(c) as f64 / n - w as f64 / d).abs();
        }
        for (c, &m) in &self.counts {
            if law.weight(c) == 0 {
                sum += m as f64 / n;
            }
        }
        sum / 2.0
    }

    /// Compares against `law`. The chi-square statistic is only computed
    /// when every expected cell count is at least 5.
    pub fn compare(&self, law: &ExactLaw) -> DistributionReport {
        let outside_support = self
            .counts
            .iter()
            .filter(|(c, _)| law.weight(c) == 0)
            .map(|(_, &m)| m)
            .sum();
        let n = self.total as f64;
        let d = law.denominator() as f64;
        let cells: Vec<(u64, f64)> = law
            .iter()
            .filter(|&(_, w)| w > 0)
            .map(|(c, w)| (self.count(c), n * w as f64 / d))
            .collect();
        let chi_square = (self.total > 0 && cells.iter().all(|&(_, e)| e >= 5.0)).then(|| {
            let statistic = if outside_support > 0 {
                f64::INFINITY
            } else {
                cells.iter().map(|&(o, e)| (o as f64 - e).powi(2) / e).sum()
            };
            ChiSquare::from_statistic(statistic, cells.len().saturating_sub(1))
        });
        DistributionReport {
            support_size: law.support_size(),
            sample_count: self.total,
            outside_support,
            tv_distance: self.tv_to(law),
            chi_square,
        }
    }

    /// CSV with header `coloring_id,count`, rows sorted by id. An id is the
    /// coloring written as colon-separated colors.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "coloring_id,count")?;
        let rows: BTreeMap<&[Color], u64> =
            self.counts.iter().map(|(c, &m)| (c.as_slice(), m)).collect();
        for (c, m) in rows {
            let id: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{},{m}", id.join(":"))?;
        }
        Ok(())
    }
}

/// Lossy conversion for reporting.
pub(crate) fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn law(colorings: &[&[Color]]) -> ExactLaw {
        ExactLaw::uniform(2, 3, colorings.iter().map(|c| c.to_vec())).unwrap()
    }

    #[test]
    fn tv_examples() {
        let p = law(&[&[0, 1], &[1, 0]]);
        let q = law(&[&[0, 1], &[1, 2]]);
        assert_eq!(tv_distance(&p, &q).unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(tv_distance(&p, &p).unwrap().is_zero());
        let r = law(&[&[2, 2]]);
        assert_eq!(tv_distance(&p, &r).unwrap(), BigRational::from_integer(1.into()));
        let other = ExactLaw::uniform(2, 4, [vec![0, 1]]).unwrap();
        assert!(matches!(tv_distance(&p, &other), Err(Error::MismatchedUniverse(_))));
    }

    #[test]
    fn empirical_against_law() {
        let p = law(&[&[0, 1], &[1, 0]]);
        let mut e = EmpiricalDistribution::new();
        for _ in 0..30 {
            e.add(&[0, 1]);
        }
        for _ in 0..10 {
            e.add(&[1, 0]);
        }
        assert!((e.tv_to(&p) - 0.25).abs() < 1e-12);
        let report = e.compare(&p);
        let chi = report.chi_square.unwrap();
        assert!((chi.statistic - 10.0).abs() < 1e-9);
        assert_eq!(chi.dof, 1);
        assert!(chi.p_value < 0.01);
        e.add(&[2, 2]);
        let report = e.compare(&p);
        assert_eq!(report.outside_support, 1);
        assert_eq!(report.chi_square.unwrap().p_value, 0.0);
    }

    #[test]
    fn uniform_chi_square() {
        let c = chi_square_uniform(&[100, 100, 100]);
        assert_eq!(c.statistic, 0.0);
        assert!((c.p_value - 1.0).abs() < 1e-12);
        // 5.991 is the 0.05 quantile of chi-square with 2 degrees of freedom
        let c = ChiSquare::from_statistic(5.991, 2);
        assert!((c.p_value - 0.05).abs() < 1e-3);
    }

    #[test]
    fn csv_output() {
        let mut e = EmpiricalDistribution::new();
        e.add(&[1, 0, 2]);
        e.add(&[0, 1, 2]);
        e.add(&[1, 0, 2]);
        let mut buf = Vec::new();
        e.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "coloring_id,count\n0:1:2,1\n1:0:2,2\n"
        );
    }
}
