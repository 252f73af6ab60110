//! Named coloring samplers behind one interface, so front ends can pick an
//! algorithm at run time.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{enumerate_colorings, glauber_step, greedy_coloring};
use crate::pipeline::{self, elapsed_ms, RunConfig, RunReport};

pub trait ColoringSampler: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// One sample on `g`, deterministic in `cfg.seed`.
    fn sample(&self, g: &Graph, cfg: &RunConfig) -> Result<RunReport>;
}

/// Peeling plus Kempe-chain updates.
#[derive(Clone, Copy, Debug, Default)]
pub struct KempePeel;

impl ColoringSampler for KempePeel {
    fn name(&self) -> &'static str {
        "kempe-peel"
    }

    fn description(&self) -> &'static str {
        "peel long-cycle edges, color the remainder exactly, re-add edges with Kempe switches"
    }

    fn sample(&self, g: &Graph, cfg: &RunConfig) -> Result<RunReport> {
        pipeline::run(g, cfg)
    }
}

/// Single-site heat-bath dynamics started from a first-fit coloring.
#[derive(Clone, Copy, Debug)]
pub struct Glauber {
    /// Each sweep is `n` single-site steps.
    pub sweeps: usize,
}

impl Default for Glauber {
    fn default() -> Self {
        Glauber { sweeps: 100 }
    }
}

impl ColoringSampler for Glauber {
    fn name(&self) -> &'static str {
        "glauber"
    }

    fn description(&self) -> &'static str {
        "single-site Glauber dynamics from a greedy start (baseline)"
    }

    fn sample(&self, g: &Graph, cfg: &RunConfig) -> Result<RunReport> {
        let started = Instant::now();
        cfg.validate()?;
        let Some(mut sigma) = greedy_coloring(g, cfg.k) else {
            return Ok(RunReport::aborted("greedy_start_failed", started));
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let steps = if g.n() == 0 { 0 } else { self.sweeps * g.n() };
        for _ in 0..steps {
            glauber_step(g, &mut sigma, &mut rng);
        }
        Ok(RunReport {
            aborted: false,
            reason: None,
            coloring: Some(sigma.into_vec()),
            r: steps,
            bad_encounters: 0,
            switch_failures: 0,
            proper: true,
            wall_ms: elapsed_ms(started),
            steps: None,
        })
    }
}

/// Uniform draw from the full list of proper colorings. Small graphs only.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactEnumeration;

impl ColoringSampler for ExactEnumeration {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn description(&self) -> &'static str {
        "enumerate all proper colorings and pick one uniformly (small graphs)"
    }

    fn sample(&self, g: &Graph, cfg: &RunConfig) -> Result<RunReport> {
        let started = Instant::now();
        cfg.validate()?;
        let mut all = enumerate_colorings(g, cfg.k)?;
        if all.is_empty() {
            return Err(Error::Infeasible(format!("graph has no proper {}-coloring", cfg.k)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let pick = all.swap_remove(rng.gen_range(0..all.len()));
        Ok(RunReport {
            aborted: false,
            reason: None,
            coloring: Some(pick.into_vec()),
            r: 0,
            bad_encounters: 0,
            switch_failures: 0,
            proper: true,
            wall_ms: elapsed_ms(started),
            steps: None,
        })
    }
}

/// Samplers by name, in registration order.
pub struct SamplerRegistry {
    entries: Vec<Box<dyn ColoringSampler>>,
}

impl SamplerRegistry {
    pub fn empty() -> Self {
        SamplerRegistry {
            entries: Vec::new(),
        }
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(KempePeel));
        r.register(Box::new(Glauber::default()));
        r.register(Box::new(ExactEnumeration));
        r
    }

    /// Adds a sampler, replacing any previous one with the same name.
    pub fn register(&mut self, sampler: Box<dyn ColoringSampler>) {
        self.entries.retain(|s| s.name() != sampler.name());
        self.entries.push(sampler);
    }

    pub fn get(&self, name: &str) -> Result<&dyn ColoringSampler> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: "sampler",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ColoringSampler> {
        self.entries.iter().map(|s| s.as_ref())
    }
}

impl Default for SamplerRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}
