use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kcolor::bench::{bench, BenchConfig};
use kcolor::oracle::{measure_alpha, EmpiricalDistribution};
use kcolor::{
    derive_seed, generate_gnp, CycleThreshold, GnpParams, Graph, RunConfig, SamplerRegistry,
    SuiteBounds, SuiteRegistry,
};

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 42;

const EXIT_USAGE: u8 = 1;
const EXIT_ABORT: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "kcolor", version, about = "Sample proper k-colorings of sparse random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a G(n, d/n) graph and write it as an edge list.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a sampler on a graph file. JSON output is one report per line;
    /// CSV output is the empirical distribution of the colorings.
    Sample {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Expected degree for the edge bound; defaults to the graph's
        /// average degree.
        #[arg(long)]
        d: Option<f64>,
        /// Short-cycle threshold (0 = no cycle is short). Required when the
        /// formula threshold for this graph falls below 3.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Include per-step update records in each report.
        #[arg(long)]
        stats: bool,
        #[arg(long, default_value = "kempe-peel")]
        sampler: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random graphs for sampling-based suites.
        #[arg(long, default_value_t = 10)]
        graphs: usize,
        /// Peel orders per random graph.
        #[arg(long, default_value_t = 20)]
        orders: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pathological fractions for a vertex pair of a graph file.
    MeasureAlpha {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the sampler over graph sizes and fit a log-log exponent.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 5.0)]
        d: f64,
        #[arg(long, default_value_t = 12)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        seeds: usize,
        /// Threshold for every size; defaults to the formula per size.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type Outcome = Result<u8, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Generate { n, d, seed, out } => {
            let g = generate_gnp(&GnpParams::new(n, d, seed).map_err(fail)?).map_err(fail)?;
            let mut w = output(out.as_deref())?;
            g.write_edge_list(&mut w).map_err(fail)?;
            w.flush().map_err(fail)?;
            Ok(0)
        }
        Command::Sample {
            graph,
            k,
            d,
            cap,
            seed,
            trials,
            stats,
            sampler,
            format,
            out,
        } => {
            let g = read_graph(&graph)?;
            let d = d.unwrap_or_else(|| average_degree(&g));
            let cap = match cap {
                Some(c) => CycleThreshold::new(c).map_err(fail)?,
                None => {
                    let formula = CycleThreshold::from_formula(g.n(), d);
                    if formula == CycleThreshold::NONE {
                        return Err(format!(
                            "the formula threshold for n = {} and d = {d} is below 3; pass --cap explicitly",
                            g.n()
                        ));
                    }
                    formula
                }
            };
            if trials == 0 {
                return Err("--trials must be at least 1".into());
            }
            let registry = SamplerRegistry::with_defaults();
            let sampler = registry.get(&sampler).map_err(fail)?;
            let cfg = RunConfig::new(k, d, cap, seed).map_err(fail)?.with_stats(stats);
            let reports = if sampler.name() == "kempe-peel" {
                kcolor::sample_many(&g, &cfg, trials).map_err(fail)?
            } else {
                (0..trials as u64)
                    .map(|i| sampler.sample(&g, &cfg.with_seed(derive_seed(seed, i))))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(fail)?
            };
            let mut w = output(out.as_deref())?;
            match format {
                Format::Json => {
                    for r in &reports {
                        writeln!(w, "{}", r.to_json_line().map_err(fail)?).map_err(fail)?;
                    }
                }
                Format::Csv => {
                    let mut e = EmpiricalDistribution::new();
                    for c in reports.iter().filter_map(|r| r.coloring.as_ref()) {
                        e.add(c);
                    }
                    e.write_csv(&mut w).map_err(fail)?;
                }
            }
            w.flush().map_err(fail)?;
            if let Some(r) = reports.iter().find(|r| r.aborted) {
                eprintln!("aborted: {}", r.reason.as_deref().unwrap_or("unknown"));
                return Ok(EXIT_ABORT);
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            max_n,
            k,
            seed,
            graphs,
            orders,
            out,
        } => {
            let registry = SuiteRegistry::with_defaults();
            let suite = registry.get(&suite).map_err(fail)?;
            let bounds = SuiteBounds {
                max_n,
                k,
                seed,
                graphs,
                orders,
            };
            let report = suite.run(&bounds).map_err(fail)?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", serde_json::to_string(&report).map_err(fail)?).map_err(fail)?;
            w.flush().map_err(fail)?;
            if report.passed {
                Ok(0)
            } else {
                eprintln!(
                    "counterexample: {}",
                    report.counterexample.as_deref().unwrap_or("none recorded")
                );
                Ok(EXIT_VERIFY)
            }
        }
        Command::MeasureAlpha {
            graph,
            v,
            u,
            k,
            format,
            out,
        } => {
            let g = read_graph(&graph)?;
            let report = measure_alpha(&g, v, u, k).map_err(fail)?;
            let mut w = output(out.as_deref())?;
            match format {
                Format::Json => writeln!(w, "{}", serde_json::to_string(&report).map_err(fail)?),
                Format::Csv => write_alpha_csv(&mut w, &report),
            }
            .map_err(fail)?;
            w.flush().map_err(fail)?;
            Ok(0)
        }
        Command::Bench {
            n_list,
            d,
            k,
            seeds,
            cap,
            seed,
            format,
            out,
        } => {
            let cap = cap.map(CycleThreshold::new).transpose().map_err(fail)?;
            let report = bench(&BenchConfig {
                n_list,
                d,
                k,
                seeds,
                master_seed: seed,
                cap,
            })
            .map_err(fail)?;
            let mut w = output(out.as_deref())?;
            match format {
                Format::Csv => report.write_csv(&mut w).map_err(fail)?,
                Format::Json => {
                    writeln!(w, "{}", serde_json::to_string(&report).map_err(fail)?).map_err(fail)?
                }
            }
            w.flush().map_err(fail)?;
            Ok(0)
        }
    }
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, String> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Graph::read_edge_list(BufReader::new(file)).map_err(|e| format!("{}: {e}", path.display()))
}

/// `2m / n`, or 1 for an edgeless graph so the degree stays positive.
fn average_degree(g: &Graph) -> f64 {
    if g.edge_count() == 0 {
        1.0
    } else {
        2.0 * g.edge_count() as f64 / g.n() as f64
    }
}

fn write_alpha_csv(w: &mut dyn Write, report: &kcolor::oracle::AlphaReport) -> io::Result<()> {
    writeln!(w, "c,q,same_total,same_pathological,cross_total,cross_pathological")?;
    for p in &report.pairs {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            p.c, p.q, p.same_total, p.same_pathological, p.cross_total, p.cross_pathological
        )?;
    }
    Ok(())
}
