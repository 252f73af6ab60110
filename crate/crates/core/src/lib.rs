//! Approximate uniform sampling of proper k-colorings of sparse random
//! graphs without Markov chains.
//!
//! The sampler deletes every edge that lies on no short cycle, colors the
//! remaining disjoint union of cycles and isolated vertices exactly, and then
//! re-inserts the deleted edges one at a time. Whenever an inserted edge is
//! monochromatic, a Kempe-chain switch recolors one endpoint.
//!
//! ```
//! use kcolor::{generate_gnp, run, CycleThreshold, GnpParams, RunConfig};
//!
//! let g = generate_gnp(&GnpParams::new(500, 3.0, 7).unwrap()).unwrap();
//! let cfg = RunConfig::new(8, 3.0, CycleThreshold::new(4).unwrap(), 7).unwrap();
//! let report = run(&g, &cfg).unwrap();
//! if !report.aborted {
//!     assert_eq!(report.coloring.unwrap().len(), 500);
//! }
//! ```

pub mod bench;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod kempe;
pub mod oracle;
pub mod peel;
pub mod pipeline;
pub mod sampler;
pub mod simple;
pub mod verify;

pub use coloring::{Color, Coloring};
pub use error::{Error, Result};
pub use graph::{
    check_x_membership, classify_simple, generate_gnp, removable_edges,
    shortest_cycle_through_edge, CycleThreshold, Edge, GnpParams, Graph, MembershipReport,
    SimpleDecomposition, Vertex, Violation,
};
pub use kempe::{kempe_chain, switching, update, KempeChain, UpdateOutcome, Updater};
pub use peel::{build_peel_sequence, endpoint_distance_check, PeelSequence};
pub use pipeline::{derive_seed, replay, run, sample_many, RunConfig, RunReport, StepRecord};
pub use simple::{cycle_vertex_marginal, path_count, sample_simple, PathCountTable};
pub use sampler::{ColoringSampler, SamplerRegistry};
pub use verify::{SuiteBounds, SuiteRegistry, SuiteReport, VerificationSuite};
