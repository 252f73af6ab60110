//! Small-instance ground truth: exhaustive enumeration, exact output laws of
//! the sampler, distances between distributions, the pathological fraction
//! alpha, bichromatic path statistics and a Glauber baseline.

mod alpha;
mod distance;
mod enumerate;
mod glauber;
mod law;
mod paths;

pub(crate) use alpha::AlphaAccumulator;
pub use alpha::{
    measure_alpha, measure_alpha_using, two_color_connected, AlphaReport, PairAlpha,
    PathologyTest,
};
pub use distance::{
    chi_square_uniform, tv_distance, ChiSquare, DistributionReport, EmpiricalDistribution,
};
pub use enumerate::{
    all_graphs, brute_path_count, enumerate_colorings, for_each_coloring, ENUMERATION_LIMIT,
};
pub use glauber::{glauber_step, greedy_coloring, GlauberMove};
pub use law::{exact_output_law, exact_output_law_for_sequence, update_law, ExactLaw, LawOptions};
pub use paths::{count_bichromatic_paths, has_bichromatic_path_from, PathCounts};
