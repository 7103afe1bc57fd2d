//! Clustering quality measures.

mod agreement;
mod density;
mod ground_truth;
mod matching;
mod pairs;
mod report;
mod stats;

pub use agreement::{ari, nmi};
pub use density::{size_weighted_mean, triangle_density, weighted_edge_density};
pub use ground_truth::GroundTruth;
pub use matching::{f_beta, per_community_precision_recall, precision_recall};
pub use pairs::{pair_confusion, pair_label_pr, PairConfusion, PairLabels};
pub use report::{evaluate, EvalInputs, MetricSelection, MetricsReport};
pub use stats::{cluster_stats, ClusterStats, Summary};
