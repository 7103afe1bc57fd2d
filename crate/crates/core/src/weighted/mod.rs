//! Clusterers that use edge similarities.

mod affinity;
mod connectivity;
mod correlation;
mod dendrogram;
mod lambdacc;
pub(crate) mod level;
mod parhac;

pub use affinity::{cluster_affinity, cluster_affinity_with_cancel, AffinityParams};
pub use connectivity::cluster_connectivity;
pub use correlation::{
    cluster_correlation, cluster_correlation_with_cancel, cluster_modularity,
    cluster_modularity_with_cancel, modularity_params, single_move_gain,
};
pub use dendrogram::{cut_dendrogram, Dendrogram, Merge};
pub use lambdacc::{lambda_cc_objective, modularity, LambdaCCParams, VertexWeightMode};
pub use parhac::{cluster_parhac, cluster_parhac_with_cancel, ParHacParams};
