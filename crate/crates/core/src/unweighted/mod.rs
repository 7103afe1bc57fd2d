//! Clusterers that only look at graph topology.

mod kcore;
mod label_prop;
mod ldd;
mod scan;
mod slpa;
mod tectonic;

pub use kcore::cluster_kcore;
pub use label_prop::{cluster_label_prop, cluster_label_prop_with_cancel, LabelPropMode, LabelPropParams};
pub use ldd::{cluster_ldd, cluster_ldd_with_cancel, LddParams};
pub use scan::{cluster_scan, structural_similarities, structural_similarity, ScanParams};
pub use slpa::{cluster_slpa, cluster_slpa_with_cancel, extract_communities, slpa_memories, SlpaParams};
pub use tectonic::{cluster_tectonic, edge_triangle_counts, tectonic_edge_weights, triangle_count, TectonicParams};
