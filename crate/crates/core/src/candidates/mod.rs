//! Candidate middlepoint sets and the preprocessing filters that shrink them.

mod centrality;
mod domination;
mod pinning;
mod pipeline;
mod set;
mod stats;
mod stretch;

pub use centrality::{centrality_filter, greedy_centrality_group, group_gsp_centrality};
pub use domination::{compare_loads, domination_filter, surviving_paths, Relation};
pub use pinning::{demand_pinning_filter, pinned_demands};
pub use pipeline::{combined_pipeline, FilterConfig, Stage};
pub use set::{full_candidates, CandidateSet, DemandCandidates};
pub use stats::{exclusion_stats, ExclusionStats, StageStats};
pub use stretch::{stretch_bounding_filter, within_stretch};
