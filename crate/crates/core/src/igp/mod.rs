//! IGP shortest-path routing: distances and path counts, ECMP split
//! fractions, SR path loads and the shortest-path routing baseline.

mod apsp;
mod ecmp;
mod loads;
mod spr;

pub(crate) use apsp::single_source;
pub use apsp::{compute_apsp, ApspTable, UNREACHABLE};
pub use ecmp::{compute_ecmp_fractions, merge_sum, Candidate, EcmpTable, SparseLoads};
pub use loads::{sr_path_loads, PathLoadVector};
pub use spr::{spr_mlu, utilization_with, Utilization};
