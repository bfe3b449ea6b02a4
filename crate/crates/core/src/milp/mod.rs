//! The binary 2SR model, its LP-file serialization and solution handling.

mod lp_writer;
mod model;
mod solution;

pub use lp_writer::{format_number, write_lp_file, write_start_file};
pub use model::{build_model, AssignmentRow, CapacityRow, MilpModel, VarKey};
pub use solution::{evaluate_assignment_mlu, listing_status, parse_solution, SolveStatus, SrSolution};
