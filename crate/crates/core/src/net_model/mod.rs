//! Network and traffic data model.

mod gravity;
mod repetita;
pub mod synth;
mod topology;
mod traffic;
mod validate;

pub use gravity::{generate_gravity_traffic, generate_sparse_gravity_traffic};
pub use repetita::{parse_demands, parse_topology, write_demands, write_topology};
pub use topology::{Arc, ArcId, Node, NodeId, Topology};
pub use traffic::{Demand, DemandId, TrafficMatrix};
pub use validate::{validate_instance, ValidationReport};
