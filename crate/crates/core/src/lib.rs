//! Segment-routing traffic engineering with middlepoint preprocessing.

pub mod bench;
pub mod candidates;
pub mod error;
pub mod fixtures;
pub mod igp;
mod instance;
pub mod milp;
pub mod net_model;
pub mod scalar;
pub mod solve;

pub use error::{Error, Result};
pub use instance::Instance;
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;
pub type EcmpTable64 = igp::EcmpTable<f64>;
pub type ExactEcmpTable = igp::EcmpTable<Exact>;
pub type Instance64 = Instance<f64>;
pub type ExactInstance = Instance<Exact>;
