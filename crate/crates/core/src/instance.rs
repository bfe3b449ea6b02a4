use crate::error::Result;
use crate::igp::{compute_apsp, compute_ecmp_fractions, ApspTable, EcmpTable};
use crate::net_model::{validate_instance, Topology, TrafficMatrix};
use crate::scalar::Scalar;

/// A validated topology and traffic matrix with its shortest-path data.
#[derive(Debug, Clone)]
pub struct Instance<S> {
    pub name: String,
    pub topology: Topology,
    pub traffic: TrafficMatrix,
    pub apsp: ApspTable,
    pub ecmp: EcmpTable<S>,
}

impl<S: Scalar> Instance<S> {
    /// Validates the pair and computes APSP and ECMP once.
    pub fn new(name: impl Into<String>, topology: Topology, traffic: TrafficMatrix) -> Result<Self> {
        let report = validate_instance(&topology, &traffic);
        if !report.is_empty() {
            return Err(crate::Error::InvalidInstance(report.findings.join("; ")));
        }
        let apsp = compute_apsp(&topology)?;
        let ecmp = compute_ecmp_fractions(&topology, &apsp);
        Ok(Self {
            name: name.into(),
            topology,
            traffic,
            apsp,
            ecmp,
        })
    }
}
