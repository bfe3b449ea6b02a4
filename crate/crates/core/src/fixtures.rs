//! Small named topologies used in examples, tests and the CLI `demo` inputs.
//! Every link is bidirectional with unit weight; arcs come in
//! forward/backward pairs in link order.

use crate::net_model::Topology;

/// Nodes 0..3 with links 0-1, 0-2, 1-3, 2-3.
pub fn diamond(capacity: f64) -> Topology {
    Topology::from_links(
        4,
        &[
            (0, 1, 1, capacity),
            (0, 2, 1, capacity),
            (1, 3, 1, capacity),
            (2, 3, 1, capacity),
        ],
    )
    .expect("valid fixture")
}

/// Diamond with unit capacity except arcs 0->1 and 1->3 at 10. A single
/// demand 0->3 is best routed via middlepoint 1.
pub fn heterogeneous_diamond() -> Topology {
    Topology::from_links(
        4,
        &[(0, 1, 1, 10.0), (0, 2, 1, 1.0), (1, 3, 1, 10.0), (2, 3, 1, 1.0)],
    )
    .expect("valid fixture")
}

/// Path 0-1-2.
pub fn line3(capacity: f64) -> Topology {
    Topology::from_links(3, &[(0, 1, 1, capacity), (1, 2, 1, capacity)]).expect("valid fixture")
}

/// Path 0-1-2 closed by the link 0-2.
pub fn triangle(capacity: f64) -> Topology {
    Topology::from_links(
        3,
        &[(0, 1, 1, capacity), (1, 2, 1, capacity), (0, 2, 1, capacity)],
    )
    .expect("valid fixture")
}

/// Triangle A, B, C plus the stub D hanging off C. Nodes A=0, B=1, C=2, D=3;
/// links A-B, A-C, C-B, C-D.
pub fn triangle_with_stub(capacity: f64) -> Topology {
    Topology::from_links(
        4,
        &[
            (0, 1, 1, capacity),
            (0, 2, 1, capacity),
            (2, 1, 1, capacity),
            (2, 3, 1, capacity),
        ],
    )
    .expect("valid fixture")
}
