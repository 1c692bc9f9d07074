pub mod bounds;
pub mod certify;
pub mod chain;
pub mod crossover;
pub mod error;
pub mod grid;
pub mod lambda;
pub mod oracle;

pub use bounds::{
    chain_members, compare_pointwise, eval_bound, eval_bound_f64, eval_chain, named_constants,
    BoundFamily, BoundSpec, Constant, Curve, NamedConstant, Param, CHAIN_LABELS, CHAIN_LEN,
};
pub use certify::{certify_upper_bound, critical_points, CriticalPoint, NonnegCertificate};
pub use chain::{verify_chain, ChainReport, ChainRow, PairGap, Violation};
pub use crossover::{find_crossover, order_report, CrossoverResult, Order, OrderReport};
pub use error::{Error, Result};
pub use grid::GridKind;
pub use lambda::{
    discrepancy, optimality_report, solve_b1, solve_endpoint, DiscrepancyReport, EndpointSolution,
    OptimalityReport,
};
pub use oracle::{to_f64, DerivativeEstimate, Oracle, PrecisionConfig, Real, TolerancePolicy};
