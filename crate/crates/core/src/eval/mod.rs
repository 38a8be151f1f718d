//! Evaluation protocol: seeded episodes, approximation ratios and aggregation.

mod benchmark;
mod protocol;
mod registry;

pub(crate) use benchmark::mean_std as benchmark_mean_std;
pub use benchmark::{
    approx_ratio, benchmark, tune_registry_from_runs, BenchmarkReport, Instance, InstanceRecord, SolverSummary,
};
pub use protocol::{run_protocol, ProtocolConfig, ProtocolOutcome, ProtocolOverride, Solver};
pub use registry::{BestKnownRegistry, Provenance, RegistryEntry};
