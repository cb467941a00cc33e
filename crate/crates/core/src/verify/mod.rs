//! Orchestration: instance documents in, verification reports out, plus the
//! built-in self checks and the resolution-ladder driver.

pub mod convergence;
pub mod instance;
pub mod pipeline;
pub mod report;
pub mod selftest;

pub use convergence::{convergence, ConvergencePoint};
pub use instance::{parse_instance, GridSpec, InstanceSpec, BASE_TAG, SCHEMA_VERSION};
pub use pipeline::verify;
pub use report::{Diagnostics, RuntimesMs, VerificationReport};
pub use selftest::{selftest, SelftestEntry};
