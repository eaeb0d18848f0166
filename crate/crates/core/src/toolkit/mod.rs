//! Test-function factory, s-convexity falsifier and the reference oracle.

mod breckner;
mod oracle;
mod registry;

pub use breckner::{
    check_sconvex, make_breckner, BrecknerFunction, SConvexityReport, DEFAULT_GRID_N,
};
pub use oracle::{reference_integrate, true_deviation, ReferenceIntegrator, DEFAULT_MAX_PANELS};
pub use registry::{parse_function_spec, FunctionSpec};
