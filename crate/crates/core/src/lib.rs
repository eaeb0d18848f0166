//! Ostrowski-type error bounds for functions whose derivatives are s-convex in
//! the second sense, with a brute-force oracle to check them, bounds on the
//! gap between the arithmetic and p-logarithmic means, and certified
//! composite-midpoint quadrature.
//!
//! Everything is generic over the scalar type through [`Real`]; the `*F64` and
//! `*F32` aliases below fix the common choices.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod kernel;
pub mod means;
pub mod quadrature;
pub mod scalar;
pub mod toolkit;
pub mod types;

pub use bounds::{
    bound_holder_global, bound_holder_hadamard, bound_holder_split, bound_power_mean,
    bound_sconvex_abs, midpoint_e5, midpoint_power_mean, midpoint_sconvex_abs, sconvex_bracket,
};
pub use error::{Error, Result};
pub use kernel::{
    alomari_bound, baseline_midpoint_bound, classic_ostrowski_bound, hadamard_sconvex_bounds,
    montgomery_kernel, verify_montgomery_identity, HadamardCheck, KernelBreakpoint,
    MidpointBaseline,
};
pub use means::{
    arithmetic_mean, gap_bound_via_midpoint, logarithmic_mean, means_gap, means_gap_bound,
    means_row, p_logarithmic_mean, GapBound, MeansRow,
};
pub use quadrature::{
    certified_integrate, composite_midpoint, midpoint_error_bound, node_derivatives,
    MidpointVariant, Partition, QuadReport, DEFAULT_PANEL_BUDGET,
};
pub use scalar::{CompensatedSum, Real};
pub use toolkit::{
    check_sconvex, make_breckner, parse_function_spec, reference_integrate, true_deviation,
    BrecknerFunction, FunctionSpec, ReferenceIntegrator, SConvexityReport,
};
pub use types::{
    make_conjugate, validate_eval_point, BoundInputs, BoundResult, ConjugatePair, EndpointData,
    Function1D, Integrator, Interval, SParam, TheoremId, VerificationRecord, DEFAULT_TOL,
};

pub type IntervalF64 = Interval<f64>;
pub type IntervalF32 = Interval<f32>;
pub type SParamF64 = SParam<f64>;
pub type SParamF32 = SParam<f32>;
pub type ConjugatePairF64 = ConjugatePair<f64>;
pub type ConjugatePairF32 = ConjugatePair<f32>;
pub type EndpointDataF64 = EndpointData<f64>;
pub type EndpointDataF32 = EndpointData<f32>;
pub type Function1DF64 = Function1D<f64>;
pub type Function1DF32 = Function1D<f32>;
pub type BoundResultF64 = BoundResult<f64>;
pub type BoundResultF32 = BoundResult<f32>;
pub type VerificationRecordF64 = VerificationRecord<f64>;
pub type PartitionF64 = Partition<f64>;
pub type QuadReportF64 = QuadReport<f64>;
pub type MidpointVariantF64 = MidpointVariant<f64>;
