//! Model-independent differential geometry by finite differences, and the
//! verification suites assembled from it.

mod fd;
mod report;
pub mod suites;

pub use fd::{
    curvature_sample, fd_jet, first_order_jet, intrinsic_gauss_curvature, mean_curvature, shape_operator,
    shape_operator_check, CurvatureSample,
    DEFAULT_FD_STEP,
};
pub use report::{Check, VerificationReport};
