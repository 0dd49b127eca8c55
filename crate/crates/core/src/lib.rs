//! Kernel-intrinsic Hausdorff measures and capacity certificates for Green
//! kernels: Riesz kernels, the heat equation, the Cauchy semigroup and Green
//! functions of profile-bounded heat kernels.
//!
//! Every numerical routine is generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below fix `f64`.

pub mod capacity;
pub mod error;
pub mod harness;
pub mod hausdorff;
pub mod heat_mm;
pub mod kernels;
pub mod quadrature;
pub mod scalar;
pub mod shapes;

mod sampling;

pub use error::{Error, Result};
pub use harness::{classify, run_suite, Classification, SetDescriptor, Suite};
pub use kernels::{Normalization, TransitionSpec};
pub use scalar::Real;

pub type Point = kernels::Point<f64>;
pub type SpaceTimePoint = kernels::SpaceTimePoint<f64>;
pub type KernelSpec = kernels::KernelSpec<f64>;
pub type ProfilePair = kernels::ProfilePair<f64>;
pub type ShapeFamily = shapes::ShapeFamily<f64>;
pub type TestSet = harness::TestSet<f64>;
pub type Covering = hausdorff::Covering<f64>;
pub type MeasureEstimate = hausdorff::MeasureEstimate<f64>;
pub type ComparisonParams = hausdorff::ComparisonParams<f64>;
pub type DiscreteMeasure = capacity::DiscreteMeasure<f64>;
pub type CapacityCertificate = capacity::CapacityCertificate<f64>;
pub type Verdict = harness::Verdict<f64>;
pub type ClassifyConfig = harness::ClassifyConfig<f64>;
pub type InclusionReport = shapes::InclusionReport<f64>;
