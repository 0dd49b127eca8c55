//! Test-set catalog, verdicts and acceptance suites.

mod catalog;
pub mod criteria;
pub mod registry;
mod suite;
mod verdict;

pub use catalog::{AxisBox, SetDescriptor, TestSet};
pub use criteria::{run_criterion, CriterionOutcome, CRITERIA};
pub use registry::{TheoremEntry, REGISTRY};
pub use suite::{run_suite, Suite, SuiteReport};
pub use verdict::{classify, derive_classification, measure_family, Classification, ClassifyConfig, Verdict};
