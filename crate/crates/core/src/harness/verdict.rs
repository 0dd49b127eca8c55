//! Verdict assembly from measure and capacity evidence.

use serde::{Deserialize, Serialize};

use crate::capacity::{
    capacity_lower_bound, check_cap_le_measure, default_grid, CapacityCertificate, CheckStatus, DiscreteMeasure,
};
use crate::error::{arg, Error, Result};
use crate::harness::registry::{self, TheoremEntry};
use crate::harness::{SetDescriptor, TestSet};
use crate::hausdorff::{default_schedule, estimate_measure, MeasureEstimate};
use crate::kernels::{KernelSpec, TransitionSpec};
use crate::scalar::Real;
use crate::shapes::ShapeFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "polar-evidence")]
    PolarEvidence,
    #[serde(rename = "semipolar-evidence")]
    SemipolarEvidence,
    #[serde(rename = "nonpolar-certified")]
    NonpolarCertified,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::PolarEvidence => "polar-evidence",
            Classification::SemipolarEvidence => "semipolar-evidence",
            Classification::NonpolarCertified => "nonpolar-certified",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

/// Covering family and exponent used as measure evidence for a kernel:
/// parabolic boxes with `η = n` for the heat equation, G-balls otherwise.
pub fn measure_family<T: Real>(kernel: &KernelSpec<T>) -> Result<(ShapeFamily<T>, T, &'static str)> {
    match kernel.space_time_base() {
        Some(TransitionSpec::Gauss { n, .. }) => Ok((ShapeFamily::ParabolicBox { n }, T::from_usize_lossy(n), "m_{n,P}")),
        _ => Ok((ShapeFamily::gball(kernel.clone())?, T::one(), "m_G")),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ClassifyConfig<T: Real> {
    pub schedule: Vec<T>,
    pub probes: usize,
    pub seed: u64,
    /// cells per active axis of each set component
    pub subdivisions: usize,
    pub grid_points: usize,
    /// fixed capacity grid margin; `None` uses the closed-form potential bound
    pub margin: Option<T>,
}

impl<T: Real> Default for ClassifyConfig<T> {
    fn default() -> Self {
        Self {
            schedule: default_schedule(),
            probes: 256,
            seed: 0,
            subdivisions: 32,
            grid_points: 2000,
            margin: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Verdict<T: Real> {
    pub set: String,
    pub kernel: String,
    pub measure_label: String,
    pub measure_evidence: MeasureEstimate<T>,
    pub capacity_evidence: CapacityCertificate<T>,
    pub classification: Vec<Classification>,
    pub measure_infinite: bool,
    pub cited_theorems: Vec<String>,
    pub cap_vs_measure: CheckStatus,
    pub consistent: bool,
}

impl<T: Real> Verdict<T> {
    /// e.g. `semipolar-evidence + nonpolar-certified` or
    /// `nonpolar-certified, m_P-infinite`
    pub fn summary(&self) -> String {
        let mut s = self
            .classification
            .iter()
            .map(Classification::as_str)
            .collect::<Vec<_>>()
            .join(" + ");
        if self.measure_infinite {
            let m = if self.measure_label == "m_{n,P}" { "m_P" } else { "m_G" };
            s.push_str(&format!(", {m}-infinite"));
        }
        s
    }
}

/// The classification rules, applied to evidence alone.
///
/// * capacity lower bound `> 0`: nonpolar-certified
/// * measure sums vanishing: polar-evidence
/// * finite δ-uniform bound: semipolar-evidence, or polar-evidence when the
///   kernel has semipolar = polar
/// * otherwise inconclusive
pub fn derive_classification<T: Real>(
    kernel: &KernelSpec<T>,
    measure: &MeasureEstimate<T>,
    capacity: &CapacityCertificate<T>,
) -> (Vec<Classification>, Vec<&'static TheoremEntry>, bool) {
    let heat = matches!(kernel.space_time_base(), Some(TransitionSpec::Gauss { .. }));
    let mut classes = vec![];
    let mut cites: Vec<&'static TheoremEntry> = vec![];
    if measure.vanishing {
        classes.push(Classification::PolarEvidence);
        cites.push(if heat { &registry::HEAT_NULL_MP_POLAR } else { &registry::NULL_MEASURE_POLAR });
    } else if measure.uniform_bound.is_some() {
        if kernel.semipolar_is_polar() {
            classes.push(Classification::PolarEvidence);
            cites.push(match kernel {
                KernelSpec::Riesz { .. } => &registry::RIESZ_FINITE_MEASURE_POLAR,
                _ => &registry::SYMMETRIC_SEMIPOLAR_POLAR,
            });
        } else {
            classes.push(Classification::SemipolarEvidence);
            cites.push(if heat {
                &registry::HEAT_FINITE_MP_SEMIPOLAR
            } else {
                &registry::FINITE_MEASURE_SEMIPOLAR
            });
        }
    }
    if capacity.lower_bound > T::zero() {
        classes.push(Classification::NonpolarCertified);
        cites.push(&registry::CAPACITY_POSITIVE_NONPOLAR);
    }
    if classes.is_empty() {
        classes.push(Classification::Inconclusive);
    }
    (classes, cites, measure.divergent)
}

fn is_space_time_set<T: Real>(set: &TestSet<T>) -> bool {
    match &set.descriptor {
        SetDescriptor::Slice { .. } | SetDescriptor::VerticalSegment => true,
        SetDescriptor::CantorDust { time_slice, .. } => *time_slice,
        _ => false,
    }
}

/// Runs both evidence pipelines and assembles the verdict.
pub fn classify<T: Real>(set: &TestSet<T>, kernel: &KernelSpec<T>, config: &ClassifyConfig<T>) -> Result<Verdict<T>> {
    kernel.validate()?;
    set.validate()?;
    if set.ambient_dim() != kernel.point_dim() {
        return Err(Error::DimensionMismatch {
            expected: kernel.point_dim(),
            found: set.ambient_dim(),
        });
    }
    if is_space_time_set(set) && !kernel.is_space_time() {
        return arg(format!("{} is a space-time set but {} is not a space-time kernel", set.label(), kernel.label()));
    }
    let (family, eta, measure_label) = measure_family(kernel)?;
    let measure = estimate_measure(set, &family, eta, &config.schedule, config.probes, config.seed)?;
    let capacity = if set.components().is_empty() {
        capacity_lower_bound(kernel, set, &DiscreteMeasure::default(), &[], Some(T::zero()))?
    } else {
        let nu = DiscreteMeasure::uniform_on(set, config.subdivisions)?;
        let grid = default_grid(kernel, set, config.grid_points, config.seed)?;
        capacity_lower_bound(kernel, set, &nu, &grid, config.margin)?
    };
    let (classification, cites, measure_infinite) = derive_classification(kernel, &measure, &capacity);
    let mut cited_theorems: Vec<String> = cites.iter().map(|t| t.citation()).collect();
    let cap_vs_measure = if measure_label == "m_G" {
        cited_theorems.push(registry::CAPACITY_BELOW_MEASURE.citation());
        check_cap_le_measure(&capacity, &measure).status
    } else {
        CheckStatus::Inconclusive
    };
    let consistent = !(classification.contains(&Classification::PolarEvidence)
        && classification.contains(&Classification::NonpolarCertified))
        && cap_vs_measure != CheckStatus::Fail;
    Ok(Verdict {
        set: set.label(),
        kernel: kernel.label(),
        measure_label: measure_label.into(),
        measure_evidence: measure,
        capacity_evidence: capacity,
        classification,
        measure_infinite,
        cited_theorems,
        cap_vs_measure,
        consistent,
    })
}
