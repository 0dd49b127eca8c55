//! Theorem registry. Verdicts cite entries by their full `id: statement` text.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremEntry {
    pub id: &'static str,
    pub statement: &'static str,
}

impl TheoremEntry {
    pub fn citation(&self) -> String {
        format!("{}: {}", self.id, self.statement)
    }
}

pub const FINITE_MEASURE_SEMIPOLAR: TheoremEntry = TheoremEntry {
    id: "finite-measure-semipolar",
    statement: "For a Green kernel with the standing regularity conditions, a set A with m_G(A) < ∞ lies in a G-semipolar Borel set.",
};

pub const NULL_MEASURE_POLAR: TheoremEntry = TheoremEntry {
    id: "null-measure-polar",
    statement: "For a Green kernel with the standing regularity conditions, a set A with m_G(A) = 0 lies in a G-polar Borel set.",
};

pub const HEAT_FINITE_MP_SEMIPOLAR: TheoremEntry = TheoremEntry {
    id: "heat-finite-mp-semipolar",
    statement: "For the heat equation on ℝ^{n+1}, m_P(A) < ∞ implies that A is semipolar.",
};

pub const HEAT_NULL_MP_POLAR: TheoremEntry = TheoremEntry {
    id: "heat-null-mp-polar",
    statement: "For the heat equation on ℝ^{n+1}, m_P(A) = 0 implies that A is polar.",
};

pub const RIESZ_FINITE_MEASURE_POLAR: TheoremEntry = TheoremEntry {
    id: "riesz-finite-measure-polar",
    statement: "For the Riesz kernel |x-y|^{β-n} on ℝⁿ, m_{t^{n-β}}(A) < ∞ implies that A is polar.",
};

pub const SYMMETRIC_SEMIPOLAR_POLAR: TheoremEntry = TheoremEntry {
    id: "symmetric-semipolar-polar",
    statement: "For the Green function of a symmetric heat kernel on the space itself, semipolar sets are polar; hence m_G(A) < ∞ implies that A is polar.",
};

pub const CAPACITY_POSITIVE_NONPOLAR: TheoremEntry = TheoremEntry {
    id: "capacity-positive-nonpolar",
    statement: "A set supporting a nonzero measure with bounded potential is not polar; a certificate c(A) ≥ ν(A)/sup Gν > 0 exhibits one.",
};

pub const CAPACITY_BELOW_MEASURE: TheoremEntry = TheoremEntry {
    id: "capacity-below-measure",
    statement: "The capacity is dominated by the intrinsic Hausdorff measure: c(A) ≤ m_G(A).",
};

pub const BALL_MASS_BOUND: TheoremEntry = TheoremEntry {
    id: "ball-mass-bound",
    statement: "For every measure ν, every x and every ρ > 0, ν(B(x,ρ)) ≤ ρ Gν(x).",
};

pub const REGISTRY: &[TheoremEntry] = &[
    FINITE_MEASURE_SEMIPOLAR,
    NULL_MEASURE_POLAR,
    HEAT_FINITE_MP_SEMIPOLAR,
    HEAT_NULL_MP_POLAR,
    RIESZ_FINITE_MEASURE_POLAR,
    SYMMETRIC_SEMIPOLAR_POLAR,
    CAPACITY_POSITIVE_NONPOLAR,
    CAPACITY_BELOW_MEASURE,
    BALL_MASS_BOUND,
];

pub fn lookup(id: &str) -> Option<&'static TheoremEntry> {
    REGISTRY.iter().find(|t| t.id == id)
}

/// `citation` appears verbatim in the registry.
pub fn is_registered(citation: &str) -> bool {
    REGISTRY.iter().any(|t| t.citation() == citation)
}
