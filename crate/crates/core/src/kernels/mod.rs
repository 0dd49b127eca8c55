//! Point spaces and the kernel catalog: Riesz kernels, the heat kernel of
//! the heat equation, the Cauchy kernel, Green functions of profile-bounded
//! heat kernels and space-time kernels.

mod point;
mod profile;
mod transition;

use serde::{Deserialize, Serialize};

pub use point::{Point, SpaceTimePoint};
pub use profile::{cauchy_constant, ProfileConstants, ProfileFn, ProfilePair};
pub use transition::{
    eval_cauchy_transition, eval_gauss_transition, Normalization, TransitionSpec,
};

pub(crate) use point::{ensure_dim, euclidean};
#[cfg(test)]
pub(crate) use profile::log_grid;

use crate::error::{arg, Error, Result};
use crate::scalar::Real;

/// A concrete kernel `G(x, y)`.
///
/// Space-time variants act on flat points of ℝ^{n+1} whose last coordinate is
/// time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", bound = "")]
pub enum KernelSpec<T: Real> {
    /// `|x-y|^{β-n}` on ℝⁿ.
    Riesz { n: usize, beta: T },
    /// `G₀(x′-y′)` with `G₀(x,t) = 1_{t>0} t^{-n/2} exp(-|x|²/4t)` on ℝ^{n+1}.
    GaussWeierstrass { n: usize },
    /// Space-time kernel of the Cauchy semigroup on ℝ^{n+1}.
    Cauchy { n: usize },
    /// `∫₀^∞ p_t(x,y) dt` on ℝⁿ for a profile-bounded heat kernel.
    BoundedHeat {
        n: usize,
        profile: ProfilePair<T>,
        transition: Option<TransitionSpec>,
    },
    /// `G′((x,r),(y,s)) = p_{r-s}(x,y)` for `r > s`, else 0.
    SpaceTime { base: TransitionSpec },
}

impl<T: Real> KernelSpec<T> {
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelSpec::Riesz { n, beta } => {
                let nn = T::from_usize_lossy(*n);
                if *n == 0 || !(*beta > T::zero() && *beta < nn && *beta <= T::lit(2.0)) {
                    return arg(format!("Riesz kernel needs 0 < β < n and β ≤ 2 (n={n}, β={beta})"));
                }
            }
            KernelSpec::GaussWeierstrass { n } | KernelSpec::Cauchy { n } => {
                if *n == 0 {
                    return arg("spatial dimension must be at least 1");
                }
            }
            KernelSpec::BoundedHeat {
                n,
                profile,
                transition,
            } => {
                profile.validate()?;
                if !(profile.beta < profile.alpha) {
                    return Err(Error::Profile("Green function needs β < α".into()));
                }
                if let Some(tr) = transition {
                    if tr.dim() != *n {
                        return Err(Error::DimensionMismatch {
                            expected: *n,
                            found: tr.dim(),
                        });
                    }
                }
            }
            KernelSpec::SpaceTime { base } => {
                if base.dim() == 0 {
                    return arg("spatial dimension must be at least 1");
                }
            }
        }
        Ok(())
    }

    /// Dimension of the points this kernel is evaluated on.
    pub fn point_dim(&self) -> usize {
        match self {
            KernelSpec::Riesz { n, .. } | KernelSpec::BoundedHeat { n, .. } => *n,
            KernelSpec::GaussWeierstrass { n } | KernelSpec::Cauchy { n } => n + 1,
            KernelSpec::SpaceTime { base } => base.dim() + 1,
        }
    }

    /// Transition density behind a space-time kernel.
    pub fn space_time_base(&self) -> Option<TransitionSpec> {
        match self {
            KernelSpec::GaussWeierstrass { n } => Some(TransitionSpec::gauss_unnormalized(*n)),
            KernelSpec::Cauchy { n } => Some(TransitionSpec::cauchy(*n)),
            KernelSpec::SpaceTime { base } => Some(base.clone()),
            _ => None,
        }
    }

    pub fn is_space_time(&self) -> bool {
        self.space_time_base().is_some()
    }

    /// Every semipolar set is polar for this kernel (Riesz and Green kernels of
    /// symmetric heat kernels on the space itself).
    pub fn semipolar_is_polar(&self) -> bool {
        matches!(self, KernelSpec::Riesz { .. } | KernelSpec::BoundedHeat { .. })
    }

    pub fn eval(&self, x: &Point<T>, y: &Point<T>) -> Result<T> {
        match self {
            KernelSpec::Riesz { n, beta } => eval_riesz(x, y, *n, *beta),
            KernelSpec::BoundedHeat {
                n,
                profile,
                transition,
            } => {
                ensure_dim(x, *n)?;
                ensure_dim(y, *n)?;
                let Some(tr) = transition else {
                    return Err(Error::Configuration(
                        "bounded-heat kernel has no explicit transition to integrate".into(),
                    ));
                };
                let d = euclidean(x.coords(), y.coords());
                Ok(crate::heat_mm::green_radial(tr, profile.beta, d, &Default::default()).value)
            }
            _ => {
                let base = self.space_time_base().expect("space-time variant");
                ensure_dim(x, base.dim() + 1)?;
                ensure_dim(y, base.dim() + 1)?;
                Ok(spacetime_flat(&base, x.coords(), y.coords()))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            KernelSpec::Riesz { n, beta } => format!("riesz(n={n}, beta={beta})"),
            KernelSpec::GaussWeierstrass { n } => format!("gauss-weierstrass(n={n})"),
            KernelSpec::Cauchy { n } => format!("space-time cauchy(n={n})"),
            KernelSpec::BoundedHeat { n, transition, .. } => match transition {
                Some(tr) => format!("green[{}](n={n})", tr.label()),
                None => format!("green[profile](n={n})"),
            },
            KernelSpec::SpaceTime { base } => format!("space-time {}", base.label()),
        }
    }
}

/// `|x-y|^{β-n}`, `+∞` on the diagonal.
pub fn eval_riesz<T: Real>(x: &Point<T>, y: &Point<T>, n: usize, beta: T) -> Result<T> {
    ensure_dim(x, n)?;
    ensure_dim(y, n)?;
    let nn = T::from_usize_lossy(n);
    if !(beta > T::zero() && beta < nn) {
        return arg(format!("Riesz exponent needs 0 < β < n (n={n}, β={beta})"));
    }
    let d = euclidean(x.coords(), y.coords());
    if d == T::zero() {
        return Ok(T::infinity());
    }
    Ok(d.powf(beta - nn))
}

/// `G′(x′, y′) = p_{r-s}(x, y)` if `r > s`, exactly 0 otherwise.
pub fn eval_spacetime<T: Real>(
    x: &SpaceTimePoint<T>,
    y: &SpaceTimePoint<T>,
    base: &TransitionSpec,
) -> Result<T> {
    ensure_dim(&x.space, base.dim())?;
    ensure_dim(&y.space, base.dim())?;
    if x.time <= y.time {
        return Ok(T::zero());
    }
    base.density(&x.space, &y.space, x.time - y.time)
}

pub(crate) fn spacetime_flat<T: Real>(base: &TransitionSpec, x: &[T], y: &[T]) -> T {
    let n = base.dim();
    let dt = x[n] - y[n];
    if dt <= T::zero() {
        return T::zero();
    }
    base.radial(euclidean(&x[..n], &y[..n]), dt)
}
