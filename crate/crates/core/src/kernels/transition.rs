use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::kernels::point::{ensure_dim, euclidean, Point};
use crate::kernels::profile::{cauchy_constant, ProfilePair};
use crate::scalar::Real;

/// Which constant multiplies the Gauss–Weierstrass kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `t^{-n/2} exp(-|x-y|²/4t)`, the heat-equation Green function form.
    Unnormalized,
    /// `(4πt)^{-n/2} exp(-|x-y|²/4t)`, mass one.
    Probabilistic,
}

/// An explicit transition density `p_t(x, y)` on ℝⁿ with Lebesgue reference measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "transition", rename_all = "snake_case")]
pub enum TransitionSpec {
    Gauss { n: usize, normalization: Normalization },
    /// Poisson kernel of the half-space; the 1-stable (β = 1) heat kernel.
    Cauchy { n: usize },
}

impl TransitionSpec {
    pub fn gauss(n: usize) -> Self {
        TransitionSpec::Gauss {
            n,
            normalization: Normalization::Probabilistic,
        }
    }

    pub fn gauss_unnormalized(n: usize) -> Self {
        TransitionSpec::Gauss {
            n,
            normalization: Normalization::Unnormalized,
        }
    }

    pub fn cauchy(n: usize) -> Self {
        TransitionSpec::Cauchy { n }
    }

    pub fn dim(&self) -> usize {
        match *self {
            TransitionSpec::Gauss { n, .. } | TransitionSpec::Cauchy { n } => n,
        }
    }

    /// Conservative, i.e. `∫ p_t(x,y) dy = 1`.
    pub fn is_markov(&self) -> bool {
        !matches!(
            self,
            TransitionSpec::Gauss {
                normalization: Normalization::Unnormalized,
                ..
            }
        )
    }

    /// Density as a function of distance; callers guarantee `t > 0`.
    pub fn radial<T: Real>(&self, d: T, t: T) -> T {
        match *self {
            TransitionSpec::Gauss { n, normalization } => {
                let nn = T::from_usize_lossy(n);
                let base = match normalization {
                    Normalization::Unnormalized => t,
                    Normalization::Probabilistic => T::lit(4.0) * T::PI() * t,
                };
                base.powf(-nn / T::lit(2.0)) * (-(d * d) / (T::lit(4.0) * t)).exp()
            }
            TransitionSpec::Cauchy { n } => {
                let p = T::from_usize_lossy(n + 1) / T::lit(2.0);
                cauchy_constant::<T>(n) * t / (t * t + d * d).powf(p)
            }
        }
    }

    pub fn density<T: Real>(&self, x: &Point<T>, y: &Point<T>, t: T) -> Result<T> {
        ensure_dim(x, self.dim())?;
        ensure_dim(y, self.dim())?;
        if !(t > T::zero()) {
            return arg(format!("transition time must be positive, got {t}"));
        }
        Ok(self.radial(euclidean(x.coords(), y.coords()), t))
    }

    /// A profile pair whose sandwich this density satisfies.
    pub fn profile<T: Real>(&self) -> ProfilePair<T> {
        match *self {
            TransitionSpec::Gauss { n, normalization } => {
                ProfilePair::gaussian(n, normalization == Normalization::Probabilistic)
            }
            TransitionSpec::Cauchy { n } => ProfilePair::cauchy_stable(n),
        }
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match *self {
            TransitionSpec::Gauss {
                n,
                normalization: Normalization::Probabilistic,
            } => format!("gauss(n={n})"),
            TransitionSpec::Gauss { n, .. } => format!("gauss-unnormalized(n={n})"),
            TransitionSpec::Cauchy { n } => format!("cauchy(n={n})"),
        }
    }
}

/// Gauss–Weierstrass transition density.
pub fn eval_gauss_transition<T: Real>(
    x: &Point<T>,
    y: &Point<T>,
    t: T,
    n: usize,
    normalization: Normalization,
) -> Result<T> {
    TransitionSpec::Gauss { n, normalization }.density(x, y, t)
}

/// `Γ((n+1)/2) π^{-(n+1)/2} t / (t² + |x-y|²)^{(n+1)/2}`
pub fn eval_cauchy_transition<T: Real>(x: &Point<T>, y: &Point<T>, t: T, n: usize) -> Result<T> {
    TransitionSpec::Cauchy { n }.density(x, y, t)
}
