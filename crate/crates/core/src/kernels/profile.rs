//! Two-sided heat-kernel bound profiles `t^{-α/β} Φⱼ(d / t^{1/β})`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_to_infinity, integrate_with_breaks, Integral, QuadratureSpec};
use crate::scalar::{gamma_half, Real};

/// A decreasing profile function on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", bound = "")]
pub enum ProfileFn<T: Real> {
    /// `amplitude · exp(-(rate σ)^exponent)`
    SubGaussian { amplitude: T, rate: T, exponent: T },
    /// `amplitude · (1 + rate σ)^{-power}`
    StableLike { amplitude: T, rate: T, power: T },
    /// `amplitude · (1 + σ²)^{-power/2}`
    Poisson { amplitude: T, power: T },
}

impl<T: Real> ProfileFn<T> {
    pub fn eval(&self, sigma: T) -> T {
        match *self {
            ProfileFn::SubGaussian {
                amplitude,
                rate,
                exponent,
            } => amplitude * (-(rate * sigma).powf(exponent)).exp(),
            ProfileFn::StableLike {
                amplitude,
                rate,
                power,
            } => amplitude * (T::one() + rate * sigma).powf(-power),
            ProfileFn::Poisson { amplitude, power } => {
                amplitude * (T::one() + sigma * sigma).powf(-power / T::lit(2.0))
            }
        }
    }
}

/// `(α, β, Φ₁, Φ₂)` with a breakpoint grid used when integrating Φ₂.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ProfilePair<T: Real> {
    pub alpha: T,
    pub beta: T,
    pub lower: ProfileFn<T>,
    pub upper: ProfileFn<T>,
    pub tail_grid: Vec<T>,
}

/// Constants derived from a profile pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ProfileConstants<T: Real> {
    /// `M = sup σ^α Φ₂(σ)`
    pub sup_phi2: T,
    /// location of the supremum
    pub sup_location: T,
    pub phi2_at_zero: T,
    pub phi1_at_one: T,
    /// Green lower constant `β/(α-β) Φ₁(1)`; absent unless `β < α`
    pub green_lower: Option<T>,
    /// Green upper constant `β ∫ σ^{α-β} Φ₂(σ) dσ/σ`; absent unless `β < α`
    pub green_upper: Option<T>,
    /// volume constant `1/Φ₁(1)`
    pub volume: T,
    /// ball-integral constant `2^α (2^β - 1)^{-1} c_μ C`
    pub ball_integral: Option<T>,
    pub absent_reason: Option<String>,
}

impl<T: Real> ProfilePair<T> {
    /// Exact profile of the Gauss–Weierstrass kernel on ℝⁿ.
    /// `normalized` selects `(4πt)^{-n/2}` over the bare `t^{-n/2}`.
    pub fn gaussian(n: usize, normalized: bool) -> Self {
        let nn = T::from_usize_lossy(n);
        let amplitude = if normalized {
            (T::lit(4.0) * T::PI()).powf(-nn / T::lit(2.0))
        } else {
            T::one()
        };
        let f = ProfileFn::SubGaussian {
            amplitude,
            rate: T::lit(0.5),
            exponent: T::lit(2.0),
        };
        Self {
            alpha: nn,
            beta: T::lit(2.0),
            lower: f.clone(),
            upper: f,
            tail_grid: default_grid(4.0),
        }
    }

    /// Exact profile of the Cauchy (Poisson) kernel, α = n, β = 1.
    pub fn cauchy_exact(n: usize) -> Self {
        let f = ProfileFn::Poisson {
            amplitude: cauchy_constant(n),
            power: T::from_usize_lossy(n + 1),
        };
        Self {
            alpha: T::from_usize_lossy(n),
            beta: T::one(),
            lower: f.clone(),
            upper: f,
            tail_grid: default_grid(16.0),
        }
    }

    /// Stable-like sandwich `(1+σ)^{-(α+β)}` for the Cauchy kernel, using
    /// `(1+σ)²/2 ≤ 1+σ² ≤ (1+σ)²`.
    pub fn cauchy_stable(n: usize) -> Self {
        let c = cauchy_constant::<T>(n);
        let power = T::from_usize_lossy(n + 1);
        Self {
            alpha: T::from_usize_lossy(n),
            beta: T::one(),
            lower: ProfileFn::StableLike {
                amplitude: c,
                rate: T::one(),
                power,
            },
            upper: ProfileFn::StableLike {
                amplitude: c * T::lit(2.0).powf(power / T::lit(2.0)),
                rate: T::one(),
                power,
            },
            tail_grid: default_grid(16.0),
        }
    }

    pub fn phi1(&self, sigma: T) -> T {
        self.lower.eval(sigma)
    }

    pub fn phi2(&self, sigma: T) -> T {
        self.upper.eval(sigma)
    }

    /// `φ₂(σ) = σ^α Φ₂(σ)`
    pub fn varphi2(&self, sigma: T) -> T {
        sigma.powf(self.alpha) * self.phi2(sigma)
    }

    /// Lower and upper sandwich values at distance `d` and time `t`.
    pub fn bounds(&self, d: T, t: T) -> (T, T) {
        let scale = t.powf(-self.alpha / self.beta);
        let sigma = d / t.powf(T::one() / self.beta);
        (scale * self.phi1(sigma), scale * self.phi2(sigma))
    }

    fn breaks(&self) -> Vec<T> {
        let mut pts = vec![T::zero()];
        pts.extend(self.tail_grid.iter().copied().filter(|s| *s > T::zero()));
        pts
    }

    /// `∫_lo^∞ σ^{power} Φ₂(σ) dσ`.
    pub fn upper_moment(&self, power: T, lo: T, spec: &QuadratureSpec<T>) -> Integral<T> {
        let f = |s: T| {
            if s == T::zero() && power < T::zero() {
                T::zero()
            } else {
                s.powf(power) * self.phi2(s)
            }
        };
        let mut pts: Vec<T> = self.breaks().into_iter().filter(|s| *s > lo).collect();
        pts.insert(0, lo);
        let last = *pts.last().unwrap();
        let head = integrate_with_breaks(f, &pts, spec);
        let tail = integrate_to_infinity(f, last, spec);
        Integral {
            value: head.value + tail.value,
            error: head.error + tail.error,
            evaluations: head.evaluations + tail.evaluations,
            converged: head.converged && tail.converged,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > T::zero() && self.beta > T::zero()) {
            return Err(Error::Profile("alpha and beta must be positive".into()));
        }
        if !(self.phi1(T::one()) > T::zero()) {
            return Err(Error::Profile("lower profile must satisfy Φ₁(1) > 0".into()));
        }
        let mut grid = self.breaks();
        grid.extend(log_grid(T::lit(1e-3), T::lit(1e3), 121));
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut prev: Option<(T, T)> = None;
        for &s in &grid {
            let (a, b) = (self.phi1(s), self.phi2(s));
            if !(a >= T::zero()) || a > b * (T::one() + T::lit(1e-12)) {
                return Err(Error::Profile(format!("Φ₁ ≤ Φ₂ fails at σ = {s}")));
            }
            if let Some((pa, pb)) = prev {
                if a > pa * (T::one() + T::lit(1e-12)) || b > pb * (T::one() + T::lit(1e-12)) {
                    return Err(Error::Profile(format!("profile increases at σ = {s}")));
                }
            }
            prev = Some((a, b));
        }
        let spec = QuadratureSpec::new(T::lit(1e-12), T::lit(1e-10));
        let moment = self.upper_moment(self.alpha - T::one(), T::zero(), &spec);
        // the semi-infinite map clips the integrand once u² underflows, so a
        // log-divergent tail can still look converged; require tail decay too
        let near = self.upper_moment(self.alpha - T::one(), T::lit(1e2), &spec).value;
        let far = self.upper_moment(self.alpha - T::one(), T::lit(1e8), &spec).value;
        let decays = near <= T::lit(1e-200) || far <= T::lit(0.5) * near;
        if !moment.converged || !moment.value.is_finite() || !decays {
            return Err(Error::Profile(
                "∫ σ^{α-1} Φ₂(σ) dσ does not converge numerically".into(),
            ));
        }
        Ok(())
    }

    pub fn constants(&self) -> Result<ProfileConstants<T>> {
        self.validate()?;
        let (sup_phi2, sup_location) = self.sup_varphi2();
        let phi1_at_one = self.phi1(T::one());
        let volume = T::one() / phi1_at_one;
        let two = T::lit(2.0);
        let (green_lower, green_upper, ball_integral, absent_reason) = if self.beta < self.alpha {
            let lower = self.beta / (self.alpha - self.beta) * phi1_at_one;
            let spec = QuadratureSpec::new(T::lit(1e-12), T::lit(1e-12));
            let m = self.upper_moment(self.alpha - self.beta - T::one(), T::zero(), &spec);
            if !m.converged {
                return Err(Error::Profile("Green upper constant integral did not converge".into()));
            }
            let upper = self.beta * m.value;
            let ball = two.powf(self.alpha) / (two.powf(self.beta) - T::one()) * volume * upper;
            (Some(lower), Some(upper), Some(ball), None)
        } else {
            (
                None,
                None,
                None,
                Some(format!(
                    "Green constants need β < α (β = {}, α = {})",
                    self.beta, self.alpha
                )),
            )
        };
        Ok(ProfileConstants {
            sup_phi2,
            sup_location,
            phi2_at_zero: self.phi2(T::zero()),
            phi1_at_one,
            green_lower,
            green_upper,
            volume,
            ball_integral,
            absent_reason,
        })
    }

    /// Log-grid scan followed by golden-section refinement around the best node.
    fn sup_varphi2(&self) -> (T, T) {
        let grid = log_grid(T::lit(1e-4), T::lit(1e4), 2001);
        let mut best = 0usize;
        let mut best_val = T::neg_infinity();
        for (i, &s) in grid.iter().enumerate() {
            let v = self.varphi2(s);
            if v > best_val {
                best_val = v;
                best = i;
            }
        }
        let mut lo = grid[best.saturating_sub(1)];
        let mut hi = grid[(best + 1).min(grid.len() - 1)];
        let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
        for _ in 0..200 {
            let a = hi - ratio * (hi - lo);
            let b = lo + ratio * (hi - lo);
            if self.varphi2(a) < self.varphi2(b) {
                lo = a;
            } else {
                hi = b;
            }
            if hi - lo <= T::epsilon() * hi {
                break;
            }
        }
        let mid = T::lit(0.5) * (lo + hi);
        let v = self.varphi2(mid);
        if v >= best_val {
            (v, mid)
        } else {
            (best_val, grid[best])
        }
    }
}

/// `Γ((n+1)/2) / π^{(n+1)/2}`, the Cauchy kernel normalization on ℝⁿ.
pub fn cauchy_constant<T: Real>(n: usize) -> T {
    let half = T::from_usize_lossy(n + 1) / T::lit(2.0);
    gamma_half::<T>(n as u32 + 1) / T::PI().powf(half)
}

pub(crate) fn log_grid<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * T::from_usize_lossy(i) / T::from_usize_lossy(count - 1)).exp())
        .collect()
}

fn default_grid<T: Real>(scale: f64) -> Vec<T> {
    [0.25, 0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|m| T::lit(m * scale))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // M for the n = 3 Gaussian profile by a plain linear scan, independent of
    // the log-grid and golden-section path used in the library.
    fn brute_force_sup(p: &ProfilePair<f64>) -> f64 {
        (1..=200_000)
            .map(|i| p.varphi2(i as f64 * 1e-4))
            .fold(0.0, f64::max)
    }

    #[test]
    fn gaussian_n3_constants() {
        let p = ProfilePair::<f64>::gaussian(3, true);
        let k = p.constants().unwrap();
        let pi = std::f64::consts::PI;
        assert!((k.green_upper.unwrap() - 1.0 / (4.0 * pi)).abs() < 1e-12);
        assert!((k.green_upper.unwrap() - 0.079_577_5).abs() < 1e-7);
        let c = (-0.25f64).exp() / (4.0 * pi.powf(1.5));
        assert!((k.green_lower.unwrap() - c).abs() < 1e-15);
        assert!((k.green_lower.unwrap() - 0.034_965_6).abs() < 1e-7);
        let m = 6f64.powf(1.5) * (-1.5f64).exp() * (4.0 * pi).powf(-1.5);
        assert!((k.sup_phi2 - m).abs() < 1e-12);
        assert!((k.sup_phi2 - brute_force_sup(&p)).abs() < 1e-9);
        assert!((k.sup_location - 6f64.sqrt()).abs() < 1e-5);
        assert!((k.phi2_at_zero - 0.022_448_4).abs() < 1e-7);
        let cmu = 8.0 / 3.0 * (4.0 * pi).powf(1.5) * 0.25f64.exp() / (4.0 * pi);
        assert!((k.ball_integral.unwrap() - cmu).abs() < 1e-9);
        assert!(k.green_lower.unwrap() <= k.green_upper.unwrap());
    }

    #[test]
    fn green_constants_absent_without_beta_below_alpha() {
        let p = ProfilePair::<f64>::gaussian(1, true);
        let k = p.constants().unwrap();
        assert!(k.green_lower.is_none() && k.green_upper.is_none());
        assert!(k.absent_reason.is_some());
        let p = ProfilePair::<f64>::gaussian(2, true);
        assert!(p.constants().unwrap().green_upper.is_none());
    }

    #[test]
    fn cauchy_profiles_validate() {
        for n in 1..=3 {
            ProfilePair::<f64>::cauchy_exact(n).validate().unwrap();
            ProfilePair::<f64>::cauchy_stable(n).validate().unwrap();
        }
        assert!((cauchy_constant::<f64>(1) - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!((cauchy_constant::<f64>(3) - 1.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn invalid_profiles_are_rejected() {
        let mut p = ProfilePair::<f64>::gaussian(2, true);
        p.lower = ProfileFn::SubGaussian {
            amplitude: 1.0,
            rate: 0.5,
            exponent: 2.0,
        };
        assert!(matches!(p.validate(), Err(Error::Profile(_))));

        let mut p = ProfilePair::<f64>::gaussian(2, true);
        p.lower = ProfileFn::SubGaussian {
            amplitude: 0.0,
            rate: 0.5,
            exponent: 2.0,
        };
        assert!(p.validate().is_err());

        // σ^{α-1}(1+σ)^{-α} is not integrable
        let f = ProfileFn::StableLike {
            amplitude: 1.0,
            rate: 1.0,
            power: 2.0,
        };
        let p = ProfilePair {
            alpha: 2.0,
            beta: 1.0,
            lower: f.clone(),
            upper: f,
            tail_grid: vec![1.0],
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn stable_sandwich_brackets_exact_cauchy() {
        for n in 1..=3 {
            let exact = ProfilePair::<f64>::cauchy_exact(n);
            let stable = ProfilePair::<f64>::cauchy_stable(n);
            for s in log_grid(1e-3, 1e3, 200) {
                let v = exact.phi1(s);
                assert!(stable.phi1(s) <= v * (1.0 + 1e-14));
                assert!(v <= stable.phi2(s) * (1.0 + 1e-14));
            }
        }
    }
}
