//! Heat-kernel machinery on ℝⁿ with Lebesgue reference measure: semigroup
//! identities, mass, tail radii, the volume bound and Green functions
//! obtained by integrating the heat kernel in time.

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::kernels::{ensure_dim, euclidean, Point, ProfilePair, TransitionSpec};
use crate::quadrature::{integrate, integrate_to_infinity, integrate_with_breaks, Integral, QuadratureSpec};
use crate::scalar::{unit_ball_volume, Real};

/// Tolerance bookkeeping for checks that integrate over ℝⁿ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct WindowSpec<T: Real> {
    pub tol: T,
    pub max_doublings: usize,
}

impl<T: Real> WindowSpec<T> {
    pub fn new(tol: T) -> Self {
        Self {
            tol,
            max_doublings: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ChapmanKolmogorovReport<T: Real> {
    pub transition: String,
    pub s: T,
    pub t: T,
    pub distance: T,
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
    pub window_half_width: T,
    pub tail_bound: T,
    pub quadrature_error: T,
    pub tol: T,
    pub passed: bool,
}

/// Widen a cube around `x` until the profile tail of `p_scale(x, ·)` outside it
/// is below `budget`. Returns the half-width and the tail mass bound.
fn tail_window<T: Real>(
    profile: &ProfilePair<T>,
    n: usize,
    scale: T,
    start: T,
    budget: T,
    max_doublings: usize,
) -> Result<(T, T)> {
    let spec = QuadratureSpec::new(budget * T::lit(1e-3), T::lit(1e-6));
    let surface = T::from_usize_lossy(n) * unit_ball_volume::<T>(n);
    let root = scale.powf(T::one() / profile.beta);
    let mut half = start;
    for _ in 0..=max_doublings {
        let m = profile.upper_moment(T::from_usize_lossy(n) - T::one(), half / root, &spec);
        let tail = surface * (m.value + m.error);
        if tail <= budget {
            return Ok((half, tail));
        }
        half *= T::lit(2.0);
    }
    Err(Error::Quadrature(format!(
        "tail bound stays above {budget} after {max_doublings} window doublings"
    )))
}

/// Integrate `f` over the cube `center ± half` with nested adaptive rules,
/// seeding each axis with the supplied break coordinates.
fn integrate_cube<T: Real>(
    f: &dyn Fn(&[T]) -> T,
    center: &[T],
    half: T,
    breaks: &[Vec<T>],
    spec: &QuadratureSpec<T>,
) -> Integral<T> {
    fn level<T: Real>(
        f: &dyn Fn(&[T]) -> T,
        axis: usize,
        buf: &mut Vec<T>,
        center: &[T],
        half: T,
        breaks: &[Vec<T>],
        spec: &QuadratureSpec<T>,
        err: &mut T,
        ok: &mut bool,
    ) -> T {
        let n = center.len();
        let lo = center[axis] - half;
        let hi = center[axis] + half;
        let mut pts = vec![lo];
        let mut inner: Vec<T> = breaks[axis].iter().copied().filter(|b| *b > lo && *b < hi).collect();
        inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
        inner.dedup();
        pts.extend(inner);
        pts.push(hi);
        let r = integrate_with_breaks(
            |v| {
                buf[axis] = v;
                if axis + 1 == n {
                    f(buf)
                } else {
                    let mut local = buf.clone();
                    level(f, axis + 1, &mut local, center, half, breaks, spec, err, ok)
                }
            },
            &pts,
            spec,
        );
        if axis == 0 {
            *err += r.error;
        }
        *ok &= r.converged;
        r.value
    }
    let mut buf = center.to_vec();
    let mut err = T::zero();
    let mut ok = true;
    let value = level(f, 0, &mut buf, center, half, breaks, spec, &mut err, &mut ok);
    Integral {
        value,
        error: err,
        evaluations: 0,
        converged: ok,
    }
}

/// `p_{s+t}(x,y) = ∫ p_s(x,z) p_t(z,y) dz`, with the part of ℝⁿ outside the
/// integration cube bounded through the profile of `p_s`.
pub fn check_chapman_kolmogorov<T: Real>(
    transition: &TransitionSpec,
    x: &Point<T>,
    y: &Point<T>,
    s: T,
    t: T,
    window: &WindowSpec<T>,
) -> Result<ChapmanKolmogorovReport<T>> {
    let n = transition.dim();
    ensure_dim(x, n)?;
    ensure_dim(y, n)?;
    if !(s > T::zero() && t > T::zero()) {
        return arg("Chapman–Kolmogorov times must be positive");
    }
    let profile: ProfilePair<T> = transition.profile();
    let d = euclidean(x.coords(), y.coords());
    let lhs = transition.radial(d, s + t);
    let root = (s.max(t)).powf(T::one() / profile.beta);
    let start = T::lit(8.0) * (d + root);
    let peak = t.powf(-profile.alpha / profile.beta) * profile.phi2(T::zero());
    let (half, mass_tail) = tail_window(
        &profile,
        n,
        s,
        start,
        window.tol / (T::lit(2.0) * peak),
        window.max_doublings,
    )?;
    let tail_bound = mass_tail * peak;
    let breaks: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let (a, b) = (x.coords()[i], y.coords()[i]);
            let mut v = vec![a, b];
            // geometric ladder so the rule resolves the algebraic tails
            let mut w = root;
            while w < half {
                v.extend([a - w, a + w, b - w, b + w]);
                w *= T::lit(2.0);
            }
            v
        })
        .collect();
    let spec = QuadratureSpec::new(window.tol * T::lit(1e-3), T::lit(1e-12)).with_max_subdivisions(2000);
    let f = |z: &[T]| {
        transition.radial(euclidean(x.coords(), z), s) * transition.radial(euclidean(z, y.coords()), t)
    };
    let r = integrate_cube(&f, x.coords(), half, &breaks, &spec);
    let residual = (lhs - r.value).abs();
    Ok(ChapmanKolmogorovReport {
        transition: transition.label(),
        s,
        t,
        distance: d,
        lhs,
        rhs: r.value,
        residual,
        window_half_width: half,
        tail_bound,
        quadrature_error: r.error,
        tol: window.tol,
        passed: r.converged && residual <= window.tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MassRow<T: Real> {
    pub t: T,
    pub mass: T,
    pub tail_bound: T,
    pub quadrature_error: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MassReport<T: Real> {
    pub transition: String,
    pub rows: Vec<MassRow<T>>,
    pub sup_mass: T,
    pub tol: T,
    /// every mass within `tol` of 1
    pub markov: bool,
    pub converged: bool,
}

/// `∫ p_t(x,y) dy` for each `t`, computed radially on a truncated ball.
pub fn check_mass<T: Real>(
    transition: &TransitionSpec,
    x: &Point<T>,
    t_schedule: &[T],
    window: &WindowSpec<T>,
) -> Result<MassReport<T>> {
    let n = transition.dim();
    ensure_dim(x, n)?;
    let profile: ProfilePair<T> = transition.profile();
    let surface = T::from_usize_lossy(n) * unit_ball_volume::<T>(n);
    let nm1 = T::from_usize_lossy(n) - T::one();
    let mut rows = Vec::with_capacity(t_schedule.len());
    let mut converged = true;
    for &t in t_schedule {
        if !(t > T::zero()) {
            return arg("mass check times must be positive");
        }
        let root = t.powf(T::one() / profile.beta);
        let (radius, tail_bound) =
            tail_window(&profile, n, t, T::lit(8.0) * root, window.tol / T::lit(2.0), window.max_doublings)?;
        let spec = QuadratureSpec::new(window.tol * T::lit(1e-3), T::lit(1e-13));
        let breaks = [T::zero(), root, T::lit(4.0) * root, radius];
        let pts: Vec<T> = breaks.into_iter().filter(|b| *b <= radius).collect();
        let r = integrate_with_breaks(|rad| surface * rad.powf(nm1) * transition.radial(rad, t), &pts, &spec);
        converged &= r.converged && r.value.is_finite();
        rows.push(MassRow {
            t,
            mass: r.value,
            tail_bound,
            quadrature_error: r.error,
        });
    }
    let sup_mass = rows.iter().map(|r| r.mass).fold(T::zero(), T::max);
    let markov = converged && rows.iter().all(|r| (r.mass - T::one()).abs() <= window.tol);
    Ok(MassReport {
        transition: transition.label(),
        rows,
        sup_mass,
        tol: window.tol,
        markov,
        converged,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct KlRadius<T: Real> {
    pub k: u32,
    /// `2^k R`
    pub radius: T,
    /// `2^{k-2} R / T^{1/β}`
    pub sigma_k: T,
    /// `2^{3α+1} c_μ ∫_{σ_k}^∞ φ₂(σ) dσ/σ`
    pub tail_value: T,
    /// smallest time with `T^{-α/β} Φ₂(0) < ε` on a dyadic ladder
    pub time_escape: T,
}

/// Smallest dyadic radius `2^k R` for which both the sup-norm escape
/// `((2^k - 1) R)^{-α} M < ε/2` and the L¹ tail condition
/// `2^{3α+1} c_μ ∫_{σ_k}^∞ φ₂(σ) dσ/σ < ε/2` hold.
pub fn kl_tail_radius<T: Real>(profile: &ProfilePair<T>, radius: T, horizon: T, epsilon: T) -> Result<KlRadius<T>> {
    if !(radius >= T::one() && horizon > T::zero() && epsilon > T::zero()) {
        return arg("kl_tail_radius needs R ≥ 1, T > 0, ε > 0");
    }
    let consts = profile.constants()?;
    let two = T::lit(2.0);
    let half_eps = epsilon / two;
    let prefactor = two.powf(T::lit(3.0) * profile.alpha + T::one()) * consts.volume;
    let spec = QuadratureSpec::new(T::lit(1e-14), T::lit(1e-10));
    let root = horizon.powf(T::one() / profile.beta);
    for k in 1..400u32 {
        let scale = two.powi(k as i32);
        let escape = ((scale - T::one()) * radius).powf(-profile.alpha) * consts.sup_phi2;
        if !(escape < half_eps) {
            continue;
        }
        let sigma_k = scale / T::lit(4.0) * radius / root;
        let m = profile.upper_moment(profile.alpha - T::one(), sigma_k, &spec);
        if !m.converged {
            return Err(Error::Profile("tail integral of φ₂(σ)/σ did not converge".into()));
        }
        let tail_value = prefactor * m.value;
        if tail_value < half_eps {
            let mut time_escape = T::one();
            let phi0 = profile.phi2(T::zero());
            while time_escape.powf(-profile.alpha / profile.beta) * phi0 >= epsilon {
                time_escape *= two;
            }
            while (time_escape / two).powf(-profile.alpha / profile.beta) * phi0 < epsilon {
                time_escape = time_escape / two;
            }
            return Ok(KlRadius {
                k,
                radius: scale * radius,
                sigma_k,
                tail_value,
                time_escape,
            });
        }
    }
    Err(Error::Profile("no dyadic radius satisfies the tail condition".into()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VolumeRow<T: Real> {
    pub n: usize,
    pub r: T,
    pub ball_volume: T,
    pub bound: T,
    pub passed: bool,
}

/// `|D(x,r)| ≤ c_μ r^n` for Lebesgue measure with the normalized Gaussian profile.
pub fn check_volume_bound<T: Real>(n: usize, r_schedule: &[T]) -> Result<Vec<VolumeRow<T>>> {
    if n == 0 {
        return arg("dimension must be at least 1");
    }
    let c_mu = ProfilePair::<T>::gaussian(n, true).constants()?.volume;
    let omega = unit_ball_volume::<T>(n);
    let nn = T::from_usize_lossy(n);
    Ok(r_schedule
        .iter()
        .map(|&r| {
            let ball_volume = omega * r.powf(nn);
            let bound = c_mu * r.powf(nn);
            VolumeRow {
                n,
                r,
                ball_volume,
                bound,
                passed: ball_volume <= bound,
            }
        })
        .collect())
}

/// `∫₀^∞ p_t(d) dt` through `t = (d/σ)^β`, split at `t = d^β` (σ = 1).
pub fn green_radial<T: Real>(transition: &TransitionSpec, beta: T, d: T, spec: &QuadratureSpec<T>) -> Integral<T> {
    if d == T::zero() {
        return Integral {
            value: T::infinity(),
            error: T::zero(),
            evaluations: 0,
            converged: true,
        };
    }
    let f = |sigma: T| {
        if sigma == T::zero() {
            return T::zero();
        }
        let t = (d / sigma).powf(beta);
        let v = beta * d.powf(beta) * sigma.powf(-beta - T::one()) * transition.radial(d, t);
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    let head = integrate(f, T::zero(), T::one(), spec);
    let tail = integrate_to_infinity(f, T::one(), spec);
    Integral {
        value: head.value + tail.value,
        error: head.error + tail.error,
        evaluations: head.evaluations + tail.evaluations,
        converged: head.converged && tail.converged,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GreenEstimate<T: Real> {
    pub distance: T,
    pub value: T,
    pub error: T,
    pub lower: T,
    pub upper: T,
    pub within_sandwich: bool,
    pub diagonal: bool,
}

/// Green function by time quadrature together with `c d^{-(α-β)}` and `C d^{-(α-β)}`.
pub fn green_from_heat<T: Real>(
    transition: &TransitionSpec,
    profile: &ProfilePair<T>,
    x: &Point<T>,
    y: &Point<T>,
    spec: &QuadratureSpec<T>,
) -> Result<GreenEstimate<T>> {
    ensure_dim(x, transition.dim())?;
    ensure_dim(y, transition.dim())?;
    let consts = profile.constants()?;
    let (Some(c), Some(big_c)) = (consts.green_lower, consts.green_upper) else {
        return arg(consts.absent_reason.unwrap_or_else(|| "Green constants unavailable".into()));
    };
    let d = euclidean(x.coords(), y.coords());
    if d == T::zero() {
        return Ok(GreenEstimate {
            distance: d,
            value: T::infinity(),
            error: T::zero(),
            lower: T::infinity(),
            upper: T::infinity(),
            within_sandwich: true,
            diagonal: true,
        });
    }
    let r = green_radial(transition, profile.beta, d, spec);
    if !r.converged {
        return Err(Error::Quadrature(format!("Green time integral at d = {d}")));
    }
    let scale = d.powf(-(profile.alpha - profile.beta));
    let (lower, upper) = (c * scale, big_c * scale);
    // the quadrature error is allowed on both sides since Φ₂ may be exact
    let slack = r.error + spec.rel_tol * r.value.abs();
    Ok(GreenEstimate {
        distance: d,
        value: r.value,
        error: r.error,
        lower,
        upper,
        within_sandwich: lower <= r.value + slack && r.value <= upper + slack,
        diagonal: false,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BallIntegralReport<T: Real> {
    pub radius: T,
    pub lhs: T,
    pub rhs: T,
    pub ball_constant: T,
    pub passed: bool,
}

/// `∫_{D(x,R)} G(x,y) dy ≤ C_μ R^β`, integrating the radial Green function in
/// polar coordinates.
pub fn check_green_ball_integral<T: Real>(
    transition: &TransitionSpec,
    profile: &ProfilePair<T>,
    radius: T,
) -> Result<BallIntegralReport<T>> {
    let consts = profile.constants()?;
    let Some(ball_constant) = consts.ball_integral else {
        return arg(consts.absent_reason.unwrap_or_default());
    };
    if !(radius > T::zero()) {
        return arg("ball radius must be positive");
    }
    let n = transition.dim();
    let surface = T::from_usize_lossy(n) * unit_ball_volume::<T>(n);
    let nm1 = T::from_usize_lossy(n) - T::one();
    let inner = QuadratureSpec::new(T::lit(1e-14), T::lit(1e-11));
    let outer = QuadratureSpec::new(T::lit(1e-12), T::lit(1e-9));
    let r = integrate(
        |rad| surface * rad.powf(nm1) * green_radial(transition, profile.beta, rad, &inner).value,
        T::zero(),
        radius,
        &outer,
    );
    if !r.converged {
        return Err(Error::Quadrature("ball integral of the Green function".into()));
    }
    let rhs = ball_constant * radius.powf(profile.beta);
    Ok(BallIntegralReport {
        radius,
        lhs: r.value,
        rhs,
        ball_constant,
        passed: r.value <= rhs,
    })
}
