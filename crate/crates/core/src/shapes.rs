//! Membership and geometry for G-balls, heat balls, parabolic boxes,
//! anisotropic cylinders and metric balls, and sampled verifiers for the
//! inclusions between them.
//!
//! All space-time shapes act on flat points whose last coordinate is time.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::kernels::{ensure_dim, euclidean, spacetime_flat, KernelSpec, Normalization, Point, ProfilePair, SpaceTimePoint, TransitionSpec};
use crate::sampling::{rejection, rng_for, uniform_in};
use crate::scalar::Real;

/// Relative shrink applied to the ball parameter of sources so sampled points
/// stay clear of the boundary.
pub const INTERIOR_MARGIN: f64 = 1e-12;
/// Relative shrink of boxes inscribed in open shapes.
const INSCRIBED_SHRINK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", bound = "")]
pub enum ShapeFamily<T: Real> {
    /// `B(x,ρ) = {y : G(x,y) > 1/ρ}`
    GBall { kernel: KernelSpec<T> },
    /// G-ball of the unnormalized Gauss–Weierstrass kernel, in closed form.
    HeatBall { n: usize },
    /// `x′ + [-ρ/2, ρ/2]ⁿ × [-ρ²/2, ρ²/2]`, closed.
    ParabolicBox { n: usize },
    /// `Z_β(x′,ρ) = {d(x,y) < ρ, |r-s| < ρ^β}`
    CylinderZ { n: usize, beta: T },
    /// Open Euclidean ball `D(x,ρ)` in ℝⁿ.
    MetricBall { n: usize },
}

/// Axis box `center + offset ± half` contained in a shape element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct InscribedBox<T: Real> {
    pub offset: Vec<T>,
    pub half: Vec<T>,
}

/// Closed-form geometry behind a G-ball, resolved from the kernel.
enum BallGeometry<T: Real> {
    /// radius `(scale·ρ)^power`, sandwiched between inner and outer scales
    Radial { power: T, inner_scale: T, outer_scale: T },
    Heat { n: usize, param: T },
    Cylinders { n: usize, alpha: T, beta: T, outer: T, eta: T, kappa: T },
}

impl<T: Real> ShapeFamily<T> {
    pub fn gball(kernel: KernelSpec<T>) -> Result<Self> {
        kernel.validate()?;
        Ok(ShapeFamily::GBall { kernel })
    }

    pub fn dim(&self) -> usize {
        match self {
            ShapeFamily::GBall { kernel } => kernel.point_dim(),
            ShapeFamily::HeatBall { n } | ShapeFamily::ParabolicBox { n } | ShapeFamily::CylinderZ { n, .. } => n + 1,
            ShapeFamily::MetricBall { n } => *n,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, ShapeFamily::ParabolicBox { .. })
    }

    pub fn label(&self) -> String {
        match self {
            ShapeFamily::GBall { kernel } => format!("g-ball[{}]", kernel.label()),
            ShapeFamily::HeatBall { n } => format!("heat-ball(n={n})"),
            ShapeFamily::ParabolicBox { n } => format!("parabolic-box(n={n})"),
            ShapeFamily::CylinderZ { n, beta } => format!("cylinder-z(n={n}, beta={beta})"),
            ShapeFamily::MetricBall { n } => format!("metric-ball(n={n})"),
        }
    }

    pub fn contains(&self, center: &Point<T>, rho: T, y: &Point<T>) -> Result<bool> {
        ensure_dim(center, self.dim())?;
        ensure_dim(y, self.dim())?;
        self.contains_flat(center.coords(), rho, y.coords())
    }

    pub(crate) fn contains_flat(&self, c: &[T], rho: T, y: &[T]) -> Result<bool> {
        if !(rho > T::zero()) {
            return arg(format!("ball parameter must be positive, got {rho}"));
        }
        Ok(match self {
            ShapeFamily::GBall { kernel } => match kernel.space_time_base() {
                Some(base) => spacetime_flat(&base, c, y) > rho.recip(),
                None => kernel.eval(&Point::from(c.to_vec()), &Point::from(y.to_vec()))? > rho.recip(),
            },
            ShapeFamily::HeatBall { n } => heat_ball_flat(c, rho, y, *n),
            ShapeFamily::ParabolicBox { n } => parabolic_box_flat(c, rho, y, *n),
            ShapeFamily::CylinderZ { n, beta } => {
                euclidean(&c[..*n], &y[..*n]) < rho && (c[*n] - y[*n]).abs() < rho.powf(*beta)
            }
            ShapeFamily::MetricBall { .. } => euclidean(c, y) < rho,
        })
    }

    fn geometry(&self) -> Result<Option<BallGeometry<T>>> {
        let ShapeFamily::GBall { kernel } = self else {
            return Ok(None);
        };
        let g = match kernel {
            KernelSpec::Riesz { n, beta } => BallGeometry::Radial {
                power: (T::from_usize_lossy(*n) - *beta).recip(),
                inner_scale: T::one(),
                outer_scale: T::one(),
            },
            KernelSpec::BoundedHeat { profile, .. } => {
                let k = profile.constants()?;
                let (Some(lo), Some(hi)) = (k.green_lower, k.green_upper) else {
                    return Err(Error::Profile("Green constants unavailable".into()));
                };
                BallGeometry::Radial {
                    power: (profile.alpha - profile.beta).recip(),
                    inner_scale: lo,
                    outer_scale: hi,
                }
            }
            KernelSpec::GaussWeierstrass { n } => BallGeometry::Heat { n: *n, param: T::one() },
            _ => {
                let base = kernel.space_time_base().expect("space-time variant");
                match base {
                    TransitionSpec::Gauss { n, normalization } => {
                        let scale = match normalization {
                            Normalization::Unnormalized => T::one(),
                            Normalization::Probabilistic => {
                                (T::lit(4.0) * T::PI()).powf(-T::from_usize_lossy(n) / T::lit(2.0))
                            }
                        };
                        BallGeometry::Heat { n, param: scale }
                    }
                    TransitionSpec::Cauchy { .. } => {
                        let profile: ProfilePair<T> = base.profile();
                        let k = profile.constants()?;
                        let (eta, kappa) = select_eta(profile.alpha, profile.beta, k.phi1_at_one)?;
                        BallGeometry::Cylinders {
                            n: base.dim(),
                            alpha: profile.alpha,
                            beta: profile.beta,
                            outer: k.phi2_at_zero.max(k.sup_phi2),
                            eta,
                            kappa,
                        }
                    }
                }
            }
        };
        Ok(Some(g))
    }

    /// Axis-aligned box, as offsets from the center, containing the shape.
    pub fn bounding_box(&self, rho: T) -> Result<Vec<(T, T)>> {
        let g = self.geometry()?;
        self.bounding_with(g.as_ref(), rho)
    }

    /// [`Self::bounding_box`] for many parameters, resolving the kernel once.
    pub fn bounding_boxes(&self, rhos: &[T]) -> Result<Vec<Vec<(T, T)>>> {
        let g = self.geometry()?;
        rhos.iter().map(|r| self.bounding_with(g.as_ref(), *r)).collect()
    }

    fn bounding_with(&self, geometry: Option<&BallGeometry<T>>, rho: T) -> Result<Vec<(T, T)>> {
        if !(rho > T::zero()) {
            return arg(format!("ball parameter must be positive, got {rho}"));
        }
        let spatial = |n: usize, r: T, t_lo: T, t_hi: T| {
            let mut b = vec![(-r, r); n];
            b.push((t_lo, t_hi));
            b
        };
        Ok(match self {
            ShapeFamily::HeatBall { n } => heat_bounding(*n, rho),
            ShapeFamily::ParabolicBox { n } => {
                let h = rho / T::lit(2.0);
                let ht = rho * rho / T::lit(2.0);
                spatial(*n, h, -ht, ht)
            }
            ShapeFamily::CylinderZ { n, beta } => {
                let ht = rho.powf(*beta);
                spatial(*n, rho, -ht, ht)
            }
            ShapeFamily::MetricBall { n } => vec![(-rho, rho); *n],
            ShapeFamily::GBall { kernel } => match *geometry.expect("g-ball") {
                BallGeometry::Radial { power, outer_scale, .. } => {
                    let r = (outer_scale * rho).powf(power);
                    vec![(-r, r); kernel.point_dim()]
                }
                BallGeometry::Heat { n, param } => heat_bounding(n, rho * param),
                BallGeometry::Cylinders {
                    n, alpha, beta, outer, ..
                } => {
                    let r = (outer * rho).powf(alpha.recip());
                    spatial(n, r, -r.powf(beta), T::zero())
                }
            },
        })
    }

    /// A box inside the shape that is flat on the inactive axes. Open shapes
    /// get a slightly shrunk box so its closure stays inside.
    pub fn inscribed_box(&self, rho: T, active: &[bool]) -> Result<InscribedBox<T>> {
        let g = self.geometry()?;
        self.inscribed_with(g.as_ref(), rho, active)
    }

    fn inscribed_with(&self, geometry: Option<&BallGeometry<T>>, rho: T, active: &[bool]) -> Result<InscribedBox<T>> {
        if active.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: active.len(),
            });
        }
        if !(rho > T::zero()) {
            return arg(format!("ball parameter must be positive, got {rho}"));
        }
        let shrink = T::one() - T::lit(INSCRIBED_SHRINK);
        let d = self.dim();
        let spatial_active = |n: usize| active[..n].iter().filter(|a| **a).count();
        let flat = |half: &mut Vec<T>| {
            for (h, a) in half.iter_mut().zip(active) {
                if !*a {
                    *h = T::zero();
                }
            }
        };
        let ball = |r: T, k: usize| if k == 0 { T::zero() } else { r * shrink / T::from_usize_lossy(k).sqrt() };
        let cylinder = |n: usize, r: T, ht: T, t_off: T| {
            let h = ball(r, spatial_active(n));
            let mut half = vec![h; n];
            half.push(ht * shrink);
            let mut offset = vec![T::zero(); n];
            offset.push(t_off);
            (offset, half)
        };
        let (offset, mut half) = match self {
            ShapeFamily::ParabolicBox { n } => {
                let mut half = vec![rho / T::lit(2.0); *n];
                half.push(rho * rho / T::lit(2.0));
                (vec![T::zero(); d], half)
            }
            ShapeFamily::CylinderZ { n, beta } => cylinder(*n, rho, rho.powf(*beta), T::zero()),
            ShapeFamily::MetricBall { .. } => (vec![T::zero(); d], vec![ball(rho, spatial_active(d)); d]),
            ShapeFamily::HeatBall { n } => heat_inscribed(*n, rho, active),
            ShapeFamily::GBall { .. } => match *geometry.expect("g-ball") {
                BallGeometry::Radial { power, inner_scale, .. } => {
                    let r = (inner_scale * rho).powf(power);
                    (vec![T::zero(); d], vec![ball(r, spatial_active(d)); d])
                }
                BallGeometry::Heat { n, param } => heat_inscribed(n, rho * param, active),
                BallGeometry::Cylinders {
                    n, alpha, beta, eta, kappa, ..
                } => {
                    let r = (kappa * rho).powf(alpha.recip());
                    let lag = eta * rho.powf(beta / alpha);
                    cylinder(n, r, lag, -T::lit(2.0) * lag)
                }
            },
        };
        flat(&mut half);
        Ok(InscribedBox { offset, half })
    }

    /// Uniform draws from `B(center, ρ(1-margin))` by rejection from the
    /// bounding box.
    pub fn sample(&self, center: &Point<T>, rho: T, count: usize, seed: u64) -> Result<Vec<Point<T>>> {
        ensure_dim(center, self.dim())?;
        let bb = self.bounding_box(rho)?;
        let c = center.coords();
        let lo: Vec<T> = bb.iter().zip(c).map(|((a, _), x)| *x + *a).collect();
        let hi: Vec<T> = bb.iter().zip(c).map(|((_, b), x)| *x + *b).collect();
        let inner = rho * (T::one() - T::lit(INTERIOR_MARGIN));
        let draws = rejection(&lo, &hi, count, seed, |p| self.contains_flat(c, inner, p).unwrap_or(false))?;
        Ok(draws.points.into_iter().map(Point::from).collect())
    }
}

fn heat_bounding<T: Real>(n: usize, rho: T) -> Vec<(T, T)> {
    let e = heat_ball_extents(rho, n);
    let mut b = vec![(-e.cylinder_radius, e.cylinder_radius); n];
    b.push((-e.time_extent, T::zero()));
    b
}

fn heat_inscribed<T: Real>(n: usize, rho: T, active: &[bool]) -> (Vec<T>, Vec<T>) {
    let shrink = T::one() - T::lit(INSCRIBED_SHRINK);
    let nn = T::from_usize_lossy(n);
    let t_top = rho.powf(T::lit(2.0) / nn);
    let k = active[..n].iter().filter(|a| **a).count();
    let kk = T::from_usize_lossy(k.max(1));
    // squared radius of the slice at lag s
    let r2 = |s: T| T::lit(2.0) * nn * s * (t_top / s).ln();
    let (a, b) = if !active[n] {
        let s = t_top / T::E();
        (s, s)
    } else if k == 0 {
        (t_top * T::lit(INSCRIBED_SHRINK), t_top * shrink)
    } else {
        // the slice radius is concave in s, so the worst slice of [a, b] is an end
        let grid = 64usize;
        let mut best = (T::zero(), t_top / T::E(), t_top / T::E());
        for i in 1..grid {
            for j in (i + 1)..grid {
                let a = t_top * T::from_usize_lossy(i) / T::from_usize_lossy(grid);
                let b = t_top * T::from_usize_lossy(j) / T::from_usize_lossy(grid);
                let h2 = r2(a).min(r2(b)) / kk;
                let score = (b - a) * h2.powf(kk / T::lit(2.0));
                if score > best.0 {
                    best = (score, a, b);
                }
            }
        }
        (best.1, best.2)
    };
    let h = if k == 0 {
        T::zero()
    } else {
        (r2(a).min(r2(b)) / kk).sqrt() * shrink
    };
    let mut offset = vec![T::zero(); n];
    offset.push(-(a + b) / T::lit(2.0));
    let mut half = vec![h; n];
    half.push((b - a) / T::lit(2.0));
    for (h, act) in half.iter_mut().zip(active) {
        if !*act {
            *h = T::zero();
        }
    }
    (offset, half)
}

/// Largest `η ∈ (0,1)` on a refined grid with `(3η)^{α/β} < Φ₁(1)`, and
/// `κ = η^{α/β}`.
pub fn select_eta<T: Real>(alpha: T, beta: T, phi1_at_one: T) -> Result<(T, T)> {
    if !(phi1_at_one > T::zero()) {
        return Err(Error::Configuration(format!(
            "no admissible η: Φ₁(1) = {phi1_at_one}"
        )));
    }
    let q = alpha / beta;
    let ok = |eta: T| (T::lit(3.0) * eta).powf(q) < phi1_at_one;
    let steps = 1000usize;
    let mut lo = T::zero();
    let mut hi = T::one();
    for j in (1..steps).rev() {
        let eta = T::from_usize_lossy(j) / T::from_usize_lossy(steps);
        if ok(eta) {
            lo = eta;
            hi = T::from_usize_lossy(j + 1) / T::from_usize_lossy(steps);
            break;
        }
    }
    if lo == T::zero() {
        // Φ₁(1) is tiny; walk down geometrically
        let mut eta = T::one() / T::from_usize_lossy(steps);
        while !ok(eta) {
            eta = eta / T::lit(2.0);
            if eta < T::min_positive_value() {
                return Err(Error::Configuration("no admissible η above underflow".into()));
            }
        }
        lo = eta;
        hi = eta * T::lit(2.0);
    }
    for _ in 0..80 {
        let mid = (lo + hi) / T::lit(2.0);
        if ok(mid) && mid < T::one() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, lo.powf(q)))
}

/// `true` iff `G(center, y) > 1/ρ`.
pub fn gball_contains<T: Real>(kernel: &KernelSpec<T>, center: &Point<T>, rho: T, y: &Point<T>) -> Result<bool> {
    ShapeFamily::GBall { kernel: kernel.clone() }.contains(center, rho, y)
}

/// Heat ball of the unnormalized kernel `t^{-n/2} exp(-|x|²/4t)` around `center`.
pub fn heat_ball_contains<T: Real>(
    center: &SpaceTimePoint<T>,
    rho: T,
    y: &SpaceTimePoint<T>,
    n: usize,
) -> Result<bool> {
    ensure_dim(&center.space, n)?;
    ensure_dim(&y.space, n)?;
    if !(rho > T::zero()) {
        return arg(format!("ball parameter must be positive, got {rho}"));
    }
    Ok(heat_ball_flat(center.to_flat().coords(), rho, y.to_flat().coords(), n))
}

fn heat_ball_flat<T: Real>(c: &[T], rho: T, y: &[T], n: usize) -> bool {
    let s = c[n] - y[n];
    let nn = T::from_usize_lossy(n);
    let t_top = rho.powf(T::lit(2.0) / nn);
    if !(s > T::zero() && s < t_top) {
        return false;
    }
    let d = euclidean(&c[..n], &y[..n]);
    d * d < T::lit(2.0) * nn * s * (t_top / s).ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct HeatBallExtents<T: Real> {
    pub time_extent: T,
    pub cylinder_radius: T,
    pub tight_radius: T,
}

pub fn heat_ball_extents<T: Real>(rho: T, n: usize) -> HeatBallExtents<T> {
    let nn = T::from_usize_lossy(n);
    let root = rho.powf(nn.recip());
    HeatBallExtents {
        time_extent: root * root,
        cylinder_radius: nn.sqrt() * root,
        tight_radius: (T::lit(2.0) * nn / T::E()).sqrt() * root,
    }
}

pub fn parabolic_box_contains<T: Real>(center: &SpaceTimePoint<T>, rho: T, y: &SpaceTimePoint<T>) -> Result<bool> {
    let n = center.spatial_dim();
    ensure_dim(&y.space, n)?;
    if !(rho > T::zero()) {
        return arg(format!("ball parameter must be positive, got {rho}"));
    }
    Ok(parabolic_box_flat(center.to_flat().coords(), rho, y.to_flat().coords(), n))
}

fn parabolic_box_flat<T: Real>(c: &[T], rho: T, y: &[T], n: usize) -> bool {
    let h = rho / T::lit(2.0);
    let ht = rho * rho / T::lit(2.0);
    c[..n].iter().zip(&y[..n]).all(|(a, b)| (*a - *b).abs() <= h) && (c[n] - y[n]).abs() <= ht
}

/// Outcome of a sampled inclusion check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct InclusionReport<T: Real> {
    pub check: String,
    pub family: String,
    pub params: BTreeMap<String, T>,
    pub constants: BTreeMap<String, T>,
    pub samples: usize,
    pub accepted: usize,
    pub attempts: usize,
    pub violations: usize,
    pub vacuous: bool,
}

impl<T: Real> InclusionReport<T> {
    fn new(check: &str, family: String, samples: usize) -> Self {
        Self {
            check: check.into(),
            family,
            params: BTreeMap::new(),
            constants: BTreeMap::new(),
            samples,
            accepted: 0,
            attempts: 0,
            violations: 0,
            vacuous: samples == 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && !self.vacuous
    }
}

fn seeded_center<T: Real>(dim: usize, seed: u64) -> Vec<T> {
    let mut rng = rng_for(seed, u64::MAX);
    uniform_in(&mut rng, &vec![-T::one(); dim], &vec![T::one(); dim])
}

/// Sampled form of `B(x′,ρ) ⊂ P(x′, 2√n ρ^{1/n})` for heat balls.
pub fn check_bp_inclusion<T: Real>(n: usize, rho: T, samples: usize, seed: u64) -> Result<InclusionReport<T>> {
    let side = T::lit(2.0) * T::from_usize_lossy(n).sqrt() * rho.powf(T::from_usize_lossy(n).recip());
    let mut report = InclusionReport::new("heat-ball-in-box", ShapeFamily::<T>::HeatBall { n }.label(), samples);
    report.params.insert("n".into(), T::from_usize_lossy(n));
    report.params.insert("rho".into(), rho);
    report.constants.insert("box_parameter".into(), side);
    if samples == 0 {
        return Ok(report);
    }
    let c = seeded_center::<T>(n + 1, seed);
    let inner = rho * (T::one() - T::lit(INTERIOR_MARGIN));
    let (lo, hi) = enlarged_proposal(&c, &heat_bounding(n, rho));
    let draws = rejection(&lo, &hi, samples, seed, |p| heat_ball_flat(&c, inner, p, n))?;
    report.accepted = draws.points.len();
    report.attempts = draws.attempts;
    report.violations = draws.points.iter().filter(|p| !parabolic_box_flat(&c, side, p, n)).count();
    report.vacuous = report.accepted == 0;
    Ok(report)
}

/// Sampled form of "the heat ball lies in the cylinder `|y| < √n ρ^{1/n}`,
/// `0 < s < ρ^{2/n}`".
pub fn check_heat_ball_cylinder<T: Real>(n: usize, rho: T, samples: usize, seed: u64) -> Result<InclusionReport<T>> {
    let e = heat_ball_extents(rho, n);
    let mut report = InclusionReport::new("heat-ball-cylinder", ShapeFamily::<T>::HeatBall { n }.label(), samples);
    report.params.insert("rho".into(), rho);
    report.constants.insert("cylinder_radius".into(), e.cylinder_radius);
    report.constants.insert("time_extent".into(), e.time_extent);
    if samples == 0 {
        return Ok(report);
    }
    let c = seeded_center::<T>(n + 1, seed);
    let inner = rho * (T::one() - T::lit(INTERIOR_MARGIN));
    let (lo, hi) = enlarged_proposal(&c, &heat_bounding(n, rho));
    let draws = rejection(&lo, &hi, samples, seed, |p| heat_ball_flat(&c, inner, p, n))?;
    report.accepted = draws.points.len();
    report.attempts = draws.attempts;
    report.violations = draws
        .points
        .iter()
        .filter(|p| {
            let s = c[n] - p[n];
            !(euclidean(&c[..n], &p[..n]) < e.cylinder_radius && s > T::zero() && s < e.time_extent)
        })
        .count();
    report.vacuous = report.accepted == 0;
    Ok(report)
}

/// Proposal box twice as wide as `bb` on every axis, around `c`.
fn enlarged_proposal<T: Real>(c: &[T], bb: &[(T, T)]) -> (Vec<T>, Vec<T>) {
    let mut lo = Vec::with_capacity(c.len());
    let mut hi = Vec::with_capacity(c.len());
    for (x, (a, b)) in c.iter().zip(bb) {
        let mid = (*a + *b) / T::lit(2.0);
        let w = *b - *a;
        lo.push(*x + mid - w);
        hi.push(*x + mid + w);
    }
    (lo, hi)
}

/// Vertex form of `P(x′,ρ) ⊂ B(x′ + (0,ρ²), 2^{n/2} ρⁿ)`.
///
/// The heat ball is convex, so vertices suffice.
pub fn check_pb_inclusion<T: Real>(n: usize, rho: T) -> Result<InclusionReport<T>> {
    if !(rho > T::zero()) {
        return arg(format!("ball parameter must be positive, got {rho}"));
    }
    let nn = T::from_usize_lossy(n);
    let two = T::lit(2.0);
    let ball = two.powf(nn / two) * rho.powf(nn);
    let vertices = 1usize << (n + 1);
    let mut report = InclusionReport::new("box-in-heat-ball", ShapeFamily::<T>::ParabolicBox { n }.label(), vertices);
    report.params.insert("n".into(), nn);
    report.params.insert("rho".into(), rho);
    report.constants.insert("ball_parameter".into(), ball);
    let four = T::lit(4.0);
    for k in [1u32, 3] {
        let kk = T::from_u32(k).expect("small");
        let rhs = kk * (four / kk).ln();
        report.constants.insert(format!("vertex_rhs_k{k}"), rhs);
        if !(T::lit(0.25) < rhs) {
            report.violations += 1;
        }
    }
    report.constants.insert("four_log_four_thirds".into(), four * (four / T::lit(3.0)).ln());

    // ball center at the origin, box centered at -z′ = (0, -ρ²)
    let gauss = TransitionSpec::gauss_unnormalized(n);
    let origin = vec![T::zero(); n + 1];
    let t_top = two * rho * rho;
    let mut worst = T::infinity();
    for mask in 0..vertices {
        let mut v: Vec<T> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { rho / two } else { -rho / two })
            .collect();
        let dt = if mask >> n & 1 == 1 { rho * rho / two } else { -rho * rho / two };
        v.push(-rho * rho + dt);
        let s = -v[n];
        let y2: T = v[..n].iter().map(|x| *x * *x).sum();
        let bound = two * nn * s * (t_top / s).ln();
        let direct = s > T::zero() && s < t_top && y2 < bound;
        let closed = heat_ball_flat(&origin, ball, &v, n);
        let kernel = spacetime_flat(&gauss, &origin, &v) > ball.recip();
        worst = worst.min((bound - y2) / bound);
        report.accepted += usize::from(direct && closed && kernel);
        if !(direct && closed && kernel) {
            report.violations += 1;
        }
    }
    report.constants.insert("min_relative_margin".into(), worst);
    report.attempts = vertices;
    Ok(report)
}

/// Sampled form of `B(x′,ρ) ⊂ Z_β(x′, (Cρ)^{1/α})` with `C = max{Φ₂(0), M}`
/// for the space-time kernel of `transition`.
pub fn check_bz_inclusion<T: Real>(
    transition: &TransitionSpec,
    profile: &ProfilePair<T>,
    rho: T,
    samples: usize,
    seed: u64,
) -> Result<InclusionReport<T>> {
    let k = profile.constants()?;
    let n = transition.dim();
    let cst = k.phi2_at_zero.max(k.sup_phi2);
    let r = (cst * rho).powf(profile.alpha.recip());
    let lag = r.powf(profile.beta);
    let mut report = InclusionReport::new("ball-in-cylinder", format!("space-time {}", transition.label()), samples);
    report.params.insert("rho".into(), rho);
    report.params.insert("alpha".into(), profile.alpha);
    report.params.insert("beta".into(), profile.beta);
    report.constants.insert("C".into(), cst);
    report.constants.insert("phi2_at_zero".into(), k.phi2_at_zero);
    report.constants.insert("M".into(), k.sup_phi2);
    report.constants.insert("cylinder_radius".into(), r);
    if samples == 0 {
        return Ok(report);
    }
    let c = seeded_center::<T>(n + 1, seed);
    let mut bb = vec![(-r, r); n];
    bb.push((-lag, lag));
    let (lo, hi) = enlarged_proposal(&c, &bb);
    let level = (rho * (T::one() - T::lit(INTERIOR_MARGIN))).recip();
    let draws = rejection(&lo, &hi, samples, seed, |p| spacetime_flat(transition, &c, p) > level)?;
    report.accepted = draws.points.len();
    report.attempts = draws.attempts;
    report.violations = draws
        .points
        .iter()
        .filter(|p| !(euclidean(&c[..n], &p[..n]) < r && (c[n] - p[n]).abs() < lag))
        .count();
    report.vacuous = report.accepted == 0;
    Ok(report)
}

/// Sampled form of `Z_β(x′, (κρ)^{1/α}) ⊂ B(z′, ρ)` with `κ = η^{α/β}` and
/// `z′ = (x, r + 2ηρ^{β/α})`.
pub fn check_zb_inclusion<T: Real>(
    transition: &TransitionSpec,
    profile: &ProfilePair<T>,
    rho: T,
    samples: usize,
    seed: u64,
) -> Result<InclusionReport<T>> {
    let n = transition.dim();
    let (eta, kappa) = select_eta(profile.alpha, profile.beta, profile.phi1(T::one()))?;
    let r = (kappa * rho).powf(profile.alpha.recip());
    let lag = eta * rho.powf(profile.beta / profile.alpha);
    let mut report = InclusionReport::new("cylinder-in-ball", format!("space-time {}", transition.label()), samples);
    report.params.insert("rho".into(), rho);
    report.params.insert("alpha".into(), profile.alpha);
    report.params.insert("beta".into(), profile.beta);
    report.constants.insert("eta".into(), eta);
    report.constants.insert("kappa".into(), kappa);
    report.constants.insert("witness_time_shift".into(), T::lit(2.0) * lag);
    report.constants.insert("cylinder_radius".into(), r);
    if samples == 0 {
        return Ok(report);
    }
    let c = seeded_center::<T>(n + 1, seed);
    let mut z = c.clone();
    z[n] += T::lit(2.0) * lag;
    let shrink = T::one() - T::lit(INTERIOR_MARGIN);
    let mut lo: Vec<T> = c[..n].iter().map(|x| *x - r).collect();
    let mut hi: Vec<T> = c[..n].iter().map(|x| *x + r).collect();
    lo.push(c[n] - lag);
    hi.push(c[n] + lag);
    let draws = rejection(&lo, &hi, samples, seed, |p| {
        euclidean(&c[..n], &p[..n]) < r * shrink && (c[n] - p[n]).abs() < lag * shrink
    })?;
    report.accepted = draws.points.len();
    report.attempts = draws.attempts;
    report.violations = draws
        .points
        .iter()
        .filter(|p| !(spacetime_flat(transition, &z, p) > rho.recip()))
        .count();
    report.vacuous = report.accepted == 0;
    Ok(report)
}

#[cfg(test)]
mod tests;
