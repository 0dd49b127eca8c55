//! Potentials `Gν(x) = ∫ G(x,y) dν(y)` of discrete measures, capacity lower
//! bounds `c(A) ≥ ν(A) / sup Gν`, the ball-mass inequality
//! `ν(B(x,ρ)) ≤ ρ Gν(x)` and the comparison `c(A) ≤ m_G(A)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::harness::TestSet;
use crate::hausdorff::MeasureEstimate;
use crate::kernels::{ensure_dim, KernelSpec, Normalization, Point, TransitionSpec};
use crate::sampling::{rng_for, uniform_in};
use crate::scalar::{unit_ball_volume, Real};

/// Midpoint refinement levels for cells without a closed-form integral.
pub const DEFAULT_LEVELS: u32 = 3;
const MASS_FLOOR: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Atom<T: Real> {
    pub point: Point<T>,
    pub weight: T,
}

/// Uniform mass `weight` on the box `center ± half` (flat where `half = 0`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Cell<T: Real> {
    pub center: Point<T>,
    pub half: Vec<T>,
    pub weight: T,
}

impl<T: Real> Cell<T> {
    fn flat_volume(&self) -> T {
        self.half
            .iter()
            .filter(|h| **h > T::zero())
            .fold(T::one(), |acc, h| acc * (*h + *h))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DiscreteMeasure<T: Real> {
    pub atoms: Vec<Atom<T>>,
    pub cells: Vec<Cell<T>>,
}

impl<T: Real> DiscreteMeasure<T> {
    pub fn new(atoms: Vec<Atom<T>>, cells: Vec<Cell<T>>) -> Result<Self> {
        let m = Self { atoms, cells };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let weights = self.atoms.iter().map(|a| a.weight).chain(self.cells.iter().map(|c| c.weight));
        for w in weights {
            if !(w >= T::zero() && w.is_finite()) {
                return arg(format!("measure weights must be finite and nonnegative, got {w}"));
            }
        }
        for c in &self.cells {
            if c.half.len() != c.center.dim() || c.half.iter().any(|h| !(*h >= T::zero())) {
                return arg("cell extents must match the center and be nonnegative");
            }
        }
        Ok(())
    }

    pub fn total_mass(&self) -> T {
        self.atoms.iter().map(|a| a.weight).sum::<T>() + self.cells.iter().map(|c| c.weight).sum::<T>()
    }

    pub fn dim(&self) -> Option<usize> {
        self.atoms
            .first()
            .map(|a| a.point.dim())
            .or_else(|| self.cells.first().map(|c| c.center.dim()))
    }

    pub fn atom(point: Point<T>, weight: T) -> Self {
        Self {
            atoms: vec![Atom { point, weight }],
            cells: vec![],
        }
    }

    /// Flat Lebesgue measure on the set, split into `subdivisions` cells per
    /// active axis of every component; point components become unit atoms.
    pub fn uniform_on(set: &TestSet<T>, subdivisions: usize) -> Result<Self> {
        if subdivisions == 0 {
            return arg("need at least one subdivision");
        }
        let mut atoms = vec![];
        let mut cells = vec![];
        for comp in set.components() {
            let active = comp.active_axes();
            if !active.iter().any(|a| *a) {
                atoms.push(Atom {
                    point: Point::from(comp.lo.clone()),
                    weight: T::one(),
                });
                continue;
            }
            let d = comp.dim();
            let k = active.iter().filter(|a| **a).count();
            let m = T::from_usize_lossy(subdivisions);
            let total = subdivisions.pow(k as u32);
            let weight = comp.flat_volume() / T::from_usize_lossy(total);
            for mut idx in 0..total {
                let mut center = Vec::with_capacity(d);
                let mut half = Vec::with_capacity(d);
                for i in 0..d {
                    if active[i] {
                        let w = (comp.hi[i] - comp.lo[i]) / m;
                        let j = T::from_usize_lossy(idx % subdivisions);
                        idx /= subdivisions;
                        center.push(comp.lo[i] + (j + T::lit(0.5)) * w);
                        half.push(w / T::lit(2.0));
                    } else {
                        center.push(comp.lo[i]);
                        half.push(T::zero());
                    }
                }
                cells.push(Cell {
                    center: Point::from(center),
                    half,
                    weight,
                });
            }
        }
        Ok(Self { atoms, cells })
    }

    /// Same cells with weights multiplied by factors drawn from `[lo, hi]`.
    pub fn reweighted(&self, lo: T, hi: T, seed: u64) -> Self {
        let mut rng = rng_for(seed, 2);
        let mut out = self.clone();
        for a in &mut out.atoms {
            a.weight *= uniform_in(&mut rng, &[lo], &[hi])[0];
        }
        for c in &mut out.cells {
            c.weight *= uniform_in(&mut rng, &[lo], &[hi])[0];
        }
        out
    }

    /// Atoms at the midpoints of a `2^levels` split of every active cell axis.
    pub fn atomize(&self, levels: u32) -> Vec<(Vec<T>, T)> {
        let mut out: Vec<(Vec<T>, T)> = self.atoms.iter().map(|a| (a.point.coords().to_vec(), a.weight)).collect();
        for c in &self.cells {
            out.extend(midpoints(c, levels));
        }
        out
    }

    pub fn supported_in(&self, set: &TestSet<T>, tol: T) -> bool {
        let comps = set.components();
        let inside = |p: &[T]| comps.iter().any(|b| b.contains(p, tol));
        self.atoms.iter().all(|a| inside(a.point.coords()))
            && self.cells.iter().all(|c| {
                let lo: Vec<T> = c.center.coords().iter().zip(&c.half).map(|(x, h)| *x - *h).collect();
                let hi: Vec<T> = c.center.coords().iter().zip(&c.half).map(|(x, h)| *x + *h).collect();
                comps.iter().any(|b| b.contains(&lo, tol) && b.contains(&hi, tol))
            })
    }
}

fn midpoints<T: Real>(c: &Cell<T>, levels: u32) -> Vec<(Vec<T>, T)> {
    let m = 1usize << levels;
    let active: Vec<usize> = (0..c.half.len()).filter(|i| c.half[*i] > T::zero()).collect();
    let total = m.pow(active.len() as u32);
    let w = c.weight / T::from_usize_lossy(total);
    let mm = T::from_usize_lossy(m);
    (0..total)
        .map(|mut idx| {
            let mut p = c.center.coords().to_vec();
            for &i in &active {
                let j = T::from_usize_lossy(idx % m);
                idx /= m;
                let h = c.half[i];
                p[i] = p[i] - h + (j + T::lit(0.5)) * (h + h) / mm;
            }
            (p, w)
        })
        .collect()
}

/// `Gν(x)`: exact sums over atoms; Gauss cells flat in time, and time cells
/// of the one-dimensional heat kernel, are integrated in closed form; other
/// cells use `2^levels` midpoints per active axis.
pub fn potential<T: Real>(kernel: &KernelSpec<T>, nu: &DiscreteMeasure<T>, x: &Point<T>) -> Result<T> {
    potential_with(kernel, nu, x, DEFAULT_LEVELS)
}

pub fn potential_with<T: Real>(kernel: &KernelSpec<T>, nu: &DiscreteMeasure<T>, x: &Point<T>, levels: u32) -> Result<T> {
    ensure_dim(x, kernel.point_dim())?;
    let mut total = T::zero();
    for a in &nu.atoms {
        total += a.weight * kernel.eval(x, &a.point)?;
    }
    let base = kernel.space_time_base();
    for c in &nu.cells {
        ensure_dim(&c.center, kernel.point_dim())?;
        if c.weight == T::zero() {
            continue;
        }
        let exact = match &base {
            Some(TransitionSpec::Gauss { n, normalization }) => gauss_cell(*n, *normalization, c, x.coords()),
            _ => None,
        };
        total += match exact {
            Some(v) => v,
            None => {
                let mut s = T::zero();
                for (p, w) in midpoints(c, levels) {
                    s += w * kernel.eval(x, &Point::from(p))?;
                }
                s
            }
        };
    }
    Ok(total)
}

/// `½(erf b - erf a)` without cancellation in the tails.
fn erf_diff<T: Real>(a: T, b: T) -> T {
    let half = T::lit(0.5);
    if a >= T::zero() {
        half * (a.erfc() - b.erfc())
    } else if b <= T::zero() {
        half * ((-b).erfc() - (-a).erfc())
    } else {
        half * (b.erf() - a.erf())
    }
}

fn gauss_cell<T: Real>(n: usize, normalization: Normalization, c: &Cell<T>, x: &[T]) -> Option<T> {
    let cc = c.center.coords();
    let amp = match normalization {
        Normalization::Probabilistic => T::one(),
        Normalization::Unnormalized => (T::lit(4.0) * T::PI()).powf(T::from_usize_lossy(n) / T::lit(2.0)),
    };
    if c.half[n] == T::zero() {
        let t = x[n] - cc[n];
        if t <= T::zero() {
            return Some(T::zero());
        }
        let s = (T::lit(4.0) * t).sqrt();
        let mut v = c.weight * amp;
        for i in 0..n {
            let h = c.half[i];
            if h > T::zero() {
                v *= erf_diff((cc[i] - h - x[i]) / s, (cc[i] + h - x[i]) / s) / (h + h);
            } else {
                let d = x[i] - cc[i];
                v *= (T::PI() * s * s).sqrt().recip() * (-(d * d) / (s * s)).exp();
            }
        }
        return Some(v);
    }
    if n == 1 && c.half[0] == T::zero() {
        // ∫ u^{-1/2} e^{-a/u} du = 2√u e^{-a/u} - 2√(πa) erfc(√(a/u))
        let tau = c.half[1];
        let d = x[0] - cc[0];
        let a = d * d / T::lit(4.0);
        let prim = |u: T| {
            if u <= T::zero() {
                T::zero()
            } else {
                let two = T::lit(2.0);
                two * u.sqrt() * (-a / u).exp() - two * (T::PI() * a).sqrt() * (a / u).sqrt().erfc()
            }
        };
        let hi = x[1] - (cc[1] - tau);
        if hi <= T::zero() {
            return Some(T::zero());
        }
        let lo = (x[1] - (cc[1] + tau)).max(T::zero());
        let dens = (T::lit(4.0) * T::PI()).sqrt().recip() * amp;
        return Some(c.weight / (tau + tau) * dens * (prim(hi) - prim(lo)));
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BallMassReport<T: Real> {
    pub rho: T,
    pub mass_in_ball: T,
    pub potential: T,
    pub rhs: T,
    pub passed: bool,
}

/// `ν(B(x,ρ)) ≤ ρ Gν(x)`, both sides evaluated on the same atomized measure.
pub fn check_ball_mass_bound<T: Real>(
    kernel: &KernelSpec<T>,
    nu: &DiscreteMeasure<T>,
    x: &Point<T>,
    rho: T,
) -> Result<BallMassReport<T>> {
    if !(rho > T::zero()) {
        return arg(format!("ball parameter must be positive, got {rho}"));
    }
    ensure_dim(x, kernel.point_dim())?;
    let mut mass = T::zero();
    let mut pot = T::zero();
    let level = rho.recip();
    for (p, w) in nu.atomize(DEFAULT_LEVELS) {
        let g = kernel.eval(x, &Point::from(p))?;
        pot += w * g;
        if g > level {
            mass += w;
        }
    }
    let rhs = rho * pot;
    let scale = nu.total_mass().max(T::one());
    Ok(BallMassReport {
        rho,
        mass_in_ball: mass,
        potential: pot,
        rhs,
        passed: mass <= rhs + T::lit(1e-9) * scale,
    })
}

/// A certified `sup Gν`, when one is known in closed form.
///
/// Space-time kernels of Markov semigroups: a cell layer at one time with
/// spatial density `f` contributes at most `‖f‖∞` (times `(4π)^{n/2}` for the
/// unnormalized heat kernel). Time segments of the one-dimensional heat kernel
/// with line density `f` over a span `L` contribute at most `2 f D √L`, where
/// `D` is the kernel amplitude. Riesz kernels on a flat `k`-dimensional set
/// with density `f` and total area `V`: by rearrangement the potential is at
/// most `f k ω_k R^{k-(n-β)} / (k-(n-β))` with `ω_k R^k = V`.
pub fn analytic_sup_bound<T: Real>(kernel: &KernelSpec<T>, nu: &DiscreteMeasure<T>) -> Option<T> {
    if !nu.atoms.is_empty() {
        return None;
    }
    if nu.cells.is_empty() {
        return Some(T::zero());
    }
    let density = |c: &Cell<T>| c.weight / c.flat_volume();
    let key = |v: T| v.to_f64().map(f64::to_bits).unwrap_or(0);
    if let Some(base) = kernel.space_time_base() {
        let n = base.dim();
        let amp = match base {
            TransitionSpec::Gauss {
                normalization: Normalization::Unnormalized,
                ..
            } => (T::lit(4.0) * T::PI()).powf(T::from_usize_lossy(n) / T::lit(2.0)),
            _ => T::one(),
        };
        let time_layers = nu
            .cells
            .iter()
            .all(|c| c.half[n] == T::zero() && c.half[..n].iter().all(|h| *h > T::zero()));
        if time_layers {
            let mut layers: BTreeMap<u64, T> = BTreeMap::new();
            for c in &nu.cells {
                let e = layers.entry(key(c.center.coords()[n])).or_insert(T::zero());
                *e = e.max(density(c));
            }
            return Some(amp * layers.values().copied().sum::<T>());
        }
        let segments = n == 1
            && matches!(base, TransitionSpec::Gauss { .. })
            && nu.cells.iter().all(|c| c.half[0] == T::zero() && c.half[1] > T::zero());
        if segments {
            let mut columns: BTreeMap<u64, (T, T, T)> = BTreeMap::new();
            for c in &nu.cells {
                let lo = c.center.coords()[1] - c.half[1];
                let hi = c.center.coords()[1] + c.half[1];
                let e = columns
                    .entry(key(c.center.coords()[0]))
                    .or_insert((T::infinity(), T::neg_infinity(), T::zero()));
                *e = (e.0.min(lo), e.1.max(hi), e.2.max(density(c)));
            }
            let d = (T::lit(4.0) * T::PI()).sqrt().recip() * amp;
            return Some(
                columns
                    .values()
                    .map(|(lo, hi, f)| T::lit(2.0) * *f * d * (*hi - *lo).sqrt())
                    .sum(),
            );
        }
        return None;
    }
    if let KernelSpec::Riesz { n, beta } = kernel {
        let first = &nu.cells[0];
        let active: Vec<bool> = first.half.iter().map(|h| *h > T::zero()).collect();
        let coplanar = nu.cells.iter().all(|c| {
            c.half.iter().zip(&active).all(|(h, a)| (*h > T::zero()) == *a)
                && (0..*n).all(|i| active[i] || c.center.coords()[i] == first.center.coords()[i])
        });
        let k = active.iter().filter(|a| **a).count();
        let gap = T::from_usize_lossy(k) - (T::from_usize_lossy(*n) - *beta);
        if !coplanar || !(gap > T::zero()) {
            return None;
        }
        let area: T = nu.cells.iter().map(Cell::flat_volume).sum();
        let f = nu.cells.iter().map(density).fold(T::zero(), T::max);
        let omega = unit_ball_volume::<T>(k);
        let r = (area / omega).powf(T::from_usize_lossy(k).recip());
        return Some(f * T::from_usize_lossy(k) * omega * r.powf(gap) / gap);
    }
    None
}

/// Evaluation points for `sup Gν`: samples of the set and of a neighborhood
/// of its bounding box; space-time kernels add a ladder of later times.
pub fn default_grid<T: Real>(kernel: &KernelSpec<T>, set: &TestSet<T>, count: usize, seed: u64) -> Result<Vec<Point<T>>> {
    let Some(bb) = set.bounding_box() else {
        return Ok(vec![]);
    };
    let d = set.ambient_dim();
    if d != kernel.point_dim() {
        return Err(Error::DimensionMismatch {
            expected: kernel.point_dim(),
            found: d,
        });
    }
    let pad = T::lit(0.25);
    let lo: Vec<T> = bb.lo.iter().zip(&bb.hi).map(|(a, b)| *a - pad * (*b - *a).max(T::lit(0.1))).collect();
    let hi: Vec<T> = bb.lo.iter().zip(&bb.hi).map(|(a, b)| *b + pad * (*b - *a).max(T::lit(0.1))).collect();
    let mut rng = rng_for(seed, 3);
    let spatial_count = if kernel.is_space_time() { (count / 34).max(1) } else { count };
    let mut base: Vec<Vec<T>> = set
        .sample(spatial_count / 2 + 1, seed)?
        .into_iter()
        .map(Point::into_coords)
        .collect();
    while base.len() < spatial_count {
        base.push(uniform_in(&mut rng, &lo, &hi));
    }
    if !kernel.is_space_time() {
        base.extend(bb.corners());
        return Ok(base.into_iter().map(Point::from).collect());
    }
    let t = d - 1;
    let (s_lo, s_hi) = (bb.lo[t], bb.hi[t]);
    let mut times: Vec<T> = (0..=16).map(|j| s_hi + T::lit(2.0).powi(-j)).collect();
    times.extend((0..=16).map(|j| s_lo + (s_hi - s_lo) * T::from_u32(j).expect("small") / T::lit(16.0) + T::lit(1e-9)));
    let mut out = Vec::with_capacity(base.len() * times.len());
    for p in &base {
        for s in &times {
            let mut q = p.clone();
            q[t] = *s;
            out.push(Point::from(q));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CapacityCertificate<T: Real> {
    pub kernel: String,
    pub set: String,
    pub measure: DiscreteMeasure<T>,
    pub mass: T,
    pub grid_points: usize,
    pub grid_max: T,
    pub margin: T,
    pub analytic_bound: Option<T>,
    pub sup_bound: T,
    pub lower_bound: T,
    pub diagnostic: Option<String>,
}

/// `c(A) ≥ ν(A) / (max_grid Gν + margin)`.
///
/// With `margin = None` the margin is taken from [`analytic_sup_bound`]; when
/// no closed-form bound exists the certificate degrades to zero.
pub fn capacity_lower_bound<T: Real>(
    kernel: &KernelSpec<T>,
    set: &TestSet<T>,
    candidate: &DiscreteMeasure<T>,
    grid: &[Point<T>],
    margin: Option<T>,
) -> Result<CapacityCertificate<T>> {
    candidate.validate()?;
    if set.ambient_dim() != kernel.point_dim() {
        return Err(Error::DimensionMismatch {
            expected: kernel.point_dim(),
            found: set.ambient_dim(),
        });
    }
    if !candidate.supported_in(set, T::lit(1e-12)) {
        return arg("candidate measure is not supported in the set");
    }
    if let Some(m) = margin {
        if !(m >= T::zero()) {
            return arg(format!("margin must be nonnegative, got {m}"));
        }
    }
    let values = grid
        .par_iter()
        .map(|x| potential(kernel, candidate, x))
        .collect::<Result<Vec<T>>>()?;
    let grid_max = values.iter().copied().fold(T::zero(), T::max);
    let mass = candidate.total_mass();
    let analytic = analytic_sup_bound(kernel, candidate);
    let mut diagnostic = None;
    let margin = match margin {
        Some(m) => m,
        None => match analytic {
            Some(a) => {
                if grid_max > a * (T::one() + T::lit(1e-9)) {
                    diagnostic = Some(format!("grid maximum {grid_max} exceeds the closed-form bound {a}"));
                }
                (a - grid_max).max(T::zero())
            }
            None => {
                diagnostic = Some("no closed-form bound on the potential; margin unknown".into());
                T::infinity()
            }
        },
    };
    let sup_bound = grid_max + margin;
    let lower_bound = if !grid_max.is_finite() {
        diagnostic = Some("potential is infinite on the grid".into());
        T::zero()
    } else if sup_bound.is_infinite() {
        T::zero()
    } else {
        mass / sup_bound.max(T::lit(MASS_FLOOR))
    };
    Ok(CapacityCertificate {
        kernel: kernel.label(),
        set: set.label(),
        measure: candidate.clone(),
        mass,
        grid_points: grid.len(),
        grid_max,
        margin,
        analytic_bound: analytic,
        sup_bound,
        lower_bound,
        diagnostic,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CapMeasureReport<T: Real> {
    pub lower_bound: T,
    pub uniform_bound: Option<T>,
    pub status: CheckStatus,
}

/// `c(A) ≤ m_G(A)` on the evidence at hand.
pub fn check_cap_le_measure<T: Real>(cert: &CapacityCertificate<T>, est: &MeasureEstimate<T>) -> CapMeasureReport<T> {
    let status = match est.uniform_bound {
        None => CheckStatus::Inconclusive,
        Some(ub) if cert.lower_bound <= ub * (T::one() + T::lit(1e-9)) => CheckStatus::Pass,
        Some(_) => CheckStatus::Fail,
    };
    CapMeasureReport {
        lower_bound: cert.lower_bound,
        uniform_bound: est.uniform_bound,
        status,
    }
}

#[cfg(test)]
mod tests;
