//! Constructive coverings and upper estimates for Hausdorff-type measures
//! `m_{η,F}(A) = lim_{δ→0} inf Σ ρⱼ^η` over covers by `F(xⱼ, ρⱼ)`, `ρⱼ < δ`,
//! plus the covering transform behind comparisons between two families.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::harness::{AxisBox, TestSet};
use crate::kernels::Point;
use crate::sampling::rng_for;
use crate::scalar::Real;
use crate::shapes::ShapeFamily;

/// Growth per δ-halving that counts towards the divergence flag.
pub const DIVERGENCE_GROWTH: f64 = 1.5;
/// Consecutive growing steps needed to flag divergence.
pub const DIVERGENCE_RUN: usize = 4;
/// Relative growth between the two halves of a schedule still read as bounded.
pub const BOUNDED_GROWTH: f64 = 0.1;

/// `{2^{-k} : k = 1..=12}`
pub fn default_schedule<T: Real>() -> Vec<T> {
    dyadic_schedule(12)
}

pub fn dyadic_schedule<T: Real>(k_max: u32) -> Vec<T> {
    (1..=k_max).map(|k| T::lit(2.0).powi(-(k as i32))).collect()
}

/// A rectangular block of identical elements: box centers
/// `origin + i∘pitch`, `0 ≤ i < counts`; element centers sit at
/// `box center - offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct LatticeBlock<T: Real> {
    pub origin: Vec<T>,
    pub pitch: Vec<T>,
    pub counts: Vec<u64>,
    pub offset: Vec<T>,
}

impl<T: Real> LatticeBlock<T> {
    pub fn len(&self) -> u64 {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "layout", rename_all = "snake_case", bound = "")]
pub enum Layout<T: Real> {
    Explicit { elements: Vec<(Point<T>, T)> },
    Lattice { rho: T, blocks: Vec<LatticeBlock<T>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Covering<T: Real> {
    pub family: ShapeFamily<T>,
    pub eta: T,
    pub layout: Layout<T>,
}

impl<T: Real> Covering<T> {
    pub fn explicit(family: ShapeFamily<T>, eta: T, elements: Vec<(Point<T>, T)>) -> Result<Self> {
        if !(eta > T::zero()) {
            return arg(format!("η must be positive, got {eta}"));
        }
        for (c, r) in &elements {
            if !(*r > T::zero() && r.is_finite()) {
                return arg(format!("covering parameters must be positive and finite, got {r}"));
            }
            if c.dim() != family.dim() {
                return Err(Error::DimensionMismatch {
                    expected: family.dim(),
                    found: c.dim(),
                });
            }
        }
        Ok(Self {
            family,
            eta,
            layout: Layout::Explicit { elements },
        })
    }

    pub fn len(&self) -> u64 {
        match &self.layout {
            Layout::Explicit { elements } => elements.len() as u64,
            Layout::Lattice { blocks, .. } => blocks.iter().map(LatticeBlock::len).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest element parameter; the covering is admissible for every `δ` above it.
    pub fn max_rho(&self) -> T {
        match &self.layout {
            Layout::Explicit { elements } => elements.iter().map(|e| e.1).fold(T::zero(), T::max),
            Layout::Lattice { rho, .. } => {
                if self.is_empty() {
                    T::zero()
                } else {
                    *rho
                }
            }
        }
    }

    /// Elements of an explicit covering, or of a lattice with at most `limit` elements.
    pub fn elements(&self, limit: usize) -> Result<Vec<(Point<T>, T)>> {
        match &self.layout {
            Layout::Explicit { elements } => Ok(elements.clone()),
            Layout::Lattice { rho, blocks } => {
                if self.len() > limit as u64 {
                    return arg(format!("lattice has {} elements, more than {limit}", self.len()));
                }
                let mut out = vec![];
                for b in blocks {
                    for flat in 0..b.len() {
                        out.push((Point::from(lattice_center(b, flat)), *rho));
                    }
                }
                Ok(out)
            }
        }
    }
}

fn lattice_center<T: Real>(b: &LatticeBlock<T>, mut flat: u64) -> Vec<T> {
    (0..b.origin.len())
        .map(|i| {
            let idx = flat % b.counts[i];
            flat /= b.counts[i];
            b.origin[i] + T::from_u64(idx).expect("index") * b.pitch[i] - b.offset[i]
        })
        .collect()
}

/// `Σ ρⱼ^η`
pub fn covering_sum<T: Real>(c: &Covering<T>) -> T {
    match &c.layout {
        Layout::Explicit { elements } => elements.iter().map(|(_, r)| r.powf(c.eta)).sum(),
        Layout::Lattice { rho, blocks, .. } => {
            let count: u64 = blocks.iter().map(LatticeBlock::len).sum();
            T::from_u64(count).expect("count") * rho.powf(c.eta)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CoverageCheck {
    pub covered: bool,
    pub probes: usize,
    pub uncovered: usize,
    pub warning: Option<String>,
}

/// Draws `probes` points from the set (plus the corners of its first
/// components) and checks that each lies in some element.
pub fn verify_covering<T: Real>(c: &Covering<T>, set: &TestSet<T>, probes: usize, seed: u64) -> Result<CoverageCheck> {
    if set.ambient_dim() != c.family.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.family.dim(),
            found: set.ambient_dim(),
        });
    }
    if probes == 0 {
        return Ok(CoverageCheck {
            covered: true,
            probes: 0,
            uncovered: 0,
            warning: Some("no probes drawn; coverage is vacuous".into()),
        });
    }
    let mut pts: Vec<Vec<T>> = set.sample(probes, seed)?.into_iter().map(Point::into_coords).collect();
    for comp in set.components().iter().take(64) {
        pts.extend(comp.corners());
    }
    let index = CoverIndex::new(c)?;
    let uncovered = pts
        .par_iter()
        .map(|p| index.covers(p).map(|hit| usize::from(!hit)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<usize>();
    Ok(CoverageCheck {
        covered: uncovered == 0,
        probes: pts.len(),
        uncovered,
        warning: None,
    })
}

/// Point-location helper over a covering.
struct CoverIndex<'a, T: Real> {
    cover: &'a Covering<T>,
    boxes: Vec<Vec<(T, T)>>,
}

impl<'a, T: Real> CoverIndex<'a, T> {
    fn new(cover: &'a Covering<T>) -> Result<Self> {
        let boxes = match &cover.layout {
            Layout::Explicit { elements } => {
                let rhos: Vec<T> = elements.iter().map(|e| e.1).collect();
                cover.family.bounding_boxes(&rhos)?
            }
            Layout::Lattice { rho, .. } => vec![cover.family.bounding_box(*rho)?],
        };
        Ok(Self { cover, boxes })
    }

    fn covers(&self, p: &[T]) -> Result<bool> {
        let fam = &self.cover.family;
        match &self.cover.layout {
            Layout::Explicit { elements } => {
                for ((c, r), bb) in elements.iter().zip(&self.boxes) {
                    let inside = bb
                        .iter()
                        .zip(c.coords().iter().zip(p))
                        .all(|((lo, hi), (x, y))| *y - *x >= *lo && *y - *x <= *hi);
                    if inside && fam.contains_flat(c.coords(), *r, p)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Layout::Lattice { rho, blocks } => {
                let d = p.len();
                for b in blocks {
                    // nearest box center on each axis, then its 3^d neighborhood
                    let mut base = Vec::with_capacity(d);
                    for i in 0..d {
                        let k = if b.counts[i] <= 1 || b.pitch[i] == T::zero() {
                            0i64
                        } else {
                            let raw = ((p[i] - b.origin[i]) / b.pitch[i]).round().to_i64().unwrap_or(0);
                            raw.clamp(0, b.counts[i] as i64 - 1)
                        };
                        base.push(k);
                    }
                    let mut center = vec![T::zero(); d];
                    'cand: for m in 0..3usize.pow(d as u32) {
                        let mut code = m;
                        for i in 0..d {
                            let k = base[i] + (code % 3) as i64 - 1;
                            code /= 3;
                            if k < 0 || k >= b.counts[i] as i64 {
                                continue 'cand;
                            }
                            center[i] = b.origin[i] + T::from_i64(k).expect("index") * b.pitch[i] - b.offset[i];
                        }
                        if fam.contains_flat(&center, *rho, p)? {
                            return Ok(true);
                        }
                    }
                }
                Ok(false)
            }
        }
    }
}

/// `2^{⌈log₂ δ⌉ - 1}`, the dyadic parameter strictly below `δ`.
pub fn dyadic_below<T: Real>(delta: T) -> T {
    T::lit(2.0).powf(delta.log2().ceil() - T::one())
}

/// Grid covering adapted to the family's anisotropy: each component box is
/// tiled by copies of a box inscribed in `F(·, ρ)` with `ρ = dyadic_below(δ)`.
pub fn build_grid_covering<T: Real>(set: &TestSet<T>, family: &ShapeFamily<T>, eta: T, delta: T) -> Result<Covering<T>> {
    if !(delta > T::zero()) {
        return arg(format!("δ must be positive, got {delta}"));
    }
    if !(eta > T::zero()) {
        return arg(format!("η must be positive, got {eta}"));
    }
    if set.ambient_dim() != family.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            found: set.ambient_dim(),
        });
    }
    set.validate()?;
    let rho = dyadic_below(delta);
    let comps = set.components();
    let d = family.dim();
    let mut by_pattern: BTreeMap<Vec<bool>, Vec<&AxisBox<T>>> = BTreeMap::new();
    for c in &comps {
        by_pattern.entry(c.active_axes()).or_default().push(c);
    }
    let mut blocks = vec![];
    for (active, group) in by_pattern {
        let ib = family.inscribed_box(rho, &active)?;
        for comp in group {
            let mut origin = Vec::with_capacity(d);
            let mut pitch = Vec::with_capacity(d);
            let mut counts = Vec::with_capacity(d);
            for i in 0..d {
                let len = comp.hi[i] - comp.lo[i];
                if !active[i] {
                    origin.push(comp.lo[i]);
                    pitch.push(T::zero());
                    counts.push(1);
                    continue;
                }
                let h = ib.half[i];
                if !(h > T::zero()) {
                    return Err(Error::Configuration(format!("{} has no extent along axis {i}", family.label())));
                }
                let p = h + h;
                let mut k = (len / p).ceil().max(T::one());
                if comp.lo[i] + (k - T::one()) * p + p < comp.hi[i] {
                    k = k + T::one();
                }
                let k = k.to_u64().ok_or_else(|| Error::Configuration("grid too fine".into()))?;
                origin.push(comp.lo[i] + h);
                pitch.push(p);
                counts.push(k);
            }
            blocks.push(LatticeBlock {
                origin,
                pitch,
                counts,
                offset: ib.offset.clone(),
            });
        }
    }
    Ok(Covering {
        family: family.clone(),
        eta,
        layout: Layout::Lattice { rho, blocks },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MeasureRow<T: Real> {
    pub delta: T,
    pub rho: T,
    /// best verified sum admissible at this δ
    pub covering_sum: T,
    /// sum of the covering built at this δ
    pub raw_sum: T,
    pub count: u64,
    /// multiplicative slack attached to this row (1 unless rescaled)
    pub correction: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MeasureEstimate<T: Real> {
    pub set: String,
    pub family: String,
    pub eta: T,
    /// multiplier applied to every sum (e.g. `n^{n/2}` for `m_P`)
    pub scale: T,
    pub rows: Vec<MeasureRow<T>>,
    pub uniform_bound: Option<T>,
    pub divergent: bool,
    pub vanishing: bool,
}

impl<T: Real> MeasureEstimate<T> {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta,covering_sum,count,raw_sum,correction\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.delta, r.covering_sum, r.count, r.raw_sum, r.correction
            ));
        }
        out
    }

    /// Growth of the raw sums relative to the first row, per unit of `δ₀/δ`.
    pub fn relative_growth(&self) -> Vec<T> {
        let Some(first) = self.rows.first() else {
            return vec![];
        };
        self.rows
            .iter()
            .map(|r| (r.raw_sum / first.raw_sum) / (first.delta / r.delta))
            .collect()
    }
}

/// One verified grid covering per `δ` of the schedule.
pub fn estimate_measure<T: Real>(
    set: &TestSet<T>,
    family: &ShapeFamily<T>,
    eta: T,
    schedule: &[T],
    probes: usize,
    seed: u64,
) -> Result<MeasureEstimate<T>> {
    if schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return arg("δ schedule must be strictly decreasing");
    }
    if schedule.iter().any(|d| !(*d > T::zero())) {
        return arg("δ schedule must be positive");
    }
    let empty = set.components().is_empty();
    let rows: Vec<(T, T, T, u64)> = schedule
        .par_iter()
        .enumerate()
        .map(|(i, &delta)| {
            if empty {
                return Ok((delta, dyadic_below(delta), T::zero(), 0));
            }
            let cover = build_grid_covering(set, family, eta, delta)?;
            let check = verify_covering(&cover, set, probes, seed.wrapping_add(i as u64))?;
            if !check.covered {
                return Err(Error::Configuration(format!(
                    "grid covering of {} by {} at δ={delta} missed {} of {} probes",
                    set.label(),
                    family.label(),
                    check.uncovered,
                    check.probes
                )));
            }
            Ok((delta, cover.max_rho(), covering_sum(&cover), cover.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = T::infinity();
    let mut out: Vec<MeasureRow<T>> = Vec::with_capacity(rows.len());
    for &(delta, rho, raw, count) in rows.iter().rev() {
        best = best.min(raw);
        out.push(MeasureRow {
            delta,
            rho,
            covering_sum: best,
            raw_sum: raw,
            count,
            correction: T::one(),
        });
    }
    out.reverse();
    let mut est = MeasureEstimate {
        set: set.label(),
        family: family.label(),
        eta,
        scale: T::one(),
        rows: out,
        uniform_bound: None,
        divergent: false,
        vanishing: false,
    };
    summarize(&mut est);
    Ok(est)
}

fn summarize<T: Real>(est: &mut MeasureEstimate<T>) {
    let rows = &est.rows;
    let mut run = 0usize;
    let mut divergent = false;
    for w in rows.windows(2) {
        let halvings = (w[0].delta / w[1].delta).log2();
        let growth = if w[0].covering_sum > T::zero() {
            (w[1].covering_sum / w[0].covering_sum).powf(halvings.recip())
        } else {
            T::zero()
        };
        if growth >= T::lit(DIVERGENCE_GROWTH) {
            run += 1;
            divergent |= run >= DIVERGENCE_RUN;
        } else {
            run = 0;
        }
    }
    est.divergent = divergent;
    est.uniform_bound = None;
    if rows.len() >= 2 && !divergent {
        let half = rows.len() / 2;
        let head = rows[..half].iter().map(|r| r.covering_sum).fold(T::zero(), T::max);
        let tail = rows[half..].iter().map(|r| r.covering_sum).fold(T::zero(), T::max);
        if tail <= head * T::lit(1.0 + BOUNDED_GROWTH) || tail == T::zero() {
            let worst = rows
                .iter()
                .map(|r| r.covering_sum * r.correction)
                .fold(T::zero(), T::max);
            est.uniform_bound = Some(worst);
        }
    }
    let tail = &rows[rows.len().saturating_sub(DIVERGENCE_RUN)..];
    let first = rows.first().map(|r| r.raw_sum).unwrap_or(T::zero());
    est.vanishing = est.uniform_bound.is_some()
        && rows.len() > DIVERGENCE_RUN
        && (first == T::zero()
            || (tail.windows(2).all(|w| w[1].raw_sum < w[0].raw_sum)
                && tail.last().expect("rows").raw_sum <= T::lit(1e-3) * first));
}

/// How the center of a transformed element is found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "witness", rename_all = "snake_case", bound = "")]
pub enum Witness<T: Real> {
    Identity,
    /// `z = x′ + (0, coeff · ρ^power)`
    TimeShift { coeff: T, power: T },
}

impl<T: Real> Witness<T> {
    pub fn shift(&self, dim: usize, rho: T) -> Vec<T> {
        let mut s = vec![T::zero(); dim];
        if let Witness::TimeShift { coeff, power } = self {
            s[dim - 1] = *coeff * rho.powf(*power);
        }
        s
    }
}

/// `F(x,ρ) ⊂ F̃(z, κρ^{η/η̃})`, giving `m_{η̃,F̃} ≤ κ^{η̃} m_{η,F}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ComparisonParams<T: Real> {
    pub eta: T,
    pub eta_tilde: T,
    pub kappa: T,
    pub witness: Witness<T>,
    pub source: ShapeFamily<T>,
    pub target: ShapeFamily<T>,
}

impl<T: Real> ComparisonParams<T> {
    /// heat balls into parabolic boxes, `κ = 2√n`, `η = 1`, `η̃ = n`
    pub fn heat_ball_to_box(n: usize) -> Self {
        let nn = T::from_usize_lossy(n);
        Self {
            eta: T::one(),
            eta_tilde: nn,
            kappa: T::lit(2.0) * nn.sqrt(),
            witness: Witness::Identity,
            source: ShapeFamily::HeatBall { n },
            target: ShapeFamily::ParabolicBox { n },
        }
    }

    /// parabolic boxes into heat balls shifted by `(0, ρ²)`, `κ = 2^{n/2}`
    pub fn box_to_heat_ball(n: usize) -> Self {
        Self {
            eta: T::from_usize_lossy(n),
            eta_tilde: T::one(),
            kappa: T::lit(2.0).sqrt().powi(n as i32),
            witness: Witness::TimeShift {
                coeff: T::one(),
                power: T::lit(2.0),
            },
            source: ShapeFamily::ParabolicBox { n },
            target: ShapeFamily::HeatBall { n },
        }
    }

    pub fn identity(family: ShapeFamily<T>, eta: T) -> Self {
        Self {
            eta,
            eta_tilde: eta,
            kappa: T::one(),
            witness: Witness::Identity,
            source: family.clone(),
            target: family,
        }
    }

    /// `κ^{η̃}`
    pub fn inflation(&self) -> T {
        self.kappa.powf(self.eta_tilde)
    }

    pub fn target_rho(&self, rho: T) -> T {
        self.kappa * rho.powf(self.eta / self.eta_tilde)
    }
}

/// Maps every element `F(x,ρ)` to `F̃(z, κρ^{η/η̃})`. The inclusion is probed
/// with `probes` interior samples on up to `max_checked` elements.
pub fn transform_covering<T: Real>(
    c: &Covering<T>,
    p: &ComparisonParams<T>,
    probes: usize,
    max_checked: usize,
    seed: u64,
) -> Result<Covering<T>> {
    if c.family != p.source {
        return Err(Error::ComparisonParams(format!(
            "covering family {} does not match source {}",
            c.family.label(),
            p.source.label()
        )));
    }
    if c.eta != p.eta {
        return Err(Error::ComparisonParams(format!("covering η {} differs from {}", c.eta, p.eta)));
    }
    let d = c.family.dim();
    let layout = match &c.layout {
        Layout::Explicit { elements } => Layout::Explicit {
            elements: elements
                .iter()
                .map(|(x, r)| (x.translated(&p.witness.shift(d, *r)), p.target_rho(*r)))
                .collect(),
        },
        Layout::Lattice { rho, blocks } => {
            let shift = p.witness.shift(d, *rho);
            Layout::Lattice {
                rho: p.target_rho(*rho),
                blocks: blocks
                    .iter()
                    .map(|b| LatticeBlock {
                        offset: b.offset.iter().zip(&shift).map(|(o, s)| *o - *s).collect(),
                        ..b.clone()
                    })
                    .collect(),
            }
        }
    };
    let out = Covering {
        family: p.target.clone(),
        eta: p.eta_tilde,
        layout,
    };
    let source = checked_elements(c, max_checked);
    let target = checked_elements(&out, max_checked);
    let failures: Vec<String> = source
        .par_iter()
        .zip(target.par_iter())
        .enumerate()
        .map(|(j, ((x, r), (z, rt)))| -> Result<Option<String>> {
            let pts = c.family.sample(x, *r, probes, seed.wrapping_add(j as u64))?;
            for y in &pts {
                if !p.target.contains(z, *rt, y)? {
                    return Ok(Some(format!("element {j}: {y:?} escapes the target")));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    if let Some(first) = failures.first() {
        return Err(Error::ComparisonParams(format!("{} witness violations; {first}", failures.len())));
    }
    Ok(out)
}

/// First and last elements, capped at `max` in total.
fn checked_elements<T: Real>(c: &Covering<T>, max: usize) -> Vec<(Point<T>, T)> {
    match &c.layout {
        Layout::Explicit { elements } => elements.iter().take(max).cloned().collect(),
        Layout::Lattice { rho, blocks } => {
            let mut out = vec![];
            for b in blocks {
                let len = b.len();
                let take = (max.saturating_sub(out.len()) as u64).min(len);
                let step = (len / take.max(1)).max(1);
                for j in 0..take {
                    out.push((Point::from(lattice_center(b, (j * step).min(len - 1))), *rho));
                }
            }
            out
        }
    }
}

/// `n^{n/2}`
pub fn mnp_scale<T: Real>(n: usize) -> T {
    let nn = T::from_usize_lossy(n);
    nn.powf(nn / T::lit(2.0))
}

/// `m_P = n^{n/2} m_{n,P}`, row by row, with the diameter slack `(1+δ)ⁿ`
/// recorded as each row's correction.
pub fn mp_from_mnp<T: Real>(est: &MeasureEstimate<T>, n: usize) -> Result<MeasureEstimate<T>> {
    let nn = T::from_usize_lossy(n);
    if est.eta != nn {
        return arg(format!("m_P needs an estimate with η = n = {n}, got η = {}", est.eta));
    }
    let s = mnp_scale::<T>(n);
    let mut out = est.clone();
    out.scale = est.scale * s;
    out.family = format!("m_P[{}]", est.family);
    for r in &mut out.rows {
        r.covering_sum *= s;
        r.raw_sum *= s;
        r.correction = (T::one() + r.delta).powi(n as i32);
    }
    summarize(&mut out);
    Ok(out)
}

/// Constants relating `m_G` (heat balls) and `m_P`, both tabulated directly
/// and composed from the covering transforms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct HeatMeasureFactors<T: Real> {
    pub n: usize,
    /// `(2n)^{-n}`
    pub lower: T,
    /// `(2/n)^{n/2}`
    pub upper: T,
    pub lower_composed: T,
    pub upper_composed: T,
    /// `2ⁿ n^{n/2}`
    pub heat_to_box: T,
    /// `2^{n/2}`
    pub box_to_heat: T,
    /// `n^{n/2}`
    pub mp_scale: T,
}

pub fn heat_measure_factors<T: Real>(n: usize) -> HeatMeasureFactors<T> {
    let nn = T::from_usize_lossy(n);
    let two = T::lit(2.0);
    let hb = ComparisonParams::<T>::heat_ball_to_box(n).inflation();
    let bh = ComparisonParams::<T>::box_to_heat_ball(n).inflation();
    let s = mnp_scale::<T>(n);
    HeatMeasureFactors {
        n,
        lower: (two * nn).powi(-(n as i32)),
        upper: (two / nn).powf(nn / two),
        lower_composed: (hb * s).recip(),
        upper_composed: bh / s,
        heat_to_box: hb,
        box_to_heat: bh,
        mp_scale: s,
    }
}

/// Seeded random explicit covering with `count` elements in `[-1,1]^d`,
/// parameters log-uniform in `[rho_min, rho_max]`.
pub fn random_covering<T: Real>(
    family: &ShapeFamily<T>,
    eta: T,
    count: usize,
    rho_min: T,
    rho_max: T,
    seed: u64,
) -> Result<Covering<T>> {
    use rand::Rng;
    let d = family.dim();
    let mut rng = rng_for(seed, 1);
    let (a, b) = (rho_min.ln().f64(), rho_max.ln().f64());
    let elements = (0..count)
        .map(|_| {
            let c: Vec<T> = (0..d).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
            (Point::from(c), T::lit(rng.gen_range(a..=b).exp()))
        })
        .collect();
    Covering::explicit(family.clone(), eta, elements)
}
