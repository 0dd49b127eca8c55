//! Catalog of test sets with exact descriptions, samplers and bounding boxes.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::kernels::Point;
use crate::sampling::{rng_for, uniform_in};
use crate::scalar::Real;

/// Cap on the number of boxes a finite-depth Cantor dust may expand into.
const MAX_COMPONENTS: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "")]
pub enum SetDescriptor<T: Real> {
    Empty { dim: usize },
    Singleton { point: Vec<T> },
    /// `[0,1]^k × {0}^{n-k}` in ℝⁿ
    Segment { k: usize, n: usize },
    /// `[0,1]ⁿ × {0}` in ℝ^{n+1}, time last
    Slice { n: usize },
    /// `{0} × [0,1]` in ℝ^{1+1}
    VerticalSegment,
    /// Level-`depth` product Cantor dust in `[0,1]ⁿ`: each interval keeps its
    /// two end pieces of relative length `ratio`. With `time_slice` the dust
    /// sits in `ℝⁿ × {0}`.
    CantorDust {
        ratio: T,
        depth: u32,
        n: usize,
        #[serde(default)]
        time_slice: bool,
    },
    /// Closed axis box `[lo, hi]`, possibly flat on some axes.
    Window { lo: Vec<T>, hi: Vec<T> },
}

/// Closed axis box; axes with `lo == hi` are flat.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AxisBox<T: Real> {
    pub lo: Vec<T>,
    pub hi: Vec<T>,
}

impl<T: Real> AxisBox<T> {
    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn active_axes(&self) -> Vec<bool> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b > a).collect()
    }

    /// Lebesgue measure over the active axes.
    pub fn flat_volume(&self) -> T {
        self.lo
            .iter()
            .zip(&self.hi)
            .filter(|(a, b)| b > a)
            .map(|(a, b)| *b - *a)
            .fold(T::one(), |acc, w| acc * w)
    }

    pub fn contains(&self, p: &[T], tol: T) -> bool {
        p.len() == self.dim() && p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| *x >= *a - tol && *x <= *b + tol)
    }

    pub fn corners(&self) -> Vec<Vec<T>> {
        let d = self.dim();
        let active: Vec<usize> = (0..d).filter(|i| self.hi[*i] > self.lo[*i]).collect();
        (0..1usize << active.len())
            .map(|mask| {
                let mut v = self.lo.clone();
                for (bit, &i) in active.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        v[i] = self.hi[i];
                    }
                }
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TestSet<T: Real> {
    pub descriptor: SetDescriptor<T>,
}

impl<T: Real> From<SetDescriptor<T>> for TestSet<T> {
    fn from(descriptor: SetDescriptor<T>) -> Self {
        Self { descriptor }
    }
}

impl<T: Real> TestSet<T> {
    pub fn new(descriptor: SetDescriptor<T>) -> Result<Self> {
        let s = Self { descriptor };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.descriptor {
            SetDescriptor::Segment { k, n } if k > n || *n == 0 => arg(format!("segment needs k ≤ n (k={k}, n={n})")),
            SetDescriptor::Slice { n } if *n == 0 => arg("slice needs n ≥ 1"),
            SetDescriptor::CantorDust { ratio, n, depth, .. } => {
                if !(*ratio > T::zero() && *ratio < T::lit(0.5)) || *n == 0 {
                    return arg(format!("Cantor dust needs 0 < ratio < 1/2 and n ≥ 1 (ratio={ratio})"));
                }
                let count = 1u128 << (*n as u128 * *depth as u128).min(127) as u32;
                if count > MAX_COMPONENTS as u128 {
                    return arg(format!("Cantor dust depth {depth} in dimension {n} is too fine"));
                }
                Ok(())
            }
            SetDescriptor::Window { lo, hi } => {
                if lo.len() != hi.len() || lo.is_empty() {
                    return Err(Error::DimensionMismatch {
                        expected: lo.len(),
                        found: hi.len(),
                    });
                }
                if lo.iter().chain(hi).any(|x| !x.is_finite()) {
                    return Err(Error::Unbounded("window corners must be finite".into()));
                }
                if lo.iter().zip(hi).any(|(a, b)| a > b) {
                    return arg("window needs lo ≤ hi on every axis");
                }
                Ok(())
            }
            SetDescriptor::Singleton { point } if point.is_empty() || point.iter().any(|x| !x.is_finite()) => {
                arg("singleton needs a finite point")
            }
            _ => Ok(()),
        }
    }

    pub fn slice(n: usize) -> Self {
        SetDescriptor::Slice { n }.into()
    }

    pub fn vertical_segment() -> Self {
        SetDescriptor::VerticalSegment.into()
    }

    pub fn singleton(point: Vec<T>) -> Self {
        SetDescriptor::Singleton { point }.into()
    }

    pub fn segment(k: usize, n: usize) -> Self {
        SetDescriptor::Segment { k, n }.into()
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.descriptor {
            SetDescriptor::Empty { dim } => *dim,
            SetDescriptor::Singleton { point } => point.len(),
            SetDescriptor::Segment { n, .. } => *n,
            SetDescriptor::Slice { n } => n + 1,
            SetDescriptor::VerticalSegment => 2,
            SetDescriptor::CantorDust { n, time_slice, .. } => n + usize::from(*time_slice),
            SetDescriptor::Window { lo, .. } => lo.len(),
        }
    }

    /// Subset of a time slice `{t = 0}` of a space-time.
    pub fn lies_in_time_slice(&self) -> bool {
        matches!(
            self.descriptor,
            SetDescriptor::Slice { .. } | SetDescriptor::CantorDust { time_slice: true, .. }
        )
    }

    pub fn label(&self) -> String {
        match &self.descriptor {
            SetDescriptor::Empty { dim } => format!("empty(dim={dim})"),
            SetDescriptor::Singleton { point } => format!("singleton({point:?})"),
            SetDescriptor::Segment { k, n } => format!("segment(k={k}, n={n})"),
            SetDescriptor::Slice { n } => format!("slice([0,1]^{n} x {{0}})"),
            SetDescriptor::VerticalSegment => "vertical-segment({0} x [0,1])".into(),
            SetDescriptor::CantorDust {
                ratio,
                depth,
                n,
                time_slice,
            } => format!(
                "cantor-dust(ratio={ratio}, depth={depth}, n={n}{})",
                if *time_slice { ", time-slice" } else { "" }
            ),
            SetDescriptor::Window { lo, hi } => format!("window({lo:?}, {hi:?})"),
        }
    }

    /// The set as a finite union of closed axis boxes.
    pub fn components(&self) -> Vec<AxisBox<T>> {
        let zero = T::zero();
        let one = T::one();
        match &self.descriptor {
            SetDescriptor::Empty { .. } => vec![],
            SetDescriptor::Singleton { point } => vec![AxisBox {
                lo: point.clone(),
                hi: point.clone(),
            }],
            SetDescriptor::Segment { k, n } => {
                let hi = (0..*n).map(|i| if i < *k { one } else { zero }).collect();
                vec![AxisBox { lo: vec![zero; *n], hi }]
            }
            SetDescriptor::Slice { n } => {
                let mut hi = vec![one; *n];
                hi.push(zero);
                vec![AxisBox { lo: vec![zero; n + 1], hi }]
            }
            SetDescriptor::VerticalSegment => vec![AxisBox {
                lo: vec![zero, zero],
                hi: vec![zero, one],
            }],
            SetDescriptor::CantorDust {
                ratio,
                depth,
                n,
                time_slice,
            } => {
                let mut intervals = vec![(zero, one)];
                for _ in 0..*depth {
                    intervals = intervals
                        .into_iter()
                        .flat_map(|(a, b)| {
                            let w = (b - a) * *ratio;
                            [(a, a + w), (b - w, b)]
                        })
                        .collect();
                }
                let m = intervals.len();
                let total = m.pow(*n as u32);
                (0..total)
                    .map(|mut idx| {
                        let mut lo = Vec::with_capacity(n + 1);
                        let mut hi = Vec::with_capacity(n + 1);
                        for _ in 0..*n {
                            let (a, b) = intervals[idx % m];
                            idx /= m;
                            lo.push(a);
                            hi.push(b);
                        }
                        if *time_slice {
                            lo.push(zero);
                            hi.push(zero);
                        }
                        AxisBox { lo, hi }
                    })
                    .collect()
            }
            SetDescriptor::Window { lo, hi } => vec![AxisBox {
                lo: lo.clone(),
                hi: hi.clone(),
            }],
        }
    }

    pub fn bounding_box(&self) -> Option<AxisBox<T>> {
        let comps = self.components();
        let first = comps.first()?;
        let mut lo = first.lo.clone();
        let mut hi = first.hi.clone();
        for c in &comps[1..] {
            for i in 0..lo.len() {
                lo[i] = lo[i].min(c.lo[i]);
                hi[i] = hi[i].max(c.hi[i]);
            }
        }
        Some(AxisBox { lo, hi })
    }

    pub fn contains(&self, p: &Point<T>, tol: T) -> bool {
        self.components().iter().any(|c| c.contains(p.coords(), tol))
    }

    /// Points drawn from the natural measure of the set: components are chosen
    /// with probability proportional to their flat volume.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<Point<T>>> {
        let comps = self.components();
        if comps.is_empty() {
            if count == 0 {
                return Ok(vec![]);
            }
            return Err(Error::Configuration("cannot sample the empty set".into()));
        }
        let weights: Vec<f64> = comps.iter().map(|c| c.flat_volume().f64()).collect();
        let total: f64 = weights.iter().sum();
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for w in &weights {
            acc += w / total;
            cumulative.push(acc);
        }
        let mut rng = rng_for(seed, 0);
        Ok((0..count)
            .map(|_| {
                let u: f64 = rng.gen();
                let i = cumulative.partition_point(|c| *c < u).min(comps.len() - 1);
                Point::from(uniform_in(&mut rng, &comps[i].lo, &comps[i].hi))
            })
            .collect())
    }
}
