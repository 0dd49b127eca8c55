use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point of ℝⁿ. Space-time points are stored flat with time as the last
/// coordinate; [`SpaceTimePoint`] is the structured view.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", transparent)]
pub struct Point<T: Real>(Vec<T>);

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Argument("point coordinates must be finite".into()));
        }
        Ok(Self(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![T::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [T] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn distance(&self, other: &Self) -> Result<T> {
        ensure_dim(other, self.dim())?;
        Ok(euclidean(&self.0, &other.0))
    }

    pub fn translated(&self, offset: &[T]) -> Self {
        Self(self.0.iter().zip(offset).map(|(a, b)| *a + *b).collect())
    }
}

impl<T: Real> From<Vec<T>> for Point<T> {
    fn from(coords: Vec<T>) -> Self {
        Self(coords)
    }
}

pub(crate) fn ensure_dim<T: Real>(p: &Point<T>, expected: usize) -> Result<()> {
    if p.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: p.dim(),
        });
    }
    Ok(())
}

pub(crate) fn euclidean<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y) * (*x - *y))
        .sum::<T>()
        .sqrt()
}

/// `x′ = (x, r)` in `X × ℝ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SpaceTimePoint<T: Real> {
    pub space: Point<T>,
    pub time: T,
}

impl<T: Real> SpaceTimePoint<T> {
    pub fn new(space: Point<T>, time: T) -> Result<Self> {
        if !time.is_finite() {
            return Err(Error::Argument("time must be finite".into()));
        }
        Ok(Self { space, time })
    }

    pub fn from_flat(p: &Point<T>) -> Result<Self> {
        let Some((time, space)) = p.coords().split_last() else {
            return Err(Error::Argument("space-time point needs at least the time coordinate".into()));
        };
        Ok(Self {
            space: Point(space.to_vec()),
            time: *time,
        })
    }

    pub fn to_flat(&self) -> Point<T> {
        let mut c = self.space.0.clone();
        c.push(self.time);
        Point(c)
    }

    pub fn spatial_dim(&self) -> usize {
        self.space.dim()
    }
}
