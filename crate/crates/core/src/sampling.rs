//! Seeded rejection sampling from axis boxes.
//!
//! Work is cut into fixed-size chunks, each driven by its own ChaCha stream,
//! so output depends only on the seed and never on the rayon pool size.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

const CHUNK: usize = 1024;
/// proposals tried before the acceptance-rate guard is consulted
const GUARD_ATTEMPTS: usize = 1 << 20;
const MIN_RATE: f64 = 1e-6;

/// Accepted points together with the proposal count.
#[derive(Clone, Debug)]
pub(crate) struct Draws<T> {
    pub points: Vec<Vec<T>>,
    pub attempts: usize,
}

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn uniform_in<T: Real, R: Rng>(rng: &mut R, lo: &[T], hi: &[T]) -> Vec<T> {
    lo.iter()
        .zip(hi)
        .map(|(a, b)| {
            let u = T::lit(rng.gen::<f64>());
            *a + u * (*b - *a)
        })
        .collect()
}

/// Draws `count` points of `{p ∈ [lo, hi] : accept(p)}`, uniformly.
pub(crate) fn rejection<T, F>(lo: &[T], hi: &[T], count: usize, seed: u64, accept: F) -> Result<Draws<T>>
where
    T: Real,
    F: Fn(&[T]) -> bool + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Result<Draws<T>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let want = CHUNK.min(count - c * CHUNK);
            let mut rng = rng_for(seed, c as u64);
            let mut points = Vec::with_capacity(want);
            let mut attempts = 0usize;
            while points.len() < want {
                let p = uniform_in(&mut rng, lo, hi);
                attempts += 1;
                if accept(&p) {
                    points.push(p);
                }
                if attempts >= GUARD_ATTEMPTS && (points.len() as f64) < MIN_RATE * attempts as f64 {
                    return Err(Error::RngExhausted {
                        accepted: points.len(),
                        attempts,
                    });
                }
            }
            Ok(Draws { points, attempts })
        })
        .collect();
    let mut out = Draws {
        points: Vec::with_capacity(count),
        attempts: 0,
    };
    for part in parts {
        let part = part?;
        out.attempts += part.attempts;
        out.points.extend(part.points);
    }
    Ok(out)
}
