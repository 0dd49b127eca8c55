use semipolar::harness::TestSet;
use semipolar::kernels::{KernelSpec, Point, ProfilePair, TransitionSpec};
use semipolar::SetDescriptor;

use crate::args::{KernelName, Options};

pub fn floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}")))
        .collect()
}

pub fn point(s: &str) -> Result<Point<f64>, String> {
    Ok(Point::from(floats(s)?))
}

pub fn kernel(o: &Options) -> Result<KernelSpec<f64>, String> {
    let name = o.kernel.ok_or("--kernel is required")?;
    let n = o.n.ok_or("--n is required")?;
    let k = match name {
        KernelName::Riesz => KernelSpec::Riesz {
            n,
            beta: o.beta.unwrap_or(2.0),
        },
        KernelName::Heat => KernelSpec::SpaceTime {
            base: TransitionSpec::gauss(n),
        },
        KernelName::GaussWeierstrass => KernelSpec::GaussWeierstrass { n },
        KernelName::Cauchy => KernelSpec::Cauchy { n },
        KernelName::GreenGauss => KernelSpec::BoundedHeat {
            n,
            profile: ProfilePair::gaussian(n, true),
            transition: Some(TransitionSpec::gauss(n)),
        },
        KernelName::GreenCauchy => KernelSpec::BoundedHeat {
            n,
            profile: ProfilePair::cauchy_exact(n),
            transition: Some(TransitionSpec::cauchy(n)),
        },
    };
    k.validate().map_err(|e| e.to_string())?;
    Ok(k)
}

/// Set descriptors are read relative to the kernel: `slice` uses the spatial
/// dimension, Cantor dust sits in a time slice for space-time kernels.
pub fn set(o: &Options, k: &KernelSpec<f64>) -> Result<TestSet<f64>, String> {
    let spec = o.set.as_deref().ok_or("--set is required")?.trim();
    let d = k.point_dim();
    let space_time = k.is_space_time();
    let spatial = if space_time { d - 1 } else { d };
    let (head, tail) = spec.split_once(':').unwrap_or((spec, ""));
    let descriptor = if spec.starts_with('{') {
        serde_json::from_str::<SetDescriptor<f64>>(spec).map_err(|e| format!("bad set descriptor: {e}"))?
    } else {
        match head {
            "empty" => SetDescriptor::Empty { dim: d },
            "slice" => SetDescriptor::Slice { n: spatial },
            "vertical-segment" => SetDescriptor::VerticalSegment,
            "singleton" => SetDescriptor::Singleton { point: floats(tail)? },
            "segment" => SetDescriptor::Segment {
                k: tail.parse().map_err(|e| format!("bad segment dimension '{tail}': {e}"))?,
                n: d,
            },
            "cantor" => {
                let v = floats(tail)?;
                if v.len() != 2 || v[1] < 0.0 || v[1].fract() != 0.0 {
                    return Err("cantor expects RATIO,DEPTH".into());
                }
                SetDescriptor::CantorDust {
                    ratio: v[0],
                    depth: v[1] as u32,
                    n: spatial,
                    time_slice: space_time,
                }
            }
            "window" => {
                let (lo, hi) = tail.split_once('/').ok_or("window expects LO/HI")?;
                SetDescriptor::Window {
                    lo: floats(lo)?,
                    hi: floats(hi)?,
                }
            }
            _ => return Err(format!("unknown set '{spec}'")),
        }
    };
    TestSet::new(descriptor).map_err(|e| e.to_string())
}
