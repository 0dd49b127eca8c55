use super::*;
use crate::harness::SetDescriptor;
use crate::hausdorff::{default_schedule, estimate_measure};
use crate::shapes::ShapeFamily;

fn riesz(n: usize, beta: f64) -> KernelSpec<f64> {
    KernelSpec::Riesz { n, beta }
}

fn heat(n: usize) -> KernelSpec<f64> {
    KernelSpec::SpaceTime {
        base: TransitionSpec::gauss(n),
    }
}

fn p(v: &[f64]) -> Point<f64> {
    Point::from(v.to_vec())
}

/// Composite Simpson on `[a, b]` with `m` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut s = f(a) + f(b);
    for i in 1..m {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn atom_potential() {
    let nu = DiscreteMeasure::atom(p(&[0.0, 0.0, 0.0]), 1.0);
    let v = potential(&riesz(3, 2.0), &nu, &p(&[2.0, 0.0, 0.0])).unwrap();
    assert!((v - 0.5).abs() < 1e-15);
    let v = potential(&riesz(3, 2.0), &nu, &p(&[0.0, 0.0, 0.0])).unwrap();
    assert!(v.is_infinite());
}

fn sphere_atoms(m: usize) -> DiscreteMeasure<f64> {
    let (dt, dp) = (std::f64::consts::PI / m as f64, std::f64::consts::TAU / (2 * m) as f64);
    let mut atoms = vec![];
    for i in 0..m {
        let th = (i as f64 + 0.5) * dt;
        for j in 0..2 * m {
            let ph = (j as f64 + 0.5) * dp;
            atoms.push(Atom {
                point: p(&[th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]),
                weight: th.sin() * dt * dp / (4.0 * std::f64::consts::PI),
            });
        }
    }
    DiscreteMeasure::new(atoms, vec![]).unwrap()
}

#[test]
fn newtonian_potential_of_the_sphere() {
    let nu = sphere_atoms(120);
    assert!((nu.total_mass() - 1.0).abs() < 1e-4);
    let k = riesz(3, 2.0);
    for x in [[2.0f64, 0.0, 0.0], [0.0, 0.0, -2.0], [1.2, 1.2, 0.4]] {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let v = potential(&k, &nu, &p(&x)).unwrap();
        assert!((v - 1.0 / r).abs() < 1e-3, "{v} vs {}", 1.0 / r);
    }
    let v = potential(&k, &nu, &p(&[0.3, 0.1, 0.0])).unwrap();
    assert!((v - 1.0).abs() < 1e-3, "inside {v}");
}

#[test]
fn gauss_layer_matches_cubature() {
    let cell = Cell {
        center: p(&[0.2, -0.1, 0.0]),
        half: vec![0.3, 0.15, 0.0],
        weight: 0.7,
    };
    let nu = DiscreteMeasure::new(vec![], vec![cell]).unwrap();
    let x = [0.5, 0.1, 0.05];
    let t = x[2];
    let g = |y0: f64, y1: f64| {
        let d2 = (x[0] - y0).powi(2) + (x[1] - y1).powi(2);
        (-d2 / (4.0 * t)).exp() / (4.0 * std::f64::consts::PI * t)
    };
    let inner = |y0: f64| simpson(|y1| g(y0, y1), -0.25, 0.05, 400);
    let oracle = 0.7 / (0.6 * 0.3) * simpson(inner, -0.1, 0.5, 400);
    let v = potential(&heat(2), &nu, &p(&x)).unwrap();
    assert!((v - oracle).abs() < 1e-9 * oracle.max(1.0), "{v} vs {oracle}");
    let gw = KernelSpec::GaussWeierstrass { n: 2 };
    let v = potential(&gw, &nu, &p(&x)).unwrap();
    assert!((v - 4.0 * std::f64::consts::PI * oracle).abs() < 1e-8);
    assert_eq!(potential(&heat(2), &nu, &p(&[0.5, 0.1, 0.0])).unwrap(), 0.0);
}

#[test]
fn time_segment_matches_substituted_quadrature() {
    let cell = Cell {
        center: p(&[0.0, 0.5]),
        half: vec![0.0, 0.5],
        weight: 1.0,
    };
    let nu = DiscreteMeasure::new(vec![], vec![cell]).unwrap();
    for (x, r) in [(0.0, 1.0), (0.3, 0.6), (-0.2, 2.5), (1.5, 0.9)] {
        // s = r - w², ds = 2w dw, removes the endpoint singularity
        let a = x * x / 4.0;
        let lo = (r - 1.0f64).max(0.0).sqrt();
        let hi = r.sqrt();
        let oracle = simpson(
            |w: f64| {
                let e = if w == 0.0 { (a == 0.0) as u8 as f64 } else { (-a / (w * w)).exp() };
                2.0 * e / (4.0 * std::f64::consts::PI).sqrt()
            },
            lo,
            hi,
            20000,
        );
        let v = potential(&heat(1), &nu, &p(&[x, r])).unwrap();
        assert!((v - oracle).abs() < 1e-9, "({x},{r}): {v} vs {oracle}");
    }
}

#[test]
fn midpoint_rule_for_riesz_square() {
    let set = TestSet::<f64>::segment(2, 3);
    let nu = DiscreteMeasure::uniform_on(&set, 16).unwrap();
    assert!((nu.total_mass() - 1.0).abs() < 1e-12);
    // ∫∫_{[-½,½]²} |y|^{-1} dy = 4 ln(1+√2)
    let exact = 4.0 * (1.0 + 2f64.sqrt()).ln();
    let v = potential_with(&riesz(3, 2.0), &nu, &p(&[0.5, 0.5, 0.0]), 4).unwrap();
    assert!((v - exact).abs() < 2e-2, "{v} vs {exact}");
    let bound = analytic_sup_bound(&riesz(3, 2.0), &nu).unwrap();
    assert!(bound >= exact && bound < 1.01 * exact, "{bound}");
}

#[test]
fn slice_certificate_is_one() {
    let set = TestSet::<f64>::slice(1);
    let nu = DiscreteMeasure::uniform_on(&set, 64).unwrap();
    let k = heat(1);
    let grid = default_grid(&k, &set, 4000, 1).unwrap();
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, None).unwrap();
    assert!(cert.diagnostic.is_none(), "{:?}", cert.diagnostic);
    assert!(cert.grid_max <= 1.0 + 1e-12 && cert.grid_max > 0.99);
    assert!((cert.lower_bound - 1.0).abs() < 1e-12, "{}", cert.lower_bound);
    let set = TestSet::slice(2);
    let nu = DiscreteMeasure::uniform_on(&set, 16).unwrap();
    let k = heat(2);
    let grid = default_grid(&k, &set, 2000, 1).unwrap();
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, None).unwrap();
    assert!((cert.lower_bound - 1.0).abs() < 1e-12);
}

#[test]
fn vertical_segment_certificate_is_half() {
    let set = TestSet::<f64>::vertical_segment();
    let nu = DiscreteMeasure::uniform_on(&set, 64).unwrap();
    let k = KernelSpec::GaussWeierstrass { n: 1 };
    let grid = default_grid(&k, &set, 3000, 2).unwrap();
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, None).unwrap();
    assert!((cert.analytic_bound.unwrap() - 2.0).abs() < 1e-12);
    assert!(cert.grid_max <= 2.0 && cert.grid_max > 1.99, "{}", cert.grid_max);
    assert!((cert.lower_bound - 0.5).abs() < 1e-12);
}

#[test]
fn singleton_is_not_certified_for_riesz() {
    let set = TestSet::singleton(vec![0.1, 0.2, 0.3]);
    let nu = DiscreteMeasure::uniform_on(&set, 4).unwrap();
    let k = riesz(3, 2.0);
    let grid = default_grid(&k, &set, 64, 3).unwrap();
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, None).unwrap();
    assert_eq!(cert.lower_bound, 0.0);
    assert!(cert.diagnostic.unwrap().contains("infinite"));
}

#[test]
fn unknown_bound_degrades_to_zero() {
    let set = TestSet::<f64>::vertical_segment();
    let nu = DiscreteMeasure::uniform_on(&set, 8).unwrap();
    let k = KernelSpec::Cauchy { n: 1 };
    let grid = default_grid(&k, &set, 200, 4).unwrap();
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, None).unwrap();
    assert_eq!(cert.lower_bound, 0.0);
    assert!(cert.diagnostic.is_some());
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, Some(0.0)).unwrap();
    assert!(cert.lower_bound > 0.0);
}

#[test]
fn support_and_margin_validated() {
    let set = TestSet::<f64>::slice(1);
    let stray = DiscreteMeasure::atom(p(&[0.5, 0.1]), 1.0);
    assert!(capacity_lower_bound(&heat(1), &set, &stray, &[], None).is_err());
    let nu = DiscreteMeasure::uniform_on(&set, 4).unwrap();
    assert!(capacity_lower_bound(&heat(1), &set, &nu, &[], Some(-1.0)).is_err());
    assert!(DiscreteMeasure::new(vec![Atom { point: p(&[0.0]), weight: -1.0 }], vec![]).is_err());
}

#[test]
fn ball_mass_bound_on_random_atoms() {
    let kernels = [riesz(3, 2.0), riesz(2, 1.0), heat(1), heat(2), KernelSpec::Cauchy { n: 1 }];
    for (ki, k) in kernels.iter().enumerate() {
        let d = k.point_dim();
        let set = TestSet::new(SetDescriptor::Window {
            lo: vec![0.0; d],
            hi: vec![1.0; d],
        })
        .unwrap();
        let pts = set.sample(40, ki as u64).unwrap();
        let atoms = pts
            .into_iter()
            .enumerate()
            .map(|(i, q)| Atom {
                point: q,
                weight: 0.1 + (i % 7) as f64,
            })
            .collect();
        let nu = DiscreteMeasure::new(atoms, vec![]).unwrap();
        for (j, x) in set.sample(20, 100 + ki as u64).unwrap().into_iter().enumerate() {
            for rho in [0.01, 0.3, 1.0, 7.0, 100.0] {
                let r = check_ball_mass_bound(k, &nu, &x, rho).unwrap();
                assert!(r.passed, "{} #{j} rho={rho}: {r:?}", k.label());
            }
        }
    }
}

#[test]
fn cap_versus_measure_status() {
    let set = TestSet::<f64>::slice(1);
    let k = heat(1);
    let nu = DiscreteMeasure::uniform_on(&set, 32).unwrap();
    let grid = default_grid(&k, &set, 500, 5).unwrap();
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, None).unwrap();
    let est = estimate_measure(&set, &ShapeFamily::ParabolicBox { n: 1 }, 1.0, &default_schedule(), 200, 6).unwrap();
    assert_eq!(check_cap_le_measure(&cert, &est).status, CheckStatus::Pass);
    let mut low = est.clone();
    low.uniform_bound = Some(0.5);
    assert_eq!(check_cap_le_measure(&cert, &low).status, CheckStatus::Fail);
    low.uniform_bound = None;
    assert_eq!(check_cap_le_measure(&cert, &low).status, CheckStatus::Inconclusive);
}

#[test]
fn reweighting_keeps_support() {
    let set = TestSet::<f64>::slice(1);
    let nu = DiscreteMeasure::uniform_on(&set, 16).unwrap().reweighted(0.5, 2.0, 9);
    assert!(nu.supported_in(&set, 1e-12));
    let k = heat(1);
    let grid = default_grid(&k, &set, 500, 5).unwrap();
    let cert = capacity_lower_bound(&k, &set, &nu, &grid, None).unwrap();
    assert!(cert.lower_bound > 0.2 && cert.lower_bound <= 1.0);
}

#[test]
fn potential_in_single_precision() {
    let nu = DiscreteMeasure::<f32>::atom(Point::from(vec![0.0f32, 0.0, 0.0]), 1.0);
    let k = KernelSpec::Riesz { n: 3, beta: 2.0f32 };
    let v = potential(&k, &nu, &Point::from(vec![0.0f32, 4.0, 0.0])).unwrap();
    assert!((v - 0.25).abs() < 1e-6);
}

#[test]
fn certificate_serializes() {
    let set = TestSet::<f64>::slice(1);
    let nu = DiscreteMeasure::uniform_on(&set, 4).unwrap();
    let k = heat(1);
    let cert = capacity_lower_bound(&k, &set, &nu, &default_grid(&k, &set, 100, 1).unwrap(), None).unwrap();
    let s = serde_json::to_string(&cert).unwrap();
    let back: CapacityCertificate<f64> = serde_json::from_str(&s).unwrap();
    assert_eq!(back.lower_bound, cert.lower_bound);
}
