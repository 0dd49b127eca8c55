use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::sampling::rng_for;

fn p(v: &[f64]) -> Point<f64> {
    Point::new(v.to_vec()).unwrap()
}

fn st(x: &[f64], t: f64) -> SpaceTimePoint<f64> {
    SpaceTimePoint::new(p(x), t).unwrap()
}

fn families() -> Vec<ShapeFamily<f64>> {
    vec![
        ShapeFamily::GBall {
            kernel: KernelSpec::Riesz { n: 3, beta: 2.0 },
        },
        ShapeFamily::GBall {
            kernel: KernelSpec::GaussWeierstrass { n: 2 },
        },
        ShapeFamily::GBall {
            kernel: KernelSpec::SpaceTime {
                base: TransitionSpec::gauss(1),
            },
        },
        ShapeFamily::GBall {
            kernel: KernelSpec::Cauchy { n: 1 },
        },
        ShapeFamily::HeatBall { n: 1 },
        ShapeFamily::ParabolicBox { n: 2 },
        ShapeFamily::CylinderZ { n: 2, beta: 2.0 },
        ShapeFamily::MetricBall { n: 3 },
    ]
}

#[test]
fn gball_examples() {
    let riesz3 = KernelSpec::Riesz { n: 3, beta: 2.0 };
    assert!(gball_contains(&riesz3, &p(&[0.0; 3]), 0.5, &p(&[0.4, 0.0, 0.0])).unwrap());
    let riesz4 = KernelSpec::Riesz { n: 4, beta: 2.0 };
    assert!(!gball_contains(&riesz4, &p(&[0.0; 4]), 0.25, &p(&[0.6, 0.0, 0.0, 0.0])).unwrap());
    let gauss = KernelSpec::SpaceTime {
        base: TransitionSpec::gauss(1),
    };
    for rho in [1e-3, 1.0, 1e6] {
        assert!(!gball_contains(&gauss, &p(&[0.0, 0.0]), rho, &p(&[0.0, 0.0])).unwrap());
        assert!(!gball_contains(&gauss, &p(&[0.0, 0.0]), rho, &p(&[0.01, 0.5])).unwrap());
    }
    assert!(gball_contains(&riesz3, &p(&[0.0; 3]), 0.5, &p(&[0.0; 2])).is_err());
}

#[test]
fn heat_ball_examples() {
    let c = st(&[0.0], 0.0);
    assert!(heat_ball_contains(&c, 1.0, &st(&[0.0], -0.5), 1).unwrap());
    assert!(!heat_ball_contains(&c, 1.0, &st(&[0.0], -1.0), 1).unwrap());
    assert!(!heat_ball_contains(&c, 1.0, &st(&[0.0], -1.5), 1).unwrap());
    assert!(!heat_ball_contains(&c, 1.0, &st(&[0.0], 0.0), 1).unwrap());
    // 2·1·0.5·ln 2 = 0.693
    assert!(heat_ball_contains(&c, 1.0, &st(&[0.83], -0.5), 1).unwrap());
    assert!(!heat_ball_contains(&c, 1.0, &st(&[0.84], -0.5), 1).unwrap());
}

#[test]
fn heat_ball_matches_kernel_on_random_points() {
    let mut rng = rng_for(17, 0);
    for n in 1..=3 {
        let kernel = KernelSpec::GaussWeierstrass { n };
        let mut inside = 0;
        for _ in 0..10_000 {
            let rho = 10f64.powf(rng.gen_range(-1.0..1.0));
            let e = heat_ball_extents(rho, n);
            let c: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut y: Vec<f64> = c[..n]
                .iter()
                .map(|x| x + rng.gen_range(-1.2..1.2) * e.cylinder_radius)
                .collect();
            y.push(c[n] - rng.gen_range(-0.2..1.2) * e.time_extent);
            let a = heat_ball_contains(&SpaceTimePoint::from_flat(&p(&c)).unwrap(), rho, &SpaceTimePoint::from_flat(&p(&y)).unwrap(), n).unwrap();
            let b = gball_contains(&kernel, &p(&c), rho, &p(&y)).unwrap();
            assert_eq!(a, b, "n={n} rho={rho} c={c:?} y={y:?}");
            inside += usize::from(a);
        }
        assert!(inside > 300, "too few interior hits: {inside}");
    }
}

#[test]
fn extents_examples() {
    let e = heat_ball_extents(1.0f64, 1);
    assert_eq!(e.time_extent, 1.0);
    assert_eq!(e.cylinder_radius, 1.0);
    let e = heat_ball_extents(1.0f64, 2);
    assert!((e.tight_radius - 1.2130613194252668).abs() < 1e-12);
    for n in 1..6 {
        for rho in [1e-3, 0.7, 42.0] {
            let e = heat_ball_extents(rho, n);
            assert!(e.tight_radius <= e.cylinder_radius);
        }
    }
}

#[test]
fn tight_radius_is_attained() {
    // the slice at s = T/e reaches just under the tight radius
    let n = 2;
    let rho = 3.0;
    let e = heat_ball_extents(rho, n);
    let c = st(&[0.0, 0.0], 0.0);
    let s = e.time_extent / std::f64::consts::E;
    assert!(heat_ball_contains(&c, rho, &st(&[e.tight_radius * (1.0 - 1e-9), 0.0], -s), n).unwrap());
    assert!(!heat_ball_contains(&c, rho, &st(&[e.tight_radius * (1.0 + 1e-9), 0.0], -s), n).unwrap());
}

#[test]
fn parabolic_box_examples() {
    let c = st(&[0.0], 0.0);
    assert!(parabolic_box_contains(&c, 1.0, &c).unwrap());
    assert!(parabolic_box_contains(&c, 1.0, &st(&[0.5], 0.5)).unwrap());
    assert!(!parabolic_box_contains(&c, 1.0, &st(&[0.51], 0.0)).unwrap());
    assert!(!parabolic_box_contains(&c, 1.0, &st(&[0.0], 0.51)).unwrap());
}

#[test]
fn bp_inclusion_holds() {
    for (n, rho) in [(1, 1.0), (3, 0.1), (2, 10.0)] {
        let r = check_bp_inclusion::<f64>(n, rho, 10_000, 42).unwrap();
        assert_eq!(r.accepted, 10_000);
        assert_eq!(r.violations, 0, "{r:?}");
        assert!(r.passed());
        let c = check_heat_ball_cylinder::<f64>(n, rho, 10_000, 43).unwrap();
        assert!(c.passed(), "{c:?}");
    }
    let r = check_bp_inclusion::<f64>(1, 1.0, 0, 1).unwrap();
    assert!(r.vacuous && !r.passed());
}

#[test]
fn bp_is_deterministic() {
    let a = check_bp_inclusion::<f64>(2, 1.0, 3000, 5).unwrap();
    let b = check_bp_inclusion::<f64>(2, 1.0, 3000, 5).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sampler_detects_a_too_small_box() {
    // halving the box side must be caught: the sampler is not vacuous
    let n = 2;
    let rho = 1.0;
    let fam = ShapeFamily::HeatBall { n };
    let c = p(&[0.0; 3]);
    let pts = fam.sample(&c, rho, 5000, 3).unwrap();
    let small = (n as f64).sqrt() * rho;
    let outside = pts
        .iter()
        .filter(|y| !ShapeFamily::ParabolicBox { n }.contains(&c, small, y).unwrap())
        .count();
    assert!(outside > 100, "{outside}");
}

#[test]
fn pb_inclusion_holds() {
    for n in 1..=3 {
        for rho in [0.1, 0.5, 1.0, 10.0] {
            let r = check_pb_inclusion::<f64>(n, rho).unwrap();
            assert_eq!(r.samples, 1 << (n + 1));
            assert_eq!(r.violations, 0, "{r:?}");
            assert!(r.constants["min_relative_margin"] > 0.0);
        }
    }
    let r = check_pb_inclusion::<f64>(1, 1.0).unwrap();
    assert!((r.constants["four_log_four_thirds"] - (256.0f64 / 81.0).ln()).abs() < 1e-15);
    assert!((r.constants["four_log_four_thirds"] - 1.1507282898).abs() < 1e-9);
}

#[test]
fn bz_constant_and_inclusion() {
    let tr = TransitionSpec::gauss(3);
    let prof: ProfilePair<f64> = tr.profile();
    let r = check_bz_inclusion(&tr, &prof, 1.0, 0, 0).unwrap();
    let m = 6f64.powf(1.5) * (-1.5f64).exp() * (4.0 * std::f64::consts::PI).powf(-1.5);
    assert!((r.constants["M"] - m).abs() < 1e-12);
    assert!((r.constants["phi2_at_zero"] - 0.0224483903).abs() < 1e-9);
    assert!((r.constants["C"] - m).abs() < 1e-12);

    for tr in [TransitionSpec::gauss(1), TransitionSpec::cauchy(1)] {
        let prof: ProfilePair<f64> = tr.profile();
        for rho in [0.1, 1.0, 10.0] {
            let r = check_bz_inclusion(&tr, &prof, rho, 10_000, 11).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn zb_eta_selection() {
    let phi1 = (4.0 * std::f64::consts::PI).powf(-0.5) * (-0.25f64).exp();
    let (eta, kappa) = select_eta(1.0, 2.0, phi1).unwrap();
    let bound = phi1 * phi1 / 3.0;
    assert!((3.0 * eta).sqrt() < phi1 && eta > bound * (1.0 - 1e-12), "{eta} vs {bound}");
    assert!((kappa - eta.sqrt()).abs() < 1e-15);
    assert!(matches!(select_eta(1.0, 2.0, 0.0), Err(Error::Configuration(_))));
    // Φ₁(1) large: η stays below 1
    let (eta, _) = select_eta(1.0_f64, 1.0, 100.0).unwrap();
    assert!(eta < 1.0);
}

#[test]
fn zb_inclusion_holds() {
    for tr in [TransitionSpec::gauss(1), TransitionSpec::gauss(3), TransitionSpec::cauchy(1)] {
        let prof: ProfilePair<f64> = tr.profile();
        let mut kappas = vec![];
        for rho in [0.1, 1.0, 10.0] {
            let r = check_zb_inclusion(&tr, &prof, rho, 10_000, 7).unwrap();
            assert!(r.passed(), "{r:?}");
            kappas.push(r.constants["kappa"]);
        }
        assert!(kappas.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn riesz_ball_is_metric_ball() {
    let mut rng = rng_for(99, 0);
    for n in [3usize, 4, 5] {
        for beta in [1.0, 2.0] {
            let k = KernelSpec::Riesz { n, beta };
            for _ in 0..2000 {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let rho = 10f64.powf(rng.gen_range(-2.0..2.0));
                let r = rho.powf(1.0 / (n as f64 - beta));
                let d = euclidean(&x, &y);
                assert_eq!(gball_contains(&k, &p(&x), rho, &p(&y)).unwrap(), d < r);
            }
        }
    }
}

#[test]
fn bounding_boxes_contain_shapes() {
    for (i, fam) in families().into_iter().enumerate() {
        let d = fam.dim();
        let c = vec![0.3; d];
        for rho in [0.2, 1.0, 5.0] {
            let bb = fam.bounding_box(rho).unwrap();
            let lo: Vec<f64> = bb.iter().map(|(a, b)| c[0] + a - (b - a)).collect();
            let hi: Vec<f64> = bb.iter().map(|(a, b)| c[0] + b + (b - a)).collect();
            let mut rng = rng_for(i as u64, 0);
            let mut hits = 0;
            for _ in 0..20_000 {
                let y = uniform_in(&mut rng, &lo, &hi);
                if fam.contains_flat(&c, rho, &y).unwrap() {
                    hits += 1;
                    for (j, (a, b)) in bb.iter().enumerate() {
                        let off = y[j] - c[j];
                        assert!(off >= *a && off <= *b, "{} axis {j}: {off} not in [{a},{b}]", fam.label());
                    }
                }
            }
            assert!(hits > 0, "{}", fam.label());
        }
    }
}

#[test]
fn inscribed_boxes_lie_inside() {
    for fam in families() {
        let d = fam.dim();
        let c = vec![-0.2; d];
        for mask in 1..(1u32 << d) {
            let active: Vec<bool> = (0..d).map(|i| mask >> i & 1 == 1).collect();
            for rho in [0.3, 2.0] {
                let b = fam.inscribed_box(rho, &active).unwrap();
                for (h, a) in b.half.iter().zip(&active) {
                    assert!(*h >= 0.0);
                    if !a {
                        assert_eq!(*h, 0.0);
                    }
                }
                // corners and random interior points
                for corner in 0..(1u32 << d) {
                    let y: Vec<f64> = (0..d)
                        .map(|i| c[i] + b.offset[i] + if corner >> i & 1 == 1 { b.half[i] } else { -b.half[i] })
                        .collect();
                    assert!(fam.contains_flat(&c, rho, &y).unwrap(), "{} {active:?} rho={rho} corner {y:?}", fam.label());
                }
            }
        }
    }
}

#[test]
fn parabolic_box_inscribed_is_exact() {
    let fam = ShapeFamily::<f64>::ParabolicBox { n: 1 };
    let b = fam.inscribed_box(0.5, &[true, true]).unwrap();
    assert_eq!(b.half, vec![0.25, 0.125]);
    assert_eq!(b.offset, vec![0.0, 0.0]);
}

#[test]
fn shapes_work_in_f32() {
    let r = check_pb_inclusion::<f32>(2, 1.0).unwrap();
    assert!(r.passed());
    let f = ShapeFamily::<f32>::HeatBall { n: 1 };
    let c = Point::new(vec![0.0f32, 0.0]).unwrap();
    assert!(f.contains(&c, 1.0, &Point::new(vec![0.0, -0.5]).unwrap()).unwrap());
}

#[test]
fn report_serializes() {
    let r = check_pb_inclusion::<f64>(1, 1.0).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: InclusionReport<f64> = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    let fam: ShapeFamily<f64> = serde_json::from_str(r#"{"family":"cylinder_z","n":2,"beta":1.0}"#).unwrap();
    assert_eq!(fam.dim(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn monotone_in_rho(
        idx in 0usize..8,
        coords in proptest::collection::vec(-1.5f64..1.5, 8),
        r1 in 0.01f64..5.0,
        factor in 1.0f64..4.0,
    ) {
        let fam = &families()[idx];
        let d = fam.dim();
        let c = vec![0.0; d];
        let y = &coords[..d];
        if fam.contains_flat(&c, r1, y).unwrap() {
            prop_assert!(fam.contains_flat(&c, r1 * factor, y).unwrap());
        }
    }
}
