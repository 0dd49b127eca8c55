use semipolar::capacity::{capacity_lower_bound, default_grid, potential};
use semipolar::hausdorff::{default_schedule, estimate_measure};
use semipolar::{
    classify, ClassifyConfig, DiscreteMeasure, KernelSpec, Point, ShapeFamily, TestSet, TransitionSpec,
};

#[test]
fn f64_aliases_cover_a_full_pipeline() {
    let set = TestSet::slice(1);
    let kernel = KernelSpec::SpaceTime {
        base: TransitionSpec::gauss(1),
    };
    let est = estimate_measure(&set, &ShapeFamily::ParabolicBox { n: 1 }, 1.0, &default_schedule(), 64, 0).unwrap();
    assert_eq!(est.uniform_bound, Some(1.0));
    let nu = DiscreteMeasure::uniform_on(&set, 32).unwrap();
    let grid = default_grid(&kernel, &set, 300, 0).unwrap();
    let cert = capacity_lower_bound(&kernel, &set, &nu, &grid, None).unwrap();
    assert!(cert.lower_bound > 0.999);
    let v = classify(&set, &kernel, &ClassifyConfig::default()).unwrap();
    assert!(v.consistent);
}

#[test]
fn single_precision_pipeline() {
    let set = semipolar::harness::TestSet::<f32>::slice(1);
    let fam = semipolar::shapes::ShapeFamily::<f32>::ParabolicBox { n: 1 };
    let est = estimate_measure(&set, &fam, 1.0f32, &semipolar::hausdorff::dyadic_schedule(6), 32, 1).unwrap();
    let ub = est.uniform_bound.unwrap();
    assert!((ub - 1.0).abs() < 1e-5, "{ub}");
    let k = semipolar::kernels::KernelSpec::<f32>::Riesz { n: 3, beta: 2.0 };
    let nu = semipolar::capacity::DiscreteMeasure::<f32>::atom(semipolar::kernels::Point::from(vec![0.0f32; 3]), 2.0);
    let v = potential(&k, &nu, &semipolar::kernels::Point::from(vec![0.0f32, 0.0, 4.0])).unwrap();
    assert!((v - 0.5).abs() < 1e-6);
}

#[test]
fn kernel_values_through_aliases() {
    let k = KernelSpec::GaussWeierstrass { n: 1 };
    let v = k.eval(&Point::from(vec![0.0, 1.0]), &Point::from(vec![0.0, 0.0])).unwrap();
    assert_eq!(v, 1.0);
    assert_eq!(k.eval(&Point::from(vec![0.0, 0.0]), &Point::from(vec![0.0, 1.0])).unwrap(), 0.0);
}
