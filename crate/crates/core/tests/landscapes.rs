mod common;

use common::momentum_scalar;
use lcam::landscapes::{
    eval_quadratic, eval_rosenbrock, eval_saddle, finite_difference_gradient, grad_quadratic,
    grad_rosenbrock, grad_saddle, gradient_error, CoupledSpring, CoupledSpringParams, Landscape,
    LandscapeId, Quadratic, Rosenbrock, Saddle,
};
use lcam::optimizers::{sgd_momentum_step, MomentumState, ParameterVector};
use proptest::prelude::*;

#[test]
fn quadratic_examples() {
    assert_eq!(eval_quadratic(&[0.0, 0.0], &[1.0, 100.0]).unwrap(), 0.0);
    assert_eq!(
        grad_quadratic(&[0.0, 0.0], &[1.0, 100.0]).unwrap(),
        vec![0.0, 0.0]
    );
    assert_eq!(eval_quadratic(&[1.0, 1.0], &[1.0, 100.0]).unwrap(), 50.5);
    assert_eq!(
        grad_quadratic(&[1.0, 1.0], &[1.0, 100.0]).unwrap(),
        vec![1.0, 100.0]
    );
    assert!(eval_quadratic(&[1.0], &[1.0, 2.0]).is_err());
    assert!(Quadratic::new(vec![1.0, -1.0]).is_err());
}

#[test]
fn saddle_examples() {
    assert_eq!(grad_saddle(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    assert_eq!(eval_saddle(&[0.0, 1.0]).unwrap(), -0.25);
    assert_eq!(grad_saddle(&[0.0, 1.0]).unwrap(), vec![0.0, 0.0]);
    assert!(eval_saddle(&[1.0]).is_err());
    assert!(Saddle::new(1).is_err());
}

#[test]
fn rosenbrock_examples() {
    assert_eq!(eval_rosenbrock(&[1.0, 1.0]).unwrap(), 0.0);
    assert_eq!(grad_rosenbrock(&[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
    assert!((eval_rosenbrock(&[-1.2, 1.0]).unwrap() - 24.2).abs() < 1e-12);
    assert!(eval_rosenbrock(&[f64::NAN, 1.0]).is_err());
}

#[test]
fn coupled_spring_zero_at_its_centre() {
    let p = CoupledSpringParams {
        s_center: 0.3,
        n_center: -2.0,
        ..Default::default()
    };
    let spring = CoupledSpring::new(p).unwrap();
    let c = p.center();
    assert_eq!(spring.eval(&c).unwrap(), 0.0);
    assert!(spring.grad(&c).unwrap().iter().all(|g| *g == 0.0));
}

#[test]
fn uncoupled_groups_follow_one_dimensional_quadratics() {
    let p = CoupledSpringParams {
        coupling: 0.0,
        group_split: 3,
        ..Default::default()
    };
    let spring = CoupledSpring::new(p).unwrap();
    let start = vec![0.5, -0.2, 2.0, 1.5, 0.0, -1.0];
    let mut theta = ParameterVector::new(start.clone()).unwrap();
    let mut state = MomentumState::new(6);
    let mut scalar: Vec<(f64, f64)> = start.iter().map(|&x| (x, 0.0)).collect();
    for _ in 0..300 {
        let g = spring.grad(&theta).unwrap();
        sgd_momentum_step(&mut theta, &g, &mut state, 0.05, 0.9, 0.0).unwrap();
        for (i, (x, v)) in scalar.iter_mut().enumerate() {
            // each coordinate sees ½·s·(x − c)², shifted to the origin
            let (scale, centre) = if i < 3 {
                (p.soft_scale, p.n_center)
            } else {
                (p.stiff_scale, p.s_center)
            };
            let g = grad_quadratic(&[*x - centre], &[scale]).unwrap()[0];
            (*x, *v) = momentum_scalar(*x, *v, g, 0.05, 0.9, 0.0);
        }
    }
    for (got, (want, _)) in theta.iter().zip(&scalar) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn indefinite_coupling_is_a_configuration_error() {
    let p = CoupledSpringParams {
        coupling: 3.0,
        ..Default::default()
    };
    let err = CoupledSpring::new(p).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("coupling"));
}

#[test]
fn known_minima_are_stationary() {
    for id in LandscapeId::ALL {
        let f = id.build_default();
        if let Some((theta, value)) = f.known_minimum() {
            let g = f.grad(&theta).unwrap();
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(norm <= 1e-8, "{id}: |grad| = {norm}");
            assert!((f.eval(&theta).unwrap() - value).abs() < 1e-12);
        }
    }
    assert!(Rosenbrock::new(4).unwrap().known_minimum().is_some());
}

#[test]
fn landscape_ids_round_trip() {
    for id in LandscapeId::ALL {
        assert_eq!(id.as_str().parse::<LandscapeId>().unwrap(), id);
        assert_eq!(id.build_default().name(), id.as_str());
    }
    assert_eq!(
        "coupled_spring".parse::<LandscapeId>().unwrap(),
        LandscapeId::CoupledSpring
    );
    assert!("himmelblau".parse::<LandscapeId>().is_err());
}

#[test]
fn finite_difference_examples() {
    let q = Quadratic::new(vec![1.0]).unwrap();
    let g = finite_difference_gradient(&q, &[3.0], 1e-5).unwrap();
    assert!((g[0] - 3.0).abs() < 1e-8);
    assert!(finite_difference_gradient(&q, &[3.0], 0.0).is_err());
}

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analytic_gradients_match_finite_differences(q in point(2), s in point(3), r in point(4), c in point(10)) {
        let cases: Vec<(Box<dyn Landscape>, Vec<f64>)> = vec![
            (Box::new(Quadratic::new(vec![1.0, 100.0]).unwrap()), q),
            (Box::new(Saddle::new(3).unwrap()), s),
            (Box::new(Rosenbrock::new(4).unwrap()), r),
            (Box::new(CoupledSpring::new(CoupledSpringParams::default()).unwrap()), c),
        ];
        for (f, theta) in cases {
            let analytic = f.grad(&theta).unwrap();
            prop_assert_eq!(analytic.len(), f.dimension());
            let numeric = finite_difference_gradient(f.as_ref(), &theta, 1e-5).unwrap();
            let err = gradient_error(&analytic, &numeric, 1e-6);
            prop_assert!(err.passes(1e-5), "{}: {:?}", f.name(), err);
        }
    }

    #[test]
    fn evaluation_is_deterministic(theta in point(10)) {
        let f = CoupledSpring::new(CoupledSpringParams::default()).unwrap();
        prop_assert_eq!(f.eval(&theta).unwrap().to_bits(), f.eval(&theta).unwrap().to_bits());
    }
}
