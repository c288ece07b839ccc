use lcam::landscapes::{central_difference, gradient_error};
use lcam::optimizers::{sgd_momentum_step, MomentumState, ParameterVector};
use lcam::rng::{stream, Domain};
use lcam::tinynet::{evaluate, generate_blobs, generate_two_moons, init_mlp, Dataset, Mlp, Split};
use lcam::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn init_is_deterministic_and_sized() {
    let a = init_mlp(&[2, 8, 2], 5).unwrap();
    let b = init_mlp(&[2, 8, 2], 5).unwrap();
    let c = init_mlp(&[2, 8, 2], 6).unwrap();
    assert_eq!(a.params().len(), 2 * 8 + 8 + 8 * 2 + 2);
    assert_eq!(a.params(), b.params());
    assert_ne!(a.params(), c.params());
    assert!(init_mlp(&[], 0).is_err());
    assert!(init_mlp(&[3], 0).is_err());
    assert!(init_mlp(&[2, 0, 2], 0).is_err());
}

#[test]
fn logits_have_one_row_per_sample() {
    let model = init_mlp(&[3, 5, 4], 0).unwrap();
    let logits = model.logits(&[0.1; 3 * 7]).unwrap();
    assert_eq!(logits.len(), 7 * 4);
    assert!(model.logits(&[0.1; 4]).is_err());
}

#[test]
fn untrained_loss_is_near_ln_two() {
    let data = generate_two_moons(200, 0.1, 0).unwrap();
    let (x, y) = data.gather(data.split_indices(Split::Train));
    let (loss, grad) = init_mlp(&[2, 16, 16, 2], 0)
        .unwrap()
        .forward_loss(&x, &y)
        .unwrap();
    assert!((loss - 2f64.ln()).abs() < 0.2, "loss {loss}");
    assert!(grad.iter().all(|g| g.is_finite()));
}

#[test]
fn duplicating_the_batch_changes_nothing() {
    let model = init_mlp(&[2, 6, 3], 9).unwrap();
    let x = vec![0.3, -0.2, 1.5, 0.7, -1.0, 0.0];
    let y = vec![2, 0, 1];
    let (l1, g1) = model.forward_loss(&x, &y).unwrap();
    let x2: Vec<f64> = x.iter().chain(&x).copied().collect();
    let y2: Vec<usize> = y.iter().chain(&y).copied().collect();
    let (l2, g2) = model.forward_loss(&x2, &y2).unwrap();
    assert!((l1 - l2).abs() < 1e-14);
    for (a, b) in g1.iter().zip(&g2) {
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn out_of_range_label_is_a_data_error() {
    let model = init_mlp(&[2, 2], 0).unwrap();
    let err = model.forward_loss(&[0.0, 0.0], &[2]).unwrap_err();
    assert!(matches!(err, Error::Data { .. }));
}

#[test]
fn backprop_matches_finite_differences_on_every_shape() {
    let data = generate_two_moons(40, 0.2, 1).unwrap();
    let (x, y) = data.gather(data.split_indices(Split::Train));
    let x3: Vec<f64> = x
        .chunks(2)
        .flat_map(|r| [r[0], r[1], r[0] * r[1]])
        .collect();
    let y3: Vec<usize> = y.iter().enumerate().map(|(i, c)| (c + i) % 3).collect();
    let cases: [(&[usize], &[f64], &[usize]); 4] = [
        (&[2, 2], &x, &y),
        (&[2, 8, 2], &x, &y),
        (&[2, 16, 16, 2], &x, &y),
        (&[3, 7, 5, 3], &x3, &y3),
    ];
    let mut rng = stream(0, Domain::Probe, 0);
    for (layers, features, labels) in cases {
        let model = init_mlp(layers, 4).unwrap();
        let params = model.params().to_vec();
        let (_, analytic) = model.forward_loss(features, labels).unwrap();
        let coords: Vec<usize> = (0..30).map(|_| rng.random_range(0..params.len())).collect();
        let mut a = Vec::new();
        let mut n = Vec::new();
        for &i in &coords {
            let numeric = central_difference(
                |p| {
                    let mut probe = params.clone();
                    probe[i] = p[0];
                    Ok(model.loss_and_grad_at(&probe, features, labels)?.0)
                },
                &[params[i]],
                1e-5,
            )
            .unwrap();
            a.push(analytic[i]);
            n.push(numeric[0]);
        }
        let err = gradient_error(&a, &n, 1e-6);
        assert!(err.passes(1e-4), "{layers:?}: {err:?}");
    }
}

fn constant_class_zero(data: &Dataset) -> Mlp {
    // all-zero weights give equal logits, and ties resolve to class 0
    let layers = [data.dim(), data.classes()];
    let len = data.dim() * data.classes() + data.classes();
    Mlp::from_params(&layers, ParameterVector::zeros(len).unwrap()).unwrap()
}

#[test]
fn evaluate_examples() {
    let n = 10;
    let features = vec![0.5; 2 * n];
    let all = (0..n).collect::<Vec<_>>();
    let zeros = Dataset::new(features.clone(), 2, vec![0; n], 2, vec![], all.clone()).unwrap();
    let ones = Dataset::new(features, 2, vec![1; n], 2, vec![], all).unwrap();
    let model = constant_class_zero(&zeros);
    assert_eq!(evaluate(&model, &zeros, Split::Test).unwrap(), 0.0);
    assert_eq!(evaluate(&model, &ones, Split::Test).unwrap(), 1.0);
    assert!(matches!(
        evaluate(&model, &zeros, Split::Train),
        Err(Error::Data { .. })
    ));
}

#[test]
fn random_init_error_sits_near_chance() {
    let data = generate_blobs(2, 100, 1.0, 0).unwrap();
    let errors: Vec<f64> = (0..20)
        .map(|seed| evaluate(&init_mlp(&[2, 16, 2], seed).unwrap(), &data, Split::Train).unwrap())
        .collect();
    let mean = errors.iter().sum::<f64>() / 20.0;
    assert!(
        (0.2..=0.8).contains(&mean),
        "mean error {mean} over {errors:?}"
    );
}

#[test]
fn blobs_split_and_determinism() {
    let d = generate_blobs(2, 100, 0.5, 3).unwrap();
    assert_eq!(d.len(), 200);
    assert_eq!(d.split_indices(Split::Train).len(), 160);
    assert_eq!(d.split_indices(Split::Test).len(), 40);
    assert_eq!(d, generate_blobs(2, 100, 0.5, 3).unwrap());
    let test_labels: Vec<usize> = d
        .split_indices(Split::Test)
        .iter()
        .map(|&i| d.labels()[i])
        .collect();
    assert_eq!(test_labels.iter().filter(|&&c| c == 0).count(), 20);
    assert!(generate_blobs(1, 10, 0.5, 0).is_err());
}

#[test]
fn tight_blobs_are_linearly_separable() {
    let data = generate_blobs(4, 30, 1e-3, 2).unwrap();
    let mut model = init_mlp(&[2, 4], 2).unwrap();
    let (x, y) = data.gather(data.split_indices(Split::Train));
    let mut state = MomentumState::new(model.params().len());
    for _ in 0..300 {
        let (_, g) = model.forward_loss(&x, &y).unwrap();
        sgd_momentum_step(model.params_mut(), &g, &mut state, 0.1, 0.9, 0.0).unwrap();
    }
    assert_eq!(evaluate(&model, &data, Split::Train).unwrap(), 0.0);
}

#[test]
fn noiseless_moons_lie_on_unit_half_circles() {
    let d = generate_two_moons(101, 0.0, 0).unwrap();
    for i in 0..d.len() {
        let r = d.row(i);
        let (cx, cy) = if d.labels()[i] == 0 {
            (0.0, 0.0)
        } else {
            (1.0, 0.5)
        };
        let radius = ((r[0] - cx).powi(2) + (r[1] - cy).powi(2)).sqrt();
        assert!((radius - 1.0).abs() < 1e-12);
        if d.labels()[i] == 0 {
            assert!(r[1] >= -1e-12);
        } else {
            assert!(r[1] <= 0.5 + 1e-12);
        }
    }
    assert_eq!(
        generate_two_moons(50, 0.1, 4).unwrap(),
        generate_two_moons(50, 0.1, 4).unwrap()
    );
    assert!(generate_two_moons(9, 0.1, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn evaluate_ignores_split_order(seed in 0u64..1000, model_seed in 0u64..1000) {
        let d = generate_two_moons(60, 0.3, seed).unwrap();
        let model = init_mlp(&[2, 4, 2], model_seed).unwrap();
        let err = evaluate(&model, &d, Split::Test).unwrap();
        prop_assert!((0.0..=1.0).contains(&err));
        let mut test = d.split_indices(Split::Test).to_vec();
        test.shuffle(&mut stream(seed, Domain::Shuffle, 99));
        let shuffled = Dataset::new(
            d.features().to_vec(),
            d.dim(),
            d.labels().to_vec(),
            d.classes(),
            d.split_indices(Split::Train).to_vec(),
            test,
        ).unwrap();
        prop_assert_eq!(evaluate(&model, &shuffled, Split::Test).unwrap(), err);
    }
}
