use num_complex::Complex32 as C;
use resolvent_inv::*;

#[test]
fn plan_in_f32() {
    let s = ResolventSeries::<f32>::from_pairs(&[
        (C::new(1.0, 0.0), C::new(1.0, 0.0)),
        (C::new(2.0, 0.0), C::new(3.0, 1.0)),
    ])
    .unwrap();
    let plan = invert_to_plan(&s).unwrap();
    let z = C::new(-1.0, 2.0);
    assert!((plan.eval(z) * s.evaluate(z).unwrap() - 1.0).norm() < 1e-4);
}

#[test]
fn filter_round_trip_in_f32() {
    let spec = FilterSpec::<f32>::new(
        vec![C::new(-0.15, 0.0), C::new(-0.2, 0.0), C::new(1.0, 0.0)],
        vec![C::new(-0.4, 0.0), C::new(3.0, 0.0)],
    )
    .unwrap();
    let x: Vec<C> = (0..64)
        .map(|k| C::new((k as f32 * 0.3).sin(), (k as f32 * 0.11).cos()))
        .collect();
    let back = invert_filter(&spec, &forward_filter(&spec, &x).unwrap()).unwrap();
    let err: f32 = back.iter().zip(&x).map(|(a, b)| (a - b).norm_sqr()).sum::<f32>().sqrt();
    let norm: f32 = x.iter().map(|a| a.norm_sqr()).sum::<f32>().sqrt();
    assert!(err < 1e-4 * norm);
}
