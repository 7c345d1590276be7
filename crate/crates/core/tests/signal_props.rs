use coprime_spectra::{
    acquire, evaluate_signal, generate_indices, random_spec, Complex64, SamplingScheme,
    SignalSpec, SinusoidParams,
};
use proptest::prelude::*;

fn tone() -> impl Strategy<Value = SinusoidParams> {
    (1e-3f64..=1.0, 0.0f64..2.0, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(f, a, p)| SinusoidParams::new(f, a, p).unwrap())
}

fn scheme() -> impl Strategy<Value = SamplingScheme> {
    prop_oneof![
        Just(vec![1u64]),
        Just(vec![3, 4, 5]),
        Just(vec![3, 4]),
        Just(vec![2, 3, 5, 7]),
    ]
    .prop_map(|r| SamplingScheme::new(&r).unwrap())
}

proptest! {
    #[test]
    fn noiseless_acquire_matches_evaluation(a in tone(), scheme in scheme(), horizon in 1usize..120, seed: u64) {
        let spec = SignalSpec::new(vec![a], 0.0).unwrap();
        let stream = acquire(&spec, &scheme, horizon, seed).unwrap();
        let keys: Vec<usize> = stream.samples().keys().copied().collect();
        prop_assert_eq!(keys, generate_indices(&scheme, horizon));
        for (&t, &x) in stream.samples() {
            prop_assert_eq!(x, evaluate_signal(&spec, t, Complex64::ZERO));
        }
    }

    #[test]
    fn acquisition_is_linear_in_components(a in tone(), b in tone(), scheme in scheme(), horizon in 1usize..120) {
        prop_assume!(coprime_spectra::circular_distance(a.freq(), b.freq()) > 0.0);
        let both = SignalSpec::new(vec![a, b], 0.0).unwrap();
        let sa = acquire(&SignalSpec::new(vec![a], 0.0).unwrap(), &scheme, horizon, 0).unwrap();
        let sb = acquire(&SignalSpec::new(vec![b], 0.0).unwrap(), &scheme, horizon, 0).unwrap();
        let sab = acquire(&both, &scheme, horizon, 0).unwrap();
        for (&t, &x) in sab.samples() {
            let sum = sa.get(t).unwrap() + sb.get(t).unwrap();
            prop_assert!((x - sum).norm() < 1e-12);
        }
    }

    #[test]
    fn acquisition_is_deterministic(k in 1usize..6, seed: u64, horizon in 1usize..100) {
        let scheme = SamplingScheme::new(&[3, 4, 5]).unwrap();
        let spec = random_spec(k, 0.01, (0.5, 1.0), seed).unwrap().with_snr_db(10.0).unwrap();
        prop_assert_eq!(
            acquire(&spec, &scheme, horizon, seed ^ 1).unwrap(),
            acquire(&spec, &scheme, horizon, seed ^ 1).unwrap()
        );
    }
}

#[test]
fn noise_prefix_is_stable_across_horizons() {
    let scheme = SamplingScheme::new(&[3, 4, 5]).unwrap();
    let spec = random_spec(2, 0.01, (0.5, 1.0), 3).unwrap().with_snr_db(0.0).unwrap();
    let short = acquire(&spec, &scheme, 30, 9).unwrap();
    let long = acquire(&spec, &scheme, 90, 9).unwrap();
    for (&t, &x) in short.samples() {
        assert_eq!(long.get(t), Some(x));
    }
}
