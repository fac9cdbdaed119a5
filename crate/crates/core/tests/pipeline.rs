use cohlin::io::{format_circuit, parse_circuit};
use cohlin::numerics::ComplexMatrix;
use cohlin::protocols::{
    attenuation_ladder, comparison_c_max, comparison_map, Identification, SearchSetup, SearchSpec,
};
use cohlin::{apply_circuit, compile, dilate, invert, mean_photon_number, reck_decompose, AmplitudeVector, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
}

#[test]
fn circuit_files_round_trip_bit_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [2, 6, 11] {
        let u = ComplexMatrix::random_unitary(n, &mut rng);
        let circuit = reck_decompose(&u, 1e-10).unwrap();
        let reread = parse_circuit(&format_circuit(&circuit)).unwrap();
        assert_eq!(reread, circuit);
        assert_eq!(compile(&reread), compile(&circuit));
    }
}

#[test]
fn larger_searches_identify_and_restore() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 2..=6 {
        let refs: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
        let truth = rng.random_range(0..n);
        let spec = SearchSpec::new(refs.clone(), refs[truth]).unwrap();
        let setup = SearchSetup::new(spec).unwrap();
        assert_eq!(setup.circuit().width(), 2 * (n + 1));
        assert!(compile(setup.circuit()).max_abs_diff(setup.unitary()) < 1e-9);

        let mut physical = vec![refs[truth]];
        physical.extend_from_slice(&refs);
        physical.resize(2 * (n + 1), Complex64::new(0.0, 0.0));
        let input = AmplitudeVector::from_physical(&physical).unwrap();

        for seed in 0..40 {
            let outcome = setup.trial(seed).unwrap();
            if let Identification::Reference(k) = outcome.identified {
                assert_eq!(k, truth, "N={n} seed={seed}");
            }
            assert!(setup.restore(&outcome).unwrap().max_abs_diff(&input) < 1e-10);
        }
    }
}

#[test]
fn inverse_circuit_undoes_forward_pass() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = comparison_map(4, comparison_c_max(4)).unwrap();
    let d = dilate(&k, 1e-10).unwrap();
    let circuit = reck_decompose(&d.unitary, 1e-10).unwrap();
    let input = AmplitudeVector::from_starred((0..d.width()).map(|_| random_complex(&mut rng)).collect()).unwrap();
    let there = apply_circuit(&circuit, &input).unwrap();
    let back = apply_circuit(&invert(&circuit), &there).unwrap();
    assert!(back.max_abs_diff(&input) < 1e-12);
    assert!((mean_photon_number(&there) - mean_photon_number(&input)).abs() < 1e-10);
}

#[test]
fn ladder_loses_photons_monotonically() {
    let alpha = Complex64::new(1.2, -0.7);
    for n in 1..8 {
        let out = attenuation_ladder(n, alpha).unwrap();
        for (k, z) in out.physical().iter().enumerate() {
            assert!((z - alpha / ((k + 1) as f64).sqrt()).norm() < 1e-12);
        }
        assert!(mean_photon_number(&out) <= n as f64 * alpha.norm_sqr() + 1e-12);
    }
}
