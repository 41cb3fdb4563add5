mod common;

use common::*;
use num_complex::Complex64;
use paulian::linalg::{ComplexMatrix, Subspace};
use paulian::measure::{
    controlled_stabilizer, direct_probability, extract_syndrome, gcnot_alternative, gcnot_build, hadamard_conjugate,
    measure_stabilizer, monte_carlo, recover, ChannelTerm,
};
use paulian::synthesis::{synthesize, SynthesisOptions, TableMode};
use paulian::Error;
use proptest::prelude::*;

/// A Paulian operator on a random `2h`-dimensional domain inside `C^8`, acting as the identity elsewhere.
fn random_paulian(h: usize, rng: &mut impl rand::Rng) -> (M, Subspace<f64>) {
    let frame = random_isometry(8, 2 * h, rng);
    let inner = random_unitary(2 * h, rng);
    let signs: Vec<Complex64> = (0..2 * h).map(|i| Complex64::new(if i < h { 1.0 } else { -1.0 }, 0.0)).collect();
    let on = mat_mul(&mat_mul(&inner, &ComplexMatrix::diagonal(&signs)), &inner.adjoint());
    let p_dom = mat_mul(&mat_mul(&frame, &on), &frame.adjoint());
    let outside = &ComplexMatrix::identity(8) - &mat_mul(&frame, &frame.adjoint());
    let domain = Subspace::from_frame(frame, 1e-9).unwrap();
    (&p_dom + &outside, domain)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ancilla_circuits_agree(seed in any::<u64>(), h in 1usize..=4) {
        let mut r = rng(seed);
        let (p, domain) = random_paulian(h, &mut r);
        let g = gcnot_build(&p, &domain, 1e-9).unwrap();
        let alt = gcnot_alternative(&p, &domain, 1e-9).unwrap();
        let cz = controlled_stabilizer(&p, &domain, 1e-9).unwrap();
        prop_assert!(g.coupling.unitary_deviation() < 1e-12);
        prop_assert!(g.coupling.max_diff(&alt.coupling) < 1e-12);
        prop_assert!(g.coupling.max_diff(&hadamard_conjugate(&cz).unwrap()) < 1e-12);
    }

    #[test]
    fn measurement_projects_onto_an_eigenspace(seed in any::<u64>(), h in 1usize..=4) {
        let mut r = rng(seed);
        let (p, domain) = random_paulian(h, &mut r);
        let psi = apply(domain.frame(), &random_state(2 * h, &mut r));
        let (outcome, post) = measure_stabilizer(&psi, &p, &domain, seed, 1e-9).unwrap();
        let expected: Vec<_> = post.iter().map(|a| a * outcome as f64).collect();
        prop_assert!(vec_diff(&apply(&p, &post), &expected) < 1e-10);
        let prob = direct_probability(&psi, &p, &domain, 1e-9).unwrap();
        prop_assert!((0.0..=1.0).contains(&prob));
    }

    #[test]
    fn round_trip_restores_the_state(seed in any::<u64>()) {
        let mut r = rng(seed);
        let code = conjugated_repetition(&random_unitary(8, &mut r));
        let s = synthesize(&code, &SynthesisOptions { mode: TableMode::Minimal, ..Default::default() }).unwrap();
        let psi = apply(code.frame(), &random_state(2, &mut r));
        for member in 0..s.family.len() {
            let corrupted = s.family.apply_vec(member, &psi).unwrap();
            let t = extract_syndrome(&corrupted, &s.group, seed, 1e-9).unwrap();
            prop_assert_eq!(&t, s.map.syndrome_of(member).unwrap());
            let back = recover(&corrupted, &t, &s.table, &s.family, &code, 1e-9).unwrap();
            prop_assert!(overlap(&psi, &back).norm_sqr() > 1.0 - 1e-9);
        }
    }
}

#[test]
fn states_off_the_domain_are_refused() {
    let mut r = rng(5);
    let (p, domain) = random_paulian(2, &mut r);
    let outside = apply(domain.complement().frame(), &random_state(4, &mut r));
    assert!(matches!(measure_stabilizer(&outside, &p, &domain, 0, 1e-9), Err(Error::StateOutsideDomain { .. })));
}

#[test]
fn monte_carlo_is_reproducible_and_validates_channels() {
    let mut r = rng(9);
    let code = conjugated_repetition(&random_unitary(8, &mut r));
    let s = synthesize(&code, &SynthesisOptions::default()).unwrap();
    let channel: Vec<ChannelTerm<f64>> = code
        .errors()
        .iter()
        .zip(code.error_names())
        .map(|(e, name)| ChannelTerm { weight: 1.0 / 3.0, name: name.clone(), operator: e.clone() })
        .collect();
    let a = monte_carlo(&code, &s.group, &s.table, &s.family, &channel, 200, 17, 1e-9).unwrap();
    let b = monte_carlo(&code, &s.group, &s.table, &s.family, &channel, 200, 17, 1e-9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.successes, 200);
    let mut bad = channel.clone();
    bad[0].weight = 0.5;
    assert!(matches!(
        monte_carlo(&code, &s.group, &s.table, &s.family, &bad, 10, 1, 1e-9),
        Err(Error::InvalidChannel(_))
    ));
}
