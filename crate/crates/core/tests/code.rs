mod common;

use common::*;
use num_complex::Complex64;
use paulian::code::{detect_classify, error_span_space, family_deviation, kl_matrix, orthonormalize_errors, Operator};
use paulian::linalg::{orthonormal_basis, projector};
use paulian::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kl_alpha_is_hermitian(seed in any::<u64>(), count in 1usize..6) {
        let mut r = rng(seed);
        let u = random_unitary(8, &mut r);
        let code = conjugated_repetition(&u);
        let errors: Vec<_> = (0..count).map(|_| Operator::Pauli(random_pauli(3, &mut r))).collect();
        let report = kl_matrix(&code, &errors, 1e-9).unwrap();
        prop_assert!(report.alpha.self_adjoint_deviation() < 1e-12);
    }

    #[test]
    fn orthonormalized_family_spans_the_error_images(seed in any::<u64>()) {
        let mut r = rng(seed);
        let code = conjugated_repetition(&random_unitary(8, &mut r));
        let fam = orthonormalize_errors(&code, 1e-9).unwrap();
        prop_assert_eq!(fam.len(), 4);
        prop_assert!(family_deviation(&code, &fam).unwrap() < 1e-10);
        let span = error_span_space(&code, &fam, 1e-9).unwrap();
        prop_assert_eq!(span.dim(), fam.len() * code.dim());
        let mut raw = code.frame().columns();
        for e in code.errors() {
            raw.extend(e.apply(code.frame()).unwrap().columns());
        }
        let direct = orthonormal_basis(&raw, 1e-9).unwrap();
        prop_assert!(projector(&direct).max_diff(&projector(&span)) < 1e-10);
    }

    #[test]
    fn duplicate_errors_merge(seed in any::<u64>(), phase in 0.0f64..std::f64::consts::TAU) {
        let mut r = rng(seed);
        let u = random_unitary(8, &mut r);
        let base = conjugated_repetition(&u);
        let mut errors = base.errors().to_vec();
        let mut names = base.error_names().to_vec();
        if let Operator::Dense(m) = &errors[1] {
            errors.push(Operator::Dense(m.scale(Complex64::from_polar(1.0, phase))));
        }
        names.push("copy".into());
        let code = base.with_errors(errors, names).unwrap();
        let fam = orthonormalize_errors(&code, 1e-9).unwrap();
        prop_assert_eq!(fam.len(), 4);
        prop_assert_eq!(fam.provenance(2), &[1, 3][..]);
    }

    #[test]
    fn detection_class_ignores_global_phase(seed in any::<u64>(), phase in 0.0f64..std::f64::consts::TAU) {
        let mut r = rng(seed);
        let u = random_unitary(8, &mut r);
        let code = conjugated_repetition(&u);
        let p = random_hermitian_pauli(3, &mut r);
        let e = mat_mul(&mat_mul(&u, &dense_pauli(&p)), &u.adjoint());
        let plain = detect_classify(&code, &Operator::Dense(e.clone()), 1e-9).unwrap();
        let turned = detect_classify(&code, &Operator::Dense(e.scale(Complex64::from_polar(1.0, phase))), 1e-9).unwrap();
        prop_assert_eq!(plain.label(), turned.label());
    }
}

#[test]
fn uncorrectable_errors_are_rejected() {
    let mut r = rng(3);
    let u = random_unitary(8, &mut r);
    let base = conjugated_repetition(&u);
    let z = Operator::Dense(mat_mul(&mat_mul(&u, &dense_pauli(&pauli("ZII"))), &u.adjoint()));
    let code = base.with_errors(vec![z], vec!["ZII".into()]).unwrap();
    assert!(matches!(orthonormalize_errors(&code, 1e-9), Err(Error::NotCorrectable { .. })));
}
