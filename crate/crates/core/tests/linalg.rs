mod common;

use common::*;
use num_complex::Complex64;
use paulian::linalg::{involution_eigensplit, orthonormal_basis, projector, unitary_extend, ComplexMatrix, Subspace};
use paulian::Error;
use proptest::prelude::*;

fn signed_diagonal(plus: usize, minus: usize) -> M {
    let mut d = vec![Complex64::new(1.0, 0.0); plus];
    d.extend(vec![Complex64::new(-1.0, 0.0); minus]);
    ComplexMatrix::diagonal(&d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projector_is_idempotent_and_self_adjoint(seed in any::<u64>(), ambient in 1usize..12, count in 1usize..6) {
        let mut r = rng(seed);
        let vectors: Vec<_> = (0..count).map(|_| random_vector(ambient, &mut r)).collect();
        let s = orthonormal_basis(&vectors, 1e-9).unwrap();
        prop_assert_eq!(s.dim(), count.min(ambient));
        let p = projector(&s);
        prop_assert!(mat_mul(&p, &p).max_diff(&p) < 1e-12);
        prop_assert!(p.self_adjoint_deviation() < 1e-12);
        prop_assert!((p.trace().re - s.dim() as f64).abs() < 1e-10);
    }

    #[test]
    fn orthonormal_basis_is_idempotent(seed in any::<u64>(), ambient in 2usize..10, count in 1usize..5) {
        let mut r = rng(seed);
        let vectors: Vec<_> = (0..count).map(|_| random_vector(ambient, &mut r)).collect();
        let once = orthonormal_basis(&vectors, 1e-9).unwrap();
        let twice = orthonormal_basis(&once.basis(), 1e-9).unwrap();
        prop_assert!(projector(&once).max_diff(&projector(&twice)) < 1e-12);
        prop_assert!(once.frame().max_diff(twice.frame()) < 1e-12);
    }

    #[test]
    fn dependent_vectors_do_not_raise_the_dimension(seed in any::<u64>(), ambient in 3usize..9) {
        let mut r = rng(seed);
        let a = random_vector(ambient, &mut r);
        let b = random_vector(ambient, &mut r);
        let mix: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * Complex64::new(0.3, -1.2) + y * 2.0).collect();
        let s = orthonormal_basis(&[a, b, mix], 1e-9).unwrap();
        prop_assert_eq!(s.dim(), 2);
    }

    #[test]
    fn eigensplit_resolves_the_identity(seed in any::<u64>(), plus in 0usize..5, minus in 0usize..5) {
        prop_assume!(plus + minus > 0);
        let mut r = rng(seed);
        let dim = plus + minus;
        let u = random_unitary(dim, &mut r);
        let p = mat_mul(&mat_mul(&u, &signed_diagonal(plus, minus)), &u.adjoint());
        let (sp, sm) = involution_eigensplit(&p, 1e-9).unwrap();
        prop_assert_eq!((sp.dim(), sm.dim()), (plus, minus));
        let (pp, pm) = (projector(&sp), projector(&sm));
        prop_assert!((&pp + &pm).max_diff(&ComplexMatrix::identity(dim)) < 1e-10);
        prop_assert!(mat_mul(&pp, &pm).max_abs() < 1e-10);
        prop_assert!((&pp - &pm).max_diff(&p) < 1e-10);
    }

    #[test]
    fn eigensplit_rejects_non_involutions(seed in any::<u64>(), dim in 2usize..6) {
        let mut r = rng(seed);
        let a = random_matrix(dim, dim, &mut r);
        let h = (&a + &a.adjoint()).scale_real(0.5);
        let not_inv = matches!(involution_eigensplit(&h, 1e-9), Err(Error::NotAnInvolution { .. }));
        prop_assert!(not_inv);
        let not_sa = matches!(involution_eigensplit(&a, 1e-9), Err(Error::NotSelfAdjoint { .. }));
        prop_assert!(not_sa);
    }

    #[test]
    fn unitary_extension_restricts_to_the_partial_map(seed in any::<u64>(), ambient in 1usize..10, k in 0usize..10) {
        prop_assume!(k <= ambient);
        let mut r = rng(seed);
        let domain = if k == 0 { Subspace::zero(ambient) } else { random_subspace(ambient, k, &mut r) };
        let images = if k == 0 { ComplexMatrix::zeros(ambient, 0) } else { random_isometry(ambient, k, &mut r) };
        let u = unitary_extend(&domain, &images, 1e-9).unwrap();
        prop_assert!(u.unitary_deviation() < 1e-10);
        prop_assert!(mat_mul(&u, domain.frame()).max_diff(&images) < 1e-10);
    }
}

#[test]
fn unitary_extension_rejects_non_isometries() {
    let mut r = rng(7);
    let domain = random_subspace(6, 2, &mut r);
    let images = random_matrix(6, 2, &mut r);
    assert!(matches!(unitary_extend(&domain, &images, 1e-9), Err(Error::NotIsometry { .. })));
}

#[test]
fn single_precision_projectors() {
    let mut r = rng(11);
    let frame = random_isometry(6, 3, &mut r).cast::<f32>();
    let s = Subspace::from_frame(frame, 1e-5f32).unwrap();
    let p = projector(&s);
    assert!(p.matmul(&p).unwrap().max_diff(&p) < 1e-5);
}
