mod common;

use std::collections::HashSet;

use common::*;
use num_complex::Complex64;
use paulian::linalg::ComplexMatrix;
use paulian::pauli::{
    comm_signature, parse_pauli, signature_product, stabilized_state, subgroup_analysis, PauliOp, SignatureTuple,
};
use proptest::prelude::*;
use rand::Rng as _;

fn all_paulis(n: usize) -> Vec<PauliOp> {
    (0..1usize << (2 * n))
        .map(|bits| {
            let x = (0..n).map(|q| bits >> q & 1 == 1).collect();
            let z = (0..n).map(|q| bits >> (n + q) & 1 == 1).collect();
            PauliOp::from_bits(0, x, z).unwrap()
        })
        .collect()
}

fn key(m: &M) -> Vec<(i64, i64)> {
    m.data().iter().map(|c| ((c.re * 1e6).round() as i64, (c.im * 1e6).round() as i64)).collect()
}

/// Closure of the generators as dense matrices; returns whether `−I` appears.
fn dense_contains_minus_identity(gens: &[PauliOp]) -> bool {
    let dim = 1usize << gens[0].num_qubits();
    let id: M = ComplexMatrix::identity(dim);
    let minus = key(&id.scale(Complex64::new(-1.0, 0.0)));
    let dense: Vec<M> = gens.iter().map(dense_pauli).collect();
    let mut seen = HashSet::from([key(&id)]);
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in &dense {
            let next = mat_mul(&m, g);
            if seen.insert(key(&next)) {
                frontier.push(next);
            }
        }
    }
    seen.contains(&minus)
}

fn signature(len: usize) -> impl Strategy<Value = SignatureTuple> {
    (0..1usize << len).prop_map(move |i| SignatureTuple::from_index(len, i))
}

#[test]
fn products_match_dense_products_exhaustively() {
    for n in 1..=3 {
        let paulis = all_paulis(n);
        let dense: Vec<M> = paulis.iter().map(dense_pauli).collect();
        for (a, da) in paulis.iter().zip(&dense) {
            for (b, db) in paulis.iter().zip(&dense) {
                let ab = a.mul(b).unwrap();
                assert!(dense_pauli(&ab).max_diff(&mat_mul(da, db)) < 1e-12, "{a}·{b}");
                let anti = (&mat_mul(da, db) + &mat_mul(db, da)).max_abs() < 1e-12;
                assert_eq!(a.anticommutes_with(b).unwrap(), anti);
            }
        }
    }
}

#[test]
fn library_matrices_agree_with_the_oracle() {
    for n in 1..=3 {
        for p in all_paulis(n) {
            for k in 0..4 {
                let q = p.with_letter_phase(k);
                assert!(q.to_matrix::<f64>().max_diff(&dense_pauli(&q)) < 1e-15);
            }
        }
    }
}

#[test]
fn parsing_round_trips() {
    for n in 1..=3 {
        for p in all_paulis(n) {
            for k in 0..4 {
                let q = p.with_letter_phase(k);
                assert_eq!(parse_pauli(&q.to_string()).unwrap(), q);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn products_are_phase_exact(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let (a, b) = (random_pauli(n, &mut r), random_pauli(n, &mut r));
        let ab = a.mul(&b).unwrap();
        prop_assert!(dense_pauli(&ab).max_diff(&mat_mul(&dense_pauli(&a), &dense_pauli(&b))) < 1e-12);
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let (a, b, c) = (random_pauli(n, &mut r), random_pauli(n, &mut r), random_pauli(n, &mut r));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn signatures_match_dense_commutation(seed in any::<u64>(), n in 1usize..=5, count in 1usize..6) {
        let mut r = rng(seed);
        let p = random_pauli(n, &mut r);
        let gens: Vec<PauliOp> = (0..count).map(|_| random_pauli(n, &mut r)).collect();
        let sig = comm_signature(&p, &gens).unwrap();
        let dp = dense_pauli(&p);
        for (j, g) in gens.iter().enumerate() {
            let dg = dense_pauli(g);
            let s = sig.get(j) as f64;
            prop_assert!(mat_mul(&dp, &dg).max_diff(&mat_mul(&dg, &dp).scale_real(s)) < 1e-12);
        }
    }

    #[test]
    fn signatures_of_products_multiply(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let gens: Vec<PauliOp> = (0..n).map(|_| random_pauli(n, &mut r)).collect();
        let (p, q) = (random_pauli(n, &mut r), random_pauli(n, &mut r));
        let lhs = comm_signature(&p.mul(&q).unwrap(), &gens).unwrap();
        let rhs = signature_product(&comm_signature(&p, &gens).unwrap(), &comm_signature(&q, &gens).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn signature_product_is_an_elementary_abelian_group(a in signature(5), b in signature(5), c in signature(5)) {
        let e = SignatureTuple::all_plus(5);
        let ab = signature_product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &signature_product(&b, &a).unwrap());
        prop_assert_eq!(
            signature_product(&ab, &c).unwrap(),
            signature_product(&a, &signature_product(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(signature_product(&a, &e).unwrap(), a.clone());
        prop_assert_eq!(signature_product(&a, &a).unwrap(), e);
        prop_assert_eq!(SignatureTuple::from_index(5, a.index()), a);
    }

    #[test]
    fn stabilized_state_is_fixed(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let gens = random_stabilizer_group(n, &mut r);
        let s: Vec<Complex64> = stabilized_state(&gens).unwrap();
        prop_assert!((overlap(&s, &s).re - 1.0).abs() < 1e-12);
        for g in &gens {
            prop_assert!(vec_diff(&apply(&dense_pauli(g), &s), &s) < 1e-12);
        }
    }

    #[test]
    fn minus_identity_test_matches_dense_closure(seed in any::<u64>(), n in 1usize..=3, count in 1usize..=4) {
        let mut r = rng(seed);
        let gens: Vec<PauliOp> = (0..count)
            .map(|_| if r.random_bool(0.5) { random_hermitian_pauli(n, &mut r) } else { random_pauli(n, &mut r) })
            .collect();
        let report = subgroup_analysis(&gens).unwrap();
        prop_assert_eq!(report.contains_minus_i, dense_contains_minus_identity(&gens));
        prop_assert_eq!(report.contains_minus_i, !report.linearly_independent);
    }

    #[test]
    fn minus_identity_equivalence_up_to_five_qubits(seed in any::<u64>(), n in 1usize..=5, count in 1usize..=7) {
        let mut r = rng(seed);
        let gens: Vec<PauliOp> = (0..count).map(|_| random_hermitian_pauli(n, &mut r)).collect();
        let report = subgroup_analysis(&gens).unwrap();
        prop_assert_eq!(report.contains_minus_i, !report.linearly_independent);
        prop_assert_eq!(report.phaseless_order, 1u128 << report.rank);
    }
}
