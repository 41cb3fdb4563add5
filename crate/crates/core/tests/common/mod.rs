#![allow(dead_code)]

use num_complex::Complex64;
use paulian::linalg::{ComplexMatrix, Subspace};
use paulian::pauli::{subgroup_analysis, PauliOp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type M = ComplexMatrix<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..dim).map(|_| gaussian(rng)).collect()
}

pub fn random_state(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v = random_vector(dim, rng);
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= n);
    v
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> M {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Gram–Schmidt on Gaussian columns, written out here rather than borrowed from the crate.
pub fn random_isometry(rows: usize, cols: usize, rng: &mut impl Rng) -> M {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    while basis.len() < cols {
        let mut v = random_vector(rows, rng);
        for b in &basis {
            let p: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
        }
        let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            v.iter_mut().for_each(|a| *a /= n);
            basis.push(v);
        }
    }
    ComplexMatrix::from_columns(rows, &basis).unwrap()
}

pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> M {
    random_isometry(dim, dim, rng)
}

pub fn random_subspace(ambient: usize, dim: usize, rng: &mut impl Rng) -> Subspace<f64> {
    Subspace::from_frame(random_isometry(ambient, dim, rng), 1e-9).unwrap()
}

pub fn mat_mul(a: &M, b: &M) -> M {
    a.matmul(b).unwrap()
}

pub fn apply(m: &M, v: &[Complex64]) -> Vec<Complex64> {
    m.mul_vec(v).unwrap()
}

pub fn overlap(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_diff(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// `i^phase · ⊗ X^x Z^z` assembled from 2×2 blocks.
pub fn dense_pauli(p: &PauliOp) -> M {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let x = ComplexMatrix::from_rows(&[vec![zero, one], vec![one, zero]]).unwrap();
    let z = ComplexMatrix::diagonal(&[one, -one]);
    let mut acc = ComplexMatrix::identity(1);
    for q in 0..p.num_qubits() {
        let mut site = ComplexMatrix::identity(2);
        if p.x_bits()[q] {
            site = mat_mul(&site, &x);
        }
        if p.z_bits()[q] {
            site = mat_mul(&site, &z);
        }
        acc = acc.kron(&site);
    }
    acc.scale(Complex64::i().powu(p.phase() as u32))
}

pub fn random_pauli(n: usize, rng: &mut impl Rng) -> PauliOp {
    let x = (0..n).map(|_| rng.random()).collect();
    let z = (0..n).map(|_| rng.random()).collect();
    PauliOp::from_bits(rng.random_range(0..4), x, z).unwrap()
}

pub fn random_hermitian_pauli(n: usize, rng: &mut impl Rng) -> PauliOp {
    random_pauli(n, rng).with_letter_phase(2 * rng.random_range(0..2u8))
}

/// `n` commuting, independent Hermitian Paulis not generating `−I`, grown greedily.
pub fn random_stabilizer_group(n: usize, rng: &mut impl Rng) -> Vec<PauliOp> {
    let mut gens: Vec<PauliOp> = Vec::new();
    while gens.len() < n {
        let p = random_hermitian_pauli(n, rng);
        if p.is_identity_up_to_phase() || gens.iter().any(|g| g.anticommutes_with(&p).unwrap()) {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(p);
        let report = subgroup_analysis(&trial).unwrap();
        if report.rank == trial.len() && !report.contains_minus_i {
            gens = trial;
        }
    }
    gens
}

pub fn pauli(s: &str) -> PauliOp {
    s.parse().unwrap()
}

/// Three-qubit bit-flip code with single `X` errors, conjugated by `u`.
pub fn conjugated_repetition(u: &M) -> paulian::Code {
    use paulian::code::{Ambient, Operator, QuantumCode};
    let words = vec![u.column(0), u.column(7)];
    let names = ["XII", "IXI", "IIX"];
    let errors =
        names.iter().map(|s| Operator::Dense(mat_mul(&mat_mul(u, &dense_pauli(&pauli(s))), &u.adjoint()))).collect();
    QuantumCode::from_codewords(Ambient::Qubits(3), &words, errors, names.iter().map(|s| s.to_string()).collect(), 1e-9)
        .unwrap()
}
