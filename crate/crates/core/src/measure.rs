//! Ancilla-coupled syndrome measurement, recovery, and Monte Carlo round trips.
//!
//! The ancilla is the least significant tensor factor. Its basis index 0 is
//! `|1⟩_A` (the `+1` eigenstate of `Z_A`) and index 1 is `|−1⟩_A`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::code::{Operator, OrthonormalFamily, QuantumCode};
use crate::error::{Error, Result};
use crate::linalg::{inner, norm, normalize, polar_isometry, unitary_extend, ComplexMatrix, Subspace};
use crate::pauli::SignatureTuple;
use crate::scalar::{cre, Real, C};
use crate::synthesis::{verify_paulian, InvolutionKind, PaulianGroup, SyndromeTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Readout {
    /// Measure `Z_A` after the generalized CNOT.
    ZAfterGcnot,
    /// Measure `X_A` after the controlled stabilizer with the ancilla prepared in `|+⟩_A`.
    XAfterControlled,
}

#[derive(Clone, Debug)]
pub struct AncillaCircuit<R: Real> {
    pub system_dim: usize,
    /// Unitary on `system ⊗ ancilla`.
    pub coupling: ComplexMatrix<R>,
    pub readout: Readout,
}

fn pauli_x<R: Real>() -> ComplexMatrix<R> {
    ComplexMatrix::from_fn(2, 2, |i, j| if i != j { C::one() } else { C::zero() })
}

fn hadamard<R: Real>() -> ComplexMatrix<R> {
    let s = R::FRAC_1_SQRT_2();
    ComplexMatrix::from_fn(2, 2, |i, j| if i == 1 && j == 1 { cre(-s) } else { cre(s) })
}

fn ket_bra<R: Real>(v: [C<R>; 2]) -> ComplexMatrix<R> {
    ComplexMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj())
}

/// Projectors onto the `±1` eigenspaces of `p` within `domain` and onto the domain's complement.
struct Split<R: Real> {
    plus: ComplexMatrix<R>,
    minus: ComplexMatrix<R>,
    outside: ComplexMatrix<R>,
}

fn split<R: Real>(p: &ComplexMatrix<R>, domain: &Subspace<R>, tol: R) -> Result<Split<R>> {
    let report = verify_paulian(p, domain, false, tol)?;
    if !report.paulian || report.kind != InvolutionKind::Involution {
        return Err(Error::NotPaulian(format!("{} with eigenspace dimensions {:?}", report.kind, report.eig_dims)));
    }
    let d = domain.frame();
    let sa = d.adjoint_mul(&p.matmul(d)?)?.self_adjoint_deviation();
    if sa > tol {
        return Err(Error::NotPaulian(format!("not self-adjoint on its domain (deviation {:e})", sa.to_f64_lossy())));
    }
    let dim = p.rows();
    let restricted_p = d.matmul(&d.adjoint_mul(&p.matmul(d)?)?)?.matmul(&d.adjoint())?;
    let on_domain = domain.projector();
    let half = R::lit(0.5);
    Ok(Split {
        plus: (&on_domain + &restricted_p).scale_real(half),
        minus: (&on_domain - &restricted_p).scale_real(half),
        outside: &ComplexMatrix::identity(dim) - &on_domain,
    })
}

/// `P` on the domain, identity on its complement.
fn extended<R: Real>(s: &Split<R>) -> ComplexMatrix<R> {
    &(&s.plus - &s.minus) + &s.outside
}

/// `Π₋⊗X_A + Π₊⊗I_A + Π_⊥⊗I_A`.
pub fn gcnot_build<R: Real>(p: &ComplexMatrix<R>, domain: &Subspace<R>, tol: R) -> Result<AncillaCircuit<R>> {
    let s = split(p, domain, tol)?;
    let id2 = ComplexMatrix::identity(2);
    let coupling = &s.minus.kron(&pauli_x()) + &(&s.plus + &s.outside).kron(&id2);
    Ok(AncillaCircuit { system_dim: p.rows(), coupling, readout: Readout::ZAfterGcnot })
}

/// `I⊗|+⟩⟨+| + P⊗|−⟩⟨−|`, with `P` completed by the identity off the domain.
pub fn gcnot_alternative<R: Real>(p: &ComplexMatrix<R>, domain: &Subspace<R>, tol: R) -> Result<AncillaCircuit<R>> {
    let s = split(p, domain, tol)?;
    let h = R::FRAC_1_SQRT_2();
    let plus = ket_bra([cre(h), cre(h)]);
    let minus = ket_bra([cre(h), cre(-h)]);
    let id = ComplexMatrix::identity(p.rows());
    let coupling = &id.kron(&plus) + &extended(&s).kron(&minus);
    Ok(AncillaCircuit { system_dim: p.rows(), coupling, readout: Readout::ZAfterGcnot })
}

/// `P⊗|−1⟩⟨−1| + I⊗|1⟩⟨1|`.
pub fn controlled_stabilizer<R: Real>(p: &ComplexMatrix<R>, domain: &Subspace<R>, tol: R) -> Result<AncillaCircuit<R>> {
    let s = split(p, domain, tol)?;
    let id = ComplexMatrix::identity(p.rows());
    let up = ket_bra([C::one(), C::zero()]);
    let down = ket_bra([C::zero(), C::one()]);
    let coupling = &extended(&s).kron(&down) + &id.kron(&up);
    Ok(AncillaCircuit { system_dim: p.rows(), coupling, readout: Readout::XAfterControlled })
}

/// `(I⊗H_A)·c·(I⊗H_A)`.
pub fn hadamard_conjugate<R: Real>(c: &AncillaCircuit<R>) -> Result<ComplexMatrix<R>> {
    let hh = ComplexMatrix::identity(c.system_dim).kron(&hadamard());
    hh.matmul(&c.coupling)?.matmul(&hh)
}

/// System components for readout `+1` and `−1`.
pub type Branches<R> = (Vec<C<R>>, Vec<C<R>>);

impl<R: Real> AncillaCircuit<R> {
    /// Runs the circuit on `state ⊗ |1⟩_A` (or `|+⟩_A` for the controlled form)
    /// and returns the unnormalized system components for readout `+1` and `−1`.
    pub fn branches(&self, state: &[C<R>]) -> Result<Branches<R>> {
        let n = self.system_dim;
        if state.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: state.len() });
        }
        let h = R::FRAC_1_SQRT_2();
        let mut joint = vec![C::zero(); 2 * n];
        for (i, &a) in state.iter().enumerate() {
            match self.readout {
                Readout::ZAfterGcnot => joint[2 * i] = a,
                Readout::XAfterControlled => {
                    joint[2 * i] = a * h;
                    joint[2 * i + 1] = a * h;
                }
            }
        }
        let out = self.coupling.mul_vec(&joint)?;
        let mut plus = vec![C::zero(); n];
        let mut minus = vec![C::zero(); n];
        for i in 0..n {
            let (a0, a1) = (out[2 * i], out[2 * i + 1]);
            match self.readout {
                Readout::ZAfterGcnot => {
                    plus[i] = a0;
                    minus[i] = a1;
                }
                Readout::XAfterControlled => {
                    plus[i] = (a0 + a1) * h;
                    minus[i] = (a0 - a1) * h;
                }
            }
        }
        Ok((plus, minus))
    }
}

fn draw_outcome<R: Real>(plus: Vec<C<R>>, minus: Vec<C<R>>, rng: &mut impl Rng, tol: R) -> Result<(i8, Vec<C<R>>)> {
    let p_plus = norm(&plus).powi(2);
    let p_minus = norm(&minus).powi(2);
    let total = p_plus + p_minus;
    let prob = (p_plus / total).to_f64_lossy();
    let outcome = if prob >= 1.0 - tol.to_f64_lossy() {
        1
    } else if prob <= tol.to_f64_lossy() {
        -1
    } else if rng.random::<f64>() < prob {
        1
    } else {
        -1
    };
    let mut post = if outcome == 1 { plus } else { minus };
    let r = normalize(&mut post);
    if r.is_nan() || r <= R::zero() {
        return Err(Error::InvalidInput("measurement branch has zero norm".into()));
    }
    Ok((outcome, post))
}

/// Ancilla-mediated projective measurement of `p`, sampled with a generator seeded from `rng_seed`.
pub fn measure_stabilizer<R: Real>(
    state: &[C<R>],
    p: &ComplexMatrix<R>,
    domain: &Subspace<R>,
    rng_seed: u64,
    tol: R,
) -> Result<(i8, Vec<C<R>>)> {
    let distance = domain.distance(state);
    if distance > tol.sqrt() {
        return Err(Error::StateOutsideDomain { distance: distance.to_f64_lossy() });
    }
    let circuit = gcnot_build(p, domain, tol)?;
    let (plus, minus) = circuit.branches(state)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    draw_outcome(plus, minus, &mut rng, tol)
}

/// Born probability of outcome `+1` for `p` measured directly on `state`.
pub fn direct_probability<R: Real>(state: &[C<R>], p: &ComplexMatrix<R>, domain: &Subspace<R>, tol: R) -> Result<f64> {
    let s = split(p, domain, tol)?;
    Ok(norm(&s.plus.mul_vec(state)?).powi(2).to_f64_lossy() / norm(state).powi(2).to_f64_lossy())
}

/// Measures every `Z_i^S` in turn. Each GCNOT is applied through its action
/// on `ψ⊗|1⟩_A`, namely `Π₋ψ⊗|−1⟩_A + (I−Π₋)ψ⊗|1⟩_A`.
#[derive(Clone, Debug)]
pub struct SyndromeExtractor<R: Real> {
    domain: Subspace<R>,
    minus: Vec<ComplexMatrix<R>>,
    tol: R,
}

impl<R: Real> SyndromeExtractor<R> {
    pub fn new(group: &PaulianGroup<R>, tol: R) -> Result<Self> {
        let d = &group.domain;
        let on_domain = if d.dim() == d.ambient_dim() { ComplexMatrix::identity(d.dim()) } else { d.projector() };
        let half = R::lit(0.5);
        let minus = group.z_gens.iter().map(|z| (&on_domain - z).scale_real(half)).collect();
        Ok(Self { domain: group.domain.clone(), minus, tol })
    }

    pub fn extract(&self, state: &[C<R>], rng: &mut impl Rng) -> Result<(SignatureTuple, Vec<C<R>>)> {
        let distance = self.domain.distance(state);
        if distance > self.tol.sqrt() {
            return Err(Error::StateOutsideDomain { distance: distance.to_f64_lossy() });
        }
        let mut psi = state.to_vec();
        let mut comps = Vec::with_capacity(self.minus.len());
        for pm in &self.minus {
            let minus = pm.mul_vec(&psi)?;
            let plus: Vec<C<R>> = psi.iter().zip(&minus).map(|(a, b)| *a - *b).collect();
            let (outcome, post) = draw_outcome(plus, minus, rng, self.tol)?;
            comps.push(outcome);
            psi = post;
        }
        Ok((SignatureTuple::new(comps)?, psi))
    }
}

pub fn extract_syndrome<R: Real>(
    state: &[C<R>],
    group: &PaulianGroup<R>,
    rng_seed: u64,
    tol: R,
) -> Result<SignatureTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    SyndromeExtractor::new(group, tol)?.extract(state, &mut rng).map(|(t, _)| t)
}

/// Recovery for one syndrome: the adjoint of the polar isometry of `F_(t)·C`,
/// completed to a unitary only when a state has support off `F_(t)·H_C`.
#[derive(Debug)]
pub struct Recovery<R: Real> {
    isometry: ComplexMatrix<R>,
    code_frame: ComplexMatrix<R>,
    full: OnceLock<ComplexMatrix<R>>,
}

impl<R: Real> Recovery<R> {
    pub fn new(code: &QuantumCode<R>, fam: &OrthonormalFamily<R>, member: usize) -> Result<Self> {
        let image = fam.apply(member, code.frame())?;
        Ok(Self { isometry: polar_isometry(&image)?, code_frame: code.frame().clone(), full: OnceLock::new() })
    }

    /// The full unitary recovery operator.
    pub fn unitary(&self) -> Result<&ComplexMatrix<R>> {
        if let Some(u) = self.full.get() {
            return Ok(u);
        }
        let domain = Subspace::from_frame(self.isometry.clone(), R::lit(1e-6))?;
        let u = unitary_extend(&domain, &self.code_frame, R::lit(1e-6))?;
        Ok(self.full.get_or_init(|| u))
    }

    pub fn apply(&self, state: &[C<R>], tol: R) -> Result<Vec<C<R>>> {
        let coords = self.isometry.adjoint().mul_vec(state)?;
        let inside = self.isometry.mul_vec(&coords)?;
        let residual: Vec<C<R>> = state.iter().zip(&inside).map(|(a, b)| *a - *b).collect();
        if norm(&residual) <= tol {
            return self.code_frame.mul_vec(&coords);
        }
        self.unitary()?.mul_vec(state)
    }
}

pub fn recover<R: Real>(
    state: &[C<R>],
    syndrome: &SignatureTuple,
    table: &SyndromeTable<R>,
    fam: &OrthonormalFamily<R>,
    code: &QuantumCode<R>,
    tol: R,
) -> Result<Vec<C<R>>> {
    let member = table.entry(syndrome).error.ok_or_else(|| Error::UncorrectableSyndrome(syndrome.to_string()))?;
    Recovery::new(code, fam, member)?.apply(state, tol)
}

/// One error in a sampling channel.
#[derive(Clone, Debug)]
pub struct ChannelTerm<R: Real> {
    pub weight: f64,
    pub name: String,
    pub operator: Operator<R>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub injected_error_index: usize,
    /// `None` when the error annihilated the state.
    pub syndrome: Option<SignatureTuple>,
    pub recovered_fidelity: f64,
    pub success: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloStats {
    pub trials: u64,
    pub successes: u64,
    pub sampling_failures: u64,
    /// Successes over trials that were not sampling failures.
    pub success_rate: f64,
    pub mean_fidelity: f64,
    pub per_syndrome_counts: BTreeMap<String, u64>,
    pub per_error_counts: BTreeMap<String, u64>,
    pub records: Vec<TrialRecord>,
}

/// Fidelity above which a round trip counts as a success.
pub const SUCCESS_FIDELITY: f64 = 1.0 - 1e-6;

fn validate_channel<R: Real>(channel: &[ChannelTerm<R>]) -> Result<WeightedIndex<f64>> {
    if channel.is_empty() {
        return Err(Error::InvalidChannel("channel has no terms".into()));
    }
    if let Some(t) = channel.iter().find(|t| !t.weight.is_finite() || t.weight < 0.0) {
        return Err(Error::InvalidChannel(format!("weight of {} is {}", t.name, t.weight)));
    }
    let total: f64 = channel.iter().map(|t| t.weight).sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidChannel(format!("weights sum to {total}")));
    }
    WeightedIndex::new(channel.iter().map(|t| t.weight)).map_err(|e| Error::InvalidChannel(e.to_string()))
}

fn random_logical<R: Real>(code: &QuantumCode<R>, rng: &mut impl Rng) -> Result<Vec<C<R>>> {
    let mut coords: Vec<C<R>> = (0..code.dim())
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C::new(R::lit(re), R::lit(im))
        })
        .collect();
    normalize(&mut coords);
    code.frame().mul_vec(&coords)
}

/// Independent trials of encode, error, syndrome extraction, and recovery.
///
/// Trial `i` draws from a ChaCha8 stream selected by `(seed, i)`, so results
/// do not depend on scheduling.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo<R: Real>(
    code: &QuantumCode<R>,
    group: &PaulianGroup<R>,
    table: &SyndromeTable<R>,
    fam: &OrthonormalFamily<R>,
    channel: &[ChannelTerm<R>],
    trials: u64,
    seed: u64,
    tol: R,
) -> Result<MonteCarloStats> {
    let sampler = validate_channel(channel)?;
    let extractor = SyndromeExtractor::new(group, tol)?;
    let recoveries: Vec<OnceLock<Recovery<R>>> = (0..table.entries().len()).map(|_| OnceLock::new()).collect();
    let recovery_for = |t: &SignatureTuple| -> Result<Option<&Recovery<R>>> {
        let Some(member) = table.entry(t).error else { return Ok(None) };
        let cell = &recoveries[t.index()];
        if let Some(r) = cell.get() {
            return Ok(Some(r));
        }
        let r = Recovery::new(code, fam, member)?;
        Ok(Some(cell.get_or_init(|| r)))
    };
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<TrialRecord> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let psi = random_logical(code, &mut rng)?;
            let which = sampler.sample(&mut rng);
            let mut corrupted = channel[which].operator.apply_vec(&psi)?;
            if normalize(&mut corrupted) < R::lit(1e-12) {
                return Ok(TrialRecord {
                    trial_index: trial,
                    injected_error_index: which,
                    syndrome: None,
                    recovered_fidelity: 0.0,
                    success: false,
                });
            }
            let (syndrome, post) = extractor.extract(&corrupted, &mut rng)?;
            let restored = match recovery_for(&syndrome)? {
                Some(r) => r.apply(&post, tol.sqrt())?,
                None => post,
            };
            let fidelity = inner(&psi, &restored).norm_sqr().to_f64_lossy().min(1.0);
            Ok(TrialRecord {
                trial_index: trial,
                injected_error_index: which,
                syndrome: Some(syndrome),
                recovered_fidelity: fidelity,
                success: fidelity > SUCCESS_FIDELITY,
            })
        })
        .collect::<Result<_>>()?;
    let mut per_syndrome_counts = BTreeMap::new();
    let mut per_error_counts = BTreeMap::new();
    let mut successes = 0;
    let mut failures = 0;
    let mut fidelity_sum = 0.0;
    for r in &records {
        *per_error_counts.entry(channel[r.injected_error_index].name.clone()).or_insert(0) += 1;
        match &r.syndrome {
            Some(t) => {
                *per_syndrome_counts.entry(t.to_string()).or_insert(0) += 1;
                fidelity_sum += r.recovered_fidelity;
                successes += u64::from(r.success);
            }
            None => failures += 1,
        }
    }
    let valid = trials - failures;
    Ok(MonteCarloStats {
        trials,
        successes,
        sampling_failures: failures,
        success_rate: if valid == 0 { 0.0 } else { successes as f64 / valid as f64 },
        mean_fidelity: if valid == 0 { 0.0 } else { fidelity_sum / valid as f64 },
        per_syndrome_counts,
        per_error_counts,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Ambient;
    use crate::linalg::basis_vector;
    use crate::pauli::PauliOp;
    use crate::synthesis::{synthesize, SynthesisOptions};

    const EPS: f64 = 1e-9;

    fn z() -> ComplexMatrix<f64> {
        ComplexMatrix::diagonal(&[cre(1.0), cre(-1.0)])
    }

    #[test]
    fn gcnot_of_identity_and_minus_identity() {
        let full = Subspace::full(3);
        let id = ComplexMatrix::<f64>::identity(3);
        let c = gcnot_build(&id, &full, EPS).unwrap();
        assert!(c.coupling.approx_eq(&ComplexMatrix::identity(6), EPS));
        let c = gcnot_build(&id.scale_real(-1.0), &full, EPS).unwrap();
        assert!(c.coupling.approx_eq(&ComplexMatrix::identity(3).kron(&pauli_x()), EPS));
    }

    #[test]
    fn controlled_z_is_the_two_qubit_cz() {
        let c = controlled_stabilizer(&z(), &Subspace::full(2), EPS).unwrap();
        let cz = ComplexMatrix::diagonal(&[cre(1.0), cre(1.0), cre(1.0), cre(-1.0)]);
        assert!(c.coupling.approx_eq(&cz, EPS));
        let g = gcnot_build(&z(), &Subspace::full(2), EPS).unwrap();
        assert!(hadamard_conjugate(&c).unwrap().approx_eq(&g.coupling, 1e-12));
    }

    #[test]
    fn non_paulian_rejected() {
        let d = ComplexMatrix::<f64>::diagonal(&[cre(1.0), cre(1.0), cre(-1.0)]);
        assert!(matches!(gcnot_build(&d, &Subspace::full(3), EPS), Err(Error::NotPaulian(_))));
    }

    #[test]
    fn gcnot_on_partial_domain_is_unitary_and_forms_agree() {
        let p = PauliOp::from_letters(&[crate::pauli::Letter::Z, crate::pauli::Letter::I]).to_matrix::<f64>();
        let dom = Subspace::span(4, &[basis_vector(4, 0), basis_vector(4, 2)], EPS).unwrap();
        let a = gcnot_build(&p, &dom, EPS).unwrap();
        let b = gcnot_alternative(&p, &dom, EPS).unwrap();
        assert!(a.coupling.unitary_deviation() < 1e-12);
        assert!(a.coupling.approx_eq(&b.coupling, 1e-12));
    }

    #[test]
    fn deterministic_measurement_on_eigenstates() {
        let full = Subspace::full(2);
        let (o, post) = measure_stabilizer(&basis_vector(2, 1), &z(), &full, 3, EPS).unwrap();
        assert_eq!(o, -1);
        assert!((post[1].norm() - 1.0).abs() < EPS);
        let half = Subspace::span(4, &[basis_vector(4, 0)], EPS).unwrap();
        assert!(matches!(
            measure_stabilizer(&basis_vector(4, 3), &ComplexMatrix::identity(4), &half, 0, EPS),
            Err(Error::StateOutsideDomain { .. })
        ));
    }

    fn rep3() -> QuantumCode<f64> {
        let words = vec![basis_vector(8, 0), basis_vector(8, 7)];
        let names = ["XII", "IXI", "IIX"];
        let ops = names.iter().map(|s| Operator::Pauli(s.parse().unwrap())).collect();
        QuantumCode::from_codewords(Ambient::Qubits(3), &words, ops, names.iter().map(|s| s.to_string()).collect(), EPS)
            .unwrap()
    }

    #[test]
    fn repetition_round_trip_and_monte_carlo() {
        let code = rep3();
        let s = synthesize(&code, &SynthesisOptions::default()).unwrap();
        let psi = code.frame().mul_vec(&[cre(0.6), C::new(0.0, 0.8)]).unwrap();
        let x1 = code.errors()[0].apply_vec(&psi).unwrap();
        let t = extract_syndrome(&x1, &s.group, 1, EPS).unwrap();
        assert_eq!(&t, s.map.syndrome_of(1).unwrap());
        let back = recover(&x1, &t, &s.table, &s.family, &code, EPS).unwrap();
        assert!((inner(&psi, &back).norm() - 1.0).abs() < EPS);

        let channel = vec![ChannelTerm { weight: 1.0, name: "XII".into(), operator: code.errors()[0].clone() }];
        let stats = monte_carlo(&code, &s.group, &s.table, &s.family, &channel, 200, 7, EPS).unwrap();
        assert_eq!(stats.success_rate, 1.0);
        let again = monte_carlo(&code, &s.group, &s.table, &s.family, &channel, 200, 7, EPS).unwrap();
        assert_eq!(stats, again);
    }

    #[test]
    fn weight_two_error_fails_honestly() {
        let code = rep3();
        let s = synthesize(&code, &SynthesisOptions::default()).unwrap();
        let channel =
            vec![ChannelTerm { weight: 1.0, name: "XXI".into(), operator: Operator::Pauli("XXI".parse().unwrap()) }];
        let stats = monte_carlo(&code, &s.group, &s.table, &s.family, &channel, 50, 1, EPS).unwrap();
        assert!(stats.success_rate < 1.0);
    }

    #[test]
    fn channel_validation() {
        let code = rep3();
        let s = synthesize(&code, &SynthesisOptions::default()).unwrap();
        let bad = vec![ChannelTerm { weight: 0.5, name: "I".into(), operator: Operator::Identity }];
        assert!(matches!(
            monte_carlo(&code, &s.group, &s.table, &s.family, &bad, 1, 1, EPS),
            Err(Error::InvalidChannel(_))
        ));
        let neg = vec![
            ChannelTerm { weight: 1.5, name: "I".into(), operator: Operator::Identity },
            ChannelTerm { weight: -0.5, name: "I".into(), operator: Operator::Identity },
        ];
        assert!(matches!(
            monte_carlo(&code, &s.group, &s.table, &s.family, &neg, 1, 1, EPS),
            Err(Error::InvalidChannel(_))
        ));
    }

    #[test]
    fn excess_syndrome_is_uncorrectable() {
        let words = vec![basis_vector(8, 0), basis_vector(8, 7)];
        let code = QuantumCode::from_codewords(Ambient::Qubits(3), &words, vec![], vec![], EPS).unwrap();
        let s = synthesize(&code, &SynthesisOptions::default()).unwrap();
        let t = SignatureTuple::new(vec![-1]).unwrap();
        assert!(matches!(
            recover(&basis_vector(8, 1), &t, &s.table, &s.family, &code, EPS),
            Err(Error::UncorrectableSyndrome(_))
        ));
    }
}
