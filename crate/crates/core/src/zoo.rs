//! Code constructions: concatenation, generalized repetition codes, and truncated bosonic codes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::code::{Ambient, Operator, QuantumCode};
use crate::error::{Error, Result};
use crate::linalg::{basis_vector, normalize, ComplexMatrix, Subspace};
use crate::pauli::{fix_global_phase, Letter, PauliOp};
use crate::scalar::{cre, i_pow, Real, C};
use crate::synthesis::{synthesize, verify_paulian, PaulianReport, Synthesis, SynthesisOptions, TableMode};

/// Linear combination of Pauli strings, kept with letter phases folded into the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<R: Real> {
    n: usize,
    terms: Vec<(C<R>, PauliOp)>,
}

impl<R: Real> PauliSum<R> {
    pub fn new(n: usize, terms: Vec<(C<R>, PauliOp)>) -> Result<Self> {
        let mut merged: BTreeMap<PauliOp, C<R>> = BTreeMap::new();
        for (c, p) in terms {
            if p.num_qubits() != n {
                return Err(Error::LengthMismatch { left: p.num_qubits(), right: n });
            }
            let plain = p.with_letter_phase(0);
            let coef = c * i_pow::<R>(p.letter_phase());
            let slot = merged.entry(plain).or_insert_with(C::zero);
            *slot = *slot + coef;
        }
        let cutoff = R::epsilon() * R::lit(16.0);
        let terms = merged.into_iter().filter(|(_, c)| c.norm() > cutoff).map(|(p, c)| (c, p)).collect();
        Ok(Self { n, terms })
    }

    pub fn from_pauli(p: &PauliOp) -> Self {
        Self::new(p.num_qubits(), vec![(C::one(), p.clone())]).expect("consistent length")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pauli(&PauliOp::identity(n))
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// `(coefficient, plain letter string)` pairs in canonical order.
    pub fn terms(&self) -> &[(C<R>, PauliOp)] {
        &self.terms
    }

    /// The single Pauli string (with its phase) when the sum is one term with a unit-phase coefficient.
    pub fn as_pauli(&self, tol: R) -> Option<PauliOp> {
        let [(c, p)] = self.terms.as_slice() else { return None };
        (0..4u8).find(|&k| (*c - i_pow::<R>(k)).norm() <= tol).map(|k| p.with_letter_phase(k))
    }

    pub fn to_matrix(&self) -> ComplexMatrix<R> {
        let dim = 1usize << self.n;
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (c, p) in &self.terms {
            acc = &acc + &p.to_matrix().scale(*c);
        }
        acc
    }

    /// Expansion `Σ_P tr(P†A)/2^n · P` of a `2^n × 2^n` matrix.
    pub fn from_matrix(a: &ComplexMatrix<R>) -> Result<Self> {
        let dim = a.rows();
        if !a.is_square() || !dim.is_power_of_two() {
            return Err(Error::InvalidInput(format!("{}×{} is not a qubit operator", a.rows(), a.cols())));
        }
        let n = dim.trailing_zeros() as usize;
        let scale = R::one() / R::from_usize(dim).expect("dimension fits");
        let mut terms = Vec::new();
        for code in 0..4usize.pow(n as u32) {
            let mut c = code;
            let letters: Vec<Letter> = (0..n)
                .map(|_| {
                    let l = [Letter::I, Letter::X, Letter::Y, Letter::Z][c % 4];
                    c /= 4;
                    l
                })
                .collect();
            let p = PauliOp::from_letters(&letters);
            let coef = p.adjoint().apply_columns(a)?.trace() * scale;
            terms.push((coef, p));
        }
        Self::new(n, terms)
    }

    pub fn scale(&self, s: C<R>) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(c, p)| (*c * s, p.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                terms.push((*a * *b, p.mul(q)?));
            }
        }
        Self::new(self.n, terms)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                terms.push((*a * *b, p.tensor(q)));
            }
        }
        Self::new(self.n + other.n, terms).expect("consistent length")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.n, terms)
    }

    /// Whether `self·other = other·self` as operators, from the symbolic expansion.
    pub fn commutes_with(&self, other: &Self, tol: R) -> Result<bool> {
        let diff = self.mul(other)?.add(&other.mul(self)?.scale(cre(-R::one())))?;
        Ok(diff.terms.iter().all(|(c, _)| c.norm() <= tol))
    }
}

/// A qubit code with `n − k` stabilizer generators and logical `X̄_i`, `Z̄_i`.
#[derive(Clone, Debug)]
pub struct BinaryCode<R: Real> {
    pub n: usize,
    pub k: usize,
    pub stabilizers: Vec<PauliSum<R>>,
    pub logical_x: Vec<PauliSum<R>>,
    pub logical_z: Vec<PauliSum<R>>,
    /// A lower bound on the distance, never claimed exact for composed codes.
    pub distance_bound: Option<usize>,
}

impl<R: Real> BinaryCode<R> {
    pub fn new(
        n: usize,
        stabilizers: Vec<PauliSum<R>>,
        logical_x: Vec<PauliSum<R>>,
        logical_z: Vec<PauliSum<R>>,
        distance_bound: Option<usize>,
    ) -> Result<Self> {
        let k = logical_x.len();
        if logical_z.len() != k || stabilizers.len() + k != n {
            return Err(Error::InvalidInput(format!(
                "{} stabilizers and {}/{} logical operators do not fit {n} qubits",
                stabilizers.len(),
                logical_x.len(),
                logical_z.len()
            )));
        }
        if let Some(op) = stabilizers.iter().chain(&logical_x).chain(&logical_z).find(|o| o.num_qubits() != n) {
            return Err(Error::LengthMismatch { left: op.num_qubits(), right: n });
        }
        Ok(Self { n, k, stabilizers, logical_x, logical_z, distance_bound })
    }

    /// From Pauli strings.
    pub fn from_paulis(
        stabilizers: &[&str],
        logical_x: &[&str],
        logical_z: &[&str],
        distance: Option<usize>,
    ) -> Result<Self> {
        let parse = |list: &[&str]| -> Result<Vec<PauliSum<R>>> {
            list.iter().map(|s| s.parse::<PauliOp>().map(|p| PauliSum::from_pauli(&p))).collect()
        };
        let stabs = parse(stabilizers)?;
        let n = stabs
            .first()
            .map(PauliSum::num_qubits)
            .or_else(|| logical_x.first().map(|s| s.chars().filter(|c| c.is_ascii_alphabetic()).count()))
            .unwrap_or(0);
        Self::new(n, stabs, parse(logical_x)?, parse(logical_z)?, distance)
    }

    /// Bit-flip repetition code `[[n,1]]`; its distance is 1 since single phase flips are logical.
    pub fn repetition(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("repetition needs at least two qubits".into()));
        }
        let stabs: Vec<String> =
            (0..n - 1).map(|i| (0..n).map(|j| if j == i || j == i + 1 { 'Z' } else { 'I' }).collect()).collect();
        let refs: Vec<&str> = stabs.iter().map(String::as_str).collect();
        let x: String = "X".repeat(n);
        let z: String = std::iter::once('Z').chain(std::iter::repeat_n('I', n - 1)).collect();
        Self::from_paulis(&refs, &[&x], &[&z], Some(1))
    }

    /// `Ȳ_l = i·X̄_l·Z̄_l`.
    pub fn logical_y(&self, l: usize) -> Result<PauliSum<R>> {
        Ok(self.logical_x[l].mul(&self.logical_z[l])?.scale(C::new(R::zero(), R::one())))
    }

    /// Worst deviation from the commutation pattern: stabilizers commute with
    /// everything; logical pairs anticommute on equal index and commute otherwise.
    pub fn validate(&self, tol: R) -> Result<()> {
        let all: Vec<&PauliSum<R>> = self.stabilizers.iter().chain(&self.logical_x).chain(&self.logical_z).collect();
        for s in &self.stabilizers {
            for o in &all {
                if !s.commutes_with(o, tol)? {
                    return Err(Error::InvalidInput("a stabilizer fails to commute".into()));
                }
            }
        }
        for i in 0..self.k {
            for j in 0..self.k {
                let xz = self.logical_x[i].mul(&self.logical_z[j])?;
                let zx = self.logical_z[j].mul(&self.logical_x[i])?;
                let sign = if i == j { R::one() } else { -R::one() };
                let dev = xz.add(&zx.scale(cre(sign)))?;
                if dev.terms.iter().any(|(c, _)| c.norm() > tol) {
                    return Err(Error::InvalidInput(format!("logical pair ({i},{j}) has the wrong commutation")));
                }
                if j > i
                    && (!self.logical_x[i].commutes_with(&self.logical_x[j], tol)?
                        || !self.logical_z[i].commutes_with(&self.logical_z[j], tol)?)
                {
                    return Err(Error::InvalidInput(format!("logical operators {i} and {j} fail to commute")));
                }
            }
        }
        Ok(())
    }

    /// Joint `+1` eigenspace of the stabilizers.
    pub fn code_space(&self, tol: R) -> Result<Subspace<R>> {
        let dim = 1usize << self.n;
        let id = ComplexMatrix::identity(dim);
        let half = R::lit(0.5);
        let mut p = id.clone();
        for s in &self.stabilizers {
            p = p.matmul(&(&id + &s.to_matrix()).scale_real(half))?;
        }
        crate::linalg::projector_range(&p, tol)
    }

    /// `|b⟩̄` for `b ∈ {±1}^k` (index in binary counting), with `|1,…,1⟩̄` the
    /// normalized projection of the first standard basis vector onto the
    /// joint `+1` space of stabilizers and `Z̄`, and `|b⟩̄ = ∏ X̄_l^{[b_l=−1]}|1,…,1⟩̄`.
    pub fn logical_basis(&self) -> Result<Vec<Vec<C<R>>>> {
        let dim = 1usize << self.n;
        let id = ComplexMatrix::identity(dim);
        let half = R::lit(0.5);
        let mut p = id.clone();
        for s in self.stabilizers.iter().chain(&self.logical_z) {
            p = p.matmul(&(&id + &s.to_matrix()).scale_real(half))?;
        }
        let mut root = None;
        for j in 0..dim {
            let mut v = p.mul_vec(&basis_vector(dim, j))?;
            if normalize(&mut v) > R::lit(1e-6) {
                fix_global_phase(&mut v);
                root = Some(v);
                break;
            }
        }
        let root = root.ok_or(Error::ZeroProjection)?;
        let xs: Vec<ComplexMatrix<R>> = self.logical_x.iter().map(PauliSum::to_matrix).collect();
        (0..1usize << self.k)
            .map(|b| {
                let mut v = root.clone();
                for (l, x) in xs.iter().enumerate() {
                    if b >> (self.k - 1 - l) & 1 == 1 {
                        v = x.mul_vec(&v)?;
                    }
                }
                Ok(v)
            })
            .collect()
    }
}

/// Replaces every letter on logical qubit `l` of block `j` by the inner code's
/// logical operator, block by block, and tensors the blocks.
pub fn lift_operator<R: Real>(op: &PauliSum<R>, inner: &BinaryCode<R>, q: usize) -> Result<PauliSum<R>> {
    if op.num_qubits() != q * inner.k {
        return Err(Error::LengthMismatch { left: op.num_qubits(), right: q * inner.k });
    }
    let ys: Vec<PauliSum<R>> = (0..inner.k).map(|l| inner.logical_y(l)).collect::<Result<_>>()?;
    let mut terms: Vec<(C<R>, PauliOp)> = Vec::new();
    for (c, p) in op.terms() {
        let mut lifted: Option<PauliSum<R>> = None;
        for block in 0..q {
            let mut b = PauliSum::identity(inner.n);
            for (l, y) in ys.iter().enumerate() {
                let factor = match p.letter(block * inner.k + l) {
                    Letter::I => continue,
                    Letter::X => &inner.logical_x[l],
                    Letter::Y => y,
                    Letter::Z => &inner.logical_z[l],
                };
                b = b.mul(factor)?;
            }
            lifted = Some(match lifted {
                None => b,
                Some(acc) => acc.tensor(&b),
            });
        }
        let lifted = lifted.unwrap_or_else(|| PauliSum::identity(0));
        for (d, r) in lifted.terms() {
            terms.push((*c * *d, r.clone()));
        }
    }
    PauliSum::new(q * inner.n, terms)
}

/// `Z_i` of the inner code on block `j` of `q`.
fn on_block<R: Real>(op: &PauliSum<R>, block: usize, q: usize, n_in: usize) -> PauliSum<R> {
    let left = PauliSum::identity(block * n_in);
    let right = PauliSum::identity((q - 1 - block) * n_in);
    left.tensor(op).tensor(&right)
}

/// Concatenates `outer` (on `q·k_in` qubits) with `q` copies of `inner`.
pub fn concat<R: Real>(outer: &BinaryCode<R>, inner: &BinaryCode<R>) -> Result<BinaryCode<R>> {
    if inner.k == 0 || !outer.n.is_multiple_of(inner.k) {
        return Err(Error::NotDivisible { numerator: outer.n, denominator: inner.k });
    }
    let q = outer.n / inner.k;
    let mut stabilizers = Vec::new();
    for block in 0..q {
        for s in &inner.stabilizers {
            stabilizers.push(on_block(s, block, q, inner.n));
        }
    }
    for s in &outer.stabilizers {
        stabilizers.push(lift_operator(s, inner, q)?);
    }
    let logical_x = outer.logical_x.iter().map(|x| lift_operator(x, inner, q)).collect::<Result<_>>()?;
    let logical_z = outer.logical_z.iter().map(|z| lift_operator(z, inner, q)).collect::<Result<_>>()?;
    let distance_bound = match (outer.distance_bound, inner.distance_bound) {
        (Some(d_out), Some(d_in)) => Some(d_out.div_ceil(inner.k) * d_in),
        _ => None,
    };
    BinaryCode::new(q * inner.n, stabilizers, logical_x, logical_z, distance_bound)
}

/// Maps an outer state to `Σ_c a_c ⊗_j |c_j⟩̄` using the inner logical basis.
pub fn lift_state<R: Real>(state: &[C<R>], inner: &BinaryCode<R>, q: usize) -> Result<Vec<C<R>>> {
    let outer_dim = 1usize << (q * inner.k);
    if state.len() != outer_dim {
        return Err(Error::DimensionMismatch { expected: outer_dim, found: state.len() });
    }
    let basis = inner.logical_basis()?;
    let block_dim = 1usize << inner.n;
    let mut out = vec![C::zero(); 1usize << (q * inner.n)];
    let mask = (1usize << inner.k) - 1;
    for (c, &a) in state.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut v = vec![C::one()];
        for block in 0..q {
            let b = (c >> ((q - 1 - block) * inner.k)) & mask;
            let w = &basis[b];
            let mut next = vec![C::zero(); v.len() * block_dim];
            for (i, &vi) in v.iter().enumerate() {
                for (j, &wj) in w.iter().enumerate() {
                    next[i * block_dim + j] = vi * wj;
                }
            }
            v = next;
        }
        for (o, vi) in out.iter_mut().zip(v) {
            *o = *o + a * vi;
        }
    }
    Ok(out)
}

/// `A = a·I + b·V` for a normal 2×2 `A`; `V` is absent when `A` is scalar.
#[derive(Clone, Debug)]
pub struct NormalDecomposition<R: Real> {
    pub a: C<R>,
    pub b: C<R>,
    pub v: Option<ComplexMatrix<R>>,
}

fn lex_greater<R: Real>(x: C<R>, y: C<R>) -> bool {
    x.re > y.re || (x.re == y.re && x.im >= y.im)
}

pub fn normal_decompose<R: Real>(m: &ComplexMatrix<R>, tol: R) -> Result<NormalDecomposition<R>> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: m.rows().max(m.cols()) });
    }
    let dev = m.normal_deviation();
    if dev > tol {
        return Err(Error::NotNormal { deviation: dev.to_f64_lossy() });
    }
    let half = R::lit(0.5);
    let tr = m.trace();
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr * cre(half * half) - det).sqrt();
    let (mut c1, mut c2) = (tr * half + disc, tr * half - disc);
    if !lex_greater(c1, c2) {
        std::mem::swap(&mut c1, &mut c2);
    }
    let a = (c1 + c2) * half;
    let b = (c1 - c2) * half;
    if b.norm() <= tol {
        return Ok(NormalDecomposition { a, b: C::zero(), v: None });
    }
    // V = P₁ − P₂ = (2A − (c₁+c₂)I)/(c₁−c₂)
    let shifted = &m.scale(cre(R::lit(2.0))) - &ComplexMatrix::identity(2).scale(c1 + c2);
    let v = shifted.scale(C::<R>::one() / (c1 - c2));
    Ok(NormalDecomposition { a, b, v: Some(v) })
}

/// Unitary `U` with `V = U·X·U†`, columns ordered `|+⟩ ↦ v₊`, `|−⟩ ↦ v₋`.
fn x_rotation<R: Real>(v: &ComplexMatrix<R>) -> ComplexMatrix<R> {
    let half = R::lit(0.5);
    let id = ComplexMatrix::identity(2);
    let eigvec = |p: &ComplexMatrix<R>| -> Vec<C<R>> {
        let cols = p.columns();
        let mut best = if crate::linalg::norm(&cols[0]) >= crate::linalg::norm(&cols[1]) {
            cols[0].clone()
        } else {
            cols[1].clone()
        };
        normalize(&mut best);
        fix_global_phase(&mut best);
        best
    };
    let vp = eigvec(&(&id + v).scale_real(half));
    let vm = eigvec(&(&id - v).scale_real(half));
    let s = R::FRAC_1_SQRT_2();
    ComplexMatrix::from_fn(2, 2, |i, j| if j == 0 { (vp[i] + vm[i]) * s } else { (vp[i] - vm[i]) * s })
}

fn single_site<R: Real>(op: &ComplexMatrix<R>, site: usize, n: usize) -> ComplexMatrix<R> {
    let mut acc = ComplexMatrix::identity(1);
    for j in 0..n {
        acc = acc.kron(&if j == site { op.clone() } else { ComplexMatrix::identity(2) });
    }
    acc
}

#[derive(Clone, Debug)]
pub struct GeneralizedRepetition<R: Real> {
    pub decomposition: NormalDecomposition<R>,
    /// Single-qubit `U` with `V = U·X·U†`.
    pub rotation: ComplexMatrix<R>,
    /// `(U Z U†)_i (U Z U†)_{i+1}` for consecutive sites.
    pub stabilizers: Vec<ComplexMatrix<R>>,
    pub certification: Vec<PaulianReport>,
    pub code: QuantumCode<R>,
    pub synthesis: Synthesis<R>,
}

/// Repetition code conjugated so that `E` on any single site is correctable.
pub fn generalized_repetition<R: Real>(e: &ComplexMatrix<R>, n: usize, tol: R) -> Result<GeneralizedRepetition<R>> {
    if n < 2 {
        return Err(Error::InvalidInput("generalized repetition needs at least two sites".into()));
    }
    let decomposition = normal_decompose(e, tol)?;
    let v = decomposition.v.clone().ok_or(Error::ScalarOperator)?;
    let u = x_rotation(&v);
    let z = ComplexMatrix::diagonal(&[C::one(), cre(-R::one())]);
    let zc = u.matmul(&z)?.matmul(&u.adjoint())?;
    let stabilizers: Vec<ComplexMatrix<R>> =
        (0..n - 1).map(|i| single_site(&zc, i, n).matmul(&single_site(&zc, i + 1, n))).collect::<Result<_>>()?;
    let dim = 1usize << n;
    let full = Subspace::full(dim);
    let certification = stabilizers.iter().map(|s| verify_paulian(s, &full, false, tol)).collect::<Result<Vec<_>>>()?;
    let mut un = ComplexMatrix::identity(1);
    for _ in 0..n {
        un = un.kron(&u);
    }
    let words = vec![un.column(0), un.column(dim - 1)];
    let errors = (0..n).map(|i| Operator::Dense(single_site(e, i, n))).collect();
    let names = (0..n).map(|i| format!("E[{}]", i + 1)).collect();
    let code = QuantumCode::from_codewords(Ambient::Qubits(n), &words, errors, names, tol)?;
    let guides = if n == 3 { Some(stabilizers.clone()) } else { None };
    let opts = SynthesisOptions { mode: TableMode::Minimal, guides, tol };
    let synthesis = synthesize(&code, &opts)?;
    Ok(GeneralizedRepetition { decomposition, rotation: u, stabilizers, certification, code, synthesis })
}

/// Bosonic modes truncated to levels `0..=cutoff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub modes: usize,
    pub cutoff: usize,
}

impl FockSpace {
    pub const DEFAULT_CUTOFF: usize = 8;

    pub fn new(modes: usize, cutoff: usize) -> Self {
        Self { modes, cutoff }
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1).pow(self.modes as u32)
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::Bosonic { modes: self.modes, cutoff: self.cutoff }
    }

    /// Index of the occupation-number state `|n_1,…,n_modes⟩`, first mode most significant.
    pub fn index(&self, occupation: &[usize]) -> Result<usize> {
        if occupation.len() != self.modes {
            return Err(Error::LengthMismatch { left: occupation.len(), right: self.modes });
        }
        occupation.iter().try_fold(0usize, |acc, &n| {
            if n > self.cutoff {
                Err(Error::IndexOutOfRange { index: n, limit: self.cutoff + 1 })
            } else {
                Ok(acc * (self.cutoff + 1) + n)
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockKind {
    Annihilation,
    Number,
    Parity,
}

/// `a`, `N = a†a`, or `exp(iπN)` acting on `mode`.
pub fn fock_operator<R: Real>(kind: FockKind, space: &FockSpace, mode: usize) -> Result<ComplexMatrix<R>> {
    if mode >= space.modes {
        return Err(Error::IndexOutOfRange { index: mode, limit: space.modes });
    }
    let levels = space.cutoff + 1;
    let single = match kind {
        FockKind::Annihilation => ComplexMatrix::from_fn(levels, levels, |i, j| {
            if j == i + 1 {
                cre(R::from_usize(j).expect("level fits").sqrt())
            } else {
                C::zero()
            }
        }),
        FockKind::Number => ComplexMatrix::diagonal(
            &(0..levels).map(|j| cre(R::from_usize(j).expect("level fits"))).collect::<Vec<_>>(),
        ),
        FockKind::Parity => ComplexMatrix::diagonal(
            &(0..levels).map(|j| cre(if j % 2 == 0 { R::one() } else { -R::one() })).collect::<Vec<_>>(),
        ),
    };
    let mut acc = ComplexMatrix::identity(1);
    for m in 0..space.modes {
        acc = acc.kron(&if m == mode { single.clone() } else { ComplexMatrix::identity(levels) });
    }
    Ok(acc)
}

fn fock_state<R: Real>(space: &FockSpace, terms: &[(&[usize], f64)]) -> Result<Vec<C<R>>> {
    let mut v = vec![C::zero(); space.dim()];
    for (occ, amp) in terms {
        let i = space.index(occ)?;
        v[i] = v[i] + cre(R::lit(*amp));
    }
    Ok(v)
}

const MIN_CUTOFF: usize = 4;

/// Codewords `|2⟩` and `(|4⟩+|0⟩)/√2` protecting against the loss `a`.
pub fn binomial_code<R: Real>(space: &FockSpace, tol: R) -> Result<QuantumCode<R>> {
    if space.modes != 1 {
        return Err(Error::InvalidInput(format!("binomial code lives on one mode, not {}", space.modes)));
    }
    if space.cutoff < MIN_CUTOFF {
        return Err(Error::CutoffTooSmall { cutoff: space.cutoff, required: MIN_CUTOFF });
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let words = vec![fock_state(space, &[(&[2], 1.0)])?, fock_state(space, &[(&[4], s), (&[0], s)])?];
    let a = fock_operator(FockKind::Annihilation, space, 0)?;
    QuantumCode::from_codewords(space.ambient(), &words, vec![Operator::Dense(a)], vec!["a".into()], tol)
}

/// Codewords `|2,2⟩` and `(|4,0⟩+|0,4⟩)/√2` protecting against a single loss in either mode.
pub fn two_mode_code<R: Real>(space: &FockSpace, tol: R) -> Result<QuantumCode<R>> {
    if space.modes != 2 {
        return Err(Error::InvalidInput(format!("two-mode code needs two modes, not {}", space.modes)));
    }
    if space.cutoff < MIN_CUTOFF {
        return Err(Error::CutoffTooSmall { cutoff: space.cutoff, required: MIN_CUTOFF });
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let words = vec![fock_state(space, &[(&[2, 2], 1.0)])?, fock_state(space, &[(&[4, 0], s), (&[0, 4], s)])?];
    let errors =
        (0..2).map(|m| fock_operator(FockKind::Annihilation, space, m).map(Operator::Dense)).collect::<Result<_>>()?;
    QuantumCode::from_codewords(space.ambient(), &words, errors, vec!["a[1]".into(), "a[2]".into()], tol)
}

/// Per-mode parities `exp(iπN_j)`.
pub fn parity_guides<R: Real>(space: &FockSpace) -> Result<Vec<ComplexMatrix<R>>> {
    (0..space.modes).map(|m| fock_operator(FockKind::Parity, space, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::kl_matrix;
    use crate::scalar::c;
    use crate::synthesis::check_relations;

    const EPS: f64 = 1e-9;

    fn pauli(s: &str) -> PauliSum<f64> {
        PauliSum::from_pauli(&s.parse().unwrap())
    }

    fn four_two_two() -> BinaryCode<f64> {
        BinaryCode::from_paulis(&["XXXX", "ZZZZ"], &["XXII", "XIXI"], &["ZIZI", "ZZII"], Some(2)).unwrap()
    }

    #[test]
    fn pauli_sum_expansion_round_trip() {
        let s = pauli("XY").add(&pauli("ZI").scale(c(0.5, -1.0))).unwrap();
        let back = PauliSum::from_matrix(&s.to_matrix()).unwrap();
        assert!(back.to_matrix().approx_eq(&s.to_matrix(), 1e-12));
        assert_eq!(back.terms().len(), 2);
        assert_eq!(pauli("-iY").as_pauli(EPS).unwrap().to_string(), "-iY");
    }

    #[test]
    fn inner_code_is_consistent() {
        let c = four_two_two();
        c.validate(EPS).unwrap();
        assert_eq!(c.code_space(EPS).unwrap().dim(), 4);
    }

    #[test]
    fn lifting_the_demonstration_operator() {
        let inner = four_two_two();
        let z_out = pauli("XXZY").add(&pauli("ZZXI")).unwrap().scale(cre(0.5));
        let lifted = lift_operator(&z_out, &inner, 2).unwrap();
        let (x1, x2, z1, z2) = (
            inner.logical_x[0].clone(),
            inner.logical_x[1].clone(),
            inner.logical_z[0].clone(),
            inner.logical_z[1].clone(),
        );
        let y2 = inner.logical_y(1).unwrap();
        let t1 = x1.mul(&x2).unwrap().tensor(&z1.mul(&y2).unwrap());
        let t2 = z1.mul(&z2).unwrap().tensor(&x1);
        let expected = t1.add(&t2).unwrap().scale(cre(0.5));
        assert!(lifted.to_matrix().approx_eq(&expected.to_matrix(), EPS));
    }

    #[test]
    fn repetition_of_repetition() {
        let r = BinaryCode::<f64>::repetition(3).unwrap();
        let c = concat(&r, &r).unwrap();
        assert_eq!((c.n, c.k, c.stabilizers.len(), c.distance_bound), (9, 1, 8, Some(1)));
        c.validate(EPS).unwrap();
        assert!(c.stabilizers.iter().all(|s| s.as_pauli(EPS).is_some()));
        assert!(matches!(concat(&r, &four_two_two()), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn codeword_lifting() {
        let inner = four_two_two();
        let outer =
            BinaryCode::<f64>::from_paulis(&["XXXX", "ZZZZ"], &["XXII", "XIXI"], &["ZIZI", "ZZII"], Some(2)).unwrap();
        let joint = concat(&outer, &inner).unwrap();
        joint.validate(EPS).unwrap();
        // (|1,−1,−1,1⟩ + |−1,−1,−1,−1⟩)/√2, with −1 ↔ bit 1
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut outer_state = vec![C::zero(); 16];
        outer_state[0b0110] = cre(s);
        outer_state[0b1111] = cre(s);
        let lifted = lift_state(&outer_state, &inner, 2).unwrap();
        let basis = inner.logical_basis().unwrap();
        let kron = |a: &[C<f64>], b: &[C<f64>]| -> Vec<C<f64>> {
            a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
        };
        let expected: Vec<C<f64>> = kron(&basis[0b01], &basis[0b10])
            .iter()
            .zip(kron(&basis[0b11], &basis[0b11]))
            .map(|(a, b)| (a + b) * s)
            .collect();
        assert!(lifted.iter().zip(&expected).all(|(a, b)| (a - b).norm() < EPS));
        assert!((crate::linalg::norm(&lifted) - 1.0).abs() < EPS);
    }

    #[test]
    fn normal_decomposition_examples() {
        let z = ComplexMatrix::diagonal(&[cre(1.0), cre(-1.0)]);
        let d = normal_decompose(&z, EPS).unwrap();
        assert!((d.a.norm() < EPS) && (d.b - cre(1.0)).norm() < EPS);
        assert!(d.v.unwrap().approx_eq(&z, EPS));
        let d = normal_decompose(&ComplexMatrix::<f64>::identity(2), EPS).unwrap();
        assert!(d.v.is_none() && (d.a - cre(1.0)).norm() < EPS);
        let m = ComplexMatrix::diagonal(&[cre(3.0), c(1.0, 2.0)]);
        let d = normal_decompose(&m, EPS).unwrap();
        assert!((d.a - c(2.0, 1.0)).norm() < 1e-12 && (d.b - c(1.0, -1.0)).norm() < 1e-12);
        let v = d.v.unwrap();
        assert!(v.approx_eq(&z, 1e-12));
        let rebuilt = &ComplexMatrix::identity(2).scale(d.a) + &v.scale(d.b);
        assert!(rebuilt.max_diff(&m) < 1e-12);
        let nonnormal = ComplexMatrix::from_rows(&[vec![cre(0.0), cre(1.0)], vec![cre(0.0), cre(0.0)]]).unwrap();
        assert!(matches!(normal_decompose(&nonnormal, EPS), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn generalized_repetition_examples() {
        let x = ComplexMatrix::from_rows(&[vec![cre(0.0), cre(1.0)], vec![cre(1.0), cre(0.0)]]).unwrap();
        let g = generalized_repetition(&x, 3, EPS).unwrap();
        assert!(g.rotation.approx_eq(&ComplexMatrix::identity(2), EPS));
        let z1z2: PauliOp = "ZZI".parse().unwrap();
        assert!(g.stabilizers[0].approx_eq(&z1z2.to_matrix(), EPS));
        let y = ComplexMatrix::from_rows(&[vec![cre(0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), cre(0.0)]]).unwrap();
        let g = generalized_repetition(&y, 3, EPS).unwrap();
        let zz: PauliOp = "IZZ".parse().unwrap();
        assert!(g.stabilizers[1].approx_eq(&zz.to_matrix(), EPS));
        assert!(g.certification.iter().all(|c| c.paulian));
        assert!(check_relations(&g.synthesis.group, &g.code).unwrap().max() < EPS);
        for (a, b) in g.synthesis.group.z_gens.iter().zip(&g.stabilizers) {
            assert!(a.approx_eq(b, EPS));
        }
        assert!(matches!(
            generalized_repetition(&ComplexMatrix::<f64>::identity(2), 3, EPS),
            Err(Error::ScalarOperator)
        ));
    }

    #[test]
    fn fock_operators() {
        let sp = FockSpace::new(1, 3);
        let p = fock_operator::<f64>(FockKind::Parity, &sp, 0).unwrap();
        assert!(p.approx_eq(&ComplexMatrix::diagonal(&[cre(1.0), cre(-1.0), cre(1.0), cre(-1.0)]), 0.0));
        let a = fock_operator::<f64>(FockKind::Annihilation, &FockSpace::new(1, 2), 0).unwrap();
        assert_eq!(a[(0, 1)], cre(1.0));
        assert!((a[(1, 2)] - cre(2f64.sqrt())).norm() < 1e-15);
        let n = fock_operator::<f64>(FockKind::Number, &sp, 0).unwrap();
        let a3 = fock_operator::<f64>(FockKind::Annihilation, &sp, 0).unwrap();
        assert!(a3.adjoint_mul(&a3).unwrap().approx_eq(&n, 1e-12));
        let r = verify_paulian(
            &fock_operator::<f64>(FockKind::Parity, &FockSpace::new(1, 7), 0).unwrap(),
            &Subspace::full(8),
            true,
            EPS,
        )
        .unwrap();
        assert_eq!(r.eig_dims, (4, 4));
        assert!(r.paulian && r.truncation_proxy);
        assert!(matches!(fock_operator::<f64>(FockKind::Number, &sp, 1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn binomial_code_kl_and_parity() {
        let sp = FockSpace::new(1, FockSpace::DEFAULT_CUTOFF);
        let code = binomial_code::<f64>(&sp, EPS).unwrap();
        let mut ops = vec![Operator::Identity];
        ops.extend(code.errors().iter().cloned());
        let kl = kl_matrix(&code, &ops, EPS).unwrap();
        assert!(kl.correctable);
        assert!(kl.alpha.approx_eq(&ComplexMatrix::diagonal(&[cre(1.0), cre(2.0)]), EPS));
        let guides = parity_guides(&sp).unwrap();
        let s =
            synthesize(&code, &SynthesisOptions { mode: TableMode::Minimal, guides: Some(guides), tol: EPS }).unwrap();
        assert_eq!(s.plan.m, 1);
        assert!(s.group.certification[0].paulian);
        assert!(check_relations(&s.group, &code).unwrap().max() < EPS);
        assert!(matches!(binomial_code::<f64>(&FockSpace::new(1, 3), EPS), Err(Error::CutoffTooSmall { .. })));
    }

    #[test]
    fn two_mode_syndromes() {
        let sp = FockSpace::new(2, 5);
        let code = two_mode_code::<f64>(&sp, EPS).unwrap();
        let guides = parity_guides(&sp).unwrap();
        let s =
            synthesize(&code, &SynthesisOptions { mode: TableMode::Minimal, guides: Some(guides), tol: EPS }).unwrap();
        let t = |v: [i8; 2]| crate::pauli::SignatureTuple::new(v.to_vec()).unwrap();
        assert_eq!(s.map.syndrome_of(0), Some(&t([1, 1])));
        assert_eq!(s.map.syndrome_of(1), Some(&t([-1, 1])));
        assert_eq!(s.map.syndrome_of(2), Some(&t([1, -1])));
        assert_eq!(s.table.entry(&t([-1, -1])).error, None);
        assert!(check_relations(&s.group, &code).unwrap().max() < EPS);
    }
}
