//! Codes, the Knill–Laflamme test, detectability, and orthonormal error families.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Subspace};
use crate::pauli::PauliOp;
use crate::scalar::{Real, C};

/// Ambient Hilbert space of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Qubits(usize),
    /// Truncated Fock space with levels `0..=cutoff` on each mode.
    Bosonic {
        modes: usize,
        cutoff: usize,
    },
    Generic(usize),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::Qubits(n) => 1 << n,
            Ambient::Bosonic { modes, cutoff } => (cutoff + 1).pow(modes as u32),
            Ambient::Generic(d) => d,
        }
    }

    pub fn is_truncated(&self) -> bool {
        matches!(self, Ambient::Bosonic { .. })
    }
}

/// Operator on the ambient space, kept symbolic when it is a Pauli string.
#[derive(Clone, Debug, PartialEq)]
pub enum Operator<R: Real> {
    Identity,
    Pauli(PauliOp),
    Dense(ComplexMatrix<R>),
}

impl<R: Real> Operator<R> {
    pub fn as_pauli(&self) -> Option<&PauliOp> {
        match self {
            Operator::Pauli(p) => Some(p),
            _ => None,
        }
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        match self {
            Operator::Identity => Ok(()),
            Operator::Pauli(p) => {
                let d = 1usize.checked_shl(p.num_qubits() as u32).unwrap_or(0);
                if d == dim {
                    Ok(())
                } else {
                    Err(Error::DimensionMismatch { expected: dim, found: d })
                }
            }
            Operator::Dense(m) => {
                if m.rows() == dim && m.cols() == dim {
                    Ok(())
                } else {
                    Err(Error::DimensionMismatch { expected: dim, found: m.rows().max(m.cols()) })
                }
            }
        }
    }

    /// `self · m`, column by column.
    pub fn apply(&self, m: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
        self.check_dim(m.rows())?;
        match self {
            Operator::Identity => Ok(m.clone()),
            Operator::Pauli(p) => p.apply_columns(m),
            Operator::Dense(d) => d.matmul(m),
        }
    }

    pub fn apply_vec(&self, v: &[C<R>]) -> Result<Vec<C<R>>> {
        self.check_dim(v.len())?;
        match self {
            Operator::Identity => Ok(v.to_vec()),
            Operator::Pauli(p) => p.apply(v),
            Operator::Dense(d) => d.mul_vec(v),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Result<ComplexMatrix<R>> {
        self.check_dim(dim)?;
        Ok(match self {
            Operator::Identity => ComplexMatrix::identity(dim),
            Operator::Pauli(p) => p.to_matrix(),
            Operator::Dense(d) => d.clone(),
        })
    }

    pub fn unitary_deviation(&self) -> R {
        match self {
            Operator::Identity | Operator::Pauli(_) => R::zero(),
            Operator::Dense(d) => d.unitary_deviation(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuantumCode<R: Real> {
    ambient: Ambient,
    space: Subspace<R>,
    errors: Vec<Operator<R>>,
    error_names: Vec<String>,
    distance: Option<usize>,
}

impl<R: Real> QuantumCode<R> {
    pub fn new(
        ambient: Ambient,
        space: Subspace<R>,
        errors: Vec<Operator<R>>,
        error_names: Vec<String>,
    ) -> Result<Self> {
        let dim = ambient.dim();
        if space.ambient_dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: space.ambient_dim() });
        }
        if space.dim() == 0 {
            return Err(Error::InvalidInput("code space is empty".into()));
        }
        if errors.len() != error_names.len() {
            return Err(Error::InvalidInput(format!("{} errors but {} names", errors.len(), error_names.len())));
        }
        for e in &errors {
            e.check_dim(dim)?;
        }
        Ok(Self { ambient, space, errors, error_names, distance: None })
    }

    /// Code spanned by explicit codewords; they must already be orthonormal within `tol`.
    pub fn from_codewords(
        ambient: Ambient,
        codewords: &[Vec<C<R>>],
        errors: Vec<Operator<R>>,
        error_names: Vec<String>,
        tol: R,
    ) -> Result<Self> {
        let frame = ComplexMatrix::from_columns(ambient.dim(), codewords)?;
        let deviation = frame.isometry_deviation();
        if deviation > tol {
            return Err(Error::NonOrthogonalCodewords { deviation: deviation.to_f64_lossy() });
        }
        Self::new(ambient, Subspace::from_frame(frame, tol)?, errors, error_names)
    }

    pub fn with_distance(mut self, d: usize) -> Self {
        self.distance = Some(d);
        self
    }

    pub fn with_errors(&self, errors: Vec<Operator<R>>, error_names: Vec<String>) -> Result<Self> {
        let mut c = Self::new(self.ambient.clone(), self.space.clone(), errors, error_names)?;
        c.distance = self.distance;
        Ok(c)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn space(&self) -> &Subspace<R> {
        &self.space
    }

    pub fn frame(&self) -> &ComplexMatrix<R> {
        self.space.frame()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn errors(&self) -> &[Operator<R>] {
        &self.errors
    }

    pub fn error_names(&self) -> &[String] {
        &self.error_names
    }

    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    pub fn num_qubits(&self) -> Option<usize> {
        match self.ambient {
            Ambient::Qubits(n) => Some(n),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KlReport<R: Real> {
    /// `α` with `Π E_a† E_b Π = α_ab Π`; entries are trace averages even when the test fails.
    pub alpha: ComplexMatrix<R>,
    pub correctable: bool,
    pub max_deviation: R,
}

fn images<R: Real>(code: &QuantumCode<R>, errors: &[Operator<R>]) -> Result<Vec<ComplexMatrix<R>>> {
    errors.iter().map(|e| e.apply(code.frame())).collect()
}

/// Knill–Laflamme test over every ordered pair of `errors`.
pub fn kl_matrix<R: Real>(code: &QuantumCode<R>, errors: &[Operator<R>], tol: R) -> Result<KlReport<R>> {
    let imgs = images(code, errors)?;
    let k = code.dim();
    let kr = R::from_usize(k).expect("dimension fits");
    let n = errors.len();
    let mut alpha = ComplexMatrix::zeros(n, n);
    let mut worst = R::zero();
    for a in 0..n {
        for b in a..n {
            let m = imgs[a].adjoint_mul(&imgs[b])?;
            let value = m.trace() / kr;
            let dev = m.max_diff(&ComplexMatrix::identity(k).scale(value));
            worst = worst.max(dev);
            alpha[(a, b)] = value;
            alpha[(b, a)] = value.conj();
        }
    }
    Ok(KlReport { alpha, correctable: worst <= tol, max_deviation: worst })
}

/// How a unitary error acts relative to the code space.
#[derive(Clone, Debug, PartialEq)]
pub enum Detection<R: Real> {
    OrthogonalImage,
    IdentityOnCode { theta: R },
    Oblique { modulus: R },
    Undetectable,
}

impl<R: Real> Detection<R> {
    pub fn label(&self) -> &'static str {
        match self {
            Detection::OrthogonalImage => "orthogonal_image",
            Detection::IdentityOnCode { .. } => "identity_on_code",
            Detection::Oblique { .. } => "oblique",
            Detection::Undetectable => "undetectable",
        }
    }
}

pub fn detect_classify<R: Real>(code: &QuantumCode<R>, e: &Operator<R>, tol: R) -> Result<Detection<R>> {
    let deviation = e.unitary_deviation();
    if deviation > tol {
        return Err(Error::NotUnitary { deviation: deviation.to_f64_lossy() });
    }
    let img = e.apply(code.frame())?;
    let m = code.frame().adjoint_mul(&img)?;
    let k = code.dim();
    let a = m.trace() / R::from_usize(k).expect("dimension fits");
    if m.max_diff(&ComplexMatrix::identity(k).scale(a)) > tol {
        return Ok(Detection::Undetectable);
    }
    let modulus = a.norm();
    Ok(if modulus <= tol {
        Detection::OrthogonalImage
    } else if (modulus - R::one()).abs() <= tol {
        Detection::IdentityOnCode { theta: a.arg() }
    } else {
        Detection::Oblique { modulus }
    })
}

/// An orthonormal family: each member is a linear combination of
/// `operators`, whose entry 0 is the identity and entries `1..` are the
/// code's declared errors in order.
#[derive(Clone, Debug)]
pub struct OrthonormalFamily<R: Real> {
    operators: Vec<Operator<R>>,
    members: Vec<Vec<(usize, C<R>)>>,
    names: Vec<String>,
    provenance: Vec<Vec<usize>>,
}

impl<R: Real> OrthonormalFamily<R> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Declared-error indices (into the code's error list) represented by member `i`.
    pub fn provenance(&self, i: usize) -> &[usize] {
        &self.provenance[i]
    }

    /// `(operator index, coefficient)` pairs; operator 0 is the identity.
    pub fn coefficients(&self, i: usize) -> &[(usize, C<R>)] {
        &self.members[i]
    }

    pub fn operators(&self) -> &[Operator<R>] {
        &self.operators
    }

    /// Member `i` applied to the columns of `m`.
    pub fn apply(&self, i: usize, m: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
        let mut acc = ComplexMatrix::zeros(m.rows(), m.cols());
        for &(j, c) in &self.members[i] {
            acc = &acc + &self.operators[j].apply(m)?.scale(c);
        }
        Ok(acc)
    }

    pub fn apply_vec(&self, i: usize, v: &[C<R>]) -> Result<Vec<C<R>>> {
        let mut acc = vec![C::zero(); v.len()];
        for &(j, c) in &self.members[i] {
            for (a, b) in acc.iter_mut().zip(self.operators[j].apply_vec(v)?) {
                *a = *a + b * c;
            }
        }
        Ok(acc)
    }

    /// `(c, P)` when member `i` is `c·P` for a Pauli string `P` (identity included).
    pub fn member_pauli(&self, i: usize, n: usize) -> Option<(C<R>, PauliOp)> {
        match self.members[i].as_slice() {
            [(j, c)] => match &self.operators[*j] {
                Operator::Identity => Some((*c, PauliOp::identity(n))),
                Operator::Pauli(p) => Some((*c, p.clone())),
                Operator::Dense(_) => None,
            },
            _ => None,
        }
    }

    pub fn to_dense(&self, i: usize, dim: usize) -> Result<ComplexMatrix<R>> {
        self.apply(i, &ComplexMatrix::identity(dim))
    }

    /// Family built from Pauli members directly, assumed orthonormal on the code.
    pub fn from_paulis(members: Vec<PauliOp>, provenance: Vec<Vec<usize>>) -> Self {
        let names = members.iter().map(|p| p.to_string()).collect();
        let n = members.len();
        Self {
            operators: members.into_iter().map(Operator::Pauli).collect(),
            members: (0..n).map(|i| vec![(i, C::one())]).collect(),
            names,
            provenance,
        }
    }
}

/// The identity is always treated as correctable, so the test runs on
/// `{I} ∪ errors`.
///
/// Gram–Schmidt of `{I} ∪ errors` in the metric `tr(Π E†F Π)/dim(H_C)`.
///
/// Candidates whose residual norm falls below `tol·dim(H_C)` merge into the
/// members they overlap; the earliest candidate stays the representative.
pub fn orthonormalize_errors<R: Real>(code: &QuantumCode<R>, tol: R) -> Result<OrthonormalFamily<R>> {
    let mut operators = vec![Operator::Identity];
    operators.extend(code.errors().iter().cloned());
    let report = kl_matrix(code, &operators, tol)?;
    if !report.correctable {
        return Err(Error::NotCorrectable { deviation: report.max_deviation.to_f64_lossy() });
    }
    let mut names = vec!["I".to_string()];
    names.extend(code.error_names().iter().cloned());

    let k = code.dim();
    let kr = R::from_usize(k).expect("dimension fits");
    let dot = |a: &ComplexMatrix<R>, b: &ComplexMatrix<R>| -> C<R> {
        a.data().iter().zip(b.data()).map(|(x, y)| x.conj() * y).fold(C::zero(), |s, t| s + t) / kr
    };
    let imgs = images(code, &operators)?;
    let merge = tol * kr;
    let mut members: Vec<Vec<(usize, C<R>)>> = Vec::new();
    let mut member_imgs: Vec<ComplexMatrix<R>> = Vec::new();
    let mut member_names = Vec::new();
    let mut provenance: Vec<Vec<usize>> = Vec::new();
    for (j, y) in imgs.iter().enumerate() {
        let overlaps: Vec<C<R>> = member_imgs.iter().map(|m| dot(m, y)).collect();
        let mut r = y.clone();
        let mut coeffs = vec![(j, C::one())];
        for (mi, &p) in overlaps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            r = &r - &member_imgs[mi].scale(p);
            for &(op, c) in &members[mi] {
                coeffs.push((op, -(c * p)));
            }
        }
        let norm = dot(&r, &r).re.max(R::zero()).sqrt();
        let declared = j.checked_sub(1);
        if norm < merge {
            if let Some(d) = declared {
                for (mi, p) in overlaps.iter().enumerate() {
                    if p.norm() > merge {
                        provenance[mi].push(d);
                    }
                }
            }
            continue;
        }
        let scale = R::one() / norm;
        let mut combined: Vec<(usize, C<R>)> = Vec::new();
        for (op, c) in coeffs {
            match combined.iter_mut().find(|(o, _)| *o == op) {
                Some(entry) => entry.1 = entry.1 + c,
                None => combined.push((op, c)),
            }
        }
        let cutoff = R::epsilon() * R::lit(16.0);
        combined.retain(|(_, c)| c.norm() > cutoff);
        for entry in combined.iter_mut() {
            entry.1 = entry.1 * scale;
        }
        members.push(combined);
        member_imgs.push(r.scale_real(scale));
        member_names.push(names[j].clone());
        provenance.push(declared.into_iter().collect());
    }
    Ok(OrthonormalFamily { operators, members, names: member_names, provenance })
}

/// `⊕_F F·H_C`.
pub fn error_span_space<R: Real>(code: &QuantumCode<R>, fam: &OrthonormalFamily<R>, tol: R) -> Result<Subspace<R>> {
    let blocks: Vec<ComplexMatrix<R>> = (0..fam.len()).map(|i| fam.apply(i, code.frame())).collect::<Result<_>>()?;
    let refs: Vec<&ComplexMatrix<R>> = blocks.iter().collect();
    Subspace::from_frame(ComplexMatrix::hstack(&refs)?, tol)
}

/// Worst entrywise deviation of the family from `Π F†G Π = δ_FG Π`.
pub fn family_deviation<R: Real>(code: &QuantumCode<R>, fam: &OrthonormalFamily<R>) -> Result<R> {
    let imgs: Vec<ComplexMatrix<R>> = (0..fam.len()).map(|i| fam.apply(i, code.frame())).collect::<Result<_>>()?;
    let k = code.dim();
    let id = ComplexMatrix::identity(k);
    let zero = ComplexMatrix::zeros(k, k);
    let mut worst = R::zero();
    for a in 0..imgs.len() {
        for b in a..imgs.len() {
            let m = imgs[a].adjoint_mul(&imgs[b])?;
            worst = worst.max(m.max_diff(if a == b { &id } else { &zero }));
        }
    }
    Ok(worst)
}
