//! Syndrome maps, syndrome spaces, the encoder, and Paulian stabilizer generators.
//!
//! Syndrome tuples are indexed by binary counting: `+1 ↔ 0`, `−1 ↔ 1`, with
//! the first component as the most significant bit. The encoder sends a
//! vector with coordinate `c` in the `(t)` syndrome space to row
//! `c·2^m + index(t)`, so the stabilizer qubits form the least significant
//! factor of `H_ref ⊗ (ℂ²)^m`.

use std::fmt;

use num_traits::Zero;

use crate::code::{OrthonormalFamily, QuantumCode};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Subspace};
use crate::pauli::SignatureTuple;
use crate::scalar::{cre, Real, C};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanMode {
    /// `m = ⌊log₂|𝔽|⌋`; only `2^m` members receive syndromes.
    Floor,
    /// `m = ⌈log₂|𝔽|⌉`; every member receives a syndrome.
    Ceil,
}

impl fmt::Display for PlanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlanMode::Floor => "floor",
            PlanMode::Ceil => "ceil",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityPlan {
    pub family_size: usize,
    pub m: usize,
    pub mode: PlanMode,
    /// `2^⌈log₂|𝔽|⌉ · dim(H_C) ≤ dim(H)`.
    pub feasible_full: bool,
    pub dim_code: usize,
    /// `None` for an infinite-dimensional ambient space.
    pub dim_ambient: Option<usize>,
    /// `Σ_{j ≤ ⌊(d−1)/2⌋} C(n,j)·3^j` when `n` and `d` are known.
    pub bound_fcos: Option<u128>,
    /// Family members that receive a syndrome.
    pub assigned: usize,
    /// Tuples with no family member.
    pub excess: usize,
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

fn floor_log2(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Upper bound on the size of an orthonormal family for an `n`-qubit code of distance `d`.
pub fn bound_fcos(n: usize, d: usize) -> u128 {
    let t = d.saturating_sub(1) / 2;
    (0..=t.min(n)).map(|j| binomial(n as u128, j as u128) * 3u128.pow(j as u32)).sum()
}

/// Chooses the number of generators. `m` is never below one so that even
/// a family of one member yields a nontrivial stabilizer qubit.
pub fn capacity_plan(
    family_size: usize,
    dim_ambient: Option<usize>,
    dim_code: usize,
    n: Option<usize>,
    d: Option<usize>,
) -> Result<CapacityPlan> {
    if family_size == 0 {
        return Err(Error::InvalidInput("family size must be positive".into()));
    }
    if dim_code == 0 || dim_ambient == Some(0) {
        return Err(Error::InvalidInput("dimensions must be positive".into()));
    }
    if n == Some(0) || d == Some(0) {
        return Err(Error::InvalidInput("qubit count and distance must be positive".into()));
    }
    let m_ceil = ceil_log2(family_size).max(1);
    let fits = |m: usize| match dim_ambient {
        None => true,
        Some(dim) => (1usize << m).checked_mul(dim_code).is_some_and(|need| need <= dim),
    };
    let feasible_full = fits(m_ceil);
    let (m, mode) =
        if feasible_full { (m_ceil, PlanMode::Ceil) } else { (floor_log2(family_size).max(1), PlanMode::Floor) };
    let slots = 1usize << m;
    let assigned = family_size.min(slots);
    let bound = match (n, d) {
        (Some(n), Some(d)) => Some(bound_fcos(n, d)),
        _ => None,
    };
    Ok(CapacityPlan {
        family_size,
        m,
        mode,
        feasible_full,
        dim_code,
        dim_ambient,
        bound_fcos: bound,
        assigned,
        excess: slots - assigned,
    })
}

/// Outcome of asking whether a Paulian group can *detect* a set of errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionPlan {
    pub m: usize,
    /// Dimension of every syndrome space.
    pub k_prime: usize,
    /// Dimension of the span of the error images orthogonal to the code.
    pub reach: usize,
}

/// Finds the smallest `m ≥ 1` and syndrome-space dimension `k′` such that
/// every error maps the code out of `H_(I)` while staying in the domain.
///
/// With `S` the span of `(I − Π_C)·E·H_C`, a detecting group needs
/// `H_C ⊆ H_(I) ⊥ S`, so `k ≤ k′ ≤ dim H − dim S` and
/// `k + dim S ≤ 2^m·k′ ≤ dim H`.
pub fn detection_plan<R: Real>(code: &QuantumCode<R>, tol: R) -> Result<DetectionPlan> {
    let n = code.ambient_dim();
    let k = code.dim();
    let proj = code.space().projector();
    let mut vectors = Vec::new();
    for e in code.errors() {
        let img = e.apply(code.frame())?;
        let off = &img - &proj.matmul(&img)?;
        vectors.extend(off.columns());
    }
    let reach = if vectors.is_empty() { 0 } else { Subspace::span(n, &vectors, tol.max(R::lit(1e-7)))?.dim() };
    let k_max = n - reach;
    for m in 1..usize::BITS as usize {
        let slots = 1usize << m;
        if slots.saturating_mul(k) > n {
            break;
        }
        for k_prime in k..=k_max {
            let total = slots * k_prime;
            if total > n {
                break;
            }
            if total >= k + reach {
                return Ok(DetectionPlan { m, k_prime, reach });
            }
        }
    }
    Err(Error::CapacityExceeded(format!(
        "dimension obstruction: detecting every declared error needs k + dim S <= 2^m k' <= dim H with \
         {k} <= k' <= dim H - dim S, but dim H = {n}, k = {k}, dim S = {reach} admit no m >= 1"
    )))
}

/// Injective map from family members to syndrome tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeMap {
    m: usize,
    by_tuple: Vec<Option<usize>>,
    by_member: Vec<Option<SignatureTuple>>,
}

impl SyndromeMap {
    /// Builds a map from explicit `(member, tuple)` pairs over `members` family members.
    pub fn from_pairs(m: usize, members: usize, pairs: &[(usize, SignatureTuple)]) -> Result<Self> {
        let mut by_tuple = vec![None; 1 << m];
        let mut by_member = vec![None; members];
        for (member, t) in pairs {
            if t.len() != m {
                return Err(Error::LengthMismatch { left: t.len(), right: m });
            }
            if *member >= members {
                return Err(Error::IndexOutOfRange { index: *member, limit: members });
            }
            if by_member[*member].is_some() {
                return Err(Error::InvalidInput(format!("member {member} assigned twice")));
            }
            let idx = t.index();
            if let Some(prev) = by_tuple[idx] {
                return Err(Error::InvalidInput(format!("tuple {t} assigned to members {prev} and {member}")));
            }
            by_tuple[idx] = Some(*member);
            by_member[*member] = Some(t.clone());
        }
        if members > 0 && by_member[0].as_ref().is_some_and(|t| !t.is_all_plus()) {
            return Err(Error::InvalidInput("identity must carry the all-plus syndrome".into()));
        }
        Ok(Self { m, by_tuple, by_member })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn member_of(&self, t: &SignatureTuple) -> Option<usize> {
        self.by_tuple.get(t.index()).copied().flatten()
    }

    pub fn member_at(&self, index: usize) -> Option<usize> {
        self.by_tuple[index]
    }

    pub fn syndrome_of(&self, member: usize) -> Option<&SignatureTuple> {
        self.by_member.get(member).and_then(Option::as_ref)
    }

    pub fn members(&self) -> usize {
        self.by_member.len()
    }

    pub fn assigned(&self) -> usize {
        self.by_member.iter().filter(|t| t.is_some()).count()
    }

    pub fn excess_tuples(&self) -> Vec<SignatureTuple> {
        (0..self.by_tuple.len())
            .filter(|&i| self.by_tuple[i].is_none())
            .map(|i| SignatureTuple::from_index(self.m, i))
            .collect()
    }
}

/// Member 0 (the identity) takes `(1,…,1)`; member `i` takes the `i`-th
/// tuple in binary-counting order. Members beyond `assign` stay unassigned.
pub fn assign_syndromes(family_size: usize, assign: usize, m: usize) -> Result<SyndromeMap> {
    if assign > (1usize << m) {
        return Err(Error::TooManyErrors { family: assign, m });
    }
    let pairs: Vec<(usize, SignatureTuple)> =
        (0..assign.min(family_size)).map(|i| (i, SignatureTuple::from_index(m, i))).collect();
    SyndromeMap::from_pairs(m, family_size, &pairs)
}

/// Joint `±1` eigenvalues of `F·H_C` under commuting self-adjoint involutions `guides`.
pub fn guide_signature<R: Real>(
    image: &ComplexMatrix<R>,
    guides: &[ComplexMatrix<R>],
    tol: R,
) -> Result<SignatureTuple> {
    let k = R::from_usize(image.cols()).expect("dimension fits");
    let mut comps = Vec::with_capacity(guides.len());
    for (j, g) in guides.iter().enumerate() {
        let gi = g.matmul(image)?;
        let expectation = image.adjoint_mul(&gi)?.trace() / k;
        let sign: i8 = if (expectation - cre(R::one())).norm() <= tol {
            1
        } else if (expectation + cre(R::one())).norm() <= tol {
            -1
        } else {
            return Err(Error::GuideIncompatible(format!("image is not an eigenspace of guide {j}")));
        };
        let dev = (&gi - &image.scale_real(R::from_i8(sign).expect("sign"))).max_abs();
        if dev > tol {
            return Err(Error::GuideIncompatible(format!("image is not an eigenspace of guide {j}")));
        }
        comps.push(sign);
    }
    SignatureTuple::new(comps)
}

/// Each member's syndrome is read off from how the guide observables act on its image.
pub fn assign_syndromes_guided<R: Real>(
    code: &QuantumCode<R>,
    fam: &OrthonormalFamily<R>,
    assign: usize,
    guides: &[ComplexMatrix<R>],
    tol: R,
) -> Result<SyndromeMap> {
    let m = guides.len();
    if assign > (1usize << m) {
        return Err(Error::TooManyErrors { family: assign, m });
    }
    let mut pairs = Vec::new();
    for i in 0..assign.min(fam.len()) {
        let image = fam.apply(i, code.frame())?;
        pairs.push((i, guide_signature(&image, guides, tol)?));
    }
    SyndromeMap::from_pairs(m, fam.len(), &pairs).map_err(|e| Error::GuideIncompatible(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMode {
    /// Assigned syndrome spaces are the images themselves.
    Minimal,
    /// Every syndrome space has dimension `dim(H)/2^m`.
    ExtendedFull,
}

impl fmt::Display for TableMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableMode::Minimal => "minimal",
            TableMode::ExtendedFull => "extended-full",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SyndromeEntry<R: Real> {
    pub tuple: SignatureTuple,
    /// Orthonormal frame; for assigned tuples the first `dim(H_C)` columns are `F_(t)·C`.
    pub space: Subspace<R>,
    pub error: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SyndromeTable<R: Real> {
    m: usize,
    code_dim: usize,
    entries: Vec<SyndromeEntry<R>>,
}

impl<R: Real> SyndromeTable<R> {
    /// Validates orthogonality and equal dimension; `entries` must be in binary-counting order.
    pub fn new(m: usize, code_dim: usize, entries: Vec<SyndromeEntry<R>>, tol: R) -> Result<Self> {
        if entries.len() != 1 << m {
            return Err(Error::TableInvalid(format!("{} entries for m = {m}", entries.len())));
        }
        for (i, e) in entries.iter().enumerate() {
            if e.tuple.len() != m || e.tuple.index() != i {
                return Err(Error::TableInvalid(format!("entry {i} carries tuple {}", e.tuple)));
            }
        }
        let dim = entries[0].space.dim();
        if let Some(e) = entries.iter().find(|e| e.space.dim() != dim) {
            return Err(Error::TableInvalid(format!(
                "space {} has dimension {} instead of {dim}",
                e.tuple,
                e.space.dim()
            )));
        }
        if dim < code_dim {
            return Err(Error::TableInvalid(format!("syndrome spaces of dimension {dim} cannot hold the code")));
        }
        let table = Self { m, code_dim, entries };
        let dev = table.domain_frame()?.isometry_deviation();
        if dev > tol {
            return Err(Error::TableInvalid(format!(
                "syndrome spaces are not orthogonal (deviation {:e})",
                dev.to_f64_lossy()
            )));
        }
        Ok(table)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn code_dim(&self) -> usize {
        self.code_dim
    }

    /// `k′`, the common dimension of the syndrome spaces.
    pub fn space_dim(&self) -> usize {
        self.entries[0].space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.entries[0].space.ambient_dim()
    }

    pub fn entries(&self) -> &[SyndromeEntry<R>] {
        &self.entries
    }

    pub fn entry(&self, t: &SignatureTuple) -> &SyndromeEntry<R> {
        &self.entries[t.index()]
    }

    /// All syndrome frames side by side in tuple order.
    pub fn domain_frame(&self) -> Result<ComplexMatrix<R>> {
        let frames: Vec<&ComplexMatrix<R>> = self.entries.iter().map(|e| e.space.frame()).collect();
        ComplexMatrix::hstack(&frames)
    }

    pub fn domain(&self) -> Result<Subspace<R>> {
        Subspace::from_frame(self.domain_frame()?, R::lit(1e-6))
    }

    pub fn excess_count(&self) -> usize {
        self.entries.iter().filter(|e| e.error.is_none()).count()
    }

    /// Checks `F_(t)·H_C ⊆ H_(t)` for assigned tuples and `H_C ⊆ H_(I)`.
    pub fn validate(&self, code: &QuantumCode<R>, fam: &OrthonormalFamily<R>, tol: R) -> Result<R> {
        let mut worst = self.entries[0].space.distance_matrix(code.frame())?;
        for e in &self.entries {
            if let Some(i) = e.error {
                let img = fam.apply(i, code.frame())?;
                worst = worst.max(e.space.distance_matrix(&img)?);
            }
        }
        if worst > tol {
            return Err(Error::TableInvalid(format!("containment violated (deviation {:e})", worst.to_f64_lossy())));
        }
        Ok(worst)
    }
}

/// Orthonormal vectors from `candidates` (in order) orthogonal to `against`, at most `needed` of them.
fn pick_orthogonal<R: Real>(
    against: &ComplexMatrix<R>,
    candidates: &ComplexMatrix<R>,
    needed: usize,
    ambient: usize,
) -> Vec<Vec<C<R>>> {
    let mut basis: Vec<Vec<C<R>>> = against.columns();
    let start = basis.len();
    let accept = R::lit(1e-3);
    for cand in candidates.columns() {
        if basis.len() - start == needed {
            break;
        }
        let mut w = cand;
        for _ in 0..2 {
            for b in &basis {
                let p = crate::linalg::inner(b, &w);
                if p.is_zero() {
                    continue;
                }
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = *wi - *bi * p;
                }
            }
        }
        let r = crate::linalg::normalize(&mut w);
        if r > accept {
            debug_assert_eq!(w.len(), ambient);
            basis.push(w);
        }
    }
    basis.split_off(start)
}

/// Joint eigenspace of commuting self-adjoint involutions with eigenvalues `t`.
fn guide_sector<R: Real>(guides: &[ComplexMatrix<R>], t: &SignatureTuple, dim: usize) -> Result<Subspace<R>> {
    let half = R::lit(0.5);
    let id = ComplexMatrix::identity(dim);
    let mut p = id.clone();
    for (g, &s) in guides.iter().zip(t.components()) {
        let factor = (&id + &g.scale_real(R::from_i8(s).expect("sign"))).scale_real(half);
        p = p.matmul(&factor)?;
    }
    crate::linalg::projector_range(&p, R::lit(1e-6))
}

/// Assembles `H_(t)` for every tuple.
///
/// Assigned tuples start from `F_(t)·C`. Padding comes from the orthogonal
/// complement of all images, consumed in ascending-basis order as tuples are
/// visited in binary-counting order. With `guides`, padding for `(t)` is
/// drawn from the guides' joint `(t)` eigenspace instead.
pub fn build_syndrome_table<R: Real>(
    code: &QuantumCode<R>,
    fam: &OrthonormalFamily<R>,
    map: &SyndromeMap,
    mode: TableMode,
    guides: Option<&[ComplexMatrix<R>]>,
    tol: R,
) -> Result<SyndromeTable<R>> {
    let m = map.m();
    let slots = 1usize << m;
    let n = code.ambient_dim();
    let k = code.dim();
    let target = match mode {
        TableMode::Minimal => k,
        TableMode::ExtendedFull => {
            if !n.is_multiple_of(slots) {
                return Err(Error::NotDivisible { numerator: n, denominator: slots });
            }
            n / slots
        }
    };
    if target < k {
        return Err(Error::InsufficientSpace(format!(
            "syndrome spaces of dimension {target} cannot hold a {k}-dimensional code"
        )));
    }
    if let Some(g) = guides {
        if g.len() != m {
            return Err(Error::GuideIncompatible(format!("{} guides for {m} generators", g.len())));
        }
    }
    let mut images: Vec<Option<ComplexMatrix<R>>> = vec![None; slots];
    for (idx, slot) in images.iter_mut().enumerate() {
        if let Some(member) = map.member_at(idx) {
            *slot = Some(fam.apply(member, code.frame())?);
        }
    }
    let assigned: Vec<&ComplexMatrix<R>> = images.iter().flatten().collect();
    let union = if assigned.is_empty() { ComplexMatrix::zeros(n, 0) } else { ComplexMatrix::hstack(&assigned)? };
    if union.isometry_deviation() > tol {
        return Err(Error::TableInvalid("family images are not orthonormal".into()));
    }
    let mut entries = Vec::with_capacity(slots);
    match guides {
        None => {
            let pool = Subspace::from_frame(union.clone(), R::lit(1e-6))?.complement();
            let needed: usize = images.iter().map(|img| target - img.as_ref().map_or(0, |_| k)).sum();
            if needed > pool.dim() {
                return Err(Error::InsufficientSpace(format!(
                    "padding needs {needed} dimensions but the complement has {}",
                    pool.dim()
                )));
            }
            let mut next = 0;
            for (idx, img) in images.iter().enumerate() {
                let pad = target - img.as_ref().map_or(0, |_| k);
                let padding = pool.frame().column_range(next, next + pad);
                next += pad;
                let frame = match img {
                    Some(y) => ComplexMatrix::hstack(&[y, &padding])?,
                    None => padding,
                };
                entries.push(SyndromeEntry {
                    tuple: SignatureTuple::from_index(m, idx),
                    space: Subspace::from_frame(frame, R::lit(1e-6))?,
                    error: map.member_at(idx),
                });
            }
        }
        Some(g) => {
            for (idx, img) in images.iter().enumerate() {
                let t = SignatureTuple::from_index(m, idx);
                let sector = guide_sector(g, &t, n)?;
                if let Some(y) = img {
                    if sector.distance_matrix(y)? > tol {
                        return Err(Error::GuideIncompatible(format!("image for {t} leaves the guide sector")));
                    }
                }
                let pad = target - img.as_ref().map_or(0, |_| k);
                let cols = pick_orthogonal(&union, sector.frame(), pad, n);
                if cols.len() < pad {
                    return Err(Error::InsufficientSpace(format!(
                        "guide sector {t} supplies {} padding dimensions, {pad} needed",
                        cols.len()
                    )));
                }
                let padding = ComplexMatrix::from_columns(n, &cols)?;
                let frame = match img {
                    Some(y) => ComplexMatrix::hstack(&[y, &padding])?,
                    None => padding,
                };
                entries.push(SyndromeEntry {
                    tuple: t,
                    space: Subspace::from_frame(frame, R::lit(1e-6))?,
                    error: map.member_at(idx),
                });
            }
        }
    }
    let table = SyndromeTable::new(m, k, entries, tol)?;
    table.validate(code, fam, tol)?;
    Ok(table)
}

/// `U : H′ → ℂ^{k′} ⊗ (ℂ²)^m`, a `(k′·2^m) × dim(H)` matrix.
pub fn build_encoder<R: Real>(table: &SyndromeTable<R>) -> Result<ComplexMatrix<R>> {
    let slots = 1usize << table.m();
    let kp = table.space_dim();
    let n = table.ambient_dim();
    let mut u = ComplexMatrix::zeros(kp * slots, n);
    for (tau, entry) in table.entries().iter().enumerate() {
        let frame = entry.space.frame();
        for c in 0..kp {
            for r in 0..n {
                u[(c * slots + tau, r)] = frame[(r, c)].conj();
            }
        }
    }
    Ok(u)
}

/// Certification of a single operator on a domain.
#[derive(Clone, Debug, PartialEq)]
pub struct PaulianReport {
    pub kind: InvolutionKind,
    pub unitary: bool,
    pub eig_dims: (usize, usize),
    pub isomorphic: bool,
    pub paulian: bool,
    /// Dimensions refer to a finite truncation of an infinite-dimensional space.
    pub truncation_proxy: bool,
    pub max_deviation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionKind {
    Involution,
    Counterinvolution,
    Neither,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionKind::Involution => "involution",
            InvolutionKind::Counterinvolution => "counterinvolution",
            InvolutionKind::Neither => "neither",
        })
    }
}

/// Checks that `p` restricted to `domain` squares to `±I`, is unitary, and
/// has isomorphic eigenspaces.
pub fn verify_paulian<R: Real>(
    p: &ComplexMatrix<R>,
    domain: &Subspace<R>,
    truncated: bool,
    tol: R,
) -> Result<PaulianReport> {
    let d = domain.frame();
    let (r, leak) = if domain.dim() == domain.ambient_dim() {
        (p.clone(), R::zero())
    } else {
        let pd = p.matmul(d)?;
        let r = d.adjoint_mul(&pd)?;
        let leak = (&pd - &d.matmul(&r)?).max_abs();
        (r, leak)
    };
    if leak > tol {
        return Err(Error::NotInvariant { deviation: leak.to_f64_lossy() });
    }
    let dim = domain.dim();
    let id = ComplexMatrix::identity(dim);
    let sq = r.matmul(&r)?;
    let dev_plus = sq.max_diff(&id);
    let dev_minus = (&sq + &id).max_abs();
    let (kind, dev, rotated) = if dev_plus <= tol {
        (InvolutionKind::Involution, dev_plus, r.clone())
    } else if dev_minus <= tol {
        (InvolutionKind::Counterinvolution, dev_minus, r.scale(C::new(R::zero(), -R::one())))
    } else {
        (InvolutionKind::Neither, dev_plus.min(dev_minus), r.clone())
    };
    let unitary_dev = r.unitary_deviation();
    let unitary = unitary_dev <= tol;
    let (plus, minus) = if kind == InvolutionKind::Neither {
        (0, 0)
    } else {
        let tr = rotated.trace().re.to_f64_lossy();
        let plus = ((dim as f64 + tr) / 2.0).round().max(0.0) as usize;
        (plus.min(dim), dim - plus.min(dim))
    };
    let isomorphic = kind != InvolutionKind::Neither && (plus == minus || plus == 0 || minus == 0);
    Ok(PaulianReport {
        kind,
        unitary,
        eig_dims: (plus, minus),
        isomorphic,
        paulian: unitary && isomorphic,
        truncation_proxy: truncated,
        max_deviation: dev.max(unitary_dev).max(leak).to_f64_lossy(),
    })
}

#[derive(Clone, Debug)]
pub struct PaulianGroup<R: Real> {
    pub domain: Subspace<R>,
    pub z_gens: Vec<ComplexMatrix<R>>,
    pub x_gens: Vec<ComplexMatrix<R>>,
    pub encoder: ComplexMatrix<R>,
    /// Largest entrywise gap between the conjugation and signed-projector forms of `Z_i^S`.
    pub form_agreement: R,
    pub certification: Vec<PaulianReport>,
}

impl<R: Real> PaulianGroup<R> {
    pub fn m(&self) -> usize {
        self.z_gens.len()
    }
}

fn permute_rows<R: Real>(u: &ComplexMatrix<R>, flip: usize) -> ComplexMatrix<R> {
    let mut out = ComplexMatrix::zeros(u.rows(), u.cols());
    for r in 0..u.rows() {
        let src = r ^ flip;
        for c in 0..u.cols() {
            out[(r, c)] = u[(src, c)];
        }
    }
    out
}

/// `Z_i^S = U†Z_iU`, `X_i^S = U†X_iU`, cross-checked against `Σ_t t_i Π(H_(t))`.
pub fn derive_generators<R: Real>(
    u: &ComplexMatrix<R>,
    table: &SyndromeTable<R>,
    truncated: bool,
    tol: R,
) -> Result<PaulianGroup<R>> {
    let m = table.m();
    let slots = 1usize << m;
    let rows = table.space_dim() * slots;
    if u.rows() != rows || u.cols() != table.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: rows, found: u.rows() });
    }
    let co_iso = u.adjoint().isometry_deviation();
    if co_iso > tol {
        return Err(Error::NotUnitary { deviation: co_iso.to_f64_lossy() });
    }
    let domain = table.domain()?;
    let projectors: Vec<ComplexMatrix<R>> = table.entries().iter().map(|e| e.space.projector()).collect();
    let mut z_gens = Vec::with_capacity(m);
    let mut x_gens = Vec::with_capacity(m);
    let mut agreement = R::zero();
    for i in 0..m {
        let bit = 1usize << (m - 1 - i);
        let mut zu = u.clone();
        for r in 0..rows {
            if r & bit != 0 {
                for c in 0..u.cols() {
                    zu[(r, c)] = -zu[(r, c)];
                }
            }
        }
        let z = u.adjoint_mul(&zu)?;
        let x = u.adjoint_mul(&permute_rows(u, bit))?;
        let mut signed = ComplexMatrix::zeros(u.cols(), u.cols());
        for (idx, p) in projectors.iter().enumerate() {
            signed = if idx & bit == 0 { &signed + p } else { &signed - p };
        }
        agreement = agreement.max(z.max_diff(&signed));
        z_gens.push(z);
        x_gens.push(x);
    }
    if agreement > tol {
        return Err(Error::TableInvalid(format!(
            "conjugation and projector forms disagree by {:e}",
            agreement.to_f64_lossy()
        )));
    }
    let certification =
        z_gens.iter().map(|z| verify_paulian(z, &domain, truncated, tol)).collect::<Result<Vec<_>>>()?;
    Ok(PaulianGroup { domain, z_gens, x_gens, encoder: u.clone(), form_agreement: agreement, certification })
}

/// Worst deviations from the defining relations of the Pauli group and from stabilization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationReport {
    pub relations: f64,
    pub stabilizes: f64,
    pub forms: f64,
}

impl RelationReport {
    pub fn max(&self) -> f64 {
        self.relations.max(self.stabilizes).max(self.forms)
    }
}

/// Verifies squares, (anti)commutation, and stabilization on the domain.
///
/// Generators are checked self-adjoint first, so `BA = (AB)†` and each pair
/// costs one product. A domain covering the whole space is used as is.
pub fn check_relations<R: Real>(group: &PaulianGroup<R>, code: &QuantumCode<R>) -> Result<RelationReport> {
    let d = group.domain.frame();
    let full = group.domain.dim() == group.domain.ambient_dim();
    let restrict = |g: &ComplexMatrix<R>| -> Result<ComplexMatrix<R>> {
        if full {
            Ok(g.clone())
        } else {
            d.adjoint_mul(&g.matmul(d)?)
        }
    };
    let zs: Vec<ComplexMatrix<R>> = group.z_gens.iter().map(restrict).collect::<Result<_>>()?;
    let xs: Vec<ComplexMatrix<R>> = group.x_gens.iter().map(restrict).collect::<Result<_>>()?;
    let id = ComplexMatrix::identity(zs.first().map_or(0, ComplexMatrix::rows));
    let mut worst = R::zero();
    for g in zs.iter().chain(&xs) {
        worst = worst.max(g.self_adjoint_deviation());
        worst = worst.max(g.matmul(g)?.max_diff(&id));
    }
    // AB = ±BA with B†A† = BA
    let pair = |a: &ComplexMatrix<R>, b: &ComplexMatrix<R>, anti: bool| -> Result<R> {
        let ab = a.matmul(b)?;
        let ba = ab.adjoint();
        Ok(if anti { (&ab + &ba).max_abs() } else { ab.max_diff(&ba) })
    };
    let m = zs.len();
    for i in 0..m {
        for j in 0..m {
            worst = worst.max(pair(&xs[i], &zs[j], i == j)?);
            if j > i {
                worst = worst.max(pair(&zs[i], &zs[j], false)?);
                worst = worst.max(pair(&xs[i], &xs[j], false)?);
            }
        }
    }
    let mut stab = R::zero();
    for z in &group.z_gens {
        stab = stab.max(z.matmul(code.frame())?.max_diff(code.frame()));
    }
    Ok(RelationReport {
        relations: worst.to_f64_lossy(),
        stabilizes: stab.to_f64_lossy(),
        forms: group.form_agreement.to_f64_lossy(),
    })
}

#[derive(Clone, Debug)]
pub struct SynthesisOptions<R: Real> {
    pub mode: TableMode,
    /// Commuting self-adjoint involutions whose sectors fix syndromes and padding.
    pub guides: Option<Vec<ComplexMatrix<R>>>,
    pub tol: R,
}

impl<R: Real> Default for SynthesisOptions<R> {
    fn default() -> Self {
        Self { mode: TableMode::Minimal, guides: None, tol: R::lit(1e-9) }
    }
}

#[derive(Clone, Debug)]
pub struct Synthesis<R: Real> {
    pub family: OrthonormalFamily<R>,
    pub plan: CapacityPlan,
    pub map: SyndromeMap,
    pub table: SyndromeTable<R>,
    pub group: PaulianGroup<R>,
}

fn infinite_ambient<R: Real>(code: &QuantumCode<R>) -> bool {
    code.ambient().is_truncated()
}

/// Family, plan, syndrome map, table, encoder, and generators in one pass.
pub fn synthesize<R: Real>(code: &QuantumCode<R>, opts: &SynthesisOptions<R>) -> Result<Synthesis<R>> {
    let family = crate::code::orthonormalize_errors(code, opts.tol)?;
    let dim_ambient = if infinite_ambient(code) { None } else { Some(code.ambient_dim()) };
    let plan = capacity_plan(family.len(), dim_ambient, code.dim(), code.num_qubits(), code.distance())?;
    synthesize_with_family(code, family, plan, opts)
}

pub fn synthesize_with_family<R: Real>(
    code: &QuantumCode<R>,
    family: OrthonormalFamily<R>,
    plan: CapacityPlan,
    opts: &SynthesisOptions<R>,
) -> Result<Synthesis<R>> {
    let map = match &opts.guides {
        Some(g) => {
            if g.len() != plan.m {
                return Err(Error::GuideIncompatible(format!(
                    "{} guides but the plan needs {} generators",
                    g.len(),
                    plan.m
                )));
            }
            assign_syndromes_guided(code, &family, plan.assigned, g, opts.tol)?
        }
        None => assign_syndromes(family.len(), plan.assigned, plan.m)?,
    };
    let table = build_syndrome_table(code, &family, &map, opts.mode, opts.guides.as_deref(), opts.tol)?;
    let u = build_encoder(&table)?;
    let group = derive_generators(&u, &table, infinite_ambient(code), opts.tol)?;
    Ok(Synthesis { family, plan, map, table, group })
}
