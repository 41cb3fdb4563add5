//! Symplectic n-qubit Pauli algebra.
//!
//! A [`PauliOp`] stores `i^phase · ⊗_j X^{x_j} Z^{z_j}` with the phase kept
//! apart from the bit content, so the phaseless quotient is obtained by
//! dropping the phase field. Under this convention `Y = i·X·Z`.
//!
//! Qubit 0 is the leftmost tensor factor and the most significant bit of a
//! basis index. Basis index bit 0 is the `+1` eigenstate of `Z`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{basis_vector, normalize, ComplexMatrix};
use crate::scalar::{i_pow, Real, C};

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const NON_IDENTITY: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOp {
    phase: u8,
    x: Vec<bool>,
    z: Vec<bool>,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self { phase: 0, x: vec![false; n], z: vec![false; n] }
    }

    /// `i^phase · X^x Z^z`.
    pub fn from_bits(phase: u8, x: Vec<bool>, z: Vec<bool>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: z.len() });
        }
        Ok(Self { phase: phase % 4, x, z })
    }

    /// Product of letters with no extra phase, e.g. `[X, Y]` is `X⊗Y`.
    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut p = Self::identity(letters.len());
        for (j, &l) in letters.iter().enumerate() {
            let (x, z) = l.bits();
            p.x[j] = x;
            p.z[j] = z;
            if l == Letter::Y {
                p.phase = (p.phase + 1) % 4;
            }
        }
        p
    }

    /// `letter` on `site`, identity elsewhere.
    pub fn single(n: usize, site: usize, letter: Letter) -> Self {
        let mut letters = vec![Letter::I; n];
        letters[site] = letter;
        Self::from_letters(&letters)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> &[bool] {
        &self.x
    }

    pub fn z_bits(&self) -> &[bool] {
        &self.z
    }

    pub fn letter(&self, site: usize) -> Letter {
        Letter::from_bits(self.x[site], self.z[site])
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_qubits()).map(|j| self.letter(j)).collect()
    }

    fn y_count(&self) -> u8 {
        (self.x.iter().zip(&self.z).filter(|(&a, &b)| a && b).count() % 4) as u8
    }

    /// Phase relative to the plain letter string: `self = i^k · letters`.
    pub fn letter_phase(&self) -> u8 {
        (self.phase + 4 - self.y_count()) % 4
    }

    /// Same letters with phase factor removed (coset representative of the phaseless group).
    pub fn phaseless(&self) -> Self {
        Self { phase: self.y_count(), x: self.x.clone(), z: self.z.clone() }
    }

    pub fn with_letter_phase(&self, k: u8) -> Self {
        Self { phase: (self.y_count() + k) % 4, x: self.x.clone(), z: self.z.clone() }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(&self.z).all(|b| !b)
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(&a, &b)| a || b).count()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::LengthMismatch { left: self.num_qubits(), right: other.num_qubits() });
        }
        Ok(())
    }

    /// Group product `self · other` with exact phase.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        // Z^z1 X^x2 = (-1)^{z1·x2} X^x2 Z^z1 on each qubit.
        let swaps = self.z.iter().zip(&other.x).filter(|(&a, &b)| a && b).count();
        let phase = ((self.phase as usize + other.phase as usize + 2 * swaps) % 4) as u8;
        Ok(Self {
            phase,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Symplectic form over GF(2): `true` when the operators anticommute.
    pub fn anticommutes_with(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        let mut s = false;
        for j in 0..self.num_qubits() {
            s ^= (self.x[j] & other.z[j]) ^ (self.z[j] & other.x[j]);
        }
        Ok(s)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        self.anticommutes_with(other).map(|a| !a)
    }

    pub fn adjoint(&self) -> Self {
        // (i^k X^x Z^z)† = i^{-k} Z^z X^x = i^{-k} (-1)^{x·z} X^x Z^z
        let xz = self.x.iter().zip(&self.z).filter(|(&a, &b)| a && b).count();
        let phase = ((8 - self.phase as usize + 2 * xz) % 4) as u8;
        Self { phase, x: self.x.clone(), z: self.z.clone() }
    }

    /// `self²` is always `±I`; returns `true` for `+I`.
    pub fn squares_to_identity(&self) -> bool {
        let xz = self.x.iter().zip(&self.z).filter(|(&a, &b)| a && b).count();
        (self.phase as usize + xz).is_multiple_of(2)
    }

    fn masks(&self) -> (usize, usize) {
        let n = self.num_qubits();
        let mut xm = 0usize;
        let mut zm = 0usize;
        for j in 0..n {
            if self.x[j] {
                xm |= 1 << (n - 1 - j);
            }
            if self.z[j] {
                zm |= 1 << (n - 1 - j);
            }
        }
        (xm, zm)
    }

    /// Applies the operator to a state vector of length `2^n`.
    pub fn apply<R: Real>(&self, v: &[C<R>]) -> Result<Vec<C<R>>> {
        let dim = 1usize << self.num_qubits();
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        let (xm, zm) = self.masks();
        let ph = i_pow::<R>(self.phase);
        let mut out = vec![C::zero(); dim];
        for (b, &amp) in v.iter().enumerate() {
            let sign = if (zm & b).count_ones() % 2 == 0 { ph } else { -ph };
            out[b ^ xm] = sign * amp;
        }
        Ok(out)
    }

    /// Applies the operator to every column of `m`.
    pub fn apply_columns<R: Real>(&self, m: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
        let cols: Result<Vec<_>> = m.columns().iter().map(|c| self.apply(c)).collect();
        ComplexMatrix::from_columns(m.rows(), &cols?)
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn to_matrix<R: Real>(&self) -> ComplexMatrix<R> {
        let dim = 1usize << self.num_qubits();
        let (xm, zm) = self.masks();
        let ph = i_pow::<R>(self.phase);
        let mut m = ComplexMatrix::zeros(dim, dim);
        for b in 0..dim {
            let sign = if (zm & b).count_ones() % 2 == 0 { ph } else { -ph };
            m[(b ^ xm, b)] = sign;
        }
        m
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut x = self.x.clone();
        x.extend_from_slice(&other.x);
        let mut z = self.z.clone();
        z.extend_from_slice(&other.z);
        Self { phase: (self.phase + other.phase) % 4, x, z }
    }

    /// Qubits `start..end` with the letter content only.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        Self::from_letters(&self.letters()[start..end])
    }

    pub fn symplectic_vector(&self) -> Vec<bool> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.z);
        v
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_pauli(text)
    }
}

/// Parses `[+|-|+i|-i]{I,X,Y,Z}+`; the minus sign may also be `−` (U+2212).
pub fn parse_pauli(text: &str) -> Result<PauliOp> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut k = 0u8;
    match chars.first() {
        Some('+') => pos = 1,
        Some('-') | Some('\u{2212}') => {
            k = 2;
            pos = 1;
        }
        _ => {}
    }
    if pos == 1 && chars.get(1) == Some(&'i') {
        k += 1;
        pos = 2;
    }
    if pos == chars.len() {
        return Err(Error::Parse { position: pos, message: "expected at least one of I, X, Y, Z".into() });
    }
    let mut letters = Vec::with_capacity(chars.len() - pos);
    for (offset, ch) in chars[pos..].iter().enumerate() {
        letters.push(match ch {
            'I' => Letter::I,
            'X' => Letter::X,
            'Y' => Letter::Y,
            'Z' => Letter::Z,
            other => {
                return Err(Error::Parse { position: pos + offset, message: format!("unexpected character {other:?}") })
            }
        });
    }
    Ok(PauliOp::from_letters(&letters).with_letter_phase(k))
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.letter_phase() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// Tuple of `±1` values: a syndrome `(t)` or a word-stabilizer signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignatureTuple(Vec<i8>);

impl SignatureTuple {
    pub fn new(components: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = components.iter().find(|&&c| c != 1 && c != -1) {
            return Err(Error::InvalidInput(format!("signature component {bad} is not ±1")));
        }
        Ok(Self(components))
    }

    /// `(1, …, 1)`.
    pub fn all_plus(m: usize) -> Self {
        Self(vec![1; m])
    }

    /// Binary-counting enumeration: `+1 ↔ 0`, `−1 ↔ 1`, first component most significant.
    pub fn from_index(m: usize, index: usize) -> Self {
        Self((0..m).map(|k| if (index >> (m - 1 - k)) & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn index(&self) -> usize {
        let m = self.0.len();
        self.0.iter().enumerate().fold(0, |acc, (k, &c)| if c == -1 { acc | (1 << (m - 1 - k)) } else { acc })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, k: usize) -> i8 {
        self.0[k]
    }

    pub fn is_all_plus(&self) -> bool {
        self.0.iter().all(|&c| c == 1)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        signature_product(self, other)
    }

    /// Every tuple of length `m`, in binary-counting order.
    pub fn enumerate(m: usize) -> impl Iterator<Item = SignatureTuple> {
        (0..1usize << m).map(move |i| SignatureTuple::from_index(m, i))
    }
}

impl fmt::Display for SignatureTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Component `j` is `+1` when `p` commutes with `gens[j]`, `−1` otherwise.
pub fn comm_signature(p: &PauliOp, gens: &[PauliOp]) -> Result<SignatureTuple> {
    gens.iter()
        .map(|g| p.anticommutes_with(g).map(|a| if a { -1 } else { 1 }))
        .collect::<Result<Vec<_>>>()
        .map(SignatureTuple)
}

/// Componentwise product.
pub fn signature_product(a: &SignatureTuple, b: &SignatureTuple) -> Result<SignatureTuple> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(SignatureTuple(a.0.iter().zip(&b.0).map(|(x, y)| x * y).collect()))
}

pub fn pauli_weight(p: &PauliOp) -> usize {
    p.weight()
}

/// Structure of the subgroup generated by a list of Pauli operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupReport {
    pub contains_minus_i: bool,
    /// No two distinct group elements are proportional.
    pub linearly_independent: bool,
    pub abelian: bool,
    /// Order of the group modulo its scalar subgroup.
    pub phaseless_order: u128,
    /// GF(2) rank of the generators' symplectic vectors.
    pub rank: usize,
    /// Exponents `k` with `i^k·I` in the group.
    pub scalar_phases: Vec<u8>,
}

fn check_uniform(gens: &[PauliOp]) -> Result<usize> {
    let n = gens.first().map_or(0, PauliOp::num_qubits);
    for g in gens {
        if g.num_qubits() != n {
            return Err(Error::LengthMismatch { left: n, right: g.num_qubits() });
        }
    }
    Ok(n)
}

/// Decides which scalars the group contains by GF(2) elimination with a
/// phase accumulator; no dense matrices are formed.
pub fn subgroup_analysis(gens: &[PauliOp]) -> Result<SubgroupReport> {
    let n = check_uniform(gens)?;
    let mut abelian = true;
    for (a, ga) in gens.iter().enumerate() {
        for gb in &gens[a + 1..] {
            if ga.anticommutes_with(gb)? {
                abelian = false;
            }
        }
    }
    // Scalar subgroup of Z4 generated by commutators, squares, and dependencies.
    let mut scalar_gens: Vec<u8> = Vec::new();
    if !abelian {
        scalar_gens.push(2);
    }
    for g in gens {
        if !g.squares_to_identity() {
            scalar_gens.push(2);
        }
    }
    let mut rows: Vec<PauliOp> = gens.to_vec();
    let mut rank = 0;
    for col in 0..2 * n {
        let pivot = (rank..rows.len()).find(|&r| rows[r].symplectic_vector()[col]);
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.symplectic_vector()[col] {
                *row = row.mul(&pivot_row)?;
            }
        }
        rank += 1;
    }
    for zero_row in &rows[rank..] {
        debug_assert!(zero_row.is_identity_up_to_phase());
        if zero_row.phase() != 0 {
            scalar_gens.push(zero_row.phase());
        }
    }
    let mut scalars = vec![0u8];
    loop {
        let mut grew = false;
        for &s in &scalar_gens {
            for k in scalars.clone() {
                let v = (k + s) % 4;
                if !scalars.contains(&v) {
                    scalars.push(v);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    scalars.sort_unstable();
    Ok(SubgroupReport {
        contains_minus_i: scalars.contains(&2),
        linearly_independent: scalars.len() == 1,
        abelian,
        phaseless_order: 1u128 << rank,
        rank,
        scalar_phases: scalars,
    })
}

/// Succeeds when `gens` are `n` independent commuting generators not generating `−I`.
pub fn check_maximal_abelian(gens: &[PauliOp]) -> Result<SubgroupReport> {
    let report = subgroup_analysis(gens)?;
    let n = gens.first().map_or(0, PauliOp::num_qubits);
    if !report.abelian {
        return Err(Error::NotMaximalAbelian("generators anticommute".into()));
    }
    if report.contains_minus_i {
        return Err(Error::NotMaximalAbelian("group contains -I".into()));
    }
    if report.rank != gens.len() {
        return Err(Error::NotMaximalAbelian(format!(
            "generators are dependent (rank {} of {})",
            report.rank,
            gens.len()
        )));
    }
    if report.rank != n {
        return Err(Error::NotMaximalAbelian(format!("{} generators on {} qubits", report.rank, n)));
    }
    Ok(report)
}

/// Seed norms below this are skipped when projecting onto the stabilized state.
const SEED_MIN_NORM: f64 = 1e-6;

/// The unique joint `+1` eigenvector of a maximal independent abelian group.
///
/// `∏_j (I+g_j)/2` is applied to standard basis vectors in ascending order;
/// the first image with norm at least `1e-6` is normalized and its first
/// nonzero amplitude made real positive.
pub fn stabilized_state<R: Real>(gens: &[PauliOp]) -> Result<Vec<C<R>>> {
    check_maximal_abelian(gens)?;
    let n = gens.first().map_or(0, PauliOp::num_qubits);
    let dim = 1usize << n;
    let half = R::lit(0.5);
    for k in 0..dim {
        let mut v: Vec<C<R>> = basis_vector(dim, k);
        for g in gens {
            let gv = g.apply(&v)?;
            for (a, b) in v.iter_mut().zip(gv) {
                *a = (*a + b) * half;
            }
        }
        let nv = normalize(&mut v);
        if nv < R::lit(SEED_MIN_NORM) {
            continue;
        }
        fix_global_phase(&mut v);
        return Ok(v);
    }
    Err(Error::ZeroProjection)
}

/// Rotates `v` so its first non-negligible amplitude is real positive.
pub fn fix_global_phase<R: Real>(v: &mut [C<R>]) {
    let cutoff = R::lit(1e-12);
    if let Some(&a) = v.iter().find(|z| z.norm() > cutoff) {
        let rot = a.conj() / a.norm();
        for z in v.iter_mut() {
            *z = *z * rot;
        }
    }
}

/// All `2^k` products of subsets of `gens` (generator order within a product
/// is ascending), visited in Gray-code order with the subset mask.
pub fn for_each_group_element(gens: &[PauliOp], mut visit: impl FnMut(u64, &PauliOp) -> bool) -> Result<()> {
    let n = check_uniform(gens)?;
    let k = gens.len();
    assert!(k < 64, "too many generators to enumerate");
    let mut current = PauliOp::identity(n);
    let mut mask = 0u64;
    if !visit(0, &current) {
        return Ok(());
    }
    for step in 1u64..(1u64 << k) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        current = current.mul(&gens[bit])?;
        // Canonical element for `mask` fixed up to phase; callers use letters only.
        if !visit(mask, &current) {
            break;
        }
    }
    Ok(())
}

/// Product `∏_{j ∈ mask} gens[j]` taken in ascending generator order.
pub fn subset_product(gens: &[PauliOp], mask: u64) -> Result<PauliOp> {
    let n = check_uniform(gens)?;
    let mut p = PauliOp::identity(n);
    for (j, g) in gens.iter().enumerate() {
        if (mask >> j) & 1 == 1 {
            p = p.mul(g)?;
        }
    }
    Ok(p)
}

/// Finds a Pauli `P` (plain letter string) with `comm_signature(P, gens) = target`.
///
/// Solved over GF(2) with free variables set to zero, so the answer is
/// deterministic. Returns `None` when the system is inconsistent.
pub fn solve_signature(gens: &[PauliOp], target: &SignatureTuple) -> Result<Option<PauliOp>> {
    let n = check_uniform(gens)?;
    if target.len() != gens.len() {
        return Err(Error::LengthMismatch { left: target.len(), right: gens.len() });
    }
    // Row j: (z_g, x_g) · (x_P, z_P) = [target_j == -1]
    let width = 2 * n;
    let mut rows: Vec<Vec<bool>> = gens
        .iter()
        .zip(target.components())
        .map(|(g, &t)| {
            let mut r = g.z_bits().to_vec();
            r.extend_from_slice(g.x_bits());
            r.push(t == -1);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else { continue };
        rows.swap(rank, p);
        let pr = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (a, b) in row.iter_mut().zip(&pr) {
                    *a ^= *b;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[width]) {
        return Ok(None);
    }
    let mut sol = vec![false; width];
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = rows[r][width];
    }
    let x = sol[..n].to_vec();
    let z = sol[n..].to_vec();
    let letters: Vec<Letter> = x.iter().zip(&z).map(|(&a, &b)| Letter::from_bits(a, b)).collect();
    Ok(Some(PauliOp::from_letters(&letters)))
}

/// Every Pauli of weight `1..=max_weight` in canonical order: by weight, then
/// lexicographic site tuples, then letters `X < Y < Z` per site.
pub fn low_weight_paulis(n: usize, max_weight: usize) -> Vec<PauliOp> {
    let mut out = Vec::new();
    for w in 1..=max_weight.min(n) {
        let mut sites: Vec<usize> = (0..w).collect();
        loop {
            let total = 3usize.pow(w as u32);
            for code in 0..total {
                let mut letters = vec![Letter::I; n];
                let mut c = code;
                for pos in (0..w).rev() {
                    letters[sites[pos]] = Letter::NON_IDENTITY[c % 3];
                    c /= 3;
                }
                out.push(PauliOp::from_letters(&letters));
            }
            // next combination
            let mut i = w;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if sites[i] < n - w + i {
                    sites[i] += 1;
                    for j in i + 1..w {
                        sites[j] = sites[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}
