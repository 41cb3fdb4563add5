//! Codeword stabilized codes and Paulian stabilizers built from word-stabilizer signatures.
//!
//! Every vector `P|s⟩` is a joint eigenvector of the word stabilizer with
//! eigenvalues `comm_signature(P, g)`, and each joint eigenspace is one
//! dimensional. Syndrome spaces are therefore assembled from signatures.

use std::collections::{BTreeSet, HashMap};

use crate::code::{family_deviation, Ambient, Operator, OrthonormalFamily, QuantumCode};
use crate::error::{Error, Result};
use crate::linalg::{normalize, ComplexMatrix, Subspace};
use crate::pauli::{
    check_maximal_abelian, comm_signature, for_each_group_element, low_weight_paulis, signature_product,
    solve_signature, stabilized_state, subset_product, Letter, PauliOp, SignatureTuple,
};
use crate::scalar::{Real, C};
use crate::synthesis::{
    build_encoder, capacity_plan, derive_generators, CapacityPlan, PaulianGroup, SyndromeEntry, SyndromeMap,
    SyndromeTable, TableMode,
};

#[derive(Clone, Debug)]
pub struct CwsCode<R: Real> {
    n: usize,
    generators: Vec<PauliOp>,
    words: Vec<PauliOp>,
    word_signatures: Vec<SignatureTuple>,
    base_state: Vec<C<R>>,
    code: QuantumCode<R>,
}

/// Builds the code spanned by `W_i|s⟩`, where `|s⟩` is stabilized by `g`.
pub fn build_cws_code<R: Real>(g: &[PauliOp], words: &[PauliOp], tol: R) -> Result<CwsCode<R>> {
    if words.is_empty() {
        return Err(Error::InvalidInput("at least one word operator is required".into()));
    }
    check_maximal_abelian(g)?;
    let n = g[0].num_qubits();
    if let Some(w) = words.iter().find(|w| w.num_qubits() != n) {
        return Err(Error::LengthMismatch { left: w.num_qubits(), right: n });
    }
    let base_state: Vec<C<R>> = stabilized_state(g)?;
    let codewords = words.iter().map(|w| w.apply(&base_state)).collect::<Result<Vec<_>>>()?;
    let code = QuantumCode::from_codewords(Ambient::Qubits(n), &codewords, vec![], vec![], tol)?;
    let word_signatures = words.iter().map(|w| comm_signature(w, g)).collect::<Result<_>>()?;
    Ok(CwsCode { n, generators: g.to_vec(), words: words.to_vec(), word_signatures, base_state, code })
}

impl<R: Real> CwsCode<R> {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn words(&self) -> &[PauliOp] {
        &self.words
    }

    pub fn word_signatures(&self) -> &[SignatureTuple] {
        &self.word_signatures
    }

    pub fn base_state(&self) -> &[C<R>] {
        &self.base_state
    }

    pub fn code(&self) -> &QuantumCode<R> {
        &self.code
    }

    /// Normalized `P|s⟩` for a Pauli with `comm_signature(P, g) = sig`, the
    /// spanning vector of that joint eigenspace.
    pub fn eigenvector(&self, sig: &SignatureTuple) -> Result<Vec<C<R>>> {
        let p = solve_signature(&self.generators, sig)?
            .ok_or_else(|| Error::InvalidInput(format!("signature {sig} is not realizable")))?;
        let mut v = p.apply(&self.base_state)?;
        normalize(&mut v);
        Ok(v)
    }

    /// `(mask, λ)` with `p = λ·∏_{j∈mask} g_j` when `p` lies in the word stabilizer up to phase.
    pub fn stabilizer_decomposition(&self, p: &PauliOp) -> Result<Option<(u64, u8)>> {
        if !comm_signature(p, &self.generators)?.is_all_plus() {
            return Ok(None);
        }
        let Some(mask) = gf2_combination(&self.generators, p)? else { return Ok(None) };
        let s = subset_product(&self.generators, mask)?;
        Ok(Some((mask, (p.phase() + 4 - s.phase()) % 4)))
    }

    /// Whether `p` fixes every codeword, decided from commutation data alone.
    pub fn stabilizes_code(&self, p: &PauliOp) -> Result<bool> {
        let Some((mask, lambda)) = self.stabilizer_decomposition(p)? else { return Ok(false) };
        let s = subset_product(&self.generators, mask)?;
        for w in &self.words {
            let chi: u8 = if s.anticommutes_with(w)? { 2 } else { 0 };
            if !(lambda + chi).is_multiple_of(4) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Mask of generators whose product has the letters of `p`.
fn gf2_combination(gens: &[PauliOp], p: &PauliOp) -> Result<Option<u64>> {
    let k = gens.len();
    if k >= 64 {
        return Err(Error::InvalidInput("at most 63 generators are supported".into()));
    }
    let target = p.symplectic_vector();
    let width = target.len();
    // Columns are generators; augmented with the target.
    let mut rows: Vec<Vec<bool>> = (0..width)
        .map(|r| {
            let mut row: Vec<bool> = gens.iter().map(|g| g.symplectic_vector()[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(pr) = (rank..width).find(|&r| rows[r][col]) else { continue };
        rows.swap(rank, pr);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= *b;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[k]) {
        return Ok(None);
    }
    let mut mask = 0u64;
    for (r, &col) in pivots.iter().enumerate() {
        if rows[r][k] {
            mask |= 1 << col;
        }
    }
    Ok(Some(mask))
}

/// True iff every non-identity element of the word stabilizer has weight at least `d`.
pub fn nondegeneracy_check<R: Real>(cws: &CwsCode<R>, d: usize) -> bool {
    let mut ok = true;
    let run = for_each_group_element(&cws.generators, |mask, op| {
        if mask != 0 && op.weight() < d {
            ok = false;
        }
        ok
    });
    run.is_ok() && ok
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRequest {
    /// All Paulis of weight at most `⌊(d−1)/2⌋`, modulo the word stabilizer.
    Distance(usize),
    /// `{I, X_i, Y_i, Z_i}` on one site, for error-detecting codes.
    Site(usize),
    /// The identity followed by the given errors.
    Paulis(Vec<PauliOp>),
}

/// A Pauli family on a CWS code, with the code carrying the candidates as declared errors.
#[derive(Clone, Debug)]
pub struct PauliFamily<R: Real> {
    pub members: Vec<PauliOp>,
    pub family: OrthonormalFamily<R>,
    pub code: QuantumCode<R>,
    pub nondegenerate: Option<bool>,
    pub plan: CapacityPlan,
}

/// Chooses orthonormal Pauli errors and checks that a Paulian group can correct them.
///
/// Candidates whose signatures coincide with an earlier member differ from it
/// by a word-stabilizer element; they merge into the earliest member when that
/// element acts as a scalar on the code.
pub fn select_orthonormal_paulis<R: Real>(cws: &CwsCode<R>, request: FamilyRequest, tol: R) -> Result<PauliFamily<R>> {
    let n = cws.n;
    let dim_ambient = 1usize << n;
    let k = cws.code.dim();
    let (candidates, d, nondegenerate) = match request.clone() {
        FamilyRequest::Distance(d) => {
            if d == 0 {
                return Err(Error::InvalidInput("distance must be positive".into()));
            }
            let mut c = vec![PauliOp::identity(n)];
            c.extend(low_weight_paulis(n, (d - 1) / 2));
            (c, Some(d), Some(nondegeneracy_check(cws, d)))
        }
        FamilyRequest::Site(i) => {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, limit: n });
            }
            let mut c = vec![PauliOp::identity(n)];
            c.extend(Letter::NON_IDENTITY.iter().map(|&l| PauliOp::single(n, i, l)));
            (c, None, None)
        }
        FamilyRequest::Paulis(list) => {
            if let Some(p) = list.iter().find(|p| p.num_qubits() != n) {
                return Err(Error::LengthMismatch { left: p.num_qubits(), right: n });
            }
            let mut c = vec![PauliOp::identity(n)];
            c.extend(list);
            (c, None, None)
        }
    };

    let mut members: Vec<PauliOp> = Vec::new();
    let mut provenance: Vec<Vec<usize>> = Vec::new();
    let mut by_signature: HashMap<SignatureTuple, usize> = HashMap::new();
    let mut declared: Vec<PauliOp> = Vec::new();
    for p in candidates {
        let sig = comm_signature(&p, &cws.generators)?;
        let index = if p.is_identity_up_to_phase() {
            None
        } else {
            declared.push(p.clone());
            Some(declared.len() - 1)
        };
        match by_signature.get(&sig) {
            Some(&rep) => {
                let s = members[rep].adjoint().mul(&p)?;
                if !acts_as_scalar(cws, &s)? {
                    return Err(Error::NotCorrectable { deviation: 1.0 });
                }
                provenance[rep].extend(index);
            }
            None => {
                by_signature.insert(sig, members.len());
                members.push(p);
                provenance.push(index.into_iter().collect());
            }
        }
    }

    let names = declared.iter().map(|p| p.to_string()).collect();
    let code = cws.code.with_errors(declared.into_iter().map(Operator::Pauli).collect(), names)?;
    let code = match d {
        Some(d) => code.with_distance(d),
        None => code,
    };
    let family = OrthonormalFamily::from_paulis(members.clone(), provenance);
    let dev = family_deviation(&code, &family)?;
    if dev > tol {
        return Err(Error::NotCorrectable { deviation: dev.to_f64_lossy() });
    }
    let plan = capacity_plan(family.len(), Some(dim_ambient), k, Some(n), d)?;
    if !plan.feasible_full {
        return Err(Error::CapacityExceeded(format!(
            "{} orthonormal errors need 2^{}·{k} > {dim_ambient} dimensions",
            family.len(),
            plan.m + 1
        )));
    }
    Ok(PauliFamily { members, family, code, nondegenerate, plan })
}

/// Whether a word-stabilizer element (up to phase) acts as a scalar on the code.
fn acts_as_scalar<R: Real>(cws: &CwsCode<R>, s: &PauliOp) -> Result<bool> {
    let Some((mask, _)) = cws.stabilizer_decomposition(s)? else { return Ok(false) };
    let prod = subset_product(&cws.generators, mask)?;
    let mut first = None;
    for w in &cws.words {
        let a = prod.anticommutes_with(w)?;
        if *first.get_or_insert(a) != a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Signature bookkeeping for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignaturePlan {
    /// `𝕎_F` per member, in word order.
    pub member_sets: Vec<Vec<SignatureTuple>>,
    /// Signatures not reached by any member, in binary-counting order.
    pub spares: Vec<SignatureTuple>,
    /// `𝕎_(t)` per syndrome tuple, in binary-counting order; empty until filled.
    pub fills: Vec<Vec<SignatureTuple>>,
}

/// `𝕎_F` for every member and the spares `𝕎_⊥`.
pub fn signature_decompose<R: Real>(cws: &CwsCode<R>, members: &[PauliOp]) -> Result<SignaturePlan> {
    let mut owner: HashMap<SignatureTuple, usize> = HashMap::new();
    let mut member_sets = Vec::with_capacity(members.len());
    for (i, f) in members.iter().enumerate() {
        let sf = comm_signature(f, &cws.generators)?;
        let mut set = Vec::with_capacity(cws.words.len());
        for sw in &cws.word_signatures {
            let s = signature_product(sw, &sf)?;
            if let Some(&first) = owner.get(&s) {
                return Err(Error::SignatureCollision { signature: s.to_string(), first, second: i });
            }
            owner.insert(s.clone(), i);
            set.push(s);
        }
        member_sets.push(set);
    }
    let spares = SignatureTuple::enumerate(cws.n).filter(|s| !owner.contains_key(s)).collect();
    Ok(SignaturePlan { member_sets, spares, fills: Vec::new() })
}

impl SignaturePlan {
    /// Disjointness, equal cardinality, and containment of the fills.
    pub fn check(&self, map: &SyndromeMap) -> Result<()> {
        let mut seen = BTreeSet::new();
        let size = self.fills.first().map_or(0, Vec::len);
        for (idx, fill) in self.fills.iter().enumerate() {
            if fill.len() != size {
                return Err(Error::TableInvalid(format!("fill {idx} has {} signatures, expected {size}", fill.len())));
            }
            for s in fill {
                if !seen.insert(s.index()) {
                    return Err(Error::TableInvalid(format!("signature {s} used twice")));
                }
            }
            if let Some(member) = map.member_at(idx) {
                if self.member_sets[member].iter().any(|s| !fill.contains(s)) {
                    return Err(Error::TableInvalid(format!("fill {idx} misses part of its member's image")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SparePolicy {
    /// Spares in binary-counting order, handed to syndromes in binary-counting order.
    Lexicographic,
    /// Spares for each syndrome tuple, in binary-counting order of the tuples.
    Explicit(Vec<Vec<SignatureTuple>>),
}

/// Distributes spares over the syndrome tuples and assembles the syndrome table.
pub fn fill_syndrome_spaces<R: Real>(
    cws: &CwsCode<R>,
    fam: &PauliFamily<R>,
    plan: &SignaturePlan,
    map: &SyndromeMap,
    mode: TableMode,
    policy: &SparePolicy,
    tol: R,
) -> Result<(SignaturePlan, SyndromeTable<R>)> {
    let m = map.m();
    let slots = 1usize << m;
    let k = cws.code.dim();
    let target = match mode {
        TableMode::Minimal => k,
        TableMode::ExtendedFull => {
            if m > cws.n {
                return Err(Error::NotDivisible { numerator: 1 << cws.n, denominator: slots });
            }
            1usize << (cws.n - m)
        }
    };
    let needed: usize = (0..slots).map(|idx| target - if map.member_at(idx).is_some() { k } else { 0 }).sum();
    if target < k || needed > plan.spares.len() {
        return Err(Error::InsufficientSpares { needed, available: plan.spares.len() });
    }
    let spare_set: BTreeSet<usize> = plan.spares.iter().map(SignatureTuple::index).collect();
    let mut fills = Vec::with_capacity(slots);
    let mut cursor = 0;
    for idx in 0..slots {
        let mut fill = match map.member_at(idx) {
            Some(member) => plan.member_sets[member].clone(),
            None => Vec::new(),
        };
        let want = target - fill.len();
        match policy {
            SparePolicy::Lexicographic => {
                fill.extend(plan.spares[cursor..cursor + want].iter().cloned());
                cursor += want;
            }
            SparePolicy::Explicit(choice) => {
                let extra = choice.get(idx).ok_or(Error::InsufficientSpares { needed, available: 0 })?;
                if extra.len() != want {
                    return Err(Error::InsufficientSpares { needed: want, available: extra.len() });
                }
                if let Some(s) = extra.iter().find(|s| !spare_set.contains(&s.index())) {
                    return Err(Error::InvalidInput(format!("{s} is not a spare signature")));
                }
                fill.extend(extra.iter().cloned());
            }
        }
        fills.push(fill);
    }
    let mut done = plan.clone();
    done.fills = fills;
    done.check(map)?;

    let dim = 1usize << cws.n;
    let mut entries = Vec::with_capacity(slots);
    for (idx, fill) in done.fills.iter().enumerate() {
        let cols = fill.iter().map(|s| cws.eigenvector(s)).collect::<Result<Vec<_>>>()?;
        let frame = ComplexMatrix::from_columns(dim, &cols)?;
        entries.push(SyndromeEntry {
            tuple: SignatureTuple::from_index(m, idx),
            space: Subspace::from_frame(frame, R::lit(1e-6))?,
            error: map.member_at(idx),
        });
    }
    let table = SyndromeTable::new(m, k, entries, tol)?;
    table.validate(&fam.code, &fam.family, tol)?;
    Ok((done, table))
}

/// Generators plus, where one exists, a Pauli string equal to each `Z_i^S`.
#[derive(Clone, Debug)]
pub struct CwsStabilizers<R: Real> {
    pub group: PaulianGroup<R>,
    pub pauli_forms: Vec<Option<PauliOp>>,
}

/// `Z_i^S` from the filled table. When the syndrome spaces cover every
/// signature, `Z_i^S` is diagonal in the signature basis and equals a signed
/// word-stabilizer element exactly when that diagonal is a character.
pub fn cws_stabilizers<R: Real>(
    cws: &CwsCode<R>,
    plan: &SignaturePlan,
    table: &SyndromeTable<R>,
    tol: R,
) -> Result<CwsStabilizers<R>> {
    let u = build_encoder(table)?;
    let group = derive_generators(&u, table, false, tol)?;
    let m = table.m();
    let n = cws.n;
    let covered: usize = plan.fills.iter().map(Vec::len).sum();
    let mut pauli_forms = vec![None; m];
    if covered == 1 << n && n < 64 {
        for (i, form) in pauli_forms.iter_mut().enumerate() {
            let mut f = vec![0i64; 1 << n];
            for (idx, fill) in plan.fills.iter().enumerate() {
                let t = SignatureTuple::from_index(m, idx).get(i) as i64;
                for s in fill {
                    f[s.index()] = t;
                }
            }
            walsh_hadamard(&mut f);
            let full = 1i64 << n;
            if let Some(pos) = f.iter().position(|&c| c.abs() == full) {
                // index bit (n-1-j) set means generator j is in the product
                let mask = (0..n).filter(|j| pos >> (n - 1 - j) & 1 == 1).fold(0u64, |acc, j| acc | 1 << j);
                let mut p = subset_product(&cws.generators, mask)?;
                if f[pos] < 0 {
                    p = PauliOp::from_bits((p.phase() + 2) % 4, p.x_bits().to_vec(), p.z_bits().to_vec())?;
                }
                let dense = p.to_matrix::<R>();
                if dense.max_diff(&group.z_gens[i]) <= tol.sqrt() {
                    *form = Some(p);
                }
            }
        }
    }
    Ok(CwsStabilizers { group, pauli_forms })
}

fn walsh_hadamard(f: &mut [i64]) {
    let mut h = 1;
    while h < f.len() {
        for start in (0..f.len()).step_by(2 * h) {
            for j in start..start + h {
                let (a, b) = (f[j], f[j + h]);
                f[j] = a + b;
                f[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Everything produced by running the construction end to end.
#[derive(Clone, Debug)]
pub struct CwsSynthesis<R: Real> {
    pub family: PauliFamily<R>,
    pub map: SyndromeMap,
    pub signatures: SignaturePlan,
    pub table: SyndromeTable<R>,
    pub stabilizers: CwsStabilizers<R>,
}

pub fn synthesize_cws<R: Real>(
    cws: &CwsCode<R>,
    request: FamilyRequest,
    mode: TableMode,
    policy: &SparePolicy,
    tol: R,
) -> Result<CwsSynthesis<R>> {
    let family = select_orthonormal_paulis(cws, request, tol)?;
    let map = crate::synthesis::assign_syndromes(family.family.len(), family.plan.assigned, family.plan.m)?;
    let signatures = signature_decompose(cws, &family.members)?;
    let (signatures, table) = fill_syndrome_spaces(cws, &family, &signatures, &map, mode, policy, tol)?;
    let stabilizers = cws_stabilizers(cws, &signatures, &table, tol)?;
    Ok(CwsSynthesis { family, map, signatures, table, stabilizers })
}

/// `base` and its cyclic left shifts.
pub fn cyclic_generators(base: &str) -> Result<Vec<PauliOp>> {
    let n = base.chars().count();
    let chars: Vec<char> = base.chars().collect();
    (0..n)
        .map(|s| {
            let rotated: String = (0..n).map(|i| chars[(i + s) % n]).collect();
            rotated.parse()
        })
        .collect()
}

fn parse_all(list: &[&str]) -> Result<Vec<PauliOp>> {
    list.iter().map(|s| s.parse()).collect()
}

/// The ((5,6,2)) code: word stabilizer generated by `ZXZII` and its shifts.
pub fn code_5_6_2<R: Real>(tol: R) -> Result<CwsCode<R>> {
    let words = parse_all(&["IIIII", "ZZIZI", "IZZIZ", "ZIZZI", "IZIZZ", "ZIZIZ"])?;
    build_cws_code(&cyclic_generators("ZXZII")?, &words, tol)
}

/// Spares `{â,b̂}, {ĉ,d̂}, {ê,f̂}, {ĝ,ĥ}` for syndromes `(1,1), (1,−1), (−1,1), (−1,−1)`
/// of the ((5,6,2)) code with the family `{I, X, Y, Z}` on the middle qubit (site index 2).
pub fn spares_5_6_2() -> SparePolicy {
    let t = |v: [i8; 5]| SignatureTuple::new(v.to_vec()).expect("valid signs");
    SparePolicy::Explicit(vec![
        vec![t([-1, -1, -1, 1, -1]), t([-1, -1, -1, 1, 1])],
        vec![t([-1, 1, 1, 1, -1]), t([1, -1, -1, -1, -1])],
        vec![t([-1, 1, 1, 1, 1]), t([1, -1, -1, -1, 1])],
        vec![t([1, 1, 1, -1, -1]), t([1, 1, 1, -1, 1])],
    ])
}

/// The ((9,12,3)) code: word stabilizer generated by `ZXZIIIIII` and its shifts.
pub fn code_9_12_3<R: Real>(tol: R) -> Result<CwsCode<R>> {
    let words = parse_all(&[
        "IIIIIIIII",
        "IIIZIIIZZ",
        "IIZIIIZZI",
        "IZIIZIIZI",
        "IZIZZIIIZ",
        "IZZIZIZII",
        "ZIIZZZIIZ",
        "ZIZIZZZZI",
        "ZIZZIZZZZ",
        "ZZIZIZIZZ",
        "ZZZIIZZII",
        "ZZZZZZZIZ",
    ])?;
    build_cws_code(&cyclic_generators("ZXZIIIIII")?, &words, tol)
}
