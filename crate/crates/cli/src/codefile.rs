//! The JSON code file: schema, loading, validation, and conversion to library types.

use std::path::Path;

use serde::{Deserialize, Serialize};

use paulian::code::{Ambient, Operator};
use paulian::cws::{FamilyRequest, SparePolicy};
use paulian::pauli::low_weight_paulis;
use paulian::synthesis::TableMode;
use paulian::zoo::{FockKind, FockSpace, PauliSum};
use paulian::{Matrix, PauliOp, SignatureTuple, C};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// Largest ambient dimension the dense pipeline accepts.
pub const MAX_AMBIENT_DIM: usize = 4096;

const RENORMALIZE_WARN: f64 = 1e-6;

/// Complex number as `[re, im]`.
pub type Amp = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient: AmbientBlock,
    pub code: CodeBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<ErrorsBlock>,
    #[serde(default, skip_serializing_if = "OptionsBlock::is_empty")]
    pub options: OptionsBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<Vec<ChannelEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AmbientBlock {
    Qubits(usize),
    Bosonic { modes: usize, cutoff: usize },
}

impl AmbientBlock {
    pub fn to_ambient(&self) -> Ambient {
        match *self {
            AmbientBlock::Qubits(n) => Ambient::Qubits(n),
            AmbientBlock::Bosonic { modes, cutoff } => Ambient::Bosonic { modes, cutoff },
        }
    }

    /// `None` when the dimension overflows.
    pub fn dim(&self) -> Option<usize> {
        match *self {
            AmbientBlock::Qubits(n) => 1usize.checked_shl(n as u32).filter(|_| n < usize::BITS as usize),
            AmbientBlock::Bosonic { modes, cutoff } => (cutoff + 1).checked_pow(modes as u32),
        }
    }

    pub fn qubits(&self) -> Option<usize> {
        match *self {
            AmbientBlock::Qubits(n) => Some(n),
            AmbientBlock::Bosonic { .. } => None,
        }
    }

    pub fn fock(&self) -> Option<FockSpace> {
        match *self {
            AmbientBlock::Qubits(_) => None,
            AmbientBlock::Bosonic { modes, cutoff } => Some(FockSpace::new(modes, cutoff)),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            AmbientBlock::Qubits(1) => "1 qubit".into(),
            AmbientBlock::Qubits(n) => format!("{n} qubits"),
            AmbientBlock::Bosonic { modes: 1, cutoff } => format!("1 bosonic mode, cutoff {cutoff}"),
            AmbientBlock::Bosonic { modes, cutoff } => format!("{modes} bosonic modes, cutoff {cutoff}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CodeBlock {
    Codewords(Vec<Vec<Amp>>),
    Cws {
        generators: Vec<String>,
        words: Vec<String>,
    },
    Zoo {
        constructor: ZooConstructor,
        #[serde(default, skip_serializing_if = "ZooParams::is_empty")]
        params: ZooParams,
    },
    Binary {
        stabilizers: Vec<OperatorSpec>,
        logical_x: Vec<OperatorSpec>,
        logical_z: Vec<OperatorSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        distance: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZooConstructor {
    Repetition,
    GeneralizedRepetition,
    Binomial,
    TwoMode,
    #[serde(rename = "code_5_6_2")]
    Code5_6_2,
    #[serde(rename = "code_9_12_3")]
    Code9_12_3,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZooParams {
    /// Single-site error of a generalized repetition code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Amp>>>,
}

impl ZooParams {
    fn is_empty(&self) -> bool {
        self.matrix.is_none()
    }
}

/// A Pauli string, or a weighted sum of Pauli strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Pauli(String),
    Sum(Vec<SumTerm>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumTerm {
    pub coefficient: Amp,
    pub pauli: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ErrorsBlock {
    Pauli(Vec<String>),
    /// Every Pauli of weight `1..=w`.
    PauliWeight(usize),
    /// `a`, `n`, `parity`, optionally suffixed with a 1-based mode such as `a[2]`.
    Bosonic(Vec<String>),
    Matrices(Vec<NamedMatrix>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Vec<Vec<Amp>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    Minimal,
    ExtendedFull,
}

impl From<ModeName> for TableMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Minimal => TableMode::Minimal,
            ModeName::ExtendedFull => TableMode::ExtendedFull,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Request {
    #[default]
    Correct,
    Detect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GuideChoice {
    Parity,
    None,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub request: Option<Request>,
    /// 0-based qubit for the `{I, X, Y, Z}` family of an error-detecting CWS code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site: Option<usize>,
    /// Spare signatures for each syndrome tuple, in binary-counting order of the tuples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spares: Option<Vec<Vec<Vec<i8>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guides: Option<GuideChoice>,
}

impl OptionsBlock {
    fn is_empty(&self) -> bool {
        *self == OptionsBlock::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelEntry {
    pub error: String,
    pub weight: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateBlock {
    /// Coordinates in the codeword basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical: Option<Vec<Amp>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<Amp>>,
    /// Error applied before measurement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn amp(a: Amp) -> C<f64> {
    C::new(a[0], a[1])
}

pub fn to_amp(c: C<f64>) -> Amp {
    [c.re, c.im]
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, context: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        CliError::Parse {
            context: context.to_string(),
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Reads, validates, and normalizes a code file. Renormalizations larger
/// than `1e-6` are returned as warnings.
pub fn load_code_file(path: &Path) -> CliResult<(CodeFile, Vec<String>)> {
    let text = read_text(path)?;
    let mut file: CodeFile = parse_json(&text, &path.display().to_string())?;
    let issues = file.validate();
    if !issues.is_empty() {
        return Err(CliError::Validation(issues));
    }
    let warnings = file.normalize();
    Ok((file, warnings))
}

fn norm(v: &[Amp]) -> f64 {
    v.iter().map(|a| a[0] * a[0] + a[1] * a[1]).sum::<f64>().sqrt()
}

fn normalize_vec(v: &mut [Amp], what: &str, warnings: &mut Vec<String>) {
    let n = norm(v);
    if n > 0.0 {
        if (n - 1.0).abs() > RENORMALIZE_WARN {
            warnings.push(format!("{what} renormalized from norm {n}"));
        }
        for a in v.iter_mut() {
            a[0] /= n;
            a[1] /= n;
        }
    }
}

fn finite_amps(v: &[Amp]) -> bool {
    v.iter().all(|a| a[0].is_finite() && a[1].is_finite())
}

fn check_pauli(s: &str, n: Option<usize>, what: &str, issues: &mut Vec<String>) {
    match s.parse::<PauliOp>() {
        Ok(p) => {
            if let Some(n) = n {
                if p.num_qubits() != n {
                    issues.push(format!("{what} `{s}` acts on {} qubits, ambient has {n}", p.num_qubits()));
                }
            }
        }
        Err(e) => issues.push(format!("{what} `{s}`: {e}")),
    }
}

fn check_matrix(m: &[Vec<Amp>], dim: Option<usize>, what: &str, issues: &mut Vec<String>) {
    let rows = m.len();
    if rows == 0 {
        issues.push(format!("{what} is empty"));
        return;
    }
    if m.iter().any(|r| r.len() != rows) {
        issues.push(format!("{what} is not square"));
    }
    if let Some(d) = dim {
        if rows != d {
            issues.push(format!("{what} has {rows} rows, ambient dimension is {d}"));
        }
    }
    if !m.iter().all(|r| finite_amps(r)) {
        issues.push(format!("{what} has non-finite entries"));
    }
}

/// Parses a named bosonic operator such as `a`, `a[2]`, `n[1]`, or `parity`.
pub fn parse_bosonic(name: &str, space: &FockSpace) -> Result<(FockKind, usize), String> {
    let (head, mode) = match name.split_once('[') {
        Some((h, rest)) => {
            let idx = rest
                .strip_suffix(']')
                .and_then(|i| i.parse::<usize>().ok())
                .ok_or_else(|| format!("malformed mode index in `{name}`"))?;
            (h, idx)
        }
        None => (name, 1),
    };
    let kind = match head {
        "a" => FockKind::Annihilation,
        "n" => FockKind::Number,
        "parity" => FockKind::Parity,
        _ => return Err(format!("unknown bosonic operator `{name}` (expected a, n, or parity)")),
    };
    if mode == 0 || mode > space.modes {
        return Err(format!("`{name}` names mode {mode}, but modes are numbered 1..={}", space.modes));
    }
    Ok((kind, mode - 1))
}

impl CodeFile {
    /// Every violated invariant, in document order.
    pub fn validate(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.format_version != FORMAT_VERSION {
            issues.push(format!("format_version is {}, expected {FORMAT_VERSION}", self.format_version));
        }
        let dim = self.ambient.dim();
        let n = self.ambient.qubits();
        match &self.ambient {
            AmbientBlock::Qubits(q) if *q == 0 => issues.push("ambient.qubits must be positive".into()),
            AmbientBlock::Bosonic { modes, cutoff } if *modes == 0 || *cutoff == 0 => {
                issues.push("ambient.bosonic needs at least one mode and a positive cutoff".into())
            }
            _ => {}
        }
        match dim {
            Some(d) if d <= MAX_AMBIENT_DIM => {}
            _ => issues.push(format!("ambient dimension exceeds {MAX_AMBIENT_DIM}")),
        }
        let dim = dim.filter(|&d| d <= MAX_AMBIENT_DIM);
        self.validate_code(dim, n, &mut issues);
        self.validate_errors(dim, n, &mut issues);
        self.validate_options(n, &mut issues);
        if let Some(ch) = &self.channel {
            if ch.is_empty() {
                issues.push("channel has no entries".into());
            }
            for e in ch {
                if !(e.weight.is_finite() && e.weight >= 0.0) {
                    issues.push(format!("channel weight of `{}` is {}", e.error, e.weight));
                }
            }
            let total: f64 = ch.iter().map(|e| e.weight).sum();
            if total.is_finite() && (total - 1.0).abs() > 1e-9 {
                issues.push(format!("channel weights sum to {total}, expected 1"));
            }
        }
        if let Some(s) = &self.state {
            match (&s.logical, &s.ambient) {
                (Some(v), None) | (None, Some(v)) => {
                    if !finite_amps(v) || norm(v) == 0.0 {
                        issues.push("state amplitudes must be finite and not all zero".into());
                    }
                    if let (Some(d), Some(_)) = (dim, &s.ambient) {
                        if v.len() != d {
                            issues.push(format!("state.ambient has {} amplitudes, ambient dimension is {d}", v.len()));
                        }
                    }
                }
                _ => issues.push("state needs exactly one of `logical` or `ambient`".into()),
            }
        }
        issues
    }

    fn validate_code(&self, dim: Option<usize>, n: Option<usize>, issues: &mut Vec<String>) {
        match &self.code {
            CodeBlock::Codewords(words) => {
                if words.is_empty() {
                    issues.push("code.codewords is empty".into());
                }
                for (i, w) in words.iter().enumerate() {
                    if let Some(d) = dim {
                        if w.len() != d {
                            issues.push(format!("codeword {i} has {} amplitudes, ambient dimension is {d}", w.len()));
                        }
                    }
                    if !finite_amps(w) {
                        issues.push(format!("codeword {i} has non-finite amplitudes"));
                    } else if norm(w) == 0.0 {
                        issues.push(format!("codeword {i} is zero"));
                    }
                }
            }
            CodeBlock::Cws { generators, words } => {
                let Some(q) = n else {
                    issues.push("a cws code needs a qubit ambient".into());
                    return;
                };
                if generators.len() != q {
                    issues.push(format!("cws has {} generators, expected {q}", generators.len()));
                }
                if words.is_empty() {
                    issues.push("cws has no word operators".into());
                }
                for g in generators {
                    check_pauli(g, Some(q), "cws generator", issues);
                }
                for w in words {
                    check_pauli(w, Some(q), "cws word", issues);
                }
            }
            CodeBlock::Zoo { constructor, params } => {
                let expect = |ok: bool, what: &str, issues: &mut Vec<String>| {
                    if !ok {
                        issues.push(format!("zoo constructor {constructor:?} needs {what}"));
                    }
                };
                match constructor {
                    ZooConstructor::Repetition => expect(n.is_some_and(|q| q >= 2), "at least two qubits", issues),
                    ZooConstructor::GeneralizedRepetition => {
                        expect(n.is_some_and(|q| q >= 2), "at least two qubits", issues);
                        match &params.matrix {
                            Some(m) => check_matrix(m, Some(2), "params.matrix", issues),
                            None => expect(false, "params.matrix", issues),
                        }
                    }
                    ZooConstructor::Binomial => expect(
                        matches!(self.ambient, AmbientBlock::Bosonic { modes: 1, .. }),
                        "one bosonic mode",
                        issues,
                    ),
                    ZooConstructor::TwoMode => expect(
                        matches!(self.ambient, AmbientBlock::Bosonic { modes: 2, .. }),
                        "two bosonic modes",
                        issues,
                    ),
                    ZooConstructor::Code5_6_2 => expect(n == Some(5), "five qubits", issues),
                    ZooConstructor::Code9_12_3 => expect(n == Some(9), "nine qubits", issues),
                }
                if *constructor != ZooConstructor::GeneralizedRepetition && params.matrix.is_some() {
                    issues.push(format!("zoo constructor {constructor:?} takes no matrix"));
                }
            }
            CodeBlock::Binary { stabilizers, logical_x, logical_z, distance } => {
                let Some(q) = n else {
                    issues.push("a binary code needs a qubit ambient".into());
                    return;
                };
                if logical_x.len() != logical_z.len() || stabilizers.len() + logical_x.len() != q {
                    issues.push(format!(
                        "{} stabilizers and {}/{} logical operators do not fit {q} qubits",
                        stabilizers.len(),
                        logical_x.len(),
                        logical_z.len()
                    ));
                }
                if logical_x.is_empty() {
                    issues.push("binary code has no logical qubits".into());
                }
                if *distance == Some(0) {
                    issues.push("distance must be positive".into());
                }
                for op in stabilizers.iter().chain(logical_x).chain(logical_z) {
                    match op {
                        OperatorSpec::Pauli(s) => check_pauli(s, Some(q), "binary operator", issues),
                        OperatorSpec::Sum(terms) => {
                            if terms.is_empty() {
                                issues.push("binary operator sum is empty".into());
                            }
                            for t in terms {
                                check_pauli(&t.pauli, Some(q), "binary operator term", issues);
                                if !finite_amps(&[t.coefficient]) {
                                    issues.push("binary operator coefficient is not finite".into());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn validate_errors(&self, dim: Option<usize>, n: Option<usize>, issues: &mut Vec<String>) {
        let Some(errors) = &self.errors else { return };
        match errors {
            ErrorsBlock::Pauli(list) => {
                if n.is_none() {
                    issues.push("Pauli errors need a qubit ambient".into());
                }
                for s in list {
                    check_pauli(s, n, "error", issues);
                }
            }
            ErrorsBlock::PauliWeight(w) => {
                if n.is_none() {
                    issues.push("errors.pauli_weight needs a qubit ambient".into());
                }
                if *w == 0 {
                    issues.push("errors.pauli_weight must be positive".into());
                }
            }
            ErrorsBlock::Bosonic(names) => match self.ambient.fock() {
                Some(space) => {
                    for name in names {
                        if let Err(e) = parse_bosonic(name, &space) {
                            issues.push(e);
                        }
                    }
                }
                None => issues.push("bosonic errors need a bosonic ambient".into()),
            },
            ErrorsBlock::Matrices(list) => {
                for m in list {
                    check_matrix(&m.matrix, dim, &format!("error matrix `{}`", m.name), issues);
                }
            }
        }
    }

    fn validate_options(&self, n: Option<usize>, issues: &mut Vec<String>) {
        let o = &self.options;
        if let Some(t) = o.tol {
            if !(t.is_finite() && t > 0.0) {
                issues.push(format!("options.tol must be positive, got {t}"));
            }
        }
        if o.distance == Some(0) {
            issues.push("options.distance must be positive".into());
        }
        if let Some(site) = o.site {
            match n {
                Some(q) if site < q => {}
                _ => issues.push(format!("options.site {site} is not a qubit of the ambient")),
            }
        }
        if let Some(spares) = &o.spares {
            for tuple in spares.iter().flatten() {
                if tuple.iter().any(|c| *c != 1 && *c != -1) {
                    issues.push(format!("spare signature {tuple:?} has entries other than +1/-1"));
                } else if n.is_some_and(|q| tuple.len() != q) {
                    issues.push(format!("spare signature {tuple:?} does not have one sign per generator"));
                }
            }
        }
        if o.guides == Some(GuideChoice::Parity) && self.ambient.fock().is_none() {
            issues.push("parity guides need a bosonic ambient".into());
        }
    }

    /// Scales codewords and states to unit norm.
    pub fn normalize(&mut self) -> Vec<String> {
        let mut warnings = Vec::new();
        if let CodeBlock::Codewords(words) = &mut self.code {
            for (i, w) in words.iter_mut().enumerate() {
                normalize_vec(w, &format!("codeword {i}"), &mut warnings);
            }
        }
        if let Some(s) = &mut self.state {
            for v in [&mut s.logical, &mut s.ambient].into_iter().flatten() {
                normalize_vec(v, "state", &mut warnings);
            }
        }
        warnings
    }

    pub fn declared_distance(&self) -> Option<usize> {
        self.options.distance.or(match &self.code {
            CodeBlock::Binary { distance, .. } => *distance,
            _ => None,
        })
    }
}

pub fn matrix_from_rows(rows: &[Vec<Amp>]) -> CliResult<Matrix> {
    let rows: Vec<Vec<C<f64>>> = rows.iter().map(|r| r.iter().copied().map(amp).collect()).collect();
    Ok(Matrix::from_rows(&rows)?)
}

pub fn operator_sum(spec: &OperatorSpec, n: usize) -> CliResult<PauliSum<f64>> {
    Ok(match spec {
        OperatorSpec::Pauli(s) => PauliSum::from_pauli(&s.parse()?),
        OperatorSpec::Sum(terms) => {
            let parsed =
                terms.iter().map(|t| Ok((amp(t.coefficient), t.pauli.parse()?))).collect::<CliResult<Vec<_>>>()?;
            PauliSum::new(n, parsed)?
        }
    })
}

pub fn operator_spec(sum: &PauliSum<f64>) -> OperatorSpec {
    match sum.as_pauli(1e-12) {
        Some(p) => OperatorSpec::Pauli(p.to_string()),
        None => OperatorSpec::Sum(
            sum.terms().iter().map(|(c, p)| SumTerm { coefficient: to_amp(*c), pauli: p.to_string() }).collect(),
        ),
    }
}

/// Library operators paired with their display names.
pub type NamedErrors = (Vec<Operator<f64>>, Vec<String>);

/// Declared errors as library operators with their display names.
pub fn declared_errors(file: &CodeFile) -> CliResult<Option<NamedErrors>> {
    let Some(errors) = &file.errors else {
        return Ok(None);
    };
    let out = match errors {
        ErrorsBlock::Pauli(list) => {
            let ops = list.iter().map(|s| Ok(Operator::Pauli(s.parse()?))).collect::<CliResult<Vec<_>>>()?;
            (ops, list.clone())
        }
        ErrorsBlock::PauliWeight(w) => {
            let n = file.ambient.qubits().unwrap_or(0);
            let ps = low_weight_paulis(n, *w);
            let names = ps.iter().map(ToString::to_string).collect();
            (ps.into_iter().map(Operator::Pauli).collect(), names)
        }
        ErrorsBlock::Bosonic(names) => {
            let space = file.ambient.fock().expect("validated bosonic ambient");
            let ops = names.iter().map(|n| bosonic_operator(n, &space)).collect::<CliResult<Vec<_>>>()?;
            (ops, names.clone())
        }
        ErrorsBlock::Matrices(list) => {
            let ops =
                list.iter().map(|m| matrix_from_rows(&m.matrix).map(Operator::Dense)).collect::<CliResult<Vec<_>>>()?;
            (ops, list.iter().map(|m| m.name.clone()).collect())
        }
    };
    Ok(Some(out))
}

pub fn bosonic_operator(name: &str, space: &FockSpace) -> CliResult<Operator<f64>> {
    let (kind, mode) = parse_bosonic(name, space).map_err(|e| CliError::Validation(vec![e]))?;
    Ok(Operator::Dense(paulian::zoo::fock_operator(kind, space, mode)?))
}

/// The family request of a CWS code: explicit errors, a site, or a distance.
pub fn family_request(file: &CodeFile, default_distance: Option<usize>) -> CliResult<FamilyRequest> {
    if let Some(site) = file.options.site {
        return Ok(FamilyRequest::Site(site));
    }
    match &file.errors {
        Some(ErrorsBlock::Pauli(list)) => {
            let ps = list.iter().map(|s| s.parse()).collect::<Result<Vec<PauliOp>, _>>()?;
            Ok(FamilyRequest::Paulis(ps))
        }
        Some(ErrorsBlock::PauliWeight(w)) if file.options.distance.is_none() => Ok(FamilyRequest::Distance(2 * w + 1)),
        Some(ErrorsBlock::Bosonic(_)) | Some(ErrorsBlock::Matrices(_)) => {
            Err(CliError::Validation(vec!["a cws code takes Pauli errors only".into()]))
        }
        _ => match file.options.distance.or(default_distance) {
            Some(d) => Ok(FamilyRequest::Distance(d)),
            None => {
                Err(CliError::Validation(vec!["a cws code needs errors, options.site, or options.distance".into()]))
            }
        },
    }
}

pub fn spare_policy(file: &CodeFile) -> CliResult<SparePolicy> {
    match &file.options.spares {
        None => Ok(SparePolicy::Lexicographic),
        Some(lists) => {
            let tuples = lists
                .iter()
                .map(|l| l.iter().map(|t| SignatureTuple::new(t.clone())).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SparePolicy::Explicit(tuples))
        }
    }
}
