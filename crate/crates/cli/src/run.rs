//! Orchestration of the five commands.

use std::collections::BTreeMap;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use paulian::code::{detect_classify, kl_matrix, Detection, Operator, OrthonormalFamily, QuantumCode};
use paulian::cws::{build_cws_code, nondegeneracy_check, synthesize_cws, CwsCode, FamilyRequest, SparePolicy};
use paulian::linalg::{inner, normalize};
use paulian::measure::{monte_carlo, ChannelTerm, Recovery, SyndromeExtractor};
use paulian::pauli::{low_weight_paulis, Letter};
use paulian::synthesis::{
    check_relations, detection_plan, synthesize, CapacityPlan, PaulianGroup, SyndromeTable, SynthesisOptions, TableMode,
};
use paulian::zoo::{self, BinaryCode, FockSpace};
use paulian::{Code, Matrix, PauliOp, C};

use crate::codefile::{
    amp, declared_errors, family_request, matrix_from_rows, operator_spec, operator_sum, spare_policy, AmbientBlock,
    CodeBlock, CodeFile, GuideChoice, ModeName, Request, StateBlock, ZooConstructor, FORMAT_VERSION,
};
use crate::error::{CliError, CliResult};
use crate::report::*;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_TRIALS: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Synthesize,
    Measure,
    Simulate,
    Concat,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Synthesize => "synthesize",
            Command::Measure => "measure",
            Command::Simulate => "simulate",
            Command::Concat => "concat",
        }
    }
}

/// Command-line settings; unset values fall back to the code file, then to defaults.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub tol: Option<f64>,
    pub mode: Option<ModeName>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub state: Option<StateBlock>,
}

pub enum Output {
    Report(Box<Report>),
    CodeFile(Box<CodeFile>),
}

/// A finished command. `status` is set when the output was produced but the
/// command must still exit with a failure code.
pub struct Outcome {
    pub output: Output,
    pub status: Option<CliError>,
}

struct Settings {
    tol: f64,
    mode: TableMode,
    seed: u64,
    trials: u64,
}

fn settings(file: &CodeFile, flags: &Flags) -> Settings {
    Settings {
        tol: flags.tol.or(file.options.tol).unwrap_or(DEFAULT_TOL),
        mode: flags.mode.or(file.options.mode).unwrap_or(ModeName::Minimal).into(),
        seed: flags.seed.unwrap_or(0),
        trials: flags.trials.unwrap_or(DEFAULT_TRIALS),
    }
}

enum Prepared {
    General { code: Code, guides: Option<Vec<Matrix>> },
    Cws { cws: CwsCode<f64>, request: FamilyRequest, policy: SparePolicy },
}

fn binary_code(file: &CodeFile) -> CliResult<BinaryCode<f64>> {
    let n = file.ambient.qubits().ok_or_else(|| CliError::Validation(vec!["binary codes need qubits".into()]))?;
    match &file.code {
        CodeBlock::Binary { stabilizers, logical_x, logical_z, distance } => {
            let conv = |list: &[crate::codefile::OperatorSpec]| -> CliResult<Vec<_>> {
                list.iter().map(|s| operator_sum(s, n)).collect()
            };
            Ok(BinaryCode::new(n, conv(stabilizers)?, conv(logical_x)?, conv(logical_z)?, *distance)?)
        }
        CodeBlock::Zoo { constructor: ZooConstructor::Repetition, .. } => Ok(BinaryCode::repetition(n)?),
        _ => Err(CliError::Validation(vec!["concat needs binary or repetition code files".into()])),
    }
}

fn code_from_binary(file: &CodeFile, b: &BinaryCode<f64>, tol: f64) -> CliResult<Code> {
    b.validate(tol)?;
    let words = b.logical_basis()?;
    let code = QuantumCode::from_codewords(file.ambient.to_ambient(), &words, vec![], vec![], tol.max(1e-9))?;
    Ok(match b.distance_bound {
        Some(d) => code.with_distance(d),
        None => code,
    })
}

fn with_declared(file: &CodeFile, code: Code) -> CliResult<(Code, bool)> {
    match declared_errors(file)? {
        Some((ops, names)) => Ok((code.with_errors(ops, names)?, true)),
        None => Ok((code, false)),
    }
}

fn parity_guides(file: &CodeFile, space: FockSpace) -> CliResult<Option<Vec<Matrix>>> {
    if file.options.guides == Some(GuideChoice::None) {
        return Ok(None);
    }
    Ok(Some(zoo::parity_guides(&space)?))
}

fn prepare(file: &CodeFile, tol: f64) -> CliResult<Prepared> {
    let ambient = file.ambient.to_ambient();
    let prepared = match &file.code {
        CodeBlock::Codewords(words) => {
            let words: Vec<Vec<C<f64>>> = words.iter().map(|w| w.iter().copied().map(amp).collect()).collect();
            let mut code = QuantumCode::from_codewords(ambient, &words, vec![], vec![], tol.max(1e-9))?;
            if let Some(d) = file.declared_distance() {
                code = code.with_distance(d);
            }
            let (code, _) = with_declared(file, code)?;
            let guides = match file.ambient.fock() {
                Some(space) => parity_guides(file, space)?,
                None => None,
            };
            Prepared::General { code, guides }
        }
        CodeBlock::Binary { .. } | CodeBlock::Zoo { constructor: ZooConstructor::Repetition, .. } => {
            let code = code_from_binary(file, &binary_code(file)?, tol)?;
            let (code, _) = with_declared(file, code)?;
            Prepared::General { code, guides: None }
        }
        CodeBlock::Zoo { constructor: ZooConstructor::GeneralizedRepetition, params } => {
            let n = file.ambient.qubits().unwrap_or(0);
            let e = matrix_from_rows(params.matrix.as_deref().unwrap_or_default())?;
            let gr = zoo::generalized_repetition(&e, n, tol)?;
            let (code, replaced) = with_declared(file, gr.code)?;
            let guides = (n == 3 && !replaced).then_some(gr.stabilizers);
            Prepared::General { code, guides }
        }
        CodeBlock::Zoo { constructor: c @ (ZooConstructor::Binomial | ZooConstructor::TwoMode), .. } => {
            let space = file.ambient.fock().expect("validated bosonic ambient");
            let code = if *c == ZooConstructor::Binomial {
                zoo::binomial_code(&space, tol)?
            } else {
                zoo::two_mode_code(&space, tol)?
            };
            let (code, _) = with_declared(file, code)?;
            Prepared::General { code, guides: parity_guides(file, space)? }
        }
        CodeBlock::Zoo { constructor: c @ (ZooConstructor::Code5_6_2 | ZooConstructor::Code9_12_3), .. } => {
            let (cws, default_d) = if *c == ZooConstructor::Code5_6_2 {
                (paulian::cws::code_5_6_2(tol)?, 2)
            } else {
                (paulian::cws::code_9_12_3(tol)?, 3)
            };
            Prepared::Cws { cws, request: family_request(file, Some(default_d))?, policy: spare_policy(file)? }
        }
        CodeBlock::Cws { generators, words } => {
            let g = generators.iter().map(|s| s.parse()).collect::<Result<Vec<PauliOp>, _>>()?;
            let w = words.iter().map(|s| s.parse()).collect::<Result<Vec<PauliOp>, _>>()?;
            let cws = build_cws_code(&g, &w, tol)?;
            Prepared::Cws { cws, request: family_request(file, None)?, policy: spare_policy(file)? }
        }
    };
    Ok(prepared)
}

fn request_errors(n: usize, request: &FamilyRequest) -> Vec<PauliOp> {
    match request {
        FamilyRequest::Distance(d) => low_weight_paulis(n, d.saturating_sub(1) / 2),
        FamilyRequest::Site(i) => Letter::NON_IDENTITY.iter().map(|&l| PauliOp::single(n, *i, l)).collect(),
        FamilyRequest::Paulis(list) => list.clone(),
    }
}

/// The code together with the errors it declares, without synthesizing.
fn declared_code(prepared: &Prepared) -> CliResult<Code> {
    match prepared {
        Prepared::General { code, .. } => Ok(code.clone()),
        Prepared::Cws { cws, request, .. } => {
            let errors = request_errors(cws.num_qubits(), request);
            let names = errors.iter().map(ToString::to_string).collect();
            let code = cws.code().with_errors(errors.into_iter().map(Operator::Pauli).collect(), names)?;
            Ok(match request {
                FamilyRequest::Distance(d) => code.with_distance(*d),
                _ => code,
            })
        }
    }
}

/// Everything synthesized from one code file.
pub struct Pipeline {
    /// The code carrying the declared errors.
    pub code: Code,
    pub family: OrthonormalFamily<f64>,
    pub plan: CapacityPlan,
    pub table: SyndromeTable<f64>,
    pub group: PaulianGroup<f64>,
    pub pauli_forms: Vec<Option<PauliOp>>,
    pub nondegenerate: Option<bool>,
}

/// Synthesizes the stabilizer group of a loaded code file.
pub fn synthesize_file(file: &CodeFile, flags: &Flags) -> CliResult<Pipeline> {
    let s = settings(file, flags);
    pipeline(prepare(file, s.tol)?, &s)
}

fn pipeline(prepared: Prepared, s: &Settings) -> CliResult<Pipeline> {
    match prepared {
        Prepared::General { code, guides } => {
            let opts = SynthesisOptions { mode: s.mode, guides, tol: s.tol };
            let syn = synthesize(&code, &opts)?;
            let m = syn.group.m();
            Ok(Pipeline {
                code,
                family: syn.family,
                plan: syn.plan,
                table: syn.table,
                group: syn.group,
                pauli_forms: vec![None; m],
                nondegenerate: None,
            })
        }
        Prepared::Cws { cws, request, policy } => {
            let policy = if s.mode == TableMode::Minimal { SparePolicy::Lexicographic } else { policy };
            let syn = synthesize_cws(&cws, request, s.mode, &policy, s.tol)?;
            Ok(Pipeline {
                code: syn.family.code,
                family: syn.family.family,
                plan: syn.family.plan,
                table: syn.table,
                group: syn.stabilizers.group,
                pauli_forms: syn.stabilizers.pauli_forms,
                nondegenerate: syn.family.nondegenerate,
            })
        }
    }
}

fn summary(file: &CodeFile, code: &Code, s: &Settings) -> CodeSummary {
    CodeSummary {
        name: file.name.clone(),
        ambient: file.ambient.describe(),
        ambient_dim: code.ambient_dim(),
        code_dim: code.dim(),
        errors: code.error_names().to_vec(),
        tol: s.tol,
        mode: s.mode.to_string(),
    }
}

fn plan_section(p: &Pipeline) -> PlanSection {
    let plan = &p.plan;
    PlanSection {
        family_size: plan.family_size,
        family: p.family.names().to_vec(),
        m: plan.m,
        rounding: plan.mode.to_string(),
        feasible_full: plan.feasible_full,
        dim_code: plan.dim_code,
        dim_ambient: plan.dim_ambient,
        bound_fcos: plan.bound_fcos.and_then(|b| u64::try_from(b).ok()),
        assigned: plan.assigned,
        excess: plan.excess,
        nondegenerate: p.nondegenerate,
    }
}

fn table_section(p: &Pipeline, mode: TableMode) -> TableSection {
    TableSection {
        mode: mode.to_string(),
        space_dim: p.table.space_dim(),
        rows: p
            .table
            .entries()
            .iter()
            .map(|e| TableRow {
                syndrome: e.tuple.components().to_vec(),
                dim: e.space.dim(),
                error: e.error.map(|i| p.family.name(i).to_string()),
            })
            .collect(),
    }
}

fn certification_section(p: &Pipeline, tol: f64) -> CliResult<CertificationSection> {
    let rel = check_relations(&p.group, &p.code)?;
    let generators: Vec<GeneratorRow> = p
        .group
        .certification
        .iter()
        .enumerate()
        .map(|(i, c)| GeneratorRow {
            index: i + 1,
            kind: c.kind.to_string(),
            unitary: c.unitary,
            plus_dim: c.eig_dims.0,
            minus_dim: c.eig_dims.1,
            isomorphic: c.isomorphic,
            paulian: c.paulian,
            truncation_proxy: c.truncation_proxy,
            max_deviation: c.max_deviation,
            pauli_form: p.pauli_forms.get(i).cloned().flatten().map(|f| f.to_string()),
        })
        .collect();
    let passed = generators.iter().all(|g| g.paulian) && rel.max() <= tol;
    Ok(CertificationSection {
        generators,
        relations: rel.relations,
        stabilizes: rel.stabilizes,
        forms: rel.forms,
        passed,
    })
}

fn certification_status(cert: &CertificationSection, tol: f64) -> Option<CliError> {
    if cert.passed {
        return None;
    }
    if let Some(g) = cert.generators.iter().find(|g| !g.paulian) {
        return Some(CliError::Certification(format!("generator Z{} is not Paulian", g.index)));
    }
    Some(CliError::Certification(format!(
        "relations hold only to {:e}, above the tolerance {tol:e}",
        cert.relations.max(cert.stabilizes).max(cert.forms)
    )))
}

/// Resolves an error name: `I`, a declared error, a Pauli string, or a bosonic operator.
fn resolve_error(name: &str, file: &CodeFile, code: &Code) -> CliResult<Operator<f64>> {
    if name == "I" {
        return Ok(Operator::Identity);
    }
    if let Some(i) = code.error_names().iter().position(|n| n == name) {
        return Ok(code.errors()[i].clone());
    }
    match &file.ambient {
        AmbientBlock::Qubits(_) => {
            let p: PauliOp = name.parse()?;
            if p.num_qubits() != code.num_qubits().unwrap_or(0) {
                return Err(CliError::Validation(vec![format!("error `{name}` has the wrong number of qubits")]));
            }
            Ok(Operator::Pauli(p))
        }
        AmbientBlock::Bosonic { .. } => {
            crate::codefile::bosonic_operator(name, &file.ambient.fock().expect("bosonic ambient"))
        }
    }
}

fn check(file: &CodeFile, s: &Settings) -> CliResult<Outcome> {
    let prepared = prepare(file, s.tol)?;
    let code = declared_code(&prepared)?;
    let mut ops = vec![Operator::Identity];
    ops.extend(code.errors().iter().cloned());
    let kl = kl_matrix(&code, &ops, s.tol)?;
    let mut operators = vec!["I".to_string()];
    operators.extend(code.error_names().iter().cloned());
    let alpha =
        (0..ops.len()).map(|a| (0..ops.len()).map(|b| [kl.alpha[(a, b)].re, kl.alpha[(a, b)].im]).collect()).collect();
    let mut classification = Vec::new();
    for (e, name) in code.errors().iter().zip(code.error_names()) {
        let row = match detect_classify(&code, e, s.tol) {
            Ok(d) => {
                let (theta, modulus) = match d {
                    Detection::IdentityOnCode { theta } => (Some(theta), None),
                    Detection::Oblique { modulus } => (None, Some(modulus)),
                    _ => (None, None),
                };
                ClassificationRow { error: name.clone(), class: d.label().into(), theta, modulus }
            }
            Err(paulian::Error::NotUnitary { .. }) => {
                ClassificationRow { error: name.clone(), class: "non_unitary".into(), theta: None, modulus: None }
            }
            Err(e) => return Err(e.into()),
        };
        classification.push(row);
    }
    let mut report = Report::new("check", summary(file, &code, s));
    let correctable = kl.correctable;
    let deviation = kl.max_deviation;
    let nondegenerate = match &prepared {
        Prepared::Cws { cws, request: FamilyRequest::Distance(d), .. } => Some(nondegeneracy_check(cws, *d)),
        _ => None,
    };
    report.kl =
        Some(KlSection { operators, alpha, correctable, max_deviation: deviation, classification, nondegenerate });
    if file.options.request == Some(Request::Detect) {
        let plan = detection_plan(&code, s.tol)?;
        report.detection = Some(DetectionSection { m: plan.m, k_prime: plan.k_prime, reach: plan.reach });
    }
    let status = (!correctable)
        .then(|| CliError::NotCorrectable(format!("Knill-Laflamme deviation {deviation:e} exceeds {:e}", s.tol)));
    Ok(Outcome { output: Output::Report(Box::new(report)), status })
}

fn synthesized(file: &CodeFile, s: &Settings, command: Command) -> CliResult<(Pipeline, Report, Option<CliError>)> {
    if file.options.request == Some(Request::Detect) {
        let code = declared_code(&prepare(file, s.tol)?)?;
        detection_plan(&code, s.tol)?;
    }
    let p = pipeline(prepare(file, s.tol)?, s)?;
    let mut report = Report::new(command.name(), summary(file, &p.code, s));
    report.plan = Some(plan_section(&p));
    report.table = Some(table_section(&p, s.mode));
    let cert = certification_section(&p, s.tol)?;
    let status = certification_status(&cert, s.tol);
    report.certification = Some(cert);
    Ok((p, report, status))
}

fn measure(file: &CodeFile, flags: &Flags, s: &Settings) -> CliResult<Outcome> {
    let state =
        flags.state.as_ref().or(file.state.as_ref()).ok_or_else(|| {
            CliError::Validation(vec!["measure needs a state block in the code file or --state".into()])
        })?;
    let (p, mut report, status) = synthesized(file, s, Command::Measure)?;
    let mut psi: Vec<C<f64>> = match (&state.logical, &state.ambient) {
        (Some(coords), None) => {
            if coords.len() != p.code.dim() {
                return Err(CliError::Validation(vec![format!(
                    "state.logical has {} coordinates, the code has dimension {}",
                    coords.len(),
                    p.code.dim()
                )]));
            }
            let c: Vec<C<f64>> = coords.iter().copied().map(amp).collect();
            p.code.frame().mul_vec(&c)?
        }
        (None, Some(v)) => {
            if v.len() != p.code.ambient_dim() {
                return Err(CliError::Validation(vec![format!(
                    "state.ambient has {} amplitudes, ambient dimension is {}",
                    v.len(),
                    p.code.ambient_dim()
                )]));
            }
            v.iter().copied().map(amp).collect()
        }
        _ => return Err(CliError::Validation(vec!["state needs exactly one of `logical` or `ambient`".into()])),
    };
    normalize(&mut psi);
    let mut corrupted = match &state.error {
        Some(name) => resolve_error(name, file, &p.code)?.apply_vec(&psi)?,
        None => psi.clone(),
    };
    if normalize(&mut corrupted) < 1e-12 {
        return Err(CliError::Validation(vec!["the injected error annihilates the state".into()]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let (syndrome, post) = SyndromeExtractor::new(&p.group, s.tol)?.extract(&corrupted, &mut rng)?;
    let member = p.table.entry(&syndrome).error;
    let fidelity = match member {
        Some(i) => {
            let restored = Recovery::new(&p.code, &p.family, i)?.apply(&post, s.tol.sqrt())?;
            Some(inner(&psi, &restored).norm_sqr().min(1.0))
        }
        None => None,
    };
    report.measurement = Some(MeasurementSection {
        seed: s.seed,
        injected: state.error.clone(),
        syndrome: syndrome.components().to_vec(),
        diagnosed: member.map(|i| p.family.name(i).to_string()),
        recovered_fidelity: fidelity,
    });
    Ok(Outcome { output: Output::Report(Box::new(report)), status })
}

fn simulate(file: &CodeFile, s: &Settings) -> CliResult<Outcome> {
    let (p, mut report, status) = synthesized(file, s, Command::Simulate)?;
    let rows: Vec<ChannelRow> = match &file.channel {
        Some(ch) => ch.iter().map(|e| ChannelRow { error: e.error.clone(), weight: e.weight }).collect(),
        None => {
            let names = p.code.error_names();
            if names.is_empty() {
                return Err(CliError::Validation(vec!["simulate needs a channel or declared errors".into()]));
            }
            let w = 1.0 / names.len() as f64;
            names.iter().map(|n| ChannelRow { error: n.clone(), weight: w }).collect()
        }
    };
    let channel = rows
        .iter()
        .map(|r| {
            Ok(ChannelTerm {
                weight: r.weight,
                name: r.error.clone(),
                operator: resolve_error(&r.error, file, &p.code)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let stats = monte_carlo(&p.code, &p.group, &p.table, &p.family, &channel, s.trials, s.seed, s.tol)?;
    let per_syndrome: BTreeMap<String, u64> = stats.per_syndrome_counts.iter().map(|(k, v)| (k.clone(), *v)).collect();
    report.simulation = Some(SimulationSection {
        trials: stats.trials,
        seed: s.seed,
        channel: rows,
        successes: stats.successes,
        sampling_failures: stats.sampling_failures,
        success_rate: stats.success_rate,
        mean_fidelity: stats.mean_fidelity,
        min_fidelity: stats
            .records
            .iter()
            .filter(|r| r.syndrome.is_some())
            .map(|r| r.recovered_fidelity)
            .fold(None, |m: Option<f64>, f| Some(m.map_or(f, |m| m.min(f))))
            .unwrap_or(0.0),
        per_syndrome,
        per_error: stats.per_error_counts.clone(),
    });
    Ok(Outcome { output: Output::Report(Box::new(report)), status })
}

/// The composed code, as a report and as a code file.
pub fn concat_files(outer: &CodeFile, inner: &CodeFile, tol: f64) -> CliResult<(Report, CodeFile)> {
    let (o, i) = (binary_code(outer)?, binary_code(inner)?);
    o.validate(tol)?;
    i.validate(tol)?;
    let c = zoo::concat(&o, &i)?;
    let spec = |list: &[zoo::PauliSum<f64>]| list.iter().map(operator_spec).collect::<Vec<_>>();
    let name = match (&outer.name, &inner.name) {
        (Some(a), Some(b)) => Some(format!("{a} of {b}")),
        _ => None,
    };
    let file = CodeFile {
        format_version: FORMAT_VERSION,
        name: name.clone(),
        ambient: AmbientBlock::Qubits(c.n),
        code: CodeBlock::Binary {
            stabilizers: spec(&c.stabilizers),
            logical_x: spec(&c.logical_x),
            logical_z: spec(&c.logical_z),
            distance: c.distance_bound,
        },
        errors: None,
        options: Default::default(),
        channel: None,
        state: None,
    };
    let text = |list: &[zoo::PauliSum<f64>]| -> Vec<String> {
        list.iter()
            .map(|s| match s.as_pauli(1e-12) {
                Some(p) => p.to_string(),
                None => s
                    .terms()
                    .iter()
                    .map(|(c, p)| format!("({:+}{:+}i)·{p}", c.re, c.im))
                    .collect::<Vec<_>>()
                    .join(" + "),
            })
            .collect()
    };
    let summary = CodeSummary {
        name,
        ambient: file.ambient.describe(),
        ambient_dim: 1usize.checked_shl(c.n as u32).unwrap_or(0),
        code_dim: 1usize.checked_shl(c.k as u32).unwrap_or(0),
        errors: vec![],
        tol,
        mode: "-".into(),
    };
    let mut report = Report::new("concat", summary);
    report.concat = Some(ConcatSection {
        n: c.n,
        k: c.k,
        q: o.n / i.k,
        distance_bound: c.distance_bound,
        stabilizers: text(&c.stabilizers),
        logical_x: text(&c.logical_x),
        logical_z: text(&c.logical_z),
    });
    Ok((report, file))
}

/// Runs `command` on the given code files; concat takes two, every other command one.
pub fn run(command: Command, files: &[CodeFile], flags: &Flags, format: Format) -> CliResult<Outcome> {
    let expected = if command == Command::Concat { 2 } else { 1 };
    if files.len() != expected {
        return Err(CliError::Validation(vec![format!(
            "{} takes {expected} code file(s), got {}",
            command.name(),
            files.len()
        )]));
    }
    let file = &files[0];
    let s = settings(file, flags);
    match command {
        Command::Check => check(file, &s),
        Command::Synthesize => {
            let (_, report, status) = synthesized(file, &s, command)?;
            Ok(Outcome { output: Output::Report(Box::new(report)), status })
        }
        Command::Measure => measure(file, flags, &s),
        Command::Simulate => simulate(file, &s),
        Command::Concat => {
            let (report, composed) = concat_files(file, &files[1], s.tol)?;
            let output = match format {
                Format::Machine => Output::CodeFile(Box::new(composed)),
                Format::Human => Output::Report(Box::new(report)),
            };
            Ok(Outcome { output, status: None })
        }
    }
}

impl Output {
    pub fn render(&self, format: Format) -> CliResult<String> {
        match self {
            Output::Report(r) => r.render(format),
            Output::CodeFile(f) => {
                let mut text = serde_json::to_string_pretty(f).map_err(|e| CliError::Io(e.to_string()))?;
                text.push('\n');
                Ok(text)
            }
        }
    }
}
