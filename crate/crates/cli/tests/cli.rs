use std::path::{Path, PathBuf};
use std::process::Command;

use paulian::code::kl_matrix;
use paulian_cli::codefile::{CodeBlock, ErrorsBlock, StateBlock};
use paulian_cli::report::Report;
use paulian_cli::{load_code_file, run, synthesize_file, CliError, CodeFile, Flags, Format, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn load(name: &str) -> CodeFile {
    load_code_file(&fixture(name)).unwrap().0
}

fn paulian(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_paulian")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn fixture_value(name: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn report_of(file: &CodeFile, command: paulian_cli::Command, flags: &Flags) -> Report {
    match run(command, std::slice::from_ref(file), flags, Format::Machine).unwrap().output {
        Output::Report(r) => *r,
        Output::CodeFile(_) => panic!("expected a report"),
    }
}

#[test]
fn repetition_fixture_shape() {
    let f = load("repetition3");
    assert_eq!(f.ambient.qubits(), Some(3));
    let CodeBlock::Codewords(words) = &f.code else { panic!("codewords expected") };
    assert_eq!(words.len(), 2);
    let Some(ErrorsBlock::Pauli(errors)) = &f.errors else { panic!("pauli errors expected") };
    assert_eq!(errors.len(), 4);
}

#[test]
fn five_qubit_fixture_shape() {
    let f = load("code_5_6_2");
    let CodeBlock::Cws { generators, words } = &f.code else { panic!("cws expected") };
    assert_eq!((generators.len(), words.len()), (5, 6));
}

#[test]
fn every_fixture_loads_and_round_trips() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let (file, warnings) = load_code_file(&path).unwrap();
        assert!(warnings.is_empty(), "{}: {warnings:?}", path.display());
        let text = serde_json::to_string(&file).unwrap();
        let back: CodeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file, "{}", path.display());
    }
}

#[test]
fn unknown_key_is_rejected_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = fixture_value("repetition3");
    v["options"] = serde_json::json!({ "tolerance": 1e-9 });
    let path = write_json(dir.path(), "bad.json", &v);
    let err = load_code_file(Path::new(&path)).unwrap_err();
    assert!(err.to_string().contains("tolerance"), "{err}");
    let (code, _, stderr) = paulian(&["check", &path]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown field `tolerance`"), "{stderr}");
}

#[test]
fn validation_lists_every_issue() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = fixture_value("repetition3");
    v["format_version"] = 7.into();
    v["errors"] = serde_json::json!({ "pauli": ["XI", "XQI"] });
    v["channel"] = serde_json::json!([{ "error": "XII", "weight": 0.5 }]);
    let path = write_json(dir.path(), "bad.json", &v);
    match load_code_file(Path::new(&path)) {
        Err(CliError::Validation(issues)) => assert_eq!(issues.len(), 4, "{issues:?}"),
        other => panic!("expected validation failure, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn renormalization_warns_only_beyond_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = fixture_value("repetition3");
    v["code"]["codewords"][0][0] = serde_json::json!([2.0, 0.0]);
    v["code"]["codewords"][1][7] = serde_json::json!([1.0000000001, 0.0]);
    let path = write_json(dir.path(), "scaled.json", &v);
    let (file, warnings) = load_code_file(Path::new(&path)).unwrap();
    assert_eq!(warnings.len(), 1, "{warnings:?}");
    assert!(warnings[0].contains("codeword 0"));
    let CodeBlock::Codewords(words) = &file.code else { unreachable!() };
    assert_eq!(words[0][0], [1.0, 0.0]);
}

#[test]
fn machine_report_round_trips() {
    let file = load("two_mode");
    let flags = Flags { trials: Some(300), seed: Some(11), ..Flags::default() };
    let report = report_of(&file, paulian_cli::Command::Simulate, &flags);
    let text = report.to_machine().unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_machine().unwrap(), text);
}

#[test]
fn alpha_survives_serialization_exactly() {
    let file = load("generalized_repetition");
    let report = report_of(&file, paulian_cli::Command::Check, &Flags::default());
    let back: Report = serde_json::from_str(&report.to_machine().unwrap()).unwrap();
    let alpha = &back.kl.as_ref().unwrap().alpha;
    let p = synthesize_file(&file, &Flags::default()).unwrap();
    let mut ops = vec![paulian::code::Operator::Identity];
    ops.extend(p.code.errors().iter().cloned());
    let direct = kl_matrix(&p.code, &ops, 1e-9).unwrap().alpha;
    let mut nontrivial = 0;
    for (a, row) in alpha.iter().enumerate() {
        for (b, z) in row.iter().enumerate() {
            assert_eq!(z[0].to_bits(), direct[(a, b)].re.to_bits());
            assert_eq!(z[1].to_bits(), direct[(a, b)].im.to_bits());
            let digits = format!("{:e}", z[0]).chars().take_while(|c| *c != 'e').filter(char::is_ascii_digit).count();
            nontrivial += usize::from(digits >= 15);
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn human_mode_omits_empty_sections() {
    let f = fixture("repetition3");
    let (code, synth, _) = paulian(&["synthesize", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(synth.contains("syndrome table"));
    assert!(!synth.contains("simulation"));
    assert!(!synth.contains("knill-laflamme"));
    let (_, sim, _) = paulian(&["simulate", f.to_str().unwrap(), "--trials", "50"]);
    assert!(sim.contains("\nsimulation\n"));
    let (_, machine, _) = paulian(&["synthesize", f.to_str().unwrap(), "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&machine).unwrap();
    assert!(v.get("simulation").is_none());
}

#[test]
fn binomial_synthesis_has_one_parity_like_generator() {
    let report = report_of(&load("binomial"), paulian_cli::Command::Synthesize, &Flags::default());
    assert_eq!(report.plan.as_ref().unwrap().m, 1);
    let cert = report.certification.unwrap();
    assert!(cert.passed);
    assert_eq!(cert.generators.len(), 1);
    let p = synthesize_file(&load("binomial"), &Flags::default()).unwrap();
    let z = &p.group.z_gens[0];
    let frame = p.table.domain_frame().unwrap();
    let restricted = frame.adjoint_mul(&z.matmul(&frame).unwrap()).unwrap();
    let parity =
        paulian::zoo::fock_operator::<f64>(paulian::zoo::FockKind::Parity, &paulian::zoo::FockSpace::new(1, 8), 0)
            .unwrap();
    let parity_restricted = frame.adjoint_mul(&parity.matmul(&frame).unwrap()).unwrap();
    assert!(restricted.max_diff(&parity_restricted) < 1e-9);
}

#[test]
fn repetition_simulation_always_succeeds() {
    let f = fixture("repetition3");
    let (code, out, _) =
        paulian(&["simulate", f.to_str().unwrap(), "--trials", "10000", "--seed", "7", "--format", "machine"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    let sim = r.simulation.unwrap();
    assert_eq!((sim.trials, sim.successes, sim.success_rate), (10000, 10000, 1.0));
}

#[test]
fn exit_codes_follow_categories() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = fixture_value("repetition3");
    v["errors"] = serde_json::json!({ "pauli": ["ZII"] });
    let path = write_json(dir.path(), "phase.json", &v);
    let (code, out, _) = paulian(&["check", &path]);
    assert_eq!(code, 3);
    assert!(out.contains("NOT correctable"));
    assert_eq!(paulian(&["synthesize", &path]).0, 3);
    let detect = fixture("code_5_6_2_detect");
    let (code, _, stderr) = paulian(&["check", detect.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(stderr.contains("dimension obstruction"));
    assert_eq!(paulian(&["check", "/nonexistent/file.json"]).0, 1);
    assert_eq!(CliError::Certification("x".into()).exit_code(), 5);
    assert_eq!(CliError::Core(paulian::Error::NotPaulian("x".into())).exit_code(), 5);
    assert_eq!(CliError::Core(paulian::Error::InsufficientSpares { needed: 2, available: 1 }).exit_code(), 4);
}

#[test]
fn measure_reads_state_from_flag() {
    let dir = tempfile::tempdir().unwrap();
    let state = serde_json::to_value(StateBlock {
        logical: Some(vec![[1.0, 0.0], [0.0, 1.0]]),
        ambient: None,
        error: Some("IIX".into()),
    })
    .unwrap();
    let path = write_json(dir.path(), "state.json", &state);
    let f = fixture("repetition3");
    let (code, out, _) = paulian(&["measure", f.to_str().unwrap(), "--state", &path, "--format", "machine"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    let m = r.measurement.unwrap();
    assert_eq!(m.syndrome, vec![-1, -1]);
    assert_eq!(m.diagnosed.as_deref(), Some("IIX"));
    assert!(m.recovered_fidelity.unwrap() > 1.0 - 1e-9);
}

#[test]
fn concat_output_is_a_loadable_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("composed.json");
    let outer = fixture("four_two_two");
    let inner = fixture("repetition2");
    let (code, _, stderr) = paulian(&[
        "concat",
        outer.to_str().unwrap(),
        inner.to_str().unwrap(),
        "--format",
        "machine",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");
    let (file, _) = load_code_file(&out).unwrap();
    assert_eq!(file.ambient.qubits(), Some(8));
    let r = report_of(&file, paulian_cli::Command::Synthesize, &Flags::default());
    assert_eq!(r.code.code_dim, 4);
    assert!(r.certification.unwrap().passed);
}
