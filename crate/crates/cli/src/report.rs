//! Command reports and their human and machine renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::codefile::Amp;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub code: CodeSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kl: Option<KlSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection: Option<DetectionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<CertificationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurement: Option<MeasurementSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concat: Option<ConcatSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient: String,
    pub ambient_dim: usize,
    pub code_dim: usize,
    pub errors: Vec<String>,
    pub tol: f64,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KlSection {
    /// Row and column labels of `alpha`, starting with the identity.
    pub operators: Vec<String>,
    pub alpha: Vec<Vec<Amp>>,
    pub correctable: bool,
    pub max_deviation: f64,
    pub classification: Vec<ClassificationRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationRow {
    pub error: String,
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionSection {
    pub m: usize,
    pub k_prime: usize,
    pub reach: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSection {
    pub family_size: usize,
    pub family: Vec<String>,
    pub m: usize,
    pub rounding: String,
    pub feasible_full: bool,
    pub dim_code: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_ambient: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_fcos: Option<u64>,
    pub assigned: usize,
    pub excess: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSection {
    pub mode: String,
    pub space_dim: usize,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub syndrome: Vec<i8>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificationSection {
    pub generators: Vec<GeneratorRow>,
    pub relations: f64,
    pub stabilizes: f64,
    pub forms: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRow {
    pub index: usize,
    pub kind: String,
    pub unitary: bool,
    pub plus_dim: usize,
    pub minus_dim: usize,
    pub isomorphic: bool,
    pub paulian: bool,
    pub truncation_proxy: bool,
    pub max_deviation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementSection {
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injected: Option<String>,
    pub syndrome: Vec<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnosed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovered_fidelity: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    pub trials: u64,
    pub seed: u64,
    pub channel: Vec<ChannelRow>,
    pub successes: u64,
    pub sampling_failures: u64,
    pub success_rate: f64,
    pub mean_fidelity: f64,
    pub min_fidelity: f64,
    pub per_syndrome: BTreeMap<String, u64>,
    pub per_error: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelRow {
    pub error: String,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcatSection {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_bound: Option<usize>,
    pub stabilizers: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

impl Report {
    pub fn new(command: &str, code: CodeSummary) -> Self {
        Self {
            command: command.into(),
            code,
            kl: None,
            detection: None,
            plan: None,
            table: None,
            certification: None,
            measurement: None,
            simulation: None,
            concat: None,
        }
    }

    /// JSON with every float in shortest round-trip form.
    pub fn to_machine(&self) -> CliResult<String> {
        let value = serde_json::to_value(self).map_err(|e| CliError::Io(e.to_string()))?;
        if has_null(&value) {
            return Err(CliError::Certification("report contains a non-finite number".into()));
        }
        let mut text = serde_json::to_string_pretty(&value).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Machine => self.to_machine(),
            Format::Human => Ok(self.to_human()),
        }
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let c = &self.code;
        let title = c.name.as_deref().unwrap_or("code");
        let _ = writeln!(out, "{}: {}", self.command, title);
        let mut t = Table::new(&["field", "value"]);
        t.row(vec!["ambient".into(), format!("{} (dim {})", c.ambient, c.ambient_dim)]);
        t.row(vec!["code dim".into(), c.code_dim.to_string()]);
        if c.errors.is_empty() {
            t.row(vec!["errors".into(), "-".into()]);
        }
        for (i, chunk) in c.errors.chunks(8).enumerate() {
            t.row(vec![if i == 0 { "errors".into() } else { String::new() }, chunk.join(" ")]);
        }
        t.row(vec!["tol".into(), format!("{:e}", c.tol)]);
        t.row(vec!["mode".into(), c.mode.clone()]);
        section(&mut out, "code", t);

        if let Some(kl) = &self.kl {
            let mut header = vec![String::new()];
            header.extend(kl.operators.iter().cloned());
            let mut t = Table::from_strings(header);
            for (name, row) in kl.operators.iter().zip(&kl.alpha) {
                let mut cells = vec![name.clone()];
                cells.extend(row.iter().map(|a| complex(*a)));
                t.row(cells);
            }
            let _ = writeln!(
                out,
                "\nknill-laflamme: {} (max deviation {:.3e})",
                if kl.correctable { "correctable" } else { "NOT correctable" },
                kl.max_deviation
            );
            if let Some(nd) = kl.nondegenerate {
                let _ = writeln!(out, "nondegenerate: {nd}");
            }
            out.push_str(&t.render());
            if !kl.classification.is_empty() {
                let mut t = Table::new(&["error", "class", "theta", "modulus"]);
                for r in &kl.classification {
                    t.row(vec![r.error.clone(), r.class.clone(), opt_f(r.theta), opt_f(r.modulus)]);
                }
                section(&mut out, "detection classes", t);
            }
        }

        if let Some(d) = &self.detection {
            let mut t = Table::new(&["m", "k'", "dim S"]);
            t.row(vec![d.m.to_string(), d.k_prime.to_string(), d.reach.to_string()]);
            section(&mut out, "detection plan", t);
        }

        if let Some(p) = &self.plan {
            let mut t = Table::new(&["field", "value"]);
            t.row(vec!["|F|".into(), p.family_size.to_string()]);
            for (i, chunk) in p.family.chunks(8).enumerate() {
                t.row(vec![if i == 0 { "family".into() } else { String::new() }, chunk.join(" ")]);
            }
            t.row(vec!["m".into(), format!("{} ({})", p.m, p.rounding)]);
            t.row(vec!["feasible full".into(), p.feasible_full.to_string()]);
            t.row(vec!["assigned".into(), p.assigned.to_string()]);
            t.row(vec!["excess".into(), p.excess.to_string()]);
            if let Some(b) = p.bound_fcos {
                t.row(vec!["family bound".into(), b.to_string()]);
            }
            if let Some(nd) = p.nondegenerate {
                t.row(vec!["nondegenerate".into(), nd.to_string()]);
            }
            section(&mut out, "plan", t);
        }

        if let Some(tab) = &self.table {
            let mut t = Table::new(&["syndrome", "dim", "error"]);
            for r in &tab.rows {
                t.row(vec![signs(&r.syndrome), r.dim.to_string(), r.error.clone().unwrap_or_else(|| "-".into())]);
            }
            let _ = writeln!(out, "\nsyndrome table ({}, domain dim {})", tab.mode, tab.space_dim);
            out.push_str(&t.render());
        }

        if let Some(cert) = &self.certification {
            let mut t = Table::new(&["gen", "kind", "unitary", "eigenspaces", "paulian", "deviation", "pauli form"]);
            for g in &cert.generators {
                t.row(vec![
                    format!("Z{}", g.index),
                    g.kind.clone(),
                    g.unitary.to_string(),
                    format!("{}+{}{}", g.plus_dim, g.minus_dim, if g.truncation_proxy { " (truncated)" } else { "" }),
                    g.paulian.to_string(),
                    format!("{:.3e}", g.max_deviation),
                    g.pauli_form.clone().unwrap_or_else(|| "-".into()),
                ]);
            }
            let _ = writeln!(
                out,
                "\ncertification: {} (relations {:.3e}, stabilizes {:.3e}, forms {:.3e})",
                if cert.passed { "pass" } else { "FAIL" },
                cert.relations,
                cert.stabilizes,
                cert.forms
            );
            out.push_str(&t.render());
        }

        if let Some(m) = &self.measurement {
            let mut t = Table::new(&["field", "value"]);
            t.row(vec!["seed".into(), m.seed.to_string()]);
            t.row(vec!["injected".into(), m.injected.clone().unwrap_or_else(|| "-".into())]);
            t.row(vec!["syndrome".into(), signs(&m.syndrome)]);
            t.row(vec!["diagnosed".into(), m.diagnosed.clone().unwrap_or_else(|| "-".into())]);
            t.row(vec!["fidelity".into(), opt_f(m.recovered_fidelity)]);
            section(&mut out, "measurement", t);
        }

        if let Some(s) = &self.simulation {
            let mut t = Table::new(&["field", "value"]);
            t.row(vec!["trials".into(), s.trials.to_string()]);
            t.row(vec!["seed".into(), s.seed.to_string()]);
            t.row(vec!["successes".into(), s.successes.to_string()]);
            t.row(vec!["sampling failures".into(), s.sampling_failures.to_string()]);
            t.row(vec!["success rate".into(), format!("{:.6}", s.success_rate)]);
            t.row(vec!["mean fidelity".into(), format!("{:.12}", s.mean_fidelity)]);
            t.row(vec!["min fidelity".into(), format!("{:.12}", s.min_fidelity)]);
            section(&mut out, "simulation", t);
            let mut t = Table::new(&["error", "weight", "count"]);
            for c in &s.channel {
                let count = s.per_error.get(&c.error).copied().unwrap_or(0);
                t.row(vec![c.error.clone(), format!("{}", c.weight), count.to_string()]);
            }
            section(&mut out, "channel", t);
            let mut t = Table::new(&["syndrome", "count"]);
            for (k, v) in &s.per_syndrome {
                t.row(vec![k.clone(), v.to_string()]);
            }
            section(&mut out, "syndromes", t);
        }

        if let Some(c) = &self.concat {
            let mut t = Table::new(&["field", "value"]);
            t.row(vec!["n".into(), c.n.to_string()]);
            t.row(vec!["k".into(), c.k.to_string()]);
            t.row(vec!["q".into(), c.q.to_string()]);
            t.row(vec!["distance bound".into(), c.distance_bound.map_or("-".into(), |d| d.to_string())]);
            section(&mut out, "concatenated code", t);
            let mut t = Table::new(&["role", "operator"]);
            for s in &c.stabilizers {
                t.row(vec!["stabilizer".into(), s.clone()]);
            }
            for (i, (x, z)) in c.logical_x.iter().zip(&c.logical_z).enumerate() {
                t.row(vec![format!("X{}", i + 1), x.clone()]);
                t.row(vec![format!("Z{}", i + 1), z.clone()]);
            }
            section(&mut out, "operators", t);
        }
        out
    }
}

fn has_null(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Null => true,
        serde_json::Value::Array(a) => a.iter().any(has_null),
        serde_json::Value::Object(o) => o.values().any(has_null),
        _ => false,
    }
}

fn section(out: &mut String, title: &str, table: Table) {
    if table.rows.is_empty() {
        return;
    }
    let _ = writeln!(out, "\n{title}");
    out.push_str(&table.render());
}

fn complex(a: Amp) -> String {
    let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    let (re, im) = (clean(a[0]), clean(a[1]));
    format!("{re:.6}{}{:.6}i", if im < 0.0 { '-' } else { '+' }, im.abs())
}

fn opt_f(x: Option<f64>) -> String {
    x.map_or("-".into(), |v| format!("{v:.9}"))
}

pub fn signs(t: &[i8]) -> String {
    let parts: Vec<String> = t.iter().map(|c| if *c > 0 { "+1".into() } else { "-1".into() }).collect();
    format!("({})", parts.join(","))
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self::from_strings(header.iter().map(|s| s.to_string()).collect())
    }

    fn from_strings(header: Vec<String>) -> Self {
        Self { header, rows: Vec::new() }
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            format!("  {}\n", padded.join("  ").trim_end())
        };
        let mut out = line(&self.header);
        let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}
