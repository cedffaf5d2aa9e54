//! Scenario files, running them, and rendering the resulting reports.
//!
//! A scenario is a JSON document:
//!
//! ```json
//! {
//!   "variables": [
//!     {"name": "p", "frame": ["A", "B", "C"], "class": "high"},
//!     {"name": "g", "frame": ["A", "B", "C"], "class": "low"},
//!     {"name": "a", "frame": [0, 1], "class": "low"}
//!   ],
//!   "program": {"path": "pwc.whl"},
//!   "initial_belief": [
//!     {"set": [{"p": "A"}], "mass": 0.98},
//!     {"set": [{"p": "B"}, {"p": "C"}], "mass": 0.02}
//!   ],
//!   "evidence": [],
//!   "interactions": [
//!     {"secret": {"p": "A"}, "low": {"g": "A", "a": 0}, "carry_postbelief": false}
//!   ],
//!   "seed": 0
//! }
//! ```
//!
//! `program` is either `{"path": ...}`, relative to the scenario file, or
//! `{"inline": "..."}`. A missing `initial_belief` means total ignorance.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::belief::{make_mass, point_mass, MassFunction};
use crate::error::{Error, Result};
use crate::frames::{build_joint_frame, JointFrame, Tuple, TupleSet, Value};
use crate::inference::{run_session, AttackerSetup, Interaction, InteractionTrace};
use crate::lang::{parse_program, LiftedLimits};
use crate::qif::{flow_measure_with, FlowReport};
use crate::uncertainty::UncertaintyConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarClass {
    High,
    Low,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDecl {
    pub name: String,
    pub frame: Vec<Value>,
    pub class: VarClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProgramSource {
    Path(PathBuf),
    Inline(String),
}

/// A variable-to-value assignment as written in scenario files.
pub type Assignment = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FocalEntry {
    pub set: Vec<Assignment>,
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractionSpec {
    pub secret: Assignment,
    pub low: Assignment,
    #[serde(default)]
    pub carry_postbelief: bool,
}

/// The on-disk form of a scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub variables: Vec<VariableDecl>,
    pub program: ProgramSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_belief: Option<Vec<FocalEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Vec<FocalEntry>>,
    pub interactions: Vec<InteractionSpec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_loop_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub limits: LiftedLimits,
    pub uncertainty: UncertaintyConfig,
}

/// A validated scenario, ready to run.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub setup: AttackerSetup,
    pub interactions: Vec<Interaction>,
    pub config: RunConfig,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Scenario(msg.into())
}

fn assignment_tuple(frame: &JointFrame, a: &Assignment, what: &str) -> Result<Tuple> {
    for name in a.keys() {
        if !frame.contains_var(name) {
            return Err(schema(format!("{what} assigns `{name}`, expected exactly {}", frame.var_list())));
        }
    }
    if a.len() != frame.arity() {
        return Err(schema(format!("{what} must assign exactly {}", frame.var_list())));
    }
    let pairs: Vec<(&str, Value)> = a.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    frame.tuple(&pairs)
}

fn belief(frame: &JointFrame, entries: &[FocalEntry], what: &str) -> Result<MassFunction> {
    let mut focal = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let tuples = e
            .set
            .iter()
            .map(|a| assignment_tuple(frame, a, &format!("{what}, focal set {}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        focal.push((TupleSet::new(frame, tuples)?, e.mass));
    }
    make_mass(frame, focal)
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Validates the file. Program paths are resolved against `base_dir`.
    pub fn build(&self, name: &str, base_dir: &Path) -> Result<Scenario> {
        let frame = build_joint_frame(self.variables.iter().map(|v| (v.name.as_str(), v.frame.iter().cloned())))?;
        let names = |class: VarClass| -> Vec<&str> {
            self.variables.iter().filter(|v| v.class == class).map(|v| v.name.as_str()).collect()
        };
        let (high, low) = (names(VarClass::High), names(VarClass::Low));
        if high.is_empty() {
            return Err(schema("no high variables declared"));
        }
        if low.is_empty() {
            return Err(schema("no low variables declared"));
        }
        let high = frame.subframe(&high)?;
        let low = frame.subframe(&low)?;

        let text = match &self.program {
            ProgramSource::Inline(s) => s.clone(),
            ProgramSource::Path(p) => {
                let p = base_dir.join(p);
                std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
            }
        };
        let program = parse_program(&text)?;

        let initial = match &self.initial_belief {
            Some(entries) => belief(&high, entries, "initial_belief")?,
            None => MassFunction::vacuous(&high),
        };
        let evidence = self
            .evidence
            .iter()
            .enumerate()
            .map(|(i, e)| belief(&high, e, &format!("evidence {}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let setup = AttackerSetup::new(&frame, &high, &low, initial, evidence, program)?;

        if self.interactions.is_empty() {
            return Err(schema("no interactions"));
        }
        let interactions = self
            .interactions
            .iter()
            .enumerate()
            .map(|(i, it)| {
                Ok(Interaction {
                    secret: assignment_tuple(&high, &it.secret, &format!("interaction {} secret", i + 1))?,
                    low_choice: assignment_tuple(&low, &it.low, &format!("interaction {} low", i + 1))?,
                    carry_postbelief: it.carry_postbelief,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut config = RunConfig { seed: self.seed, ..RunConfig::default() };
        if let Some(n) = self.max_loop_iterations {
            config.limits.max_iterations = n;
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(schema(format!("tolerance must be positive, got {t}")));
            }
            config.limits.tolerance = t;
        }
        Ok(Scenario { name: name.to_string(), setup, interactions, config })
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    ScenarioFile::from_json(&text)?.build(&name, path.parent().unwrap_or(Path::new(".")))
}

#[derive(Clone, Debug)]
pub struct InteractionReport {
    pub interaction: Interaction,
    pub trace: InteractionTrace,
    pub flow: FlowReport,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub frame: JointFrame,
    pub high: JointFrame,
    pub low: JointFrame,
    pub interactions: Vec<InteractionReport>,
}

pub fn run_scenario(s: &Scenario) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.config.seed);
    let traces = run_session(&s.setup, &s.interactions, &mut rng, s.config.limits)?;
    let high = s.setup.high();
    let interactions = s
        .interactions
        .iter()
        .zip(traces)
        .map(|(it, trace)| {
            let truth = point_mass(&TupleSet::singleton(high, it.secret.clone())?)?;
            let flow = flow_measure_with(&s.config.uncertainty, &trace.prebelief, &trace.postbelief, &truth)?;
            Ok(InteractionReport { interaction: it.clone(), trace, flow })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        scenario: s.name.clone(),
        seed: s.config.seed,
        frame: s.setup.frame().clone(),
        high: high.clone(),
        low: s.setup.low().clone(),
        interactions,
    })
}

fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn tuple_json(frame: &JointFrame, t: &Tuple) -> Json {
    let map: serde_json::Map<String, Json> =
        frame.assignments(t).map(|(k, v)| (k.to_string(), serde_json::to_value(v).expect("value"))).collect();
    Json::Object(map)
}

fn set_json(s: &TupleSet) -> Json {
    Json::Array(s.iter().map(|t| tuple_json(s.frame(), t)).collect())
}

fn mass_json(m: &MassFunction) -> Json {
    Json::Array(m.focal_sets().map(|(s, x)| json!({"set": set_json(s), "mass": round6(x)})).collect())
}

impl Report {
    pub fn summary(&self) -> Vec<f64> {
        self.interactions.iter().map(|r| r.flow.q).collect()
    }

    pub fn to_json(&self, with_trace: bool) -> Json {
        let interactions: Vec<Json> = self
            .interactions
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let t = &r.trace;
                let mut obj = json!({
                    "index": i + 1,
                    "secret": tuple_json(&self.high, &r.interaction.secret),
                    "low": tuple_json(&self.low, &r.interaction.low_choice),
                    "carry_postbelief": r.interaction.carry_postbelief,
                    "pre": mass_json(&t.prebelief),
                    "post": mass_json(&t.postbelief),
                    "observation": tuple_json(&self.low, &t.observation),
                    "conflict": {
                        "real_input": t.k_real_input.k(),
                        "predicted_input": t.k_predicted_input.k(),
                        "observation": t.k_revised.k(),
                    },
                    "gjs_pre": r.flow.gjs_pre,
                    "gjs_post": r.flow.gjs_post,
                    "q": r.flow.q,
                    "eta": r.flow.eta,
                    "within_bounds": r.flow.within_bounds,
                    "search_space": r.flow.search_space,
                });
                if with_trace {
                    obj["trace"] = json!({
                        "point_high": mass_json(&t.point_high),
                        "point_low": mass_json(&t.point_low),
                        "real_input": mass_json(&t.real_input),
                        "output": mass_json(&t.output),
                        "sampled": tuple_json(&self.frame, &t.sampled),
                        "predicted_input": mass_json(&t.predicted_input),
                        "prediction": mass_json(&t.prediction),
                        "observed_set": set_json(&t.observed_set),
                        "revised": mass_json(&t.revised),
                    });
                }
                obj
            })
            .collect();
        json!({
            "scenario": self.scenario,
            "seed": self.seed,
            "interactions": interactions,
            "summary": self.summary(),
        })
    }

    pub fn render_json(&self, with_trace: bool) -> String {
        serde_json::to_string_pretty(&self.to_json(with_trace)).expect("report serializes")
    }

    pub fn render_table(&self, with_trace: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} (seed {})", self.scenario, self.seed);
        for (i, r) in self.interactions.iter().enumerate() {
            let t = &r.trace;
            let _ = writeln!(
                out,
                "\ninteraction {}: secret {}, low {}{}",
                i + 1,
                self.high.render_tuple(&r.interaction.secret),
                self.low.render_tuple(&r.interaction.low_choice),
                if r.interaction.carry_postbelief { ", carried" } else { "" }
            );
            write_mass_table(&mut out, "prebelief", &t.prebelief);
            if with_trace {
                let _ = writeln!(out, "  secret     {}", t.point_high);
                let _ = writeln!(out, "  low        {}", t.point_low);
                let _ = writeln!(out, "  input      {}  ({})", t.real_input, t.k_real_input);
                let _ = writeln!(out, "  output     {}", t.output);
                let _ = writeln!(out, "  sampled    {}", self.frame.render_tuple(&t.sampled));
                let _ = writeln!(out, "  predicted  {}  ({})", t.predicted_input, t.k_predicted_input);
                let _ = writeln!(out, "  prediction {}", t.prediction);
                let _ = writeln!(out, "  observed   {}", t.observed_set);
                let _ = writeln!(out, "  revised    {}  ({})", t.revised, t.k_revised);
            }
            let _ = writeln!(out, "  observation {}", self.low.render_tuple(&t.observation));
            write_mass_table(&mut out, "postbelief", &t.postbelief);
            let f = &r.flow;
            let _ = writeln!(
                out,
                "  GJS pre {:.6}  GJS post {:.6}  Q {:.6} bits  (eta {:.6}{})",
                f.gjs_pre,
                f.gjs_post,
                f.q,
                f.eta,
                if f.within_bounds { "" } else { ", out of range" }
            );
            let _ = writeln!(out, "  search space {:.6}", f.search_space);
        }
        let qs: Vec<String> = self.summary().iter().map(|q| format!("{q:.6}")).collect();
        let _ = writeln!(out, "\nsummary Q = [{}]", qs.join(", "));
        out
    }
}

fn write_mass_table(out: &mut String, title: &str, m: &MassFunction) {
    let _ = writeln!(out, "  {title}");
    let rows: Vec<(String, f64)> = m.focal_sets().map(|(s, x)| (s.to_string(), x)).collect();
    let width = rows.iter().map(|(s, _)| s.chars().count()).max().unwrap_or(0);
    for (s, x) in rows {
        let _ = writeln!(out, "    {s:<width$}  {x:.6}");
    }
}
