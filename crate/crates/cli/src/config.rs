//! Run configuration: TOML file, previously emitted output, or defaults,
//! followed by `--set key=value` overrides and the dedicated flags.

use std::path::Path;

use paramag_core::fluctuations::NoiseSpec;
use paramag_core::params::{ModelParams, PumpConvention, SymmetricParams};
use paramag_core::stability::CriticalSearch;
use paramag_core::sweep::{Axis, DEFAULT_MATCHING_RADIUS};
use paramag_core::units::LabParams;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Model parameters as written in a config. `delta`, `g` and `gamma` are
/// shortcuts for the symmetric case; explicit per-mode fields win over them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub delta_c: Option<f64>,
    pub delta_1: Option<f64>,
    pub delta_2: Option<f64>,
    pub g1: Option<f64>,
    pub g2: Option<f64>,
    pub kappa: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    #[serde(rename = "G")]
    pub pump: Option<f64>,
    pub delta_2ph: Option<f64>,
    pub omega_rabi: Option<f64>,
    pub pump_convention: PumpConvention,
}

impl ModelSection {
    pub fn resolve(&self) -> ModelParams {
        let base = SymmetricParams::new(3.0, 2.0, 0.0).with_convention(self.pump_convention);
        let mut p = base.to_model();
        let shortcuts = [("delta", self.delta), ("g", self.g), ("gamma", self.gamma)];
        let fields = [
            ("delta_c", self.delta_c),
            ("delta_1", self.delta_1),
            ("delta_2", self.delta_2),
            ("g1", self.g1),
            ("g2", self.g2),
            ("kappa", self.kappa),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("G", self.pump),
            ("delta_2ph", self.delta_2ph),
            ("omega_rabi", self.omega_rabi),
        ];
        for (name, value) in shortcuts.into_iter().chain(fields) {
            if let Some(v) = value {
                p.set_field(name, v).expect("known field");
            }
        }
        p
    }

    fn from_params(p: &ModelParams) -> Self {
        ModelSection {
            delta: None,
            g: None,
            gamma: None,
            delta_c: Some(p.delta_c),
            delta_1: Some(p.delta_1),
            delta_2: Some(p.delta_2),
            g1: Some(p.g1),
            g2: Some(p.g2),
            kappa: Some(p.kappa),
            gamma1: Some(p.gamma1),
            gamma2: Some(p.gamma2),
            pump: Some(p.pump),
            delta_2ph: Some(p.delta_2ph),
            omega_rabi: Some(p.omega_rabi),
            pump_convention: p.pump_convention,
        }
    }
}

/// Evenly spaced values, or an explicit list when `values` is given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl RangeSpec {
    fn new(min: f64, max: f64, n: usize) -> Self {
        Self {
            min,
            max,
            n,
            values: None,
        }
    }

    pub fn axis(&self, name: &str) -> Axis {
        match &self.values {
            Some(v) => Axis::new(name, v.clone()),
            None => Axis::linspace(name, self.min, self.max, self.n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl AxisSpec {
    pub fn axis(&self) -> Axis {
        RangeSpec {
            min: self.min,
            max: self.max,
            n: self.n,
            values: self.values.clone(),
        }
        .axis(&self.name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EigSection {
    /// Use the 4×4 collective-mode matrix (symmetric parameters only).
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnhanceSection {
    /// Evaluate `F` over `pumps` instead of at `model.G`.
    pub curve: bool,
    pub pumps: RangeSpec,
}

impl Default for EnhanceSection {
    fn default() -> Self {
        Self {
            curve: false,
            pumps: RangeSpec::new(0.0, 0.9, 601),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseOutput {
    #[default]
    Grid,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhaseSection {
    pub output: PhaseOutput,
    pub delta: RangeSpec,
    pub pump: RangeSpec,
}

impl Default for PhaseSection {
    fn default() -> Self {
        Self {
            output: PhaseOutput::Grid,
            delta: RangeSpec::new(-6.0, 6.0, 241),
            pump: RangeSpec::new(0.0, 3.0, 241),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub metric: String,
    pub x: AxisSpec,
    pub y: Option<AxisSpec>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            metric: "F".into(),
            x: AxisSpec {
                name: "G".into(),
                min: 0.0,
                max: 0.9,
                n: 601,
                values: None,
            },
            y: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TracksSection {
    pub delta: RangeSpec,
    pub matching_radius: f64,
}

impl Default for TracksSection {
    fn default() -> Self {
        Self {
            delta: RangeSpec::new(0.0, 6.0, 601),
            matching_radius: DEFAULT_MATCHING_RADIUS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchSection {
    pub pump_max: f64,
    pub tol: f64,
    pub scan_points: usize,
}

impl Default for SearchSection {
    fn default() -> Self {
        let d = CriticalSearch::default();
        Self {
            pump_max: d.pump_max,
            tol: d.tol,
            scan_points: d.scan_points,
        }
    }
}

impl SearchSection {
    pub fn to_search(&self) -> CriticalSearch {
        CriticalSearch {
            pump_max: self.pump_max,
            tol: self.tol,
            scan_points: self.scan_points,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub format: Format,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSection,
    pub eig: EigSection,
    pub enhance: EnhanceSection,
    pub phase: PhaseSection,
    pub sweep: SweepSection,
    pub tracks: TracksSection,
    pub search: SearchSection,
    pub noise: NoiseSpec,
    pub lab: LabParams,
    pub output: OutputSection,
    /// Worker threads for grid evaluations; all cores when absent.
    pub workers: Option<usize>,
}

impl RunConfig {
    /// Config with the model section replaced by its fully resolved form.
    /// Output settings are dropped: they do not affect the numbers.
    pub fn resolved(&self) -> RunConfig {
        let mut c = self.clone();
        c.model = ModelSection::from_params(&self.model.resolve());
        c.output = OutputSection::default();
        c
    }
}

/// Read a config tree from a TOML file or from the `config` record embedded
/// in a previous JSON or CSV output.
pub fn load_tree(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    match ext {
        "json" => {
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            match doc.get("config") {
                Some(c) => Ok(c.clone()),
                None => Ok(doc),
            }
        }
        "csv" => {
            let line = text
                .lines()
                .take_while(|l| l.starts_with('#'))
                .find_map(|l| l.strip_prefix("# config: "))
                .ok_or_else(|| {
                    CliError::Config(format!("{} has no embedded config", path.display()))
                })?;
            serde_json::from_str(line)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        }
        _ => {
            let table: toml::Table = text
                .parse()
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            serde_json::to_value(table).map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

/// Parse an override value: JSON literal if it parses, bare string otherwise.
fn parse_value(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}

/// Apply `key.path=value` onto the tree, creating tables along the way.
pub fn apply_override(tree: &mut Value, assignment: &str) -> Result<(), CliError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override `{assignment}` is not key=value")))?;
    let parts: Vec<&str> = key.trim().split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("bad override key `{key}`")));
    }
    let mut node = tree;
    for part in &parts[..parts.len() - 1] {
        if node.is_null() {
            *node = Value::Object(Map::new());
        }
        if !node.is_object() {
            return Err(CliError::Config(format!(
                "override `{key}`: `{part}` is not a section"
            )));
        }
        node = node
            .as_object_mut()
            .expect("object")
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
    }
    if node.is_null() {
        *node = Value::Object(Map::new());
    }
    let obj = node
        .as_object_mut()
        .ok_or_else(|| CliError::Config(format!("override `{key}` targets a non-section")))?;
    obj.insert(parts[parts.len() - 1].to_string(), parse_value(raw.trim()));
    Ok(())
}

/// Recursively copy `patch` onto `base`; tables merge, everything else
/// replaces.
pub fn merge(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// The default config as a tree, so partial sections in files and
/// overrides fill in from defaults.
pub fn default_tree() -> Value {
    serde_json::to_value(RunConfig::default()).expect("default config serializes")
}

pub fn from_tree(tree: Value) -> Result<RunConfig, CliError> {
    serde_json::from_value(tree).map_err(|e| CliError::Config(e.to_string()))
}
