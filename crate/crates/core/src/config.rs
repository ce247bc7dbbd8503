//! JSON run configuration.
//!
//! Every dimensional quantity is written either as a string (`"200 MPa"`)
//! or as an object (`{"value": 200, "unit": "MPa"}`) and converted to SI on
//! ingestion. The micro-inertia may be given directly (`eta`) or through
//! `d` and `rho_micro` (`eta = d² rho_micro`); likewise `alpha_c` directly
//! or through `L_c` (`alpha_c = mu_e L_c²`). When both forms are present the
//! direct value is used and must agree with the derived one.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bandgap::AnalysisOptions;
use crate::dispersion::{DEFAULT_ASYMPTOTE_TOLERANCE, DEFAULT_SAMPLES, MIN_BRANCH_SAMPLES};
use crate::exec::Execution;
use crate::material::{MaterialError, MaterialParameters, ParameterValues};
use crate::units::{split_quantity, Dimension, Unit};

/// Allowed relative mismatch between a direct value and its derived form.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("malformed configuration: {0}")]
    Parse(String),
    #[error("field `{field}`: unit `{unit}` is not accepted here (expected {expected})")]
    Unit {
        field: String,
        unit: String,
        expected: &'static str,
    },
    #[error("field `{field}`: direct value {direct} disagrees with derived value {derived}")]
    Consistency {
        field: &'static str,
        direct: f64,
        derived: f64,
    },
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    Material(#[from] MaterialError),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum RawQuantity {
    Text(String),
    Tagged(TaggedQuantity),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaggedQuantity {
    value: f64,
    unit: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterial {
    mu_e: Option<RawQuantity>,
    lambda_e: Option<RawQuantity>,
    mu_c: Option<RawQuantity>,
    mu_h: Option<RawQuantity>,
    lambda_h: Option<RawQuantity>,
    alpha_c: Option<RawQuantity>,
    #[serde(rename = "L_c")]
    l_c: Option<RawQuantity>,
    rho: Option<RawQuantity>,
    eta: Option<RawQuantity>,
    d: Option<RawQuantity>,
    rho_micro: Option<RawQuantity>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    k_max_rad_per_m: Option<f64>,
    samples: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGap {
    omega_ceiling_rad_per_s: Option<f64>,
    min_width_rad_per_s: Option<f64>,
    asymptote_tolerance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    factors: Option<Vec<f64>>,
    mu_c: Option<Vec<RawQuantity>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    curves: Option<PathBuf>,
    report: Option<PathBuf>,
    sweep: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    material: Option<RawMaterial>,
    #[serde(default)]
    grid: RawGrid,
    #[serde(default)]
    gap: RawGap,
    sweep: Option<RawSweep>,
    #[serde(default)]
    output: RawOutput,
}

/// Optional geometric data kept alongside the parameters, in SI.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct MaterialMetadata {
    pub d: Option<f64>,
    pub l_c: Option<f64>,
    pub rho_micro: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSettings {
    pub k_max: Option<f64>,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSettings {
    pub omega_ceiling: Option<f64>,
    pub min_width: Option<f64>,
    pub asymptote_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    /// Multiples of `mu_c0`.
    Factors(Vec<f64>),
    /// Absolute couple moduli in Pa.
    MuC(Vec<f64>),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputPaths {
    pub curves: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub sweep: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub material: MaterialParameters,
    pub metadata: MaterialMetadata,
    pub grid: GridSettings,
    pub gap: GapSettings,
    pub sweep: Option<SweepSpec>,
    pub output: OutputPaths,
}

fn expected_units(dimension: Dimension) -> &'static str {
    match dimension {
        Dimension::Pressure => "Pa, MPa or GPa",
        Dimension::Length => "m or mm",
        Dimension::Density => "kg/m3",
        Dimension::LineDensity => "kg/m",
        Dimension::PressureArea => "Pa·m2 or MPa·m2",
    }
}

fn resolve(field: &str, raw: &RawQuantity, dimension: Dimension) -> Result<f64, ConfigError> {
    let (value, unit_text) = match raw {
        RawQuantity::Tagged(q) => (q.value, q.unit.as_str()),
        RawQuantity::Text(text) => match split_quantity(text) {
            Some((value, Some(unit))) => (value, unit),
            Some((_, None)) => {
                return Err(ConfigError::Unit {
                    field: field.to_string(),
                    unit: String::new(),
                    expected: expected_units(dimension),
                })
            }
            None => {
                return Err(ConfigError::Invalid {
                    field: field.to_string(),
                    reason: format!("`{text}` is not a quantity"),
                })
            }
        },
    };
    let unit = Unit::parse(unit_text)
        .filter(|u| u.dimension() == dimension)
        .ok_or_else(|| ConfigError::Unit {
            field: field.to_string(),
            unit: unit_text.to_string(),
            expected: expected_units(dimension),
        })?;
    Ok(unit.convert(value))
}

fn optional(
    field: &str,
    raw: &Option<RawQuantity>,
    dimension: Dimension,
) -> Result<Option<f64>, ConfigError> {
    raw.as_ref()
        .map(|q| resolve(field, q, dimension))
        .transpose()
}

fn required(
    field: &str,
    raw: &Option<RawQuantity>,
    dimension: Dimension,
) -> Result<f64, ConfigError> {
    optional(field, raw, dimension)?
        .ok_or_else(|| ConfigError::MissingField(format!("material.{field}")))
}

fn reconcile(
    field: &'static str,
    direct: Option<f64>,
    derived: Option<f64>,
    missing: &str,
) -> Result<f64, ConfigError> {
    match (direct, derived) {
        (Some(direct), Some(derived)) => {
            let scale = direct.abs().max(derived.abs());
            if (direct - derived).abs() > CONSISTENCY_TOLERANCE * scale {
                Err(ConfigError::Consistency {
                    field,
                    direct,
                    derived,
                })
            } else {
                Ok(direct)
            }
        }
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (None, None) => Err(ConfigError::MissingField(missing.to_string())),
    }
}

fn positive(field: &str, value: f64) -> Result<f64, ConfigError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ConfigError::Invalid {
            field: field.to_string(),
            reason: format!("must be finite and positive, got {value}"),
        })
    }
}

pub fn parse_config(text: &[u8]) -> Result<AnalysisConfig, ConfigError> {
    let raw: RawConfig =
        serde_json::from_slice(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    let m = raw
        .material
        .ok_or_else(|| ConfigError::MissingField("material".into()))?;

    let mu_e = required("mu_e", &m.mu_e, Dimension::Pressure)?;
    let d = optional("d", &m.d, Dimension::Length)?;
    let l_c = optional("L_c", &m.l_c, Dimension::Length)?;
    let rho_micro = optional("rho_micro", &m.rho_micro, Dimension::Density)?;

    let derived_eta = match (d, rho_micro) {
        (Some(d), Some(rho_micro)) => Some(d * d * rho_micro),
        (Some(_), None) if m.eta.is_none() => {
            return Err(ConfigError::MissingField("material.rho_micro".into()))
        }
        (None, Some(_)) if m.eta.is_none() => {
            return Err(ConfigError::MissingField("material.d".into()))
        }
        _ => None,
    };
    let eta = reconcile(
        "eta",
        optional("eta", &m.eta, Dimension::LineDensity)?,
        derived_eta,
        "material.eta (or material.d and material.rho_micro)",
    )?;
    let alpha_c = reconcile(
        "alpha_c",
        optional("alpha_c", &m.alpha_c, Dimension::PressureArea)?,
        l_c.map(|l| mu_e * l * l),
        "material.alpha_c (or material.L_c)",
    )?;

    let material = MaterialParameters::new(ParameterValues {
        mu_e,
        lambda_e: required("lambda_e", &m.lambda_e, Dimension::Pressure)?,
        mu_c: required("mu_c", &m.mu_c, Dimension::Pressure)?,
        mu_h: required("mu_h", &m.mu_h, Dimension::Pressure)?,
        lambda_h: required("lambda_h", &m.lambda_h, Dimension::Pressure)?,
        alpha_c,
        rho: required("rho", &m.rho, Dimension::Density)?,
        eta,
    })?;

    let samples = raw.grid.samples.unwrap_or(DEFAULT_SAMPLES);
    if samples < MIN_BRANCH_SAMPLES {
        return Err(ConfigError::Invalid {
            field: "grid.samples".into(),
            reason: format!("need at least {MIN_BRANCH_SAMPLES} samples, got {samples}"),
        });
    }
    let grid = GridSettings {
        k_max: raw
            .grid
            .k_max_rad_per_m
            .map(|k| positive("grid.k_max_rad_per_m", k))
            .transpose()?,
        samples,
    };
    let gap = GapSettings {
        omega_ceiling: raw
            .gap
            .omega_ceiling_rad_per_s
            .map(|w| positive("gap.omega_ceiling_rad_per_s", w))
            .transpose()?,
        min_width: raw
            .gap
            .min_width_rad_per_s
            .map(|w| positive("gap.min_width_rad_per_s", w))
            .transpose()?,
        asymptote_tolerance: positive(
            "gap.asymptote_tolerance",
            raw.gap
                .asymptote_tolerance
                .unwrap_or(DEFAULT_ASYMPTOTE_TOLERANCE),
        )?,
    };

    let sweep = match raw.sweep {
        None => None,
        Some(RawSweep {
            factors: Some(f),
            mu_c: None,
        }) => {
            for &x in &f {
                positive("sweep.factors", x)?;
            }
            Some(SweepSpec::Factors(f))
        }
        Some(RawSweep {
            factors: None,
            mu_c: Some(values),
        }) => Some(SweepSpec::MuC(
            values
                .iter()
                .map(|q| {
                    resolve("sweep.mu_c", q, Dimension::Pressure)
                        .and_then(|v| positive("sweep.mu_c", v))
                })
                .collect::<Result<_, _>>()?,
        )),
        Some(_) => {
            return Err(ConfigError::Invalid {
                field: "sweep".into(),
                reason: "give exactly one of `factors` or `mu_c`".into(),
            })
        }
    };

    Ok(AnalysisConfig {
        material,
        metadata: MaterialMetadata { d, l_c, rho_micro },
        grid,
        gap,
        sweep,
        output: OutputPaths {
            curves: raw.output.curves,
            report: raw.output.report,
            sweep: raw.output.sweep,
        },
    })
}

fn si(value: f64, dimension: Dimension) -> Value {
    json!({ "value": value, "unit": dimension.si_unit().symbol() })
}

impl AnalysisConfig {
    pub fn options(&self, execution: Execution) -> AnalysisOptions {
        AnalysisOptions {
            k_max: self.grid.k_max,
            samples: self.grid.samples,
            omega_ceiling: self.gap.omega_ceiling,
            min_width: self.gap.min_width,
            asymptote_tolerance: self.gap.asymptote_tolerance,
            execution,
        }
    }

    /// The resolved configuration with every quantity in SI; parsing it
    /// again yields the same values.
    pub fn to_json(&self) -> Value {
        let p = &self.material;
        let mut material = serde_json::Map::new();
        for (key, value, dim) in [
            ("mu_e", p.mu_e(), Dimension::Pressure),
            ("lambda_e", p.lambda_e(), Dimension::Pressure),
            ("mu_c", p.mu_c(), Dimension::Pressure),
            ("mu_h", p.mu_h(), Dimension::Pressure),
            ("lambda_h", p.lambda_h(), Dimension::Pressure),
            ("alpha_c", p.alpha_c(), Dimension::PressureArea),
            ("rho", p.rho(), Dimension::Density),
            ("eta", p.eta(), Dimension::LineDensity),
        ] {
            material.insert(key.into(), si(value, dim));
        }
        for (key, value, dim) in [
            ("d", self.metadata.d, Dimension::Length),
            ("L_c", self.metadata.l_c, Dimension::Length),
            ("rho_micro", self.metadata.rho_micro, Dimension::Density),
        ] {
            if let Some(v) = value {
                material.insert(key.into(), si(v, dim));
            }
        }
        let mut root = json!({
            "material": material,
            "grid": { "samples": self.grid.samples },
            "gap": { "asymptote_tolerance": self.gap.asymptote_tolerance },
        });
        if let Some(k) = self.grid.k_max {
            root["grid"]["k_max_rad_per_m"] = json!(k);
        }
        if let Some(w) = self.gap.omega_ceiling {
            root["gap"]["omega_ceiling_rad_per_s"] = json!(w);
        }
        if let Some(w) = self.gap.min_width {
            root["gap"]["min_width_rad_per_s"] = json!(w);
        }
        match &self.sweep {
            Some(SweepSpec::Factors(f)) => root["sweep"] = json!({ "factors": f }),
            Some(SweepSpec::MuC(v)) => {
                let values: Vec<Value> = v.iter().map(|&x| si(x, Dimension::Pressure)).collect();
                root["sweep"] = json!({ "mu_c": values });
            }
            None => {}
        }
        let mut output = serde_json::Map::new();
        for (key, path) in [
            ("curves", &self.output.curves),
            ("report", &self.output.report),
            ("sweep", &self.output.sweep),
        ] {
            if let Some(p) = path {
                output.insert(key.into(), json!(p));
            }
        }
        if !output.is_empty() {
            root["output"] = Value::Object(output);
        }
        root
    }
}
