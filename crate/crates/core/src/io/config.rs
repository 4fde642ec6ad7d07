//! Run configuration: a TOML document carrying the generator parameters, the
//! attribute schema and the profile source.
//!
//! ```toml
//! output_prefix = "out/caltech"
//!
//! [params]
//! n = 769
//! m_min = 1
//! m_max = 44
//! p_sim = 1.0
//! p_triad = 1.0
//! triad_count = 3
//! seed = 42
//!
//! [profiles]
//! source = "sample"        # or source = "file", path = "attrs.csv"
//!
//! [schema]
//! alpha = 1.0
//! beta = 1.0
//! weight_fof = 1.0
//! weight_pa = 1.0
//!
//! [[schema.attributes]]
//! name = "school"
//! kind = "categorical"     # categorical | ordinal | numerical
//! levels = ["A", "B", "C"] # ordinal levels are listed in ranking order
//! proportions = [2, 2, 3]  # counts or probabilities; omitted = uniform
//! weight = 1.0
//! ```
//!
//! Every schema and parameter invariant is enforced at parse time; unknown
//! keys are rejected. A missing `seed` falls back to
//! [`crate::generator::DEFAULT_SEED`] and is flagged in the parse warnings.

use crate::generator::{GenParams, GenerateError, DEFAULT_SEED};
use crate::schema::{AttributeSchema, AttributeSpec, SchemaError};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("config: {field}: {message}")]
    Constraint { field: String, message: String },
}

impl ConfigError {
    fn constraint(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Constraint {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Where node profiles come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileSource {
    /// Sample from the schema proportions with the master seed.
    Sample,
    /// Load a reference attribute table (replication mode).
    File(PathBuf),
}

/// A fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub schema: AttributeSchema,
    pub params: GenParams,
    pub profile_source: ProfileSource,
    pub output_prefix: Option<PathBuf>,
    /// Non-fatal findings from parsing (defaulted seed, degenerate weights).
    pub warnings: Vec<String>,
}

// Raw mirror of the TOML document. Scalar fields precede tables so the
// canonical serialization is valid TOML.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    output_prefix: Option<String>,
    params: RawParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    profiles: Option<RawProfiles>,
    schema: RawSchema,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    n: usize,
    m_min: usize,
    m_max: usize,
    #[serde(default = "default_probability")]
    p_sim: f64,
    #[serde(default = "default_probability")]
    p_triad: f64,
    #[serde(default = "default_triad_count")]
    triad_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default)]
    wide_anchor: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfiles {
    source: RawSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum RawSource {
    Sample,
    File,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchema {
    #[serde(default = "default_weight")]
    alpha: f64,
    #[serde(default = "default_weight")]
    beta: f64,
    #[serde(default = "default_weight")]
    weight_fof: f64,
    #[serde(default = "default_weight")]
    weight_pa: f64,
    #[serde(default)]
    raw_difference: bool,
    #[serde(default)]
    attributes: Vec<RawAttribute>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAttribute {
    name: String,
    kind: RawKind,
    levels: Vec<RawLevel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proportions: Option<Vec<f64>>,
    #[serde(default = "default_weight")]
    weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum RawKind {
    Categorical,
    Ordinal,
    Numerical,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawLevel {
    Number(f64),
    Label(String),
}

fn default_probability() -> f64 {
    1.0
}

fn default_triad_count() -> usize {
    3
}

fn default_weight() -> f64 {
    1.0
}

fn schema_error(field: String, err: SchemaError) -> ConfigError {
    ConfigError::constraint(field, err.to_string())
}

/// Parses and fully validates a run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text)?;
    let mut warnings = Vec::new();

    // schema
    let mut attributes = Vec::with_capacity(raw.schema.attributes.len());
    for (i, attr) in raw.schema.attributes.iter().enumerate() {
        let field = format!("schema.attributes[{i}] ('{}')", attr.name);
        if raw.schema.attributes[..i]
            .iter()
            .any(|a| a.name == attr.name)
        {
            return Err(ConfigError::constraint(field, "duplicate attribute name"));
        }
        let spec = match attr.kind {
            RawKind::Categorical | RawKind::Ordinal => {
                let labels: Vec<String> = attr
                    .levels
                    .iter()
                    .map(|l| match l {
                        RawLevel::Label(s) => s.clone(),
                        // numeric levels of label-valued attributes are taken
                        // by their textual form (e.g. class years)
                        RawLevel::Number(x) => crate::schema::format_number(*x),
                    })
                    .collect();
                if attr.kind == RawKind::Categorical {
                    if attr.rho.is_some() {
                        return Err(ConfigError::constraint(
                            field,
                            "rho applies only to ordinal and numerical attributes",
                        ));
                    }
                    AttributeSpec::categorical(
                        attr.name.clone(),
                        labels,
                        attr.proportions.clone(),
                        attr.weight,
                    )
                } else {
                    AttributeSpec::ordinal(
                        attr.name.clone(),
                        labels,
                        attr.proportions.clone(),
                        attr.weight,
                        attr.rho,
                    )
                }
            }
            RawKind::Numerical => {
                let values: Vec<f64> = attr
                    .levels
                    .iter()
                    .map(|l| match l {
                        RawLevel::Number(x) => Ok(*x),
                        RawLevel::Label(s) => Err(ConfigError::constraint(
                            field.clone(),
                            format!("numerical level '{s}' must be a number"),
                        )),
                    })
                    .collect::<Result<_, _>>()?;
                AttributeSpec::numerical(
                    attr.name.clone(),
                    values,
                    attr.proportions.clone(),
                    attr.weight,
                    attr.rho,
                )
            }
        }
        .map_err(|e| schema_error(field.clone(), e))?;
        attributes.push(spec);
    }
    let mut schema = AttributeSchema::new(attributes);
    schema
        .set_alpha(raw.schema.alpha)
        .map_err(|e| schema_error("schema.alpha".into(), e))?;
    schema
        .set_beta(raw.schema.beta)
        .map_err(|e| schema_error("schema.beta".into(), e))?;
    schema
        .set_weight_fof(raw.schema.weight_fof)
        .map_err(|e| schema_error("schema.weight_fof".into(), e))?;
    schema
        .set_weight_pa(raw.schema.weight_pa)
        .map_err(|e| schema_error("schema.weight_pa".into(), e))?;
    schema.set_raw_difference(raw.schema.raw_difference);
    if schema.is_degenerate() {
        warnings.push(
            "alpha + beta = 0: every combined score is zero and similarity-guided \
             selection degenerates to uniform random choice"
                .to_string(),
        );
    }

    // params
    if raw.params.seed.is_none() {
        warnings.push(format!(
            "seed not specified; using the documented default {DEFAULT_SEED}"
        ));
    }
    let params = GenParams {
        n: raw.params.n,
        m_min: raw.params.m_min,
        m_max: raw.params.m_max,
        p_sim: raw.params.p_sim,
        p_triad: raw.params.p_triad,
        triad_count: raw.params.triad_count,
        seed: raw.params.seed.unwrap_or(DEFAULT_SEED),
        wide_anchor: raw.params.wide_anchor,
    };
    params.validate().map_err(|e| match e {
        GenerateError::InvalidParams { field, message } => {
            ConfigError::constraint(format!("params.{field}"), message)
        }
        other => ConfigError::constraint("params", other.to_string()),
    })?;
    if params.n < 3 {
        return Err(ConfigError::constraint(
            "params.n",
            "must be at least 3 (the construction phase starts from a seed triad)",
        ));
    }

    // profile source
    let profile_source = match &raw.profiles {
        None => ProfileSource::Sample,
        Some(p) => match p.source {
            RawSource::Sample => {
                if p.path.is_some() {
                    return Err(ConfigError::constraint(
                        "profiles.path",
                        "path is only valid with source = \"file\"",
                    ));
                }
                ProfileSource::Sample
            }
            RawSource::File => match &p.path {
                Some(path) => ProfileSource::File(PathBuf::from(path)),
                None => {
                    return Err(ConfigError::constraint(
                        "profiles.path",
                        "source = \"file\" requires a path",
                    ))
                }
            },
        },
    };

    Ok(RunConfig {
        schema,
        params,
        profile_source,
        output_prefix: raw.output_prefix.map(PathBuf::from),
        warnings,
    })
}

impl RunConfig {
    /// Canonical TOML form. Re-parsing and re-serializing a canonical config
    /// reproduces it byte-identically.
    pub fn to_canonical_string(&self) -> String {
        let attributes = self
            .schema
            .attributes()
            .iter()
            .map(|a| {
                let (kind, levels) = match a.domain() {
                    crate::schema::Domain::Labels(labels) => (
                        match a.kind() {
                            crate::schema::AttributeKind::Ordinal => RawKind::Ordinal,
                            _ => RawKind::Categorical,
                        },
                        labels.iter().cloned().map(RawLevel::Label).collect(),
                    ),
                    crate::schema::Domain::Numbers(values) => (
                        RawKind::Numerical,
                        values.iter().copied().map(RawLevel::Number).collect(),
                    ),
                };
                RawAttribute {
                    name: a.name().to_string(),
                    kind,
                    levels,
                    proportions: Some(a.proportions().to_vec()),
                    weight: a.weight(),
                    rho: match a.kind() {
                        crate::schema::AttributeKind::Categorical => None,
                        _ => Some(a.rho()),
                    },
                }
            })
            .collect();
        let raw = RawConfig {
            output_prefix: self
                .output_prefix
                .as_ref()
                .map(|p| p.to_string_lossy().into_owned()),
            params: RawParams {
                n: self.params.n,
                m_min: self.params.m_min,
                m_max: self.params.m_max,
                p_sim: self.params.p_sim,
                p_triad: self.params.p_triad,
                triad_count: self.params.triad_count,
                seed: Some(self.params.seed),
                wide_anchor: self.params.wide_anchor,
            },
            profiles: Some(match &self.profile_source {
                ProfileSource::Sample => RawProfiles {
                    source: RawSource::Sample,
                    path: None,
                },
                ProfileSource::File(path) => RawProfiles {
                    source: RawSource::File,
                    path: Some(path.to_string_lossy().into_owned()),
                },
            }),
            schema: RawSchema {
                alpha: self.schema.alpha(),
                beta: self.schema.beta(),
                weight_fof: self.schema.weight_fof(),
                weight_pa: self.schema.weight_pa(),
                raw_difference: self.schema.raw_difference(),
                attributes,
            },
        };
        toml::to_string(&raw).expect("config serialization cannot fail")
    }
}
