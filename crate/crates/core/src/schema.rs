//! Demographic attribute declarations and node-profile initialization.
//!
//! A schema lists the attributes every individual carries (kind, admissible
//! values, population proportions, weight) together with the global balance
//! knobs used by the similarity kernels. Profiles are assigned before
//! construction starts, either by seeded sampling from the declared
//! proportions or by loading a reference attribute table so the synthetic
//! population matches an original dataset exactly.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use std::io::Read;
use thiserror::Error;

/// Tolerance on `Σ proportions = 1` after normalization.
const PROPORTION_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttributeKind {
    Categorical,
    Ordinal,
    Numerical,
}

impl AttributeKind {
    pub fn name(self) -> &'static str {
        match self {
            AttributeKind::Categorical => "categorical",
            AttributeKind::Ordinal => "ordinal",
            AttributeKind::Numerical => "numerical",
        }
    }
}

/// Admissible values of one attribute.
///
/// Categorical and ordinal attributes enumerate labels; for ordinal attributes
/// the listed order is the ranking order (rank `1..=k`). Numerical attributes
/// enumerate the admissible numeric values.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Labels(Vec<String>),
    Numbers(Vec<f64>),
}

impl Domain {
    pub fn len(&self) -> usize {
        match self {
            Domain::Labels(v) => v.len(),
            Domain::Numbers(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One value of a node profile: a level index for categorical/ordinal
/// attributes, or a numeric value for numerical attributes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttrValue {
    Level(usize),
    Number(f64),
}

/// A node's attribute assignment, aligned with the schema's attribute list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeProfile {
    values: Vec<AttrValue>,
}

impl NodeProfile {
    pub fn new(values: Vec<AttrValue>) -> Self {
        NodeProfile { values }
    }

    pub fn values(&self) -> &[AttrValue] {
        &self.values
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SchemaError {
    #[error("attribute '{0}': must declare at least one level")]
    EmptyLevels(String),
    #[error("attribute '{name}': {proportions} proportions for {levels} levels")]
    ProportionMismatch {
        name: String,
        proportions: usize,
        levels: usize,
    },
    #[error("attribute '{0}': proportions must be finite and non-negative")]
    BadProportion(String),
    #[error("attribute '{0}': proportions sum to zero")]
    ZeroProportionSum(String),
    #[error("attribute '{name}': duplicate level '{level}'")]
    DuplicateLevel { name: String, level: String },
    #[error("attribute '{0}': levels must be finite numbers")]
    BadLevelValue(String),
    #[error("attribute '{0}': rho must be positive and finite")]
    BadRho(String),
    #[error("attribute '{name}': rho = {rho} is below the maximum rank difference {needed}")]
    RhoBelowMaxDifference { name: String, rho: f64, needed: f64 },
    #[error("attribute '{0}': weight must be finite and non-negative")]
    BadWeight(String),
    #[error("{0} must be finite and non-negative")]
    BadGlobalWeight(&'static str),
}

/// Declaration of one demographic attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSpec {
    name: String,
    kind: AttributeKind,
    domain: Domain,
    proportions: Vec<f64>,
    weight: f64,
    rho: f64,
}

impl AttributeSpec {
    /// Categorical attribute over `labels` with the given proportions.
    ///
    /// Proportions may be given as counts (ratio notation like `2:2:3`) or
    /// probabilities; they are normalized to sum to 1. `None` means uniform.
    pub fn categorical(
        name: impl Into<String>,
        labels: Vec<String>,
        proportions: Option<Vec<f64>>,
        weight: f64,
    ) -> Result<Self, SchemaError> {
        Self::build(
            name.into(),
            AttributeKind::Categorical,
            Domain::Labels(labels),
            proportions,
            weight,
            None,
        )
    }

    /// Ordinal attribute whose `labels` are listed in ranking order.
    ///
    /// `rho` is the normalizer of the rank difference; it defaults to the
    /// maximum possible rank difference `k − 1` (clamped to 1 for single-level
    /// attributes so the kernel stays total).
    pub fn ordinal(
        name: impl Into<String>,
        labels: Vec<String>,
        proportions: Option<Vec<f64>>,
        weight: f64,
        rho: Option<f64>,
    ) -> Result<Self, SchemaError> {
        Self::build(
            name.into(),
            AttributeKind::Ordinal,
            Domain::Labels(labels),
            proportions,
            weight,
            rho,
        )
    }

    /// Numerical attribute over the admissible `values`.
    ///
    /// `rho` defaults to the width of the declared domain (max − min, clamped
    /// to 1 when the domain is a single point).
    pub fn numerical(
        name: impl Into<String>,
        values: Vec<f64>,
        proportions: Option<Vec<f64>>,
        weight: f64,
        rho: Option<f64>,
    ) -> Result<Self, SchemaError> {
        Self::build(
            name.into(),
            AttributeKind::Numerical,
            Domain::Numbers(values),
            proportions,
            weight,
            rho,
        )
    }

    fn build(
        name: String,
        kind: AttributeKind,
        domain: Domain,
        proportions: Option<Vec<f64>>,
        weight: f64,
        rho: Option<f64>,
    ) -> Result<Self, SchemaError> {
        if domain.is_empty() {
            return Err(SchemaError::EmptyLevels(name));
        }
        match &domain {
            Domain::Labels(labels) => {
                for (i, l) in labels.iter().enumerate() {
                    if labels[..i].contains(l) {
                        return Err(SchemaError::DuplicateLevel {
                            name,
                            level: l.clone(),
                        });
                    }
                }
            }
            Domain::Numbers(values) => {
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(SchemaError::BadLevelValue(name));
                }
                for (i, v) in values.iter().enumerate() {
                    if values[..i].contains(v) {
                        return Err(SchemaError::DuplicateLevel {
                            name,
                            level: v.to_string(),
                        });
                    }
                }
            }
        }
        let proportions = match proportions {
            Some(p) => {
                if p.len() != domain.len() {
                    return Err(SchemaError::ProportionMismatch {
                        name,
                        proportions: p.len(),
                        levels: domain.len(),
                    });
                }
                if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(SchemaError::BadProportion(name));
                }
                let sum: f64 = p.iter().sum();
                if sum <= 0.0 {
                    return Err(SchemaError::ZeroProportionSum(name));
                }
                let normalized: Vec<f64> = p.iter().map(|x| x / sum).collect();
                debug_assert!((normalized.iter().sum::<f64>() - 1.0).abs() < PROPORTION_SUM_TOL);
                normalized
            }
            None => vec![1.0 / domain.len() as f64; domain.len()],
        };
        if !weight.is_finite() || weight < 0.0 {
            return Err(SchemaError::BadWeight(name));
        }
        let rho = match rho {
            Some(r) => {
                if !r.is_finite() || r <= 0.0 {
                    return Err(SchemaError::BadRho(name));
                }
                // the ordinal kernel needs rho to dominate every possible
                // rank difference, or similarities would go negative
                if kind == AttributeKind::Ordinal {
                    let max_diff = (domain.len() - 1) as f64;
                    if r < max_diff {
                        return Err(SchemaError::RhoBelowMaxDifference {
                            name,
                            rho: r,
                            needed: max_diff,
                        });
                    }
                }
                r
            }
            None => match &domain {
                Domain::Labels(labels) => ((labels.len() - 1) as f64).max(1.0),
                Domain::Numbers(values) => {
                    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
                    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    (max - min).max(1.0)
                }
            },
        };
        Ok(AttributeSpec {
            name,
            kind,
            domain,
            proportions,
            weight,
            rho,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> AttributeKind {
        self.kind
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn level_count(&self) -> usize {
        self.domain.len()
    }

    /// Normalized proportions, aligned with the domain.
    pub fn proportions(&self) -> &[f64] {
        &self.proportions
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Human-readable form of one value of this attribute, as written to
    /// profile tables.
    pub fn format_value(&self, value: &AttrValue) -> String {
        match (&self.domain, value) {
            (Domain::Labels(labels), AttrValue::Level(i)) => labels[*i].clone(),
            (Domain::Numbers(_), AttrValue::Number(x)) => format_number(*x),
            _ => panic!(
                "profile value does not conform to attribute '{}'",
                self.name
            ),
        }
    }
}

/// Formats a numeric attribute value without a trailing `.0` for integers.
pub(crate) fn format_number(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// Full attribute schema plus the global balance weights consumed by the
/// similarity kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSchema {
    attributes: Vec<AttributeSpec>,
    alpha: f64,
    beta: f64,
    weight_fof: f64,
    weight_pa: f64,
    raw_difference: bool,
}

impl Default for AttributeSchema {
    /// Pure-structural schema: no attributes, all weights 1.
    fn default() -> Self {
        AttributeSchema {
            attributes: Vec::new(),
            alpha: 1.0,
            beta: 1.0,
            weight_fof: 1.0,
            weight_pa: 1.0,
            raw_difference: false,
        }
    }
}

impl AttributeSchema {
    /// Schema with the given attributes and all global weights at their
    /// default of 1.
    pub fn new(attributes: Vec<AttributeSpec>) -> Self {
        AttributeSchema {
            attributes,
            ..Self::default()
        }
    }

    pub fn attributes(&self) -> &[AttributeSpec] {
        &self.attributes
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn weight_fof(&self) -> f64 {
        self.weight_fof
    }

    pub fn weight_pa(&self) -> f64 {
        self.weight_pa
    }

    /// When set, the ordinal and numerical kernels return the normalized
    /// difference exactly as printed instead of the inverted similarity form.
    /// See [`crate::similarity`] for the rationale.
    pub fn raw_difference(&self) -> bool {
        self.raw_difference
    }

    pub fn set_alpha(&mut self, v: f64) -> Result<(), SchemaError> {
        Self::check_weight(v, "alpha")?;
        self.alpha = v;
        Ok(())
    }

    pub fn set_beta(&mut self, v: f64) -> Result<(), SchemaError> {
        Self::check_weight(v, "beta")?;
        self.beta = v;
        Ok(())
    }

    pub fn set_weight_fof(&mut self, v: f64) -> Result<(), SchemaError> {
        Self::check_weight(v, "weight_fof")?;
        self.weight_fof = v;
        Ok(())
    }

    pub fn set_weight_pa(&mut self, v: f64) -> Result<(), SchemaError> {
        Self::check_weight(v, "weight_pa")?;
        self.weight_pa = v;
        Ok(())
    }

    pub fn set_raw_difference(&mut self, v: bool) {
        self.raw_difference = v;
    }

    fn check_weight(v: f64, name: &'static str) -> Result<(), SchemaError> {
        if !v.is_finite() || v < 0.0 {
            return Err(SchemaError::BadGlobalWeight(name));
        }
        Ok(())
    }

    /// `alpha + beta = 0` makes every combined score identically zero, so
    /// similarity-guided selection degenerates to uniform random choice. The
    /// configuration is permitted but worth flagging.
    pub fn is_degenerate(&self) -> bool {
        self.alpha + self.beta == 0.0
    }
}

/// Draws `n` profiles from the schema's proportion distributions.
///
/// Each attribute is sampled independently. The draw order is fixed: nodes in
/// id order, attributes in schema order, one draw per (node, attribute), so
/// the output is a pure function of `(schema, n, rng state)`. An empty
/// attribute list yields `n` empty profiles without consuming the generator.
pub fn sample_profiles<R: Rng>(
    schema: &AttributeSchema,
    n: usize,
    rng: &mut R,
) -> Vec<NodeProfile> {
    if schema.attributes().is_empty() {
        return vec![NodeProfile::default(); n];
    }
    let samplers: Vec<WeightedIndex<f64>> = schema
        .attributes()
        .iter()
        .map(|a| {
            WeightedIndex::new(a.proportions().iter().copied())
                .expect("proportions validated at construction")
        })
        .collect();
    (0..n)
        .map(|_| {
            let values = schema
                .attributes()
                .iter()
                .zip(&samplers)
                .map(|(attr, sampler)| {
                    let idx = sampler.sample(rng);
                    match attr.domain() {
                        Domain::Labels(_) => AttrValue::Level(idx),
                        Domain::Numbers(values) => AttrValue::Number(values[idx]),
                    }
                })
                .collect();
            NodeProfile::new(values)
        })
        .collect()
}

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("attribute table: {0}")]
    Csv(#[from] csv::Error),
    #[error("attribute table is missing a column for attribute '{0}'")]
    MissingColumn(String),
    #[error("row {row}: attribute '{attribute}': unknown level '{value}'")]
    UnknownLevel {
        row: usize,
        attribute: String,
        value: String,
    },
    #[error("row {row}: attribute '{attribute}': '{value}' is not a number")]
    BadNumber {
        row: usize,
        attribute: String,
        value: String,
    },
    #[error("row {row}: attribute '{attribute}': value {value} is outside the declared domain")]
    OutsideDomain {
        row: usize,
        attribute: String,
        value: String,
    },
}

/// Loads profiles from a delimiter-separated attribute table with a header
/// row naming the attributes. Rows map to nodes in order; no sampling takes
/// place, so the loaded population replicates the source distribution
/// exactly.
///
/// Row numbers in errors are 1-based over data rows (the header is row 0).
pub fn load_profiles<R: Read>(
    schema: &AttributeSchema,
    reader: R,
) -> Result<Vec<NodeProfile>, ProfileError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv_reader.headers()?.clone();
    let columns: Vec<usize> = schema
        .attributes()
        .iter()
        .map(|attr| {
            headers
                .iter()
                .position(|h| h == attr.name())
                .ok_or_else(|| ProfileError::MissingColumn(attr.name().to_string()))
        })
        .collect::<Result<_, _>>()?;

    let mut profiles = Vec::new();
    for (idx, record) in csv_reader.records().enumerate() {
        let record = record?;
        let row = idx + 1;
        let mut values = Vec::with_capacity(schema.attributes().len());
        for (attr, &col) in schema.attributes().iter().zip(&columns) {
            let field = record.get(col).unwrap_or("");
            let value = match attr.domain() {
                Domain::Labels(labels) => {
                    let level = labels.iter().position(|l| l == field).ok_or_else(|| {
                        ProfileError::UnknownLevel {
                            row,
                            attribute: attr.name().to_string(),
                            value: field.to_string(),
                        }
                    })?;
                    AttrValue::Level(level)
                }
                Domain::Numbers(numbers) => {
                    let x: f64 = field.parse().map_err(|_| ProfileError::BadNumber {
                        row,
                        attribute: attr.name().to_string(),
                        value: field.to_string(),
                    })?;
                    if !numbers.contains(&x) {
                        return Err(ProfileError::OutsideDomain {
                            row,
                            attribute: attr.name().to_string(),
                            value: field.to_string(),
                        });
                    }
                    AttrValue::Number(x)
                }
            };
            values.push(value);
        }
        profiles.push(NodeProfile::new(values));
    }
    Ok(profiles)
}
