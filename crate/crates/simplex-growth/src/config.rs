//! Simulation instance declaration and validation: dimension, model variant,
//! fitness function, weight distribution, initial complex, seed.
//!
//! Config files use TOML; every field can be overridden on the command line
//! with `--set key=value` (dotted paths).

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::face::{enumerate_multisets, multiset_count, FaceType, TypeKey};

/// Probability bookkeeping tolerance (sums, CDF endpoints).
pub const PROB_TOL: f64 = 1e-12;

/// Grid size for expectations against continuous weight laws.
pub const QUADRATURE_POINTS: usize = 1_000_000;

/// Cap on the canonical finite type space C(M + d - 1, d).
pub const MAX_TYPE_SPACE: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    A,
    B,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::A => write!(f, "A"),
            Variant::B => write!(f, "B"),
        }
    }
}

/// Distribution of vertex weights on [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightLaw {
    /// Atoms (value, probability); probabilities sum to 1.
    FiniteSupport { atoms: Vec<(f64, f64)> },
    /// Uniform on [0, 1].
    Uniform01,
    /// Piecewise-linear CDF through the given (value, cumulative) grid;
    /// the first grid point carries an atom of its cumulative mass.
    TableCdf { grid: Vec<(f64, f64)> },
}

/// Named monotone positive scalar maps for product fitness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum ScalarMap {
    /// g(x) = x. Positive only when the weight support stays away from 0.
    Identity,
    /// g(x) = offset + slope * x, offset > 0, slope >= 0.
    Affine { offset: f64, slope: f64 },
    /// g(x) = exp(rate * x), rate >= 0.
    Exp { rate: f64 },
}

impl ScalarMap {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ScalarMap::Identity => x,
            ScalarMap::Affine { offset, slope } => offset + slope * x,
            ScalarMap::Exp { rate } => (rate * x).exp(),
        }
    }
}

/// Symmetric positive fitness over face types. All kinds depend only on the
/// multiset of coordinates, so symmetry holds by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FitnessSpec {
    Constant {
        f0: f64,
    },
    /// f(x) = prod_i g(x_i).
    Product {
        g: ScalarMap,
    },
    /// f(x) = exp(-beta * sum_i (1 - x_i)), beta >= 0.
    EnergyExp {
        beta: f64,
    },
    /// Explicit value per canonical type over a finite weight support.
    Table {
        entries: Vec<TableEntry>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    /// Sorted weight vector of length d over the support atoms.
    pub face: Vec<f64>,
    pub value: f64,
}

/// Weight assignment for one initial vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexWeight {
    Fixed(f64),
    Named(RandomWeight),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomWeight {
    Random,
}

/// Starting complex. The default is a single d-simplex with i.i.d. weights.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialComplexSpec {
    #[default]
    Simplex,
    /// Explicit list of active (d-1)-faces over a shared vertex pool.
    /// `faces` holds vertex indices into `vertex_weights`; each face has
    /// exactly d vertices. Weights may be fixed or sampled from the law.
    Explicit {
        vertex_weights: Vec<VertexWeight>,
        faces: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub d: usize,
    pub variant: Variant,
    pub fitness: FitnessSpec,
    pub weights: WeightLaw,
    #[serde(default)]
    pub initial: InitialComplexSpec,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unsupported dimension: {0}")]
    DimensionUnsupported(String),
    #[error("bad weight distribution: {0}")]
    BadDistribution(String),
    #[error("fitness is not strictly positive: {0}")]
    NonPositiveFitness(String),
    #[error("bad initial complex: {0}")]
    BadInitialComplex(String),
    #[error("bad fitness table: {0}")]
    BadFitnessTable(String),
}

/// Every violated invariant found during validation.
#[derive(Debug, Error, PartialEq)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl ModelConfig {
    /// Checks every invariant and returns the normalized config (weight atoms
    /// sorted, probabilities renormalized) or the full list of violations.
    pub fn validate(mut self) -> Result<ModelConfig, ConfigErrors> {
        let mut errors = Vec::new();

        if self.d == 0 {
            errors.push(ConfigError::DimensionUnsupported(
                "d must be at least 1".into(),
            ));
        }
        if self.variant == Variant::B && self.d < 2 {
            errors.push(ConfigError::DimensionUnsupported(
                "variant B needs d >= 2 (the d = 1 case degenerates to a path)".into(),
            ));
        }

        self.normalize_weights(&mut errors);
        self.check_fitness(&mut errors);
        self.check_initial(&mut errors);

        if errors.is_empty() {
            Ok(self)
        } else {
            Err(ConfigErrors(errors))
        }
    }

    fn normalize_weights(&mut self, errors: &mut Vec<ConfigError>) {
        match &mut self.weights {
            WeightLaw::FiniteSupport { atoms } => {
                if atoms.is_empty() {
                    errors.push(ConfigError::BadDistribution("no atoms".into()));
                    return;
                }
                atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
                let mut ok = true;
                for &(v, p) in atoms.iter() {
                    if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                        errors.push(ConfigError::BadDistribution(format!(
                            "atom value {v} outside [0, 1]"
                        )));
                        ok = false;
                    }
                    if !(p > 0.0) || !p.is_finite() {
                        errors.push(ConfigError::BadDistribution(format!(
                            "atom probability {p} must be > 0"
                        )));
                        ok = false;
                    }
                }
                if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
                    errors.push(ConfigError::BadDistribution(
                        "atom values must be distinct".into(),
                    ));
                    ok = false;
                }
                if !ok {
                    return;
                }
                let sum: f64 = atoms.iter().map(|a| a.1).sum();
                if (sum - 1.0).abs() > PROB_TOL {
                    errors.push(ConfigError::BadDistribution(format!(
                        "probabilities sum to {sum}, expected 1"
                    )));
                } else {
                    for a in atoms.iter_mut() {
                        a.1 /= sum;
                    }
                }
            }
            WeightLaw::Uniform01 => {}
            WeightLaw::TableCdf { grid } => {
                if grid.len() < 2 {
                    errors.push(ConfigError::BadDistribution(
                        "table-cdf needs at least two grid points".into(),
                    ));
                    return;
                }
                for w in grid.windows(2) {
                    if !(w[0].0 < w[1].0) || !(w[0].1 < w[1].1) {
                        errors.push(ConfigError::BadDistribution(
                            "table-cdf grid must be strictly increasing in value and cumulative"
                                .into(),
                        ));
                        break;
                    }
                }
                let (v0, c0) = grid[0];
                let (vl, cl) = *grid.last().unwrap();
                if !(0.0..=1.0).contains(&v0) || !(0.0..=1.0).contains(&vl) {
                    errors.push(ConfigError::BadDistribution(
                        "table-cdf values must lie in [0, 1]".into(),
                    ));
                }
                if c0 < 0.0 {
                    errors.push(ConfigError::BadDistribution(
                        "cumulative probabilities must be nonnegative".into(),
                    ));
                }
                if (cl - 1.0).abs() > PROB_TOL {
                    errors.push(ConfigError::BadDistribution(format!(
                        "last cumulative value is {cl}, expected 1"
                    )));
                } else {
                    grid.last_mut().unwrap().1 = 1.0;
                }
            }
        }
    }

    fn check_fitness(&self, errors: &mut Vec<ConfigError>) {
        match &self.fitness {
            FitnessSpec::Constant { f0 } => {
                if !(*f0 > 0.0) || !f0.is_finite() {
                    errors.push(ConfigError::NonPositiveFitness(format!(
                        "constant f0 = {f0}"
                    )));
                }
            }
            FitnessSpec::Product { g } => {
                match g {
                    ScalarMap::Identity => {
                        if self.support_bounds().0 <= 0.0 {
                            errors.push(ConfigError::NonPositiveFitness(
                                "identity map with weight support reaching 0".into(),
                            ));
                        }
                    }
                    ScalarMap::Affine { offset, slope } => {
                        if !(*offset > 0.0) || *slope < 0.0 {
                            errors.push(ConfigError::NonPositiveFitness(format!(
                                "affine map needs offset > 0 and slope >= 0, got ({offset}, {slope})"
                            )));
                        }
                    }
                    ScalarMap::Exp { rate } => {
                        if *rate < 0.0 || !rate.is_finite() {
                            errors.push(ConfigError::NonPositiveFitness(format!(
                                "exp map needs rate >= 0, got {rate}"
                            )));
                        }
                    }
                }
            }
            FitnessSpec::EnergyExp { beta } => {
                if *beta < 0.0 || !beta.is_finite() {
                    errors.push(ConfigError::NonPositiveFitness(format!(
                        "energy-exp needs beta >= 0, got {beta}"
                    )));
                }
            }
            FitnessSpec::Table { entries } => {
                let atoms = match &self.weights {
                    WeightLaw::FiniteSupport { atoms } => {
                        atoms.iter().map(|a| a.0).collect::<Vec<_>>()
                    }
                    _ => {
                        errors.push(ConfigError::BadFitnessTable(
                            "table fitness requires a finite-support weight law".into(),
                        ));
                        return;
                    }
                };
                if self.d == 0 {
                    return;
                }
                let expected = match multiset_count(atoms.len(), self.d) {
                    Some(c) if c <= MAX_TYPE_SPACE => c as usize,
                    _ => {
                        errors.push(ConfigError::BadFitnessTable(format!(
                            "type space over {} atoms in dimension {} exceeds the cap of {}",
                            atoms.len(),
                            self.d,
                            MAX_TYPE_SPACE
                        )));
                        return;
                    }
                };
                let mut seen: HashMap<TypeKey, f64> = HashMap::new();
                for e in entries {
                    if e.face.len() != self.d {
                        errors.push(ConfigError::BadFitnessTable(format!(
                            "table face {:?} has length {}, expected d = {}",
                            e.face,
                            e.face.len(),
                            self.d
                        )));
                        return;
                    }
                    if !(e.value > 0.0) || !e.value.is_finite() {
                        errors.push(ConfigError::NonPositiveFitness(format!(
                            "table value {} for face {:?}",
                            e.value, e.face
                        )));
                    }
                    let key = FaceType::new(e.face.clone()).key();
                    if seen.insert(key, e.value).is_some() {
                        errors.push(ConfigError::BadFitnessTable(format!(
                            "duplicate table entry for face {:?}",
                            e.face
                        )));
                    }
                }
                let types = enumerate_multisets(&atoms, self.d);
                if types.len() != expected || seen.len() != expected {
                    errors.push(ConfigError::BadFitnessTable(format!(
                        "table covers {} of {} canonical types",
                        seen.len(),
                        expected
                    )));
                    return;
                }
                for t in &types {
                    if !seen.contains_key(&t.key()) {
                        errors.push(ConfigError::BadFitnessTable(format!(
                            "missing table entry for type {:?}",
                            t.weights()
                        )));
                    }
                }
            }
        }
    }

    fn check_initial(&self, errors: &mut Vec<ConfigError>) {
        if let InitialComplexSpec::Explicit {
            vertex_weights,
            faces,
        } = &self.initial
        {
            if faces.is_empty() {
                errors.push(ConfigError::BadInitialComplex(
                    "explicit initial complex needs at least one active face".into(),
                ));
            }
            for f in faces {
                if f.len() != self.d {
                    errors.push(ConfigError::BadInitialComplex(format!(
                        "face {f:?} has {} vertices, expected d = {}",
                        f.len(),
                        self.d
                    )));
                }
                let mut sorted = f.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != f.len() {
                    errors.push(ConfigError::BadInitialComplex(format!(
                        "face {f:?} repeats a vertex"
                    )));
                }
                if f.iter().any(|&v| v >= vertex_weights.len()) {
                    errors.push(ConfigError::BadInitialComplex(format!(
                        "face {f:?} references a vertex outside the pool of {}",
                        vertex_weights.len()
                    )));
                }
            }
            for (i, w) in vertex_weights.iter().enumerate() {
                if let VertexWeight::Fixed(v) = w {
                    if !(0.0..=1.0).contains(v) || !v.is_finite() {
                        errors.push(ConfigError::BadInitialComplex(format!(
                            "vertex {i} weight {v} outside [0, 1]"
                        )));
                    }
                }
            }
        }
    }

    /// (min, max) of the weight support.
    pub fn support_bounds(&self) -> (f64, f64) {
        match &self.weights {
            WeightLaw::FiniteSupport { atoms } => {
                let lo = atoms.iter().map(|a| a.0).fold(f64::INFINITY, f64::min);
                let hi = atoms.iter().map(|a| a.0).fold(f64::NEG_INFINITY, f64::max);
                (lo, hi)
            }
            WeightLaw::Uniform01 => (0.0, 1.0),
            WeightLaw::TableCdf { grid } => {
                (grid.first().map_or(0.0, |g| g.0), grid.last().map_or(1.0, |g| g.0))
            }
        }
    }

    /// Builds the runtime evaluators. The config must have been validated.
    pub fn compile(&self) -> Instance {
        Instance {
            fitness: Fitness::from_spec(&self.fitness),
            weights: WeightDist::compile_from_law(&self.weights),
            cfg: self.clone(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<ModelConfig, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// A validated config together with its compiled evaluators.
#[derive(Debug, Clone)]
pub struct Instance {
    pub cfg: ModelConfig,
    pub fitness: Fitness,
    pub weights: WeightDist,
}

impl Instance {
    pub fn d(&self) -> usize {
        self.cfg.d
    }

    pub fn variant(&self) -> Variant {
        self.cfg.variant
    }

    /// (f_min, f_max) over types drawn from the weight support.
    pub fn fitness_range(&self) -> (f64, f64) {
        match (&self.cfg.fitness, &self.cfg.weights) {
            (FitnessSpec::Table { .. }, WeightLaw::FiniteSupport { atoms }) => {
                let values: Vec<f64> = atoms.iter().map(|a| a.0).collect();
                let types = enumerate_multisets(&values, self.cfg.d);
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for t in &types {
                    let f = self.fitness.eval(t.weights());
                    lo = lo.min(f);
                    hi = hi.max(f);
                }
                (lo, hi)
            }
            // The remaining kinds are monotone non-decreasing in every
            // coordinate, so the extremes sit at the constant corner types.
            _ => {
                let (lo, hi) = self.cfg.support_bounds();
                let d = self.cfg.d;
                (
                    self.fitness.eval(&vec![lo; d]),
                    self.fitness.eval(&vec![hi; d]),
                )
            }
        }
    }
}

/// Runtime fitness evaluator over sorted weight slices.
#[derive(Debug, Clone)]
pub enum Fitness {
    Constant(f64),
    Product(ScalarMap),
    EnergyExp(f64),
    Table(HashMap<TypeKey, f64>),
}

impl Fitness {
    pub fn from_spec(spec: &FitnessSpec) -> Fitness {
        match spec {
            FitnessSpec::Constant { f0 } => Fitness::Constant(*f0),
            FitnessSpec::Product { g } => Fitness::Product(g.clone()),
            FitnessSpec::EnergyExp { beta } => Fitness::EnergyExp(*beta),
            FitnessSpec::Table { entries } => Fitness::Table(
                entries
                    .iter()
                    .map(|e| (FaceType::new(e.face.clone()).key(), e.value))
                    .collect(),
            ),
        }
    }

    /// Evaluates on a type given in canonical (non-decreasing) order, which
    /// pins the floating-point reduction order and makes evaluation exactly
    /// permutation-invariant.
    pub fn eval(&self, weights: &[f64]) -> f64 {
        debug_assert!(weights.windows(2).all(|w| w[0] <= w[1]));
        match self {
            Fitness::Constant(f0) => *f0,
            Fitness::Product(g) => weights.iter().map(|&x| g.eval(x)).product(),
            Fitness::EnergyExp(beta) => {
                let deficit: f64 = weights.iter().map(|&x| 1.0 - x).sum();
                (-beta * deficit).exp()
            }
            Fitness::Table(map) => *map
                .get(&FaceType::from_sorted(weights.to_vec()).key())
                .expect("face type outside the tabulated support"),
        }
    }

    /// Whether this kind is monotone non-decreasing in each coordinate by
    /// construction. Table fitness cannot be certified.
    pub fn structurally_monotone(&self) -> Option<bool> {
        match self {
            Fitness::Constant(_) | Fitness::Product(_) | Fitness::EnergyExp(_) => Some(true),
            Fitness::Table(_) => None,
        }
    }
}

/// Runtime weight sampler / integrator.
#[derive(Debug, Clone)]
pub enum WeightDist {
    Finite { values: Vec<f64>, cum: Vec<f64> },
    Uniform01,
    TableCdf { values: Vec<f64>, cum: Vec<f64> },
}

impl WeightDist {
    pub fn compile_from_law(law: &WeightLaw) -> WeightDist {
        match law {
            WeightLaw::FiniteSupport { atoms } => {
                let values: Vec<f64> = atoms.iter().map(|a| a.0).collect();
                let mut cum = Vec::with_capacity(atoms.len());
                let mut acc = 0.0;
                for a in atoms {
                    acc += a.1;
                    cum.push(acc);
                }
                *cum.last_mut().unwrap() = 1.0;
                WeightDist::Finite { values, cum }
            }
            WeightLaw::Uniform01 => WeightDist::Uniform01,
            WeightLaw::TableCdf { grid } => WeightDist::TableCdf {
                values: grid.iter().map(|g| g.0).collect(),
                cum: grid.iter().map(|g| g.1).collect(),
            },
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u = rng.gen::<f64>();
        self.inverse_cdf(u)
    }

    /// Inverse transform. Exact on the table: values come straight from the
    /// grid or atoms (finite support returns bit-exact atom values).
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        match self {
            WeightDist::Finite { values, cum } => {
                let i = cum.partition_point(|&c| c <= u);
                values[i.min(values.len() - 1)]
            }
            WeightDist::Uniform01 => u,
            WeightDist::TableCdf { values, cum } => {
                if u <= cum[0] {
                    return values[0];
                }
                let i = cum.partition_point(|&c| c < u);
                let i = i.min(cum.len() - 1);
                let (c0, c1) = (cum[i - 1], cum[i]);
                let (v0, v1) = (values[i - 1], values[i]);
                v0 + (v1 - v0) * (u - c0) / (c1 - c0)
            }
        }
    }

    /// E[g(W)], by exact atom summation or midpoint quadrature in u-space.
    pub fn expect(&self, g: impl Fn(f64) -> f64) -> f64 {
        match self {
            WeightDist::Finite { values, cum } => {
                let mut acc = 0.0;
                let mut prev = 0.0;
                for (v, c) in values.iter().zip(cum.iter()) {
                    acc += (c - prev) * g(*v);
                    prev = *c;
                }
                acc
            }
            _ => {
                let n = QUADRATURE_POINTS;
                let mut acc = 0.0;
                for i in 0..n {
                    let u = (i as f64 + 0.5) / n as f64;
                    acc += g(self.inverse_cdf(u));
                }
                acc / n as f64
            }
        }
    }

    pub fn mean(&self) -> f64 {
        self.expect(|w| w)
    }

    /// Point mass at `v` (exactly).
    pub fn atom_at(&self, v: f64) -> f64 {
        match self {
            WeightDist::Finite { values, cum } => {
                let mut prev = 0.0;
                for (x, c) in values.iter().zip(cum.iter()) {
                    if *x == v {
                        return c - prev;
                    }
                    prev = *c;
                }
                0.0
            }
            WeightDist::Uniform01 => 0.0,
            WeightDist::TableCdf { values, cum } => {
                if values[0] == v {
                    cum[0]
                } else {
                    0.0
                }
            }
        }
    }

    /// Atoms and probabilities for finite laws.
    pub fn atoms(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            WeightDist::Finite { values, cum } => {
                let mut probs = Vec::with_capacity(cum.len());
                let mut prev = 0.0;
                for c in cum {
                    probs.push(c - prev);
                    prev = *c;
                }
                Some((values.clone(), probs))
            }
            _ => None,
        }
    }
}

/// Loads a config from a TOML file, applies `--set` overrides, validates.
pub fn load_config(path: &Path, overrides: &[String]) -> Result<ModelConfig, ConfigLoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigLoadError::Io(path.display().to_string(), e))?;
    load_config_str(&text, overrides)
}

pub fn load_config_str(text: &str, overrides: &[String]) -> Result<ModelConfig, ConfigLoadError> {
    let mut doc: toml::Value = text.parse().map_err(ConfigLoadError::Parse)?;
    for ov in overrides {
        apply_override(&mut doc, ov)?;
    }
    let cfg: ModelConfig = doc.try_into().map_err(ConfigLoadError::Parse)?;
    cfg.validate().map_err(ConfigLoadError::Invalid)
}

/// Applies one `key.path=value` override to a TOML document. The value is
/// parsed as a TOML literal, falling back to a string.
pub fn apply_override(doc: &mut toml::Value, expr: &str) -> Result<(), ConfigLoadError> {
    let (path, raw) = expr
        .split_once('=')
        .ok_or_else(|| ConfigLoadError::BadOverride(expr.into()))?;
    let value: toml::Value = match format!("v = {raw}").parse::<toml::Value>() {
        Ok(t) => t["v"].clone(),
        Err(_) => toml::Value::String(raw.to_string()),
    };
    let mut node = doc;
    let parts: Vec<&str> = path.trim().split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(ConfigLoadError::BadOverride(expr.into()));
    }
    for part in &parts[..parts.len() - 1] {
        let table = node
            .as_table_mut()
            .ok_or_else(|| ConfigLoadError::BadOverride(expr.into()))?;
        node = table
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(Default::default()));
    }
    let table = node
        .as_table_mut()
        .ok_or_else(|| ConfigLoadError::BadOverride(expr.into()))?;
    table.insert(parts.last().unwrap().to_string(), value);
    Ok(())
}

#[derive(Debug, Error)]
pub enum ConfigLoadError {
    #[error("cannot read config {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config:\n{0}")]
    Invalid(ConfigErrors),
    #[error("bad --set override (expected key.path=value): {0}")]
    BadOverride(String),
}
