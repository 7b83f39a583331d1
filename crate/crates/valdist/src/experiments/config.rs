//! Experiment configuration: JSON on disk, CLI overrides on top.

use crate::curves::ProjectiveCurve;
use crate::nevanlinna::SubschemeOnPn;
use crate::poly::{CPoly, GaussRational, MPoly, XPoly};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("config: {0}")]
    Invalid(String),
    #[error("config parse error: {0}")]
    Parse(String),
}

/// A curve in `P^n`: float coefficients as `[re, im]` pairs ascending, or
/// exact rational coefficients as `[num, den]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components_exact: Option<Vec<Vec<[i64; 2]>>>,
}

impl CurveSpec {
    pub fn build(&self) -> Result<ProjectiveCurve, ConfigError> {
        let curve = if let Some(exact) = &self.components_exact {
            let comps: Result<Vec<XPoly>, ConfigError> = exact
                .iter()
                .map(|coeffs| {
                    coeffs
                        .iter()
                        .map(|&[num, den]| {
                            if den == 0 {
                                Err(ConfigError::Invalid("zero denominator".into()))
                            } else {
                                Ok(GaussRational::from_ratio(num, den))
                            }
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .map(XPoly::new)
                })
                .collect();
            ProjectiveCurve::from_exact(comps?)
        } else if let Some(float) = &self.components {
            let comps: Vec<CPoly> = float
                .iter()
                .map(|coeffs| {
                    CPoly::new(
                        coeffs
                            .iter()
                            .map(|&[re, im]| Complex64::new(re, im))
                            .collect(),
                    )
                })
                .collect();
            ProjectiveCurve::from_float(comps)
        } else {
            return Err(ConfigError::Invalid(
                "curve needs components or components_exact".into(),
            ));
        }
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if curve.n != self.n {
            return Err(ConfigError::Invalid(format!(
                "curve declares n = {} but has {} components",
                self.n,
                curve.n + 1
            )));
        }
        Ok(curve)
    }
}

/// One homogeneous generator as a term list with exact coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    /// Rational coefficient `[num, den]`.
    pub coeff: [i64; 2],
    /// Exponents per variable `x_0 … x_n`.
    pub exps: Vec<u32>,
}

/// A subscheme of `P^n` by homogeneous generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubschemeSpec {
    pub n: usize,
    pub generators: Vec<GeneratorSpec>,
}

impl SubschemeSpec {
    pub fn build(&self) -> Result<SubschemeOnPn, ConfigError> {
        let vars = MPoly::registry(self.n + 1);
        let gens: Result<Vec<MPoly>, ConfigError> = self
            .generators
            .iter()
            .map(|g| {
                let mut p = MPoly::zero(vars.clone());
                for t in &g.terms {
                    if t.exps.len() != self.n + 1 {
                        return Err(ConfigError::Invalid("term arity mismatch".into()));
                    }
                    if t.coeff[1] == 0 {
                        return Err(ConfigError::Invalid("zero denominator".into()));
                    }
                    let c = GaussRational::from_ratio(t.coeff[0], t.coeff[1]);
                    p = p
                        .add(&MPoly::from_terms(vars.clone(), [(t.exps.clone(), c)]))
                        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                }
                Ok(p)
            })
            .collect();
        SubschemeOnPn::new(self.n, gens?).map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}

/// Grid, sampling, and target settings for one experiment run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub experiment: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<CurveSpec>,
    /// Hyperplane targets as coefficient vectors (`[re, im]` pairs).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hyperplanes: Vec<Vec<[f64; 2]>>,
    /// Point targets as representatives.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subscheme: Option<SubschemeSpec>,
    #[serde(default = "default_r_min")]
    pub r_min: f64,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
    #[serde(default = "default_r_count")]
    pub r_count: usize,
    #[serde(default = "default_true")]
    pub r_log: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub epsilons: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of random corpus curves when none are given explicitly.
    #[serde(default = "default_corpus")]
    pub corpus_size: usize,
    /// Maximum degree of random corpus curves.
    #[serde(default = "default_degree")]
    pub corpus_degree: usize,
    /// Ambient dimension of random corpora.
    #[serde(default = "default_ambient")]
    pub ambient: usize,
}

fn default_r_min() -> f64 {
    2.0
}
fn default_r_max() -> f64 {
    200.0
}
fn default_r_count() -> usize {
    20
}
fn default_true() -> bool {
    true
}
fn default_samples() -> u64 {
    100_000
}
fn default_corpus() -> usize {
    10
}
fn default_degree() -> usize {
    4
}
fn default_ambient() -> usize {
    2
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields defaulted")
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn r_grid(&self) -> Result<Vec<f64>, ConfigError> {
        if !(self.r_min > 0.0 && self.r_max > self.r_min && self.r_count >= 2) {
            return Err(ConfigError::Invalid(
                "r grid must be positive, increasing, with at least two points".into(),
            ));
        }
        Ok(if self.r_log {
            crate::nevanlinna::log_grid(self.r_min, self.r_max, self.r_count)
        } else {
            crate::nevanlinna::linear_grid(self.r_min, self.r_max, self.r_count)
        })
    }

    pub fn require_seed(&self) -> Result<u64, ConfigError> {
        self.seed.ok_or_else(|| {
            ConfigError::Invalid("stochastic experiment requires an explicit seed".into())
        })
    }

    /// Compact canonical echo for provenance lines.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).unwrap_or_else(|_| "{}".into())
    }

    pub fn hyperplane_normals(&self) -> Vec<Vec<Complex64>> {
        self.hyperplanes
            .iter()
            .map(|h| h.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect()
    }

    pub fn point_representatives(&self) -> Vec<Vec<Complex64>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect()
    }
}
