//! JSON experiment configuration. Unknown keys are rejected.

use std::path::PathBuf;

use dynsamp::disc::{SequenceSpec, DEFAULT_SEPARATION};
use dynsamp::hardy::{Degree, DEFAULT_TAIL_TOLERANCE};
use dynsamp::repr::{Example, RANK_TOLERANCE};
use dynsamp::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Carleson,
    Interpolate,
    FrameSweep,
    Represent,
    Examples,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Carleson => "carleson",
            Command::Interpolate => "interpolate",
            Command::FrameSweep => "frame-sweep",
            Command::Represent => "represent",
            Command::Examples => "examples",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case", deny_unknown_fields)]
pub enum SequenceConfig {
    Geometric {
        alpha: f64,
    },
    InversePower {
        exponent: f64,
    },
    /// Points as `[re, im]` pairs.
    Explicit {
        values: Vec<[f64; 2]>,
    },
}

impl SequenceConfig {
    pub fn spec(&self) -> SequenceSpec {
        match self {
            SequenceConfig::Geometric { alpha } => SequenceSpec::Geometric { alpha: *alpha },
            SequenceConfig::InversePower { exponent } => SequenceSpec::InversePower {
                exponent: *exponent,
            },
            SequenceConfig::Explicit { values } => SequenceSpec::Explicit(
                values
                    .iter()
                    .map(|[re, im]| Complex64::new(*re, *im))
                    .collect(),
            ),
        }
    }

    fn explicit_len(&self) -> Option<usize> {
        match self {
            SequenceConfig::Explicit { values } => Some(values.len()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeConfig {
    Fixed(usize),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleConfig {
    /// `sum_basis`, `factorial`, `fractional`, `block`, `scaled` or `orbit`.
    pub name: String,
    pub count: usize,
    pub dimension: Option<usize>,
    pub factor: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub separation: f64,
    pub rank: f64,
    pub residual: f64,
    pub tail: f64,
    pub kernel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            separation: DEFAULT_SEPARATION,
            rank: RANK_TOLERANCE,
            residual: 1e-8,
            tail: DEFAULT_TAIL_TOLERANCE,
            kernel: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    pub sequence: Option<SequenceConfig>,
    /// Number of points (`carleson`, `interpolate`, orbit families).
    #[serde(rename = "K")]
    pub k: Option<usize>,
    #[serde(rename = "K_list")]
    pub k_list: Option<Vec<usize>>,
    #[serde(rename = "N_list")]
    pub n_list: Option<Vec<usize>>,
    /// Orbit length for orbit families.
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Constant `c < 1` for the ratio test.
    pub ratio_bound: Option<f64>,
    /// `"auto"` or a fixed polynomial degree.
    pub degree: Option<DegreeConfig>,
    /// Number of random interpolation targets.
    pub targets: Option<usize>,
    pub example: Option<ExampleConfig>,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub output: OutputConfig,
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    /// SHA-256 of the normalized configuration (defaults filled in).
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&canonical);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn sequence(&self) -> Result<&SequenceConfig, CliError> {
        self.sequence
            .as_ref()
            .ok_or_else(|| missing(self.command, "sequence"))
    }

    /// `K`, defaulting to the list length for explicit sequences.
    pub fn point_count(&self) -> Result<usize, CliError> {
        match (self.k, self.sequence()?.explicit_len()) {
            (Some(k), _) => Ok(k),
            (None, Some(len)) => Ok(len),
            (None, None) => Err(missing(self.command, "K")),
        }
    }

    pub fn degree(&self) -> Result<Degree, CliError> {
        match &self.degree {
            None => Ok(Degree::Auto),
            Some(DegreeConfig::Fixed(d)) => Ok(Degree::Fixed(*d)),
            Some(DegreeConfig::Named(s)) if s == "auto" => Ok(Degree::Auto),
            Some(DegreeConfig::Named(s)) => Err(CliError::Config(format!(
                "degree must be \"auto\" or an integer, got \"{s}\""
            ))),
        }
    }

    pub fn example(&self) -> Result<&ExampleConfig, CliError> {
        self.example
            .as_ref()
            .ok_or_else(|| missing(self.command, "example"))
    }

    fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerances;
        for (name, v) in [
            ("separation", t.separation),
            ("rank", t.rank),
            ("residual", t.residual),
            ("tail", t.tail),
            ("kernel", t.kernel),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!(
                    "tolerance `{name}` must be positive, got {v}"
                )));
            }
        }
        match self.command {
            Command::Carleson | Command::Interpolate => {
                if self.point_count()? == 0 {
                    return Err(CliError::Config("K must be at least 1".into()));
                }
                self.degree()?;
            }
            Command::FrameSweep => {
                self.sequence()?;
                for (name, list) in [("K_list", &self.k_list), ("N_list", &self.n_list)] {
                    match list {
                        None => return Err(missing(self.command, name)),
                        Some(l) if l.is_empty() => {
                            return Err(CliError::Config(format!("{name} must be non-empty")))
                        }
                        Some(_) => {}
                    }
                }
                if self.k_list.as_ref().is_some_and(|l| l.contains(&0)) {
                    return Err(CliError::Config("K_list entries must be at least 1".into()));
                }
            }
            Command::Represent | Command::Examples => {
                let ex = self.example()?;
                if ex.name == "orbit" {
                    if self.command == Command::Examples {
                        return Err(CliError::Config(
                            "the orbit family is only available to `represent`".into(),
                        ));
                    }
                    self.point_count()?;
                } else {
                    Example::from_name(&ex.name, ex.factor).map_err(|e| CliError::Library {
                        source: e,
                        context: "example.name".into(),
                    })?;
                }
            }
        }
        Ok(())
    }
}

fn missing(command: Command, field: &str) -> CliError {
    CliError::Config(format!("`{}` requires `{field}`", command.name()))
}
