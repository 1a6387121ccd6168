use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use beetle_core::benchmarks::functions::{goldstein_price, michalewicz_with_steepness, sphere};
use beetle_core::benchmarks::io::read_dataset;
use beetle_core::benchmarks::rc::{
    mae_objective_with_penalty, DEFAULT_INVALID_PENALTY, RC_PARAMETER_COUNT,
};
use beetle_core::benchmarks::synth::SyntheticSpec;
use beetle_core::{
    Algorithm, BasConfig, BsasConfig, CandidateRule, RcParameters64, ScheduleState, SearchProblem,
    SignConvention, StoppingRule,
};

use crate::HarnessError;

/// Which objective an experiment optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    GoldsteinPrice,
    Michalewicz,
    Sphere,
    RcDataset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub kind: ProblemKind,
    /// Dimension for `sphere`/`michalewicz`; fixed to 2 for Goldstein-Price
    /// and 9 for RC identification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    /// Michalewicz steepness exponent m (default 10).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steepness: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bounds: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bounds: Option<Vec<f64>>,
    /// Dataset CSV for `rc-dataset`; relative paths resolve against the
    /// config file location.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<PathBuf>,
    /// Objective value reported for invalid RC parameter vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<f64>,
}

fn default_p_delta() -> f64 {
    0.2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSection {
    #[serde(default = "default_p_delta")]
    pub p_delta: f64,
    #[serde(default)]
    pub sign_convention: SignConvention,
    #[serde(default)]
    pub candidate_rule: CandidateRule,
}

impl Default for AlgorithmSection {
    fn default() -> Self {
        Self {
            p_delta: default_p_delta(),
            sign_convention: SignConvention::default(),
            candidate_rule: CandidateRule::default(),
        }
    }
}

fn default_d() -> f64 {
    1.0
}
fn default_delta() -> f64 {
    0.5
}
fn default_eta() -> f64 {
    0.995
}
fn default_floor() -> f64 {
    1e-6
}

/// Initial antenna length and step size in normalized units, plus their
/// attenuation constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSection {
    #[serde(default = "default_d")]
    pub d: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_eta")]
    pub eta_d: f64,
    #[serde(default = "default_eta")]
    pub eta_delta: f64,
    #[serde(default = "default_floor")]
    pub d_floor: f64,
    #[serde(default = "default_floor")]
    pub delta_floor: f64,
}

impl Default for ScheduleSection {
    fn default() -> Self {
        Self {
            d: default_d(),
            delta: default_delta(),
            eta_d: default_eta(),
            eta_delta: default_eta(),
            d_floor: default_floor(),
            delta_floor: default_floor(),
        }
    }
}

fn default_max_iterations() -> usize {
    2000
}
fn default_delta_criterion() -> f64 {
    1e-8
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoppingSection {
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    #[serde(default = "default_delta_criterion")]
    pub delta_criterion: f64,
}

impl Default for StoppingSection {
    fn default() -> Self {
        Self {
            max_iterations: default_max_iterations(),
            delta_criterion: default_delta_criterion(),
        }
    }
}

/// One algorithm variant to benchmark. `k` is the swarm size and only valid
/// for `bsas` (BAS is single-beetle by definition).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantSpec {
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl VariantSpec {
    pub fn bas() -> Self {
        Self {
            algorithm: Algorithm::Bas,
            k: None,
        }
    }

    pub fn bsas(k: usize) -> Self {
        Self {
            algorithm: Algorithm::Bsas,
            k: Some(k),
        }
    }

    pub fn k(&self) -> usize {
        match self.algorithm {
            Algorithm::Bas => 1,
            Algorithm::Bsas => self.k.unwrap_or(1),
        }
    }

    pub fn label(&self) -> String {
        variant_label(self.algorithm, self.k())
    }

    fn validate(&self) -> Result<(), HarnessError> {
        match self.algorithm {
            Algorithm::Bas => {
                if let Some(k) = self.k {
                    if k != 1 {
                        return Err(HarnessError::Config(format!(
                            "bas is single-beetle; k = {k} is not valid"
                        )));
                    }
                }
            }
            Algorithm::Bsas => {
                if self.k == Some(0) {
                    return Err(HarnessError::Config("bsas needs k >= 1".into()));
                }
            }
        }
        Ok(())
    }
}

/// Canonical variant name used in reports and CSV grouping.
pub fn variant_label(algorithm: Algorithm, k: usize) -> String {
    match algorithm {
        Algorithm::Bas => "bas".to_string(),
        Algorithm::Bsas => format!("bsas-k{k}"),
    }
}

fn default_bin_count() -> usize {
    15
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub variants: Vec<VariantSpec>,
    pub trials: usize,
    pub base_seed: u64,
    #[serde(default = "default_bin_count")]
    pub bin_count: usize,
    /// Worker threads for trial execution; 0 uses the rayon default.
    #[serde(default)]
    pub workers: usize,
}

/// Full experiment description, loaded from a TOML file with sections
/// `problem`, `algorithm`, `schedule`, `stopping` and `experiment`. Unknown
/// keys are hard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemSection,
    #[serde(default)]
    pub algorithm: AlgorithmSection,
    #[serde(default)]
    pub schedule: ScheduleSection,
    #[serde(default)]
    pub stopping: StoppingSection,
    pub experiment: ExperimentSection,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let config: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Loads and validates a config file; relative dataset paths are
    /// resolved against the config file's directory.
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config: Self = toml::from_str(&text).map_err(|e| HarnessError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if let Some(dataset) = &config.problem.dataset {
            if dataset.is_relative() {
                if let Some(dir) = path.parent() {
                    config.problem.dataset = Some(dir.join(dataset));
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let p = &self.problem;
        match p.kind {
            ProblemKind::GoldsteinPrice => {
                if p.dimension.is_some_and(|d| d != 2) {
                    return Err(HarnessError::Config(
                        "goldstein-price is two-dimensional".into(),
                    ));
                }
                if p.dataset.is_some() {
                    return Err(HarnessError::Config(
                        "dataset only applies to rc-dataset problems".into(),
                    ));
                }
            }
            ProblemKind::Michalewicz | ProblemKind::Sphere => {
                if p.dimension.is_some_and(|d| d == 0) {
                    return Err(HarnessError::Config("dimension must be at least 1".into()));
                }
                if p.dataset.is_some() {
                    return Err(HarnessError::Config(
                        "dataset only applies to rc-dataset problems".into(),
                    ));
                }
            }
            ProblemKind::RcDataset => {
                if p.dataset.is_none() {
                    return Err(HarnessError::Config(
                        "rc-dataset problems need a dataset path".into(),
                    ));
                }
                if p.dimension.is_some_and(|d| d != RC_PARAMETER_COUNT) {
                    return Err(HarnessError::Config(format!(
                        "rc-dataset identification is {RC_PARAMETER_COUNT}-dimensional"
                    )));
                }
                if p.lower_bounds.is_none() || p.upper_bounds.is_none() {
                    return Err(HarnessError::Config(
                        "rc-dataset problems need explicit lower_bounds and upper_bounds".into(),
                    ));
                }
            }
        }
        if p.steepness.is_some() && p.kind != ProblemKind::Michalewicz {
            return Err(HarnessError::Config(
                "steepness only applies to michalewicz".into(),
            ));
        }
        if p.penalty.is_some() && p.kind != ProblemKind::RcDataset {
            return Err(HarnessError::Config(
                "penalty only applies to rc-dataset problems".into(),
            ));
        }
        match (&p.lower_bounds, &p.upper_bounds) {
            (Some(lo), Some(hi)) if lo.len() != hi.len() => {
                return Err(HarnessError::Config(format!(
                    "lower_bounds has {} entries, upper_bounds has {}",
                    lo.len(),
                    hi.len()
                )));
            }
            (Some(_), None) | (None, Some(_)) => {
                return Err(HarnessError::Config(
                    "lower_bounds and upper_bounds must be given together".into(),
                ));
            }
            _ => {}
        }

        if !(0.0..=1.0).contains(&self.algorithm.p_delta) {
            return Err(HarnessError::Config(format!(
                "p_delta must lie in [0, 1], got {}",
                self.algorithm.p_delta
            )));
        }
        // Schedule constants are range-checked by the core constructor.
        self.schedule_state()?;
        if self.schedule.delta <= self.stopping.delta_criterion {
            return Err(HarnessError::Config(format!(
                "initial delta {} must exceed delta_criterion {}",
                self.schedule.delta, self.stopping.delta_criterion
            )));
        }
        if self.stopping.max_iterations == 0 {
            return Err(HarnessError::Config("max_iterations must be positive".into()));
        }

        let e = &self.experiment;
        if e.variants.is_empty() {
            return Err(HarnessError::Config("at least one variant required".into()));
        }
        for v in &e.variants {
            v.validate()?;
        }
        if e.trials == 0 {
            return Err(HarnessError::Config("trials must be positive".into()));
        }
        if e.bin_count == 0 {
            return Err(HarnessError::Config("bin_count must be positive".into()));
        }
        Ok(())
    }

    /// Builds the search problem and an identifier for the dataset it wraps
    /// (the dataset path, when one is involved).
    pub fn build_problem(&self) -> Result<(SearchProblem<f64>, Option<String>), HarnessError> {
        let p = &self.problem;
        let explicit_bounds = p
            .lower_bounds
            .as_ref()
            .zip(p.upper_bounds.as_ref())
            .map(|(lo, hi)| (lo.clone(), hi.clone()));

        match p.kind {
            ProblemKind::GoldsteinPrice => {
                let (lo, hi) =
                    explicit_bounds.unwrap_or_else(|| (vec![-2.0, -2.0], vec![2.0, 2.0]));
                let problem =
                    SearchProblem::fallible(lo, hi, |x: &[f64]| goldstein_price(x))?;
                Ok((problem, None))
            }
            ProblemKind::Michalewicz => {
                let n = p.dimension.unwrap_or(2);
                let m = p.steepness.unwrap_or(10);
                let (lo, hi) = explicit_bounds
                    .unwrap_or_else(|| (vec![0.0; n], vec![std::f64::consts::PI; n]));
                if lo.iter().any(|&v| v < 0.0) || hi.iter().any(|&v| v > std::f64::consts::PI) {
                    return Err(HarnessError::Config(
                        "michalewicz bounds must stay inside [0, pi]".into(),
                    ));
                }
                let problem =
                    SearchProblem::fallible(lo, hi, move |x: &[f64]| michalewicz_with_steepness(x, m))?;
                Ok((problem, None))
            }
            ProblemKind::Sphere => {
                let n = p.dimension.unwrap_or(2);
                let (lo, hi) = explicit_bounds.unwrap_or_else(|| (vec![-1.0; n], vec![1.0; n]));
                let problem = SearchProblem::new(lo, hi, |x: &[f64]| sphere(x))?;
                Ok((problem, None))
            }
            ProblemKind::RcDataset => {
                let path = p.dataset.as_ref().expect("validated");
                let dataset = read_dataset::<f64>(path)?;
                let penalty = p.penalty.unwrap_or(DEFAULT_INVALID_PENALTY);
                let (lo, hi) = explicit_bounds.expect("validated");
                if lo.len() != RC_PARAMETER_COUNT {
                    return Err(HarnessError::Config(format!(
                        "rc-dataset bounds need {RC_PARAMETER_COUNT} entries, got {}",
                        lo.len()
                    )));
                }
                let id = path.display().to_string();
                let problem = SearchProblem::fallible(lo, hi, move |x: &[f64]| {
                    mae_objective_with_penalty(x, &dataset, penalty)
                })?;
                Ok((problem, Some(id)))
            }
        }
    }

    pub fn schedule_state(&self) -> Result<ScheduleState<f64>, HarnessError> {
        let s = &self.schedule;
        Ok(ScheduleState::new(
            s.d,
            s.delta,
            s.eta_d,
            s.eta_delta,
            s.d_floor,
            s.delta_floor,
        )?)
    }

    pub fn stopping_rule(&self) -> StoppingRule<f64> {
        StoppingRule::new(self.stopping.max_iterations, self.stopping.delta_criterion)
    }

    pub fn bas_config(&self) -> Result<BasConfig<f64>, HarnessError> {
        Ok(BasConfig {
            schedule: self.schedule_state()?,
            stopping: self.stopping_rule(),
            sign_convention: self.algorithm.sign_convention,
        })
    }

    pub fn bsas_config(&self, k: usize) -> Result<BsasConfig<f64>, HarnessError> {
        Ok(BsasConfig {
            k,
            p_delta: self.algorithm.p_delta,
            schedule: self.schedule_state()?,
            stopping: self.stopping_rule(),
            sign_convention: self.algorithm.sign_convention,
            candidate_rule: self.algorithm.candidate_rule,
        })
    }
}

/// Config for `beetle-opt gen-data`: the ground-truth parameters plus the
/// forcing/noise shapes, in TOML sections `truth` and `generation`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenDataConfig {
    pub truth: RcParameters64,
    pub generation: SyntheticSpec<f64>,
}

impl GenDataConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let config: Self = toml::from_str(&text).map_err(|e| HarnessError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        config.truth.validate()?;
        config.generation.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [problem]
        kind = "sphere"
        dimension = 3

        [experiment]
        variants = [{ algorithm = "bas" }, { algorithm = "bsas", k = 2 }]
        trials = 4
        base_seed = 7
    "#;

    #[test]
    fn minimal_config_fills_defaults() {
        let config = ExperimentConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!(config.schedule.delta, 0.5);
        assert_eq!(config.schedule.d, 1.0);
        assert_eq!(config.stopping.max_iterations, 2000);
        assert_eq!(config.algorithm.p_delta, 0.2);
        assert_eq!(config.experiment.bin_count, 15);
        assert_eq!(config.experiment.variants[0].label(), "bas");
        assert_eq!(config.experiment.variants[1].label(), "bsas-k2");

        let (problem, id) = config.build_problem().unwrap();
        assert_eq!(problem.dimension(), 3);
        assert_eq!(problem.lower_bounds(), &[-1.0, -1.0, -1.0]);
        assert_eq!(id, None);
    }

    #[test]
    fn unknown_keys_are_hard_errors() {
        let bad = MINIMAL.replace("base_seed = 7", "base_seed = 7\nbogus_key = 1");
        let err = ExperimentConfig::from_toml_str(&bad).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");

        let bad = MINIMAL.replace("kind = \"sphere\"", "kind = \"sphere\"\ncolour = \"red\"");
        assert!(ExperimentConfig::from_toml_str(&bad).is_err());
    }

    #[test]
    fn bas_with_k_is_rejected() {
        let bad = MINIMAL.replace("{ algorithm = \"bas\" }", "{ algorithm = \"bas\", k = 3 }");
        assert!(ExperimentConfig::from_toml_str(&bad).is_err());
    }

    #[test]
    fn rc_dataset_requires_path_and_bounds() {
        let text = r#"
            [problem]
            kind = "rc-dataset"

            [experiment]
            variants = [{ algorithm = "bas" }]
            trials = 1
            base_seed = 0
        "#;
        assert!(ExperimentConfig::from_toml_str(text).is_err());
    }

    #[test]
    fn degenerate_schedule_is_rejected() {
        let bad = MINIMAL.to_string()
            + r#"
            [schedule]
            delta = 1e-9
        "#;
        assert!(ExperimentConfig::from_toml_str(&bad).is_err());

        let bad = MINIMAL.to_string()
            + r#"
            [schedule]
            eta_d = 1.5
        "#;
        assert!(ExperimentConfig::from_toml_str(&bad).is_err());
    }

    #[test]
    fn config_round_trips_through_toml() {
        let config = ExperimentConfig::from_toml_str(MINIMAL).unwrap();
        let text = toml::to_string_pretty(&config).unwrap();
        let back = ExperimentConfig::from_toml_str(&text).unwrap();
        assert_eq!(config, back);
    }
}
