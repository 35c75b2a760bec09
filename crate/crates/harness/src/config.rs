//! Experiment configuration files.

use std::path::{Path, PathBuf};

use mozeno_core::{MultiZenoConfig, Tenths};
use mozeno_dae::{DaeParams, StrategyWeights};
use mozeno_moea::{IbeaParams, IndicatorKind, MoeaParams, Scheme};
use mozeno_planner::PlannerBudget;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// An inline instance or the path of an instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceSpec {
    Inline(MultiZenoConfig),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MoeaSettings {
    pub population_size: usize,
    pub archive_size: Option<usize>,
    pub kappa: f64,
    pub reference: [f64; 2],
}

impl Default for MoeaSettings {
    fn default() -> Self {
        let p = MoeaParams::default();
        MoeaSettings {
            population_size: p.population_size,
            archive_size: p.archive_size,
            kappa: p.kappa,
            reference: p.reference,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DaeSettings {
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    /// addState, delState, addAtom, delAtom.
    pub mutation_weights: [f64; 4],
    /// Node expansions allowed per planner call.
    pub planner_budget: usize,
    pub penalty_base: Option<Tenths>,
}

impl Default for DaeSettings {
    fn default() -> Self {
        let p = DaeParams::default();
        DaeSettings {
            crossover_probability: p.crossover_probability,
            mutation_probability: p.mutation_probability,
            mutation_weights: p.mutation_weights,
            planner_budget: p.budget.max_expanded(),
            penalty_base: p.penalty_base,
        }
    }
}

/// Stop bounds; a run ends at the first generation boundary past either.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StopCriterion {
    #[serde(default)]
    pub max_seconds: Option<f64>,
    #[serde(default)]
    pub max_evaluations: Option<u64>,
}

impl Default for StopCriterion {
    fn default() -> Self {
        StopCriterion { max_seconds: None, max_evaluations: Some(20_000) }
    }
}

impl StopCriterion {
    /// Reported times are real only under a time bound; otherwise they are
    /// zero so that outputs depend on the seed alone.
    pub fn records_time(&self) -> bool {
        self.max_seconds.is_some()
    }
}

fn default_scheme() -> Scheme {
    Scheme::Ibea(IndicatorKind::HypDiff)
}

fn default_weights() -> [f64; 2] {
    [1.0, 1.0]
}

fn default_runs() -> usize {
    30
}

fn default_seed() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    #[serde(default)]
    pub moea: MoeaSettings,
    #[serde(default)]
    pub dae: DaeSettings,
    /// Roulette weights of the makespan and secondary planner objectives.
    #[serde(default = "default_weights")]
    pub strategy_weights: [f64; 2],
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub stop: StopCriterion,
    #[serde(default = "default_seed")]
    pub base_seed: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults around an inline instance.
    pub fn new(instance: MultiZenoConfig) -> Self {
        ExperimentConfig {
            instance: InstanceSpec::Inline(instance),
            scheme: default_scheme(),
            moea: MoeaSettings::default(),
            dae: DaeSettings::default(),
            strategy_weights: default_weights(),
            runs: default_runs(),
            stop: StopCriterion::default(),
            base_seed: default_seed(),
            output_dir: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| HarnessError::Config(format!("line {} column {}: {e}", e.line(), e.column())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn instance(&self) -> Result<MultiZenoConfig, HarnessError> {
        match &self.instance {
            InstanceSpec::Inline(cfg) => {
                cfg.validate()?;
                Ok(cfg.clone())
            }
            InstanceSpec::File(path) => {
                MultiZenoConfig::load(path).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
            }
        }
    }

    pub fn moea_params(&self) -> MoeaParams {
        MoeaParams {
            scheme: self.scheme,
            population_size: self.moea.population_size,
            archive_size: self.moea.archive_size,
            kappa: self.moea.kappa,
            reference: self.moea.reference,
        }
    }

    pub fn ibea_params(&self) -> IbeaParams {
        self.moea_params().ibea()
    }

    pub fn dae_params(&self) -> Result<DaeParams, HarnessError> {
        let budget = PlannerBudget::new(self.dae.planner_budget)
            .ok_or_else(|| HarnessError::Config("planner_budget must be at least 1".into()))?;
        Ok(DaeParams {
            crossover_probability: self.dae.crossover_probability,
            mutation_probability: self.dae.mutation_probability,
            mutation_weights: self.dae.mutation_weights,
            budget,
            penalty_base: self.dae.penalty_base,
        })
    }

    pub fn weights(&self) -> Result<StrategyWeights, HarnessError> {
        StrategyWeights::new(self.strategy_weights[0], self.strategy_weights[1])
            .map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: &str| Err(HarnessError::Config(m.to_string()));
        if self.runs == 0 {
            return bad("runs must be at least 1");
        }
        match (self.stop.max_seconds, self.stop.max_evaluations) {
            (None, None) => return bad("at least one stop bound (max_seconds or max_evaluations) is required"),
            (Some(s), _) if !(s.is_finite() && s > 0.0) => return bad("max_seconds must be positive"),
            (_, Some(0)) => return bad("max_evaluations must be at least 1"),
            _ => {}
        }
        self.moea_params().validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        self.dae_params()?.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        self.weights()?;
        if let InstanceSpec::Inline(cfg) = &self.instance {
            cfg.validate()?;
        }
        Ok(())
    }
}

/// Reads and validates a configuration file. A relative instance path is
/// resolved against the directory of the configuration file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::from_json(&text).map_err(|e| match e {
        HarnessError::Config(m) => HarnessError::Config(format!("{}: {m}", path.display())),
        other => other,
    })?;
    if let InstanceSpec::File(p) = &mut cfg.instance {
        if p.is_relative() {
            if let Some(dir) = path.parent() {
                *p = dir.join(&*p);
            }
        }
    }
    Ok(cfg)
}
