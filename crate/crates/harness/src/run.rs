//! The seeded generational loop of one run.

use std::time::Instant;

use mozeno_core::{
    exact_front_analytic, exact_front_oracle, MultiZenoConfig, ObjectivePoint, ParetoFront, ScheduledPlan,
};
use mozeno_dae::{crossover, init_individual, mutate, DaeParams, DaeProblem, Evaluator, Individual, StrategyWeights};
use mozeno_moea::{
    binary_tournament, environmental_selection, unary_hypervolume, AttainmentTracker, Clock, MoeaParams, ScoredPoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::ExperimentConfig;
use crate::error::HarnessError;

/// One row of the hypervolume trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint {
    pub evaluations: u64,
    pub seconds: f64,
    /// Unary hypervolume deficit of the feasible points found so far.
    pub hypervolume: f64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub seed: u64,
    pub evaluations: u64,
    pub generations: usize,
    /// Objectives and feasibility of the final population.
    pub population: Vec<(ObjectivePoint, bool)>,
    /// Non-dominated feasible points found during the run.
    pub front: Vec<ObjectivePoint>,
    /// Plan of the front point with the lowest makespan.
    pub best_plan: Option<ScheduledPlan>,
    pub trace: Vec<TracePoint>,
    pub attainment: AttainmentTracker,
    pub elapsed_seconds: f64,
}

impl RunResult {
    pub fn final_hypervolume(&self) -> f64 {
        self.trace.last().map_or(f64::NAN, |t| t.hypervolume)
    }
}

/// Exact front used as reference: the closed form when one exists, else the
/// exhaustive oracle.
pub fn reference_front(instance: &MultiZenoConfig) -> Result<ParetoFront, HarnessError> {
    match exact_front_analytic(instance) {
        Ok(front) => Ok(front),
        Err(_) => exact_front_oracle(instance)
            .map_err(|e| HarnessError::Config(format!("no exact front available for this instance: {e}"))),
    }
}

/// Non-dominated feasible points with one plan each.
#[derive(Default)]
struct Archive {
    entries: Vec<(ObjectivePoint, ScheduledPlan)>,
}

impl Archive {
    fn insert(&mut self, p: ObjectivePoint, plan: &ScheduledPlan) {
        if self.entries.iter().any(|(q, _)| q.weakly_dominates(&p)) {
            return;
        }
        self.entries.retain(|(q, _)| !p.weakly_dominates(q));
        self.entries.push((p, plan.clone()));
    }

    fn points(&self) -> Vec<ObjectivePoint> {
        self.sorted().map(|(p, _)| p).collect()
    }

    fn sorted(&self) -> impl Iterator<Item = (ObjectivePoint, &ScheduledPlan)> {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_by_key(|&i| self.entries[i].0);
        order.into_iter().map(|i| (self.entries[i].0, &self.entries[i].1))
    }
}

struct RunState<'p> {
    evaluator: Evaluator<'p>,
    archive: Archive,
    attainment: AttainmentTracker,
    trace: Vec<TracePoint>,
    evaluations: u64,
    start: Instant,
    /// Whether clock times are real or reported as zero.
    timed: bool,
}

impl RunState<'_> {
    fn seconds(&self) -> f64 {
        if self.timed {
            self.start.elapsed().as_secs_f64()
        } else {
            0.0
        }
    }

    /// Evaluates with a fresh generator seeded from the run generator.
    fn evaluate(&mut self, ind: &mut Individual, rng: &mut ChaCha8Rng) -> Result<(), HarnessError> {
        let mut eval_rng = ChaCha8Rng::seed_from_u64(rng.gen());
        let result = self.evaluator.evaluate(ind, &mut eval_rng)?;
        self.evaluations += 1;
        if let (true, Some(plan)) = (result.feasible, &result.plan) {
            self.archive.insert(result.objectives, plan);
            let clock = Clock { evaluations: self.evaluations, seconds: self.seconds() };
            self.attainment.update(&result.objectives, clock);
        }
        ind.evaluation = Some(result);
        Ok(())
    }

    fn snapshot(&mut self, exact: &ParetoFront) {
        let hypervolume = unary_hypervolume(&self.archive.points(), exact);
        self.trace.push(TracePoint { evaluations: self.evaluations, seconds: self.seconds(), hypervolume });
    }
}

/// A configuration prepared for running seeds.
pub struct Experiment {
    config: ExperimentConfig,
    problem: DaeProblem,
    exact: ParetoFront,
    moea: MoeaParams,
    dae: DaeParams,
    weights: StrategyWeights,
}

impl Experiment {
    pub fn new(config: &ExperimentConfig) -> Result<Self, HarnessError> {
        config.validate()?;
        let exact = reference_front(&config.instance()?)?;
        Self::with_front(config, exact)
    }

    /// Skips the reference-front computation.
    pub fn with_front(config: &ExperimentConfig, exact: ParetoFront) -> Result<Self, HarnessError> {
        config.validate()?;
        let problem = DaeProblem::from_config(&config.instance()?)?;
        Ok(Experiment {
            config: config.clone(),
            problem,
            exact,
            moea: config.moea_params(),
            dae: config.dae_params()?,
            weights: config.weights()?,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn task(&self) -> &mozeno_core::GroundTask {
        self.problem.task()
    }

    pub fn exact_front(&self) -> &ParetoFront {
        &self.exact
    }

    /// Runs one seed until a stop bound is reached. Stop bounds are checked
    /// after the initial population and after each generation; a snapshot
    /// is recorded at each of those points.
    pub fn run(&self, seed: u64) -> Result<RunResult, HarnessError> {
        let mu = self.moea.population_size;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = RunState {
            evaluator: Evaluator::new(&self.problem, self.weights, &self.dae),
            archive: Archive::default(),
            attainment: AttainmentTracker::new(&self.exact),
            trace: Vec::new(),
            evaluations: 0,
            start: Instant::now(),
            timed: self.config.stop.records_time(),
        };

        let mut union: Vec<Individual> = (0..mu).map(|_| init_individual(&self.problem, &mut rng)).collect();
        for ind in &mut union {
            state.evaluate(ind, &mut rng)?;
        }
        let (mut population, mut keys) = self.select(union);
        state.snapshot(&self.exact);
        let mut generations = 0;

        while !self.should_stop(&state) {
            let mut offspring = Vec::with_capacity(mu);
            for _ in 0..mu {
                let a = binary_tournament(&keys, &mut rng);
                let mut child = if rng.gen_bool(self.dae.crossover_probability) {
                    let b = binary_tournament(&keys, &mut rng);
                    crossover(&population[a], &population[b], &mut rng)
                } else {
                    population[a].clone()
                };
                if rng.gen_bool(self.dae.mutation_probability) {
                    child = mutate(&self.problem, &child, &self.dae, &mut rng).0;
                }
                state.evaluate(&mut child, &mut rng)?;
                offspring.push(child);
            }
            population.extend(offspring);
            (population, keys) = self.select(population);
            generations += 1;
            state.snapshot(&self.exact);
        }

        let mut best_plan = None;
        let mut front = Vec::new();
        for (p, plan) in state.archive.sorted() {
            if best_plan.is_none() {
                best_plan = Some(plan.clone());
            }
            front.push(p);
        }
        Ok(RunResult {
            seed,
            evaluations: state.evaluations,
            generations,
            population: population
                .iter()
                .map(|ind| {
                    let e = ind.evaluation.as_ref().expect("evaluated");
                    (e.objectives, e.feasible)
                })
                .collect(),
            front,
            best_plan,
            trace: state.trace,
            attainment: state.attainment,
            elapsed_seconds: state.start.elapsed().as_secs_f64(),
        })
    }

    fn should_stop(&self, state: &RunState) -> bool {
        let stop = &self.config.stop;
        stop.max_evaluations.is_some_and(|m| state.evaluations >= m)
            || stop.max_seconds.is_some_and(|s| state.start.elapsed().as_secs_f64() >= s)
    }

    fn select(&self, union: Vec<Individual>) -> (Vec<Individual>, Vec<(f64, f64)>) {
        let points: Vec<ScoredPoint> = union
            .iter()
            .enumerate()
            .map(|(i, ind)| {
                let e = ind.evaluation.as_ref().expect("evaluated before selection");
                ScoredPoint::new(e.objectives, e.feasible, i)
            })
            .collect();
        let sel = environmental_selection(&points, &self.moea);
        let mut slots: Vec<Option<Individual>> = union.into_iter().map(Some).collect();
        let kept = sel.survivors.iter().map(|&i| slots[i].take().expect("distinct survivors")).collect();
        (kept, sel.keys)
    }
}

/// Convenience wrapper computing the reference front and running one seed.
pub fn run_single(config: &ExperimentConfig, seed: u64) -> Result<RunResult, HarnessError> {
    Experiment::new(config)?.run(seed)
}
