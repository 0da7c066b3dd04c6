//! Generational genetic algorithm over weight chromosomes.
//!
//! Tournament selection, single-point crossover with a normally distributed
//! site fraction, independent per-gene Gaussian mutation, and full
//! replacement of parents by children (no elitism). Fitness evaluation fans
//! out to parallel workers; every evaluation receives a seed derived from
//! (run seed, generation, individual index), so histories are identical
//! regardless of worker count.

use crate::neuro::{Chromosome, Topology};
use crate::seeding;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use thiserror::Error;

// Seed-derivation streams.
const INIT_STREAM: u64 = 0;
const BREED_STREAM: u64 = 1;
const EVAL_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct GAConfig {
    pub population_size: usize,
    pub mutation_probability: f64,
    pub crossover_probability: f64,
    /// Mean of the crossover-site fraction of chromosome length.
    pub crossover_site_mean: f64,
    pub crossover_site_stddev: f64,
    pub tournament_size: usize,
    pub init_weight_low: f64,
    pub init_weight_high: f64,
    pub mutation_sigma: f64,
}

impl Default for GAConfig {
    fn default() -> Self {
        Self {
            population_size: 200,
            mutation_probability: 0.1,
            crossover_probability: 1.0,
            crossover_site_mean: 0.95,
            crossover_site_stddev: 0.05,
            tournament_size: 10,
            init_weight_low: -1.0,
            init_weight_high: 1.0,
            mutation_sigma: 0.3,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GAConfigError {
    #[error("population_size must be even, got {0}")]
    OddPopulation(usize),
    #[error("population_size {population} must be at least twice tournament_size {tournament}")]
    PopulationTooSmall { population: usize, tournament: usize },
    #[error("tournament_size must be at least 1")]
    ZeroTournament,
    #[error("{name} must lie in [0, 1], got {value}")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },
    #[error("crossover_site_stddev must be positive, got {0}")]
    NonPositiveSiteStddev(f64),
    #[error("init weight range is inverted: [{low}, {high}]")]
    InvertedInitRange { low: f64, high: f64 },
    #[error("mutation_sigma must be nonnegative and finite, got {0}")]
    BadMutationSigma(f64),
}

impl GAConfig {
    pub fn validate(&self) -> Result<(), GAConfigError> {
        if self.population_size % 2 != 0 {
            return Err(GAConfigError::OddPopulation(self.population_size));
        }
        if self.tournament_size == 0 {
            return Err(GAConfigError::ZeroTournament);
        }
        if self.population_size < 2 * self.tournament_size {
            return Err(GAConfigError::PopulationTooSmall {
                population: self.population_size,
                tournament: self.tournament_size,
            });
        }
        for (name, value) in [
            ("mutation_probability", self.mutation_probability),
            ("crossover_probability", self.crossover_probability),
        ] {
            if !(0.0..=1.0).contains(&value) || !value.is_finite() {
                return Err(GAConfigError::ProbabilityOutOfRange { name, value });
            }
        }
        if !(self.crossover_site_stddev > 0.0) || !self.crossover_site_stddev.is_finite() {
            return Err(GAConfigError::NonPositiveSiteStddev(self.crossover_site_stddev));
        }
        if self.init_weight_low > self.init_weight_high {
            return Err(GAConfigError::InvertedInitRange {
                low: self.init_weight_low,
                high: self.init_weight_high,
            });
        }
        if !(self.mutation_sigma >= 0.0) || !self.mutation_sigma.is_finite() {
            return Err(GAConfigError::BadMutationSigma(self.mutation_sigma));
        }
        Ok(())
    }
}

/// A chromosome together with its evaluated fitness (survival time steps).
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub fitness: f64,
}

/// Per-generation summary plus the chromosome that produced the best fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_index: usize,
    /// Seed the best individual's evaluation received; re-evaluating the
    /// chromosome with it reproduces `best_fitness` exactly.
    pub best_eval_seed: u64,
    pub best_chromosome: Chromosome,
}

/// Best individual seen across the whole run, kept for deployment.
#[derive(Debug, Clone, PartialEq)]
pub struct BestEver {
    pub chromosome: Chromosome,
    pub fitness: f64,
    pub generation: usize,
    pub eval_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionHistory {
    pub generations: Vec<GenerationRecord>,
    pub best_ever: BestEver,
    /// Population left after the last evaluated generation (the "most
    /// evolved generation"), before any further breeding.
    pub final_population: Vec<Individual>,
}

/// Evaluation context handed to fitness functions: the derived seed makes
/// seeded world construction reproducible per (generation, index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalContext {
    pub generation: usize,
    pub index: usize,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq)]
pub enum EvolveError {
    #[error(transparent)]
    Config(#[from] GAConfigError),
    #[error("generations must be at least 1")]
    ZeroGenerations,
    #[error("initial population has {actual} chromosomes, config wants {expected}")]
    InitialPopulationSize { expected: usize, actual: usize },
    #[error(
        "fitness must be nonnegative and finite, got {value} at generation {generation}, index {index}"
    )]
    InvalidFitness {
        generation: usize,
        index: usize,
        value: f64,
    },
    #[error("chromosome length mismatch: {0}")]
    Crossover(#[from] CrossoverError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrossoverError {
    #[error("parents differ in length: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("chromosomes of length {0} cannot cross over (need at least 2 genes)")]
    TooShort(usize),
}

/// Draws `population_size` chromosomes with genes i.i.d. uniform over the
/// configured init range. Deterministic given the seed.
pub fn initialize_population(
    config: &GAConfig,
    topology: &Topology,
    seed: u64,
) -> Vec<Chromosome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seeding::derive(seed, &[INIT_STREAM]));
    let length = topology.chromosome_length();
    (0..config.population_size)
        .map(|_| {
            let genes = (0..length)
                .map(|_| {
                    if config.init_weight_low == config.init_weight_high {
                        config.init_weight_low
                    } else {
                        rng.gen_range(config.init_weight_low..config.init_weight_high)
                    }
                })
                .collect();
            Chromosome::new(genes).expect("uniform draws are finite")
        })
        .collect()
}

/// Samples `tournament_size` distinct individuals uniformly without
/// replacement and returns the index of the fittest; ties go to the lowest
/// population index.
pub fn tournament_select_index(
    population: &[Individual],
    config: &GAConfig,
    rng: &mut impl Rng,
) -> usize {
    debug_assert!(!population.is_empty());
    debug_assert!(config.tournament_size <= population.len());
    let picks = sample(rng, population.len(), config.tournament_size);
    let mut best: Option<usize> = None;
    for i in picks {
        best = Some(match best {
            None => i,
            Some(b) => {
                let (fb, fi) = (population[b].fitness, population[i].fitness);
                if fi > fb || (fi == fb && i < b) {
                    i
                } else {
                    b
                }
            }
        });
    }
    best.expect("tournament_size >= 1")
}

pub fn tournament_select<'a>(
    population: &'a [Individual],
    config: &GAConfig,
    rng: &mut impl Rng,
) -> &'a Individual {
    &population[tournament_select_index(population, config, rng)]
}

/// Maps a site fraction to a splice index: `round(f * len)` clamped to
/// `[1, len - 1]`, so every crossover exchanges and preserves at least one
/// gene.
pub(crate) fn crossover_site(fraction: f64, len: usize) -> usize {
    let f = fraction.clamp(0.0, 1.0);
    ((f * len as f64).round() as usize).clamp(1, len - 1)
}

/// Single-point crossover. With probability `crossover_probability` the site
/// fraction is drawn from Normal(site_mean, site_stddev); otherwise the
/// children are copies of the parents.
pub fn crossover(
    parent_a: &Chromosome,
    parent_b: &Chromosome,
    config: &GAConfig,
    rng: &mut impl Rng,
) -> Result<(Chromosome, Chromosome), CrossoverError> {
    if parent_a.len() != parent_b.len() {
        return Err(CrossoverError::LengthMismatch {
            a: parent_a.len(),
            b: parent_b.len(),
        });
    }
    if parent_a.len() < 2 {
        return Err(CrossoverError::TooShort(parent_a.len()));
    }
    if rng.gen::<f64>() >= config.crossover_probability {
        return Ok((parent_a.clone(), parent_b.clone()));
    }
    let site_distribution = Normal::new(config.crossover_site_mean, config.crossover_site_stddev)
        .expect("validated stddev");
    let k = crossover_site(site_distribution.sample(rng), parent_a.len());
    let (a, b) = (parent_a.genes(), parent_b.genes());
    let child1 = a[..k].iter().chain(&b[k..]).copied().collect();
    let child2 = b[..k].iter().chain(&a[k..]).copied().collect();
    Ok((
        Chromosome::new(child1).expect("splice of finite genes"),
        Chromosome::new(child2).expect("splice of finite genes"),
    ))
}

/// Adds Normal(0, mutation_sigma) noise to each gene independently with
/// probability `mutation_probability`.
pub fn mutate(chromosome: &Chromosome, config: &GAConfig, rng: &mut impl Rng) -> Chromosome {
    let noise = Normal::new(0.0, config.mutation_sigma).expect("validated sigma");
    let genes = chromosome
        .genes()
        .iter()
        .map(|&g| {
            if rng.gen::<f64>() < config.mutation_probability {
                g + noise.sample(rng)
            } else {
                g
            }
        })
        .collect();
    Chromosome::new(genes).expect("finite noise on finite genes")
}

/// Breeds a full replacement population: repeatedly select two parents by
/// tournament, cross them over, mutate both children. No parent survives.
pub fn next_generation(
    population: &[Individual],
    config: &GAConfig,
    rng: &mut impl Rng,
) -> Result<Vec<Chromosome>, CrossoverError> {
    let mut children = Vec::with_capacity(config.population_size);
    while children.len() < config.population_size {
        let a = tournament_select(population, config, rng);
        let b = tournament_select(population, config, rng);
        let (c1, c2) = crossover(&a.chromosome, &b.chromosome, config, rng)?;
        children.push(mutate(&c1, config, rng));
        if children.len() < config.population_size {
            children.push(mutate(&c2, config, rng));
        }
    }
    Ok(children)
}

/// Optional hooks for [`evolve_with`].
#[derive(Default)]
pub struct RunOptions<'a> {
    /// Start from this population instead of a fresh uniform draw.
    pub initial: Option<Vec<Chromosome>>,
    /// Checked after each recorded generation; `true` ends the run early.
    pub early_stop: Option<&'a (dyn Fn(&GenerationRecord) -> bool + Sync)>,
    /// Called once per recorded generation (progress reporting).
    pub on_generation: Option<&'a (dyn Fn(&GenerationRecord) + Sync)>,
}

/// Runs the full loop: initialize, then repeat {evaluate all, record, breed}.
///
/// Deterministic given (seed, config, topology) and a deterministic fitness
/// function; the history holds one record per evaluated generation.
pub fn evolve<F>(
    fitness: F,
    config: &GAConfig,
    topology: &Topology,
    generations: usize,
    seed: u64,
) -> Result<EvolutionHistory, EvolveError>
where
    F: Fn(&Chromosome, EvalContext) -> f64 + Sync,
{
    evolve_with(fitness, config, topology, generations, seed, RunOptions::default())
}

pub fn evolve_with<F>(
    fitness: F,
    config: &GAConfig,
    topology: &Topology,
    generations: usize,
    seed: u64,
    options: RunOptions<'_>,
) -> Result<EvolutionHistory, EvolveError>
where
    F: Fn(&Chromosome, EvalContext) -> f64 + Sync,
{
    config.validate()?;
    if generations == 0 {
        return Err(EvolveError::ZeroGenerations);
    }
    let mut population = match options.initial {
        Some(initial) => {
            if initial.len() != config.population_size {
                return Err(EvolveError::InitialPopulationSize {
                    expected: config.population_size,
                    actual: initial.len(),
                });
            }
            initial
        }
        None => initialize_population(config, topology, seed),
    };

    let mut history = Vec::with_capacity(generations);
    let mut best_ever: Option<BestEver> = None;
    let mut evaluated: Vec<Individual> = Vec::new();

    for generation in 0..generations {
        let contexts: Vec<EvalContext> = (0..population.len())
            .map(|index| EvalContext {
                generation,
                index,
                seed: seeding::derive(seed, &[EVAL_STREAM, generation as u64, index as u64]),
            })
            .collect();
        let fitnesses: Vec<f64> = population
            .par_iter()
            .zip(contexts.par_iter())
            .map(|(chromosome, ctx)| fitness(chromosome, *ctx))
            .collect();
        for (index, &value) in fitnesses.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(EvolveError::InvalidFitness {
                    generation,
                    index,
                    value,
                });
            }
        }

        evaluated = population
            .iter()
            .zip(&fitnesses)
            .map(|(chromosome, &fitness)| Individual {
                chromosome: chromosome.clone(),
                fitness,
            })
            .collect();

        let mut best_index = 0;
        for (i, &f) in fitnesses.iter().enumerate() {
            if f > fitnesses[best_index] {
                best_index = i;
            }
        }
        let mean_fitness = fitnesses.iter().sum::<f64>() / fitnesses.len() as f64;
        let record = GenerationRecord {
            generation,
            best_fitness: fitnesses[best_index],
            mean_fitness,
            best_index,
            best_eval_seed: contexts[best_index].seed,
            best_chromosome: population[best_index].clone(),
        };
        let improves = best_ever
            .as_ref()
            .map_or(true, |b| record.best_fitness > b.fitness);
        if improves {
            best_ever = Some(BestEver {
                chromosome: record.best_chromosome.clone(),
                fitness: record.best_fitness,
                generation,
                eval_seed: record.best_eval_seed,
            });
        }
        if let Some(hook) = options.on_generation {
            hook(&record);
        }
        let stop = options.early_stop.map_or(false, |check| check(&record));
        history.push(record);
        if stop {
            break;
        }

        if generation + 1 < generations {
            let mut breed_rng = ChaCha8Rng::seed_from_u64(seeding::derive(
                seed,
                &[BREED_STREAM, generation as u64],
            ));
            population = next_generation(&evaluated, config, &mut breed_rng)?;
        }
    }

    Ok(EvolutionHistory {
        generations: history,
        best_ever: best_ever.expect("at least one generation"),
        final_population: evaluated,
    })
}
