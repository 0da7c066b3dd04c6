//! Deterministic 2D vehicle simulation and neuroevolution engine.
//!
//! A fixed-topology sigmoid feedforward network maps rangefinder readings to
//! a steering angle; a generational genetic algorithm evolves the flat weight
//! chromosome against survival-time fitness in a seeded, fully reproducible
//! world of bicycle-model vehicles and axis-aligned walls.
//!
//! Module map:
//! - [`neuro`]: network topology, chromosome codec, forward pass, steering.
//! - [`evolution`]: tournament selection, single-point crossover, gene
//!   mutation, full-replacement generations.
//! - [`sim`]: vehicles, environments, raycast sensing, collision detection,
//!   responsibility attribution, scripted opponents, fitness evaluation.
//! - [`experiments`]: the experiment protocols (navigation, sensor sweep,
//!   individual avoidance, cross-strategy matrix, incremental evolution,
//!   champion/population broadcast) and their summary artifacts.
//! - [`io`]: result-file formats (CSV curves, matrices, rates, weight files,
//!   traces, track files) with atomic writes.

pub mod evolution;
pub mod experiments;
pub mod io;
pub mod neuro;
pub mod seeding;
pub mod sim;
