//! The stepped multi-vehicle world and chromosome fitness evaluation.

use super::collision::{detect_collisions, CollisionEvent};
use super::environment::Environment;
use super::geometry::Segment;
use super::responsibility::event_responsibility;
use super::scenario::{Scenario, ScenarioError};
use super::sensor::{sense, RangefinderConfig};
use super::spin::SpinTracker;
use super::strategy::{strategy_step, StrategySpec};
use super::vehicle::{step_vehicle, VehicleState};
use crate::neuro::{steering_command, Chromosome, CodecError, FeedforwardNetwork, Topology};
use crate::seeding;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

// Per-vehicle seed streams within one evaluation seed.
const STRATEGY_STREAM: u64 = 0;
const HEADING_STREAM: u64 = 1;

#[derive(Debug, Clone)]
pub enum Controller {
    Network(FeedforwardNetwork),
    Scripted(StrategySpec),
}

/// One new contact this step, with the vehicles responsible for it.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactOnset {
    pub event: CollisionEvent,
    pub responsible: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepOutcome {
    pub onsets: Vec<ContactOnset>,
}

/// A deterministic closed world: fixed roster of vehicles, one controller
/// each, axis-aligned walls. Overlapping vehicles pass through each other;
/// contacts are reported once at onset.
pub struct World {
    environment: Environment,
    sensor: RangefinderConfig,
    dt: f64,
    max_steering: f64,
    vehicles: Vec<VehicleState>,
    controllers: Vec<Controller>,
    strategy_seeds: Vec<u64>,
    step_index: usize,
    active_pairs: HashSet<(usize, usize)>,
    active_wall_contacts: HashSet<(usize, usize)>,
}

impl World {
    /// Builds a world; `seed` drives per-vehicle strategy randomness (and
    /// nothing else). Initial overlaps are treated as already-active
    /// contacts, not new onsets.
    pub fn new(
        environment: Environment,
        sensor: RangefinderConfig,
        dt: f64,
        max_steering: f64,
        vehicles: Vec<VehicleState>,
        controllers: Vec<Controller>,
        seed: u64,
    ) -> Self {
        assert_eq!(vehicles.len(), controllers.len());
        let strategy_seeds = (0..vehicles.len())
            .map(|v| seeding::derive(seed, &[STRATEGY_STREAM, v as u64]))
            .collect();
        let mut world = Self {
            environment,
            sensor,
            dt,
            max_steering,
            vehicles,
            controllers,
            strategy_seeds,
            step_index: 0,
            active_pairs: HashSet::new(),
            active_wall_contacts: HashSet::new(),
        };
        for event in detect_collisions(&world.vehicles, &world.environment) {
            world.remember_contact(&event);
        }
        world
    }

    pub fn vehicles(&self) -> &[VehicleState] {
        &self.vehicles
    }

    pub fn step_index(&self) -> usize {
        self.step_index
    }

    pub fn initial_events(&self) -> Vec<CollisionEvent> {
        detect_collisions(&self.vehicles, &self.environment)
    }

    fn remember_contact(&mut self, event: &CollisionEvent) {
        match *event {
            CollisionEvent::VehicleVehicle { a, b } => {
                self.active_pairs.insert((a, b));
            }
            CollisionEvent::VehicleWall { vehicle, wall } => {
                self.active_wall_contacts.insert((vehicle, wall));
            }
        }
    }

    fn steering_for(&self, v: usize) -> f64 {
        match &self.controllers[v] {
            Controller::Network(network) => {
                let mut others = Vec::with_capacity(self.vehicles.len() - 1);
                others.extend(self.vehicles.iter().enumerate().filter_map(|(i, s)| {
                    if i == v {
                        None
                    } else {
                        Some(*s)
                    }
                }));
                let readings = sense(&self.vehicles[v], &self.environment, &others, &self.sensor);
                let outputs = network
                    .forward(&readings)
                    .expect("sensor arity validated against topology");
                steering_command(outputs[0], outputs[1], self.max_steering)
            }
            Controller::Scripted(spec) => strategy_step(
                spec,
                &self.vehicles[v],
                self.step_index,
                self.strategy_seeds[v],
                self.max_steering,
            ),
        }
    }

    /// Advances every vehicle one tick simultaneously, reports new contacts,
    /// and bounces scripted vehicles off walls they press into.
    pub fn advance(&mut self) -> StepOutcome {
        let controls: Vec<f64> = (0..self.vehicles.len()).map(|v| self.steering_for(v)).collect();
        let prev = self.vehicles.clone();
        for (state, steering) in self.vehicles.iter_mut().zip(&controls) {
            *state = step_vehicle(state, *steering, self.dt);
        }
        self.step_index += 1;

        let events = detect_collisions(&self.vehicles, &self.environment);
        let mut onsets = Vec::new();
        let mut pairs_now = HashSet::new();
        let mut walls_now = HashSet::new();
        for event in &events {
            let is_new = match *event {
                CollisionEvent::VehicleVehicle { a, b } => {
                    pairs_now.insert((a, b));
                    !self.active_pairs.contains(&(a, b))
                }
                CollisionEvent::VehicleWall { vehicle, wall } => {
                    walls_now.insert((vehicle, wall));
                    !self.active_wall_contacts.contains(&(vehicle, wall))
                }
            };
            if is_new {
                onsets.push(ContactOnset {
                    event: *event,
                    responsible: event_responsibility(&prev, &self.vehicles, event),
                });
            }
        }
        self.active_pairs = pairs_now;
        self.active_wall_contacts = walls_now;

        // Scripted vehicles reflect specularly off walls they are moving
        // into, so opponents stay inside the environment.
        let wall_contacts: Vec<(usize, usize)> =
            self.active_wall_contacts.iter().copied().collect();
        for (vehicle, wall) in wall_contacts {
            if matches!(self.controllers[vehicle], Controller::Scripted(_)) {
                let segment = self.environment.walls()[wall];
                let state = &mut self.vehicles[vehicle];
                *state = reflect_off_wall(state, &segment);
            }
        }

        StepOutcome { onsets }
    }

    /// Puts a vehicle back to a stored pose, clearing its contact memory so
    /// the next overlap counts as a fresh onset.
    pub fn respawn(&mut self, vehicle: usize, state: VehicleState) {
        self.vehicles[vehicle] = state;
        self.active_pairs
            .retain(|&(a, b)| a != vehicle && b != vehicle);
        self.active_wall_contacts.retain(|&(v, _)| v != vehicle);
        let events = detect_collisions(&self.vehicles, &self.environment);
        for event in events {
            if event.involves(vehicle) {
                self.remember_contact(&event);
            }
        }
    }

    /// Swaps the controller of one vehicle (population-learning worlds cycle
    /// through chromosomes mid-run).
    pub fn set_controller(&mut self, vehicle: usize, controller: Controller) {
        self.controllers[vehicle] = controller;
    }
}

/// Specular heading reflection on an axis-aligned wall, applied only when
/// the vehicle is moving toward the wall.
fn reflect_off_wall(state: &VehicleState, wall: &Segment) -> VehicleState {
    let mut next = *state;
    if wall.a.y == wall.b.y {
        // Horizontal wall: reflect the y component of motion.
        let departing = if state.position.y >= wall.a.y {
            state.heading.sin() > 0.0
        } else {
            state.heading.sin() < 0.0
        };
        if !departing {
            next = next.with_heading(-state.heading);
        }
    } else {
        // Vertical wall: reflect the x component.
        let departing = if state.position.x >= wall.a.x {
            state.heading.cos() > 0.0
        } else {
            state.heading.cos() < 0.0
        };
        if !departing {
            next = next.with_heading(std::f64::consts::PI - state.heading);
        }
    }
    next
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// First contact the ego was responsible for.
    Collision,
    /// Rotating in place; fitness forced to zero.
    SpinPenalty,
    /// Survived the full episode.
    StepCap,
}

/// One trace record: a vehicle pose after `step` completed steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub vehicle: usize,
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult {
    /// Steps survived, capped at `max_steps`; zero on spin penalty.
    pub fitness: usize,
    pub termination: Termination,
    /// Whether a collision the ego caused ended the run.
    pub responsible_collision: bool,
    pub trace: Option<Vec<TraceRow>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("sensor has {beams} beams but the network expects {inputs} inputs")]
    SensorTopologyMismatch { beams: usize, inputs: usize },
}

/// Seeded random headings for every vehicle (positions unchanged).
pub fn randomized_headings(states: &mut [VehicleState], seed: u64) {
    for (i, state) in states.iter_mut().enumerate() {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seeding::derive(seed, &[HEADING_STREAM, i as u64]));
        let heading = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        *state = state.with_heading(heading);
    }
}

/// Builds the evaluation world for a scenario: the ego drives the decoded
/// network, opponents their scripted strategies.
fn build_world(
    network: FeedforwardNetwork,
    scenario: &Scenario,
    seed: u64,
) -> World {
    let mut states = scenario.initial_states();
    if scenario.randomize_headings {
        randomized_headings(&mut states, seed);
    }
    let mut controllers = Vec::with_capacity(states.len());
    controllers.push(Controller::Network(network));
    controllers.extend(
        scenario
            .opponents
            .iter()
            .map(|o| Controller::Scripted(o.strategy.clone())),
    );
    World::new(
        scenario.environment.clone(),
        scenario.sensor,
        scenario.dt,
        scenario.max_steering,
        states,
        controllers,
        seed,
    )
}

/// Evaluates one chromosome: reset the whole world, run until the first
/// collision the ego is responsible for, a spin detection, or the step cap.
///
/// Fitness is the 1-based index of the step at which the terminating
/// collision occurs (equivalently the survived-step count including the
/// fatal one), `max_steps` at the cap, and 0 on spin penalty or a collision
/// already present at step 0. Deterministic given (chromosome, scenario,
/// seed).
pub fn evaluate_chromosome(
    chromosome: &Chromosome,
    scenario: &Scenario,
    topology: &Topology,
    seed: u64,
    record_trace: bool,
) -> Result<EvaluationResult, EvalError> {
    scenario.validate()?;
    if topology.input_size() != scenario.sensor.beam_count {
        return Err(EvalError::SensorTopologyMismatch {
            beams: scenario.sensor.beam_count,
            inputs: topology.input_size(),
        });
    }
    let network = FeedforwardNetwork::decode(chromosome, topology)?;
    let mut world = build_world(network, scenario, seed);

    let mut trace = record_trace.then(Vec::new);
    let record = |trace: &mut Option<Vec<TraceRow>>, step: usize, states: &[VehicleState]| {
        if let Some(rows) = trace {
            rows.extend(states.iter().enumerate().map(|(vehicle, s)| TraceRow {
                step,
                vehicle,
                x: s.position.x,
                y: s.position.y,
                heading: s.heading,
            }));
        }
    };
    record(&mut trace, 0, world.vehicles());

    // A collision already present at step 0 (possible only with randomized
    // headings near an obstacle) zeroes the fitness outright.
    if world.initial_events().iter().any(|e| e.involves(0)) {
        return Ok(EvaluationResult {
            fitness: 0,
            termination: Termination::Collision,
            responsible_collision: true,
            trace,
        });
    }

    let mut spin = SpinTracker::new(scenario.spin);
    spin.push(&world.vehicles()[0]);

    for step in 1..=scenario.max_steps {
        let outcome = world.advance();
        record(&mut trace, step, world.vehicles());
        let ego_responsible = outcome
            .onsets
            .iter()
            .any(|onset| onset.event.involves(0) && onset.responsible.contains(&0));
        if ego_responsible {
            return Ok(EvaluationResult {
                fitness: step,
                termination: Termination::Collision,
                responsible_collision: true,
                trace,
            });
        }
        if spin.push(&world.vehicles()[0]) {
            return Ok(EvaluationResult {
                fitness: 0,
                termination: Termination::SpinPenalty,
                responsible_collision: false,
                trace,
            });
        }
    }

    Ok(EvaluationResult {
        fitness: scenario.max_steps,
        termination: Termination::StepCap,
        responsible_collision: false,
        trace,
    })
}
