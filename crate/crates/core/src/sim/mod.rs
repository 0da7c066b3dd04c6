//! Deterministic 2D world: bicycle-model vehicles, axis-aligned walls,
//! raycast range sensing, collision detection with counterfactual
//! responsibility attribution, scripted opponents, and fitness evaluation
//! with whole-simulation reset.

pub mod collision;
pub mod environment;
pub mod geometry;
pub mod responsibility;
pub mod scenario;
pub mod sensor;
pub mod spin;
pub mod strategy;
pub mod vehicle;
pub mod world;

pub use collision::{detect_collisions, CollisionEvent};
pub use environment::{Environment, EnvironmentError};
pub use geometry::{Bounds, Segment, Vec2};
pub use responsibility::{attribute_responsibility, event_responsibility};
pub use scenario::{equidistant_ring_poses, OpponentSpec, Scenario, ScenarioError};
pub use sensor::{sense, RangefinderConfig, SensorError};
pub use spin::{detect_spinning, SpinConfig, SpinTracker};
pub use strategy::{strategy_step, StrategySpec};
pub use vehicle::{step_vehicle, VehicleState};
pub use world::{
    evaluate_chromosome, randomized_headings, Controller, EvalError, EvaluationResult,
    Termination, TraceRow, World,
};
