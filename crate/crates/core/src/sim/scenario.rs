//! Scenario: everything that determines an evaluation given a seed.

use super::collision::detect_collisions;
use super::environment::Environment;
use super::geometry::{Bounds, Vec2};
use super::sensor::{RangefinderConfig, SensorError};
use super::spin::SpinConfig;
use super::strategy::StrategySpec;
use super::vehicle::VehicleState;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct OpponentSpec {
    pub start: VehicleState,
    pub strategy: StrategySpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub environment: Environment,
    pub ego_start: VehicleState,
    pub opponents: Vec<OpponentSpec>,
    pub sensor: RangefinderConfig,
    /// Simulation tick, seconds.
    pub dt: f64,
    pub max_steps: usize,
    pub spin: SpinConfig,
    /// Steering saturation for every controller, radians.
    pub max_steering: f64,
    /// Draw every vehicle's initial heading uniformly from the evaluation
    /// seed (positions stay fixed).
    pub randomize_headings: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("dt must be positive, got {0}")]
    BadDt(f64),
    #[error("max_steps must be at least 1")]
    ZeroMaxSteps,
    #[error("max_steering must lie in (0, pi/2), got {0}")]
    BadMaxSteering(f64),
    #[error(transparent)]
    Sensor(#[from] SensorError),
    #[error("vehicles {a} and {b} overlap at their start poses")]
    InitialOverlap { a: usize, b: usize },
    #[error("vehicle {vehicle} starts in contact with wall {wall}")]
    InitialWallContact { vehicle: usize, wall: usize },
    #[error("spin window must be at least 1 step")]
    ZeroSpinWindow,
}

impl Scenario {
    /// All start states in roster order: the ego first, then opponents.
    pub fn initial_states(&self) -> Vec<VehicleState> {
        let mut states = Vec::with_capacity(self.opponents.len() + 1);
        states.push(self.ego_start);
        states.extend(self.opponents.iter().map(|o| o.start));
        states
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.dt > 0.0) {
            return Err(ScenarioError::BadDt(self.dt));
        }
        if self.max_steps == 0 {
            return Err(ScenarioError::ZeroMaxSteps);
        }
        if !(self.max_steering > 0.0 && self.max_steering < std::f64::consts::FRAC_PI_2) {
            return Err(ScenarioError::BadMaxSteering(self.max_steering));
        }
        if self.spin.window_steps == 0 {
            return Err(ScenarioError::ZeroSpinWindow);
        }
        self.sensor.validate()?;
        let states = self.initial_states();
        for event in detect_collisions(&states, &self.environment) {
            return Err(match event {
                super::collision::CollisionEvent::VehicleVehicle { a, b } => {
                    ScenarioError::InitialOverlap { a, b }
                }
                super::collision::CollisionEvent::VehicleWall { vehicle, wall } => {
                    ScenarioError::InitialWallContact { vehicle, wall }
                }
            });
        }
        Ok(())
    }
}

/// Evenly spaced poses along a rectangular ring inset from `bounds`, heading
/// along the perimeter (counterclockwise). Used to place vehicle rosters
/// equidistant from each other at simulation start.
pub fn equidistant_ring_poses(bounds: Bounds, inset: f64, count: usize) -> Vec<(Vec2, f64)> {
    let min = Vec2::new(bounds.min.x + inset, bounds.min.y + inset);
    let max = Vec2::new(bounds.max.x - inset, bounds.max.y - inset);
    let (w, h) = (max.x - min.x, max.y - min.y);
    assert!(w > 0.0 && h > 0.0, "inset swallows the bounds");
    let perimeter = 2.0 * (w + h);
    (0..count)
        .map(|i| {
            let mut s = perimeter * i as f64 / count as f64;
            if s < w {
                return (Vec2::new(min.x + s, min.y), 0.0);
            }
            s -= w;
            if s < h {
                return (Vec2::new(max.x, min.y + s), std::f64::consts::FRAC_PI_2);
            }
            s -= h;
            if s < w {
                return (Vec2::new(max.x - s, max.y), std::f64::consts::PI);
            }
            s -= w;
            (Vec2::new(min.x, max.y - s), -std::f64::consts::FRAC_PI_2)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vehicle(x: f64, y: f64) -> VehicleState {
        VehicleState::new(Vec2::new(x, y), 0.0, 10.0, 2.5, 4.0, 2.0).unwrap()
    }

    fn base_scenario() -> Scenario {
        Scenario {
            environment: Environment::rectangle(60.0, 40.0),
            ego_start: vehicle(30.0, 20.0),
            opponents: vec![],
            sensor: RangefinderConfig::default(),
            dt: 0.05,
            max_steps: 100,
            spin: SpinConfig::default(),
            max_steering: 30f64.to_radians(),
            randomize_headings: false,
        }
    }

    #[test]
    fn valid_scenario_passes() {
        assert_eq!(base_scenario().validate(), Ok(()));
    }

    #[test]
    fn overlapping_starts_are_rejected() {
        let mut scenario = base_scenario();
        scenario.opponents.push(OpponentSpec {
            start: vehicle(31.0, 20.0),
            strategy: StrategySpec::BounceStraight,
        });
        assert_eq!(
            scenario.validate(),
            Err(ScenarioError::InitialOverlap { a: 0, b: 1 })
        );
    }

    #[test]
    fn wall_contact_at_start_is_rejected() {
        let mut scenario = base_scenario();
        scenario.ego_start = vehicle(1.0, 20.0);
        assert!(matches!(
            scenario.validate(),
            Err(ScenarioError::InitialWallContact { vehicle: 0, .. })
        ));
    }

    #[test]
    fn ring_poses_are_equidistant_along_the_perimeter() {
        let bounds = Bounds::new(Vec2::new(0.0, 0.0), Vec2::new(70.0, 50.0));
        let poses = equidistant_ring_poses(bounds, 8.0, 9);
        assert_eq!(poses.len(), 9);
        // All poses on the inset ring.
        for (p, _) in &poses {
            let on_x = (p.x - 8.0).abs() < 1e-9 || (p.x - 62.0).abs() < 1e-9;
            let on_y = (p.y - 8.0).abs() < 1e-9 || (p.y - 42.0).abs() < 1e-9;
            assert!(on_x || on_y, "pose {p:?} off the ring");
            assert!(p.x >= 8.0 - 1e-9 && p.x <= 62.0 + 1e-9);
            assert!(p.y >= 8.0 - 1e-9 && p.y <= 42.0 + 1e-9);
        }
        // Pairwise distinct and reasonably separated.
        for i in 0..poses.len() {
            for j in (i + 1)..poses.len() {
                assert!(poses[i].0.distance(poses[j].0) > 8.0);
            }
        }
    }
}
