//! Scripted movement policies for uncontrolled vehicles.
//!
//! A strategy step is a pure function of (vehicle state, step index, derived
//! seed), so opponent motion replays bit-identically.

use super::geometry::{angle_difference, Vec2};
use super::vehicle::VehicleState;
use crate::seeding;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub enum StrategySpec {
    /// Drive straight; the world reflects the heading specularly on wall
    /// contact.
    BounceStraight,
    /// Hold a fresh random steering angle for `interval_steps` at a time.
    RandomTurns {
        interval_steps: usize,
        /// Maximum magnitude of the held steering angle, radians.
        magnitude: f64,
    },
    /// Constant steering that traces a circle of the given radius.
    Circling { radius: f64, clockwise: bool },
    /// Steer proportionally toward the next waypoint of a cyclic list.
    WaypointPatrol {
        waypoints: Vec<Vec2>,
        /// Steering per radian of heading error.
        gain: f64,
        /// Distance at which a waypoint counts as reached.
        capture_radius: f64,
    },
}

/// Steering command for one opponent step, clamped to `max_steering`.
pub fn strategy_step(
    spec: &StrategySpec,
    vehicle: &VehicleState,
    step: usize,
    seed: u64,
    max_steering: f64,
) -> f64 {
    let raw = match spec {
        StrategySpec::BounceStraight => 0.0,
        StrategySpec::RandomTurns {
            interval_steps,
            magnitude,
        } => {
            let interval = (step / (*interval_steps).max(1)) as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seeding::derive(seed, &[interval]));
            rng.gen_range(-magnitude..=*magnitude)
        }
        StrategySpec::Circling { radius, clockwise } => {
            let steering = (vehicle.wheelbase / radius).atan();
            if *clockwise {
                -steering
            } else {
                steering
            }
        }
        StrategySpec::WaypointPatrol {
            waypoints,
            gain,
            capture_radius,
        } => {
            if waypoints.is_empty() {
                return 0.0;
            }
            // Nearest waypoint indexes the cycle; aim at the one after it,
            // skipping ahead while already within capture range.
            let nearest = waypoints
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    vehicle
                        .position
                        .distance(**a)
                        .partial_cmp(&vehicle.position.distance(**b))
                        .expect("finite distances")
                })
                .map(|(i, _)| i)
                .expect("nonempty waypoints");
            let mut target = (nearest + 1) % waypoints.len();
            if vehicle.position.distance(waypoints[target]) < *capture_radius {
                target = (target + 1) % waypoints.len();
            }
            let to_target = waypoints[target] - vehicle.position;
            let desired = to_target.y.atan2(to_target.x);
            gain * angle_difference(desired, vehicle.heading)
        }
    };
    raw.clamp(-max_steering, max_steering)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vehicle(x: f64, y: f64, heading: f64) -> VehicleState {
        VehicleState::new(Vec2::new(x, y), heading, 8.0, 2.5, 4.0, 2.0).unwrap()
    }

    const MAX_STEER: f64 = 0.5235987755982988; // 30 degrees

    #[test]
    fn circling_steering_inverts_turning_circle() {
        let v = vehicle(0.0, 0.0, 0.0);
        let spec = StrategySpec::Circling {
            radius: 10.0,
            clockwise: false,
        };
        let steering = strategy_step(&spec, &v, 0, 1, MAX_STEER);
        assert!((steering - (2.5f64 / 10.0).atan()).abs() < 1e-15);
        let spec = StrategySpec::Circling {
            radius: 10.0,
            clockwise: true,
        };
        assert!((strategy_step(&spec, &v, 0, 1, MAX_STEER) + (2.5f64 / 10.0).atan()).abs() < 1e-15);
    }

    #[test]
    fn random_turns_hold_between_intervals_and_replay_deterministically() {
        let v = vehicle(0.0, 0.0, 0.0);
        let spec = StrategySpec::RandomTurns {
            interval_steps: 25,
            magnitude: MAX_STEER,
        };
        let a = strategy_step(&spec, &v, 0, 7, MAX_STEER);
        let b = strategy_step(&spec, &v, 24, 7, MAX_STEER);
        let c = strategy_step(&spec, &v, 25, 7, MAX_STEER);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(c, strategy_step(&spec, &v, 25, 7, MAX_STEER));
        assert_ne!(a, strategy_step(&spec, &v, 0, 8, MAX_STEER));
        assert!(a.abs() <= MAX_STEER);
    }

    #[test]
    fn waypoint_patrol_straight_at_target_steers_zero() {
        // Nearest waypoint is behind at the origin, so the target is the next
        // one straight ahead.
        let waypoints = vec![Vec2::new(0.0, 0.0), Vec2::new(50.0, 0.0)];
        let spec = StrategySpec::WaypointPatrol {
            waypoints,
            gain: 1.0,
            capture_radius: 3.0,
        };
        let v = vehicle(10.0, 0.0, 0.0);
        assert_eq!(strategy_step(&spec, &v, 3, 9, MAX_STEER), 0.0);
    }

    #[test]
    fn waypoint_patrol_turns_toward_offset_target() {
        let waypoints = vec![Vec2::new(0.0, 0.0), Vec2::new(50.0, 20.0)];
        let spec = StrategySpec::WaypointPatrol {
            waypoints,
            gain: 1.0,
            capture_radius: 3.0,
        };
        let v = vehicle(10.0, 0.0, 0.0);
        let steering = strategy_step(&spec, &v, 0, 9, MAX_STEER);
        assert!(steering > 0.0, "should steer left toward the raised target");
    }

    #[test]
    fn bounce_straight_always_steers_zero() {
        let v = vehicle(3.0, 4.0, 1.0);
        assert_eq!(
            strategy_step(&StrategySpec::BounceStraight, &v, 11, 5, MAX_STEER),
            0.0
        );
    }
}
