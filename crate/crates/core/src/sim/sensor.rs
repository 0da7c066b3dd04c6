//! Raycast rangefinder: equally spaced beams across a field of view,
//! symmetric about the vehicle heading.

use super::environment::Environment;
use super::geometry::{ray_segment_distance, Vec2};
use super::vehicle::VehicleState;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangefinderConfig {
    pub beam_count: usize,
    /// Radians; beams span `[-fov/2, +fov/2]` around the heading.
    pub field_of_view: f64,
    pub max_range: f64,
}

impl Default for RangefinderConfig {
    fn default() -> Self {
        Self {
            beam_count: 5,
            field_of_view: std::f64::consts::PI,
            max_range: 20.0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SensorError {
    #[error("beam_count must be at least 1")]
    NoBeams,
    #[error("field_of_view must lie in (0, 2*pi], got {0}")]
    BadFieldOfView(f64),
    #[error("max_range must be positive, got {0}")]
    BadMaxRange(f64),
}

impl RangefinderConfig {
    pub fn validate(&self) -> Result<(), SensorError> {
        if self.beam_count == 0 {
            return Err(SensorError::NoBeams);
        }
        if !(self.field_of_view > 0.0 && self.field_of_view <= 2.0 * std::f64::consts::PI) {
            return Err(SensorError::BadFieldOfView(self.field_of_view));
        }
        if !(self.max_range > 0.0) {
            return Err(SensorError::BadMaxRange(self.max_range));
        }
        Ok(())
    }

    /// Beam angles relative to the heading. A single beam points along the
    /// heading; otherwise beams are equally spaced and symmetric.
    pub fn beam_offsets(&self) -> Vec<f64> {
        if self.beam_count == 1 {
            return vec![0.0];
        }
        let half = self.field_of_view / 2.0;
        let step = self.field_of_view / (self.beam_count - 1) as f64;
        (0..self.beam_count).map(|i| -half + step * i as f64).collect()
    }
}

/// Normalized beam readings in `[0, 1]`: nearest intersection distance with
/// any wall or any other vehicle's body edges, clamped to `max_range` and
/// divided by it. A beam with no hit reads 1.
pub fn sense(
    ego: &VehicleState,
    environment: &Environment,
    others: &[VehicleState],
    config: &RangefinderConfig,
) -> Vec<f64> {
    let origin = ego.position;
    config
        .beam_offsets()
        .iter()
        .map(|offset| {
            let direction = Vec2::from_angle(ego.heading + offset);
            let mut nearest = config.max_range;
            for wall in environment.walls() {
                if let Some(t) = ray_segment_distance(origin, direction, wall) {
                    nearest = nearest.min(t);
                }
            }
            for other in others {
                for edge in other.body_rect().edges() {
                    if let Some(t) = ray_segment_distance(origin, direction, &edge) {
                        nearest = nearest.min(t);
                    }
                }
            }
            nearest / config.max_range
        })
        .collect()
}
