//! Bicycle-model vehicle state and its discrete update.

use super::geometry::{normalize_angle, OrientedRect, Vec2};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleState {
    pub position: Vec2,
    /// Radians, normalized to `(-pi, pi]`.
    pub heading: f64,
    /// Meters per second; fixed during a run.
    pub speed: f64,
    pub wheelbase: f64,
    pub body_length: f64,
    pub body_width: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum VehicleError {
    #[error("speed must be nonnegative, got {0}")]
    NegativeSpeed(f64),
    #[error("wheelbase must be positive, got {0}")]
    NonPositiveWheelbase(f64),
    #[error("body extents must be positive, got {length} x {width}")]
    NonPositiveBody { length: f64, width: f64 },
}

impl VehicleState {
    pub fn new(
        position: Vec2,
        heading: f64,
        speed: f64,
        wheelbase: f64,
        body_length: f64,
        body_width: f64,
    ) -> Result<Self, VehicleError> {
        if !(speed >= 0.0) {
            return Err(VehicleError::NegativeSpeed(speed));
        }
        if !(wheelbase > 0.0) {
            return Err(VehicleError::NonPositiveWheelbase(wheelbase));
        }
        if !(body_length > 0.0) || !(body_width > 0.0) {
            return Err(VehicleError::NonPositiveBody {
                length: body_length,
                width: body_width,
            });
        }
        Ok(Self {
            position,
            heading: normalize_angle(heading),
            speed,
            wheelbase,
            body_length,
            body_width,
        })
    }

    pub fn body_rect(&self) -> OrientedRect {
        OrientedRect::new(self.position, self.body_length, self.body_width, self.heading)
    }

    pub fn with_heading(mut self, heading: f64) -> Self {
        self.heading = normalize_angle(heading);
        self
    }
}

/// One discrete bicycle-model step.
///
/// Travelled distance `L = speed * dt`; heading turns by
/// `(L / wheelbase) * tan(steering)`; the position advances by `L` along the
/// mean of old and new headings (second-order accurate midpoint rule). Speed
/// never changes.
pub fn step_vehicle(state: &VehicleState, steering_angle: f64, dt: f64) -> VehicleState {
    debug_assert!(steering_angle.abs() < std::f64::consts::FRAC_PI_2);
    let travelled = state.speed * dt;
    let delta = (travelled / state.wheelbase) * steering_angle.tan();
    let new_heading = state.heading + delta;
    let mid = state.heading + delta / 2.0;
    let mut next = *state;
    next.position = state.position + Vec2::from_angle(mid) * travelled;
    next.heading = normalize_angle(new_heading);
    next
}
