//! Rotating-in-place detection.
//!
//! Surviving by spinning is degenerate, so a window with a large signed
//! heading sum and almost no net displacement forces a zero fitness.

use super::geometry::angle_difference;
use super::vehicle::VehicleState;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConfig {
    /// Absolute signed heading sum over the window that counts as spinning.
    pub heading_sum_threshold: f64,
    /// Net displacement below which the heading sum is suspicious.
    pub displacement_threshold: f64,
    /// Window length in steps.
    pub window_steps: usize,
}

impl Default for SpinConfig {
    fn default() -> Self {
        Self {
            heading_sum_threshold: 2.0 * std::f64::consts::PI,
            displacement_threshold: 8.0,
            window_steps: 400,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SpinError {
    #[error("spin window needs {expected} states (window + 1), got {actual}")]
    WrongWindowLength { expected: usize, actual: usize },
}

/// Window verdict: true iff the absolute sum of signed heading increments
/// reaches the heading threshold while net displacement stays below the
/// displacement threshold. Expects exactly `window_steps + 1` states.
pub fn detect_spinning(states: &[VehicleState], config: &SpinConfig) -> Result<bool, SpinError> {
    let expected = config.window_steps + 1;
    if states.len() != expected {
        return Err(SpinError::WrongWindowLength {
            expected,
            actual: states.len(),
        });
    }
    let heading_sum: f64 = states
        .windows(2)
        .map(|pair| angle_difference(pair[1].heading, pair[0].heading))
        .sum();
    let displacement = states[0].position.distance(states[states.len() - 1].position);
    Ok(heading_sum.abs() >= config.heading_sum_threshold
        && displacement < config.displacement_threshold)
}

/// Streaming equivalent of [`detect_spinning`]: O(1) per pushed state.
#[derive(Debug, Clone)]
pub struct SpinTracker {
    config: SpinConfig,
    /// Positions of the last `window_steps + 1` states.
    positions: VecDeque<(f64, f64)>,
    /// Heading increments between consecutive retained states.
    increments: VecDeque<f64>,
    heading_sum: f64,
    last_heading: Option<f64>,
}

impl SpinTracker {
    pub fn new(config: SpinConfig) -> Self {
        Self {
            positions: VecDeque::with_capacity(config.window_steps + 1),
            increments: VecDeque::with_capacity(config.window_steps),
            heading_sum: 0.0,
            last_heading: None,
            config,
        }
    }

    /// Pushes the next state; returns true once the current window spins.
    pub fn push(&mut self, state: &VehicleState) -> bool {
        if let Some(last) = self.last_heading {
            let increment = angle_difference(state.heading, last);
            self.increments.push_back(increment);
            self.heading_sum += increment;
        }
        self.last_heading = Some(state.heading);
        self.positions.push_back((state.position.x, state.position.y));
        if self.positions.len() > self.config.window_steps + 1 {
            self.positions.pop_front();
            if let Some(old) = self.increments.pop_front() {
                self.heading_sum -= old;
            }
        }
        if self.positions.len() < self.config.window_steps + 1 {
            return false;
        }
        let (x0, y0) = self.positions[0];
        let (x1, y1) = self.positions[self.positions.len() - 1];
        let displacement = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
        self.heading_sum.abs() >= self.config.heading_sum_threshold
            && displacement < self.config.displacement_threshold
    }
}
