//! Axis-aligned wall environments.

use super::geometry::{Bounds, Segment, Vec2};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    walls: Vec<Segment>,
    bounds: Bounds,
}

#[derive(Debug, Error, PartialEq)]
pub enum EnvironmentError {
    #[error("wall {index} is not axis-aligned: ({x1}, {y1}) -> ({x2}, {y2})")]
    NotAxisAligned {
        index: usize,
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
    },
    #[error("wall {index} has zero length")]
    ZeroLength { index: usize },
    #[error("wall {index} lies outside the declared bounds")]
    OutOfBounds { index: usize },
    #[error("bounds are inverted: min ({0}, {1}), max ({2}, {3})")]
    InvertedBounds(f64, f64, f64, f64),
}

impl Environment {
    pub fn new(walls: Vec<Segment>, bounds: Bounds) -> Result<Self, EnvironmentError> {
        if bounds.min.x > bounds.max.x || bounds.min.y > bounds.max.y {
            return Err(EnvironmentError::InvertedBounds(
                bounds.min.x,
                bounds.min.y,
                bounds.max.x,
                bounds.max.y,
            ));
        }
        for (index, wall) in walls.iter().enumerate() {
            if !wall.is_axis_aligned() {
                return Err(EnvironmentError::NotAxisAligned {
                    index,
                    x1: wall.a.x,
                    y1: wall.a.y,
                    x2: wall.b.x,
                    y2: wall.b.y,
                });
            }
            if wall.a == wall.b {
                return Err(EnvironmentError::ZeroLength { index });
            }
            if !bounds.contains_segment(wall) {
                return Err(EnvironmentError::OutOfBounds { index });
            }
        }
        Ok(Self { walls, bounds })
    }

    /// An empty unbounded arena (no walls); bounds are only advisory.
    pub fn open(bounds: Bounds) -> Self {
        Self {
            walls: Vec::new(),
            bounds,
        }
    }

    /// Four boundary walls enclosing a `width x height` rectangle with its
    /// lower-left corner at the origin.
    pub fn rectangle(width: f64, height: f64) -> Self {
        let corners = [
            Vec2::new(0.0, 0.0),
            Vec2::new(width, 0.0),
            Vec2::new(width, height),
            Vec2::new(0.0, height),
        ];
        let walls = vec![
            Segment::new(corners[0], corners[1]),
            Segment::new(corners[1], corners[2]),
            Segment::new(corners[2], corners[3]),
            Segment::new(corners[3], corners[0]),
        ];
        Self::new(walls, Bounds::new(corners[0], corners[2])).expect("rectangle is valid")
    }

    pub fn walls(&self) -> &[Segment] {
        &self.walls
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_diagonal_walls() {
        let walls = vec![Segment::new(Vec2::new(0.0, 0.0), Vec2::new(1.0, 1.0))];
        let bounds = Bounds::new(Vec2::new(0.0, 0.0), Vec2::new(2.0, 2.0));
        assert!(matches!(
            Environment::new(walls, bounds),
            Err(EnvironmentError::NotAxisAligned { index: 0, .. })
        ));
    }

    #[test]
    fn rejects_walls_outside_bounds() {
        let walls = vec![Segment::new(Vec2::new(0.0, 0.0), Vec2::new(5.0, 0.0))];
        let bounds = Bounds::new(Vec2::new(0.0, 0.0), Vec2::new(2.0, 2.0));
        assert!(matches!(
            Environment::new(walls, bounds),
            Err(EnvironmentError::OutOfBounds { index: 0 })
        ));
    }

    #[test]
    fn rectangle_builds_four_walls() {
        let env = Environment::rectangle(10.0, 6.0);
        assert_eq!(env.walls().len(), 4);
        assert_eq!(env.bounds().max, Vec2::new(10.0, 6.0));
    }
}
