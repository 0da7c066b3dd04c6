//! Collision detection between vehicle body rectangles and walls.

use super::environment::Environment;
use super::vehicle::VehicleState;

/// A detected overlap at one simulation step. Vehicle indices refer to the
/// roster order passed to [`detect_collisions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CollisionEvent {
    /// Two body rectangles overlap (`a < b`).
    VehicleVehicle { a: usize, b: usize },
    /// A wall segment crosses or lies inside a body rectangle.
    VehicleWall { vehicle: usize, wall: usize },
}

impl CollisionEvent {
    pub fn involves(&self, vehicle: usize) -> bool {
        match *self {
            CollisionEvent::VehicleVehicle { a, b } => a == vehicle || b == vehicle,
            CollisionEvent::VehicleWall { vehicle: v, .. } => v == vehicle,
        }
    }
}

/// All current overlaps: every vehicle pair whose oriented rectangles pass
/// the separating-axis test, and every (vehicle, wall) pair in contact.
pub fn detect_collisions(vehicles: &[VehicleState], environment: &Environment) -> Vec<CollisionEvent> {
    let rects: Vec<_> = vehicles.iter().map(|v| v.body_rect()).collect();
    let mut events = Vec::new();
    for a in 0..rects.len() {
        for b in (a + 1)..rects.len() {
            if rects[a].overlaps(&rects[b]) {
                events.push(CollisionEvent::VehicleVehicle { a, b });
            }
        }
    }
    for (vehicle, rect) in rects.iter().enumerate() {
        for (wall, segment) in environment.walls().iter().enumerate() {
            if rect.intersects_segment(segment) {
                events.push(CollisionEvent::VehicleWall { vehicle, wall });
            }
        }
    }
    events
}
