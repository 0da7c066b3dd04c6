//! Counterfactual responsibility attribution for collisions.
//!
//! A vehicle caused a collision if the crash would still happen when it is
//! the only vehicle that moved during the collision time step.

use super::collision::CollisionEvent;
use super::vehicle::VehicleState;
use std::collections::BTreeSet;

/// Participants of `event` that are responsible for it.
///
/// For a vehicle-vehicle event each participant is replayed alone: it moves
/// from its previous to its current pose while the other stays at its
/// previous pose; the mover is responsible iff the pair still overlaps. Both
/// can be responsible (head-on), or neither (jointly caused glancing
/// contact). Wall collisions always assign the colliding vehicle.
pub fn event_responsibility(
    prev: &[VehicleState],
    curr: &[VehicleState],
    event: &CollisionEvent,
) -> Vec<usize> {
    match *event {
        CollisionEvent::VehicleWall { vehicle, .. } => vec![vehicle],
        CollisionEvent::VehicleVehicle { a, b } => {
            let mut responsible = Vec::new();
            if curr[a].body_rect().overlaps(&prev[b].body_rect()) {
                responsible.push(a);
            }
            if curr[b].body_rect().overlaps(&prev[a].body_rect()) {
                responsible.push(b);
            }
            responsible
        }
    }
}

/// Union of responsible vehicles over all events of one step.
pub fn attribute_responsibility(
    prev: &[VehicleState],
    curr: &[VehicleState],
    events: &[CollisionEvent],
) -> BTreeSet<usize> {
    let mut responsible = BTreeSet::new();
    for event in events {
        responsible.extend(event_responsibility(prev, curr, event));
    }
    responsible
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::geometry::Vec2;
    use crate::sim::vehicle::step_vehicle;

    fn vehicle(x: f64, y: f64, heading: f64, speed: f64) -> VehicleState {
        VehicleState::new(Vec2::new(x, y), heading, speed, 2.5, 4.0, 2.0).unwrap()
    }

    #[test]
    fn mover_striking_stationary_vehicle_is_solely_responsible() {
        let mover_prev = vehicle(0.0, 0.0, 0.0, 10.0);
        let target = vehicle(4.2, 0.0, 0.0, 0.0);
        let mover_curr = step_vehicle(&mover_prev, 0.0, 0.05);
        let prev = [mover_prev, target];
        let curr = [mover_curr, target];
        let event = CollisionEvent::VehicleVehicle { a: 0, b: 1 };
        assert_eq!(event_responsibility(&prev, &curr, &event), vec![0]);
    }

    #[test]
    fn head_on_collision_blames_both() {
        // 0.4 m of clearance: each vehicle's 0.5 m step closes it alone.
        let a_prev = vehicle(0.0, 0.0, 0.0, 10.0);
        let b_prev = vehicle(4.4, 0.0, std::f64::consts::PI, 10.0);
        let a_curr = step_vehicle(&a_prev, 0.0, 0.05);
        let b_curr = step_vehicle(&b_prev, 0.0, 0.05);
        let prev = [a_prev, b_prev];
        let curr = [a_curr, b_curr];
        let event = CollisionEvent::VehicleVehicle { a: 0, b: 1 };
        assert_eq!(event_responsibility(&prev, &curr, &event), vec![0, 1]);
    }

    #[test]
    fn jointly_caused_contact_blames_neither() {
        // 0.8 m of clearance: only the combined motion closes it, so each
        // frozen-partner replay avoids the crash.
        let a_prev = vehicle(0.0, 0.0, 0.0, 10.0);
        let b_prev = vehicle(4.8, 0.0, std::f64::consts::PI, 10.0);
        let a_curr = step_vehicle(&a_prev, 0.0, 0.05);
        let b_curr = step_vehicle(&b_prev, 0.0, 0.05);
        let prev = [a_prev, b_prev];
        let curr = [a_curr, b_curr];
        assert!(a_curr.body_rect().overlaps(&b_curr.body_rect()));
        let event = CollisionEvent::VehicleVehicle { a: 0, b: 1 };
        assert_eq!(event_responsibility(&prev, &curr, &event), Vec::<usize>::new());
    }

    #[test]
    fn wall_collision_blames_the_vehicle() {
        let prev = [vehicle(0.0, 0.0, 0.0, 10.0)];
        let curr = [step_vehicle(&prev[0], 0.0, 0.05)];
        let event = CollisionEvent::VehicleWall { vehicle: 0, wall: 3 };
        assert_eq!(event_responsibility(&prev, &curr, &event), vec![0]);
        assert_eq!(
            attribute_responsibility(&prev, &curr, &[event]),
            BTreeSet::from([0])
        );
    }
}
