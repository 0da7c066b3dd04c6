//! Minimal 2D vector/segment/oriented-rectangle geometry used by the world.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// 2D cross product (z component of the 3D cross).
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn length(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).length()
    }

    /// Left-hand perpendicular.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Normalizes an angle into `(-pi, pi]`.
pub fn normalize_angle(angle: f64) -> f64 {
    let wrapped = (angle + PI).rem_euclid(2.0 * PI) - PI;
    if wrapped == -PI {
        PI
    } else {
        wrapped
    }
}

/// Signed smallest rotation taking `from` to `to`, in `(-pi, pi]`.
pub fn angle_difference(to: f64, from: f64) -> f64 {
    normalize_angle(to - from)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Vec2,
    pub b: Vec2,
}

impl Segment {
    pub const fn new(a: Vec2, b: Vec2) -> Self {
        Self { a, b }
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.a.x == self.b.x || self.a.y == self.b.y
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn distance_to_point(&self, p: Vec2) -> f64 {
        let d = self.b - self.a;
        let len_sq = d.dot(d);
        if len_sq == 0.0 {
            return self.a.distance(p);
        }
        let t = ((p - self.a).dot(d) / len_sq).clamp(0.0, 1.0);
        (self.a + d * t).distance(p)
    }

    /// Exact segment-segment intersection test (touching counts).
    pub fn intersects(&self, other: &Segment) -> bool {
        let d1 = self.b - self.a;
        let d2 = other.b - other.a;
        let o1 = d1.cross(other.a - self.a);
        let o2 = d1.cross(other.b - self.a);
        let o3 = d2.cross(self.a - other.a);
        let o4 = d2.cross(self.b - other.a);
        if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
            && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
        {
            return true;
        }
        // Collinear / endpoint-touching cases.
        let on = |p: Vec2, s: &Segment| -> bool {
            (s.b - s.a).cross(p - s.a) == 0.0
                && p.x >= s.a.x.min(s.b.x)
                && p.x <= s.a.x.max(s.b.x)
                && p.y >= s.a.y.min(s.b.y)
                && p.y <= s.a.y.max(s.b.y)
        };
        on(other.a, self) || on(other.b, self) || on(self.a, other) || on(self.b, other)
    }
}

const PARALLEL_EPS: f64 = 1e-12;

/// Distance along a unit-direction ray from `origin` to the nearest point of
/// `segment`, or `None` when the ray misses it.
pub fn ray_segment_distance(origin: Vec2, direction: Vec2, segment: &Segment) -> Option<f64> {
    let s = segment.b - segment.a;
    let to_a = segment.a - origin;
    let denom = direction.cross(s);
    if denom.abs() < PARALLEL_EPS {
        // Parallel. Hit only if collinear; then the nearest endpoint ahead.
        if direction.cross(to_a).abs() > PARALLEL_EPS {
            return None;
        }
        let t_a = to_a.dot(direction);
        let t_b = (segment.b - origin).dot(direction);
        let (lo, hi) = (t_a.min(t_b), t_a.max(t_b));
        if hi < 0.0 {
            None
        } else {
            Some(lo.max(0.0))
        }
    } else {
        let t = to_a.cross(s) / denom;
        let u = to_a.cross(direction) / denom;
        if t >= 0.0 && (0.0..=1.0).contains(&u) {
            Some(t)
        } else {
            None
        }
    }
}

/// Axis-aligned rectangle given by two corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Vec2,
    pub max: Vec2,
}

impl Bounds {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self { min, max }
    }

    pub fn contains_point(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_segment(&self, s: &Segment) -> bool {
        self.contains_point(s.a) && self.contains_point(s.b)
    }
}

/// Oriented rectangle: a vehicle body footprint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedRect {
    pub center: Vec2,
    pub half_length: f64,
    pub half_width: f64,
    pub heading: f64,
}

impl OrientedRect {
    pub fn new(center: Vec2, length: f64, width: f64, heading: f64) -> Self {
        Self {
            center,
            half_length: length / 2.0,
            half_width: width / 2.0,
            heading,
        }
    }

    /// Long axis (heading direction) and short axis.
    pub fn axes(&self) -> (Vec2, Vec2) {
        let long = Vec2::from_angle(self.heading);
        (long, long.perp())
    }

    pub fn corners(&self) -> [Vec2; 4] {
        let (long, short) = self.axes();
        let l = long * self.half_length;
        let w = short * self.half_width;
        [
            self.center + l + w,
            self.center + l - w,
            self.center - l - w,
            self.center - l + w,
        ]
    }

    pub fn edges(&self) -> [Segment; 4] {
        let c = self.corners();
        [
            Segment::new(c[0], c[1]),
            Segment::new(c[1], c[2]),
            Segment::new(c[2], c[3]),
            Segment::new(c[3], c[0]),
        ]
    }

    fn project(&self, axis: Vec2) -> (f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for corner in self.corners() {
            let p = corner.dot(axis);
            min = min.min(p);
            max = max.max(p);
        }
        (min, max)
    }

    /// Separating-axis overlap test over both rectangles' axes.
    pub fn overlaps(&self, other: &OrientedRect) -> bool {
        let (a1, a2) = self.axes();
        let (b1, b2) = other.axes();
        for axis in [a1, a2, b1, b2] {
            let (min_a, max_a) = self.project(axis);
            let (min_b, max_b) = other.project(axis);
            if max_a < min_b || max_b < min_a {
                return false;
            }
        }
        true
    }

    /// Maps a world point into the rectangle frame (long axis = x).
    fn to_local(&self, p: Vec2) -> Vec2 {
        let d = p - self.center;
        let (long, short) = self.axes();
        Vec2::new(d.dot(long), d.dot(short))
    }

    pub fn contains_point(&self, p: Vec2) -> bool {
        let local = self.to_local(p);
        local.x.abs() <= self.half_length && local.y.abs() <= self.half_width
    }

    /// True when the segment crosses or lies inside the rectangle.
    ///
    /// Liang-Barsky clip of the segment against the local-frame box.
    pub fn intersects_segment(&self, segment: &Segment) -> bool {
        let a = self.to_local(segment.a);
        let b = self.to_local(segment.b);
        let d = b - a;
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        for (start, delta, extent) in [
            (a.x, d.x, self.half_length),
            (a.y, d.y, self.half_width),
        ] {
            if delta == 0.0 {
                if start.abs() > extent {
                    return false;
                }
                continue;
            }
            let mut near = (-extent - start) / delta;
            let mut far = (extent - start) / delta;
            if near > far {
                std::mem::swap(&mut near, &mut far);
            }
            t0 = t0.max(near);
            t1 = t1.min(far);
            if t0 > t1 {
                return false;
            }
        }
        true
    }
}
