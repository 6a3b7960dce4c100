use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A grid point or a displacement vector. Arithmetic panics on `i64` overflow
/// instead of wrapping.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

pub type Vector = Point;

pub const ORIGIN: Point = Point { x: 0, y: 0 };

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_add(self, o: Point) -> Option<Point> {
        Some(Point::new(self.x.checked_add(o.x)?, self.y.checked_add(o.y)?))
    }

    pub fn checked_sub(self, o: Point) -> Option<Point> {
        Some(Point::new(self.x.checked_sub(o.x)?, self.y.checked_sub(o.y)?))
    }

    /// Dot product, widened so that it cannot overflow for any pair of `i64` points.
    pub fn dot(self, o: Point) -> i128 {
        self.x as i128 * o.x as i128 + self.y as i128 * o.y as i128
    }

    /// z-component of the cross product; positive when `o` is counter-clockwise of `self`.
    pub fn cross(self, o: Point) -> i128 {
        self.x as i128 * o.y as i128 - self.y as i128 * o.x as i128
    }

    /// Quarter turn counter-clockwise.
    pub fn rot_ccw(self) -> Point {
        Point::new(-self.y, self.x)
    }

    /// Quarter turn clockwise.
    pub fn rot_cw(self) -> Point {
        Point::new(self.y, -self.x)
    }

    pub fn l1(self) -> i64 {
        self.x.abs() + self.y.abs()
    }

    pub fn l1_dist(self, o: Point) -> i64 {
        (self - o).l1()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        self.checked_add(o).expect("coordinate overflow")
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        self.checked_sub(o).expect("coordinate overflow")
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(
            self.x.checked_neg().expect("coordinate overflow"),
            self.y.checked_neg().expect("coordinate overflow"),
        )
    }
}

impl Mul<Point> for i64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        Point::new(
            self.checked_mul(p.x).expect("coordinate overflow"),
            self.checked_mul(p.y).expect("coordinate overflow"),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_invert() {
        let v = Point::new(3, -7);
        assert_eq!(v.rot_cw().rot_ccw(), v);
        assert_eq!(v.rot_ccw().dot(v), 0);
        assert_eq!(Point::new(1, 0).rot_ccw(), Point::new(0, 1));
    }

    #[test]
    fn cross_sign() {
        assert!(Point::new(1, 0).cross(Point::new(0, 1)) > 0);
        assert!(Point::new(0, 1).cross(Point::new(1, 0)) < 0);
    }

    #[test]
    #[should_panic(expected = "coordinate overflow")]
    fn overflow_is_caught() {
        let _ = Point::new(i64::MAX, 0) + Point::new(1, 0);
    }
}
