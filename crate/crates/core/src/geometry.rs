//! Exact integer geometry: half-planes, L1 balls, angular order, and the
//! classification of a code by the translation vectors of its figures.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::figure::Figure;
use crate::point::{Point, Vector};

/// `true` iff `w` lies in the closed half-plane `{w : u.(w - (v + u)) <= 0}`.
pub fn half_plane_contains(u: Vector, v: Point, w: Point) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::DegenerateNormal);
    }
    Ok(hp(u, v, w))
}

#[inline]
pub(crate) fn hp(u: Vector, v: Point, w: Point) -> bool {
    // u.(w - v - u) <= 0, written without forming v + u.
    u.dot(w) - u.dot(v) - u.dot(u) <= 0
}

/// `true` iff `v` is within L1 distance `n` of `u`.
pub fn ball_contains(u: Point, n: u64, v: Point) -> bool {
    let d = (u.x as i128 - v.x as i128).abs() + (u.y as i128 - v.y as i128).abs();
    d <= n as i128
}

/// Divides a non-zero vector by the gcd of its components.
pub fn primitive_vector(v: Vector) -> Result<Vector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.x.gcd(&v.y);
    Ok(Point::new(v.x / g, v.y / g))
}

/// Orders non-zero vectors by counter-clockwise angle from `reference`, in `[0, 2pi)`.
pub fn angle_cmp(reference: Vector, a: Vector, b: Vector) -> Ordering {
    let half = |v: Vector| {
        let c = reference.cross(v);
        if c > 0 || (c == 0 && reference.dot(v) > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// The cone of translation vectors of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeGeometry {
    /// Every translation vector has positive dot product with `tau`.
    OneSided { tau: Vector },
    /// Translation vectors are integer multiples of the primitive `tau`, not all of one sign.
    TwoSidedParallel { tau: Vector },
    /// A non-trivial non-negative combination `alpha` of translation vectors vanishes.
    TwoSidedGeneral { alpha: Vec<u64> },
    /// Every translation vector is zero.
    AllZero,
}

impl CodeGeometry {
    pub fn is_one_sided(&self) -> bool {
        matches!(self, CodeGeometry::OneSided { .. })
    }
}

impl fmt::Display for CodeGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeGeometry::OneSided { tau } => write!(f, "one-sided, tau = {} {}", tau.x, tau.y),
            CodeGeometry::TwoSidedParallel { tau } => {
                write!(f, "two-sided parallel, tau = {} {}", tau.x, tau.y)
            }
            CodeGeometry::TwoSidedGeneral { alpha } => {
                write!(f, "two-sided general, alpha =")?;
                for a in alpha {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
            CodeGeometry::AllZero => write!(f, "two-sided, all translation vectors zero"),
        }
    }
}

fn lex_max(v: Vector) -> Vector {
    let n = -v;
    if (n.x, n.y) > (v.x, v.y) {
        n
    } else {
        v
    }
}

fn check_code(figs: &[Figure]) -> Result<()> {
    if figs.is_empty() {
        return Err(Error::EmptyCode);
    }
    for (i, f) in figs.iter().enumerate() {
        if f.is_empty() {
            return Err(Error::EmptyFigureInCode(i));
        }
    }
    Ok(())
}

/// Classifies a code by the translation vectors of its figures.
pub fn classify(figs: &[Figure]) -> Result<CodeGeometry> {
    check_code(figs)?;
    let deltas: Vec<Vector> = figs.iter().map(Figure::delta).collect();
    Ok(classify_deltas(&deltas))
}

/// Classification from translation vectors alone; `deltas` must be non-empty.
pub fn classify_deltas(deltas: &[Vector]) -> CodeGeometry {
    let nonzero: Vec<Vector> = deltas.iter().copied().filter(|d| !d.is_zero()).collect();
    if nonzero.is_empty() {
        return CodeGeometry::AllZero;
    }
    let d0 = primitive_vector(nonzero[0]).expect("non-zero");
    let parallel = nonzero.iter().all(|d| d0.cross(*d) == 0);
    let has_zero = nonzero.len() < deltas.len();
    if parallel {
        let same_sign = nonzero.iter().all(|d| d0.dot(*d) > 0);
        return if same_sign && !has_zero {
            CodeGeometry::OneSided { tau: d0 }
        } else {
            CodeGeometry::TwoSidedParallel { tau: lex_max(d0) }
        };
    }
    if !has_zero {
        if let Some(tau) = one_sided_normal(&nonzero) {
            debug_assert!(nonzero.iter().all(|d| tau.dot(*d) > 0));
            return CodeGeometry::OneSided { tau };
        }
    }
    let alpha = zero_combination(deltas).expect("two-sided input has a vanishing combination");
    CodeGeometry::TwoSidedGeneral { alpha }
}

/// If the non-zero `deltas` lie in an open half-plane, returns a normal with positive
/// dot product against all of them.
fn one_sided_normal(deltas: &[Vector]) -> Option<Vector> {
    let mut dirs: Vec<Vector> = deltas.iter().map(|d| primitive_vector(*d).expect("non-zero")).collect();
    let reference = Point::new(1, 0);
    dirs.sort_by(|a, b| angle_cmp(reference, *a, *b));
    dirs.dedup();
    if dirs.len() == 1 {
        return Some(dirs[0]);
    }
    let n = dirs.len();
    for i in 0..n {
        let a = dirs[i];
        let b = dirs[(i + 1) % n];
        // The counter-clockwise gap from a to b exceeds a half turn.
        if a.cross(b) < 0 {
            let (first, last) = (b, a);
            let tau = last.rot_cw() + first.rot_ccw();
            return Some(tau);
        }
    }
    None
}

/// A non-trivial non-negative integer combination of `deltas` summing to zero,
/// preferring the smallest support: a zero vector, then an opposite pair, then a triple.
pub fn zero_combination(deltas: &[Vector]) -> Option<Vec<u64>> {
    let n = deltas.len();
    let mut alpha = vec![0u64; n];
    if let Some(i) = deltas.iter().position(|d| d.is_zero()) {
        alpha[i] = 1;
        return Some(alpha);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (deltas[i], deltas[j]);
            if a.cross(b) == 0 && a.dot(b) < 0 {
                // a = s d, b = -t d with d primitive
                let s = a.x.gcd(&a.y) as u64;
                let t = b.x.gcd(&b.y) as u64;
                let g = s.gcd(&t);
                alpha[i] = t / g;
                alpha[j] = s / g;
                return Some(alpha);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (deltas[i], deltas[j], deltas[k]);
                let (ai, aj, ak) = (b.cross(c), c.cross(a), a.cross(b));
                let pos = ai > 0 && aj > 0 && ak > 0;
                let neg = ai < 0 && aj < 0 && ak < 0;
                if pos || neg {
                    let (ai, aj, ak) = (ai.unsigned_abs(), aj.unsigned_abs(), ak.unsigned_abs());
                    let g = ai.gcd(&aj).gcd(&ak);
                    alpha[i] = u64::try_from(ai / g).ok()?;
                    alpha[j] = u64::try_from(aj / g).ok()?;
                    alpha[k] = u64::try_from(ak / g).ok()?;
                    return Some(alpha);
                }
            }
        }
    }
    None
}

/// The four normals bounding every figure of a one-sided code, measured from its begin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingParams {
    pub tau: Vector,
    pub east: Vector,
    pub north: Vector,
    pub west: Vector,
    pub south: Vector,
    /// Index of the figure whose translation vector is most clockwise from `tau`.
    pub first: usize,
    /// Index of the figure whose translation vector is most counter-clockwise from `tau`.
    pub last: usize,
}

fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i128::from(a.rem_euclid(b) != 0)
}

/// Smallest `r >= 1` such that every point `w` satisfies `u.w <= r |u|^2`,
/// i.e. lies in the half-plane with normal `r u` anchored at the origin.
fn min_scale(u: Vector, pts: &[Point]) -> i64 {
    let uu = u.dot(u);
    let worst = pts.iter().map(|w| u.dot(*w)).max().unwrap_or(0);
    let r = ceil_div(worst, uu).max(1);
    i64::try_from(r).expect("coordinate overflow")
}

/// Sorting order of figures by the angle of their translation vector from `tau`
/// rotated clockwise by a quarter turn; ties by length, then index.
pub fn angular_order(deltas: &[Vector], tau: Vector) -> Vec<usize> {
    let reference = tau.rot_cw();
    let mut idx: Vec<usize> = (0..deltas.len()).collect();
    idx.sort_by(|&i, &j| {
        angle_cmp(reference, deltas[i], deltas[j])
            .then_with(|| deltas[i].dot(deltas[i]).cmp(&deltas[j].dot(deltas[j])))
            .then(i.cmp(&j))
    });
    idx
}

/// Bounding normals for a one-sided code with witness `tau`.
pub fn bounding_params(figs: &[Figure], tau: Vector) -> Result<BoundingParams> {
    check_code(figs)?;
    let deltas: Vec<Vector> = figs.iter().map(Figure::delta).collect();
    if tau.is_zero() || deltas.iter().any(|d| tau.dot(*d) <= 0) {
        return Err(Error::pre("code is not one-sided with respect to the given vector"));
    }
    let order = angular_order(&deltas, tau);
    let first = order[0];
    let last = *order.last().expect("non-empty");
    let pts: Vec<Point> = figs
        .iter()
        .flat_map(|f| f.domain().chain([f.end()]).map(move |p| p - f.begin()).collect::<Vec<_>>())
        .collect();
    let dir_n = deltas[last].rot_ccw();
    let dir_s = deltas[first].rot_cw();
    Ok(BoundingParams {
        tau,
        east: min_scale(tau, &pts) * tau,
        north: min_scale(dir_n, &pts) * dir_n,
        west: min_scale(-tau, &pts) * -tau,
        south: min_scale(dir_s, &pts) * dir_s,
        first,
        last,
    })
}

/// Largest, over all figures, L1 distance from the begin to the nearest domain cell.
pub fn rho(figs: &[Figure]) -> Result<u64> {
    let mut best = 0u64;
    for (i, f) in figs.iter().enumerate() {
        let d = f.domain().map(|p| p.l1_dist(f.begin()) as u64).min().ok_or(Error::EmptyDomain(i))?;
        best = best.max(d);
    }
    Ok(best)
}
