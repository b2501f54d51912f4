//! Convex hull of two unit disks centred at `(±1, 0)`: a planar body with
//! faces that are not exposed (the four points `(±1, ±1)` where the flat
//! sides meet the arcs). Handled through direct oracles, without sections.

use serde::Serialize;

use crate::linalg::Vector;

#[derive(Clone, Copy, Debug, Default)]
pub struct Stadium;

/// Argmax set of a linear functional: a point or a segment.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExposedSet {
    Point { p: [f64; 2] },
    Segment { a: [f64; 2], b: [f64; 2] },
}

impl Stadium {
    pub const TOL: f64 = 1e-9;

    pub fn contains(&self, p: &Vector) -> bool {
        let dx = (p[0].abs() - 1.0).max(0.0);
        (dx * dx + p[1] * p[1]).sqrt() <= 1.0 + Self::TOL
    }

    pub fn support(&self, u: &Vector) -> f64 {
        u[0].abs() + u.norm()
    }

    pub fn exposed_face(&self, u: &Vector) -> ExposedSet {
        let n = u.norm();
        if u[0].abs() <= Self::TOL * n {
            let y = u[1].signum();
            return ExposedSet::Segment { a: [-1.0, y], b: [1.0, y] };
        }
        let cx = u[0].signum();
        ExposedSet::Point { p: [cx + u[0] / n, u[1] / n] }
    }

    /// Whether `p` is an extreme point (not in the open flat sides or the interior).
    pub fn is_extreme(&self, p: &Vector) -> bool {
        let dx = (p[0].abs() - 1.0).max(0.0);
        let on_boundary = ((dx * dx + p[1] * p[1]).sqrt() - 1.0).abs() <= 1e-7;
        on_boundary && p[0].abs() >= 1.0 - 1e-7
    }

    /// Whether `p` is the unique maximizer of some linear functional.
    pub fn is_exposed_point(&self, p: &Vector) -> bool {
        if !self.is_extreme(p) {
            return false;
        }
        // The normal cone of an extreme point is one ray; it is the outer
        // normal of the arc through p.
        let c = Vector::from_vec(vec![p[0].signum(), 0.0]);
        let normal = p - c;
        matches!(self.exposed_face(&normal), ExposedSet::Point { .. })
    }

    /// Chord test of the face property for `{p}`: no segment of the body
    /// has `p` in its relative interior.
    pub fn chord_through(&self, p: &Vector, d: &Vector) -> bool {
        let step = 1e-4;
        self.contains(&(p + d * step)) && self.contains(&(p - d * step))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vector {
        Vector::from_vec(vec![x, y])
    }

    #[test]
    fn junctions_are_extreme_but_not_exposed() {
        let s = Stadium;
        for &(x, y) in &[(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            let p = v(x, y);
            assert!(s.is_extreme(&p));
            assert!(!s.is_exposed_point(&p));
            for k in 0..64 {
                let t = k as f64 / 64.0 * std::f64::consts::TAU;
                assert!(!s.chord_through(&p, &v(t.cos(), t.sin())) || t.sin().abs() < 1e-12);
            }
        }
        assert!(s.is_exposed_point(&v(2.0, 0.0)));
        let a = std::f64::consts::FRAC_PI_4;
        assert!(s.is_exposed_point(&v(1.0 + a.cos(), a.sin())));
        assert!(!s.is_extreme(&v(0.0, 1.0)));
        assert_eq!(s.exposed_face(&v(0.0, 3.0)), ExposedSet::Segment { a: [-1.0, 1.0], b: [1.0, 1.0] });
    }

    #[test]
    fn support_matches_boundary_sampling() {
        let s = Stadium;
        let mut pts = Vec::new();
        for k in 0..4000 {
            let t = k as f64 / 4000.0 * std::f64::consts::TAU;
            pts.push(v(1.0 + t.cos(), t.sin()));
            pts.push(v(-1.0 + t.cos(), t.sin()));
        }
        for k in 0..50 {
            let t = k as f64 * 0.37;
            let u = v(t.cos(), t.sin());
            let m = pts.iter().map(|p| p.dot(&u)).fold(f64::NEG_INFINITY, f64::max);
            assert!((m - s.support(&u)).abs() < 1e-5);
        }
    }
}
