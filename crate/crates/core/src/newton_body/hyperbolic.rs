//! Planar bodies whose boundary near the diagonal is an arc of `xy = c`.
//!
//! `P = conv({(x, c/x) : x_lo <= x <= x_hi} ∪ {(A, 0), (0, A)}) + R^2_{>=0}`.
//! Its lower boundary is the graph of a convex nonincreasing function made of
//! a chord from `(0, A)`, the arc, a chord to `(A, 0)` and the positive x-axis.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{check_dim, Weight};
use crate::rational::{self, Q};

use super::LocalBoundaryModel;

const ON_BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct HyperbolicHull {
    c: Q,
    x_lo: Q,
    x_hi: Q,
    anchor: Q,
    cf: f64,
    lo: f64,
    hi: f64,
    a: f64,
}

impl HyperbolicHull {
    /// Validates `0 < x_lo < sqrt(c) < x_hi` and that both anchors sit far
    /// enough out (`A >= 2 x_hi` and `A >= 2 c / x_lo`) for the whole arc to be
    /// part of the boundary.
    pub fn new(c: Q, x_lo: Q, x_hi: Q, anchor: Q) -> Result<Self> {
        if !c.is_positive() || !x_lo.is_positive() {
            return Err(Error::InvalidBody("arc level and range must be positive".into()));
        }
        if !(&x_lo * &x_lo < c && c < &x_hi * &x_hi) {
            return Err(Error::InvalidBody("arc range must straddle sqrt(c)".into()));
        }
        let two = rational::qi(2);
        if anchor < &two * &x_hi || anchor < &two * &c / &x_lo {
            return Err(Error::InvalidBody(
                "anchors must satisfy A >= 2 x_hi and A >= 2 c / x_lo so the chords do not cut the arc".into(),
            ));
        }
        let body = HyperbolicHull {
            cf: rational::to_f64(&c),
            lo: rational::to_f64(&x_lo),
            hi: rational::to_f64(&x_hi),
            a: rational::to_f64(&anchor),
            c,
            x_lo,
            x_hi,
            anchor,
        };
        body.check_arc_window()?;
        Ok(body)
    }

    /// Sampled confirmation that both chord lines stay below the arc, i.e. the
    /// arc is on the boundary of the hull.
    fn check_arc_window(&self) -> Result<()> {
        let (lo, hi, c, a) = (self.lo, self.hi, self.cf, self.a);
        let right_slope = -(c / hi) / (a - hi);
        let left_slope = (c / lo - a) / lo;
        for k in 0..=64 {
            let x = lo + (hi - lo) * k as f64 / 64.0;
            let arc = c / x;
            let right = c / hi + right_slope * (x - hi);
            let left = c / lo + left_slope * (x - lo);
            let slack = 1e-12 * (1.0 + arc);
            if right > arc + slack || left > arc + slack {
                return Err(Error::InvalidBody(format!("chord cuts the arc near x = {x}")));
            }
        }
        Ok(())
    }

    pub fn level(&self) -> &Q {
        &self.c
    }

    pub fn arc_range(&self) -> (&Q, &Q) {
        (&self.x_lo, &self.x_hi)
    }

    pub fn anchor(&self) -> &Q {
        &self.anchor
    }

    pub(crate) fn params(&self) -> (f64, f64, f64, f64) {
        (self.cf, self.lo, self.hi, self.a)
    }

    /// Height of the lower boundary over `x >= 0`.
    pub fn lower_boundary(&self, x: f64) -> f64 {
        let (c, lo, hi, a) = self.params();
        if x <= lo {
            a + (c / lo - a) * x / lo
        } else if x <= hi {
            c / x
        } else if x <= a {
            (c / hi) * (a - x) / (a - hi)
        } else {
            0.0
        }
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        check_dim(2, x.len())?;
        Ok(x[0] >= 0.0 && x[1] >= 0.0 && x[1] >= self.lower_boundary(x[0]))
    }

    /// `inf_{x in P} <w, x>` for `w >= 0`: the smaller of the anchor values and
    /// the arc minimum, whose unconstrained optimizer `sqrt(c w2 / w1)` is
    /// clamped to the arc range.
    pub fn min_linear(&self, w: &[f64]) -> f64 {
        let (c, lo, hi, a) = self.params();
        let (w1, w2) = (w[0], w[1]);
        let x = if w1 == 0.0 {
            hi
        } else if w2 == 0.0 {
            lo
        } else {
            (c * w2 / w1).sqrt().clamp(lo, hi)
        };
        let arc = w1 * x + w2 * c / x;
        arc.min(a * w1).min(a * w2)
    }

    /// Support function with `-inf` coordinates restricted to the face where
    /// that coordinate vanishes.
    pub(crate) fn support_value_f64(&self, y: &[f64]) -> f64 {
        match (y[0] == f64::NEG_INFINITY, y[1] == f64::NEG_INFINITY) {
            (true, true) => f64::NEG_INFINITY,
            (true, false) => self.a * y[1],
            (false, true) => self.a * y[0],
            (false, false) => -self.min_linear(&[-y[0], -y[1]]),
        }
    }

    /// `sqrt(c)`, exact when `c` is a rational square.
    pub fn diagonal_entry(&self) -> (f64, Option<Q>) {
        (self.cf.sqrt(), rational::exact_sqrt(&self.c))
    }

    pub fn bounded_complement_radius(&self) -> f64 {
        self.a
    }

    /// Signed curvature of the arc `y = c/x` at abscissa `x`.
    pub fn arc_curvature(&self, x: f64) -> f64 {
        let c = self.cf;
        let d1 = -c / (x * x);
        let d2 = 2.0 * c / (x * x * x);
        d2 / (1.0 + d1 * d1).powf(1.5)
    }

    /// Normalized inward normal of the tangent line to the arc at `x`.
    pub fn arc_normal(&self, x: f64) -> Weight {
        let c = self.cf;
        let (n1, n2) = (c / (x * x), 1.0);
        Weight::new(vec![n1 / (n1 + n2), n2 / (n1 + n2)]).expect("positive")
    }

    /// Exact normal when `x` is rational: `(c, x^2) / (c + x^2)`.
    pub fn arc_normal_exact(&self, x: &Q) -> Weight {
        let x2 = x * x;
        let s = &self.c + &x2;
        Weight::exact(vec![&self.c / &s, x2 / s]).expect("positive")
    }

    fn right_chord_normal(&self) -> Weight {
        let n = vec![&self.c / &self.x_hi, &self.anchor - &self.x_hi];
        Weight::exact(n).expect("positive").normalized()
    }

    fn left_chord_normal(&self) -> Weight {
        let n = vec![&self.anchor - &self.c / &self.x_lo, self.x_lo.clone()];
        Weight::exact(n).expect("positive").normalized()
    }

    pub fn local_boundary_model(&self, base: &[f64]) -> Result<LocalBoundaryModel> {
        check_dim(2, base.len())?;
        let (c, lo, hi, a) = self.params();
        let (x, y) = (base[0], base[1]);
        if x < 0.0 || y < 0.0 || (y - self.lower_boundary(x)).abs() > ON_BOUNDARY_TOL * (1.0 + y) {
            return Err(Error::NotOnBoundary(format!("({x}, {y}) is not on the lower boundary")));
        }
        let dist = |p: (f64, f64)| ((p.0 - x).powi(2) + (p.1 - y).powi(2)).sqrt();
        let e_lo = (lo, c / lo);
        let e_hi = (hi, c / hi);
        let x_axis = Weight::exact(vec![Q::zero(), rational::qi(1)]).expect("unit");
        let y_axis = Weight::exact(vec![rational::qi(1), Q::zero()]).expect("unit");
        let corner = |n1: Weight, n2: Weight| {
            if n1.approx_eq(&n2, 1e-15) {
                LocalBoundaryModel::Probed { samples: vec![] }
            } else {
                LocalBoundaryModel::Corner { normals: vec![n1, n2] }
            }
        };
        let model = if x > lo && x < hi {
            LocalBoundaryModel::Curved { curvature: self.arc_curvature(x), radius: 0.5 * dist(e_lo).min(dist(e_hi)) }
        } else if x == lo {
            corner(self.left_chord_normal(), self.arc_normal_exact(&self.x_lo))
        } else if x == hi {
            corner(self.arc_normal_exact(&self.x_hi), self.right_chord_normal())
        } else if x == 0.0 && y == a {
            corner(y_axis, self.left_chord_normal())
        } else if x == a && y == 0.0 {
            corner(self.right_chord_normal(), x_axis)
        } else if x == 0.0 {
            LocalBoundaryModel::Facet { normal: y_axis, radius: 0.5 * (y - a) }
        } else if y == 0.0 {
            LocalBoundaryModel::Facet { normal: x_axis, radius: 0.5 * (x - a) }
        } else if x < lo {
            LocalBoundaryModel::Facet { normal: self.left_chord_normal(), radius: 0.5 * dist((0.0, a)).min(dist(e_lo)) }
        } else {
            LocalBoundaryModel::Facet { normal: self.right_chord_normal(), radius: 0.5 * dist((a, 0.0)).min(dist(e_hi)) }
        };
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn fixture() -> HyperbolicHull {
        HyperbolicHull::new(qi(1), q(1, 4), qi(4), qi(8)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(HyperbolicHull::new(qi(1), qi(2), qi(4), qi(8)).is_err());
        assert!(HyperbolicHull::new(qi(1), q(1, 4), qi(4), qi(7)).is_err());
        assert!(HyperbolicHull::new(qi(0), q(1, 4), qi(4), qi(8)).is_err());
        assert!(HyperbolicHull::new(qi(1), q(1, 2), qi(4), qi(8)).is_ok());
    }

    #[test]
    fn support_on_the_diagonal() {
        let b = fixture();
        assert_eq!(b.support_value_f64(&[-1.0, -1.0]), -2.0);
        assert_eq!(b.support_value_f64(&[-4.0, -0.25]), -2.0);
        assert_eq!(b.support_value_f64(&[0.0, 0.0]), 0.0);
    }

    #[test]
    fn support_matches_grid_search_on_the_arc() {
        let b = fixture();
        for y in [[-1.0f64, -3.0], [-0.2, -5.0], [-7.0, -0.01], [-2.0, -2.0]] {
            let mut best = (8.0 * y[0]).max(8.0 * y[1]);
            for k in 0..=200_000 {
                let x = 0.25 + 3.75 * k as f64 / 200_000.0;
                best = best.max(x * y[0] + y[1] / x);
            }
            assert!((b.support_value_f64(&y) - best).abs() < 1e-8, "{y:?}");
        }
    }

    #[test]
    fn membership() {
        let b = fixture();
        assert!(b.contains(&[1.0, 1.0]).unwrap());
        assert!(!b.contains(&[0.99, 1.0]).unwrap());
        assert!(b.contains(&[8.0, 0.0]).unwrap());
        assert!(b.contains(&[0.0, 8.0]).unwrap());
        assert!(!b.contains(&[0.0, 7.9]).unwrap());
        assert!(b.contains(&[6.0, 0.2]).unwrap());
    }

    #[test]
    fn curvature_matches_finite_differences() {
        let b = fixture();
        let h = 1e-4;
        let f = |x: f64| b.lower_boundary(x);
        let d1 = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
        let d2 = (f(1.0 + h) - 2.0 * f(1.0) + f(1.0 - h)) / (h * h);
        let fd = d2 / (1.0 + d1 * d1).powf(1.5);
        assert!((b.arc_curvature(1.0) - fd).abs() < 1e-6);
        assert!((b.arc_curvature(1.0) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn local_models() {
        let b = fixture();
        match b.local_boundary_model(&[1.0, 1.0]).unwrap() {
            LocalBoundaryModel::Curved { curvature, radius } => {
                assert!(curvature > 0.0 && radius > 0.0);
            }
            m => panic!("{m:?}"),
        }
        assert!(matches!(b.local_boundary_model(&[6.0, 0.125]).unwrap(), LocalBoundaryModel::Facet { .. }));
        assert!(matches!(b.local_boundary_model(&[4.0, 0.25]).unwrap(), LocalBoundaryModel::Probed { .. }));
        assert!(b.local_boundary_model(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn tangent_normal_at_the_diagonal() {
        let b = fixture();
        assert_eq!(b.arc_normal_exact(&qi(1)).exact_coords().unwrap(), &[q(1, 2), q(1, 2)]);
        assert_eq!(b.diagonal_entry(), (1.0, Some(qi(1))));
    }
}
