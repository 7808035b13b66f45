//! Polar bodies `P° = {x <= 0 : h_P(x) <= -1}` and their diagonal slices.
//!
//! The slice volume `g(b)` is the `(n-1)`-volume of `P° ∩ {x_1 + .. + x_n = b - 1}`
//! in the metric induced from `R^n`. Slices are parametrized by the first
//! `n - 1` coordinates, whose Lebesgue measure is the induced one divided by
//! `sqrt(n)`. As a check in the plane: the polar of `{x_1 + x_2 >= 2}` is
//! `{x <= -(1/2, 1/2)}`, its slice at `b` is a segment with `x_1` ranging over
//! an interval of length `-b`, and `g(b) = sqrt(2) (-b)`.
//!
//! The largest coordinate sum on `P°` is `-1/kappa`, so slices are nonempty
//! exactly for `b <= 1 - 1/kappa`.

mod cone;
pub(crate) mod limit;
mod profile;
mod slice;
pub(crate) mod verdict;

use serde::Serialize;

pub use cone::{cone_condition, ConeCondition};
pub use limit::{asymptotic_slope, limit_l, simplex_constant, AsymptoticSlope, LimitClass, LimitL};
pub use profile::{b_grid, SliceProfile, SliceValue};
pub use slice::SliceOptions;
pub use verdict::{verdict, verdict_with, Outcome, Route, RouteName, RouteResult, SingularReason, SingularityVerdict};

use crate::error::Result;
use crate::geometry::{check_dim, Number, Point};
use crate::newton_body::NewtonBody;
use crate::rational::{self, Q};


#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// `<g, x> <= -1` for every generator `g`.
    Halfspaces,
    /// `u t + v c / t >= 1` over the arc and `A u, A v >= 1` in `u = -x_1, v = -x_2`.
    Analytic,
    /// Membership through the support function only.
    Membership,
}

#[derive(Clone, Debug)]
pub struct PolarBody {
    body: NewtonBody,
    kappa: Number,
}

/// The polar of a body whose diagonal enters it.
pub fn polar(body: &NewtonBody) -> Result<PolarBody> {
    let kappa = body.diagonal_entry()?;
    Ok(PolarBody { body: body.clone(), kappa })
}

impl PolarBody {
    pub fn source(&self) -> &NewtonBody {
        &self.body
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn kappa(&self) -> &Number {
        &self.kappa
    }

    pub fn representation(&self) -> Representation {
        match self.body {
            NewtonBody::Polyhedral(_) => Representation::Halfspaces,
            NewtonBody::HyperbolicHull(_) => Representation::Analytic,
            NewtonBody::Oracle(_) => Representation::Membership,
        }
    }

    /// `sup_{x in P°} sum x_i = -1/kappa`.
    pub fn top_sum(&self) -> f64 {
        -1.0 / self.kappa.value
    }

    pub(crate) fn top_sum_exact(&self) -> Option<Q> {
        self.kappa.exact.as_ref().map(|k| -k.recip())
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        check_dim(self.dim(), x.dim())?;
        if x.coords().iter().any(|v| *v > 0.0) {
            return Ok(false);
        }
        Ok(match &self.body {
            NewtonBody::Polyhedral(p) => {
                let exact: Vec<Q> = x.coords().iter().map(|v| rational::from_f64(*v)).collect::<Result<_>>()?;
                p.generators().iter().all(|g| rational::dot(g, &exact) <= rational::qi(-1))
            }
            _ => self.body.support_value_unchecked(x.coords()) <= -1.0,
        })
    }

    /// Vertices of a polyhedral polar: feasible points where `n` of the
    /// constraints `<g, x> = -1` and `x_i = 0` meet with a unique solution.
    pub fn vertices(&self) -> Option<Vec<Vec<Q>>> {
        let NewtonBody::Polyhedral(p) = &self.body else { return None };
        let n = p.dim();
        let mut rows: Vec<(Vec<Q>, Q)> = p.generators().iter().map(|g| (g.clone(), rational::qi(-1))).collect();
        for i in 0..n {
            let mut e = vec![rational::qi(0); n];
            e[i] = rational::qi(1);
            rows.push((e, rational::qi(0)));
        }
        let feasible = |x: &[Q]| {
            x.iter().all(|v| *v <= rational::qi(0))
                && p.generators().iter().all(|g| rational::dot(g, x) <= rational::qi(-1))
        };
        let mut out: Vec<Vec<Q>> = Vec::new();
        for sel in rational::combinations(rows.len(), n) {
            let a: Vec<Vec<Q>> = sel.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<Q> = sel.iter().map(|&i| rows[i].1.clone()).collect();
            if let Some(x) = rational::solve(&a, &b) {
                if feasible(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out.sort();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton_body::{HyperbolicHull, PolyhedralBody};
    use crate::rational::{q, qi};

    fn poly(g: &[&[i64]]) -> NewtonBody {
        PolyhedralBody::from_integers(g).unwrap().into()
    }

    fn p(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn halfplane_polar_is_a_translated_orthant() {
        let pb = polar(&poly(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(pb.representation(), Representation::Halfspaces);
        assert!(pb.contains(&p(&[-0.5, -0.5])).unwrap());
        assert!(pb.contains(&p(&[-3.0, -0.5])).unwrap());
        assert!(!pb.contains(&p(&[-0.4, -3.0])).unwrap());
        assert_eq!(pb.vertices().unwrap(), vec![vec![q(-1, 2), q(-1, 2)]]);
        assert_eq!(pb.top_sum(), -1.0);
    }

    #[test]
    fn single_generator_polar() {
        let pb = polar(&poly(&[&[3, 3]])).unwrap();
        assert!(pb.contains(&p(&[-0.17, -0.17])).unwrap());
        assert!(pb.contains(&p(&[0.0, -0.34])).unwrap());
        assert!(!pb.contains(&p(&[-0.1, -0.1])).unwrap());
    }

    #[test]
    fn vertices_are_dual_to_facets() {
        let b = PolyhedralBody::from_integers(&[&[3, 0, 0], &[0, 4, 0], &[0, 0, 2], &[1, 1, 1]]).unwrap();
        let mut from_facets: Vec<Vec<Q>> =
            b.facets().iter().map(|f| f.normal.iter().map(|a| -a / &f.offset).collect()).collect();
        from_facets.sort();
        let pb = polar(&b.into()).unwrap();
        assert_eq!(pb.vertices().unwrap(), from_facets);
    }

    #[test]
    fn hyperbolic_polar_membership() {
        let pb = polar(&HyperbolicHull::new(qi(1), q(1, 4), qi(4), qi(8)).unwrap().into()).unwrap();
        assert_eq!(pb.representation(), Representation::Analytic);
        assert!(pb.contains(&p(&[-0.5, -0.5])).unwrap());
        assert!(!pb.contains(&p(&[-0.6, -0.4])).unwrap());
        assert!(pb.contains(&p(&[-0.8, -0.4])).unwrap());
        assert!(!pb.contains(&p(&[-5.0, -0.1])).unwrap());
    }
}
