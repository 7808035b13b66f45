//! The cone condition: an apex `v` on the top face of `P°` such that every
//! `x in P°` sees `v - x` within angle `pi/2 - eps` of `(1,..,1)`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dot, norm, Point};
use crate::newton_body::NewtonBody;
use crate::rational::{self, Q};
use crate::valuations::{lc_places, PlaceClass};

use super::limit::{classify_sequence, LimitClass};
use super::{PolarBody, SliceOptions, SliceProfile};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConeCondition {
    pub epsilon: f64,
    /// Whether the condition holds for this `epsilon`.
    pub holds: bool,
    /// Whether it holds for some `epsilon > 0`; `None` when undecided.
    pub holds_for_some: Option<bool>,
    /// Supremum of the angle between `v - x` and the diagonal.
    pub theta: f64,
    pub apex: Option<Point>,
    pub violating: Option<Point>,
    pub method: &'static str,
}

/// Angle between `d` and `(1,..,1)`.
fn diagonal_angle(d: &[f64]) -> f64 {
    let n = d.len() as f64;
    let c = d.iter().sum::<f64>() / (n.sqrt() * norm(d));
    c.clamp(-1.0, 1.0).acos()
}

pub fn cone_condition(polar: &PolarBody, epsilon: f64) -> Result<ConeCondition> {
    if !(epsilon > 0.0 && epsilon < FRAC_PI_2) {
        return Err(Error::Domain(format!("epsilon {epsilon} is outside (0, pi/2)")));
    }
    match polar.source() {
        NewtonBody::Polyhedral(_) => polyhedral(polar, epsilon),
        NewtonBody::HyperbolicHull(h) => {
            let (c, ..) = h.params();
            Ok(hyperbolic(c, epsilon))
        }
        NewtonBody::Oracle(_) if polar.dim() == 2 => {
            let profile = SliceProfile::standard(polar, &SliceOptions::default())?;
            from_profile(polar, &profile, epsilon)
        }
        NewtonBody::Oracle(_) => Ok(ConeCondition {
            epsilon,
            holds: false,
            holds_for_some: None,
            theta: f64::NAN,
            apex: None,
            violating: None,
            method: "unavailable",
        }),
    }
}

/// Exact check on the vertices and the recession rays `-e_i` of the polar.
///
/// The directions `v - x` form the cone spanned by `v - w` over the other
/// vertices `w` and by the unit vectors, and the largest angle to the
/// diagonal over such a cone is attained on a spanning ray. The condition can
/// hold only when the top face `{sum x = -1/kappa}` is the single vertex `v`.
fn polyhedral(polar: &PolarBody, epsilon: f64) -> Result<ConeCondition> {
    let verts = polar.vertices().expect("polyhedral polar");
    let top = polar.top_sum_exact().expect("polyhedral kappa is exact");
    let on_top: Vec<&Vec<Q>> = verts.iter().filter(|v| rational::sum(v) == top).collect();
    let as_point = |v: &Vec<Q>| Point::new(v.iter().map(rational::to_f64).collect()).expect("finite");
    if on_top.len() != 1 {
        return Ok(ConeCondition {
            epsilon,
            holds: false,
            holds_for_some: Some(false),
            theta: FRAC_PI_2,
            apex: on_top.first().map(|v| as_point(v)),
            violating: on_top.get(1).map(|v| as_point(v)),
            method: "vertices",
        });
    }
    let v = on_top[0];
    let n = polar.dim();
    let mut theta = (1.0 / (n as f64).sqrt()).acos();
    let mut worst = None;
    for w in verts.iter().filter(|w| *w != v) {
        let d: Vec<f64> = v.iter().zip(w).map(|(a, b)| rational::to_f64(&(a - b))).collect();
        let ang = diagonal_angle(&d);
        if ang > theta {
            theta = ang;
            worst = Some(as_point(w));
        }
    }
    let holds = theta <= FRAC_PI_2 - epsilon;
    Ok(ConeCondition {
        epsilon,
        holds,
        holds_for_some: Some(true),
        theta,
        apex: Some(as_point(v)),
        violating: if holds { None } else { worst },
        method: "vertices",
    })
}

/// Near its apex `-(1,1)/(2 sqrt c)` the hyperbolic polar is bounded by
/// `4 c u v = 1` in `u = -x_1, v = -x_2`, which is tangent to the top line
/// `u + v = 1/sqrt(c)`, so `v - x` flattens toward it. Boundary points are
/// taken closer to the apex until the angle passes `pi/2 - eps`.
fn hyperbolic(c: f64, epsilon: f64) -> ConeCondition {
    let u0 = 0.5 / c.sqrt();
    let mut delta = 0.5 * u0;
    let mut violating = None;
    for _ in 0..200 {
        let u = u0 + delta;
        let v = 1.0 / (4.0 * c * u);
        let ang = diagonal_angle(&[u - u0, v - u0]);
        if ang > FRAC_PI_2 - epsilon {
            violating = Some(Point::new(vec![-u, -v]).expect("finite"));
            break;
        }
        delta *= 0.5;
    }
    ConeCondition {
        epsilon,
        holds: false,
        holds_for_some: Some(false),
        theta: FRAC_PI_2,
        apex: Some(Point::new(vec![-u0, -u0]).expect("finite")),
        violating,
        method: "analytic",
    }
}

/// Planar oracle: `tan Theta(b)` over the slice endpoints, relative to the
/// apex `-alpha/kappa` given by the supporting normal at the diagonal entry.
/// A series that settles means the condition holds; one that diverges means
/// it fails.
pub(crate) fn from_profile(polar: &PolarBody, profile: &SliceProfile, epsilon: f64) -> Result<ConeCondition> {
    let kappa = polar.kappa().value;
    let places = lc_places(polar.source())?;
    let apex: Vec<f64> = places.places[0].coords().iter().map(|a| -a / kappa).collect();
    let apex_point = Point::new(apex.clone())?;
    if places.class == PlaceClass::Infinite {
        let other = places.places.last().expect("two places").coords().iter().map(|a| -a / kappa).collect();
        return Ok(ConeCondition {
            epsilon,
            holds: false,
            holds_for_some: Some(false),
            theta: FRAC_PI_2,
            apex: Some(apex_point),
            violating: Some(Point::new(other)?),
            method: "profile",
        });
    }
    let n = polar.dim() as f64;
    let ones = vec![1.0 / n.sqrt(); polar.dim()];
    let mut s = Vec::new();
    let mut tans = Vec::new();
    let mut worst: Option<(f64, Vec<f64>)> = None;
    for e in profile.entries.iter().filter(|e| e.b < 0.0) {
        let Some((p, q)) = &e.endpoints else { continue };
        let mut t_max = 0.0f64;
        for x in [p, q] {
            let d: Vec<f64> = apex.iter().zip(x).map(|(v, xi)| v - xi).collect();
            let along = dot(&d, &ones);
            let perp = (norm(&d).powi(2) - along * along).max(0.0).sqrt();
            let t = perp / along;
            t_max = t_max.max(t);
            if worst.as_ref().is_none_or(|w| t > w.0) {
                worst = Some((t, x.clone()));
            }
        }
        s.push(-e.b);
        tans.push(t_max);
    }
    if tans.len() < 4 {
        return Err(Error::Profile("too few planar slices for the cone condition".into()));
    }
    let class = classify_sequence(&s, &tans).class;
    let recession = (1.0 / n.sqrt()).acos();
    let (holds_for_some, theta) = match class {
        LimitClass::Finite => {
            let t = tans.iter().cloned().fold(0.0, f64::max);
            (Some(true), t.atan().max(recession))
        }
        LimitClass::Infinite => (Some(false), FRAC_PI_2),
        LimitClass::Inconclusive => (None, f64::NAN),
    };
    let holds = holds_for_some == Some(true) && theta <= FRAC_PI_2 - epsilon;
    Ok(ConeCondition {
        epsilon,
        holds,
        holds_for_some,
        theta,
        apex: Some(apex_point),
        violating: if holds { None } else { worst.map(|w| Point::new(w.1).expect("finite")) },
        method: "profile",
    })
}
