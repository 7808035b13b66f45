//! Whether the Ohsawa norm of `h_P(log|z|^2)` is singular at the origin.
//!
//! With `c_0 = 1/kappa`: below 1 the point is singular, above 1 the norm
//! vanishes nearby. At `c_0 = 1` a positive top slice `g(0)` forces
//! singularity, and otherwise three equivalent tests are run and must agree:
//! the boundary of `P` is a facet near `kappa (1,..,1)`; `L` is finite; the
//! cone condition holds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dot, Number, Weight};
use crate::newton_body::{LocalBoundaryModel, NewtonBody, OracleBody};
use crate::valuations::{lc_places, lct, PlaceClass};

use super::cone::{self, ConeCondition};
use super::{limit_l, polar, LimitClass, LimitL, PolarBody, SliceOptions, SliceProfile, SliceValue};

/// Tolerance for `c_0 = 1` on numeric paths.
pub const NUMERIC_UNIT_TOL: f64 = 1e-9;
/// Smallest numeric `g(0)` read as positive. A top slice that is a single
/// point still comes out with width of order `sqrt(machine eps)` from
/// bisection, because the support function is flat to second order there.
pub const NUMERIC_G0_TOL: f64 = 1e-6;
/// Angle margin handed to the cone test; only `holds_for_some` decides the route.
const CONE_EPSILON: f64 = 1e-3;
/// Step and flatness threshold of the numeric facet test on oracle bodies.
const PROBE_STEP: f64 = 1e-3;
const FLAT_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularReason {
    #[serde(rename = "g0_positive")]
    G0Positive,
    #[serde(rename = "L_infinite")]
    LInfinite,
    #[serde(rename = "corner")]
    Corner,
    #[serde(rename = "lct_below_one")]
    LctBelowOne,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    #[serde(rename_all = "camelCase")]
    NonSingular { facet_normal: Weight },
    Singular { reason: SingularReason },
    /// `c_0 > 1`: the norm vanishes near the origin.
    IntegrableLocus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteName {
    Facet,
    LimitL,
    Cone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Singular,
    NonSingular,
    Inconclusive,
    Unavailable,
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteResult {
    pub route: RouteName,
    pub result: Route,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SingularityVerdict {
    pub outcome: Outcome,
    pub c0: Number,
    pub g0: Option<SliceValue>,
    pub local_model: Option<LocalBoundaryModel>,
    pub limit_l: Option<LimitL>,
    pub cone: Option<ConeCondition>,
    pub routes: Vec<RouteResult>,
    pub routes_agreed: Vec<RouteName>,
    #[serde(skip)]
    pub profile: Option<SliceProfile>,
}

impl SingularityVerdict {
    pub fn is_singular(&self) -> bool {
        matches!(self.outcome, Outcome::Singular { .. })
    }
}

pub fn verdict(body: &NewtonBody) -> Result<SingularityVerdict> {
    verdict_with(body, &SliceOptions::default())
}

pub fn verdict_with(body: &NewtonBody, opts: &SliceOptions) -> Result<SingularityVerdict> {
    body.require_bounded_complement()?;
    let l = lct(body)?;
    let c0 = l.c0.clone();
    let unit = match &c0.exact {
        Some(q) => *q == crate::rational::qi(1),
        None => (c0.value - 1.0).abs() <= NUMERIC_UNIT_TOL,
    };
    let base = |outcome| SingularityVerdict {
        outcome,
        c0: c0.clone(),
        g0: None,
        local_model: None,
        limit_l: None,
        cone: None,
        routes: vec![],
        routes_agreed: vec![],
        profile: None,
    };
    if !unit {
        return Ok(if c0.value < 1.0 {
            base(Outcome::Singular { reason: SingularReason::LctBelowOne })
        } else {
            base(Outcome::IntegrableLocus)
        });
    }
    if body.dim() == 1 {
        let normal = Weight::new(vec![1.0])?;
        let normal = Weight::exact(vec![crate::rational::qi(1)]).unwrap_or(normal);
        return Ok(base(Outcome::NonSingular { facet_normal: normal }));
    }

    let pb = polar(body)?;
    let n = body.dim();
    let wants_profile = n <= 3 && !(matches!(body, NewtonBody::Oracle(_)) && n > 2);
    let profile = if wants_profile { Some(SliceProfile::standard(&pb, opts)?) } else { None };
    let g0 = match &profile {
        Some(p) => p.g0().cloned().expect("standard profile has b = 0"),
        None => pb.slice(0.0, opts)?,
    };
    let g0_positive = match &g0.stderr {
        _ if g0.exact => g0.g > 0.0,
        Some(se) => g0.g > NUMERIC_G0_TOL.max(3.0 * se),
        None => g0.g > NUMERIC_G0_TOL,
    };

    let (facet, model, normal) = facet_route(body)?;
    let (limit_route, limit) = match &profile {
        Some(p) => match limit_l(p) {
            Ok(l) => {
                let r = match l.classification {
                    LimitClass::Finite => Route::NonSingular,
                    LimitClass::Infinite => Route::Singular,
                    LimitClass::Inconclusive => Route::Inconclusive,
                };
                let detail = format!("{:?} via {}", l.classification, l.method);
                (RouteResult { route: RouteName::LimitL, result: r, detail }, Some(l))
            }
            Err(e) => (RouteResult { route: RouteName::LimitL, result: Route::Inconclusive, detail: e.to_string() }, None),
        },
        None => (
            RouteResult {
                route: RouteName::LimitL,
                result: Route::Unavailable,
                detail: format!("no slice profile in dimension {n} for this body kind"),
            },
            None,
        ),
    };
    let cone = cone_route(&pb, profile.as_ref())?;
    let cone_result = match cone.holds_for_some {
        Some(true) => Route::NonSingular,
        Some(false) => Route::Singular,
        None if cone.method == "unavailable" => Route::Unavailable,
        None => Route::Inconclusive,
    };
    let cone_route = RouteResult {
        route: RouteName::Cone,
        result: cone_result,
        detail: format!("theta = {} via {}", cone.theta, cone.method),
    };
    let routes = vec![facet, limit_route, cone_route];
    let decided: Vec<&RouteResult> =
        routes.iter().filter(|r| matches!(r.result, Route::Singular | Route::NonSingular)).collect();
    if g0_positive {
        if let Some(r) = decided.iter().find(|r| r.result == Route::NonSingular) {
            return Err(Error::RouteDisagreement(format!(
                "g(0) = {} > 0 but the {:?} route reports non-singular ({})",
                g0.g, r.route, r.detail
            )));
        }
    }
    let Some(first) = decided.first() else {
        return Err(Error::RouteDisagreement("no route reached a decision".into()));
    };
    if let Some(other) = decided.iter().find(|r| r.result != first.result) {
        return Err(Error::RouteDisagreement(format!(
            "{:?} says {:?} ({}) but {:?} says {:?} ({})",
            first.route, first.result, first.detail, other.route, other.result, other.detail
        )));
    }
    let outcome = if g0_positive {
        Outcome::Singular { reason: SingularReason::G0Positive }
    } else if first.result == Route::NonSingular {
        Outcome::NonSingular { facet_normal: normal }
    } else if matches!(model, Some(LocalBoundaryModel::Corner { .. }))
        || lc_places(body)?.class == PlaceClass::Infinite
    {
        Outcome::Singular { reason: SingularReason::Corner }
    } else {
        Outcome::Singular { reason: SingularReason::LInfinite }
    };
    let routes_agreed = decided.iter().map(|r| r.route).collect();
    Ok(SingularityVerdict {
        outcome,
        c0,
        g0: Some(g0),
        local_model: model,
        limit_l: limit,
        cone: Some(cone),
        routes,
        routes_agreed,
        profile,
    })
}

fn cone_route(pb: &PolarBody, profile: Option<&SliceProfile>) -> Result<ConeCondition> {
    match (pb.source(), profile) {
        (NewtonBody::Oracle(_), Some(p)) if pb.dim() == 2 => cone::from_profile(pb, p, CONE_EPSILON),
        _ => cone::cone_condition(pb, CONE_EPSILON),
    }
}

/// The local model at the diagonal entry point, read as a route, and the
/// normal a non-singular outcome reports.
fn facet_route(body: &NewtonBody) -> Result<(RouteResult, Option<LocalBoundaryModel>, Weight)> {
    let model = body.diagonal_boundary_model()?;
    let places = lc_places(body)?;
    let normal = places.places[0].clone();
    let (result, detail) = match &model {
        LocalBoundaryModel::Facet { radius, .. } => (Route::NonSingular, format!("facet on a ball of radius {radius}")),
        LocalBoundaryModel::Curved { curvature, .. } => (Route::Singular, format!("curved, curvature {curvature}")),
        LocalBoundaryModel::Corner { normals } => (Route::Singular, format!("corner of {} facets", normals.len())),
        LocalBoundaryModel::Probed { .. } => match body {
            NewtonBody::Oracle(_) if places.class == PlaceClass::Infinite => {
                (Route::Singular, format!("{} separated supporting normals", places.places.len()))
            }
            NewtonBody::Oracle(o) => {
                let dev = flatness(o, body.diagonal_entry()?.value, &normal);
                if dev <= FLAT_TOL {
                    (Route::NonSingular, format!("flat to {dev:e} at step {PROBE_STEP}"))
                } else {
                    (Route::Singular, format!("bends by {dev:e} at step {PROBE_STEP}"))
                }
            }
            _ => (Route::Inconclusive, "boundary only probed".into()),
        },
    };
    Ok((RouteResult { route: RouteName::Facet, result, detail }, Some(model), normal))
}

/// Largest relative offset `|<alpha, p> - kappa| / (kappa h)` of boundary
/// points `p` reached by tilting the diagonal by `h` along `e_i - e_n`.
fn flatness(o: &OracleBody, kappa: f64, alpha: &Weight) -> f64 {
    let n = o.dim();
    let mut worst = 0.0f64;
    for i in 0..n - 1 {
        for sign in [-1.0, 1.0] {
            let mut d = vec![1.0 / n as f64; n];
            d[i] += sign * PROBE_STEP;
            d[n - 1] -= sign * PROBE_STEP;
            let r = o.ray_entry(&d);
            let p: Vec<f64> = d.iter().map(|v| v * r).collect();
            worst = worst.max((dot(alpha.coords(), &p) - kappa).abs() / (kappa * PROBE_STEP));
        }
    }
    worst
}
