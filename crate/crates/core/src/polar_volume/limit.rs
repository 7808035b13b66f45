//! The limit `L = lim_{b -> 0-} h(b)/b` with `h(b) = -g(b)^(1/(n-1))`, and the
//! slope of `h(b)/b` as `b -> -inf`.
//!
//! `h` is convex by Brunn–Minkowski, so when `g(0) = 0` the ratio `h(b)/b` is
//! a secant slope through the origin and nondecreasing as `b` rises to 0.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::newton_body::{BodyKind, NewtonBody};
use crate::rational::{self, Q};

use super::{PolarBody, SliceOptions, SliceProfile};

/// Relative change under which a monotone sequence counts as converged.
pub const STABLE_REL: f64 = 1e-4;
/// Values beyond this count as divergent.
pub const DIVERGENCE_CAP: f64 = 1e6;
pub const MIN_R_SQUARED: f64 = 0.99;
const MIN_POINTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitClass {
    Finite,
    Infinite,
    /// Neither converged nor fits a power law; reported, never guessed.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitL {
    pub classification: LimitClass,
    /// `L` when finite.
    pub value: Option<f64>,
    /// `gamma` in `h(b)/b ~ C (-b)^-gamma` when infinite.
    pub exponent: Option<f64>,
    pub r_squared: Option<f64>,
    /// Decided without numeric thresholds.
    pub exact: bool,
    pub method: &'static str,
}

/// Classification of the slope ratios of a profile.
///
/// Polyhedral profiles in dimension 2 and 3 are decided by an exact
/// polynomial fit near `b = 0`; hyperbolic hulls by the square-root
/// behaviour of the arc at the top of the polar. Other profiles go through
/// [`classify_sequence`] on the last grid values.
pub fn limit_l(profile: &SliceProfile) -> Result<LimitL> {
    if profile.dim < 2 {
        return Err(Error::Profile("the limit needs dimension at least 2".into()));
    }
    match profile.kind {
        BodyKind::HyperbolicHull => {
            return Ok(LimitL {
                classification: LimitClass::Infinite,
                value: None,
                exponent: Some(0.5),
                r_squared: None,
                exact: true,
                method: "analytic",
            })
        }
        BodyKind::Polyhedral => {
            if let Some(l) = polynomial_limit(profile) {
                return Ok(l);
            }
        }
        BodyKind::Oracle => {}
    }
    let ratios = profile.slope_ratios();
    if ratios.len() < MIN_POINTS {
        return Err(Error::Profile(format!("{} points below 0, need {MIN_POINTS}", ratios.len())));
    }
    let p = 1.0 / (profile.dim as f64 - 1.0);
    let entries: Vec<_> = profile.entries.iter().filter(|e| e.b < 0.0).collect();
    for (i, w) in ratios.windows(2).enumerate() {
        let noise = |k: usize| {
            let e = entries[k];
            match e.stderr {
                Some(se) if e.g > 0.0 => 3.0 * ratios[k].1 * p * se / e.g,
                _ => 0.0,
            }
        };
        let tol = 1e-9 * w[0].1.abs() + noise(i) + noise(i + 1);
        if w[1].1 < w[0].1 - tol {
            return Err(Error::Profile(format!(
                "h(b)/b decreases from {} at b = {} to {} at b = {}",
                w[0].1, w[0].0, w[1].1, w[1].0
            )));
        }
    }
    let s: Vec<f64> = ratios.iter().map(|(b, _)| -b).collect();
    let r: Vec<f64> = ratios.iter().map(|(_, r)| *r).collect();
    let c = classify_sequence(&s, &r);
    Ok(LimitL {
        classification: c.class,
        value: (c.class == LimitClass::Finite).then(|| *r.last().expect("nonempty")),
        exponent: c.exponent,
        r_squared: c.r_squared,
        exact: false,
        method: "sequence",
    })
}

pub(crate) struct SequenceClass {
    pub class: LimitClass,
    pub exponent: Option<f64>,
    pub r_squared: Option<f64>,
}

/// Classifies values `r_k` taken at scales `s_k -> 0`: finite when the last
/// three relative changes are below [`STABLE_REL`], infinite when a value
/// passes [`DIVERGENCE_CAP`] or `log r` against `log s` fits a line of slope
/// `-gamma < 0` with `R^2 > 0.99` over the last eight points.
pub(crate) fn classify_sequence(s: &[f64], r: &[f64]) -> SequenceClass {
    let k = r.len();
    let fit_from = k.saturating_sub(MIN_POINTS);
    let (slope, r2) = log_fit(&s[fit_from..], &r[fit_from..]);
    let stable = k >= 4 && (k - 3..k).all(|i| (r[i] - r[i - 1]).abs() <= STABLE_REL * r[i].abs());
    if stable {
        return SequenceClass { class: LimitClass::Finite, exponent: None, r_squared: r2 };
    }
    let gamma = slope.map(|b| -b);
    let capped = r.iter().any(|v| *v > DIVERGENCE_CAP || v.is_infinite());
    if capped || (gamma.is_some_and(|g| g > 0.0) && r2.is_some_and(|x| x > MIN_R_SQUARED)) {
        return SequenceClass { class: LimitClass::Infinite, exponent: gamma, r_squared: r2 };
    }
    SequenceClass { class: LimitClass::Inconclusive, exponent: gamma, r_squared: r2 }
}

/// Least-squares slope and `R^2` of `log y` against `log x`.
pub(crate) fn log_fit(x: &[f64], y: &[f64]) -> (Option<f64>, Option<f64>) {
    let pts: Vec<(f64, f64)> =
        x.iter().zip(y).filter(|(a, b)| **a > 0.0 && **b > 0.0 && b.is_finite()).map(|(a, b)| (a.ln(), b.ln())).collect();
    if pts.len() < 3 {
        return (None, None);
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return (None, None);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (Some(slope), Some(r2))
}

/// Near `b = 0` the slices of a polytope have volume polynomial in `s = -b`
/// of degree `n - 1`. The polynomial through the `n` exact values closest to
/// 0 is confirmed on the next one; its lowest nonzero coefficient `c_k` then
/// gives `h(b)/b ~ (sqrt(n) c_k)^(1/(n-1)) s^(k/(n-1) - 1)`.
fn polynomial_limit(profile: &SliceProfile) -> Option<LimitL> {
    let n = profile.dim;
    let mut pts: Vec<(Q, Q)> = profile
        .entries
        .iter()
        .filter(|e| e.b <= 0.0)
        .map(|e| Some((rational::from_f64(-e.b).ok()?, e.projected.clone()?)))
        .collect::<Option<Vec<_>>>()?;
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    if pts.len() < n + 1 {
        return None;
    }
    let rows: Vec<Vec<Q>> = pts[..n].iter().map(|(s, _)| powers(s, n)).collect();
    let rhs: Vec<Q> = pts[..n].iter().map(|(_, v)| v.clone()).collect();
    let coef = rational::solve(&rows, &rhs)?;
    let (s_check, v_check) = &pts[n];
    if rational::dot(&powers(s_check, n), &coef) != *v_check {
        return None;
    }
    let k = coef.iter().position(|c| !c.is_zero())?;
    if coef[k].is_negative() {
        return None;
    }
    let deg = (n - 1) as f64;
    if k == n - 1 {
        let value = ((n as f64).sqrt() * rational::to_f64(&coef[k])).powf(1.0 / deg);
        Some(LimitL {
            classification: LimitClass::Finite,
            value: Some(value),
            exponent: None,
            r_squared: None,
            exact: true,
            method: "polynomial",
        })
    } else {
        Some(LimitL {
            classification: LimitClass::Infinite,
            value: None,
            exponent: Some(1.0 - k as f64 / deg),
            r_squared: None,
            exact: true,
            method: "polynomial",
        })
    }
}

fn powers(s: &Q, n: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(n);
    let mut p = rational::qi(1);
    for _ in 0..n {
        out.push(p.clone());
        p = &p * s;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AsymptoticSlope {
    /// Richardson-extrapolated limit of `h(b)/b` as `b -> -inf`.
    pub value: f64,
    pub exact: bool,
    /// `(b, h(b)/b)` at `b = -2^k`.
    pub series: Vec<(f64, f64)>,
}

/// `lim_{b -> -inf} h(b)/b`, which is `((sqrt(n)/(n-1)!))^(1/(n-1))` whenever
/// the polar contains a translate of the negative orthant.
///
/// The ratio approaches its limit like `1/b`, so doubling steps are combined
/// as `2 r(2b) - r(b)`.
pub fn asymptotic_slope(polar: &PolarBody, opts: &SliceOptions) -> Result<AsymptoticSlope> {
    let n = polar.dim();
    if n < 2 {
        return Err(Error::Profile("the slope needs dimension at least 2".into()));
    }
    let top = match polar.source() {
        NewtonBody::Oracle(_) => 24,
        _ => 40,
    };
    let p = 1.0 / (n as f64 - 1.0);
    let bs: Vec<f64> = (0..=top).map(|k| -(2f64.powi(k))).collect();
    let inner = SliceOptions { exec: crate::exec::Execution::Sequential, ..*opts };
    let slices = opts.exec.map_slice(&bs, |b| polar.slice(*b, &inner)).into_iter().collect::<Result<Vec<_>>>()?;
    let exact = slices.iter().all(|s| s.exact);
    let series: Vec<(f64, f64)> = slices.iter().map(|s| (s.b, s.g.powf(p) / -s.b)).collect();
    let k = series.len();
    let value = 2.0 * series[k - 1].1 - series[k - 2].1;
    Ok(AsymptoticSlope { value, exact, series })
}

/// `c_n = (sqrt(n) / (n-1)!)^(1/(n-1))`.
pub fn simplex_constant(n: usize) -> f64 {
    let factorial: f64 = (1..n).map(|k| k as f64).product();
    ((n as f64).sqrt() / factorial).powf(1.0 / (n as f64 - 1.0))
}
