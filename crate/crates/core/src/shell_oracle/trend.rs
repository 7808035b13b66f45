use serde::Serialize;

use crate::error::{Error, Result};
use crate::polar_volume::limit::log_fit;

const MIN_POINTS: usize = 5;
const GROWTH_MIN: f64 = 0.1;
const MIN_R_SQUARED: f64 = 0.99;
const SETTLED_REL: f64 = 0.01;

/// `t_k = -5 · 2^k`, `k = 0..4`.
pub fn default_t_grid() -> Vec<f64> {
    (0..5).map(|k| -5.0 * f64::from(1u32 << k)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Quantity {
    /// `I(t) = e^{-t} v(t)`.
    #[serde(rename = "I")]
    ScaledVolume,
    /// `S(t)`.
    #[serde(rename = "S")]
    Shell,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrendPoint {
    pub t: f64,
    pub value: f64,
    pub stderr: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendClass {
    Bounded,
    Divergent,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthLaw {
    /// `value ~ C (-t)^γ`.
    Power,
    /// `value ~ C e^{λ(-t)}`, as below the threshold `c_0 = 1`.
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrendReport {
    pub quantity: Quantity,
    pub series: Vec<TrendPoint>,
    pub classification: TrendClass,
    pub growth_law: Option<GrowthLaw>,
    /// Slope of `log Δ` against `log(-t)`.
    pub growth_exponent: Option<f64>,
    /// Slope of `log Δ` against `-t`; set for exponential growth.
    pub growth_rate: Option<f64>,
    /// Of the fit that decided the growth law.
    pub r_squared: Option<f64>,
    pub limit_estimate: Option<f64>,
    /// `value(t_last) / (-t_last)^γ`.
    pub leading_coefficient: Option<f64>,
}

/// Classifies a series sampled at geometrically decreasing `t`.
///
/// The increments `Δ_k = value_{k+1} - value_k` carry the growth law without
/// the additive constant: for `value ~ C(-t)^γ + B` they grow like
/// `(-t_{k+1})^γ`. Divergent when `log Δ` against `log(-t)` has slope above 0.1
/// with `R^2 > 0.99`, or when `log Δ` is linear in `-t` with `R^2 > 0.99`
/// (exponential growth). Bounded when the increments never expand beyond their
/// error and the last one is under 1% of the series scale, again up to error.
pub fn trend_classify(quantity: Quantity, series: &[TrendPoint]) -> Result<TrendReport> {
    if series.len() < MIN_POINTS {
        return Err(Error::Trend(format!("{} points given, at least {MIN_POINTS} needed", series.len())));
    }
    if series.iter().any(|p| !(p.t < 0.0) || !p.value.is_finite() || !(p.stderr >= 0.0)) {
        return Err(Error::Trend("points need t < 0, finite values and nonnegative errors".into()));
    }
    let ratio = series[1].t / series[0].t;
    let geometric = ratio > 1.0
        && series.windows(2).all(|w| ((w[1].t / w[0].t) / ratio - 1.0).abs() < 1e-9);
    if !geometric {
        return Err(Error::Trend("t must decrease geometrically".into()));
    }

    let scale = series.iter().map(|p| p.value.abs()).fold(0.0, f64::max);
    let noise = |i: usize| {
        let (a, b) = (&series[i], &series[i + 1]);
        3.0 * (a.stderr.powi(2) + b.stderr.powi(2)).sqrt() + 1e-9 * a.value.abs().max(b.value.abs())
    };
    let deltas: Vec<f64> = series.windows(2).map(|w| w[1].value - w[0].value).collect();
    let last = series.len() - 1;

    let mut report = TrendReport {
        quantity,
        series: series.to_vec(),
        classification: TrendClass::Inconclusive,
        growth_law: None,
        growth_exponent: None,
        growth_rate: None,
        r_squared: None,
        limit_estimate: None,
        leading_coefficient: None,
    };

    let growing = deltas.iter().enumerate().all(|(i, d)| *d > noise(i));
    if growing {
        // Each increment is indexed by its far end; on a geometric grid this
        // leaves power-law slopes unchanged.
        let x: Vec<f64> = series[1..].iter().map(|p| -p.t).collect();
        let (slope, r2) = log_fit(&x, &deltas);
        report.growth_exponent = slope;
        report.r_squared = r2;
        if let (Some(g), Some(r)) = (slope, r2) {
            if g > GROWTH_MIN && r > MIN_R_SQUARED {
                report.classification = TrendClass::Divergent;
                report.growth_law = Some(GrowthLaw::Power);
                report.leading_coefficient = Some(series[last].value / (-series[last].t).powf(g));
                return Ok(report);
            }
        }
        let logs: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
        if let (Some(rate), Some(r)) = linear_fit(&x, &logs) {
            if rate > 0.0 && r > MIN_R_SQUARED {
                report.classification = TrendClass::Divergent;
                report.growth_law = Some(GrowthLaw::Exponential);
                report.growth_rate = Some(rate);
                report.r_squared = Some(r);
                report.leading_coefficient = Some(series[last].value / (rate * -series[last].t).exp());
                return Ok(report);
            }
        }
    }

    let settled = deltas[last - 1].abs() < SETTLED_REL * scale.max(f64::MIN_POSITIVE) + noise(last - 1);
    let contracting = deltas.windows(2).enumerate().all(|(i, w)| w[1].abs() <= w[0].abs() + noise(i) + noise(i + 1));
    if settled && contracting {
        report.classification = TrendClass::Bounded;
        report.limit_estimate = Some(series[last].value);
    }
    Ok(report)
}

/// Least-squares slope and `R^2`.
fn linear_fit(x: &[f64], y: &[f64]) -> (Option<f64>, Option<f64>) {
    let n = x.len() as f64;
    if x.len() < 3 || y.iter().any(|v| !v.is_finite()) {
        return (None, None);
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return (None, None);
    }
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (Some(sxy / sxx), Some(r2))
}
