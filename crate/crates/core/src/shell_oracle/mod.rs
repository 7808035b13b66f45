//! Shell integrals of `e^{-Psi}` and the volume function.
//!
//! In the coordinates `x_i = log|z_i|^2` the shell integral is
//! `S(t) = ∫_{t < h_P(x) < t+1} e^{Σx - h_P(x)} dx` over the negative orthant
//! and the volume function is `v(s) = ∫_{h_P(x) < s} e^{Σx} dx`. Both differ
//! from the Lebesgue integrals on the polydisc by the constant factor `π^n`,
//! which is dropped throughout.
//!
//! The deterministic path integrates diagonal slices of the polar body:
//! with `a_max = -1/κ`,
//!
//! ```text
//! v(s) = (-s)^{n-1}/√n · e^{s/κ} ∫_0^∞ e^{-w} f(a_max - w/(-s)) dw,
//! ```
//!
//! where `f(a)` is the slice volume on `Σx = a`. `S(t)` then follows from
//! `I(s) = e^{-s} v(s)` by integration by parts. The sampled path draws each
//! coordinate as the log of a uniform variable, shifted and tilted towards
//! the level set.

mod checks;
mod trend;

pub use checks::{calculus_checks, Check, CheckReport};
pub use trend::{default_t_grid, trend_classify, GrowthLaw, Quantity, TrendClass, TrendPoint, TrendReport};

use std::f64::consts::SQRT_2;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::newton_body::NewtonBody;
use crate::polar_volume::{polar, PolarBody};
use crate::quad::{integrate, Tolerance};
use crate::sampling::{open_unit, sharded, Moments};
use crate::valuations::lct;

/// Fewer in-region draws than this and a sampled estimate is refused.
pub const MIN_HITS: u64 = 100;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 42;

const U_BREAKS: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 4.0, 10.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Mc,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Mc => "mc",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions { samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED, exec: Execution::default() }
    }
}

/// `v(s)` together with `I(s) = e^{-s} v(s)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VolumePoint {
    pub s: f64,
    pub value: f64,
    pub scaled: f64,
    /// Standard error of `scaled`; zero on the deterministic path.
    pub stderr: f64,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShellEstimate {
    pub t: f64,
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    pub mode: Mode,
}

/// Precomputed data shared by every evaluation on one body.
#[derive(Clone, Debug)]
pub struct ShellOracle {
    polar: PolarBody,
    kappa: f64,
    intercepts: Vec<f64>,
    /// Normalized lct certificate; the level sets concentrate along it.
    direction: Vec<f64>,
    tol: Tolerance,
    /// Oracle slices are too costly to evaluate inside nested quadrature.
    table: Option<SliceTable>,
}

/// Slice volumes at `b = b_top - r^2` on a uniform grid in `r`, read back by
/// cubic interpolation. Square-root and linear onsets at the top are both
/// smooth in `r`.
#[derive(Clone, Debug)]
struct SliceTable {
    b_top: f64,
    step: f64,
    values: Vec<f64>,
}

const TABLE_R_MAX: f64 = 10.0;
const TABLE_POINTS: usize = 400;

impl SliceTable {
    fn build(polar: &PolarBody, b_top: f64, exec: Execution) -> Self {
        let step = TABLE_R_MAX / TABLE_POINTS as f64;
        let values = exec.map(TABLE_POINTS + 1, |j| {
            let r = j as f64 * step;
            polar.slice_fast(b_top - r * r).unwrap_or(0.0)
        });
        SliceTable { b_top, step, values }
    }

    fn get(&self, b: f64) -> Option<f64> {
        let d = self.b_top - b;
        if d <= 0.0 {
            return Some(0.0);
        }
        let x = d.sqrt() / self.step;
        let i = x.floor() as usize;
        if i >= TABLE_POINTS {
            return None;
        }
        let v = &self.values;
        let p1 = v[i];
        let p2 = v[i + 1];
        let p0 = if i > 0 { v[i - 1] } else { 2.0 * p1 - p2 };
        let p3 = if i + 2 <= TABLE_POINTS { v[i + 2] } else { 2.0 * p2 - p1 };
        let u = x - i as f64;
        // Catmull-Rom.
        let y = p1
            + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + u * (3.0 * (p1 - p2) + p3 - p0)));
        Some(y.max(0.0))
    }
}

impl ShellOracle {
    pub fn new(body: &NewtonBody) -> Result<Self> {
        body.require_bounded_complement()?;
        let polar = polar(body)?;
        let kappa = polar.kappa().value;
        let intercepts = body.axis_intercepts();
        let certificate = lct(body)?.certificate.weight.normalized();
        let tol = if body.is_exact() {
            Tolerance { abs: 1e-300, rel: 1e-11, max_segments: 4000 }
        } else {
            Tolerance { abs: 1e-300, rel: 1e-7, max_segments: 400 }
        };
        let table = match body {
            NewtonBody::Oracle(_) if polar.slice_fast(0.0).is_some() => {
                Some(SliceTable::build(&polar, 1.0 - 1.0 / kappa, Execution::default()))
            }
            _ => None,
        };
        Ok(ShellOracle { polar, kappa, intercepts, direction: certificate.coords().to_vec(), tol, table })
    }

    fn slice_at(&self, b: f64) -> f64 {
        self.table.as_ref().and_then(|t| t.get(b)).or_else(|| self.polar.slice_fast(b)).unwrap_or(0.0)
    }

    pub fn body(&self) -> &NewtonBody {
        self.polar.source()
    }

    pub fn dim(&self) -> usize {
        self.polar.dim()
    }

    /// Whether slices can be integrated deterministically.
    pub fn has_exact_path(&self) -> bool {
        self.polar.slice_fast(0.0).is_some()
    }

    /// `I(s) = e^{-s} v(s)` by quadrature over slices.
    pub fn scaled_volume(&self, s: f64) -> Result<f64> {
        if !(s < 0.0) {
            return Err(Error::Domain(format!("volume level must be negative, got {s}")));
        }
        if !self.has_exact_path() {
            return Err(Error::Domain("no deterministic slice routine for this body".into()));
        }
        let n = self.dim();
        let a_max = -1.0 / self.kappa;
        let m = -s;
        let inner = integrate(
            |u| {
                let w = u * u;
                let g = self.slice_at(a_max - w / m + 1.0);
                2.0 * u * (-w).exp() * g
            },
            &U_BREAKS,
            self.tol,
        )?;
        let pre = m.powi(n as i32 - 1) / (n as f64).sqrt() * (s * (1.0 / self.kappa - 1.0)).exp();
        Ok(pre * inner.value)
    }

    pub fn volume(&self, s: f64, mode: Mode, mc: &McOptions) -> Result<VolumePoint> {
        match mode {
            Mode::Exact => {
                let scaled = self.scaled_volume(s)?;
                Ok(VolumePoint { s, value: s.exp() * scaled, scaled, stderr: 0.0, mode })
            }
            Mode::Mc => {
                let m = self.sample(Target::Volume(s), mc)?;
                Ok(VolumePoint { s, value: s.exp() * m.mean(), scaled: m.mean(), stderr: m.stderr(), mode })
            }
        }
    }

    pub fn shell(&self, t: f64, mode: Mode, mc: &McOptions) -> Result<ShellEstimate> {
        if !(t + 1.0 < 0.0) {
            return Err(Error::Domain(format!("shell needs t + 1 < 0, got t = {t}")));
        }
        match mode {
            Mode::Exact => {
                let upper = self.scaled_volume(t + 1.0)?;
                let lower = self.scaled_volume(t)?;
                let tol = Tolerance { rel: self.tol.rel * 10.0, ..self.tol };
                let mut failure = None;
                let body = integrate(
                    |s| {
                        self.scaled_volume(s).unwrap_or_else(|e| {
                            failure.get_or_insert(e);
                            0.0
                        })
                    },
                    &[t, t + 1.0],
                    tol,
                )?;
                if let Some(e) = failure {
                    return Err(e);
                }
                let value = (upper - lower + body.value).max(0.0);
                Ok(ShellEstimate { t, value, stderr: 0.0, samples: 0, seed: 0, mode })
            }
            Mode::Mc => {
                let m = self.sample(Target::Shell(t), mc)?;
                Ok(ShellEstimate { t, value: m.mean(), stderr: m.stderr(), samples: mc.samples, seed: mc.seed, mode })
            }
        }
    }

    /// `S(t)` on every grid point. Deterministic evaluations run concurrently
    /// over `t`; sampled ones shard each `t` instead.
    pub fn shell_series(&self, ts: &[f64], mode: Mode, mc: &McOptions) -> Result<Vec<ShellEstimate>> {
        match mode {
            Mode::Exact => mc.exec.map_slice(ts, |&t| self.shell(t, mode, mc)).into_iter().collect(),
            Mode::Mc => ts.iter().map(|&t| self.shell(t, mode, mc)).collect(),
        }
    }

    /// `I(t)` on every grid point.
    pub fn scaled_series(&self, ts: &[f64], mode: Mode, mc: &McOptions) -> Result<Vec<VolumePoint>> {
        match mode {
            Mode::Exact => mc.exec.map_slice(ts, |&t| self.volume(t, mode, mc)).into_iter().collect(),
            Mode::Mc => ts.iter().map(|&t| self.volume(t, mode, mc)).collect(),
        }
    }

    fn sample(&self, target: Target, mc: &McOptions) -> Result<Moments> {
        let (outer, centre, key) = match target {
            Target::Volume(s) if s < 0.0 => (s, s, s.to_bits()),
            Target::Shell(t) if t + 1.0 < 0.0 => (t + 1.0, t + 0.5, t.to_bits().rotate_left(1) ^ 1),
            _ => return Err(Error::Domain(format!("sampling target out of range: {target:?}"))),
        };
        if mc.samples == 0 {
            return Err(Error::MonteCarlo("zero samples requested".into()));
        }
        let proposal = Proposal::new(&self.intercepts, &self.direction, self.kappa, outer, centre);
        let body = self.body();
        let n = self.dim();
        let m = sharded(mc.samples, mc.seed, key, mc.exec, |rng, k| {
            let mut y = vec![0.0; n];
            let mut acc = Moments::default();
            for _ in 0..k {
                let log_w = proposal.draw(rng, &mut y);
                let h = body.support_value_unchecked(&y);
                let v = match target {
                    Target::Volume(s) if h < s => (log_w - s).exp(),
                    Target::Shell(t) if t < h && h < t + 1.0 => (log_w - h).exp(),
                    _ => 0.0,
                };
                acc.push(v);
            }
            acc
        });
        if m.hits < MIN_HITS {
            return Err(Error::MonteCarlo(format!(
                "{} of {} draws landed in the region at {target:?}; at least {MIN_HITS} are needed",
                m.hits, m.count
            )));
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug)]
enum Target {
    Volume(f64),
    Shell(f64),
}

/// Product of shifted exponentials `y_i = δ_i - E_i / λ_i`.
///
/// Since `R_i e_i ∈ P` gives `h_P(y) >= R_i y_i`, the region `h_P < level`
/// lies in `{y < δ}` with `δ_i = level / R_i`, so the weighted estimator is
/// unbiased. The rates stretch the proposal down to the point of the level
/// set on the lct direction.
#[derive(Clone, Debug)]
struct Proposal {
    shift: Vec<f64>,
    rate: Vec<f64>,
    log_norm: f64,
}

impl Proposal {
    fn new(intercepts: &[f64], direction: &[f64], kappa: f64, outer: f64, centre: f64) -> Self {
        let shift: Vec<f64> = intercepts.iter().map(|r| if r.is_finite() { outer / r } else { 0.0 }).collect();
        let rate: Vec<f64> =
            shift.iter().zip(direction).map(|(d, a)| 1.0 / (d - centre * a / kappa).max(1.0)).collect();
        let log_norm = shift.iter().sum::<f64>() - rate.iter().map(|l| l.ln()).sum::<f64>();
        Proposal { shift, rate, log_norm }
    }

    /// Fills `y` and returns the log of the importance weight `e^{Σy} / q(y)`.
    fn draw(&self, rng: &mut ChaCha8Rng, y: &mut [f64]) -> f64 {
        let mut log_w = self.log_norm;
        for ((yi, shift), rate) in y.iter_mut().zip(&self.shift).zip(&self.rate) {
            let z = log_uniform(rng) / rate;
            *yi = shift + z;
            log_w += (1.0 - rate) * z;
        }
        log_w
    }
}

/// One coordinate with density `e^x` on `(-∞, 0]`.
pub fn log_uniform<R: Rng>(rng: &mut R) -> f64 {
    open_unit(rng).ln()
}

/// `count` draws of [`log_uniform`] from a seeded generator.
pub fn coordinate_samples(count: usize, seed: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let shards = count.div_ceil(crate::sampling::SHARD);
    for s in 0..shards {
        let mut rng = crate::sampling::shard_rng(seed, 0, s as u64);
        let len = crate::sampling::SHARD.min(count - out.len());
        out.extend((0..len).map(|_| log_uniform(&mut rng)));
    }
    out
}

pub fn volume_function(body: &NewtonBody, s: f64) -> Result<VolumePoint> {
    let oracle = ShellOracle::new(body)?;
    let mode = if oracle.has_exact_path() { Mode::Exact } else { Mode::Mc };
    oracle.volume(s, mode, &McOptions::default())
}

pub fn shell_integral(body: &NewtonBody, t: f64, mode: Mode, samples: usize, seed: u64) -> Result<ShellEstimate> {
    let mc = McOptions { samples, seed, ..McOptions::default() };
    ShellOracle::new(body)?.shell(t, mode, &mc)
}

/// CSV with columns `t,value,stderr,samples,seed,mode`.
pub fn series_csv(series: &[ShellEstimate]) -> String {
    let mut out = String::from("t,value,stderr,samples,seed,mode\n");
    for e in series {
        out.push_str(&format!("{:e},{:e},{:e},{},{},{}\n", e.t, e.value, e.stderr, e.samples, e.seed, e.mode.as_str()));
    }
    out
}

/// Leading coefficient of `I(t) ~ C √(-t)` for the hyperbolic hull `c = 1`.
pub fn hyperbolic_coefficient() -> f64 {
    (std::f64::consts::PI).sqrt() / SQRT_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton_body::{HyperbolicHull, PolyhedralBody};
    use crate::rational::Q;

    fn poly(g: &[&[i64]]) -> NewtonBody {
        PolyhedralBody::from_integers(g).unwrap().into()
    }

    fn hyperbolic() -> NewtonBody {
        HyperbolicHull::new(Q::from_integer(1.into()), Q::new(1.into(), 4.into()), Q::from_integer(4.into()), Q::from_integer(8.into()))
            .unwrap()
            .into()
    }

    #[test]
    fn halfplane_volume_is_exponential() {
        let o = ShellOracle::new(&poly(&[&[2, 0], &[0, 2]])).unwrap();
        for s in [-0.5, -3.0, -40.0] {
            let v = o.volume(s, Mode::Exact, &McOptions::default()).unwrap();
            assert!((v.scaled - 1.0).abs() < 1e-12, "{s}: {}", v.scaled);
        }
        for t in [-5.0, -80.0] {
            let e = o.shell(t, Mode::Exact, &McOptions::default()).unwrap();
            assert!((e.value - 1.0).abs() < 1e-10 && e.stderr == 0.0);
        }
    }

    #[test]
    fn one_dimensional_volume() {
        // P = [3, ∞): {3x < s} has measure e^{s/3}.
        let o = ShellOracle::new(&poly(&[&[3]])).unwrap();
        let v = o.volume(-6.0, Mode::Exact, &McOptions::default()).unwrap();
        assert!((v.value - (-2.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn simplex_volume_matches_direct_integral() {
        // P = conv{(1,0),(0,1)} + orthant: {max(x1,x2) < s} = quadrant, v = e^{2s}.
        let o = ShellOracle::new(&poly(&[&[1, 0], &[0, 1]])).unwrap();
        let v = o.volume(-2.0, Mode::Exact, &McOptions::default()).unwrap();
        assert!((v.value - (-4.0f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn corner_volume_matches_closed_form() {
        // h = max(3x1, x1+x2, 3x2), integrated directly over x2 first.
        let body = poly(&[&[3, 0], &[1, 1], &[0, 3]]);
        let o = ShellOracle::new(&body).unwrap();
        let s = -4.0;
        let direct = integrate(
            |x1| {
                // x2 < min(s/3, s - x1) and x1 < s/3.
                let top = (s / 3.0).min(s - x1);
                x1.exp() * top.exp()
            },
            &[-60.0, 2.0 * s / 3.0, s / 3.0],
            Tolerance::default(),
        )
        .unwrap();
        let v = o.volume(s, Mode::Exact, &McOptions::default()).unwrap();
        assert!((v.value - direct.value).abs() < 1e-11 * direct.value, "{} vs {}", v.value, direct.value);
    }

    #[test]
    fn hyperbolic_growth_coefficient() {
        let o = ShellOracle::new(&hyperbolic()).unwrap();
        let i = o.scaled_volume(-80.0).unwrap();
        let c = i / 80f64.sqrt();
        assert!((c / hyperbolic_coefficient() - 1.0).abs() < 0.1, "{c}");
    }

    #[test]
    fn sampled_and_exact_volume_agree() {
        let o = ShellOracle::new(&hyperbolic()).unwrap();
        let mc = McOptions { samples: 200_000, seed: 3, exec: Execution::default() };
        let a = o.volume(-10.0, Mode::Exact, &mc).unwrap();
        let b = o.volume(-10.0, Mode::Mc, &mc).unwrap();
        assert!((a.scaled - b.scaled).abs() < 3.0 * b.stderr, "{} vs {} ± {}", a.scaled, b.scaled, b.stderr);
    }

    #[test]
    fn sampled_shell_reaches_deep_levels() {
        let o = ShellOracle::new(&hyperbolic()).unwrap();
        let mc = McOptions { samples: 200_000, seed: 9, exec: Execution::default() };
        let a = o.shell(-80.0, Mode::Exact, &mc).unwrap();
        let b = o.shell(-80.0, Mode::Mc, &mc).unwrap();
        assert!((a.value - b.value).abs() < 4.0 * b.stderr, "{} vs {} ± {}", a.value, b.value, b.stderr);
        assert!(b.stderr < 0.05 * b.value);
    }

    #[test]
    fn sampling_is_policy_independent() {
        let o = ShellOracle::new(&poly(&[&[3, 0], &[1, 1], &[0, 3]])).unwrap();
        let seq = McOptions { samples: 50_000, seed: 42, exec: Execution::Sequential };
        let par = McOptions { exec: Execution::Parallel, ..seq };
        assert_eq!(o.shell(-10.0, Mode::Mc, &seq).unwrap(), o.shell(-10.0, Mode::Mc, &par).unwrap());
    }

    #[test]
    fn too_few_hits_is_an_error() {
        let o = ShellOracle::new(&poly(&[&[2, 0], &[0, 2]])).unwrap();
        let mc = McOptions { samples: 50, seed: 1, exec: Execution::Sequential };
        assert!(matches!(o.shell(-10.0, Mode::Mc, &mc), Err(Error::MonteCarlo(_))));
    }

    #[test]
    fn coordinate_sampler_matches_exponential_law() {
        let mut xs = coordinate_samples(1_000_000, 11);
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let f = x.exp();
                (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.01, "{ks}");
    }

    #[test]
    fn tabulated_oracle_slices_track_exact_ones() {
        let gens = [[3, 0], [1, 1], [0, 3]];
        let spec = format!(r#"{{"dimension": 2, "kind": "oracle", "radius": 4, "generators": {gens:?}}}"#);
        let oracle = crate::newton_body::spec::BodySpec::from_json(&spec).unwrap().build().unwrap();
        let exact = ShellOracle::new(&poly(&[&gens[0], &gens[1], &gens[2]])).unwrap();
        let numeric = ShellOracle::new(&oracle).unwrap();
        let (a, b) = (exact.scaled_volume(-20.0).unwrap(), numeric.scaled_volume(-20.0).unwrap());
        assert!((a - b).abs() < 1e-5 * a, "{a} vs {b}");
    }

    #[test]
    fn rejects_bad_levels() {
        let o = ShellOracle::new(&poly(&[&[2, 0], &[0, 2]])).unwrap();
        assert!(o.scaled_volume(0.0).is_err());
        assert!(o.shell(-0.5, Mode::Exact, &McOptions::default()).is_err());
    }

    #[test]
    fn csv_columns() {
        let e = ShellEstimate { t: -5.0, value: 1.0, stderr: 0.0, samples: 0, seed: 0, mode: Mode::Exact };
        assert_eq!(series_csv(&[e]), "t,value,stderr,samples,seed,mode\n-5e0,1e0,0e0,0,0,exact\n");
    }
}

#[cfg(test)]
mod trend_tests {
    use super::*;
    use crate::newton_body::{HyperbolicHull, PolyhedralBody};
    use crate::rational::Q;

    fn trends(body: &NewtonBody) -> (TrendReport, TrendReport) {
        let o = ShellOracle::new(body).unwrap();
        let mc = McOptions::default();
        let ts = default_t_grid();
        let i: Vec<TrendPoint> = o
            .scaled_series(&ts, Mode::Exact, &mc)
            .unwrap()
            .iter()
            .map(|p| TrendPoint { t: p.s, value: p.scaled, stderr: 0.0 })
            .collect();
        let s: Vec<TrendPoint> = o
            .shell_series(&ts, Mode::Exact, &mc)
            .unwrap()
            .iter()
            .map(|e| TrendPoint { t: e.t, value: e.value, stderr: 0.0 })
            .collect();
        (trend_classify(Quantity::ScaledVolume, &i).unwrap(), trend_classify(Quantity::Shell, &s).unwrap())
    }

    #[test]
    fn hyperbolic_grows_like_square_root() {
        let q = |n: i64, d: i64| Q::new(n.into(), d.into());
        let body: NewtonBody = HyperbolicHull::new(q(1, 1), q(1, 4), q(4, 1), q(8, 1)).unwrap().into();
        for r in <[TrendReport; 2]>::from(trends(&body)) {
            assert_eq!(r.classification, TrendClass::Divergent);
            let g = r.growth_exponent.unwrap();
            assert!((g - 0.5).abs() < 0.05, "{g}");
        }
    }

    #[test]
    fn corner_grows_linearly() {
        let body: NewtonBody = PolyhedralBody::from_integers(&[&[3, 0], &[1, 1], &[0, 3]]).unwrap().into();
        for r in <[TrendReport; 2]>::from(trends(&body)) {
            assert_eq!(r.classification, TrendClass::Divergent);
            let g = r.growth_exponent.unwrap();
            assert!((g - 1.0).abs() < 0.05, "{g}");
        }
    }

    #[test]
    fn facet_body_is_bounded() {
        // Single facet x + 2y = 3 through (1, 1).
        let q = |n: i64, d: i64| Q::new(n.into(), d.into());
        let body: NewtonBody = PolyhedralBody::new(vec![vec![q(3, 1), q(0, 1)], vec![q(0, 1), q(3, 2)]]).unwrap().into();
        let (i, s) = trends(&body);
        assert_eq!(i.classification, TrendClass::Bounded);
        assert_eq!(s.classification, TrendClass::Bounded);
    }
}
