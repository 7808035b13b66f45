//! Slice volumes `g(b)` by body kind.

use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::newton_body::{golden_min, NewtonBody};
use crate::rational::{self, Q};
use crate::sampling::{self, Moments};

use super::{PolarBody, SliceValue};

#[derive(Clone, Copy, Debug)]
pub struct SliceOptions {
    /// Draws per slice on the Monte Carlo path.
    pub samples: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions { samples: 1 << 16, seed: 0x5eed, exec: Execution::default() }
    }
}

/// Bisection width for the endpoints of planar oracle slices.
const ORACLE_SLICE_TOL: f64 = 1e-13;

/// Area of the triangle `y_1, y_2 <= 0, y_1 + y_2 >= a` clipped by the
/// halfplanes `c_1 y_1 + c_2 y_2 <= d`.
pub(crate) fn clip_area<T>(a: T, halfplanes: &[(T, T, T)]) -> T
where
    T: Num + Signed + Clone + PartialOrd,
{
    if !a.is_negative() {
        return T::zero();
    }
    let mut poly: Vec<(T, T)> = vec![(T::zero(), T::zero()), (T::zero(), a.clone()), (a, T::zero())];
    for (c1, c2, d) in halfplanes {
        if poly.is_empty() {
            break;
        }
        let slack = |p: &(T, T)| d.clone() - (c1.clone() * p.0.clone() + c2.clone() * p.1.clone());
        let mut out = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let p = &poly[i];
            let q = &poly[(i + 1) % poly.len()];
            let (sp, sq) = (slack(p), slack(q));
            if !sp.is_negative() {
                out.push(p.clone());
            }
            if (sp.is_negative() && sq.is_positive()) || (sp.is_positive() && sq.is_negative()) {
                let t = sp.clone() / (sp - sq);
                out.push((
                    p.0.clone() + t.clone() * (q.0.clone() - p.0.clone()),
                    p.1.clone() + t * (q.1.clone() - p.1.clone()),
                ));
            }
        }
        poly = out;
    }
    if poly.len() < 3 {
        return T::zero();
    }
    let mut twice = T::zero();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        twice = twice + (p.0.clone() * q.1.clone() - q.0.clone() * p.1.clone());
    }
    twice.abs() / (T::one() + T::one())
}

/// `u`-interval of the hyperbolic polar slice `u + v = m` in flipped
/// coordinates `u = -x_1, v = -x_2`.
///
/// The arc constraint `min_t (u t + v c / t) >= 1` is concave in `u` along the
/// slice: linear while the optimal `t = sqrt(c v / u)` is clamped to `x_hi`
/// (small `u`) or `x_lo` (large `u`), and `2 sqrt(c u v)` in between, with its
/// peak `m sqrt(c)` at `u = m/2`.
pub(crate) fn hyperbolic_interval(c: f64, lo: f64, hi: f64, anchor: f64, m: f64) -> Option<(f64, f64)> {
    if !(m * c.sqrt() >= 1.0) {
        return None;
    }
    let u_hi = c * m / (c + hi * hi);
    let u_lo = c * m / (c + lo * lo);
    let phi_mid = |u: f64| 2.0 * (c * u * (m - u)).sqrt();
    let disc = (m * m - 1.0 / c).max(0.0).sqrt();
    let left = if phi_mid(u_hi) >= 1.0 {
        ((1.0 - c * m / hi) / (hi - c / hi)).max(0.0)
    } else {
        0.5 * (m - disc)
    };
    let right = if phi_mid(u_lo) >= 1.0 {
        ((1.0 - c * m / lo) / (lo - c / lo)).min(m)
    } else {
        0.5 * (m + disc)
    };
    let (l, r) = (left.max(1.0 / anchor), right.min(m - 1.0 / anchor));
    (l <= r).then_some((l, r))
}

impl PolarBody {
    /// `g(b)`; see [`PolarBody::slice`] for the method used.
    pub fn slice_volume(&self, b: f64) -> Result<f64> {
        Ok(self.slice(b, &SliceOptions::default())?.g)
    }

    /// The slice at `b`: exact for polyhedral bodies in dimension at most 3,
    /// closed form for hyperbolic hulls, endpoint bisection for planar
    /// oracles and hit-or-miss sampling in the bounding simplex otherwise.
    pub fn slice(&self, b: f64, opts: &SliceOptions) -> Result<SliceValue> {
        if !b.is_finite() {
            return Err(Error::Domain(format!("slice offset {b} is not finite")));
        }
        let n = self.dim();
        let a = b - 1.0;
        let sqrt_n = (n as f64).sqrt();
        let plain = |g: f64, exact: bool, stderr: Option<f64>| SliceValue {
            b,
            g,
            exact,
            stderr,
            projected: None,
            endpoints: None,
        };
        match &self.body {
            NewtonBody::Polyhedral(p) if n <= 3 => {
                let aq = rational::from_f64(a)?;
                let proj = match n {
                    1 => {
                        let g = &p.generators()[0][0];
                        if &aq * g <= rational::qi(-1) { rational::qi(1) } else { rational::qi(0) }
                    }
                    2 => polyhedral_interval(p.generators(), &aq),
                    _ => {
                        let planes: Vec<(Q, Q, Q)> = p
                            .generators()
                            .iter()
                            .map(|g| (&g[0] - &g[2], &g[1] - &g[2], rational::qi(-1) - &g[2] * &aq))
                            .collect();
                        clip_area(aq, &planes)
                    }
                };
                let g = if n == 1 { rational::to_f64(&proj) } else { rational::to_f64(&proj) * sqrt_n };
                Ok(SliceValue { projected: Some(proj), ..plain(g, true, None) })
            }
            NewtonBody::HyperbolicHull(h) => {
                let (c, lo, hi, anchor) = h.params();
                let m = -a;
                let (g, endpoints) = match hyperbolic_interval(c, lo, hi, anchor, m) {
                    Some((l, r)) => ((r - l) * sqrt_n, Some((vec![-l, l - m], vec![-r, r - m]))),
                    None => (0.0, None),
                };
                Ok(SliceValue { endpoints, ..plain(g, true, None) })
            }
            NewtonBody::Oracle(_) if n == 2 => {
                let m = -a;
                let (g, endpoints) = match self.oracle_interval(m) {
                    Some((l, r)) => ((r - l) * sqrt_n, Some((vec![-l, l - m], vec![-r, r - m]))),
                    None => (0.0, None),
                };
                Ok(SliceValue { endpoints, ..plain(g, false, Some(ORACLE_SLICE_TOL * sqrt_n)) })
            }
            _ => {
                let (g, se) = self.sampled_slice(a, opts)?;
                Ok(plain(g, false, Some(se)))
            }
        }
    }

    /// `g(b)` in floating point for the kinds with a deterministic slice
    /// routine; `None` where only sampling is available.
    pub(crate) fn slice_fast(&self, b: f64) -> Option<f64> {
        let n = self.dim();
        let a = b - 1.0;
        let sqrt_n = (n as f64).sqrt();
        match &self.body {
            NewtonBody::Polyhedral(p) => match n {
                1 => Some(if a * p.generators_f64()[0][0] <= -1.0 { 1.0 } else { 0.0 }),
                2 => Some(polyhedral_interval(p.generators_f64(), &a) * sqrt_n),
                3 => {
                    let planes: Vec<(f64, f64, f64)> =
                        p.generators_f64().iter().map(|g| (g[0] - g[2], g[1] - g[2], -1.0 - g[2] * a)).collect();
                    Some(clip_area(a, &planes) * sqrt_n)
                }
                _ => None,
            },
            NewtonBody::HyperbolicHull(h) => {
                let (c, lo, hi, anchor) = h.params();
                Some(hyperbolic_interval(c, lo, hi, anchor, -a).map_or(0.0, |(l, r)| (r - l) * sqrt_n))
            }
            NewtonBody::Oracle(_) if n == 2 => Some(self.oracle_interval(-a).map_or(0.0, |(l, r)| (r - l) * sqrt_n)),
            NewtonBody::Oracle(_) => None,
        }
    }

    /// Superlevel interval of the concave `u -> -h_P(-u, u - m)` at level 1.
    fn oracle_interval(&self, m: f64) -> Option<(f64, f64)> {
        if !(m > 0.0) {
            return None;
        }
        let phi = |u: f64| -self.body.support_value_unchecked(&[-u, u - m]);
        let (peak, best) = golden_min(|u| -phi(u), 0.0, m);
        if -best < 1.0 {
            return None;
        }
        let edge = |mut inside: f64, mut outside: f64| {
            while (inside - outside).abs() > ORACLE_SLICE_TOL * m.max(1.0) {
                let mid = 0.5 * (inside + outside);
                if phi(mid) >= 1.0 {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            inside
        };
        let l = if phi(0.0) >= 1.0 { 0.0 } else { edge(peak, 0.0) };
        let r = if phi(m) >= 1.0 { m } else { edge(peak, m) };
        Some((l, r))
    }

    /// Hit-or-miss estimate in the simplex `{x <= 0, sum x = a}`, whose
    /// induced volume is `(-a)^(n-1) sqrt(n) / (n-1)!`.
    fn sampled_slice(&self, a: f64, opts: &SliceOptions) -> Result<(f64, f64)> {
        let n = self.dim();
        if !(a < 0.0) || opts.samples == 0 {
            return Ok((0.0, 0.0));
        }
        if a > self.top_sum() {
            return Ok((0.0, 0.0));
        }
        let gens: Option<Vec<Vec<f64>>> = match &self.body {
            NewtonBody::Polyhedral(p) => Some(p.generators_f64().to_vec()),
            _ => None,
        };
        let member = |x: &[f64]| match &gens {
            Some(gs) => gs.iter().all(|g| g.iter().zip(x).map(|(gi, xi)| gi * xi).sum::<f64>() <= -1.0),
            None => self.body.support_value_unchecked(x) <= -1.0,
        };
        let moments = sampling::sharded(opts.samples, opts.seed, a.to_bits(), opts.exec, |rng, k| {
            let mut m = Moments::default();
            let mut x = vec![0.0; n];
            for _ in 0..k {
                let mut total = 0.0;
                for xi in x.iter_mut() {
                    *xi = -sampling::open_unit(rng).ln();
                    total += *xi;
                }
                x.iter_mut().for_each(|xi| *xi *= a / total);
                m.push(if member(&x) { 1.0 } else { 0.0 });
            }
            m
        });
        let factorial: f64 = (1..n).map(|k| k as f64).product();
        let simplex = (-a).powi(n as i32 - 1) * (n as f64).sqrt() / factorial;
        Ok((simplex * moments.mean(), simplex * moments.stderr()))
    }
}

/// Length of `{a <= x_1 <= 0 : (g_1 - g_2) x_1 <= -1 - g_2 a for all g}`.
fn polyhedral_interval<T>(gens: &[Vec<T>], a: &T) -> T
where
    T: Num + Signed + Clone + PartialOrd,
{
    let (mut lo, mut hi) = (a.clone(), T::zero());
    for g in gens {
        let coef = g[0].clone() - g[1].clone();
        let rhs = T::zero() - T::one() - g[1].clone() * a.clone();
        if coef.is_positive() {
            let v = rhs / coef;
            if v < hi {
                hi = v;
            }
        } else if coef.is_negative() {
            let v = rhs / coef;
            if v > lo {
                lo = v;
            }
        } else if rhs.is_negative() {
            return T::zero();
        }
    }
    if hi > lo { hi - lo } else { T::zero() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton_body::{HyperbolicHull, OracleBody, PolyhedralBody};
    use crate::polar_volume::polar;
    use crate::rational::{q, qi};
    use std::sync::Arc;

    fn poly(g: &[&[i64]]) -> PolarBody {
        polar(&PolyhedralBody::from_integers(g).unwrap().into()).unwrap()
    }

    #[test]
    fn clip_keeps_the_triangle_without_constraints() {
        assert_eq!(clip_area(qi(-2), &[]), qi(2));
        assert_eq!(clip_area(-2.0, &[]), 2.0);
        assert_eq!(clip_area(qi(0), &[]), qi(0));
        // y_1 <= -1 leaves a triangle with legs 1.
        assert_eq!(clip_area(qi(-2), &[(qi(1), qi(0), qi(-1))]), q(1, 2));
        assert_eq!(clip_area(qi(-2), &[(qi(1), qi(0), qi(-3))]), qi(0));
    }

    #[test]
    fn halfplane_slices() {
        let pb = poly(&[&[2, 0], &[0, 2]]);
        let s = pb.slice(-0.5, &SliceOptions::default()).unwrap();
        assert_eq!(s.projected, Some(q(1, 2)));
        assert!((s.g - 2f64.sqrt() * 0.5).abs() < 1e-15);
        assert_eq!(pb.slice_volume(0.0).unwrap(), 0.0);
        assert_eq!(pb.slice_volume(0.25).unwrap(), 0.0);
    }

    #[test]
    fn corner_top_slice() {
        let pb = poly(&[&[3, 0], &[1, 1], &[0, 3]]);
        let s = pb.slice(0.0, &SliceOptions::default()).unwrap();
        assert_eq!(s.projected, Some(q(1, 3)));
        let s = pb.slice(-0.5, &SliceOptions::default()).unwrap();
        assert_eq!(s.projected, Some(q(1, 3) + q(1, 2)));
    }

    #[test]
    fn simplex_slices_in_three_dimensions() {
        let pb = poly(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
        for b in [-0.25, -1.0, -8.0] {
            let s = pb.slice(b, &SliceOptions::default()).unwrap();
            let want = b * b * 3f64.sqrt() / 2.0;
            assert!((s.g - want).abs() < 1e-12 * (1.0 + want), "{b}: {} vs {want}", s.g);
        }
    }

    #[test]
    fn hyperbolic_slice_closed_form() {
        let pb = polar(&HyperbolicHull::new(qi(1), q(1, 4), qi(4), qi(8)).unwrap().into()).unwrap();
        let g = pb.slice_volume(-0.01).unwrap();
        let want = 2f64.sqrt() * (1.01f64 * 1.01 - 1.0).sqrt();
        assert!((g - want).abs() < 1e-12);
        assert!((g - 0.2005).abs() < 1e-4);
        assert_eq!(pb.slice_volume(0.0).unwrap(), 0.0);
    }

    #[test]
    fn hyperbolic_interval_matches_membership() {
        let h = HyperbolicHull::new(qi(2), q(1, 2), qi(3), qi(8)).unwrap();
        let (c, lo, hi, a) = h.params();
        let pb = polar(&h.into()).unwrap();
        for m in [0.75, 1.0, 2.0, 5.0, 40.0] {
            let (l, r) = hyperbolic_interval(c, lo, hi, a, m).unwrap();
            let inside = |u: f64| pb.contains(&crate::Point::new(vec![-u, u - m]).unwrap()).unwrap();
            assert!(inside(l + 1e-9) && inside(r - 1e-9), "{m}");
            assert!(!inside(l - 1e-6) && !inside(r + 1e-6), "{m}");
        }
        assert!(hyperbolic_interval(c, lo, hi, a, 0.7).is_none());
    }

    #[test]
    fn oracle_slices_match_exact_ones() {
        let exact = poly(&[&[3, 0], &[1, 1], &[0, 3]]);
        let oracle = polar(
            &OracleBody::new(2, 3.0, Arc::new(|x: &[f64]| x[0] + 2.0 * x[1] >= 3.0 && 2.0 * x[0] + x[1] >= 3.0))
                .unwrap()
                .into(),
        )
        .unwrap();
        for b in [0.0, -0.1, -1.0, -3.0] {
            let (e, o) = (exact.slice_volume(b).unwrap(), oracle.slice_volume(b).unwrap());
            assert!((e - o).abs() < 1e-9, "{b}: {e} vs {o}");
        }
    }

    #[test]
    fn fast_slices_agree_with_exact_ones() {
        for pb in [poly(&[&[3, 0], &[1, 1], &[0, 3]]), poly(&[&[3, 0, 0], &[0, 4, 0], &[0, 0, 2], &[1, 1, 1]])] {
            for b in [0.0, -0.01, -0.3, -2.0, -50.0] {
                let exact = pb.slice(b, &SliceOptions::default()).unwrap().g;
                let fast = pb.slice_fast(b).unwrap();
                assert!((exact - fast).abs() <= 1e-12 * (1.0 + exact), "{b}: {exact} vs {fast}");
            }
        }
    }

    #[test]
    fn sampled_slices_cover_exact_ones() {
        let pb = poly(&[&[3, 0, 0], &[0, 4, 0], &[0, 0, 2], &[1, 1, 1]]);
        let opts = SliceOptions { samples: 1 << 16, ..SliceOptions::default() };
        for b in [-0.3, -2.0] {
            let exact = pb.slice(b, &opts).unwrap().g;
            let (g, se) = pb.sampled_slice(b - 1.0, &opts).unwrap();
            assert!((g - exact).abs() < 4.0 * se + 1e-12, "{b}: {g} ± {se} vs {exact}");
        }
    }
}
