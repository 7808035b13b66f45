//! Newton bodies known only through a membership predicate.
//!
//! All quantities are recovered numerically from the radial entry function
//! `rho(d) = inf{t >= 0 : t d in P}`, which is monotone in `t` because the
//! body is closed under adding the orthant.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{check_dim, dot, Point};

use super::LocalBoundaryModel;

pub type Membership = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// Target accuracy of the numeric support function and Kiselman numbers.
pub const ORACLE_TOL: f64 = 1e-9;

const GOLDEN_STEPS: usize = 72;
const SPOT_CHECKS: usize = 256;

#[derive(Clone)]
pub struct OracleBody {
    dim: usize,
    radius: f64,
    membership: Membership,
}

impl fmt::Debug for OracleBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleBody").field("dim", &self.dim).field("radius", &self.radius).finish_non_exhaustive()
    }
}

impl OracleBody {
    /// `radius` claims that every point of the orthant with some coordinate
    /// `>= radius` is a member. That claim and monotonicity of the predicate
    /// are spot-checked on a fixed pseudo-random sample.
    pub fn new(dim: usize, radius: f64, membership: Membership) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidBody("dimension must be at least 1".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidBody("bounded-complement radius must be positive".into()));
        }
        let body = OracleBody { dim, radius, membership };
        body.spot_check()?;
        Ok(body)
    }

    fn spot_check(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let r = self.radius;
        if (self.membership)(&vec![0.0; self.dim]) {
            return Err(Error::InvalidBody("oracle body contains the origin".into()));
        }
        for _ in 0..SPOT_CHECKS {
            let x: Vec<f64> = (0..self.dim).map(|_| rng.random::<f64>() * 2.0 * r).collect();
            if (self.membership)(&x) {
                let up: Vec<f64> = x.iter().map(|v| v + rng.random::<f64>() * r).collect();
                if !(self.membership)(&up) {
                    return Err(Error::InvalidBody(format!("membership is not monotone at {x:?}")));
                }
            }
            let mut far = x.clone();
            far[rng.random_range(0..self.dim)] = r * (1.0 + rng.random::<f64>());
            if !(self.membership)(&far) {
                return Err(Error::InvalidBody(format!("{far:?} has a coordinate beyond the radius but is not a member")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(x.iter().all(|v| *v >= 0.0) && (self.membership)(x))
    }

    /// `inf{t >= 0 : t d in P}` for a nonzero direction `d >= 0`.
    pub fn ray_entry(&self, d: &[f64]) -> f64 {
        let dmax = d.iter().cloned().fold(0.0, f64::max);
        let (mut lo, mut hi) = (0.0, self.radius / dmax);
        let mut p = vec![0.0; self.dim];
        while hi - lo > 1e-15 * hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            p.iter_mut().zip(d).for_each(|(pi, di)| *pi = mid * di);
            if (self.membership)(&p) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// `inf_{x in P} <w, x>` for `w >= 0`.
    ///
    /// Over directions `d` of the unit simplex the objective `<w, d> rho(d)`
    /// is quasiconvex (a linear form over a concave one), so nested golden
    /// section searches on the simplex coordinates find its minimum.
    pub fn min_linear(&self, w: &[f64]) -> f64 {
        let f = |d: &[f64]| {
            let lin = dot(w, d);
            if lin == 0.0 {
                0.0
            } else {
                lin * self.ray_entry(d)
            }
        };
        minimize_on_simplex(self.dim, &f).1
    }

    pub(crate) fn support_value_f64(&self, y: &[f64]) -> f64 {
        let restricted: Vec<usize> = (0..self.dim).filter(|&i| y[i] == f64::NEG_INFINITY).collect();
        if restricted.is_empty() {
            let w: Vec<f64> = y.iter().map(|v| -v).collect();
            return -self.min_linear(&w);
        }
        if restricted.len() == self.dim {
            return f64::NEG_INFINITY;
        }
        let face = self.face(&restricted);
        let rest: Vec<f64> = (0..self.dim).filter(|i| !restricted.contains(i)).map(|i| y[i]).collect();
        face.support_value_f64(&rest)
    }

    /// The face `P ∩ {x_i = 0, i in zeros}` as a body in the remaining coordinates.
    fn face(&self, zeros: &[usize]) -> OracleBody {
        let n = self.dim;
        let face_dim = n - zeros.len();
        let zeros = zeros.to_vec();
        let inner = self.membership.clone();
        let membership: Membership = Arc::new(move |x: &[f64]| {
            let mut full = Vec::with_capacity(n);
            let mut it = x.iter();
            for i in 0..n {
                full.push(if zeros.contains(&i) { 0.0 } else { *it.next().expect("length") });
            }
            inner(&full)
        });
        OracleBody { dim: face_dim, radius: self.radius, membership }
    }

    /// Bisection for `kappa` with absolute accuracy `1e-12`, bracketed by the
    /// origin (never a member) and `R (1,..,1)` (always a member).
    pub fn diagonal_entry(&self) -> Result<f64> {
        if !(self.membership)(&vec![self.radius; self.dim]) {
            return Err(Error::DiagonalMiss);
        }
        let (mut lo, mut hi) = (0.0, self.radius);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if (self.membership)(&vec![mid; self.dim]) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Boundary samples along directions near the one through `base`.
    pub fn local_boundary_model(&self, base: &[f64]) -> Result<LocalBoundaryModel> {
        check_dim(self.dim, base.len())?;
        let scale = base.iter().cloned().fold(1.0, f64::max);
        let eps = 1e-9 * scale;
        let below: Vec<f64> = base.iter().map(|v| v - eps).collect();
        if !self.contains(base)? || self.contains(&below)? {
            return Err(Error::NotOnBoundary(format!("{base:?}")));
        }
        let total: f64 = base.iter().sum();
        let d0: Vec<f64> = base.iter().map(|v| v / total).collect();
        let mut samples = Vec::new();
        for i in 0..self.dim {
            for k in -4i32..=4 {
                let h = 1e-3 * k as f64;
                let mut d = d0.clone();
                d[i] += h;
                if d.iter().any(|v| *v < 0.0) {
                    continue;
                }
                let s: f64 = d.iter().sum();
                d.iter_mut().for_each(|v| *v /= s);
                let t = self.ray_entry(&d);
                samples.push(Point::new(d.iter().map(|v| v * t).collect())?);
            }
        }
        Ok(LocalBoundaryModel::Probed { samples })
    }
}

/// Golden-section minimization of a quasiconvex function on `[lo, hi]`.
pub(crate) fn golden_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> (f64, f64) {
    const R: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - R * (b - a);
    let mut x2 = a + R * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_STEPS {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - R * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + R * (b - a);
            f2 = f(x2);
        }
    }
    let (fa, fb) = (f(lo), f(hi));
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if fa < best.1 {
        best = (lo, fa);
    }
    if fb < best.1 {
        best = (hi, fb);
    }
    best
}

/// Minimizer and minimum of a quasiconvex `f` over the standard simplex in
/// `R^n`, by nested golden-section searches (partial minimization keeps
/// quasiconvexity).
pub(crate) fn minimize_on_simplex(n: usize, f: &dyn Fn(&[f64]) -> f64) -> (Vec<f64>, f64) {
    fn rec(prefix: &mut Vec<f64>, n: usize, f: &dyn Fn(&[f64]) -> f64) -> (Vec<f64>, f64) {
        let mass = 1.0 - prefix.iter().sum::<f64>();
        if prefix.len() + 1 == n {
            prefix.push(mass.max(0.0));
            let v = f(prefix);
            let arg = prefix.clone();
            prefix.pop();
            return (arg, v);
        }
        let (t, _) = golden_min(
            |t| {
                prefix.push(t);
                let v = rec(prefix, n, f).1;
                prefix.pop();
                v
            },
            0.0,
            mass.max(0.0),
        );
        prefix.push(t);
        let best = rec(prefix, n, f);
        prefix.pop();
        best
    }
    rec(&mut Vec::with_capacity(n), n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn halfplane() -> OracleBody {
        OracleBody::new(2, 2.0, Arc::new(|x: &[f64]| x[0] + x[1] >= 2.0)).unwrap()
    }

    #[test]
    fn numeric_quantities_of_the_halfplane() {
        let b = halfplane();
        assert!((b.diagonal_entry().unwrap() - 1.0).abs() < 1e-12);
        assert!((b.min_linear(&[1.0, 1.0]) - 2.0).abs() < ORACLE_TOL);
        assert!((b.min_linear(&[1.0, 3.0]) - 2.0).abs() < ORACLE_TOL);
        assert!(b.min_linear(&[0.0, 1.0]).abs() < ORACLE_TOL);
        assert!((b.support_value_f64(&[-1.0, -1.0]) + 2.0).abs() < ORACLE_TOL);
        assert!((b.support_value_f64(&[f64::NEG_INFINITY, -1.0]) + 2.0).abs() < ORACLE_TOL);
    }

    #[test]
    fn rejects_non_monotone_predicate() {
        let r = OracleBody::new(2, 2.0, Arc::new(|x: &[f64]| x[0] + x[1] >= 2.0 && x[0] < 3.0));
        assert!(r.is_err());
    }

    #[test]
    fn rejects_wrong_radius() {
        let r = OracleBody::new(2, 1.0, Arc::new(|x: &[f64]| x[0] + x[1] >= 2.0));
        assert!(r.is_err());
    }

    #[test]
    fn three_dimensional_minimum() {
        let b = OracleBody::new(3, 3.0, Arc::new(|x: &[f64]| x.iter().sum::<f64>() >= 3.0)).unwrap();
        assert!((b.min_linear(&[1.0, 2.0, 3.0]) - 3.0).abs() < 1e-8);
    }

    #[test]
    fn probed_model() {
        let b = halfplane();
        match b.local_boundary_model(&[1.0, 1.0]).unwrap() {
            LocalBoundaryModel::Probed { samples } => {
                assert!(!samples.is_empty());
                for s in samples {
                    assert!((s.coords()[0] + s.coords()[1] - 2.0).abs() < 1e-12);
                }
            }
            m => panic!("{m:?}"),
        }
    }
}
