//! Monomial valuations of toric psh functions: Kiselman numbers, log
//! discrepancies, the log canonical threshold and the log canonical places.
//!
//! For a weight `alpha >= 0` the Kiselman number of `h_P(log|z|^2)` is
//! `v_alpha = inf_{x in P} <alpha, x>` and the log discrepancy of the monomial
//! valuation is `A(alpha) = sum alpha_j`. The lct is the infimum of `A / v`,
//! which equals `1 / kappa` for the diagonal entry point `kappa (1,..,1)`.
//! Weights attaining it (normalized to `sum alpha = 1`) are the normals of the
//! supporting hyperplanes of `P` at that point.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{check_dim, Number, Weight};
use crate::newton_body::{NewtonBody, ORACLE_TOL};
use crate::rational::{self, Q};

/// `inf_{x in P} <alpha, x>`; exact for polyhedral bodies with exact weights.
pub fn kiselman(body: &NewtonBody, alpha: &Weight) -> Result<Number> {
    check_dim(body.dim(), alpha.dim())?;
    let v = match (body, alpha.exact_coords()) {
        (NewtonBody::Polyhedral(p), Some(a)) => Number::exact(p.min_linear_exact(a)),
        _ => Number::approx(body.min_linear(alpha.coords())),
    };
    debug_assert!({
        let neg: Vec<f64> = alpha.coords().iter().map(|a| -a).collect();
        let dual = -body.support_value_unchecked(&neg);
        let tol = if body.is_exact() { 1e-12 } else { 10.0 * ORACLE_TOL };
        (dual - v.value).abs() <= tol * (1.0 + v.value.abs())
    });
    Ok(v)
}

/// `A(alpha) = sum alpha_j`.
pub fn log_discrepancy(alpha: &Weight) -> Number {
    match alpha.exact_coords() {
        Some(e) => Number::exact(rational::sum(e)),
        None => Number::approx(alpha.log_discrepancy()),
    }
}

/// Minimal `v_alpha(f)` over the exponents of a power series `f`.
pub fn series_valuation(exponents: &[Vec<u64>], alpha: &Weight) -> Result<Number> {
    if exponents.is_empty() {
        return Err(Error::Domain("a series needs at least one exponent".into()));
    }
    for e in exponents {
        check_dim(alpha.dim(), e.len())?;
    }
    Ok(match alpha.exact_coords() {
        Some(a) => Number::exact(
            exponents
                .iter()
                .map(|e| e.iter().zip(a).map(|(ei, ai)| ai * Q::from_integer((*ei).into())).sum::<Q>())
                .min()
                .expect("nonempty"),
        ),
        None => Number::approx(
            exponents
                .iter()
                .map(|e| e.iter().zip(alpha.coords()).map(|(ei, ai)| *ei as f64 * ai).sum::<f64>())
                .fold(f64::INFINITY, f64::min),
        ),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValuationReport {
    pub weight: Weight,
    pub kiselman: Number,
    pub log_discrepancy: Number,
    /// `A / v`, infinite when `v = 0` (serialized as `null`).
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Number,
}

fn ser_ratio<S: Serializer>(n: &Number, s: S) -> std::result::Result<S::Ok, S::Error> {
    if n.value.is_finite() {
        n.serialize(s)
    } else {
        s.serialize_none()
    }
}

pub fn valuation_report(body: &NewtonBody, alpha: &Weight) -> Result<ValuationReport> {
    let v = kiselman(body, alpha)?;
    let a = log_discrepancy(alpha);
    let ratio = match (&a.exact, &v.exact) {
        (Some(ae), Some(ve)) if !ve.is_zero() => Number::exact(ae / ve),
        _ if v.value == 0.0 => Number::approx(f64::INFINITY),
        _ => Number::approx(a.value / v.value),
    };
    Ok(ValuationReport { weight: alpha.clone(), kiselman: v, log_discrepancy: a, ratio })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Lct {
    pub c0: Number,
    pub kappa: Number,
    /// A monomial valuation computing the threshold.
    pub certificate: ValuationReport,
}

/// `c_0 = 1 / kappa` with a minimizing weight.
pub fn lct(body: &NewtonBody) -> Result<Lct> {
    let kappa = body.diagonal_entry()?;
    let c0 = match &kappa.exact {
        Some(k) => Number::exact(Q::one() / k),
        None => Number::approx(1.0 / kappa.value),
    };
    let places = lc_places_at(body, &kappa)?;
    let alpha = match places.class {
        PlaceClass::Unique => places.places[0].clone(),
        PlaceClass::Infinite => barycenter(&places.places),
    };
    let certificate = valuation_report(body, &alpha)?;
    Ok(Lct { c0, kappa, certificate })
}

fn barycenter(ws: &[Weight]) -> Weight {
    if let Some(exact) = ws.iter().map(|w| w.exact_coords()).collect::<Option<Vec<_>>>() {
        let n = exact[0].len();
        let k = Q::from_integer((ws.len() as i64).into());
        let c: Vec<Q> = (0..n).map(|i| exact.iter().map(|e| e[i].clone()).sum::<Q>() / &k).collect();
        return Weight::exact(c).expect("average of weights");
    }
    let n = ws[0].dim();
    Weight::new((0..n).map(|i| ws.iter().map(|w| w.coords()[i]).sum::<f64>() / ws.len() as f64).collect())
        .expect("average of weights")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceClass {
    Unique,
    /// A whole normal cone of supporting hyperplanes; listed by extreme rays.
    Infinite,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LcPlaceSet {
    pub class: PlaceClass,
    /// Normals with `sum alpha = 1`; the extreme ones when infinite.
    pub places: Vec<Weight>,
    pub exact: bool,
}

/// Supporting hyperplanes of `P` at `kappa (1,..,1)`.
pub fn lc_places(body: &NewtonBody) -> Result<LcPlaceSet> {
    let kappa = body.diagonal_entry()?;
    lc_places_at(body, &kappa)
}

fn lc_places_at(body: &NewtonBody, kappa: &Number) -> Result<LcPlaceSet> {
    match body {
        NewtonBody::Polyhedral(p) => {
            let k = kappa.exact.clone().expect("polyhedral kappa is exact");
            let facets = p.facets_through(&vec![k; p.dim()]);
            if facets.is_empty() {
                return Err(Error::NotOnBoundary("no facet passes through the diagonal entry point".into()));
            }
            let class = if facets.len() == 1 { PlaceClass::Unique } else { PlaceClass::Infinite };
            Ok(LcPlaceSet { class, places: facets.iter().map(|f| f.weight()).collect(), exact: true })
        }
        NewtonBody::HyperbolicHull(h) => {
            let normal = match &kappa.exact {
                Some(k) => h.arc_normal_exact(k),
                None => Weight::exact(vec![rational::q(1, 2), rational::q(1, 2)]).expect("valid"),
            };
            Ok(LcPlaceSet { class: PlaceClass::Unique, places: vec![normal], exact: true })
        }
        NewtonBody::Oracle(o) => Ok(numeric_places(o, kappa.value)),
    }
}

/// Supporting normals at `kappa (1,..,1)` from one-sided boundary secants.
///
/// The boundary near the diagonal is traced by `rho(d) d` for directions `d`
/// tilted by `+-h (e_i - e_n)`. A normal is orthogonal to one secant per
/// tilt axis; on a smooth boundary all sign choices give the same normal up
/// to `O(h)`, at a corner they spread out.
fn numeric_places(body: &crate::newton_body::OracleBody, kappa: f64) -> LcPlaceSet {
    const H: f64 = 1e-5;
    const SPREAD: f64 = 1e-3;
    let n = body.dim();
    if n == 1 {
        return LcPlaceSet { class: PlaceClass::Unique, places: vec![Weight::new(vec![1.0]).expect("valid")], exact: false };
    }
    let centre = vec![kappa; n];
    let secant = |i: usize, sign: f64| -> Vec<f64> {
        let mut d = vec![1.0 / n as f64; n];
        d[i] += sign * H;
        d[n - 1] -= sign * H;
        let r = body.ray_entry(&d);
        d.iter().zip(&centre).map(|(di, ci)| r * di - ci).collect()
    };
    let plus: Vec<Vec<f64>> = (0..n - 1).map(|i| secant(i, 1.0)).collect();
    let minus: Vec<Vec<f64>> = (0..n - 1).map(|i| secant(i, -1.0)).collect();
    let mut normals: Vec<Weight> = Vec::new();
    for mask in 0..(1usize << (n - 1)) {
        let rows: Vec<Vec<f64>> =
            (0..n - 1).map(|i| if mask >> i & 1 == 1 { plus[i].clone() } else { minus[i].clone() }).collect();
        if let Some(a) = normal_to(&rows) {
            if !normals.iter().any(|w| w.approx_eq(&a, SPREAD)) {
                normals.push(a);
            }
        }
    }
    if normals.len() <= 1 {
        let central: Vec<Vec<f64>> =
            (0..n - 1).map(|i| plus[i].iter().zip(&minus[i]).map(|(p, m)| p - m).collect()).collect();
        let a = normal_to(&central)
            .or_else(|| normals.pop())
            .unwrap_or_else(|| Weight::new(vec![1.0 / n as f64; n]).expect("valid"));
        return LcPlaceSet { class: PlaceClass::Unique, places: vec![a], exact: false };
    }
    normals.sort_by(|a, b| b.coords().partial_cmp(a.coords()).expect("finite"));
    LcPlaceSet { class: PlaceClass::Infinite, places: normals, exact: false }
}

/// Unit-sum vector orthogonal to `n - 1` vectors in `R^n`, when it is a weight.
#[allow(clippy::needless_range_loop)]
fn normal_to(rows: &[Vec<f64>]) -> Option<Weight> {
    let n = rows.len() + 1;
    // Solve [rows; 1..1] a = e_n by Gaussian elimination with partial pivoting.
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().cloned().chain([0.0]).collect()).collect();
    m.push(vec![1.0; n].into_iter().chain([1.0]).collect());
    for col in 0..n {
        let p = (col..n).max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).expect("finite"))?;
        if m[p][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    let a: Vec<f64> = (0..n).map(|i| m[i][n] / m[i][i]).collect();
    let a: Vec<f64> = a.into_iter().map(|v| if v.abs() < 1e-9 { 0.0 } else { v }).collect();
    Weight::new(a).ok().filter(|w| w.coords().iter().all(|v| *v >= 0.0))
}

/// Whether a computed ratio equals `c0` (exactly on rational paths).
pub fn attains(report: &ValuationReport, c0: &Number) -> bool {
    match (&report.ratio.exact, &c0.exact) {
        (Some(r), Some(c)) => r == c,
        _ => (report.ratio.value - c0.value).abs() <= 1e-9 * c0.value.max(1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton_body::{HyperbolicHull, OracleBody, PolyhedralBody};
    use crate::rational::{q, qi};
    use std::sync::Arc;

    fn poly(g: &[&[i64]]) -> NewtonBody {
        PolyhedralBody::from_integers(g).unwrap().into()
    }

    fn hyperbolic() -> NewtonBody {
        HyperbolicHull::new(qi(1), q(1, 4), qi(4), qi(8)).unwrap().into()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::exact(v.iter().map(|x| qi(*x)).collect()).unwrap()
    }

    #[test]
    fn kiselman_numbers() {
        let h = poly(&[&[2, 0], &[0, 2]]);
        assert_eq!(kiselman(&h, &w(&[1, 1])).unwrap().exact, Some(qi(2)));
        assert_eq!(kiselman(&h, &w(&[1, 0])).unwrap().exact, Some(qi(0)));
        assert!((kiselman(&hyperbolic(), &Weight::new(vec![1.0, 1.0]).unwrap()).unwrap().value - 2.0).abs() < 1e-12);
        assert!(kiselman(&h, &w(&[1, 1, 1])).is_err());
        assert!(Weight::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn discrepancies() {
        assert_eq!(log_discrepancy(&w(&[1, 1])).exact, Some(qi(2)));
        let third = Weight::exact(vec![q(1, 3), q(2, 3)]).unwrap();
        assert_eq!(log_discrepancy(&third).exact, Some(qi(1)));
    }

    #[test]
    fn series_valuations() {
        assert_eq!(series_valuation(&[vec![2, 0], vec![0, 2]], &w(&[1, 1])).unwrap().exact, Some(qi(2)));
        assert_eq!(series_valuation(&[vec![1, 3]], &w(&[2, 1])).unwrap().exact, Some(qi(5)));
        assert_eq!(series_valuation(&[vec![0, 0], vec![5, 1]], &w(&[3, 7])).unwrap().exact, Some(qi(0)));
        assert!(series_valuation(&[], &w(&[1, 1])).is_err());
    }

    #[test]
    fn thresholds_and_certificates() {
        let cases: [(&[&[i64]], Q); 3] =
            [(&[&[2, 0], &[0, 2]], qi(1)), (&[&[1, 0], &[0, 1]], qi(2)), (&[&[3, 3, 3]], q(1, 3))];
        for (g, c0) in cases {
            let b = poly(g);
            let l = lct(&b).unwrap();
            assert_eq!(l.c0.exact, Some(c0.clone()));
            assert_eq!(l.certificate.ratio.exact, Some(c0));
            assert!(attains(&l.certificate, &l.c0));
        }
        let l = lct(&poly(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(l.certificate.weight.exact_coords().unwrap(), &[q(1, 2), q(1, 2)]);
        assert_eq!(l.certificate.kiselman.exact, Some(q(1, 2)));
    }

    #[test]
    fn places_of_the_fixtures() {
        let h = lc_places(&poly(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!((h.class, h.exact), (PlaceClass::Unique, true));
        assert_eq!(h.places[0].exact_coords().unwrap(), &[q(1, 2), q(1, 2)]);

        let c = lc_places(&poly(&[&[3, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(c.class, PlaceClass::Infinite);
        let mut normals: Vec<Vec<Q>> = c.places.iter().map(|p| p.exact_coords().unwrap().to_vec()).collect();
        normals.sort();
        assert_eq!(normals, vec![vec![q(1, 3), q(2, 3)], vec![q(2, 3), q(1, 3)]]);

        let y = lc_places(&hyperbolic()).unwrap();
        assert_eq!((y.class, y.exact), (PlaceClass::Unique, true));
        assert_eq!(y.places[0].exact_coords().unwrap(), &[q(1, 2), q(1, 2)]);
    }

    #[test]
    fn numeric_places_on_oracles() {
        let flat: NewtonBody = OracleBody::new(2, 2.0, Arc::new(|x: &[f64]| x[0] + x[1] >= 2.0)).unwrap().into();
        let p = lc_places(&flat).unwrap();
        assert_eq!((p.class, p.exact), (PlaceClass::Unique, false));
        assert!(p.places[0].approx_eq(&Weight::new(vec![0.5, 0.5]).unwrap(), 1e-6));

        let corner: NewtonBody = OracleBody::new(
            2,
            3.0,
            Arc::new(|x: &[f64]| x[0] + 2.0 * x[1] >= 3.0 && 2.0 * x[0] + x[1] >= 3.0),
        )
        .unwrap()
        .into();
        let p = lc_places(&corner).unwrap();
        assert_eq!(p.class, PlaceClass::Infinite);
        assert!(p.places[0].approx_eq(&Weight::new(vec![2.0 / 3.0, 1.0 / 3.0]).unwrap(), 1e-6));
        assert!(p.places[1].approx_eq(&Weight::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap(), 1e-6));

        let curved: NewtonBody =
            OracleBody::new(2, 8.0, Arc::new(|x: &[f64]| x[0] * x[1] >= 1.0 || x[0] >= 8.0 || x[1] >= 8.0)).unwrap().into();
        let p = lc_places(&curved).unwrap();
        assert_eq!(p.class, PlaceClass::Unique);
        assert!(p.places[0].approx_eq(&Weight::new(vec![0.5, 0.5]).unwrap(), 1e-4));
        let l = lct(&curved).unwrap();
        assert!((l.c0.value - 1.0).abs() < 1e-9);
        assert!((l.certificate.ratio.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn scaling_moves_kappa_only() {
        let b = PolyhedralBody::from_integers(&[&[3, 0], &[1, 1], &[0, 3]]).unwrap();
        let d: NewtonBody = b.dilated(&q(5, 2)).unwrap().into();
        let b: NewtonBody = b.into();
        assert_eq!(lct(&d).unwrap().c0.exact.unwrap(), lct(&b).unwrap().c0.exact.unwrap() * q(2, 5));
        let pa: Vec<_> = lc_places(&b).unwrap().places.iter().map(|p| p.exact_coords().unwrap().to_vec()).collect();
        let pb: Vec<_> = lc_places(&d).unwrap().places.iter().map(|p| p.exact_coords().unwrap().to_vec()).collect();
        assert_eq!(pa, pb);
    }
}
