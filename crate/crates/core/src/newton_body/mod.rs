//! Newton convex bodies `P ⊂ R^n_{>=0}` with `P + R^n_{>=0} = P`.
//!
//! Three concrete kinds share one interface: exact polyhedra, planar hulls of
//! a hyperbola arc, and membership oracles. The toric psh function of a body
//! is represented by `h_P(log|z_1|^2, ..., log|z_n|^2)` where
//! `h_P(y) = sup_{a in P} <a, y>` is the support function on `y <= 0`.

mod hyperbolic;
mod oracle;
mod polyhedral;
pub mod spec;

use serde::Serialize;

pub use hyperbolic::HyperbolicHull;
pub use oracle::{Membership, OracleBody, ORACLE_TOL};
pub use polyhedral::PolyhedralBody;

pub(crate) use oracle::golden_min;

use crate::error::{Error, Result};
use crate::geometry::{check_dim, Number, Point, Weight};
use crate::rational::{self, Q};

/// Shape of `∂P` in a neighbourhood of a boundary point.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalBoundaryModel {
    /// `P ∩ B = {x ∈ B : <normal, x - base> >= 0}` on the ball of this radius.
    Facet { normal: Weight, radius: f64 },
    /// Strictly curved: the curvature is a positive lower bound on the ball.
    Curved { curvature: f64, radius: f64 },
    /// At least two non-proportional supporting normals meet at the point.
    Corner { normals: Vec<Weight> },
    /// Only numeric boundary samples are available.
    Probed { samples: Vec<Point> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    Polyhedral,
    HyperbolicHull,
    Oracle,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum NewtonBody {
    Polyhedral(PolyhedralBody),
    HyperbolicHull(HyperbolicHull),
    Oracle(OracleBody),
}

impl From<PolyhedralBody> for NewtonBody {
    fn from(b: PolyhedralBody) -> Self {
        NewtonBody::Polyhedral(b)
    }
}

impl From<HyperbolicHull> for NewtonBody {
    fn from(b: HyperbolicHull) -> Self {
        NewtonBody::HyperbolicHull(b)
    }
}

impl From<OracleBody> for NewtonBody {
    fn from(b: OracleBody) -> Self {
        NewtonBody::Oracle(b)
    }
}

impl NewtonBody {
    pub fn dim(&self) -> usize {
        match self {
            NewtonBody::Polyhedral(b) => b.dim(),
            NewtonBody::HyperbolicHull(_) => 2,
            NewtonBody::Oracle(b) => b.dim(),
        }
    }

    pub fn kind(&self) -> BodyKind {
        match self {
            NewtonBody::Polyhedral(_) => BodyKind::Polyhedral,
            NewtonBody::HyperbolicHull(_) => BodyKind::HyperbolicHull,
            NewtonBody::Oracle(_) => BodyKind::Oracle,
        }
    }

    /// Whether the polyhedral/analytic exact paths apply.
    pub fn is_exact(&self) -> bool {
        !matches!(self, NewtonBody::Oracle(_))
    }

    /// Every point of the orthant with a coordinate at least this large is a
    /// member; `None` when the complement of the body is unbounded.
    pub fn bounded_complement_radius(&self) -> Option<f64> {
        match self {
            NewtonBody::Polyhedral(b) => b.bounded_complement_radius().map(|r| rational::to_f64(&r)),
            NewtonBody::HyperbolicHull(b) => Some(b.bounded_complement_radius()),
            NewtonBody::Oracle(b) => Some(b.radius()),
        }
    }

    /// Fails with [`Error::UnboundedComplement`] unless the singularity is isolated.
    pub fn require_bounded_complement(&self) -> Result<f64> {
        self.bounded_complement_radius().ok_or(Error::UnboundedComplement)
    }

    /// Smallest `t` with `t e_i ∈ P` for each axis (finite when the complement is bounded).
    pub fn axis_intercepts(&self) -> Vec<f64> {
        match self {
            NewtonBody::Polyhedral(b) => b
                .axis_intercepts()
                .iter()
                .map(|a| a.as_ref().map_or(f64::INFINITY, rational::to_f64))
                .collect(),
            NewtonBody::HyperbolicHull(b) => vec![b.bounded_complement_radius(); 2],
            NewtonBody::Oracle(b) => (0..b.dim())
                .map(|i| {
                    let mut d = vec![0.0; b.dim()];
                    d[i] = 1.0;
                    b.ray_entry(&d)
                })
                .collect(),
        }
    }

    /// `h_P(y) = sup_{a in P} <a, y>` for `y <= 0`.
    pub fn support_value(&self, y: &Point) -> Result<f64> {
        check_dim(self.dim(), y.dim())?;
        if y.coords().iter().any(|v| *v > 0.0) {
            return Err(Error::Domain("support function is evaluated on the nonpositive orthant".into()));
        }
        Ok(self.support_value_unchecked(y.coords()))
    }

    /// Support function without validation; `-inf` coordinates are allowed.
    pub(crate) fn support_value_unchecked(&self, y: &[f64]) -> f64 {
        let v = match self {
            NewtonBody::Polyhedral(b) => b.support_value_f64(y),
            NewtonBody::HyperbolicHull(b) => b.support_value_f64(y),
            NewtonBody::Oracle(b) => b.support_value_f64(y),
        };
        v.min(0.0)
    }

    /// `inf_{x in P} <w, x>` for `w >= 0`.
    pub(crate) fn min_linear(&self, w: &[f64]) -> f64 {
        match self {
            NewtonBody::Polyhedral(b) => b.min_linear_f64(w),
            NewtonBody::HyperbolicHull(b) => b.min_linear(w),
            NewtonBody::Oracle(b) => b.min_linear(w),
        }
    }

    /// Membership; points outside the nonnegative orthant are never members.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        check_dim(self.dim(), x.dim())?;
        match self {
            NewtonBody::Polyhedral(b) => {
                let exact: Vec<Q> = x.coords().iter().map(|v| rational::from_f64(*v)).collect::<Result<_>>()?;
                b.contains_exact(&exact)
            }
            NewtonBody::HyperbolicHull(b) => b.contains(x.coords()),
            NewtonBody::Oracle(b) => b.contains(x.coords()),
        }
    }

    /// `kappa = inf{t > 0 : t (1,..,1) ∈ P}`.
    pub fn diagonal_entry(&self) -> Result<Number> {
        let k = match self {
            NewtonBody::Polyhedral(b) => Number::exact(b.diagonal_entry_exact()?),
            NewtonBody::HyperbolicHull(b) => match b.diagonal_entry() {
                (_, Some(q)) => Number::exact(q),
                (v, None) => Number::approx(v),
            },
            NewtonBody::Oracle(b) => Number::approx(b.diagonal_entry()?),
        };
        if !(k.value > 0.0) {
            return Err(Error::DiagonalMiss);
        }
        Ok(k)
    }

    /// `Psi(z) = h_P(log|z_1|^2, ..., log|z_n|^2)` from the moduli `|z_i| ∈ [0, 1)`.
    pub fn psi_eval(&self, moduli: &[f64]) -> Result<f64> {
        check_dim(self.dim(), moduli.len())?;
        if let Some(m) = moduli.iter().find(|m| !(**m >= 0.0 && **m < 1.0)) {
            return Err(Error::Domain(format!("modulus {m} is outside [0, 1)")));
        }
        let y: Vec<f64> = moduli.iter().map(|m| if *m == 0.0 { f64::NEG_INFINITY } else { 2.0 * m.ln() }).collect();
        Ok(self.support_value_unchecked(&y))
    }

    pub fn local_boundary_model(&self, base: &Point) -> Result<LocalBoundaryModel> {
        check_dim(self.dim(), base.dim())?;
        match self {
            NewtonBody::Polyhedral(b) => {
                let exact: Vec<Q> = base.coords().iter().map(|v| rational::from_f64(*v)).collect::<Result<_>>()?;
                b.local_boundary_model(&exact)
            }
            NewtonBody::HyperbolicHull(b) => b.local_boundary_model(base.coords()),
            NewtonBody::Oracle(b) => b.local_boundary_model(base.coords()),
        }
    }

    /// Local model at the diagonal entry point `kappa (1,..,1)`, using the exact
    /// `kappa` where one exists.
    pub fn diagonal_boundary_model(&self) -> Result<LocalBoundaryModel> {
        let kappa = self.diagonal_entry()?;
        match (self, &kappa.exact) {
            (NewtonBody::Polyhedral(b), Some(k)) => b.local_boundary_model(&vec![k.clone(); b.dim()]),
            _ => self.local_boundary_model(&Point::diagonal(self.dim(), kappa.value)),
        }
    }
}
