//! Points, valuation weights and supporting hyperplanes.

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// A point of exponent space. Coordinates are finite.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("a point needs at least one coordinate".into()));
        }
        if let Some(x) = coords.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("non-finite coordinate {x}")));
        }
        Ok(Point(coords))
    }

    pub fn diagonal(n: usize, t: f64) -> Self {
        Point(vec![t; n])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Weight of a monomial valuation. Also used as the inward normal of a
/// supporting hyperplane, in which case it is normalized to coordinate sum 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    coords: Vec<f64>,
    exact: Option<Vec<Q>>,
}

impl Weight {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|a| !a.is_finite() || *a < 0.0) || coords.iter().all(|a| *a == 0.0) {
            return Err(Error::InvalidWeight);
        }
        Ok(Weight { coords, exact: None })
    }

    pub fn exact(coords: Vec<Q>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|a| a.is_negative()) || coords.iter().all(|a| a.is_zero()) {
            return Err(Error::InvalidWeight);
        }
        Ok(Weight { coords: coords.iter().map(rational::to_f64).collect(), exact: Some(coords) })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn exact_coords(&self) -> Option<&[Q]> {
        self.exact.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Log discrepancy of the monomial valuation: the coordinate sum.
    pub fn log_discrepancy(&self) -> f64 {
        match &self.exact {
            Some(e) => rational::to_f64(&rational::sum(e)),
            None => self.coords.iter().sum(),
        }
    }

    pub fn normalized(&self) -> Weight {
        match &self.exact {
            Some(e) => {
                let s = rational::sum(e);
                Weight::exact(e.iter().map(|a| a / &s).collect()).expect("normalization keeps validity")
            }
            None => {
                let s: f64 = self.coords.iter().sum();
                Weight { coords: self.coords.iter().map(|a| a / s).collect(), exact: None }
            }
        }
    }

    pub fn scaled(&self, lambda: f64) -> Result<Weight> {
        Weight::new(self.coords.iter().map(|a| a * lambda).collect())
    }

    /// Equal up to `tol` in every coordinate (exactly, when both are exact).
    pub fn approx_eq(&self, other: &Weight, tol: f64) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.coords.len() == other.coords.len()
                && self.coords.iter().zip(&other.coords).all(|(a, b)| (a - b).abs() <= tol),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Weight", 2)?;
        st.serialize_field("value", &self.coords)?;
        st.serialize_field(
            "exact",
            &self.exact.as_ref().map(|e| e.iter().map(rational::format).collect::<Vec<_>>()),
        )?;
        st.end()
    }
}

/// Exact hyperplane `{x : <normal, x> = offset}` with `normal >= 0` summing to 1.
/// As a facet of a Newton body it stands for the halfspace `<normal, x> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<Q>,
    pub offset: Q,
}

impl Hyperplane {
    pub fn value(&self, x: &[Q]) -> Q {
        rational::dot(&self.normal, x)
    }

    /// `<normal, x> - offset`; nonnegative on the body.
    pub fn slack(&self, x: &[Q]) -> Q {
        self.value(x) - &self.offset
    }

    pub fn weight(&self) -> Weight {
        Weight::exact(self.normal.clone()).expect("facet normals are valid weights")
    }

    pub fn normal_f64(&self) -> Vec<f64> {
        self.normal.iter().map(rational::to_f64).collect()
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Hyperplane", 2)?;
        st.serialize_field("normal", &self.normal.iter().map(rational::format).collect::<Vec<_>>())?;
        st.serialize_field("offset", &rational::format(&self.offset))?;
        st.end()
    }
}

/// A real number together with its exact rational value when one is known.
#[derive(Clone, Debug, PartialEq)]
pub struct Number {
    pub value: f64,
    pub exact: Option<Q>,
}

impl Number {
    pub fn exact(q: Q) -> Self {
        Number { value: rational::to_f64(&q), exact: Some(q) }
    }

    pub fn approx(value: f64) -> Self {
        Number { value, exact: None }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Number", 2)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("exact", &self.exact.as_ref().map(rational::format))?;
        st.end()
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
