//! JSON body specifications.
//!
//! ```json
//! { "dimension": 2, "kind": "polyhedral", "generators": [[2, 0], [0, 2]] }
//! { "dimension": 2, "kind": "hyperbolic_hull", "arc": {"c": 1, "range": ["1/4", 4]}, "anchorA": 8 }
//! { "dimension": 2, "kind": "oracle", "radius": 2, "generators": [[2, 0], [0, 2]] }
//! ```
//!
//! Numbers may be JSON integers, `"p/q"` strings or JSON floats; floats are
//! converted to their exact binary value and listed in `inexact_fields`. An
//! oracle spec wraps a polyhedral or arc description and exposes it to the
//! pipeline through membership queries only.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

use super::{BodyKind, HyperbolicHull, Membership, NewtonBody, OracleBody, PolyhedralBody};

#[derive(Clone, Debug, PartialEq)]
pub struct ArcSpec {
    pub c: Q,
    pub range: (Q, Q),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BodySpec {
    pub dimension: usize,
    pub kind: BodyKind,
    pub generators: Option<Vec<Vec<Q>>>,
    pub arc: Option<ArcSpec>,
    pub anchor: Option<Q>,
    pub radius: Option<Q>,
    /// Fields that were given as JSON floats.
    pub inexact_fields: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArc {
    c: Value,
    range: [Value; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    dimension: usize,
    kind: String,
    generators: Option<Vec<Vec<Value>>>,
    arc: Option<RawArc>,
    #[serde(rename = "anchorA")]
    anchor: Option<Value>,
    radius: Option<Value>,
}

fn number(v: &Value, field: &str, inexact: &mut Vec<String>) -> Result<Q> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rational::qi(i))
            } else {
                let f = n.as_f64().ok_or_else(|| Error::Spec(format!("{field}: unsupported number")))?;
                inexact.push(field.to_string());
                rational::from_f64(f).map_err(|e| Error::Spec(format!("{field}: {e}")))
            }
        }
        Value::String(s) => rational::parse(s).map_err(|e| Error::Spec(format!("{field}: {e}"))),
        other => Err(Error::Spec(format!("{field}: expected a number or \"p/q\" string, found {other}"))),
    }
}

impl BodySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text)
            .map_err(|e| Error::Spec(format!("line {} column {}: {e}", e.line(), e.column())))?;
        let mut inexact = Vec::new();
        let kind = match raw.kind.as_str() {
            "polyhedral" => BodyKind::Polyhedral,
            "hyperbolic_hull" => BodyKind::HyperbolicHull,
            "oracle" => BodyKind::Oracle,
            k => return Err(Error::Spec(format!("kind: unknown body kind {k:?}"))),
        };
        let generators = raw
            .generators
            .map(|gs| {
                gs.iter()
                    .enumerate()
                    .map(|(i, g)| {
                        g.iter()
                            .enumerate()
                            .map(|(j, v)| number(v, &format!("generators[{i}][{j}]"), &mut inexact))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let arc = raw
            .arc
            .map(|a| -> Result<ArcSpec> {
                Ok(ArcSpec {
                    c: number(&a.c, "arc.c", &mut inexact)?,
                    range: (number(&a.range[0], "arc.range[0]", &mut inexact)?, number(&a.range[1], "arc.range[1]", &mut inexact)?),
                })
            })
            .transpose()?;
        let anchor = raw.anchor.as_ref().map(|v| number(v, "anchorA", &mut inexact)).transpose()?;
        let radius = raw.radius.as_ref().map(|v| number(v, "radius", &mut inexact)).transpose()?;
        let spec = BodySpec { dimension: raw.dimension, kind, generators, arc, anchor, radius, inexact_fields: inexact };
        spec.check_fields()?;
        Ok(spec)
    }

    fn check_fields(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Spec("dimension: must be at least 1".into()));
        }
        if let Some(gs) = &self.generators {
            if gs.is_empty() {
                return Err(Error::Spec("generators: must be nonempty".into()));
            }
            if let Some((i, g)) = gs.iter().enumerate().find(|(_, g)| g.len() != self.dimension) {
                return Err(Error::Spec(format!("generators[{i}]: has {} coordinates, dimension is {}", g.len(), self.dimension)));
            }
        }
        let has_arc = self.arc.is_some() || self.anchor.is_some();
        if has_arc && (self.arc.is_none() || self.anchor.is_none()) {
            return Err(Error::Spec("arc and anchorA must be given together".into()));
        }
        if has_arc && self.dimension != 2 {
            return Err(Error::Spec("dimension: hyperbolic hulls are planar".into()));
        }
        match self.kind {
            BodyKind::Polyhedral if self.generators.is_none() => Err(Error::Spec("generators: required for polyhedral bodies".into())),
            BodyKind::Polyhedral if has_arc => Err(Error::Spec("arc: not allowed for polyhedral bodies".into())),
            BodyKind::HyperbolicHull if !has_arc => Err(Error::Spec("arc: required for hyperbolic hulls".into())),
            BodyKind::HyperbolicHull if self.generators.is_some() => Err(Error::Spec("generators: not allowed for hyperbolic hulls".into())),
            BodyKind::Oracle if self.radius.is_none() => Err(Error::Spec("radius: required for oracle bodies".into())),
            BodyKind::Oracle if self.generators.is_some() == has_arc => {
                Err(Error::Spec("oracle bodies wrap exactly one of generators or arc/anchorA".into()))
            }
            _ => Ok(()),
        }
    }

    /// Validated body. The bounded-complement requirement is left to the
    /// analyses that need it.
    pub fn build(&self) -> Result<NewtonBody> {
        let exact = self.build_exact()?;
        match self.kind {
            BodyKind::Oracle => {
                let radius = rational::to_f64(self.radius.as_ref().expect("checked"));
                let membership: Membership = match exact {
                    NewtonBody::Polyhedral(p) => {
                        let facets: Vec<(Vec<f64>, f64)> =
                            p.facets().iter().map(|f| (f.normal_f64(), rational::to_f64(&f.offset))).collect();
                        Arc::new(move |x: &[f64]| {
                            x.iter().all(|v| *v >= 0.0)
                                && facets.iter().all(|(a, s)| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() >= *s)
                        })
                    }
                    NewtonBody::HyperbolicHull(h) => Arc::new(move |x: &[f64]| h.contains(x).unwrap_or(false)),
                    NewtonBody::Oracle(_) => unreachable!("inner description is exact"),
                };
                Ok(OracleBody::new(self.dimension, radius, membership)?.into())
            }
            _ => Ok(exact),
        }
    }

    fn build_exact(&self) -> Result<NewtonBody> {
        if let Some(gs) = &self.generators {
            return Ok(PolyhedralBody::new(gs.clone())?.into());
        }
        let arc = self.arc.as_ref().expect("checked");
        let anchor = self.anchor.clone().expect("checked");
        Ok(HyperbolicHull::new(arc.c.clone(), arc.range.0.clone(), arc.range.1.clone(), anchor)?.into())
    }

    /// Canonical JSON with every number as an exact rational string.
    pub fn to_json(&self) -> Value {
        let s = |q: &Q| Value::String(rational::format(q));
        let mut v = json!({
            "dimension": self.dimension,
            "kind": match self.kind {
                BodyKind::Polyhedral => "polyhedral",
                BodyKind::HyperbolicHull => "hyperbolic_hull",
                BodyKind::Oracle => "oracle",
            },
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(gs) = &self.generators {
            obj.insert("generators".into(), Value::Array(gs.iter().map(|g| Value::Array(g.iter().map(s).collect())).collect()));
        }
        if let Some(a) = &self.arc {
            obj.insert("arc".into(), json!({"c": s(&a.c), "range": [s(&a.range.0), s(&a.range.1)]}));
        }
        if let Some(a) = &self.anchor {
            obj.insert("anchorA".into(), s(a));
        }
        if let Some(r) = &self.radius {
            obj.insert("radius".into(), s(r));
        }
        v
    }
}
