//! Slice profiles `b -> g(b)` on a geometric grid approaching 0.

use std::fmt::Write;

use serde::Serialize;

use crate::error::Result;
use crate::newton_body::BodyKind;
use crate::rational::Q;

use super::{PolarBody, SliceOptions};

#[derive(Clone, Debug, Serialize)]
pub struct SliceValue {
    pub b: f64,
    pub g: f64,
    pub exact: bool,
    /// Standard error of a sampled value, or the bisection tolerance of a
    /// numeric one; absent for exact values.
    pub stderr: Option<f64>,
    /// Exact first-coordinates volume `g / sqrt(n)` on polyhedral paths.
    #[serde(skip)]
    pub(crate) projected: Option<Q>,
    /// Endpoints of a planar slice segment.
    #[serde(skip)]
    pub(crate) endpoints: Option<(Vec<f64>, Vec<f64>)>,
}

/// `b_k = -2^-k` for `k = 3..=20`, increasing toward 0.
pub fn b_grid() -> Vec<f64> {
    (3..=20).map(|k| -(0.5f64.powi(k))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceProfile {
    pub dim: usize,
    pub kind: BodyKind,
    /// Strictly increasing in `b`.
    pub entries: Vec<SliceValue>,
}

impl SliceProfile {
    /// Slices at the given offsets, evaluated independently and sorted by `b`.
    pub fn build(polar: &PolarBody, offsets: &[f64], opts: &SliceOptions) -> Result<Self> {
        let mut bs = offsets.to_vec();
        bs.sort_by(|x, y| x.partial_cmp(y).expect("finite offsets"));
        bs.dedup();
        let inner = SliceOptions { exec: crate::exec::Execution::Sequential, ..*opts };
        let entries = opts.exec.map_slice(&bs, |b| polar.slice(*b, &inner)).into_iter().collect::<Result<Vec<_>>>()?;
        Ok(SliceProfile { dim: polar.dim(), kind: polar.source().kind(), entries })
    }

    /// [`b_grid`] followed by `b = 0`.
    pub fn standard(polar: &PolarBody, opts: &SliceOptions) -> Result<Self> {
        let mut bs = b_grid();
        bs.push(0.0);
        Self::build(polar, &bs, opts)
    }

    pub fn at(&self, b: f64) -> Option<&SliceValue> {
        self.entries.iter().find(|e| e.b == b)
    }

    pub fn g0(&self) -> Option<&SliceValue> {
        self.at(0.0)
    }

    /// `(b, h(b)/b)` for `b < 0`, with `h(b) = -g(b)^(1/(n-1))`.
    pub fn slope_ratios(&self) -> Vec<(f64, f64)> {
        let p = 1.0 / (self.dim as f64 - 1.0);
        self.entries.iter().filter(|e| e.b < 0.0).map(|e| (e.b, e.g.powf(p) / -e.b)).collect()
    }

    /// `b,g_b,exact_flag,stderr`, one row per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("b,g_b,exact_flag,stderr\n");
        for e in &self.entries {
            let se = e.stderr.filter(|_| !e.exact).map(|s| format!("{s:e}")).unwrap_or_default();
            writeln!(out, "{:e},{:e},{},{}", e.b, e.g, e.exact, se).expect("string write");
        }
        out
    }
}
