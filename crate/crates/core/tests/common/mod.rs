#![allow(dead_code)]

use ohsawa_core::rational::{qi, Q};
use ohsawa_core::{NewtonBody, PolyhedralBody};
use proptest::prelude::*;

/// Axis points `a_i e_i` plus a few interior generators, so the complement is bounded.
pub fn generators(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let axes = proptest::collection::vec(1i64..9, n);
    let extra = proptest::collection::vec(proptest::collection::vec(0i64..7, n), 0..4);
    (axes, extra).prop_map(move |(axes, extra)| {
        let mut gens: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut g = vec![0; n];
                g[i] = axes[i];
                g
            })
            .collect();
        gens.extend(extra.into_iter().filter(|g| g.iter().any(|v| *v != 0)));
        gens
    })
}

pub fn to_q(gens: &[Vec<i64>]) -> Vec<Vec<Q>> {
    gens.iter().map(|g| g.iter().map(|v| qi(*v)).collect()).collect()
}

pub fn polyhedral(gens: &[Vec<i64>]) -> PolyhedralBody {
    PolyhedralBody::new(to_q(gens)).unwrap()
}

pub fn body(gens: &[Vec<i64>]) -> NewtonBody {
    polyhedral(gens).into()
}

/// The same body dilated so that `kappa = 1`.
pub fn unit_body(gens: &[Vec<i64>]) -> NewtonBody {
    let p = polyhedral(gens);
    let kappa = p.diagonal_entry_exact().unwrap();
    p.dilated(&(Q::from_integer(1.into()) / kappa)).unwrap().into()
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

pub fn body_2_or_3() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop_oneof![generators(2), generators(3)]
}
