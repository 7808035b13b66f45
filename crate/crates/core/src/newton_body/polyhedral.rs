//! Polyhedral Newton bodies `conv(G) + R^n_{>=0}` with an exact dual description.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{check_dim, dot, Hyperplane, Weight};
use crate::rational::{self, Q};

use super::LocalBoundaryModel;

#[derive(Clone, Debug)]
pub struct PolyhedralBody {
    dim: usize,
    generators: Vec<Vec<Q>>,
    generators_f64: Vec<Vec<f64>>,
    facets: Vec<Hyperplane>,
}

impl PolyhedralBody {
    /// Builds the body, deduplicating generators, dropping those already
    /// covered by the others and computing the facet description.
    pub fn new(generators: Vec<Vec<Q>>) -> Result<Self> {
        let dim = generators.first().map(Vec::len).ok_or_else(|| Error::InvalidBody("no generators".into()))?;
        if dim == 0 {
            return Err(Error::InvalidBody("dimension must be at least 1".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            check_dim(dim, g.len())?;
            if let Some(j) = g.iter().position(Signed::is_negative) {
                return Err(Error::InvalidBody(format!(
                    "generators[{i}][{j}] is negative; generators must lie in the nonnegative orthant"
                )));
            }
            if g.iter().all(Zero::is_zero) {
                return Err(Error::InvalidBody("the origin as a generator makes the body the whole orthant".into()));
            }
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let mut i = 0;
        while i < gens.len() && gens.len() > 1 {
            let others: Vec<Vec<Q>> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let facets = enumerate_facets(dim, &others);
            if contains_with(&facets, &gens[i]) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        let facets = enumerate_facets(dim, &gens);
        let generators_f64 = gens.iter().map(|g| g.iter().map(rational::to_f64).collect()).collect();
        Ok(PolyhedralBody { dim, generators: gens, generators_f64, facets })
    }

    pub fn from_integers(generators: &[&[i64]]) -> Result<Self> {
        Self::new(generators.iter().map(|g| g.iter().map(|&v| rational::qi(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The irredundant generators, sorted.
    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    pub fn generators_f64(&self) -> &[Vec<f64>] {
        &self.generators_f64
    }

    /// Facets `<a, x> >= s` with `s > 0`; together with the orthant they cut out the body.
    pub fn facets(&self) -> &[Hyperplane] {
        &self.facets
    }

    /// Smallest `t` with `t e_i` in the body, per axis. `None` when the axis never enters.
    pub fn axis_intercepts(&self) -> Vec<Option<Q>> {
        (0..self.dim)
            .map(|i| {
                self.generators
                    .iter()
                    .filter(|g| g.iter().enumerate().all(|(j, v)| j == i || v.is_zero()))
                    .map(|g| g[i].clone())
                    .min()
            })
            .collect()
    }

    /// Smallest `R` such that any point with a coordinate `>= R` is a member,
    /// or `None` when the complement is unbounded.
    pub fn bounded_complement_radius(&self) -> Option<Q> {
        self.axis_intercepts().into_iter().try_fold(Q::zero(), |acc, a| a.map(|a| acc.max(a)))
    }

    pub fn contains_exact(&self, x: &[Q]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(x.iter().all(|v| !v.is_negative()) && contains_with(&self.facets, x))
    }

    pub fn support_value_exact(&self, y: &[Q]) -> Result<Q> {
        check_dim(self.dim, y.len())?;
        if y.iter().any(Signed::is_positive) {
            return Err(Error::Domain("support function is evaluated on the nonpositive orthant".into()));
        }
        Ok(self.generators.iter().map(|g| rational::dot(g, y)).max().expect("nonempty"))
    }

    /// Float support function; coordinates equal to `-inf` restrict the
    /// maximum to generators vanishing there.
    pub(crate) fn support_value_f64(&self, y: &[f64]) -> f64 {
        self.generators_f64
            .iter()
            .map(|g| {
                g.iter().zip(y).fold(0.0, |acc, (gi, yi)| if *gi == 0.0 { acc } else { acc + gi * yi })
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `inf_{x in P} <w, x>` for `w >= 0`, attained at a generator.
    pub fn min_linear_exact(&self, w: &[Q]) -> Q {
        self.generators.iter().map(|g| rational::dot(g, w)).min().expect("nonempty")
    }

    pub(crate) fn min_linear_f64(&self, w: &[f64]) -> f64 {
        self.generators_f64.iter().map(|g| dot(g, w)).fold(f64::INFINITY, f64::min)
    }

    /// `kappa = inf{t : t(1,..,1) in P}`, the largest facet offset.
    pub fn diagonal_entry_exact(&self) -> Result<Q> {
        self.facets.iter().map(|f| f.offset.clone()).max().ok_or(Error::DiagonalMiss)
    }

    /// Facets whose hyperplane passes through `x`.
    pub fn facets_through(&self, x: &[Q]) -> Vec<&Hyperplane> {
        self.facets.iter().filter(|f| f.slack(x).is_zero()).collect()
    }

    pub fn local_boundary_model(&self, base: &[Q]) -> Result<LocalBoundaryModel> {
        if !self.contains_exact(base)? {
            return Err(Error::NotOnBoundary("base point is outside the body".into()));
        }
        let mut tight: Vec<Weight> = self.facets_through(base).into_iter().map(Hyperplane::weight).collect();
        let mut slack_dist = Vec::new();
        for f in &self.facets {
            let s = f.slack(base);
            if !s.is_zero() {
                slack_dist.push(rational::to_f64(&s) / crate::geometry::norm(&f.normal_f64()));
            }
        }
        for (i, v) in base.iter().enumerate() {
            if v.is_zero() {
                let mut e = vec![Q::zero(); self.dim];
                e[i] = rational::qi(1);
                tight.push(Weight::exact(e).expect("unit vector"));
            } else {
                slack_dist.push(rational::to_f64(v));
            }
        }
        match tight.len() {
            0 => Err(Error::NotOnBoundary("base point is interior".into())),
            1 => {
                let nearest = slack_dist.into_iter().fold(f64::INFINITY, f64::min);
                Ok(LocalBoundaryModel::Facet { normal: tight.pop().expect("one"), radius: 0.5 * nearest })
            }
            _ => Ok(LocalBoundaryModel::Corner { normals: tight }),
        }
    }

    /// The same body with every generator multiplied by `lambda > 0`.
    pub fn dilated(&self, lambda: &Q) -> Result<Self> {
        Self::new(self.generators.iter().map(|g| g.iter().map(|v| v * lambda).collect()).collect())
    }
}

fn contains_with(facets: &[Hyperplane], x: &[Q]) -> bool {
    facets.iter().all(|f| !f.slack(x).is_negative())
}

/// Facets of `conv(gens) + R^n_{>=0}` with positive offset.
///
/// A facet hyperplane is spanned by `k` affinely independent generators and
/// `n - k` coordinate directions of the recession cone, so every such choice
/// is tried and the resulting normal kept when it supports all generators.
pub(crate) fn enumerate_facets(dim: usize, gens: &[Vec<Q>]) -> Vec<Hyperplane> {
    let mut out: Vec<Hyperplane> = Vec::new();
    for k in 1..=dim.min(gens.len()) {
        for gsel in rational::combinations(gens.len(), k) {
            for dsel in rational::combinations(dim, dim - k) {
                let base = &gens[gsel[0]];
                let mut rows: Vec<Vec<Q>> = gsel[1..]
                    .iter()
                    .map(|&j| gens[j].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                for &i in &dsel {
                    let mut e = vec![Q::zero(); dim];
                    e[i] = rational::qi(1);
                    rows.push(e);
                }
                let Some(mut a) = rational::kernel_line(&rows, dim) else { continue };
                let total = rational::sum(&a);
                if total.is_zero() {
                    continue;
                }
                if total.is_negative() {
                    a.iter_mut().for_each(|v| *v = -v.clone());
                }
                if a.iter().any(Signed::is_negative) {
                    continue;
                }
                let total = rational::sum(&a);
                a.iter_mut().for_each(|v| *v = &*v / &total);
                let offset = rational::dot(&a, base);
                if !offset.is_positive() {
                    continue;
                }
                if gens.iter().any(|g| rational::dot(&a, g) < offset) {
                    continue;
                }
                let h = Hyperplane { normal: a, offset };
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
    }
    out.sort();
    out
}
