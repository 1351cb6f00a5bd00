//! Discrete motion planners: 1-Lipschitz choices of `r`-paths between pairs of points.
//!
//! A planner on a patch `U ⊆ X × X` assigns to every `(x, y) ∈ U` an `r`-path
//! of a common length `m` from `x` to `y`, such that paths of nearby pairs are
//! uniformly close: `max_i d(P(x,y)(i), P(x',y')(i)) ≤ d(x,x') + d(y,y')`.

mod search;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::category::{glued_path, CategoricalCertificate, ContractibilityCertificate};
use crate::homotopy::HomotopyGrid;
use crate::metric::{FiniteMetricSpace, ProductSpace};
use crate::paths::{is_r_path, shortest_r_path};

pub use search::{search_patch_planner, search_planner_cover, PatchSearch, PatchSearchOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct MotionPlanner {
    pub r: f64,
    pub m: usize,
    /// The patch, as explicit pairs.
    pub domain: Vec<(usize, usize)>,
    /// `paths[k]` is the path for `domain[k]`, with `m + 1` points.
    pub paths: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlannerViolation {
    #[error("planner has no pairs")]
    Empty,
    #[error("domain and path table have different sizes")]
    TableSize,
    #[error("pair ({x}, {y}) appears twice")]
    DuplicatePair { x: usize, y: usize },
    #[error("pair ({x}, {y}) mentions a point outside the space")]
    UnknownPoint { x: usize, y: usize },
    #[error("path for ({x}, {y}) has {len} steps, expected {m}")]
    Length { x: usize, y: usize, len: usize, m: usize },
    #[error("path for ({x}, {y}) does not run from {x} to {y}")]
    Section { x: usize, y: usize },
    #[error("path for ({x}, {y}) is not an r-path at step {index}")]
    Step { x: usize, y: usize, index: usize },
    #[error("paths for {first:?} and {second:?} are {distance} apart, more than {bound}")]
    NotLipschitz { first: (usize, usize), second: (usize, usize), distance: f64, bound: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlannerError {
    #[error("planner domain is not all of X × X")]
    NotFullDomain,
    #[error("no r-path joins {from} and {to}")]
    MissingBridge { from: usize, to: usize },
    #[error("categorical certificate is not over the product space")]
    NotAProductCertificate,
    #[error(transparent)]
    Invalid(#[from] PlannerViolation),
}

impl MotionPlanner {
    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn path(&self, x: usize, y: usize) -> Option<&[usize]> {
        self.domain.iter().position(|&p| p == (x, y)).map(|k| self.paths[k].as_slice())
    }

    /// Pair → position in the table.
    pub fn index(&self) -> HashMap<(usize, usize), usize> {
        self.domain.iter().enumerate().map(|(k, &p)| (p, k)).collect()
    }

    /// Pads every path with its end point up to `m` steps.
    pub fn padded(&self, m: usize) -> MotionPlanner {
        let m = m.max(self.m);
        let paths = self
            .paths
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.resize(m + 1, *p.last().expect("non-empty path"));
                p
            })
            .collect();
        MotionPlanner { r: self.r, m, domain: self.domain.clone(), paths }
    }

    /// The same table read at another scale, unchecked.
    pub fn with_scale(&self, r: f64) -> MotionPlanner {
        MotionPlanner { r, ..self.clone() }
    }
}

/// Checks the section property, the `r`-path property and 1-Lipschitzness
/// over every pair of pairs. The reported witness is the first in table order.
pub fn verify_planner(space: &FiniteMetricSpace, p: &MotionPlanner) -> Result<(), PlannerViolation> {
    if p.domain.is_empty() {
        return Err(PlannerViolation::Empty);
    }
    if p.domain.len() != p.paths.len() {
        return Err(PlannerViolation::TableSize);
    }
    let n = space.len();
    let mut seen = HashMap::with_capacity(p.domain.len());
    for (k, (&(x, y), path)) in p.domain.iter().zip(&p.paths).enumerate() {
        if x >= n || y >= n {
            return Err(PlannerViolation::UnknownPoint { x, y });
        }
        if seen.insert((x, y), k).is_some() {
            return Err(PlannerViolation::DuplicatePair { x, y });
        }
        if path.len() != p.m + 1 {
            return Err(PlannerViolation::Length { x, y, len: path.len().saturating_sub(1), m: p.m });
        }
        if path[0] != x || path[p.m] != y {
            return Err(PlannerViolation::Section { x, y });
        }
        if let Err(e) = is_r_path(space, path, p.r) {
            let index = match e {
                crate::paths::PathError::StepTooLong { index, .. } => index,
                _ => 0,
            };
            if matches!(e, crate::paths::PathError::UnknownPoint(_)) {
                return Err(PlannerViolation::UnknownPoint { x, y });
            }
            return Err(PlannerViolation::Step { x, y, index });
        }
    }
    let found = (0..p.domain.len()).into_par_iter().find_map_first(|a| {
        let (x, y) = p.domain[a];
        let pa = &p.paths[a];
        (a + 1..p.domain.len()).find_map(|b| {
            let (x2, y2) = p.domain[b];
            let bound = space.d(x, x2) + space.d(y, y2);
            let pb = &p.paths[b];
            let distance = pa.iter().zip(pb).map(|(&u, &v)| space.d(u, v)).fold(0.0, f64::max);
            (!space.le(distance, bound)).then_some(PlannerViolation::NotLipschitz {
                first: (x, y),
                second: (x2, y2),
                distance,
                bound,
            })
        })
    });
    match found {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn full_domain(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
}

/// The full-domain planner of length `2m` that runs `x` down the contraction
/// to the basepoint and then back up the contraction to `y`.
pub fn synthesize_from_contraction(space: &FiniteMetricSpace, c: &ContractibilityCertificate) -> MotionPlanner {
    let domain = full_domain(space.len());
    let paths = domain.par_iter().map(|&(x, y)| glued_path(c, x, y)).collect();
    MotionPlanner { r: c.r, m: 2 * c.grid.m(), domain, paths }
}

/// The contraction `F(x, i) = P(a, x)(m - i)`: planned paths out of `a`, run backwards.
pub fn contraction_from_planner(
    space: &FiniteMetricSpace,
    p: &MotionPlanner,
    a: usize,
) -> Result<ContractibilityCertificate, PlannerError> {
    let n = space.len();
    if p.domain.len() != n * n || a >= n {
        return Err(PlannerError::NotFullDomain);
    }
    let index = p.index();
    if index.len() != n * n {
        return Err(PlannerError::NotFullDomain);
    }
    let rows: Vec<&Vec<usize>> = (0..n).map(|x| &p.paths[index[&(a, x)]]).collect();
    if rows.iter().any(|path| path.len() != p.m + 1) {
        return Err(PlannerViolation::Length { x: a, y: 0, len: 0, m: p.m }.into());
    }
    let frames = (0..=p.m).rev().map(|i| rows.iter().map(|path| path[i]).collect()).collect();
    Ok(ContractibilityCertificate { r: p.r, basepoint: a, grid: HomotopyGrid::new(1.0, p.r, frames) })
}

/// Planner on a categorical patch `V ⊆ X × X`: follow the first coordinate of
/// the null-homotopy to `x0`, cross to `x0'` along a shortest `r`-path, then
/// run the second coordinate back to `y`. Length `2m + k`.
pub fn planner_from_categorical_patch(
    space: &FiniteMetricSpace,
    product: &ProductSpace,
    cert: &CategoricalCertificate,
) -> Result<MotionPlanner, PlannerError> {
    if product.left_len() != space.len() || product.right_len() != space.len() {
        return Err(PlannerError::NotAProductCertificate);
    }
    let m = cert.grid.m();
    let (x0, x1) = product.split(cert.target());
    let bridge =
        shortest_r_path(space, cert.r, x0, x1).map_err(|_| PlannerError::MissingBridge { from: x0, to: x1 })?;
    let bridge = bridge.points();
    let mut domain = Vec::with_capacity(cert.subset.len());
    let mut paths = Vec::with_capacity(cert.subset.len());
    for (k, &v) in cert.subset.iter().enumerate() {
        domain.push(product.split(v));
        let mut path: Vec<usize> = (0..=m).map(|i| product.split(cert.grid.frames[i][k]).0).collect();
        path.extend_from_slice(&bridge[1..]);
        path.extend((0..m).rev().map(|i| product.split(cert.grid.frames[i][k]).1));
        paths.push(path);
    }
    Ok(MotionPlanner { r: cert.r, m: 2 * m + bridge.len() - 1, domain, paths })
}

/// `A × B` is categorical in `X × X` when `A` and `B` are: contract the first
/// factor with the second held fixed, then the second.
pub fn product_categorical(
    product: &ProductSpace,
    a: &CategoricalCertificate,
    b: &CategoricalCertificate,
) -> CategoricalCertificate {
    let subset: Vec<usize> = a
        .subset
        .iter()
        .flat_map(|&u| b.subset.iter().map(move |&v| (u, v)))
        .map(|(u, v)| product.index(u, v))
        .collect();
    let nb = b.subset.len();
    let mut frames = Vec::with_capacity(a.grid.m() + b.grid.m() + 1);
    for fa in &a.grid.frames {
        frames.push((0..subset.len()).map(|k| product.index(fa[k / nb], b.subset[k % nb])).collect());
    }
    let ca = a.target();
    for fb in &b.grid.frames[1..] {
        frames.push((0..subset.len()).map(|k| product.index(ca, fb[k % nb])).collect());
    }
    let r = a.r.max(b.r);
    CategoricalCertificate { r, subset, grid: HomotopyGrid::new(1.0, r, frames) }
}

/// Pads every planner to the longest length among them.
pub fn normalize_lengths(planners: &[MotionPlanner]) -> Vec<MotionPlanner> {
    let m = planners.iter().map(|p| p.m).max().unwrap_or(0);
    planners.iter().map(|p| p.padded(m)).collect()
}
