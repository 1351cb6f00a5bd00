//! Lipschitz maps between finite spaces.
//!
//! A map is a dense table `x ↦ f(x)` of point indices. The spaces are passed
//! alongside the table wherever distances are needed.

use thiserror::Error;

use crate::metric::FiniteMetricSpace;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("map table has {len} entries but the domain has {expected} points")]
    PartialMap { len: usize, expected: usize },
    #[error("f({x}) = {image} is not a point of the codomain")]
    OutOfRange { x: usize, image: usize },
    #[error("d(f({x}), f({y})) = {image_distance} exceeds {s} * d({x},{y}) = {bound}")]
    NotLipschitz { x: usize, y: usize, image_distance: f64, s: f64, bound: f64 },
    #[error("maps have different domains or codomains")]
    DomainMismatch,
}

/// An `s`-Lipschitz map, stored as its table of images.
#[derive(Debug, Clone, PartialEq)]
pub struct LipMap {
    pub s: f64,
    pub table: Vec<usize>,
    pub codomain_len: usize,
}

impl LipMap {
    pub fn new(table: Vec<usize>, codomain_len: usize, s: f64) -> Self {
        Self { s, table, codomain_len }
    }

    pub fn identity(n: usize) -> Self {
        Self { s: 1.0, table: (0..n).collect(), codomain_len: n }
    }

    /// The constant map to `p`; it is `s`-Lipschitz for every `s >= 0`.
    pub fn constant(domain_len: usize, codomain_len: usize, p: usize) -> Self {
        Self { s: 0.0, table: vec![p; domain_len], codomain_len }
    }

    /// Inclusion of the subspace on `subset` into the ambient space.
    pub fn inclusion(subset: &[usize], ambient_len: usize) -> Self {
        Self { s: 1.0, table: subset.to_vec(), codomain_len: ambient_len }
    }

    pub fn domain_len(&self) -> usize {
        self.table.len()
    }

    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    pub fn verify(&self, domain: &FiniteMetricSpace, codomain: &FiniteMetricSpace) -> Result<(), MapError> {
        if codomain.len() != self.codomain_len {
            return Err(MapError::DomainMismatch);
        }
        is_lipschitz(domain, codomain, &self.table, self.s)
    }
}

/// Exhaustive pairwise check of `d(f(x), f(y)) <= s·d(x, y)`.
pub fn is_lipschitz(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    table: &[usize],
    s: f64,
) -> Result<(), MapError> {
    if table.len() != domain.len() {
        return Err(MapError::PartialMap { len: table.len(), expected: domain.len() });
    }
    if let Some((x, &image)) = table.iter().enumerate().find(|(_, &y)| y >= codomain.len()) {
        return Err(MapError::OutOfRange { x, image });
    }
    for x in 0..table.len() {
        for y in x + 1..table.len() {
            let image_distance = codomain.d(table[x], table[y]);
            let bound = s * domain.d(x, y);
            if !codomain.le(image_distance, bound) {
                return Err(MapError::NotLipschitz { x, y, image_distance, s, bound });
            }
        }
    }
    Ok(())
}

/// `max_x d(f(x), g(x))`.
pub fn map_uniform_distance(codomain: &FiniteMetricSpace, f: &[usize], g: &[usize]) -> Result<f64, MapError> {
    if f.len() != g.len() {
        return Err(MapError::DomainMismatch);
    }
    if let Some((x, &image)) = f.iter().chain(g).enumerate().find(|(_, &y)| y >= codomain.len()) {
        return Err(MapError::OutOfRange { x: x % f.len().max(1), image });
    }
    Ok(f.iter().zip(g).map(|(&a, &b)| codomain.d(a, b)).fold(0.0, f64::max))
}

/// `f ∘ g`, with Lipschitz constant `s_f · s_g`.
pub fn compose(f: &LipMap, g: &LipMap) -> Result<LipMap, MapError> {
    if g.codomain_len != f.table.len() {
        return Err(MapError::DomainMismatch);
    }
    Ok(LipMap { s: f.s * g.s, table: g.table.iter().map(|&y| f.table[y]).collect(), codomain_len: f.codomain_len })
}
