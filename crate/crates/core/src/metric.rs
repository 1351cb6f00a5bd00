//! Finite metric spaces and the metrics derived from them.
//!
//! Every other module works over a [`FiniteMetricSpace`]: a list of labelled
//! points together with a validated distance matrix. Points are addressed by
//! their index, which is also the label order used for all tie-breaking.

use std::collections::HashMap;
use std::f64::consts::PI;

use thiserror::Error;

/// Tolerance used for every `<=` comparison against a scale or a Lipschitz bound.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("a metric space needs at least one point")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("{labels} labels given for {points} points")]
    LabelCount { labels: usize, points: usize },
    #[error("label {0:?} appears more than once")]
    DuplicateLabel(String),
    #[error("distance d({i},{j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("negative distance d({i},{j}) = {value}")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("d({i},{i}) = {value}, expected 0")]
    NonZeroDiagonal { i: usize, value: f64 },
    #[error("asymmetric distances: d({i},{j}) = {forward} but d({j},{i}) = {backward}")]
    Asymmetry { i: usize, j: usize, forward: f64, backward: f64 },
    #[error("distinct points {i} and {j} are at distance zero")]
    ZeroDistanceDistinctPoints { i: usize, j: usize },
    #[error("triangle inequality fails: d({from},{to}) > d({from},{via}) + d({via},{to})")]
    TriangleViolation { from: usize, to: usize, via: usize },
    #[error("coordinate rows have mismatched dimensions")]
    DimensionMismatch,
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}

/// A finite set of labelled points with a validated metric.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    n: usize,
    eps: f64,
    index: HashMap<String, usize>,
}

impl FiniteMetricSpace {
    /// Validates `matrix` and builds a space whose points are labelled `p0, p1, ...`.
    pub fn from_matrix(matrix: &[Vec<f64>]) -> Result<Self, MetricError> {
        let labels = (0..matrix.len()).map(|i| format!("p{i}")).collect();
        Self::new(labels, matrix)
    }

    /// Validates a labelled distance matrix.
    ///
    /// Symmetry, the zero diagonal and the triangle inequality are checked up
    /// to [`DEFAULT_EPS`]; the stored matrix is made exactly symmetric by
    /// copying the upper triangle.
    pub fn new(labels: Vec<String>, matrix: &[Vec<f64>]) -> Result<Self, MetricError> {
        let n = matrix.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if labels.len() != n {
            return Err(MetricError::LabelCount { labels: labels.len(), points: n });
        }
        for (row, values) in matrix.iter().enumerate() {
            if values.len() != n {
                return Err(MetricError::NotSquare { row, len: values.len(), expected: n });
            }
        }
        let eps = DEFAULT_EPS;
        for i in 0..n {
            for j in 0..n {
                let v = matrix[i][j];
                if !v.is_finite() {
                    return Err(MetricError::NonFinite { i, j });
                }
                if v < 0.0 {
                    return Err(MetricError::NegativeDistance { i, j, value: v });
                }
            }
        }
        for i in 0..n {
            if matrix[i][i] > eps {
                return Err(MetricError::NonZeroDiagonal { i, value: matrix[i][i] });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if (matrix[i][j] - matrix[j][i]).abs() > eps {
                    return Err(MetricError::Asymmetry { i, j, forward: matrix[i][j], backward: matrix[j][i] });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] <= eps {
                    return Err(MetricError::ZeroDistanceDistinctPoints { i, j });
                }
            }
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                dist[i * n + j] = matrix[i][j];
                dist[j * n + i] = matrix[i][j];
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    if dist[i * n + j] > dist[i * n + k] + dist[k * n + j] + eps {
                        return Err(MetricError::TriangleViolation { from: i, to: j, via: k });
                    }
                }
            }
        }
        Self::assemble(labels, dist, eps)
    }

    /// Builds a space from points of ℝᵈ with the Euclidean metric.
    pub fn from_euclidean(labels: Vec<String>, coords: &[Vec<f64>]) -> Result<Self, MetricError> {
        let n = coords.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        let dim = coords[0].len();
        if coords.iter().any(|c| c.len() != dim) {
            return Err(MetricError::DimensionMismatch);
        }
        let matrix: Vec<Vec<f64>> = coords.iter().map(|a| coords.iter().map(|b| euclidean(a, b)).collect()).collect();
        Self::new(labels, &matrix)
    }

    /// Trusted constructor for matrices that are metric by construction.
    pub(crate) fn from_parts(labels: Vec<String>, dist: Vec<f64>) -> Self {
        Self::assemble(labels, dist, DEFAULT_EPS).expect("labels are unique by construction")
    }

    fn assemble(labels: Vec<String>, dist: Vec<f64>, eps: f64) -> Result<Self, MetricError> {
        let n = labels.len();
        debug_assert_eq!(dist.len(), n * n);
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(MetricError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels, dist, n, eps, index })
    }

    /// The one-point space.
    pub fn point(label: &str) -> Self {
        Self::from_parts(vec![label.to_string()], vec![0.0])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Row `i` of the distance matrix.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `a <= b` up to the comparison tolerance.
    #[inline]
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.eps
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points, or `None` for a single point.
    pub fn min_positive_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let v = self.d(i, j);
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        best
    }

    /// The distinct values of the metric (zero included), ascending, merged up to `eps`.
    pub fn distinct_distances(&self) -> Vec<f64> {
        let mut values = self.dist.clone();
        values.sort_by(f64::total_cmp);
        let mut out: Vec<f64> = Vec::new();
        for v in values {
            if out.last().map_or(true, |&last| v > last + self.eps) {
                out.push(v);
            }
        }
        out
    }

    /// Points within distance `radius` of `center`, in label order.
    pub fn ball(&self, center: usize, radius: f64) -> Vec<usize> {
        (0..self.n).filter(|&j| self.le(self.d(center, j), radius)).collect()
    }

    /// The subspace on `points` (kept in the given order) with the restricted metric.
    pub fn subspace(&self, points: &[usize]) -> Self {
        let k = points.len();
        let mut dist = vec![0.0; k * k];
        for (a, &i) in points.iter().enumerate() {
            for (b, &j) in points.iter().enumerate() {
                dist[a * k + b] = self.d(i, j);
            }
        }
        let labels = points.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_parts(labels, dist)
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// The integer interval `{0, ..., m}` with `d(a, b) = |a - b|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalSpace {
    pub m: usize,
}

impl IntervalSpace {
    pub fn new(m: usize) -> Self {
        Self { m }
    }

    pub fn d(&self, a: usize, b: usize) -> f64 {
        a.abs_diff(b) as f64
    }

    pub fn to_space(&self) -> FiniteMetricSpace {
        let n = self.m + 1;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let dist = (0..n * n).map(|k| (k / n).abs_diff(k % n) as f64).collect();
        FiniteMetricSpace::from_parts(labels, dist)
    }
}

/// `left × right` with the ℓ¹ metric, materialised as a finite metric space.
///
/// The point `(a, b)` has index `a * right.len() + b` and label `"a|b"`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace {
    left_len: usize,
    right_len: usize,
    space: FiniteMetricSpace,
}

impl ProductSpace {
    pub fn left_len(&self) -> usize {
        self.left_len
    }

    pub fn right_len(&self) -> usize {
        self.right_len
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.right_len + b
    }

    #[inline]
    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.right_len, p % self.right_len)
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn into_space(self) -> FiniteMetricSpace {
        self.space
    }
}

/// The ℓ¹ product of two spaces.
pub fn l1_product(left: &FiniteMetricSpace, right: &FiniteMetricSpace) -> ProductSpace {
    let (nl, nr) = (left.len(), right.len());
    let n = nl * nr;
    let mut labels = Vec::with_capacity(n);
    for a in left.labels() {
        for b in right.labels() {
            labels.push(format!("{a}|{b}"));
        }
    }
    let mut dist = vec![0.0; n * n];
    for p in 0..n {
        let (a, b) = (p / nr, p % nr);
        for q in 0..n {
            let (c, e) = (q / nr, q % nr);
            dist[p * n + q] = left.d(a, c) + right.d(b, e);
        }
    }
    ProductSpace { left_len: nl, right_len: nr, space: FiniteMetricSpace::from_parts(labels, dist) }
}

/// Length-`m` `r`-paths in a base space, under the uniform (max) metric.
#[derive(Debug, Clone, Copy)]
pub struct PathSpace<'a> {
    pub base: &'a FiniteMetricSpace,
    pub m: usize,
    pub r: f64,
}

impl<'a> PathSpace<'a> {
    pub fn new(base: &'a FiniteMetricSpace, m: usize, r: f64) -> Self {
        Self { base, m, r }
    }

    pub fn contains(&self, points: &[usize]) -> bool {
        points.len() == self.m + 1
            && points.iter().all(|&p| p < self.base.len())
            && points.windows(2).all(|w| self.base.le(self.base.d(w[0], w[1]), self.r))
    }

    /// `max_j d(p(j), q(j))`.
    pub fn distance(&self, p: &[usize], q: &[usize]) -> f64 {
        uniform_distance(self.base, p, q)
    }
}

/// Max over indices of the pointwise distance between two equally long sequences.
pub(crate) fn uniform_distance(space: &FiniteMetricSpace, p: &[usize], q: &[usize]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    p.iter().zip(q).map(|(&a, &b)| space.d(a, b)).fold(0.0, f64::max)
}

fn chord(radius: f64, steps: usize, n: usize) -> f64 {
    let k = steps.min(n - steps);
    2.0 * radius * (PI * k as f64 / n as f64).sin()
}

/// `n` equally spaced points on a circle of the given radius, chordal metric.
///
/// Point `ck` sits at angle `2πk/n`; `c0` is the point `(radius, 0)`.
pub fn gen_circle(n: usize, radius: f64) -> Result<FiniteMetricSpace, MetricError> {
    if n < 3 {
        return Err(MetricError::InvalidParameter(format!("circle needs n >= 3, got {n}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(MetricError::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    let labels = (0..n).map(|k| format!("c{k}")).collect();
    let dist = (0..n * n).map(|k| chord(radius, (k / n).abs_diff(k % n), n)).collect();
    Ok(FiniteMetricSpace::from_parts(labels, dist))
}

/// The grid `{0, length/m, ..., length}` of a segment, absolute-difference metric.
pub fn gen_interval_grid(m: usize, length: f64) -> Result<FiniteMetricSpace, MetricError> {
    if m < 1 {
        return Err(MetricError::InvalidParameter("interval grid needs m >= 1".into()));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(MetricError::InvalidParameter(format!("length must be positive, got {length}")));
    }
    let n = m + 1;
    let labels = (0..n).map(|k| format!("t{k}")).collect();
    let dist = (0..n * n).map(|k| length * ((k / n).abs_diff(k % n) as f64 / m as f64)).collect();
    Ok(FiniteMetricSpace::from_parts(labels, dist))
}

/// `k` circles of `n` points each, glued at a common basepoint `o`.
///
/// The metric is the shortest-path metric of the union of the circles'
/// chord graphs: chord length within a circle, and the sum of the two
/// distances to the basepoint across circles.
pub fn gen_wedge_circles(k: usize, n: usize, radius: f64) -> Result<FiniteMetricSpace, MetricError> {
    if k < 1 {
        return Err(MetricError::InvalidParameter("wedge needs at least one circle".into()));
    }
    // Validates n and radius.
    gen_circle(n, radius)?;
    // (circle, position); the basepoint is position 0 of every circle.
    let mut points = vec![(0usize, 0usize)];
    let mut labels = vec!["o".to_string()];
    for c in 1..=k {
        for j in 1..n {
            points.push((c, j));
            labels.push(format!("c{c}_{j}"));
        }
    }
    let total = points.len();
    let mut dist = vec![0.0; total * total];
    for (a, &(ca, ja)) in points.iter().enumerate() {
        for (b, &(cb, jb)) in points.iter().enumerate() {
            dist[a * total + b] = if ca == cb || ja == 0 || jb == 0 {
                chord(radius, ja.abs_diff(jb), n)
            } else {
                chord(radius, ja, n) + chord(radius, jb, n)
            };
        }
    }
    Ok(FiniteMetricSpace::from_parts(labels, dist))
}

/// The first `k` circles of the Hawaiian earring, each sampled at `n` points,
/// with the planar Euclidean metric.
///
/// Circle `i` has centre `(1/i, 0)` and radius `1/i`; its sample `j` sits at
/// angle `π + 2πj/n` around the centre, so `j = 0` is the shared origin `o`.
pub fn gen_hawaiian(k: usize, n: usize) -> Result<FiniteMetricSpace, MetricError> {
    if k < 1 {
        return Err(MetricError::InvalidParameter("earring needs at least one circle".into()));
    }
    if n < 3 {
        return Err(MetricError::InvalidParameter(format!("circle needs n >= 3, got {n}")));
    }
    let mut labels = vec!["o".to_string()];
    let mut coords = vec![vec![0.0, 0.0]];
    for i in 1..=k {
        let rho = 1.0 / i as f64;
        for j in 1..n {
            let theta = PI + 2.0 * PI * j as f64 / n as f64;
            labels.push(format!("h{i}_{j}"));
            coords.push(vec![rho + rho * theta.cos(), rho * theta.sin()]);
        }
    }
    FiniteMetricSpace::from_euclidean(labels, &coords)
}

/// Planar coordinates of the Hawaiian earring sample, in the order used by [`gen_hawaiian`].
pub fn hawaiian_coords(k: usize, n: usize) -> Vec<[f64; 2]> {
    let mut coords = vec![[0.0, 0.0]];
    for i in 1..=k {
        let rho = 1.0 / i as f64;
        for j in 1..n {
            let theta = PI + 2.0 * PI * j as f64 / n as f64;
            coords.push([rho + rho * theta.cos(), rho * theta.sin()]);
        }
    }
    coords
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_space_validates() {
        let x = FiniteMetricSpace::from_matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.d(0, 1), 1.0);
    }

    #[test]
    fn asymmetric_matrix_is_rejected() {
        let err = FiniteMetricSpace::from_matrix(&[vec![0.0, 3.0], vec![1.0, 0.0]]).unwrap_err();
        assert!(matches!(err, MetricError::Asymmetry { i: 0, j: 1, .. }), "{err:?}");
    }

    #[test]
    fn triangle_violation_names_its_witness() {
        let m = [vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]];
        let err = FiniteMetricSpace::from_matrix(&m).unwrap_err();
        assert_eq!(err, MetricError::TriangleViolation { from: 0, to: 2, via: 1 });
    }

    #[test]
    fn other_validation_errors() {
        let neg = FiniteMetricSpace::from_matrix(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap_err();
        assert!(matches!(neg, MetricError::NegativeDistance { .. }));
        let zero = FiniteMetricSpace::from_matrix(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap_err();
        assert_eq!(zero, MetricError::ZeroDistanceDistinctPoints { i: 0, j: 1 });
        let ragged = FiniteMetricSpace::from_matrix(&[vec![0.0, 1.0], vec![1.0]]).unwrap_err();
        assert!(matches!(ragged, MetricError::NotSquare { row: 1, .. }));
        let diag = FiniteMetricSpace::from_matrix(&[vec![0.5]]).unwrap_err();
        assert!(matches!(diag, MetricError::NonZeroDiagonal { i: 0, .. }));
        assert_eq!(FiniteMetricSpace::from_matrix(&[]).unwrap_err(), MetricError::Empty);
        let dup = FiniteMetricSpace::new(vec!["a".into(), "a".into()], &[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap_err();
        assert_eq!(dup, MetricError::DuplicateLabel("a".into()));
    }

    #[test]
    fn product_of_two_point_spaces() {
        let a = FiniteMetricSpace::from_matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let p = l1_product(&a, &a);
        let s = p.space();
        assert_eq!(s.len(), 4);
        assert_eq!(s.d(p.index(0, 0), p.index(1, 1)), 2.0);
        assert_eq!(s.d(p.index(0, 1), p.index(1, 0)), 2.0);
        // one coordinate fixed
        assert_eq!(s.d(p.index(1, 0), p.index(1, 1)), a.d(0, 1));
        assert_eq!(s.label(p.index(0, 1)), "p0|p1");
    }

    #[test]
    fn product_with_trivial_interval_keeps_metric() {
        let x = gen_circle(5, 1.0).unwrap();
        let p = l1_product(&x, &IntervalSpace::new(0).to_space());
        assert_eq!(p.space().matrix(), x.matrix());
    }

    #[test]
    fn circle_chords() {
        let sq = gen_circle(4, 1.0).unwrap();
        assert!((sq.d(0, 1) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(sq.d(0, 2), 2.0);
        let hex = gen_circle(6, 1.0).unwrap();
        assert!((hex.d(0, 1) - 1.0).abs() < 1e-12);
        assert!(hex.le(hex.d(2, 3), 1.0));
        let tri = gen_circle(3, 1.0).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!((tri.d(i, j) - 3f64.sqrt()).abs() < 1e-12);
        }
        for n in [4, 6, 8, 10] {
            assert_eq!(gen_circle(n, 1.5).unwrap().diameter(), 3.0);
        }
        assert!(gen_circle(2, 1.0).is_err());
    }

    #[test]
    fn interval_grid() {
        let g = gen_interval_grid(2, 1.0).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.d(0, 1), 0.5);
        assert_eq!(g.d(0, 2), 1.0);
        let g1 = gen_interval_grid(1, 1.0).unwrap();
        assert_eq!(g1.matrix(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        for (m, len) in [(3, 0.1), (7, 2.5), (10, 1.0)] {
            assert_eq!(gen_interval_grid(m, len).unwrap().diameter(), len);
        }
    }

    #[test]
    fn wedge_of_one_circle_is_the_circle() {
        let w = gen_wedge_circles(1, 6, 1.0).unwrap();
        let c = gen_circle(6, 1.0).unwrap();
        assert_eq!(w.matrix(), c.matrix());
    }

    #[test]
    fn wedge_distances_pass_through_the_basepoint() {
        let w = gen_wedge_circles(2, 6, 1.0).unwrap();
        assert_eq!(w.len(), 11);
        assert_eq!(w.labels().iter().filter(|l| *l == "o").count(), 1);
        let o = w.index_of("o").unwrap();
        for a in w.labels().iter().filter(|l| l.starts_with("c1_")) {
            for b in w.labels().iter().filter(|l| l.starts_with("c2_")) {
                let (x, y) = (w.index_of(a).unwrap(), w.index_of(b).unwrap());
                assert_eq!(w.d(x, y), w.d(x, o) + w.d(o, y));
            }
        }
    }

    #[test]
    fn hawaiian_earring_samples() {
        let h = gen_hawaiian(1, 8).unwrap();
        for p in hawaiian_coords(1, 8) {
            let r = ((p[0] - 1.0).powi(2) + p[1].powi(2)).sqrt();
            assert!((r - 1.0).abs() < 1e-12);
        }
        assert!((h.diameter() - 2.0).abs() < 1e-12);
        let coords = hawaiian_coords(3, 8);
        let h3 = gen_hawaiian(3, 8).unwrap();
        assert_eq!(h3.len(), 22);
        assert!((h3.diameter() - 2.0).abs() < 1e-12);
        // every circle passes through the origin: its samples at j and n-j are mirror images
        // and the origin is shared.
        assert_eq!(coords[0], [0.0, 0.0]);
        for (idx, p) in coords.iter().enumerate().skip(1) {
            let i = (idx - 1) / 7 + 1;
            let rho = 1.0 / i as f64;
            let r = ((p[0] - rho).powi(2) + p[1].powi(2)).sqrt();
            assert!((r - rho).abs() < 1e-12);
        }
    }

    #[test]
    fn distinct_distances_of_hexagon() {
        let hex = gen_circle(6, 1.0).unwrap();
        let d = hex.distinct_distances();
        assert_eq!(d.len(), 4);
        assert_eq!(d[0], 0.0);
        assert_eq!(d[3], 2.0);
    }

    #[test]
    fn path_space_uniform_metric() {
        let hex = gen_circle(6, 1.0).unwrap();
        let ps = PathSpace::new(&hex, 2, 1.0);
        assert!(ps.contains(&[0, 1, 2]));
        assert!(!ps.contains(&[0, 2, 2]));
        assert!(!ps.contains(&[0, 1]));
        assert_eq!(ps.distance(&[0, 1, 2], &[0, 0, 0]), hex.d(0, 2));
    }
}
