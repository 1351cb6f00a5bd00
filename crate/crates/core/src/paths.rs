//! `r`-paths, their algebra, and `r`-connectivity.

use std::collections::VecDeque;

use thiserror::Error;

use crate::metric::FiniteMetricSpace;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("point index {0} is not in the space")]
    UnknownPoint(usize),
    #[error("a path needs at least one point")]
    Empty,
    #[error("step {index} has length {distance}, more than r = {r}")]
    StepTooLong { index: usize, distance: f64, r: f64 },
    #[error("first path ends at {end} but second starts at {start}")]
    EndpointMismatch { end: usize, start: usize },
    #[error("paths have different scales ({0} vs {1})")]
    ScaleMismatch(f64, f64),
    #[error("no r-path from {from} to {to}")]
    NoPath { from: usize, to: usize },
}

/// Checks that consecutive points of `points` are within `r` of each other.
pub fn is_r_path(space: &FiniteMetricSpace, points: &[usize], r: f64) -> Result<(), PathError> {
    if let Some(&p) = points.iter().find(|&&p| p >= space.len()) {
        return Err(PathError::UnknownPoint(p));
    }
    for (index, w) in points.windows(2).enumerate() {
        let distance = space.d(w[0], w[1]);
        if !space.le(distance, r) {
            return Err(PathError::StepTooLong { index, distance, r });
        }
    }
    Ok(())
}

/// A discrete path `γ: [m] → X` whose steps are at most `r`.
///
/// Points are stored as indices into the space the path was built over.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePath {
    r: f64,
    points: Vec<usize>,
}

impl DiscretePath {
    pub fn new(space: &FiniteMetricSpace, points: Vec<usize>, r: f64) -> Result<Self, PathError> {
        if points.is_empty() {
            return Err(PathError::Empty);
        }
        is_r_path(space, &points, r)?;
        Ok(Self { r, points })
    }

    /// Wraps `points` without checking step lengths.
    pub fn new_unchecked(points: Vec<usize>, r: f64) -> Self {
        assert!(!points.is_empty(), "a path needs at least one point");
        Self { r, points }
    }

    pub fn constant(p: usize, m: usize, r: f64) -> Self {
        Self { r, points: vec![p; m + 1] }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn into_points(self) -> Vec<usize> {
        self.points
    }

    pub fn start(&self) -> usize {
        self.points[0]
    }

    pub fn end(&self) -> usize {
        *self.points.last().unwrap()
    }

    pub fn concat(&self, other: &DiscretePath) -> Result<DiscretePath, PathError> {
        if self.r != other.r {
            return Err(PathError::ScaleMismatch(self.r, other.r));
        }
        if self.end() != other.start() {
            return Err(PathError::EndpointMismatch { end: self.end(), start: other.start() });
        }
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points[1..]);
        Ok(DiscretePath { r: self.r, points })
    }

    pub fn reverse(&self) -> DiscretePath {
        let mut points = self.points.clone();
        points.reverse();
        DiscretePath { r: self.r, points }
    }

    /// The same points viewed at a different scale (no re-check).
    pub fn with_scale(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    /// Pads with copies of the end point up to `m` steps.
    pub fn padded(&self, m: usize) -> DiscretePath {
        let mut points = self.points.clone();
        points.resize(m.max(self.len()) + 1, self.end());
        DiscretePath { r: self.r, points }
    }
}

/// Adjacency lists of the graph joining points at distance `<= r`, in label order.
pub fn r_graph(space: &FiniteMetricSpace, r: f64) -> Vec<Vec<usize>> {
    (0..space.len()).map(|i| (0..space.len()).filter(|&j| j != i && space.le(space.d(i, j), r)).collect()).collect()
}

/// Hop counts from `from` in the `r`-graph; `None` for unreachable points.
pub fn hop_distances(space: &FiniteMetricSpace, r: f64, from: usize) -> Vec<Option<usize>> {
    let graph = r_graph(space, r);
    bfs(&graph, from).0
}

fn bfs(graph: &[Vec<usize>], from: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut hops = vec![None; graph.len()];
    let mut parent = vec![usize::MAX; graph.len()];
    let mut queue = VecDeque::from([from]);
    hops[from] = Some(0);
    while let Some(u) = queue.pop_front() {
        let h = hops[u].unwrap();
        for &v in &graph[u] {
            if hops[v].is_none() {
                hops[v] = Some(h + 1);
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (hops, parent)
}

/// Partition of the points into `r`-connected components, each sorted, ordered by smallest member.
pub fn r_connected_components(space: &FiniteMetricSpace, r: f64) -> Vec<Vec<usize>> {
    let graph = r_graph(space, r);
    let mut seen = vec![false; space.len()];
    let mut out = Vec::new();
    for start in 0..space.len() {
        if seen[start] {
            continue;
        }
        let (hops, _) = bfs(&graph, start);
        let comp: Vec<usize> = (0..space.len()).filter(|&i| hops[i].is_some()).collect();
        for &i in &comp {
            seen[i] = true;
        }
        out.push(comp);
    }
    out
}

pub fn is_r_connected(space: &FiniteMetricSpace, r: f64) -> bool {
    r_connected_components(space, r).len() == 1
}

/// A minimum-hop `r`-path from `x` to `y`, found by breadth-first search.
///
/// Neighbours are explored in label order, so ties resolve to the
/// lexicographically earliest discovery.
pub fn shortest_r_path(space: &FiniteMetricSpace, r: f64, x: usize, y: usize) -> Result<DiscretePath, PathError> {
    for p in [x, y] {
        if p >= space.len() {
            return Err(PathError::UnknownPoint(p));
        }
    }
    let graph = r_graph(space, r);
    let (hops, parent) = bfs(&graph, x);
    if hops[y].is_none() {
        return Err(PathError::NoPath { from: x, to: y });
    }
    let mut points = vec![y];
    let mut cur = y;
    while cur != x {
        cur = parent[cur];
        points.push(cur);
    }
    points.reverse();
    Ok(DiscretePath { r, points })
}

/// All-pairs hop counts in the `r`-graph (`usize::MAX` when unreachable).
pub fn hop_matrix(space: &FiniteMetricSpace, r: f64) -> Vec<Vec<usize>> {
    let graph = r_graph(space, r);
    (0..space.len()).map(|i| bfs(&graph, i).0.into_iter().map(|h| h.unwrap_or(usize::MAX)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::gen_circle;

    fn two_points(d: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::from_matrix(&[vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn r_path_checks() {
        let x = two_points(1.5);
        assert!(is_r_path(&x, &[0], 1.0).is_ok());
        let err = is_r_path(&x, &[0, 1], 1.0).unwrap_err();
        assert!(matches!(err, PathError::StepTooLong { index: 0, .. }));
        let hex = gen_circle(6, 1.0).unwrap();
        assert!(is_r_path(&hex, &[0, 1, 2, 3, 4, 5, 0], 1.0).is_ok());
        assert_eq!(is_r_path(&hex, &[0, 9], 1.0).unwrap_err(), PathError::UnknownPoint(9));
    }

    #[test]
    fn concat_and_reverse() {
        let hex = gen_circle(6, 1.0).unwrap();
        let a = DiscretePath::new(&hex, vec![0, 1, 2], 1.0).unwrap();
        let b = DiscretePath::new(&hex, vec![2, 3, 4, 5], 1.0).unwrap();
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab.len(), 5);
        assert!(is_r_path(&hex, ab.points(), 1.0).is_ok());
        assert_eq!(ab.reverse().reverse(), ab);
        let lp = a.concat(&a.reverse()).unwrap();
        assert_eq!(lp.start(), lp.end());
        assert!(matches!(a.concat(&a), Err(PathError::EndpointMismatch { end: 2, start: 0 })));
    }

    #[test]
    fn components() {
        let hex = gen_circle(6, 1.0).unwrap();
        assert_eq!(r_connected_components(&hex, 1.0).len(), 1);
        assert_eq!(r_connected_components(&hex, 0.5).len(), 6);
        assert_eq!(r_connected_components(&two_points(3.0), 1.0), vec![vec![0], vec![1]]);
    }

    #[test]
    fn shortest_paths() {
        let hex = gen_circle(6, 1.0).unwrap();
        let p = shortest_r_path(&hex, 1.0, 0, 3).unwrap();
        assert_eq!(p.len(), 3);
        // label order breaks the tie between the two halves of the hexagon
        assert_eq!(p.points(), &[0, 1, 2, 3]);
        assert_eq!(shortest_r_path(&hex, 1.0, 4, 4).unwrap().len(), 0);
        assert_eq!(shortest_r_path(&two_points(3.0), 1.0, 0, 1).unwrap_err(), PathError::NoPath { from: 0, to: 1 });
    }

    #[test]
    fn padding_repeats_the_end() {
        let hex = gen_circle(6, 1.0).unwrap();
        let p = DiscretePath::new(&hex, vec![0, 1], 1.0).unwrap().padded(3);
        assert_eq!(p.points(), &[0, 1, 1, 1]);
    }
}
