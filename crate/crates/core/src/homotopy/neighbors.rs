//! Successor function of the homotopy search: every `s`-Lipschitz map within
//! uniform distance `r` of a given map.

use std::ops::ControlFlow;

use crate::metric::FiniteMetricSpace;

/// Precomputed constraint data for one `(domain, codomain, s, r)`.
pub(crate) struct NeighborGen<'a> {
    n: usize,
    codomain: &'a FiniteMetricSpace,
    /// Codomain points within `r` of each point, in label order.
    balls: Vec<Vec<u16>>,
    /// `s·d(x, x') + eps`, row-major over domain pairs.
    limits: Vec<f64>,
    /// Later domain points whose pairwise constraint with `x` is not vacuous.
    constrained: Vec<Vec<usize>>,
}

impl<'a> NeighborGen<'a> {
    pub(crate) fn new(domain: &FiniteMetricSpace, codomain: &'a FiniteMetricSpace, s: f64, r: f64) -> Self {
        assert!(codomain.len() <= u16::MAX as usize, "codomain too large for the search");
        let n = domain.len();
        let eps = codomain.eps();
        let diameter = codomain.diameter();
        let balls = (0..codomain.len()).map(|y| codomain.ball(y, r).into_iter().map(|p| p as u16).collect()).collect();
        let mut limits = vec![f64::INFINITY; n * n];
        let mut constrained = vec![Vec::new(); n];
        for x in 0..n {
            for x2 in 0..n {
                let lim = s * domain.d(x, x2) + eps;
                limits[x * n + x2] = lim;
                if x2 > x && lim < diameter {
                    constrained[x].push(x2);
                }
            }
        }
        Self { n, codomain, balls, limits, constrained }
    }

    /// Calls `visit` on every neighbour of `f` (including `f` itself), in
    /// lexicographic order of the image tables.
    pub(crate) fn for_each(&self, f: &[u16], visit: &mut dyn FnMut(&[u16]) -> ControlFlow<()>) -> ControlFlow<()> {
        debug_assert_eq!(f.len(), self.n);
        let mut domains: Vec<Vec<u16>> = f.iter().map(|&y| self.balls[y as usize].clone()).collect();
        let mut current = vec![0u16; self.n];
        self.dfs(0, &mut domains, &mut current, visit)
    }

    fn dfs(
        &self,
        x: usize,
        domains: &mut [Vec<u16>],
        current: &mut [u16],
        visit: &mut dyn FnMut(&[u16]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if x == self.n {
            return visit(current);
        }
        let candidates = std::mem::take(&mut domains[x]);
        let mut saved: Vec<(usize, Vec<u16>)> = Vec::new();
        for &y in &candidates {
            current[x] = y;
            let row = self.codomain.row(y as usize);
            let mut dead = false;
            for &x2 in &self.constrained[x] {
                let lim = self.limits[x * self.n + x2];
                let keep = domains[x2].iter().filter(|&&y2| row[y2 as usize] <= lim).count();
                if keep == domains[x2].len() {
                    continue;
                }
                let filtered: Vec<u16> = domains[x2].iter().copied().filter(|&y2| row[y2 as usize] <= lim).collect();
                saved.push((x2, std::mem::replace(&mut domains[x2], filtered)));
                if keep == 0 {
                    dead = true;
                    break;
                }
            }
            let flow = if dead { ControlFlow::Continue(()) } else { self.dfs(x + 1, domains, current, visit) };
            for (x2, old) in saved.drain(..).rev() {
                domains[x2] = old;
            }
            flow?;
        }
        domains[x] = candidates;
        ControlFlow::Continue(())
    }
}
