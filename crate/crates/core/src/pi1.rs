//! `r`-loops and their null-homotopies.
//!
//! A null-homotopy is stored as a matrix whose rows are `r`-loops at the
//! basepoint and whose columns are `r`-paths: the first row is the loop
//! (padded with stationary points), the last row is constant.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::category::ContractibilityCertificate;
use crate::homotopy::{from_u16, to_u16};
use crate::metric::FiniteMetricSpace;
use crate::paths::{hop_matrix, is_r_path, PathError};
use crate::search::{bidirectional, Reach};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoopError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("loop does not start and end at the basepoint {0}")]
    NotClosed(usize),
}

/// An `r`-path with both ends at `basepoint`.
#[derive(Debug, Clone, PartialEq)]
pub struct RLoop {
    pub r: f64,
    pub basepoint: usize,
    pub points: Vec<usize>,
}

impl RLoop {
    pub fn new(space: &FiniteMetricSpace, points: Vec<usize>, r: f64) -> Result<Self, LoopError> {
        let basepoint = *points.first().ok_or(PathError::Empty)?;
        is_r_loop(space, &points, r, basepoint)?;
        Ok(Self { r, basepoint, points })
    }

    pub fn constant(p: usize, m: usize, r: f64) -> Self {
        Self { r, basepoint: p, points: vec![p; m + 1] }
    }

    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stationary padding at the end, up to `m` steps.
    pub fn padded(&self, m: usize) -> RLoop {
        let mut points = self.points.clone();
        points.resize(m.max(self.len()) + 1, self.basepoint);
        RLoop { points, ..*self }
    }

    pub fn concat(&self, other: &RLoop) -> Option<RLoop> {
        if self.basepoint != other.basepoint {
            return None;
        }
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points[1..]);
        Some(RLoop { r: self.r.max(other.r), basepoint: self.basepoint, points })
    }
}

pub fn is_r_loop(space: &FiniteMetricSpace, points: &[usize], r: f64, p: usize) -> Result<(), LoopError> {
    if points.is_empty() {
        return Err(PathError::Empty.into());
    }
    is_r_path(space, points, r)?;
    if points[0] != p || points[points.len() - 1] != p {
        return Err(LoopError::NotClosed(p));
    }
    Ok(())
}

/// Rows top to bottom; see the module docs.
#[derive(Debug, Clone, PartialEq)]
pub struct NullHomotopyGrid {
    pub r: f64,
    pub basepoint: usize,
    pub rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid has no rows")]
    Empty,
    #[error("row {0} has a different length")]
    Ragged(usize),
    #[error("row {row} is not an r-loop at the basepoint: {cause}")]
    Row { row: usize, cause: LoopError },
    #[error("column {column} jumps more than r between rows {row} and {}", row + 1)]
    Column { column: usize, row: usize },
    #[error("the last row is not constant")]
    Bottom,
    #[error("the first row is not the expected loop")]
    Top,
}

impl NullHomotopyGrid {
    /// Checks every row, every column and the constant bottom row.
    pub fn verify(&self, space: &FiniteMetricSpace) -> Result<(), GridError> {
        let width = self.rows.first().ok_or(GridError::Empty)?.len();
        for (row, points) in self.rows.iter().enumerate() {
            if points.len() != width {
                return Err(GridError::Ragged(row));
            }
            is_r_loop(space, points, self.r, self.basepoint).map_err(|cause| GridError::Row { row, cause })?;
        }
        for row in 0..self.rows.len() - 1 {
            for column in 0..width {
                let (a, b) = (self.rows[row][column], self.rows[row + 1][column]);
                if !space.le(space.d(a, b), self.r) {
                    return Err(GridError::Column { column, row });
                }
            }
        }
        if self.rows.last().unwrap().iter().any(|&q| q != self.basepoint) {
            return Err(GridError::Bottom);
        }
        Ok(())
    }

    /// [`verify`](Self::verify), plus: the first row is `lp` padded to the grid's width.
    pub fn verify_for(&self, space: &FiniteMetricSpace, lp: &RLoop) -> Result<(), GridError> {
        self.verify(space)?;
        let width = self.rows[0].len();
        if width < lp.points.len() || self.rows[0] != lp.padded(width - 1).points || lp.basepoint != self.basepoint {
            return Err(GridError::Top);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NullSearch {
    Null(NullHomotopyGrid),
    /// No null-homotopy among same-length loops at any padding up to the horizon.
    NotFoundWithinBudget,
}

/// Breadth-first search from the loop (padded by `0..=padding_max` stationary
/// steps) to the constant loop, moving every point by at most `r` per step.
pub fn is_null_homotopic(space: &FiniteMetricSpace, lp: &RLoop, padding_max: usize, budget: usize) -> NullSearch {
    let hops = hop_matrix(space, lp.r);
    let balls: Vec<Vec<usize>> = (0..space.len()).map(|y| space.ball(y, lp.r)).collect();
    for pad in 0..=padding_max {
        let start = lp.padded(lp.len() + pad);
        let target = vec![to_u16(&vec![lp.basepoint; start.points.len()])];
        let report = bidirectional(&to_u16(&start.points), &target, budget, |state, emit| {
            loop_neighbors(space, &balls, &hops, lp.r, lp.basepoint, state, emit)
        });
        match report.result {
            Reach::Found(states) => {
                let rows = states.iter().map(|s| from_u16(s)).collect();
                return NullSearch::Null(NullHomotopyGrid { r: lp.r, basepoint: lp.basepoint, rows });
            }
            Reach::Exhausted | Reach::Budget => {}
        }
    }
    NullSearch::NotFoundWithinBudget
}

/// Loops `q` at `p` with `d(q_i, γ_i) ≤ r`, in lexicographic order.
fn loop_neighbors(
    space: &FiniteMetricSpace,
    balls: &[Vec<usize>],
    hops: &[Vec<usize>],
    r: f64,
    p: usize,
    gamma: &[u16],
    emit: &mut dyn FnMut(&[u16]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let len = gamma.len();
    let mut cur = vec![p as u16; len];
    fn go(
        i: usize,
        ctx: (&FiniteMetricSpace, &[Vec<usize>], &[Vec<usize>], f64, usize),
        gamma: &[u16],
        cur: &mut Vec<u16>,
        emit: &mut dyn FnMut(&[u16]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let (space, balls, hops, r, p) = ctx;
        let len = gamma.len();
        if i == len - 1 {
            if space.le(space.d(cur[i - 1] as usize, p), r) {
                return emit(cur);
            }
            return ControlFlow::Continue(());
        }
        let prev = cur[i - 1] as usize;
        for &q in &balls[gamma[i] as usize] {
            if space.le(space.d(prev, q), r) && hops[q][p] <= len - 1 - i {
                cur[i] = q as u16;
                go(i + 1, ctx, gamma, cur, emit)?;
            }
        }
        ControlFlow::Continue(())
    }
    if len == 1 {
        return emit(&cur);
    }
    go(1, (space, balls, hops, r, p), gamma, &mut cur, emit)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LemmaError {
    #[error("loop: {0}")]
    Loop(LoopError),
    #[error("the constructed matrix fails validation: {0}")]
    Validation(GridError),
}

/// The explicit null-homotopy of `γ * f * γ⁻¹` obtained from a contraction,
/// where `γ` is the contraction's track from its basepoint `c` to the loop's
/// basepoint. Rows are loops at `c`; the top row is `γ * f * γ⁻¹`.
pub fn lemma_certificate(
    space: &FiniteMetricSpace,
    c: &ContractibilityCertificate,
    lp: &RLoop,
) -> Result<NullHomotopyGrid, LemmaError> {
    is_r_loop(space, &lp.points, c.r, lp.basepoint).map_err(LemmaError::Loop)?;
    let m = c.grid.m();
    // H(x, i) = F(x, m - i): H(-, 0) is constant at c, H(-, m) is the identity
    let h = |x: usize, i: usize| c.grid.at(x, m - i);
    let p = lp.basepoint;
    let rows = (0..=m)
        .rev()
        .map(|i| {
            let mut row: Vec<usize> = (0..m).map(|k| h(p, (k + i).saturating_sub(m))).collect();
            row.extend(lp.points.iter().map(|&x| h(x, i)));
            row.extend((0..m).rev().map(|k| h(p, (k + i).saturating_sub(m))));
            row
        })
        .collect();
    let grid = NullHomotopyGrid { r: c.r, basepoint: c.basepoint, rows };
    grid.verify(space).map_err(LemmaError::Validation)?;
    Ok(grid)
}

/// `γ * f * γ⁻¹` for the contraction track `γ` from `c` to the loop's basepoint.
pub fn conjugated_loop(c: &ContractibilityCertificate, lp: &RLoop) -> RLoop {
    let mut track = c.grid.track(lp.basepoint);
    track.reverse();
    let mut points = track.clone();
    points.extend_from_slice(&lp.points[1..]);
    points.extend(track.iter().rev().skip(1));
    RLoop { r: c.r, basepoint: c.basepoint, points }
}
