//! Certified bounds for the discrete topological complexity `TC_r`, scale
//! monotonicity, and transport of planners along `r`-homotopy equivalences.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::category::{
    cat_bounds_with, is_r_contractible, CatOptions, CatReport, ContractibilityCertificate, Decision,
};
use crate::homotopy::{verify_homotopy, HomotopyGrid, HomotopyViolation, DEFAULT_STATE_BUDGET};
use crate::lipmap::{is_lipschitz, MapError};
use crate::metric::{l1_product, FiniteMetricSpace};
use crate::paths::is_r_connected;
use crate::planner::{
    normalize_lengths, planner_from_categorical_patch, product_categorical, search_patch_planner, search_planner_cover,
    synthesize_from_contraction, verify_planner, MotionPlanner, PatchSearch, PatchSearchOptions, PlannerViolation,
};
use crate::setcover::{bitset_of, exact_cover};

#[derive(Debug, Clone)]
pub struct TcOptions {
    pub budget: usize,
    pub exact_threshold: usize,
    pub patch: PatchSearchOptions,
}

impl TcOptions {
    pub fn for_space(space: &FiniteMetricSpace) -> Self {
        Self { budget: DEFAULT_STATE_BUDGET, exact_threshold: 10, patch: PatchSearchOptions::for_space(space) }
    }

    fn cat(&self) -> CatOptions {
        CatOptions { budget: self.budget, exact_threshold: self.exact_threshold, extra_subsets: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcLowerEvidence {
    Contractible,
    NotContractible,
    CatLower(usize),
    Unknown,
    /// Points in different `r`-components cannot be joined: `TC_r = ∞`.
    Disconnected,
}

/// How a cover patch was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchSource {
    /// Full planner synthesized from a contraction.
    Contraction,
    /// Product of two categorical subsets of `X`, through the categorical patch construction.
    CategoricalProduct,
    /// Constraint search on a distance band.
    Band,
    /// Joint constraint search that splits `X × X` into patches itself.
    Search,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TcPatch {
    pub source: PatchSource,
    pub planner: MotionPlanner,
}

/// Bounds from categorical covers of `X × X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteB {
    /// Size of the categorical cover of `X × X` consumed.
    pub categorical_cover: usize,
    /// Number of planners it produced.
    pub upper: usize,
}

/// `lower ≤ TC_r(X) ≤ upper`; both `None` when `X` is not `r`-connected.
#[derive(Debug, Clone, PartialEq)]
pub struct TcReport {
    pub r: f64,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub cover: Vec<TcPatch>,
    pub lower_evidence: TcLowerEvidence,
    pub route_b: Option<RouteB>,
    pub cat: Option<CatReport>,
}

impl TcReport {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Thresholds `t` for the complementary bands `{d ≤ t}` and `{d > t}`,
/// most balanced split first.
fn band_thresholds(space: &FiniteMetricSpace) -> Vec<f64> {
    let top = space.diameter() - space.eps();
    let mut ts: Vec<f64> = space.distinct_distances().into_iter().filter(|&t| t < top).collect();
    if !ts.contains(&0.0) {
        ts.push(0.0);
    }
    let n = space.len();
    let half = (n * n) as i64 / 2;
    let near_size = |t: f64| band(space, |d| d <= t + space.eps()).len() as i64;
    let mut keyed: Vec<(i64, f64)> = ts.into_iter().map(|t| ((near_size(t) - half).abs(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.total_cmp(&a.1)));
    keyed.into_iter().map(|(_, t)| t).collect()
}

fn band(space: &FiniteMetricSpace, keep: impl Fn(f64) -> bool) -> Vec<(usize, usize)> {
    let n = space.len();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| keep(space.d(x, y))).collect()
}

/// Certified interval for `TC_r(X)` with a verifying cover of `X × X`.
pub fn tc_bounds(space: &FiniteMetricSpace, r: f64, opts: &TcOptions) -> TcReport {
    let n = space.len();
    if !is_r_connected(space, r) {
        return TcReport {
            r,
            lower: None,
            upper: None,
            cover: Vec::new(),
            lower_evidence: TcLowerEvidence::Disconnected,
            route_b: None,
            cat: None,
        };
    }
    let contractible = is_r_contractible(space, r, opts.budget);
    if let Decision::Yes(c) = &contractible {
        let planner = synthesize_from_contraction(space, c);
        let cat = cat_bounds_with(space, r, &opts.cat(), contractible.clone());
        return TcReport {
            r,
            lower: Some(1),
            upper: Some(1),
            cover: vec![TcPatch { source: PatchSource::Contraction, planner }],
            lower_evidence: TcLowerEvidence::Contractible,
            route_b: Some(RouteB { categorical_cover: 1, upper: 1 }),
            cat: Some(cat),
        };
    }
    let cat = cat_bounds_with(space, r, &opts.cat(), contractible.clone());
    let (lower, lower_evidence) = match contractible {
        Decision::No if cat.lower > 2 => (cat.lower, TcLowerEvidence::CatLower(cat.lower)),
        Decision::No => (2, TcLowerEvidence::NotContractible),
        _ if cat.lower > 1 => (cat.lower, TcLowerEvidence::CatLower(cat.lower)),
        _ => (1, TcLowerEvidence::Unknown),
    };

    // route (b): products of categorical subsets of X
    let product = l1_product(space, space);
    let mut patches: Vec<TcPatch> = Vec::new();
    for a in &cat.cover {
        for b in &cat.cover {
            let cert = product_categorical(&product, a, b);
            let planner =
                planner_from_categorical_patch(space, &product, &cert).expect("X is r-connected, so the bridge exists");
            patches.push(TcPatch { source: PatchSource::CategoricalProduct, planner });
        }
    }
    let route_b = RouteB { categorical_cover: patches.len(), upper: patches.len() };

    let universe = n * n;
    let mut best = choose_cover(universe, &patches);

    // joint search for a smaller cover, fewest patches first
    let pairs = band(space, |_| true);
    for k in lower..best.len() {
        if let Some(found) = search_planner_cover(space, &pairs, r, k, &opts.patch) {
            patches.extend(found.into_iter().map(|planner| TcPatch { source: PatchSource::Search, planner }));
            best = choose_cover(universe, &patches);
            break;
        }
    }

    // route (c): complementary distance bands, stopping once the bound is tight
    for t in band_thresholds(space) {
        if best.len() <= lower {
            break;
        }
        let eps = space.eps();
        let near = band(space, |d| d <= t + eps);
        let far = band(space, |d| d > t + eps);
        let (pn, pf) = rayon::join(
            || search_patch_planner(space, &near, r, &opts.patch),
            || search_patch_planner(space, &far, r, &opts.patch),
        );
        for found in [pn, pf] {
            if let PatchSearch::Found(planner) = found {
                patches.push(TcPatch { source: PatchSource::Band, planner });
            }
        }
        best = choose_cover(universe, &patches);
    }
    let chosen: Vec<TcPatch> = best.into_iter().map(|i| patches[i].clone()).collect();
    let planners: Vec<MotionPlanner> = chosen.iter().map(|p| p.planner.clone()).collect();
    let cover: Vec<TcPatch> = normalize_lengths(&planners)
        .into_iter()
        .zip(&chosen)
        .map(|(planner, p)| TcPatch { source: p.source, planner })
        .collect();
    TcReport {
        r,
        lower: Some(lower.min(cover.len())),
        upper: Some(cover.len()),
        cover,
        lower_evidence,
        route_b: Some(route_b),
        cat: Some(cat),
    }
}

fn choose_cover(universe: usize, patches: &[TcPatch]) -> Vec<usize> {
    let n = (universe as f64).sqrt().round() as usize;
    let sets: Vec<FixedBitSet> = patches
        .iter()
        .map(|p| bitset_of(universe, &p.planner.domain.iter().map(|&(x, y)| x * n + y).collect::<Vec<_>>()))
        .collect();
    exact_cover(universe, &sets, 100_000).0.expect("categorical products cover X × X")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TcReportError {
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    Bounds { lower: usize, upper: usize },
    #[error("upper bound {upper} differs from the cover size {cover}")]
    CoverSize { upper: usize, cover: usize },
    #[error("cover misses the pair ({x}, {y})")]
    Uncovered { x: usize, y: usize },
    #[error("planners have different lengths")]
    Lengths,
    #[error("patch {index}: {source}")]
    Planner { index: usize, source: PlannerViolation },
    #[error("planner scale differs from the report scale")]
    Scale,
}

/// Re-checks a report's cover without any search: every planner verifies,
/// patches union to `X × X`, and the bounds are consistent.
pub fn verify_tc_report(space: &FiniteMetricSpace, rep: &TcReport) -> Result<(), TcReportError> {
    match (rep.lower, rep.upper) {
        (Some(lower), Some(upper)) => {
            if lower > upper {
                return Err(TcReportError::Bounds { lower, upper });
            }
            if upper != rep.cover.len() {
                return Err(TcReportError::CoverSize { upper, cover: rep.cover.len() });
            }
        }
        (None, None) if rep.cover.is_empty() && !is_r_connected(space, rep.r) => return Ok(()),
        (lower, upper) => {
            return Err(TcReportError::Bounds {
                lower: lower.unwrap_or(usize::MAX),
                upper: upper.unwrap_or(usize::MAX),
            })
        }
    }
    if let Some(first) = rep.cover.first() {
        if rep.cover.iter().any(|p| p.planner.m != first.planner.m) {
            return Err(TcReportError::Lengths);
        }
    }
    let n = space.len();
    let mut covered = vec![false; n * n];
    for (index, p) in rep.cover.iter().enumerate() {
        if p.planner.r != rep.r {
            return Err(TcReportError::Scale);
        }
        verify_planner(space, &p.planner).map_err(|source| TcReportError::Planner { index, source })?;
        for &(x, y) in &p.planner.domain {
            covered[x * n + y] = true;
        }
    }
    if let Some(k) = covered.iter().position(|&c| !c) {
        return Err(TcReportError::Uncovered { x: k / n, y: k % n });
    }
    Ok(())
}

/// Reports at each scale, plus the cross-scale consistency checks.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub reports: Vec<TcReport>,
    /// `(i, j)` with `i < j` where `lower(r_j) > upper(r_i)`.
    pub violations: Vec<(usize, usize)>,
    /// `(i, j, patch)` where a planner from scale `i` failed to verify at scale `j`.
    pub reverify_failures: Vec<(usize, usize, usize)>,
}

impl MonotonicityReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty() && self.reverify_failures.is_empty()
    }
}

/// `TC_r` is non-increasing in `r`: checks that certified intervals agree and
/// that planners found at a scale still verify at every larger one.
pub fn monotonicity_report(space: &FiniteMetricSpace, scales: &[f64], opts: &TcOptions) -> MonotonicityReport {
    assert!(scales.windows(2).all(|w| w[0] < w[1]), "scales must be strictly ascending");
    let reports: Vec<TcReport> = scales.iter().map(|&r| tc_bounds(space, r, opts)).collect();
    let mut violations = Vec::new();
    let mut reverify_failures = Vec::new();
    for i in 0..reports.len() {
        for j in i + 1..reports.len() {
            // None = ∞
            let lower_j = reports[j].lower.unwrap_or(usize::MAX);
            let upper_i = reports[i].upper.unwrap_or(usize::MAX);
            if lower_j > upper_i {
                violations.push((i, j));
            }
            for (k, p) in reports[i].cover.iter().enumerate() {
                if verify_planner(space, &p.planner.with_scale(scales[j])).is_err() {
                    reverify_failures.push((i, j, k));
                }
            }
        }
    }
    MonotonicityReport { reports, violations, reverify_failures }
}

/// Maps `f: X → Y` (`r1`-Lipschitz) and `g: Y → X` (`r2`-Lipschitz) with
/// `(1, r)`-homotopies `f∘g ≃ id_Y` and `g∘f ≃ id_X` (either orientation).
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceData {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub r1: f64,
    pub r2: f64,
    pub r: f64,
    pub grid_y: HomotopyGrid,
    pub grid_x: HomotopyGrid,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EquivalenceViolation {
    #[error("r1 · r2 = {0} exceeds 1 (or a constant is not positive)")]
    Scales(f64),
    #[error("f: {0}")]
    F(MapError),
    #[error("g: {0}")]
    G(MapError),
    #[error("homotopy between f∘g and id_Y: {0}")]
    GridY(HomotopyViolation),
    #[error("homotopy between g∘f and id_X: {0}")]
    GridX(HomotopyViolation),
    #[error("homotopies must be (1, r) at the equivalence's scale")]
    GridScale,
}

fn compose_tables(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&p| outer[p]).collect()
}

/// Checks `a ≃ b` by `grid` in either direction.
fn homotopic_either_way(
    space: &FiniteMetricSpace,
    grid: &HomotopyGrid,
    a: &[usize],
    b: &[usize],
) -> Result<(), HomotopyViolation> {
    verify_homotopy(space, space, grid, a, b).or_else(|e| verify_homotopy(space, space, grid, b, a).map_err(|_| e))
}

pub fn verify_equivalence(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    e: &EquivalenceData,
) -> Result<(), EquivalenceViolation> {
    if !(e.r1 > 0.0 && e.r2 > 0.0) || e.r1 * e.r2 > 1.0 + x.eps() {
        return Err(EquivalenceViolation::Scales(e.r1 * e.r2));
    }
    is_lipschitz(x, y, &e.f, e.r1).map_err(EquivalenceViolation::F)?;
    is_lipschitz(y, x, &e.g, e.r2).map_err(EquivalenceViolation::G)?;
    for grid in [&e.grid_x, &e.grid_y] {
        if grid.s != 1.0 || grid.r != e.r {
            return Err(EquivalenceViolation::GridScale);
        }
    }
    let id_y: Vec<usize> = (0..y.len()).collect();
    let id_x: Vec<usize> = (0..x.len()).collect();
    homotopic_either_way(y, &e.grid_y, &compose_tables(&e.f, &e.g), &id_y).map_err(EquivalenceViolation::GridY)?;
    homotopic_either_way(x, &e.grid_x, &compose_tables(&e.g, &e.f), &id_x).map_err(EquivalenceViolation::GridX)?;
    Ok(())
}

/// A contractible `X` and the one-point space `{p}` have the same `r`-homotopy type.
///
/// Returns the equivalence with `X` in the first slot and the point in the second.
pub fn point_equivalence(space: &FiniteMetricSpace, c: &ContractibilityCertificate) -> EquivalenceData {
    EquivalenceData {
        f: vec![0; space.len()],
        g: vec![c.basepoint],
        r1: 1.0,
        r2: 1.0,
        r: c.r,
        grid_y: HomotopyGrid::stationary(1.0, c.r, vec![0]),
        grid_x: c.grid.clone(),
    }
}

/// Moves a planner on `X` at scale `r / r1` to `Y` at scale `r`:
/// `σ(y, z) = (y ⇝ fg(y)) * f∘s(g(y), g(z)) * (fg(z) ⇝ z)`, on the pairs whose
/// image under `g × g` lies in the planner's patch.
pub fn transport_planner(y: &FiniteMetricSpace, e: &EquivalenceData, planner: &MotionPlanner) -> MotionPlanner {
    let fg = compose_tables(&e.f, &e.g);
    // orient the grid from f∘g to the identity
    let grid = if e.grid_y.start() == fg.as_slice() { e.grid_y.clone() } else { e.grid_y.reversed() };
    let m = grid.m();
    let index = planner.index();
    let mut domain = Vec::new();
    let mut paths = Vec::new();
    for a in 0..y.len() {
        for b in 0..y.len() {
            let Some(&k) = index.get(&(e.g[a], e.g[b])) else {
                continue;
            };
            let mut path: Vec<usize> = grid.track(a);
            path.reverse();
            path.extend(planner.paths[k][1..].iter().map(|&p| e.f[p]));
            path.extend(grid.track(b).into_iter().skip(1));
            domain.push((a, b));
            paths.push(path);
        }
    }
    MotionPlanner { r: e.r, m: 2 * m + planner.m, domain, paths }
}

/// One inequality `TC_r(target) ≤ TC_{r'}(source)` checked at interval level.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub left: TcReport,
    pub right: TcReport,
    /// `lower(left) ≤ upper(right)`.
    pub consistent: bool,
    /// Transported planners from `right`'s cover, all re-verified on the target.
    pub transported: Vec<MotionPlanner>,
    pub transport_ok: bool,
    /// Whether the transported planners cover the target's square.
    pub transport_covers: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    /// `TC_r(Y) ≤ TC_{r/r1}(X)`.
    pub y_by_x: InequalityCheck,
    /// `TC_r(X) ≤ TC_{r/r2}(Y)`.
    pub x_by_y: InequalityCheck,
}

impl InvarianceReport {
    pub fn is_consistent(&self) -> bool {
        [&self.y_by_x, &self.x_by_y].iter().all(|c| c.consistent && c.transport_ok)
    }
}

fn swap(e: &EquivalenceData) -> EquivalenceData {
    EquivalenceData {
        f: e.g.clone(),
        g: e.f.clone(),
        r1: e.r2,
        r2: e.r1,
        r: e.r,
        grid_y: e.grid_x.clone(),
        grid_x: e.grid_y.clone(),
    }
}

fn inequality(
    source: &FiniteMetricSpace,
    target: &FiniteMetricSpace,
    e: &EquivalenceData,
    opts_source: &TcOptions,
    opts_target: &TcOptions,
) -> InequalityCheck {
    let left = tc_bounds(target, e.r, opts_target);
    let right = tc_bounds(source, e.r / e.r1, opts_source);
    let consistent = left.lower.unwrap_or(usize::MAX) <= right.upper.unwrap_or(usize::MAX);
    let transported: Vec<MotionPlanner> =
        right.cover.iter().map(|p| transport_planner(target, e, &p.planner)).collect();
    let transport_ok = transported.iter().all(|p| p.is_empty() || verify_planner(target, p).is_ok());
    let n = target.len();
    let mut covered = vec![false; n * n];
    for p in &transported {
        for &(a, b) in &p.domain {
            covered[a * n + b] = true;
        }
    }
    let transport_covers = !transported.is_empty() && covered.iter().all(|&c| c);
    InequalityCheck { left, right, consistent, transported, transport_ok, transport_covers }
}

/// Checks both invariance inequalities against certified intervals, and
/// re-verifies every transported planner.
pub fn check_invariance_inequalities(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    e: &EquivalenceData,
    opts_x: &TcOptions,
    opts_y: &TcOptions,
) -> InvarianceReport {
    let y_by_x = inequality(x, y, e, opts_x, opts_y);
    let x_by_y = inequality(y, x, &swap(e), opts_y, opts_x);
    InvarianceReport { y_by_x, x_by_y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::gen_circle;

    fn opts(space: &FiniteMetricSpace) -> TcOptions {
        TcOptions::for_space(space)
    }

    #[test]
    fn square_at_r2_is_exactly_one() {
        let sq = gen_circle(4, 1.0).unwrap();
        let rep = tc_bounds(&sq, 2.0, &opts(&sq));
        assert_eq!((rep.lower, rep.upper), (Some(1), Some(1)));
        verify_tc_report(&sq, &rep).unwrap();
    }

    #[test]
    fn hexagon_at_r1_is_exactly_two() {
        let hex = gen_circle(6, 1.0).unwrap();
        let rep = tc_bounds(&hex, 1.0, &opts(&hex));
        assert_eq!((rep.lower, rep.upper), (Some(2), Some(2)));
        assert_eq!(rep.lower_evidence, TcLowerEvidence::NotContractible);
        verify_tc_report(&hex, &rep).unwrap();
        let b = rep.route_b.unwrap();
        assert!(b.upper <= b.categorical_cover);
    }

    #[test]
    fn disconnected_is_infinite() {
        let far = FiniteMetricSpace::from_matrix(&[vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
        let rep = tc_bounds(&far, 1.0, &opts(&far));
        assert_eq!((rep.lower, rep.upper), (None, None));
        assert_eq!(rep.lower_evidence, TcLowerEvidence::Disconnected);
        verify_tc_report(&far, &rep).unwrap();
    }

    #[test]
    fn hexagon_monotonicity() {
        let hex = gen_circle(6, 1.0).unwrap();
        let rep = monotonicity_report(&hex, &[1.0, 2.0], &opts(&hex));
        let bounds: Vec<_> = rep.reports.iter().map(|r| (r.lower, r.upper)).collect();
        assert_eq!(bounds, vec![(Some(2), Some(2)), (Some(1), Some(1))]);
        assert!(rep.is_consistent());
    }

    #[test]
    fn identity_equivalence() {
        let hex = gen_circle(6, 1.0).unwrap();
        let id: Vec<usize> = (0..6).collect();
        let e = EquivalenceData {
            f: id.clone(),
            g: id.clone(),
            r1: 1.0,
            r2: 1.0,
            r: 1.0,
            grid_y: HomotopyGrid::stationary(1.0, 1.0, id.clone()),
            grid_x: HomotopyGrid::stationary(1.0, 1.0, id.clone()),
        };
        assert!(verify_equivalence(&hex, &hex, &e).is_ok());
        let bad = EquivalenceData { r1: 2.0, r2: 2.0, ..e };
        assert!(matches!(verify_equivalence(&hex, &hex, &bad), Err(EquivalenceViolation::Scales(_))));
    }

    #[test]
    fn two_points_are_equivalent_to_a_point() {
        let x = FiniteMetricSpace::from_matrix(&[vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        let Decision::Yes(c) = is_r_contractible(&x, 0.5, 1000) else { panic!() };
        let e = point_equivalence(&x, &c);
        let pt = FiniteMetricSpace::point("p");
        verify_equivalence(&x, &pt, &e).unwrap();
        let rep = check_invariance_inequalities(&x, &pt, &e, &opts(&x), &opts(&pt));
        assert!(rep.is_consistent());
        assert_eq!(rep.y_by_x.left.upper, Some(1));
        assert_eq!(rep.x_by_y.left.upper, Some(1));
        assert!(rep.x_by_y.transport_covers);
    }

    #[test]
    fn hexagon_with_a_whisker() {
        let hex = gen_circle(6, 1.0).unwrap();
        let mut m = hex.matrix();
        let delta = 0.5;
        let whisker: Vec<f64> = (0..6).map(|x| delta + hex.d(0, x)).collect();
        for (row, w) in m.iter_mut().zip(&whisker) {
            row.push(*w);
        }
        let mut last = whisker.clone();
        last.push(0.0);
        m.push(last);
        let mut labels: Vec<String> = hex.labels().to_vec();
        labels.push("w".into());
        let y = FiniteMetricSpace::new(labels, &m).unwrap();
        let f: Vec<usize> = (0..6).collect();
        let mut g: Vec<usize> = (0..6).collect();
        g.push(0);
        let fg = compose_tables(&f, &g);
        let id_y: Vec<usize> = (0..7).collect();
        let e = EquivalenceData {
            f: f.clone(),
            g,
            r1: 1.0,
            r2: 1.0,
            r: 1.0,
            grid_y: HomotopyGrid::new(1.0, 1.0, vec![fg, id_y]),
            grid_x: HomotopyGrid::stationary(1.0, 1.0, f),
        };
        verify_equivalence(&hex, &y, &e).unwrap();
        let rep = check_invariance_inequalities(&hex, &y, &e, &opts(&hex), &opts(&y));
        assert!(rep.is_consistent(), "{rep:?}");
        assert!(rep.y_by_x.transport_covers);
        for p in &rep.y_by_x.transported {
            verify_planner(&y, p).unwrap();
        }
    }
}
