//! JSON documents: spaces, certificates and reports.
//!
//! Every document is an object with `schema_version`, `kind` and `space`;
//! points are referred to by label and maps are written as `label → label`
//! objects. Documents are parsed into the wire structs below and serialized
//! back byte for byte. Replaying a document ([`verify_document`]) re-checks
//! every embedded certificate without searching.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{
    CatLowerEvidence, CatReport, CategoricalCertificate, CertificateError, ContractibilityCertificate, Decision,
};
use crate::homotopy::HomotopyGrid;
use crate::metric::{FiniteMetricSpace, MetricError};
use crate::paths::r_connected_components;
use crate::pi1::{GridError, NullHomotopyGrid, RLoop};
use crate::planner::{verify_planner, MotionPlanner, PlannerViolation};
use crate::tc::{
    verify_equivalence, verify_tc_report, EquivalenceData, EquivalenceViolation, MonotonicityReport, PatchSource,
    RouteB, TcLowerEvidence, TcPatch, TcReport, TcReportError,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0}")]
    Version(u32),
    #[error("invalid space: {0}")]
    Space(#[from] MetricError),
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("map is missing the point {0:?}")]
    MissingPoint(String),
    #[error("path table has no entry for {0:?}")]
    MissingPath(String),
    #[error("{0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub metric: MetricJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MetricJson {
    Explicit { matrix: Vec<Vec<f64>> },
    Euclidean { coords: Vec<Vec<f64>> },
}

impl SpaceJson {
    pub fn from_space(space: &FiniteMetricSpace) -> Self {
        Self { labels: Some(space.labels().to_vec()), metric: MetricJson::Explicit { matrix: space.matrix() } }
    }

    pub fn to_space(&self) -> Result<FiniteMetricSpace, FormatError> {
        let n = match &self.metric {
            MetricJson::Explicit { matrix } => matrix.len(),
            MetricJson::Euclidean { coords } => coords.len(),
        };
        let labels = self.labels.clone().unwrap_or_else(|| (0..n).map(|i| format!("p{i}")).collect());
        Ok(match &self.metric {
            MetricJson::Explicit { matrix } => FiniteMetricSpace::new(labels, matrix)?,
            MetricJson::Euclidean { coords } => FiniteMetricSpace::from_euclidean(labels, coords)?,
        })
    }
}

/// A map table, `label → label`.
pub type MapJson = IndexMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridJson {
    pub s: f64,
    pub r: f64,
    pub frames: Vec<MapJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictJson {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionJson {
    pub basepoint: String,
    pub grid: GridJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoricalJson {
    pub subset: Vec<String>,
    pub grid: GridJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannerJson {
    pub r: f64,
    pub m: usize,
    pub domain: Vec<[String; 2]>,
    pub paths: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullGridJson {
    pub r: f64,
    pub basepoint: String,
    /// The loop the first row must equal (after padding), when recorded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatEvidenceJson {
    Contractible,
    Components { components: usize, non_contractible: usize },
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatReportJson {
    pub r: f64,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub contractible: VerdictJson,
    pub lower_evidence: CatEvidenceJson,
    pub cover: Vec<CategoricalJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TcEvidenceJson {
    Contractible,
    NotContractible,
    CatLower(usize),
    Unknown,
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatchSourceJson {
    Contraction,
    CategoricalProduct,
    Band,
    Search,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TcPatchJson {
    pub source: PatchSourceJson,
    pub planner: PlannerJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteBJson {
    pub categorical_cover: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TcReportJson {
    pub r: f64,
    /// `null` means infinite.
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub lower_evidence: TcEvidenceJson,
    pub route_b: Option<RouteBJson>,
    pub cover: Vec<TcPatchJson>,
    pub cat: Option<CatReportJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceJson {
    pub target_space: SpaceJson,
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
    pub f: MapJson,
    pub g: MapJson,
    pub grid_y: GridJson,
    pub grid_x: GridJson,
}

/// Every document kind; `kind` is the tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Space {
        space: SpaceJson,
    },
    Connectivity {
        space: SpaceJson,
        r: f64,
        connected: bool,
        components: Vec<Vec<String>>,
    },
    Contractibility {
        space: SpaceJson,
        r: f64,
        verdict: VerdictJson,
        certificate: Option<ContractionJson>,
    },
    Categorical {
        space: SpaceJson,
        r: f64,
        subset: Vec<String>,
        verdict: VerdictJson,
        certificate: Option<CategoricalJson>,
    },
    Planner {
        space: SpaceJson,
        #[serde(flatten)]
        planner: PlannerJson,
    },
    NullHomotopy {
        space: SpaceJson,
        #[serde(flatten)]
        grid: NullGridJson,
    },
    CatReport {
        space: SpaceJson,
        #[serde(flatten)]
        report: CatReportJson,
    },
    TcReport {
        space: SpaceJson,
        #[serde(flatten)]
        report: TcReportJson,
    },
    Monotonicity {
        space: SpaceJson,
        scales: Vec<f64>,
        reports: Vec<TcReportJson>,
        violations: Vec<[usize; 2]>,
        reverify_failures: Vec<[usize; 3]>,
    },
    Equivalence {
        space: SpaceJson,
        #[serde(flatten)]
        data: EquivalenceJson,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: Body,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Self { schema_version: SCHEMA_VERSION, body }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(FormatError::Version(doc.schema_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn kind(&self) -> &'static str {
        match &self.body {
            Body::Space { .. } => "space",
            Body::Connectivity { .. } => "connectivity",
            Body::Contractibility { .. } => "contractibility",
            Body::Categorical { .. } => "categorical",
            Body::Planner { .. } => "planner",
            Body::NullHomotopy { .. } => "null_homotopy",
            Body::CatReport { .. } => "cat_report",
            Body::TcReport { .. } => "tc_report",
            Body::Monotonicity { .. } => "monotonicity",
            Body::Equivalence { .. } => "equivalence",
        }
    }

    pub fn space(&self) -> &SpaceJson {
        match &self.body {
            Body::Space { space }
            | Body::Connectivity { space, .. }
            | Body::Contractibility { space, .. }
            | Body::Categorical { space, .. }
            | Body::Planner { space, .. }
            | Body::NullHomotopy { space, .. }
            | Body::CatReport { space, .. }
            | Body::TcReport { space, .. }
            | Body::Monotonicity { space, .. }
            | Body::Equivalence { space, .. } => space,
        }
    }
}

/// Parses a bare space, or the `space` of any document.
pub fn parse_space(text: &str) -> Result<FiniteMetricSpace, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("kind").is_some() {
        return Document::parse(text)?.space().to_space();
    }
    let space: SpaceJson = serde_json::from_value(value)?;
    space.to_space()
}

// ---- library values → wire ----

fn label(space: &FiniteMetricSpace, p: usize) -> String {
    space.label(p).to_string()
}

fn labels(space: &FiniteMetricSpace, points: &[usize]) -> Vec<String> {
    points.iter().map(|&p| label(space, p)).collect()
}

fn map_json(domain: &FiniteMetricSpace, codomain: &FiniteMetricSpace, table: &[usize]) -> MapJson {
    table.iter().enumerate().map(|(x, &y)| (label(domain, x), label(codomain, y))).collect()
}

pub fn grid_json(domain: &FiniteMetricSpace, codomain: &FiniteMetricSpace, grid: &HomotopyGrid) -> GridJson {
    GridJson { s: grid.s, r: grid.r, frames: grid.frames.iter().map(|f| map_json(domain, codomain, f)).collect() }
}

fn decision_verdict<C>(d: &Decision<C>) -> VerdictJson {
    match d {
        Decision::Yes(_) => VerdictJson::Yes,
        Decision::No => VerdictJson::No,
        Decision::Unknown => VerdictJson::Unknown,
    }
}

pub fn contractibility_body(space: &FiniteMetricSpace, r: f64, d: &Decision<ContractibilityCertificate>) -> Body {
    Body::Contractibility {
        space: SpaceJson::from_space(space),
        r,
        verdict: decision_verdict(d),
        certificate: d
            .certificate()
            .map(|c| ContractionJson { basepoint: label(space, c.basepoint), grid: grid_json(space, space, &c.grid) }),
    }
}

pub fn categorical_json(space: &FiniteMetricSpace, c: &CategoricalCertificate) -> CategoricalJson {
    let domain = space.subspace(&c.subset);
    CategoricalJson { subset: labels(space, &c.subset), grid: grid_json(&domain, space, &c.grid) }
}

pub fn categorical_body(
    space: &FiniteMetricSpace,
    r: f64,
    subset: &[usize],
    d: &Decision<CategoricalCertificate>,
) -> Body {
    Body::Categorical {
        space: SpaceJson::from_space(space),
        r,
        subset: labels(space, subset),
        verdict: decision_verdict(d),
        certificate: d.certificate().map(|c| categorical_json(space, c)),
    }
}

pub fn path_key(x: &str, y: &str) -> String {
    format!("{x}|{y}")
}

pub fn planner_json(space: &FiniteMetricSpace, p: &MotionPlanner) -> PlannerJson {
    let domain = p.domain.iter().map(|&(x, y)| [label(space, x), label(space, y)]).collect();
    let paths = p
        .domain
        .iter()
        .zip(&p.paths)
        .map(|(&(x, y), path)| (path_key(space.label(x), space.label(y)), labels(space, path)))
        .collect();
    PlannerJson { r: p.r, m: p.m, domain, paths }
}

pub fn null_grid_json(space: &FiniteMetricSpace, g: &NullHomotopyGrid, top: Option<&RLoop>) -> NullGridJson {
    NullGridJson {
        r: g.r,
        basepoint: label(space, g.basepoint),
        top: top.map(|l| labels(space, &l.points)),
        rows: g.rows.iter().map(|row| labels(space, row)).collect(),
    }
}

pub fn cat_report_json(space: &FiniteMetricSpace, rep: &CatReport) -> CatReportJson {
    CatReportJson {
        r: rep.r,
        lower: rep.lower,
        upper: rep.upper,
        exact: rep.exact,
        contractible: decision_verdict(&rep.contractible),
        lower_evidence: match rep.lower_evidence {
            CatLowerEvidence::Contractible => CatEvidenceJson::Contractible,
            CatLowerEvidence::Components { components, non_contractible } => {
                CatEvidenceJson::Components { components, non_contractible }
            }
            CatLowerEvidence::Exhaustive => CatEvidenceJson::Exhaustive,
        },
        cover: rep.cover.iter().map(|c| categorical_json(space, c)).collect(),
    }
}

pub fn tc_report_json(space: &FiniteMetricSpace, rep: &TcReport) -> TcReportJson {
    TcReportJson {
        r: rep.r,
        lower: rep.lower,
        upper: rep.upper,
        lower_evidence: match rep.lower_evidence {
            TcLowerEvidence::Contractible => TcEvidenceJson::Contractible,
            TcLowerEvidence::NotContractible => TcEvidenceJson::NotContractible,
            TcLowerEvidence::CatLower(k) => TcEvidenceJson::CatLower(k),
            TcLowerEvidence::Unknown => TcEvidenceJson::Unknown,
            TcLowerEvidence::Disconnected => TcEvidenceJson::Disconnected,
        },
        route_b: rep.route_b.map(|b| RouteBJson { categorical_cover: b.categorical_cover, upper: b.upper }),
        cover: rep
            .cover
            .iter()
            .map(|p| TcPatchJson {
                source: match p.source {
                    PatchSource::Contraction => PatchSourceJson::Contraction,
                    PatchSource::CategoricalProduct => PatchSourceJson::CategoricalProduct,
                    PatchSource::Band => PatchSourceJson::Band,
                    PatchSource::Search => PatchSourceJson::Search,
                },
                planner: planner_json(space, &p.planner),
            })
            .collect(),
        cat: rep.cat.as_ref().map(|c| cat_report_json(space, c)),
    }
}

pub fn monotonicity_body(space: &FiniteMetricSpace, scales: &[f64], rep: &MonotonicityReport) -> Body {
    Body::Monotonicity {
        space: SpaceJson::from_space(space),
        scales: scales.to_vec(),
        reports: rep.reports.iter().map(|r| tc_report_json(space, r)).collect(),
        violations: rep.violations.iter().map(|&(i, j)| [i, j]).collect(),
        reverify_failures: rep.reverify_failures.iter().map(|&(i, j, k)| [i, j, k]).collect(),
    }
}

pub fn equivalence_body(x: &FiniteMetricSpace, y: &FiniteMetricSpace, e: &EquivalenceData) -> Body {
    Body::Equivalence {
        space: SpaceJson::from_space(x),
        data: EquivalenceJson {
            target_space: SpaceJson::from_space(y),
            r: e.r,
            r1: e.r1,
            r2: e.r2,
            f: map_json(x, y, &e.f),
            g: map_json(y, x, &e.g),
            grid_y: grid_json(y, y, &e.grid_y),
            grid_x: grid_json(x, x, &e.grid_x),
        },
    }
}

// ---- wire → library values ----

fn index(space: &FiniteMetricSpace, l: &str) -> Result<usize, FormatError> {
    space.index_of(l).ok_or_else(|| FormatError::UnknownLabel(l.to_string()))
}

fn indices(space: &FiniteMetricSpace, ls: &[String]) -> Result<Vec<usize>, FormatError> {
    ls.iter().map(|l| index(space, l)).collect()
}

fn table(domain: &FiniteMetricSpace, codomain: &FiniteMetricSpace, m: &MapJson) -> Result<Vec<usize>, FormatError> {
    if m.len() != domain.len() {
        return Err(FormatError::Shape(format!("map has {} entries, domain has {} points", m.len(), domain.len())));
    }
    for k in m.keys() {
        index(domain, k)?;
    }
    domain
        .labels()
        .iter()
        .map(|l| m.get(l).ok_or_else(|| FormatError::MissingPoint(l.clone())).and_then(|y| index(codomain, y)))
        .collect()
}

pub fn grid_from_json(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    g: &GridJson,
) -> Result<HomotopyGrid, FormatError> {
    let frames = g.frames.iter().map(|f| table(domain, codomain, f)).collect::<Result<_, _>>()?;
    Ok(HomotopyGrid::new(g.s, g.r, frames))
}

pub fn categorical_from_json(
    space: &FiniteMetricSpace,
    r: f64,
    c: &CategoricalJson,
) -> Result<CategoricalCertificate, FormatError> {
    let subset = indices(space, &c.subset)?;
    if subset.is_empty() || subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FormatError::Shape("subset must be non-empty and listed in label order".into()));
    }
    let domain = space.subspace(&subset);
    Ok(CategoricalCertificate { r, subset, grid: grid_from_json(&domain, space, &c.grid)? })
}

pub fn planner_from_json(space: &FiniteMetricSpace, p: &PlannerJson) -> Result<MotionPlanner, FormatError> {
    if p.paths.len() != p.domain.len() {
        return Err(FormatError::Shape("paths and domain have different sizes".into()));
    }
    let mut domain = Vec::with_capacity(p.domain.len());
    let mut paths = Vec::with_capacity(p.domain.len());
    for [x, y] in &p.domain {
        domain.push((index(space, x)?, index(space, y)?));
        let key = path_key(x, y);
        let path = p.paths.get(&key).ok_or(FormatError::MissingPath(key))?;
        paths.push(indices(space, path)?);
    }
    Ok(MotionPlanner { r: p.r, m: p.m, domain, paths })
}

pub fn tc_report_from_json(space: &FiniteMetricSpace, t: &TcReportJson) -> Result<TcReport, FormatError> {
    let cover = t
        .cover
        .iter()
        .map(|p| {
            Ok(TcPatch {
                source: match p.source {
                    PatchSourceJson::Contraction => PatchSource::Contraction,
                    PatchSourceJson::CategoricalProduct => PatchSource::CategoricalProduct,
                    PatchSourceJson::Band => PatchSource::Band,
                    PatchSourceJson::Search => PatchSource::Search,
                },
                planner: planner_from_json(space, &p.planner)?,
            })
        })
        .collect::<Result<_, FormatError>>()?;
    Ok(TcReport {
        r: t.r,
        lower: t.lower,
        upper: t.upper,
        cover,
        lower_evidence: match t.lower_evidence {
            TcEvidenceJson::Contractible => TcLowerEvidence::Contractible,
            TcEvidenceJson::NotContractible => TcLowerEvidence::NotContractible,
            TcEvidenceJson::CatLower(k) => TcLowerEvidence::CatLower(k),
            TcEvidenceJson::Unknown => TcLowerEvidence::Unknown,
            TcEvidenceJson::Disconnected => TcLowerEvidence::Disconnected,
        },
        route_b: t.route_b.map(|b| RouteB { categorical_cover: b.categorical_cover, upper: b.upper }),
        cat: None,
    })
}

// ---- replay ----

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("certificate: {0}")]
    Certificate(#[from] CertificateError),
    #[error("planner: {0}")]
    Planner(#[from] PlannerViolation),
    #[error("null-homotopy: {0}")]
    Grid(#[from] GridError),
    #[error("report: {0}")]
    Report(#[from] TcReportError),
    #[error("equivalence: {0}")]
    Equivalence(#[from] EquivalenceViolation),
    #[error("{0}")]
    Claim(String),
}

/// What a successful replay checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub kind: &'static str,
    pub certificates: usize,
}

fn claim(ok: bool, msg: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Claim(msg()))
    }
}

fn verify_cat_report(space: &FiniteMetricSpace, rep: &CatReportJson) -> Result<usize, VerifyError> {
    claim(rep.lower <= rep.upper, || format!("cat lower {} exceeds upper {}", rep.lower, rep.upper))?;
    claim(rep.upper == rep.cover.len(), || format!("cat upper {} but cover has {}", rep.upper, rep.cover.len()))?;
    claim(rep.exact == (rep.lower == rep.upper), || "exact flag disagrees with the bounds".into())?;
    let mut covered = vec![false; space.len()];
    for c in &rep.cover {
        let cert = categorical_from_json(space, rep.r, c)?;
        cert.verify(space)?;
        for &p in &cert.subset {
            covered[p] = true;
        }
    }
    if let Some(p) = covered.iter().position(|&c| !c) {
        return Err(VerifyError::Claim(format!("cat cover misses {}", space.label(p))));
    }
    Ok(rep.cover.len())
}

fn verify_tc_json(space: &FiniteMetricSpace, rep: &TcReportJson) -> Result<usize, VerifyError> {
    let tc = tc_report_from_json(space, rep)?;
    verify_tc_report(space, &tc)?;
    let mut n = tc.cover.len();
    if let Some(b) = rep.route_b {
        claim(b.upper <= b.categorical_cover, || "route (b) upper exceeds its categorical cover".into())?;
    }
    if let Some(cat) = &rep.cat {
        n += verify_cat_report(space, cat)?;
        if let Some(upper) = rep.upper {
            claim(cat.lower <= upper, || format!("cat lower {} exceeds TC upper {upper}", cat.lower))?;
        }
    }
    Ok(n)
}

/// Re-checks every certificate in `doc`. Documents with nothing certified
/// (a `no` or `unknown` verdict) replay with zero certificates.
pub fn verify_document(doc: &Document) -> Result<Replay, VerifyError> {
    let space = doc.space().to_space()?;
    let certificates = match &doc.body {
        Body::Space { .. } => 0,
        Body::Connectivity { r, connected, components, .. } => {
            let actual: Vec<Vec<String>> =
                r_connected_components(&space, *r).iter().map(|c| labels(&space, c)).collect();
            claim(&actual == components, || "components differ from the recomputed ones".into())?;
            claim(*connected == (actual.len() == 1), || "connected flag disagrees with the components".into())?;
            0
        }
        Body::Contractibility { r, verdict, certificate, .. } => match (verdict, certificate) {
            (VerdictJson::Yes, Some(c)) => {
                let cert = ContractibilityCertificate {
                    r: *r,
                    basepoint: index(&space, &c.basepoint)?,
                    grid: grid_from_json(&space, &space, &c.grid)?,
                };
                cert.verify(&space)?;
                1
            }
            (VerdictJson::Yes, None) => return Err(VerifyError::Claim("yes verdict without certificate".into())),
            (_, Some(_)) => return Err(VerifyError::Claim("certificate attached to a negative verdict".into())),
            (_, None) => 0,
        },
        Body::Categorical { r, subset, verdict, certificate, .. } => match (verdict, certificate) {
            (VerdictJson::Yes, Some(c)) => {
                claim(&c.subset == subset, || "certificate is for a different subset".into())?;
                categorical_from_json(&space, *r, c)?.verify(&space)?;
                1
            }
            (VerdictJson::Yes, None) => return Err(VerifyError::Claim("yes verdict without certificate".into())),
            (_, Some(_)) => return Err(VerifyError::Claim("certificate attached to a negative verdict".into())),
            (_, None) => 0,
        },
        Body::Planner { planner, .. } => {
            verify_planner(&space, &planner_from_json(&space, planner)?)?;
            1
        }
        Body::NullHomotopy { grid, .. } => {
            let g = NullHomotopyGrid {
                r: grid.r,
                basepoint: index(&space, &grid.basepoint)?,
                rows: grid.rows.iter().map(|row| indices(&space, row)).collect::<Result<_, _>>()?,
            };
            match &grid.top {
                Some(top) => {
                    let points = indices(&space, top)?;
                    let lp = RLoop { r: g.r, basepoint: g.basepoint, points };
                    g.verify_for(&space, &lp)?;
                }
                None => g.verify(&space)?,
            }
            1
        }
        Body::CatReport { report, .. } => verify_cat_report(&space, report)?,
        Body::TcReport { report, .. } => verify_tc_json(&space, report)?,
        Body::Monotonicity { scales, reports, violations, reverify_failures, .. } => {
            claim(scales.len() == reports.len(), || "one report per scale expected".into())?;
            claim(scales.windows(2).all(|w| w[0] < w[1]), || "scales must ascend".into())?;
            let mut n = 0;
            let mut parsed = Vec::new();
            for (s, rep) in scales.iter().zip(reports) {
                claim(rep.r == *s, || "report scale differs from the listed scale".into())?;
                n += verify_tc_json(&space, rep)?;
                parsed.push(tc_report_from_json(&space, rep)?);
            }
            let mut found = Vec::new();
            let mut failures = Vec::new();
            for i in 0..parsed.len() {
                for j in i + 1..parsed.len() {
                    if parsed[j].lower.unwrap_or(usize::MAX) > parsed[i].upper.unwrap_or(usize::MAX) {
                        found.push([i, j]);
                    }
                    for (k, p) in parsed[i].cover.iter().enumerate() {
                        if verify_planner(&space, &p.planner.with_scale(scales[j])).is_err() {
                            failures.push([i, j, k]);
                        }
                    }
                }
            }
            claim(&found == violations && &failures == reverify_failures, || {
                "recorded consistency checks differ from the replayed ones".into()
            })?;
            n
        }
        Body::Equivalence { data, .. } => {
            let y = data.target_space.to_space()?;
            let e = EquivalenceData {
                f: table(&space, &y, &data.f)?,
                g: table(&y, &space, &data.g)?,
                r1: data.r1,
                r2: data.r2,
                r: data.r,
                grid_y: grid_from_json(&y, &y, &data.grid_y)?,
                grid_x: grid_from_json(&space, &space, &data.grid_x)?,
            };
            verify_equivalence(&space, &y, &e)?;
            1
        }
    };
    Ok(Replay { kind: doc.kind(), certificates })
}
