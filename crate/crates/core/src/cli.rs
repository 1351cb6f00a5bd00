//! Command-line surface. `run` parses arguments, calls the library and
//! writes one JSON document; a one-line summary goes to stderr.
//!
//! Exit codes: 0 success or yes, 1 certified no or failed replay, 2 unknown
//! (budget or horizon reached), 3 input error.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::category::{cat_bounds, check_contractible_implies_connected, is_r_categorical, is_r_contractible};
use crate::category::{CatOptions, Decision};
use crate::cert::{self, Body, Document, SpaceJson, VerifyError};
use crate::homotopy::DEFAULT_STATE_BUDGET;
use crate::metric::{self, l1_product, FiniteMetricSpace};
use crate::paths::r_connected_components;
use crate::pi1::{conjugated_loop, is_null_homotopic, lemma_certificate, NullSearch, RLoop};
use crate::planner::{
    planner_from_categorical_patch, product_categorical, synthesize_from_contraction, verify_planner, PlannerViolation,
};
use crate::tc::{monotonicity_report, tc_bounds, TcOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "homotopy-forge", version, about = "Discrete homotopy invariants of finite metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a sample space.
    #[command(subcommand)]
    Gen(Gen),
    /// r-connected components.
    Connectivity(Scaled),
    /// Decide r-contractibility.
    Contractible(Analysis),
    /// Bounds on the discrete LS-category.
    Cat(Analysis),
    /// Bounds on discrete topological complexity.
    Tc(Analysis),
    /// TC bounds across several scales, checked for monotonicity.
    Monotonicity(Multi),
    /// Motion planners.
    #[command(subcommand)]
    Planner(PlannerCmd),
    /// Loops and null-homotopies.
    #[command(subcommand)]
    Pi1(Pi1Cmd),
    /// Replay every certificate in one or more documents.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    Circle {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    Interval {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
    },
    Wedge {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    Hawaiian {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// Space or any document containing one; stdin when omitted.
    #[arg(long)]
    space: Option<PathBuf>,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Scaled {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    r: f64,
}

#[derive(Args, Debug)]
struct Budgets {
    /// States explored per homotopy search.
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget_states: usize,
    /// Largest planner length tried by the patch search (default 2|X|).
    #[arg(long)]
    m_max: Option<usize>,
    /// Spaces up to this size get exhaustive categorical subsets.
    #[arg(long, default_value_t = 10)]
    exact_threshold: usize,
}

#[derive(Args, Debug)]
struct Analysis {
    #[command(flatten)]
    source: Source,
    #[arg(long, required_unless_present = "replay")]
    r: Option<f64>,
    #[command(flatten)]
    budgets: Budgets,
    /// Re-verify this report instead of searching.
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Multi {
    #[command(flatten)]
    source: Source,
    /// Ascending scales, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "replay")]
    scales: Vec<f64>,
    #[command(flatten)]
    budgets: Budgets,
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum PlannerCmd {
    /// Full planner from a contraction.
    Synth {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget_states: usize,
    },
    /// Check a planner document.
    Verify { file: PathBuf },
    /// Planner on `A × B` for categorical subsets `A`, `B` (labels, comma separated).
    Patch {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: f64,
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget_states: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Pi1Cmd {
    /// Search for a null-homotopy of a based loop.
    Null {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: f64,
        /// Loop points by label, comma separated; first and last must agree.
        #[arg(long = "loop", value_delimiter = ',')]
        points: Vec<String>,
        #[arg(long, default_value_t = 4)]
        padding_max: usize,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget_states: usize,
    },
    /// Null-homotopy of the loop moved to the contraction's basepoint.
    Lemma {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: f64,
        #[arg(long = "loop", value_delimiter = ',')]
        points: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget_states: usize,
    },
}

/// An input problem: exit 3 with this message.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<i32, InputError>;

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    configure_threads();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("HOMOTOPY_FORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a pool may already exist when run is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn read_space(source: &Source) -> Result<FiniteMetricSpace, InputError> {
    let text = match &source.space {
        Some(path) => fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(cert::parse_space(&text)?)
}

fn emit(out: &Option<PathBuf>, doc: &Document) -> Result<(), InputError> {
    let json = doc.to_json();
    match out {
        Some(path) => fs::write(path, json).map_err(|e| InputError(format!("{}: {e}", path.display()))),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn points(space: &FiniteMetricSpace, labels: &[String]) -> Result<Vec<usize>, InputError> {
    labels.iter().map(|l| space.index_of(l).ok_or_else(|| InputError(format!("unknown point {l:?}")))).collect()
}

fn positive(r: f64) -> Result<f64, InputError> {
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(InputError(format!("scale must be positive, got {r}")))
    }
}

fn tc_options(space: &FiniteMetricSpace, b: &Budgets) -> Result<TcOptions, InputError> {
    if b.budget_states == 0 || b.m_max == Some(0) {
        return Err(InputError("budgets must be positive".into()));
    }
    let mut opts = TcOptions::for_space(space);
    opts.budget = b.budget_states;
    opts.exact_threshold = b.exact_threshold;
    if let Some(m) = b.m_max {
        opts.patch.m_max = m;
    }
    Ok(opts)
}

fn decision_code<C>(d: &Decision<C>) -> i32 {
    match d {
        Decision::Yes(_) => EXIT_OK,
        Decision::No => EXIT_NO,
        Decision::Unknown => EXIT_UNKNOWN,
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Gen(g) => {
            let space = match g {
                Gen::Circle { n, radius } => metric::gen_circle(n, radius)?,
                Gen::Interval { m, length } => metric::gen_interval_grid(m, length)?,
                Gen::Wedge { k, n, radius } => metric::gen_wedge_circles(k, n, radius)?,
                Gen::Hawaiian { k, n } => metric::gen_hawaiian(k, n)?,
            };
            eprintln!("{} points, diameter {}", space.len(), space.diameter());
            emit(&None, &Document::new(Body::Space { space: SpaceJson::from_space(&space) }))?;
            Ok(EXIT_OK)
        }
        Command::Connectivity(a) => {
            let space = read_space(&a.source)?;
            let r = positive(a.r)?;
            let comps = r_connected_components(&space, r);
            let connected = comps.len() == 1;
            eprintln!("{} component(s) at r = {r}", comps.len());
            let components = comps.iter().map(|c| c.iter().map(|&p| space.label(p).to_string()).collect()).collect();
            let body = Body::Connectivity { space: SpaceJson::from_space(&space), r, connected, components };
            emit(&a.source.out, &Document::new(body))?;
            Ok(if connected { EXIT_OK } else { EXIT_NO })
        }
        Command::Contractible(a) => {
            if let Some(path) = &a.replay {
                return replay(path, "contractibility");
            }
            let space = read_space(&a.source)?;
            let r = positive(a.r.expect("clap requires r"))?;
            let d = is_r_contractible(&space, r, a.budgets.budget_states);
            if let Decision::Yes(c) = &d {
                // a contraction always comes with r-connectedness
                check_contractible_implies_connected(&space, c)
                    .map_err(|w| InputError(format!("internal: contraction without connectivity: {w:?}")))?;
            }
            eprintln!("r-contractible at r = {r}: {}", verdict_word(&d));
            emit(&a.source.out, &Document::new(cert::contractibility_body(&space, r, &d)))?;
            Ok(decision_code(&d))
        }
        Command::Cat(a) => {
            if let Some(path) = &a.replay {
                return replay(path, "cat_report");
            }
            let space = read_space(&a.source)?;
            let r = positive(a.r.expect("clap requires r"))?;
            let opts = tc_options(&space, &a.budgets)?;
            let cat_opts =
                CatOptions { budget: opts.budget, exact_threshold: opts.exact_threshold, ..CatOptions::default() };
            let rep = cat_bounds(&space, r, &cat_opts);
            eprintln!("cat at r = {r}: [{}, {}]", rep.lower, rep.upper);
            let body =
                Body::CatReport { space: SpaceJson::from_space(&space), report: cert::cat_report_json(&space, &rep) };
            emit(&a.source.out, &Document::new(body))?;
            Ok(if rep.exact { EXIT_OK } else { EXIT_UNKNOWN })
        }
        Command::Tc(a) => {
            if let Some(path) = &a.replay {
                return replay(path, "tc_report");
            }
            let space = read_space(&a.source)?;
            let r = positive(a.r.expect("clap requires r"))?;
            let opts = tc_options(&space, &a.budgets)?;
            let rep = tc_bounds(&space, r, &opts);
            let show = |b: Option<usize>| b.map_or("inf".to_string(), |v| v.to_string());
            eprintln!("TC at r = {r}: [{}, {}]", show(rep.lower), show(rep.upper));
            let body =
                Body::TcReport { space: SpaceJson::from_space(&space), report: cert::tc_report_json(&space, &rep) };
            emit(&a.source.out, &Document::new(body))?;
            Ok(if rep.lower == rep.upper { EXIT_OK } else { EXIT_UNKNOWN })
        }
        Command::Monotonicity(m) => {
            if let Some(path) = &m.replay {
                return replay(path, "monotonicity");
            }
            let space = read_space(&m.source)?;
            for &r in &m.scales {
                positive(r)?;
            }
            if m.scales.is_empty() || !m.scales.windows(2).all(|w| w[0] < w[1]) {
                return Err(InputError("scales must be non-empty and strictly ascending".into()));
            }
            let opts = tc_options(&space, &m.budgets)?;
            let rep = monotonicity_report(&space, &m.scales, &opts);
            eprintln!(
                "{} scale(s), {} violation(s), {} re-verification failure(s)",
                m.scales.len(),
                rep.violations.len(),
                rep.reverify_failures.len()
            );
            emit(&m.source.out, &Document::new(cert::monotonicity_body(&space, &m.scales, &rep)))?;
            Ok(if rep.is_consistent() { EXIT_OK } else { EXIT_NO })
        }
        Command::Planner(PlannerCmd::Synth { source, r, budget_states }) => {
            let space = read_space(&source)?;
            let r = positive(r)?;
            let d = is_r_contractible(&space, r, budget_states);
            let Decision::Yes(c) = &d else {
                eprintln!("no contraction at r = {r}: {}", verdict_word(&d));
                return Ok(decision_code(&d));
            };
            let p = synthesize_from_contraction(&space, c);
            verify_planner(&space, &p).map_err(|e| InputError(format!("internal: synthesized planner fails: {e}")))?;
            eprintln!("planner on {} pairs, length {}", p.len(), p.m);
            let body = Body::Planner { space: SpaceJson::from_space(&space), planner: cert::planner_json(&space, &p) };
            emit(&source.out, &Document::new(body))?;
            Ok(EXIT_OK)
        }
        Command::Planner(PlannerCmd::Verify { file }) => replay(&file, "planner"),
        Command::Planner(PlannerCmd::Patch { source, r, a, b, budget_states }) => {
            let space = read_space(&source)?;
            let r = positive(r)?;
            let (a, b) = (points(&space, &a)?, points(&space, &b)?);
            if a.is_empty() || b.is_empty() {
                return Err(InputError("--a and --b need at least one point each".into()));
            }
            let da = is_r_categorical(&space, &a, r, budget_states);
            let db = is_r_categorical(&space, &b, r, budget_states);
            let (Decision::Yes(ca), Decision::Yes(cb)) = (&da, &db) else {
                eprintln!("subsets not both r-categorical: {} / {}", verdict_word(&da), verdict_word(&db));
                return Ok(if da.is_no() || db.is_no() { EXIT_NO } else { EXIT_UNKNOWN });
            };
            let product = l1_product(&space, &space);
            let cert = product_categorical(&product, ca, cb);
            let p = planner_from_categorical_patch(&space, &product, &cert).map_err(InputError::from)?;
            eprintln!("planner on {} pairs, length {}", p.len(), p.m);
            let body = Body::Planner { space: SpaceJson::from_space(&space), planner: cert::planner_json(&space, &p) };
            emit(&source.out, &Document::new(body))?;
            Ok(EXIT_OK)
        }
        Command::Pi1(Pi1Cmd::Null { source, r, points: labels, padding_max, budget_states }) => {
            let space = read_space(&source)?;
            let lp = RLoop::new(&space, points(&space, &labels)?, positive(r)?)?;
            match is_null_homotopic(&space, &lp, padding_max, budget_states) {
                NullSearch::Null(grid) => {
                    eprintln!("null-homotopic, grid {} x {}", grid.rows.len(), grid.rows[0].len());
                    let body = Body::NullHomotopy {
                        space: SpaceJson::from_space(&space),
                        grid: cert::null_grid_json(&space, &grid, Some(&lp)),
                    };
                    emit(&source.out, &Document::new(body))?;
                    Ok(EXIT_OK)
                }
                NullSearch::NotFoundWithinBudget => {
                    eprintln!("no null-homotopy within padding {padding_max}");
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Pi1(Pi1Cmd::Lemma { source, r, points: labels, budget_states }) => {
            let space = read_space(&source)?;
            let r = positive(r)?;
            let lp = RLoop::new(&space, points(&space, &labels)?, r)?;
            let d = is_r_contractible(&space, r, budget_states);
            let Decision::Yes(c) = &d else {
                eprintln!("no contraction at r = {r}: {}", verdict_word(&d));
                return Ok(decision_code(&d));
            };
            let grid = lemma_certificate(&space, c, &lp)?;
            let top = conjugated_loop(c, &lp);
            eprintln!("null-homotopy of the conjugated loop, grid {} x {}", grid.rows.len(), grid.rows[0].len());
            let body = Body::NullHomotopy {
                space: SpaceJson::from_space(&space),
                grid: cert::null_grid_json(&space, &grid, Some(&top)),
            };
            emit(&source.out, &Document::new(body))?;
            Ok(EXIT_OK)
        }
        Command::Verify { files } => {
            let mut worst = EXIT_OK;
            for file in &files {
                worst = worst.max(replay(file, "")?);
            }
            Ok(worst)
        }
    }
}

fn verdict_word<C>(d: &Decision<C>) -> &'static str {
    match d {
        Decision::Yes(_) => "yes",
        Decision::No => "no",
        Decision::Unknown => "unknown",
    }
}

/// Replays `path`; `kind` restricts the document kind unless empty. The
/// file must also be byte-identical to its own re-serialization.
fn replay(path: &PathBuf, kind: &str) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let doc = Document::parse(&text)?;
    if !kind.is_empty() && doc.kind() != kind {
        return Err(InputError(format!("expected a {kind} document, found {}", doc.kind())));
    }
    if doc.to_json() != text {
        eprintln!("{}: not in canonical form", path.display());
        return Ok(EXIT_NO);
    }
    match cert::verify_document(&doc) {
        Ok(replay) => {
            eprintln!("{}: {} ok, {} certificate(s) replayed", path.display(), replay.kind, replay.certificates);
            Ok(EXIT_OK)
        }
        Err(e) => {
            let witness = match (&e, doc.space().to_space()) {
                (VerifyError::Planner(v), Ok(space)) => planner_witness(&space, v),
                _ => e.to_string(),
            };
            eprintln!("{}: {} FAILED: {witness}", path.display(), doc.kind());
            Ok(EXIT_NO)
        }
    }
}

/// A planner violation with point labels instead of indices.
fn planner_witness(space: &FiniteMetricSpace, v: &PlannerViolation) -> String {
    let l = |p: usize| space.labels().get(p).map_or_else(|| format!("#{p}"), |s| s.clone());
    match *v {
        PlannerViolation::Section { x, y } => format!("path for ({}, {}) does not run between them", l(x), l(y)),
        PlannerViolation::Step { x, y, index } => {
            format!("path for ({}, {}) jumps more than r at step {index}", l(x), l(y))
        }
        PlannerViolation::Length { x, y, len, m } => format!("path for ({}, {}) has {len} steps, not {m}", l(x), l(y)),
        PlannerViolation::NotLipschitz { first, second, distance, bound } => format!(
            "paths for ({}, {}) and ({}, {}) are {distance} apart, bound {bound}",
            l(first.0),
            l(first.1),
            l(second.0),
            l(second.1)
        ),
        _ => v.to_string(),
    }
}
