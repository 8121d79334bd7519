//! The commands of `dtutte`, as functions from input text to output text.

use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tutte_core::boundary::{harmonize_rel_anchor, BoundaryError};
use tutte_core::cover::{default_escape_bounds, escape_all, Escape, Side};
use tutte_core::drawing::factor_simplicial;
use tutte_core::gen::{random_drawing, torus_stalling_walk, torus_straight_loop};
use tutte_core::harmonizer::{apply_move, audit, harmonize, AuditError, Config, HarmonizeError, HarmonyState, Move};
use tutte_core::surface::*;
use tutte_core::walkcalc::{reduce_closed, reduce_open, ClosedReduction, StallReason, WalkError};

use crate::export;
use crate::formats::{self, parse_drawing, parse_trace, parse_walk, write_drawing, write_trace, write_tri, write_walk, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Input that cannot be read or does not describe a valid object.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// Well-formed input on which the requested operation fails.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Malformed(e.to_string())
    }
}

fn malformed(e: impl std::fmt::Display) -> CliError {
    CliError::Malformed(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// Parses a triangulation and builds it, without checking that it is reducing.
pub fn load_tri(text: &str) -> Result<Triangulation, CliError> {
    let raw = formats::parse_tri(text)?;
    Triangulation::from_raw(&raw).map_err(malformed)
}

fn reducing(text: &str) -> Result<Triangulation, CliError> {
    let t = load_tri(text)?;
    let report = validate_reducing(&t);
    if !report.ok {
        let kinds: Vec<&str> = report.kinds().iter().map(|k| k.name()).collect();
        return Err(failed(format!("the host is not a reducing triangulation: {}", kinds.join(", "))));
    }
    Ok(t)
}

/// The validation report, and whether the input is a reducing triangulation.
pub fn validate(text: &str) -> Result<(String, bool), CliError> {
    let raw = formats::parse_tri(text)?;
    let report = validate_raw(&raw).map_err(malformed)?;
    let mut out = String::new();
    if report.ok {
        let t = Triangulation::from_raw(&raw).map_err(malformed)?;
        writeln!(
            out,
            "reducing: {} vertices, {} edges, {} faces, {} boundary cycles, euler characteristic {}, genus {}",
            t.n_vertices(),
            t.n_edges(),
            t.n_faces(),
            t.boundary_cycles().len(),
            t.euler_characteristic(),
            t.genus()
        )
        .unwrap();
    } else {
        for v in &report.violations {
            writeln!(out, "{v}").unwrap();
        }
    }
    Ok((out, report.ok))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HarmonizeFlags {
    pub budget: Option<usize>,
    pub anchors: bool,
}

#[derive(Clone, Debug)]
pub struct Harmonized {
    pub drawing: String,
    pub trace: String,
    pub moves: usize,
    pub warnings: Vec<String>,
}

fn boundary_error(e: BoundaryError) -> CliError {
    match e {
        BoundaryError::NotOnBoundary(_)
        | BoundaryError::Misplaced { .. }
        | BoundaryError::Duplicate(_)
        | BoundaryError::UnknownVertex(_)
        | BoundaryError::Drawing(_) => malformed(e),
        _ => failed(e),
    }
}

fn harmonize_error(e: HarmonizeError) -> CliError {
    match e {
        HarmonizeError::Drawing(_) => malformed(e),
        _ => failed(e),
    }
}

pub fn harmonize_files(tri: &str, drw: &str, flags: HarmonizeFlags) -> Result<Harmonized, CliError> {
    let t = reducing(tri)?;
    let file = parse_drawing(drw)?;
    let f = &file.drawing;
    f.check(&t).map_err(malformed)?;
    let cfg = Config { budget: flags.budget, ..Config::default() };
    let mut warnings = Vec::new();
    if flags.anchors {
        file.anchor.check(&t, f).map_err(boundary_error)?;
        let out = harmonize_rel_anchor(&t, f, &file.anchor, cfg).map_err(boundary_error)?;
        return Ok(Harmonized {
            drawing: write_drawing(&out.drawing, &file.anchor),
            trace: write_trace(&out.trace),
            moves: out.trace.len(),
            warnings,
        });
    }
    if !file.anchor.is_empty() {
        warnings.push("anchor lines are ignored without --anchors".to_string());
    }
    if t.genus() == 1 {
        warnings.push("the host is a torus: termination is not guaranteed, the move budget applies".to_string());
    }
    let out = harmonize(&t, f, cfg).map_err(harmonize_error)?;
    Ok(Harmonized { drawing: write_drawing(&out.drawing, &file.anchor), trace: write_trace(&out.trace), moves: out.trace.len(), warnings })
}

pub fn reduce(tri: &str, walk: &str, budget: usize) -> Result<String, CliError> {
    let t = reducing(tri)?;
    let w = parse_walk(walk)?;
    if w.start.idx() >= t.n_vertices() || w.edges.iter().any(|h| h.idx() >= t.n_half_edges()) {
        return Err(malformed("the walk refers to elements outside the host"));
    }
    w.check(&t).map_err(malformed)?;
    let walk_error = |e: WalkError| match e {
        WalkError::BoundaryVertex(_) | WalkError::Budget(_) => failed(e),
        _ => malformed(e),
    };
    if !w.closed {
        return reduce_open(&t, &w, budget).map(|r| write_walk(&r)).map_err(walk_error);
    }
    match reduce_closed(&t, &w, budget).map_err(walk_error)? {
        ClosedReduction::Reduced(r) => Ok(write_walk(&r)),
        ClosedReduction::Stalled { reason, states } => {
            let why = match reason {
                StallReason::Cycle => "a rewriting cycle",
                StallReason::Budget => "the budget",
                StallReason::LoneLoop => "a lone loop",
            };
            Err(failed(format!("stalled on {why} after {} states", states.len())))
        }
    }
}

/// Names accepted by [`fixture`].
pub const FIXTURES: &str = "torus, torus-sub, crown<k>, crown<k>-sub, doubled-crown<k>, doubled-crown<k>-sub, one-gadget, three-gadget, degree5, disk<radius>, appendixA-C, appendixA-straight";

fn crown_of(spec: &str) -> Result<Triangulation, CliError> {
    let (k, sub) = match spec.strip_suffix("-sub") {
        Some(k) => (k, true),
        None => (spec, false),
    };
    let k: usize = k.parse().map_err(|_| malformed(format!("unknown fixture; try one of: {FIXTURES}")))?;
    let c = crown(k).map_err(failed)?;
    if sub {
        subdivide(&c).map_err(failed)
    } else {
        Ok(c)
    }
}

/// Files making up a named fixture, as (file name, contents).
pub fn fixture(name: &str, seed: u64) -> Result<Vec<(String, String)>, CliError> {
    let tri = |t: &Triangulation| vec![(format!("{name}.tri"), write_tri(t))];
    Ok(match name {
        "torus" => tri(&build_torus()),
        "torus-sub" => tri(&subdivide(&build_torus()).map_err(failed)?),
        "one-gadget" => tri(&build_one_gadget().tri),
        "three-gadget" => tri(&build_three_gadget().tri),
        "degree5" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            tri(&disk_patch(&mut rng, 1, &[6], Some(5)).map_err(failed)?.tri)
        }
        "appendixA-C" | "appendixA-straight" => {
            let (t, w) = if name == "appendixA-C" { torus_stalling_walk() } else { torus_straight_loop() };
            vec![(format!("{name}.tri"), write_tri(&t)), (format!("{name}.walk"), write_walk(&w))]
        }
        _ => {
            if let Some(r) = name.strip_prefix("disk") {
                let r: usize = r.parse().map_err(|_| malformed(format!("unknown fixture; try one of: {FIXTURES}")))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                tri(&disk_patch(&mut rng, r, &[6, 8], None).map_err(failed)?.tri)
            } else if let Some(k) = name.strip_prefix("doubled-crown") {
                tri(&double_with_gadgets(&crown_of(k)?).map_err(failed)?.tri)
            } else if let Some(k) = name.strip_prefix("crown") {
                tri(&crown_of(k)?)
            } else {
                return Err(malformed(format!("unknown fixture `{name}`; try one of: {FIXTURES}")));
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StressRow {
    pub job: usize,
    pub host: &'static str,
    pub edges: usize,
    pub moves: usize,
    pub budget: usize,
    pub violations: usize,
}

/// Harmonizes `count` seeded random drawings on a doubled crown and on its
/// subdivision, in parallel, and audits every trace.
pub fn stress(seed: u64, count: usize, sizes: &[usize], budget: Option<usize>) -> Result<Vec<StressRow>, CliError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(malformed("sizes must be positive"));
    }
    let base = double_with_gadgets(&crown(4).map_err(failed)?).map_err(failed)?.tri;
    let sub = subdivide(&base).map_err(failed)?;
    let hosts = [("doubled-crown4", &base), ("doubled-crown4-sub", &sub)];
    (0..count)
        .into_par_iter()
        .map(|job| {
            let (host, t) = hosts[job % 2];
            let edges = sizes[job % sizes.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(job as u64));
            let f = random_drawing(t, &mut rng, edges, 10);
            let init = HarmonyState::new(t, &f).map_err(failed)?;
            let out = harmonize(t, &f, Config { budget, ..Config::default() }).map_err(|e| failed(format!("job {job}: {e}")))?;
            let violations = match audit(t, &init, &out.trace) {
                Ok(_) => 0,
                Err(AuditError::Longer(..) | AuditError::NotStrict(..)) => 1,
                Err(e) => return Err(failed(format!("job {job}: {e}"))),
            };
            Ok(StressRow { job, host, edges, moves: out.trace.len(), budget: out.budget, violations })
        })
        .collect()
}

pub fn stress_table(rows: &[StressRow]) -> String {
    let mut out = String::from("job\thost\tedges\tmoves\tbudget\tratio\tviolations\n");
    for r in rows {
        writeln!(out, "{}\t{}\t{}\t{}\t{}\t{:.3e}\t{}", r.job, r.host, r.edges, r.moves, r.budget, r.moves as f64 / r.budget as f64, r.violations).unwrap();
    }
    let worst = rows.iter().map(|r| r.moves as f64 / r.budget as f64).fold(0.0, f64::max);
    let violations: usize = rows.iter().map(|r| r.violations).sum();
    writeln!(out, "# {} runs, {} moves, max ratio {worst:.3e}, {violations} violations", rows.len(), rows.iter().map(|r| r.moves).sum::<usize>()).unwrap();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Svg,
    Dot,
}

/// One figure of the host, or with a drawing one figure per state of the
/// drawing along the trace.
pub fn export(tri: &str, drw: Option<&str>, trc: Option<&str>, format: Format) -> Result<Vec<String>, CliError> {
    let t = load_tri(tri)?;
    let Some(drw) = drw else {
        if trc.is_some() {
            return Err(malformed("a trace needs the drawing it starts from"));
        }
        return Ok(vec![match format {
            Format::Svg => export::svg(&t, None),
            Format::Dot => export::tri_dot(&t),
        }]);
    };
    let f = parse_drawing(drw)?.drawing;
    f.check(&t).map_err(malformed)?;
    let frame = |d: &tutte_core::Drawing| match format {
        Format::Svg => export::svg(&t, Some(d)),
        Format::Dot => export::drawing_dot(d),
    };
    let mut frames = vec![frame(&f)];
    if let Some(trc) = trc {
        let trace = parse_trace(trc, &t)?;
        let mut s = HarmonyState::new(&t, &f).map_err(harmonize_error)?;
        for (i, e) in trace.entries.iter().enumerate() {
            let mv = Move { kind: e.kind.clone(), steps: e.steps.clone(), version: s.version() };
            apply_move(&t, &mut s, &mv).map_err(|err| failed(format!("move {i}: {err}")))?;
            frames.push(frame(&s.drawing()));
        }
    }
    Ok(frames)
}

/// Escape probes along every line through every vertex of the subdivided drawing.
pub fn probe(tri: &str, drw: &str, depth: Option<usize>, window: Option<usize>) -> Result<String, CliError> {
    let t = reducing(tri)?;
    if !t.is_closed() {
        return Err(failed("escape probes need a closed host"));
    }
    let f = parse_drawing(drw)?.drawing;
    f.check(&t).map_err(malformed)?;
    let s = factor_simplicial(&t, &f).map_err(malformed)?;
    let (d0, w0) = default_escape_bounds(&t, &s);
    let (depth, window) = (depth.unwrap_or(d0), window.unwrap_or(w0));
    let mut out = String::new();
    writeln!(out, "# depth {depth} window {window}").unwrap();
    for v in 0..s.graph.n_vertices {
        for (first, side, result) in escape_all(&t, &s, v, depth, window) {
            let side = match side {
                Side::Left => "left",
                Side::Right => "right",
            };
            match result {
                Escape::Escapes(path) => writeln!(out, "vertex {v} first={first} side={side} escapes={}", path.len()).unwrap(),
                Escape::NoWitnessWithinBounds => writeln!(out, "vertex {v} first={first} side={side} escapes=-").unwrap(),
            }
        }
    }
    Ok(out)
}
