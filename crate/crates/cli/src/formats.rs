//! Line-oriented text formats for triangulations, drawings, walks and traces.
//!
//! Every format ignores blank lines and `#` comments. Writers emit a
//! canonical form that parses back to the same value and prints to the
//! same bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use tutte_core::boundary::Anchor;
use tutte_core::harmonizer::{MoveKind, MoveTrace, Phase, Rotation, TraceEntry};
use tutte_core::surface::{Color, RawMap};
use tutte_core::walkcalc::Walk;
use tutte_core::{Drawing, Graph, HalfEdgeId, Triangulation, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// A non-empty line split into its keyword, positional words and `key=value` pairs.
struct Line<'a> {
    number: usize,
    keyword: &'a str,
    words: Vec<&'a str>,
    pairs: BTreeMap<&'a str, &'a str>,
}

impl<'a> Line<'a> {
    fn word(&self, i: usize) -> Result<&'a str, ParseError> {
        self.words.get(i).copied().ok_or_else(|| ParseError { line: self.number, message: format!("`{}` needs {} arguments", self.keyword, i + 1) })
    }

    fn number<T: std::str::FromStr>(&self, s: &str) -> Result<T, ParseError> {
        s.parse().or_else(|_| err(self.number, format!("`{s}` is not a number")))
    }

    fn pos<T: std::str::FromStr>(&self, i: usize) -> Result<T, ParseError> {
        self.number(self.word(i)?)
    }

    fn pair(&self, key: &str) -> Result<&'a str, ParseError> {
        self.pairs.get(key).copied().ok_or_else(|| ParseError { line: self.number, message: format!("missing `{key}=`") })
    }

    fn key<T: std::str::FromStr>(&self, key: &str) -> Result<T, ParseError> {
        self.number(self.pair(key)?)
    }

    /// A comma-separated list, with `-` for the empty list.
    fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, ParseError> {
        let s = self.pair(key)?;
        if s == "-" {
            return Ok(Vec::new());
        }
        s.split(',').map(|x| self.number(x)).collect()
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next()?;
        let (mut words, mut pairs) = (Vec::new(), BTreeMap::new());
        for t in tokens {
            match t.split_once('=') {
                Some((k, v)) => {
                    pairs.insert(k, v);
                }
                None => words.push(t),
            }
        }
        Some(Line { number: i + 1, keyword, words, pairs })
    })
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let s: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if s.is_empty() {
        "-".to_string()
    } else {
        s.join(",")
    }
}

fn color_char(c: Color) -> char {
    match c {
        Color::Red => 'r',
        Color::Blue => 'b',
    }
}

pub fn write_raw(raw: &RawMap) -> String {
    let mut out = format!("tri {}\n", raw.next.len());
    for h in 0..raw.next.len() {
        let twin = raw.twin[h].map_or("-".to_string(), |x| x.to_string());
        writeln!(out, "he {h} next={} twin={twin} origin={}", raw.next[h], raw.origin[h]).unwrap();
    }
    for (f, &(c, h)) in raw.faces.iter().enumerate() {
        writeln!(out, "face {f} color={} he={h}", color_char(c)).unwrap();
    }
    out
}

pub fn write_tri(t: &Triangulation) -> String {
    write_raw(&t.raw())
}

/// Parses the index tables only; structural checks are left to the caller.
pub fn parse_tri(text: &str) -> Result<RawMap, ParseError> {
    let mut it = lines(text);
    let Some(head) = it.next() else { return err(0, "empty input") };
    if head.keyword != "tri" {
        return err(head.number, "expected `tri <nhalfedges>`");
    }
    let n: usize = head.pos(0)?;
    let mut next = vec![None; n];
    let mut twin = vec![None; n];
    let mut origin = vec![None; n];
    let mut faces: Vec<Option<(Color, u32)>> = Vec::new();
    for l in it {
        match l.keyword {
            "he" => {
                let h: usize = l.pos(0)?;
                if h >= n {
                    return err(l.number, format!("half-edge {h} out of range"));
                }
                if next[h].is_some() {
                    return err(l.number, format!("half-edge {h} listed twice"));
                }
                next[h] = Some(l.key::<u32>("next")?);
                twin[h] = match l.pair("twin")? {
                    "-" => None,
                    s => Some(l.number::<u32>(s)?),
                };
                origin[h] = Some(l.key::<u32>("origin")?);
            }
            "face" => {
                let f: usize = l.pos(0)?;
                let color = match l.pair("color")? {
                    "r" => Color::Red,
                    "b" => Color::Blue,
                    other => return err(l.number, format!("unknown color `{other}`")),
                };
                if faces.len() <= f {
                    faces.resize(f + 1, None);
                }
                if faces[f].is_some() {
                    return err(l.number, format!("face {f} listed twice"));
                }
                faces[f] = Some((color, l.key("he")?));
            }
            other => return err(l.number, format!("unknown keyword `{other}`")),
        }
    }
    let missing = |what: &str, i: usize| ParseError { line: 0, message: format!("{what} {i} is missing") };
    Ok(RawMap {
        next: next.iter().enumerate().map(|(h, x)| x.ok_or_else(|| missing("half-edge", h))).collect::<Result<_, _>>()?,
        twin,
        origin: origin.into_iter().map(|x| x.unwrap_or(0)).collect(),
        faces: faces.iter().enumerate().map(|(f, x)| x.ok_or_else(|| missing("face", f))).collect::<Result<_, _>>()?,
    })
}

/// A drawing together with its anchors, which may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingFile {
    pub drawing: Drawing,
    pub anchor: Anchor,
}

pub fn write_drawing(f: &Drawing, anchor: &Anchor) -> String {
    let mut out = String::new();
    for (v, x) in f.vertex_map.iter().enumerate() {
        writeln!(out, "vertex {v} at {x}").unwrap();
    }
    for (e, (&(u, v), w)) in f.graph.edges.iter().zip(&f.edge_map).enumerate() {
        writeln!(out, "edge {e} {u} {v} walk={}", join(w)).unwrap();
    }
    for (x, list) in &anchor.lists {
        if !list.is_empty() {
            writeln!(out, "anchor {x} order={}", join(list)).unwrap();
        }
    }
    out
}

fn dense<T>(items: BTreeMap<usize, (usize, T)>, what: &str) -> Result<Vec<T>, ParseError> {
    let mut out = Vec::with_capacity(items.len());
    for (i, (k, (line, x))) in items.into_iter().enumerate() {
        if k != i {
            return err(line, format!("{what} ids must be 0, 1, 2, ...; {i} is missing"));
        }
        out.push(x);
    }
    Ok(out)
}

pub fn parse_drawing(text: &str) -> Result<DrawingFile, ParseError> {
    let mut vertices = BTreeMap::new();
    let mut edges = BTreeMap::new();
    let mut anchor = Anchor::new();
    for l in lines(text) {
        match l.keyword {
            "vertex" => {
                let v: usize = l.pos(0)?;
                if l.word(1)? != "at" {
                    return err(l.number, "expected `vertex <gid> at <tid>`");
                }
                let x = VertexId(l.pos(2)?);
                if vertices.insert(v, (l.number, x)).is_some() {
                    return err(l.number, format!("vertex {v} listed twice"));
                }
            }
            "edge" => {
                let e: usize = l.pos(0)?;
                let ends: (usize, usize) = (l.pos(1)?, l.pos(2)?);
                let walk: Vec<HalfEdgeId> = l.list::<u32>("walk")?.into_iter().map(HalfEdgeId).collect();
                if edges.insert(e, (l.number, (ends, walk))).is_some() {
                    return err(l.number, format!("edge {e} listed twice"));
                }
            }
            "anchor" => {
                let x = VertexId(l.pos(0)?);
                for v in l.list::<usize>("order")? {
                    anchor.push(x, v);
                }
            }
            other => return err(l.number, format!("unknown keyword `{other}`")),
        }
    }
    let vertex_map = dense(vertices, "vertex")?;
    let edges = dense(edges, "edge")?;
    for (i, &((u, v), _)) in edges.iter().enumerate() {
        if u >= vertex_map.len() || v >= vertex_map.len() {
            return err(0, format!("edge {i} has an endpoint out of range"));
        }
    }
    let (ends, walks): (Vec<_>, Vec<_>) = edges.into_iter().unzip();
    let drawing = Drawing::new(Graph::new(vertex_map.len(), ends), vertex_map, walks);
    Ok(DrawingFile { drawing, anchor })
}

pub fn write_walk(w: &Walk) -> String {
    format!("walk closed={} start={} he={}\n", u8::from(w.closed), w.start, join(&w.edges))
}

pub fn parse_walk(text: &str) -> Result<Walk, ParseError> {
    let mut it = lines(text);
    let Some(l) = it.next() else { return err(0, "empty input") };
    if l.keyword != "walk" {
        return err(l.number, "expected `walk closed=<0|1> start=<vid> he=<ids>`");
    }
    let closed = match l.pair("closed")? {
        "0" => false,
        "1" => true,
        other => return err(l.number, format!("`closed={other}` is neither 0 nor 1")),
    };
    let start = VertexId(l.key("start")?);
    let edges = l.list::<u32>("he")?.into_iter().map(HalfEdgeId).collect();
    if let Some(extra) = it.next() {
        return err(extra.number, "one walk per file");
    }
    Ok(Walk { start, edges, closed })
}

fn steps_text(steps: &[(usize, HalfEdgeId)]) -> String {
    join(steps.iter().map(|(v, h)| format!("{v}:{h}")))
}

/// One `move` line per entry, then one `order` line per second-step run.
///
/// Besides the kind, moved vertices, lengths and phase, each line records
/// the slides performed, the run and root, and for balancings the
/// followers and the rotation, so that a trace file can be replayed.
pub fn write_trace(trace: &MoveTrace) -> String {
    let mut out = String::new();
    for (n, e) in trace.entries.iter().enumerate() {
        write!(out, "move {n} kind={} ", e.kind.name()).unwrap();
        match &e.kind {
            MoveKind::Flip { vertex, .. } | MoveKind::Shortening { vertex, .. } => write!(out, "vertex={vertex}").unwrap(),
            MoveKind::Balancing { cycle, .. } => write!(out, "cycle={}", join(cycle)).unwrap(),
        }
        write!(out, " len={}->{} phase={} run={} root={} steps={}", e.before, e.after, e.phase.number(), e.run, e.root, steps_text(&e.steps)).unwrap();
        if let MoveKind::Balancing { followers, rotation, .. } = &e.kind {
            let rot = match rotation {
                Rotation::Clockwise => "cw",
                Rotation::Counterclockwise => "ccw",
            };
            write!(out, " followers={} rot={rot}", join(followers)).unwrap();
        }
        out.push('\n');
    }
    for (run, order) in &trace.orders {
        writeln!(out, "order {run} {}", join(order)).unwrap();
    }
    out
}

/// Reads a trace; flip and shortening targets are recovered from the host.
pub fn parse_trace(text: &str, t: &Triangulation) -> Result<MoveTrace, ParseError> {
    let mut trace = MoveTrace::default();
    for l in lines(text) {
        match l.keyword {
            "move" => {
                let n: usize = l.pos(0)?;
                if n != trace.entries.len() {
                    return err(l.number, format!("expected move {}", trace.entries.len()));
                }
                let steps = l
                    .list::<String>("steps")?
                    .iter()
                    .map(|s| {
                        let (v, h) = s.split_once(':').ok_or_else(|| ParseError { line: l.number, message: format!("bad step `{s}`") })?;
                        let h: u32 = l.number(h)?;
                        if h as usize >= t.n_half_edges() {
                            return err(l.number, format!("half-edge {h} out of range"));
                        }
                        Ok((l.number::<usize>(v)?, HalfEdgeId(h)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let target = || match steps.first() {
                    Some(&(_, h)) => Ok(t.head(h)),
                    None => err(l.number, "a flip or shortening needs a step"),
                };
                let kind = match l.pair("kind")? {
                    "flip" => MoveKind::Flip { vertex: l.key("vertex")?, target: target()? },
                    "short" => MoveKind::Shortening { vertex: l.key("vertex")?, target: target()? },
                    "bal" => MoveKind::Balancing {
                        cycle: l.list("cycle")?,
                        followers: l.list("followers")?,
                        rotation: match l.pair("rot")? {
                            "cw" => Rotation::Clockwise,
                            "ccw" => Rotation::Counterclockwise,
                            other => return err(l.number, format!("unknown rotation `{other}`")),
                        },
                    },
                    other => return err(l.number, format!("unknown move kind `{other}`")),
                };
                let (before, after) = l
                    .pair("len")?
                    .split_once("->")
                    .ok_or_else(|| ParseError { line: l.number, message: "expected `len=<before>-><after>`".into() })?;
                let phase = Phase::from_number(l.key("phase")?).ok_or_else(|| ParseError { line: l.number, message: "phase must be 1, 2 or 3".into() })?;
                trace.entries.push(TraceEntry {
                    kind,
                    steps,
                    before: l.number(before)?,
                    after: l.number(after)?,
                    phase,
                    run: l.key("run")?,
                    root: l.key("root")?,
                });
            }
            "order" => {
                let run: usize = l.pos(0)?;
                let ids = l.word(1)?;
                let order = if ids == "-" { Vec::new() } else { ids.split(',').map(|x| l.number(x)).collect::<Result<_, _>>()? };
                trace.orders.insert(run, order);
            }
            other => return err(l.number, format!("unknown keyword `{other}`")),
        }
    }
    Ok(trace)
}
