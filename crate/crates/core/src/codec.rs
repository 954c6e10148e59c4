//! The `.lkd` text format and JSON export.
//!
//! ```text
//! linkoid v1
//! surface sphere
//! edge e0
//! node t tail e0.s
//! node h head e0.t
//! ```
//!
//! `surface` is `sphere`, `plane` or `torus`; a plane diagram carries exactly
//! one `node infinity star in <dart>`. Crossing darts are listed
//! counterclockwise starting with the incoming under dart; `crossing*` marks a
//! starred crossing. A region star `node <id> star in <dart>` sits in the face
//! to the right of `<dart>` as seen when leaving its node. Trivalent nodes
//! created by theta-closures list the over arc, the original strand and the
//! under arc counterclockwise at a tail, and the under arc, the original
//! strand and the over arc at a head.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::diagram::{dart, dart_edge, dart_name, Diagram, DartId, End, Node, NodeKind, Surface};
use crate::error::{Error, Result};
use crate::statesum;

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok { text: &line[s..i], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &line[s..], col: s + 1 });
    }
    out
}

fn parse_edge_name(t: &Tok, line: usize) -> Result<usize> {
    t.text
        .strip_prefix('e')
        .filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| syntax(line, t.col, format!("malformed edge name '{}'", t.text)))
}

fn parse_dart(t: &Tok, line: usize) -> Result<DartId> {
    let (e, end) = t
        .text
        .rsplit_once('.')
        .ok_or_else(|| syntax(line, t.col, format!("malformed dart '{}'", t.text)))?;
    let k = parse_edge_name(&Tok { text: e, col: t.col }, line)?;
    match end {
        "s" => Ok(dart(k, End::Source)),
        "t" => Ok(dart(k, End::Target)),
        _ => Err(syntax(line, t.col, format!("malformed dart '{}'", t.text))),
    }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

pub fn parse_lkd(text: &str) -> Result<Diagram> {
    let mut header = false;
    let mut surface = None;
    let mut edges: Vec<Option<usize>> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap();
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if !header {
            if toks.len() == 2 && toks[0].text == "linkoid" && toks[1].text == "v1" {
                header = true;
                continue;
            }
            return Err(syntax(ln, toks[0].col, "expected header 'linkoid v1'"));
        }
        match toks[0].text {
            "surface" => {
                if surface.is_some() {
                    return Err(syntax(ln, toks[0].col, "duplicate surface directive"));
                }
                if toks.len() != 2 {
                    return Err(syntax(ln, toks[0].col, "expected 'surface sphere|plane|torus'"));
                }
                surface = Some(match toks[1].text {
                    "sphere" => Surface::Sphere,
                    "plane" => Surface::Plane,
                    "torus" => Surface::Torus,
                    other => return Err(syntax(ln, toks[1].col, format!("unknown surface '{other}'"))),
                });
            }
            "edge" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, toks[0].col, "expected 'edge e<k>'"));
                }
                let k = parse_edge_name(&toks[1], ln)?;
                if edges.len() <= k {
                    edges.resize(k + 1, None);
                }
                if edges[k].is_some() {
                    return Err(syntax(ln, toks[1].col, format!("edge e{k} declared twice")));
                }
                edges[k] = Some(ln);
            }
            "node" => {
                if toks.len() < 3 {
                    return Err(syntax(ln, toks[0].col, "expected 'node <id> <kind> ...'"));
                }
                if !valid_id(toks[1].text) {
                    return Err(syntax(ln, toks[1].col, format!("malformed node id '{}'", toks[1].text)));
                }
                let args = &toks[3..];
                let darts = |n: usize| -> Result<Vec<DartId>> {
                    if args.len() != n {
                        let col = args.get(n).map_or(toks[2].col, |t| t.col);
                        return Err(syntax(ln, col, format!("'{}' expects {n} darts", toks[2].text)));
                    }
                    args.iter().map(|t| parse_dart(t, ln)).collect()
                };
                let (kind, slots) = match toks[2].text {
                    "crossing" => (NodeKind::Crossing { starred: false }, darts(4)?),
                    "crossing*" => (NodeKind::Crossing { starred: true }, darts(4)?),
                    "tail" => (NodeKind::Tail, darts(1)?),
                    "head" => (NodeKind::Head, darts(1)?),
                    "rev2" => (NodeKind::Reversal2, darts(2)?),
                    "v3" => (NodeKind::Trivalent3, darts(3)?),
                    "star" => {
                        if args.len() != 2 || args[0].text != "in" {
                            return Err(syntax(ln, toks[2].col, "expected 'star in <dart>'"));
                        }
                        (NodeKind::Star { anchor: parse_dart(&args[1], ln)? }, Vec::new())
                    }
                    other => return Err(syntax(ln, toks[2].col, format!("unknown node kind '{other}'"))),
                };
                nodes.push(Node { name: toks[1].text.to_string(), kind, slots });
            }
            other => return Err(syntax(ln, toks[0].col, format!("unknown directive '{other}'"))),
        }
    }
    if !header {
        return Err(syntax(last_line.max(1), 1, "missing header 'linkoid v1'"));
    }
    let surface = surface.ok_or_else(|| syntax(last_line, 1, "missing surface directive"))?;
    if let Some(k) = edges.iter().position(|e| e.is_none()) {
        return Err(syntax(last_line, 1, format!("edge e{k} not declared; edge ids must be contiguous from e0")));
    }
    for n in &nodes {
        let ds = n.slots.iter().copied().chain(match n.kind {
            NodeKind::Star { anchor } => Some(anchor),
            _ => None,
        });
        for d in ds {
            if dart_edge(d) >= edges.len() {
                return Err(Error::Invalid(vec![format!(
                    "node {}: dart {} refers to an undeclared edge",
                    n.name,
                    dart_name(d)
                )]));
            }
        }
    }
    Diagram::new(surface, edges.len(), nodes)
}

pub fn serialize_lkd(d: &Diagram) -> String {
    let mut out = String::from("linkoid v1\n");
    out.push_str(match d.surface() {
        Surface::Sphere => "surface sphere\n",
        Surface::Plane => "surface plane\n",
        Surface::Torus => "surface torus\n",
    });
    for e in 0..d.edge_count() {
        out.push_str(&format!("edge e{e}\n"));
    }
    for n in d.nodes() {
        let kind = match n.kind {
            NodeKind::Crossing { starred: false } => "crossing",
            NodeKind::Crossing { starred: true } => "crossing*",
            NodeKind::Tail => "tail",
            NodeKind::Head => "head",
            NodeKind::Reversal2 => "rev2",
            NodeKind::Trivalent3 => "v3",
            NodeKind::Star { .. } => "star in",
        };
        out.push_str(&format!("node {} {}", n.name, kind));
        if let NodeKind::Star { anchor } = n.kind {
            out.push_str(&format!(" {}", dart_name(anchor)));
        }
        for &s in &n.slots {
            out.push_str(&format!(" {}", dart_name(s)));
        }
        out.push('\n');
    }
    out
}

/// SHA-256 of the serialized document, hex encoded.
pub fn digest(d: &Diagram) -> String {
    hex::encode(Sha256::digest(serialize_lkd(d).as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    #[serde(rename = "input-digest")]
    pub input_digest: String,
    pub kappa: usize,
    pub ell: usize,
    pub omega_g: i64,
    pub genus: usize,
    pub potential: String,
    pub mock_alexander: String,
    pub state_count: u128,
}

pub fn report(d: &Diagram) -> Result<Report> {
    let comps = d.components();
    let p = statesum::potential(d)?;
    Ok(Report {
        input_digest: digest(d),
        kappa: comps.kappa,
        ell: comps.ell,
        omega_g: d.obstruction_generalized()?,
        genus: d.genus(),
        mock_alexander: p.collapse().to_string(),
        potential: p.to_string(),
        state_count: statesum::state_count(d)?,
    })
}

pub fn report_json(d: &Diagram) -> Result<String> {
    Ok(serde_json::to_string_pretty(&report(d)?).expect("report serializes"))
}
