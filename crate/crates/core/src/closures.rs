//! Shadow and mirror closures, theta-closures, handle connections, virtual
//! closures and starring.
//!
//! Closures thicken a component into parallel lanes. Lane offsets are
//! measured to the left of the component's orientation: the closing arc of
//! an under/over closure is the lane at offset `+1`; a theta-closure puts the
//! under arc at `+1` and the over arc at `-1`. Every crossing touched by a
//! thickened component becomes a grid of crossings. Between lanes of
//! different levels the higher level passes over; lanes of equal level copy
//! the original crossing, except that two closing arcs of a mirror closure
//! cross with the original crossing switched.

use std::collections::BTreeSet;

use crate::diagram::{dart_edge, dart_end, mate, DartId, Diagram, End, NodeId, NodeKind, StrandKind, Surface};
use crate::error::{Error, Result};
use crate::moves::r2_insert;
use crate::surgery::{SKind, Surgery};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Style {
    Shadow,
    Mirror,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Under,
    Over,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Parallel,
    Antiparallel,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosureSpec {
    /// Strand indices as numbered by [`Diagram::components`].
    pub components: BTreeSet<usize>,
    pub style: Style,
    pub position: Position,
    pub orientation: Orientation,
}

impl ClosureSpec {
    pub fn new<I: IntoIterator<Item = usize>>(
        components: I,
        style: Style,
        position: Position,
        orientation: Orientation,
    ) -> Self {
        ClosureSpec { components: components.into_iter().collect(), style, position, orientation }
    }

    pub fn under_parallel<I: IntoIterator<Item = usize>>(components: I) -> Self {
        Self::new(components, Style::Shadow, Position::Under, Orientation::Parallel)
    }
}

#[derive(Clone, Copy, Debug)]
struct Lane {
    offset: i32,
    level: i32,
    forward: bool,
    copy: bool,
}

const ORIGINAL: Lane = Lane { offset: 0, level: 0, forward: true, copy: false };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EndJoin {
    /// Join the original strand to its single closing arc through the endpoint.
    Loop,
    /// Endpoints become degree-2 orientation reversals.
    Reversal,
    /// Endpoints become trivalent nodes.
    Theta,
}

struct Plan {
    lanes: Vec<Lane>,
    join: EndJoin,
    mirror: bool,
}

fn knotoidal_strands(d: &Diagram, comps: &BTreeSet<usize>) -> Result<crate::diagram::Components> {
    let c = d.components();
    if comps.is_empty() {
        return Err(Error::NotFound("no components selected".into()));
    }
    for &i in comps {
        match c.strands.get(i) {
            None => return Err(Error::NotFound(format!("unknown component {i}"))),
            Some(s) if s.kind != StrandKind::Knotoidal => {
                return Err(Error::Unsupported(format!("component {i} is not knotoidal")))
            }
            Some(s) => {
                let tail_first = d.node(s.start.unwrap()).kind == NodeKind::Tail
                    && d.node(s.end.unwrap()).kind == NodeKind::Head;
                if !tail_first {
                    return Err(Error::Unsupported(format!("component {i} does not run from a tail to a head")));
                }
            }
        }
    }
    Ok(c)
}

pub fn close(d: &Diagram, spec: &ClosureSpec) -> Result<Diagram> {
    let level = match spec.position {
        Position::Under => -1,
        Position::Over => 1,
    };
    let forward = spec.orientation == Orientation::Parallel;
    let plan = Plan {
        lanes: vec![ORIGINAL, Lane { offset: 1, level, forward, copy: true }],
        join: if forward { EndJoin::Reversal } else { EndJoin::Loop },
        mirror: spec.style == Style::Mirror,
    };
    thicken(d, &spec.components, &plan)
}

pub fn theta_closure(d: &Diagram, comps: &BTreeSet<usize>) -> Result<Diagram> {
    let plan = Plan {
        lanes: vec![
            ORIGINAL,
            Lane { offset: 1, level: -1, forward: true, copy: true },
            Lane { offset: -1, level: 1, forward: true, copy: true },
        ],
        join: EndJoin::Theta,
        mirror: false,
    };
    thicken(d, comps, &plan)
}

fn thicken(d: &Diagram, comps: &BTreeSet<usize>, plan: &Plan) -> Result<Diagram> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let c = knotoidal_strands(d, comps)?;
    let ne = d.edge_count();
    let thick: Vec<bool> = (0..ne).map(|e| comps.contains(&c.edge_strand[e])).collect();
    let mut s = Surgery::new(d);
    // lane_dart[dart][lane]: dart of that lane's copy of the edge, at the node of `dart`.
    let nl = plan.lanes.len();
    let mut lane_dart: Vec<Vec<DartId>> = (0..d.dart_count()).map(|x| vec![x; 1]).collect();
    for &ci in comps {
        for &x in &c.strands[ci].darts {
            // `x` leaves its node in the strand direction.
            lane_dart[x] = vec![x; nl];
            lane_dart[mate(x)] = vec![mate(x); nl];
            for (li, lane) in plan.lanes.iter().enumerate().skip(1) {
                let (src, tgt) = s.new_edge();
                let same = (dart_end(x) == End::Source) == lane.forward;
                let (at_x, at_m) = if same { (src, tgt) } else { (tgt, src) };
                lane_dart[x][li] = at_x;
                lane_dart[mate(x)][li] = at_m;
            }
        }
    }
    let lanes_of = |x: DartId| -> Vec<usize> {
        if thick[dart_edge(x)] {
            (0..nl).collect()
        } else {
            vec![0]
        }
    };
    // Orientation of lane `li` relative to the edge of dart `x`: true if the
    // lane flows the same way as the original edge.
    let lane_with_edge = |x: DartId, li: usize| -> bool { !thick[dart_edge(x)] || plan.lanes[li].forward };

    for v in d.crossings().collect::<Vec<_>>() {
        let sl = d.node(v).slots.clone();
        if !thick[dart_edge(sl[0])] && !thick[dart_edge(sl[1])] {
            continue;
        }
        let positive = d.is_positive(v);
        let ul = lanes_of(sl[0]);
        let ol = lanes_of(sl[1]);
        // Horizontal lanes (under strand) sit at y = -offset, vertical lanes
        // (over strand) at x = -offset when the over strand runs north, +offset otherwise.
        let mut hs: Vec<(i32, usize)> = ul.iter().map(|&a| (-plan.lanes[a].offset, a)).collect();
        let xsign = if positive { -1 } else { 1 };
        let mut vs: Vec<(i32, usize)> = ol.iter().map(|&b| (xsign * plan.lanes[b].offset, b)).collect();
        hs.sort();
        vs.sort();
        // Grid half-edges: e/n/w/s darts for each (row, column).
        let (nh, nv) = (hs.len(), vs.len());
        let mut east = vec![vec![usize::MAX; nv]; nh];
        let mut west = vec![vec![usize::MAX; nv]; nh];
        let mut north = vec![vec![usize::MAX; nv]; nh];
        let mut south = vec![vec![usize::MAX; nv]; nh];
        for (r, &(_, a)) in hs.iter().enumerate() {
            west[r][0] = lane_dart[sl[2]][a];
            east[r][nv - 1] = lane_dart[sl[0]][a];
            for col in 0..nv - 1 {
                // Under strand flows from slot 0 (east) to slot 2 (west).
                let flows_west = lane_with_edge(sl[0], a) == (dart_end(sl[0]) == End::Target);
                let (src, tgt) = s.new_edge();
                if flows_west {
                    west[r][col + 1] = src;
                    east[r][col] = tgt;
                } else {
                    west[r][col + 1] = tgt;
                    east[r][col] = src;
                }
            }
        }
        for (col, &(_, b)) in vs.iter().enumerate() {
            south[0][col] = lane_dart[sl[3]][b];
            north[nh - 1][col] = lane_dart[sl[1]][b];
            for r in 0..nh - 1 {
                // Over strand flows from slot 3 (south) to slot 1 (north) iff positive.
                let flows_north = lane_with_edge(sl[3], b) == (dart_end(sl[3]) == End::Target);
                let (src, tgt) = s.new_edge();
                if flows_north {
                    north[r][col] = src;
                    south[r + 1][col] = tgt;
                } else {
                    north[r][col] = tgt;
                    south[r + 1][col] = src;
                }
            }
        }
        for (r, &(_, a)) in hs.iter().enumerate() {
            for (col, &(_, b)) in vs.iter().enumerate() {
                let (la, lb) = (plan.lanes[a], plan.lanes[b]);
                let vertical_over = if la.level != lb.level {
                    lb.level > la.level
                } else {
                    !(plan.mirror && la.copy && lb.copy)
                };
                let ccw = [east[r][col], north[r][col], west[r][col], south[r][col]];
                let slots = s.crossing_slots(ccw, usize::from(vertical_over));
                let kind = SKind::Node(NodeKind::Crossing { starred: false });
                if a == 0 && b == 0 {
                    s.set_node(v, kind, slots);
                } else {
                    let name = s.fresh_name("c");
                    s.add_node(name, kind, slots);
                }
            }
        }
    }

    for &ci in comps {
        let st = &c.strands[ci];
        let (t, h) = (st.start.unwrap(), st.end.unwrap());
        let d0 = st.darts[0];
        let dm = mate(*st.darts.last().unwrap());
        match plan.join {
            EndJoin::Loop => {
                s.set_node(t, SKind::Pass, vec![d0, lane_dart[d0][1]]);
                s.set_node(h, SKind::Pass, vec![dm, lane_dart[dm][1]]);
            }
            EndJoin::Reversal => {
                s.set_node(t, SKind::Node(NodeKind::Reversal2), vec![d0, lane_dart[d0][1]]);
                s.set_node(h, SKind::Node(NodeKind::Reversal2), vec![dm, lane_dart[dm][1]]);
            }
            EndJoin::Theta => {
                let (u, o) = (1, 2);
                s.set_node(t, SKind::Node(NodeKind::Trivalent3), vec![lane_dart[d0][o], d0, lane_dart[d0][u]]);
                s.set_node(h, SKind::Node(NodeKind::Trivalent3), vec![lane_dart[dm][u], dm, lane_dart[dm][o]]);
            }
        }
    }

    // A star keeps the part of its region outside every ribbon: the region
    // right of a dart is now bounded by the outermost lane on that side.
    let outer = |x: DartId| -> DartId {
        if !thick[dart_edge(x)] {
            return x;
        }
        let strand_dir = c.strands[c.edge_strand[dart_edge(x)]].darts.contains(&x);
        let pick = plan
            .lanes
            .iter()
            .enumerate()
            .filter(|(_, l)| if strand_dir { l.offset <= 0 } else { l.offset >= 0 })
            .max_by_key(|(_, l)| l.offset.abs())
            .map(|(i, _)| i)
            .unwrap();
        lane_dart[x][pick]
    };
    for v in d.stars().collect::<Vec<_>>() {
        let NodeKind::Star { anchor } = d.node(v).kind else { unreachable!() };
        let face = &d.faces()[d.face_of(anchor)].boundary;
        let k = face.iter().position(|x| *x == anchor).unwrap();
        let cycle: Vec<DartId> = face[k..].iter().chain(face[..k].iter()).map(|x| outer(*x)).collect();
        s.set_star_anchor(v, cycle[0], cycle);
    }
    s.dissolve_passes()?;
    s.finish()
}

fn endpoint_dart(d: &Diagram, v: NodeId) -> Result<DartId> {
    match d.nodes().get(v) {
        Some(n) if n.kind.is_endpoint() => Ok(n.slots[0]),
        _ => Err(Error::NotFound(format!("node {v} is not an endpoint"))),
    }
}

/// Joins two endpoints by an edge over a handle, oriented from `e1` to `e2`.
pub fn handle_connection(d: &Diagram, e1: NodeId, e2: NodeId) -> Result<Diagram> {
    if e1 == e2 {
        return Err(Error::Unsupported("handle connection needs two distinct endpoints".into()));
    }
    if d.surface() == Surface::Torus {
        return Err(Error::Unsupported("diagram already lies on a torus".into()));
    }
    let a = endpoint_dart(d, e1)?;
    let b = endpoint_dart(d, e2)?;
    let base = if d.face_of(a) == d.face_of(b) { separate_endpoints(d, e1, e2)? } else { d.clone() };
    let a = endpoint_dart(&base, e1)?;
    let b = endpoint_dart(&base, e2)?;
    let mut s = Surgery::new(&base);
    let (src, tgt) = s.new_edge();
    for (v, x, y) in [(e1, a, src), (e2, b, tgt)] {
        if dart_end(x) == dart_end(y) {
            s.set_node(v, SKind::Node(NodeKind::Reversal2), vec![x, y]);
        } else {
            s.set_node(v, SKind::Pass, vec![x, y]);
        }
    }
    s.dissolve_passes()?;
    s.finish_as(Surface::Torus)
}

/// First R2 insertion, over pairs of darts ordered by edge id, that puts the
/// two endpoints into distinct faces.
fn separate_endpoints(d: &Diagram, e1: NodeId, e2: NodeId) -> Result<Diagram> {
    let f = d.face_of(d.node(e1).slots[0]);
    let mut darts = d.faces()[f].boundary.clone();
    darts.sort();
    for &x in &darts {
        for &y in &darts {
            if dart_edge(x) == dart_edge(y) {
                continue;
            }
            let mut s = Surgery::new(d);
            r2_insert(&mut s, x, y, false);
            let Ok(next) = s.finish() else { continue };
            if next.face_of(next.node(e1).slots[0]) != next.face_of(next.node(e2).slots[0]) {
                return Ok(next);
            }
        }
    }
    Err(Error::Unsupported("no R2 insertion separates the endpoints".into()))
}

/// Handle connection from the head to the tail of a knotoid.
pub fn virtual_closure(k: &Diagram) -> Result<Diagram> {
    let c = k.components();
    if c.kappa != 1 || k.stars().next().is_some() {
        return Err(Error::Unsupported("virtual closure needs an unstarred knotoid".into()));
    }
    let st = &c.strands[c.knotoidal().next().unwrap()];
    handle_connection(k, st.end.unwrap(), st.start.unwrap())
}

fn add_star(d: &Diagram, anchor: DartId) -> Result<Diagram> {
    let mut s = Surgery::new(d);
    let name = s.fresh_name("star");
    let v = s.add_node(name, SKind::Node(NodeKind::Star { anchor }), Vec::new());
    s.set_star_anchor(v, anchor, vec![anchor]);
    s.finish()
}

pub fn star_region(d: &Diagram, face: usize) -> Result<Diagram> {
    let f = d.faces().get(face).ok_or_else(|| Error::NotFound(format!("face {face} not found")))?;
    add_star(d, f.boundary[0])
}

pub fn star_crossing(d: &Diagram, c: NodeId) -> Result<Diagram> {
    let mut nodes = d.nodes().to_vec();
    match nodes.get_mut(c) {
        Some(n) if n.kind.is_crossing() => n.kind = NodeKind::Crossing { starred: true },
        _ => return Err(Error::NotFound(format!("crossing {c} not found"))),
    }
    d.with_nodes(d.surface(), nodes)
}

/// Stars the region containing the tail of the given knotoidal component.
pub fn tail_starring_of(d: &Diagram, component: usize) -> Result<Diagram> {
    let c = d.components();
    let st = c
        .strands
        .get(component)
        .filter(|s| s.kind == StrandKind::Knotoidal)
        .ok_or_else(|| Error::NotFound(format!("knotoidal component {component} not found")))?;
    let t = [st.start.unwrap(), st.end.unwrap()]
        .into_iter()
        .find(|v| d.node(*v).kind == NodeKind::Tail)
        .ok_or_else(|| Error::NotFound("component has no tail".into()))?;
    add_star(d, d.node(t).slots[0])
}

pub fn head_starring_of(d: &Diagram, component: usize) -> Result<Diagram> {
    let c = d.components();
    let st = c
        .strands
        .get(component)
        .filter(|s| s.kind == StrandKind::Knotoidal)
        .ok_or_else(|| Error::NotFound(format!("knotoidal component {component} not found")))?;
    let h = [st.start.unwrap(), st.end.unwrap()]
        .into_iter()
        .find(|v| d.node(*v).kind == NodeKind::Head)
        .ok_or_else(|| Error::NotFound("component has no head".into()))?;
    add_star(d, d.node(h).slots[0])
}

fn first_knotoidal(d: &Diagram) -> Result<usize> {
    d.components().knotoidal().next().ok_or_else(|| Error::NotFound("no knotoidal component".into()))
}

pub fn tail_starring(d: &Diagram) -> Result<Diagram> {
    tail_starring_of(d, first_knotoidal(d)?)
}

pub fn head_starring(d: &Diagram) -> Result<Diagram> {
    head_starring_of(d, first_knotoidal(d)?)
}
