//! Builds diagrams from plane polylines. Crossings are found geometrically and
//! the strand with the greater height at a crossing passes over.

use crate::diagram::{dart, DartId, Diagram, End, Node, NodeKind, Surface, INFINITY};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Curve {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
    /// Height of each segment.
    pub heights: Vec<f64>,
}

impl Curve {
    pub fn open(points: Vec<(f64, f64)>, height: f64) -> Self {
        let heights = vec![height; points.len().saturating_sub(1)];
        Curve { points, closed: false, heights }
    }

    pub fn closed(points: Vec<(f64, f64)>, height: f64) -> Self {
        let heights = vec![height; points.len()];
        Curve { points, closed: true, heights }
    }

    fn segments(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    fn seg(&self, i: usize) -> ((f64, f64), (f64, f64)) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A star in the face beside a curve at a point, given as (segment index,
/// fraction along the segment).
#[derive(Clone, Debug)]
pub struct Mark {
    pub name: String,
    pub curve: usize,
    pub at: (usize, f64),
    pub side: Side,
}

#[derive(Clone, Copy, Debug)]
struct Event {
    pos: f64,
    crossing: usize,
    dir: (f64, f64),
    height: f64,
}

fn intersect(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> Option<(f64, f64)> {
    let d1 = (q.0 - p.0, q.1 - p.1);
    let d2 = (s.0 - r.0, s.1 - r.1);
    let den = d1.0 * d2.1 - d1.1 * d2.0;
    if den.abs() < 1e-12 {
        return None;
    }
    let w = (r.0 - p.0, r.1 - p.1);
    let t = (w.0 * d2.1 - w.1 * d2.0) / den;
    let u = (w.0 * d1.1 - w.1 * d1.0) / den;
    (1e-9 < t && t < 1.0 - 1e-9 && 1e-9 < u && u < 1.0 - 1e-9).then_some((t, u))
}

/// Region stars use `marks`; a plane diagram needs one mark named `infinity`.
pub fn build(surface: Surface, curves: &[Curve], marks: &[Mark]) -> Result<Diagram> {
    let mut events: Vec<Vec<Event>> = vec![Vec::new(); curves.len()];
    let mut ncross = 0;
    let segs: Vec<(usize, usize)> =
        curves.iter().enumerate().flat_map(|(c, cv)| (0..cv.segments()).map(move |i| (c, i))).collect();
    for (ia, &(ca, sa)) in segs.iter().enumerate() {
        for &(cb, sb) in &segs[ia + 1..] {
            if ca == cb {
                let n = curves[ca].segments();
                let adjacent = sb == sa + 1 || (curves[ca].closed && sa == 0 && sb == n - 1);
                if adjacent {
                    continue;
                }
            }
            let (p, q) = curves[ca].seg(sa);
            let (r, s) = curves[cb].seg(sb);
            if let Some((t, u)) = intersect(p, q, r, s) {
                for (c, si, f, a, b) in [(ca, sa, t, p, q), (cb, sb, u, r, s)] {
                    events[c].push(Event {
                        pos: si as f64 + f,
                        crossing: ncross,
                        dir: (b.0 - a.0, b.1 - a.1),
                        height: curves[c].heights[si],
                    });
                }
                ncross += 1;
            }
        }
    }
    // Darts at crossings, with direction of departure and height.
    let mut at_cross: Vec<Vec<(DartId, f64, f64)>> = vec![Vec::new(); ncross];
    let mut nodes: Vec<Node> = Vec::new();
    let mut edges = 0;
    // First edge id of each curve, and event positions for locating marks.
    let mut curve_edges: Vec<(usize, Vec<f64>)> = Vec::new();
    for (c, cv) in curves.iter().enumerate() {
        let ev = &mut events[c];
        ev.sort_by(|a, b| a.pos.partial_cmp(&b.pos).unwrap());
        if cv.closed && ev.is_empty() {
            return Err(Error::Unsupported(format!("closed curve {c} has no crossings")));
        }
        let first = edges;
        let k = ev.len();
        let ne = if cv.closed { k } else { k + 1 };
        for (i, e) in ev.iter().enumerate() {
            let angle = e.dir.1.atan2(e.dir.0);
            // Edge arriving at event i and edge leaving it.
            let arrive = if cv.closed { first + (i + k - 1) % k } else { first + i };
            let leave = if cv.closed { first + i } else { first + i + 1 };
            at_cross[e.crossing].push((dart(leave, End::Source), angle, e.height));
            at_cross[e.crossing].push((dart(arrive, End::Target), angle + std::f64::consts::PI, e.height));
        }
        if !cv.closed {
            nodes.push(Node { name: format!("t{c}"), kind: NodeKind::Tail, slots: vec![dart(first, End::Source)] });
            nodes.push(Node {
                name: format!("h{c}"),
                kind: NodeKind::Head,
                slots: vec![dart(first + ne - 1, End::Target)],
            });
        }
        curve_edges.push((first, ev.iter().map(|e| e.pos).collect()));
        edges += ne;
    }
    for (i, ds) in at_cross.iter_mut().enumerate() {
        let norm = |a: f64| a.rem_euclid(2.0 * std::f64::consts::PI);
        ds.sort_by(|a, b| norm(a.1).partial_cmp(&norm(b.1)).unwrap());
        let top = ds.iter().map(|x| x.2).fold(f64::MIN, f64::max);
        // Under strand occupies the positions whose height is lower.
        let u = if ds[0].2 < top { 0 } else { 1 };
        let start = if ds[u].0 % 2 == 1 { u } else { u + 2 };
        let slots = (0..4).map(|j| ds[(start + j) % 4].0).collect();
        nodes.push(Node { name: format!("c{}", i + 1), kind: NodeKind::Crossing { starred: false }, slots });
    }
    for m in marks {
        let (first, pos) = &curve_edges[m.curve];
        let p = m.at.0 as f64 + m.at.1;
        let before = pos.iter().filter(|x| **x < p).count();
        let cv = &curves[m.curve];
        let e = if cv.closed { first + (before + pos.len() - 1) % pos.len() } else { first + before };
        let anchor = match m.side {
            Side::Right => dart(e, End::Source),
            Side::Left => dart(e, End::Target),
        };
        nodes.push(Node { name: m.name.clone(), kind: NodeKind::Star { anchor }, slots: Vec::new() });
    }
    if surface == Surface::Plane && !marks.iter().any(|m| m.name == INFINITY) {
        return Err(Error::Invalid(vec!["plane sketch needs an infinity mark".into()]));
    }
    Diagram::new(surface, edges, nodes)
}
