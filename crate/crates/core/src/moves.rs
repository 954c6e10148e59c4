//! Reidemeister rewriting, reversal, crossing switches and smoothings.

use crate::diagram::{dart_end, mate, DartId, Diagram, End, NodeId, NodeKind};
use crate::error::{Error, Result};
use crate::surgery::{SKind, Surgery};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

/// A place where a Reidemeister move applies. Darts refer to the diagram the
/// site was enumerated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveSite {
    /// Kink on the edge of `dart`, inside the face to the right of `dart`.
    R1Add { dart: DartId, over_first: bool },
    /// Remove the kink whose monogon face is traced by `dart`.
    R1Remove { dart: DartId },
    /// Push the edge of `finger` across the edge of `target`; both darts bound the same face.
    R2Add { finger: DartId, target: DartId, finger_over: bool },
    /// Remove the bigon face traced by `dart`.
    R2Remove { dart: DartId },
    /// Slide across the triangle face traced by `dart`.
    R3 { dart: DartId },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Add { .. } => MoveKind::R1Add,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Add { .. } => MoveKind::R2Add,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn is_insertion(&self) -> bool {
        matches!(self.kind(), MoveKind::R1Add | MoveKind::R2Add)
    }
}

fn plain_crossing(d: &Diagram, v: NodeId) -> bool {
    d.node(v).kind == NodeKind::Crossing { starred: false }
}

fn face_free(d: &Diagram, dart: DartId) -> bool {
    !d.face_is_starred(d.face_of(dart))
}

fn r1_remove_site(d: &Diagram, q: DartId) -> bool {
    let p = mate(q);
    let x = d.node_of(q);
    d.face_next(q) == q
        && d.node_of(p) == x
        && plain_crossing(d, x)
        && face_free(d, q)
        && {
            let s = &d.node(x).slots;
            let j = d.slot_of(q);
            mate(s[(j + 1) % 4]) != s[(j + 2) % 4]
        }
}

fn r2_remove_site(d: &Diagram, a: DartId) -> bool {
    let b = d.face_next(a);
    if b == a || d.face_next(b) != a || !face_free(d, a) {
        return false;
    }
    let (x, y) = (d.node_of(a), d.node_of(b));
    x != y
        && plain_crossing(d, x)
        && plain_crossing(d, y)
        && d.node_of(mate(a)) == y
        && d.slot_of(a) % 2 == d.slot_of(mate(a)) % 2
}

fn r3_site(d: &Diagram, d1: DartId) -> bool {
    let d2 = d.face_next(d1);
    let d3 = d.face_next(d2);
    if d.face_next(d3) != d1 || d1 == d2 || d2 == d3 || d1 == d3 || !face_free(d, d1) {
        return false;
    }
    let xs = [d.node_of(d1), d.node_of(d2), d.node_of(d3)];
    if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] || !xs.iter().all(|x| plain_crossing(d, *x)) {
        return false;
    }
    let over: Vec<bool> = [d1, d2, d3].iter().map(|x| d.slot_of(*x) % 2 == 1).collect();
    !(over[0] == over[1] && over[1] == over[2])
}

fn r2_add_site(d: &Diagram, finger: DartId, target: DartId) -> bool {
    finger < d.dart_count()
        && target < d.dart_count()
        && finger / 2 != target / 2
        && d.face_of(finger) == d.face_of(target)
}

/// Every applicable move. Insertions are listed for every dart (R1) and every
/// ordered pair of darts of distinct edges on a common face (R2).
pub fn enumerate_moves(d: &Diagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for dart in 0..d.dart_count() {
        for over_first in [false, true] {
            out.push(MoveSite::R1Add { dart, over_first });
        }
    }
    for f in d.faces() {
        let b = &f.boundary;
        match b.len() {
            1 if r1_remove_site(d, b[0]) => out.push(MoveSite::R1Remove { dart: b[0] }),
            2 if r2_remove_site(d, b[0]) && apply_move(d, MoveSite::R2Remove { dart: b[0] }).is_ok() => {
                out.push(MoveSite::R2Remove { dart: b[0] })
            }
            3 if r3_site(d, b[0]) => out.push(MoveSite::R3 { dart: b[0] }),
            _ => {}
        }
        for &x in b {
            for &y in b {
                if x / 2 != y / 2 {
                    for finger_over in [false, true] {
                        out.push(MoveSite::R2Add { finger: x, target: y, finger_over });
                    }
                }
            }
        }
    }
    out
}

/// Moves that reduce or preserve the crossing count.
pub fn enumerate_reducing_moves(d: &Diagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for f in d.faces() {
        let b = &f.boundary;
        match b.len() {
            1 if r1_remove_site(d, b[0]) => out.push(MoveSite::R1Remove { dart: b[0] }),
            2 if r2_remove_site(d, b[0]) && apply_move(d, MoveSite::R2Remove { dart: b[0] }).is_ok() => {
                out.push(MoveSite::R2Remove { dart: b[0] })
            }
            3 if r3_site(d, b[0]) => out.push(MoveSite::R3 { dart: b[0] }),
            _ => {}
        }
    }
    out
}

pub fn apply_move(d: &Diagram, m: MoveSite) -> Result<Diagram> {
    match m {
        MoveSite::R1Add { dart, over_first } => {
            if dart >= d.dart_count() {
                return Err(Error::StaleMove);
            }
            let mut s = Surgery::new(d);
            r1_insert(&mut s, dart, over_first);
            s.finish()
        }
        MoveSite::R1Remove { dart } => {
            if dart >= d.dart_count() || !r1_remove_site(d, dart) {
                return Err(Error::StaleMove);
            }
            let x = d.node_of(dart);
            let j = d.slot_of(dart);
            let slots = d.node(x).slots.clone();
            let mut s = Surgery::new(d);
            s.kill_edge(dart);
            s.set_node(x, SKind::Pass, vec![slots[(j + 1) % 4], slots[(j + 2) % 4]]);
            s.dissolve_passes()?;
            s.finish()
        }
        MoveSite::R2Add { finger, target, finger_over } => {
            if !r2_add_site(d, finger, target) {
                return Err(Error::StaleMove);
            }
            let mut s = Surgery::new(d);
            r2_insert(&mut s, finger, target, finger_over);
            s.finish()
        }
        MoveSite::R2Remove { dart } => {
            if dart >= d.dart_count() || !r2_remove_site(d, dart) {
                return Err(Error::StaleMove);
            }
            let x = d.node_of(dart);
            let y = d.node_of(mate(dart));
            let mut s = Surgery::new(d);
            for v in [x, y] {
                let sl = d.node(v).slots.clone();
                s.set_node(v, SKind::Pass, vec![sl[0], sl[2]]);
                s.add_pass(sl[1], sl[3]);
            }
            s.dissolve_passes()?;
            s.finish()
        }
        MoveSite::R3 { dart } => {
            if dart >= d.dart_count() || !r3_site(d, dart) {
                return Err(Error::StaleMove);
            }
            r3_apply(d, dart)
        }
    }
}

/// Inserts a kink on the edge of `d` into the face on its right.
pub(crate) fn r1_insert(s: &mut Surgery, d: DartId, over_first: bool) -> NodeId {
    let (a, b) = s.split(d);
    let (ls, lt) = s.new_edge();
    let (l_start, l_end) = if s.end(d) == End::Source { (ls, lt) } else { (lt, ls) };
    let slots = s.crossing_slots([b, a, l_end, l_start], usize::from(over_first));
    let name = s.fresh_name("c");
    s.add_node(name, SKind::Node(NodeKind::Crossing { starred: false }), slots)
}

/// Pushes a finger of the edge of `d1` across the edge of `d2`, creating a
/// bigon. Returns the two new crossings (near `d1`'s node first).
pub(crate) fn r2_insert(s: &mut Surgery, d1: DartId, d2: DartId, finger_over: bool) -> (NodeId, NodeId) {
    let (a1, b1) = s.split(d1);
    let (a2, b2) = s.split(b1);
    let (c1, e1) = s.split(d2);
    let (c2, e2) = s.split(e1);
    let parity = usize::from(finger_over);
    let xs = s.crossing_slots([c2, a1, e2, b1], parity);
    let ys = s.crossing_slots([c1, b2, e1, a2], parity);
    let nx = s.fresh_name("c");
    let x = s.add_node(nx, SKind::Node(NodeKind::Crossing { starred: false }), xs);
    let ny = s.fresh_name("c");
    let y = s.add_node(ny, SKind::Node(NodeKind::Crossing { starred: false }), ys);
    (x, y)
}

fn r3_apply(d: &Diagram, d1: DartId) -> Result<Diagram> {
    let ds = [d1, d.face_next(d1), d.face_next(d.face_next(d1))];
    let xs: Vec<NodeId> = ds.iter().map(|x| d.node_of(*x)).collect();
    let over: Vec<bool> = ds.iter().map(|x| d.slot_of(*x) % 2 == 1).collect();
    let h3: Vec<DartId> = (0..3).map(|i| d.node(xs[i]).slots[(d.slot_of(ds[i]) + 1) % 4]).collect();
    let h4: Vec<DartId> = (0..3).map(|i| d.node(xs[i]).slots[(d.slot_of(ds[i]) + 2) % 4]).collect();
    let mut s = Surgery::new(d);
    for &x in &ds {
        s.kill_edge(x);
    }
    // New side i joins Y_i and Y_{i+1}; `near[i]` is its dart at Y_i, `far[i]` at Y_{i+1}.
    let mut near = [0; 3];
    let mut far = [0; 3];
    for i in 0..3 {
        let (src, tgt) = s.new_edge();
        if dart_end(ds[i]) == End::Source {
            far[i] = src;
            near[i] = tgt;
        } else {
            near[i] = src;
            far[i] = tgt;
        }
    }
    for i in 0..3 {
        let prev = (i + 2) % 3;
        let next = (i + 1) % 3;
        let ccw = [h4[prev], h3[next], far[prev], near[i]];
        let slots = s.crossing_slots(ccw, usize::from(over[i]));
        s.set_node(xs[i], SKind::Node(NodeKind::Crossing { starred: false }), slots);
    }
    s.finish()
}

/// Reverses the orientation of every component.
pub fn reverse(d: &Diagram) -> Diagram {
    let nodes = d
        .nodes()
        .iter()
        .map(|n| {
            let mut n = n.clone();
            n.slots.iter_mut().for_each(|x| *x = mate(*x));
            match &mut n.kind {
                NodeKind::Tail => n.kind = NodeKind::Head,
                NodeKind::Head => n.kind = NodeKind::Tail,
                NodeKind::Star { anchor } => *anchor = mate(*anchor),
                NodeKind::Crossing { .. } => n.slots.rotate_left(2),
                _ => {}
            }
            n
        })
        .collect();
    d.with_nodes(d.surface(), nodes).expect("reversal preserves validity")
}

fn require_plain(d: &Diagram, c: NodeId) -> Result<()> {
    if c < d.nodes().len() && plain_crossing(d, c) {
        Ok(())
    } else {
        Err(Error::NotFound(format!("node {c} is not an unstarred crossing")))
    }
}

pub fn switch_crossing(d: &Diagram, c: NodeId) -> Result<Diagram> {
    require_plain(d, c)?;
    let mut nodes = d.nodes().to_vec();
    let k = if dart_end(nodes[c].slots[1]) == End::Target { 1 } else { 3 };
    nodes[c].slots.rotate_left(k);
    d.with_nodes(d.surface(), nodes)
}

/// Oriented smoothing: each incoming dart is joined to the adjacent outgoing one.
pub fn smooth_crossing(d: &Diagram, c: NodeId) -> Result<Diagram> {
    require_plain(d, c)?;
    let sl = d.node(c).slots.clone();
    let mut s = Surgery::new(d);
    if d.is_positive(c) {
        s.set_node(c, SKind::Pass, vec![sl[0], sl[1]]);
        s.add_pass(sl[3], sl[2]);
    } else {
        s.set_node(c, SKind::Pass, vec![sl[0], sl[3]]);
        s.add_pass(sl[1], sl[2]);
    }
    s.dissolve_passes()?;
    s.finish()
}

#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub plus: Diagram,
    pub minus: Diagram,
    pub zero: Diagram,
}

pub fn skein_triple(d: &Diagram, c: NodeId) -> Result<SkeinTriple> {
    let switched = switch_crossing(d, c)?;
    let zero = smooth_crossing(d, c)?;
    if d.is_positive(c) {
        Ok(SkeinTriple { plus: d.clone(), minus: switched, zero })
    } else {
        Ok(SkeinTriple { plus: switched, minus: d.clone(), zero })
    }
}

/// True iff one of the two unoriented smoothings at `c` disconnects the universe.
pub fn is_separating(d: &Diagram, c: NodeId) -> bool {
    [[0usize, 1, 2, 3], [0, 3, 1, 2]].iter().any(|p| !smoothing_connected(d, c, p))
}

fn smoothing_connected(d: &Diagram, c: NodeId, pairing: &[usize; 4]) -> bool {
    // Union-find over darts: darts at one node are joined, except at `c`
    // where only the paired slots are.
    let n = d.dart_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    for x in 0..n {
        union(&mut parent, x, mate(x));
    }
    for (v, node) in d.nodes().iter().enumerate() {
        let s = &node.slots;
        if v == c {
            union(&mut parent, s[pairing[0]], s[pairing[1]]);
            union(&mut parent, s[pairing[2]], s[pairing[3]]);
        } else {
            for w in s.windows(2) {
                union(&mut parent, w[0], w[1]);
            }
        }
    }
    let r = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == r)
}

/// Seeded walk of `steps` Reidemeister moves chosen uniformly among the
/// applicable ones. Insertions are skipped once they would push the crossing
/// count past three times the starting count (at least 2), and moves that
/// disconnect the universe are rejected. Returns the final
/// diagram and the number of moves applied.
pub fn random_walk(d: &Diagram, steps: usize, seed: u64) -> (Diagram, usize) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let cap = 3 * d.crossing_count().max(2);
    let mut cur = d.clone();
    let mut applied = 0;
    let mut attempts = 0;
    while applied < steps && attempts < 20 * (steps + 1) {
        attempts += 1;
        let n = cur.crossing_count();
        let moves: Vec<MoveSite> = enumerate_moves(&cur)
            .into_iter()
            .filter(|m| match m.kind() {
                MoveKind::R1Add => n < cap,
                MoveKind::R2Add => n + 2 <= cap,
                _ => true,
            })
            .collect();
        if moves.is_empty() {
            break;
        }
        let m = moves[rng.gen_range(0..moves.len())];
        if let Some(next) = apply_move(&cur, m).ok().filter(|x| x.is_connected()) {
            cur = next;
            applied += 1;
        }
    }
    (cur, applied)
}

/// Bounded breadth-first search for a sequence of Reidemeister moves, never
/// exceeding `n + slack` crossings, that reaches a diagram with fewer
/// crossings than `d`. Returns the reduced diagram, or `None` if the bounds
/// are exhausted.
pub fn reduce_crossings(d: &Diagram, slack: usize, max_visited: usize) -> Option<Diagram> {
    use std::collections::{HashSet, VecDeque};
    let n0 = d.crossing_count();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(d.canonical_key());
    queue.push_back(d.clone());
    while let Some(cur) = queue.pop_front() {
        for m in enumerate_moves(&cur) {
            let added = match m.kind() {
                MoveKind::R1Add => 1,
                MoveKind::R2Add => 2,
                _ => 0,
            };
            if cur.crossing_count() + added > n0 + slack {
                continue;
            }
            let Ok(next) = apply_move(&cur, m) else { continue };
            if next.crossing_count() < n0 {
                return Some(next);
            }
            if seen.len() >= max_visited {
                return None;
            }
            if seen.insert(next.canonical_key()) {
                queue.push_back(next);
            }
        }
    }
    None
}

/// Forbidden move: pushes the endpoint `v` across the edge of `target`, a dart
/// on the face containing `v`, creating one crossing next to the endpoint.
pub fn endpoint_extend(d: &Diagram, v: NodeId, target: DartId, endpoint_over: bool) -> Result<Diagram> {
    let t0 = match d.nodes().get(v) {
        Some(n) if n.kind.is_endpoint() => n.slots[0],
        _ => return Err(Error::NotFound(format!("node {v} is not an endpoint"))),
    };
    if target >= d.dart_count() || target / 2 == t0 / 2 || d.face_of(target) != d.face_of(t0) {
        return Err(Error::StaleMove);
    }
    let mut s = Surgery::new(d);
    let (a, b) = s.split(target);
    let (gs, gt) = s.new_edge();
    let (rs, rt) = s.new_edge();
    let tail = dart_end(t0) == End::Source;
    // g joins the new endpoint to the crossing; r joins the crossing to the old strand.
    let (g_far, g_near, r_near, r_far) = if tail { (gs, gt, rs, rt) } else { (gt, gs, rt, rs) };
    let slots = s.crossing_slots([b, g_near, a, r_near], usize::from(endpoint_over));
    let name = s.fresh_name("c");
    s.add_node(name, SKind::Node(NodeKind::Crossing { starred: false }), slots);
    let kind = d.node(v).kind.clone();
    s.set_node(v, SKind::Pass, vec![r_far, t0]);
    let name = s.fresh_name(if tail { "t" } else { "h" });
    s.add_node(name, SKind::Node(kind), vec![g_far]);
    s.dissolve_passes()?;
    s.finish()
}

/// Forbidden move: pulls the endpoint `v` back through the crossing next to it.
pub fn endpoint_retract(d: &Diagram, v: NodeId) -> Result<Diagram> {
    let t0 = match d.nodes().get(v) {
        Some(n) if n.kind.is_endpoint() => n.slots[0],
        _ => return Err(Error::NotFound(format!("node {v} is not an endpoint"))),
    };
    let x = d.node_of(mate(t0));
    if !plain_crossing(d, x) {
        return Err(Error::StaleMove);
    }
    let sl = d.node(x).slots.clone();
    let j = d.slot_of(mate(t0));
    let rest = sl[(j + 2) % 4];
    if rest / 2 == t0 / 2 {
        return Err(Error::StaleMove);
    }
    let mut s = Surgery::new(d);
    s.kill_edge(t0);
    let kind = if dart_end(rest) == End::Source { NodeKind::Tail } else { NodeKind::Head };
    s.set_node(v, SKind::Node(kind), vec![rest]);
    s.set_node(x, SKind::Pass, vec![sl[(j + 1) % 4], sl[(j + 3) % 4]]);
    s.dissolve_passes()?;
    s.finish()
}
