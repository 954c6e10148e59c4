//! Dart-based combinatorial maps carrying linkoid diagrams.
//!
//! Edge `k` owns darts `2k` (source end) and `2k + 1` (target end). Node slots
//! list darts counterclockwise. The face to the right of a dart `d`, when
//! leaving its node along `d`, is the orbit of `d` under `σ ∘ α`, where `α`
//! swaps the two darts of an edge and `σ` moves to the next slot
//! counterclockwise.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;
pub type DartId = usize;
pub type FaceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Source,
    Target,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Source => End::Target,
            End::Target => End::Source,
        }
    }
}

pub fn dart(edge: EdgeId, end: End) -> DartId {
    2 * edge + usize::from(end == End::Target)
}

pub fn dart_edge(d: DartId) -> EdgeId {
    d / 2
}

pub fn dart_end(d: DartId) -> End {
    if d % 2 == 0 {
        End::Source
    } else {
        End::Target
    }
}

pub fn mate(d: DartId) -> DartId {
    d ^ 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Crossing { starred: bool },
    Tail,
    Head,
    Star { anchor: DartId },
    Reversal2,
    Trivalent3,
}

impl NodeKind {
    pub fn degree(&self) -> usize {
        match self {
            NodeKind::Crossing { .. } => 4,
            NodeKind::Tail | NodeKind::Head => 1,
            NodeKind::Star { .. } => 0,
            NodeKind::Reversal2 => 2,
            NodeKind::Trivalent3 => 3,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, NodeKind::Crossing { .. })
    }

    pub fn is_endpoint(&self) -> bool {
        matches!(self, NodeKind::Tail | NodeKind::Head)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub name: String,
    pub kind: NodeKind,
    pub slots: Vec<DartId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Sphere,
    Plane,
    Torus,
}

impl Surface {
    pub fn genus(self) -> usize {
        match self {
            Surface::Sphere | Surface::Plane => 0,
            Surface::Torus => 1,
        }
    }
}

pub const INFINITY: &str = "infinity";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub id: FaceId,
    pub boundary: Vec<DartId>,
    pub occupants: Vec<NodeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrandKind {
    /// Both ends are endpoints (tails or heads).
    Knotoidal,
    Loop,
    /// At least one end is a trivalent node.
    Graph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub kind: StrandKind,
    /// Darts in traversal order, each the dart by which the strand leaves a node.
    pub darts: Vec<DartId>,
    pub start: Option<NodeId>,
    pub end: Option<NodeId>,
}

impl Strand {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.darts.iter().map(|d| dart_edge(*d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub kappa: usize,
    pub ell: usize,
    pub strands: Vec<Strand>,
    pub edge_strand: Vec<usize>,
}

impl Components {
    pub fn knotoidal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.strands.len()).filter(|i| self.strands[*i].kind == StrandKind::Knotoidal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    surface: Surface,
    edge_count: usize,
    nodes: Vec<Node>,
    loc: Vec<(NodeId, usize)>,
    faces: Vec<Face>,
    face_of: Vec<FaceId>,
}

impl Diagram {
    /// Builds and validates a diagram.
    pub fn new(surface: Surface, edge_count: usize, nodes: Vec<Node>) -> Result<Diagram> {
        let mut errs = Vec::new();
        if edge_count == 0 {
            errs.push("empty diagram: no edges".to_string());
            return Err(Error::Invalid(errs));
        }
        let nd = 2 * edge_count;
        let mut loc: Vec<Option<(NodeId, usize)>> = vec![None; nd];
        let mut names = BTreeSet::new();
        for (v, node) in nodes.iter().enumerate() {
            if !names.insert(node.name.as_str()) {
                errs.push(format!("node {}: duplicate name", node.name));
            }
            if node.slots.len() != node.kind.degree() {
                errs.push(format!(
                    "node {}: expected {} slots, found {}",
                    node.name,
                    node.kind.degree(),
                    node.slots.len()
                ));
            }
            for (i, &d) in node.slots.iter().enumerate() {
                if d >= nd {
                    errs.push(format!("node {}: dart {} does not exist", node.name, dart_name(d)));
                } else if loc[d].is_some() {
                    errs.push(format!("dart multiply attached: {} (node {})", dart_name(d), node.name));
                } else {
                    loc[d] = Some((v, i));
                }
            }
        }
        for (d, l) in loc.iter().enumerate() {
            if l.is_none() {
                errs.push(format!("dart unattached: {}", dart_name(d)));
            }
        }
        if !errs.is_empty() {
            return Err(Error::Invalid(errs));
        }
        for node in &nodes {
            let ends: Vec<End> = node.slots.iter().map(|d| dart_end(*d)).collect();
            match &node.kind {
                NodeKind::Crossing { .. } => {
                    if ends[0] != End::Target || ends[2] != End::Source {
                        errs.push(format!("node {}: under-strand continuity", node.name));
                    }
                    if ends[1] == ends[3] {
                        errs.push(format!("node {}: over-strand continuity", node.name));
                    }
                }
                NodeKind::Tail if ends[0] != End::Source => {
                    errs.push(format!("node {}: tail must hold a source dart", node.name));
                }
                NodeKind::Head if ends[0] != End::Target => {
                    errs.push(format!("node {}: head must hold a target dart", node.name));
                }
                NodeKind::Reversal2 if ends[0] != ends[1] => {
                    errs.push(format!("node {}: rev2 darts must share an end", node.name));
                }
                NodeKind::Star { anchor } if *anchor >= nd => {
                    errs.push(format!("node {}: star anchor {} does not exist", node.name, dart_name(*anchor)));
                }
                _ => {}
            }
        }
        let infinities: Vec<&Node> = nodes.iter().filter(|n| n.name == INFINITY).collect();
        match surface {
            Surface::Plane => {
                if infinities.len() != 1 || !matches!(infinities[0].kind, NodeKind::Star { .. }) {
                    errs.push("plane diagram requires exactly one star node named infinity".to_string());
                }
            }
            _ => {
                if !infinities.is_empty() {
                    errs.push("node infinity is only allowed on a plane diagram".to_string());
                }
            }
        }
        if !errs.is_empty() {
            return Err(Error::Invalid(errs));
        }
        let loc: Vec<(NodeId, usize)> = loc.into_iter().map(|l| l.unwrap()).collect();
        let mut dg = Diagram { surface, edge_count, nodes, loc, faces: Vec::new(), face_of: vec![usize::MAX; nd] };
        dg.trace_faces();
        match dg.euler_genus() {
            Some(g) if g == surface.genus() => Ok(dg),
            Some(g) => Err(Error::Invalid(vec![format!(
                "rotation system has genus {g}, surface expects {}",
                surface.genus()
            )])),
            None => Err(Error::Invalid(vec!["invalid rotation system: non-integer genus".to_string()])),
        }
    }

    fn trace_faces(&mut self) {
        let nd = 2 * self.edge_count;
        for d0 in 0..nd {
            if self.face_of[d0] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut boundary = Vec::new();
            let mut d = d0;
            loop {
                self.face_of[d] = id;
                boundary.push(d);
                d = self.face_next(d);
                if d == d0 {
                    break;
                }
            }
            self.faces.push(Face { id, boundary, occupants: Vec::new() });
        }
        for (v, node) in self.nodes.iter().enumerate() {
            if let NodeKind::Star { anchor } = node.kind {
                let f = self.face_of[anchor];
                self.faces[f].occupants.push(v);
            }
        }
    }

    /// Total genus summed over connected pieces, `None` if the Euler count is inconsistent.
    fn euler_genus(&self) -> Option<usize> {
        let pieces = self.pieces();
        let npieces = pieces.iter().copied().max().map_or(0, |m| m + 1);
        let mut chi = vec![0i64; npieces];
        for (v, node) in self.nodes.iter().enumerate() {
            if !node.slots.is_empty() {
                chi[pieces[v]] += 1;
            }
        }
        for e in 0..self.edge_count {
            chi[pieces[self.loc[2 * e].0]] -= 1;
        }
        for f in &self.faces {
            chi[pieces[self.loc[f.boundary[0]].0]] += 1;
        }
        let mut g = 0;
        for c in chi {
            if c > 2 || (2 - c) % 2 != 0 {
                return None;
            }
            g += ((2 - c) / 2) as usize;
        }
        Some(g)
    }

    /// Connected-piece label for every node; degree-zero nodes get the label of their anchor.
    fn pieces(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in 0..self.edge_count {
            let a = find(&mut parent, self.loc[2 * e].0);
            let b = find(&mut parent, self.loc[2 * e + 1].0);
            parent[a] = b;
        }
        for (v, node) in self.nodes.iter().enumerate() {
            if let NodeKind::Star { anchor } = node.kind {
                let a = find(&mut parent, v);
                let b = find(&mut parent, self.loc[anchor].0);
                parent[a] = b;
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn is_planar(&self) -> bool {
        self.surface == Surface::Plane
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edge_count
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v]
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn node_of(&self, d: DartId) -> NodeId {
        self.loc[d].0
    }

    pub fn slot_of(&self, d: DartId) -> usize {
        self.loc[d].1
    }

    /// Next dart counterclockwise around the node of `d`.
    pub fn sigma(&self, d: DartId) -> DartId {
        let (v, i) = self.loc[d];
        let s = &self.nodes[v].slots;
        s[(i + 1) % s.len()]
    }

    pub fn sigma_inv(&self, d: DartId) -> DartId {
        let (v, i) = self.loc[d];
        let s = &self.nodes[v].slots;
        s[(i + s.len() - 1) % s.len()]
    }

    /// Successor of `d` along the boundary of the face on its right.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.sigma(mate(d))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d]
    }

    pub fn face_is_starred(&self, f: FaceId) -> bool {
        !self.faces[f].occupants.is_empty()
    }

    pub fn crossings(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|v| self.nodes[*v].kind.is_crossing())
    }

    pub fn unstarred_crossings(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|v| self.nodes[*v].kind == NodeKind::Crossing { starred: false })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }

    pub fn stars(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|v| matches!(self.nodes[*v].kind, NodeKind::Star { .. }))
    }

    /// Positive iff the over strand enters at slot 3, i.e. crosses the under
    /// strand from left to right when viewed along the under strand.
    pub fn is_positive(&self, c: NodeId) -> bool {
        dart_end(self.nodes[c].slots[3]) == End::Target
    }

    /// The face containing the quadrant between slots `q` and `q + 1` of node `v`.
    pub fn quadrant_face(&self, v: NodeId, q: usize) -> FaceId {
        let s = &self.nodes[v].slots;
        self.face_of[s[(q + 1) % s.len()]]
    }

    pub fn genus(&self) -> usize {
        self.surface.genus()
    }

    pub fn is_connected(&self) -> bool {
        let p = self.pieces();
        p.iter().all(|x| *x == 0)
    }

    /// Dart-level strand decomposition.
    pub fn components(&self) -> Components {
        let ne = self.edge_count;
        let mut edge_strand = vec![usize::MAX; ne];
        let mut strands = Vec::new();
        let through = |d: DartId| -> Option<DartId> {
            let (v, i) = self.loc[d];
            match self.nodes[v].kind {
                NodeKind::Crossing { .. } => Some(self.nodes[v].slots[(i + 2) % 4]),
                NodeKind::Reversal2 => Some(self.nodes[v].slots[1 - i]),
                _ => None,
            }
        };
        let walk = |start: DartId, edge_strand: &mut Vec<usize>, id: usize| -> (Vec<DartId>, Option<NodeId>) {
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                darts.push(d);
                edge_strand[dart_edge(d)] = id;
                match through(mate(d)) {
                    Some(nd) if nd == start => return (darts, None),
                    Some(nd) => d = nd,
                    None => return (darts, Some(self.loc[mate(d)].0)),
                }
            }
        };
        let mut order: Vec<NodeId> = Vec::new();
        for pass in 0..3 {
            for (v, n) in self.nodes.iter().enumerate() {
                let hit = match pass {
                    0 => n.kind == NodeKind::Tail,
                    1 => n.kind == NodeKind::Head,
                    _ => n.kind == NodeKind::Trivalent3,
                };
                if hit {
                    order.push(v);
                }
            }
        }
        for v in order {
            for &d in &self.nodes[v].slots {
                if edge_strand[dart_edge(d)] != usize::MAX {
                    continue;
                }
                let id = strands.len();
                let (darts, end) = walk(d, &mut edge_strand, id);
                let end = end.expect("open strand has two ends");
                let ends_kind = [&self.nodes[v].kind, &self.nodes[end].kind];
                let kind = if ends_kind.iter().all(|k| k.is_endpoint()) {
                    StrandKind::Knotoidal
                } else {
                    StrandKind::Graph
                };
                strands.push(Strand { kind, darts, start: Some(v), end: Some(end) });
            }
        }
        for e in 0..ne {
            if edge_strand[e] != usize::MAX {
                continue;
            }
            let id = strands.len();
            let (darts, end) = walk(dart(e, End::Source), &mut edge_strand, id);
            debug_assert!(end.is_none());
            strands.push(Strand { kind: StrandKind::Loop, darts, start: None, end: None });
        }
        let kappa = strands.iter().filter(|s| s.kind == StrandKind::Knotoidal).count();
        let ell = strands.iter().filter(|s| s.kind == StrandKind::Loop).count();
        Components { kappa, ell, strands, edge_strand }
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// `n - f` over all crossings and faces.
    pub fn obstruction(&self) -> Result<i64> {
        self.require_connected()?;
        Ok(self.crossing_count() as i64 - self.faces.len() as i64)
    }

    /// Unstarred crossings minus unstarred faces.
    pub fn obstruction_starred(&self) -> Result<i64> {
        self.require_connected()?;
        let n = self.unstarred_crossings().count() as i64;
        let f = (0..self.faces.len()).filter(|f| !self.face_is_starred(*f)).count() as i64;
        Ok(n - f)
    }

    /// All crossings minus faces free of degree-zero nodes.
    pub fn obstruction_generalized(&self) -> Result<i64> {
        self.require_connected()?;
        let n = self.crossing_count() as i64;
        let f = (0..self.faces.len()).filter(|f| !self.face_is_starred(*f)).count() as i64;
        Ok(n - f)
    }

    /// Isomorphism-invariant key: equal for diagrams that differ only by
    /// renumbering of nodes, edges and names.
    pub fn canonical_key(&self) -> Vec<u32> {
        let nd = self.dart_count();
        let pieces = self.pieces();
        let npieces = pieces.iter().copied().max().map_or(0, |m| m + 1);
        let mut stars_in = vec![(0u32, 0u32); self.faces.len()];
        for v in self.stars() {
            let NodeKind::Star { anchor } = self.nodes[v].kind else { unreachable!() };
            let f = self.face_of[anchor];
            if self.nodes[v].name == INFINITY {
                stars_in[f].1 += 1;
            } else {
                stars_in[f].0 += 1;
            }
        }
        let info = |d: DartId| -> [u32; 5] {
            let (v, i) = self.loc[d];
            let kind = match self.nodes[v].kind {
                NodeKind::Crossing { starred: false } => 1,
                NodeKind::Crossing { starred: true } => 2,
                NodeKind::Tail => 3,
                NodeKind::Head => 4,
                NodeKind::Reversal2 => 5,
                NodeKind::Trivalent3 => 6,
                NodeKind::Star { .. } => 7,
            };
            let slot = if self.nodes[v].kind.is_crossing() { i as u32 } else { 0 };
            let f = self.face_of[d];
            [kind, slot, (d % 2) as u32, stars_in[f].0, stars_in[f].1]
        };
        let mut codes: Vec<Vec<u32>> = Vec::new();
        for p in 0..npieces {
            let roots: Vec<DartId> = (0..nd).filter(|d| pieces[self.loc[*d].0] == p).collect();
            if roots.is_empty() {
                continue;
            }
            let mut best: Option<Vec<u32>> = None;
            let mut label = vec![u32::MAX; nd];
            for &r in &roots {
                label.iter_mut().for_each(|x| *x = u32::MAX);
                let mut order = vec![r];
                label[r] = 0;
                let mut head = 0;
                while head < order.len() {
                    let d = order[head];
                    head += 1;
                    for nb in [mate(d), self.sigma(d)] {
                        if label[nb] == u32::MAX {
                            label[nb] = order.len() as u32;
                            order.push(nb);
                        }
                    }
                }
                let mut code = Vec::with_capacity(order.len() * 7);
                for &d in &order {
                    code.push(label[mate(d)]);
                    code.push(label[self.sigma(d)]);
                    code.extend_from_slice(&info(d));
                }
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
            codes.push(best.unwrap());
        }
        codes.sort();
        let mut out = vec![self.surface as u32];
        for c in codes {
            out.push(c.len() as u32);
            out.extend(c);
        }
        out
    }

    /// Copy with a different node list and surface (re-validated).
    pub fn with_nodes(&self, surface: Surface, nodes: Vec<Node>) -> Result<Diagram> {
        Diagram::new(surface, self.edge_count, nodes)
    }
}

pub fn dart_name(d: DartId) -> String {
    format!("e{}.{}", dart_edge(d), if dart_end(d) == End::Source { "s" } else { "t" })
}
