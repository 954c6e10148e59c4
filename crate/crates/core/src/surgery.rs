//! Mutable map used while rewriting a diagram. Darts are first-class here;
//! the result is compacted back into a validated [`Diagram`] by [`Surgery::finish`].

use std::collections::BTreeSet;

use crate::diagram::{dart_end, mate, Diagram, DartId, End, Node, NodeId, NodeKind, Surface};
use crate::error::{Error, Result};

const DEAD: usize = usize::MAX;

#[derive(Clone, Debug)]
pub(crate) enum SKind {
    Node(NodeKind),
    /// Degree-2 pass-through marker removed by [`Surgery::dissolve_passes`].
    Pass,
}

#[derive(Clone, Debug)]
pub(crate) struct SNode {
    pub name: String,
    pub kind: SKind,
    pub slots: Vec<DartId>,
}

#[derive(Clone, Debug)]
pub(crate) struct Surgery {
    pub surface: Surface,
    mates: Vec<usize>,
    ends: Vec<End>,
    nodes: Vec<Option<SNode>>,
    star_cycles: Vec<Vec<DartId>>,
    names: BTreeSet<String>,
}

impl Surgery {
    pub fn new(d: &Diagram) -> Self {
        let nd = d.dart_count();
        let mut star_cycles = vec![Vec::new(); d.nodes().len()];
        for v in d.stars() {
            let NodeKind::Star { anchor } = d.node(v).kind else { unreachable!() };
            let face = &d.faces()[d.face_of(anchor)].boundary;
            let k = face.iter().position(|x| *x == anchor).unwrap();
            star_cycles[v] = face[k..].iter().chain(face[..k].iter()).copied().collect();
        }
        Surgery {
            surface: d.surface(),
            mates: (0..nd).map(mate).collect(),
            ends: (0..nd).map(dart_end).collect(),
            nodes: d
                .nodes()
                .iter()
                .map(|n| Some(SNode { name: n.name.clone(), kind: SKind::Node(n.kind.clone()), slots: n.slots.clone() }))
                .collect(),
            star_cycles,
            names: d.nodes().iter().map(|n| n.name.clone()).collect(),
        }
    }

    pub fn end(&self, d: DartId) -> End {
        self.ends[d]
    }

    pub fn node_mut(&mut self, v: NodeId) -> &mut SNode {
        self.nodes[v].as_mut().expect("live node")
    }

    pub fn new_edge(&mut self) -> (DartId, DartId) {
        let s = self.mates.len();
        self.mates.push(s + 1);
        self.mates.push(s);
        self.ends.push(End::Source);
        self.ends.push(End::Target);
        (s, s + 1)
    }

    /// New dart pair with the given ends, mated to each other.
    fn new_pair(&mut self, a_end: End) -> (DartId, DartId) {
        let (s, t) = self.new_edge();
        if a_end == End::Source {
            (s, t)
        } else {
            (t, s)
        }
    }

    /// Cuts the edge of `d` in two. Returns `(a, b)`: `a` is the new mate of
    /// `d` and `b` the new mate of the old mate of `d`.
    pub fn split(&mut self, d: DartId) -> (DartId, DartId) {
        let m = self.mates[d];
        let (a, b) = self.new_pair(self.ends[d].flip());
        self.join(d, a);
        self.join(b, m);
        (a, b)
    }

    /// Mates two free darts of opposite ends.
    pub fn join(&mut self, x: DartId, y: DartId) {
        debug_assert_ne!(self.ends[x], self.ends[y]);
        self.mates[x] = y;
        self.mates[y] = x;
    }

    pub fn kill_edge(&mut self, d: DartId) {
        let m = self.mates[d];
        self.mates[d] = DEAD;
        if m != DEAD {
            self.mates[m] = DEAD;
        }
    }

    pub fn fresh_name(&mut self, prefix: &str) -> String {
        let mut k = 1;
        loop {
            let name = format!("{prefix}{k}");
            if !self.names.contains(&name) {
                self.names.insert(name.clone());
                return name;
            }
            k += 1;
        }
    }

    pub fn add_node(&mut self, name: String, kind: SKind, slots: Vec<DartId>) -> NodeId {
        self.names.insert(name.clone());
        self.nodes.push(Some(SNode { name, kind, slots }));
        self.star_cycles.push(Vec::new());
        self.nodes.len() - 1
    }

    pub fn add_pass(&mut self, a: DartId, b: DartId) -> NodeId {
        self.add_node(String::new(), SKind::Pass, vec![a, b])
    }

    pub fn set_node(&mut self, v: NodeId, kind: SKind, slots: Vec<DartId>) {
        let n = self.node_mut(v);
        n.kind = kind;
        n.slots = slots;
    }

    /// Slot list for a crossing from darts given counterclockwise, with the
    /// over strand on positions `over_parity` and `over_parity + 2`.
    pub fn crossing_slots(&self, ccw: [DartId; 4], over_parity: usize) -> Vec<DartId> {
        let u = 1 - over_parity;
        let start = if self.ends[ccw[u]] == End::Target { u } else { u + 2 };
        (0..4).map(|i| ccw[(start + i) % 4]).collect()
    }

    /// Removes every pass node, joining the darts on either side. Fails if a
    /// closed loop consisting only of pass nodes appears.
    pub fn dissolve_passes(&mut self) -> Result<()> {
        for v in 0..self.nodes.len() {
            let is_pass = matches!(self.nodes[v], Some(SNode { kind: SKind::Pass, .. }));
            if !is_pass {
                continue;
            }
            let slots = self.nodes[v].take().unwrap().slots;
            let (p, q) = (slots[0], slots[1]);
            let (x, y) = (self.mates[p], self.mates[q]);
            if x == q {
                return Err(Error::Unsupported("rewrite would create a crossingless closed loop".into()));
            }
            self.mates[p] = DEAD;
            self.mates[q] = DEAD;
            self.join(x, y);
        }
        Ok(())
    }

    /// Compacts into a validated diagram. Edges are ordered by their source
    /// dart id in this map, nodes by id.
    pub fn finish(self) -> Result<Diagram> {
        let surface = self.surface;
        self.finish_as(surface)
    }

    pub fn finish_as(mut self, surface: Surface) -> Result<Diagram> {
        let n = self.mates.len();
        let mut new_id = vec![DEAD; n];
        let mut edges = 0;
        for d in 0..n {
            if self.mates[d] != DEAD && self.ends[d] == End::Source {
                let m = self.mates[d];
                new_id[d] = 2 * edges;
                new_id[m] = 2 * edges + 1;
                edges += 1;
            }
        }
        let mut nodes = Vec::new();
        for v in 0..self.nodes.len() {
            let Some(sn) = self.nodes[v].take() else { continue };
            let SKind::Node(mut kind) = sn.kind else {
                return Err(Error::Unsupported("undissolved pass node".into()));
            };
            if let NodeKind::Star { anchor } = &mut kind {
                let a = if new_id[*anchor] != DEAD {
                    *anchor
                } else {
                    *self.star_cycles[v]
                        .iter()
                        .find(|x| new_id[**x] != DEAD)
                        .ok_or_else(|| Error::Unsupported(format!("star {} lost its region", sn.name)))?
                };
                *anchor = new_id[a];
            }
            let mut slots = Vec::with_capacity(sn.slots.len());
            for d in sn.slots {
                if new_id[d] == DEAD {
                    return Err(Error::Unsupported(format!("node {} references a removed dart", sn.name)));
                }
                slots.push(new_id[d]);
            }
            nodes.push(Node { name: sn.name, kind, slots });
        }
        Diagram::new(surface, edges, nodes)
    }

    /// Overrides the region anchor of a star node.
    pub fn set_star_anchor(&mut self, v: NodeId, anchor: DartId, cycle: Vec<DartId>) {
        self.node_mut(v).kind = SKind::Node(NodeKind::Star { anchor });
        self.star_cycles[v] = cycle;
    }
}
