//! Skein-module generators, seeded random diagrams and the shipped fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::codec::parse_lkd;
use crate::diagram::{DartId, Diagram, NodeKind, Surface};
use crate::error::Result;
use crate::moves::{self, r2_insert, MoveSite};
use crate::sketch::{self, Curve};
use crate::surgery::{SKind, Surgery};

pub fn trivial_knotoid() -> Diagram {
    parse_lkd("linkoid v1\nsurface sphere\nedge e0\nnode t tail e0.s\nnode h head e0.t\n").expect("valid")
}

/// A circle with one kink.
pub fn kinked_loop() -> Diagram {
    parse_lkd("linkoid v1\nsurface sphere\nedge e0\nedge e1\nnode c1 crossing e0.t e1.t e1.s e0.s\n").expect("valid")
}

/// Adds a trivial strand (or a kinked loop) inside the face right of `near`
/// and hooks it to the edge of `near` with two crossings.
fn attach(d: &Diagram, near: DartId, knotoidal: bool, over: bool) -> Result<Diagram> {
    let mut s = Surgery::new(d);
    let hook = if knotoidal {
        let (gs, gt) = s.new_edge();
        let t = s.fresh_name("t");
        s.add_node(t, SKind::Node(NodeKind::Tail), vec![gs]);
        let h = s.fresh_name("h");
        s.add_node(h, SKind::Node(NodeKind::Head), vec![gt]);
        gs
    } else {
        let (es, et) = s.new_edge();
        let (fs, ft) = s.new_edge();
        let c = s.fresh_name("c");
        s.add_node(c, SKind::Node(NodeKind::Crossing { starred: false }), vec![et, ft, fs, es]);
        es
    };
    r2_insert(&mut s, near, hook, over);
    s.finish()
}

/// Random connected (κ, ℓ)-linkoid on the sphere. Components start out as
/// trivial strands and kinked loops, each hooked to the previous one, then receive
/// `mutations` random operations: R1/R2 insertions, R3 moves, crossing
/// switches and endpoint passes.
pub fn random_linkoid(kappa: usize, ell: usize, mutations: usize, seed: u64) -> Diagram {
    assert!(kappa + ell >= 1, "need at least one component");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = if kappa > 0 { trivial_knotoid() } else { kinked_loop() };
    let mut last = 0;
    for i in 1..kappa + ell {
        let over = rng.gen_bool(0.5);
        let next = attach(&d, last, i < kappa, over).expect("hooking keeps the diagram valid");
        last = next.dart_count() - 2;
        d = next;
    }
    let mut done = 0;
    let mut attempts = 0;
    while done < mutations && attempts < 50 * (mutations + 1) {
        attempts += 1;
        if let Some(next) = mutate(&d, &mut rng).filter(|x| x.is_connected()) {
            d = next;
            done += 1;
        }
    }
    d
}

fn mutate(d: &Diagram, rng: &mut ChaCha8Rng) -> Option<Diagram> {
    match rng.gen_range(0..10) {
        0 | 1 => {
            let m = MoveSite::R1Add { dart: rng.gen_range(0..d.dart_count()), over_first: rng.gen_bool(0.5) };
            moves::apply_move(d, m).ok()
        }
        2..=4 => {
            let f = rng.gen_range(0..d.faces().len());
            let b = &d.faces()[f].boundary;
            let (x, y) = (*b.choose(rng)?, *b.choose(rng)?);
            let m = MoveSite::R2Add { finger: x, target: y, finger_over: rng.gen_bool(0.5) };
            moves::apply_move(d, m).ok()
        }
        5 => {
            let sites: Vec<MoveSite> = moves::enumerate_reducing_moves(d)
                .into_iter()
                .filter(|m| matches!(m, MoveSite::R3 { .. }))
                .collect();
            moves::apply_move(d, *sites.choose(rng)?).ok()
        }
        6 | 7 => {
            let cs: Vec<usize> = d.unstarred_crossings().collect();
            moves::switch_crossing(d, *cs.choose(rng)?).ok()
        }
        _ => {
            let ends: Vec<usize> = (0..d.nodes().len()).filter(|v| d.node(*v).kind.is_endpoint()).collect();
            let v = *ends.choose(rng)?;
            if rng.gen_bool(0.3) {
                moves::endpoint_retract(d, v).ok()
            } else {
                let f = d.face_of(d.node(v).slots[0]);
                let y = *d.faces()[f].boundary.choose(rng)?;
                moves::endpoint_extend(d, v, y, rng.gen_bool(0.5)).ok()
            }
        }
    }
}

/// Generator of the uni-linkoid skein module: a trivial strand whose tail is
/// encircled `n` times by a loop that passes under the strand and closes with
/// an arc over its own turns.
pub fn gen_gn(n: usize) -> Diagram {
    if n == 0 {
        return trivial_knotoid();
    }
    let strand = Curve::open(vec![(0.0, 0.0), (n as f64 + 2.0, 0.01)], 1.0);
    let steps = 24 * n;
    let spiral: Vec<(f64, f64)> = (0..=steps)
        .map(|i| {
            let f = if i == 0 || i == steps { i as f64 } else { i as f64 - 0.5 };
            let th = std::f64::consts::PI * (1.0 + 2.0 * f / 24.0) + 0.013;
            let r = 1.0 + (th - std::f64::consts::PI) / (2.0 * std::f64::consts::PI);
            (r * th.cos(), r * th.sin())
        })
        .collect();
    let mut heights = vec![0.0; spiral.len()];
    *heights.last_mut().unwrap() = 2.0;
    let lp = Curve { points: spiral, closed: true, heights };
    sketch::build(Surface::Sphere, &[strand, lp], &[]).expect("generator sketch is valid")
}

const FIXTURE_FILES: &[(&str, &str)] = &[
    ("K.lkd", include_str!("../fixtures/K.lkd")),
    ("K1.lkd", include_str!("../fixtures/K1.lkd")),
    ("K2.lkd", include_str!("../fixtures/K2.lkd")),
    ("generalized-G.lkd", include_str!("../fixtures/generalized-G.lkd")),
    ("planar-K1.lkd", include_str!("../fixtures/planar-K1.lkd")),
    ("planar-K2.lkd", include_str!("../fixtures/planar-K2.lkd")),
    ("vK-knotoid.lkd", include_str!("../fixtures/vK-knotoid.lkd")),
    ("vK.lkd", include_str!("../fixtures/vK.lkd")),
    ("clasp.lkd", include_str!("../fixtures/clasp.lkd")),
    ("clasp-usa.lkd", include_str!("../fixtures/clasp-usa.lkd")),
    ("clasp-uma.lkd", include_str!("../fixtures/clasp-uma.lkd")),
];

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Expectation {
    pub quantity: String,
    pub value: String,
    /// `published`, `elementary` or `computed`.
    pub source: String,
}

#[derive(Clone, Debug, Deserialize)]
struct Entry {
    name: String,
    file: String,
    expect: Vec<Expectation>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub document: String,
    pub expect: Vec<Expectation>,
}

impl Fixture {
    pub fn diagram(&self) -> Diagram {
        parse_lkd(&self.document).expect("shipped fixtures parse")
    }

    pub fn expected(&self, quantity: &str) -> Option<&str> {
        self.expect.iter().find(|e| e.quantity == quantity).map(|e| e.value.as_str())
    }
}

pub fn paper_fixtures() -> Vec<Fixture> {
    let entries: Vec<Entry> = serde_json::from_str(MANIFEST).expect("manifest parses");
    entries
        .into_iter()
        .map(|e| {
            let doc = FIXTURE_FILES.iter().find(|(f, _)| *f == e.file).expect("manifest file is shipped").1;
            Fixture { name: e.name, document: doc.to_string(), expect: e.expect }
        })
        .collect()
}

pub fn fixture(name: &str) -> Option<Fixture> {
    paper_fixtures().into_iter().find(|f| f.name == name)
}
