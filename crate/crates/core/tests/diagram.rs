mod common;

use linkoid::corpus::{fixture, random_linkoid, trivial_knotoid};
use linkoid::diagram::{NodeKind, Surface};
use linkoid::{codec, Error};
use proptest::prelude::*;

#[test]
fn fixture_face_counts() {
    let k1 = fixture("K1").unwrap().diagram();
    assert_eq!(k1.faces().len(), 5);
    assert_eq!(k1.obstruction().unwrap(), -1);
    assert_eq!(k1.obstruction_starred().unwrap(), 0);
    let t = trivial_knotoid();
    assert_eq!((t.faces().len(), t.obstruction().unwrap()), (1, -1));
}

#[test]
fn split_diagrams_have_no_obstruction() {
    let doc = "linkoid v1\nsurface sphere\nedge e0\nedge e1\nnode t1 tail e0.s\nnode h1 head e0.t\nnode t2 tail e1.s\nnode h2 head e1.t\n";
    let d = codec::parse_lkd(doc);
    match d {
        Ok(d) => {
            assert!(!d.is_connected());
            assert!(matches!(d.obstruction(), Err(Error::Disconnected)));
        }
        Err(e) => assert!(matches!(e, Error::Disconnected | Error::Invalid(_)), "{e}"),
    }
}

#[test]
fn generated_diagrams_are_valid_and_connected() {
    for seed in 0..200 {
        let d = random_linkoid(1 + (seed % 3) as usize, (seed % 2) as usize, 10, seed);
        assert!(d.is_connected());
        assert_eq!(d.surface(), Surface::Sphere);
        assert_eq!(d.genus(), 0);
        let back = codec::parse_lkd(&codec::serialize_lkd(&d)).unwrap();
        assert_eq!(back.canonical_key(), d.canonical_key());
        assert!(d.nodes().iter().all(|n| n.slots.len() == n.kind.degree()));
        assert!(d.crossings().all(|c| matches!(d.node(c).kind, NodeKind::Crossing { .. })));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn obstruction_laws(seed in any::<u64>()) {
        let r = common::obstruction_laws(seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }
}
