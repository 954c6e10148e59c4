mod common;

use linkoid::canonical::*;
use linkoid::diagram::{Node, NodeKind};
use linkoid::corpus::{fixture, gen_gn, random_linkoid, trivial_knotoid};
use linkoid::moves::random_walk;
use linkoid::{Diagram, LaurentPoly1};

/// Renumbers edges and reorders nodes, which changes the order in which
/// components are enumerated.
fn relabel(d: &Diagram, shift: usize) -> Diagram {
    let e = d.edge_count();
    let map = |x: usize| 2 * ((x / 2 + shift) % e) + x % 2;
    let mut nodes: Vec<Node> = d
        .nodes()
        .iter()
        .map(|n| {
            let mut n = n.clone();
            n.slots.iter_mut().for_each(|x| *x = map(*x));
            if let NodeKind::Star { anchor } = &mut n.kind {
                *anchor = map(*anchor);
            }
            n
        })
        .collect();
    let k = nodes.len();
    nodes.rotate_left(shift % k);
    d.with_nodes(d.surface(), nodes).unwrap()
}

#[test]
fn trivial_knotoid_has_polynomial_one() {
    let t = trivial_knotoid();
    assert_eq!(nabla_canonical(&t, Variant::Under).unwrap(), LaurentPoly1::one());
    assert_eq!(nabla_canonical(&t, Variant::Over).unwrap(), LaurentPoly1::one());
    assert!(symmetry_defect(&t).unwrap().is_zero());
}

#[test]
fn canonical_polynomials_ignore_component_order() {
    let mut reordered = 0;
    for seed in 0..12 {
        let d = random_linkoid(3, (seed % 2) as usize, 3, seed);
        if d.crossing_count() > 7 {
            continue;
        }
        for shift in 1..4 {
            let r = relabel(&d, shift);
            let tails = |x: &Diagram| -> Vec<String> {
                let c = x.components();
                c.knotoidal().map(|i| x.node(c.strands[i].start.unwrap()).name.clone()).collect()
            };
            if tails(&r) != tails(&d) {
                reordered += 1;
            }
            for v in [Variant::Under, Variant::Over] {
                assert_eq!(nabla_canonical(&r, v).unwrap(), nabla_canonical(&d, v).unwrap(), "seed {seed}");
            }
        }
    }
    assert!(reordered > 5, "{reordered}");
}

#[test]
fn canonical_polynomials_are_invariant_under_walks() {
    let mut checked = 0;
    for seed in 0..40 {
        if checked >= 8 {
            break;
        }
        let d = random_linkoid(3, 0, 1, seed);
        if d.crossing_count() > 6 {
            continue;
        }
        let (w, _) = random_walk(&d, 6, seed);
        if w.crossing_count() > 14 {
            continue;
        }
        for v in [Variant::Under, Variant::Over] {
            assert_eq!(nabla_canonical(&w, v).unwrap(), nabla_canonical(&d, v).unwrap(), "seed {seed}");
        }
        checked += 1;
        let d4 = random_linkoid(4, 0, 0, seed);
        let (w4, _) = random_walk(&d4, 6, seed);
        if w4.crossing_count() <= 14 {
            assert_eq!(nabla_canonical(&w4, Variant::Theta).unwrap(), nabla_canonical(&d4, Variant::Theta).unwrap());
            checked += 1;
        }
    }
    assert!(checked >= 4, "{checked}");
}

#[test]
fn branches_by_kappa() {
    let k = fixture("K").unwrap().diagram();
    let k1 = fixture("K1").unwrap().diagram();
    assert_eq!(nabla_canonical(&k, Variant::Under).unwrap(), linkoid::statesum::mock_alexander(&k1).unwrap());
    let two = random_linkoid(2, 1, 5, 4);
    assert_eq!(nabla_canonical(&two, Variant::Under).unwrap(), linkoid::statesum::mock_alexander(&two).unwrap());
    assert_eq!(nabla_canonical(&two, Variant::Theta).unwrap(), linkoid::statesum::mock_alexander(&two).unwrap());
    assert!(nabla_canonical(&random_linkoid(3, 0, 3, 1), Variant::Theta).is_err());
    assert!(nabla_canonical(&k1, Variant::Under).is_err());
    let planar = common::with_infinity(&random_linkoid(1, 0, 4, 2), 0);
    assert!(nabla_canonical(&planar, Variant::Theta).unwrap() == linkoid::statesum::mock_alexander(&planar).unwrap());
}

#[test]
fn links_match_up_to_units_whichever_adjacent_regions_are_starred() {
    for seed in 0..20 {
        let l = random_linkoid(0, 1 + (seed % 2) as usize, 5, seed);
        let a = nabla_canonical(&l, Variant::Under).unwrap();
        let e = l.dart_count() - 2;
        let s = linkoid::closures::star_region(&l, l.face_of(e)).unwrap();
        let f = s.face_of(e + 1);
        let b = linkoid::statesum::mock_alexander(&linkoid::closures::star_region(&s, f).unwrap()).unwrap();
        assert!(a.equal_up_to_unit(&b), "seed {seed}: {a} vs {b}");
    }
}

#[test]
fn symmetry_defect_vanishes_on_generators() {
    for n in 0..=6 {
        assert!(symmetry_defect(&gen_gn(n)).unwrap().is_zero(), "G{n}");
    }
}

#[test]
fn symmetry_defect_vanishes_on_random_uni_linkoids() {
    let mut count = 0;
    let mut seed = 0;
    while count < 500 {
        seed += 1;
        let k = random_linkoid(1, (seed % 3) as usize, (seed % 9) as usize, seed);
        if k.crossing_count() > 8 {
            continue;
        }
        assert!(symmetry_defect(&k).unwrap().is_zero(), "seed {seed}");
        count += 1;
    }
    assert!(symmetry_defect(&random_linkoid(2, 0, 2, 1)).is_err());
}

#[test]
fn conjecture_scan_reports() {
    let k = fixture("K").unwrap().diagram();
    let corpus: Vec<Diagram> = std::iter::once(k).chain((0..30).map(|s| random_linkoid(1, 0, 6, s))).collect();
    let report = conjecture_scan(&corpus).unwrap();
    assert_eq!(report.scanned(), 31);
    assert!(report.lines[0].defect.is_zero());
    let text = report.render();
    assert_eq!(text.lines().count(), 32);
    assert!(text.ends_with(&format!("scanned 31 counterexamples {}\n", report.counterexamples().count())));
    assert!(conjecture_scan(&[random_linkoid(1, 1, 2, 0)]).is_err());
}
