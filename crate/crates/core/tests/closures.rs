mod common;

use std::collections::BTreeSet;

use linkoid::closures::*;
use linkoid::corpus::{fixture, random_linkoid, trivial_knotoid};
use linkoid::diagram::{NodeKind, Surface};
use linkoid::moves::{apply_move, enumerate_moves, MoveKind};
use linkoid::statesum::{mock_alexander, potential, potential_matrix};
use linkoid::{Diagram, Error};

const STYLES: [Style; 2] = [Style::Shadow, Style::Mirror];
const POSITIONS: [Position; 2] = [Position::Under, Position::Over];
const ORIENTATIONS: [Orientation; 2] = [Orientation::Parallel, Orientation::Antiparallel];

fn variants() -> impl Iterator<Item = (Style, Position, Orientation)> {
    STYLES.into_iter().flat_map(|s| POSITIONS.into_iter().flat_map(move |p| ORIENTATIONS.into_iter().map(move |o| (s, p, o))))
}

/// Strand index of the knotoidal component whose tail node is `name`.
fn by_tail(d: &Diagram, name: &str) -> usize {
    let v = d.node_by_name(name).unwrap();
    let c = d.components();
    (0..c.strands.len()).find(|&i| c.strands[i].start == Some(v)).unwrap()
}

fn tail_names(d: &Diagram) -> Vec<String> {
    d.nodes().iter().filter(|n| n.kind == NodeKind::Tail).map(|n| n.name.clone()).collect()
}

#[test]
fn closures_lower_omega_g_by_one_per_component() {
    for seed in 0..40 {
        let d = random_linkoid(3, (seed % 2) as usize, 6, seed);
        let g = d.obstruction_generalized().unwrap();
        let ks: Vec<usize> = d.components().knotoidal().collect();
        for (s, p, o) in variants() {
            for k in 1..=ks.len() {
                let spec = ClosureSpec::new(ks[..k].iter().copied(), s, p, o);
                let c = close(&d, &spec).unwrap();
                assert_eq!(c.obstruction_generalized().unwrap(), g - k as i64, "seed {seed} {spec:?}");
                let comps = c.components();
                if o == Orientation::Antiparallel {
                    assert_eq!((comps.kappa, comps.ell), (ks.len() - k, d.components().ell + k));
                } else {
                    let reversals = c.nodes().iter().filter(|n| n.kind == NodeKind::Reversal2).count();
                    assert_eq!(reversals, 2 * k);
                }
            }
        }
        let set: BTreeSet<usize> = ks[..2].iter().copied().collect();
        let t = theta_closure(&d, &set).unwrap();
        assert_eq!(t.obstruction_generalized().unwrap(), g - 4);
        assert_eq!(t.nodes().iter().filter(|n| n.kind == NodeKind::Trivalent3).count(), 4);
    }
}

#[test]
fn theta_on_a_two_component_linkoid_is_not_admissible() {
    let d = random_linkoid(2, 0, 4, 3);
    let c = d.components().knotoidal().next().unwrap();
    let t = theta_closure(&d, &[c].into()).unwrap();
    assert_eq!(t.obstruction_generalized().unwrap(), -2);
    assert!(matches!(potential(&t), Err(Error::NotAdmissible(-2))));
}

#[test]
fn closure_errors() {
    let d = random_linkoid(1, 1, 4, 8);
    let lp = d.components().strands.iter().position(|s| s.start.is_none()).unwrap();
    assert!(close(&d, &ClosureSpec::under_parallel([lp])).is_err());
    assert!(close(&d, &ClosureSpec::under_parallel([99])).is_err());
    assert!(close(&d, &ClosureSpec::under_parallel([])).is_err());
}

#[test]
fn handle_connection_bookkeeping() {
    for seed in 0..40 {
        let d = random_linkoid(2, (seed % 2) as usize, 5, seed);
        let g = d.obstruction_generalized().unwrap();
        let ends: Vec<usize> = (0..d.nodes().len()).filter(|v| d.node(*v).kind.is_endpoint()).collect();
        let h = handle_connection(&d, ends[0], ends[ends.len() - 1]).unwrap();
        assert_eq!(h.surface(), Surface::Torus);
        assert_eq!(h.genus(), 1);
        assert_eq!(h.obstruction_generalized().unwrap(), g + 1);
        assert!(handle_connection(&d, ends[0], ends[0]).is_err());
    }
}

#[test]
fn virtual_closure_is_an_admissible_torus_knot() {
    for seed in 0..30 {
        let k = random_linkoid(1, 0, 6, seed);
        if k.crossing_count() == 0 {
            assert!(virtual_closure(&k).is_err());
            continue;
        }
        let v = virtual_closure(&k).unwrap();
        let c = v.components();
        assert_eq!((c.kappa, c.ell), (0, 1));
        assert_eq!(v.genus(), 1);
        assert_eq!(v.obstruction().unwrap(), 0);
    }
}

#[test]
fn virtual_closure_splits_into_tail_and_head_terms() {
    for seed in 0..200 {
        let k = random_linkoid(1, 0, 2 + (seed % 6) as usize, seed);
        if k.crossing_count() > 7 || k.crossing_count() == 0 {
            continue;
        }
        let v = mock_alexander(&virtual_closure(&k).unwrap()).unwrap();
        let t = mock_alexander(&tail_starring(&k).unwrap()).unwrap();
        let h = mock_alexander(&head_starring(&k).unwrap()).unwrap();
        assert_eq!(v, &t + &h, "seed {seed}");
        assert_eq!(v, &t + &t.subst_neg_inv(), "seed {seed}");
    }
}

#[test]
fn closure_discrimination_on_the_clasp() {
    let clasp = fixture("clasp").unwrap().diagram();
    let all: Vec<usize> = clasp.components().knotoidal().collect();
    let shadow = close(&clasp, &ClosureSpec::new(all.clone(), Style::Shadow, Position::Under, Orientation::Antiparallel)).unwrap();
    let mirror = close(&clasp, &ClosureSpec::new(all, Style::Mirror, Position::Under, Orientation::Antiparallel)).unwrap();
    assert_eq!(shadow.crossing_count(), 4);
    let star = |d: &Diagram| {
        let a = star_region(d, d.face_of(0)).unwrap();
        let f = a.face_of(1);
        mock_alexander(&star_region(&a, f).unwrap()).unwrap()
    };
    assert!(!star(&shadow).is_zero());
    assert!(star(&mirror).is_zero());
}

#[test]
fn closures_are_well_defined_under_interior_moves() {
    let mut checked = 0;
    for seed in 0..12 {
        let d = random_linkoid(3, 0, 3, seed);
        if d.crossing_count() > 6 {
            continue;
        }
        let names = tail_names(&d);
        let moves: Vec<_> = enumerate_moves(&d)
            .into_iter()
            .filter(|m| m.kind() != MoveKind::R2Add)
            .chain(enumerate_moves(&d).into_iter().filter(|m| m.kind() == MoveKind::R2Add).step_by(17))
            .collect();
        for (s, p, o) in variants() {
            let spec = ClosureSpec::new([by_tail(&d, &names[0])], s, p, o);
            let base = mock_alexander(&close(&d, &spec).unwrap()).unwrap();
            for &m in moves.iter().step_by(3) {
                let Ok(moved) = apply_move(&d, m) else { continue };
                if !moved.is_connected() {
                    continue;
                }
                let spec = ClosureSpec::new([by_tail(&moved, &names[0])], s, p, o);
                let after = mock_alexander(&close(&moved, &spec).unwrap()).unwrap();
                assert_eq!(after, base, "seed {seed} {m:?} {s:?} {p:?} {o:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn starring() {
    let k = fixture("K").unwrap().diagram();
    let t = tail_starring(&k).unwrap();
    assert_eq!(t.obstruction_starred().unwrap(), 0);
    assert!(tail_starring(&linkoid::corpus::kinked_loop()).is_err());
    let rows = potential_matrix(&t).unwrap().rows.len();
    let c = t.crossings().next().unwrap();
    let s = star_crossing(&t, c).unwrap();
    assert_eq!(potential_matrix(&s).unwrap().rows.len(), rows - 1);
    assert!(star_crossing(&t, t.node_by_name("t").unwrap()).is_err());
    assert!(star_region(&t, 99).is_err());
    assert_eq!(mock_alexander(&tail_starring(&trivial_knotoid()).unwrap()).unwrap(), linkoid::LaurentPoly1::one());
}
