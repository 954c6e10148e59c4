mod common;

use linkoid::canonical::{nabla_canonical, Variant};
use linkoid::closures::virtual_closure;
use linkoid::corpus::paper_fixtures;
use linkoid::statesum::{enumerate_states, mock_alexander, potential, potential_matrix, state_count};
use linkoid::{LaurentPoly1, LaurentPoly2};

fn p1(s: &str) -> LaurentPoly1 {
    s.parse().unwrap()
}

fn p2(s: &str) -> LaurentPoly2 {
    s.parse().unwrap()
}

/// Rows of `a` and `b` match after some permutation of rows and columns.
fn same_up_to_permutation(a: &[Vec<LaurentPoly1>], b: &[Vec<LaurentPoly1>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let perms = permutations(n);
    perms.iter().any(|rp| perms.iter().any(|cp| (0..n).all(|i| (0..n).all(|j| a[rp[i]][cp[j]] == b[i][j]))))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn every_fixture_meets_its_manifest() {
    let fixtures = paper_fixtures();
    assert!(fixtures.len() >= 11);
    for f in fixtures {
        let d = f.diagram();
        for e in &f.expect {
            let ctx = format!("{} {}", f.name, e.quantity);
            match e.quantity.as_str() {
                "kappa" => assert_eq!(d.components().kappa.to_string(), e.value, "{ctx}"),
                "crossings" => assert_eq!(d.crossing_count().to_string(), e.value, "{ctx}"),
                "omega" => assert_eq!(d.obstruction().unwrap().to_string(), e.value, "{ctx}"),
                "genus" => assert_eq!(d.genus().to_string(), e.value, "{ctx}"),
                "states" => {
                    assert_eq!(enumerate_states(&d).unwrap().len().to_string(), e.value, "{ctx}");
                    assert_eq!(state_count(&d).unwrap().to_string(), e.value, "{ctx}");
                }
                "potential" => assert_eq!(potential(&d).unwrap(), p2(&e.value), "{ctx}"),
                "mock_alexander" => assert_eq!(mock_alexander(&d).unwrap(), p1(&e.value), "{ctx}"),
                "virtual_closure" => {
                    assert_eq!(mock_alexander(&virtual_closure(&d).unwrap()).unwrap(), p1(&e.value), "{ctx}")
                }
                "canonical_under" => {
                    assert_eq!(nabla_canonical(&d, Variant::Under).unwrap(), p1(&e.value), "{ctx}")
                }
                "matrix" => {
                    let want: Vec<Vec<LaurentPoly1>> =
                        e.value.split(';').map(|r| r.split(',').map(|x| p1(x.trim())).collect()).collect();
                    let got = potential_matrix(&d).unwrap().collapse();
                    assert!(same_up_to_permutation(&got, &want), "{ctx}: {got:?}");
                }
                other => panic!("unknown quantity {other}"),
            }
        }
    }
}

#[test]
fn fixtures_agree_with_brute_force() {
    for f in paper_fixtures() {
        let d = f.diagram();
        if d.obstruction_starred().ok() == Some(0) {
            assert_eq!(potential(&d).unwrap(), common::brute_potential(&d), "{}", f.name);
        }
    }
}

#[test]
fn pinned_pair_is_distinguished() {
    let k1 = linkoid::corpus::fixture("K1").unwrap().diagram();
    let k2 = linkoid::corpus::fixture("K2").unwrap().diagram();
    assert_ne!(mock_alexander(&k1).unwrap(), mock_alexander(&k2).unwrap());
    // The pair is related by (W, B) -> (-B, -W).
    assert_eq!(potential(&k1).unwrap().subst_swap_neg(), potential(&k2).unwrap());
}
