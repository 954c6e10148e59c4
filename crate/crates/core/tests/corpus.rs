mod common;

use linkoid::codec::serialize_lkd;
use linkoid::corpus::*;

#[test]
fn random_linkoids_are_deterministic() {
    for seed in 0..20 {
        let a = random_linkoid(2, 1, 12, seed);
        let b = random_linkoid(2, 1, 12, seed);
        assert_eq!(serialize_lkd(&a), serialize_lkd(&b));
    }
    assert_ne!(serialize_lkd(&random_linkoid(1, 1, 12, 1)), serialize_lkd(&random_linkoid(1, 1, 12, 2)));
}

#[test]
fn random_linkoids_have_the_requested_components() {
    for seed in 0..300 {
        let kappa = (seed % 4) as usize;
        let ell = (seed / 4 % 3) as usize + usize::from(kappa == 0);
        let d = random_linkoid(kappa, ell, (seed % 15) as usize, seed);
        let c = d.components();
        assert_eq!((c.kappa, c.ell), (kappa, ell), "seed {seed}");
        assert!(d.is_connected());
        assert_eq!(d.obstruction().unwrap(), kappa as i64 - 2);
    }
}

#[test]
fn mutations_reach_beyond_hooking() {
    let sizes: Vec<usize> = (0..50).map(|s| random_linkoid(1, 0, 10, s).crossing_count()).collect();
    assert!(sizes.iter().any(|n| *n >= 4));
    assert!(sizes.iter().any(|n| n % 2 == 1));
}

#[test]
fn generators() {
    let g0 = gen_gn(0);
    assert_eq!(g0.crossing_count(), 0);
    assert_eq!(g0.components().kappa, 1);
    for n in 1..=6 {
        let g = gen_gn(n);
        let c = g.components();
        assert_eq!(g.crossing_count(), 2 * n - 1, "G{n}");
        assert_eq!((c.kappa, c.ell), (1, 1), "G{n}");
    }
}

#[test]
fn fixtures_are_listed_with_provenance() {
    let fs = paper_fixtures();
    assert!(fs.len() >= 10);
    for f in &fs {
        f.diagram();
        assert!(!f.expect.is_empty(), "{}", f.name);
        for e in &f.expect {
            assert!(["published", "elementary", "computed"].contains(&e.source.as_str()), "{} {}", f.name, e.source);
        }
    }
    assert_eq!(fixture("K1").unwrap().expected("potential"), Some("-W^3 + W^2*B - W*B^2 + B^3 + B^4"));
    assert!(fixture("nope").is_none());
}
