#![allow(dead_code)]

use linkoid::closures::{star_region, tail_starring};
use linkoid::corpus::random_linkoid;
use linkoid::diagram::{Node, NodeKind, Surface, INFINITY};
use linkoid::statesum::{quadrant_label, PotentialMatrix};
use linkoid::{Diagram, LaurentPoly2};

/// Sums over all 4^n quadrant choices, keeping the bijective ones.
pub fn brute_potential(d: &Diagram) -> LaurentPoly2 {
    let rows: Vec<usize> = d.unstarred_crossings().collect();
    let n = rows.len();
    let mut total = LaurentPoly2::zero();
    for code in 0..4usize.pow(n as u32) {
        let mut used = Vec::new();
        let mut w = LaurentPoly2::one();
        let mut ok = true;
        for (i, &c) in rows.iter().enumerate() {
            let q = (code >> (2 * i)) & 3;
            let f = d.quadrant_face(c, q);
            if d.face_is_starred(f) || used.contains(&f) {
                ok = false;
                break;
            }
            used.push(f);
            w = &w * &quadrant_label(d, c, q).poly();
        }
        if ok {
            total = total + w;
        }
    }
    total
}

/// Permanent as a sum over all permutations.
pub fn brute_permanent(m: &PotentialMatrix) -> LaurentPoly2 {
    let n = m.rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = LaurentPoly2::zero();
    loop {
        let mut p = LaurentPoly2::one();
        for (i, &j) in perm.iter().enumerate() {
            p = &p * &m.entries[i][j];
        }
        total = total + p;
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    total
}

pub fn with_infinity(d: &Diagram, face: usize) -> Diagram {
    let mut nodes = d.nodes().to_vec();
    let anchor = d.faces()[face].boundary[0];
    nodes.push(Node { name: INFINITY.into(), kind: NodeKind::Star { anchor }, slots: vec![] });
    d.with_nodes(Surface::Plane, nodes).unwrap()
}

/// Admissible diagrams of several shapes: starred knotoids, spherical
/// (2, l)-linkoids, planar knotoids and starred links.
pub fn admissible_corpus(count: usize, max_crossings: usize, seed: u64) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        s += 1;
        let d = match s % 4 {
            0 => tail_starring(&random_linkoid(1, (s / 4 % 2) as usize, 6, s)).unwrap(),
            1 => random_linkoid(2, (s / 4 % 2) as usize, 6, s),
            2 => {
                let k = random_linkoid(1, 0, 6, s);
                let f = (s as usize / 4) % k.faces().len();
                with_infinity(&k, f)
            }
            _ => {
                let l = random_linkoid(0, 1 + (s / 4 % 2) as usize, 6, s);
                let a = star_region(&l, l.face_of(0)).unwrap();
                let f = a.face_of(1);
                star_region(&a, f).unwrap()
            }
        };
        if d.crossing_count() <= max_crossings {
            out.push(d);
        }
    }
    out
}

/// Checks Ω = κ − 2 on the sphere, Ω_g = κ − 1 in the plane and the drop of
/// Ω_g by one per added edge on one random linkoid.
pub fn obstruction_laws(seed: u64) -> Result<(), String> {
    use linkoid::closures::{close, theta_closure, ClosureSpec, Orientation, Position, Style};
    let kappa = (seed % 4) as usize;
    let ell = (seed / 4 % 3) as usize + usize::from(kappa == 0);
    let d = random_linkoid(kappa, ell, (seed / 12 % 10) as usize, seed);
    let omega = d.obstruction().map_err(|e| e.to_string())?;
    if omega != kappa as i64 - 2 {
        return Err(format!("seed {seed}: omega {omega} for kappa {kappa}"));
    }
    let g = d.obstruction_generalized().map_err(|e| e.to_string())?;
    let planar = with_infinity(&d, (seed as usize / 7) % d.faces().len());
    let gp = planar.obstruction_generalized().map_err(|e| e.to_string())?;
    if gp != kappa as i64 - 1 {
        return Err(format!("seed {seed}: planar omega_g {gp} for kappa {kappa}"));
    }
    let ks: Vec<usize> = d.components().knotoidal().collect();
    if let Some(&c) = ks.get(seed as usize / 3 % ks.len().max(1)).filter(|_| d.crossing_count() > 0) {
        let style = if seed & 1 == 0 { Style::Shadow } else { Style::Mirror };
        let position = if seed & 2 == 0 { Position::Under } else { Position::Over };
        let orientation = if seed & 4 == 0 { Orientation::Parallel } else { Orientation::Antiparallel };
        let closed = close(&d, &ClosureSpec::new([c], style, position, orientation)).map_err(|e| e.to_string())?;
        let gc = closed.obstruction_generalized().map_err(|e| e.to_string())?;
        if gc != g - 1 {
            return Err(format!("seed {seed}: closure took omega_g from {g} to {gc}"));
        }
        let theta = theta_closure(&d, &[c].into()).map_err(|e| e.to_string())?;
        let gt = theta.obstruction_generalized().map_err(|e| e.to_string())?;
        if gt != g - 2 {
            return Err(format!("seed {seed}: theta-closure took omega_g from {g} to {gt}"));
        }
    }
    Ok(())
}
