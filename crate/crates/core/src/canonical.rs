//! Choice-free polynomials of linkoids, the tail/head symmetry defect and the
//! (W, B)-level conjecture scanner.

use std::collections::BTreeSet;

use crate::closures::{self, ClosureSpec, Orientation, Position, Style};
use crate::codec;
use crate::diagram::{mate, Diagram, NodeId, NodeKind, StrandKind, Surface, INFINITY};
use crate::error::{Error, Result};
use crate::polynomial::{LaurentPoly1, Rational};
use crate::statesum::{mock_alexander, potential};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Under,
    Over,
    Theta,
}

fn tail_of(d: &Diagram, component: usize) -> NodeId {
    let st = &d.components().strands[component];
    [st.start.unwrap(), st.end.unwrap()].into_iter().find(|v| d.node(*v).kind == NodeKind::Tail).unwrap()
}

fn star_endpoint(d: &Diagram, name: &str) -> Result<Diagram> {
    let v = d.node_by_name(name).ok_or_else(|| Error::NotFound(format!("node {name} not found")))?;
    let f = d.face_of(d.node(v).slots[0]);
    closures::star_region(d, f)
}

fn average(parts: Vec<LaurentPoly1>) -> LaurentPoly1 {
    let n = parts.len() as i128;
    let sum: LaurentPoly1 = parts.into_iter().sum();
    sum.scale(Rational::new(1, n))
}

fn subsets(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if cur.len() == k {
            out.push(cur.iter().copied().collect());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub fn nabla_canonical(d: &Diagram, v: Variant) -> Result<LaurentPoly1> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    if d.surface() == Surface::Torus {
        return Err(Error::Unsupported("canonical polynomials are defined on the sphere and the plane".into()));
    }
    if d.stars().any(|s| d.node(s).name != INFINITY) {
        return Err(Error::Unsupported("input must carry no stars".into()));
    }
    if d.nodes().iter().any(|n| matches!(n.kind, NodeKind::Crossing { starred: true } | NodeKind::Reversal2 | NodeKind::Trivalent3)) {
        return Err(Error::Unsupported("input must be an unstarred linkoid".into()));
    }
    let c = d.components();
    let planar = d.is_planar();
    let ks: Vec<usize> = c.knotoidal().collect();
    let kappa = ks.len();
    if v == Variant::Theta {
        return theta(d, &ks, planar);
    }
    let position = if v == Variant::Under { Position::Under } else { Position::Over };
    match (planar, kappa) {
        (false, 0) => {
            let a = closures::star_region(d, d.face_of(0))?;
            let f = a.face_of(mate(0));
            mock_alexander(&closures::star_region(&a, f)?)
        }
        (true, 0) => {
            let inf = d.node_by_name(INFINITY).unwrap();
            let NodeKind::Star { anchor } = d.node(inf).kind else { unreachable!() };
            let f = d.face_of(mate(anchor));
            if f == d.face_of(anchor) {
                return Err(Error::Unsupported("no region adjacent to the unbounded one".into()));
            }
            mock_alexander(&closures::star_region(d, f)?)
        }
        (false, 1) => mock_alexander(&closures::tail_starring_of(d, ks[0])?),
        (true, 1) | (false, 2) => mock_alexander(d),
        _ => {
            let mut parts = Vec::with_capacity(kappa);
            for &ci in &ks {
                let others = ks.iter().copied().filter(|x| *x != ci);
                let spec = ClosureSpec::new(others, Style::Shadow, position, Orientation::Parallel);
                let closed = closures::close(d, &spec)?;
                let target = if planar {
                    closed
                } else {
                    star_endpoint(&closed, &d.node(tail_of(d, ci)).name)?
                };
                parts.push(mock_alexander(&target)?);
            }
            Ok(average(parts))
        }
    }
}

fn theta(d: &Diagram, ks: &[usize], planar: bool) -> Result<LaurentPoly1> {
    let kappa = ks.len();
    let size = match (planar, kappa % 2) {
        (false, 0) if kappa >= 2 => (kappa - 2) / 2,
        (true, 1) => (kappa - 1) / 2,
        _ => {
            return Err(Error::Unsupported(format!(
                "theta-closure needs an even obstruction (kappa = {kappa}); close one component first"
            )))
        }
    };
    let mut parts = Vec::new();
    for s in subsets(kappa, size) {
        let set: BTreeSet<usize> = s.iter().map(|i| ks[*i]).collect();
        let g = if set.is_empty() { d.clone() } else { closures::theta_closure(d, &set)? };
        parts.push(mock_alexander(&g)?);
    }
    Ok(average(parts))
}

/// `∇(tail-starred)(W) − ∇(head-starred)(−W⁻¹)` of a spherical uni-linkoid.
pub fn symmetry_defect(k: &Diagram) -> Result<LaurentPoly1> {
    let c = k.components();
    if c.kappa != 1 {
        return Err(Error::Unsupported(format!("symmetry defect needs one knotoidal component, found {}", c.kappa)));
    }
    if k.surface() != Surface::Sphere {
        return Err(Error::Unsupported("symmetry defect needs a spherical diagram".into()));
    }
    let t = mock_alexander(&closures::tail_starring(k)?)?;
    let h = mock_alexander(&closures::head_starring(k)?)?;
    Ok(t - h.subst_neg_inv())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanLine {
    pub digest: String,
    pub kappa: usize,
    pub ell: usize,
    pub crossings: usize,
    pub defect: crate::polynomial::LaurentPoly2,
    pub document: String,
}

#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    pub lines: Vec<ScanLine>,
}

impl ScanReport {
    pub fn scanned(&self) -> usize {
        self.lines.len()
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &ScanLine> {
        self.lines.iter().filter(|l| !l.defect.is_zero())
    }

    /// One line per diagram: digest, κ, ℓ, crossings, verdict and the defect if nonzero.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&format!("{} {} {} {} ", l.digest, l.kappa, l.ell, l.crossings));
            if l.defect.is_zero() {
                out.push_str("ok\n");
            } else {
                out.push_str(&format!("counterexample {}\n", l.defect));
            }
        }
        let bad = self.counterexamples().count();
        out.push_str(&format!("scanned {} counterexamples {}\n", self.scanned(), bad));
        out
    }
}

/// Compares the tail-starred potential with the head-starred one under
/// `(W, B) ↦ (−B, −W)` for each spherical knotoid.
pub fn conjecture_scan<'a, I: IntoIterator<Item = &'a Diagram>>(corpus: I) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    for k in corpus {
        let c = k.components();
        if c.kappa != 1 || c.ell != 0 || k.surface() != Surface::Sphere || c.strands.iter().any(|s| s.kind == StrandKind::Graph)
        {
            return Err(Error::Unsupported("conjecture scan needs spherical knotoids".into()));
        }
        let t = potential(&closures::tail_starring(k)?)?;
        let h = potential(&closures::head_starring(k)?)?;
        report.lines.push(ScanLine {
            digest: codec::digest(k),
            kappa: c.kappa,
            ell: c.ell,
            crossings: k.crossing_count(),
            defect: t - h.subst_swap_neg(),
            document: codec::serialize_lkd(k),
        });
    }
    Ok(report)
}
