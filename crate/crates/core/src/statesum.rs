//! States, potentials, potential matrices and permanents.

use std::collections::HashMap;

use crate::diagram::{Diagram, FaceId, NodeId};
use crate::error::{Error, Result};
use crate::polynomial::{LaurentPoly1, LaurentPoly2, Rational};

/// A quadrant weight `sign · W^w · B^b` with `w + b ≤ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    One,
    NegOne,
    W,
    NegW,
    B,
    NegB,
}

impl Label {
    pub fn poly(self) -> LaurentPoly2 {
        match self {
            Label::One => LaurentPoly2::one(),
            Label::NegOne => -LaurentPoly2::one(),
            Label::W => LaurentPoly2::w(),
            Label::NegW => -LaurentPoly2::w(),
            Label::B => LaurentPoly2::b(),
            Label::NegB => -LaurentPoly2::b(),
        }
    }

    /// `(coefficient, W exponent, B exponent)`.
    fn parts(self) -> (i64, usize, usize) {
        match self {
            Label::One => (1, 0, 0),
            Label::NegOne => (-1, 0, 0),
            Label::W => (1, 1, 0),
            Label::NegW => (-1, 1, 0),
            Label::B => (1, 0, 1),
            Label::NegB => (-1, 0, 1),
        }
    }
}

/// Quadrant labels indexed by quadrant `q`, the corner between slots `q` and `q + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub positive: [Label; 4],
    pub negative: [Label; 4],
}

/// At a positive crossing the corner between the two outgoing strands
/// (quadrant 1) carries `W` and the corner between the two incoming strands
/// (quadrant 3) carries `-B`. At a negative crossing those corners are
/// quadrants 2 and 0 and carry `B` and `-W`. Side corners carry `1`.
pub const WEIGHTS: WeightTable = WeightTable {
    positive: [Label::One, Label::W, Label::One, Label::NegB],
    negative: [Label::NegW, Label::One, Label::B, Label::One],
};

impl WeightTable {
    pub fn label(&self, positive: bool, q: usize) -> Label {
        if positive {
            self.positive[q]
        } else {
            self.negative[q]
        }
    }
}

pub fn quadrant_label(d: &Diagram, c: NodeId, q: usize) -> Label {
    WEIGHTS.label(d.is_positive(c), q)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    /// `(crossing, quadrant)` for every unstarred crossing, in crossing order.
    pub choice: Vec<(NodeId, usize)>,
}

pub fn is_admissible(d: &Diagram) -> bool {
    matches!(d.obstruction_starred(), Ok(0))
}

fn require_admissible(d: &Diagram) -> Result<()> {
    let om = d.obstruction_starred()?;
    if om != 0 {
        return Err(Error::NotAdmissible(om));
    }
    Ok(())
}

/// Unstarred crossings (rows) and the eligible faces of each of their quadrants.
struct Incidence {
    rows: Vec<NodeId>,
    cols: Vec<FaceId>,
    /// Per row: `(quadrant, column index)` for quadrants in eligible faces.
    cells: Vec<Vec<(usize, usize)>>,
}

fn incidence(d: &Diagram) -> Incidence {
    let rows: Vec<NodeId> = d.unstarred_crossings().collect();
    let cols: Vec<FaceId> = (0..d.faces().len()).filter(|f| !d.face_is_starred(*f)).collect();
    let mut col_of = vec![usize::MAX; d.faces().len()];
    for (j, f) in cols.iter().enumerate() {
        col_of[*f] = j;
    }
    let cells = rows
        .iter()
        .map(|&c| {
            (0..4)
                .filter_map(|q| {
                    let j = col_of[d.quadrant_face(c, q)];
                    (j != usize::MAX).then_some((q, j))
                })
                .collect()
        })
        .collect();
    Incidence { rows, cols, cells }
}

pub fn enumerate_states(d: &Diagram) -> Result<Vec<State>> {
    require_admissible(d)?;
    let inc = incidence(d);
    let mut out = Vec::new();
    let mut used = vec![false; inc.cols.len()];
    let mut cur = Vec::with_capacity(inc.rows.len());
    fn rec(
        inc: &Incidence,
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(NodeId, usize)>,
        out: &mut Vec<State>,
    ) {
        if i == inc.rows.len() {
            out.push(State { choice: cur.clone() });
            return;
        }
        for &(q, j) in &inc.cells[i] {
            if used[j] {
                continue;
            }
            used[j] = true;
            cur.push((inc.rows[i], q));
            rec(inc, i + 1, used, cur, out);
            cur.pop();
            used[j] = false;
        }
    }
    rec(&inc, 0, &mut used, &mut cur, &mut out);
    Ok(out)
}

pub fn state_weight(d: &Diagram, s: &State) -> LaurentPoly2 {
    let (mut sign, mut a, mut b) = (1i128, 0i32, 0i32);
    for &(c, q) in &s.choice {
        let (k, x, y) = quadrant_label(d, c, q).parts();
        sign *= k as i128;
        a += x as i32;
        b += y as i32;
    }
    LaurentPoly2::monomial(Rational::from_integer(sign), a, b)
}

/// Sum of state weights over an explicit enumeration.
pub fn potential_states(d: &Diagram) -> Result<LaurentPoly2> {
    let mut acc: HashMap<(i32, i32), i128> = HashMap::new();
    for s in enumerate_states(d)? {
        let w = state_weight(d, &s);
        for (k, c) in w.terms() {
            *acc.entry(k).or_default() += c.to_integer();
        }
    }
    Ok(LaurentPoly2::from_terms(acc.into_iter().map(|(k, c)| (k, Rational::from_integer(c)))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    States,
    Ryser,
    Expand,
    Sparse,
}

/// Below this many crossings states are enumerated directly.
pub const STATES_BELOW: usize = 7;
/// Above this many crossings Ryser's subset sum is replaced by the sparse row DP.
pub const RYSER_MAX: usize = 14;

pub fn default_algorithm(n: usize) -> Algorithm {
    if n < STATES_BELOW {
        Algorithm::States
    } else if n <= RYSER_MAX {
        Algorithm::Ryser
    } else {
        Algorithm::Sparse
    }
}

pub fn potential_with(d: &Diagram, alg: Algorithm) -> Result<LaurentPoly2> {
    match alg {
        Algorithm::States => potential_states(d),
        Algorithm::Ryser => {
            require_admissible(d)?;
            permanent_ryser(&potential_matrix(d)?)
        }
        Algorithm::Expand => {
            require_admissible(d)?;
            permanent_expand(&potential_matrix(d)?)
        }
        Algorithm::Sparse => {
            require_admissible(d)?;
            permanent_sparse(&potential_matrix(d)?)
        }
    }
}

pub fn potential(d: &Diagram) -> Result<LaurentPoly2> {
    potential_with(d, default_algorithm(d.unstarred_crossings().count()))
}

pub fn mock_alexander(d: &Diagram) -> Result<LaurentPoly1> {
    Ok(potential(d)?.collapse())
}

/// Number of states, counted as the permanent of the 0/1 quadrant-count matrix.
pub fn state_count(d: &Diagram) -> Result<u128> {
    require_admissible(d)?;
    let inc = incidence(d);
    let n = inc.rows.len();
    let mut entries = vec![vec![LaurentPoly2::zero(); n]; n];
    for (i, cells) in inc.cells.iter().enumerate() {
        for &(_, j) in cells {
            entries[i][j] += LaurentPoly2::one();
        }
    }
    let p = permanent_sparse(&PotentialMatrix::from_entries(entries))?;
    Ok(p.coeff(0, 0).to_integer() as u128)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialMatrix {
    pub rows: Vec<NodeId>,
    pub cols: Vec<FaceId>,
    pub entries: Vec<Vec<LaurentPoly2>>,
}

impl PotentialMatrix {
    pub fn from_entries(entries: Vec<Vec<LaurentPoly2>>) -> Self {
        let n = entries.len();
        let m = entries.first().map_or(0, |r| r.len());
        PotentialMatrix { rows: (0..n).collect(), cols: (0..m).collect(), entries }
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows.len(), cols: self.cols.len() })
        }
    }

    /// Same matrix with every entry collapsed at `B = W^-1`.
    pub fn collapse(&self) -> Vec<Vec<LaurentPoly1>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.collapse()).collect()).collect()
    }
}

pub fn potential_matrix(d: &Diagram) -> Result<PotentialMatrix> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let inc = incidence(d);
    let mut entries = vec![vec![LaurentPoly2::zero(); inc.cols.len()]; inc.rows.len()];
    for (i, cells) in inc.cells.iter().enumerate() {
        for &(q, j) in cells {
            entries[i][j] += quadrant_label(d, inc.rows[i], q).poly();
        }
    }
    Ok(PotentialMatrix { rows: inc.rows, cols: inc.cols, entries })
}

/// First-row expansion; exponential, used as an oracle.
pub fn permanent_expand(m: &PotentialMatrix) -> Result<LaurentPoly2> {
    m.require_square()?;
    fn rec(e: &[Vec<LaurentPoly2>], i: usize, used: &mut Vec<bool>) -> LaurentPoly2 {
        if i == e.len() {
            return LaurentPoly2::one();
        }
        let mut acc = LaurentPoly2::zero();
        for j in 0..e.len() {
            if used[j] || e[i][j].is_zero() {
                continue;
            }
            used[j] = true;
            let sub = rec(e, i + 1, used);
            used[j] = false;
            acc += &e[i][j] * &sub;
        }
        acc
    }
    Ok(rec(&m.entries, 0, &mut vec![false; m.entries.len()]))
}

/// Entry `c0 + cw·W + cb·B` with integer coefficients.
#[derive(Clone, Copy, Default)]
struct Lin {
    c0: i128,
    cw: i128,
    cb: i128,
}

fn as_lin(p: &LaurentPoly2) -> Option<Lin> {
    let mut l = Lin::default();
    for ((a, b), c) in p.terms() {
        if !c.is_integer() {
            return None;
        }
        let c = c.to_integer();
        match (a, b) {
            (0, 0) => l.c0 = c,
            (1, 0) => l.cw = c,
            (0, 1) => l.cb = c,
            _ => return None,
        }
    }
    Some(l)
}

/// Ryser's inclusion-exclusion over column subsets in Gray-code order.
pub fn permanent_ryser(m: &PotentialMatrix) -> Result<LaurentPoly2> {
    m.require_square()?;
    let n = m.entries.len();
    if n == 0 {
        return Ok(LaurentPoly2::one());
    }
    assert!(n < 63, "Ryser permanent limited to fewer than 63 rows");
    let lin: Option<Vec<Vec<Lin>>> = m.entries.iter().map(|r| r.iter().map(as_lin).collect()).collect();
    match lin {
        Some(lin) => Ok(ryser_dense(&lin)),
        None => Ok(ryser_generic(&m.entries)),
    }
}

fn ryser_dense(a: &[Vec<Lin>]) -> LaurentPoly2 {
    let n = a.len();
    let side = n + 1;
    let mut total = vec![0i128; side * side];
    let mut sums = vec![Lin::default(); n];
    let mut prod = vec![0i128; side * side];
    let mut tmp = vec![0i128; side * side];
    let mut in_set = vec![false; n];
    let mut size = 0usize;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let sign = if in_set[j] { -1 } else { 1 };
        in_set[j] = !in_set[j];
        size = if in_set[j] { size + 1 } else { size - 1 };
        for (i, row) in a.iter().enumerate() {
            sums[i].c0 += sign * row[j].c0;
            sums[i].cw += sign * row[j].cw;
            sums[i].cb += sign * row[j].cb;
        }
        prod.iter_mut().for_each(|x| *x = 0);
        prod[0] = 1;
        let mut deg = 0;
        let mut zero = false;
        for s in &sums {
            if s.c0 == 0 && s.cw == 0 && s.cb == 0 {
                zero = true;
                break;
            }
            tmp.iter_mut().take(side * side).for_each(|x| *x = 0);
            for x in 0..=deg {
                for y in 0..=(deg - x) {
                    let v = prod[x * side + y];
                    if v == 0 {
                        continue;
                    }
                    tmp[x * side + y] += v * s.c0;
                    tmp[(x + 1) * side + y] += v * s.cw;
                    tmp[x * side + y + 1] += v * s.cb;
                }
            }
            deg += 1;
            std::mem::swap(&mut prod, &mut tmp);
        }
        if zero {
            continue;
        }
        let sgn = if (n - size) % 2 == 0 { 1 } else { -1 };
        for (t, p) in total.iter_mut().zip(&prod) {
            *t += sgn * p;
        }
    }
    LaurentPoly2::from_terms((0..side * side).filter(|i| total[*i] != 0).map(|i| {
        (((i / side) as i32, (i % side) as i32), Rational::from_integer(total[i]))
    }))
}

fn ryser_generic(a: &[Vec<LaurentPoly2>]) -> LaurentPoly2 {
    let n = a.len();
    let mut total = LaurentPoly2::zero();
    let mut sums = vec![LaurentPoly2::zero(); n];
    let mut in_set = vec![false; n];
    let mut size = 0usize;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let adding = !in_set[j];
        in_set[j] = adding;
        for (i, row) in a.iter().enumerate() {
            if adding {
                sums[i] += &row[j];
            } else {
                sums[i] -= &row[j];
            }
        }
        size = if adding { size + 1 } else { size - 1 };
        if sums.iter().any(|s| s.is_zero()) {
            continue;
        }
        let mut prod = LaurentPoly2::one();
        for s in &sums {
            prod = &prod * s;
        }
        if (n - size) % 2 == 0 {
            total += &prod;
        } else {
            total -= &prod;
        }
    }
    total
}

/// Row-by-row dynamic programme over the sets of columns already used, with
/// rows ordered to keep the live column frontier small. Exact and fast on
/// the sparse matrices produced by diagrams.
pub fn permanent_sparse(m: &PotentialMatrix) -> Result<LaurentPoly2> {
    m.require_square()?;
    let n = m.entries.len();
    if n == 0 {
        return Ok(LaurentPoly2::one());
    }
    let nz: Vec<Vec<usize>> =
        m.entries.iter().map(|r| (0..n).filter(|j| !r[*j].is_zero()).collect()).collect();
    // Greedy order: repeatedly take the row introducing the fewest new columns.
    let mut order = Vec::with_capacity(n);
    let mut taken = vec![false; n];
    let mut seen = vec![false; n];
    for _ in 0..n {
        let best = (0..n)
            .filter(|i| !taken[*i])
            .min_by_key(|i| (nz[*i].iter().filter(|j| !seen[**j]).count(), *i))
            .unwrap();
        taken[best] = true;
        for &j in &nz[best] {
            seen[j] = true;
        }
        order.push(best);
    }
    // A column can be dropped from the key once no later row uses it.
    if (0..n).any(|j| nz.iter().all(|r| !r.contains(&j))) {
        return Ok(LaurentPoly2::zero());
    }
    let mut last_use = vec![0usize; n];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &nz[i] {
            last_use[j] = pos;
        }
    }
    let mut layer: HashMap<Vec<u64>, LaurentPoly2> = HashMap::new();
    let words = n.div_ceil(64);
    layer.insert(vec![0; words], LaurentPoly2::one());
    for (pos, &i) in order.iter().enumerate() {
        let mut next: HashMap<Vec<u64>, LaurentPoly2> = HashMap::new();
        for (mask, v) in &layer {
            for &j in &nz[i] {
                if mask[j / 64] >> (j % 64) & 1 == 1 {
                    continue;
                }
                let mut key = mask.clone();
                key[j / 64] |= 1 << (j % 64);
                let term = v * &m.entries[i][j];
                next.entry(key).and_modify(|acc| *acc += &term).or_insert(term);
            }
        }
        // Columns no remaining row can reach must be filled by now; forget them.
        let closing: Vec<usize> = (0..n).filter(|j| last_use[*j] == pos).collect();
        let mut pruned: HashMap<Vec<u64>, LaurentPoly2> = HashMap::new();
        'entries: for (mut key, v) in next {
            if v.is_zero() {
                continue;
            }
            for &j in &closing {
                if key[j / 64] >> (j % 64) & 1 == 0 {
                    continue 'entries;
                }
                key[j / 64] &= !(1 << (j % 64));
            }
            pruned.entry(key).and_modify(|acc| *acc += &v).or_insert(v);
        }
        layer = pruned;
    }
    Ok(layer.into_values().fold(LaurentPoly2::zero(), |a, b| a + b))
}
