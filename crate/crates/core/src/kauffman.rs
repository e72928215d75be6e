//! Kauffman states, their circles with the nesting forest, and the bracket state sum
//! for the unreduced Jones polynomial.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{LinkDiagram, Pairing};
use crate::error::{Error, Result};
use crate::par::map_reduce;
use crate::poly::{LaurentPoly, Var};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Smoothing {
    /// Pairing A: positions 0-1 and 2-3.
    Plus,
    /// Pairing B: positions 0-3 and 1-2.
    Minus,
}

impl Smoothing {
    pub fn pairing(self) -> Pairing {
        match self {
            Smoothing::Plus => Pairing::A,
            Smoothing::Minus => Pairing::B,
        }
    }

    pub fn from_pairing(p: Pairing) -> Smoothing {
        match p {
            Pairing::A => Smoothing::Plus,
            Pairing::B => Smoothing::Minus,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Smoothing::Plus => 1,
            Smoothing::Minus => -1,
        }
    }
}

/// One smoothing per crossing, indexed like [`LinkDiagram::crossings`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KauffmanState(pub Vec<Smoothing>);

impl KauffmanState {
    /// Little-endian enumeration: bit `c` set means crossing `c` is `Minus`.
    pub fn from_index(n: usize, idx: u64) -> KauffmanState {
        KauffmanState((0..n).map(|c| if idx >> c & 1 == 1 { Smoothing::Minus } else { Smoothing::Plus }).collect())
    }

    pub fn index(&self) -> u64 {
        self.0.iter().enumerate().map(|(c, s)| u64::from(*s == Smoothing::Minus) << c).sum()
    }

    pub fn uniform(n: usize, s: Smoothing) -> KauffmanState {
        KauffmanState(vec![s; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `n_+ - n_-`.
pub fn sgn(s: &KauffmanState) -> i32 {
    s.0.iter().map(|x| x.value()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    /// Part of a diagram edge.
    Black(usize),
    /// Smoothing arc at `corner` of crossing index `crossing`.
    Blue { crossing: usize, corner: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    /// Alternating blue and black, starting at the circle's smallest blue arc.
    /// Empty for a zero-crossing loop of the diagram.
    pub segments: Vec<Segment>,
    /// (inside, outside) regions; `None` for zero-crossing loops.
    pub sides: Option<(usize, usize)>,
}

impl Circle {
    pub fn is_free_loop(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn blue_arcs(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.segments.iter().filter_map(|s| match *s {
            Segment::Blue { crossing, corner } => Some((crossing, corner)),
            Segment::Black(_) => None,
        })
    }
}

/// Circles of a state. Regions are the faces of the smoothed diagram; they form a
/// tree whose edges are the circles, rooted at the unbounded region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCircles {
    pub circles: Vec<Circle>,
    /// Nearest enclosing circle.
    pub parent: Vec<Option<usize>>,
    pub root_region: usize,
    pub region_count: usize,
    /// Region of each face of the diagram.
    pub face_region: Vec<usize>,
    /// Circle through the arc at each corner, when the state puts an arc there.
    pub arc_circle: Vec<[Option<usize>; 4]>,
}

impl StateCircles {
    /// `|σ|`.
    pub fn count(&self) -> usize {
        self.circles.len()
    }

    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent.iter().enumerate().filter(move |(_, p)| **p == Some(i)).map(|(j, _)| j)
    }

    /// Circles strictly inside circle `i`.
    pub fn descendants(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = self.children(i).collect();
        while let Some(j) = stack.pop() {
            out.push(j);
            stack.extend(self.children(j));
        }
        out.sort_unstable();
        out
    }
}

/// Corners carrying the two arcs of pairing `p`.
pub(crate) fn arc_corners(p: Pairing) -> [u8; 2] {
    match p {
        Pairing::A => [0, 2],
        Pairing::B => [1, 3],
    }
}

/// Corners whose faces a smoothing with pairing `p` joins.
pub(crate) fn merged_corners(p: Pairing) -> [u8; 2] {
    match p {
        Pairing::A => [1, 3],
        Pairing::B => [0, 2],
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn check_len(d: &LinkDiagram, s: &KauffmanState) -> Result<()> {
    if s.len() != d.crossing_count() {
        return Err(Error::Precondition(alloc::format!(
            "state has {} entries for {} crossings",
            s.len(),
            d.crossing_count()
        )));
    }
    Ok(())
}

/// Traces the circles of state `s` and the nesting forest.
pub fn apply_state(d: &LinkDiagram, s: &KauffmanState) -> Result<StateCircles> {
    check_len(d, s)?;
    let n = d.crossing_count();
    let faces = d.faces();
    let mut arc_circle: Vec<[Option<usize>; 4]> = vec![[None; 4]; n];
    let mut circles: Vec<Circle> = Vec::new();
    for c0 in 0..n {
        for k0 in arc_corners(s.0[c0].pairing()) {
            if arc_circle[c0][k0 as usize].is_some() {
                continue;
            }
            let id = circles.len();
            let mut segments = Vec::new();
            let (mut c, mut k, mut exit) = (c0, k0, (k0 + 1) % 4);
            loop {
                arc_circle[c][k as usize] = Some(id);
                segments.push(Segment::Blue { crossing: c, corner: k });
                let out = crate::diagram::Slot { crossing: c, pos: exit };
                segments.push(Segment::Black(d.edge_at(out)));
                let at = d.across(out);
                let arcs = arc_corners(s.0[at.crossing].pairing());
                // the arc at `at` containing position `at.pos`; leave by its other end
                k = if arcs.contains(&at.pos) { at.pos } else { (at.pos + 3) % 4 };
                exit = if k == at.pos { (k + 1) % 4 } else { k };
                c = at.crossing;
                if (c, k) == (c0, k0) {
                    break;
                }
            }
            circles.push(Circle { segments, sides: None });
        }
    }
    let crossing_circles = circles.len();

    let nf = faces.count();
    let mut uf: Vec<usize> = (0..nf).collect();
    for c in 0..n {
        let [k1, k2] = merged_corners(s.0[c].pairing());
        let (a, b) = (find(&mut uf, faces.corner_face(c, k1)), find(&mut uf, faces.corner_face(c, k2)));
        uf[a] = b;
    }
    let pieces = faces.pieces();
    for w in pieces.windows(2) {
        let (a, b) = (find(&mut uf, w[0].outer_face), find(&mut uf, w[1].outer_face));
        uf[a] = b;
    }
    let mut region_of_root = vec![usize::MAX; nf];
    let mut face_region = vec![0; nf];
    let mut region_count = 0;
    for f in 0..nf {
        let r = find(&mut uf, f);
        if region_of_root[r] == usize::MAX {
            region_of_root[r] = region_count;
            region_count += 1;
        }
        face_region[f] = region_of_root[r];
    }
    let root_region = pieces.first().map(|p| face_region[p.outer_face]).unwrap_or(0);
    if n > 0 && region_count != crossing_circles + 1 {
        return Err(Error::Invariant(alloc::format!("{region_count} regions for {crossing_circles} circles")));
    }

    // each circle separates the region at an arc's corner from the merged region across it
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); region_count.max(1)];
    let mut ends = Vec::with_capacity(crossing_circles);
    for (i, circ) in circles.iter().enumerate() {
        let (c, k) = circ.blue_arcs().next().unwrap();
        let near = face_region[faces.corner_face(c, k)];
        let far = face_region[faces.corner_face(c, (k + 1) % 4)];
        adj[near].push((i, far));
        adj[far].push((i, near));
        ends.push((near, far));
    }
    let mut depth = vec![usize::MAX; adj.len()];
    let mut via: Vec<Option<usize>> = vec![None; adj.len()];
    let mut queue = VecDeque::from([root_region]);
    depth[root_region] = 0;
    while let Some(r) = queue.pop_front() {
        for &(i, r2) in &adj[r] {
            if depth[r2] == usize::MAX {
                depth[r2] = depth[r] + 1;
                via[r2] = Some(i);
                queue.push_back(r2);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(Error::Invariant("region graph is not connected".into()));
    }
    let mut parent = Vec::with_capacity(circles.len());
    for (i, &(a, b)) in ends.iter().enumerate() {
        let (inside, outside) = if depth[a] > depth[b] { (a, b) } else { (b, a) };
        if depth[inside] != depth[outside] + 1 || via[inside] != Some(i) {
            return Err(Error::Invariant("circles do not form a nesting tree".into()));
        }
        circles[i].sides = Some((inside, outside));
        parent.push(via[outside]);
    }
    for _ in d.components().iter().filter(|c| c.is_free_loop()) {
        circles.push(Circle { segments: Vec::new(), sides: None });
        parent.push(None);
    }
    Ok(StateCircles { circles, parent, root_region, region_count, face_region, arc_circle })
}

/// Circle count alone, by union-find over edges joined by arcs.
pub fn circle_count(d: &LinkDiagram, s: &KauffmanState) -> usize {
    circle_count_bits(d, s.index())
}

fn circle_count_bits(d: &LinkDiagram, bits: u64) -> usize {
    let ne = d.edges().len();
    let mut uf: Vec<usize> = (0..ne).collect();
    for (c, x) in d.crossings().iter().enumerate() {
        let joins: [(usize, usize); 2] = if bits >> c & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
        for (p, q) in joins {
            let (a, b) = (find(&mut uf, x.edges[p]), find(&mut uf, x.edges[q]));
            uf[a] = b;
        }
    }
    let roots = (0..ne).filter(|&e| find(&mut uf, e) == e).count();
    roots + d.components().iter().filter(|c| c.is_free_loop()).count()
}

/// `i(D_σ(α), D)`: `-2·sign` at each crossing where the state does not follow the
/// orientation. Equals `sgn(σ) - w(D)`.
pub fn grading_intersection(d: &LinkDiagram, s: &KauffmanState) -> i32 {
    d.crossings()
        .iter()
        .zip(&s.0)
        .filter(|(c, sm)| sm.pairing() != Pairing::oriented(c.sign))
        .map(|(c, _)| -2 * c.sign.value())
        .sum()
}

pub(crate) fn check_limit(d: &LinkDiagram, limits: &Limits) -> Result<()> {
    let n = d.crossing_count();
    if n > limits.max_crossings || n > 62 {
        return Err(Error::CrossingLimit { crossings: n, limit: limits.max_crossings.min(62) });
    }
    Ok(())
}

/// `(q + q^-1)^k`.
pub fn loop_value_pow(k: usize) -> LaurentPoly {
    let d = LaurentPoly::monomial(1, Var::Q, 1) + LaurentPoly::monomial(1, Var::Q, -1);
    d.pow(k as i64).expect("non-negative power")
}

/// Sign and `q`-exponent of a state's term: `(-1)^((w - sgn)/2) q^((3w - sgn)/2)`.
pub fn state_weight(w: i32, sgn: i32) -> (i64, i32) {
    let sign = if ((w - sgn) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
    (sign, (3 * w - sgn) / 2)
}

pub fn jones_unreduced(d: &LinkDiagram) -> Result<LaurentPoly> {
    jones_unreduced_with(d, &Limits::default())
}

/// `Σ_σ (-1)^((w - sgn σ)/2) q^((3w - sgn σ)/2) (q + q^-1)^|σ|`.
pub fn jones_unreduced_with(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly> {
    check_limit(d, limits)?;
    let n = d.crossing_count();
    let hist: BTreeMap<(i32, usize), u64> = map_reduce(
        1u64 << n,
        BTreeMap::new,
        |acc: &mut BTreeMap<(i32, usize), u64>, idx| {
            let sgn = n as i32 - 2 * idx.count_ones() as i32;
            *acc.entry((sgn, circle_count_bits(d, idx))).or_default() += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    let w = d.writhe();
    let mut out = LaurentPoly::zero();
    for ((sgn, k), count) in hist {
        let (sign, e) = state_weight(w, sgn);
        let coeff = num_bigint::BigInt::from(count) * sign;
        out += loop_value_pow(k).scale(&coeff, &crate::poly::Monomial::var(Var::Q, e));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn kink_states() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        let plus = apply_state(&d, &KauffmanState(vec![Smoothing::Plus])).unwrap();
        let minus = apply_state(&d, &KauffmanState(vec![Smoothing::Minus])).unwrap();
        assert_eq!((plus.count(), minus.count()), (2, 1));
        assert_eq!(plus.parent, vec![None, None]);
    }

    #[test]
    fn trefoil_seifert_state() {
        let d = parse_pd(TREFOIL).unwrap();
        // all crossings negative: the oriented smoothing is B everywhere
        let sc = apply_state(&d, &KauffmanState::uniform(3, Smoothing::Minus)).unwrap();
        assert_eq!(sc.count(), 2);
        let sc = apply_state(&d, &KauffmanState::uniform(3, Smoothing::Plus)).unwrap();
        assert_eq!(sc.count(), 3);
    }

    #[test]
    fn nested_seifert_circles() {
        // the closure of a 2-braid has nested Seifert circles
        let d = parse_pd(TREFOIL).unwrap();
        let sc = apply_state(&d, &KauffmanState::uniform(3, Smoothing::Minus)).unwrap();
        let nested = sc.parent.iter().filter(|p| p.is_some()).count();
        assert_eq!(nested, 1);
    }

    #[test]
    fn zero_crossing_unknot() {
        let d = parse_pd("U").unwrap();
        let sc = apply_state(&d, &KauffmanState(vec![])).unwrap();
        assert_eq!(sc.count(), 1);
        assert_eq!(sc.parent, vec![None]);
    }

    #[test]
    fn sgn_examples() {
        use Smoothing::*;
        assert_eq!(sgn(&KauffmanState(vec![Plus; 3])), 3);
        assert_eq!(sgn(&KauffmanState(vec![Minus; 3])), -3);
        assert_eq!(sgn(&KauffmanState(vec![Plus, Minus, Plus])), 1);
    }

    #[test]
    fn grading_examples() {
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(grading_intersection(&kink, &KauffmanState(vec![Smoothing::Minus])), -2);
        assert_eq!(grading_intersection(&kink, &KauffmanState(vec![Smoothing::Plus])), 0);
        let t = parse_pd(TREFOIL).unwrap().mirror();
        assert_eq!(grading_intersection(&t, &KauffmanState::uniform(3, Smoothing::Minus)), -6);
    }

    #[test]
    fn jones_small_cases() {
        let loop_value = p("q + q^-1");
        assert_eq!(jones_unreduced(&parse_pd("U").unwrap()).unwrap(), loop_value);
        assert_eq!(jones_unreduced(&parse_pd("X[1,1,2,2]").unwrap()).unwrap(), loop_value);
        assert_eq!(jones_unreduced(&parse_pd("X[1,2,2,1]").unwrap()).unwrap(), loop_value);
        assert_eq!(jones_unreduced(&parse_pd("U U").unwrap()).unwrap(), &loop_value * &loop_value);
    }

    #[test]
    fn circle_count_matches_trace() {
        let d = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        for idx in 0..16 {
            let s = KauffmanState::from_index(4, idx);
            assert_eq!(s.index(), idx);
            assert_eq!(apply_state(&d, &s).unwrap().count(), circle_count(&d, &s));
        }
    }

    #[test]
    fn limit_enforced() {
        let d = parse_pd(TREFOIL).unwrap();
        let err = jones_unreduced_with(&d, &Limits { max_crossings: 2 }).unwrap_err();
        assert_eq!(err, Error::CrossingLimit { crossings: 3, limit: 2 });
    }
}
