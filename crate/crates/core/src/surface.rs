//! Combinatorial model of the punctured surface built from a diagram: puncture and
//! base-point indexing, the σ-puncture of each state circle, the specialization of
//! the monodromy variables to `Q`, and the enumeration of intersection points.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::diagram::{LinkDiagram, Pairing};
use crate::error::{Error, Result};
use crate::kauffman::{KauffmanState, StateCircles};
use crate::poly::{LaurentPoly, Monomial, Var};

/// Per crossing `c`: punctures `8c + 2k` (corner side) and `8c + 2k + 1` (far side)
/// straddle the smoothing arc that can sit at corner `k`. Marked points are `4c..4c+4`,
/// base points `2c` (left) and `2c + 1` (right). The special puncture is `8n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub crossings: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseSide {
    Left,
    Right,
}

impl SurfaceModel {
    pub fn puncture_count(&self) -> usize {
        8 * self.crossings + 1
    }

    pub fn base_point_count(&self) -> usize {
        2 * self.crossings
    }

    pub fn marked_point_count(&self) -> usize {
        4 * self.crossings
    }

    pub fn special_puncture(&self) -> usize {
        8 * self.crossings
    }

    /// `(corner side, far side)` punctures of the arc at corner `k` of crossing `c`.
    pub fn arc_punctures(&self, c: usize, k: u8) -> (usize, usize) {
        let p = 8 * c + 2 * k as usize;
        (p, p + 1)
    }

    /// Base point owning the loop around puncture `j`: left for corners 0 and 2.
    pub fn loop_base_point(&self, j: usize) -> Option<usize> {
        (j < 8 * self.crossings).then(|| {
            let (c, k) = (j / 8, (j % 8) / 2);
            2 * c + k % 2
        })
    }

    /// The formal monodromy variable of a p-puncture. The special puncture has none.
    pub fn variable(&self, j: usize) -> Option<Var> {
        (j < 8 * self.crossings).then(|| Var::X(j as u32 + 1))
    }

    pub fn base_point(c: usize, side: BaseSide) -> usize {
        2 * c + usize::from(side == BaseSide::Right)
    }

    /// Corner of the smoothing arc carrying base point `b` in a state: the left base
    /// point rides the arc through position 0, the right one the arc through position 2.
    pub fn base_point_corner(pairing: Pairing, b: usize) -> u8 {
        match (pairing, b % 2) {
            (Pairing::A, 0) => 0,
            (Pairing::A, _) => 2,
            (Pairing::B, 0) => 3,
            (Pairing::B, _) => 1,
        }
    }

    /// Last base point, the default cut.
    pub fn default_cut(&self) -> Option<usize> {
        self.base_point_count().checked_sub(1)
    }
}

pub fn build_surface_model(d: &LinkDiagram) -> SurfaceModel {
    SurfaceModel { crossings: d.crossing_count() }
}

/// Circle of a state passing through base point `b`.
pub fn circle_of_base_point(state: &KauffmanState, sc: &StateCircles, b: usize) -> Result<usize> {
    let c = b / 2;
    let s = state.0.get(c).ok_or_else(|| Error::Precondition(format!("no base point {b}")))?;
    let k = SurfaceModel::base_point_corner(s.pairing(), b);
    sc.arc_circle[c][k as usize].ok_or_else(|| Error::Invariant(format!("base point {b} is off every circle")))
}

/// σ-puncture data for one circle through at least one crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCircle {
    pub circle: usize,
    /// `P^i`.
    pub puncture: usize,
    /// `N^i`: σ-punctures of every circle nested inside.
    pub enclosed: Vec<usize>,
    /// Base points on the circle, one per smoothing arc.
    pub base_points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPunctureAssignment {
    /// Indexed like the circles; `None` for zero-crossing loops.
    pub circles: Vec<Option<SigmaCircle>>,
}

impl SigmaPunctureAssignment {
    pub fn puncture_of(&self, i: usize) -> Option<usize> {
        self.circles[i].as_ref().map(|s| s.puncture)
    }

    /// All σ-punctures in the disk of circle `i`, its own first.
    pub fn disk(&self, i: usize) -> Vec<usize> {
        self.circles[i]
            .as_ref()
            .map(|s| core::iter::once(s.puncture).chain(s.enclosed.iter().copied()).collect())
            .unwrap_or_default()
    }
}

/// Punctures on the inner side of each smoothing arc of circle `i`, in trace order.
pub fn inner_punctures(sm: &SurfaceModel, sc: &StateCircles, faces: &crate::diagram::Faces, i: usize) -> Vec<usize> {
    let Some((inside, _)) = sc.circles[i].sides else {
        return Vec::new();
    };
    sc.circles[i]
        .blue_arcs()
        .map(|(c, k)| {
            let (near, far) = sm.arc_punctures(c, k);
            if sc.face_region[faces.corner_face(c, k)] == inside {
                near
            } else {
                far
            }
        })
        .collect()
}

/// `P^i` is the inner puncture of the first arc of `C_i` in trace order.
pub fn assign_sigma_punctures(
    d: &LinkDiagram,
    sc: &StateCircles,
    sm: &SurfaceModel,
) -> Result<SigmaPunctureAssignment> {
    assign_sigma_punctures_with(d, sc, sm, |_, _| 0)
}

/// As [`assign_sigma_punctures`], with `choose(circle, arc_count)` picking which arc's
/// inner puncture to use.
pub fn assign_sigma_punctures_with(
    d: &LinkDiagram,
    sc: &StateCircles,
    sm: &SurfaceModel,
    mut choose: impl FnMut(usize, usize) -> usize,
) -> Result<SigmaPunctureAssignment> {
    let mut own: Vec<Option<(usize, usize)>> = Vec::with_capacity(sc.count());
    for i in 0..sc.count() {
        if sc.circles[i].is_free_loop() {
            own.push(None);
            continue;
        }
        let inner = inner_punctures(sm, sc, d.faces(), i);
        if inner.is_empty() {
            return Err(Error::Invariant(format!("circle {i} has no inner puncture")));
        }
        let pick = choose(i, inner.len());
        let p = *inner.get(pick).ok_or_else(|| Error::Precondition(format!("arc {pick} is not on circle {i}")))?;
        own.push(Some((p, inner.len())));
    }
    let mut circles = Vec::with_capacity(own.len());
    for (i, o) in own.iter().enumerate() {
        circles.push(o.map(|(puncture, base_points)| SigmaCircle {
            circle: i,
            puncture,
            enclosed: sc.descendants(i).into_iter().filter_map(|j| own[j].map(|x| x.0)).collect(),
            base_points,
        }));
    }
    let mut all: Vec<usize> = circles.iter().flatten().map(|s| s.puncture).collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invariant("σ-punctures are not distinct".into()));
    }
    Ok(SigmaPunctureAssignment { circles })
}

/// Images of the monodromy variables; every variable off the σ-punctures maps to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub images: BTreeMap<Var, LaurentPoly>,
}

impl Specialization {
    pub fn image(&self, v: Var) -> LaurentPoly {
        self.images.get(&v).cloned().unwrap_or_else(LaurentPoly::one)
    }

    /// Image of a monomial in the x-variables.
    pub fn apply(&self, m: &Monomial) -> Result<LaurentPoly> {
        LaurentPoly::term(1.into(), m.clone()).substitute(&self.images)
    }
}

/// Innermost circles first: `x_{P^i} -> Q · Π_{j inside} image(x_{P^j})^-1`.
pub fn build_specialization(
    sm: &SurfaceModel,
    sc: &StateCircles,
    asg: &SigmaPunctureAssignment,
    q: Var,
) -> Result<Specialization> {
    let mut images: BTreeMap<Var, LaurentPoly> =
        (0..8 * sm.crossings).filter_map(|j| sm.variable(j)).map(|v| (v, LaurentPoly::one())).collect();
    let mut order: Vec<usize> = (0..sc.count()).filter(|&i| asg.circles[i].is_some()).collect();
    let depth = |mut i: usize| {
        let mut k = 0;
        while let Some(p) = sc.parent[i] {
            k += 1;
            i = p;
        }
        k
    };
    order.sort_by_key(|&i| core::cmp::Reverse(depth(i)));
    for i in order {
        let s = asg.circles[i].as_ref().unwrap();
        let mut inside = LaurentPoly::one();
        for &p in &s.enclosed {
            inside = &inside * &images[&sm.variable(p).unwrap()];
        }
        let inv = inside
            .unit_inverse()
            .ok_or_else(|| Error::Invariant(format!("specialization of circle {i} is not a monomial")))?;
        images.insert(sm.variable(s.puncture).unwrap(), &LaurentPoly::var(q) * &inv);
    }
    Ok(Specialization { images })
}

/// Product of the monodromy variables of the σ-punctures in the disk of circle `i`.
pub fn disk_monomial(sm: &SurfaceModel, asg: &SigmaPunctureAssignment, i: usize) -> Monomial {
    let pairs: Vec<(Var, i32)> = asg.disk(i).into_iter().map(|p| (sm.variable(p).unwrap(), 1)).collect();
    Monomial::from_pairs(&pairs)
}

/// Checks that each circle's disk specializes to exactly `Q`.
pub fn check_monodromy_requirement(
    sm: &SurfaceModel,
    asg: &SigmaPunctureAssignment,
    spec: &Specialization,
    q: Var,
) -> Result<()> {
    for (i, s) in asg.circles.iter().enumerate() {
        if s.is_some() && spec.apply(&disk_monomial(sm, asg, i))? != LaurentPoly::var(q) {
            return Err(Error::Invariant(format!("monodromy around circle {i} is not {}", q.name())));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    Near,
    Far,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    /// One entry per circle carrying a σ-puncture; the cut circle is always `Near`.
    pub choices: Vec<(usize, Choice)>,
    pub sign: i32,
    pub monomial: Monomial,
}

/// Sign of the cyclic shift of `m` base points: an `m`-cycle has `m - 1` transpositions.
pub fn cyclic_shift_sign(m: usize) -> i32 {
    if m % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Sign of the far choice on a circle with `m` base points: `(-1)^m` from the
/// orientation of the far arcs times the cyclic-shift sign.
pub fn far_sign(m: usize) -> i32 {
    let orient = if m.is_multiple_of(2) { 1 } else { -1 };
    orient * cyclic_shift_sign(m)
}

fn free_circles(asg: &SigmaPunctureAssignment, cut: Option<usize>) -> Vec<usize> {
    (0..asg.circles.len()).filter(|&i| asg.circles[i].is_some() && Some(i) != cut).collect()
}

/// Every intersection point, in Gray-code order.
pub fn intersection_points(
    sm: &SurfaceModel,
    asg: &SigmaPunctureAssignment,
    cut: Option<usize>,
) -> Vec<IntersectionPoint> {
    let free = free_circles(asg, cut);
    let mut out = Vec::with_capacity(1 << free.len());
    for g in 0..1u64 << free.len() {
        let gray = g ^ (g >> 1);
        let mut sign = 1;
        let mut monomial = Monomial::one();
        let mut choices = Vec::with_capacity(free.len());
        for (bit, &i) in free.iter().enumerate() {
            if gray >> bit & 1 == 1 {
                sign *= far_sign(asg.circles[i].as_ref().unwrap().base_points);
                monomial = monomial.mul(&disk_monomial(sm, asg, i));
                choices.push((i, Choice::Far));
            } else {
                choices.push((i, Choice::Near));
            }
        }
        if let Some(c) = cut {
            choices.push((c, Choice::Near));
        }
        out.push(IntersectionPoint { choices, sign, monomial });
    }
    out
}

/// `Σ sign · spec(monomial)` over all intersection points, computed by walking the
/// points in Gray-code order; asserted equal to `(1 - Q)^k`, `k` the number of
/// non-cut circles through crossings.
pub fn enumerate_and_pair(
    sm: &SurfaceModel,
    asg: &SigmaPunctureAssignment,
    spec: &Specialization,
    q: Var,
    cut: Option<usize>,
) -> Result<LaurentPoly> {
    let free = free_circles(asg, cut);
    // each far choice contributes ±Q^e once specialized
    let mut far = Vec::with_capacity(free.len());
    for &i in &free {
        let image = spec.apply(&disk_monomial(sm, asg, i))?;
        let (m, c) = image
            .as_monomial()
            .ok_or_else(|| Error::Invariant(format!("far point of circle {i} is not a monomial")))?;
        let e = m.exponent(q);
        if *m != Monomial::var(q, e) || !(c == &1.into() || c == &(-1).into()) {
            return Err(Error::Invariant(format!("far point of circle {i} leaves the Q-line")));
        }
        let unit: i32 = if c == &1.into() { 1 } else { -1 };
        far.push((far_sign(asg.circles[i].as_ref().unwrap().base_points) * unit, e));
    }
    let mut hist: BTreeMap<i32, i64> = BTreeMap::new();
    let (mut sign, mut exp) = (1i32, 0i32);
    let mut on = alloc::vec![false; far.len()];
    *hist.entry(0).or_default() += 1;
    for g in 1..1u64 << far.len() {
        let bit = g.trailing_zeros() as usize;
        let (s, e) = far[bit];
        on[bit] = !on[bit];
        sign *= s;
        exp += if on[bit] { e } else { -e };
        *hist.entry(exp).or_default() += i64::from(sign);
    }
    let mut total = LaurentPoly::zero();
    for (e, c) in hist {
        total.add_term(Monomial::var(q, e), c.into());
    }
    let closed = (LaurentPoly::one() - LaurentPoly::var(q)).pow(free.len() as i64)?;
    if total != closed {
        return Err(Error::Invariant(format!("pairing {total} differs from (1 - {})^{}", q.name(), free.len())));
    }
    Ok(total)
}

/// Everything computed for one state, for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSurface {
    pub assignment: SigmaPunctureAssignment,
    pub specialization: Specialization,
    pub cut: Option<usize>,
    pub pairing: LaurentPoly,
}

/// Assignment, specialization, monodromy check and pairing for one state. Zero-crossing
/// loops are not included in the pairing.
pub fn pair_state(
    d: &LinkDiagram,
    sm: &SurfaceModel,
    state: &KauffmanState,
    sc: &StateCircles,
    cut_base_point: Option<usize>,
) -> Result<StateSurface> {
    let assignment = assign_sigma_punctures(d, sc, sm)?;
    let specialization = build_specialization(sm, sc, &assignment, Var::BigQ)?;
    check_monodromy_requirement(sm, &assignment, &specialization, Var::BigQ)?;
    let cut = cut_base_point.map(|b| circle_of_base_point(state, sc, b)).transpose()?;
    let pairing = enumerate_and_pair(sm, &assignment, &specialization, Var::BigQ, cut)?;
    Ok(StateSurface { assignment, specialization, cut, pairing })
}
