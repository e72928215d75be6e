//! Descending-diagram machinery for HOMFLY-PT: traversal, the skein tree, its
//! states, the state sum, and an independent recursive evaluator.
//!
//! Skein relation: `a P(L+) - a^-1 P(L-) = z P(L0)`, `P(unknot) = 1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::diagram::{resolve, CanonicalKey, CrossingId, LinkDiagram, Pairing, ResolveMode, Sign};
use crate::error::{Error, Result};
use crate::kauffman::{apply_state, check_limit, KauffmanState, Smoothing, StateCircles};
use crate::poly::{LaurentPoly, Var};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalReport {
    pub reached: BTreeSet<CrossingId>,
    pub nd: BTreeSet<CrossingId>,
    pub first_nd: Option<CrossingId>,
}

/// Walks the components in order from their base points, stopping at the first
/// unvisited non-nugatory crossing met as an understrand.
pub fn traverse(d: &LinkDiagram) -> TraversalReport {
    let n = d.crossing_count();
    let mut seen = alloc::vec![false; n];
    let mut first_nd = None;
    'walk: for comp in d.components() {
        for &e in &comp.edges {
            let h = d.edges()[e].head;
            if seen[h.crossing] {
                continue;
            }
            if h.pos == 0 && !d.is_nugatory(h.crossing) {
                first_nd = Some(d.crossings()[h.crossing].id);
                break 'walk;
            }
            seen[h.crossing] = true;
        }
    }
    let ids = |want: bool| -> BTreeSet<CrossingId> {
        d.crossings().iter().zip(&seen).filter(|(_, &s)| s == want).map(|(c, _)| c.id).collect()
    };
    TraversalReport { reached: ids(true), nd: ids(false), first_nd }
}

pub fn is_descending(d: &LinkDiagram) -> bool {
    traverse(d).first_nd.is_none()
}

/// The oriented smoothing and the switch at `chi`, which must be the first
/// non-descending crossing. Both children have strictly fewer non-descending crossings.
pub fn skein_children(d: &LinkDiagram, chi: CrossingId) -> Result<(LinkDiagram, LinkDiagram)> {
    let rep = traverse(d);
    if rep.first_nd != Some(chi) {
        return Err(Error::Precondition(format!("crossing {chi} is not the first non-descending crossing")));
    }
    let smoothed = resolve(d, chi, ResolveMode::Oriented)?;
    let switched = resolve(d, chi, ResolveMode::Switch)?;
    for child in [&smoothed, &switched] {
        let nd = traverse(child).nd;
        if !(nd.len() < rep.nd.len() && nd.is_subset(&rep.nd) && !nd.contains(&chi)) {
            return Err(Error::Invariant(format!(
                "non-descending set did not shrink at crossing {chi}: {} -> {}",
                rep.nd.len(),
                nd.len()
            )));
        }
    }
    Ok((smoothed, switched))
}

/// `(i_a, i_z, sign)` contributed by applying the skein relation at a crossing.
pub fn skein_coefficient(sign: Sign, action: HomflyAction) -> (i32, i32, i32) {
    match (sign, action) {
        (Sign::Pos, HomflyAction::Switch) => (-2, 0, 1),
        (Sign::Pos, HomflyAction::Oriented) => (-1, 1, 1),
        (Sign::Neg, HomflyAction::Switch) => (2, 0, 1),
        (Sign::Neg, HomflyAction::Oriented) => (1, 1, -1),
        _ => (0, 0, 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HomflyAction {
    /// Skein-applied: replaced by its oriented smoothing.
    Oriented,
    /// Skein-applied: switched.
    Switch,
    /// Smoothed by the leaf's Kauffman state along the orientation.
    InheritedOriented,
    /// Smoothed by the leaf's Kauffman state against the orientation.
    InheritedNonOriented,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomflyState {
    /// Per crossing of the root diagram.
    pub actions: Vec<HomflyAction>,
    pub i_a: i32,
    pub i_z: i32,
    pub sign: i32,
    /// The full state on the root diagram.
    pub kauffman: KauffmanState,
    pub circles: StateCircles,
    /// Components of the descending leaf.
    pub leaf_components: usize,
}

/// A state on a descending diagram with exactly as many circles as components.
///
/// While two components cross, smooth one of their crossings along the orientation
/// (merging them) and then another former crossing of the pair (splitting again).
/// Once every crossing is a self-crossing, smooth against the orientation, which keeps
/// the component count; surgery re-orients the result.
pub fn renormalized_state(d: &LinkDiagram) -> Result<KauffmanState> {
    if !is_descending(d) {
        return Err(Error::Precondition("diagram is not descending".into()));
    }
    let m = d.component_count();
    let mut work = d.clone();
    let mut chosen: BTreeMap<CrossingId, Pairing> = BTreeMap::new();
    let mut record = |w: &LinkDiagram, idx: usize, p: Pairing| -> Result<()> {
        let c = &w.crossings()[idx];
        let home = &d.crossings()[d.index_of(c.id)?];
        chosen.insert(c.id, p.rotated((c.rot + 4 - home.rot) % 4));
        Ok(())
    };
    while work.crossing_count() > 0 {
        let mixed = (0..work.crossing_count()).find(|&c| {
            let (u, o) = work.strands_at(c);
            u != o
        });
        match mixed {
            Some(c1) => {
                let pair = work.strands_at(c1);
                let id1 = work.crossings()[c1].id;
                let c2 = (0..work.crossing_count())
                    .find(|&c| {
                        let (u, o) = work.strands_at(c);
                        c != c1 && ((u, o) == pair || (o, u) == pair)
                    })
                    .ok_or_else(|| Error::Invariant("two components cross an odd number of times".into()))?;
                let id2 = work.crossings()[c2].id;
                record(&work, c1, Pairing::oriented(work.crossings()[c1].sign))?;
                let merged = resolve(&work, id1, ResolveMode::Oriented)?;
                let j = merged.index_of(id2)?;
                record(&merged, j, Pairing::oriented(merged.crossings()[j].sign))?;
                work = resolve(&merged, id2, ResolveMode::Oriented)?;
            }
            None => {
                let c = &work.crossings()[0];
                let p = Pairing::oriented(c.sign).flip();
                let id = c.id;
                record(&work, 0, p)?;
                let mode = if p == Pairing::A { ResolveMode::Plus } else { ResolveMode::Minus };
                work = resolve(&work, id, mode)?;
            }
        }
        if work.component_count() != m {
            return Err(Error::Invariant(format!("component count left {m}: {}", work.component_count())));
        }
    }
    Ok(KauffmanState(d.crossings().iter().map(|c| Smoothing::from_pairing(chosen[&c.id])).collect()))
}

struct Node {
    diagram: LinkDiagram,
    actions: BTreeMap<CrossingId, HomflyAction>,
    i_a: i32,
    i_z: i32,
    sign: i32,
}

/// Depth-first expansion of the skein tree; each leaf is completed to a full state
/// on `d` by [`renormalized_state`].
pub fn expand_states(d: &LinkDiagram, limits: &Limits) -> Result<Vec<HomflyState>> {
    check_limit(d, limits)?;
    let mut out = Vec::new();
    let mut stack = alloc::vec![Node { diagram: d.clone(), actions: BTreeMap::new(), i_a: 0, i_z: 0, sign: 1 }];
    while let Some(node) = stack.pop() {
        let Some(chi) = traverse(&node.diagram).first_nd else {
            out.push(complete_leaf(d, &node)?);
            continue;
        };
        let s = node.diagram.crossings()[node.diagram.index_of(chi)?].sign;
        let (smoothed, switched) = skein_children(&node.diagram, chi)?;
        for (diagram, action) in [(switched, HomflyAction::Switch), (smoothed, HomflyAction::Oriented)] {
            let (da, dz, ds) = skein_coefficient(s, action);
            let mut actions = node.actions.clone();
            actions.insert(chi, action);
            stack.push(Node { diagram, actions, i_a: node.i_a + da, i_z: node.i_z + dz, sign: node.sign * ds });
        }
    }
    Ok(out)
}

fn complete_leaf(root: &LinkDiagram, node: &Node) -> Result<HomflyState> {
    let leaf = &node.diagram;
    let leaf_state = renormalized_state(leaf)?;
    let mut actions = Vec::with_capacity(root.crossing_count());
    let mut smoothings = Vec::with_capacity(root.crossing_count());
    for c in root.crossings() {
        let oriented = Pairing::oriented(c.sign);
        let applied = node.actions.get(&c.id).copied();
        let pairing = if applied == Some(HomflyAction::Oriented) {
            oriented
        } else {
            let j = leaf.index_of(c.id)?;
            let lc = &leaf.crossings()[j];
            leaf_state.0[j].pairing().rotated((lc.rot + 4 - c.rot) % 4)
        };
        actions.push(match applied {
            Some(a) => a,
            None if pairing == oriented => HomflyAction::InheritedOriented,
            None => HomflyAction::InheritedNonOriented,
        });
        smoothings.push(Smoothing::from_pairing(pairing));
    }
    let kauffman = KauffmanState(smoothings);
    let circles = apply_state(root, &kauffman)?;
    if circles.count() != leaf.component_count() {
        return Err(Error::Invariant(format!(
            "leaf with {} components gave {} circles",
            leaf.component_count(),
            circles.count()
        )));
    }
    Ok(HomflyState {
        actions,
        i_a: node.i_a,
        i_z: node.i_z,
        sign: node.sign,
        kauffman,
        circles,
        leaf_components: leaf.component_count(),
    })
}

/// `(a - a^-1)/z`, the value of a split loop.
pub fn unlink_ratio() -> LaurentPoly {
    LaurentPoly::parse("a*z^-1 - a^-1*z^-1").expect("constant polynomial")
}

/// `((a - a^-1)/z)^(m-1)`.
pub fn unlink_value(m: usize) -> LaurentPoly {
    unlink_ratio().pow(m.saturating_sub(1) as i64).expect("non-negative power")
}

pub(crate) fn skein_term(i_a: i32, i_z: i32, sign: i32) -> LaurentPoly {
    let m = crate::poly::Monomial::from_pairs(&[(Var::A, i_a), (Var::Z, i_z)]);
    LaurentPoly::term(sign.into(), m)
}

/// `Σ sign · a^i_a · z^i_z · ((a - a^-1)/z)^(|σ_H| - 1)` over the skein-tree states.
pub fn homfly_state_sum(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for st in expand_states(d, limits)? {
        out += &skein_term(st.i_a, st.i_z, st.sign) * &unlink_value(st.circles.count());
    }
    Ok(out)
}

/// Recursive skein evaluation at the first non-descending crossing, optionally
/// memoized on the canonical form.
pub fn homfly_recursive(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly> {
    check_limit(d, limits)?;
    let mut memo = Some(BTreeMap::new());
    recurse(d, &mut memo)
}

pub fn homfly_recursive_unmemoized(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly> {
    check_limit(d, limits)?;
    recurse(d, &mut None)
}

fn recurse(d: &LinkDiagram, memo: &mut Option<BTreeMap<CanonicalKey, LaurentPoly>>) -> Result<LaurentPoly> {
    let key = memo.as_ref().map(|_| d.canonical_key());
    if let (Some(m), Some(k)) = (memo.as_ref(), key.as_ref()) {
        if let Some(v) = m.get(k) {
            return Ok(v.clone());
        }
    }
    let value = match traverse(d).first_nd {
        None => unlink_value(d.component_count()),
        Some(chi) => {
            let s = d.crossings()[d.index_of(chi)?].sign;
            let (smoothed, switched) = skein_children(d, chi)?;
            let p0 = recurse(&smoothed, memo)?;
            let p1 = recurse(&switched, memo)?;
            let (sa, sz, ss) = skein_coefficient(s, HomflyAction::Switch);
            let (oa, oz, os) = skein_coefficient(s, HomflyAction::Oriented);
            &skein_term(sa, sz, ss) * &p1 + &skein_term(oa, oz, os) * &p0
        }
    };
    if let (Some(m), Some(k)) = (memo.as_mut(), key) {
        m.insert(k, value.clone());
    }
    Ok(value)
}

/// `a -> q^-2`, `z -> q - q^-1`.
pub fn specialize_to_jones(p: &LaurentPoly) -> Result<LaurentPoly> {
    let mut b = BTreeMap::new();
    b.insert(Var::A, LaurentPoly::monomial(1, Var::Q, -2));
    b.insert(Var::Z, LaurentPoly::monomial(1, Var::Q, 1) - LaurentPoly::monomial(1, Var::Q, -1));
    p.substitute(&b)
}

/// `a -> 1`, `z -> t^(1/2) - t^(-1/2)`, written in `s = t^(1/2)`.
pub fn specialize_to_alexander(p: &LaurentPoly) -> Result<LaurentPoly> {
    let conway = p.substitute_one(Var::A, &LaurentPoly::one())?;
    conway.substitute_one(Var::Z, &(LaurentPoly::monomial(1, Var::S, 1) - LaurentPoly::monomial(1, Var::S, -1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_gauss, parse_pd};

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const HOPF: &str = "X[4,1,3,2] X[2,3,1,4]";

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn traversal_examples() {
        assert!(is_descending(&parse_pd("U U").unwrap()));
        assert!(is_descending(&parse_pd("X[1,1,2,2]").unwrap()));
        let t = parse_pd(TREFOIL).unwrap();
        for e in 0..6 {
            let r = t.with_basepoints(&[0], &[Some(e)]).unwrap();
            let rep = traverse(&r);
            assert!(!rep.nd.is_empty());
            assert!(rep.nd.contains(&rep.first_nd.unwrap()));
            assert_eq!(rep.nd.len() + rep.reached.len(), 3);
        }
    }

    #[test]
    fn hand_derived_values() {
        // right-handed trefoil: 2a^-2 - a^-4 + a^-2 z^2; positive Hopf link from one skein step
        let right = parse_gauss("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(homfly_recursive(&right, &lim()).unwrap(), p("2*a^-2 - a^-4 + a^-2*z^2"));
        let hopf = parse_gauss("O1+U2+;U1+O2+").unwrap();
        assert_eq!(homfly_recursive(&hopf, &lim()).unwrap(), p("a^-1*z^-1 - a^-3*z^-1 + a^-1*z"));
        let fig8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        assert_eq!(homfly_recursive(&fig8, &lim()).unwrap(), p("a^2 - 1 + a^-2 - z^2"));
    }

    #[test]
    fn unlink_values() {
        assert_eq!(homfly_recursive(&parse_pd("U").unwrap(), &lim()).unwrap(), LaurentPoly::one());
        assert_eq!(homfly_state_sum(&parse_pd("U U").unwrap(), &lim()).unwrap(), p("a*z^-1 - a^-1*z^-1"));
    }

    #[test]
    fn state_sum_matches_recursion() {
        for text in [TREFOIL, HOPF, "X[1,1,2,2]", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"] {
            let d = parse_pd(text).unwrap();
            assert_eq!(homfly_state_sum(&d, &lim()).unwrap(), homfly_recursive(&d, &lim()).unwrap(), "{text}");
            assert_eq!(homfly_recursive_unmemoized(&d, &lim()).unwrap(), homfly_recursive(&d, &lim()).unwrap());
        }
    }

    #[test]
    fn descending_input_single_state() {
        for text in ["X[1,1,2,2]", "U U U"] {
            let states = expand_states(&parse_pd(text).unwrap(), &lim()).unwrap();
            assert_eq!(states.len(), 1);
            assert_eq!((states[0].i_a, states[0].i_z, states[0].sign), (0, 0, 1));
        }
    }

    #[test]
    fn renormalized_kink() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        let s = renormalized_state(&d).unwrap();
        assert_eq!(apply_state(&d, &s).unwrap().count(), 1);
        assert!(renormalized_state(&parse_pd(TREFOIL).unwrap()).is_err());
    }

    #[test]
    fn skein_children_precondition() {
        let d = parse_pd(TREFOIL).unwrap();
        let chi = traverse(&d).first_nd.unwrap();
        assert!(skein_children(&d, chi).is_ok());
        let other = (0..3).find(|&c| c != chi).unwrap();
        assert!(matches!(skein_children(&d, other), Err(Error::Precondition(_))));
    }

    #[test]
    fn specializations() {
        assert_eq!(specialize_to_jones(&LaurentPoly::one()).unwrap(), LaurentPoly::one());
        assert_eq!(specialize_to_alexander(&LaurentPoly::one()).unwrap(), LaurentPoly::one());
        assert!(specialize_to_alexander(&unlink_ratio()).unwrap().is_zero());
        let tre = specialize_to_alexander(&p("2*a^-2 - a^-4 + a^-2*z^2")).unwrap();
        assert_eq!(tre, p("s^2 - 1 + s^-2"));
    }
}
