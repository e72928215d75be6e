//! Oriented planar link diagrams.
//!
//! A crossing stores the edges at its four positions, counterclockwise from the
//! incoming understrand. The understrand runs 0 -> 2; the overstrand runs 3 -> 1 at a
//! positive crossing and 1 -> 3 at a negative one.

mod canon;
mod faces;
mod gauss;
mod pd;
mod surgery;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use canon::CanonicalKey;
pub use faces::Faces;
pub use gauss::parse_gauss;
pub use pd::{parse_pd, serialize_pd};
pub use surgery::{resolve, Pairing, ResolveMode};

/// Stable crossing identifier: the index of the crossing in the diagram it was
/// parsed from. Surgery removes crossings but never renumbers the survivors.
pub type CrossingId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// Position at which the overstrand enters.
    pub fn over_in(self) -> u8 {
        match self {
            Sign::Pos => 3,
            Sign::Neg => 1,
        }
    }

    pub fn over_out(self) -> u8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => 3,
        }
    }
}

/// One end of an edge: crossing index (into [`LinkDiagram::crossings`]) and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: CrossingId,
    /// Edge index at each position.
    pub edges: [usize; 4],
    pub sign: Sign,
    /// Position `p` here is position `(p + rot) % 4` of the crossing as first parsed.
    pub rot: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: Slot,
    pub head: Slot,
    /// Input label, or the smallest label merged into this edge by surgery.
    pub label: u32,
}

/// A component: its edges in traversal order from the base point. Empty for a
/// zero-crossing loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub edges: Vec<usize>,
}

impl Component {
    pub fn base(&self) -> Option<usize> {
        self.edges.first().copied()
    }

    pub fn is_free_loop(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    components: Vec<Component>,
    edge_component: Vec<usize>,
    outer_label: Option<u32>,
    faces: Faces,
}

/// Raw material for [`assemble`]: crossings in normalized position order plus either
/// an explicit component list (base edges, `None` for free loops) or automatic
/// numbering by smallest label with `free_loops` zero-crossing loops appended.
pub(crate) struct Blueprint {
    pub crossings: Vec<Crossing>,
    pub labels: Vec<u32>,
    pub bases: Option<Vec<Option<usize>>>,
    pub free_loops: usize,
    pub outer_label: Option<u32>,
}

pub(crate) fn assemble(bp: Blueprint) -> Result<LinkDiagram> {
    let ne = bp.labels.len();
    if ne != 2 * bp.crossings.len() {
        return Err(Error::Invariant("edge count is not twice the crossing count".into()));
    }
    let mut tail: Vec<Option<Slot>> = vec![None; ne];
    let mut head: Vec<Option<Slot>> = vec![None; ne];
    for (ci, c) in bp.crossings.iter().enumerate() {
        for pos in 0..4u8 {
            let e = c.edges[pos as usize];
            let slot = Slot { crossing: ci, pos };
            let into = pos == 0 || pos == c.sign.over_in();
            let cell = if into { &mut head[e] } else { &mut tail[e] };
            if cell.replace(slot).is_some() {
                return Err(Error::Orientation { label: bp.labels[e] });
            }
        }
    }
    let mut edges = Vec::with_capacity(ne);
    for e in 0..ne {
        match (tail[e], head[e]) {
            (Some(t), Some(h)) => edges.push(Edge { tail: t, head: h, label: bp.labels[e] }),
            _ => return Err(Error::Orientation { label: bp.labels[e] }),
        }
    }
    let succ = |e: usize| -> usize {
        let h: Slot = edges[e].head;
        bp.crossings[h.crossing].edges[((h.pos + 2) % 4) as usize]
    };
    let bases: Vec<Option<usize>> = match bp.bases {
        Some(b) => b,
        None => {
            let mut seen = vec![false; ne];
            let mut order: Vec<usize> = (0..ne).collect();
            order.sort_by_key(|&e| bp.labels[e]);
            let mut b = Vec::new();
            for e in order {
                if seen[e] {
                    continue;
                }
                let mut f = e;
                loop {
                    seen[f] = true;
                    f = succ(f);
                    if f == e {
                        break;
                    }
                }
                b.push(Some(e));
            }
            b.extend(core::iter::repeat_n(None, bp.free_loops));
            b
        }
    };
    let mut edge_component = vec![usize::MAX; ne];
    let mut components = Vec::with_capacity(bases.len());
    for (k, b) in bases.iter().enumerate() {
        let mut list = Vec::new();
        if let Some(e0) = *b {
            let mut e = e0;
            loop {
                if edge_component[e] != usize::MAX {
                    return Err(Error::Invariant("components overlap".into()));
                }
                edge_component[e] = k;
                list.push(e);
                e = succ(e);
                if e == e0 {
                    break;
                }
            }
        }
        components.push(Component { edges: list });
    }
    if edge_component.contains(&usize::MAX) {
        return Err(Error::Invariant("edge not covered by any component".into()));
    }
    let faces = Faces::trace(&bp.crossings, &edges, bp.outer_label)?;
    Ok(LinkDiagram { crossings: bp.crossings, edges, components, edge_component, outer_label: bp.outer_label, faces })
}

impl LinkDiagram {
    /// `m` zero-crossing loops side by side.
    pub fn unlink(m: usize) -> LinkDiagram {
        assemble(Blueprint { crossings: Vec::new(), labels: Vec::new(), bases: None, free_loops: m, outer_label: None })
            .expect("free loops always assemble")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of_edge(&self, e: usize) -> usize {
        self.edge_component[e]
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn outer_label(&self) -> Option<u32> {
        self.outer_label
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Index of the crossing with stable id `id`.
    pub fn index_of(&self, id: CrossingId) -> Result<usize> {
        self.crossings.iter().position(|c| c.id == id).ok_or(Error::UnknownCrossing(id))
    }

    pub fn edge_at(&self, s: Slot) -> usize {
        self.crossings[s.crossing].edges[s.pos as usize]
    }

    /// The other end of the edge at `s`.
    pub fn across(&self, s: Slot) -> Slot {
        let e = &self.edges[self.edge_at(s)];
        if e.tail == s {
            e.head
        } else {
            e.tail
        }
    }

    /// The edge following `e` along its component.
    pub fn successor(&self, e: usize) -> usize {
        let h = self.edges[e].head;
        self.crossings[h.crossing].edges[((h.pos + 2) % 4) as usize]
    }

    /// Components meeting at crossing index `c`: (understrand, overstrand).
    pub fn strands_at(&self, c: usize) -> (usize, usize) {
        let x = &self.crossings[c];
        (self.edge_component[x.edges[0]], self.edge_component[x.edges[1]])
    }

    pub fn is_nugatory(&self, c: usize) -> bool {
        self.faces.is_nugatory(c)
    }

    /// Same diagram with the unbounded face taken left of the edge labelled `label`.
    pub fn with_outer_label(&self, label: u32) -> Result<LinkDiagram> {
        if !self.edges.iter().any(|e| e.label == label) {
            return Err(Error::Precondition(alloc::format!("no edge labelled {label}")));
        }
        let mut d = self.clone();
        d.outer_label = Some(label);
        d.faces = Faces::trace(&d.crossings, &d.edges, d.outer_label)?;
        Ok(d)
    }

    /// Same diagram with components reordered and rebased. `order[k]` is the old
    /// index of the new k-th component; `bases[k]` its new base edge, which must lie on it.
    pub fn with_basepoints(&self, order: &[usize], bases: &[Option<usize>]) -> Result<LinkDiagram> {
        let m = self.components.len();
        let mut seen = vec![false; m];
        if order.len() != m || bases.len() != m {
            return Err(Error::Precondition("one entry per component required".into()));
        }
        for (&o, &b) in order.iter().zip(bases) {
            if o >= m || core::mem::replace(&mut seen[o], true) {
                return Err(Error::Precondition("order is not a permutation".into()));
            }
            match b {
                None if self.components[o].is_free_loop() => {}
                Some(e) if e < self.edges.len() && self.edge_component[e] == o => {}
                _ => return Err(Error::Precondition("base edge not on its component".into())),
            }
        }
        assemble(Blueprint {
            crossings: self.crossings.clone(),
            labels: self.edges.iter().map(|e| e.label).collect(),
            bases: Some(bases.to_vec()),
            free_loops: 0,
            outer_label: self.outer_label,
        })
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonical_key(self)
    }

    pub fn is_isomorphic(&self, other: &LinkDiagram) -> bool {
        self.crossing_count() == other.crossing_count() && self.canonical_key() == other.canonical_key()
    }

    /// The same diagram seen in a mirror: every crossing switched in place.
    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        for c in 0..d.crossings.len() {
            d = surgery::switch_at(&d, c);
        }
        d
    }
}

pub fn writhe(d: &LinkDiagram) -> i32 {
    d.writhe()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlink_has_no_crossings() {
        let d = LinkDiagram::unlink(3);
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.writhe(), 0);
        assert!(d.components().iter().all(Component::is_free_loop));
    }

    #[test]
    fn sign_positions() {
        assert_eq!((Sign::Pos.over_in(), Sign::Pos.over_out()), (3, 1));
        assert_eq!((Sign::Neg.over_in(), Sign::Neg.over_out()), (1, 3));
    }

    #[test]
    fn rebasing_moves_traversal_start() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let e = d.components()[0].edges[2];
        let r = d.with_basepoints(&[0], &[Some(e)]).unwrap();
        assert_eq!(r.components()[0].base(), Some(e));
        assert!(r.is_isomorphic(&d));
        assert!(d.with_basepoints(&[0], &[None]).is_err());
    }
}
