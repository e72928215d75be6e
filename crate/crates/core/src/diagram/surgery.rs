use alloc::vec;
use alloc::vec::Vec;

use super::{assemble, Blueprint, Crossing, CrossingId, LinkDiagram, Sign, Slot};
use crate::error::{Error, Result};

/// How a smoothing joins the four ends of a crossing, in the crossing's current positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pairing {
    /// Joins positions 0-1 and 2-3.
    A,
    /// Joins positions 0-3 and 1-2.
    B,
}

impl Pairing {
    pub fn partner(self, p: u8) -> u8 {
        match (self, p) {
            (Pairing::A, 0) => 1,
            (Pairing::A, 1) => 0,
            (Pairing::A, 2) => 3,
            (Pairing::A, 3) => 2,
            (Pairing::B, 0) => 3,
            (Pairing::B, 3) => 0,
            (Pairing::B, 1) => 2,
            (Pairing::B, 2) => 1,
            _ => unreachable!("position out of range"),
        }
    }

    pub fn flip(self) -> Pairing {
        match self {
            Pairing::A => Pairing::B,
            Pairing::B => Pairing::A,
        }
    }

    /// The pairing that respects edge orientations at a crossing of sign `s`.
    pub fn oriented(s: Sign) -> Pairing {
        match s {
            Sign::Pos => Pairing::A,
            Sign::Neg => Pairing::B,
        }
    }

    /// The same geometric pairing read in positions rotated by `r`.
    pub fn rotated(self, r: u8) -> Pairing {
        if r.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolveMode {
    /// Pairing A in current positions.
    Plus,
    /// Pairing B in current positions.
    Minus,
    Oriented,
    Switch,
}

/// Smooths or switches the crossing with stable id `id`.
///
/// Switching keeps base points and order. A smoothing keeps each component's base
/// point where it survives; a piece split off by an oriented smoothing is numbered right
/// after its parent and based at the edge through the smoothing, and a merged component
/// takes the smaller number, later components shifting down.
pub fn resolve(d: &LinkDiagram, id: CrossingId, mode: ResolveMode) -> Result<LinkDiagram> {
    let x = d.index_of(id)?;
    match mode {
        ResolveMode::Switch => Ok(switch_at(d, x)),
        ResolveMode::Plus => smooth_at(d, x, Pairing::A),
        ResolveMode::Minus => smooth_at(d, x, Pairing::B),
        ResolveMode::Oriented => smooth_at(d, x, Pairing::oriented(d.crossings[x].sign)),
    }
}

fn bases_of(d: &LinkDiagram) -> Vec<Option<usize>> {
    d.components.iter().map(|c| c.base()).collect()
}

/// Switch in place: positions rotate so the old incoming overstrand becomes position 0.
pub(crate) fn switch_at(d: &LinkDiagram, x: usize) -> LinkDiagram {
    let mut crossings = d.crossings.clone();
    let c = &mut crossings[x];
    let shift = c.sign.over_in();
    let old = c.edges;
    c.edges = core::array::from_fn(|p| old[(p + shift as usize) % 4]);
    c.rot = (c.rot + shift) % 4;
    c.sign = c.sign.flip();
    assemble(Blueprint {
        crossings,
        labels: d.edges.iter().map(|e| e.label).collect(),
        bases: Some(bases_of(d)),
        free_loops: 0,
        outer_label: d.outer_label,
    })
    .expect("switching preserves validity")
}

struct Chain {
    ends: [Slot; 2],
    /// Old edges walked from `ends[0]`, with whether the walk follows each edge's orientation.
    parts: Vec<(usize, bool)>,
}

pub(crate) fn smooth_at(d: &LinkDiagram, x: usize, pairing: Pairing) -> Result<LinkDiagram> {
    let n = d.crossings.len();
    let ne = d.edges.len();
    let mut chain_of_slot = vec![usize::MAX; 4 * n];
    let mut used = vec![false; ne];
    let mut chains: Vec<Chain> = Vec::new();
    for c in (0..n).filter(|&c| c != x) {
        for pos in 0..4u8 {
            if chain_of_slot[4 * c + pos as usize] != usize::MAX {
                continue;
            }
            let start = Slot { crossing: c, pos };
            let mut cur = start;
            let mut parts = Vec::new();
            let end = loop {
                let e = d.edge_at(cur);
                used[e] = true;
                parts.push((e, d.edges[e].tail == cur));
                let o = d.across(cur);
                if o.crossing != x {
                    break o;
                }
                cur = Slot { crossing: x, pos: pairing.partner(o.pos) };
            };
            let k = chains.len();
            chain_of_slot[4 * c + pos as usize] = k;
            chain_of_slot[4 * end.crossing + end.pos as usize] = k;
            chains.push(Chain { ends: [start, end], parts });
        }
    }
    // cycles through x alone become zero-crossing loops
    let mut loops: Vec<Vec<usize>> = Vec::new();
    for e0 in 0..ne {
        if used[e0] {
            continue;
        }
        let mut members = Vec::new();
        let mut cur = d.edges[e0].tail;
        loop {
            let e = d.edge_at(cur);
            if used[e] {
                break;
            }
            used[e] = true;
            members.push(e);
            let o = d.across(cur);
            cur = Slot { crossing: x, pos: pairing.partner(o.pos) };
        }
        loops.push(members);
    }

    // Components of the new diagram as cycles of chains; `dir[k]` = chain k runs ends[0] -> ends[1].
    let mut comp_of_chain = vec![usize::MAX; chains.len()];
    let mut cycles: Vec<Vec<(usize, bool)>> = Vec::new();
    for k0 in 0..chains.len() {
        if comp_of_chain[k0] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cyc = Vec::new();
        let (mut k, mut fwd) = (k0, true);
        loop {
            comp_of_chain[k] = id;
            cyc.push((k, fwd));
            let at = chains[k].ends[usize::from(fwd)];
            let through = Slot { crossing: at.crossing, pos: (at.pos + 2) % 4 };
            let k2 = chain_of_slot[4 * through.crossing + through.pos as usize];
            fwd = chains[k2].ends[0] == through;
            k = k2;
            if k == k0 {
                break;
            }
        }
        cycles.push(cyc);
    }

    let old_comp = |e: usize| d.edge_component[e];
    let mut chain_of_edge = vec![usize::MAX; ne];
    for (k, ch) in chains.iter().enumerate() {
        for &(e, _) in &ch.parts {
            chain_of_edge[e] = k;
        }
    }
    let mut loop_of_edge = vec![usize::MAX; ne];
    for (l, m) in loops.iter().enumerate() {
        for &e in m {
            loop_of_edge[e] = l;
        }
    }

    // Sort key per new component: (old number, 0) where an old base point survives,
    // (parent number, 1) for a piece split off without one.
    let mut cycle_key: Vec<Option<(usize, u8)>> = vec![None; cycles.len()];
    let mut cycle_ref: Vec<Option<(usize, bool)>> = vec![None; cycles.len()];
    let mut loop_key: Vec<Option<(usize, u8)>> = vec![None; loops.len()];
    let mut keyed: Vec<((usize, u8), Option<usize>)> = Vec::new();
    for (j, comp) in d.components.iter().enumerate() {
        let Some(b) = comp.base() else {
            keyed.push(((j, 0), None));
            continue;
        };
        if chain_of_edge[b] != usize::MAX {
            let k = chain_of_edge[b];
            let cy = comp_of_chain[k];
            if cycle_key[cy].is_none() {
                cycle_key[cy] = Some((j, 0));
                let f = chains[k].parts.iter().find(|p| p.0 == b).unwrap().1;
                cycle_ref[cy] = Some((k, f));
            }
        } else {
            let l = loop_of_edge[b];
            if loop_key[l].is_none() {
                loop_key[l] = Some((j, 0));
            }
        }
    }
    for (cy, cyc) in cycles.iter().enumerate() {
        if cycle_key[cy].is_none() {
            let k = cyc[0].0;
            let (e, f) = chains[k].parts[0];
            cycle_key[cy] = Some((old_comp(e), 1));
            cycle_ref[cy] = Some((k, f));
        }
    }
    for (l, m) in loops.iter().enumerate() {
        if loop_key[l].is_none() {
            loop_key[l] = Some((old_comp(m[0]), 1));
        }
    }

    // Orientation of each chain in the new diagram.
    let mut chain_dir = vec![true; chains.len()];
    for (cy, cyc) in cycles.iter().enumerate() {
        let (rk, rf) = cycle_ref[cy].unwrap();
        let listed = cyc.iter().find(|c| c.0 == rk).unwrap().1;
        let keep = listed == rf;
        for &(k, f) in cyc {
            chain_dir[k] = if keep { f } else { !f };
        }
    }

    let new_index: Vec<usize> = (0..n).map(|c| if c < x { c } else { c.wrapping_sub(1) }).collect();
    let head_of = |k: usize| chains[k].ends[usize::from(chain_dir[k])];
    let mut crossings = Vec::with_capacity(n - 1);
    for c in (0..n).filter(|&c| c != x) {
        let old = &d.crossings[c];
        let at = |p: u8| chain_of_slot[4 * c + p as usize];
        let reversed = head_of(at(0)) != Slot { crossing: c, pos: 0 };
        let r: u8 = if reversed { 2 } else { 0 };
        let edges: [usize; 4] = core::array::from_fn(|p| at((p as u8 + r) % 4));
        let over_in_at_3 = head_of(edges[3]) == Slot { crossing: c, pos: (3 + r) % 4 };
        crossings.push(Crossing {
            id: old.id,
            edges,
            sign: if over_in_at_3 { Sign::Pos } else { Sign::Neg },
            rot: (old.rot + r) % 4,
        });
    }
    debug_assert!(new_index.iter().enumerate().all(|(c, &i)| c == x || crossings[i].id == d.crossings[c].id));

    let labels: Vec<u32> =
        chains.iter().map(|ch| ch.parts.iter().map(|&(e, _)| d.edges[e].label).min().unwrap()).collect();

    let mut comps: Vec<((usize, u8), Option<usize>)> = keyed;
    for (cy, cyc) in cycles.iter().enumerate() {
        let key = cycle_key[cy].unwrap();
        let base = if key.1 == 0 {
            chain_of_edge[d.components[key.0].edges[0]]
        } else {
            cyc.iter().map(|c| c.0).find(|&k| chains[k].parts.len() > 1).unwrap_or(cyc[0].0)
        };
        comps.push((key, Some(base)));
    }
    for key in loop_key.iter().flatten() {
        comps.push((*key, None));
    }
    comps.sort_by_key(|c| c.0);
    if comps.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Invariant("two components claim the same position".into()));
    }
    let outer_label = d.outer_label.filter(|l| labels.contains(l));
    assemble(Blueprint {
        crossings,
        labels,
        bases: Some(comps.into_iter().map(|c| c.1).collect()),
        free_loops: 0,
        outer_label,
    })
}
