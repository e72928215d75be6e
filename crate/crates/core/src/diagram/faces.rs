use alloc::vec;
use alloc::vec::Vec;

use super::{Crossing, Edge, Slot};
use crate::error::{Error, Result};

/// Faces of the planar 4-valent graph, traced from the rotation system.
///
/// Dart `2e` runs along edge `e` in its orientation, `2e + 1` against it. Each dart's
/// face is the one on its left. Corner `k` of a crossing lies between positions `k`
/// and `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    dart_face: Vec<usize>,
    count: usize,
    corner: Vec<[usize; 4]>,
    piece_of_crossing: Vec<usize>,
    pieces: Vec<Piece>,
}

/// A connected piece of the diagram and its unbounded face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub crossings: Vec<usize>,
    pub outer_face: usize,
}

fn edge_at(crossings: &[Crossing], s: Slot) -> usize {
    crossings[s.crossing].edges[s.pos as usize]
}

/// Dart arriving at `s`.
pub(crate) fn arriving(crossings: &[Crossing], edges: &[Edge], s: Slot) -> usize {
    let e = edge_at(crossings, s);
    if edges[e].head == s {
        2 * e
    } else {
        2 * e + 1
    }
}

/// Dart leaving from `s`.
pub(crate) fn leaving(crossings: &[Crossing], edges: &[Edge], s: Slot) -> usize {
    let e = edge_at(crossings, s);
    if edges[e].tail == s {
        2 * e
    } else {
        2 * e + 1
    }
}

fn arrival_slot(edges: &[Edge], d: usize) -> Slot {
    let e = &edges[d / 2];
    if d.is_multiple_of(2) {
        e.head
    } else {
        e.tail
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Faces {
    pub(crate) fn trace(crossings: &[Crossing], edges: &[Edge], outer_label: Option<u32>) -> Result<Faces> {
        let nd = 2 * edges.len();
        let mut dart_face = vec![usize::MAX; nd];
        let mut count = 0;
        for start in 0..nd {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while dart_face[d] == usize::MAX {
                dart_face[d] = count;
                let s = arrival_slot(edges, d);
                d = leaving(crossings, edges, Slot { crossing: s.crossing, pos: (s.pos + 3) % 4 });
            }
            if d != start {
                return Err(Error::Invariant("face walk did not close".into()));
            }
            count += 1;
        }
        let corner: Vec<[usize; 4]> = (0..crossings.len())
            .map(|c| {
                core::array::from_fn(|k| {
                    dart_face[arriving(crossings, edges, Slot { crossing: c, pos: ((k + 1) % 4) as u8 })]
                })
            })
            .collect();

        let mut parent: Vec<usize> = (0..crossings.len()).collect();
        for e in edges {
            let (a, b) = (find(&mut parent, e.tail.crossing), find(&mut parent, e.head.crossing));
            parent[a] = b;
        }
        let mut root_piece = vec![usize::MAX; crossings.len()];
        let mut piece_of_crossing = vec![0; crossings.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for c in 0..crossings.len() {
            let r = find(&mut parent, c);
            if root_piece[r] == usize::MAX {
                root_piece[r] = members.len();
                members.push(Vec::new());
            }
            piece_of_crossing[c] = root_piece[r];
            members[root_piece[r]].push(c);
        }
        let mut pieces = Vec::with_capacity(members.len());
        for (p, cs) in members.into_iter().enumerate() {
            let mut piece_faces: Vec<usize> = cs.iter().flat_map(|&c| corner[c]).collect();
            piece_faces.sort_unstable();
            piece_faces.dedup();
            if piece_faces.len() != cs.len() + 2 {
                return Err(Error::NonPlanar { faces: piece_faces.len(), expected: cs.len() + 2 });
            }
            let in_piece = |e: &Edge| piece_of_crossing[e.tail.crossing] == p;
            let chosen = outer_label
                .and_then(|l| edges.iter().position(|e| e.label == l && in_piece(e)))
                .or_else(|| {
                    edges.iter().enumerate().filter(|(_, e)| in_piece(e)).min_by_key(|(_, e)| e.label).map(|(i, _)| i)
                })
                .ok_or_else(|| Error::Invariant("piece without edges".into()))?;
            pieces.push(Piece { crossings: cs, outer_face: dart_face[2 * chosen] });
        }
        Ok(Faces { dart_face, count, corner, piece_of_crossing, pieces })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Face left of edge `e` when walked with (`forward`) or against its orientation.
    pub fn dart_face(&self, e: usize, forward: bool) -> usize {
        self.dart_face[2 * e + usize::from(!forward)]
    }

    pub fn corner_face(&self, c: usize, k: u8) -> usize {
        self.corner[c][k as usize]
    }

    pub fn corners(&self, c: usize) -> [usize; 4] {
        self.corner[c]
    }

    /// A face meets the crossing at two opposite corners.
    pub fn is_nugatory(&self, c: usize) -> bool {
        let k = self.corner[c];
        k[0] == k[2] || k[1] == k[3]
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece_of(&self, c: usize) -> usize {
        self.piece_of_crossing[c]
    }
}
