use alloc::vec;
use alloc::vec::Vec;

use super::{LinkDiagram, Sign};

/// Relabelling-invariant form of an oriented diagram on the sphere. Ignores base
/// points and component order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u32>);

/// PD-style code of the piece containing `start`, edges numbered in discovery order.
fn code_from(d: &LinkDiagram, start: usize) -> Vec<u32> {
    let mut label = vec![0u32; d.edges.len()];
    let mut seen = vec![false; d.crossings.len()];
    let mut order: Vec<usize> = Vec::new();
    let mut next = 1;
    let mut walk = |e0: usize, label: &mut Vec<u32>, seen: &mut Vec<bool>, order: &mut Vec<usize>| {
        let mut e = e0;
        loop {
            label[e] = next;
            next += 1;
            let c = d.edges[e].head.crossing;
            if !seen[c] {
                seen[c] = true;
                order.push(c);
            }
            e = d.successor(e);
            if e == e0 {
                break;
            }
        }
    };
    walk(start, &mut label, &mut seen, &mut order);
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for p in 0..4 {
            let e = d.crossings[c].edges[p];
            if label[e] == 0 {
                walk(e, &mut label, &mut seen, &mut order);
            }
        }
        i += 1;
    }
    let mut code = Vec::with_capacity(5 * order.len());
    for &c in &order {
        let x = &d.crossings[c];
        code.extend(x.edges.iter().map(|&e| label[e]));
        code.push(u32::from(x.sign == Sign::Neg));
    }
    code
}

pub(super) fn canonical_key(d: &LinkDiagram) -> CanonicalKey {
    let faces = &d.faces;
    let mut piece_codes: Vec<Vec<u32>> = faces
        .pieces()
        .iter()
        .map(|piece| {
            piece
                .crossings
                .iter()
                .flat_map(|&c| d.crossings[c].edges)
                .map(|e| code_from(d, e))
                .min()
                .unwrap_or_default()
        })
        .collect();
    piece_codes.sort();
    let free = d.components.iter().filter(|c| c.is_free_loop()).count() as u32;
    let mut out = vec![free, piece_codes.len() as u32];
    for code in piece_codes {
        out.push(code.len() as u32);
        out.extend(code);
    }
    CanonicalKey(out)
}

#[cfg(test)]
mod tests {
    use crate::diagram::parse_pd;

    #[test]
    fn relabelling_invariance() {
        let a = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let b = parse_pd("X[3,6,4,1] X[5,2,6,3] X[1,4,2,5]").unwrap();
        let c = parse_pd("X[11,14,12,15] X[13,16,14,11] X[15,12,16,13]").unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_eq!(a.canonical_key(), c.canonical_key());
        assert_ne!(a.canonical_key(), a.mirror().canonical_key());
    }

    #[test]
    fn kinks_differ() {
        let p = parse_pd("X[1,1,2,2]").unwrap();
        let n = parse_pd("X[1,2,2,1]").unwrap();
        assert_ne!(p.canonical_key(), n.canonical_key());
        assert_ne!(parse_pd("U").unwrap().canonical_key(), parse_pd("U U").unwrap().canonical_key());
    }
}
