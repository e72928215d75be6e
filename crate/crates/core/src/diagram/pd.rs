use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{assemble, Blueprint, Crossing, LinkDiagram, Sign};
use crate::error::{Error, Result};

struct Lexer<'a> {
    s: &'a [u8],
    i: usize,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = *self.s.get(self.i)?;
        self.i += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    /// Skips whitespace, comments and the separators KnotTheory-style listings use.
    fn skip(&mut self) {
        while let Some(&b) = self.s.get(self.i) {
            match b {
                b'#' => {
                    while self.s.get(self.i).is_some_and(|&b| b != b'\n') {
                        self.bump();
                    }
                }
                b if b.is_ascii_whitespace() || b == b',' => {
                    self.bump();
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        self.skip_inline();
        match self.bump() {
            Some(b) if b == want => Ok(()),
            _ => Err(self.err(format!("expected '{}'", want as char))),
        }
    }

    fn skip_inline(&mut self) {
        while self.s.get(self.i).is_some_and(|b| b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn label(&mut self) -> Result<u32> {
        self.skip_inline();
        let start = self.i;
        while self.s.get(self.i).is_some_and(u8::is_ascii_digit) {
            self.bump();
        }
        let text = core::str::from_utf8(&self.s[start..self.i]).unwrap_or("");
        match text.parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(self.err("expected a positive integer edge label")),
        }
    }
}

/// Parses whitespace-separated `X[a,b,c,d]` terms and `U` tokens. `#` starts a
/// comment; a `PD[...]` wrapper and commas between terms are tolerated. Input with no
/// terms at all is the zero-crossing unknot.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut lx = Lexer { s: text.as_bytes(), i: 0, line: 1, col: 1 };
    let mut quads: Vec<[u32; 4]> = Vec::new();
    let mut free_loops = 0;
    let mut wrapped = false;
    loop {
        lx.skip();
        match lx.s.get(lx.i) {
            None => break,
            Some(b'X') => {
                lx.bump();
                lx.expect(b'[')?;
                let mut q = [0u32; 4];
                for (k, slot) in q.iter_mut().enumerate() {
                    if k > 0 {
                        lx.expect(b',')?;
                    }
                    *slot = lx.label()?;
                }
                lx.expect(b']')?;
                quads.push(q);
            }
            Some(b'U') => {
                lx.bump();
                if lx.s.get(lx.i).is_some_and(u8::is_ascii_alphanumeric) {
                    return Err(lx.err("unexpected token"));
                }
                free_loops += 1;
            }
            Some(b'P') if !wrapped && lx.s[lx.i..].starts_with(b"PD[") => {
                for _ in 0..3 {
                    lx.bump();
                }
                wrapped = true;
            }
            Some(b']') if wrapped => {
                lx.bump();
                wrapped = false;
            }
            Some(_) => return Err(lx.err("expected X[..] or U")),
        }
    }
    if wrapped {
        return Err(lx.err("unterminated PD["));
    }
    if quads.is_empty() && free_loops == 0 {
        free_loops = 1;
    }
    from_quads(&quads, free_loops)
}

fn from_quads(quads: &[[u32; 4]], free_loops: usize) -> Result<LinkDiagram> {
    let mut occ: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (c, q) in quads.iter().enumerate() {
        for (p, &l) in q.iter().enumerate() {
            occ.entry(l).or_default().push(4 * c + p);
        }
    }
    for (&label, o) in &occ {
        if o.len() != 2 {
            return Err(Error::EdgeMultiplicity { label, count: o.len() });
        }
    }
    let labels: Vec<u32> = occ.keys().copied().collect();
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let n_occ = 4 * quads.len();
    let mut partner = vec![0usize; n_occ];
    for o in occ.values() {
        partner[o[0]] = o[1];
        partner[o[1]] = o[0];
    }
    let label_at = |o: usize| quads[o / 4][o % 4];

    // true = the edge enters the crossing at this occurrence
    let mut inward: Vec<Option<bool>> = vec![None; n_occ];
    let mut queue = VecDeque::new();
    let fix = |o: usize, v: bool, inward: &mut Vec<Option<bool>>, queue: &mut VecDeque<usize>| -> Result<()> {
        match inward[o] {
            Some(w) if w != v => Err(Error::Orientation { label: label_at(o) }),
            Some(_) => Ok(()),
            None => {
                inward[o] = Some(v);
                queue.push_back(o);
                Ok(())
            }
        }
    };
    for c in 0..quads.len() {
        fix(4 * c, true, &mut inward, &mut queue)?;
        fix(4 * c + 2, false, &mut inward, &mut queue)?;
    }
    let propagate = |inward: &mut Vec<Option<bool>>, queue: &mut VecDeque<usize>| -> Result<()> {
        while let Some(o) = queue.pop_front() {
            let v = inward[o].unwrap();
            fix(o ^ 2, !v, inward, queue)?;
            fix(partner[o], !v, inward, queue)?;
        }
        Ok(())
    };
    propagate(&mut inward, &mut queue)?;

    // Strands that only ever pass over: pick the direction along which labels most
    // often increase by one; on a tie the smallest label enters at its first occurrence.
    let mut order: Vec<usize> = (0..n_occ).collect();
    order.sort_by_key(|&o| (label_at(o), o));
    for o0 in order {
        if inward[o0].is_some() {
            continue;
        }
        let score = |first_in: bool| -> usize {
            let mut steps = 0;
            let mut head = if first_in { o0 } else { partner[o0] };
            loop {
                let next_tail = head ^ 2;
                if label_at(next_tail) == label_at(head) + 1 {
                    steps += 1;
                }
                head = partner[next_tail];
                if head == (if first_in { o0 } else { partner[o0] }) {
                    break;
                }
            }
            steps
        };
        let (fwd, bwd) = (score(true), score(false));
        fix(o0, fwd >= bwd, &mut inward, &mut queue)?;
        propagate(&mut inward, &mut queue)?;
    }

    let crossings: Vec<Crossing> = quads
        .iter()
        .enumerate()
        .map(|(c, q)| Crossing {
            id: c,
            edges: q.map(|l| index[&l]),
            sign: if inward[4 * c + 3] == Some(true) { Sign::Pos } else { Sign::Neg },
            rot: 0,
        })
        .collect();
    assemble(Blueprint { crossings, labels, bases: None, free_loops, outer_label: None })
}

/// PD text with edges relabelled `1, 2, ...` along the components in order from their
/// base points. Zero-crossing loops are written as trailing `U` tokens.
pub fn serialize_pd(d: &LinkDiagram) -> String {
    let mut label = vec![0u32; d.edges().len()];
    let mut next = 1;
    for comp in d.components() {
        for &e in &comp.edges {
            label[e] = next;
            next += 1;
        }
    }
    let mut order: Vec<usize> = (0..d.crossing_count()).collect();
    for comp in d.components() {
        if comp.edges.len() != 2 {
            continue;
        }
        let over_only = comp.edges.iter().all(|&e| d.edges()[e].head.pos != 0);
        if !over_only {
            continue;
        }
        let e0 = &d.edges()[comp.edges[0]];
        let (h, t) = (e0.head.crossing, e0.tail.crossing);
        let ph = order.iter().position(|&c| c == h).unwrap();
        let pt = order.iter().position(|&c| c == t).unwrap();
        if ph > pt {
            order.swap(ph, pt);
        }
    }
    let mut parts: Vec<String> = order
        .iter()
        .map(|&c| {
            let e = d.crossings()[c].edges.map(|e| label[e]);
            format!("X[{},{},{},{}]", e[0], e[1], e[2], e[3])
        })
        .collect();
    for comp in d.components() {
        if comp.is_free_loop() {
            parts.push("U".to_string());
        }
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn standard_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.faces().count(), 5);
    }

    #[test]
    fn kinks_by_orientation() {
        let pos = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!((pos.writhe(), pos.component_count()), (1, 1));
        let neg = parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!((neg.writhe(), neg.component_count()), (-1, 1));
        assert!(pos.is_nugatory(0) && neg.is_nugatory(0));
    }

    #[test]
    fn empty_and_free_loops() {
        let d = parse_pd("").unwrap();
        assert_eq!((d.crossing_count(), d.component_count()), (0, 1));
        let d = parse_pd("U U # two loops\n U").unwrap();
        assert_eq!(d.component_count(), 3);
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]] U").unwrap();
        assert_eq!((d.crossing_count(), d.component_count()), (3, 2));
    }

    #[test]
    fn hopf_signs_follow_orientation() {
        let d = parse_pd("X[4,1,3,2] X[2,3,1,4]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossings()[0].sign, d.crossings()[1].sign);
    }

    #[test]
    fn rejections() {
        assert!(matches!(parse_pd("X[1,2,3,4]"), Err(Error::EdgeMultiplicity { .. })));
        assert!(matches!(parse_pd("X[1,1,2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pd("X[1,0,0,1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pd("Y"), Err(Error::Parse { line: 1, col: 1, .. })));
        assert!(matches!(parse_pd("U\n  Z"), Err(Error::Parse { line: 2, col: 3, .. })));
        // understrand enters at edge 1 twice
        assert!(matches!(parse_pd("X[1,2,3,4] X[1,4,3,2]"), Err(Error::Orientation { .. })));
        // consistent orientations, but no planar embedding
        assert!(matches!(
            parse_pd("X[1,4,2,5] X[3,1,4,6] X[5,2,6,3]"),
            Err(Error::NonPlanar { .. }) | Err(Error::Orientation { .. })
        ));
    }

    #[test]
    fn serialize_round_trip() {
        for text in [TREFOIL, "X[1,1,2,2]", "X[4,1,3,2] X[2,3,1,4] U", "U U"] {
            let d = parse_pd(text).unwrap();
            let s = serialize_pd(&d);
            let e = parse_pd(&s).unwrap();
            assert!(d.is_isomorphic(&e), "{text} -> {s}");
            assert_eq!(serialize_pd(&e), s);
        }
    }
}
