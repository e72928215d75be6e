use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{assemble, Blueprint, Crossing, LinkDiagram, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
struct Pass {
    over: bool,
    label: u32,
    sign: Sign,
}

fn tokens(segment: &str) -> Result<Vec<Pass>> {
    let mut out = Vec::new();
    let mut chars = segment.chars().peekable();
    while let Some(c) = chars.next() {
        let over = match c {
            'O' | 'o' => true,
            'U' | 'u' => false,
            c if c.is_whitespace() || c == ',' => continue,
            c => return Err(Error::Gauss(format!("unexpected character '{c}'"))),
        };
        let mut label: u32 = 0;
        let mut digits = 0;
        while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
            label = label
                .checked_mul(10)
                .and_then(|l| l.checked_add(d))
                .ok_or_else(|| Error::Gauss("label too large".into()))?;
            digits += 1;
            chars.next();
        }
        if digits == 0 {
            return Err(Error::Gauss("missing crossing label".into()));
        }
        let sign = match chars.next() {
            Some('+') => Sign::Pos,
            Some('-') | Some('\u{2212}') => Sign::Neg,
            _ => return Err(Error::Gauss(format!("missing sign after crossing {label}"))),
        };
        out.push(Pass { over, label, sign });
    }
    Ok(out)
}

/// Signed Gauss code: `[OU]<label>[+-]` per pass, components separated by `;`.
/// Each component starts at its first pass; empty segments are zero-crossing loops.
pub fn parse_gauss(text: &str) -> Result<LinkDiagram> {
    let comps: Vec<Vec<Pass>> = text.split(';').map(tokens).collect::<Result<_>>()?;
    let comps: Vec<Vec<Pass>> = if comps.iter().all(Vec::is_empty) && comps.len() == 1 {
        return Err(Error::Gauss("empty code".into()));
    } else {
        comps
    };
    // (in edge, out edge, sign) for each crossing label's under and over pass
    let mut under: BTreeMap<u32, (usize, usize, Sign)> = BTreeMap::new();
    let mut over: BTreeMap<u32, (usize, usize, Sign)> = BTreeMap::new();
    let mut bases = Vec::with_capacity(comps.len());
    let mut next_edge = 0;
    for comp in &comps {
        if comp.is_empty() {
            bases.push(None);
            continue;
        }
        let base = next_edge;
        let len = comp.len();
        for (t, p) in comp.iter().enumerate() {
            let entry = (base + t, base + (t + 1) % len, p.sign);
            let table = if p.over { &mut over } else { &mut under };
            if table.insert(p.label, entry).is_some() {
                return Err(Error::Gauss(format!(
                    "crossing {} passed {} twice",
                    p.label,
                    if p.over { "over" } else { "under" }
                )));
            }
        }
        bases.push(Some(base));
        next_edge += len;
    }
    for l in under.keys().chain(over.keys()) {
        if !(under.contains_key(l) && over.contains_key(l)) {
            return Err(Error::Gauss(format!("crossing {l} needs one over and one under pass")));
        }
    }
    let mut crossings = Vec::with_capacity(under.len());
    for (id, (l, &(iu, ou, su))) in under.iter().enumerate() {
        let (io, oo, so) = over[l];
        if su != so {
            return Err(Error::Gauss(format!("crossing {l} has inconsistent signs")));
        }
        let edges = match su {
            Sign::Pos => [iu, oo, ou, io],
            Sign::Neg => [iu, io, ou, oo],
        };
        crossings.push(Crossing { id, edges, sign: su, rot: 0 });
    }
    let labels = (1..=next_edge as u32).collect();
    assemble(Blueprint { crossings, labels, bases: Some(bases), free_loops: 0, outer_label: None })
}
