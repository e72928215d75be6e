//! The invariants assembled from gradings and surface pairings.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::homfly::{expand_states, skein_coefficient, HomflyAction, HomflyState};
use crate::kauffman::{apply_state, check_limit, grading_intersection, KauffmanState};
use crate::par::map_reduce;
use crate::poly::{LaurentPoly, Monomial, Var};
use crate::surface::{build_surface_model, pair_state, SurfaceModel};
use crate::Limits;

#[derive(Clone, Debug, Default)]
pub struct ThetaOptions {
    pub limits: Limits,
    /// Keep one ledger line per state.
    pub ledger: bool,
    /// Base point whose circle is cut in the HOMFLY-PT pairing; defaults to the last.
    pub cut_base_point: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    /// State index (Jones) or leaf index in skein-tree order (HOMFLY-PT).
    pub state: u64,
    /// `(i)` for Jones; `(i_a, i_z)` for HOMFLY-PT.
    pub grading: Vec<i32>,
    pub sign: i32,
    /// Pairing in `Q`, zero-crossing loops included.
    pub pairing: LaurentPoly,
    /// `sign · grading monomial · pairing`, still in `Q`.
    pub term: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaResult {
    pub polynomial: LaurentPoly,
    pub ledger: Option<Vec<LedgerEntry>>,
}

/// `Q -> 1 - q - q^-1`.
pub fn jones_q_binding() -> LaurentPoly {
    LaurentPoly::one() - LaurentPoly::monomial(1, Var::Q, 1) - LaurentPoly::monomial(1, Var::Q, -1)
}

/// `Q -> 1 - (a - a^-1)/z`.
pub fn homfly_q_binding() -> LaurentPoly {
    LaurentPoly::one() - crate::homfly::unlink_ratio()
}

fn one_minus_big_q(k: usize) -> LaurentPoly {
    (LaurentPoly::one() - LaurentPoly::var(Var::BigQ)).pow(k as i64).expect("non-negative power")
}

fn free_loops(d: &LinkDiagram) -> usize {
    d.components().iter().filter(|c| c.is_free_loop()).count()
}

/// Pairing of a Jones state, no cut, zero-crossing loops included.
fn jones_pairing(d: &LinkDiagram, sm: &SurfaceModel, s: &KauffmanState) -> Result<LaurentPoly> {
    let sc = apply_state(d, s)?;
    let pr = pair_state(d, sm, s, &sc, None)?;
    Ok(&pr.pairing * &one_minus_big_q(free_loops(d)))
}

/// `Σ_σ (-1)^(i/2) q^(w - i/2) ⟨pairing⟩|_{Q = 1 - q - q^-1}`, `i = i(D_σ(α), D)`.
/// The sign makes it agree with the bracket state sum exactly.
pub fn theta_jones(d: &LinkDiagram, opts: &ThetaOptions) -> Result<ThetaResult> {
    theta_jones_impl(d, opts, false)
}

/// The unsigned form `Σ_σ s^(3w - i) ⟨pairing⟩|_{Q = 1 - s^2 - s^-2}`, in `s = q^(1/2)`.
/// Agrees with [`theta_jones`] only up to the per-state signs.
pub fn theta_jones_unsigned(d: &LinkDiagram, opts: &ThetaOptions) -> Result<ThetaResult> {
    theta_jones_impl(d, opts, true)
}

type Hist = BTreeMap<(i32, i32), i64>;

fn theta_jones_impl(d: &LinkDiagram, opts: &ThetaOptions, unsigned: bool) -> Result<ThetaResult> {
    check_limit(d, &opts.limits)?;
    let n = d.crossing_count();
    let w = d.writhe();
    let sm = build_surface_model(d);
    let var = if unsigned { Var::S } else { Var::Q };
    let state_term = |idx: u64| -> Result<(i32, i32, i32, LaurentPoly)> {
        let s = KauffmanState::from_index(n, idx);
        let i = grading_intersection(d, &s);
        let pairing = jones_pairing(d, &sm, &s)?;
        let (sign, e) = if unsigned { (1, 3 * w - i) } else { (if (i / 2) % 2 == 0 { 1 } else { -1 }, w - i / 2) };
        Ok((i, sign, e, pairing))
    };
    // accumulate in (grading exponent, Q exponent) and substitute once
    let folded: Result<Hist> = map_reduce(
        1u64 << n,
        || Ok(Hist::new()),
        |acc: &mut Result<Hist>, idx| {
            let Ok(h) = acc else { return };
            match state_term(idx) {
                Ok((_, sign, e, pairing)) => {
                    for (m, c) in pairing.terms() {
                        let c: i64 = c.try_into().expect("pairing coefficients are small");
                        *h.entry((e, m.exponent(Var::BigQ))).or_default() += i64::from(sign) * c;
                    }
                }
                Err(err) => *acc = Err(err),
            }
        },
        merge_hist,
    );
    let mut acc = LaurentPoly::zero();
    for ((e, qe), c) in folded? {
        acc.add_term(Monomial::from_pairs(&[(var, e), (Var::BigQ, qe)]), c.into());
    }
    let binding = if unsigned {
        LaurentPoly::one() - LaurentPoly::monomial(1, Var::S, 2) - LaurentPoly::monomial(1, Var::S, -2)
    } else {
        jones_q_binding()
    };
    let polynomial = acc.substitute_one(Var::BigQ, &binding)?;
    let ledger = if opts.ledger {
        let mut out = Vec::with_capacity(1 << n);
        for idx in 0..1u64 << n {
            let (i, sign, e, pairing) = state_term(idx)?;
            let term = pairing.scale(&sign.into(), &Monomial::var(var, e));
            out.push(LedgerEntry { state: idx, grading: alloc::vec![i], sign, pairing, term });
        }
        Some(out)
    } else {
        None
    };
    Ok(ThetaResult { polynomial, ledger })
}

fn merge_hist(a: Result<Hist>, b: Result<Hist>) -> Result<Hist> {
    let (mut a, b) = (a?, b?);
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    Ok(a)
}

/// `(i_a, i_z)` from the per-crossing contribution table.
pub fn grading_homfly(d: &LinkDiagram, st: &HomflyState) -> Result<(i32, i32)> {
    if st.actions.len() != d.crossing_count() {
        return Err(Error::Precondition("state does not match the diagram".into()));
    }
    let (mut ia, mut iz) = (0, 0);
    for (c, &a) in d.crossings().iter().zip(&st.actions) {
        if matches!(a, HomflyAction::Oriented | HomflyAction::Switch) {
            let (da, dz, _) = skein_coefficient(c.sign, a);
            ia += da;
            iz += dz;
        }
    }
    Ok((ia, iz))
}

/// `Σ_{σ_H} sign · a^i_a · z^i_z · ⟨pairing, cut⟩|_{Q = 1 - (a - a^-1)/z}`.
pub fn theta_homfly(d: &LinkDiagram, opts: &ThetaOptions) -> Result<ThetaResult> {
    let states = expand_states(d, &opts.limits)?;
    let sm = build_surface_model(d);
    let cut = match opts.cut_base_point {
        Some(b) if b >= sm.base_point_count() => {
            return Err(Error::Precondition(alloc::format!(
                "cut base point {b} out of range 0..{}",
                sm.base_point_count()
            )))
        }
        Some(b) => Some(b),
        None => sm.default_cut(),
    };
    let free = free_loops(d);
    let mut acc = LaurentPoly::zero();
    let mut ledger = opts.ledger.then(Vec::new);
    for (k, st) in states.iter().enumerate() {
        let (ia, iz) = grading_homfly(d, st)?;
        if (ia, iz) != (st.i_a, st.i_z) {
            return Err(Error::Invariant("contribution table disagrees with the skein tree".into()));
        }
        let pr = pair_state(d, &sm, &st.kauffman, &st.circles, cut)?;
        // with no crossings the cut falls on a zero-crossing loop
        let pairing = &pr.pairing * &one_minus_big_q(if cut.is_some() { free } else { free.saturating_sub(1) });
        let term = pairing.scale(&st.sign.into(), &Monomial::from_pairs(&[(Var::A, ia), (Var::Z, iz)]));
        acc += term.clone();
        if let Some(l) = ledger.as_mut() {
            l.push(LedgerEntry { state: k as u64, grading: alloc::vec![ia, iz], sign: st.sign, pairing, term });
        }
    }
    let polynomial = acc.substitute_one(Var::BigQ, &homfly_q_binding())?;
    Ok(ThetaResult { polynomial, ledger })
}

/// Relabelling applied to a reduced Jones polynomial obtained from HOMFLY-PT before
/// comparing it with the bracket side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionMap {
    Identity,
    InvertQ,
    InvertA,
    InvertBoth,
}

impl ConventionMap {
    pub const ALL: [ConventionMap; 4] =
        [ConventionMap::Identity, ConventionMap::InvertQ, ConventionMap::InvertA, ConventionMap::InvertBoth];

    /// `specialize_to_jones` of `P` with the map applied.
    pub fn jones_from_homfly(self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let p = match self {
            ConventionMap::InvertA | ConventionMap::InvertBoth => p.invert_var(Var::A),
            _ => p.clone(),
        };
        let j = crate::homfly::specialize_to_jones(&p)?;
        Ok(match self {
            ConventionMap::InvertQ | ConventionMap::InvertBoth => j.invert_var(Var::Q),
            _ => j,
        })
    }
}

/// Fixed on the right-handed trefoil: the first map in [`ConventionMap::ALL`] that fits.
pub const JONES_CONVENTION: ConventionMap = ConventionMap::Identity;

/// `theta_jones / (q + q^-1)`.
pub fn reduced_jones(theta_j: &LaurentPoly) -> Result<LaurentPoly> {
    theta_j.divide_exact(&crate::kauffman::loop_value_pow(1))
}

/// The bracket normalization gives the `m`-component unlink `(q + q^-1)^(m-1)`, the
/// HOMFLY-PT specialization `(-(q + q^-1))^(m-1)`; this applies that sign.
pub fn component_sign(p: &LaurentPoly, components: usize) -> LaurentPoly {
    if components % 2 == 1 {
        p.clone()
    } else {
        -p.clone()
    }
}

/// Recombines a ledger: `Σ term` with `Q` substituted.
pub fn recombine(ledger: &[LedgerEntry], binding: &LaurentPoly) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for e in ledger {
        acc += e.term.clone();
    }
    acc.substitute_one(Var::BigQ, binding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_gauss, parse_pd};
    use crate::homfly::{homfly_recursive, unlink_value};
    use crate::kauffman::jones_unreduced;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    fn opts() -> ThetaOptions {
        ThetaOptions::default()
    }

    #[test]
    fn jones_small() {
        for text in ["U", "X[1,1,2,2]", "X[1,2,2,1]", "U U", TREFOIL, "X[4,1,3,2] X[2,3,1,4]"] {
            let d = parse_pd(text).unwrap();
            assert_eq!(theta_jones(&d, &opts()).unwrap().polynomial, jones_unreduced(&d).unwrap(), "{text}");
        }
        assert_eq!(theta_jones(&parse_pd("U").unwrap(), &opts()).unwrap().polynomial, p("q + q^-1"));
    }

    #[test]
    fn unsigned_form_differs_by_state_signs() {
        // on the unknot diagrams every state sign is +1
        let d = parse_pd("U").unwrap();
        assert_eq!(theta_jones_unsigned(&d, &opts()).unwrap().polynomial, p("s^2 + s^-2"));
        let d = parse_pd(TREFOIL).unwrap();
        let signed = theta_jones(&d, &opts()).unwrap().polynomial.map_var(Var::Q, Var::S, |e| 2 * e);
        assert_ne!(theta_jones_unsigned(&d, &opts()).unwrap().polynomial, signed);
    }

    #[test]
    fn ledgers_recombine() {
        let d = parse_pd(TREFOIL).unwrap();
        let o = ThetaOptions { ledger: true, ..opts() };
        let r = theta_jones(&d, &o).unwrap();
        assert_eq!(r.ledger.as_ref().unwrap().len(), 8);
        assert_eq!(recombine(r.ledger.as_ref().unwrap(), &jones_q_binding()).unwrap(), r.polynomial);
        let h = theta_homfly(&d, &o).unwrap();
        assert_eq!(recombine(h.ledger.as_ref().unwrap(), &homfly_q_binding()).unwrap(), h.polynomial);
    }

    #[test]
    fn homfly_small() {
        assert_eq!(theta_homfly(&parse_pd("U").unwrap(), &opts()).unwrap().polynomial, LaurentPoly::one());
        for m in 1..=4 {
            let text = alloc::vec!["U"; m].join(" ");
            let d = parse_pd(&text).unwrap();
            assert_eq!(theta_homfly(&d, &opts()).unwrap().polynomial, unlink_value(m));
        }
        for text in [TREFOIL, "X[4,1,3,2] X[2,3,1,4]", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"] {
            let d = parse_pd(text).unwrap();
            let want = homfly_recursive(&d, &Limits::default()).unwrap();
            for b in 0..2 * d.crossing_count() {
                let o = ThetaOptions { cut_base_point: Some(b), ..opts() };
                assert_eq!(theta_homfly(&d, &o).unwrap().polynomial, want, "{text} cut {b}");
            }
        }
    }

    #[test]
    fn grading_table() {
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        let st = &expand_states(&kink, &Limits::default()).unwrap()[0];
        assert_eq!(grading_homfly(&kink, st).unwrap(), (0, 0));
        assert_eq!(skein_coefficient(crate::Sign::Pos, HomflyAction::Oriented), (-1, 1, 1));
        assert_eq!(skein_coefficient(crate::Sign::Neg, HomflyAction::Switch), (2, 0, 1));
        let hopf = parse_gauss("O1-U2-;U1-O2-").unwrap();
        for st in expand_states(&hopf, &Limits::default()).unwrap() {
            assert_eq!(grading_homfly(&hopf, &st).unwrap(), (st.i_a, st.i_z));
        }
    }

    #[test]
    fn bad_cut_rejected() {
        let d = parse_pd(TREFOIL).unwrap();
        let o = ThetaOptions { cut_base_point: Some(6), ..opts() };
        assert!(matches!(theta_homfly(&d, &o), Err(Error::Precondition(_))));
    }

    #[test]
    fn convention_fixed_on_right_trefoil() {
        let rh = parse_gauss("O1+U2+O3+U1+O2+U3+").unwrap();
        let reduced = reduced_jones(&theta_jones(&rh, &opts()).unwrap().polynomial).unwrap();
        let h = theta_homfly(&rh, &opts()).unwrap().polynomial;
        let fits: Vec<ConventionMap> =
            ConventionMap::ALL.into_iter().filter(|m| m.jones_from_homfly(&h).unwrap() == reduced).collect();
        // inverting both variables is the same map, since a -> a^-1 mirrors
        assert_eq!(fits, alloc::vec![ConventionMap::Identity, ConventionMap::InvertBoth]);
        assert_eq!(fits[0], JONES_CONVENTION);
        assert_eq!(reduced, p("q^2 + q^6 - q^8"));
    }

    #[test]
    fn two_component_sign() {
        let hopf = parse_gauss("O1+U2+;U1+O2+").unwrap();
        let reduced = reduced_jones(&theta_jones(&hopf, &opts()).unwrap().polynomial).unwrap();
        let spec = JONES_CONVENTION.jones_from_homfly(&theta_homfly(&hopf, &opts()).unwrap().polynomial).unwrap();
        assert_eq!(reduced, p("q + q^5"));
        assert_eq!(component_sign(&spec, 2), reduced);
    }
}
