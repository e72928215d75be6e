use std::collections::BTreeMap;

use proptest::prelude::*;
use thetaknot_core::homfly::{homfly_recursive, homfly_state_sum};
use thetaknot_core::kauffman::{apply_state, grading_intersection, jones_unreduced, sgn, KauffmanState, Smoothing};
use thetaknot_core::surface::{
    assign_sigma_punctures_with, build_specialization, build_surface_model, check_monodromy_requirement,
    enumerate_and_pair, far_sign,
};
use thetaknot_core::theta::{theta_homfly, theta_jones, ThetaOptions};
use thetaknot_core::{parse_pd, resolve, serialize_pd, LaurentPoly, LinkDiagram, Monomial, ResolveMode, Var};

/// PD text of the closure of a braid word on `k` strands; `±i` is `σ_i^{±1}`.
fn braid_pd(word: &[i32], k: usize) -> String {
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    let mut next = k as u32 + 1;
    let mut xs: Vec<[u32; 4]> = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (ei, ej, ni, nj) = (cur[i], cur[i + 1], next, next + 1);
        next += 2;
        xs.push(if g > 0 { [ej, nj, ni, ei] } else { [ei, ej, nj, ni] });
        cur[i] = ni;
        cur[i + 1] = nj;
    }
    let close: BTreeMap<u32, u32> =
        (0..k).filter(|&j| cur[j] != j as u32 + 1).map(|j| (cur[j], j as u32 + 1)).collect();
    let mut used: Vec<u32> = xs.iter().flatten().map(|l| *close.get(l).unwrap_or(l)).collect();
    used.sort_unstable();
    used.dedup();
    let compact = |l: &u32| used.binary_search(close.get(l).unwrap_or(l)).unwrap() + 1;
    let mut parts: Vec<String> = xs
        .iter()
        .map(|x| format!("X[{},{},{},{}]", compact(&x[0]), compact(&x[1]), compact(&x[2]), compact(&x[3])))
        .collect();
    parts.extend((0..k).filter(|&j| cur[j] == j as u32 + 1).map(|_| "U".to_string()));
    parts.join(" ")
}

fn braid(max_len: usize) -> impl Strategy<Value = LinkDiagram> {
    (2usize..=4)
        .prop_flat_map(move |k| {
            let g = (1..k as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
            (Just(k), prop::collection::vec(g, 1..=max_len))
        })
        .prop_map(|(k, w)| parse_pd(&braid_pd(&w, k)).unwrap())
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -3i32..=3, -2i32..=2), 0..5).prop_map(|ts| {
        let mut p = LaurentPoly::zero();
        for (c, eq, ea) in ts {
            p.add_term(Monomial::from_pairs(&[(Var::Q, eq), (Var::A, ea)]), c.into());
        }
        p
    })
}

fn unit() -> impl Strategy<Value = LaurentPoly> {
    (prop_oneof![Just(1i64), Just(-1)], -2i32..=2, -2i32..=2)
        .prop_map(|(c, ea, ez)| LaurentPoly::term(c.into(), Monomial::from_pairs(&[(Var::A, ea), (Var::Z, ez)])))
}

proptest! {
    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
    }

    #[test]
    fn substitution_is_a_ring_map(p in poly(), q in poly(), v in unit()) {
        let s = |x: &LaurentPoly| x.substitute_one(Var::Q, &v).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&p * &d).divide_exact(&d).unwrap(), p);
    }

    #[test]
    fn text_round_trip(p in poly()) {
        prop_assert_eq!(LaurentPoly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn grading_is_sgn_minus_writhe(d in braid(7), idx in any::<u64>()) {
        let n = d.crossing_count();
        let s = KauffmanState::from_index(n, idx & ((1u64 << n) - 1));
        prop_assert_eq!(grading_intersection(&d, &s), sgn(&s) - d.writhe());
    }

    #[test]
    fn one_smoothing_change_moves_circle_count_by_one(d in braid(7), idx in any::<u64>(), c in any::<prop::sample::Index>()) {
        let n = d.crossing_count();
        let s = KauffmanState::from_index(n, idx & ((1u64 << n) - 1));
        let mut t = s.clone();
        let c = c.index(n);
        t.0[c] = if t.0[c] == Smoothing::Plus { Smoothing::Minus } else { Smoothing::Plus };
        let (a, b) = (apply_state(&d, &s).unwrap().count() as i32, apply_state(&d, &t).unwrap().count() as i32);
        prop_assert_eq!((a - b).abs(), 1);
    }

    #[test]
    fn nesting_is_a_forest(d in braid(7), idx in any::<u64>()) {
        let n = d.crossing_count();
        let sc = apply_state(&d, &KauffmanState::from_index(n, idx & ((1u64 << n) - 1))).unwrap();
        for i in 0..sc.count() {
            let below = sc.descendants(i);
            prop_assert!(!below.contains(&i));
            for j in sc.children(i) {
                prop_assert_eq!(sc.parent[j], Some(i));
                prop_assert!(below.contains(&j));
                prop_assert!(sc.descendants(j).iter().all(|k| below.contains(k)));
            }
        }
    }

    #[test]
    fn pd_round_trip(d in braid(8)) {
        let e = parse_pd(&serialize_pd(&d)).unwrap();
        prop_assert!(d.is_isomorphic(&e));
        prop_assert_eq!(d.writhe(), e.writhe());
    }

    #[test]
    fn switching_twice_is_the_identity(d in braid(8), c in any::<prop::sample::Index>()) {
        let c = c.index(d.crossing_count());
        let once = resolve(&d, c, ResolveMode::Switch).unwrap();
        prop_assert_eq!(once.writhe(), d.writhe() - 2 * d.crossings()[c].sign.value());
        prop_assert!(resolve(&once, c, ResolveMode::Switch).unwrap().is_isomorphic(&d));
    }

    #[test]
    fn mirror_inverts_q(d in braid(6)) {
        prop_assert_eq!(jones_unreduced(&d.mirror()).unwrap(), jones_unreduced(&d).unwrap().invert_var(Var::Q));
    }

    #[test]
    fn sigma_puncture_choice_is_irrelevant(d in braid(7), idx in any::<u64>(), seed in any::<u64>()) {
        let n = d.crossing_count();
        let s = KauffmanState::from_index(n, idx & ((1u64 << n) - 1));
        let sc = apply_state(&d, &s).unwrap();
        let sm = build_surface_model(&d);
        let mut h = seed;
        let asg = assign_sigma_punctures_with(&d, &sc, &sm, |_, len| {
            h = h.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (h >> 33) as usize % len
        }).unwrap();
        let spec = build_specialization(&sm, &sc, &asg, Var::BigQ).unwrap();
        prop_assert!(check_monodromy_requirement(&sm, &asg, &spec, Var::BigQ).is_ok());
        let k = asg.circles.iter().flatten().count() as i64;
        let closed = (LaurentPoly::one() - LaurentPoly::var(Var::BigQ)).pow(k).unwrap();
        prop_assert_eq!(enumerate_and_pair(&sm, &asg, &spec, Var::BigQ, None).unwrap(), closed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn outer_face_choice_is_irrelevant(d in braid(6), e in any::<prop::sample::Index>()) {
        prop_assume!(d.crossing_count() > 0);
        let label = d.edges()[e.index(d.edges().len())].label;
        let moved = d.with_outer_label(label).unwrap();
        let j = jones_unreduced(&d).unwrap();
        prop_assert_eq!(&theta_jones(&moved, &ThetaOptions::default()).unwrap().polynomial, &j);
        prop_assert_eq!(
            theta_homfly(&moved, &ThetaOptions::default()).unwrap().polynomial,
            homfly_recursive(&d, &Default::default()).unwrap()
        );
    }

    #[test]
    fn theta_jones_matches_bracket(d in braid(7)) {
        prop_assert_eq!(theta_jones(&d, &ThetaOptions::default()).unwrap().polynomial, jones_unreduced(&d).unwrap());
    }

    #[test]
    fn homfly_routes_agree(d in braid(6)) {
        let limits = Default::default();
        let rec = homfly_recursive(&d, &limits).unwrap();
        prop_assert_eq!(&homfly_state_sum(&d, &limits).unwrap(), &rec);
        prop_assert_eq!(&theta_homfly(&d, &ThetaOptions::default()).unwrap().polynomial, &rec);
    }
}

#[test]
fn far_sign_small_circles() {
    assert_eq!([far_sign(1), far_sign(2), far_sign(3)], [-1, -1, -1]);
}

#[test]
fn braid_closure_helper() {
    assert_eq!(braid_pd(&[1, 1, 1], 2).matches('X').count(), 3);
    assert_eq!(parse_pd(&braid_pd(&[1, -1], 3)).unwrap().component_count(), 3);
    assert_eq!(parse_pd(&braid_pd(&[1, 1, 1], 2)).unwrap().writhe(), 3);
}
