//! Cross-engine verification of corpus entries.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thetaknot_core::homfly::{homfly_recursive, homfly_state_sum, specialize_to_alexander};
use thetaknot_core::kauffman::{apply_state, jones_unreduced_with, KauffmanState};
use thetaknot_core::poly::{LaurentPoly, Var};
use thetaknot_core::surface::{build_surface_model, pair_state};
use thetaknot_core::theta::{component_sign, reduced_jones, theta_homfly, theta_jones, ThetaOptions, JONES_CONVENTION};
use thetaknot_core::{resolve, Limits, LinkDiagram, ResolveMode, Sign};

use crate::corpus::CorpusEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    ThetaJones,
    ThetaHomfly,
    Skein,
    Monodromy,
    CutInvariance,
    BasepointInvariance,
    Aliases,
    Specialization,
    AlexanderSymmetry,
    Expected,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::ThetaJones,
        Check::ThetaHomfly,
        Check::Skein,
        Check::Monodromy,
        Check::CutInvariance,
        Check::BasepointInvariance,
        Check::Aliases,
        Check::Specialization,
        Check::AlexanderSymmetry,
        Check::Expected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ThetaJones => "theta_jones",
            Check::ThetaHomfly => "theta_homfly",
            Check::Skein => "skein",
            Check::Monodromy => "monodromy",
            Check::CutInvariance => "cut_invariance",
            Check::BasepointInvariance => "basepoint_invariance",
            Check::Aliases => "aliases",
            Check::Specialization => "specialization",
            Check::AlexanderSymmetry => "alexander_symmetry",
            Check::Expected => "expected",
        }
    }

    pub fn from_name(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub limits: Limits,
    /// Largest diagram for the per-state surface checks.
    pub state_max: usize,
    /// Largest diagram for the exhaustive base-point and cut sweeps.
    pub exhaustive_max: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { limits: Limits { max_crossings: 14 }, state_max: 10, exhaustive_max: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub crossings: usize,
    pub components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The five polynomial outputs compared across diagrams of one link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub jones: LaurentPoly,
    pub theta_jones: LaurentPoly,
    pub homfly: LaurentPoly,
    pub homfly_statesum: LaurentPoly,
    pub theta_homfly: LaurentPoly,
}

impl Invariants {
    pub const NAMES: [&'static str; 5] =
        ["jones_unreduced", "theta_jones", "homfly_recursive", "homfly_statesum", "theta_homfly"];

    pub fn values(&self) -> [&LaurentPoly; 5] {
        [&self.jones, &self.theta_jones, &self.homfly, &self.homfly_statesum, &self.theta_homfly]
    }
}

pub fn compute_invariants(d: &LinkDiagram, limits: &Limits) -> thetaknot_core::Result<Invariants> {
    let opts = ThetaOptions { limits: *limits, ..Default::default() };
    Ok(Invariants {
        jones: jones_unreduced_with(d, limits)?,
        theta_jones: theta_jones(d, &opts)?.polynomial,
        homfly: homfly_recursive(d, limits)?,
        homfly_statesum: homfly_state_sum(d, limits)?,
        theta_homfly: theta_homfly(d, &opts)?.polynomial,
    })
}

/// `lhs == rhs`, or a detail line with both sides and their difference.
pub fn compare(label: &str, lhs: &LaurentPoly, rhs: &LaurentPoly, details: &mut Vec<String>) -> bool {
    if lhs == rhs {
        return true;
    }
    details.push(format!("{label}: {lhs} != {rhs} (difference {})", lhs - rhs));
    false
}

/// `a P(D+) - a^-1 P(D-) - z P(D0)` at crossing index `c`.
pub fn skein_residual(d: &LinkDiagram, c: usize, limits: &Limits) -> thetaknot_core::Result<LaurentPoly> {
    let x = &d.crossings()[c];
    let switched = resolve(d, x.id, ResolveMode::Switch)?;
    let smoothed = resolve(d, x.id, ResolveMode::Oriented)?;
    let (plus, minus) = if x.sign == Sign::Pos { (d, &switched) } else { (&switched, d) };
    let a = LaurentPoly::var(Var::A);
    let a_inv = LaurentPoly::monomial(1, Var::A, -1);
    let z = LaurentPoly::var(Var::Z);
    Ok(&(&a * &homfly_recursive(plus, limits)?)
        - &(&a_inv * &homfly_recursive(minus, limits)?)
        - &z * &homfly_recursive(&smoothed, limits)?)
}

/// Every ordering of the components with every choice of base edge, up to `cap`
/// variants (`None` if there are more).
pub fn basepoint_variants(d: &LinkDiagram, cap: usize) -> Option<Vec<LinkDiagram>> {
    let m = d.component_count();
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..m {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                let free: Vec<usize> = (0..m).filter(|i| !p.contains(i)).collect();
                free.into_iter().map(move |i| [p.clone(), vec![i]].concat())
            })
            .collect();
    }
    let choices: Vec<Vec<Option<usize>>> = d
        .components()
        .iter()
        .map(|c| if c.is_free_loop() { vec![None] } else { c.edges.iter().map(|&e| Some(e)).collect() })
        .collect();
    let total = perms.len().checked_mul(choices.iter().map(Vec::len).product())?;
    if total > cap {
        return None;
    }
    let mut out = Vec::with_capacity(total);
    for p in &perms {
        let mut picks: Vec<Vec<Option<usize>>> = vec![Vec::new()];
        for &comp in p {
            picks = picks
                .into_iter()
                .flat_map(|acc| choices[comp].iter().map(move |&b| [acc.clone(), vec![b]].concat()))
                .collect();
        }
        for bases in picks {
            out.push(d.with_basepoints(p, &bases).expect("valid base points"));
        }
    }
    Some(out)
}

/// `Δ(s^-1) = ±s^k Δ(s)` and `|Δ(1)| = 1`.
pub fn alexander_is_symmetric(delta: &LaurentPoly) -> bool {
    if delta.is_zero() {
        return false;
    }
    let mirrored = delta.invert_var(Var::S);
    let shift = delta.min_exponent(Var::S) - mirrored.min_exponent(Var::S);
    let aligned = mirrored.map_var(Var::S, Var::S, |e| e + shift);
    let symmetric = aligned == *delta || aligned == -delta.clone();
    let at_one = delta.eval_at_one();
    symmetric && (at_one == 1.into() || at_one == (-1).into())
}

fn run_check(
    check: Check,
    d: &LinkDiagram,
    inv: &Invariants,
    entry: &CorpusEntry,
    aliases: &[(usize, LinkDiagram, Invariants)],
    cfg: &VerifyConfig,
) -> thetaknot_core::Result<(bool, Vec<String>)> {
    let mut details = Vec::new();
    let n = d.crossing_count();
    let ok = match check {
        Check::ThetaJones => compare("theta_jones vs jones_unreduced", &inv.theta_jones, &inv.jones, &mut details),
        Check::ThetaHomfly => {
            let a = compare("theta_homfly vs homfly_statesum", &inv.theta_homfly, &inv.homfly_statesum, &mut details);
            let b = compare("homfly_statesum vs homfly_recursive", &inv.homfly_statesum, &inv.homfly, &mut details);
            a && b
        }
        Check::Skein => {
            let mut ok = true;
            for c in 0..n {
                let r = skein_residual(d, c, &cfg.limits)?;
                ok &= compare(&format!("skein residual at crossing {c}"), &r, &LaurentPoly::zero(), &mut details);
            }
            ok
        }
        Check::Monodromy => {
            if n > cfg.state_max {
                details.push(format!("not run above {} crossings", cfg.state_max));
                true
            } else {
                // pair_state asserts the monodromy requirement and both closed forms
                let sm = build_surface_model(d);
                let cuts = [None, sm.default_cut()];
                for idx in 0..1u64 << n {
                    let s = KauffmanState::from_index(n, idx);
                    let sc = apply_state(d, &s)?;
                    for &cut in &cuts {
                        pair_state(d, &sm, &s, &sc, cut)?;
                    }
                }
                true
            }
        }
        Check::CutInvariance => {
            let mut ok = true;
            if n <= cfg.exhaustive_max {
                for b in 0..2 * n {
                    let opts = ThetaOptions { limits: cfg.limits, cut_base_point: Some(b), ..Default::default() };
                    let v = theta_homfly(d, &opts)?.polynomial;
                    ok &= compare(&format!("theta_homfly with cut {b}"), &v, &inv.theta_homfly, &mut details);
                }
            } else {
                details.push(format!("not run above {} crossings", cfg.exhaustive_max));
            }
            ok
        }
        Check::BasepointInvariance => {
            let mut ok = true;
            match (n <= cfg.exhaustive_max).then(|| basepoint_variants(d, 20_000)).flatten() {
                Some(vs) => {
                    for (k, v) in vs.iter().enumerate() {
                        let p = homfly_recursive(v, &cfg.limits)?;
                        ok &=
                            compare(&format!("homfly_recursive, base-point choice {k}"), &p, &inv.homfly, &mut details);
                    }
                }
                None => details.push("not run: too many base-point choices".into()),
            }
            ok
        }
        Check::Aliases => {
            let mut ok = true;
            for (i, _, a) in aliases {
                for (name, (x, y)) in Invariants::NAMES.iter().zip(a.values().into_iter().zip(inv.values())) {
                    ok &= compare(&format!("alias {} {name}", i + 1), x, y, &mut details);
                }
            }
            ok
        }
        Check::Specialization => {
            let reduced = reduced_jones(&inv.theta_jones)?;
            let spec = component_sign(&JONES_CONVENTION.jones_from_homfly(&inv.theta_homfly)?, d.component_count());
            compare("theta_jones/(q + q^-1) vs specialized theta_homfly", &reduced, &spec, &mut details)
        }
        Check::AlexanderSymmetry => {
            let delta = specialize_to_alexander(&inv.homfly)?;
            if d.component_count() == 1 {
                let ok = alexander_is_symmetric(&delta);
                if !ok {
                    details.push(format!("alexander {delta} is not symmetric with |value at 1| = 1"));
                }
                ok
            } else {
                details.push("not a knot".into());
                true
            }
        }
        Check::Expected => {
            let mut ok = true;
            if let Some(j) = entry.expected_poly("jones") {
                ok &= compare("jones_unreduced vs expected", &inv.jones, &j, &mut details);
            }
            if let Some(h) = entry.expected_poly("homfly") {
                ok &= compare("homfly_recursive vs expected", &inv.homfly, &h, &mut details);
            }
            ok
        }
    };
    Ok((ok, details))
}

/// Runs `checks` on an entry. Entries or aliases over the crossing limit are skipped
/// with a reason; engine errors are reported as failed checks.
pub fn verify(entry: &CorpusEntry, checks: &BTreeSet<Check>, cfg: &VerifyConfig) -> EntryReport {
    let mut report =
        EntryReport { name: entry.name.clone(), crossings: 0, components: 0, skipped: None, checks: Vec::new() };
    let d = match entry.diagram() {
        Ok(d) => d,
        Err(e) => {
            report.checks.push(CheckResult { name: "parse".into(), passed: false, details: vec![e.to_string()] });
            return report;
        }
    };
    report.crossings = d.crossing_count();
    report.components = d.component_count();
    if d.crossing_count() > cfg.limits.max_crossings {
        report.skipped =
            Some(format!("{} crossings exceeds the limit of {}", d.crossing_count(), cfg.limits.max_crossings));
        return report;
    }
    let inv = match compute_invariants(&d, &cfg.limits) {
        Ok(v) => v,
        Err(e) => {
            report.checks.push(CheckResult { name: "invariants".into(), passed: false, details: vec![e.to_string()] });
            return report;
        }
    };
    let mut aliases = Vec::new();
    let mut alias_notes = Vec::new();
    let mut alias_failed = false;
    if checks.contains(&Check::Aliases) {
        for (i, text) in entry.aliases.iter().enumerate() {
            let a = match thetaknot_core::parse_pd(text) {
                Ok(a) => a,
                Err(e) => {
                    alias_failed = true;
                    alias_notes.push(format!("alias {}: {e}", i + 1));
                    continue;
                }
            };
            if a.crossing_count() > cfg.limits.max_crossings {
                alias_notes.push(format!("alias {} skipped: {} crossings", i + 1, a.crossing_count()));
                continue;
            }
            match compute_invariants(&a, &cfg.limits) {
                Ok(v) => aliases.push((i, a, v)),
                Err(e) => {
                    alias_failed = true;
                    alias_notes.push(format!("alias {}: {e}", i + 1));
                }
            }
        }
    }
    for &check in checks {
        let (passed, mut details) = match run_check(check, &d, &inv, entry, &aliases, cfg) {
            Ok(r) => r,
            Err(e) => (false, vec![e.to_string()]),
        };
        let passed = if check == Check::Aliases {
            details.extend(alias_notes.iter().cloned());
            passed && !alias_failed
        } else {
            passed
        };
        report.checks.push(CheckResult { name: check.name().into(), passed, details });
    }
    report
}

/// Verifies entries in parallel; reports come back in entry order.
pub fn verify_all(entries: &[CorpusEntry], checks: &BTreeSet<Check>, cfg: &VerifyConfig) -> Vec<EntryReport> {
    entries.par_iter().map(|e| verify(e, checks, cfg)).collect()
}

pub fn all_checks() -> BTreeSet<Check> {
    Check::ALL.into_iter().collect()
}

pub fn render_text(reports: &[EntryReport]) -> String {
    let mut out = String::new();
    for r in reports {
        if let Some(why) = &r.skipped {
            let _ = writeln!(out, "SKIP {} ({why})", r.name);
            continue;
        }
        let plural = |k: usize, w: &str| if k == 1 { format!("1 {w}") } else { format!("{k} {w}s") };
        let _ = writeln!(
            out,
            "{} {} ({}, {})",
            if r.passed() { "PASS" } else { "FAIL" },
            r.name,
            plural(r.crossings, "crossing"),
            plural(r.components, "component")
        );
        for c in r.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "  {} failed", c.name);
            for d in &c.details {
                let _ = writeln!(out, "    {d}");
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let skipped = reports.iter().filter(|r| r.skipped.is_some()).count();
    let _ = writeln!(out, "{} entries, {} failed, {} skipped", reports.len(), failed, skipped);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use thetaknot_core::parse_pd;

    fn entry(name: &str, pd: &str) -> CorpusEntry {
        CorpusEntry { name: name.into(), pd: pd.into(), aliases: vec![], expected: Default::default() }
    }

    #[test]
    fn unknot_passes_everything() {
        let r = verify(&entry("unknot", "U"), &all_checks(), &VerifyConfig::default());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checks.len(), Check::ALL.len());
    }

    #[test]
    fn over_limit_is_skipped() {
        let cfg = VerifyConfig { limits: Limits { max_crossings: 2 }, ..Default::default() };
        let r = verify(&entry("trefoil", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"), &all_checks(), &cfg);
        assert!(r.skipped.is_some() && r.passed());
    }

    #[test]
    fn wrong_expectation_fails_with_diff() {
        let mut e = entry("unknot", "U");
        e.expected.insert("jones".into(), "q".into());
        let r = verify(&e, &[Check::Expected].into(), &VerifyConfig::default());
        assert!(!r.passed());
        assert!(r.checks[0].details[0].contains("difference"));
    }

    #[test]
    fn mirror_jones_inverts_q() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let lim = Limits::default();
        let j = jones_unreduced_with(&d, &lim).unwrap();
        let jm = jones_unreduced_with(&d.mirror(), &lim).unwrap();
        assert_eq!(jm, j.invert_var(Var::Q));
        assert_ne!(jm, j);
    }

    #[test]
    fn variants_cover_orders_and_bases() {
        let hopf = parse_pd("X[4,1,3,2] X[2,3,1,4]").unwrap();
        assert_eq!(basepoint_variants(&hopf, 100).unwrap().len(), 2 * 2 * 2);
        assert!(basepoint_variants(&hopf, 7).is_none());
    }

    #[test]
    fn alexander_symmetry_detects() {
        assert!(alexander_is_symmetric(&LaurentPoly::parse("s^2 - 1 + s^-2").unwrap()));
        assert!(!alexander_is_symmetric(&LaurentPoly::parse("s^2 - 1").unwrap()));
        assert!(!alexander_is_symmetric(&LaurentPoly::parse("3*s^2 - 1 + 3*s^-2").unwrap()));
    }
}
