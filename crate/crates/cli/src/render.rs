//! Text and JSON rendering of polynomials.

use thetaknot_core::poly::{LaurentPoly, Var};

/// Writes a doubled-exponent variable at its natural power when every exponent is
/// even; otherwise keeps the half-power variable.
pub fn collapse(p: &LaurentPoly, half: Var, whole: Var) -> LaurentPoly {
    p.halve_var(half, whole).unwrap_or_else(|| p.clone())
}

/// Variables in display order.
pub fn variable_names(p: &LaurentPoly) -> Vec<String> {
    p.variables().into_iter().map(|v| v.name()).collect()
}

/// `Δ` in `t` when the exponents of `s = t^(1/2)` allow it.
pub fn alexander_display(p: &LaurentPoly) -> LaurentPoly {
    collapse(p, Var::S, Var::T)
}
