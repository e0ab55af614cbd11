//! Logarithmic derivatives of a solution of the heat system.
//!
//! With `ψ_I = s ∂_I ln φ` the heat equations turn into a nonlinear system
//! `𝓛_{2k} ψ_j = w_{2k,j}`; the operators `𝓛_{2k}` together with the
//! partials `∂_k` act as derivations of the ring generated over `ℚ[λ]` by
//! the `ψ_I` with `|I| ≥ 2`.

mod cole_hopf;
mod derivation;
pub mod tables;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::poly::{Polynomial, Var};

pub use cole_hopf::{
    build_cole_hopf_derived, derive_l_action, diff_against_paper_tables, heat_residual_in_jets, ColeHopfSystem, DiffEntry,
    TableDiff,
};
pub use derivation::{
    closure_check, derivation_commutator, homomorphism_check, verify_jet_tables, JetDecomposition, JetDerivation, JetGenerator,
};

/// `s` in `ψ_I = s ∂_I ln φ`, uniform over all multi-indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum SignConvention {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl SignConvention {
    pub fn sign(self) -> i64 {
        match self {
            SignConvention::Plus => 1,
            SignConvention::Minus => -1,
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Plus => "+",
            SignConvention::Minus => "-",
        })
    }
}

impl FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "+" | "+1" | "plus" => Ok(SignConvention::Plus),
            "-" | "-1" | "minus" => Ok(SignConvention::Minus),
            _ => Err(Error::InvalidArgument(format!("sign convention must be + or -, got {s:?}"))),
        }
    }
}

/// `∂/∂z_k` on jet elements: `∂_k z_j = δ_{kj}`, `∂_k λ = 0`,
/// `∂_k ψ_I = ψ_{I∪k}`.
///
/// The transient log-symbols have no jet derivative and must be eliminated
/// before differentiating.
pub fn jet_partial(k: u8, e: &Polynomial) -> Polynomial {
    debug_assert!(!e.mentions(Var::is_aux), "jet_partial on an element with log-symbols");
    e.derive_with(|v| match v {
        Var::Z(j) if *j == k => Polynomial::one(),
        Var::Psi(i) => Polynomial::var(Var::Psi(i.with(k))),
        _ => Polynomial::zero(),
    })
}

/// Membership in the ring generated over `ℚ[λ]` by `ψ_I`, `|I| ≥ 2`.
pub fn in_jet_ring(e: &Polynomial) -> bool {
    !e.mentions(|v| match v {
        Var::Lambda(_) => false,
        Var::Psi(i) => i.order() < 2,
        _ => true,
    })
}
