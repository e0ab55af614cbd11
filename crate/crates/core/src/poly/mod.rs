//! Graded multivariate polynomials over ℚ.
//!
//! Variables carry integer weights: `wt z_k = -k`, `wt λ_k = k`,
//! `wt ψ_I = ΣI`. All objects built elsewhere in the crate are
//! weight-homogeneous and the weight is checked, not assumed.

mod monomial;
mod polynomial;
mod var;

pub use monomial::Monomial;
pub use polynomial::{Polynomial, Weight};
pub use var::{Genus, JetIndex, Var};

/// `λ_s` as a polynomial in genus `g`, or zero when `s` is outside
/// `{4, 6, …, 4g+2}`.
pub fn lambda(g: Genus, s: i32) -> Polynomial {
    if s >= 0 && s <= u8::MAX as i32 && g.has_lambda(s as u8) {
        Polynomial::var(Var::Lambda(s as u8))
    } else {
        Polynomial::zero()
    }
}

pub fn z(k: u8) -> Polynomial {
    Polynomial::var(Var::Z(k))
}

pub fn psi(labels: &[u8]) -> Polynomial {
    Polynomial::var(Var::psi(labels).expect("odd jet labels"))
}

/// All monomials in `λ_4 … λ_{4g+2}` of exactly the given weight.
pub fn lambda_monomials(g: Genus, weight: i32) -> Vec<Monomial> {
    let labels = g.lambda_labels();
    let mut out = Vec::new();
    fn rec(labels: &[u8], i: usize, left: i32, acc: Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        if i == labels.len() || left < 0 {
            return;
        }
        let w = labels[i] as i32;
        let mut e = 0;
        while e * w <= left {
            rec(labels, i + 1, left - e * w, acc.mul(&Monomial::pow(Var::Lambda(labels[i]), e as u32)), out);
            e += 1;
        }
    }
    if weight >= 0 {
        rec(&labels, 0, weight, Monomial::one(), &mut out);
    }
    out.sort();
    out
}

/// All monomials in `z_1 … z_{2g-1}` of the given (non-positive) weight.
pub fn z_monomials(g: Genus, weight: i32) -> Vec<Monomial> {
    let labels = g.z_labels();
    let mut out = Vec::new();
    fn rec(labels: &[u8], i: usize, left: i32, acc: Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        if i == labels.len() {
            return;
        }
        let w = labels[i] as i32;
        let mut e = 0;
        while e * w <= left {
            rec(labels, i + 1, left - e * w, acc.mul(&Monomial::pow(Var::Z(labels[i]), e as u32)), out);
            e += 1;
        }
    }
    if weight <= 0 {
        rec(&labels, 0, -weight, Monomial::one(), &mut out);
    }
    out.sort();
    out
}
