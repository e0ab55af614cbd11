//! Normal-ordered differential operators in `∂_z`, `∂_λ` with polynomial
//! coefficients standing to the left of the derivatives.

mod decompose;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::Error;
use crate::poly::{Monomial, Polynomial, Var, Weight};
use crate::rational::{binomial, format_rational, int, Rational};

pub use decompose::{decompose, kernel_dimension, StructureDecomposition};

/// A derivative symbol: `∂_{z_k}` (weight `+k`) or `∂_{λ_k}` (weight `-k`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum DVar {
    Z(u8),
    Lambda(u8),
}

impl DVar {
    pub fn weight(self) -> i32 {
        match self {
            DVar::Z(k) => k as i32,
            DVar::Lambda(k) => -(k as i32),
        }
    }

    /// The coordinate this symbol differentiates.
    pub fn coordinate(self) -> Var {
        match self {
            DVar::Z(k) => Var::Z(k),
            DVar::Lambda(k) => Var::Lambda(k),
        }
    }
}

impl fmt::Display for DVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DVar::Z(k) => write!(f, "d/dz{k}"),
            DVar::Lambda(k) => write!(f, "d/dl{k}"),
        }
    }
}

/// `∂^α`, exponents positive, z-derivatives first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct DerivativeMonomial(Vec<(DVar, u32)>);

impl DerivativeMonomial {
    pub fn one() -> Self {
        DerivativeMonomial(Vec::new())
    }

    pub fn pow(d: DVar, e: u32) -> Self {
        if e == 0 {
            DerivativeMonomial::one()
        } else {
            DerivativeMonomial(vec![(d, e)])
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (DVar, u32)>>(it: I) -> Self {
        let mut m = BTreeMap::new();
        for (d, e) in it {
            if e > 0 {
                *m.entry(d).or_insert(0) += e;
            }
        }
        DerivativeMonomial(m.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(DVar, u32)] {
        &self.0
    }

    pub fn order(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|(d, e)| d.weight() * *e as i32).sum()
    }

    pub fn mul(&self, other: &DerivativeMonomial) -> DerivativeMonomial {
        DerivativeMonomial::from_factors(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Every `γ ≤ α` together with `α − γ` and `Π binom(α_i, γ_i)`.
    fn splittings(&self) -> Vec<(DerivativeMonomial, DerivativeMonomial, Rational)> {
        let mut out = vec![(Vec::new(), Vec::new(), int(1))];
        for &(d, e) in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for (g, r, c) in &out {
                for k in 0..=e {
                    let mut g2: Vec<(DVar, u32)> = g.clone();
                    let mut r2: Vec<(DVar, u32)> = r.clone();
                    if k > 0 {
                        g2.push((d, k));
                    }
                    if e - k > 0 {
                        r2.push((d, e - k));
                    }
                    next.push((g2, r2, c * binomial(e, k)));
                }
            }
            out = next;
        }
        out.into_iter().map(|(g, r, c)| (DerivativeMonomial(g), DerivativeMonomial(r), c)).collect()
    }

    /// Applies `∂^α` to a polynomial.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = p.clone();
        for &(d, e) in &self.0 {
            let v = d.coordinate();
            for _ in 0..e {
                if out.is_zero() {
                    return out;
                }
                out = out.partial(&v);
            }
        }
        out
    }
}

impl fmt::Display for DerivativeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (d, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{d}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Finite sum `Σ p_α(z, λ) ∂^α` in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DiffOperator {
    terms: BTreeMap<DerivativeMonomial, Polynomial>,
}

/// One serialized term: coefficient text and derivative text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorTerm {
    pub coefficient: String,
    pub derivative: String,
}

impl DiffOperator {
    pub fn zero() -> Self {
        DiffOperator::default()
    }

    pub fn identity() -> Self {
        DiffOperator::multiplication(Polynomial::one())
    }

    /// Multiplication by `p`, the operator with empty derivative monomial.
    pub fn multiplication(p: Polynomial) -> Self {
        DiffOperator::term(p, DerivativeMonomial::one())
    }

    pub fn derivative(d: DVar) -> Self {
        DiffOperator::term(Polynomial::one(), DerivativeMonomial::pow(d, 1))
    }

    pub fn term(p: Polynomial, d: DerivativeMonomial) -> Self {
        let mut op = DiffOperator::zero();
        op.add_term(d, p);
        op
    }

    pub fn add_term(&mut self, d: DerivativeMonomial, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(d.clone()).or_default();
        *entry += p;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivativeMonomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &DerivativeMonomial) -> Polynomial {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|d| d.order()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (d, p) in &self.terms {
            out.add_term(d.clone(), p.scale(c));
        }
        out
    }

    /// `p · A`, multiplying every coefficient on the left.
    pub fn left_mul(&self, p: &Polynomial) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (d, q) in &self.terms {
            out.add_term(d.clone(), p * q);
        }
        out
    }

    /// Keeps the terms whose derivative monomial satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&DerivativeMonomial) -> bool) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (d, p) in &self.terms {
            if pred(d) {
                out.add_term(d.clone(), p.clone());
            }
        }
        out
    }

    /// Normal-ordered product `self ∘ other`.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (alpha, p) in &self.terms {
            let splits = alpha.splittings();
            for (beta, q) in &other.terms {
                for (gamma, rest, c) in &splits {
                    let dq = gamma.apply(q);
                    if dq.is_zero() {
                        continue;
                    }
                    let coef = (p * &dq).scale(c);
                    out.add_term(rest.mul(beta), coef);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &DiffOperator) -> DiffOperator {
        &self.compose(other) - &other.compose(self)
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (d, p) in &self.terms {
            let df = d.apply(f);
            if !df.is_zero() {
                out += p * &df;
            }
        }
        out
    }

    pub fn weight_of(&self) -> Result<Weight, Error> {
        let mut w: Option<i32> = None;
        for (d, p) in &self.terms {
            match p.weight_of()? {
                Weight::Inhomogeneous => return Ok(Weight::Inhomogeneous),
                Weight::Homogeneous(pw) => {
                    let tw = pw + d.weight();
                    match w {
                        None => w = Some(tw),
                        Some(x) if x != tw => return Ok(Weight::Inhomogeneous),
                        _ => {}
                    }
                }
            }
        }
        w.map(Weight::Homogeneous).ok_or(Error::ZeroPolynomial)
    }

    pub fn homogeneous_weight(&self) -> Option<i32> {
        match self.weight_of() {
            Ok(Weight::Homogeneous(w)) => Some(w),
            _ => None,
        }
    }

    /// Flat `(term, derivative)` list, one entry per coefficient monomial.
    pub fn flat_terms(&self) -> Vec<(Rational, Monomial, DerivativeMonomial)> {
        let mut out = Vec::new();
        for (d, p) in &self.terms {
            for (m, c) in p.terms() {
                out.push((c.clone(), m.clone(), d.clone()));
            }
        }
        out
    }

    pub fn serialize_terms(&self) -> Vec<OperatorTerm> {
        self.terms
            .iter()
            .map(|(d, p)| OperatorTerm { coefficient: p.to_string(), derivative: d.to_string() })
            .collect()
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (d, p) in &self.terms {
            let deriv: Vec<String> = d
                .factors()
                .iter()
                .map(|(v, e)| {
                    let base = match v {
                        DVar::Z(k) => format!("\\partial_{{{k}}}"),
                        DVar::Lambda(k) => format!("\\frac{{\\partial}}{{\\partial \\lambda_{{{k}}}}}"),
                    };
                    if *e == 1 {
                        base
                    } else {
                        format!("{base}^{{{e}}}")
                    }
                })
                .collect();
            let coef = p.to_latex();
            if d.is_one() {
                parts.push(format!("\\left({coef}\\right)"));
            } else if p.as_constant().is_some_and(|c| c.is_one()) {
                parts.push(deriv.join(" "));
            } else {
                parts.push(format!("\\left({coef}\\right) {}", deriv.join(" ")));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat = self.flat_terms();
        if flat.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m, d)) in flat.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (m.is_one() && d.is_one()) {
                factors.push(format_rational(&abs));
            }
            if !m.is_one() {
                factors.push(m.to_string());
            }
            if !d.is_one() {
                factors.push(d.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &'a DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (d, p) in &rhs.terms {
            out.add_term(d.clone(), p.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &'a DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (d, p) in &rhs.terms {
            out.add_term(d.clone(), -p);
        }
        out
    }
}

impl Add for DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: DiffOperator) -> DiffOperator {
        &self + &rhs
    }
}

impl Sub for DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: DiffOperator) -> DiffOperator {
        &self - &rhs
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        self.scale(&int(-1))
    }
}

impl Neg for DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        -&self
    }
}

/// Convenience: `∂_{z_k}`.
pub fn dz(k: u8) -> DiffOperator {
    DiffOperator::derivative(DVar::Z(k))
}

/// Convenience: `∂_{λ_k}`.
pub fn dl(k: u8) -> DiffOperator {
    DiffOperator::derivative(DVar::Lambda(k))
}

/// Convenience: multiplication operator.
pub fn mult(p: Polynomial) -> DiffOperator {
    DiffOperator::multiplication(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::z;
    use crate::rational::ratio;

    fn l(k: u8) -> Polynomial {
        Polynomial::var(Var::Lambda(k))
    }

    #[test]
    fn compose_examples() {
        // ∂1 ∘ z1 = z1 ∂1 + 1
        let lhs = dz(1).compose(&mult(z(1)));
        assert_eq!(lhs, &mult(z(1)).compose(&dz(1)) + &DiffOperator::identity());
        // ∂λ4 ∘ λ4² = λ4² ∂λ4 + 2λ4
        let lhs = dl(4).compose(&mult(l(4).pow(2)));
        let rhs = &dl(4).left_mul(&l(4).pow(2)) + &mult(l(4).scale(&int(2)));
        assert_eq!(lhs, rhs);
        // ∂1² ∘ z1 = z1 ∂1² + 2 ∂1, checked by applying both sides to z1³
        let d2 = dz(1).compose(&dz(1));
        let lhs = d2.compose(&mult(z(1)));
        let rhs = &d2.left_mul(&z(1)) + &dz(1).scale(&int(2));
        assert_eq!(lhs, rhs);
        let f = z(1).pow(3);
        assert_eq!(lhs.apply(&f), d2.apply(&(&z(1) * &f)));
        assert_eq!(lhs.apply(&f), z(1).pow(2).scale(&int(12)));
    }

    #[test]
    fn commutator_examples() {
        assert!(dz(1).commutator(&dz(3)).is_zero());
        // g = 1: [L0, L2] = 2 L2
        let l0 = &dl(4).left_mul(&l(4).scale(&int(4))) + &dl(6).left_mul(&l(6).scale(&int(6)));
        let l2 = &dl(4).left_mul(&l(6).scale(&int(6))) + &dl(6).left_mul(&l(4).pow(2).scale(&ratio(-4, 3)));
        assert_eq!(l0.commutator(&l2), l2.scale(&int(2)));
    }

    #[test]
    fn apply_examples() {
        let l0 = &dl(4).left_mul(&l(4).scale(&int(4))) + &dl(6).left_mul(&l(6).scale(&int(6)));
        let f = &l(4) * &l(6);
        assert_eq!(l0.apply(&f), f.scale(&int(10)));
        let d2 = dz(1).compose(&dz(1));
        assert_eq!(d2.apply(&z(1).pow(3)), z(1).scale(&int(6)));
        // Q0 = L0 - (z1 ∂1 - 1) annihilates z1
        let h0 = &dz(1).left_mul(&z(1)) - &DiffOperator::identity();
        let q0 = &l0 - &h0;
        assert!(q0.apply(&z(1)).is_zero());
    }

    #[test]
    fn display() {
        let op = &dz(1).compose(&dz(1)).scale(&ratio(1, 2)) - &mult(&l(4) * &z(1).pow(2)).scale(&ratio(1, 6));
        assert_eq!(op.to_string(), "-1/6*l4*z1^2 + 1/2*d/dz1^2");
        assert_eq!(op.homogeneous_weight(), Some(2));
    }
}
