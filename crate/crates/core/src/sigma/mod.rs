//! Weight-homogeneous formal solutions of the heat system.
//!
//! A solution of weight `-n`, `n = g(g+1)/2`, splits into strata
//! `φ = Σ_w φ_w` by λ-weight. Each `Q_{2k}` maps stratum `w` into strata
//! `≥ w`, so `Q φ = 0` is solved one stratum at a time: the unknown
//! coefficients of `φ_w` and the coefficients of a combination of the
//! partial solutions found so far span the kernel of one exact linear map.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::frame::build_q;
use crate::linalg::Matrix;
use crate::operator::DiffOperator;
use crate::poly::{lambda_monomials, z_monomials, Genus, Monomial, Polynomial, Var};
use crate::rational::Rational;

/// Sum of the weights of the `λ` factors.
pub fn lambda_weight(m: &Monomial) -> i32 {
    m.factors().iter().filter(|(v, _)| matches!(v, Var::Lambda(_))).map(|(v, e)| v.weight() * *e as i32).sum()
}

/// A solution truncated at λ-weight `max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    pub genus: Genus,
    pub max_weight: i32,
    pub value: Polynomial,
}

impl GradedSeries {
    /// Total weight `-g(g+1)/2`.
    pub fn weight(&self) -> i32 {
        -self.genus.sigma_weight()
    }

    pub fn stratum(&self, w: i32) -> Polynomial {
        self.value.filter(|m| lambda_weight(m) == w)
    }

    /// Coefficient of `z^ν λ^μ`.
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.value.coefficient(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumDimension {
    pub lambda_weight: i32,
    pub unknowns: usize,
    /// Dimension of the space of partial solutions through this stratum.
    pub kernel: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBasis {
    pub genus: Genus,
    /// Labels `2k` of the imposed operators.
    pub ops: Vec<u8>,
    pub max_weight: i32,
    /// Canonical basis; the first element is normalised at its λ-free
    /// leading monomial.
    pub series: Vec<GradedSeries>,
    pub strata: Vec<StratumDimension>,
}

/// Order of the λ-free normalisation: higher-index `z` first, so `z_1` for
/// `g = 1`, `z_3` for `g = 2` and `z_1 z_5` for `g = 3`.
fn normalization_key(g: Genus, m: &Monomial) -> (i32, Monomial, Vec<std::cmp::Reverse<u32>>) {
    let (z_part, l_part) = m.split(|v| matches!(v, Var::Z(_)));
    let key = g.z_labels().iter().rev().map(|k| std::cmp::Reverse(z_part.exponent(&Var::Z(*k)))).collect();
    (lambda_weight(m), l_part, key)
}

/// Solves `Q_{2k} φ = 0` for the labels in `ops` up to λ-weight `max_weight`.
pub fn kernel_basis(g: Genus, ops: &[u8], max_weight: i32) -> Result<SolutionBasis, Error> {
    let fam = build_q(g)?;
    if !ops.contains(&0) {
        return Err(Error::InvalidArgument("the operator set must contain Q0".into()));
    }
    let mut operators: Vec<&DiffOperator> = Vec::new();
    for &k in ops {
        if k % 2 != 0 || (k / 2) as usize >= fam.len() {
            return Err(Error::InvalidArgument(format!("no operator Q{k} in genus {g}")));
        }
        operators.push(&fam.q[(k / 2) as usize]);
    }
    if max_weight < 0 {
        return Err(Error::InvalidArgument("max weight must be non-negative".into()));
    }
    let n = g.sigma_weight();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut strata = Vec::new();
    for w in 0..=max_weight {
        if lambda_monomials(g, w).is_empty() {
            continue;
        }
        let mut unknowns = Vec::new();
        for l in lambda_monomials(g, w) {
            for z in z_monomials(g, -n - w) {
                unknowns.push(l.mul(&z));
            }
        }
        let columns: Vec<Result<Vec<Polynomial>, Error>> = unknowns
            .par_iter()
            .map(|m| {
                let p = Polynomial::term(Rational::from_integer(1.into()), m.clone());
                operators.iter().map(|q| restrict(&q.apply(&p), w, true)).collect()
            })
            .chain(basis.par_iter().map(|b| operators.iter().map(|q| restrict(&q.apply(b), w, false)).collect()))
            .collect();
        let columns: Vec<Vec<Polynomial>> = columns.into_iter().collect::<Result<_, _>>()?;
        let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
        for col in &columns {
            for (i, p) in col.iter().enumerate() {
                for (m, _) in p.terms() {
                    let next = rows.len();
                    rows.entry((i, m.clone())).or_insert(next);
                }
            }
        }
        let mut a = Matrix::zeros(rows.len(), columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                for (m, coef) in p.terms() {
                    a.set(rows[&(i, m.clone())], c, coef.clone());
                }
            }
        }
        let kernel = a.kernel();
        let u = unknowns.len();
        let next: Vec<Polynomial> = kernel
            .iter()
            .map(|v| {
                let mut p = Polynomial::zero();
                for (b, t) in basis.iter().zip(&v[u..]) {
                    if !t.is_zero() {
                        p += b.scale(t);
                    }
                }
                for (m, x) in unknowns.iter().zip(&v[..u]) {
                    if !x.is_zero() {
                        p.add_term(m.clone(), x.clone());
                    }
                }
                p
            })
            .collect();
        if w == 0 && next.is_empty() {
            return Err(Error::EmptyKernel);
        }
        basis = next;
        strata.push(StratumDimension { lambda_weight: w, unknowns: u, kernel: basis.len() });
    }
    let series = canonical(g, basis).into_iter().map(|value| GradedSeries { genus: g, max_weight, value }).collect();
    Ok(SolutionBasis { genus: g, ops: ops.to_vec(), max_weight, series, strata })
}

/// Terms of λ-weight exactly `w`. With `strict`, a term of lower λ-weight
/// would break the triangular structure and is reported.
fn restrict(p: &Polynomial, w: i32, strict: bool) -> Result<Polynomial, Error> {
    if strict {
        if let Some((m, _)) = p.terms().find(|(m, _)| lambda_weight(m) < w) {
            return Err(Error::Internal(format!("operator lowers λ-weight: {m}")));
        }
    }
    Ok(p.filter(|m| lambda_weight(m) == w))
}

/// Reduced echelon form of the basis in the normalisation order.
fn canonical(g: Genus, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut monomials: Vec<Monomial> = basis.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monomials.sort_by_key(|m| normalization_key(g, m));
    monomials.dedup();
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut a = Matrix::zeros(basis.len(), monomials.len());
    for (r, p) in basis.iter().enumerate() {
        for (m, c) in p.terms() {
            a.set(r, index[m], c.clone());
        }
    }
    let pivots = a.rref();
    (0..pivots.len())
        .map(|r| {
            let mut p = Polynomial::zero();
            for (c, m) in monomials.iter().enumerate() {
                if !a.get(r, c).is_zero() {
                    p.add_term(m.clone(), a.get(r, c).clone());
                }
            }
            p
        })
        .collect()
}

/// `Q_{2k} s` on the strata that the truncation determines exactly.
pub fn residual(s: &GradedSeries, k: usize) -> Result<Polynomial, Error> {
    let fam = build_q(s.genus)?;
    let q = fam.q.get(k).ok_or_else(|| Error::InvalidArgument(format!("no operator Q{} in genus {}", 2 * k, s.genus)))?;
    Ok(q.apply(&s.value).filter(|m| lambda_weight(m) <= s.max_weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_polynomial;

    fn genus(g: u8) -> Genus {
        Genus::new(g).unwrap()
    }

    #[test]
    fn genus_one_leading_terms() {
        let b = kernel_basis(genus(1), &[0, 2], 8).unwrap();
        assert_eq!(b.series.len(), 1);
        let expected = parse_polynomial("z1 + 1/60*l4*z1^5 + 1/210*l6*z1^7 - 1/10080*l4^2*z1^9").unwrap();
        assert_eq!(b.series[0].value, expected);
    }

    #[test]
    fn genus_two_lambda_free() {
        let b = kernel_basis(genus(2), &[0, 2, 4], 0).unwrap();
        assert_eq!(b.series.len(), 1);
        assert_eq!(b.series[0].value, parse_polynomial("z3 - 1/3*z1^3").unwrap());
    }

    #[test]
    fn needs_q0() {
        assert!(kernel_basis(genus(1), &[2], 4).is_err());
        assert!(kernel_basis(genus(1), &[0, 6], 4).is_err());
    }

    #[test]
    fn residual_vanishes() {
        let b = kernel_basis(genus(1), &[0, 2], 10).unwrap();
        for k in 0..2 {
            assert!(residual(&b.series[0], k).unwrap().is_zero());
        }
    }
}
