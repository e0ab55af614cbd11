use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::HeatOperatorFamily;
use crate::error::Error;
use crate::operator::{decompose, DiffOperator};
use crate::poly::Polynomial;
use crate::rational::{format_rational, Rational};

/// Expression in the generators `Q_0, Q_2, Q_4`, built from brackets and
/// `ℚ[λ]`-linear combinations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    /// `Q_{2k}` by index `k`.
    Generator(usize),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
    /// `Σ c_i e_i`.
    Combination(Vec<(Polynomial, BracketExpr)>),
}

impl BracketExpr {
    pub fn evaluate(&self, ops: &[DiffOperator]) -> DiffOperator {
        match self {
            BracketExpr::Generator(k) => ops[*k].clone(),
            BracketExpr::Bracket(a, b) => a.evaluate(ops).commutator(&b.evaluate(ops)),
            BracketExpr::Combination(terms) => {
                let mut out = DiffOperator::zero();
                for (c, e) in terms {
                    out = &out + &e.evaluate(ops).left_mul(c);
                }
                out
            }
        }
    }

    /// Generators that occur as leaves.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            BracketExpr::Generator(k) => out.push(*k),
            BracketExpr::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            BracketExpr::Combination(terms) => terms.iter().for_each(|(_, e)| e.collect_leaves(out)),
        }
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Generator(k) => write!(f, "Q{}", 2 * k),
            BracketExpr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            BracketExpr::Combination(terms) => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(c, e)| match c.as_constant() {
                        Some(q) if q == Rational::from_integer(1.into()) => e.to_string(),
                        _ => format!("({c})*{e}"),
                    })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// How one higher operator is recovered from lower ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    /// Label `2k` of the recovered operator.
    pub target: u8,
    /// Labels of the bracketed pair.
    pub bracket: (u8, u8),
    /// Constant coefficient of the target in that bracket.
    pub lead: String,
    /// The step, written in terms of lower operators.
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub steps: Vec<ReductionStep>,
    /// `expressions[k]` expresses `Q_{2k}` through `Q_0, Q_2, Q_4` only.
    pub expressions: Vec<BracketExpr>,
}

impl Reduction {
    /// Evaluates every expression on `fam` and returns `Q_{2k} − expr_k`.
    pub fn residuals(&self, fam: &HeatOperatorFamily) -> Vec<DiffOperator> {
        self.expressions.iter().enumerate().map(|(k, e)| &fam.q[k] - &e.evaluate(&fam.q)).collect()
    }
}

/// Recovers every `Q_{2k}`, `k ≥ 3`, from `Q_0, Q_2, Q_4` by repeatedly
/// bracketing available operators and solving for the unique new term.
pub fn sufficiency_reduction(fam: &HeatOperatorFamily) -> Result<Reduction, Error> {
    let g = fam.genus;
    let n = fam.len();
    let base = n.min(3);
    let mut expressions: Vec<BracketExpr> = (0..base).map(BracketExpr::Generator).collect();
    let mut steps = Vec::new();
    for target in base..n {
        let mut found = None;
        'search: for i in 1..target {
            let j = target - i;
            if j <= i {
                break;
            }
            let br = fam.q[i].commutator(&fam.q[j]);
            let Ok(d) = decompose(&br, &fam.q, g) else { continue };
            if let Some(lead) = d.coefficients[target].as_constant() {
                if !lead.is_zero() && d.coefficients[target + 1..].iter().all(Polynomial::is_zero) {
                    found = Some((i, j, lead, d.coefficients));
                    break 'search;
                }
            }
        }
        let Some((i, j, lead, coeffs)) = found else {
            return Err(Error::ReductionNotFound(format!("Q{}", 2 * target)));
        };
        let inv = lead.recip();
        let mut terms = vec![(Polynomial::constant(inv.clone()), BracketExpr::Bracket(Box::new(expressions[i].clone()), Box::new(expressions[j].clone())))];
        let mut local = vec![(Polynomial::constant(inv.clone()), format!("[Q{}, Q{}]", 2 * i, 2 * j))];
        for (k, c) in coeffs.iter().enumerate().take(target) {
            if !c.is_zero() {
                let c = c.scale(&-inv.clone());
                local.push((c.clone(), format!("Q{}", 2 * k)));
                terms.push((c, expressions[k].clone()));
            }
        }
        let formula = local.iter().map(|(c, e)| format!("({c})*{e}")).collect::<Vec<_>>().join(" + ");
        steps.push(ReductionStep {
            target: 2 * target as u8,
            bracket: (2 * i as u8, 2 * j as u8),
            lead: format_rational(&lead),
            formula,
        });
        expressions.push(BracketExpr::Combination(terms));
    }
    Ok(Reduction { steps, expressions })
}
