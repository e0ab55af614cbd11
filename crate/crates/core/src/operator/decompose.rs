use std::collections::BTreeMap;

use num_traits::Zero;

use super::{DerivativeMonomial, DiffOperator};
use crate::error::Error;
use crate::linalg::{solve, Matrix};
use crate::poly::{lambda_monomials, Genus, Monomial, Polynomial};
use crate::rational::Rational;

/// `target = Σ c^k · generator_k` with `c^k ∈ ℚ[λ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDecomposition {
    pub coefficients: Vec<Polynomial>,
    pub residual: DiffOperator,
}

struct System {
    unknowns: Vec<(usize, Monomial)>,
    matrix: Matrix,
    rhs: Vec<Rational>,
}

fn build_system(target: &DiffOperator, generators: &[DiffOperator], g: Genus, weight: i32) -> Result<System, Error> {
    let mut unknowns = Vec::new();
    for (k, gen) in generators.iter().enumerate() {
        let gw = gen
            .homogeneous_weight()
            .ok_or_else(|| Error::InvalidArgument(format!("generator {k} is not homogeneous")))?;
        for m in lambda_monomials(g, weight - gw) {
            unknowns.push((k, m));
        }
    }
    let mut rows: BTreeMap<(DerivativeMonomial, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (col, (k, m)) in unknowns.iter().enumerate() {
        for (c, t, d) in generators[*k].flat_terms() {
            let key = (d, t.mul(m));
            let n = rows.len();
            let r = *rows.entry(key).or_insert(n);
            entries.push((r, col, c));
        }
    }
    let mut rhs_entries = Vec::new();
    for (c, t, d) in target.flat_terms() {
        let n = rows.len();
        let r = *rows.entry((d, t)).or_insert(n);
        rhs_entries.push((r, c));
    }
    let mut matrix = Matrix::zeros(rows.len(), unknowns.len());
    for (r, c, v) in entries {
        let cur = matrix.get(r, c) + v;
        matrix.set(r, c, cur);
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (r, v) in rhs_entries {
        rhs[r] += v;
    }
    Ok(System { unknowns, matrix, rhs })
}

/// Decomposes `target` over the free ℚ[λ]-module spanned by `generators`.
///
/// Coefficient candidates are bounded by the weight equation
/// `wt c^k = wt(target) − wt(generator_k)`, so the system is finite.
pub fn decompose(target: &DiffOperator, generators: &[DiffOperator], g: Genus) -> Result<StructureDecomposition, Error> {
    if target.is_zero() {
        return Ok(StructureDecomposition {
            coefficients: vec![Polynomial::zero(); generators.len()],
            residual: DiffOperator::zero(),
        });
    }
    let weight = target
        .homogeneous_weight()
        .ok_or_else(|| Error::InvalidArgument("target operator is not homogeneous".into()))?;
    let sys = build_system(target, generators, g, weight)?;
    let Some(sol) = solve(&sys.matrix, &sys.rhs) else {
        return Err(Error::NotInModule { residual: target.to_string() });
    };
    if !sol.kernel.is_empty() {
        return Err(Error::AmbiguousDecomposition { kernel_dim: sol.kernel.len() });
    }
    let mut coefficients = vec![Polynomial::zero(); generators.len()];
    for ((k, m), x) in sys.unknowns.iter().zip(sol.particular) {
        coefficients[*k].add_term(m.clone(), x);
    }
    let mut recombined = DiffOperator::zero();
    for (c, gen) in coefficients.iter().zip(generators) {
        recombined = &recombined + &gen.left_mul(c);
    }
    let residual = target - &recombined;
    if !residual.is_zero() {
        return Err(Error::Internal(format!("decomposition residual {residual}")));
    }
    Ok(StructureDecomposition { coefficients, residual })
}

/// Dimension of `{(c^k) : Σ c^k generator_k = 0, wt c^k = weight − wt gen_k}`.
/// Zero for every weight means the generators are ℚ[λ]-independent in that
/// degree.
pub fn kernel_dimension(generators: &[DiffOperator], g: Genus, weight: i32) -> Result<usize, Error> {
    let sys = build_system(&DiffOperator::zero(), generators, g, weight)?;
    Ok(sys.matrix.cols() - sys.matrix.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{dl, mult};
    use crate::poly::Var;
    use crate::rational::int;

    #[test]
    fn identity_case() {
        let g = Genus::new(1).unwrap();
        let l4 = Polynomial::var(Var::Lambda(4));
        let gens = vec![dl(4).left_mul(&l4), dl(6).left_mul(&Polynomial::var(Var::Lambda(6)))];
        let d = decompose(&gens[1], &gens, g).unwrap();
        assert_eq!(d.coefficients, vec![Polynomial::zero(), Polynomial::one()]);
    }

    #[test]
    fn not_in_module() {
        let g = Genus::new(1).unwrap();
        let gens = vec![dl(4).left_mul(&Polynomial::var(Var::Lambda(4)))];
        let err = decompose(&dl(6).left_mul(&Polynomial::var(Var::Lambda(6))), &gens, g).unwrap_err();
        assert!(matches!(err, Error::NotInModule { .. }));
    }

    #[test]
    fn ambiguous() {
        let g = Genus::new(1).unwrap();
        let gens = vec![mult(Polynomial::one()), mult(Polynomial::constant(int(2)))];
        let err = decompose(&mult(Polynomial::one()), &gens, g).unwrap_err();
        assert_eq!(err, Error::AmbiguousDecomposition { kernel_dim: 1 });
        assert_eq!(kernel_dimension(&gens, g, 0).unwrap(), 1);
    }
}
