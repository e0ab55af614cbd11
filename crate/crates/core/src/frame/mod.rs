//! The nonholonomic frame `{L_{2k}}`, the heat operators
//! `Q_{2k} = L_{2k} − H_{2k}` and the checks of their Lie algebra.

mod checks;
mod sufficiency;
pub mod tables;

use std::fmt;

use crate::error::Error;
use crate::operator::{DVar, DerivativeMonomial, DiffOperator};
use crate::poly::{lambda, Genus, Polynomial};
use crate::rational::{int, ratio};

pub use checks::{
    check_isomorphism, check_polynomial_lie_axioms, check_t_against_printed, determinant, shape_check,
    verify_frame_relations, FrameKind, ShapeConstant, ShapeReport,
};
pub use sufficiency::{sufficiency_reduction, BracketExpr, Reduction, ReductionStep};

/// Symmetric `2g × 2g` matrix `T_{2k,2m}` of polynomials in `λ`,
/// indexed by the even labels `2, 4, …, 4g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMatrix {
    genus: Genus,
    entries: Vec<Vec<Polynomial>>,
}

impl TMatrix {
    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry at 0-based position.
    pub fn at(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    /// `T_{a,b}` for even labels `a, b ∈ {2, …, 4g}`.
    pub fn get(&self, a: u8, b: u8) -> &Polynomial {
        &self.entries[(a / 2 - 1) as usize][(b / 2 - 1) as usize]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::from("T = \\begin{pmatrix}\n");
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| p.to_latex()).collect();
            s.push_str("  ");
            s.push_str(&cells.join(" & "));
            s.push_str(" \\\\\n");
        }
        s.push_str("\\end{pmatrix}");
        s
    }
}

impl fmt::Display for TMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                writeln!(f, "T[{},{}] = {p}", 2 * (r + 1), 2 * (c + 1))?;
            }
        }
        Ok(())
    }
}

/// Builds `T` from the closed formula, with `λ_s ≡ 0` outside
/// `{4, …, 4g+2}` and an empty inner sum when `k ≤ 2`.
pub fn build_t(g: Genus) -> TMatrix {
    let n = 2 * g.get() as i32;
    let gg = g.get() as i64;
    let mut entries = vec![vec![Polynomial::zero(); n as usize]; n as usize];
    for k in 1..=n {
        for m in k..=n {
            let mut t = lambda(g, 2 * (k + m)).scale(&int(2 * (k + m) as i64));
            for s in 2..k {
                let c = int(2 * (k + m - 2 * s) as i64);
                t += (&lambda(g, 2 * s) * &lambda(g, 2 * (k + m - s))).scale(&c);
            }
            let c = ratio(-2 * k as i64 * (2 * gg - m as i64 + 1), 2 * gg + 1);
            t += (&lambda(g, 2 * k) * &lambda(g, 2 * m)).scale(&c);
            entries[(k - 1) as usize][(m - 1) as usize] = t.clone();
            entries[(m - 1) as usize][(k - 1) as usize] = t;
        }
    }
    TMatrix { genus: g, entries }
}

/// `L_{2k} = Σ_{s=2}^{2g+1} T_{2k+2, 2s−2} ∂/∂λ_{2s}`, for `k = 0 … 2g−1`.
pub fn build_l(g: Genus) -> Vec<DiffOperator> {
    let t = build_t(g);
    let n = 2 * g.get();
    (0..n)
        .map(|k| {
            let mut op = DiffOperator::zero();
            for s in 2..=n + 1 {
                let coef = t.get(2 * k + 2, 2 * s - 2).clone();
                op.add_term(DerivativeMonomial::pow(DVar::Lambda(2 * s), 1), coef);
            }
            op
        })
        .collect()
}

/// `{L_{2k}}`, `{H_{2k}}`, `{Q_{2k}}` for one genus; index `k` holds label `2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeatOperatorFamily {
    pub genus: Genus,
    pub l: Vec<DiffOperator>,
    pub h: Vec<DiffOperator>,
    pub q: Vec<DiffOperator>,
}

impl HeatOperatorFamily {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Same family with one `H` replaced; used to test that a corrupted
    /// transcription is caught.
    pub fn with_h(&self, k: usize, h: DiffOperator) -> HeatOperatorFamily {
        let mut fam = self.clone();
        fam.q[k] = &fam.l[k] - &h;
        fam.h[k] = h;
        fam
    }

    pub fn frame(&self, kind: FrameKind) -> &[DiffOperator] {
        match kind {
            FrameKind::L => &self.l,
            FrameKind::Q => &self.q,
        }
    }
}

/// Assembles the heat operators from the printed `H` tables.
pub fn build_q(g: Genus) -> Result<HeatOperatorFamily, Error> {
    if g.get() > 3 {
        return Err(Error::UnsupportedGenus(g.get()));
    }
    let l = build_l(g);
    let h: Vec<DiffOperator> = (0..2 * g.get())
        .map(|k| tables::heat_table(g.get(), 2 * k).expect("table for every supported genus").operator())
        .collect();
    let q = l.iter().zip(&h).map(|(l, h)| l - h).collect();
    Ok(HeatOperatorFamily { genus: g, l, h, q })
}

/// `Σ c_k X_k`.
pub fn combination(coefficients: &[Polynomial], generators: &[DiffOperator]) -> DiffOperator {
    let mut out = DiffOperator::zero();
    for (c, x) in coefficients.iter().zip(generators) {
        if !c.is_zero() {
            out = &out + &x.left_mul(c);
        }
    }
    out
}

/// Pairs `(i, j)` with `0 < i < j < 2g`, in the row order of the printed tables.
pub fn bracket_pairs(g: Genus) -> Vec<(usize, usize)> {
    let n = 2 * g.get() as usize;
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_operator, parse_polynomial};

    fn genus(g: u8) -> Genus {
        Genus::new(g).unwrap()
    }

    #[test]
    fn t_examples() {
        let t = build_t(genus(1));
        assert_eq!(t.get(2, 2), &parse_polynomial("4*l4").unwrap());
        assert_eq!(t.get(2, 4), &parse_polynomial("6*l6").unwrap());
        assert_eq!(t.get(4, 4), &parse_polynomial("-4/3*l4^2").unwrap());
        assert_eq!(build_t(genus(2)).get(4, 4), &parse_polynomial("8*l8 - 12/5*l4^2").unwrap());
        assert_eq!(build_t(genus(3)).get(4, 4), &parse_polynomial("8*l8 - 20/7*l4^2").unwrap());
    }

    #[test]
    fn l_examples() {
        let l = build_l(genus(1));
        assert_eq!(l[0], parse_operator("4*l4*d/dl4 + 6*l6*d/dl6").unwrap());
        assert_eq!(l[1], parse_operator("6*l6*d/dl4 - 4/3*l4^2*d/dl6").unwrap());
        for g in 1..=4 {
            let g = genus(g);
            let mut euler = DiffOperator::zero();
            for s in g.lambda_labels() {
                euler.add_term(DerivativeMonomial::pow(DVar::Lambda(s), 1), Polynomial::var(crate::Var::Lambda(s)).scale(&int(s as i64)));
            }
            assert_eq!(build_l(g)[0], euler);
        }
        let l6 = &build_l(genus(2))[3];
        assert_eq!(
            l6.coefficient(&DerivativeMonomial::pow(DVar::Lambda(10), 1)),
            parse_polynomial("4*l6*l10 - 8/5*l8^2").unwrap()
        );
    }

    #[test]
    fn q_examples() {
        let f1 = build_q(genus(1)).unwrap();
        assert_eq!(f1.h[0], parse_operator("z1*d/dz1 - 1").unwrap());
        let f2 = build_q(genus(2)).unwrap();
        let c = f2.h[3].coefficient(&DerivativeMonomial::one());
        assert_eq!(c.coefficient(&crate::poly::Monomial::var(crate::poly::Var::Lambda(6))), ratio(-1, 2));
        assert_eq!(c.constant_term(), int(0));
        let f3 = build_q(genus(3)).unwrap();
        let c = f3.h[5].coefficient(&DerivativeMonomial::one());
        assert_eq!(c.coefficient(&parse_polynomial("l14*z1*z3").unwrap().terms().next().unwrap().0.clone()), int(4));
        assert_eq!(build_q(genus(4)).unwrap_err(), Error::UnsupportedGenus(4));
        for fam in [f1, f2, f3] {
            for (k, q) in fam.q.iter().enumerate() {
                assert_eq!(q.homogeneous_weight(), Some(2 * k as i32));
            }
        }
    }
}
