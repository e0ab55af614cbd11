use std::collections::HashMap;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use super::tables::{printed_m, printed_t};
use super::{bracket_pairs, build_t, combination, HeatOperatorFamily};
use crate::error::Error;
use crate::operator::{decompose, kernel_dimension, mult, DVar, DiffOperator};
use crate::poly::{lambda, lambda_monomials, Genus, Polynomial, Var};
use crate::rational::{int, Rational};
use crate::report::{timed, RelationReport};

const SUITE: &str = "frame";

/// Which framing of the Lie algebra a check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FrameKind {
    /// Vector fields `L_{2k}` in `λ`.
    L,
    /// Heat operators `Q_{2k}`.
    Q,
}

impl FrameKind {
    pub fn name(self) -> &'static str {
        match self {
            FrameKind::L => "L",
            FrameKind::Q => "Q",
        }
    }
}

/// Entry-by-entry comparison of the closed formula with the printed matrix.
pub fn check_t_against_printed(g: Genus) -> RelationReport {
    let mut report = RelationReport::new();
    let Some(printed) = printed_t(g.get()) else {
        return report;
    };
    let (t, elapsed) = timed(|| build_t(g));
    for r in 0..printed.size() {
        for c in 0..printed.size() {
            let diff = t.at(r, c) - &printed.entry(r, c);
            report.residual(
                SUITE,
                format!("g{g}/T[{},{}]", 2 * r + 2, 2 * c + 2),
                printed.locus,
                diff.to_string(),
                elapsed,
            );
        }
    }
    report
}

/// Extracted shape data of one `H_{2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeConstant {
    pub label: u8,
    /// `c_k` in `δ^{(k)} = c_k λ_{2k}`; for `k = 0` the constant itself.
    pub constant: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub report: RelationReport,
    pub constants: Vec<ShapeConstant>,
}

/// Checks that every `H_{2k}` has the heat-operator shape: constant
/// second-order part `α_{a,b} = [a + b = 2k]`, first-order part `z_a ∂_b`
/// with coefficients of degree ≤ 1 in `λ`, a `z_a z_b` potential of degree
/// ≤ 2 in `λ`, and a constant term `c_k λ_{2k}`.
pub fn shape_check(fam: &HeatOperatorFamily) -> Result<ShapeReport, Error> {
    let g = fam.genus;
    let mut out = ShapeReport::default();
    for (k, h) in fam.h.iter().enumerate() {
        let label = 2 * k as u8;
        let name = format!("H{label}");
        let violation = |term: String| Error::ShapeViolation { operator: format!("g{g}/{name}"), term };
        let (res, elapsed) = timed(|| -> Result<Rational, Error> {
            let mut delta = Polynomial::zero();
            for (d, coef) in h.terms() {
                match d.order() {
                    2 => {
                        let labels: Vec<u8> = d
                            .factors()
                            .iter()
                            .flat_map(|(v, e)| match v {
                                DVar::Z(a) => vec![*a; *e as usize],
                                DVar::Lambda(_) => vec![0; *e as usize],
                            })
                            .collect();
                        if labels.contains(&0) {
                            return Err(violation(format!("{coef}*{d}")));
                        }
                        let (a, b) = (labels[0], labels[1]);
                        let expected = if a as usize + b as usize != 2 * k {
                            int(0)
                        } else if a == b {
                            crate::rational::ratio(1, 2)
                        } else {
                            int(1)
                        };
                        if coef.as_constant() != Some(expected) {
                            return Err(violation(format!("{coef}*{d}")));
                        }
                    }
                    1 => {
                        if !matches!(d.factors()[0].0, DVar::Z(_)) {
                            return Err(violation(format!("{coef}*{d}")));
                        }
                        for (m, _) in coef.terms() {
                            let z_deg: u32 = m.factors().iter().filter(|(v, _)| matches!(v, Var::Z(_))).map(|(_, e)| e).sum();
                            let l_deg: u32 = m.factors().iter().filter(|(v, _)| matches!(v, Var::Lambda(_))).map(|(_, e)| e).sum();
                            if z_deg != 1 || l_deg > 1 || z_deg + l_deg != m.degree() {
                                return Err(violation(format!("{m}*{d}")));
                            }
                        }
                    }
                    0 => {
                        for (m, c) in coef.terms() {
                            let z_deg: u32 = m.factors().iter().filter(|(v, _)| matches!(v, Var::Z(_))).map(|(_, e)| e).sum();
                            let l_deg: u32 = m.factors().iter().filter(|(v, _)| matches!(v, Var::Lambda(_))).map(|(_, e)| e).sum();
                            if z_deg + l_deg != m.degree() {
                                return Err(violation(m.to_string()));
                            }
                            match z_deg {
                                2 if l_deg <= 2 => {}
                                0 => delta.add_term(m.clone(), c.clone()),
                                _ => return Err(violation(m.to_string())),
                            }
                        }
                    }
                    _ => return Err(violation(format!("{coef}*{d}"))),
                }
            }
            // The second-order part must contain every pair with a + b = 2k.
            for a in g.z_labels() {
                for b in g.z_labels() {
                    if a <= b && a as usize + b as usize == 2 * k {
                        let d = crate::operator::DerivativeMonomial::from_factors([(DVar::Z(a), 1), (DVar::Z(b), 1)]);
                        if h.coefficient(&d).is_zero() {
                            return Err(violation(format!("missing {d}")));
                        }
                    }
                }
            }
            if k == 0 {
                return delta.as_constant().ok_or_else(|| violation(delta.to_string()));
            }
            let l2k = lambda(g, 2 * k as i32);
            if l2k.is_zero() {
                return if delta.is_zero() { Ok(Rational::zero()) } else { Err(violation(delta.to_string())) };
            }
            let ck = delta.coefficient(l2k.terms().next().expect("nonzero").0);
            if delta != l2k.scale(&ck) {
                return Err(violation(delta.to_string()));
            }
            Ok(ck)
        });
        let ck = res?;
        out.report.boolean(SUITE, format!("g{g}/shape/{name}"), format!("heat operator shape, genus {g}"), true, "0", elapsed);
        out.constants.push(ShapeConstant { label, constant: crate::rational::format_rational(&ck) });
    }
    Ok(out)
}

fn bracket_table(ops: &[DiffOperator]) -> HashMap<(usize, usize), DiffOperator> {
    let n = ops.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.par_iter().map(|&(i, j)| ((i, j), ops[i].commutator(&ops[j]))).collect()
}

fn bracket(table: &HashMap<(usize, usize), DiffOperator>, i: usize, j: usize) -> DiffOperator {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => table[&(i, j)].clone(),
        Greater => -&table[&(j, i)],
        Equal => DiffOperator::zero(),
    }
}

/// Recomputes every bracket of one frame and compares with the printed
/// tables: Euler covariance, the structure matrix, the action on `λ`
/// against `T`, uniqueness of each decomposition, and the Jacobi identity.
pub fn verify_frame_relations(fam: &HeatOperatorFamily, kind: FrameKind) -> RelationReport {
    let g = fam.genus;
    let mut report = RelationReport::new();
    let t = build_t(g);
    {
        let ops = fam.frame(kind);
        let name = kind.name();
        let (table, elapsed) = timed(|| bracket_table(ops));
        for (k, op) in ops.iter().enumerate().skip(1) {
            let residual = &bracket(&table, 0, k) - &op.scale(&int(2 * k as i64));
            report.residual(
                SUITE,
                format!("g{g}/[{name}0,{name}{}]=2k*{name}{}", 2 * k, 2 * k),
                "Euler covariance",
                residual.to_string(),
                elapsed,
            );
        }
        if let Some(m) = printed_m(g.get()) {
            for (row, (i, j)) in bracket_pairs(g).into_iter().enumerate() {
                let coeffs = m.row(row);
                let (res, elapsed) = timed(|| {
                    let br = bracket(&table, i, j);
                    let residual = &br - &combination(&coeffs, ops);
                    let unique = decompose(&br, ops, g);
                    (residual, unique)
                });
                let (residual, unique) = res;
                let id = format!("g{g}/[{name}{},{name}{}]", 2 * i, 2 * j);
                report.residual(SUITE, id.clone(), m.locus, residual.to_string(), elapsed);
                let (ok, witness) = match unique {
                    Ok(d) if d.coefficients == coeffs => (true, "0".to_string()),
                    Ok(d) => (false, format!("{:?}", d.coefficients.iter().map(|p| p.to_string()).collect::<Vec<_>>())),
                    Err(e) => (false, e.to_string()),
                };
                report.boolean(SUITE, format!("{id}/unique"), m.locus, ok, witness, elapsed);
            }
        }
        for (k, op) in ops.iter().enumerate() {
            for s in g.lambda_labels() {
                let (residual, elapsed) = timed(|| {
                    let br = op.commutator(&mult(Polynomial::var(Var::Lambda(s))));
                    &br - &mult(t.get(2 * k as u8 + 2, s - 2).clone())
                });
                report.residual(
                    SUITE,
                    format!("g{g}/[{name}{},l{s}]=T[{},{}]", 2 * k, 2 * k + 2, s - 2),
                    "action on coordinates",
                    residual.to_string(),
                    elapsed,
                );
            }
        }
        let n = ops.len();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c)))).collect();
        let results: Vec<_> = triples
            .par_iter()
            .map(|&(a, b, c)| {
                timed(|| {
                    let x = bracket(&table, a, b).commutator(&ops[c]);
                    let y = bracket(&table, b, c).commutator(&ops[a]);
                    let z = bracket(&table, c, a).commutator(&ops[b]);
                    &(&x + &y) + &z
                })
            })
            .collect();
        for ((a, b, c), (residual, elapsed)) in triples.into_iter().zip(results) {
            report.residual(
                SUITE,
                format!("g{g}/jacobi/{name}{},{name}{},{name}{}", 2 * a, 2 * b, 2 * c),
                "Jacobi identity",
                residual.to_string(),
                elapsed,
            );
        }
    }
    report
}

/// `X(a) := [X, a]`, which must be a multiplication operator.
fn act(x: &DiffOperator, a: &Polynomial) -> Result<Polynomial, String> {
    let br = x.commutator(&mult(a.clone()));
    if br.order() != 0 {
        return Err(format!("[X, a] has order {}", br.order()));
    }
    let p = br.coefficient(&crate::operator::DerivativeMonomial::one());
    if p.mentions(|v| !matches!(v, Var::Lambda(_))) {
        return Err(format!("[X, a] = {p} leaves ℚ[λ]"));
    }
    Ok(p)
}

fn random_lambda_poly(g: Genus, rng: &mut StdRng) -> Polynomial {
    let weights: Vec<i32> = (0..=12).step_by(2).filter(|w| *w != 2).collect();
    let w = weights[rng.gen_range(0..weights.len())];
    let mut p = Polynomial::zero();
    for m in lambda_monomials(g, w) {
        p.add_term(m, int(rng.gen_range(-5..=5)));
    }
    if p.is_zero() {
        Polynomial::one()
    } else {
        p
    }
}

/// Lie–Rinehart and polynomial-Lie-algebra axioms for one framing over
/// `A = ℚ[λ]`, on `samples` random homogeneous elements of `A`.
pub fn check_polynomial_lie_axioms(fam: &HeatOperatorFamily, kind: FrameKind, samples: usize, seed: u64) -> RelationReport {
    let g = fam.genus;
    let ops = fam.frame(kind);
    let name = kind.name();
    let mut report = RelationReport::new();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut derivation_failures = Vec::new();
    let mut compat_failures = Vec::new();
    let mut grading_failures = Vec::new();
    let ((), elapsed) = timed(|| {
        for _ in 0..samples {
            let a = random_lambda_poly(g, &mut rng);
            let b = random_lambda_poly(g, &mut rng);
            let i = rng.gen_range(0..ops.len());
            let j = rng.gen_range(0..ops.len());
            let (x, y) = (&ops[i], &ops[j]);
            match (act(x, &(&a * &b)), act(x, &a), act(x, &b)) {
                (Ok(xab), Ok(xa), Ok(xb)) => {
                    let r = &xab - &(&(&xa * &b) + &(&a * &xb));
                    if !r.is_zero() {
                        derivation_failures.push(format!("{name}{}: {r}", 2 * i));
                    }
                    // [X, aY] = X(a) Y + a [X, Y]
                    let lhs = x.commutator(&y.left_mul(&a));
                    let rhs = &y.left_mul(&xa) + &x.commutator(y).left_mul(&a);
                    let r = &lhs - &rhs;
                    if !r.is_zero() {
                        compat_failures.push(format!("[{name}{},a{name}{}]: {r}", 2 * i, 2 * j));
                    }
                    // (aX)(b) = a X(b)
                    match act(&x.left_mul(&a), &b) {
                        Ok(axb) if axb == &a * &xb => {}
                        Ok(axb) => compat_failures.push(format!("(a{name}{})(b): {}", 2 * i, &axb - &(&a * &xb))),
                        Err(e) => compat_failures.push(e),
                    }
                    // wt X_i(b) = wt b + 2i
                    if let (Some(wb), false) = (homogeneous(&b), xb.is_zero()) {
                        if !xb.is_homogeneous_of(wb + 2 * i as i32) {
                            grading_failures.push(format!("wt {name}{}({b})", 2 * i));
                        }
                    }
                    let ax = x.left_mul(&a);
                    if let (Some(wa), Some(wax)) = (homogeneous(&a), ax.homogeneous_weight()) {
                        if wax != wa + 2 * i as i32 {
                            grading_failures.push(format!("wt a*{name}{}", 2 * i));
                        }
                    }
                }
                (r1, r2, r3) => {
                    for e in [r1.err(), r2.err(), r3.err()].into_iter().flatten() {
                        derivation_failures.push(e);
                    }
                }
            }
        }
    });
    let join = |v: &[String]| if v.is_empty() { "0".to_string() } else { v.join("; ") };
    report.boolean(SUITE, format!("g{g}/{name}/derivation"), "acts on A by derivations", derivation_failures.is_empty(), join(&derivation_failures), elapsed);
    report.boolean(SUITE, format!("g{g}/{name}/compatibility"), "Lie-Rinehart compatibility", compat_failures.is_empty(), join(&compat_failures), elapsed);
    // Graded Lie algebra: [X_i, X_j] has weight 2i + 2j.
    let (bad, elapsed2) = timed(|| {
        let mut bad = grading_failures.clone();
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                let br = ops[i].commutator(&ops[j]);
                if !br.is_zero() && br.homogeneous_weight() != Some(2 * (i + j) as i32) {
                    bad.push(format!("wt [{name}{},{name}{}]", 2 * i, 2 * j));
                }
            }
        }
        bad
    });
    report.boolean(SUITE, format!("g{g}/{name}/grading"), "grading consistency", bad.is_empty(), join(&bad), elapsed + elapsed2);
    // Freeness: det of the λ-derivative coefficient matrix is a nonzero
    // polynomial, and no ℚ[λ]-relation exists in low weights.
    let (free, elapsed) = timed(|| {
        let rows: Vec<Vec<Polynomial>> = ops
            .iter()
            .map(|op| {
                g.lambda_labels()
                    .into_iter()
                    .map(|s| op.coefficient(&crate::operator::DerivativeMonomial::pow(DVar::Lambda(s), 1)))
                    .collect()
            })
            .collect();
        let det = determinant(&rows);
        let max_w = 2 * (2 * g.get() as i32 - 1) + 8;
        let kernels: Vec<(i32, usize)> = (0..=max_w)
            .step_by(2)
            .map(|w| (w, kernel_dimension(ops, g, w).unwrap_or(usize::MAX)))
            .filter(|(_, d)| *d != 0)
            .collect();
        (det, kernels)
    });
    let (det, kernels) = free;
    report.boolean(
        SUITE,
        format!("g{g}/{name}/free"),
        "free module over ℚ[λ]",
        !det.is_zero() && kernels.is_empty(),
        if kernels.is_empty() { format!("det = {det}") } else { format!("relations at weights {kernels:?}") },
        elapsed,
    );
    report
}

fn homogeneous(p: &Polynomial) -> Option<i32> {
    match p.weight_of() {
        Ok(crate::poly::Weight::Homogeneous(w)) => Some(w),
        _ => None,
    }
}

/// Determinant of a square polynomial matrix by cofactor expansion with
/// memoised minors.
pub fn determinant(rows: &[Vec<Polynomial>]) -> Polynomial {
    let n = rows.len();
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    fn minor(rows: &[Vec<Polynomial>], r: usize, cols: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if r == rows.len() {
            return Polynomial::one();
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero();
        let mut sign = 1i64;
        for c in 0..rows.len() {
            if cols & (1 << c) != 0 {
                continue;
            }
            if !rows[r][c].is_zero() {
                let sub = minor(rows, r + 1, cols | (1 << c), memo);
                acc += (&rows[r][c] * &sub).scale(&int(sign));
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    if n == 0 {
        return Polynomial::one();
    }
    minor(rows, 0, 0, &mut memo)
}

/// Extracts the structure polynomials `c_{i,j}^k` and `v_k^q` of both
/// framings and checks that they coincide.
pub fn check_isomorphism(fam: &HeatOperatorFamily) -> RelationReport {
    let g = fam.genus;
    let mut report = RelationReport::new();
    let n = fam.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| {
            timed(|| {
                let cl = decompose(&fam.l[i].commutator(&fam.l[j]), &fam.l, g);
                let cq = decompose(&fam.q[i].commutator(&fam.q[j]), &fam.q, g);
                (cl, cq)
            })
        })
        .collect();
    for ((i, j), ((cl, cq), elapsed)) in pairs.into_iter().zip(results) {
        let id = format!("g{g}/c[{},{}]", 2 * i, 2 * j);
        match (cl, cq) {
            (Ok(a), Ok(b)) => {
                let diffs: Vec<String> = a
                    .coefficients
                    .iter()
                    .zip(&b.coefficients)
                    .map(|(x, y)| x - y)
                    .filter(|d| !d.is_zero())
                    .map(|d| d.to_string())
                    .collect();
                report.boolean(SUITE, id, "structure polynomials of both framings", diffs.is_empty(), if diffs.is_empty() { "0".into() } else { diffs.join("; ") }, elapsed);
            }
            (a, b) => {
                let msg = format!("L: {:?}; Q: {:?}", a.err(), b.err());
                report.boolean(SUITE, id, "structure polynomials of both framings", false, msg, elapsed);
            }
        }
    }
    let t = build_t(g);
    for k in 0..n {
        for q in g.lambda_labels() {
            let (res, elapsed) = timed(|| {
                let lam = mult(Polynomial::var(Var::Lambda(q)));
                let vl = fam.l[k].commutator(&lam);
                let vq = fam.q[k].commutator(&lam);
                let expected = mult(t.get(2 * k as u8 + 2, q - 2).clone());
                (&vl - &vq, &vl - &expected)
            });
            let (dlq, dlt) = res;
            report.boolean(
                SUITE,
                format!("g{g}/v[{},{q}]", 2 * k),
                "action on coordinates of both framings",
                dlq.is_zero() && dlt.is_zero(),
                if dlq.is_zero() && dlt.is_zero() { "0".to_string() } else { format!("L-Q: {dlq}; L-T: {dlt}") },
                elapsed,
            );
        }
    }
    report
}
