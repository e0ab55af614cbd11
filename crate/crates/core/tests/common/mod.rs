//! Strategies, properties and independent oracles shared by the test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use heatframe::jet::{build_cole_hopf_derived, derive_l_action, jet_partial, ColeHopfSystem, JetGenerator, SignConvention};
use heatframe::operator::{DVar, DerivativeMonomial, DiffOperator};
use heatframe::poly::Weight;
use heatframe::rational::ratio;
use heatframe::{grammar, Genus, JetIndex, Polynomial, Rational, Var};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn genus(g: u8) -> Genus {
    Genus::new(g).unwrap()
}

/// Variables of genus `g`, with jet variables up to order `psi_order`.
pub fn var_pool(g: u8, psi_order: usize) -> Vec<Var> {
    let g = genus(g);
    let mut out: Vec<Var> = g.lambda_labels().into_iter().map(Var::Lambda).collect();
    out.extend(g.z_labels().into_iter().map(Var::Z));
    out.extend(JetIndex::enumerate(&g.z_labels(), psi_order).into_iter().map(Var::Psi));
    out
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn monomial(pool: Vec<Var>, max_factors: usize) -> impl Strategy<Value = Polynomial> {
    let n = pool.len();
    prop::collection::vec((0..n, 1u32..=2), 0..=max_factors).prop_map(move |fs| {
        fs.into_iter().fold(Polynomial::one(), |acc, (i, e)| &acc * &Polynomial::var(pool[i].clone()).pow(e))
    })
}

/// Sparse polynomial over `pool` with small rational coefficients.
pub fn polynomial_over(pool: Vec<Var>, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((coefficient(), monomial(pool, 3)), 0..=max_terms).prop_map(|ts| {
        ts.into_iter().fold(Polynomial::zero(), |acc, (c, m)| &acc + &(&m * &c))
    })
}

/// Polynomials in `z`, `λ` and `ψ` of genus 3.
pub fn jet_polynomial() -> impl Strategy<Value = Polynomial> {
    polynomial_over(var_pool(3, 2), 4)
}

/// Polynomials in `z`, `λ` only.
pub fn coordinate_polynomial(g: u8) -> impl Strategy<Value = Polynomial> {
    polynomial_over(var_pool(g, 0), 4)
}

fn derivative_monomial(g: u8) -> impl Strategy<Value = DerivativeMonomial> {
    let gg = genus(g);
    let mut pool: Vec<DVar> = gg.z_labels().into_iter().map(DVar::Z).collect();
    pool.extend(gg.lambda_labels().into_iter().map(DVar::Lambda));
    let n = pool.len();
    prop::collection::vec((0..n, 1u32..=2), 0..=2)
        .prop_map(move |fs| fs.into_iter().fold(DerivativeMonomial::one(), |acc, (i, e)| acc.mul(&DerivativeMonomial::pow(pool[i], e))))
}

/// Normal-ordered operator with polynomial coefficients in `z`, `λ`.
pub fn operator(g: u8) -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec((polynomial_over(var_pool(g, 0), 2), derivative_monomial(g)), 0..=3)
        .prop_map(|ts| ts.into_iter().fold(DiffOperator::zero(), |acc, (p, d)| &acc + &DiffOperator::term(p, d)))
}

/// A single term `c m ∂^α`, hence weight-homogeneous.
pub fn homogeneous_operator(g: u8) -> impl Strategy<Value = DiffOperator> {
    (coefficient(), monomial(var_pool(g, 0), 3), derivative_monomial(g)).prop_map(|(c, m, d)| DiffOperator::term(&m * &c, d))
}

pub fn systems() -> &'static [ColeHopfSystem] {
    static SYSTEMS: OnceLock<Vec<ColeHopfSystem>> = OnceLock::new();
    SYSTEMS.get_or_init(|| (1..=3).map(|g| build_cole_hopf_derived(genus(g), SignConvention::Plus).unwrap()).collect())
}

pub fn ring_axioms(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(a * &Polynomial::one()), a);
    prop_assert!((a + &(-a)).is_zero());
    prop_assert_eq!(&(a + &(-b)), &(a - b));
    Ok(())
}

pub fn canonical_roundtrip(p: &Polynomial, op: &DiffOperator) -> Result<(), TestCaseError> {
    let printed = p.to_string();
    let reparsed = grammar::parse_polynomial(&printed).map_err(|e| TestCaseError::fail(format!("{printed:?}: {e}")))?;
    prop_assert_eq!(&reparsed, p);
    prop_assert_eq!(&reparsed.to_string(), &printed);
    let spaced = printed.replace('*', " * ").replace('+', " + ");
    prop_assert_eq!(&grammar::parse_polynomial(&spaced).unwrap(), p);
    let printed = op.to_string();
    let reparsed = grammar::parse_operator(&printed).map_err(|e| TestCaseError::fail(format!("{printed:?}: {e}")))?;
    prop_assert_eq!(&reparsed, op);
    prop_assert_eq!(&reparsed.to_string(), &printed);
    Ok(())
}

pub fn antisymmetry(a: &DiffOperator, b: &DiffOperator) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.commutator(b), -b.commutator(a));
    prop_assert!(a.commutator(a).is_zero());
    Ok(())
}

pub fn weight_additivity(p: &DiffOperator, q: &DiffOperator) -> Result<(), TestCaseError> {
    let (Some(wp), Some(wq)) = (p.homogeneous_weight(), q.homogeneous_weight()) else {
        return Ok(());
    };
    let pq = p.compose(q);
    if !pq.is_zero() {
        prop_assert_eq!(pq.weight_of().unwrap(), Weight::Homogeneous(wp + wq));
    }
    let bracket = p.commutator(q);
    if !bracket.is_zero() {
        prop_assert_eq!(bracket.weight_of().unwrap(), Weight::Homogeneous(wp + wq));
    }
    for (_, m1, _) in p.flat_terms() {
        for (_, m2, _) in q.flat_terms() {
            prop_assert_eq!(m1.mul(&m2).weight(), m1.weight() + m2.weight());
        }
    }
    Ok(())
}

pub fn compose_law(a: &DiffOperator, b: &DiffOperator, f: &Polynomial) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.compose(b).apply(f), a.apply(&b.apply(f)));
    Ok(())
}

pub fn chain_rule(e: &Polynomial, f: &Polynomial, a: u8, b: u8) -> Result<(), TestCaseError> {
    prop_assert_eq!(jet_partial(a, &jet_partial(b, e)), jet_partial(b, &jet_partial(a, e)));
    prop_assert_eq!(jet_partial(a, &(e * f)), &(&jet_partial(a, e) * f) + &(e * &jet_partial(a, f)));
    Ok(())
}

/// Every frame field and every `∂_k` of a genus acts as a derivation.
pub fn leibniz(g: u8, k: usize, e: &Polynomial, f: &Polynomial) -> Result<(), TestCaseError> {
    let sys = &systems()[g as usize - 1];
    let gens = [JetGenerator::Frame(2 * k as u8), JetGenerator::Partial(genus(g).z_labels()[k % g as usize])];
    for gen in gens {
        let d = sys.derivation(gen).unwrap();
        let lhs = d.apply(&(e * f)).unwrap();
        let rhs = &(&d.apply(e).unwrap() * f) + &(e * &d.apply(f).unwrap());
        prop_assert_eq!(lhs, rhs, "{}", gen);
    }
    Ok(())
}

/// `L_{2k}` has `λ`-only coefficients, so it commutes with `∂_j` on `ψ`.
pub fn transport(g: u8, k: usize, labels: &[u8], j: u8) -> Result<(), TestCaseError> {
    let gg = genus(g);
    let idx = JetIndex::new(labels.to_vec()).unwrap();
    let base = derive_l_action(gg, k, &idx, SignConvention::Plus).unwrap();
    let up = derive_l_action(gg, k, &idx.with(j), SignConvention::Plus).unwrap();
    prop_assert_eq!(up, jet_partial(j, &base));
    let w = 2 * k as i32 + idx.weight();
    prop_assert!(base.is_homogeneous_of(w), "weight of L{} psi{:?} is not {}", 2 * k, labels, w);
    Ok(())
}

pub fn genus_and_index() -> impl Strategy<Value = (u8, usize, Vec<u8>, u8)> {
    (1u8..=3).prop_flat_map(|g| {
        let labels = genus(g).z_labels();
        let n = labels.len();
        let pick = prop::sample::select(labels.clone());
        (Just(g), 0..2 * n, prop::collection::vec(prop::sample::select(labels), 1..=3), pick)
    })
}

/// `a_{m,n}` in `σ = Σ a_{m,n} (g_2/2)^m (2 g_3)^n z^{4m+6n+1}/(4m+6n+1)!`,
/// by the classical three-term recursion.
pub fn weierstrass_coefficients(max_degree: u32) -> BTreeMap<(u32, u32), Rational> {
    let mut a: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
    a.insert((0, 0), ratio(1, 1));
    let get = |a: &BTreeMap<(i64, i64), Rational>, m: i64, n: i64| a.get(&(m, n)).cloned().unwrap_or_else(|| ratio(0, 1));
    for total in 1..=(max_degree as i64) {
        // a_{m+1,n-1} has the same total, so n runs upwards
        for n in 0..=total {
            let m = total - n;
            if 4 * m + 6 * n + 1 > max_degree as i64 {
                continue;
            }
            let v = ratio(3 * (m + 1), 1) * get(&a, m + 1, n - 1) + ratio(16 * (n + 1), 3) * get(&a, m - 2, n + 1)
                - ratio((2 * m + 3 * n - 1) * (4 * m + 6 * n - 1), 3) * get(&a, m - 1, n);
            a.insert((m, n), v);
        }
    }
    a.into_iter().map(|((m, n), v)| ((m as u32, n as u32), v)).collect()
}

/// The genus-one sigma series in `λ_4 = -g_2/4`, `λ_6 = -g_3/4`, up to `z^max_degree`.
pub fn weierstrass_sigma(max_degree: u32) -> Polynomial {
    let mut out = Polynomial::zero();
    for ((m, n), a) in weierstrass_coefficients(max_degree) {
        let d = 4 * m + 6 * n + 1;
        if d > max_degree {
            continue;
        }
        let fact: BigInt = (1..=d).map(BigInt::from).product();
        // (g2/2)^m (2 g3)^n = (-2 λ4)^m (-8 λ6)^n
        let scale = Rational::new(BigInt::from(-2).pow(m) * BigInt::from(-8).pow(n), fact);
        let mono = &(&Polynomial::var(Var::Lambda(4)).pow(m) * &Polynomial::var(Var::Lambda(6)).pow(n)) * &Polynomial::var(Var::Z(1)).pow(d);
        out += &mono * &(a * scale);
    }
    out
}

/// `c_0 z_3 + c_1 z_1^3` with small integer coefficients, tested against the
/// λ-free parts of `H_2`, `H_4` (`1/2 ∂_1^2 + z_1 ∂_3` and `∂_1 ∂_3`) by
/// hand-rolled integer arithmetic on `z_1^a z_3^b`.
pub fn brute_force_lambda_free() -> Vec<(i64, i64)> {
    type P = BTreeMap<(u32, u32), i64>;
    let d1 = |p: &P| -> P { p.iter().filter(|((a, _), _)| *a > 0).map(|(&(a, b), &c)| ((a - 1, b), c * a as i64)).collect() };
    let d3 = |p: &P| -> P { p.iter().filter(|((_, b), _)| *b > 0).map(|(&(a, b), &c)| ((a, b - 1), c * b as i64)).collect() };
    let add = |mut p: P, q: P| -> P {
        for (k, v) in q {
            *p.entry(k).or_default() += v;
        }
        p.retain(|_, v| *v != 0);
        p
    };
    let mut hits = Vec::new();
    for c0 in -3..=3i64 {
        for c1 in -3..=3i64 {
            if (c0, c1) == (0, 0) {
                continue;
            }
            let f: P = [((0, 1), c0), ((3, 0), c1)].into_iter().filter(|(_, c)| *c != 0).collect();
            // 2 H_2 = d1^2 + 2 z1 d3
            let z1d3: P = d3(&f).into_iter().map(|((a, b), c)| ((a + 1, b), 2 * c)).collect();
            let h2 = add(d1(&d1(&f)), z1d3);
            let h4 = d1(&d3(&f));
            if h2.is_empty() && h4.is_empty() {
                hits.push((c0, c1));
            }
        }
    }
    hits
}
