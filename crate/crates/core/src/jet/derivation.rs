use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use super::cole_hopf::ColeHopfSystem;
use super::tables::{corrections, partial_brackets};
use super::{in_jet_ring, jet_partial};
use crate::error::Error;
use crate::frame::{combination, tables::printed_m};
use crate::operator::{decompose, DVar, DerivativeMonomial, DiffOperator};
use crate::poly::{Genus, JetIndex, Polynomial, Var};
use crate::rational::int;
use crate::report::{timed, RelationReport};

const SUITE: &str = "jets";

/// `L_{2k} ln φ` rewritten in the `ψ`, and the resulting `L_{2k} ψ_I`.
pub(crate) struct LogImage {
    sign: i64,
    lambda: Polynomial,
    cache: Mutex<HashMap<JetIndex, Polynomial>>,
}

impl LogImage {
    pub(crate) fn new(sign: i64, lambda: Polynomial) -> Self {
        LogImage { sign, lambda, cache: Mutex::new(HashMap::new()) }
    }

    /// `L ψ_I = s ∂_I (L ln φ)`, built one index at a time.
    pub(crate) fn of_psi(&self, i: &JetIndex) -> Polynomial {
        if let Some(p) = self.cache.lock().expect("cache lock").get(i) {
            return p.clone();
        }
        let value = match i.split_first() {
            (k, None) => jet_partial(k, &self.lambda).scale(&int(self.sign)),
            (k, Some(rest)) => jet_partial(k, &self.of_psi(&rest)),
        };
        self.cache.lock().expect("cache lock").insert(i.clone(), value.clone());
        value
    }
}

/// A derivation of the ring generated by `z`, `λ` and all `ψ_I`:
/// `D = V_λ + Σ c_a ∂_{z_a}`, acting on `ψ_I` by `V_λ ψ_I + Σ c_a ψ_{I∪a}`.
/// Without a log image, `V_λ ψ_I` is taken to be zero.
#[derive(Clone)]
pub struct JetDerivation {
    genus: Genus,
    lambda_part: DiffOperator,
    z_part: BTreeMap<u8, Polynomial>,
    log_image: Option<Arc<LogImage>>,
}

impl fmt::Debug for JetDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetDerivation")
            .field("genus", &self.genus)
            .field("lambda_part", &self.lambda_part.to_string())
            .field("z_part", &self.z_operator().to_string())
            .field("on_solutions", &self.log_image.is_some())
            .finish()
    }
}

impl JetDerivation {
    /// `∂/∂z_k`.
    pub fn partial(g: Genus, k: u8) -> Self {
        JetDerivation {
            genus: g,
            lambda_part: DiffOperator::zero(),
            z_part: BTreeMap::from([(k, Polynomial::one())]),
            log_image: None,
        }
    }

    pub(crate) fn frame(g: Genus, lambda_part: DiffOperator, z_part: BTreeMap<u8, Polynomial>, log_image: Arc<LogImage>) -> Self {
        JetDerivation { genus: g, lambda_part, z_part, log_image: Some(log_image) }
    }

    /// Same vector field acting on `ψ` through its `∂_z` part only.
    pub fn free(&self) -> Self {
        JetDerivation { log_image: None, ..self.clone() }
    }

    pub fn lambda_part(&self) -> &DiffOperator {
        &self.lambda_part
    }

    pub fn z_coefficient(&self, a: u8) -> Polynomial {
        self.z_part.get(&a).cloned().unwrap_or_default()
    }

    /// `Σ c_a ∂/∂z_a`.
    pub fn z_operator(&self) -> DiffOperator {
        let mut op = DiffOperator::zero();
        for (a, c) in &self.z_part {
            op.add_term(DerivativeMonomial::pow(DVar::Z(*a), 1), c.clone());
        }
        op
    }

    pub fn on_var(&self, v: &Var) -> Polynomial {
        match v {
            Var::Z(a) => self.z_coefficient(*a),
            Var::Lambda(_) => self.lambda_part.apply(&Polynomial::var(v.clone())),
            Var::Psi(i) => {
                let mut out = match &self.log_image {
                    Some(img) => img.of_psi(i),
                    None => Polynomial::zero(),
                };
                for (a, c) in &self.z_part {
                    out += c * &Polynomial::var(Var::Psi(i.with(*a)));
                }
                out
            }
            Var::LnPhi | Var::LnPhiImage(_) => Polynomial::zero(),
        }
    }

    pub fn apply(&self, e: &Polynomial) -> Result<Polynomial, Error> {
        if e.mentions(Var::is_aux) {
            return Err(Error::Internal(format!("log-symbol in jet element {e}")));
        }
        Ok(e.derive_with(|v| self.on_var(v)))
    }
}

/// Names one generator of the derivation algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum JetGenerator {
    /// `𝓛_{2k}` by label `2k`.
    Frame(u8),
    /// `∂_k`.
    Partial(u8),
}

impl fmt::Display for JetGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetGenerator::Frame(k) => write!(f, "cL{k}"),
            JetGenerator::Partial(k) => write!(f, "d{k}"),
        }
    }
}

/// `[a, b] = Σ p_k 𝓛_{2k} + Σ q_j ∂_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetDecomposition {
    pub frame: Vec<Polynomial>,
    pub partial: Vec<Polynomial>,
}

fn bracket_on(a: &JetDerivation, b: &JetDerivation, v: &Var) -> Result<Polynomial, Error> {
    Ok(&a.apply(&b.on_var(v))? - &b.apply(&a.on_var(v))?)
}

/// Computes `[a, b]` as a derivation, reads off its decomposition over
/// `{𝓛_{2k}, ∂_j}` from its action on `λ` and `z`, and certifies it on
/// every `ψ_I` with `|I| ≤ max_order`.
pub fn derivation_commutator(
    sys: &ColeHopfSystem,
    a: JetGenerator,
    b: JetGenerator,
    max_order: usize,
) -> Result<JetDecomposition, Error> {
    let g = sys.genus();
    let (da, db) = (sys.derivation(a)?, sys.derivation(b)?);
    let mut field = DiffOperator::zero();
    for s in g.lambda_labels() {
        let c = bracket_on(&da, &db, &Var::Lambda(s))?;
        if c.mentions(|v| !matches!(v, Var::Lambda(_))) {
            return Err(Error::MismatchBeyondTables(format!("[{a},{b}](l{s}) = {c} leaves the coefficient ring")));
        }
        field.add_term(DerivativeMonomial::pow(DVar::Lambda(s), 1), c);
    }
    let lframe: Vec<DiffOperator> = sys.frame().iter().map(|d| d.lambda_part().clone()).collect();
    let frame = decompose(&field, &lframe, g)?.coefficients;
    let mut partial = Vec::new();
    for a_label in g.z_labels() {
        let mut q = bracket_on(&da, &db, &Var::Z(a_label))?;
        for (p, d) in frame.iter().zip(sys.frame()) {
            q -= p * &d.z_coefficient(a_label);
        }
        partial.push(q);
    }
    let rhs = |v: &Var| -> Polynomial {
        let mut out = Polynomial::zero();
        for (p, d) in frame.iter().zip(sys.frame()) {
            if !p.is_zero() {
                out += p * &d.on_var(v);
            }
        }
        for (q, j) in partial.iter().zip(g.z_labels()) {
            if !q.is_zero() {
                out += q * &JetDerivation::partial(g, j).on_var(v);
            }
        }
        out
    };
    let indices = JetIndex::enumerate(&g.z_labels(), max_order);
    let failure = indices.par_iter().find_map_first(|i| {
        let v = Var::Psi(i.clone());
        match bracket_on(&da, &db, &v) {
            Ok(lhs) => {
                let r = &lhs - &rhs(&v);
                (!r.is_zero()).then(|| format!("[{a},{b}] on psi{i}: residual {r}"))
            }
            Err(e) => Some(e.to_string()),
        }
    });
    if let Some(msg) = failure {
        return Err(Error::MismatchBeyondTables(msg));
    }
    Ok(JetDecomposition { frame, partial })
}

/// One printed bracket relation of the derivation algebra.
pub struct JetRelation {
    pub left: JetGenerator,
    pub right: JetGenerator,
    pub expected: JetDecomposition,
    pub locus: String,
}

/// Every printed relation for genus `g`: Euler covariance, commuting
/// partials, `[∂_k, 𝓛_{2s}]` and `[𝓛_{2i}, 𝓛_{2j}]`.
pub fn printed_relations(g: Genus) -> Vec<JetRelation> {
    let n = 2 * g.get() as usize;
    let labels = g.z_labels();
    let zero_frame = || vec![Polynomial::zero(); n];
    let zero_partial = || vec![Polynomial::zero(); labels.len()];
    let locus = format!("derivation algebra, genus {g}");
    let mut out = Vec::new();
    for k in 1..n {
        let mut frame = zero_frame();
        frame[k] = Polynomial::constant(int(2 * k as i64));
        out.push(JetRelation {
            left: JetGenerator::Frame(0),
            right: JetGenerator::Frame(2 * k as u8),
            expected: JetDecomposition { frame, partial: zero_partial() },
            locus: locus.clone(),
        });
    }
    for (idx, &k) in labels.iter().enumerate() {
        let mut partial = zero_partial();
        partial[idx] = Polynomial::constant(int(k as i64));
        out.push(JetRelation {
            left: JetGenerator::Frame(0),
            right: JetGenerator::Partial(k),
            expected: JetDecomposition { frame: zero_frame(), partial },
            locus: locus.clone(),
        });
        for &s in &labels[idx + 1..] {
            out.push(JetRelation {
                left: JetGenerator::Partial(k),
                right: JetGenerator::Partial(s),
                expected: JetDecomposition { frame: zero_frame(), partial: zero_partial() },
                locus: locus.clone(),
            });
        }
    }
    for &k in &labels {
        let table = partial_brackets(g.get(), k).expect("table for every supported genus");
        for s in 1..n {
            out.push(JetRelation {
                left: JetGenerator::Partial(k),
                right: JetGenerator::Frame(2 * s as u8),
                expected: JetDecomposition { frame: zero_frame(), partial: table.row(s - 1) },
                locus: format!("derivation algebra, genus {g}, brackets with d{k}"),
            });
        }
    }
    if let (Some(m), Some(c)) = (printed_m(g.get()), corrections(g.get())) {
        for (row, (i, j)) in crate::frame::bracket_pairs(g).into_iter().enumerate() {
            out.push(JetRelation {
                left: JetGenerator::Frame(2 * i as u8),
                right: JetGenerator::Frame(2 * j as u8),
                expected: JetDecomposition { frame: m.row(row), partial: c.row(row) },
                locus: format!("derivation algebra, genus {g}, structure matrix with correction"),
            });
        }
    }
    out
}

fn decomposition_diff(got: &JetDecomposition, expected: &JetDecomposition, g: Genus) -> String {
    let mut parts = Vec::new();
    for (k, (x, y)) in got.frame.iter().zip(&expected.frame).enumerate() {
        let d = x - y;
        if !d.is_zero() {
            parts.push(format!("cL{}: {d}", 2 * k));
        }
    }
    for ((x, y), j) in got.partial.iter().zip(&expected.partial).zip(g.z_labels()) {
        let d = x - y;
        if !d.is_zero() {
            parts.push(format!("d{j}: {d}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

/// Checks every printed relation as an identity of derivations on
/// generators with `|I| ≤ max_order`. The primary reading lets `L_{2k}` act
/// on `ψ` through the heat equations; the free-ring reading (`L_{2k} ψ = 0`)
/// is recorded as informational.
pub fn verify_jet_tables(sys: &ColeHopfSystem, max_order: usize) -> RelationReport {
    let g = sys.genus();
    let relations = printed_relations(g);
    let free = sys.free_ring();
    let results: Vec<_> = relations
        .par_iter()
        .map(|rel| {
            let primary = timed(|| derivation_commutator(sys, rel.left, rel.right, max_order));
            let free = derivation_commutator(&free, rel.left, rel.right, max_order);
            (primary, free)
        })
        .collect();
    let mut report = RelationReport::new();
    for (rel, ((primary, elapsed), free)) in relations.iter().zip(results) {
        let id = format!("g{g}/[{},{}]", rel.left, rel.right);
        let witness = match &primary {
            Ok(d) => decomposition_diff(d, &rel.expected, g),
            Err(e) => e.to_string(),
        };
        report.residual(SUITE, id.clone(), rel.locus.clone(), witness, elapsed);
        let (ok, witness) = match &free {
            Ok(d) => {
                let w = decomposition_diff(d, &rel.expected, g);
                (w == "0", w)
            }
            Err(e) => (false, e.to_string()),
        };
        report.info(SUITE, format!("{id}/free-ring"), rel.locus.clone(), ok, witness);
    }
    report
}

/// `𝓛_{2k} ψ_I` lies in the ring generated by `ψ_J`, `|J| ≥ 2`, for every
/// `2 ≤ |I| ≤ max_order`.
pub fn closure_check(sys: &ColeHopfSystem, max_order: usize) -> RelationReport {
    let g = sys.genus();
    let mut report = RelationReport::new();
    let indices: Vec<JetIndex> = JetIndex::enumerate(&g.z_labels(), max_order).into_iter().filter(|i| i.order() >= 2).collect();
    for (k, d) in sys.frame().iter().enumerate() {
        for order in 2..=max_order {
            let (bad, elapsed) = timed(|| {
                indices
                    .par_iter()
                    .filter(|i| i.order() == order)
                    .filter_map(|i| {
                        let v = d.on_var(&Var::Psi(i.clone()));
                        (!in_jet_ring(&v)).then(|| format!("cL{}(psi{i}) = {v}", 2 * k))
                    })
                    .collect::<Vec<_>>()
            });
            report.boolean(
                SUITE,
                format!("g{g}/closure/cL{}/order{order}", 2 * k),
                format!("closure of the jet ring, genus {g}"),
                bad.is_empty(),
                if bad.is_empty() { "0".to_string() } else { bad.join("; ") },
                elapsed,
            );
        }
    }
    report
}

/// Erasing `∂` and sending `𝓛_{2k} ↦ L_{2k}` turns every printed relation
/// into a relation of the `L` frame; each `[∂_k, 𝓛_{2s}]` has no `𝓛` part
/// and coefficients in the jet ring.
pub fn homomorphism_check(sys: &ColeHopfSystem, max_order: usize) -> RelationReport {
    let g = sys.genus();
    let mut report = RelationReport::new();
    let lframe: Vec<DiffOperator> = sys.frame().iter().map(|d| d.lambda_part().clone()).collect();
    let image = |gen: JetGenerator| match gen {
        JetGenerator::Frame(k) => lframe[(k / 2) as usize].clone(),
        JetGenerator::Partial(_) => DiffOperator::zero(),
    };
    for rel in printed_relations(g) {
        let (residual, elapsed) = timed(|| {
            let lhs = image(rel.left).commutator(&image(rel.right));
            &lhs - &combination(&rel.expected.frame, &lframe)
        });
        report.residual(
            SUITE,
            format!("g{g}/image[{},{}]", rel.left, rel.right),
            format!("projection to the L frame, genus {g}"),
            residual.to_string(),
            elapsed,
        );
    }
    for k in g.z_labels() {
        for s in 1..2 * g.get() {
            let (res, elapsed) = timed(|| derivation_commutator(sys, JetGenerator::Partial(k), JetGenerator::Frame(2 * s), max_order));
            let (ok, witness) = match res {
                Ok(d) => {
                    let frame_free = d.frame.iter().all(Polynomial::is_zero);
                    let bad: Vec<String> = d.partial.iter().filter(|q| !in_jet_ring(q)).map(|q| q.to_string()).collect();
                    let coeffs: Vec<String> = d.partial.iter().map(|q| q.to_string()).collect();
                    (frame_free && bad.is_empty(), if frame_free && bad.is_empty() { coeffs.join(", ") } else { format!("frame part {:?}, outside ring {:?}", d.frame.iter().map(|p| p.to_string()).collect::<Vec<_>>(), bad) })
                }
                Err(e) => (false, e.to_string()),
            };
            report.boolean(
                SUITE,
                format!("g{g}/[d{k},cL{}]/ring-coefficients", 2 * s),
                format!("brackets with partials, genus {g}"),
                ok,
                witness,
                elapsed,
            );
        }
    }
    report
}
