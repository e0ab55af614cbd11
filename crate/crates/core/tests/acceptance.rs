//! Acceptance criteria 1 to 10, one line each. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use heatframe::frame::*;
use heatframe::jet::tables::{FRAME_TABLES, SOURCE_TABLES};
use heatframe::jet::{build_cole_hopf_derived, closure_check, diff_against_paper_tables, verify_jet_tables, ColeHopfSystem, SignConvention};
use heatframe::poly::Weight;
use heatframe::report::{RelationReport, Status};
use heatframe::sigma::{kernel_basis, residual};
use heatframe::Polynomial;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn passed(report: &RelationReport) -> Result<usize, String> {
    match report.failures().next() {
        None => Ok(report.checks.len()),
        Some(c) => Err(format!("{} [{}]: {}", c.id, c.locus, c.witness)),
    }
}

fn within(elapsed: Duration, bound: Duration) -> Result<(), String> {
    if elapsed < bound {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, bound {bound:?}"))
    }
}

fn families() -> Vec<HeatOperatorFamily> {
    (1..=3).map(|g| build_q(genus(g)).unwrap()).collect()
}

fn t_matrices() -> Outcome {
    let t = Instant::now();
    let mut entries = 0;
    for g in 1..=3 {
        entries += passed(&check_t_against_printed(genus(g)))?;
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    if entries != 4 + 16 + 36 {
        return Err(format!("{entries} entries compared"));
    }
    Ok(format!("{entries} entries"))
}

fn frame_commutators(fams: &[HeatOperatorFamily]) -> Outcome {
    let t = Instant::now();
    let mut brackets = 0;
    for (fam, want) in fams[1..].iter().zip([3, 10]) {
        let g = fam.genus;
        let report = verify_frame_relations(fam, FrameKind::L);
        let mut found = 0;
        for (i, j) in bracket_pairs(g) {
            for id in [format!("g{g}/[L{},L{}]", 2 * i, 2 * j), format!("g{g}/[L{},L{}]/unique", 2 * i, 2 * j)] {
                let c = report.find(&id).ok_or(format!("{id} missing"))?;
                if c.status != Status::Pass {
                    return Err(format!("{id}: {}", c.witness));
                }
            }
            found += 1;
        }
        if found != want {
            return Err(format!("genus {g}: {found} brackets, expected {want}"));
        }
        brackets += found;
    }
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{brackets} brackets, unique"))
}

fn heat_algebra(fams: &[HeatOperatorFamily]) -> Outcome {
    let t = Instant::now();
    let mut checks = 0;
    for fam in fams {
        checks += passed(&shape_check(fam).map_err(|e| e.to_string())?.report)?;
        for kind in [FrameKind::L, FrameKind::Q] {
            let report = verify_frame_relations(fam, kind);
            if !report.checks.iter().any(|c| c.id.contains("/jacobi/")) && fam.len() > 2 {
                return Err(format!("genus {}: no Jacobi triples", fam.genus));
            }
            checks += passed(&report)?;
        }
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{checks} checks"))
}

fn isomorphism(fams: &[HeatOperatorFamily]) -> Outcome {
    let mut checks = 0;
    for fam in fams {
        checks += passed(&check_isomorphism(fam))?;
    }
    Ok(format!("{checks} structure polynomials"))
}

fn sufficiency(fams: &[HeatOperatorFamily]) -> Outcome {
    let mut found = Vec::new();
    for fam in &fams[1..] {
        let red = sufficiency_reduction(fam).map_err(|e| e.to_string())?;
        if let Some(r) = red.residuals(fam).iter().find(|r| !r.is_zero()) {
            return Err(format!("genus {}: residual {r}", fam.genus));
        }
        found.extend(red.steps.iter().map(|s| format!("g{}:Q{}", fam.genus, s.target)));
    }
    if found != ["g2:Q6", "g3:Q6", "g3:Q8", "g3:Q10"] {
        return Err(format!("reductions {found:?}"));
    }
    for fam in &fams[1..] {
        let basis = kernel_basis(fam.genus, &[0, 2, 4], 10).map_err(|e| e.to_string())?;
        for s in &basis.series {
            for k in 0..fam.len() {
                let r = residual(s, k).map_err(|e| e.to_string())?;
                if !r.is_zero() {
                    return Err(format!("genus {}: Q{} leaves {r}", fam.genus, 2 * k));
                }
            }
        }
    }
    Ok(format!("{}; kernel at W=10 solves every Q", found.join(" ")))
}

/// Mismatches are allowed only at the declared genus-two `w[4,3]` locus or
/// where the printed entry is not weight-homogeneous, so that no convention
/// can make it an identity.
fn cole_hopf(systems: &[ColeHopfSystem]) -> Outcome {
    let t = Instant::now();
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for sys in systems {
        let g = sys.genus().get();
        passed(&diff_against_paper_tables(sys).report)?;
        for table in FRAME_TABLES.iter().filter(|t| t.genus == g) {
            let d = &sys.frame()[table.label as usize / 2];
            if d.z_operator() != table.operator() {
                return Err(format!("{}: derived {}", table.locus(), d.z_operator()));
            }
            compared += 1;
        }
        for table in SOURCE_TABLES.iter().filter(|t| t.genus == g) {
            compared += 1;
            let printed = table.polynomial();
            let derived = sys.source(table.label, table.index).cloned().unwrap_or_default();
            if printed == derived {
                continue;
            }
            let declared = (g, table.label, table.index) == (2, 4, 3);
            let inhomogeneous = printed.weight_of() == Ok(Weight::Inhomogeneous);
            if !declared && !inhomogeneous {
                return Err(format!("{}: printed {printed}, derived {derived}", table.locus()));
            }
            let why = if declared { "declared" } else { "printed entry not homogeneous" };
            mismatches.push(format!("g{g} w[{},{}] ({why})", table.label, table.index));
        }
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{compared} entries under convention +, mismatches: {}", mismatches.join(", ")))
}

fn jet_tables(systems: &[ColeHopfSystem]) -> Outcome {
    let mut checks = 0;
    for sys in systems {
        checks += passed(&verify_jet_tables(sys, 6))?;
    }
    Ok(format!("{checks} relations on psi_I, |I| <= 6"))
}

fn closure(systems: &[ColeHopfSystem]) -> Outcome {
    let mut checks = 0;
    for sys in systems {
        checks += passed(&closure_check(sys, 5))?;
    }
    Ok(format!("{checks} (k, order) pairs, 2 <= |I| <= 5"))
}

fn sigma() -> Outcome {
    let b = kernel_basis(genus(1), &[0, 2], 8).map_err(|e| e.to_string())?;
    let oracle = weierstrass_sigma(9);
    if b.series.len() != 1 || b.series[0].value != oracle {
        return Err(format!("genus 1 at W=8: {:?}", b.series.iter().map(|s| s.value.to_string()).collect::<Vec<_>>()));
    }
    let b = kernel_basis(genus(2), &[0, 2, 4], 0).map_err(|e| e.to_string())?;
    let hits = brute_force_lambda_free();
    let (c0, c1) = hits[0];
    let lead = &b.series[0].stratum(0);
    let want = &(&heatframe::poly::z(3) * &heatframe::rational::int(c0)) + &(&heatframe::poly::z(1).pow(3) * &heatframe::rational::int(c1));
    let scale = want.coefficient(&heatframe::Monomial::var(heatframe::Var::Z(3))) / lead.coefficient(&heatframe::Monomial::var(heatframe::Var::Z(3)));
    if b.series.len() != 1 || hits.len() != 2 || lead * &scale != want {
        return Err(format!("genus 2 lambda-free kernel {lead}, brute force {hits:?}"));
    }
    let t10 = Instant::now();
    for g in 1..=3 {
        kernel_basis(genus(g), &[0, 2, 4].into_iter().filter(|k| *k < 4 * g).collect::<Vec<_>>(), 10).map_err(|e| e.to_string())?;
    }
    within(t10.elapsed(), Duration::from_secs(30))?;
    Ok(format!("genus 1 = recursion oracle, genus 2 lead {lead}, W=10 in {:.2?}", t10.elapsed()))
}

fn run_property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Outcome {
    let names = [
        "ring axioms",
        "canonical form",
        "antisymmetry",
        "weight additivity",
        "chain rule",
        "Leibniz",
        "transport",
    ];
    run_property(names[0], (jet_polynomial(), jet_polynomial(), jet_polynomial()), |(a, b, c)| ring_axioms(&a, &b, &c))?;
    run_property(names[1], (jet_polynomial(), operator(3)), |(p, op)| canonical_roundtrip(&p, &op))?;
    run_property(names[2], (operator(2), operator(2)), |(a, b)| antisymmetry(&a, &b))?;
    run_property(names[3], (homogeneous_operator(3), homogeneous_operator(3)), |(p, q)| weight_additivity(&p, &q))?;
    let labels = || prop::sample::select(vec![1u8, 3, 5]);
    run_property(names[4], (jet_polynomial(), jet_polynomial(), labels(), labels()), |(e, f, a, b)| chain_rule(&e, &f, a, b))?;
    run_property(names[5], (1u8..=3, 0usize..6, jet_polynomial(), jet_polynomial()), |(g, k, e, f)| {
        let keep = |p: &Polynomial| p.filter(|m| m.vars().all(|v| genus(g).contains(v)));
        leibniz(g, k % (2 * g as usize), &keep(&e), &keep(&f))
    })?;
    run_property(names[6], genus_and_index(), |(g, k, labels, j)| transport(g, k, &labels, j))?;
    Ok(format!("{} x 1000 cases", names.len()))
}

fn main() -> ExitCode {
    let fams = families();
    let systems: Vec<ColeHopfSystem> = (1..=3).map(|g| build_cole_hopf_derived(genus(g), SignConvention::Plus).unwrap()).collect();
    let criteria: Vec<Criterion> = vec![
        ("frame matrix T for genus 1, 2, 3", Box::new(t_matrices)),
        ("frame commutators with printed structure matrices", Box::new(|| frame_commutators(&fams))),
        ("heat operator shape, tables and Jacobi", Box::new(|| heat_algebra(&fams))),
        ("isomorphism of the two framings", Box::new(|| isomorphism(&fams))),
        ("three operators suffice", Box::new(|| sufficiency(&fams))),
        ("nonlinear systems against printed tables", Box::new(|| cole_hopf(&systems))),
        ("derivation bracket tables", Box::new(|| jet_tables(&systems))),
        ("closure on the jet ring", Box::new(|| closure(&systems))),
        ("sigma series", Box::new(sigma)),
        ("property suites", Box::new(properties)),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {elapsed:.2?})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
