use qdouble_core::braid::{ising_like_spectrum, sigma_1q, verify_braid_relations, Catalog, GeneratorSet, TwoQubitPairing};
use qdouble_core::compiler::gate_report;
use qdouble_core::double::{s_discrepancies, validate_fusion_table, ModularData};
use qdouble_core::group::Section;
use qdouble_core::recoupling::{
    derive_sigmas, gauge_match, hexagon_scan, pentagon_scan, qubit_relevant_charges, FTable, Pairing, Recoupler,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::CliError;
use crate::Suite;

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub status: &'static str,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub status: &'static str,
    pub suites: Vec<SuiteReport>,
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.status == "pass")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for suite in &self.suites {
            s.push_str(&format!("== {} [{}]\n", suite.suite, suite.status));
            for c in &suite.checks {
                s.push_str(&format!("  {} {}  {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
        }
        s.push_str(&format!("overall: {}\n", self.status));
        s
    }
}

fn suite(name: &'static str, checks: Vec<Check>) -> SuiteReport {
    SuiteReport { suite: name, status: status(checks.iter().all(|c| c.pass)), checks }
}

fn check(name: impl Into<String>, pass: bool, detail: Value) -> Check {
    Check { name: name.into(), pass, detail }
}

pub fn run(which: Suite) -> Result<Report, CliError> {
    let wanted = |s: Suite| which == Suite::All || which == s;
    let mut suites = Vec::new();
    if wanted(Suite::Modular) {
        suites.push(modular()?);
    }
    if wanted(Suite::Recoupling) {
        suites.push(recoupling()?);
    }
    if wanted(Suite::Braids) {
        suites.push(braids());
    }
    if wanted(Suite::Gates) {
        suites.push(gates()?);
    }
    let pass = suites.iter().all(|s| s.status == "pass");
    Ok(Report { version: env!("CARGO_PKG_VERSION"), status: status(pass), suites })
}

fn modular() -> Result<SuiteReport, CliError> {
    let md = ModularData::compute(Section::First);
    let alt = ModularData::compute(Section::Last);
    let disc = s_discrepancies(&md);
    let outside = disc.iter().filter(|d| !d.in_phi_block).count();
    let f = md.fusion()?;
    let rules = validate_fusion_table(&f);
    let mut failing: Vec<&str> = rules.failures.iter().map(|r| r.rule.as_str()).collect();
    failing.dedup();
    Ok(suite(
        "modular",
        vec![
            check("S symmetric", md.is_symmetric(), json!(null)),
            check("S unitary", md.is_unitary(), json!(null)),
            check("S real rational", md.is_real_rational(), json!(null)),
            check("(ST)^3 ∝ S^2", md.modular_relation().is_some(), json!(null)),
            check("section independence", md.s == alt.s && md.t == alt.t, json!(null)),
            check(
                "printed S table outside the Φ/Φ̃ block",
                outside == 0,
                json!({ "disagreeing": disc.len(), "outside_phi_block": outside, "entries": disc }),
            ),
            check("Verlinde integrality", f.max_residual < 1e-9 && f.max_multiplicity() <= 1, json!({ "max_residual": f.max_residual, "max_multiplicity": f.max_multiplicity() })),
            check(
                "fusion invariants",
                f.is_commutative() && f.is_associative() && f.dimensions_consistent() && f.vacuum_is_neutral(),
                json!(null),
            ),
            check("printed fusion rules", rules.passed(), json!({ "instances": rules.checked, "failing_rules": failing, "failures": rules.failures })),
        ],
    ))
}

fn recoupling() -> Result<SuiteReport, CliError> {
    let rc = Recoupler::new(Section::First)?;
    let (mut iso, mut inter) = (0.0f64, 0.0f64);
    for (a, b, k) in rc.admissible_triples() {
        if let Some((i, j)) = rc.cg_residuals(a, b, k) {
            iso = iso.max(i);
            inter = inter.max(j);
        }
    }
    let ft = FTable::build(&rc);
    let labels = qubit_relevant_charges();
    let (pent, npent) = pentagon_scan(&ft, &labels);
    let (hex, nhex) = hexagon_scan(&rc, &ft, &labels);
    let mut checks = vec![
        check("CG isometry", iso < 1e-9, json!({ "max_residual": iso })),
        check("CG intertwiner", inter < 1e-9, json!({ "max_residual": inter })),
        check("F unitary", ft.max_unitarity_residual() < 1e-9, json!({ "max_residual": ft.max_unitarity_residual() })),
        check("pentagon", pent < 1e-8, json!({ "max_residual": pent, "equations": npent })),
        check("hexagon", hex < 1e-8, json!({ "max_residual": hex, "equations": nhex })),
    ];
    for p in Pairing::ALL {
        let d = derive_sigmas(&rc, p);
        let p1 = sigma_1q(p, 1)?.to_complex();
        let p2 = sigma_1q(p, 2)?.to_complex();
        let m = gauge_match(&d, (&p1, &p2));
        checks.push(check(
            format!("derived σ₁, σ₂ match printed {}", p.name()),
            m.residual < 1e-8,
            json!({ "residual": m.residual, "total_charge": d.total.name(), "signs": m.signs }),
        ));
    }
    Ok(suite("recoupling", checks))
}

fn braids() -> SuiteReport {
    let mut sets: Vec<GeneratorSet> = Pairing::ALL.iter().map(|&p| GeneratorSet::one_qubit(p)).collect();
    for c in [Catalog::Printed, Catalog::Amended] {
        sets.extend(TwoQubitPairing::ALL.iter().map(|&p| GeneratorSet::two_qubit(p, c)));
    }
    let mut checks = Vec::new();
    for g in &sets {
        let r = verify_braid_relations(g);
        let non_unitary: Vec<String> = r.unitary.iter().enumerate().filter(|(_, u)| !**u).map(|(i, _)| format!("σ{}", i + 1)).collect();
        let label = format!("{}-qubit {}", g.arity, r.label);
        checks.push(check(format!("{label} unitary"), non_unitary.is_empty(), json!({ "not_unitary": non_unitary })));
        for kind in ["adjacent", "far"] {
            if r.relations.iter().any(|x| x.kind == kind) {
                let f: Vec<&str> = r.failures(kind).iter().map(|x| x.relation.as_str()).collect();
                checks.push(check(format!("{label} {kind} relations"), f.is_empty(), json!({ "failing": f })));
            }
        }
        if g.arity == 1 {
            let ok: Vec<bool> = g.sigmas.iter().map(ising_like_spectrum).collect();
            checks.push(check(format!("{label} Ising spectrum"), ok.iter().all(|&x| x), json!({ "per_generator": ok })));
        }
    }
    suite("braids", checks)
}

fn gates() -> Result<SuiteReport, CliError> {
    let r = gate_report()?;
    let mut checks = Vec::new();
    for c in &r.single_qubit {
        checks.push(check(
            format!("{} = {} on ΦΦ", c.gate.name(), c.word),
            c.holds_for.iter().any(|p| p == Pairing::PhiPhi.name()),
            json!({ "holds_for": c.holds_for, "factors": c.factors }),
        ));
    }
    let (_, alt, same) = r.alternative_hadamard[0].clone();
    checks.push(check("H = σ2 σ1 σ2 on ΦΦ", alt && same, json!({ "per_pairing": r.alternative_hadamard })));
    for catalog in [Catalog::Printed, Catalog::Amended] {
        let per: Vec<Value> = r
            .embeddings
            .iter()
            .filter(|e| e.catalog == catalog)
            .map(|e| {
                json!({
                    "pairing": e.pairing,
                    "scanned": e.scanned,
                    "cnot": e.cnot.len(),
                    "cz": e.cz.len(),
                    "both": e.both.iter().map(|x| x.indices).collect::<Vec<_>>(),
                    "undefined": e.undefined,
                })
            })
            .collect();
        let compiled: Vec<Value> = r
            .two_qubit
            .iter()
            .filter(|g| g.pairing.ends_with(&format!("({})", catalog.name())))
            .map(|g| json!({ "gate": g.name.name(), "word": g.word.to_string(), "pairing": g.pairing, "factor": g.factor }))
            .collect();
        checks.push(check(
            format!("CNOT and CZ embedding ({})", catalog.name()),
            r.two_qubit_pass(catalog),
            json!({ "searches": per, "compiled": compiled }),
        ));
    }
    Ok(suite("gates", checks))
}
