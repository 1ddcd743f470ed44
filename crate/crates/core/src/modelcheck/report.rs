//! Per-model verification reports and the four-dimensional negative control.

use super::boundary::{
    check_factor, verify_boundary, verify_determinant, verify_syzygy, Comparison, FactorVerdict, SyzygyRing,
};
use super::covers::verify_summary_row;
use super::operator::{
    assemble_operator, block_spectra, measure_drift, measure_factors, sphere_alpha, spherical_index,
};
use super::{closure_solve, drift_closure, ClosureResult};
use crate::algebra::{poly, ExactScalar, MultiPoly, PolyMatrix};
use crate::catalog::{cornulier_system, PolynomialModel};
use serde_json::{json, Value};
use std::time::Instant;

/// Checks run for every model, in order.
pub const CHECK_NAMES: [&str; 8] = [
    "closure_solve",
    "drift_closure",
    "verify_boundary",
    "verify_determinant",
    "verify_syzygy",
    "measure_drift",
    "assemble_operator",
    "summary_row",
];

/// Default valuation cap for the operator matrix.
pub const DEFAULT_CAP: u32 = 8;

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
    pub seconds: f64,
}

/// A printed value that disagrees with the recomputation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub site: String,
    pub printed: String,
    pub recomputed: String,
}

#[derive(Clone, Debug)]
pub struct ModelReport {
    pub model: String,
    pub checks: Vec<CheckRecord>,
    pub mismatches: Vec<Mismatch>,
}

impl ModelReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON form; `deterministic` zeroes the timings.
    pub fn to_json(&self, deterministic: bool) -> Value {
        json!({
            "model": self.model,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "witness": c.witness,
                "seconds": if deterministic { 0.0 } else { c.seconds },
            })).collect::<Vec<_>>(),
            "mismatches": self.mismatches.iter().map(|m| json!({
                "site": m.site, "printed": m.printed, "recomputed": m.recomputed, "status": "paper-typo-suspected",
            })).collect::<Vec<_>>(),
        })
    }
}

fn texts(ps: &[MultiPoly]) -> Vec<String> {
    ps.iter().map(MultiPoly::to_text).collect()
}

fn scalars(xs: &[ExactScalar]) -> Vec<String> {
    xs.iter().map(ExactScalar::to_text).collect()
}

fn comparison_json(c: &Comparison) -> Value {
    json!({
        "site": c.site,
        "computed": c.computed.to_text(),
        "declared": c.declared.to_text(),
        "printed": c.printed.as_ref().map(MultiPoly::to_text),
        "status": c.status.as_str(),
        "matches": c.matches_declared,
    })
}

fn factor_json(f: &FactorVerdict) -> Value {
    json!({
        "label": f.label,
        "factor": f.factor.to_text(),
        "expected_to_satisfy": f.expected,
        "satisfied": f.satisfied(),
        "multipliers": f.multipliers.as_deref().map(texts),
        "degrees_ok": f.degrees_ok,
        "comparisons": f.comparisons.iter().map(comparison_json).collect::<Vec<_>>(),
        "passed": f.passed,
    })
}

fn mismatch(c: &Comparison) -> Option<Mismatch> {
    c.is_source_mismatch().then(|| Mismatch {
        site: c.site.clone(),
        printed: c.printed.as_ref().map(MultiPoly::to_text).unwrap_or_default(),
        recomputed: c.computed.to_text(),
    })
}

struct Runner {
    checks: Vec<CheckRecord>,
}

impl Runner {
    fn run(&mut self, name: &str, f: impl FnOnce() -> (bool, Value)) {
        let t = Instant::now();
        let (passed, witness) = f();
        self.checks.push(CheckRecord { name: name.to_string(), passed, witness, seconds: t.elapsed().as_secs_f64() });
    }
}

/// Compare the recomputed co-metric with the declared one, entry by entry.
fn cometric_comparisons(model: &PolynomialModel, g: &PolyMatrix) -> (bool, Vec<Value>, Vec<Mismatch>) {
    let mut ok = true;
    let mut rows = Vec::new();
    let mut mism = Vec::new();
    if !model.cometric_printed {
        return (true, rows, mism);
    }
    for i in 0..g.size() {
        for j in i..g.size() {
            let same = g.get(i, j) == model.cometric.get(i, j);
            ok &= same;
            if !same {
                rows.push(json!({"i": i, "j": j, "computed": g.get(i, j).to_text(), "declared": model.cometric.get(i, j).to_text()}));
            }
            if let Some((_, _, printed)) = model.printed_typos.iter().find(|(a, b, _)| (*a, *b) == (i, j)) {
                if printed != g.get(i, j) {
                    mism.push(Mismatch {
                        site: format!("G[{i}][{j}]"),
                        printed: printed.to_text(),
                        recomputed: g.get(i, j).to_text(),
                    });
                }
            }
        }
    }
    (ok, rows, mism)
}

/// Run every check on a model, in order; later checks reuse earlier outputs.
pub fn verify_model(model: &PolynomialModel, cap: u32) -> ModelReport {
    let mut r = Runner { checks: Vec::new() };
    let mut mismatches = Vec::new();
    let mut closure: Option<ClosureResult> = None;
    r.run("closure_solve", || {
        let c = closure_solve(&model.system);
        let out = match c.expressed.as_ref() {
            Some(g) => {
                let (ok, diffs, mism) = cometric_comparisons(model, g);
                mismatches.extend(mism);
                (ok, json!({"closed": true, "null_dim": c.null_dim, "differences": diffs}))
            }
            None => (false, json!({"closed": false, "residual": c.residual.as_ref().map(|(p, q)| json!({"pair": p, "residual": q.to_text()}))})),
        };
        closure = Some(c);
        out
    });
    let g = closure.and_then(|c| c.expressed);
    let mut drift: Option<Vec<MultiPoly>> = None;
    r.run("drift_closure", || match drift_closure(&model.system) {
        Ok(d) => {
            let w = json!({"drift": texts(&d)});
            drift = Some(d);
            (true, w)
        }
        Err(e) => (false, json!({"error": e.to_string()})),
    });
    r.run("verify_boundary", || match &g {
        None => (false, json!({"error": "no co-metric"})),
        Some(g) => {
            let v = verify_boundary(model, g);
            mismatches.extend(v.iter().flat_map(|f| f.comparisons.iter().filter_map(mismatch)));
            (v.iter().all(|f| f.passed), json!({"factors": v.iter().map(factor_json).collect::<Vec<_>>()}))
        }
    });
    r.run("verify_determinant", || match &g {
        None => (false, json!({"error": "no co-metric"})),
        Some(g) => {
            let d = verify_determinant(model, g);
            if let Some(m) = d.constant_check.as_ref().and_then(mismatch) {
                mismatches.push(m);
            }
            for (f, _) in &model.determinant.factors {
                if let Some(p) = f.printed.as_ref().filter(|p| *p != &f.value) {
                    mismatches.push(Mismatch {
                        site: "det factor".into(),
                        printed: p.to_text(),
                        recomputed: f.value.to_text(),
                    });
                }
            }
            (
                d.passed,
                json!({
                    "determinant": d.determinant.to_text(),
                    "constant": d.constant.as_ref().map(ExactScalar::to_text),
                    "factorization_exact": d.factorization_exact,
                    "constant_check": d.constant_check.as_ref().map(comparison_json),
                    "vanishes_mod_syzygy": d.vanishes_mod_syzygy,
                }),
            )
        }
    });
    r.run("verify_syzygy", || {
        let s = verify_syzygy(model);
        (
            s.passed,
            json!({
                "syzygy": s.syzygy.as_ref().map(MultiPoly::to_text),
                "sphere_residual": s.sphere_residual.to_text(),
                "q": s.q.as_ref().map(MultiPoly::to_text),
                "parent": s.parent.map(|p| p.to_string()),
                "parent_factors": s.parent_labels,
                "structural": s.structural,
            }),
        )
    });
    r.run("measure_drift", || match (&g, &drift) {
        (Some(g), Some(d)) => {
            let k = measure_factors(model).len();
            let lebesgue = measure_drift(model, g, &vec![ExactScalar::zero(); k]);
            let alpha = sphere_alpha(model, g, d);
            let sphere = alpha.as_ref().map(|a| measure_drift(model, g, a));
            let ok = lebesgue.is_ok() && sphere.as_ref().is_none_or(|s| s.is_ok());
            (
                ok,
                json!({
                    "factors": measure_factors(model).into_iter().map(|f| f.0).collect::<Vec<_>>(),
                    "lebesgue_drift": lebesgue.as_ref().map(|b| texts(b)).map_err(|e| e.to_string()),
                    "sphere_alpha": alpha.as_deref().map(scalars),
                }),
            )
        }
        _ => (false, json!({"error": "missing co-metric or drift"})),
    });
    r.run("assemble_operator", || match (&g, &drift) {
        (Some(g), Some(d)) => match assemble_operator(&model.system, g, d, cap) {
            Ok(op) => {
                let spectra = block_spectra(&op);
                let spherical =
                    spectra.iter().all(|b| b.all_exact() && b.exact.iter().all(|(l, _)| spherical_index(l).is_some()));
                let mut eig: Vec<i64> =
                    spectra.iter().flat_map(|b| b.exact.iter().map(|(l, _)| l.to_i64().unwrap_or(i64::MIN))).collect();
                eig.sort_unstable();
                eig.dedup();
                (
                    op.is_block_triangular() && spherical,
                    json!({"cap": cap, "dimension": op.basis.len(), "block_triangular": op.is_block_triangular(),
                           "spherical_spectrum": spherical, "eigenvalues": eig}),
                )
            }
            Err(e) => (false, json!({"error": e.to_string()})),
        },
        _ => (false, json!({"error": "missing co-metric or drift"})),
    });
    r.run("summary_row", || {
        let s = verify_summary_row(model);
        if s.printed_constant.is_none() {
            mismatches.push(Mismatch {
                site: "summary boundary".into(),
                printed: model.summary.boundary_printed.to_text(),
                recomputed: model.summary.boundary_corrected.to_text(),
            });
        }
        (
            s.passed,
            json!({
                "group": model.summary.group,
                "boundary": model.summary.boundary_corrected.to_text(),
                "constant": s.corrected_constant.as_ref().map(ExactScalar::to_text),
                "printed_matches": s.printed_constant.is_some(),
            }),
        )
    });
    ModelReport { model: model.id.to_string(), checks: r.checks, mismatches }
}

/// The four-dimensional counterexample: the primaries are not closed, and
/// adding `η₃` closes Γ without giving a model.
#[derive(Clone, Debug)]
pub struct CornulierReport {
    pub p: u32,
    pub primaries: ClosureResult,
    pub with_eta3_closed: bool,
    /// Gram determinant of the primaries modulo the syzygy.
    pub gram: Option<MultiPoly>,
    /// Degeneracy factors and their boundary-equation verdicts in the quotient ring.
    pub factors: Vec<FactorVerdict>,
}

impl CornulierReport {
    /// Some factor of the degeneracy locus fails the boundary equation.
    pub fn boundary_fails(&self) -> bool {
        self.factors.iter().any(|f| !f.satisfied())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "primaries_closed": self.primaries.is_closed(),
            "failing_pairs": self.primaries.failures.iter().map(|(p, _)| p).collect::<Vec<_>>(),
            "residual": self.primaries.residual.as_ref().map(|(p, r)| json!({"pair": p, "residual": r.to_text()})),
            "with_eta3_closed": self.with_eta3_closed,
            "gram": self.gram.as_ref().map(MultiPoly::to_text),
            "factors": self.factors.iter().map(factor_json).collect::<Vec<_>>(),
            "boundary_fails": self.boundary_fails(),
        })
    }
}

pub fn cornulier_check(p: u32) -> CornulierReport {
    let primaries = closure_solve(&cornulier_system(p, false));
    let sys = cornulier_system(p, true);
    let closed = closure_solve(&sys);
    let Some(g) = closed.expressed else {
        return CornulierReport { p, primaries, with_eta3_closed: false, gram: None, factors: vec![] };
    };
    let ring = SyzygyRing::of_system(&sys).expect("syzygy");
    let g3 = PolyMatrix::from_rows((0..3).map(|i| (0..3).map(|j| g.get(i, j).clone()).collect()).collect());
    let gram = ring.reduce(&g3.det());
    // The syzygy reads η² = (θ₁² − 4θ₂)(1 − 4θ₃); both pieces divide the Gram determinant.
    let mut rest = gram.clone();
    let mut factors = Vec::new();
    for (label, f) in [("th1^2-4th2", poly("th1^2 - 4 th2")), ("1-4th3", poly("1 - 4 th3"))] {
        if let Ok(q) = rest.exact_divide(&f) {
            rest = q;
            factors.push(check_factor(&sys, &g, label, &f, false, None, Some(&ring)));
        }
    }
    let lc = rest.leading_coefficient();
    let rest = rest.scale(&lc.inverse().expect("nonzero"));
    factors.push(check_factor(&sys, &g, "F", &rest, true, None, Some(&ring)));
    CornulierReport { p, primaries, with_eta3_closed: true, gram: Some(gram), factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{model, ModelId};

    #[test]
    fn report_has_every_check_once() {
        let rep = verify_model(&model(ModelId::family(1, 3)), DEFAULT_CAP);
        let names: Vec<&str> = rep.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, CHECK_NAMES.to_vec());
        assert!(rep.passed(), "{:?}", rep.failing());
        assert!(rep.mismatches.is_empty());
        let j = rep.to_json(true);
        assert_eq!(j["checks"][2]["witness"]["factors"][0]["multipliers"], json!(["-6 * th1", "-18 * th2"]));
    }

    #[test]
    fn typo_sites_are_reported() {
        let rep = verify_model(&model(ModelId::fixed(14)), DEFAULT_CAP);
        assert!(rep.passed(), "{:?}", rep.failing());
        let sites: Vec<&str> = rep.mismatches.iter().map(|m| m.printed.as_str()).collect();
        assert!(sites.contains(&"-73 * th3"), "{sites:?}");
        let rep7 = verify_model(&model(ModelId::family(7, 2)), DEFAULT_CAP);
        assert!(rep7.passed());
        assert_eq!(rep7.mismatches.iter().filter(|m| m.site.starts_with("G[")).count(), 2);
    }

    #[test]
    fn cornulier_negative_control() {
        let r = cornulier_check(3);
        assert!(!r.primaries.is_closed());
        assert!(r.with_eta3_closed);
        assert!(r.boundary_fails());
        let labels: Vec<(&str, bool)> = r.factors.iter().map(|f| (f.label.as_str(), f.satisfied())).collect();
        assert_eq!(labels, vec![("th1^2-4th2", false), ("1-4th3", false), ("F", true)]);
    }
}
