use crate::{Command, Common, ModelArgs};
use polymodels::algebra::{poly, ExactScalar, MultiPoly};
use polymodels::catalog::{
    all_models, boz_identifications, listed_covers, model, octahedral_quartic_coefficients, ModelId, PolynomialModel,
};
use polymodels::groups::{construct_named, GroupLabel};
use polymodels::modelcheck::{
    assemble_operator, block_spectra, closure_solve, cornulier_check, drift_closure, measure_factors,
    quartic_identity_residual, spherical_index, verify_boz, verify_cover, verify_model, ModelReport,
};
use polymodels::numerics::{
    ellipticity_check, numeric_eigenvalues, render_boundary, sample_interior, symmetry_check, write_atomic,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt;
use std::path::Path;

/// Human-readable lines go to standard error when the JSON goes to standard output.
macro_rules! say {
    ($common:expr, $($arg:tt)*) => {
        if $common.json.as_deref().is_some_and(|p| p.as_os_str() == "-") {
            eprintln!($($arg)*)
        } else {
            println!($($arg)*)
        }
    };
}

/// Failure to run a command at all, as opposed to a failing check.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Io(s) => write!(f, "i/o: {s}"),
        }
    }
}

/// Names of the failing checks; empty on success.
pub struct Outcome {
    pub failing: Vec<String>,
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn resolve(m: &ModelArgs) -> Result<PolynomialModel, CliError> {
    let lower = m.model.to_ascii_lowercase();
    let id: ModelId = match (lower.strip_prefix("omega").and_then(|s| s.parse::<u32>().ok()), m.n) {
        (Some(k), n) => ModelId::new(k, n).map_err(usage)?,
        (None, None) => lower.parse().map_err(usage)?,
        (None, Some(_)) => return Err(usage(format!("unknown model {:?}", m.model))),
    };
    Ok(model(id))
}

fn emit(common: &Common, command: &str, failing: &[String], mut body: Value) -> Result<(), CliError> {
    let Some(path) = &common.json else { return Ok(()) };
    let obj = body.as_object_mut().expect("object body");
    obj.insert("command".into(), json!(command));
    obj.insert("passed".into(), json!(failing.is_empty()));
    obj.insert("failing".into(), json!(failing));
    let text = serde_json::to_string_pretty(&body).expect("serialisable") + "\n";
    if path.as_os_str() == "-" {
        print!("{text}");
        return Ok(());
    }
    write_atomic(path, text.as_bytes()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Molien { group, n, p, terms, degree, common } => molien(&group, n.or(p), terms, degree, &common),
        Command::Model { model: m, common } => {
            let m = resolve(&m)?;
            let body = m.to_json();
            if common.json.is_none() {
                println!("{}", serde_json::to_string_pretty(&body).expect("serialisable"));
            }
            emit(&common, "model", &[], json!({ "model": body }))?;
            Ok(Outcome { failing: vec![] })
        }
        Command::Verify { model: m, degree, samples, seed, common } => {
            verify(&resolve(&m)?, degree, samples, seed, &common)
        }
        Command::VerifyAll { n, degree, jobs, common } => verify_all(n, degree, jobs, &common),
        Command::Render { model: m, grid, out, common } => render(&resolve(&m)?, grid, &out, &common),
        Command::Spectrum { model: m, degree, common } => spectrum(&resolve(&m)?, degree, &common),
        Command::Covers { n, common } => covers(n, &common),
        Command::Cornulier { p, common } => cornulier(p, &common),
    }
}

fn molien(name: &str, n: Option<u32>, terms: usize, degree: Option<u32>, common: &Common) -> Result<Outcome, CliError> {
    let label = GroupLabel::parse(name, n).map_err(usage)?;
    let g = construct_named(&label).map_err(usage)?;
    let mut failing = Vec::new();
    let series = match g.molien(terms) {
        Ok(s) => s,
        Err(e) => {
            failing.push("molien".to_string());
            emit(common, "molien", &failing, json!({"group": g.name(), "order": g.order(), "error": e.to_string()}))?;
            return Ok(Outcome { failing });
        }
    };
    say!(common, "group {} (order {})", g.name(), g.order());
    say!(common, "F(t) = ({}) / ({})", series.numerator, series.denominator);
    say!(common, "coefficients {:?}", series.coefficients);
    let mut reynolds = Vec::new();
    if let Some(top) = degree {
        let needed = top as usize + 1;
        let long = if needed > series.coefficients.len() {
            g.molien(needed).map_err(usage)?.coefficients
        } else {
            series.coefficients.clone()
        };
        for d in 0..=top {
            let r = g.reynolds_dimension(d);
            let ok = r as u64 == long[d as usize];
            say!(common, "degree {d}: molien {} reynolds {r} {}", long[d as usize], status(ok));
            if !ok {
                failing.push(format!("reynolds_dimension[{d}]"));
            }
            reynolds.push(json!({"degree": d, "molien": long[d as usize], "reynolds": r, "agree": ok}));
        }
    }
    let mut body = series.to_json();
    body["group"] = json!(g.name());
    body["order"] = json!(g.order());
    body["reynolds"] = json!(reynolds);
    emit(common, "molien", &failing, body)?;
    Ok(Outcome { failing })
}

fn report_line(r: &ModelReport) -> String {
    let checks: Vec<String> = r.checks.iter().map(|c| format!("{}={}", c.name, status(c.passed))).collect();
    checks.join(" ")
}

/// Floating-point checks of one model on a fresh sample cloud.
fn numerics(m: &PolynomialModel, samples: usize, seed: u64) -> (bool, Value) {
    let cloud = match sample_interior(m, samples, seed) {
        Ok(c) => c,
        Err(e) => return (false, json!({"error": e.to_string()})),
    };
    let ell = ellipticity_check(m, &cloud);
    let k = measure_factors(m).len();
    let alpha = vec![ExactScalar::from_frac(1, 2); k];
    let sym = symmetry_check(m, &alpha, &poly("1 + th1^2"), &poly("th1 + th2 + th1 th2"), &cloud);
    let sym_ok = sym.as_ref().is_ok_and(|s| s.passed);
    (
        ell.passed && sym_ok,
        json!({
            "samples": samples,
            "seed": seed,
            "ellipticity": ell,
            "symmetry": sym.map(|s| json!(s)).unwrap_or_else(|e| json!({"error": e.to_string()})),
        }),
    )
}

fn verify(
    m: &PolynomialModel,
    cap: u32,
    samples: Option<usize>,
    seed: u64,
    common: &Common,
) -> Result<Outcome, CliError> {
    let r = verify_model(m, cap);
    say!(common, "{} {}", r.model, report_line(&r));
    for mm in &r.mismatches {
        say!(common, "  mismatch-with-source {}: printed {} recomputed {}", mm.site, mm.printed, mm.recomputed);
    }
    let mut failing: Vec<String> = r.failing().iter().map(|s| s.to_string()).collect();
    let mut body = json!({ "report": r.to_json(common.deterministic) });
    if let Some(s) = samples {
        let (ok, v) = numerics(m, s, seed);
        say!(common, "  numerics {}", status(ok));
        if !ok {
            failing.push("numerics".into());
        }
        body["numerics"] = v;
    }
    emit(common, "verify", &failing, body)?;
    Ok(Outcome { failing })
}

fn verify_all(n: u32, cap: u32, jobs: usize, common: &Common) -> Result<Outcome, CliError> {
    let models = all_models(&[n]);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| usage(e.to_string()))?;
    let reports: Vec<ModelReport> = pool.install(|| models.par_iter().map(|m| verify_model(m, cap)).collect());
    say!(
        common,
        "{:<14} {:<8} {:<10} {:<10} {:<8} {:<6} {}",
        "model",
        "group",
        "theta1",
        "theta2",
        "eta",
        "status",
        "flags"
    );
    let mut failing = Vec::new();
    let mut rows = Vec::new();
    for (m, r) in models.iter().zip(&reports) {
        let flags = r.mismatches.len();
        let st = if !r.passed() {
            "FAIL"
        } else if flags > 0 {
            "PASS*"
        } else {
            "PASS"
        };
        say!(
            common,
            "{:<14} {:<8} {:<10} {:<10} {:<8} {:<6} {}",
            m.id.to_string(),
            m.summary.group,
            m.summary.theta1,
            m.summary.theta2,
            m.summary.eta.as_deref().unwrap_or("-"),
            st,
            r.mismatches.iter().map(|x| x.site.as_str()).collect::<Vec<_>>().join("; ")
        );
        failing.extend(r.failing().iter().map(|c| format!("{}:{c}", m.id.slug())));
        rows.push(json!({
            "model": m.id.to_string(),
            "group": m.summary.group,
            "theta1": m.summary.theta1,
            "theta2": m.summary.theta2,
            "eta": m.summary.eta,
            "boundary": m.summary.boundary_corrected.to_text(),
            "status": st,
        }));
    }
    say!(common, "PASS* = passes with mismatches-with-source (suspected typos in the printed data)");
    let body = json!({
        "n": n,
        "summary": rows,
        "reports": reports.iter().map(|r| r.to_json(common.deterministic)).collect::<Vec<_>>(),
    });
    emit(common, "verify-all", &failing, body)?;
    Ok(Outcome { failing })
}

fn with_ext(stem: &Path, ext: &str) -> std::path::PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(ext);
    s.into()
}

fn render(m: &PolynomialModel, grid: usize, out: &Path, common: &Common) -> Result<Outcome, CliError> {
    if grid == 0 {
        return Err(usage("--grid must be positive"));
    }
    let r = render_boundary(m, grid, 0.0);
    let (svg, csv) = (with_ext(out, ".svg"), with_ext(out, ".csv"));
    r.write(&svg, &csv).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let vars = m.system.vars();
    let worst = r
        .points()
        .map(|(k, p)| {
            let x = r.lift(p);
            r.factors[k].1.eval_f64(|v| vars.iter().position(|w| *w == v).map_or(0.0, |i| x[i])).abs()
        })
        .fold(0.0, f64::max);
    let ok = worst < 1e-3;
    say!(common, "{}: {} segments, max |P| on contour {worst:.3e} {}", r.model, r.segments.len(), status(ok));
    say!(common, "wrote {} and {}", svg.display(), csv.display());
    let failing = if ok { vec![] } else { vec!["contour_refinement".to_string()] };
    let body = json!({
        "model": r.model,
        "grid": grid,
        "slice": r.slice.as_ref().map(|(v, z)| json!({"var": v, "value": z})),
        "factors": r.factors.iter().map(|(l, p)| json!({"label": l, "poly": p.to_text()})).collect::<Vec<_>>(),
        "segments": r.segments.len(),
        "max_residual": worst,
        "svg": svg.display().to_string(),
        "csv": csv.display().to_string(),
    });
    emit(common, "render", &failing, body)?;
    Ok(Outcome { failing })
}

fn spectrum(m: &PolynomialModel, cap: u32, common: &Common) -> Result<Outcome, CliError> {
    let mut failing = Vec::new();
    let g = closure_solve(&m.system).expressed;
    let drift = drift_closure(&m.system).ok();
    let (Some(g), Some(drift)) = (g, drift) else {
        failing.push("closure".into());
        emit(
            common,
            "spectrum",
            &failing,
            json!({"model": m.id.to_string(), "error": "no closed co-metric or drift"}),
        )?;
        return Ok(Outcome { failing });
    };
    let op = match assemble_operator(&m.system, &g, &drift, cap) {
        Ok(op) => op,
        Err(e) => {
            failing.push("assemble_operator".into());
            emit(common, "spectrum", &failing, json!({"model": m.id.to_string(), "error": e.to_string()}))?;
            return Ok(Outcome { failing });
        }
    };
    let blocks = block_spectra(&op);
    let mut out = Vec::new();
    for b in &blocks {
        let spherical = b.all_exact() && b.exact.iter().all(|(l, _)| spherical_index(l).is_some());
        if !spherical {
            failing.push(format!("block[{}]", b.valuation));
        }
        let eig: Vec<String> = b.exact.iter().map(|(l, k)| format!("{}^{k}", l.to_text())).collect();
        say!(common, "valuation {:>2} size {:>3}: {} {}", b.valuation, b.size, eig.join(" "), status(spherical));
        out.push(json!({
            "valuation": b.valuation,
            "size": b.size,
            "exact": b.exact.iter().map(|(l, k)| json!({"value": l.to_text(), "multiplicity": k, "m": spherical_index(l)})).collect::<Vec<_>>(),
            "numeric": b.numeric.iter().map(|(re, im, c)| json!({"re": re, "im": im, "certified": c})).collect::<Vec<_>>(),
        }));
    }
    let numeric = match numeric_eigenvalues(&op.matrix, 1e-8) {
        Ok(v) => json!(v),
        Err(e) => {
            failing.push("numeric_eigenvalues".into());
            json!({"error": e.to_string()})
        }
    };
    let body = json!({
        "model": m.id.to_string(),
        "cap": cap,
        "basis_size": op.basis.len(),
        "block_triangular": op.is_block_triangular(),
        "blocks": out,
        "numeric": numeric,
    });
    emit(common, "spectrum", &failing, body)?;
    Ok(Outcome { failing })
}

fn covers(n: u32, common: &Common) -> Result<Outcome, CliError> {
    let mut failing = Vec::new();
    let mut cov = Vec::new();
    for c in listed_covers(n) {
        let v = verify_cover(&c);
        say!(common, "cover {} -> {} (degree {}): {}", v.source, v.target, c.degree, status(v.passed));
        if !v.passed {
            failing.push(format!("cover {} -> {}", v.source, v.target));
        }
        cov.push(json!({
            "source": v.source,
            "target": v.target,
            "degree": c.degree,
            "components_match": v.components_match,
            "boundary_quotient": v.boundary_quotient.as_ref().map(MultiPoly::to_text),
            "passed": v.passed,
        }));
    }
    let coeffs = octahedral_quartic_coefficients();
    let quartic = quartic_identity_residual(&coeffs).is_zero();
    say!(
        common,
        "quartic identity (a,b,c,d) = ({}): {}",
        coeffs.iter().map(ExactScalar::to_text).collect::<Vec<_>>().join(", "),
        status(quartic)
    );
    if !quartic {
        failing.push("quartic_identity".into());
    }
    let mut boz = Vec::new();
    for id in boz_identifications() {
        let v = verify_boz(&id);
        say!(
            common,
            "classical ({}) {} via {}: {}",
            id.number,
            id.name,
            v.model.as_deref().unwrap_or("-"),
            status(v.passed)
        );
        if !v.passed {
            failing.push(format!("classical ({})", id.number));
        }
        boz.push(json!({
            "number": id.number,
            "name": id.name,
            "model": v.model,
            "constant": v.constant.as_ref().map(ExactScalar::to_text),
            "passed": v.passed,
        }));
    }
    let body = json!({
        "n": n,
        "covers": cov,
        "quartic_identity": {"coefficients": coeffs.iter().map(ExactScalar::to_text).collect::<Vec<_>>(), "passed": quartic},
        "classical": boz,
    });
    emit(common, "covers", &failing, body)?;
    Ok(Outcome { failing })
}

fn cornulier(p: u32, common: &Common) -> Result<Outcome, CliError> {
    if p < 2 {
        return Err(usage("--p must be at least 2"));
    }
    let r = cornulier_check(p);
    let primaries_fail = !r.primaries.is_closed();
    let control = primaries_fail && r.with_eta3_closed && r.boundary_fails();
    say!(common, "primaries closed: {}", r.primaries.is_closed());
    say!(common, "with eta3 closed: {}", r.with_eta3_closed);
    for f in &r.factors {
        say!(common, "  factor {}: boundary equation {}", f.label, if f.satisfied() { "holds" } else { "fails" });
    }
    say!(common, "negative control {}", status(control));
    let failing = if control { vec![] } else { vec!["negative_control".to_string()] };
    emit(common, "cornulier", &failing, json!({"report": r.to_json(), "negative_control": control}))?;
    Ok(Outcome { failing })
}
