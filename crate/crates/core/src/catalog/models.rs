//! Declared model data: co-metrics, determinant factorizations, boundary
//! factors with their multipliers, domains and summary-table rows.
//!
//! Nothing here is verified; `modelcheck` recomputes every item. Where a
//! printed value is known to be wrong the corrected value is stored together
//! with the printed one.

use super::systems::{icosahedral_s, swallow_tail, swallow_tail_in_square};
use super::{invariant_system, InvariantSystem, ModelId};
use crate::algebra::{poly, ExactScalar, MultiPoly, PolyMatrix};
use serde_json::{json, Value};

/// Provenance of a stored value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// Transcribed as printed.
    Printed,
    /// The printed value is a suspected typo; `printed` keeps it.
    Corrected,
    /// Not printed; obtained by computation or by hand.
    Derived,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Printed => "printed",
            Status::Corrected => "paper-typo-suspected",
            Status::Derived => "derived",
        }
    }
}

/// A polynomial with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declared {
    pub value: MultiPoly,
    pub printed: Option<MultiPoly>,
    pub status: Status,
}

impl Declared {
    pub fn printed(value: MultiPoly) -> Self {
        Declared { printed: Some(value.clone()), value, status: Status::Printed }
    }

    pub fn corrected(printed: MultiPoly, value: MultiPoly) -> Self {
        Declared { value, printed: Some(printed), status: Status::Corrected }
    }

    pub fn derived(value: MultiPoly) -> Self {
        Declared { value, printed: None, status: Status::Derived }
    }

    fn to_json(&self) -> Value {
        json!({
            "value": self.value.to_text(),
            "printed": self.printed.as_ref().map(|p| p.to_text()),
            "status": self.status.as_str(),
        })
    }
}

/// A factor of the co-metric determinant.
#[derive(Clone, Debug)]
pub struct BoundaryFactor {
    pub label: String,
    pub poly: Declared,
    /// Whether the factor is claimed to satisfy the boundary equation.
    pub satisfies_boundary: bool,
    /// Declared `L_{i,q}` per coordinate, when stated.
    pub multipliers: Option<Vec<Declared>>,
    /// Set for irreducible components of a declared product factor; their
    /// multipliers are derived rather than printed.
    pub component_of: Option<String>,
}

impl BoundaryFactor {
    fn new(label: &str, poly: Declared, satisfies: bool, multipliers: Option<Vec<Declared>>) -> Self {
        BoundaryFactor {
            label: label.to_string(),
            poly,
            satisfies_boundary: satisfies,
            multipliers,
            component_of: None,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "poly": self.poly.to_json(),
            "satisfies_boundary": self.satisfies_boundary,
            "multipliers": self.multipliers.as_ref().map(|m| m.iter().map(Declared::to_json).collect::<Vec<_>>()),
            "component_of": self.component_of,
        })
    }
}

/// Declared determinant: `constant · Π factor^multiplicity`.
#[derive(Clone, Debug)]
pub struct Determinant {
    /// Declared constant; `None` when only stated up to a constant.
    pub constant: Option<Declared>,
    pub factors: Vec<(Declared, u32)>,
    /// Whether the determinant is a Gram determinant of three gradients on
    /// the sphere, hence zero modulo the syzygy.
    pub vanishes_mod_syzygy: bool,
}

/// One row of the summary tables.
#[derive(Clone, Debug)]
pub struct SummaryRow {
    pub group: String,
    pub theta1: String,
    pub theta2: String,
    pub eta: Option<String>,
    /// The boundary column in `(X, Y, Z)`, as printed.
    pub boundary_printed: MultiPoly,
    /// The same column with known corrections applied.
    pub boundary_corrected: MultiPoly,
}

/// A cataloged polynomial model as declared.
#[derive(Clone, Debug)]
pub struct PolynomialModel {
    pub id: ModelId,
    pub system: InvariantSystem,
    /// Co-metric in invariant coordinates with known corrections applied.
    pub cometric: PolyMatrix,
    /// Entries whose printed form differs from `cometric`: `(i, j, printed)`.
    pub printed_typos: Vec<(usize, usize, MultiPoly)>,
    /// Whether the matrix is printed at all.
    pub cometric_printed: bool,
    pub boundary_factors: Vec<BoundaryFactor>,
    pub determinant: Determinant,
    pub syzygy: Option<MultiPoly>,
    /// The domain is `{ p > 0 for p in domain }`.
    pub domain: Vec<MultiPoly>,
    /// Bounding box per coordinate.
    pub domain_box: Vec<(f64, f64)>,
    pub summary: SummaryRow,
}

impl PolynomialModel {
    /// Factors of the declared determinant that do not bound the domain.
    pub fn det_extra_factors(&self) -> Vec<MultiPoly> {
        self.determinant
            .factors
            .iter()
            .map(|(f, _)| f.value.clone())
            .filter(|f| !self.boundary_factors.iter().any(|b| b.satisfies_boundary && &b.poly.value == f))
            .collect()
    }

    /// Product of the factors that satisfy the boundary equation and are not
    /// components of another listed factor.
    pub fn boundary_product(&self) -> MultiPoly {
        self.boundary_factors
            .iter()
            .filter(|b| b.satisfies_boundary && b.component_of.is_none())
            .fold(MultiPoly::one(), |acc, b| &acc * &b.poly.value)
    }

    pub fn to_json(&self) -> Value {
        let n = self.cometric.size();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                entries.push(json!({"i": i, "j": j, "value": self.cometric.get(i, j).to_text()}));
            }
        }
        json!({
            "model": self.id.to_string(),
            "slug": self.id.slug(),
            "group": self.system.group.to_string(),
            "invariants": self.system.invariants.iter().map(|i| json!({
                "label": i.label, "var": i.var, "ambient": i.ambient.to_text(), "valuation": i.valuation,
            })).collect::<Vec<_>>(),
            "cometric": entries,
            "cometric_printed": self.cometric_printed,
            "printed_typos": self.printed_typos.iter().map(|(i, j, p)| json!({"i": i, "j": j, "printed": p.to_text()})).collect::<Vec<_>>(),
            "boundary_factors": self.boundary_factors.iter().map(BoundaryFactor::to_json).collect::<Vec<_>>(),
            "determinant": {
                "constant": self.determinant.constant.as_ref().map(Declared::to_json),
                "factors": self.determinant.factors.iter().map(|(f, m)| json!({"factor": f.to_json(), "multiplicity": m})).collect::<Vec<_>>(),
                "vanishes_mod_syzygy": self.determinant.vanishes_mod_syzygy,
            },
            "syzygy": self.syzygy.as_ref().map(|s| s.to_text()),
            "domain": self.domain.iter().map(|p| p.to_text()).collect::<Vec<_>>(),
            "domain_box": self.domain_box,
            "summary": {
                "group": self.summary.group,
                "theta1": self.summary.theta1,
                "theta2": self.summary.theta2,
                "eta": self.summary.eta,
                "boundary_printed": self.summary.boundary_printed.to_text(),
                "boundary_corrected": self.summary.boundary_corrected.to_text(),
            },
        })
    }
}

fn p(s: impl AsRef<str>) -> MultiPoly {
    poly(s.as_ref())
}

fn pr(s: impl AsRef<str>) -> Declared {
    Declared::printed(p(s))
}

fn dv(s: impl AsRef<str>) -> Declared {
    Declared::derived(p(s))
}

fn mults(items: &[&str]) -> Option<Vec<Declared>> {
    Some(items.iter().map(pr).collect())
}

fn int(k: i64) -> Declared {
    Declared::printed(MultiPoly::int(k))
}

fn symmetric(n: usize, upper: &[&str]) -> PolyMatrix {
    PolyMatrix::symmetric_from_upper(n, upper.iter().map(p).collect::<Vec<_>>())
}

fn row(group: &str, t1: &str, t2: &str, eta: Option<&str>, printed: MultiPoly, corrected: MultiPoly) -> SummaryRow {
    SummaryRow {
        group: group.to_string(),
        theta1: t1.to_string(),
        theta2: t2.to_string(),
        eta: eta.map(str::to_string),
        boundary_printed: printed,
        boundary_corrected: corrected,
    }
}

/// `H_n(X, Y) = (1 − X)ⁿ − Y` with `X, Y` replaced by the given expressions.
fn h_n(n: u32, x: &str, y: &str) -> MultiPoly {
    p(format!("(1 - ({x}))^{n} - ({y})"))
}

/// The summary-table cubic `H` as printed (constant term missing).
fn h_printed(x: &str, y: &str) -> MultiPoly {
    p(format!("108 ({x})^2 - 20 ({x}) - 2 ({y})^3 + 5 ({y})^2 - 4 ({y}) + 36 ({x}) ({y})"))
}

fn h_true(x: &str, y: &str) -> MultiPoly {
    &h_printed(x, y) + &MultiPoly::one()
}

/// Largest value of `|z| (1 − z²)^{n/2}` on `[−1, 1]`.
fn z_times_radius_power(n: u32) -> f64 {
    let n = n as f64;
    (1.0 / (n + 1.0)).sqrt() * (n / (n + 1.0)).powf(n / 2.0)
}

fn pad(lo: f64, hi: f64) -> (f64, f64) {
    let m = 0.02 * (hi - lo);
    (lo - m, hi + m)
}

struct Parts {
    cometric: PolyMatrix,
    printed_typos: Vec<(usize, usize, MultiPoly)>,
    cometric_printed: bool,
    boundary_factors: Vec<BoundaryFactor>,
    determinant: Determinant,
    domain: Vec<MultiPoly>,
    domain_box: Vec<(f64, f64)>,
    summary: SummaryRow,
}

/// The declared model for a catalog entry.
pub fn model(id: ModelId) -> PolynomialModel {
    let system = invariant_system(id);
    let parts = match (id.index, id.n) {
        (k, Some(n)) => family(k, n),
        (k, None) => polyhedral(k),
    };
    PolynomialModel {
        id,
        syzygy: system.syzygy.clone(),
        system,
        cometric: parts.cometric,
        printed_typos: parts.printed_typos,
        cometric_printed: parts.cometric_printed,
        boundary_factors: parts.boundary_factors,
        determinant: parts.determinant,
        domain: parts.domain,
        domain_box: parts.domain_box,
        summary: parts.summary,
    }
}

/// All cataloged models for the given family parameters.
pub fn all_models(ns: &[u32]) -> Vec<PolynomialModel> {
    ModelId::all(ns).into_iter().map(model).collect()
}

fn family(k: u32, n: u32) -> Parts {
    let nn = n * n;
    let n1 = n + 1;
    let m = n - 1;
    let det = |constant: Option<Declared>, factors: Vec<(Declared, u32)>, three: bool| Determinant {
        constant,
        factors,
        vanishes_mod_syzygy: three,
    };
    let zr = z_times_radius_power(n);
    match k {
        1 => {
            let pp = format!("(1 - th1^2)^{n} - th2^2");
            let mut factors = vec![BoundaryFactor::new(
                "P",
                pr(&pp),
                true,
                mults(&[&format!("-{} th1", 2 * n), &format!("-{} th2", 2 * nn)]),
            )];
            let mut domain = vec![p(&pp)];
            if n.is_multiple_of(2) {
                let h = n / 2;
                let parts = [
                    ("P1", format!("(1 - th1^2)^{h} - th2"), format!("-{nn} ((1 - th1^2)^{} + th2)", h - 1)),
                    ("P2", format!("(1 - th1^2)^{h} + th2"), format!("{nn} ((1 - th1^2)^{} - th2)", h - 1)),
                ];
                domain = vec![p("1 - th1^2")];
                for (label, poly_s, l2) in parts {
                    let mut f =
                        BoundaryFactor::new(label, pr(&poly_s), true, Some(vec![dv(format!("-{n} th1")), dv(&l2)]));
                    f.component_of = Some("P".into());
                    domain.push(p(&poly_s));
                    factors.push(f);
                }
            }
            Parts {
                cometric: symmetric(
                    2,
                    &["1 - th1^2", &format!("-{n} th1 th2"), &format!("{nn} ((1 - th1^2)^{m} - th2^2)")],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: factors,
                determinant: det(Some(int(nn as i64)), vec![(pr(&pp), 1)], false),
                domain,
                domain_box: vec![pad(-1.0, 1.0), pad(-1.0, 1.0)],
                summary: row("C_n|D_n", "z", "X_n", None, h_n(n, "X^2", "Y^2"), h_n(n, "X^2", "Y^2")),
            }
        }
        2 => {
            let pp = format!("(1 - th1^2)^{n} - th2^2 - eta^2");
            Parts {
                cometric: symmetric(
                    3,
                    &[
                        "1 - th1^2",
                        &format!("-{n} th1 th2"),
                        &format!("-{n} th1 eta"),
                        &format!("{nn} ((1 - th1^2)^{m} - th2^2)"),
                        &format!("-{nn} th2 eta"),
                        &format!("{nn} ((1 - th1^2)^{m} - eta^2)"),
                    ],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![BoundaryFactor::new(
                    "P",
                    pr(&pp),
                    true,
                    mults(&[&format!("-{} th1", 2 * n), &format!("-{} th2", 2 * nn), &format!("-{} eta", 2 * nn)]),
                )],
                determinant: det(Some(int((nn * nn) as i64)), vec![(pr("1 - th1^2"), m), (pr(&pp), 1)], true),
                domain: vec![p("1 - th1^2"), p(&pp)],
                domain_box: vec![pad(-1.0, 1.0), pad(-1.0, 1.0), pad(-1.0, 1.0)],
                summary: row(
                    "C_n",
                    "z",
                    "X_n",
                    Some("Y_n"),
                    &h_n(n, "X^2", "Y^2") - &p("Z^2"),
                    &h_n(n, "X^2", "Y^2") - &p("Z^2"),
                ),
            }
        }
        3 => {
            let p1 = format!("(1 - th1)^{n} - th2^2");
            Parts {
                cometric: symmetric(
                    2,
                    &["4 th1 (1 - th1)", &format!("-{} th1 th2", 2 * n), &format!("{nn} ((1 - th1)^{m} - th2^2)")],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new("th1", pr("th1"), true, mults(&["4 (1 - th1)", &format!("-{} th2", 2 * n)])),
                    BoundaryFactor::new(
                        "P1",
                        pr(&p1),
                        true,
                        mults(&[&format!("-{} th1", 4 * n), &format!("-{} th2", 2 * nn)]),
                    ),
                ],
                determinant: det(None, vec![(pr("th1"), 1), (pr(&p1), 1)], false),
                domain: vec![p("th1"), p("1 - th1"), p(&p1)],
                domain_box: vec![pad(0.0, 1.0), pad(-1.0, 1.0)],
                summary: row(
                    if n.is_multiple_of(2) { "D_n,J" } else { "D_n|D_2n" },
                    "z^2",
                    "X_n",
                    None,
                    &p("X") * &h_n(n, "X", "Y^2"),
                    &p("X") * &h_n(n, "X", "Y^2"),
                ),
            }
        }
        4 => {
            let p1 = format!("(1 - th1)^{n} - th2^2 - eta^2");
            let b = &p("X") * &(&h_n(n, "X", "Y^2") - &p("Z^2"));
            Parts {
                cometric: symmetric(
                    3,
                    &[
                        "4 th1 (1 - th1)",
                        &format!("-{} th1 th2", 2 * n),
                        &format!("-{} th1 eta", 2 * n),
                        &format!("{nn} ((1 - th1)^{m} - th2^2)"),
                        &format!("-{nn} th2 eta"),
                        &format!("{nn} ((1 - th1)^{m} - eta^2)"),
                    ],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "th1",
                        pr("th1"),
                        true,
                        mults(&["4 (1 - th1)", &format!("-{} th2", 2 * n), &format!("-{} eta", 2 * n)]),
                    ),
                    BoundaryFactor::new(
                        "P1",
                        pr(&p1),
                        true,
                        mults(&[&format!("-{} th1", 4 * n), &format!("-{} th2", 2 * nn), &format!("-{} eta", 2 * nn)]),
                    ),
                    BoundaryFactor::new("1-th1", pr("1 - th1"), false, None),
                ],
                determinant: det(
                    Some(Declared::corrected(MultiPoly::int((nn * nn) as i64), MultiPoly::int(4 * (nn * nn) as i64))),
                    vec![(pr("1 - th1"), m), (pr("th1"), 1), (pr(&p1), 1)],
                    true,
                ),
                domain: vec![p("th1"), p("1 - th1"), p(&p1)],
                domain_box: vec![pad(0.0, 1.0), pad(-1.0, 1.0), pad(-1.0, 1.0)],
                summary: row(
                    if n.is_multiple_of(2) { "C_n,J" } else { "C_n|C_2n" },
                    "z^2",
                    "X_n",
                    Some("Y_n"),
                    b.clone(),
                    b,
                ),
            }
        }
        5 => {
            let p1 = format!("th1 (1 - th1)^{n} - th1 th2^2 - eta^2");
            let p2_printed = p(format!("(1 - th1)^{m} ({} th1 - 1) - th2^2", nn - 1));
            let p2 = Declared::corrected(p2_printed, p(format!("(1 - th1)^{m} (1 + {} th1) - th2^2", nn - 1)));
            let b = &(&p("X") * &h_n(n, "X", "Y^2")) - &p("Z^2");
            Parts {
                cometric: symmetric(
                    3,
                    &[
                        "4 th1 (1 - th1)",
                        &format!("-{} th1 th2", 2 * n),
                        &format!("-2 eta ({n1} th1 - 1)"),
                        &format!("{nn} ((1 - th1)^{m} - th2^2)"),
                        &format!("-{} th2 eta", n * n1),
                        &format!("(1 - th1)^{m} (1 + {} th1) - th2^2 - {} eta^2", nn - 1, n1 * n1),
                    ],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "P1",
                        pr(&p1),
                        true,
                        mults(&[
                            &format!("4 (1 - {n1} th1)"),
                            &format!("-{} th2", 2 * n * n1),
                            &format!("-{} eta", 2 * n1 * n1),
                        ]),
                    ),
                    BoundaryFactor::new("P2", p2.clone(), false, None),
                ],
                determinant: det(Some(int(4 * nn as i64)), vec![(pr(&p1), 1), (p2, 1)], true),
                domain: vec![p("th1"), p("1 - th1"), p(&p1)],
                domain_box: vec![pad(0.0, 1.0), pad(-1.0, 1.0), pad(-zr, zr)],
                summary: row("D_n", "z^2", "X_n", Some("z Y_n"), b.clone(), b),
            }
        }
        6 => {
            let hh = format!("(1 - th1)^{n} - th2");
            let b = &p("X Y") * &h_n(n, "X", "Y");
            Parts {
                cometric: symmetric(
                    2,
                    &[
                        "4 th1 (1 - th1)",
                        &format!("-{} th1 th2", 4 * n),
                        &format!("{} th2 ((1 - th1)^{m} - th2)", 4 * nn),
                    ],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "th1",
                        pr("th1"),
                        true,
                        Some(vec![dv("4 (1 - th1)"), dv(format!("-{} th2", 4 * n))]),
                    ),
                    BoundaryFactor::new(
                        "th2",
                        pr("th2"),
                        true,
                        Some(vec![dv(format!("-{} th1", 4 * n)), dv(format!("{} ((1 - th1)^{m} - th2)", 4 * nn))]),
                    ),
                    BoundaryFactor::new(
                        "H",
                        pr(&hh),
                        true,
                        Some(vec![dv(format!("-{} th1", 4 * n)), dv(format!("-{} th2", 4 * nn))]),
                    ),
                ],
                determinant: det(
                    Some(Declared::derived(MultiPoly::int(16 * nn as i64))),
                    vec![(pr("th1"), 1), (pr("th2"), 1), (pr(&hh), 1)],
                    false,
                ),
                domain: vec![p("th1"), p("th2"), p(&hh)],
                domain_box: vec![pad(0.0, 1.0), pad(0.0, 1.0)],
                summary: row("D_2n,J", "z^2", "X_n^2", None, b.clone(), b),
            }
        }
        7 => {
            let pp = format!("th1 ((1 - th1)^{n} - th2) - eta^2");
            let r7 = format!("(1 - th1)^{m} (1 + {} th1) - th2", nn - 1);
            let g22 = format!("{} th2 ((1 - th1)^{m} - th2)", 4 * nn);
            let g33 = format!("(1 - th1)^{m} (1 + {} th1) - {} eta^2 - th2", nn - 1, n1 * n1);
            let b = &(&p("X") * &h_n(n, "X", "Y")) - &p("Z^2");
            Parts {
                cometric: symmetric(
                    3,
                    &[
                        "4 th1 (1 - th1)",
                        &format!("-{} th1 th2", 4 * n),
                        &format!("2 eta (1 - {n1} th1)"),
                        &g22,
                        &format!("-{} th2 eta", 2 * n * n1),
                        &g33,
                    ],
                ),
                printed_typos: vec![
                    (1, 1, p(format!("{} th2 ((1 - th1)^{m} th1 - th2)", 4 * nn))),
                    (2, 2, p(format!("(1 - th1)^{m} (1 + {} th1) - {} eta - th2", nn - 1, n1 * n1))),
                ],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "P",
                        pr(&pp),
                        true,
                        mults(&[
                            &format!("4 (1 - {n1} th1)"),
                            &format!("-{} th2", 4 * n * n1),
                            &format!("-{} eta", 2 * n1 * n1),
                        ]),
                    ),
                    BoundaryFactor::new(
                        "th2",
                        pr("th2"),
                        true,
                        mults(&[
                            &format!("-{} th1", 4 * n),
                            &format!("{} ((1 - th1)^{m} - th2)", 4 * nn),
                            &format!("-{} eta", 2 * n * n1),
                        ]),
                    ),
                    BoundaryFactor::new("R7", dv(&r7), false, None),
                ],
                determinant: det(
                    Some(Declared::derived(MultiPoly::int(16 * nn as i64))),
                    vec![(pr("th2"), 1), (pr(&pp), 1), (dv(&r7), 1)],
                    true,
                ),
                domain: vec![p("th1"), p("th2"), p(&pp)],
                domain_box: vec![pad(0.0, 1.0), pad(0.0, 1.0), pad(-zr, zr)],
                summary: row(
                    if n.is_multiple_of(2) { "D_n|D_2n" } else { "D_n,J" },
                    "z^2",
                    "X_n^2",
                    Some("z Y_n"),
                    b.clone(),
                    &p("Y") * &b,
                ),
            }
        }
        8 => {
            let p1 = "th1 th2 - eta^2".to_string();
            let p2 = format!("th2 - (1 - th1)^{n}");
            let r8 = format!("{nn} th1 (1 - th1)^{m} + th2");
            let b = &p("X Y - Z^2") * &h_n(n, "X", "Y");
            Parts {
                cometric: symmetric(
                    3,
                    &[
                        "4 th1 (1 - th1)",
                        &format!("-{} th1 th2", 4 * n),
                        &format!("2 eta (1 - {n1} th1)"),
                        &format!("{} th2 ((1 - th1)^{m} - th2)", 4 * nn),
                        &format!("{} eta ({n} (1 - th1)^{m} - {n1} th2)", 2 * n),
                        &format!("{nn} th1 (1 - th1)^{m} + th2 - {} eta^2", n1 * n1),
                    ],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "P1",
                        pr(&p1),
                        true,
                        Some(vec![
                            pr(format!("4 (1 - {n1} th1)")),
                            Declared::corrected(
                                p(format!("{} ((1 - th1)^{m} - {n1} th2)", 4 * n)),
                                p(format!("{} ({n} (1 - th1)^{m} - {n1} th2)", 4 * n)),
                            ),
                            pr(format!("-{} eta", 2 * n1 * n1)),
                        ]),
                    ),
                    BoundaryFactor::new(
                        "P2",
                        pr(&p2),
                        true,
                        mults(&[
                            &format!("-{} th1", 4 * n),
                            &format!("-{} th2", 4 * nn),
                            &format!("-{} eta", 2 * n * n1),
                        ]),
                    ),
                    BoundaryFactor::new("R8", dv(&r8), false, None),
                ],
                determinant: det(
                    Some(Declared::derived(MultiPoly::int(-16 * nn as i64))),
                    vec![(pr(&p1), 1), (pr(&p2), 1), (dv(&r8), 1)],
                    true,
                ),
                domain: vec![p("th1"), p(&p1), p(&p2).scale(&ExactScalar::from_int(-1))],
                domain_box: vec![pad(0.0, 1.0), pad(0.0, 1.0), pad(-zr, zr)],
                summary: row(
                    if n.is_multiple_of(2) { "C_n|C_2n" } else { "C_n,J" },
                    "z^2",
                    "X_n^2",
                    Some("z X_n"),
                    b.clone(),
                    b,
                ),
            }
        }
        9 => {
            let q = format!("th2 (1 - th1)^{n} - th2^2 - eta^2");
            let b = &p("X") * &(&(&p("Y") * &h_n(n, "X", "Y")) - &p("Z^2"));
            Parts {
                cometric: PolyMatrix::zeros(0),
                printed_typos: vec![],
                cometric_printed: false,
                boundary_factors: vec![
                    BoundaryFactor::new("th1", pr("th1"), true, None),
                    BoundaryFactor::new("Q", pr(&q), true, None),
                    BoundaryFactor::new("1-th1", dv("1 - th1"), false, None),
                ],
                determinant: det(
                    Some(Declared::derived(MultiPoly::int(16 * (nn * nn) as i64))),
                    vec![(dv("1 - th1"), 2 * n - 1), (pr("th1"), 1), (pr(&q), 1)],
                    true,
                ),
                domain: vec![p("th1"), p(&q)],
                domain_box: vec![pad(0.0, 1.0), pad(0.0, 1.0), pad(-0.5, 0.5)],
                summary: row(
                    if n.is_multiple_of(2) { "C_n|C_2n" } else { "C_n,J" },
                    "z^2",
                    "X_n^2",
                    Some("X_n Y_n"),
                    b.clone(),
                    b,
                ),
            }
        }
        _ => unreachable!("family index validated by ModelId"),
    }
}

const O3_MAX: f64 = 0.192_450_089_729_875_4;
const O6_MAX: f64 = 0.096_225_044_864_937_7;
const O3O6_MAX: f64 = 0.005_486_968_449_931_4;

fn polyhedral(k: u32) -> Parts {
    let tetra_upper = [
        "-9 th1^2 - th2/2 + 1/2",
        "-12 th1 th2 + 4 th1",
        "-18 th1 eta",
        "48 th1^2 - 16 th2^2 + 24 th2 - 8",
        "-24 th2 eta + 16 eta",
        "-54 th1^2 th2 + 18 th1^2 - 3 th2^2 - 36 eta^2 + 4 th2 - 1",
    ];
    let octa_upper = [
        "-36 th1^2 - 2 th1 th2 + 2 th1",
        "-24 th1 th2 + 8 th1",
        "-36 th1 eta",
        "48 th1 - 16 th2^2 + 24 th2 - 8",
        "-24 th2 eta + 16 eta",
        "-54 th1 th2 + 18 th1 - 3 th2^2 - 36 eta^2 + 4 th2 - 1",
    ];
    let ico_upper = [
        "-36 th1^2 - (r5 + 2) (7 th1 + 5 th2 + 2 r5 th2)",
        "(40 - 16 r5) th1^2 + (3 r5 + 6) th2 + r5 th1 - 60 th1 th2",
        "-90 th1 eta - 2 (r5 + 2) eta",
        "(7296 - 3264 r5) th1^3 + (96 r5 - 240) th1 th2 + (-432 + 192 r5) th1^2 - 5 r5 th2 + (6 - 3 r5) th1 - 100 th2^2",
        "-150 th2 eta + eta ((-100 + 40 r5) th1 - 2 r5)",
    ];
    let s2 = "13 th1 r5 + 45 r5 th2 + 45 th1^2 + 4 r5 + 26 th1 + 100 th2 + 9";
    let s3 = "30 th1 th2 r5 - 3 th1 r5 - 9 r5 th2 - 19 th1^2 + 75 th1 th2 - 6 th1 - 20 th2";
    let st = swallow_tail();
    let st_printed = &st + &MultiPoly::one();
    let sq = swallow_tail_in_square();
    let o4_range = pad(1.0 / 3.0, 1.0);
    match k {
        11 => Parts {
            cometric: PolyMatrix::symmetric_from_upper(
                2,
                vec![p(tetra_upper[0]), p(tetra_upper[1]), p(tetra_upper[3])],
            ),
            printed_typos: vec![],
            cometric_printed: true,
            boundary_factors: vec![BoundaryFactor::new(
                "P",
                Declared::corrected(st_printed.clone(), st.clone()),
                true,
                None,
            )],
            determinant: Determinant {
                constant: Some(Declared::corrected(MultiPoly::one(), MultiPoly::int(4))),
                factors: vec![(Declared::corrected(st_printed, st.clone()), 1)],
                vanishes_mod_syzygy: false,
            },
            domain: vec![st, p("1 - th2")],
            domain_box: vec![pad(-O3_MAX, O3_MAX), o4_range],
            summary: row("T|O", "O_3", "O_4", None, h_printed("X^2", "Y"), h_true("X^2", "Y")),
        },
        12 => {
            let p3 = "108 th1^4 + 36 th1^2 th2 - 2 th2^3 - 20 th1^2 + 5 th2^2 + 4 eta^2 - 4 th2 + 1";
            Parts {
                cometric: symmetric(3, &tetra_upper),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new("P3", pr(p3), true, mults(&["-36 th1", "-48 th2 + 32", "-72 eta"])),
                    BoundaryFactor::new("3th2-1", pr("3 th2 - 1"), false, None),
                    BoundaryFactor::new("18th1^2+th2-1", pr("18 th1^2 + th2 - 1"), false, None),
                ],
                determinant: Determinant {
                    constant: Some(int(4)),
                    factors: vec![(pr("3 th2 - 1"), 1), (pr("18 th1^2 + th2 - 1"), 1), (pr(p3), 1)],
                    vanishes_mod_syzygy: true,
                },
                domain: vec![p(p3).scale(&ExactScalar::from_int(-1)), p("1 - th2")],
                domain_box: vec![pad(-O3_MAX, O3_MAX), o4_range, pad(-O6_MAX, O6_MAX)],
                summary: row(
                    "T",
                    "O_3",
                    "O_4",
                    Some("O_6"),
                    &h_printed("X^2", "Y") - &p("4 Z^2"),
                    &h_true("X^2", "Y") + &p("4 Z^2"),
                ),
            }
        }
        13 => {
            let cubic = "-108 th1^2 + 20 th1 + 2 th2^3 - 5 th2^2 + 4 th2 - 1 - 36 th1 th2";
            Parts {
                cometric: symmetric(
                    2,
                    &["4 th1 ((1 - th2)/2 - 9 th1)", "8 th1 (1 - 3 th2)", "16 (3 th1 + 3/2 th2 - 1/2 - th2^2)"],
                ),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new("th1", pr("th1"), true, None),
                    BoundaryFactor::new("Q/th1", pr(cubic), true, None),
                ],
                determinant: Determinant {
                    constant: Some(int(16)),
                    factors: vec![(pr("th1"), 1), (pr(cubic), 1)],
                    vanishes_mod_syzygy: false,
                },
                domain: vec![p("th1"), sq.clone(), p("1 - th2")],
                domain_box: vec![pad(0.0, O3_MAX * O3_MAX), o4_range],
                summary: row("O_J", "O_3^2", "O_4", None, &p("X") * &h_printed("X", "Y"), &p("X") * &h_true("X", "Y")),
            }
        }
        14 => {
            let q3 = "-2 th2^3 + 108 th1^2 + 36 th1 th2 + 5 th2^2 + 4 eta^2 - 20 th1 - 4 th2 + 1";
            Parts {
                cometric: symmetric(3, &octa_upper),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "th1",
                        pr("th1"),
                        true,
                        Some(vec![
                            Declared::corrected(p("-36 th2 - 2 th2 + 2"), p("-36 th1 - 2 th2 + 2")),
                            pr("-24 th2 + 8"),
                            pr("-36 eta"),
                        ]),
                    ),
                    BoundaryFactor::new(
                        "Q3",
                        pr(q3),
                        true,
                        Some(vec![pr("-72 th1"), pr("-48 th2 + 32"), Declared::corrected(p("-73 th3"), p("-72 eta"))]),
                    ),
                    BoundaryFactor::new("3th2-1", pr("3 th2 - 1"), false, None),
                    BoundaryFactor::new("18th1+th2-1", pr("18 th1 + th2 - 1"), false, None),
                ],
                determinant: Determinant {
                    constant: Some(int(16)),
                    factors: vec![(pr("th1"), 1), (pr("3 th2 - 1"), 1), (pr("18 th1 + th2 - 1"), 1), (pr(q3), 1)],
                    vanishes_mod_syzygy: true,
                },
                domain: vec![p("th1"), p(q3).scale(&ExactScalar::from_int(-1)), p("1 - th2")],
                domain_box: vec![pad(0.0, O3_MAX * O3_MAX), o4_range, pad(-O6_MAX, O6_MAX)],
                summary: row(
                    "T_J",
                    "O_3^2",
                    "O_4",
                    Some("O_6"),
                    &p("X") * &(&h_printed("X", "Y") - &p("4 Z^2")),
                    &p("X") * &(&h_true("X", "Y") + &p("4 Z^2")),
                ),
            }
        }
        15 => {
            let q1 = "2 th2^4 + 324 th1^2 th2 - 12 th1 th2^2 - 7 th2^3 - 36 th1^2 + 24 th1 th2 + 9 th2^2 - 12 th1 - 5 th2 + 1";
            let q2_printed =
                "2 th1 th2^3 + 108 th1^3 + 36 th1^2 th2 + 5 th1 th2^2 - 20 th1^2 - 4 th1 th2 + 4 eta^2 + th1";
            let q2 = &p("4 eta^2") - &(&p("th1") * &sq);
            let mut upper: Vec<MultiPoly> = octa_upper.iter().map(p).collect();
            upper[2] = p("-54 th1 eta - th2 eta + eta");
            upper[4] = p("-36 eta th2 + 20 eta");
            upper[5] = p(
                "-81 eta^2 - 81/2 th1^2 th2 + 9/2 th1^2 - 3 th1 th2 + 3/2 th1 + 3/2 th1 th2^2 - 1/4 th2^4 + 7/8 th2^3 - 9/8 th2^2 + 5/8 th2 - 1/8",
            );
            Parts {
                cometric: PolyMatrix::symmetric_from_upper(3, upper),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "Q2",
                        Declared::corrected(p(q2_printed), q2.clone()),
                        true,
                        mults(&["2 - 108 th1 - 2 th2", "40 - 72 th2", "-162 eta"]),
                    ),
                    BoundaryFactor::new("Q1", pr(q1), false, None),
                ],
                determinant: Determinant {
                    constant: Some(int(2)),
                    factors: vec![(pr(q1), 1), (Declared::corrected(p(q2_printed), q2.clone()), 1)],
                    vanishes_mod_syzygy: true,
                },
                domain: vec![p("th1"), q2.scale(&ExactScalar::from_int(-1)), p("1 - th2")],
                domain_box: vec![pad(0.0, O3_MAX * O3_MAX), o4_range, pad(-O3O6_MAX, O3O6_MAX)],
                summary: row(
                    "O",
                    "O_3^2",
                    "O_4",
                    Some("O_3 O_6"),
                    &p("Z^2") - &(&p("X") * &h_printed("X", "Y")),
                    &p("4 Z^2") + &(&p("X") * &h_true("X", "Y")),
                ),
            }
        }
        21 => {
            let s = icosahedral_s();
            let s_printed = &s - &p("19520 r5 eta^2");
            Parts {
                cometric: PolyMatrix::symmetric_from_upper(2, vec![p(ico_upper[0]), p(ico_upper[1]), p(ico_upper[3])]),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![BoundaryFactor::new(
                    "S",
                    Declared::corrected(s_printed.clone(), s.clone()),
                    true,
                    None,
                )],
                determinant: Determinant {
                    constant: None,
                    factors: vec![(Declared::corrected(s_printed, s.clone()), 1)],
                    vanishes_mod_syzygy: false,
                },
                // the chord from the 2-fold to the 3-fold vertex cuts off a second component of {S > 0}
                domain: vec![s.clone(), p("-5 r5 th1 - (6 + 3 r5) th2")],
                domain_box: vec![
                    pad(-0.847_213_595_499_959, 0.156_891_406_574_067),
                    pad(-0.138_028_887_499_988, 0.008_944_271_909_999),
                ],
                summary: row(
                    "I_J",
                    "I_6",
                    "I_10",
                    None,
                    icosahedral_s().rename(&[("th1", "X"), ("th2", "Y")]),
                    icosahedral_s().rename(&[("th1", "X"), ("th2", "Y")]),
                ),
            }
        }
        22 => {
            let s = icosahedral_s();
            let s1 = &s - &p("(43648 + 19520 r5) eta^2");
            let s1_printed = &s - &p("43648 eta^2");
            let mut upper: Vec<MultiPoly> = ico_upper.iter().map(p).collect();
            upper.push(&p("-225 eta^2") - &(&p("1/4 (-161 + 72 r5)") * &(&p(s2) * &p(s3))));
            let sxy = s.rename(&[("th1", "X"), ("th2", "Y")]);
            Parts {
                cometric: PolyMatrix::symmetric_from_upper(3, upper),
                printed_typos: vec![],
                cometric_printed: true,
                boundary_factors: vec![
                    BoundaryFactor::new(
                        "S1",
                        Declared::corrected(s1_printed.clone(), s1.clone()),
                        true,
                        mults(&[
                            "-4 r5 - 8 - 180 th1",
                            "4 (2 r5 - 5) ((30 r5 + 75) th2 + 10 th1 + 2 + r5)",
                            "-450 eta",
                        ]),
                    ),
                    BoundaryFactor::new("S2", pr(s2), false, None),
                    BoundaryFactor::new("S3", pr(s3), false, None),
                ],
                determinant: Determinant {
                    constant: None,
                    factors: vec![(Declared::corrected(s1_printed, s1.clone()), 1), (pr(s2), 1), (pr(s3), 1)],
                    vanishes_mod_syzygy: true,
                },
                domain: vec![s1.clone(), p("-5 r5 th1 - (6 + 3 r5) th2")],
                domain_box: vec![
                    pad(-0.847_213_595_499_959, 0.156_891_406_574_067),
                    pad(-0.138_028_887_499_988, 0.008_944_271_909_999),
                    pad(-0.008_160_359_972_256, 0.008_160_359_972_256),
                ],
                summary: row("I", "I_6", "I_10", Some("I_15"), &p("Z^2") - &sxy, &p("(43648 + 19520 r5) Z^2") - &sxy),
            }
        }
        _ => unreachable!("fixed index validated by ModelId"),
    }
}
