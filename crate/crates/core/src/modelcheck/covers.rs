//! Exact checks of covering maps, classical identifications and summary rows.

use super::closure_solve;
use crate::algebra::{ExactScalar, MultiPoly};
use crate::catalog::{model, o4, BozIdentification, CoverMap, InvariantSystem, PolynomialModel};
use crate::groups::GroupLabel;
use std::collections::HashMap;

/// Outcome of one covering-map check.
#[derive(Clone, Debug)]
pub struct CoverVerdict {
    pub source: String,
    pub target: String,
    /// Each component, pushed to the sphere, equals the target invariant.
    pub components_match: bool,
    /// The pulled-back target boundary divided by the source boundary.
    pub boundary_quotient: Option<MultiPoly>,
    pub passed: bool,
}

fn source_system(cover: &CoverMap) -> InvariantSystem {
    let invs = cover.source_coords.iter().map(|(v, p)| (v.clone(), v.as_str(), p.clone(), p.total_degree())).collect();
    InvariantSystem::custom("cover source", 3, invs, GroupLabel::Trivial(3), None)
}

/// Boundary of the source model written in the cover's source coordinates:
/// the declared product when they are the catalog coordinates, otherwise the
/// determinant of the recomputed co-metric.
fn source_boundary(cover: &CoverMap) -> Option<MultiPoly> {
    let m = model(cover.source);
    let same =
        m.system.invariants.iter().map(|i| (&i.var, &i.ambient)).eq(cover.source_coords.iter().map(|(v, p)| (v, p)));
    if same {
        return Some(m.boundary_product());
    }
    let g = closure_solve(&source_system(cover)).expressed?;
    Some(g.det())
}

/// Components reproduce the target invariants on the sphere, and the target
/// boundary pulled back through the map lies in the ideal of the source boundary.
pub fn verify_cover(cover: &CoverMap) -> CoverVerdict {
    let target = model(cover.target);
    let src = source_system(cover);
    let components_match = cover.components.iter().all(|(var, expr)| {
        let inv = target.system.invariants.iter().find(|i| &i.var == var).expect("target coordinate");
        src.sphere().reduce(&(&expr.subs(&src.ambient_bindings()) - &inv.ambient)).is_zero()
    });
    let bind: HashMap<String, MultiPoly> = cover.components.iter().cloned().collect();
    let pulled = target.boundary_product().substitute(&bind);
    let boundary_quotient = source_boundary(cover).and_then(|b| pulled.exact_divide(&b).ok());
    CoverVerdict {
        source: cover.source.to_string(),
        target: cover.target.to_string(),
        components_match,
        passed: components_match && boundary_quotient.is_some(),
        boundary_quotient,
    }
}

/// `a s⁴ + b s² r² + c s·xyz + d r⁴ − (x⁴+y⁴+z⁴)`, expanded; zero when the
/// coefficients are right.
pub fn quartic_identity_residual(coeffs: &[ExactScalar; 4]) -> MultiPoly {
    let s = crate::algebra::poly("x + y + z");
    let r2 = crate::algebra::poly("x^2 + y^2 + z^2");
    let xyz = crate::algebra::poly("x y z");
    let terms = [s.pow(4), &s.pow(2) * &r2, &s * &xyz, r2.pow(2)];
    let lhs = terms.iter().zip(coeffs).fold(MultiPoly::zero(), |acc, (t, c)| &acc + &t.scale(c));
    &lhs - &o4()
}

/// `p / q` when it is a nonzero constant.
pub fn constant_ratio(p: &MultiPoly, q: &MultiPoly) -> Option<ExactScalar> {
    if q.is_zero() {
        return None;
    }
    p.exact_divide(q).ok().and_then(|c| c.as_constant()).filter(|c| !c.is_zero())
}

/// Substitute `X² ↦ x2` in a polynomial even in `X`.
fn substitute_x_squared(p: &MultiPoly, x2: &MultiPoly, y: &MultiPoly) -> Option<MultiPoly> {
    let mut acc = MultiPoly::zero();
    for (pw, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for (v, e) in pw {
            t = match v {
                "X" if e % 2 == 0 => &t * &x2.pow(e / 2),
                "Y" => &t * &y.pow(e),
                _ => return None,
            };
        }
        acc = &acc + &t;
    }
    Some(acc)
}

/// Outcome of one classical identification.
#[derive(Clone, Debug)]
pub struct BozVerdict {
    pub number: u32,
    pub model: Option<String>,
    /// `B(X(θ), Y(θ)) / boundary product`, a nonzero constant on success.
    pub constant: Option<ExactScalar>,
    pub passed: bool,
}

pub fn verify_boz(id: &BozIdentification) -> BozVerdict {
    let Some(ch) = &id.change else {
        return BozVerdict { number: id.number, model: None, constant: None, passed: false };
    };
    let m = model(ch.model);
    let pulled = if ch.x_squared {
        substitute_x_squared(&id.boundary, &ch.x, &ch.y)
    } else {
        Some(id.boundary.subs(&[("X", ch.x.clone()), ("Y", ch.y.clone())]))
    };
    let constant = pulled.and_then(|p| constant_ratio(&p, &m.boundary_product()));
    BozVerdict { number: id.number, model: Some(ch.model.to_string()), passed: constant.is_some(), constant }
}

/// Summary-table boundary against the model's boundary product, up to a constant.
#[derive(Clone, Debug)]
pub struct SummaryVerdict {
    pub corrected_constant: Option<ExactScalar>,
    pub printed_constant: Option<ExactScalar>,
    pub passed: bool,
}

pub fn verify_summary_row(m: &PolynomialModel) -> SummaryVerdict {
    let to_model = |p: &MultiPoly| {
        let mut pairs = vec![("X", MultiPoly::var(m.system.invariants[0].var.as_str()))];
        pairs.push(("Y", MultiPoly::var(m.system.invariants[1].var.as_str())));
        if let Some(v) = m.system.invariants.get(2) {
            pairs.push(("Z", MultiPoly::var(v.var.as_str())));
        }
        p.subs(&pairs)
    };
    let b = m.boundary_product();
    let corrected_constant = constant_ratio(&to_model(&m.summary.boundary_corrected), &b);
    let printed_constant = constant_ratio(&to_model(&m.summary.boundary_printed), &b);
    SummaryVerdict { passed: corrected_constant.is_some(), corrected_constant, printed_constant }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boz_identifications, listed_covers, octahedral_quartic_coefficients, ModelId};

    #[test]
    fn covers_at_small_n() {
        for n in 1..=4 {
            for c in listed_covers(n) {
                let v = verify_cover(&c);
                assert!(v.passed, "{} -> {}: {:?}", v.source, v.target, v);
            }
        }
    }

    #[test]
    fn quartic_identity() {
        assert!(quartic_identity_residual(&octahedral_quartic_coefficients()).is_zero());
        let wrong = [ExactScalar::one(), ExactScalar::one(), ExactScalar::one(), ExactScalar::one()];
        assert!(!quartic_identity_residual(&wrong).is_zero());
    }

    #[test]
    fn classical_identifications() {
        for id in boz_identifications() {
            let v = verify_boz(&id);
            assert!(v.passed, "row {}", id.number);
        }
    }

    #[test]
    fn summary_rows() {
        for m in crate::catalog::all_models(&[1, 2, 3, 4]) {
            let v = verify_summary_row(&m);
            assert!(v.passed, "{}", m.id);
        }
        let s12 = verify_summary_row(&model(ModelId::fixed(12)));
        assert!(s12.printed_constant.is_none());
    }
}
