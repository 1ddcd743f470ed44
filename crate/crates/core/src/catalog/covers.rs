//! Covering maps between models and identifications with the classical list
//! of bounded planar models.

use super::{invariant_system, o3, o4, CatalogError, ModelId};
use crate::algebra::{poly, solve, ExactScalar, LinSolution, MultiPoly, ScalarMatrix};
use crate::groups::monomial_basis;

/// A polynomial map from the coordinates of `source` onto those of `target`.
#[derive(Clone, Debug)]
pub struct CoverMap {
    pub source: ModelId,
    pub target: ModelId,
    /// Source coordinates with their ambient definitions.
    pub source_coords: Vec<(String, MultiPoly)>,
    /// One entry per target coordinate: `(target var, expression in source coords)`.
    pub components: Vec<(String, MultiPoly)>,
    /// Degree of the cover (index of the subgroup).
    pub degree: u32,
}

/// Coefficients `(a, b, c, d)` with
/// `x⁴+y⁴+z⁴ = a s⁴ + b s² r² + c s·xyz + d r⁴`, `s = x+y+z`, `r² = x²+y²+z²`.
pub fn octahedral_quartic_coefficients() -> [ExactScalar; 4] {
    let s = poly("x + y + z");
    let r2 = poly("x^2 + y^2 + z^2");
    let basis = [s.pow(4), &s.pow(2) * &r2, &s * &o3(), r2.pow(2)];
    let vars = ["x", "y", "z"];
    let mut a = Vec::new();
    let mut b = Vec::new();
    for exps in monomial_basis(&vars, 4) {
        let key: Vec<(&str, u32)> = vars.iter().copied().zip(exps).collect();
        a.push(basis.iter().map(|q| q.coefficient(&key)).collect::<Vec<_>>());
        b.push(o4().coefficient(&key));
    }
    let a = ScalarMatrix::from_rows(a);
    match solve(&a, &b) {
        LinSolution::Unique(x) => [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()],
        other => panic!("quartic identity has no unique solution: {other:?}"),
    }
}

fn coords(id: ModelId) -> Vec<(String, MultiPoly)> {
    invariant_system(id).invariants.into_iter().map(|i| (i.var, i.ambient)).collect()
}

/// The covering map from `sub` (smaller group) onto `sup`.
pub fn cover_map(sub: ModelId, sup: ModelId) -> Result<CoverMap, CatalogError> {
    let unknown = || CatalogError::UnknownCover(sub.to_string(), sup.to_string());
    let same_n = sub.n.is_some() && sub.n == sup.n;
    let (components, source_coords, degree) = match (sub.index, sup.index) {
        (1, 3) if same_n => (vec![("th1", poly("th1^2")), ("th2", poly("th2"))], coords(sub), 2),
        (2, 5) if same_n => {
            (vec![("th1", poly("th1^2")), ("th2", poly("th2")), ("eta", poly("th1 eta"))], coords(sub), 2)
        }
        (2, 4) if same_n => (vec![("th1", poly("th1^2")), ("th2", poly("th2")), ("eta", poly("eta"))], coords(sub), 2),
        (1, 11) if sub.n == Some(3) && sup.n.is_none() => {
            let [a, b, c, d] = octahedral_quartic_coefficients();
            let quartic = [
                MultiPoly::monomial(a, &[("s", 4)]),
                MultiPoly::monomial(b, &[("s", 2)]),
                MultiPoly::monomial(c, &[("s", 1), ("v", 1)]),
                MultiPoly::constant(d),
            ]
            .iter()
            .fold(MultiPoly::zero(), |acc, t| &acc + t);
            (
                vec![("th1", poly("v")), ("th2", quartic)],
                vec![("s".to_string(), poly("x + y + z")), ("v".to_string(), o3())],
                4,
            )
        }
        _ => return Err(unknown()),
    };
    Ok(CoverMap {
        source: sub,
        target: sup,
        source_coords,
        components: components.into_iter().map(|(v, p)| (v.to_string(), p)).collect(),
        degree,
    })
}

/// The four listed covers, instantiated at `n`.
pub fn listed_covers(n: u32) -> Vec<CoverMap> {
    let f = |k| ModelId::family(k, n);
    let mut out = vec![
        cover_map(f(1), f(3)).expect("listed"),
        cover_map(f(2), f(5)).expect("listed"),
        cover_map(f(2), f(4)).expect("listed"),
    ];
    out.push(cover_map(ModelId::family(1, 3), ModelId::fixed(11)).expect("listed"));
    out
}

/// An explicit change of variables from a catalog model to a classical model.
#[derive(Clone, Debug)]
pub struct ChangeOfVariables {
    pub model: ModelId,
    /// `X` (or `X²` when `x_squared`) in the model coordinates.
    pub x: MultiPoly,
    pub y: MultiPoly,
    /// The classical boundary is even in `X` and `x` gives `X²`.
    pub x_squared: bool,
}

/// One of the seven identifications with the classical bounded planar models.
#[derive(Clone, Debug)]
pub struct BozIdentification {
    /// Row number in the classical table.
    pub number: u32,
    pub name: &'static str,
    /// Boundary of the classical model in `(X, Y)`.
    pub boundary: MultiPoly,
    /// Catalog models declared isomorphic, as listed.
    pub models: Vec<ModelId>,
    /// Checkable change of variables, when one is known.
    pub change: Option<ChangeOfVariables>,
}

impl BozIdentification {
    pub fn is_declared_only(&self) -> bool {
        self.change.is_none()
    }
}

fn change(model: ModelId, x: &str, y: &str, x_squared: bool) -> Option<ChangeOfVariables> {
    Some(ChangeOfVariables { model, x: poly(x), y: poly(y), x_squared })
}

/// The static identification list.
pub fn boz_identifications() -> Vec<BozIdentification> {
    let f = ModelId::family;
    let fixed = ModelId::fixed;
    let entry = |number, name, boundary: &str, models: Vec<ModelId>, change| BozIdentification {
        number,
        name,
        boundary: poly(boundary),
        models,
        change,
    };
    vec![
        entry(2, "disk", "1 - X^2 - Y^2", vec![f(1, 1)], change(f(1, 1), "th1", "th2", false)),
        entry(3, "triangle", "X Y (1 - X - Y)", vec![f(3, 2)], change(f(3, 2), "th1", "(1 - th1 + th2)/2", false)),
        entry(4, "double parabola", "(1 - X^2)^2 - Y^2", vec![f(1, 2), f(3, 1)], change(f(1, 2), "th1", "th2", false)),
        entry(
            5,
            "parabola with two lines",
            "Y (1 - X) (X^2 - Y)",
            vec![f(6, 2), f(4, 4)],
            change(f(6, 2), "1 - th1", "th2", false),
        ),
        entry(
            8,
            "cuspidal cubic with secant",
            "(Y^2 - X^3) (X - 1)",
            vec![f(2, 3)],
            change(f(3, 3), "1 - th1", "th2", false),
        ),
        entry(
            9,
            "cuspidal cubic with tangent",
            "(Y^2 - X^3) (2 (Y - 1) - 3 (X - 1))",
            vec![fixed(13)],
            change(fixed(13), "3/2 th2 - 1/2", "27/2 th1 + 9/4 th2 - 5/4", false),
        ),
        entry(
            10,
            "swallow tail",
            "4 X^2 - 27 X^4 + 16 Y - 128 Y^2 - 144 X^2 Y + 256 Y^3",
            vec![fixed(11)],
            change(fixed(11), "8 th1^2", "th2/2 - 1/4", true),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_coefficients() {
        let [a, b, c, d] = octahedral_quartic_coefficients();
        assert_eq!(a, ExactScalar::from_frac(-1, 2));
        assert_eq!(b, ExactScalar::from_int(1));
        assert_eq!(c, ExactScalar::from_int(4));
        assert_eq!(d, ExactScalar::from_frac(1, 2));
    }

    #[test]
    fn unknown_cover() {
        assert!(matches!(cover_map(ModelId::fixed(11), ModelId::fixed(12)), Err(CatalogError::UnknownCover(_, _))));
        assert!(cover_map(ModelId::family(1, 3), ModelId::family(3, 4)).is_err());
    }

    #[test]
    fn seven_identifications() {
        let ids = boz_identifications();
        assert_eq!(ids.len(), 7);
        assert!(ids.iter().all(|i| !i.is_declared_only()));
    }
}
