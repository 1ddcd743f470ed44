//! Invariant systems for every cataloged model.

use super::invariants::*;
use super::CatalogError;
use crate::algebra::{poly, MultiPoly};
use crate::groups::GroupLabel;
use crate::sphereops::Sphere;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// A model label such as `omega5` with its family parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModelId {
    pub index: u32,
    pub n: Option<u32>,
}

impl ModelId {
    /// Indices 1..=9 form the cyclic/dihedral families and need `n`; 11..=15 and
    /// 21, 22 are fixed; 0 is the 4-dimensional family with `n = p`.
    pub fn new(index: u32, n: Option<u32>) -> Result<Self, CatalogError> {
        let label = format!("omega{index}");
        match index {
            1..=9 => {
                let n = n.ok_or(CatalogError::MissingParameter(label))?;
                if n == 0 {
                    return Err(CatalogError::UnknownModel("n must be positive".into()));
                }
                Ok(ModelId { index, n: Some(n) })
            }
            11..=15 | 21 | 22 => Ok(ModelId { index, n: None }),
            _ => Err(CatalogError::UnknownModel(label)),
        }
    }

    pub fn family(index: u32, n: u32) -> Self {
        Self::new(index, Some(n)).expect("valid family model")
    }

    pub fn fixed(index: u32) -> Self {
        Self::new(index, None).expect("valid fixed model")
    }

    pub fn is_family(&self) -> bool {
        self.index < 10
    }

    /// `omega<k>` or `omega<k>` with `n` appended as `_n<n>`.
    pub fn slug(&self) -> String {
        match self.n {
            Some(n) => format!("omega{}_n{}", self.index, n),
            None => format!("omega{}", self.index),
        }
    }

    /// Every fixed model plus the families for the given `n` values.
    pub fn all(ns: &[u32]) -> Vec<ModelId> {
        let mut out = Vec::new();
        for k in 1..=9 {
            for &n in ns {
                out.push(ModelId::family(k, n));
            }
        }
        for k in [11, 12, 13, 14, 15, 21, 22] {
            out.push(ModelId::fixed(k));
        }
        out
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "Omega{}^({})", self.index, n),
            None => write!(f, "Omega{}", self.index),
        }
    }
}

impl FromStr for ModelId {
    type Err = CatalogError;

    /// Accepts `omega3`, `Omega3`, `omega3_n4`, `omega3:4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let body = lower.strip_prefix("omega").ok_or_else(|| CatalogError::UnknownModel(s.to_string()))?;
        let (idx, n) = match body.split_once("_n").or_else(|| body.split_once(':')) {
            Some((a, b)) => (a, Some(b.parse::<u32>().map_err(|_| CatalogError::UnknownModel(s.to_string()))?)),
            None => (body, None),
        };
        let index: u32 = idx.parse().map_err(|_| CatalogError::UnknownModel(s.to_string()))?;
        ModelId::new(index, n)
    }
}

/// One coordinate of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    /// Human label, e.g. `z^2` or `X_3 Y_3`.
    pub label: String,
    /// Coordinate variable in model space: `th1`, `th2`, `th3`, `eta`, ...
    pub var: String,
    pub ambient: MultiPoly,
    pub valuation: u32,
}

/// Named invariant polynomials with valuations and the symmetry group.
#[derive(Clone, Debug)]
pub struct InvariantSystem {
    pub name: String,
    pub ambient_dim: usize,
    pub invariants: Vec<Invariant>,
    /// Exact group whose invariants these are, when it has exact matrices.
    pub group: GroupLabel,
    /// Relation `η² − Q(θ)` (or a multiple) tying the secondary invariant to the primaries.
    pub syzygy: Option<MultiPoly>,
}

impl InvariantSystem {
    pub fn sphere(&self) -> Sphere {
        match self.ambient_dim {
            3 => Sphere::s2(),
            4 => Sphere::s3(),
            2 => Sphere::s1(),
            d => panic!("unsupported ambient dimension {d}"),
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        self.invariants.iter().map(|i| i.var.as_str()).collect()
    }

    pub fn valuations(&self) -> Vec<u32> {
        self.invariants.iter().map(|i| i.valuation).collect()
    }

    pub fn dim(&self) -> usize {
        self.invariants.len()
    }

    /// The coordinate carrying the secondary invariant, when a syzygy is present.
    pub fn secondary_var(&self) -> Option<&str> {
        self.syzygy.as_ref().map(|_| self.invariants.last().expect("nonempty").var.as_str())
    }

    /// Bindings from model coordinates to ambient invariants.
    pub fn ambient_bindings(&self) -> Vec<(&str, MultiPoly)> {
        self.invariants.iter().map(|i| (i.var.as_str(), i.ambient.clone())).collect()
    }

    /// Push a polynomial in model coordinates to the sphere.
    pub fn to_sphere(&self, p: &MultiPoly) -> MultiPoly {
        self.sphere().reduce(&p.subs(&self.ambient_bindings()))
    }

    /// A system built from explicit pieces (used for the 4-dimensional family
    /// and for ad-hoc checks).
    pub fn custom(
        name: &str,
        ambient_dim: usize,
        invariants: Vec<(String, &str, MultiPoly, u32)>,
        group: GroupLabel,
        syzygy: Option<MultiPoly>,
    ) -> Self {
        InvariantSystem {
            name: name.to_string(),
            ambient_dim,
            invariants: invariants
                .into_iter()
                .map(|(label, var, ambient, valuation)| Invariant { label, var: var.to_string(), ambient, valuation })
                .collect(),
            group,
            syzygy,
        }
    }
}

fn inv(label: impl Into<String>, var: &str, ambient: MultiPoly, valuation: u32) -> (String, &str, MultiPoly, u32) {
    (label.into(), var, ambient, valuation)
}

/// `1 − θ₁` raised to `k`, as a polynomial in `th1`.
fn one_minus_th1(k: u32) -> MultiPoly {
    poly("1 - th1").pow(k)
}

/// The swallow-tail quartic with its constant term: `det Γ₁₁ = 4·P`.
pub(crate) fn swallow_tail() -> MultiPoly {
    poly("-108 th1^4 + 20 th1^2 - 36 th1^2 th2 + 2 th2^3 - 5 th2^2 + 4 th2 - 1")
}

/// The invariant system of a cataloged model.
pub fn invariant_system(id: ModelId) -> InvariantSystem {
    let name = id.to_string();
    let z = MultiPoly::var("z");
    let z2 = poly("z^2");
    let sys = |invs, group, syz| InvariantSystem::custom(&name, 3, invs, group, syz);
    match (id.index, id.n) {
        (1, Some(n)) => {
            sys(vec![inv("z", "th1", z, 1), inv(format!("X_{n}"), "th2", x_n(n), n)], GroupLabel::CnDn(n), None)
        }
        (2, Some(n)) => sys(
            vec![
                inv("z", "th1", z, 1),
                inv(format!("X_{n}"), "th2", x_n(n), n),
                inv(format!("Y_{n}"), "eta", y_n(n), n),
            ],
            GroupLabel::Cyclic(n),
            Some(&poly("th2^2 + eta^2") - &poly("1 - th1^2").pow(n)),
        ),
        (3, Some(n)) => sys(
            vec![inv("z^2", "th1", z2, 2), inv(format!("X_{n}"), "th2", x_n(n), n)],
            if n % 2 == 0 { GroupLabel::WithJ(Box::new(GroupLabel::Dihedral(n))) } else { GroupLabel::DnD2n(n) },
            None,
        ),
        (4, Some(n)) => sys(
            vec![
                inv("z^2", "th1", z2, 2),
                inv(format!("X_{n}"), "th2", x_n(n), n),
                inv(format!("Y_{n}"), "eta", y_n(n), n),
            ],
            if n % 2 == 0 { GroupLabel::WithJ(Box::new(GroupLabel::Cyclic(n))) } else { GroupLabel::CnC2n(n) },
            Some(&poly("th2^2 + eta^2") - &one_minus_th1(n)),
        ),
        (5, Some(n)) => sys(
            vec![
                inv("z^2", "th1", z2, 2),
                inv(format!("X_{n}"), "th2", x_n(n), n),
                inv(format!("z Y_{n}"), "eta", &z * &y_n(n), n + 1),
            ],
            GroupLabel::Dihedral(n),
            Some(&poly("eta^2") - &(&poly("th1") * &(&one_minus_th1(n) - &poly("th2^2")))),
        ),
        (6, Some(n)) => sys(
            vec![inv("z^2", "th1", z2, 2), inv(format!("X_{n}^2"), "th2", x_n(n).pow(2), 2 * n)],
            GroupLabel::WithJ(Box::new(GroupLabel::Dihedral(2 * n))),
            None,
        ),
        (7, Some(n)) => sys(
            vec![
                inv("z^2", "th1", z2, 2),
                inv(format!("X_{n}^2"), "th2", x_n(n).pow(2), 2 * n),
                inv(format!("z Y_{n}"), "eta", &z * &y_n(n), n + 1),
            ],
            if n % 2 == 1 { GroupLabel::WithJ(Box::new(GroupLabel::Dihedral(n))) } else { GroupLabel::DnD2n(n) },
            Some(&poly("eta^2") - &(&poly("th1") * &(&one_minus_th1(n) - &poly("th2")))),
        ),
        (8, Some(n)) => sys(
            vec![
                inv("z^2", "th1", z2, 2),
                inv(format!("X_{n}^2"), "th2", x_n(n).pow(2), 2 * n),
                inv(format!("z X_{n}"), "eta", &z * &x_n(n), n + 1),
            ],
            if n % 2 == 1 { GroupLabel::WithJ(Box::new(GroupLabel::Cyclic(n))) } else { GroupLabel::CnC2n(n) },
            Some(poly("eta^2 - th1 th2")),
        ),
        (9, Some(n)) => sys(
            vec![
                inv("z^2", "th1", z2, 2),
                inv(format!("X_{n}^2"), "th2", x_n(n).pow(2), 2 * n),
                inv(format!("X_{n} Y_{n}"), "eta", &x_n(n) * &y_n(n), 2 * n),
            ],
            if n % 2 == 1 { GroupLabel::WithJ(Box::new(GroupLabel::Cyclic(n))) } else { GroupLabel::CnC2n(n) },
            Some(&poly("eta^2") - &(&poly("th2") * &(&one_minus_th1(n) - &poly("th2")))),
        ),
        (11, None) => sys(vec![inv("O_3", "th1", o3(), 3), inv("O_4", "th2", o4(), 4)], GroupLabel::TO, None),
        (12, None) => sys(
            vec![inv("O_3", "th1", o3(), 3), inv("O_4", "th2", o4(), 4), inv("O_6", "eta", o6(), 6)],
            GroupLabel::Tetrahedral,
            Some(&poly("4 eta^2") - &swallow_tail()),
        ),
        (13, None) => sys(
            vec![inv("O_3^2", "th1", o3().pow(2), 6), inv("O_4", "th2", o4(), 4)],
            GroupLabel::WithJ(Box::new(GroupLabel::Octahedral)),
            None,
        ),
        (14, None) => sys(
            vec![inv("O_3^2", "th1", o3().pow(2), 6), inv("O_4", "th2", o4(), 4), inv("O_6", "eta", o6(), 6)],
            GroupLabel::WithJ(Box::new(GroupLabel::Tetrahedral)),
            Some(&poly("4 eta^2") - &swallow_tail_in_square()),
        ),
        (15, None) => sys(
            vec![
                inv("O_3^2", "th1", o3().pow(2), 6),
                inv("O_4", "th2", o4(), 4),
                inv("O_3 O_6", "eta", &o3() * &o6(), 9),
            ],
            GroupLabel::Octahedral,
            Some(&poly("4 eta^2") - &(&poly("th1") * &swallow_tail_in_square())),
        ),
        (21, None) => sys(
            vec![inv("I_6", "th1", i6(), 6), inv("I_10", "th2", i10(), 10)],
            GroupLabel::WithJ(Box::new(GroupLabel::Icosahedral)),
            None,
        ),
        (22, None) => sys(
            vec![inv("I_6", "th1", i6(), 6), inv("I_10", "th2", i10(), 10), inv("I_15", "eta", i15(), 15)],
            GroupLabel::Icosahedral,
            Some(&icosahedral_s() - &poly("(43648 + 19520 r5) eta^2")),
        ),
        _ => unreachable!("ModelId::new validates indices"),
    }
}

/// The swallow-tail quartic written in `θ₁ = O₃²`.
pub(crate) fn swallow_tail_in_square() -> MultiPoly {
    poly("-108 th1^2 + 20 th1 - 36 th1 th2 + 2 th2^3 - 5 th2^2 + 4 th2 - 1")
}

/// The sextic-decic boundary `S` of the icosahedral planar model.
pub(crate) fn icosahedral_s() -> MultiPoly {
    poly(
        "1728 th1^5 + (1376 + 688 r5) th1^4 + (14400 + 6480 r5) th1^3 th2 + (819 + 364 r5) th1^3 \
         + (13515 + 6042 r5) th1^2 th2 + (52325 + 23400 r5) th1 th2^2 + (38125 + 17050 r5) th2^3 \
         + (152 + 68 r5) th1^2 + (2880 + 1288 r5) th1 th2 + (2728 + 1220 r5) th2^2",
    )
}

/// The 4-dimensional system `(θ₁, θ₂, θ₃)`, optionally with `η₃`.
pub fn cornulier_system(p: u32, with_eta3: bool) -> InvariantSystem {
    let g = |s: &str| cornulier_invariant(p, s).expect("known label");
    let mut invs = vec![
        inv("theta_1", "th1", g("theta1"), p),
        inv("theta_2", "th2", g("theta2"), 2 * p),
        inv("theta_3", "th3", g("theta3"), 4),
    ];
    let mut syz = None;
    if with_eta3 {
        invs.push(inv("eta_3", "eta", g("eta3"), p + 2));
        // (X₁−X₂)² = θ₁² − 4θ₂ and (R₁−R₂)² = (R₁+R₂)² − 4θ₃ = 1 − 4θ₃ on the sphere
        syz = Some(&poly("eta^2") - &poly("(th1^2 - 4 th2)(1 - 4 th3)"));
    }
    let name = if with_eta3 { format!("cornulier({p})+eta3") } else { format!("cornulier({p})") };
    InvariantSystem::custom(&name, 4, invs, GroupLabel::Cornulier(p), syz)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_ids() {
        assert_eq!("omega3_n4".parse::<ModelId>().unwrap(), ModelId::family(3, 4));
        assert_eq!("Omega11".parse::<ModelId>().unwrap(), ModelId::fixed(11));
        assert!("omega10".parse::<ModelId>().is_err());
        assert!("omega1".parse::<ModelId>().is_err());
        assert_eq!(ModelId::family(1, 3).slug(), "omega1_n3");
    }

    #[test]
    fn syzygies_hold_on_sphere() {
        let mut ids = Vec::new();
        for k in [2, 4, 5, 7, 8, 9] {
            for n in 1..=4 {
                ids.push(ModelId::family(k, n));
            }
        }
        ids.extend([12, 14, 15, 22].map(ModelId::fixed));
        for id in ids {
            let s = invariant_system(id);
            let syz = s.syzygy.clone().unwrap();
            assert!(s.to_sphere(&syz).is_zero(), "{id}");
        }
        let c = cornulier_system(3, true);
        assert!(c.to_sphere(c.syzygy.as_ref().unwrap()).is_zero());
    }

    #[test]
    fn invariants_are_group_invariant() {
        use crate::groups::{construct_named, GroupError};
        let mut ids: Vec<ModelId> = Vec::new();
        for k in 1..=9 {
            for n in [1, 2, 3, 5] {
                ids.push(ModelId::family(k, n));
            }
        }
        ids.extend([11, 12, 13, 14, 15, 21, 22].map(ModelId::fixed));
        let mut checked = 0;
        for id in ids {
            let s = invariant_system(id);
            let g = match construct_named(&s.group) {
                Ok(g) => g,
                Err(GroupError::UnsupportedOrder(_)) => continue,
                Err(e) => panic!("{id}: {e}"),
            };
            for inv in &s.invariants {
                assert!(g.is_invariant_standard(&inv.ambient).unwrap(), "{id}: {} under {}", inv.label, g.name());
            }
            checked += 1;
        }
        assert!(checked >= 30, "only {checked} systems checked");
    }
}
