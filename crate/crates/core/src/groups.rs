//! Finite orthogonal groups over ℚ(√5), invariance tests, Molien series and
//! the Reynolds operator.
//!
//! Rotations of order 3, 5, 6 and 10 have no exact matrix about the z-axis in
//! ℚ(√5). Those groups are realised about a rational or golden axis instead and
//! carry a [`Frame`]: an orthogonal (not orthonormal) basis whose third vector
//! is the rotation axis. Polynomials written for the z-axis are moved into the
//! frame with [`FiniteGroup::to_native`] before invariance is tested.

use crate::algebra::{ExactScalar, MultiPoly, ScalarMatrix, UniPoly};
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Hard cap on group closure.
pub const CLOSURE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeded {0} elements")]
    ClosureCapExceeded(usize),
    #[error("order {0} has no exact rotation matrix over Q(sqrt 5)")]
    UnsupportedOrder(u32),
    #[error("unknown group label {0:?}")]
    UnknownGroup(String),
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("Molien series has irrational coefficients")]
    IrrationalSeries,
    #[error("polynomial mixes exponent parities and cannot be moved into the group frame")]
    FrameParity,
    #[error("generators have inconsistent dimensions")]
    DimensionMismatch,
}

fn q(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn fr(n: i64, d: i64) -> ExactScalar {
    ExactScalar::from_frac(n, d)
}

/// An exactly orthogonal matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthogonalElement {
    m: ScalarMatrix,
}

impl OrthogonalElement {
    pub fn new(m: ScalarMatrix) -> Result<Self, GroupError> {
        if m.rows() != m.cols() || !m.is_orthogonal() {
            return Err(GroupError::NotOrthogonal);
        }
        Ok(OrthogonalElement { m })
    }

    pub fn identity(dim: usize) -> Self {
        OrthogonalElement { m: ScalarMatrix::identity(dim) }
    }

    /// `−I`
    pub fn central_symmetry(dim: usize) -> Self {
        OrthogonalElement { m: ScalarMatrix::identity(dim).scale(&q(-1)) }
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn det(&self) -> ExactScalar {
        self.m.det()
    }

    pub fn compose(&self, other: &Self) -> Self {
        OrthogonalElement { m: &self.m * &other.m }
    }

    pub fn inverse(&self) -> Self {
        OrthogonalElement { m: self.m.transpose() }
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    /// `p ∘ gᵀ` for ambient variables `vars`.
    pub fn act(&self, p: &MultiPoly, vars: &[&str]) -> MultiPoly {
        p.substitute(&self.images(vars))
    }

    /// Images of the coordinate functions under `x ↦ gᵀx`.
    fn images(&self, vars: &[&str]) -> HashMap<String, MultiPoly> {
        assert_eq!(vars.len(), self.dim());
        vars.iter()
            .enumerate()
            .map(|(i, v)| {
                let lin = vars
                    .iter()
                    .enumerate()
                    .fold(MultiPoly::zero(), |acc, (j, w)| &acc + &MultiPoly::var(w).scale(self.m.get(j, i)));
                (v.to_string(), lin)
            })
            .collect()
    }

    fn cmp_entries(&self, other: &Self) -> Ordering {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let c = self.m.get(i, j).cmp_value(other.m.get(i, j));
                if c != Ordering::Equal {
                    return c;
                }
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for OrthogonalElement {
    /// One line: rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim())
            .map(|i| self.m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for OrthogonalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Orthogonal basis `f₁, f₂, f₃` with `f₁ × f₂ ∥ f₃`; `f₃` is the main axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    vectors: [[ExactScalar; 3]; 3],
}

impl Frame {
    pub fn new(f1: [ExactScalar; 3], f2: [ExactScalar; 3], f3: [ExactScalar; 3]) -> Self {
        Frame { vectors: [f1, f2, f3] }
    }

    pub fn vector(&self, i: usize) -> &[ExactScalar; 3] {
        &self.vectors[i]
    }

    fn norm2(&self, i: usize) -> ExactScalar {
        self.vectors[i].iter().fold(ExactScalar::zero(), |acc, x| &acc + &(x * x))
    }

    /// Rewrite a polynomial in `(x, y, z)` so that the roles of the coordinate
    /// axes are played by the frame vectors, up to an overall positive scale.
    pub fn transfer(&self, p: &MultiPoly) -> Result<MultiPoly, GroupError> {
        let vars = ["x", "y", "z"];
        let idx: Vec<usize> = p
            .vars()
            .iter()
            .map(|v| vars.iter().position(|w| w == v).ok_or(GroupError::DimensionMismatch))
            .collect::<Result<_, _>>()?;
        let mut parity: Option<[u32; 3]> = None;
        let inv_norms: Vec<ExactScalar> =
            (0..3).map(|i| self.norm2(i).inverse().expect("nonzero frame vector")).collect();
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| {
                vars.iter()
                    .enumerate()
                    .fold(MultiPoly::zero(), |acc, (j, w)| &acc + &MultiPoly::var(w).scale(&self.vectors[i][j]))
            })
            .collect();
        let mut rescaled = Vec::new();
        for (exps, c) in p.raw_terms() {
            let mut full = [0u32; 3];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = exps[k];
            }
            let par = [full[0] % 2, full[1] % 2, full[2] % 2];
            match parity {
                None => parity = Some(par),
                Some(pp) if pp != par => return Err(GroupError::FrameParity),
                _ => {}
            }
            let mut coeff = c.clone();
            for i in 0..3 {
                coeff = &coeff * &inv_norms[i].pow(full[i] / 2);
            }
            rescaled.push((full, coeff));
        }
        let mut acc = MultiPoly::zero();
        for (full, coeff) in rescaled {
            let mut t = MultiPoly::constant(coeff);
            for i in 0..3 {
                if full[i] > 0 {
                    t = &t * &images[i].pow(full[i]);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Rotation by `2π/n` about `f₃`, given `cos` and `sin/|f₃|`.
    fn rotation(&self, cos: &ExactScalar, sin_over_norm: &ExactScalar) -> ScalarMatrix {
        let f = &self.vectors[2];
        let s = self.norm2(2);
        let cross = ScalarMatrix::from_rows(vec![
            vec![q(0), -&f[2], f[1].clone()],
            vec![f[2].clone(), q(0), -&f[0]],
            vec![-&f[1], f[0].clone(), q(0)],
        ]);
        let proj = ScalarMatrix::outer(f, f).scale(&s.inverse().expect("nonzero axis"));
        ScalarMatrix::identity(3).scale(cos).add(&cross.scale(sin_over_norm)).add(&proj.scale(&(&q(1) - cos)))
    }

    /// Half-turn about frame vector `i`.
    fn half_turn(&self, i: usize) -> ScalarMatrix {
        let f = &self.vectors[i];
        let s = self.norm2(i);
        ScalarMatrix::outer(f, f).scale(&(&q(2) * &s.inverse().expect("nonzero"))).sub(&ScalarMatrix::identity(3))
    }

    /// Reflection through the plane orthogonal to frame vector `i`.
    fn reflection(&self, i: usize) -> ScalarMatrix {
        let f = &self.vectors[i];
        let s = self.norm2(i);
        ScalarMatrix::identity(3).sub(&ScalarMatrix::outer(f, f).scale(&(&q(2) * &s.inverse().expect("nonzero"))))
    }
}

fn standard_frame() -> Frame {
    Frame::new([q(1), q(0), q(0)], [q(0), q(1), q(0)], [q(0), q(0), q(1)])
}

/// Frame and exact `(cos 2π/n, sin 2π/n / |f₃|)` for the supported orders.
fn frame_for_order(n: u32) -> Result<(Frame, ExactScalar, ExactScalar), GroupError> {
    let c = ExactScalar::golden();
    match n {
        1 => Ok((standard_frame(), q(1), q(0))),
        2 => Ok((standard_frame(), q(-1), q(0))),
        4 => Ok((standard_frame(), q(0), q(1))),
        3 | 6 => {
            let f = Frame::new([q(1), q(-1), q(0)], [q(1), q(1), q(-2)], [q(1), q(1), q(1)]);
            let cos = if n == 3 { fr(-1, 2) } else { fr(1, 2) };
            Ok((f, cos, fr(1, 2)))
        }
        5 | 10 => {
            let f = Frame::new([q(1), q(0), q(0)], [q(0), c.clone(), q(-1)], [q(0), q(1), c.clone()]);
            if n == 5 {
                Ok((f, ExactScalar::quad(-1, 4, 1, 4), fr(1, 2)))
            } else {
                Ok((f, ExactScalar::quad(1, 4, 1, 4), ExactScalar::quad(-1, 4, 1, 4)))
            }
        }
        _ => Err(GroupError::UnsupportedOrder(n)),
    }
}

/// Group labels following the usual notation; `J` is the central symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupLabel {
    /// Identity group in the given dimension.
    Trivial(usize),
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    /// `G_J = G ∪ JG`
    WithJ(Box<GroupLabel>),
    /// `T|O = T ∪ J(O∖T)`
    TO,
    /// `C_n ∪ J(D_n∖C_n)` with the dihedral half-turn about the y-axis, that is
    /// `C_n` extended by the mirror `y ↦ −y`.
    CnDn(u32),
    /// `D_n ∪ J(D_2n∖D_n)`
    DnD2n(u32),
    /// `C_n ∪ J(C_2n∖C_n)`
    CnC2n(u32),
    /// The 4-dimensional group of order `2p²`.
    Cornulier(u32),
}

impl GroupLabel {
    /// Parse `C5`, `D3J`, `T`, `OJ`, `I`, `IJ`, `TO`, `CnDn`, `DnD2n`, `CnC2n`,
    /// `cornulier`. Family labels without a digit take `n` (or `p`).
    pub fn parse(name: &str, n: Option<u32>) -> Result<Self, GroupError> {
        let bad = || GroupError::UnknownGroup(name.to_string());
        let s = name.replace(['|', '_'], "");
        let need = |n: Option<u32>| n.ok_or_else(bad);
        let (base, with_j) = match s.strip_suffix('J') {
            Some(b) if !b.is_empty() => (b.to_string(), true),
            _ => (s.clone(), false),
        };
        let parsed = match base.as_str() {
            "T" => GroupLabel::Tetrahedral,
            "O" => GroupLabel::Octahedral,
            "I" => GroupLabel::Icosahedral,
            "TO" => GroupLabel::TO,
            "trivial" | "E" => GroupLabel::Trivial(3),
            "cornulier" | "Cornulier" => GroupLabel::Cornulier(n.unwrap_or(3)),
            "CnDn" => GroupLabel::CnDn(need(n)?),
            "DnD2n" => GroupLabel::DnD2n(need(n)?),
            "CnC2n" => GroupLabel::CnC2n(need(n)?),
            "Cn" => GroupLabel::Cyclic(need(n)?),
            "Dn" => GroupLabel::Dihedral(need(n)?),
            other => parse_indexed(other).ok_or_else(bad)?,
        };
        Ok(if with_j { GroupLabel::WithJ(Box::new(parsed)) } else { parsed })
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupLabel::Trivial(d) => *d,
            GroupLabel::Cornulier(_) => 4,
            GroupLabel::WithJ(g) => g.dim(),
            _ => 3,
        }
    }
}

fn parse_indexed(s: &str) -> Option<GroupLabel> {
    // C5, D3, C5D5, D3D6, C3C6
    fn digits_split(t: &str) -> Option<(char, u32, &str)> {
        let mut it = t.chars();
        let head = it.next()?;
        let rest = it.as_str();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let n: u32 = rest[..end].parse().ok()?;
        Some((head, n, &rest[end..]))
    }
    let (h, n, tail) = digits_split(s)?;
    if tail.is_empty() {
        return match h {
            'C' => Some(GroupLabel::Cyclic(n)),
            'D' => Some(GroupLabel::Dihedral(n)),
            _ => None,
        };
    }
    let (h2, m, tail2) = digits_split(tail)?;
    if !tail2.is_empty() {
        return None;
    }
    match (h, h2) {
        ('C', 'D') if m == n => Some(GroupLabel::CnDn(n)),
        ('D', 'D') if m == 2 * n => Some(GroupLabel::DnD2n(n)),
        ('C', 'C') if m == 2 * n => Some(GroupLabel::CnC2n(n)),
        _ => None,
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Trivial(_) => write!(f, "E"),
            GroupLabel::Cyclic(n) => write!(f, "C{n}"),
            GroupLabel::Dihedral(n) => write!(f, "D{n}"),
            GroupLabel::Tetrahedral => write!(f, "T"),
            GroupLabel::Octahedral => write!(f, "O"),
            GroupLabel::Icosahedral => write!(f, "I"),
            GroupLabel::WithJ(g) => write!(f, "{g}_J"),
            GroupLabel::TO => write!(f, "T|O"),
            GroupLabel::CnDn(n) => write!(f, "C{n}|D{n}"),
            GroupLabel::DnD2n(n) => write!(f, "D{n}|D{}", 2 * n),
            GroupLabel::CnC2n(n) => write!(f, "C{n}|C{}", 2 * n),
            GroupLabel::Cornulier(p) => write!(f, "cornulier({p})"),
        }
    }
}

/// A finite group of exact orthogonal matrices in canonical element order.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    dim: usize,
    elements: Vec<OrthogonalElement>,
    frame: Option<Frame>,
}

/// Closure of a generating set under multiplication, with canonical ordering.
pub fn generate_group(generators: &[OrthogonalElement]) -> Result<FiniteGroup, GroupError> {
    let dim = generators.first().map_or(3, |g| g.dim());
    if generators.iter().any(|g| g.dim() != dim) {
        return Err(GroupError::DimensionMismatch);
    }
    let id = OrthogonalElement::identity(dim);
    let mut seen: HashSet<OrthogonalElement> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.compose(s);
            if seen.insert(h.clone()) {
                if seen.len() > CLOSURE_CAP {
                    return Err(GroupError::ClosureCapExceeded(CLOSURE_CAP));
                }
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<OrthogonalElement> = seen.into_iter().collect();
    elements.sort_by(|a, b| a.cmp_entries(b));
    Ok(FiniteGroup { name: "generated".into(), dim, elements, frame: None })
}

fn elem(m: ScalarMatrix) -> OrthogonalElement {
    OrthogonalElement::new(m).expect("built-in generator must be orthogonal")
}

fn golden_icosahedral_generators() -> Vec<OrthogonalElement> {
    let c = ExactScalar::golden();
    let ci = c.inverse().expect("nonzero");
    let h = fr(1, 2);
    let m = ScalarMatrix::from_rows(vec![
        vec![q(1), c.clone(), ci.clone()],
        vec![c.clone(), -&ci, q(-1)],
        vec![-&ci, q(1), -&c],
    ])
    .scale(&h);
    vec![elem(m), cyclic_permutation(), elem(ScalarMatrix::from_int_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]))]
}

fn cyclic_permutation() -> OrthogonalElement {
    elem(ScalarMatrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]))
}

fn tetrahedral_generators() -> Vec<OrthogonalElement> {
    vec![
        elem(ScalarMatrix::from_int_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])),
        elem(ScalarMatrix::from_int_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]])),
        cyclic_permutation(),
    ]
}

fn quarter_turn_z() -> OrthogonalElement {
    elem(ScalarMatrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]))
}

/// `G₁ ∪ {Jg : g ∈ G∖G₁}`
fn index_two_twist(sub: &FiniteGroup, sup: &FiniteGroup) -> FiniteGroup {
    let inner: HashSet<&OrthogonalElement> = sub.elements.iter().collect();
    let j = OrthogonalElement::central_symmetry(sup.dim);
    let mut elements: Vec<OrthogonalElement> =
        sup.elements.iter().map(|g| if inner.contains(g) { g.clone() } else { j.compose(g) }).collect();
    elements.sort_by(|a, b| a.cmp_entries(b));
    FiniteGroup { name: String::new(), dim: sup.dim, elements, frame: sup.frame.clone() }
}

fn cornulier_generators(p: u32) -> Result<Vec<OrthogonalElement>, GroupError> {
    if p != 3 {
        return Err(GroupError::UnsupportedOrder(p));
    }
    let v = |a: [i64; 4]| -> Vec<ExactScalar> { a.iter().map(|&x| q(x)).collect() };
    let (a, b) = (v([1, -1, 0, 0]), v([1, 1, -2, 0]));
    let (a2, b2) = (v([1, 1, 1, 0]), v([0, 0, 0, 1]));
    let i4 = ScalarMatrix::identity(4);
    let plane_rotation = |u: &[ExactScalar], nu: i64, w: &[ExactScalar], nw: i64, s: ExactScalar| {
        // cos = −1/2 in the plane spanned by the orthogonal vectors u, w
        let proj = ScalarMatrix::outer(u, u).scale(&fr(1, nu)).add(&ScalarMatrix::outer(w, w).scale(&fr(1, nw)));
        let skew = ScalarMatrix::outer(w, u).sub(&ScalarMatrix::outer(u, w));
        i4.add(&proj.scale(&fr(-3, 2))).add(&skew.scale(&s))
    };
    let n1 = plane_rotation(&a, 2, &b, 6, fr(1, 4));
    let n2 = plane_rotation(&a2, 3, &b2, 1, fr(1, 2));
    let r5_4 = ExactScalar::quad(0, 1, 1, 4);
    let r5_12 = ExactScalar::quad(0, 1, 1, 12);
    let m = ScalarMatrix::outer(&a2, &a)
        .scale(&fr(1, 4))
        .add(&ScalarMatrix::outer(&b2, &a).scale(&r5_4))
        .sub(&ScalarMatrix::outer(&a2, &b).scale(&r5_12))
        .add(&ScalarMatrix::outer(&b2, &b).scale(&fr(1, 4)));
    let swap = m.add(&m.transpose());
    Ok(vec![elem(n1), elem(n2), elem(swap)])
}

/// Exact group for a label.
pub fn construct_named(label: &GroupLabel) -> Result<FiniteGroup, GroupError> {
    let mut g = build(label)?;
    g.name = label.to_string();
    Ok(g)
}

fn framed(frame: Frame, gens: Vec<ScalarMatrix>) -> Result<FiniteGroup, GroupError> {
    let gens: Vec<OrthogonalElement> = gens.into_iter().map(elem).collect();
    let mut g = generate_group(&gens)?;
    g.frame = Some(frame);
    Ok(g)
}

fn build(label: &GroupLabel) -> Result<FiniteGroup, GroupError> {
    match label {
        GroupLabel::Trivial(d) => generate_group(&[OrthogonalElement::identity(*d)]),
        GroupLabel::Cyclic(n) => {
            let (f, c, s) = frame_for_order(*n)?;
            let r = f.rotation(&c, &s);
            framed(f, vec![r])
        }
        GroupLabel::Dihedral(n) => {
            let (f, c, s) = frame_for_order(*n)?;
            let r = f.rotation(&c, &s);
            let flip = f.half_turn(0);
            framed(f, vec![r, flip])
        }
        GroupLabel::CnDn(n) => {
            let (f, c, s) = frame_for_order(*n)?;
            let r = f.rotation(&c, &s);
            let mirror = f.reflection(1);
            framed(f, vec![r, mirror])
        }
        GroupLabel::DnD2n(n) => {
            let sub = build(&GroupLabel::Dihedral(*n))?;
            let sup = dihedral_in_frame_of(*n, 2 * n)?;
            Ok(index_two_twist(&sub, &sup))
        }
        GroupLabel::CnC2n(n) => {
            let sub = build(&GroupLabel::Cyclic(*n))?;
            let sup = cyclic_in_frame_of(*n, 2 * n)?;
            Ok(index_two_twist(&sub, &sup))
        }
        GroupLabel::Tetrahedral => generate_group(&tetrahedral_generators()),
        GroupLabel::Octahedral => {
            let mut gens = tetrahedral_generators();
            gens.push(quarter_turn_z());
            generate_group(&gens)
        }
        GroupLabel::Icosahedral => generate_group(&golden_icosahedral_generators()),
        GroupLabel::TO => {
            let t = build(&GroupLabel::Tetrahedral)?;
            let o = build(&GroupLabel::Octahedral)?;
            Ok(index_two_twist(&t, &o))
        }
        GroupLabel::WithJ(inner) => {
            let g = build(inner)?;
            let mut gens = g.elements.clone();
            gens.push(OrthogonalElement::central_symmetry(g.dim));
            let mut out = generate_group(&gens)?;
            out.frame = g.frame;
            Ok(out)
        }
        GroupLabel::Cornulier(p) => generate_group(&cornulier_generators(*p)?),
    }
}

/// `C_m` expressed in the frame used for `C_n` (`m = 2n`), so that subgroup
/// relations hold elementwise.
fn cyclic_in_frame_of(n: u32, m: u32) -> Result<FiniteGroup, GroupError> {
    let (f, _, _) = frame_for_order(n)?;
    let (fm, c, s) = frame_for_order(m)?;
    if f != fm {
        return Err(GroupError::UnsupportedOrder(m));
    }
    framed(f.clone(), vec![f.rotation(&c, &s)])
}

fn dihedral_in_frame_of(n: u32, m: u32) -> Result<FiniteGroup, GroupError> {
    let (f, _, _) = frame_for_order(n)?;
    let (fm, c, s) = frame_for_order(m)?;
    if f != fm {
        return Err(GroupError::UnsupportedOrder(m));
    }
    framed(f.clone(), vec![f.rotation(&c, &s), f.half_turn(0)])
}

/// Coefficients `d₀..d_N` of a Molien series and its reduced rational form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolienSeries {
    pub numerator: UniPoly,
    pub denominator: UniPoly,
    pub coefficients: Vec<u64>,
}

impl MolienSeries {
    /// JSON object `{numerator, denominator, coefficients}`; polynomials in `t`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "numerator": self.numerator.to_string(),
            "denominator": self.denominator.to_string(),
            "coefficients": self.coefficients,
        })
    }
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[OrthogonalElement] {
        &self.elements
    }

    pub fn frame(&self) -> Option<&Frame> {
        self.frame.as_ref()
    }

    pub fn ambient_vars(&self) -> Vec<&'static str> {
        match self.dim {
            3 => vec!["x", "y", "z"],
            4 => vec!["x1", "x2", "x3", "x4"],
            2 => vec!["x", "y"],
            d => panic!("unsupported ambient dimension {d}"),
        }
    }

    pub fn contains(&self, g: &OrthogonalElement) -> bool {
        self.elements.binary_search_by(|e| e.cmp_entries(g)).is_ok()
    }

    /// Closure, inverses, identity and orthogonality, checked exhaustively.
    pub fn check_axioms(&self) -> bool {
        let id_ok = self.contains(&OrthogonalElement::identity(self.dim));
        let orth = self.elements.iter().all(|e| e.matrix().is_orthogonal());
        let inv = self.elements.iter().all(|e| self.contains(&e.inverse()));
        let closed = self.elements.par_iter().all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))));
        id_ok && orth && inv && closed
    }

    /// Move a polynomial written for the standard axes into this group's frame.
    pub fn to_native(&self, p: &MultiPoly) -> Result<MultiPoly, GroupError> {
        match &self.frame {
            Some(f) if *f != standard_frame() => f.transfer(p),
            _ => Ok(p.clone()),
        }
    }

    /// First element `g` with `p ∘ gᵀ ≠ p`, in the group's own coordinates.
    pub fn first_violation(&self, p: &MultiPoly) -> Option<OrthogonalElement> {
        let vars = self.ambient_vars();
        self.elements.par_iter().find_first(|g| &g.act(p, &vars) != p).cloned()
    }

    pub fn is_invariant(&self, p: &MultiPoly) -> bool {
        self.first_violation(p).is_none()
    }

    /// Invariance of a polynomial given for the standard axes.
    pub fn is_invariant_standard(&self, p: &MultiPoly) -> Result<bool, GroupError> {
        Ok(self.is_invariant(&self.to_native(p)?))
    }

    /// `(1/|G|) Σ p ∘ gᵀ`
    pub fn reynolds_average(&self, p: &MultiPoly) -> MultiPoly {
        let vars = self.ambient_vars();
        let sum = self.elements.par_iter().map(|g| g.act(p, &vars)).reduce(MultiPoly::zero, |a, b| &a + &b);
        sum.scale(&fr(1, self.order() as i64))
    }

    /// Dimension of the degree-`n` invariants: rank of the averaging operator
    /// on the monomial basis.
    pub fn reynolds_dimension(&self, degree: u32) -> usize {
        let vars = self.ambient_vars();
        let basis = monomial_basis(&vars, degree);
        let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let k = basis.len();
        let columns: Vec<Vec<ExactScalar>> = basis
            .par_iter()
            .map(|e| {
                let mono = MultiPoly::monomial(
                    ExactScalar::one(),
                    &vars.iter().zip(e).map(|(v, &x)| (*v, x)).collect::<Vec<_>>(),
                );
                let avg = self.reynolds_average(&mono);
                let mut col = vec![ExactScalar::zero(); k];
                for (pw, c) in avg.terms() {
                    let mut ex = vec![0u32; vars.len()];
                    for (v, x) in pw {
                        ex[vars.iter().position(|w| *w == v).expect("ambient")] = x;
                    }
                    col[index[&ex]] = c.clone();
                }
                col
            })
            .collect();
        let rows: Vec<Vec<ExactScalar>> = (0..k).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        if k == 0 {
            return 0;
        }
        ScalarMatrix::from_rows(rows).rank()
    }

    /// Molien series `(1/|G|) Σ 1/det(I − t g)` truncated after `terms` coefficients.
    pub fn molien(&self, terms: usize) -> Result<MolienSeries, GroupError> {
        let mut classes: Vec<(UniPoly, i64)> = Vec::new();
        for g in &self.elements {
            // det(I − t g) is the reversed characteristic polynomial of g
            let cp = g.matrix().charpoly();
            let d = self.dim;
            let rev = UniPoly::new((0..=d).map(|i| cp.coeff(d - i)).collect());
            match classes.iter_mut().find(|(p, _)| *p == rev) {
                Some((_, m)) => *m += 1,
                None => classes.push((rev, 1)),
            }
        }
        let mut lcm = UniPoly::one();
        for (p, _) in &classes {
            let g = lcm.gcd(p);
            lcm = (&lcm * p).div_rem(&g).0;
        }
        let mut num = UniPoly::zero();
        for (p, m) in &classes {
            let cof = lcm.div_rem(p).0;
            num = &num + &cof.scale(&q(*m));
        }
        num = num.scale(&fr(1, self.order() as i64));
        let g = num.gcd(&lcm);
        let mut num = num.div_rem(&g).0;
        let mut den = lcm.div_rem(&g).0;
        let c0 = den.coeff(0).inverse().expect("denominator is nonzero at t = 0");
        num = num.scale(&c0);
        den = den.scale(&c0);
        if !num.is_rational() || !den.is_rational() {
            return Err(GroupError::IrrationalSeries);
        }
        let coefficients = num
            .series_div(&den, terms)
            .into_iter()
            .map(|c| c.to_i64().and_then(|v| u64::try_from(v).ok()).ok_or(GroupError::IrrationalSeries))
            .collect::<Result<Vec<u64>, _>>()?;
        Ok(MolienSeries { numerator: num, denominator: den, coefficients })
    }

    /// One matrix per line.
    pub fn dump(&self) -> String {
        self.elements.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// Exponent vectors of all monomials of the given total degree.
pub fn monomial_basis(vars: &[&str], degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars.is_empty() {
        return out;
    }
    rec(vars.len(), degree, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly;

    fn named(s: &str, n: Option<u32>) -> FiniteGroup {
        construct_named(&GroupLabel::parse(s, n).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        for (s, n, k) in [
            ("T", None, 12),
            ("O", None, 24),
            ("I", None, 60),
            ("TJ", None, 24),
            ("OJ", None, 48),
            ("TO", None, 24),
            ("C5", None, 5),
            ("D3", None, 6),
            ("C10", None, 10),
            ("D6J", None, 24),
            ("C5D5", None, 10),
            ("D3D6", None, 12),
            ("C5C10", None, 10),
            ("cornulier", Some(3), 18),
        ] {
            assert_eq!(named(s, n).order(), k, "{s}");
        }
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(construct_named(&GroupLabel::Cyclic(7)).unwrap_err(), GroupError::UnsupportedOrder(7));
        assert!(GroupLabel::parse("Q8", None).is_err());
    }

    #[test]
    fn invariance_examples() {
        let t = named("T", None);
        let o = named("O", None);
        assert!(t.is_invariant(&poly("x y z")));
        assert!(!o.is_invariant(&poly("x y z")));
        assert!(o.is_invariant(&poly("x^2 y^2 z^2")));
        let c5 = named("C5", None);
        assert!(c5.is_invariant_standard(&poly("x^5 - 10 x^3 y^2 + 5 x y^4")).unwrap());
        assert!(c5.is_invariant_standard(&poly("z")).unwrap());
        assert!(!c5.is_invariant_standard(&poly("x")).unwrap());
    }

    #[test]
    fn twisted_subgroups_are_groups() {
        for s in ["TO", "C5D5", "D3D6", "C3C6", "IJ"] {
            assert!(named(s, None).check_axioms(), "{s}");
        }
    }

    #[test]
    fn molien_trivial() {
        let e = named("trivial", None);
        let m = e.molien(5).unwrap();
        assert_eq!(m.coefficients, vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn molien_matches_reynolds_for_t() {
        let t = named("T", None);
        let m = t.molien(7).unwrap();
        for n in 0..7u32 {
            assert_eq!(m.coefficients[n as usize] as usize, t.reynolds_dimension(n), "degree {n}");
        }
    }

    #[test]
    fn molien_matches_reynolds_up_to_degree_8() {
        for (s, top) in [("O", 6), ("I", 6), ("TO", 8), ("OJ", 8), ("C5D5", 8), ("D3", 8), ("C5C10", 8)] {
            let g = named(s, None);
            let m = g.molien(top + 1).unwrap();
            for n in 0..=top as u32 {
                assert_eq!(m.coefficients[n as usize] as usize, g.reynolds_dimension(n), "{s} degree {n}");
            }
        }
    }

    #[test]
    fn ij_sextics() {
        assert_eq!(named("IJ", None).reynolds_dimension(6), 2);
    }

    #[test]
    fn cornulier_series_closed_form() {
        let g = named("cornulier", Some(3));
        let m = g.molien(13).unwrap();
        let num = UniPoly::new([1, 0, 0, 1, 0, 2, 2, 0, 1, 0, 0, 1].iter().map(|&c| q(c)).collect());
        let den = [2usize, 4, 6, 3].iter().fold(UniPoly::one(), |acc, &k| {
            let mut c = vec![q(0); k + 1];
            c[0] = q(1);
            c[k] = q(-1);
            &acc * &UniPoly::new(c)
        });
        let expect: Vec<u64> = num.series_div(&den, 13).iter().map(|c| c.to_i64().unwrap() as u64).collect();
        assert_eq!(m.coefficients, expect);
        for n in 0..=6u32 {
            assert_eq!(m.coefficients[n as usize] as usize, g.reynolds_dimension(n), "degree {n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = MultiPoly> {
            prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..3), 1..5).prop_map(|ts| {
                ts.into_iter().fold(MultiPoly::zero(), |acc, (c, a, b, d)| {
                    &acc + &MultiPoly::monomial(q(c), &[("x", a), ("y", b), ("z", d)])
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn averaging_projects_onto_invariants(p in small_poly(), k in 0usize..4) {
                let g = named(["T", "O", "TO", "C5D5"][k], None);
                prop_assert!(g.is_invariant(&g.reynolds_average(&p)));
            }

            #[test]
            fn doubling_and_twisting_orders(k in 0usize..4) {
                let (base, j, tw) = [("T", "TJ", "TO"), ("D3", "D3J", "D3D6"), ("C5", "C5J", "C5C10"), ("O", "OJ", "TO")][k];
                let b = named(base, None);
                prop_assert_eq!(named(j, None).order(), 2 * b.order());
                prop_assert!(named(tw, None).check_axioms());
            }
        }
    }
}
