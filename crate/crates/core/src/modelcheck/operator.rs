//! Drifts from reversible measures and the exact operator on filtered
//! polynomial spaces.

use super::boundary::{boundary_multipliers, weights, SyzygyRing};
use super::fit::{model_monomial, weighted_monomials};
use super::ModelCheckError;
use crate::algebra::{solve, ExactScalar, LinSolution, MultiPoly, PolyMatrix, ScalarMatrix, UniPoly};
use crate::catalog::{InvariantSystem, PolynomialModel};
use nalgebra::DMatrix;
use std::collections::{BTreeSet, HashMap};

/// Factors carrying a measure exponent: the declared boundary factors that
/// satisfy the boundary equation and are not components of another one.
pub fn measure_factors(model: &PolynomialModel) -> Vec<(String, MultiPoly)> {
    model
        .boundary_factors
        .iter()
        .filter(|b| b.satisfies_boundary && b.component_of.is_none())
        .map(|b| (b.label.clone(), b.poly.value.clone()))
        .collect()
}

/// `Σⱼ ∂ⱼG^{ij}` for every `i`.
pub fn divergence(g: &PolyMatrix, vars: &[&str]) -> Vec<MultiPoly> {
    (0..g.size())
        .map(|i| (0..g.size()).fold(MultiPoly::zero(), |acc, j| &acc + &g.get(i, j).derivative(vars[j])))
        .collect()
}

/// Multipliers `L_{i,q}` of the measure factors, indexed `[q][i]`.
fn factor_multipliers(model: &PolynomialModel, g: &PolyMatrix) -> Result<Vec<Vec<MultiPoly>>, ModelCheckError> {
    let vars = model.system.vars();
    measure_factors(model)
        .iter()
        .map(|(label, f)| {
            boundary_multipliers(g, &vars, f, None).ok_or_else(|| ModelCheckError::Inconsistent {
                what: format!("boundary equation for {label}"),
                residual: f.to_text(),
            })
        })
        .collect()
}

/// Drift of the operator symmetric for `Π P_q^{α_q} dθ`:
/// `bⁱ = Σⱼ∂ⱼG^{ij} + Σ_q α_q L_{i,q}`, with `deg bⁱ ≤ aᵢ` asserted.
pub fn measure_drift(
    model: &PolynomialModel,
    g: &PolyMatrix,
    alpha: &[ExactScalar],
) -> Result<Vec<MultiPoly>, ModelCheckError> {
    let vars = model.system.vars();
    let mults = factor_multipliers(model, g)?;
    assert_eq!(alpha.len(), mults.len(), "one exponent per measure factor");
    let w = weights(&model.system);
    let mut out = divergence(g, &vars);
    for (a, l) in alpha.iter().zip(&mults) {
        for (b, li) in out.iter_mut().zip(l) {
            *b = &*b + &li.scale(a);
        }
    }
    for (i, (b, inv)) in out.iter().zip(&model.system.invariants).enumerate() {
        let found = if b.is_zero() { 0 } else { b.weighted_degree(&w) };
        if found > inv.valuation {
            return Err(ModelCheckError::DegreeViolation { index: i, found, bound: inv.valuation });
        }
    }
    Ok(out)
}

/// Exponents `α` for which the measure drift equals `target` (modulo the
/// syzygy for three-coordinate models), when they exist and are unique.
pub fn sphere_alpha(model: &PolynomialModel, g: &PolyMatrix, target: &[MultiPoly]) -> Option<Vec<ExactScalar>> {
    let vars = model.system.vars();
    let mults = factor_multipliers(model, g).ok()?;
    let ring = SyzygyRing::of_system(&model.system);
    let red = |p: &MultiPoly| ring.as_ref().map_or_else(|| p.clone(), |r| r.reduce(p));
    let div = divergence(g, &vars);
    // Σ_q α_q L_{i,q} = target_i − div_i, matched coefficient by coefficient.
    let mut keys: BTreeSet<Vec<(String, u32)>> = BTreeSet::new();
    let rhs: Vec<MultiPoly> = target.iter().zip(&div).map(|(t, d)| red(&(t - d))).collect();
    let cols: Vec<Vec<MultiPoly>> = mults.iter().map(|l| l.iter().map(&red).collect()).collect();
    let owned = |p: &MultiPoly| -> Vec<Vec<(String, u32)>> {
        p.terms().map(|(m, _)| m.into_iter().map(|(v, e)| (v.to_string(), e)).collect()).collect()
    };
    for p in rhs.iter().chain(cols.iter().flatten()) {
        keys.extend(owned(p));
    }
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for i in 0..rhs.len() {
        for k in &keys {
            let key: Vec<(&str, u32)> = k.iter().map(|(v, e)| (v.as_str(), *e)).collect();
            rows.push(cols.iter().map(|c| c[i].coefficient(&key)).collect::<Vec<_>>());
            b.push(rhs[i].coefficient(&key));
        }
    }
    if mults.is_empty() {
        return b.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    match solve(&ScalarMatrix::from_rows(rows), &b) {
        LinSolution::Unique(x) => Some(x),
        _ => None,
    }
}

/// Matrix of `L̂ = Σ G^{ij}∂ᵢⱼ + Σ Bⁱ∂ᵢ` on monomials of valuation at most `cap`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub vars: Vec<String>,
    /// Basis exponents, sorted by valuation.
    pub basis: Vec<Vec<u32>>,
    pub valuations: Vec<u32>,
    /// Column `j` holds the coordinates of `L̂(basis[j])`.
    pub matrix: ScalarMatrix,
}

impl OperatorMatrix {
    /// Index ranges of the diagonal blocks (one per valuation).
    pub fn blocks(&self) -> Vec<(u32, std::ops::Range<usize>)> {
        let mut out: Vec<(u32, std::ops::Range<usize>)> = Vec::new();
        for (i, v) in self.valuations.iter().enumerate() {
            match out.last_mut() {
                Some((w, r)) if w == v => r.end = i + 1,
                _ => out.push((*v, i..i + 1)),
            }
        }
        out
    }

    pub fn block(&self, r: &std::ops::Range<usize>) -> ScalarMatrix {
        ScalarMatrix::from_rows(r.clone().map(|i| r.clone().map(|j| self.matrix.get(i, j).clone()).collect()).collect())
    }

    /// Every entry below the diagonal blocks vanishes.
    pub fn is_block_triangular(&self) -> bool {
        let n = self.basis.len();
        (0..n).all(|r| (0..n).all(|c| self.valuations[r] <= self.valuations[c] || self.matrix.get(r, c).is_zero()))
    }
}

/// Assemble the exact operator matrix. For systems with a syzygy the basis is
/// taken modulo the syzygy (degree at most one in the secondary coordinate).
pub fn assemble_operator(
    system: &InvariantSystem,
    g: &PolyMatrix,
    drift: &[MultiPoly],
    cap: u32,
) -> Result<OperatorMatrix, ModelCheckError> {
    let vars = system.vars();
    let vals = system.valuations();
    let ring = SyzygyRing::of_system(system);
    let basis = weighted_monomials(&vals, cap, ring.as_ref().map(|_| 1));
    let valuation = |e: &[u32]| e.iter().zip(&vals).map(|(a, b)| a * b).sum::<u32>();
    let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let n = basis.len();
    let mut m = ScalarMatrix::zeros(n, n);
    for (col, e) in basis.iter().enumerate() {
        let mono = model_monomial(&vars, e);
        let mut image = MultiPoly::zero();
        for i in 0..vars.len() {
            let di = mono.derivative(vars[i]);
            if di.is_zero() {
                continue;
            }
            image = &image + &(&drift[i] * &di);
            for (j, vj) in vars.iter().enumerate() {
                let dij = di.derivative(vj);
                if !dij.is_zero() {
                    image = &image + &(g.get(i, j) * &dij);
                }
            }
        }
        if let Some(r) = &ring {
            image = r.reduce(&image);
        }
        let own = valuation(e);
        for (pw, c) in image.terms() {
            let exps: Vec<u32> = vars.iter().map(|v| pw.iter().find(|(w, _)| w == v).map_or(0, |(_, x)| *x)).collect();
            match index.get(&exps) {
                Some(&row) if valuation(&exps) <= own => m.set(row, col, c.clone()),
                _ => {
                    return Err(ModelCheckError::FiltrationViolation(format!(
                        "{} maps to {}",
                        mono.to_text(),
                        model_monomial(&vars, &exps).to_text()
                    )))
                }
            }
        }
    }
    Ok(OperatorMatrix {
        vars: vars.iter().map(|s| s.to_string()).collect(),
        valuations: basis.iter().map(|e| valuation(e)).collect(),
        basis,
        matrix: m,
    })
}

/// Eigenvalues of one diagonal block.
#[derive(Clone, Debug)]
pub struct BlockSpectrum {
    pub valuation: u32,
    pub size: usize,
    /// Exact roots with multiplicity.
    pub exact: Vec<(ExactScalar, usize)>,
    /// Remaining roots in floating point, `(re, im, certified)`.
    pub numeric: Vec<(f64, f64, bool)>,
}

impl BlockSpectrum {
    pub fn all_exact(&self) -> bool {
        self.numeric.is_empty()
    }
}

fn f64_roots(p: &UniPoly) -> Vec<(f64, f64)> {
    let Some(d) = p.degree().filter(|d| *d > 0) else { return vec![] };
    let lead = p.leading().to_f64();
    let comp = DMatrix::from_fn(d, d, |i, j| {
        if i == 0 {
            -p.coeff(d - 1 - j).to_f64() / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    comp.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
}

/// Candidate exact roots: the mean root, integers spanning the real parts of
/// the floating-point roots, and small-denominator rationals near each of them.
fn candidates(p: &UniPoly, approx: &[(f64, f64)]) -> Vec<ExactScalar> {
    let d = p.degree().unwrap_or(0);
    let mut out =
        vec![&(-&p.coeff(d - 1) * &p.leading().inverse().expect("nonzero")) * &ExactScalar::from_frac(1, d as i64)];
    let reals: Vec<f64> = approx.iter().filter(|(re, im)| im.abs() <= 1e-3 * (1.0 + re.abs())).map(|z| z.0).collect();
    if let (Some(lo), Some(hi)) = (reals.iter().copied().reduce(f64::min), reals.iter().copied().reduce(f64::max)) {
        let (lo, hi) = (lo.floor() as i64 - 1, hi.ceil() as i64 + 1);
        if hi - lo <= 20_000 {
            out.extend((lo..=hi).map(ExactScalar::from_int));
        }
    }
    for x in reals {
        out.extend((2..=12i64).map(|den| ExactScalar::from_frac((x * den as f64).round() as i64, den)));
    }
    out
}

/// Split `p` into exact linear factors found among the candidates.
fn exact_roots(mut p: UniPoly) -> (Vec<(ExactScalar, usize)>, UniPoly) {
    let mut found: Vec<(ExactScalar, usize)> = Vec::new();
    'outer: while p.degree().unwrap_or(0) > 0 {
        for c in candidates(&p, &f64_roots(&p)) {
            if p.eval(&c).is_zero() {
                let lin = UniPoly::new(vec![-c.clone(), ExactScalar::one()]);
                loop {
                    let (q, r) = p.div_rem(&lin);
                    if !r.is_zero() {
                        break;
                    }
                    p = q;
                    match found.iter_mut().find(|(x, _)| x == &c) {
                        Some(e) => e.1 += 1,
                        None => found.push((c.clone(), 1)),
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    found.sort_by(|a, b| a.0.cmp_value(&b.0));
    (found, p)
}

/// A real root is certified when the polynomial changes sign across `[x−tol, x+tol]`.
fn certify(p: &UniPoly, re: f64, im: f64, tol: f64) -> bool {
    if im.abs() > tol {
        return false;
    }
    let ev = |x: f64| p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64());
    ev(re - tol).signum() != ev(re + tol).signum()
}

/// Eigenvalues of every diagonal block, exact where they are small-denominator
/// rationals, otherwise floating point with sign-change certification at `10⁻⁹`.
pub fn block_spectra(op: &OperatorMatrix) -> Vec<BlockSpectrum> {
    op.blocks()
        .into_iter()
        .map(|(valuation, r)| {
            let chi = op.block(&r).charpoly();
            let (exact, rest) = exact_roots(chi);
            let numeric = f64_roots(&rest).into_iter().map(|(re, im)| (re, im, certify(&rest, re, im, 1e-9))).collect();
            BlockSpectrum { valuation, size: r.len(), exact, numeric }
        })
        .collect()
}

/// `Some(m)` when `λ = −m(m+1)` for a non-negative integer `m`.
pub fn spherical_index(lambda: &ExactScalar) -> Option<u64> {
    let v = -lambda.to_i64()?;
    if v < 0 {
        return None;
    }
    let m = ((1.0 + 4.0 * v as f64).sqrt() - 1.0) / 2.0;
    let m = m.round() as i64;
    (m * (m + 1) == v).then_some(m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly;
    use crate::catalog::{model, ModelId};
    use crate::modelcheck::{closure_solve, drift_closure};

    #[test]
    fn disk_drift_has_low_degree() {
        let m = model(ModelId::family(1, 1));
        let g = closure_solve(&m.system).expressed.unwrap();
        let b = measure_drift(&m, &g, &[ExactScalar::from_frac(3, 2)]).unwrap();
        assert_eq!(b, vec![poly("-6 th1"), poly("-6 th2")]);
        let zero = measure_drift(&m, &g, &[ExactScalar::zero()]).unwrap();
        assert_eq!(zero, divergence(&g, &["th1", "th2"]));
    }

    #[test]
    fn cyclic_sphere_alpha_is_minus_half() {
        for n in 1..=4 {
            let m = model(ModelId::family(1, n));
            let g = closure_solve(&m.system).expressed.unwrap();
            let drift = drift_closure(&m.system).unwrap();
            assert_eq!(drift[1], poly(&format!("-{} th2", n * (n + 1))));
            let a = sphere_alpha(&m, &g, &drift).unwrap();
            assert_eq!(a, vec![ExactScalar::from_frac(-1, 2)]);
            assert_eq!(measure_drift(&m, &g, &a).unwrap(), drift);
        }
    }

    #[test]
    fn constants_only() {
        let m = model(ModelId::family(1, 2));
        let g = closure_solve(&m.system).expressed.unwrap();
        let drift = drift_closure(&m.system).unwrap();
        let op = assemble_operator(&m.system, &g, &drift, 0).unwrap();
        assert_eq!(op.matrix, ScalarMatrix::zeros(1, 1));
    }

    #[test]
    fn spherical_spectrum() {
        let m = model(ModelId::family(1, 3));
        let g = closure_solve(&m.system).expressed.unwrap();
        let drift = drift_closure(&m.system).unwrap();
        let op = assemble_operator(&m.system, &g, &drift, 6).unwrap();
        assert!(op.is_block_triangular());
        for b in block_spectra(&op) {
            assert!(b.all_exact());
            assert!(b.exact.iter().all(|(l, _)| spherical_index(l).is_some()), "{:?}", b.exact);
        }
    }

    #[test]
    fn circle_warm_up() {
        // X = Re (x+iy)^n on the circle: Γ(X,X) = n²(1−X²), L(X) = −n²X.
        let n = 3u32;
        let x = crate::catalog::re_im_power("x", "y", n).0;
        let s = InvariantSystem::custom(
            "circle",
            2,
            vec![("X_3".into(), "th1", x, n)],
            crate::groups::GroupLabel::Cyclic(n),
            None,
        );
        let g = closure_solve(&s).expressed.unwrap();
        assert_eq!(g.get(0, 0), &poly("9 - 9 th1^2"));
        let drift = drift_closure(&s).unwrap();
        assert_eq!(drift, vec![poly("-9 th1")]);
        let op = assemble_operator(&s, &g, &drift, 3 * n).unwrap();
        let diag: Vec<i64> = (0..4).map(|k| op.matrix.get(k, k).to_i64().unwrap()).collect();
        assert_eq!(diag, vec![0, -9, -36, -81]);
    }

    #[test]
    fn spherical_index_values() {
        assert_eq!(spherical_index(&ExactScalar::from_int(-12)), Some(3));
        assert_eq!(spherical_index(&ExactScalar::zero()), Some(0));
        assert_eq!(spherical_index(&ExactScalar::from_int(-5)), None);
    }
}
