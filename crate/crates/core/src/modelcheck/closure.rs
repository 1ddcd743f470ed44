//! Recovering the co-metric and drift of an invariant system in its own coordinates.

use super::fit::{weighted_monomials, Fit, Fitter};
use super::ModelCheckError;
use crate::algebra::{ExactScalar, MultiPoly, PolyMatrix};
use crate::catalog::InvariantSystem;

/// Co-metric entries in invariant coordinates, or a certificate of failure.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// Upper-triangular entries `(i, j, G^{ij})`, present when every pair closed.
    pub expressed: Option<PolyMatrix>,
    /// First failing pair (row-major) and its sphere-reduced remainder.
    pub residual: Option<((usize, usize), MultiPoly)>,
    /// Every failing pair, row-major.
    pub failures: Vec<((usize, usize), MultiPoly)>,
    /// Largest null-space dimension met while fitting.
    pub null_dim: usize,
}

impl ClosureResult {
    pub fn is_closed(&self) -> bool {
        self.expressed.is_some()
    }

    pub fn matrix(&self) -> Result<&PolyMatrix, ModelCheckError> {
        match (&self.expressed, &self.residual) {
            (Some(m), _) => Ok(m),
            (None, Some((pair, r))) => {
                Err(ModelCheckError::Inconsistent { what: format!("Γ{pair:?}"), residual: r.to_text() })
            }
            _ => unreachable!("closure result without matrix or residual"),
        }
    }
}

fn ansatz(system: &InvariantSystem, cap: u32) -> Vec<Vec<u32>> {
    let last = system.syzygy.as_ref().map(|_| 1);
    weighted_monomials(&system.valuations(), cap, last)
}

/// Split `target` into a part to fit and an exact Euler correction.
///
/// For homogeneous `ζᵢ, ζⱼ` of degrees `kᵢ, kⱼ` the correction is
/// `−kᵢkⱼ ζᵢζⱼ` and only `∇ζᵢ·∇ζⱼ` is fitted, which keeps the explicit
/// quadratic terms in the secondary coordinate.
fn gamma_pieces(system: &InvariantSystem, i: usize, j: usize) -> (MultiPoly, MultiPoly) {
    let s = system.sphere();
    let (zi, zj) = (&system.invariants[i], &system.invariants[j]);
    match (zi.ambient.homogeneous_degree(), zj.ambient.homogeneous_degree()) {
        (Some(ki), Some(kj)) => {
            let grad = s.reduce(&s.grad_dot(&zi.ambient, &zj.ambient));
            let euler = (&MultiPoly::var(&zi.var) * &MultiPoly::var(&zj.var))
                .scale(&ExactScalar::from_int(-((ki * kj) as i64)));
            (grad, euler)
        }
        _ => (s.gamma(&zi.ambient, &zj.ambient), MultiPoly::zero()),
    }
}

fn laplacian_pieces(system: &InvariantSystem, i: usize) -> (MultiPoly, MultiPoly) {
    let s = system.sphere();
    let zi = &system.invariants[i];
    let d = system.ambient_dim as i64;
    match zi.ambient.homogeneous_degree() {
        Some(k) => {
            let k = k as i64;
            let lap = s.reduce(&s.ambient_laplacian(&zi.ambient));
            (lap, MultiPoly::var(&zi.var).scale(&ExactScalar::from_int(-k * (k + d - 2))))
        }
        None => (s.laplacian(&zi.ambient), MultiPoly::zero()),
    }
}

/// Express every `Γ(ζᵢ, ζⱼ)` as a polynomial of valuation at most `aᵢ + aⱼ`
/// in the invariant coordinates (η-degree at most one when a syzygy is present).
pub fn closure_solve(system: &InvariantSystem) -> ClosureResult {
    let vals = system.valuations();
    let n = system.dim();
    let mut fitter = Fitter::new(system);
    let mut m = PolyMatrix::zeros(n);
    let mut null_dim = 0;
    let mut failures = Vec::new();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| vals[i] + vals[j]);
    for (i, j) in pairs {
        fitter.extend(&ansatz(system, vals[i] + vals[j]));
        let (target, euler) = gamma_pieces(system, i, j);
        let Fit { expression, residual, null_dim: nd } = fitter.fit(&target);
        null_dim = null_dim.max(nd);
        if !residual.is_zero() {
            failures.push(((i, j), residual));
            continue;
        }
        let g = &expression + &euler;
        m.set(i, j, g.clone());
        m.set(j, i, g);
    }
    if !failures.is_empty() {
        failures.sort_by_key(|f| f.0);
        return ClosureResult { expressed: None, residual: Some(failures[0].clone()), failures, null_dim };
    }
    ClosureResult { expressed: Some(m), residual: None, failures, null_dim }
}

/// Express `L(ζᵢ)` in invariant coordinates with valuation at most `aᵢ`.
pub fn drift_closure(system: &InvariantSystem) -> Result<Vec<MultiPoly>, ModelCheckError> {
    let vals = system.valuations();
    let mut fitter = Fitter::new(system);
    let mut out = vec![MultiPoly::zero(); system.dim()];
    let mut order: Vec<usize> = (0..system.dim()).collect();
    order.sort_by_key(|&i| vals[i]);
    for i in order {
        fitter.extend(&ansatz(system, vals[i]));
        let (target, euler) = laplacian_pieces(system, i);
        let fit = fitter.fit(&target);
        if !fit.residual.is_zero() {
            return Err(ModelCheckError::Inconsistent {
                what: format!("L({})", system.invariants[i].var),
                residual: fit.residual.to_text(),
            });
        }
        out[i] = &fit.expression + &euler;
    }
    Ok(out)
}
