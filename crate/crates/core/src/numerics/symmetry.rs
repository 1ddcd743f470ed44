use super::{effective_cometric, NumPoly, NumericsError, SampleCloud};
use crate::algebra::{ExactScalar, MultiPoly, PolyMatrix};
use crate::catalog::PolynomialModel;
use crate::modelcheck::{measure_drift, measure_factors};
use rayon::prelude::*;
use serde::Serialize;

/// Pass threshold for the relative residual, calibrated at `10⁵` samples.
pub const SYMMETRY_TOLERANCE: f64 = 5e-2;

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryResult {
    pub samples: usize,
    /// Monte Carlo means of `f L̂g w` and `g L̂f w`.
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub passed: bool,
}

fn apply(g: &PolyMatrix, drift: &[MultiPoly], vars: &[&str], h: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for i in 0..vars.len() {
        let di = h.derivative(vars[i]);
        out = &out + &(&drift[i] * &di);
        for (j, vj) in vars.iter().enumerate() {
            out = &out + &(g.get(i, j) * &di.derivative(vj));
        }
    }
    out
}

/// `|Σ (f L̂g − g L̂f) w| / (Σ |f L̂g w| + Σ |g L̂f w| + ε)` over the cloud, with
/// `w = Π |P_q|^{α_q}` and `L̂` built from the given drift.
pub fn symmetry_residual(
    model: &PolynomialModel,
    drift: &[MultiPoly],
    alpha: &[f64],
    f: &MultiPoly,
    g: &MultiPoly,
    cloud: &SampleCloud,
) -> Result<SymmetryResult, NumericsError> {
    if let Some(a) = alpha.iter().find(|a| **a <= -1.0) {
        return Err(NumericsError::NonIntegrableWeight(*a));
    }
    let vars = model.system.vars();
    let factors: Vec<NumPoly> = measure_factors(model).iter().map(|(_, p)| NumPoly::compile(p, &vars)).collect();
    assert_eq!(factors.len(), alpha.len(), "one exponent per measure factor");
    let c = |p: &MultiPoly| NumPoly::compile(p, &vars);
    let (fc, gc) = (c(f), c(g));
    let gm = effective_cometric(model);
    let lf = c(&apply(&gm, drift, &vars, f));
    let lg = c(&apply(&gm, drift, &vars, g));
    let (a, b, abs) = cloud
        .points
        .par_iter()
        .map(|x| {
            let w: f64 = factors.iter().zip(alpha).map(|(p, a)| p.eval(x).abs().powf(*a)).product();
            let (u, v) = (fc.eval(x) * lg.eval(x) * w, gc.eval(x) * lf.eval(x) * w);
            (u, v, u.abs() + v.abs())
        })
        .reduce(|| (0.0, 0.0, 0.0), |p, q| (p.0 + q.0, p.1 + q.1, p.2 + q.2));
    let m = cloud.points.len().max(1) as f64;
    let residual = if a == b { 0.0 } else { (a - b).abs() / (abs + f64::MIN_POSITIVE) };
    Ok(SymmetryResult {
        samples: cloud.points.len(),
        lhs: a / m,
        rhs: b / m,
        residual,
        passed: residual < SYMMETRY_TOLERANCE,
    })
}

/// Monte Carlo check of `∫ f L̂g dμ = ∫ g L̂f dμ` for the measure `Π |P_q|^{α_q}`.
pub fn symmetry_check(
    model: &PolynomialModel,
    alpha: &[ExactScalar],
    f: &MultiPoly,
    g: &MultiPoly,
    cloud: &SampleCloud,
) -> Result<SymmetryResult, NumericsError> {
    let drift = measure_drift(model, &effective_cometric(model), alpha)?;
    let a: Vec<f64> = alpha.iter().map(ExactScalar::to_f64).collect();
    symmetry_residual(model, &drift, &a, f, g, cloud)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly;
    use crate::catalog::{model, ModelId};
    use crate::numerics::sample_interior;

    fn half(k: usize) -> Vec<ExactScalar> {
        vec![ExactScalar::from_frac(1, 2); k]
    }

    #[test]
    fn identical_functions_give_zero() {
        let m = model(ModelId::family(1, 2));
        let cloud = sample_interior(&m, 2000, 5).unwrap();
        let k = measure_factors(&m).len();
        let r = symmetry_check(&m, &half(k), &poly("th1"), &poly("th1"), &cloud).unwrap();
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn symmetric_and_perturbed_drift() {
        let m = model(ModelId::family(1, 2));
        let cloud = sample_interior(&m, 100_000, 17).unwrap();
        let k = measure_factors(&m).len();
        let (f, g) = (poly("1 + th1^2"), poly("th1 + th2 + th1 th2"));
        assert!(symmetry_check(&m, &half(k), &poly("th1"), &poly("th2"), &cloud).unwrap().passed);
        assert!(symmetry_check(&m, &half(k), &f, &g, &cloud).unwrap().passed);
        let mut drift = measure_drift(&m, &m.cometric, &half(k)).unwrap();
        for b in drift.iter_mut() {
            *b = &*b + &MultiPoly::one();
        }
        let bad = symmetry_residual(&m, &drift, &vec![0.5; k], &f, &g, &cloud).unwrap();
        assert!(bad.residual > 0.1, "{}", bad.residual);
    }

    #[test]
    fn residual_shrinks_like_inverse_root() {
        let m = model(ModelId::family(1, 2));
        let k = measure_factors(&m).len();
        let (f, g) = (poly("1 + th1^2"), poly("th1 + th2 + th1 th2"));
        let mean = |count: usize| {
            (0..8u64)
                .map(|seed| {
                    let cloud = sample_interior(&m, count, 100 + seed).unwrap();
                    symmetry_check(&m, &half(k), &f, &g, &cloud).unwrap().residual
                })
                .sum::<f64>()
                / 8.0
        };
        // sixteen times the samples should cut the error by about four
        let ratio = mean(2_000) / mean(32_000);
        assert!((2.0..8.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn rejects_non_integrable_exponent() {
        let m = model(ModelId::family(1, 1));
        let cloud = sample_interior(&m, 10, 0).unwrap();
        let drift = vec![MultiPoly::zero(); 2];
        let r = symmetry_residual(&m, &drift, &[-1.0], &poly("th1"), &poly("th2"), &cloud);
        assert!(matches!(r, Err(NumericsError::NonIntegrableWeight(_))));
    }
}
