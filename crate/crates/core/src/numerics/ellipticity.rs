use super::{effective_cometric, NumPoly, SampleCloud};
use crate::algebra::PolyMatrix;
use crate::catalog::PolynomialModel;
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

/// The co-metric counts as positive definite above this eigenvalue.
pub const ELLIPTICITY_FLOOR: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct EllipticityStats {
    pub points: usize,
    pub min: f64,
    pub mean: f64,
    pub passed: bool,
}

fn compile(g: &PolyMatrix, vars: &[&str]) -> Vec<Vec<NumPoly>> {
    (0..g.size()).map(|i| (0..g.size()).map(|j| NumPoly::compile(g.get(i, j), vars)).collect()).collect()
}

fn min_eig(g: &[Vec<NumPoly>], x: &[f64]) -> f64 {
    let n = g.len();
    if n == 0 {
        return f64::NAN;
    }
    let m = DMatrix::from_fn(n, n, |i, j| g[i][j].eval(x));
    m.symmetric_eigenvalues().min()
}

/// Smallest eigenvalue of the co-metric at one point.
pub fn min_eigenvalue_at(model: &PolynomialModel, x: &[f64]) -> f64 {
    min_eig(&compile(&effective_cometric(model), &model.system.vars()), x)
}

/// Minimum and mean of the smallest co-metric eigenvalue over the cloud.
pub fn ellipticity_check(model: &PolynomialModel, cloud: &SampleCloud) -> EllipticityStats {
    let g = compile(&effective_cometric(model), &model.system.vars());
    let mins: Vec<f64> = cloud.points.par_iter().map(|x| min_eig(&g, x)).collect();
    let min = mins.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = mins.iter().sum::<f64>() / mins.len().max(1) as f64;
    EllipticityStats { points: mins.len(), min, mean, passed: !mins.is_empty() && min > ELLIPTICITY_FLOOR }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_models, model, ModelId};
    use crate::numerics::sample_interior;

    #[test]
    fn disk_at_origin() {
        let m = model(ModelId::family(1, 1));
        assert!((min_eigenvalue_at(&m, &[0.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!(min_eigenvalue_at(&m, &[0.6, 0.8]).abs() < 1e-12);
    }

    #[test]
    fn all_models_elliptic() {
        for m in all_models(&[1, 2, 3, 4, 5]) {
            let cloud = sample_interior(&m, 20_000, 11).unwrap();
            let s = ellipticity_check(&m, &cloud);
            assert!(s.passed, "{}: min {}", m.id, s.min);
        }
    }
}
