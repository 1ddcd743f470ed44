use super::NumericsError;
use crate::algebra::ScalarMatrix;
use nalgebra::{Complex, DMatrix};
use serde::Serialize;

/// An eigenvalue with the residual `min‖Mv − λv‖` over unit `v`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

/// Eigenvalues of an exact matrix, each certified by the smallest singular
/// value of `M − λI` being at most `tol·‖M‖`.
pub fn numeric_eigenvalues(m: &ScalarMatrix, tol: f64) -> Result<Vec<Eigenvalue>, NumericsError> {
    let n = m.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    let rows = m.to_f64();
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let norm = a.norm().max(f64::MIN_POSITIVE);
    let bound = tol * norm;
    let ac = a.map(|x| Complex::new(x, 0.0));
    let mut out: Vec<Eigenvalue> = a
        .complex_eigenvalues()
        .iter()
        .map(|z| {
            let shifted = &ac - DMatrix::from_diagonal_element(n, n, *z);
            let residual = shifted.singular_values().min();
            Eigenvalue { re: z.re, im: z.im, residual }
        })
        .collect();
    if let Some(bad) = out.iter().find(|e| !e.residual.is_finite() || e.residual > bound) {
        return Err(NumericsError::ConvergenceFailure { residual: bad.residual, bound });
    }
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{model, ModelId};
    use crate::modelcheck::{assemble_operator, drift_closure};

    #[test]
    fn trivial_matrices() {
        let z = numeric_eigenvalues(&ScalarMatrix::zeros(3, 3), 1e-12).unwrap();
        assert!(z.iter().all(|e| e.re == 0.0 && e.im == 0.0));
        let d = numeric_eigenvalues(&ScalarMatrix::from_int_rows(&[&[-2, 0], &[0, -6]]), 1e-12).unwrap();
        assert_eq!(d.iter().map(|e| e.re).collect::<Vec<_>>(), vec![-6.0, -2.0]);
    }

    #[test]
    fn spherical_operator_of_cyclic_3() {
        let m = model(ModelId::family(1, 3));
        let drift = drift_closure(&m.system).unwrap();
        let op = assemble_operator(&m.system, &m.cometric, &drift, 6).unwrap();
        for e in numeric_eigenvalues(&op.matrix, 1e-9).unwrap() {
            let k = (0..=6).map(|k| (k * (k + 1)) as f64).find(|v| (e.re + v).abs() < 1e-8);
            assert!(k.is_some() && e.im.abs() < 1e-8, "{e:?}");
        }
    }
}
