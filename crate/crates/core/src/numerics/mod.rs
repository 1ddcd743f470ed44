//! Floating-point spot checks: interior sampling, ellipticity, Monte Carlo
//! symmetry, numeric spectra and boundary rendering.
//!
//! Exactness lives upstream; here `√5` is a double and every check is an open
//! condition or a statistical estimate.

mod eigen;
mod ellipticity;
mod render;
mod sample;
mod symmetry;

pub use eigen::{numeric_eigenvalues, Eigenvalue};
pub use ellipticity::{ellipticity_check, min_eigenvalue_at, EllipticityStats, ELLIPTICITY_FLOOR};
pub use render::{contour_factors, render_boundary, Rendering, Segment, DEFAULT_GRID};
pub use sample::{sample_interior, SampleCloud, MARGIN};
pub use symmetry::{symmetry_check, symmetry_residual, SymmetryResult, SYMMETRY_TOLERANCE};

use crate::algebra::{MultiPoly, PolyMatrix};
use crate::catalog::PolynomialModel;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("acceptance rate {rate:.2e} below 1e-4 after {attempts} draws")]
    LowAcceptance { rate: f64, attempts: u64 },
    #[error("eigenpair residual {residual:.3e} exceeds {bound:.3e}")]
    ConvergenceFailure { residual: f64, bound: f64 },
    #[error("measure exponent {0} not above -1")]
    NonIntegrableWeight(f64),
    #[error("{0}")]
    Model(#[from] crate::modelcheck::ModelCheckError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// A polynomial compiled against a fixed variable order for fast evaluation.
#[derive(Clone, Debug)]
pub struct NumPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl NumPoly {
    /// Variables of `p` absent from `vars` evaluate to zero.
    pub fn compile(p: &MultiPoly, vars: &[&str]) -> Self {
        let terms = p
            .terms()
            .filter_map(|(pw, c)| {
                let mut exps = Vec::new();
                for (v, e) in pw {
                    exps.push((vars.iter().position(|w| *w == v)?, e as i32));
                }
                Some((c.to_f64(), exps))
            })
            .collect();
        NumPoly { terms }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(c, m)| m.iter().fold(*c, |acc, &(i, e)| acc * x[i].powi(e))).sum()
    }
}

/// The declared co-metric, or the computed one when none is printed.
pub fn effective_cometric(model: &PolynomialModel) -> PolyMatrix {
    if model.cometric.size() > 0 {
        return model.cometric.clone();
    }
    crate::modelcheck::closure_solve(&model.system).expressed.unwrap_or_else(|| PolyMatrix::zeros(0))
}

/// Write through a sibling temporary file so readers never see a partial file.
pub fn write_atomic(path: &std::path::Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly;

    #[test]
    fn compiled_matches_direct() {
        let p = poly("3 th1^2 th2 - (1+r5) th2 + 1/2");
        let f = NumPoly::compile(&p, &["th1", "th2"]);
        let x = [0.3, -0.7];
        let direct = p.eval_f64(|v| if v == "th1" { x[0] } else { x[1] });
        assert!((f.eval(&x) - direct).abs() < 1e-14);
    }

    /// Independent floating-point oracle: `Γ(ζᵢ, ζⱼ)` is the pairing of the
    /// tangential gradients on the unit sphere.
    #[test]
    fn cometrics_match_sphere_gradients() {
        use crate::catalog::all_models;
        use rand::{Rng, SeedableRng};
        let amb = ["x", "y", "z"];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for m in all_models(&[1, 2, 3, 4, 5]) {
            let vars = m.system.vars();
            let g = effective_cometric(&m);
            let inv: Vec<NumPoly> = m.system.invariants.iter().map(|i| NumPoly::compile(&i.ambient, &amb)).collect();
            let grads: Vec<Vec<NumPoly>> = m
                .system
                .invariants
                .iter()
                .map(|i| amb.iter().map(|v| NumPoly::compile(&i.ambient.derivative(v), &amb)).collect())
                .collect();
            for _ in 0..20 {
                let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
                let r = v.iter().map(|a| a * a).sum::<f64>().sqrt();
                let u: Vec<f64> = v.iter().map(|a| a / r).collect();
                let theta: Vec<f64> = inv.iter().map(|p| p.eval(&u)).collect();
                let tang: Vec<Vec<f64>> = grads
                    .iter()
                    .map(|gr| {
                        let d: Vec<f64> = gr.iter().map(|p| p.eval(&u)).collect();
                        let radial: f64 = d.iter().zip(&u).map(|(a, b)| a * b).sum();
                        d.iter().zip(&u).map(|(a, b)| a - radial * b).collect()
                    })
                    .collect();
                for i in 0..vars.len() {
                    for j in 0..vars.len() {
                        let want: f64 = tang[i].iter().zip(&tang[j]).map(|(a, b)| a * b).sum();
                        let got = NumPoly::compile(g.get(i, j), &vars).eval(&theta);
                        assert!(
                            (want - got).abs() < 1e-9 * (1.0 + want.abs()),
                            "{} G[{i}][{j}]: {got} vs {want}",
                            m.id
                        );
                    }
                }
            }
        }
    }
}
