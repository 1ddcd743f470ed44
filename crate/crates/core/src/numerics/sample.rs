use super::{NumPoly, NumericsError};
use crate::catalog::PolynomialModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Strict-interior margin on every domain inequality.
pub const MARGIN: f64 = 1e-9;

const CHUNK: usize = 1024;
const MIN_RATE: f64 = 1e-4;
const PATIENCE: u64 = 200_000;

/// Uniform points of the open domain, reproducible from the seed.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleCloud {
    pub model: String,
    pub seed: u64,
    pub vars: Vec<String>,
    pub points: Vec<Vec<f64>>,
}

pub(crate) fn inside(domain: &[NumPoly], x: &[f64]) -> bool {
    domain.iter().all(|p| p.eval(x) > MARGIN)
}

/// Rejection sampling in the bounding box. Chunk `k` draws from ChaCha stream
/// `k` of the seed, so the cloud does not depend on scheduling.
pub fn sample_interior(model: &PolynomialModel, count: usize, seed: u64) -> Result<SampleCloud, NumericsError> {
    let vars = model.system.vars();
    let domain: Vec<NumPoly> = model.domain.iter().map(|p| NumPoly::compile(p, &vars)).collect();
    let bounds = model.domain_box.clone();
    let chunks: Vec<usize> = (0..count.div_ceil(CHUNK)).map(|k| CHUNK.min(count - k * CHUNK)).collect();
    let parts: Vec<Vec<Vec<f64>>> = chunks
        .par_iter()
        .enumerate()
        .map(|(k, &quota)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut out = Vec::with_capacity(quota);
            let mut attempts = 0u64;
            while out.len() < quota {
                attempts += 1;
                let x: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
                if inside(&domain, &x) {
                    out.push(x);
                }
                if attempts >= PATIENCE && (out.len() as f64) < MIN_RATE * attempts as f64 {
                    return Err(NumericsError::LowAcceptance { rate: out.len() as f64 / attempts as f64, attempts });
                }
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    Ok(SampleCloud {
        model: model.id.to_string(),
        seed,
        vars: vars.iter().map(|s| s.to_string()).collect(),
        points: parts.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_models, model, ModelId};

    #[test]
    fn disk_points_inside() {
        let c = sample_interior(&model(ModelId::family(1, 1)), 1000, 7).unwrap();
        assert_eq!(c.points.len(), 1000);
        assert!(c.points.iter().all(|p| 1.0 - p[0] * p[0] - p[1] * p[1] > 0.0));
    }

    #[test]
    fn reproducible() {
        let m = model(ModelId::fixed(11));
        assert_eq!(sample_interior(&m, 3000, 42).unwrap(), sample_interior(&m, 3000, 42).unwrap());
        assert_ne!(sample_interior(&m, 50, 1).unwrap().points, sample_interior(&m, 50, 2).unwrap().points);
    }

    #[test]
    fn every_model_samples() {
        for m in all_models(&[1, 2, 3, 4, 5]) {
            let c = sample_interior(&m, 200, 3);
            assert!(c.is_ok(), "{}: {:?}", m.id, c.err());
        }
    }

    #[test]
    fn tiny_domain_is_rejected() {
        let mut m = model(ModelId::family(1, 1));
        m.domain.push(crate::algebra::poly("1/1000000000000 - th1^2 - th2^2"));
        assert!(matches!(sample_interior(&m, 10, 0), Err(NumericsError::LowAcceptance { .. })));
    }
}
