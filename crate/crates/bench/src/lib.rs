//! Shared fixtures for the benchmarks.

use polymodels::catalog::{model, ModelId, PolynomialModel};

/// A small, a mid-sized and an icosahedral model.
pub fn representative_models() -> Vec<(&'static str, PolynomialModel)> {
    let id = |k, n| ModelId::new(k, n).expect("cataloged model");
    vec![("omega1_n3", model(id(1, Some(3)))), ("omega11", model(id(11, None))), ("omega21", model(id(21, None)))]
}
