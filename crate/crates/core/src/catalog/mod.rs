//! Model catalog: invariant systems, declared co-metrics, boundary data,
//! syzygies, covers and cross-identifications.

mod covers;
mod invariants;
mod models;
mod systems;

pub use covers::{
    boz_identifications, cover_map, listed_covers, octahedral_quartic_coefficients, BozIdentification,
    ChangeOfVariables, CoverMap,
};
pub use invariants::{build_invariant, cornulier_invariant, i10, i15, i6, o3, o4, o6, re_im_power, x_n, y_n};
pub use models::{all_models, model, BoundaryFactor, Declared, Determinant, PolynomialModel, Status, SummaryRow};
pub use systems::{cornulier_system, invariant_system, Invariant, InvariantSystem, ModelId};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown invariant {0:?}")]
    UnknownInvariant(String),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("model {0} needs the parameter n")]
    MissingParameter(String),
    #[error("no cover from {0} to {1}")]
    UnknownCover(String, String),
}
