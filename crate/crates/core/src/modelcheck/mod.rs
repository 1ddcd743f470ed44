//! Verification engine for polynomial models.

mod boundary;
mod closure;
mod covers;
mod fit;
mod operator;
mod report;

pub use boundary::{
    boundary_images, boundary_multipliers, check_factor, verify_boundary, verify_determinant, verify_syzygy,
    Comparison, DeterminantVerdict, FactorVerdict, SyzygyRing, SyzygyVerdict,
};
pub use closure::{closure_solve, drift_closure, ClosureResult};
pub use covers::{
    constant_ratio, quartic_identity_residual, verify_boz, verify_cover, verify_summary_row, BozVerdict, CoverVerdict,
    SummaryVerdict,
};
pub use fit::{weighted_monomials, Fit, Fitter};
pub use operator::{
    assemble_operator, block_spectra, divergence, measure_drift, measure_factors, sphere_alpha, spherical_index,
    BlockSpectrum, OperatorMatrix,
};
pub use report::{
    cornulier_check, verify_model, CheckRecord, CornulierReport, Mismatch, ModelReport, CHECK_NAMES, DEFAULT_CAP,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelCheckError {
    #[error("{what} is not expressible in the invariant coordinates; residual {residual}")]
    Inconsistent { what: String, residual: String },
    #[error("ansatz underdetermined: null space of dimension {0}")]
    AnsatzUnderdetermined(usize),
    #[error("degree bound violated for coordinate {index}: valuation {found} > {bound}")]
    DegreeViolation { index: usize, found: u32, bound: u32 },
    #[error("operator does not preserve the valuation filtration at basis element {0}")]
    FiltrationViolation(String),
}
