//! Lower tail dependence functions: closed forms, limit estimation, the
//! simplex reduction, audits, index estimation and the Spearman limit.

mod estimate;
mod regvar;
mod simplex;
mod spearman;
mod tdf;
mod validity;

pub use estimate::{
    estimate_tdf, tail_expansion_residual, tdc, LimitSchedule, TdfEstimate, SCHEDULE_FLOOR,
};
pub use regvar::{regular_variation_index, IndexEstimate};
pub use simplex::{lift, simplex_restriction, tdc_from_simplex, SimplexTdf};
pub use spearman::spearman_tdf_limit;
pub use tdf::{archimedean_tdf, Provenance, TailDepFunction};
pub(crate) use tdf::TdfKind;
pub use validity::{validate_tdf, BOUNDS, CONCAVITY, HOMOGENEITY, LIPSCHITZ};
