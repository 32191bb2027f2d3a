//! Copula families, lower tail dependence functions and the orders built
//! on them.
//!
//! The crate is organised bottom-up:
//!
//! * [`copula`] holds the evaluatable [`Copula`] object, its axiomatic
//!   audits and the structural combinators (gluing, survival).
//! * [`families`] builds concrete copulas: Archimedean generators,
//!   Marshall-Olkin, (lower) extreme-value, diagonal constructions,
//!   Gaussian and hierarchical nesting.
//! * [`taildep`] estimates and represents tail dependence functions.
//! * [`orders`] decides the tail dependence order, the local lower orthant
//!   order and their relatives on finite grids.
//!
//! Grid work runs on rayon when the `parallel` feature is enabled (the
//! default) and [`GridConfig::parallel`] is set; results are identical
//! either way.

// `!(x > 0.0)` is used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod copula;
pub mod descriptor;
mod error;
pub mod families;
pub mod fixtures;
mod grid;
pub mod output;
mod par;
pub mod quadrature;
pub mod orders;
pub mod repro;
pub mod taildep;
pub mod verify;

pub use copula::{
    glue, h_volume, survival, validate_copula, CheckOutcome, Copula, CopulaFn, Hyperbox, Point,
    ValidityReport,
};
pub use descriptor::{CopulaDescriptor, DiagonalDescriptor, GeneratorDescriptor, TdfDescriptor};
pub use error::{Error, Result};
pub use families::{
    archimedean, bertino, clayton_generator, ev_copula, fredricks_nelsen, gaussian,
    generalized_inverse, gumbel_generator, hierarchical, independence_generator, joe_generator,
    lower_ev_copula, marshall_olkin, nonstrict_linear_generator, semilinear, validate_diagonal,
    validate_semilinear_diagonal, DiagonalSection, Generator, HierarchicalDescriptor,
};
pub use grid::GridConfig;
pub use orders::{
    archimedean_order_equivalence, check_cone_order, check_diagonal_order, check_loc, check_too,
    check_tdo, default_directions, find_cone_epsilon, find_loc_epsilon, ratio_monotonicity_check,
    subadditivity_check, ConeSpec, DirectionalVerdict, EquivalenceReport, OrderStatus,
    OrderVerdict, Witness,
};
pub use taildep::{
    archimedean_tdf, estimate_tdf, lift, regular_variation_index, simplex_restriction,
    spearman_tdf_limit, tail_expansion_residual, tdc, tdc_from_simplex, validate_tdf,
    IndexEstimate, LimitSchedule, Provenance, SimplexTdf, TailDepFunction, TdfEstimate,
};
