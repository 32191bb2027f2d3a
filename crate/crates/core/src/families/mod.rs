//! Concrete copula families and the objects that generate them.

mod diagonal;
mod gaussian;
mod generator;
mod hierarchical;

use log::warn;

pub use diagonal::{
    validate_diagonal, validate_semilinear_diagonal, DiagonalSection, BELOW_IDENTITY, ENDPOINTS,
    INCREASING, LIPSCHITZ, RATIO_INCREASING, RATIO_SQ_DECREASING,
};
pub(crate) use diagonal::{bertino_value, DiagonalKind};
pub use gaussian::{
    bivariate_normal_cdf, bivariate_normal_cdf_with, normal_cdf, normal_quantile, RHO_CUTOFF,
};
pub(crate) use gaussian::gaussian_value;
pub use generator::{
    clayton_generator, generalized_inverse, gumbel_generator, independence_generator,
    joe_generator, nonstrict_linear_generator, Generator, GeneratorKind, InverseMethod,
};
pub use hierarchical::{hierarchical, hierarchical_with, HierarchicalDescriptor};

use crate::copula::{Copula, Node};
use crate::error::{Error, Result};
use crate::grid::GridConfig;
use crate::taildep::{validate_tdf, Provenance, TailDepFunction};

/// C(u) = φ^[−1](Σ φ(u_k)).
pub fn archimedean(g: Generator, d: usize) -> Result<Copula> {
    if d < 2 {
        return Err(Error::param(format!("copula dimension must be at least 2, got {d}")));
    }
    if !g.is_strict() && d > 2 {
        return Err(Error::param(format!(
            "the nonstrict linear generator yields a copula only for d = 2, got d = {d}"
        )));
    }
    // probe the inverse once so a broken generator fails at construction
    g.bisect_inverse(g.phi(0.5))?;
    Ok(Copula::from_node(d, Node::Archimedean(g)))
}

/// M_α(u₁, u₂) = min(u₁^{1−α} u₂, u₁), α ∈ (0, 1).
pub fn marshall_olkin(alpha: f64) -> Result<Copula> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param(format!("Marshall-Olkin α must lie in (0, 1), got {alpha}")));
    }
    Ok(Copula::from_node(2, Node::MarshallOlkin { alpha }))
}

fn check_bivariate_tdf(tdf: &TailDepFunction) -> Result<()> {
    if tdf.dim() != 2 {
        return Err(Error::InvalidTdf(format!(
            "extreme value constructions need a bivariate Λ, got d = {}",
            tdf.dim()
        )));
    }
    // estimated Λ are only homogeneous up to estimator error
    let g = GridConfig {
        resolution: 17,
        audit_tolerance: match tdf.provenance() {
            Provenance::Analytic => 1e-9,
            Provenance::Estimated => 5e-3,
        },
        ..GridConfig::default()
    };
    let report = validate_tdf(tdf, &g);
    let failure = report.failures().next().map(|f| format!("{} check failed: {}", f.name, f.detail));
    failure.map_or(Ok(()), |msg| Err(Error::InvalidTdf(msg)))
}

/// C^EV(u₁, u₂) = exp(log u₁ + log u₂ + Λ(−log u₁, −log u₂)).
pub fn ev_copula(tdf: TailDepFunction) -> Result<Copula> {
    check_bivariate_tdf(&tdf)?;
    Ok(Copula::from_node(2, Node::ExtremeValue(tdf)))
}

/// The survival copula of `ev_copula(Λ)`; its lower tail dependence
/// function is Λ.
pub fn lower_ev_copula(tdf: TailDepFunction) -> Result<Copula> {
    check_bivariate_tdf(&tdf)?;
    Ok(Copula::from_node(2, Node::LowerExtremeValue(tdf)))
}

fn check_bivariate_diagonal(delta: &DiagonalSection) -> Result<()> {
    if delta.dim() != 2 {
        return Err(Error::InvalidDiagonal(format!(
            "diagonal constructions are bivariate, got d = {}",
            delta.dim()
        )));
    }
    diagonal::require_valid(&validate_diagonal(delta))
}

/// C_FN(u, v) = min(u, v, (δ(u) + δ(v))/2).
pub fn fredricks_nelsen(delta: DiagonalSection) -> Result<Copula> {
    check_bivariate_diagonal(&delta)?;
    Ok(Copula::from_node(2, Node::FredricksNelsen(delta)))
}

/// C_B(u, v) = min(u, v) − min_{t ∈ [min(u,v), max(u,v)]} (t − δ(t)).
pub fn bertino(delta: DiagonalSection) -> Result<Copula> {
    check_bivariate_diagonal(&delta)?;
    Ok(Copula::from_node(2, Node::Bertino(delta)))
}

/// C_SL(u, v) = min(u, v) δ(max(u, v)) / max(u, v).
pub fn semilinear(delta: DiagonalSection) -> Result<Copula> {
    if delta.dim() != 2 {
        return Err(Error::InvalidDiagonal(format!(
            "diagonal constructions are bivariate, got d = {}",
            delta.dim()
        )));
    }
    diagonal::require_valid(&validate_semilinear_diagonal(&delta))?;
    Ok(Copula::from_node(2, Node::Semilinear(delta)))
}

/// Bivariate Gaussian copula. For |ρ| > 0.999 the Fréchet bound is used.
pub fn gaussian(rho: f64) -> Result<Copula> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(Error::param(format!("Gaussian ρ must lie in [−1, 1], got {rho}")));
    }
    if rho.abs() > RHO_CUTOFF && rho.abs() < 1.0 {
        warn!("Gaussian copula with |ρ| = {} > {RHO_CUTOFF} is evaluated as a Fréchet bound", rho.abs());
    }
    Ok(Copula::from_node(2, Node::Gaussian { rho }))
}
