use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::estimate::{estimate_tdf, LimitSchedule};
use super::simplex::SimplexTdf;
use crate::copula::{Copula, PointFn, UserFn};
use crate::error::{Error, Result};

/// Whether a tail dependence function is known in closed form or obtained
/// by numerically taking the limit C(sw)/s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Analytic,
    Estimated,
}

#[derive(Debug, Clone)]
pub(crate) enum TdfKind {
    Zero,
    Min,
    /// (Σ w_k^−α)^−1/α
    Clayton { alpha: f64 },
    /// w₁w₂/(w₁+w₂), the lift of t(1−t)
    Fig1Parabola,
    /// min(w₁/2, w₂), the lift of min(t/2, 1−t)
    Fig1Piecewise,
    Lifted(SimplexTdf),
    Estimated { copula: Arc<Copula>, schedule: LimitSchedule },
    Custom(UserFn<PointFn>),
}

/// A lower tail dependence function Λ: [0,∞)^d → [0,∞).
#[derive(Debug, Clone)]
pub struct TailDepFunction {
    dim: usize,
    pub(crate) kind: TdfKind,
}

impl TailDepFunction {
    pub(crate) fn from_kind(dim: usize, kind: TdfKind) -> Self {
        TailDepFunction { dim, kind }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_kind(dim, TdfKind::Zero)
    }

    pub fn min(dim: usize) -> Self {
        Self::from_kind(dim, TdfKind::Min)
    }

    /// Λ_α(w) = (Σ w_k^−α)^−1/α for α ∈ (0, ∞).
    pub fn clayton(alpha: f64, dim: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::param(format!("Λ_α needs α in (0, ∞), got {alpha}")));
        }
        if dim < 2 {
            return Err(Error::param(format!("dimension must be at least 2, got {dim}")));
        }
        Ok(Self::from_kind(dim, TdfKind::Clayton { alpha }))
    }

    /// Bivariate Λ induced by φ(t) = t(1−t).
    pub fn fig1_parabola() -> Self {
        Self::from_kind(2, TdfKind::Fig1Parabola)
    }

    /// Bivariate Λ induced by φ(t) = min(t/2, 1−t).
    pub fn fig1_piecewise() -> Self {
        Self::from_kind(2, TdfKind::Fig1Piecewise)
    }

    /// Λ(w) estimated on demand as the limit of C(sw)/s. The initial scale
    /// is reduced to 1/max w when needed so that sw stays in the unit cube.
    pub fn estimated(copula: Copula, schedule: LimitSchedule) -> Self {
        Self::from_kind(copula.dim(), TdfKind::Estimated { copula: Arc::new(copula), schedule })
    }

    /// Arbitrary user function; no validation is performed.
    pub fn from_fn<F>(dim: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::from_kind(dim, TdfKind::Custom(UserFn { f: Arc::new(f), label: label.into() }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> Provenance {
        match self.kind {
            TdfKind::Estimated { .. } => Provenance::Estimated,
            _ => Provenance::Analytic,
        }
    }

    /// Λ(w) for w in [0, ∞)^d. Estimation failures evaluate to NaN.
    pub fn value(&self, w: &[f64]) -> f64 {
        debug_assert_eq!(w.len(), self.dim);
        match &self.kind {
            TdfKind::Zero => 0.0,
            TdfKind::Min => w.iter().copied().fold(f64::INFINITY, f64::min),
            TdfKind::Clayton { alpha } => clayton_value(*alpha, w),
            TdfKind::Fig1Parabola => {
                let s = w[0] + w[1];
                if s == 0.0 {
                    0.0
                } else {
                    w[0] * w[1] / s
                }
            }
            TdfKind::Fig1Piecewise => (0.5 * w[0]).min(w[1]),
            TdfKind::Lifted(phi) => phi.lifted_value(w[0], w[1]),
            TdfKind::Estimated { copula, schedule } => {
                let top = w.iter().copied().fold(0.0, f64::max);
                if top == 0.0 {
                    return 0.0;
                }
                let sched = LimitSchedule { s0: schedule.s0.min(1.0 / top), ..*schedule };
                estimate_tdf(copula, w, &sched).map_or(f64::NAN, |e| e.value)
            }
            TdfKind::Custom(uf) => (uf.f)(w),
        }
    }

    /// Λ(1, ..., 1), the tail dependence coefficient.
    pub fn coefficient(&self) -> f64 {
        self.value(&vec![1.0; self.dim])
    }
}

/// (Σ w_k^−α)^−1/α written as m (Σ (w_k/m)^−α)^−1/α with m = min w so the
/// powers cannot overflow.
fn clayton_value(alpha: f64, w: &[f64]) -> f64 {
    let m = w.iter().copied().fold(f64::INFINITY, f64::min);
    if m <= 0.0 {
        return 0.0;
    }
    let s: f64 = w.iter().map(|&x| (x / m).powf(-alpha)).sum();
    m * s.powf(-1.0 / alpha)
}

/// Λ for an Archimedean copula whose generator is regularly varying at 0
/// with index −α: 0 for α = 0, Λ_α for finite α > 0, min for α = ∞.
pub fn archimedean_tdf(alpha: f64, dim: usize) -> TailDepFunction {
    if alpha <= 0.0 || alpha.is_nan() {
        TailDepFunction::zero(dim)
    } else if alpha.is_infinite() {
        TailDepFunction::min(dim)
    } else {
        TailDepFunction::from_kind(dim, TdfKind::Clayton { alpha })
    }
}
