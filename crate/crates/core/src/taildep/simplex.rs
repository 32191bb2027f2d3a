use std::sync::Arc;

use super::tdf::{TailDepFunction, TdfKind};
use crate::copula::UserFn;
use crate::error::{Error, Result};

type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Debug, Clone)]
enum SimplexKind {
    Restriction(Arc<TailDepFunction>),
    Custom(UserFn<ScalarFn>),
}

/// φ_Λ(t) = Λ(t, 1 − t): a bivariate tail dependence function restricted
/// to the unit simplex.
#[derive(Debug, Clone)]
pub struct SimplexTdf {
    kind: SimplexKind,
}

/// Sample count for the invariant audit of φ.
const AUDIT_POINTS: usize = 1000;
const AUDIT_TOL: f64 = 1e-9;

impl SimplexTdf {
    pub fn from_fn<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        SimplexTdf { kind: SimplexKind::Custom(UserFn { f: Arc::new(f), label: label.into() }) }
    }

    /// φ(t) = t(1 − t).
    pub fn parabola() -> Self {
        Self::from_fn("t(1-t)", |t| t * (1.0 - t))
    }

    /// φ(t) = min(t/2, 1 − t).
    pub fn piecewise() -> Self {
        Self::from_fn("min(t/2, 1-t)", |t| (0.5 * t).min(1.0 - t))
    }

    /// φ(t) = min(t, 1 − t).
    pub fn upper() -> Self {
        Self::from_fn("min(t, 1-t)", |t| t.min(1.0 - t))
    }

    pub fn value(&self, t: f64) -> f64 {
        match &self.kind {
            SimplexKind::Restriction(tdf) => tdf.value(&[t, 1.0 - t]),
            SimplexKind::Custom(uf) => (uf.f)(t),
        }
    }

    /// (w₁ + w₂) φ(w₁ / (w₁ + w₂)), with value 0 at the origin.
    pub(crate) fn lifted_value(&self, w1: f64, w2: f64) -> f64 {
        let s = w1 + w2;
        if s == 0.0 {
            0.0
        } else {
            s * self.value(w1 / s)
        }
    }

    /// Checks 0 ≤ φ(t) ≤ min(t, 1 − t) and midpoint concavity on sampled
    /// triples. Returns a description of the first violation.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let n = AUDIT_POINTS;
        let t = |i: usize| i as f64 / n as f64;
        let v: Vec<f64> = (0..=n).map(|i| self.value(t(i))).collect();
        for (i, &vi) in v.iter().enumerate() {
            let bound = t(i).min(1.0 - t(i));
            if !(vi >= -AUDIT_TOL && vi <= bound + AUDIT_TOL) {
                return Err(format!("φ({}) = {vi} outside [0, {bound}]", t(i)));
            }
        }
        for step in [1, 7, 50, 250] {
            for i in step..=n - step {
                let mid = v[i];
                let chord = 0.5 * (v[i - step] + v[i + step]);
                if mid < chord - AUDIT_TOL {
                    return Err(format!(
                        "midpoint concavity fails at t = {} (φ = {mid}, chord = {chord})",
                        t(i)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// φ_Λ(t) = Λ(t, 1 − t).
pub fn simplex_restriction(tdf: &TailDepFunction) -> Result<SimplexTdf> {
    if tdf.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: tdf.dim() });
    }
    let phi = SimplexTdf { kind: SimplexKind::Restriction(Arc::new(tdf.clone())) };
    phi.audit().map_err(Error::InvalidTdf)?;
    Ok(phi)
}

/// Λ(w) = (w₁ + w₂) φ(w₁ / (w₁ + w₂)).
pub fn lift(phi: &SimplexTdf) -> Result<TailDepFunction> {
    phi.audit().map_err(Error::InvalidTdf)?;
    Ok(TailDepFunction::from_kind(2, TdfKind::Lifted(phi.clone())))
}

/// λ = 2 φ(1/2).
pub fn tdc_from_simplex(phi: &SimplexTdf) -> f64 {
    2.0 * phi.value(0.5)
}
