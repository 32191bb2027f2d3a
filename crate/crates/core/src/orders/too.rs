use serde::{Deserialize, Serialize};

use super::{Comparison, OrderVerdict};
use crate::copula::Copula;
use crate::error::{Error, Result};
use crate::grid::simplex_lattice;
use crate::taildep::LimitSchedule;

/// Verdict along one ray s ↦ s w.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionalVerdict {
    pub direction: Vec<f64>,
    pub verdict: OrderVerdict,
}

/// A fan of 21 simplex directions, plus (1/2, 1) and (1, 1/2) when d = 2.
pub fn default_directions(dim: usize) -> Vec<Vec<f64>> {
    let divisions = match dim {
        2 => 20,
        3 => 5,
        _ => 2,
    };
    let mut dirs = simplex_lattice(dim, divisions);
    if dim == 2 {
        dirs.push(vec![0.5, 1.0]);
        dirs.push(vec![1.0, 0.5]);
    }
    dirs
}

/// Compares C₁(sw)/s ≤ C₂(sw)/s + τ along each ray at the schedule points
/// with s w in the unit cube. Dividing by s compares the copulas on the
/// scale of their tail dependence functions, so gaps of higher order in s
/// stay visible next to an absolute τ. Witness values are the normalized
/// values C(sw)/s at the point s w.
pub fn check_too(
    c1: &Copula,
    c2: &Copula,
    directions: &[Vec<f64>],
    sched: &LimitSchedule,
    tau: f64,
) -> Result<Vec<DirectionalVerdict>> {
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch { expected: c1.dim(), got: c2.dim() });
    }
    if !(tau > 0.0) {
        return Err(Error::param("τ must be positive"));
    }
    let scales = sched.validated()?.points()?;
    directions
        .iter()
        .map(|w| {
            if w.len() != c1.dim() {
                return Err(Error::DimensionMismatch { expected: c1.dim(), got: w.len() });
            }
            if w.iter().any(|&x| !(x >= 0.0 && x.is_finite())) || w.iter().all(|&x| x == 0.0) {
                return Err(Error::param(format!("direction {w:?} must be nonzero and nonnegative")));
            }
            let top = w.iter().copied().fold(0.0, f64::max);
            let points: Vec<Vec<f64>> = scales
                .iter()
                .filter(|&&s| s * top <= 1.0)
                .map(|&s| w.iter().map(|x| s * x).collect())
                .collect();
            if points.is_empty() {
                return Err(Error::EmptySample(format!("no schedule point keeps s·{w:?} in the unit cube")));
            }
            let ratio = |c: &Copula, u: &[f64]| {
                let s = u.iter().zip(w).find(|(_, &x)| x > 0.0).map(|(a, &x)| a / x).unwrap();
                c.eval_unchecked(u) / s
            };
            let cmp = Comparison::evaluate(points, false, |u| ratio(c1, u), |u| ratio(c2, u));
            Ok(DirectionalVerdict { direction: w.clone(), verdict: cmp.verdict(tau, false) })
        })
        .collect()
}
